"""Real isomorphism classes of coverings through normalized polynomial models.

Every real covering of the sphere with a fully ramified point over infinity
is modeled by a real polynomial, and real isomorphism (precomposition with
a real affine map) reduces each class to normalized representatives:

* odd degree: exactly one normalized representative, trivial automorphisms;
* even degree, positive leading coefficient: one or two normalized
  representatives related by z -> -z; a single representative means the
  polynomial is even and has an automorphism group of order 2;
* even degree, negative leading coefficient: the classes are indexed by the
  normalized representatives of -P, which solve the reversed spec (profiles
  reversed, values negated and reversed).

The signed class count weights each class by sign / |automorphisms| and, by
the main identity this package verifies, equals the plain signed count of
normalized real polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .config import RunConfig
from .errors import CoveringAssemblyError, SignMismatch, ValidationError
from .partitions import BranchSpec, floor_sum_parity
from .realsigns import RealPolynomial, s_number
from .polysolve import classify_real, solve_all

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class CoveringClass:
    """A real isomorphism class, held through its normalized representatives."""

    side: str  # positive or negative leading coefficient
    representatives: tuple[RealPolynomial, ...]
    aut_order: int
    class_sign: int
    weight: Fraction

    def as_json_dict(self) -> dict:
        return {
            "side": self.side,
            "reps": [list(p.coefficients) for p in self.representatives],
            "aut": self.aut_order,
            "sign": self.class_sign,
            "weight": str(self.weight),
        }


def _compose_affine(coeffs: Sequence[float], alpha: float, beta: float) -> np.ndarray:
    """Coefficients of P(alpha z + beta), highest degree first."""
    result = np.array([coeffs[0]], dtype=float)
    unit = np.array([alpha, beta], dtype=float)
    for c in coeffs[1:]:
        result = np.convolve(result, unit)
        result[-1] += c
    return result


def normalize(coeffs: Sequence[float]) -> tuple[str, list[tuple[float, ...]]]:
    """Normalized forms of a real polynomial under real affine precomposition.

    Returns (side, forms): the leading-coefficient side and the one or two
    normalized coefficient vectors (monic, vanishing z^{d-1} term, highest
    degree first).  For even degree with negative leading coefficient the
    forms are those of -P, flagged side "negative".
    """
    coeffs = [float(c) for c in coeffs]
    if len(coeffs) < 2:
        raise ValidationError("degree must be at least 1")
    lead = coeffs[0]
    if lead == 0:
        raise ValidationError("leading coefficient must be nonzero")
    d = len(coeffs) - 1
    if d % 2 == 1:
        alpha = math.copysign(abs(lead) ** (-1.0 / d), lead)
        beta = -coeffs[1] / (d * lead)
        form = _compose_affine(coeffs, alpha, beta)
        return POSITIVE, [_clean_form(form)]
    side = POSITIVE
    if lead < 0:
        coeffs = [-c for c in coeffs]
        lead = -lead
        side = NEGATIVE
    alpha = lead ** (-1.0 / d)
    beta = -coeffs[1] / (d * lead)
    plus = _clean_form(_compose_affine(coeffs, alpha, beta))
    minus = _clean_form(_compose_affine(coeffs, -alpha, beta))
    scale = 1.0 + max(abs(c) for c in plus)
    if max(abs(a - b) for a, b in zip(plus, minus)) <= 1e-12 * scale:
        return side, [plus]
    return side, sorted([plus, minus])


def _clean_form(form: np.ndarray) -> tuple[float, ...]:
    out = form.copy()
    out[0] = 1.0
    out[1] = 0.0
    return tuple(float(c) for c in out)


def _reflected_coefficients(coeffs: tuple[float, ...], d: int) -> np.ndarray:
    """Coefficient vector (a_2..a_d) of P(-z) for even d."""
    j = np.arange(2, d + 1)
    return np.array(coeffs, dtype=float) * np.where(j % 2 == 0, 1.0, -1.0)


def _orbit_classes(
    reals: Sequence[RealPolynomial], side: str, d: int, config: RunConfig
) -> list[tuple[str, tuple[RealPolynomial, ...], int]]:
    """Group real solutions into orbits of the z -> -z involution.

    A two-element orbit is a class with two representatives and trivial
    automorphisms; a fixed point (even polynomial) is a class with one
    representative and automorphism order 2.  Every polynomial must find its
    partner inside the set; anything else means the set is not actually
    complete and is reported as an assembly error.
    """
    tol = config.tol_dedup
    unmatched = list(range(len(reals)))
    classes = []
    coeff_arrays = [np.array(p.coefficients, dtype=float) for p in reals]
    while unmatched:
        i = unmatched.pop(0)
        target = _reflected_coefficients(reals[i].coefficients, d)
        scale = 1.0 + float(np.max(np.abs(coeff_arrays[i]))) if coeff_arrays[i].size else 1.0
        if coeff_arrays[i].size == 0 or float(np.max(np.abs(coeff_arrays[i] - target))) <= tol * scale:
            classes.append((side, (reals[i],), 2))
            continue
        partner = None
        for j in unmatched:
            if float(np.max(np.abs(coeff_arrays[j] - target))) <= tol * scale:
                partner = j
                break
        if partner is None:
            raise CoveringAssemblyError(
                "a real solution has no z -> -z partner in the complete set"
            )
        unmatched.remove(partner)
        reps = tuple(sorted((reals[i], reals[partner]), key=lambda p: p.coefficients))
        classes.append((side, reps, 1))
    return classes


def class_sign(
    representatives: Sequence[RealPolynomial], aut_order: int, d: int, parity: int
) -> int:
    """Sign of a covering class from its representative signs.

    Odd degree and the even-degree parity-even branch take the common
    representative sign (the two representatives must agree there, a
    disagreement is reported as SignMismatch).  In the parity-odd branch the
    averaged sign is returned: 0 for two-representative classes, the plain
    sign for classes with automorphism order 2.  That branch is diagnostic
    only since the signed count is 0 by definition there.
    """
    signs = [p.sign for p in representatives]
    if d % 2 == 1:
        return signs[0]
    if parity == 0:
        if len(signs) == 2 and signs[0] != signs[1]:
            raise SignMismatch(
                "the two representatives of a parity-even class disagree in sign"
            )
        return signs[0]
    avg = Fraction(sum(signs), len(signs))
    assert avg.denominator == 1
    return int(avg)


def _assemble_classes(
    spec: BranchSpec,
    reals_pos: Sequence[RealPolynomial],
    reals_neg: Sequence[RealPolynomial] | None,
    config: RunConfig,
) -> list[CoveringClass]:
    d = spec.d
    parity = floor_sum_parity(spec.profiles)
    raw: list[tuple[str, tuple[RealPolynomial, ...], int]] = []
    if d % 2 == 1:
        raw.extend((POSITIVE, (p,), 1) for p in reals_pos)
    else:
        raw.extend(_orbit_classes(reals_pos, POSITIVE, d, config))
        assert reals_neg is not None
        raw.extend(_orbit_classes(reals_neg, NEGATIVE, d, config))
    classes = []
    for side, reps, aut in raw:
        sgn = class_sign(reps, aut, d, parity)
        classes.append(
            CoveringClass(
                side=side,
                representatives=reps,
                aut_order=aut,
                class_sign=sgn,
                weight=Fraction(sgn, aut),
            )
        )
    classes.sort(key=lambda c: (c.side, c.representatives[0].coefficients))
    return classes


def covering_classes(spec: BranchSpec, config: RunConfig | None = None) -> list[CoveringClass]:
    """Enumerate the real isomorphism classes of coverings for the spec.

    For even degree this needs complete solution sets for both the spec and
    its reversed spec (the negative-leading side).
    """
    config = config or RunConfig()
    reals_pos = classify_real(solve_all(spec, config), config)
    reals_neg = None
    if spec.d % 2 == 0:
        rev = spec.reversed_spec()
        reals_neg = classify_real(solve_all(rev, config), config)
    return _assemble_classes(spec, reals_pos, reals_neg, config)


@dataclass(frozen=True)
class RealHurwitzResult:
    """Signed class count with its provenance."""

    spec: BranchSpec
    value: Fraction
    parity_odd_branch: bool
    classes: tuple[CoveringClass, ...] | None

    @property
    def is_integral(self) -> bool:
        return self.value.denominator == 1

    def as_json_dict(self) -> dict:
        out = {
            "spec": self.spec.as_json_dict(),
            "HR": str(self.value),
            "integral": self.is_integral,
        }
        if self.parity_odd_branch:
            out["reason"] = "parity-odd branch"
        if self.classes is not None:
            out["classes"] = [c.as_json_dict() for c in self.classes]
        return out


def real_hurwitz(spec: BranchSpec, config: RunConfig | None = None) -> RealHurwitzResult:
    """Signed count of real covering classes, weighted by 1/|automorphisms|.

    For even degree with odd floor-sum parity the value is 0 by definition
    and no solving happens; set ``force_class_diagnostics`` in the config to
    build the classes anyway and verify that the averaged signs cancel.
    """
    config = config or RunConfig()
    if spec.is_identity:
        return RealHurwitzResult(spec, Fraction(1), False, None)
    parity_odd = spec.d % 2 == 0 and floor_sum_parity(spec.profiles) == 1
    if parity_odd and not config.force_class_diagnostics:
        return RealHurwitzResult(spec, Fraction(0), True, None)
    classes = covering_classes(spec, config)
    total = sum((c.weight for c in classes), Fraction(0))
    if parity_odd:
        # diagnostic pass: averaged signs must cancel exactly
        if total != 0:
            raise SignMismatch(
                f"averaged class signs sum to {total} in the parity-odd branch"
            )
        return RealHurwitzResult(spec, Fraction(0), True, tuple(classes))
    return RealHurwitzResult(spec, total, False, tuple(classes))


@dataclass(frozen=True)
class TheoremReport:
    """Comparison of the class route and the polynomial route for one spec."""

    spec: BranchSpec
    hr: Fraction
    s: int
    s_reversed: int | None
    hr_equals_s: bool
    hr_integral: bool
    half_sum_ok: bool | None
    parity_odd_branch: bool
    classes: tuple[CoveringClass, ...] | None

    @property
    def passed(self) -> bool:
        checks = [self.hr_equals_s, self.hr_integral]
        if self.half_sum_ok is not None:
            checks.append(self.half_sum_ok)
        return all(checks)

    def as_json_dict(self) -> dict:
        out = {
            "spec": self.spec.as_json_dict(),
            "HR": str(self.hr),
            "s": self.s,
            "pass": self.passed,
            "hr_equals_s": self.hr_equals_s,
            "hr_integral": self.hr_integral,
        }
        if self.s_reversed is not None:
            out["s_reversed"] = self.s_reversed
            out["half_sum_ok"] = self.half_sum_ok
        if self.classes is not None:
            out["classes"] = [c.as_json_dict() for c in self.classes]
        return out


def theorem_check(spec: BranchSpec, config: RunConfig | None = None) -> TheoremReport:
    """Verify that the signed class count equals the signed polynomial count.

    For even degree the identity HR = (s + s_reversed) / 2 is checked as
    well; failures land in the report rather than raising.
    """
    config = config or RunConfig()
    hr_result = real_hurwitz(spec, config)
    s = s_number(spec, config)
    s_reversed = None
    half_sum_ok = None
    if not spec.is_identity and spec.d % 2 == 0:
        s_reversed = s_number(spec.reversed_spec(), config)
        half_sum_ok = hr_result.value == Fraction(s + s_reversed, 2)
    return TheoremReport(
        spec=spec,
        hr=hr_result.value,
        s=s,
        s_reversed=s_reversed,
        hr_equals_s=hr_result.value == s,
        hr_integral=hr_result.is_integral,
        half_sum_ok=half_sum_ok,
        parity_odd_branch=hr_result.parity_odd_branch,
        classes=hr_result.classes,
    )
