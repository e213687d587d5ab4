"""Disorders, ordered pairs and signs of real normalized polynomials.

A real normalized polynomial carries, over each branch value, an ordered
sequence of real preimages with their ramification orders.  A pair of real
preimages x1 < x2 of the same value is a disorder when the order at x1 is
strictly larger, and an ordered pair when the order at x2 is strictly
larger; ties count for neither.  The sign of the polynomial is (-1)^t with
t the total disorder count, and the signed count over all real normalized
polynomials with the prescribed branch data is an invariant of the profiles
alone.

Counts here are always computed from the solver's polished root
assignments, never by re-factoring the polynomial from its coefficients;
that keeps the multiplicities exact by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from .config import RunConfig
from .errors import ClusterAmbiguity, ValidationError
from .partitions import BranchSpec, Partition

# ordered (preimage, ramification order) pairs for one branch value
PreimageSeq = tuple[tuple[float, int], ...]


@dataclass(frozen=True)
class RealPolynomial:
    """A real normalized polynomial together with its real preimage data.

    ``coefficients`` holds (a_2, ..., a_d) of  z^d + a_2 z^{d-2} + ... + a_d.
    ``real_preimages[i]`` lists the real roots of P - values[i] as (x, order)
    with x strictly increasing; ``nonreal_orders[i]`` lists the orders of the
    non-real roots, which come in conjugate pairs.
    """

    d: int
    coefficients: tuple[float, ...]
    profiles: tuple[Partition, ...]
    values: tuple[float, ...]
    real_preimages: tuple[PreimageSeq, ...]
    nonreal_orders: tuple[tuple[int, ...], ...]
    residual: float = 0.0

    def __post_init__(self):
        if len(self.coefficients) != max(self.d - 1, 0):
            raise ValidationError(
                f"degree {self.d} needs {max(self.d - 1, 0)} coefficients, "
                f"got {len(self.coefficients)}"
            )
        if not (len(self.profiles) == len(self.values) == len(self.real_preimages)
                == len(self.nonreal_orders)):
            raise ValidationError("per-branch data lengths disagree")
        for i, (seq, extra) in enumerate(zip(self.real_preimages, self.nonreal_orders)):
            total = sum(r for _, r in seq) + sum(extra)
            if total != self.d:
                raise ValidationError(
                    f"branch {i}: preimage orders sum to {total}, expected {self.d}"
                )
            if len(extra) % 2 != 0:
                raise ValidationError(f"branch {i}: non-real parts must pair up")
            for (x1, _), (x2, _) in zip(seq, seq[1:]):
                if not x1 < x2:
                    raise ValidationError(f"branch {i}: real preimages not increasing")

    @property
    def k(self) -> int:
        return len(self.values)

    def full_coefficients(self) -> tuple[float, ...]:
        """Monic coefficient vector (1, 0, a_2, ..., a_d), highest degree first."""
        return (1.0, 0.0) + self.coefficients

    def evaluate(self, x: float) -> float:
        acc = 0.0
        for c in self.full_coefficients():
            acc = acc * x + c
        return acc

    @property
    def t(self) -> int:
        return disorder_count(self)

    @property
    def ord_count(self) -> int:
        return ordered_pair_count(self)

    @property
    def sign(self) -> int:
        return polynomial_sign(self)

    def reflected(self) -> "RealPolynomial":
        """The polynomial P(-z), which is normalized again when d is even.

        Coefficients of odd-degree monomials flip sign; each real preimage
        sequence is negated and reversed.
        """
        if self.d % 2 != 0:
            raise ValidationError("reflection preserves normalization only for even degree")
        coeffs = tuple(
            c if (self.d - j) % 2 == 0 else -c
            for j, c in zip(range(2, self.d + 1), self.coefficients)
        )
        pre = tuple(
            tuple((-x, r) for x, r in reversed(seq)) for seq in self.real_preimages
        )
        return RealPolynomial(
            d=self.d,
            coefficients=coeffs,
            profiles=self.profiles,
            values=self.values,
            real_preimages=pre,
            nonreal_orders=self.nonreal_orders,
            residual=self.residual,
        )

    def as_json_dict(self) -> dict:
        return {
            "coefficients": list(self.coefficients),
            "preimages": [[[x, r] for x, r in seq] for seq in self.real_preimages],
            "nonreal_orders": [list(e) for e in self.nonreal_orders],
            "t": self.t,
            "ord": self.ord_count,
            "sign": self.sign,
            "residual": self.residual,
        }


def real_preimage_sequence(
    poly: RealPolynomial, branch: int, *, tol_cluster: float = 1e-5
) -> PreimageSeq:
    """The ordered real preimages of branch value ``branch`` with their orders.

    Raises ClusterAmbiguity when two real preimages sit closer than the
    cluster tolerance, since their multiplicities could then not be told
    apart reliably.
    """
    seq = poly.real_preimages[branch]
    for (x1, _), (x2, _) in zip(seq, seq[1:]):
        if x2 - x1 <= tol_cluster:
            raise ClusterAmbiguity(
                f"real preimages {x1} and {x2} of value {poly.values[branch]} "
                f"are within cluster tolerance {tol_cluster}"
            )
    return seq


def disorders_by_branch(poly: RealPolynomial) -> tuple[int, ...]:
    """Per-branch counts of pairs x1 < x2 with strictly larger order at x1."""
    out = []
    for seq in poly.real_preimages:
        orders = [r for _, r in seq]
        out.append(
            sum(
                1
                for a in range(len(orders))
                for b in range(a + 1, len(orders))
                if orders[a] > orders[b]
            )
        )
    return tuple(out)


def ordered_pairs_by_branch(poly: RealPolynomial) -> tuple[int, ...]:
    """Per-branch counts of pairs x1 < x2 with strictly larger order at x2."""
    out = []
    for seq in poly.real_preimages:
        orders = [r for _, r in seq]
        out.append(
            sum(
                1
                for a in range(len(orders))
                for b in range(a + 1, len(orders))
                if orders[b] > orders[a]
            )
        )
    return tuple(out)


def disorder_count(poly: RealPolynomial) -> int:
    return sum(disorders_by_branch(poly))


def ordered_pair_count(poly: RealPolynomial) -> int:
    return sum(ordered_pairs_by_branch(poly))


def polynomial_sign(poly: RealPolynomial) -> int:
    """(-1) to the total disorder count."""
    return -1 if disorder_count(poly) % 2 else 1


def s_number(spec: BranchSpec, config: RunConfig | None = None) -> int:
    """Sum of signs over all real normalized polynomials with the given branch data.

    Requires a complete complex solution set (the solver certificate ties
    the number of complex solutions to the exact factorization count); the
    real locus is then carved out and summed with signs.  The degree-1
    identity covering contributes 1 by convention.
    """
    if spec.is_identity:
        return 1
    from .polysolve import classify_real, solve_all

    config = config or RunConfig()
    solset = solve_all(spec, config)
    reals = classify_real(solset, config)
    total = sum(p.sign for p in reals)
    if config.debug_corrupt_signs and reals:
        # negative-control hook for the verification sweep
        total -= 2 * reals[0].sign
    return total
