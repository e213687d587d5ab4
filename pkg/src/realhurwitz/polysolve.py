"""Complete enumeration of normalized complex polynomials with prescribed branch data.

The unknowns are the preimage roots: one complex unknown per part of each
profile, (k-1)d + 1 in total.  Writing Q_i(z) for the monic product of
(z - root)^order over branch i, the equations state that Q_i + w_i is the
same polynomial for every i (d coefficient equations per extra branch) and
that the z^{d-1} coefficient vanishes (one normalization equation), giving
a square polynomial system.  Multiplicities are built into the
parametrization, so a validated solution has exact ramification profiles as
long as the roots within one branch stay separated.

Completeness is certified against the exact factorization count: the solver
keeps drawing seeded random starts for damped Newton until the deduplicated
solution count reaches that target, harvesting the conjugation and
root-of-unity symmetry orbits of every solution found along the way.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import RunConfig
from .errors import (
    AmbiguousRealness,
    DegenerateConfiguration,
    IncompleteEnumeration,
    OvercountDetected,
    ScaleExceeded,
    ValidationError,
)
from .factorizations import count_factorizations
from .partitions import BranchSpec
from .realsigns import RealPolynomial

_DEGENERACY_LIMIT = 25


@dataclass(frozen=True)
class SystemSpec:
    """Square polynomial system for one BranchSpec.

    ``slots`` lists the unknowns in deterministic order: branch by branch,
    parts in non-increasing order within each branch.
    """

    spec: BranchSpec
    slots: tuple[tuple[int, int], ...]  # (branch index, multiplicity)
    branch_ranges: tuple[tuple[int, int], ...]  # slot index range per branch

    @property
    def n(self) -> int:
        return len(self.slots)

    @property
    def d(self) -> int:
        return self.spec.d

    @property
    def k(self) -> int:
        return self.spec.k


def build_system(spec: BranchSpec) -> SystemSpec:
    """Lay out unknowns and equation blocks for the given branch data."""
    if spec.is_identity:
        raise ValidationError("the degree-1 identity covering has no system to solve")
    slots = []
    ranges = []
    for i, lam in enumerate(spec.profiles):
        start = len(slots)
        for m in lam.parts:
            slots.append((i, m))
        ranges.append((start, len(slots)))
    sys_spec = SystemSpec(spec, tuple(slots), tuple(ranges))
    assert sys_spec.n == (spec.k - 1) * spec.d + 1
    return sys_spec


def _mul_linear(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """Batched multiply of polynomials (rows of coeffs) by (z - root)."""
    batch, width = coeffs.shape
    out = np.zeros((batch, width + 1), dtype=complex)
    out[:, :-1] = coeffs
    out[:, 1:] -= roots[:, None] * coeffs
    return out


def _batch_branch_poly(roots: np.ndarray, mults: list[int]) -> np.ndarray:
    """Monic coefficients (highest degree first) of prod (z - root_j)^mult_j per row."""
    c = np.ones((roots.shape[0], 1), dtype=complex)
    for j, m in enumerate(mults):
        for _ in range(m):
            c = _mul_linear(c, roots[:, j])
    return c


def _batch_branch_derivs(roots: np.ndarray, mults: list[int]):
    """Branch polynomial and its derivative with respect to each root, batched.

    d/d(root_j) of the product is -m_j * (z - root_j)^{m_j - 1} times the
    other factors, a polynomial of degree d - 1.
    """
    q = _batch_branch_poly(roots, mults)
    derivs = []
    for j in range(roots.shape[1]):
        c = np.ones((roots.shape[0], 1), dtype=complex)
        for j2, m in enumerate(mults):
            power = m - 1 if j2 == j else m
            for _ in range(power):
                c = _mul_linear(c, roots[:, j2])
        derivs.append(-mults[j] * c)
    return q, derivs


def residual_batch(system: SystemSpec, points: np.ndarray) -> np.ndarray:
    """Equation values for a batch of points, shape (batch, n)."""
    d = system.d
    values = system.spec.values
    qs = [
        _batch_branch_poly(points[:, start:end], list(lam.parts))
        for (start, end), lam in zip(system.branch_ranges, system.spec.profiles)
    ]
    out = np.empty(points.shape, dtype=complex)
    out[:, 0] = qs[0][:, 1]
    for i in range(1, system.k):
        block = qs[i][:, 1:] - qs[0][:, 1:]
        block[:, -1] += values[i] - values[0]
        out[:, 1 + (i - 1) * d : 1 + i * d] = block
    return out


def residual_and_jacobian_batch(system: SystemSpec, points: np.ndarray):
    """Equation values and exact analytic Jacobians, shapes (batch, n) and (batch, n, n)."""
    d = system.d
    n = system.n
    batch = points.shape[0]
    values = system.spec.values
    out = np.empty((batch, n), dtype=complex)
    jac = np.zeros((batch, n, n), dtype=complex)
    qs = []
    dqs = []
    for (start, end), lam in zip(system.branch_ranges, system.spec.profiles):
        q, dq = _batch_branch_derivs(points[:, start:end], list(lam.parts))
        qs.append(q)
        dqs.append(dq)
    out[:, 0] = qs[0][:, 1]
    for i in range(1, system.k):
        block = qs[i][:, 1:] - qs[0][:, 1:]
        block[:, -1] += values[i] - values[0]
        out[:, 1 + (i - 1) * d : 1 + i * d] = block
    for col, (branch, _) in enumerate(system.slots):
        start, _ = system.branch_ranges[branch]
        dq = dqs[branch][col - start]
        if branch == 0:
            jac[:, 0, col] = dq[:, 0]
            for i in range(1, system.k):
                jac[:, 1 + (i - 1) * d : 1 + i * d, col] = -dq
        else:
            i = branch
            jac[:, 1 + (i - 1) * d : 1 + i * d, col] = dq
    return out, jac


def residual(system: SystemSpec, x) -> np.ndarray:
    """Equation values at the point x (complex vector of length n)."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (system.n,):
        raise ValidationError(f"point has shape {x.shape}, expected ({system.n},)")
    return residual_batch(system, x[None, :])[0]


def residual_and_jacobian(system: SystemSpec, x):
    """Equation values and the exact analytic Jacobian at x."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (system.n,):
        raise ValidationError(f"point has shape {x.shape}, expected ({system.n},)")
    f, jac = residual_and_jacobian_batch(system, x[None, :])
    return f[0], jac[0]


def canonical_coefficients(system: SystemSpec, x) -> np.ndarray:
    """Coefficient vector (a_2, ..., a_d) of the polynomial modeled by x."""
    x = np.asarray(x, dtype=complex)
    start, end = system.branch_ranges[0]
    full = _batch_branch_poly(x[None, start:end], list(system.spec.profiles[0].parts))[0]
    full[-1] += system.spec.values[0]
    return full[2:]


def rotate_point(x: np.ndarray, d: int, t: int) -> np.ndarray:
    """Preimage roots of P(zeta z) where zeta = exp(2 pi i t / d)."""
    return x * np.exp(-2j * np.pi * t / d)


def rotate_coefficients(coeffs: np.ndarray, d: int, t: int) -> np.ndarray:
    """Coefficient action matching rotate_point: a_j -> zeta^{-j} a_j."""
    j = np.arange(2, d + 1)
    return coeffs * np.exp(-2j * np.pi * t * j / d)


_MAX_HALVINGS = 12


def _solve_linear_batch(jac: np.ndarray, rhs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched linear solves; rows with a singular Jacobian are flagged instead of raised."""
    ok = np.ones(jac.shape[0], dtype=bool)
    try:
        return np.linalg.solve(jac, rhs[..., None])[..., 0], ok
    except np.linalg.LinAlgError:
        out = np.zeros_like(rhs)
        for i in range(jac.shape[0]):
            try:
                out[i] = np.linalg.solve(jac[i], rhs[i])
            except np.linalg.LinAlgError:
                ok[i] = False
        return out, ok


def _newton_batch(system: SystemSpec, starts: np.ndarray, config: RunConfig):
    """Damped Newton on a batch of starts; results depend on each row alone.

    Returns (points, converged_mask).  A row fails when its Jacobian is
    singular, when step halving cannot decrease the residual, or when the
    iteration cap is hit.
    """
    points = np.array(starts, dtype=complex)
    batch = points.shape[0]
    status = np.zeros(batch, dtype=np.int8)  # 0 active, 1 converged, -1 failed
    fnorm = np.max(np.abs(residual_batch(system, points)), axis=1)
    bad = ~np.isfinite(fnorm)
    status[bad] = -1
    status[fnorm < 1e-14] = 1
    for _ in range(config.newton_max_iter):
        active = np.where(status == 0)[0]
        if active.size == 0:
            break
        f, jac = residual_and_jacobian_batch(system, points[active])
        delta, solvable = _solve_linear_batch(jac, -f)
        status[active[~solvable]] = -1
        active = active[solvable]
        delta = delta[solvable]
        if active.size == 0:
            continue
        step = np.max(np.abs(delta), axis=1)
        finite = np.isfinite(step)
        status[active[~finite]] = -1
        active, delta, step = active[finite], delta[finite], step[finite]
        t = np.ones(active.size)
        accepted = np.zeros(active.size, dtype=bool)
        new_fnorm = fnorm[active].copy()
        remaining = np.arange(active.size)
        for _ in range(_MAX_HALVINGS):
            if remaining.size == 0:
                break
            trial = points[active[remaining]] + t[remaining, None] * delta[remaining]
            fn = np.max(np.abs(residual_batch(system, trial)), axis=1)
            good = np.isfinite(fn) & (
                (fn <= (1.0 - 0.5 * t[remaining]) * fnorm[active[remaining]]) | (fn < 1e-14)
            )
            took = remaining[good]
            points[active[took]] = trial[good]
            new_fnorm[took] = fn[good]
            accepted[took] = True
            remaining = remaining[~good]
            t[remaining] *= 0.5
        status[active[~accepted]] = -1
        active, t, step = active[accepted], t[accepted], step[accepted]
        fnorm[active] = new_fnorm[accepted]
        small = (t * step < config.newton_step_tol) | (fnorm[active] < 1e-14)
        done = active[small]
        status[done] = np.where(fnorm[done] <= config.tol_residual, 1, -1)
    return points, status == 1


def _newton(system: SystemSpec, x0, config: RunConfig):
    """Damped Newton from a single start; returns (point, converged)."""
    points, ok = _newton_batch(system, np.asarray(x0, dtype=complex)[None, :], config)
    return points[0], bool(ok[0])


@dataclass(frozen=True)
class Solution:
    """One normalized complex polynomial with its per-branch root assignment."""

    coefficients: tuple[complex, ...]
    roots: tuple[tuple[tuple[complex, int], ...], ...]
    residual: float
    point: tuple[complex, ...]

    def as_json_dict(self) -> dict:
        return {
            "coefficients": [[c.real, c.imag] for c in self.coefficients],
            "roots": [
                [[[r.real, r.imag], m] for r, m in branch] for branch in self.roots
            ],
            "residual": self.residual,
        }


@dataclass(frozen=True)
class SolutionSet:
    """Deduplicated solutions plus the completeness certificate."""

    spec: BranchSpec
    solutions: tuple[Solution, ...]
    target: int
    certificate: str  # "COMPLETE" or "INCOMPLETE"
    starts_used: int
    seed: int

    def __len__(self) -> int:
        return len(self.solutions)

    def as_json_dict(self) -> dict:
        return {
            "spec": self.spec.as_json_dict(),
            "target": self.target,
            "certificate": self.certificate,
            "found": len(self.solutions),
            "starts_used": self.starts_used,
            "seed": self.seed,
            "solutions": [s.as_json_dict() for s in self.solutions],
        }


class _Collector:
    """Orders, validates, deduplicates and symmetry-expands candidate points."""

    def __init__(self, system: SystemSpec, target: int, config: RunConfig):
        self.system = system
        self.target = target
        self.config = config
        self.points: list[np.ndarray] = []
        self.coeffs: list[np.ndarray] = []
        self.residuals: list[float] = []
        self.collapse_counts: dict[tuple, int] = {}

    def __len__(self) -> int:
        return len(self.points)

    @property
    def complete(self) -> bool:
        return len(self.points) >= self.target

    def _well_separated(self, x: np.ndarray) -> bool:
        for (start, end) in self.system.branch_ranges:
            roots = x[start:end]
            for a in range(len(roots)):
                for b in range(a + 1, len(roots)):
                    if abs(roots[a] - roots[b]) <= self.config.tol_cluster:
                        return False
        return True

    def _known(self, coeffs: np.ndarray) -> bool:
        if not self.coeffs:
            return False
        tol = self.config.tol_dedup
        for known in self.coeffs:
            scale = 1.0 + float(np.max(np.abs(known))) if known.size else 1.0
            if known.size == 0 or float(np.max(np.abs(coeffs - known))) <= tol * scale:
                return True
        return False

    def offer(self, x: np.ndarray):
        """Validate one converged point; on acceptance, chase its symmetry orbit.

        The queue is drained even once the target is reached: a genuinely
        new solution beyond the target must surface as OvercountDetected,
        never be dropped.
        """
        queue = [np.asarray(x, dtype=complex)]
        while queue:
            cand = queue.pop(0)
            res = float(np.max(np.abs(residual(self.system, cand))))
            if not (res <= self.config.tol_residual):
                continue
            if not self._well_separated(cand):
                key = tuple(np.round(canonical_coefficients(self.system, cand), 6).tolist())
                self.collapse_counts[key] = self.collapse_counts.get(key, 0) + 1
                if self.collapse_counts[key] >= _DEGENERACY_LIMIT:
                    raise DegenerateConfiguration(
                        "converged points persistently collapse preimage roots; "
                        "the branch values look non-generic for these profiles"
                    )
                continue
            coeffs = canonical_coefficients(self.system, cand)
            if self._known(coeffs):
                continue
            self.points.append(cand)
            self.coeffs.append(coeffs)
            self.residuals.append(res)
            if len(self.points) > self.target:
                raise OvercountDetected(len(self.points), self.target)
            if self.config.harvest_symmetries:
                d = self.system.d
                for t in range(d):
                    for conj in (False, True):
                        if t == 0 and not conj:
                            continue
                        mate = rotate_point(cand, d, t)
                        if conj:
                            mate = np.conj(mate)
                        polished, ok = _newton(self.system, mate, self.config)
                        if ok:
                            queue.append(polished)

    def build_set(self, starts_used: int, certificate: str) -> SolutionSet:
        order = sorted(
            range(len(self.points)),
            key=lambda i: tuple((c.real, c.imag) for c in self.coeffs[i]),
        )
        sols = []
        for i in order:
            x = self.points[i]
            roots = []
            for (start, end), lam in zip(
                self.system.branch_ranges, self.system.spec.profiles
            ):
                branch = tuple(
                    (complex(r), m) for r, m in zip(x[start:end], lam.parts)
                )
                roots.append(branch)
            sols.append(
                Solution(
                    coefficients=tuple(complex(c) for c in self.coeffs[i]),
                    roots=tuple(roots),
                    residual=self.residuals[i],
                    point=tuple(complex(v) for v in x),
                )
            )
        return SolutionSet(
            spec=self.system.spec,
            solutions=tuple(sols),
            target=self.target,
            certificate=certificate,
            starts_used=starts_used,
            seed=self.config.seed,
        )


def _polish_batch(system: SystemSpec, starts: np.ndarray, config: RunConfig):
    """Run Newton on every start; results keep the start order regardless of workers.

    Work is split into contiguous row slices, one per worker, and merged in
    slice order, so the output is identical for any worker count.
    """
    if config.workers <= 1 or starts.shape[0] < 2 * config.workers:
        points, ok = _newton_batch(system, starts, config)
        return [(points[i], bool(ok[i])) for i in range(starts.shape[0])]
    slices = np.array_split(np.arange(starts.shape[0]), config.workers)
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        chunks = list(
            pool.map(lambda idx: _newton_batch(system, starts[idx], config), slices)
        )
    out = []
    for points, ok in chunks:
        out.extend((points[i], bool(ok[i])) for i in range(points.shape[0]))
    return out


def spec_hash(spec: BranchSpec) -> str:
    payload = json.dumps(spec.as_json_dict(), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def save_cache(path: str, solset: SolutionSet, config: RunConfig):
    """Write one header line plus one line per solution (line-delimited JSON)."""
    digest = spec_hash(solset.spec)
    header = {
        "kind": "header",
        "spec": solset.spec.as_json_dict(),
        "spec_hash": digest,
        "target": solset.target,
        "tol_residual": config.tol_residual,
        "tol_dedup": config.tol_dedup,
        "tol_cluster": config.tol_cluster,
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for sol in solset.solutions:
            record = {
                "kind": "solution",
                "spec_hash": digest,
                "point": [[v.real, v.imag] for v in sol.point],
            }
            record.update(sol.as_json_dict())
            fh.write(json.dumps(record, sort_keys=True) + "\n")


def load_cache(path: str, spec: BranchSpec, target: int, config: RunConfig) -> SolutionSet | None:
    """Reload a complete cached solution set if it matches spec, target and tolerances."""
    if not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as fh:
        lines = [json.loads(line) for line in fh if line.strip()]
    if not lines or lines[0].get("kind") != "header":
        return None
    header = lines[0]
    if header.get("spec_hash") != spec_hash(spec) or header.get("target") != target:
        return None
    for key in ("tol_residual", "tol_dedup", "tol_cluster"):
        if header.get(key) != getattr(config, key):
            return None
    records = [r for r in lines[1:] if r.get("kind") == "solution"]
    if len(records) != target:
        return None
    sols = []
    for rec in records:
        coeffs = tuple(complex(re, im) for re, im in rec["coefficients"])
        roots = tuple(
            tuple((complex(re, im), int(m)) for (re, im), m in branch)
            for branch in rec["roots"]
        )
        point = tuple(complex(re, im) for re, im in rec["point"])
        sols.append(Solution(coeffs, roots, float(rec["residual"]), point))
    return SolutionSet(spec, tuple(sols), target, "COMPLETE", 0, config.seed)


def solve_all(
    spec: BranchSpec,
    config: RunConfig | None = None,
    *,
    target: int | None = None,
    cache_path: str | None = None,
) -> SolutionSet:
    """Find every normalized complex polynomial for the spec, with a certificate.

    Starts are drawn from a seeded complex Gaussian with scale
    (1 + max|w_i|)^(1/d); converged points are validated for residual and
    root separation, canonicalized to coefficient vectors and deduplicated.
    The run stops as soon as the count matches the factorization target.

    Raises IncompleteEnumeration (carrying the partial set) when the start
    budget runs out first and OvercountDetected if dedup ever exceeds the
    target.
    """
    config = config or RunConfig()
    if spec.is_identity:
        sol = Solution(coefficients=(), roots=(), residual=0.0, point=())
        return SolutionSet(spec, (sol,), 1, "COMPLETE", 0, config.seed)
    if spec.d > config.max_solver_degree:
        raise ScaleExceeded(
            f"degree {spec.d} exceeds the configured solver bound {config.max_solver_degree}"
        )
    if target is None:
        target = count_factorizations(
            spec.profiles, enum_budget=config.enum_budget
        ).N
    cache_path = cache_path or config.cache
    if cache_path:
        cached = load_cache(cache_path, spec, target, config)
        if cached is not None:
            return cached
    system = build_system(spec)
    collector = _Collector(system, target, config)
    if target == 0:
        return collector.build_set(0, "COMPLETE")
    rng = np.random.default_rng(config.seed)
    scale = (1.0 + max(abs(w) for w in spec.values)) ** (1.0 / spec.d)
    starts_used = 0
    while starts_used < config.start_budget and not collector.complete:
        m = min(config.chunk_size, config.start_budget - starts_used)
        starts = rng.standard_normal((m, system.n)) + 1j * rng.standard_normal(
            (m, system.n)
        )
        starts *= scale / math.sqrt(2.0)
        starts_used += m
        # the whole chunk is processed even after the target is reached, so
        # an extra distinct solution cannot slip away unnoticed
        for point, ok in _polish_batch(system, starts, config):
            if ok:
                collector.offer(point)
    if not collector.complete:
        partial = collector.build_set(starts_used, "INCOMPLETE")
        raise IncompleteEnumeration(len(collector), target, partial)
    solset = collector.build_set(starts_used, "COMPLETE")
    if cache_path:
        save_cache(cache_path, solset, config)
    return solset


# --- real classification ----------------------------------------------------


@dataclass(frozen=True)
class _RealFactor:
    """One irreducible real factor of a branch polynomial.

    kind "lin" models (z - x)^mult with one parameter; kind "quad" models
    ((z - u)^2 + v^2)^mult with parameters (u, v), covering a conjugate pair.
    """

    kind: str
    mult: int
    params: tuple[int, ...]  # indices into the real parameter vector


def _real_structure(system: SystemSpec, point: np.ndarray, config: RunConfig):
    """Assign each slot of a nearly-real point to a real root or a conjugate pair."""
    factors_per_branch = []
    u0 = []
    threshold = config.tol_cluster / 2.0
    for (start, end), roots in (
        ((s, e), point[s:e]) for (s, e) in system.branch_ranges
    ):
        mults = [m for _, m in system.slots[start:end]]
        taken = [False] * len(roots)
        factors = []
        for j, root in enumerate(roots):
            if taken[j]:
                continue
            if abs(root.imag) < threshold:
                taken[j] = True
                factors.append(_RealFactor("lin", mults[j], (len(u0),)))
                u0.append(root.real)
                continue
            best = None
            best_dist = None
            for j2 in range(j + 1, len(roots)):
                if taken[j2] or mults[j2] != mults[j]:
                    continue
                dist = abs(roots[j2] - np.conj(root))
                if best_dist is None or dist < best_dist:
                    best, best_dist = j2, dist
            if best is None or best_dist > config.tol_cluster:
                raise AmbiguousRealness(
                    "a non-real preimage root has no conjugate partner within "
                    "tolerance; rerun with tighter tolerances"
                )
            taken[j] = taken[best] = True
            factors.append(_RealFactor("quad", mults[j], (len(u0), len(u0) + 1)))
            u0.append(root.real)
            u0.append(abs(root.imag))
        factors_per_branch.append(factors)
    return factors_per_branch, np.array(u0, dtype=float)


def _real_branch_poly(factors, u: np.ndarray) -> np.ndarray:
    c = np.ones(1, dtype=float)
    for f in factors:
        if f.kind == "lin":
            base = np.array([1.0, -u[f.params[0]]])
        else:
            a, b = u[f.params[0]], u[f.params[1]]
            base = np.array([1.0, -2.0 * a, a * a + b * b])
        for _ in range(f.mult):
            c = np.convolve(c, base)
    return c


def _real_branch_derivs(factors, u: np.ndarray, d: int):
    """Derivative of the branch polynomial with respect to each of its parameters."""
    derivs = {}
    for idx, f in enumerate(factors):
        rest = np.ones(1, dtype=float)
        for idx2, f2 in enumerate(factors):
            power = f2.mult - 1 if idx2 == idx else f2.mult
            if f2.kind == "lin":
                base = np.array([1.0, -u[f2.params[0]]])
            else:
                a, b = u[f2.params[0]], u[f2.params[1]]
                base = np.array([1.0, -2.0 * a, a * a + b * b])
            for _ in range(power):
                rest = np.convolve(rest, base)
        if f.kind == "lin":
            derivs[f.params[0]] = -f.mult * rest
        else:
            a, b = u[f.params[0]], u[f.params[1]]
            derivs[f.params[0]] = f.mult * np.convolve(np.array([-2.0, 2.0 * a]), rest)
            derivs[f.params[1]] = f.mult * (2.0 * b) * rest
    padded = {}
    for key, poly in derivs.items():
        out = np.zeros(d, dtype=float)
        out[d - len(poly) :] = poly
        padded[key] = out
    return padded


def _real_residual_and_jacobian(system: SystemSpec, factors_per_branch, u: np.ndarray):
    d = system.d
    n = system.n
    values = system.spec.values
    qs = [_real_branch_poly(factors, u) for factors in factors_per_branch]
    out = np.empty(n, dtype=float)
    jac = np.zeros((n, n), dtype=float)
    out[0] = qs[0][1]
    for i in range(1, system.k):
        block = qs[i][1:] - qs[0][1:]
        block[-1] += values[i] - values[0]
        out[1 + (i - 1) * d : 1 + i * d] = block
    for branch, factors in enumerate(factors_per_branch):
        derivs = _real_branch_derivs(factors, u, d)
        for col, dq in derivs.items():
            if branch == 0:
                jac[0, col] = dq[0]
                for i in range(1, system.k):
                    jac[1 + (i - 1) * d : 1 + i * d, col] -= dq
            else:
                i = branch
                jac[1 + (i - 1) * d : 1 + i * d, col] += dq
    return out, jac


def _real_newton(system: SystemSpec, factors_per_branch, u0: np.ndarray, config: RunConfig):
    u = u0.copy()
    for _ in range(config.newton_max_iter):
        f, jac = _real_residual_and_jacobian(system, factors_per_branch, u)
        fnorm = float(np.max(np.abs(f)))
        if fnorm < 1e-14:
            return u, True
        try:
            delta = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            return u, False
        step = float(np.max(np.abs(delta)))
        t = 1.0
        accepted = False
        for _ in range(30):
            un = u + t * delta
            fn = float(
                np.max(np.abs(_real_residual_and_jacobian(system, factors_per_branch, un)[0]))
            )
            if math.isfinite(fn) and (fn <= (1.0 - 0.5 * t) * fnorm or fn < 1e-14):
                accepted = True
                break
            t *= 0.5
        if not accepted:
            return u, False
        u = un
        if t * step < config.newton_step_tol:
            f = _real_residual_and_jacobian(system, factors_per_branch, u)[0]
            return u, float(np.max(np.abs(f))) <= config.tol_residual
    return u, False


def _build_real_polynomial(
    system: SystemSpec, factors_per_branch, u: np.ndarray, config: RunConfig
) -> RealPolynomial:
    spec = system.spec
    d = spec.d
    all_roots: list[list[complex]] = []
    preimages = []
    nonreal = []
    for factors in factors_per_branch:
        branch_roots: list[complex] = []
        reals = []
        extra = []
        for f in factors:
            if f.kind == "lin":
                x = float(u[f.params[0]])
                reals.append((x, f.mult))
                branch_roots.append(complex(x, 0.0))
            else:
                a, b = float(u[f.params[0]]), float(u[f.params[1]])
                extra.extend([f.mult, f.mult])
                branch_roots.append(complex(a, b))
                branch_roots.append(complex(a, -b))
        for i in range(len(branch_roots)):
            for j in range(i + 1, len(branch_roots)):
                if abs(branch_roots[i] - branch_roots[j]) <= config.tol_cluster:
                    raise DegenerateConfiguration(
                        "real polish collapsed two preimage roots of one branch value"
                    )
        reals.sort(key=lambda xr: xr[0])
        preimages.append(tuple(reals))
        nonreal.append(tuple(sorted(extra, reverse=True)))
        all_roots.append(branch_roots)
    full = _real_branch_poly(factors_per_branch[0], u).astype(float)
    full[-1] += spec.values[0]
    if abs(full[1]) > config.tol_residual:
        raise AmbiguousRealness("normalization coefficient did not vanish after real polish")
    res = float(
        np.max(np.abs(_real_residual_and_jacobian(system, factors_per_branch, u)[0]))
    )
    return RealPolynomial(
        d=d,
        coefficients=tuple(float(c) for c in full[2:]),
        profiles=spec.profiles,
        values=spec.values,
        real_preimages=tuple(preimages),
        nonreal_orders=tuple(nonreal),
        residual=res,
    )


def classify_real(solset: SolutionSet, config: RunConfig | None = None) -> list[RealPolynomial]:
    """Extract the real polynomials from a complete complex solution set.

    A solution counts as real when every coefficient has imaginary part
    below the realness tolerance; it is then re-polished by Newton
    restricted to real parameters (real roots plus conjugate-pair
    coordinates).  Solutions within a factor 10 of the threshold raise
    AmbiguousRealness instead of being classified either way.
    """
    config = config or RunConfig()
    if solset.certificate != "COMPLETE":
        raise ValidationError("real classification requires a COMPLETE certificate")
    if solset.spec.is_identity:
        return [
            RealPolynomial(
                d=1,
                coefficients=(),
                profiles=(),
                values=(),
                real_preimages=(),
                nonreal_orders=(),
            )
        ]
    system = build_system(solset.spec)
    reals = []
    for sol in solset.solutions:
        coeffs = np.array(sol.coefficients, dtype=complex)
        imag = float(np.max(np.abs(coeffs.imag))) if coeffs.size else 0.0
        if imag >= config.tol_real:
            if imag <= 10.0 * config.tol_real:
                raise AmbiguousRealness(
                    f"solution with max imaginary part {imag:.3e} sits within 10x of "
                    f"the realness tolerance {config.tol_real:.1e}"
                )
            continue
        point = np.array(sol.point, dtype=complex)
        factors_per_branch, u0 = _real_structure(system, point, config)
        u, ok = _real_newton(system, factors_per_branch, u0, config)
        if not ok:
            raise AmbiguousRealness("real-restricted polish failed to converge")
        reals.append(_build_real_polynomial(system, factors_per_branch, u, config))
    reals.sort(key=lambda p: p.coefficients)
    return reals
