"""Independent oracles shared by the test modules.

Everything here recomputes expected values by a route different from the
library code under test: raw product enumeration without pruning, numpy
root finding on coefficient polynomials, finite differences, and closed
form solution families eliminated by hand.
"""

from __future__ import annotations

import itertools

import numpy as np

from realhurwitz import RealPolynomial, enumerate_class
from realhurwitz.factorizations import compose, full_cycle
from realhurwitz.polysolve import residual


def brute_count(profiles, d, base_cycle=None):
    """Exhaustive factorization count over raw permutation tuples, no pruning.

    Enumerates the full cartesian product of all k conjugacy classes and
    checks each complete product against the fixed cycle.  Only usable for
    small d.
    """
    alpha = full_cycle(d) if base_cycle is None else tuple(base_cycle)
    classes = [list(enumerate_class(d, lam)) for lam in profiles]
    count = 0
    for tup in itertools.product(*classes):
        prod = tup[0]
        for sigma in tup[1:]:
            prod = compose(prod, sigma)
        if prod == alpha:
            count += 1
    return count


def fd_jacobian(system, x, h=1e-6):
    """Central-difference Jacobian; valid since the equations are holomorphic."""
    x = np.asarray(x, dtype=complex)
    n = x.size
    jac = np.zeros((n, n), dtype=complex)
    for j in range(n):
        bump = np.zeros(n, dtype=complex)
        bump[j] = h
        jac[:, j] = (residual(system, x + bump) - residual(system, x - bump)) / (2 * h)
    return jac


def preimages_from_coefficients(full_coeffs, w, tol=1e-5):
    """Real preimages of w with multiplicities, recovered by numpy root finding.

    Clusters the roots of P - w (coefficients highest degree first) that sit
    within tol of each other, then keeps the clusters whose center is real.
    """
    shifted = np.array(full_coeffs, dtype=complex)
    shifted[-1] -= w
    roots = sorted(np.roots(shifted), key=lambda z: (round(z.real, 8), round(z.imag, 8)))
    clusters: list[list[complex]] = []
    for r in roots:
        for cluster in clusters:
            if abs(r - cluster[0]) < tol:
                cluster.append(r)
                break
        else:
            clusters.append([r])
    out = []
    for cluster in clusters:
        center = sum(cluster) / len(cluster)
        if abs(center.imag) < tol:
            out.append((center.real, len(cluster)))
    out.sort(key=lambda xr: xr[0])
    return out


def real_polynomial_from_factored(d, coefficients, branch_data, values, profiles):
    """Build a RealPolynomial directly from known factored data (test construction)."""
    return RealPolynomial(
        d=d,
        coefficients=tuple(coefficients),
        profiles=tuple(profiles),
        values=tuple(values),
        real_preimages=tuple(tuple(seq) for seq, _ in branch_data),
        nonreal_orders=tuple(tuple(extra) for _, extra in branch_data),
    )


def cubic_solution_coefficients(w1, w2):
    """All (p, q) with z^3 + p z + q having branch values w1, w2 over profiles (2,1).

    Eliminating by hand: critical points +-c with p = -3 c^2, the two
    critical values are q -+ 2 c^3, so q = (w1 + w2) / 2 and 4 c^3 = w2 - w1.
    """
    q = (w1 + w2) / 2.0
    base = (w2 - w1) / 4.0
    out = []
    for k in range(3):
        c = abs(base) ** (1.0 / 3.0) * np.exp(2j * np.pi * k / 3.0)
        if base < 0:
            c = -c
        out.append((-3.0 * c * c, complex(q)))
    return out


def quartic_double_solutions(w_single, w_double):
    """Solutions (z^2 + v)^2 + w_double for profiles (2,1,1) at w_single, (2,2) at w_double.

    v^2 = w_single - w_double; expanding gives coefficients (2v, 0, v^2 + w_double).
    """
    v2 = complex(w_single - w_double)
    out = []
    for v in (np.sqrt(v2), -np.sqrt(v2)):
        out.append((2.0 * v, 0.0 * v, v * v + w_double))
    return out


def quartic_cusp_solutions(w_triple, w_simple):
    """Solutions (z - a)^3 (z + 3a) + w_triple for profiles (3,1) at w_triple, (2,1,1) at w_simple.

    The free critical point sits at -2a with value w_triple - 27 a^4, so
    27 a^4 = w_triple - w_simple; expansion gives (-6a^2, 8a^3, w_triple - 3a^4).
    """
    a4 = complex(w_triple - w_simple) / 27.0
    a0 = a4 ** 0.25
    out = []
    for k in range(4):
        a = a0 * np.exp(2j * np.pi * k / 4.0)
        out.append((-6.0 * a * a, 8.0 * a**3, w_triple - 3.0 * a**4))
    return out


def match_coefficient_sets(found, expected, tol=1e-8):
    """Each expected coefficient vector matches exactly one found vector, and back."""
    found = [np.asarray(f, dtype=complex) for f in found]
    expected = [np.asarray(e, dtype=complex) for e in expected]
    if len(found) != len(expected):
        return False
    used = set()
    for e in expected:
        hit = None
        for i, f in enumerate(found):
            if i in used:
                continue
            if np.max(np.abs(f - e)) < tol:
                hit = i
                break
        if hit is None:
            return False
        used.add(hit)
    return True
