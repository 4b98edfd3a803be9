"""Shared test helpers: reference brute-force implementations and root-set
generators.

The reference implementations here deliberately share no code with the
package: plain tuple enumeration and term-by-term accumulation, so they
can arbitrate when the fast paths disagree.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from hypothesis import settings

from arklimit import RootMultiset

settings.register_profile("numeric", deadline=None, max_examples=50)
settings.load_profile("numeric")


def naive_lattice_sum(roots, shifts, n: int) -> complex:
    """Literal enumeration of the k-fold lattice sum; O(n^k) scalar ops."""
    lams = list(roots.roots) if isinstance(roots, RootMultiset) else list(roots)
    svec = list(shifts.shifts) if hasattr(shifts, "shifts") else list(shifts)
    k = len(lams)
    total = 0.0 + 0.0j
    for tup in itertools.product(range(1, n + 1), repeat=k):
        term = 1.0 + 0.0j
        for p in range(k):
            term *= lams[p] ** abs(tup[p] - tup[(p + 1) % k] - svec[p])
        total += term
    return total


def naive_tuple_sum(roots, total_shift: int, max_abs: int) -> complex:
    """Literal enumeration of the constrained tuple sum over
    (m_1..m_k) with sum = total_shift, |m_p| <= max_abs."""
    lams = list(roots.roots) if isinstance(roots, RootMultiset) else list(roots)
    k = len(lams)
    total = 0.0 + 0.0j
    for rest in itertools.product(range(-max_abs, max_abs + 1), repeat=k - 1):
        m1 = total_shift - sum(rest)
        if abs(m1) > max_abs:
            continue
        term = lams[0] ** abs(m1)
        for p, m in enumerate(rest):
            term *= lams[p + 1] ** abs(m)
        total += term
    return total


def random_conjugate_closed_roots(
    rng: np.random.Generator,
    k: int,
    max_modulus: float = 0.9,
    min_separation: float = 0.15,
) -> RootMultiset:
    """Stationary multiset, conjugate-closed or all-real, with every
    pairwise separation above ``min_separation``."""
    while True:
        n_pairs = int(rng.integers(0, k // 2 + 1))
        roots: list[complex] = []
        for _ in range(n_pairs):
            rho = rng.uniform(0.2, max_modulus)
            theta = rng.uniform(0.3, math.pi - 0.3)
            z = complex(rho * math.cos(theta), rho * math.sin(theta))
            roots.extend([z, z.conjugate()])
        while len(roots) < k:
            roots.append(complex(rng.uniform(-max_modulus, max_modulus), 0.0))
        if all(
            abs(a - b) > min_separation
            for i, a in enumerate(roots)
            for b in roots[i + 1 :]
        ):
            return RootMultiset(tuple(roots))


def random_shifts(rng: np.random.Generator, k: int, span: int = 3):
    from arklimit import ShiftVector

    return ShiftVector(tuple(int(s) for s in rng.integers(-span, span + 1, size=k)))
