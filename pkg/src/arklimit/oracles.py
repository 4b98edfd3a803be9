"""Independent brute-force evaluations that verify the closed form.

Three routes, none of which shares code with the residue formula:

* direct enumeration of the k-fold lattice sum with slope extraction,
* truncated enumeration of the shift-constrained tuple sum by iterated
  convolution, with a certified geometric tail bound,
* Laurent coefficient extraction by trapezoid contour quadrature.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import (
    BudgetExceededError,
    InvalidParameterError,
    LengthMismatchError,
)
from .evaluate import certify_real, contour_value
from .model import EvalResult, RootMultiset, ShiftVector, validate_roots
from .summation import next_pow2, tree_sum

# Hard ceiling on enumerated index tuples; keeps the O(n^k) oracle desk-scale.
DIRECT_SUM_BUDGET = 10**9

# Ceilings on the other oracles' working sets, for the same reason.
TRUNCATION_BUDGET = 10**6
CONTOUR_POINT_BUDGET = 1 << 22

# At max|lambda| <= 0.9, 0.9^150 ~ 1.4e-7 puts the exponential contamination
# of the slope below the acceptance tolerances.
DEFAULT_SLOPE_N1 = 150
DEFAULT_SLOPE_N2 = 200

_DEFAULT_BLOCK_SIZE = 1 << 19


@dataclass(frozen=True)
class SlopeEstimate:
    """Difference quotient of two finite lattice sums.

    value = (T(n2) - T(n1)) / (n2 - n1); converges to the limit with error
    decaying geometrically in n1 at rate max|lambda|.
    """

    value: complex
    n1: int
    n2: int
    raw_sums: Tuple[complex, complex]


def _power_tables(roots: RootMultiset, shifts: ShiftVector, n: int) -> list[np.ndarray]:
    # k = 1 closes the index cycle on itself, so the exponent is the
    # constant |s|; the general bound is (n - 1) + |s|.
    span = 1 if roots.k == 1 else n
    return [
        np.asarray(lam, dtype=complex) ** np.arange(span + abs(s))
        for lam, s in zip(roots.roots, shifts.shifts)
    ]


def _block_terms_sum(
    tables: list[np.ndarray],
    shifts: Tuple[int, ...],
    n: int,
    lo: int,
    hi: int,
    block_size: int,
) -> complex:
    """Pairwise-tree sum of lattice terms for flat lexicographic indices
    [lo, hi), zero-padded to the full block so every block is an aligned
    subtree of one global reduction tree."""
    k = len(tables)
    f = np.arange(lo, hi, dtype=np.int64)
    digits = [(f // (n ** (k - 1 - j))) % n for j in range(k)]
    terms = np.ones(hi - lo, dtype=complex)
    for j in range(k):
        exponents = np.abs(digits[j] - digits[(j + 1) % k] - shifts[j])
        terms *= tables[j][exponents]
    if hi - lo < block_size:
        terms = np.concatenate(
            [terms, np.zeros(block_size - (hi - lo), dtype=complex)]
        )
    return complex(tree_sum(terms))


def lattice_sum_direct(
    roots: RootMultiset,
    shifts: ShiftVector,
    n: int,
    *,
    block_size: int = _DEFAULT_BLOCK_SIZE,
    workers: int = 1,
) -> complex:
    """Direct sum over all (i_1..i_k) in {1..n}^k of
    prod_p lambda_p^|i_p - i_{p+1} - s_p| with i_{k+1} = i_1.

    Summation follows the fixed pairwise tree over the lexicographic index
    enumeration, so the result is bit-identical for every power-of-two
    ``block_size`` and every ``workers`` count.  Rejects requests beyond
    the 10^9 index-tuple budget.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidParameterError("n must be a positive integer")
    if roots.k != shifts.k:
        raise LengthMismatchError(
            f"{roots.k} roots but {shifts.k} shifts; lengths must agree"
        )
    if block_size < 2 or block_size & (block_size - 1):
        raise InvalidParameterError("block_size must be a power of two >= 2")
    if workers < 1:
        raise InvalidParameterError("workers must be >= 1")
    k = roots.k
    total = n**k
    if total > DIRECT_SUM_BUDGET:
        raise BudgetExceededError(
            f"n^k = {total} exceeds the {DIRECT_SUM_BUDGET} index-tuple budget"
        )

    tables = _power_tables(roots, shifts, n)
    svec = shifts.shifts
    n_blocks = (total + block_size - 1) // block_size

    def one_block(b: int) -> complex:
        lo = b * block_size
        hi = min(lo + block_size, total)
        return _block_terms_sum(tables, svec, n, lo, hi, block_size)

    if workers == 1 or n_blocks == 1:
        block_sums = [one_block(b) for b in range(n_blocks)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            block_sums = list(pool.map(one_block, range(n_blocks)))
    return complex(tree_sum(np.asarray(block_sums, dtype=complex)))


def slope_estimate(
    roots: RootMultiset,
    shifts: ShiftVector,
    n1: int = DEFAULT_SLOPE_N1,
    n2: int = DEFAULT_SLOPE_N2,
    **direct_kwargs,
) -> SlopeEstimate:
    """Estimate the per-step growth of the lattice sum by differencing.

    The n-linear term survives the difference quotient exactly while the
    constant part cancels and the exponential part is geometrically dead
    for n1 large against 1/(1 - max|lambda|).
    """
    if not (isinstance(n1, int) and isinstance(n2, int) and 1 <= n1 < n2):
        raise InvalidParameterError("need integers 1 <= n1 < n2")
    t1 = lattice_sum_direct(roots, shifts, n1, **direct_kwargs)
    t2 = lattice_sum_direct(roots, shifts, n2, **direct_kwargs)
    return SlopeEstimate(
        value=(t2 - t1) / (n2 - n1), n1=n1, n2=n2, raw_sums=(t1, t2)
    )


def _tail_bound(roots: RootMultiset, max_abs: int) -> float:
    """Certified bound on the mass of tuples with some |m_p| > max_abs.

    Union bound over which coordinate exceeds the cutoff: the geometric
    tail 2|lambda_p|^(M+1) / (1 - |lambda_p|) times the closed-form
    absolute sum (1+|lambda_q|)/(1-|lambda_q|) of every other factor.
    """
    mods = [abs(lam) for lam in roots.roots]
    if len(mods) == 1:
        # The constraint sum(m) = S pins the single coordinate; with
        # max_abs >= S there is nothing beyond the cutoff.
        return 0.0
    full = [(1.0 + m) / (1.0 - m) for m in mods]
    total = 0.0
    for p, m in enumerate(mods):
        if m == 0.0:
            continue
        tail_p = 2.0 * m ** (max_abs + 1) / (1.0 - m)
        rest = 1.0
        for q, f in enumerate(full):
            if q != p:
                rest *= f
        total += tail_p * rest
    return total


def truncated_tuple_sum(
    roots: RootMultiset, shift_total: int, max_abs: int
) -> EvalResult:
    """Sum over integer tuples (m_1..m_k) with sum m_p = shift_total and
    all |m_p| <= max_abs of prod_p lambda_p^|m_p|.

    Computed as one coefficient of the iterated convolution of the k
    truncated two-sided sequences (lambda_p^|m|), costing O(k^2 M^2)
    instead of enumerating (2M+1)^(k-1) tuples, and entirely independent
    of the residue formula.  ``tail_bound`` certifies the truncation
    error.
    """
    ms = validate_roots(roots)
    if not isinstance(shift_total, int) or shift_total < 0:
        raise InvalidParameterError("shift total must be a non-negative integer")
    if not isinstance(max_abs, int) or max_abs < shift_total:
        raise InvalidParameterError("max_abs must be an integer >= shift total")
    if max_abs > TRUNCATION_BUDGET:
        raise BudgetExceededError(
            f"max_abs = {max_abs} exceeds the {TRUNCATION_BUDGET} truncation budget"
        )

    offsets = np.abs(np.arange(-max_abs, max_abs + 1))
    conv = np.asarray(ms.roots[0], dtype=complex) ** offsets
    for lam in ms.roots[1:]:
        conv = np.convolve(conv, np.asarray(lam, dtype=complex) ** offsets)
    value = complex(conv[shift_total + ms.k * max_abs])
    return certify_real(
        value,
        ms.conjugate_closed,
        "truncated",
        tail_bound=_tail_bound(ms, max_abs),
    )


def choose_truncation(roots: RootMultiset, tol: float = 1e-12) -> int:
    """Smallest cutoff whose certified tail bound is at most ``tol``."""
    ms = validate_roots(roots)
    if tol <= 0.0:
        raise InvalidParameterError("tol must be positive")
    if ms.k == 1:
        return 0
    mods = [abs(lam) for lam in ms.roots]
    full = [(1.0 + m) / (1.0 - m) for m in mods]
    max_abs = 1
    for p, m in enumerate(mods):
        if m == 0.0:
            continue
        rest = 1.0
        for q, f in enumerate(full):
            if q != p:
                rest *= f
        # 2 m^(M+1) / (1-m) * rest <= tol / k
        needed = math.log(tol * (1.0 - m) / (2.0 * ms.k * rest)) / math.log(m)
        max_abs = max(max_abs, int(math.ceil(needed - 1.0)))
    while _tail_bound(ms, max_abs) > tol:
        max_abs += 1
    return max_abs


def contour_coefficient(
    roots: RootMultiset, shift_total: int, num_points: int
) -> EvalResult:
    """Laurent coefficient of t^shift_total of the generating function by
    the N-point trapezoid rule on the quadrature circle (radius
    sqrt(max|lambda|), clamped from below; see evaluate.contour_radius).

    Exponentially convergent in N; aliasing decays no slower than
    max|lambda|^(N/2 - S), so size N accordingly.
    """
    ms = validate_roots(roots)
    if not isinstance(shift_total, int) or shift_total < 0:
        raise InvalidParameterError("shift total must be a non-negative integer")
    if not isinstance(num_points, int) or num_points < 2 * (shift_total + 8):
        raise InvalidParameterError(
            f"num_points must be an integer >= 2 * (shift_total + 8) = "
            f"{2 * (shift_total + 8)}"
        )
    if num_points > CONTOUR_POINT_BUDGET:
        raise BudgetExceededError(
            f"num_points = {num_points} exceeds the {CONTOUR_POINT_BUDGET} "
            "quadrature budget"
        )
    value = contour_value(ms, shift_total, num_points)
    return certify_real(value, ms.conjugate_closed, "contour")


def default_contour_points(roots: RootMultiset, shift_total: int) -> int:
    """Point count that pushes aliasing below ~1e-13 for the given roots."""
    mu = roots.max_modulus
    base = max(128, 2 * (shift_total + 8))
    if 0.0 < mu < 1.0:
        base = max(
            base, int(math.ceil(2.0 * (shift_total + math.log(1e-13) / math.log(mu))))
        )
    return min(next_pow2(base), 1 << 17)
