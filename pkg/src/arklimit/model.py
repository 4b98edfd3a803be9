"""Core domain types shared by every other module.

All types are immutable after construction and safe to share across
threads without synchronization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

from .errors import EmptyInputError, InvalidParameterError, NonStationaryError

# Two roots pair as conjugates when |a - conj(b)| <= PAIRING_RTOL * max(1, |a|);
# numerical root solvers return conjugate pairs only approximately.
PAIRING_RTOL = 1e-12

# Strict |lambda| < 1 by default; callers may demand a positive margin because
# truncation bounds of the brute-force oracles degrade as max|lambda| -> 1.
DEFAULT_STATIONARITY_MARGIN = 0.0

EVAL_METHODS = ("distinct_residues", "confluent", "contour", "truncated")


def _check_finite_complex(values: Iterable[complex], what: str) -> None:
    for v in values:
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise InvalidParameterError(f"{what} must be finite, got {v!r}")


@dataclass(frozen=True)
class ARCoefficients:
    """Autoregression weights alpha_1..alpha_k of an order-k model."""

    alphas: Tuple[float, ...]

    def __post_init__(self) -> None:
        alphas = tuple(float(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if len(alphas) == 0:
            raise EmptyInputError("at least one autoregression coefficient required")
        for a in alphas:
            if not math.isfinite(a):
                raise InvalidParameterError(f"coefficients must be finite, got {a!r}")
        # A zero trailing coefficient overstates the order; silently trimming it
        # would desynchronize k across shift vectors and root multisets.
        if alphas[-1] == 0.0:
            raise InvalidParameterError(
                "trailing coefficient alpha_k must be nonzero (order overstated)"
            )

    @property
    def k(self) -> int:
        return len(self.alphas)


def _canonical_order(roots: Sequence[complex]) -> list[complex]:
    return sorted(roots, key=lambda z: (z.real, z.imag))


def _is_conjugate_closed(roots: Sequence[complex], rtol: float = PAIRING_RTOL) -> bool:
    """True iff every root's conjugate appears with equal multiplicity.

    Greedy closest-match over the canonically sorted list; invariant under
    permutation of the input.
    """
    pool = _canonical_order(roots)
    while pool:
        a = pool.pop(0)
        tol = rtol * max(1.0, abs(a))
        if abs(a - a.conjugate()) <= tol:
            continue  # effectively real, pairs with itself
        best_i, best_d = -1, math.inf
        for i, b in enumerate(pool):
            d = abs(a - b.conjugate())
            if d < best_d:
                best_i, best_d = i, d
        if best_i < 0 or best_d > tol:
            return False
        pool.pop(best_i)
    return True


@dataclass(frozen=True)
class RootMultiset:
    """The multiset {lambda_1..lambda_k} of characteristic roots.

    Roots may be complex and repeated.  ``conjugate_closed`` records
    whether the multiset equals its complex conjugate within the pairing
    tolerance, which is what licenses projecting evaluation results onto
    the reals.
    """

    roots: Tuple[complex, ...]
    conjugate_closed: bool = field(init=False)

    def __post_init__(self) -> None:
        roots = tuple(complex(r) for r in self.roots)
        object.__setattr__(self, "roots", roots)
        if len(roots) == 0:
            raise EmptyInputError("a root multiset must contain at least one root")
        _check_finite_complex(roots, "roots")
        object.__setattr__(self, "conjugate_closed", _is_conjugate_closed(roots))

    @property
    def k(self) -> int:
        return len(self.roots)

    @property
    def max_modulus(self) -> float:
        return max(abs(r) for r in self.roots)

    @property
    def is_stationary(self) -> bool:
        return self.max_modulus < 1.0

    def min_separation(self) -> float:
        """Smallest pairwise distance; inf for a single root."""
        if self.k < 2:
            return math.inf
        return min(
            abs(self.roots[i] - self.roots[j])
            for i in range(self.k)
            for j in range(i + 1, self.k)
        )


def validate_roots(
    roots: "RootMultiset | Iterable[complex]",
    stationarity_margin: float = DEFAULT_STATIONARITY_MARGIN,
) -> RootMultiset:
    """Check a root multiset for downstream evaluation use.

    Raises NonStationaryError unless max|lambda| < 1 - stationarity_margin.
    Idempotent: validating an already validated multiset is a no-op.
    """
    ms = roots if isinstance(roots, RootMultiset) else RootMultiset(tuple(roots))
    if not 0.0 <= stationarity_margin < 1.0:
        raise InvalidParameterError("stationarity_margin must be in [0, 1)")
    limit = 1.0 - stationarity_margin
    if ms.max_modulus >= limit:
        raise NonStationaryError(
            f"max root modulus {ms.max_modulus:.6g} >= {limit:.6g}; "
            "evaluation requires all roots strictly inside the unit disk"
        )
    return ms


@dataclass(frozen=True)
class ShiftVector:
    """Integer shifts s_1..s_k; results depend on them only through
    the absolute value of their sum."""

    shifts: Tuple[int, ...]

    def __post_init__(self) -> None:
        shifts = tuple(self.shifts)
        object.__setattr__(self, "shifts", shifts)
        if len(shifts) == 0:
            raise EmptyInputError("a shift vector must contain at least one entry")
        for s in shifts:
            if not isinstance(s, int) or isinstance(s, bool):
                raise InvalidParameterError(f"shifts must be integers, got {s!r}")

    @property
    def k(self) -> int:
        return len(self.shifts)

    @property
    def total(self) -> int:
        """|s_1 + ... + s_k|; invariant under permutation and global negation."""
        return abs(sum(self.shifts))


@dataclass(frozen=True)
class EvalResult:
    """A computed limit value plus diagnostics.

    ``real_value`` is present only when the input was conjugate-closed and
    the imaginary residue passed certification; ``tail_bound`` is a
    certified truncation-error bound for truncated oracles; ``clusters``
    describes the root groups used by the confluent path.
    """

    value: complex
    method: str
    max_imag: float
    real_value: Optional[float] = None
    tail_bound: Optional[float] = None
    clusters: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self) -> None:
        if self.method not in EVAL_METHODS:
            raise InvalidParameterError(f"unknown evaluation method {self.method!r}")
        if self.max_imag < 0.0:
            raise InvalidParameterError("max_imag must be non-negative")
        if self.tail_bound is not None and self.tail_bound < 0.0:
            raise InvalidParameterError("tail_bound must be non-negative")
