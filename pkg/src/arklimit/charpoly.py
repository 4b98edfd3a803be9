"""Characteristic polynomial construction and all-roots extraction.

The monic characteristic polynomial of an order-k autoregression is

    lambda^k - alpha_1 lambda^(k-1) - ... - alpha_k = 0

and its k roots govern stationarity and correlation decay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .errors import InvalidParameterError, NoConvergenceError
from .model import ARCoefficients, RootMultiset

DEFAULT_TOL = 1e-13
DEFAULT_MAX_ITER = 200

# Fixed rotation of the initial root circle; breaks the symmetry of
# polynomials like lambda^k - c whose roots are themselves equally spaced.
_START_ROTATION = 0.42


@dataclass(frozen=True)
class MonicPolynomial:
    """Real coefficients, highest degree first, leading coefficient exactly 1."""

    coefficients: Tuple[float, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(float(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) < 2:
            raise InvalidParameterError("a monic polynomial needs degree >= 1")
        if coeffs[0] != 1.0:
            raise InvalidParameterError("leading coefficient must be exactly 1")
        for c in coeffs:
            if not math.isfinite(c):
                raise InvalidParameterError("coefficients must be finite")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def char_polynomial(alphas: ARCoefficients) -> MonicPolynomial:
    """Monic characteristic polynomial [1, -alpha_1, ..., -alpha_k]."""
    return MonicPolynomial((1.0,) + tuple(-a for a in alphas.alphas))


def _expand_roots(roots: Sequence[complex]) -> np.ndarray:
    """Coefficients (highest first) of the monic polynomial prod (x - r)."""
    c = np.array([1.0 + 0.0j])
    for r in roots:
        c = np.convolve(c, np.array([1.0, -r], dtype=complex))
    return c


def poly_from_roots(roots: "RootMultiset | Sequence[complex]") -> MonicPolynomial:
    """Expand a conjugate-closed root multiset into a real monic polynomial."""
    ms = roots if isinstance(roots, RootMultiset) else RootMultiset(tuple(roots))
    c = _expand_roots(ms.roots)
    scale = 1.0 + float(np.max(np.abs(c)))
    if float(np.max(np.abs(c.imag))) > 1e-10 * scale:
        raise InvalidParameterError(
            "roots are not conjugate-closed; expansion has complex coefficients"
        )
    return MonicPolynomial(tuple(c.real))


def coefficient_residual(poly: MonicPolynomial, roots: Sequence[complex]) -> float:
    """Max absolute difference between poly and the expansion of roots.

    Surfaced so callers can judge conditioning near the unit circle.
    """
    c = np.asarray(poly.coefficients, dtype=complex)
    return float(np.max(np.abs(_expand_roots(roots) - c)))


def _residual_target(poly: MonicPolynomial) -> float:
    k = poly.degree
    return k * 1e-10 * (1.0 + max(abs(c) for c in poly.coefficients))


def _sorted_multiset(z: np.ndarray) -> RootMultiset:
    order = np.lexsort((z.imag, z.real))
    return RootMultiset(tuple(complex(v) for v in z[order]))


def solve_roots(
    poly: MonicPolynomial,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RootMultiset:
    """Extract all k roots of a monic polynomial.

    Simultaneous Aberth-Ehrlich iteration from equally spaced starting
    points on a circle of radius 1 + max|coefficient|, slightly rotated to
    break symmetry.  All roots are refined together, so there is no
    deflation error accumulation.  Iteration stops when every correction
    is below ``tol`` relative to the root magnitude.

    For repeated roots the corrections plateau instead of converging; in
    that case the result must still reconstruct the input coefficients to
    max residual k * 1e-10 * (1 + max|coefficient|), and a backward-stable
    companion-matrix solve is used as fallback.  Repeated roots come back
    as numerically close distinct values; clustering them is the
    evaluator's concern, not this module's.

    Output is sorted by (real, imag) and bit-deterministic: identical
    input bits produce identical output bits.
    """
    if tol <= 0.0:
        raise InvalidParameterError("tol must be positive")
    if max_iter < 1:
        raise InvalidParameterError("max_iter must be >= 1")
    c = np.asarray(poly.coefficients, dtype=complex)
    k = poly.degree
    target = _residual_target(poly)

    if k == 1:
        return RootMultiset((complex(-c[1]),))

    dc = c[:-1] * np.arange(k, 0, -1)
    radius = 1.0 + float(np.max(np.abs(c)))
    z = radius * np.exp(1j * (2.0 * np.pi * np.arange(k) / k + _START_ROTATION))

    tiny = np.finfo(float).tiny
    converged = False
    for _ in range(max_iter):
        p = np.polyval(c, z)
        dp = np.polyval(dc, z)
        dp = np.where(dp == 0, tiny, dp)
        w = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        denom = 1.0 - w * inv.sum(axis=1)
        denom = np.where(denom == 0, tiny, denom)
        corr = w / denom
        z = z - corr
        if np.all(np.abs(corr) <= tol * (1.0 + np.abs(z))):
            converged = True
            break

    if converged and float(np.max(np.abs(_expand_roots(z) - c))) <= target:
        return _sorted_multiset(z)

    # Repeated roots: simultaneous iteration stalls at the cluster radius and
    # its backward error never reaches the residual target.  Companion-matrix
    # eigenvalues are backward stable for every multiplicity pattern.
    z = np.roots(np.asarray(poly.coefficients, dtype=float)).astype(complex)
    if float(np.max(np.abs(_expand_roots(z) - c))) <= target:
        return _sorted_multiset(z)
    raise NoConvergenceError(
        f"root refinement did not reach residual target {target:.3e}"
    )


def is_stationary(roots: RootMultiset) -> bool:
    """True iff every root is strictly inside the unit disk."""
    return roots.is_stationary


def match_roots(
    computed: "RootMultiset | Sequence[complex]",
    reference: "RootMultiset | Sequence[complex]",
) -> np.ndarray:
    """Per-root distances under the minimal-cost pairing of two multisets."""
    from scipy.optimize import linear_sum_assignment

    a = np.asarray(
        computed.roots if isinstance(computed, RootMultiset) else list(computed),
        dtype=complex,
    )
    b = np.asarray(
        reference.roots if isinstance(reference, RootMultiset) else list(reference),
        dtype=complex,
    )
    if a.shape != b.shape:
        raise InvalidParameterError("multisets must have equal cardinality")
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return cost[rows, cols]
