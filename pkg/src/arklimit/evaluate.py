"""Closed-form evaluation of the lattice-sum limit.

For stationary roots lambda_1..lambda_k and a non-negative integer S, the
per-step limit of the k-fold lattice sum equals

    A = sum_j lambda_j^S * C_j,
    C_j = lambda_j^(k-1) * prod_{l != j} (1 - lambda_l^2)
          / ((lambda_j - lambda_l) * (1 - lambda_j * lambda_l)),

the C_j being the residue coefficients of the partial-fraction expansion
of the generating function

    F(t) = prod_l ( 1/(1 - t*lambda_l) + (lambda_l/t)/(1 - lambda_l/t) ),

whose Laurent coefficient of t^S on the annulus
max|lambda| < |t| < 1/max|lambda| is exactly A.  When roots (nearly)
coincide the residue formula degenerates, but the product form of F does
not; the confluent path therefore extracts the coefficient from F
directly by trapezoid contour quadrature, which is exact in the repeated
root limit with no pole subtraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import (
    ClusteredRootsError,
    InvalidParameterError,
    NoConvergenceError,
    OutsideAnnulusError,
    RealnessViolationError,
)
from .model import EvalResult, RootMultiset, validate_roots
from .summation import next_pow2, tree_sum

# Below this pairwise separation the residue formula loses more than about
# half the significant digits; evaluation switches to the confluent path.
CLUSTER_TOL = 1e-7

# Conjugate-closed input certifies a real value when
# |Im| <= REALNESS_RTOL * (1 + |value|).
REALNESS_RTOL = 1e-10

# Confluent path: refine the contour point count until two successive
# doublings agree to this relative tolerance.
_CONFLUENT_RTOL = 1e-12
_MAX_CONTOUR_POINTS = 1 << 17


@dataclass(frozen=True)
class ResidueSet:
    """Residue coefficients C_j, aligned with the root list order.

    Defined only when all pairwise root separations exceed the cluster
    threshold; each coefficient is then finite because stationarity keeps
    every product lambda_j * lambda_l away from 1.
    """

    coefficients: Tuple[complex, ...]


def _check_shift_total(shift_total: int) -> int:
    if not isinstance(shift_total, int) or isinstance(shift_total, bool):
        raise InvalidParameterError("shift total must be an integer")
    if shift_total < 0:
        raise InvalidParameterError("shift total must be non-negative")
    return shift_total


def residue_coefficients(
    roots: RootMultiset, cluster_tol: float = CLUSTER_TOL
) -> ResidueSet:
    """Compute all C_j by the displayed product formula.

    Raises ClusteredRootsError when some pair of roots is within
    ``cluster_tol``; callers must then use the confluent path.
    """
    ms = validate_roots(roots)
    if ms.min_separation() <= cluster_tol:
        raise ClusteredRootsError(
            f"minimal root separation {ms.min_separation():.3e} <= "
            f"cluster threshold {cluster_tol:.3e}"
        )
    lam = ms.roots
    k = ms.k
    out = []
    for j in range(k):
        c = lam[j] ** (k - 1)
        for l in range(k):
            if l == j:
                continue
            c *= (1.0 - lam[l] * lam[l]) / (
                (lam[j] - lam[l]) * (1.0 - lam[j] * lam[l])
            )
        out.append(c)
    return ResidueSet(tuple(out))


def certify_real(
    value: complex,
    conjugate_closed: bool,
    method: str,
    *,
    strict: bool = False,
    tail_bound: Optional[float] = None,
    clusters: Optional[Tuple[Tuple[int, ...], ...]] = None,
) -> EvalResult:
    """Wrap a computed value, projecting onto the reals when certified.

    Conjugate-closed input must produce a real limit; the imaginary part
    is discarded only after passing the realness tolerance, never
    silently.  With ``strict`` a failed certification raises
    RealnessViolationError instead of returning an uncertified result.
    """
    value = complex(value)
    max_imag = abs(value.imag)
    real_value: Optional[float] = None
    if conjugate_closed:
        if max_imag <= REALNESS_RTOL * (1.0 + abs(value)):
            real_value = value.real
        elif strict:
            raise RealnessViolationError(
                f"conjugate-closed input left imaginary residue {max_imag:.3e} "
                f"on value of magnitude {abs(value):.3e}"
            )
    return EvalResult(
        value=value,
        method=method,
        max_imag=max_imag,
        real_value=real_value,
        tail_bound=tail_bound,
        clusters=clusters,
    )


def root_clusters(
    roots: RootMultiset, cluster_tol: float = CLUSTER_TOL
) -> Tuple[Tuple[int, ...], ...]:
    """Group root indices by transitive proximity under ``cluster_tol``."""
    k = roots.k
    parent = list(range(k))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            if abs(roots.roots[i] - roots.roots[j]) <= cluster_tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    return tuple(tuple(g) for _, g in sorted(groups.items()))


def generating_function(roots: RootMultiset, t: complex) -> complex:
    """Evaluate the product form of F at a point of the annulus.

    Requires max|lambda| < |t| < 1/max|lambda| and t != 0.
    """
    ms = roots if isinstance(roots, RootMultiset) else RootMultiset(tuple(roots))
    t = complex(t)
    mu = ms.max_modulus
    if t == 0:
        raise OutsideAnnulusError("t must be nonzero")
    if mu > 0.0 and not (mu < abs(t) < 1.0 / mu):
        raise OutsideAnnulusError(
            f"|t| = {abs(t):.6g} outside annulus ({mu:.6g}, {1.0 / mu:.6g})"
        )
    value = 1.0 + 0.0j
    for lam in ms.roots:
        value *= 1.0 / (1.0 - t * lam) + lam / (t - lam)
    return value


def _gf_on_circle(roots: RootMultiset, t: np.ndarray) -> np.ndarray:
    """Product form of F on an array of points already inside the annulus."""
    value = np.ones(t.shape, dtype=complex)
    for lam in roots.roots:
        value *= 1.0 / (1.0 - t * lam) + lam / (t - lam)
    return value


# Lower clamp on the quadrature radius.  The integrand carries t^(-S), so a
# circle of radius r amplifies double-precision rounding noise by r^(-S); at
# sqrt(max|lambda|) with a tiny root this floor alone can exceed the target
# accuracy no matter how many points are used.  Any radius inside the annulus
# is analytically exact, and 0.25 keeps the noise floor near eps * 4^S while
# staying strictly inside (max|lambda|, 1/max|lambda|) whenever the clamp can
# engage (max|lambda| < 0.0625).
_MIN_CONTOUR_RADIUS = 0.25


def contour_radius(roots: RootMultiset) -> float:
    """Quadrature circle radius: geometric mean of max|lambda| and 1,
    clamped from below to limit rounding-noise amplification."""
    mu = roots.max_modulus
    if mu <= 0.0:
        raise InvalidParameterError("contour radius undefined for all-zero roots")
    return max(math.exp(0.5 * math.log(mu)), _MIN_CONTOUR_RADIUS)


def contour_value(roots: RootMultiset, shift_total: int, num_points: int) -> complex:
    """Trapezoid-rule Laurent coefficient of t^shift_total of F.

    (1/N) * sum_q F(r e^{2 pi i q / N}) (r e^{2 pi i q / N})^{-S}; the
    N-point trapezoid rule on the circle converges exponentially in N.
    All-zero root multisets are an exact special case: the coefficient is
    1 for S = 0 and 0 otherwise.
    """
    if roots.max_modulus == 0.0:
        return 1.0 + 0.0j if shift_total == 0 else 0.0 + 0.0j
    r = contour_radius(roots)
    q = np.arange(num_points)
    t = r * np.exp(2j * np.pi * q / num_points)
    terms = _gf_on_circle(roots, t) * t ** (-float(shift_total))
    return complex(tree_sum(terms)) / num_points


def _initial_contour_points(roots: RootMultiset, shift_total: int) -> int:
    """Point count sized so aliasing sits near the doubling tolerance.

    At radius sqrt(mu) the slowest aliasing term decays like
    mu^(N/2 - S), so N ~ 2 (S + log(target) / log(mu)); with the clamped
    radius the decay is faster and this estimate is conservative.
    """
    mu = roots.max_modulus
    base = max(64, 2 * (shift_total + 8))
    if 0.0 < mu < 1.0:
        need = 2.0 * (shift_total + math.log(1e-13) / math.log(mu))
        base = max(base, int(math.ceil(need)))
    return min(next_pow2(base), _MAX_CONTOUR_POINTS)


def lattice_sum_limit_confluent(
    roots: RootMultiset,
    shift_total: int,
    cluster_tol: float = CLUSTER_TOL,
) -> EvalResult:
    """Limit evaluation that tolerates repeated and clustered roots.

    Equals the limiting value of the distinct-root formula as clustered
    roots coalesce.  Implemented by contour coefficient extraction on the
    product form of F, which stays exact for every multiplicity pattern;
    taking one limit per coincidence symbolically would instead hard-code
    each pattern.  The point count doubles until two successive values
    agree to a relative 1e-12.
    """
    ms = validate_roots(roots)
    shift_total = _check_shift_total(shift_total)
    clusters = root_clusters(ms, cluster_tol)

    if ms.max_modulus == 0.0:
        value = 1.0 + 0.0j if shift_total == 0 else 0.0 + 0.0j
        return certify_real(
            value, ms.conjugate_closed, "confluent", strict=True, clusters=clusters
        )

    n = _initial_contour_points(ms, shift_total)
    prev = contour_value(ms, shift_total, n)
    while n < _MAX_CONTOUR_POINTS:
        n *= 2
        curr = contour_value(ms, shift_total, n)
        if abs(curr - prev) <= _CONFLUENT_RTOL * (1.0 + abs(curr)):
            return certify_real(
                curr, ms.conjugate_closed, "confluent", strict=True, clusters=clusters
            )
        prev = curr
    raise NoConvergenceError(
        f"contour refinement did not stabilize within {_MAX_CONTOUR_POINTS} points "
        f"(max root modulus {ms.max_modulus:.6g})"
    )


def lattice_sum_limit(
    roots: RootMultiset,
    shift_total: int,
    cluster_tol: float = CLUSTER_TOL,
) -> EvalResult:
    """Closed-form limit sum_j lambda_j^S C_j for stationary roots.

    Delegates to the confluent path when some pair of roots is within
    ``cluster_tol``.  Conjugate-closed input is certified real; a failed
    certification raises RealnessViolationError because the closed form
    of a conjugate-closed multiset is real exactly.
    """
    ms = validate_roots(roots)
    shift_total = _check_shift_total(shift_total)
    if ms.min_separation() <= cluster_tol:
        return lattice_sum_limit_confluent(ms, shift_total, cluster_tol)
    residues = residue_coefficients(ms, cluster_tol)
    value = 0.0 + 0.0j
    for lam, c in zip(ms.roots, residues.coefficients):
        value += lam**shift_total * c
    return certify_real(value, ms.conjugate_closed, "distinct_residues", strict=True)
