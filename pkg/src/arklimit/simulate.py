"""AR(k) sample paths and the sums that ground the abstract limits.

The recursion X_i = alpha_1 X_{i-1} + ... + alpha_k X_{i-k} + eps_i is
driven by Gaussian noise from a fully specified deterministic generator
so that any series can be regenerated bit-identically from its
parameters and seed, on any machine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.signal import lfilter

from .charpoly import char_polynomial, solve_roots
from .errors import (
    InvalidParameterError,
    LagTooLargeError,
    LengthMismatchError,
)
from .model import ARCoefficients, RootMultiset, validate_roots
from .summation import tree_sum


def gaussian_variates(seed: int, count: int) -> np.ndarray:
    """Standard normal draws from a counter-based generator.

    Generator: Philox4x64-10 keyed by ``seed`` with the counter starting
    at zero.  Each raw 64-bit word maps to a uniform on (0, 1] via
    ((word >> 11) + 1) * 2^-53, and uniform pairs (u1, u2) map to normal
    pairs by the Box-Muller transform

        z0 = sqrt(-2 ln u1) cos(2 pi u2),
        z1 = sqrt(-2 ln u1) sin(2 pi u2),

    interleaved in that order.  Every step is an explicit formula, so the
    stream is reproducible from these constants alone.
    """
    if count < 0:
        raise InvalidParameterError("count must be non-negative")
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise InvalidParameterError("seed must be a non-negative integer")
    if seed >= 1 << 128:
        raise InvalidParameterError("seed must fit the 128-bit generator key")
    if count == 0:
        return np.empty(0)
    pairs = (count + 1) // 2
    raw = np.random.Philox(key=seed).random_raw(2 * pairs)
    u1 = ((raw[0::2] >> np.uint64(11)) + np.uint64(1)) * 2.0**-53
    u2 = ((raw[1::2] >> np.uint64(11)) + np.uint64(1)) * 2.0**-53
    radius = np.sqrt(-2.0 * np.log(u1))
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(2.0 * np.pi * u2)
    z[1::2] = radius * np.sin(2.0 * np.pi * u2)
    return z[:count]


@dataclass(frozen=True, eq=False)
class SeriesSample:
    """A simulated path together with everything needed to regenerate it.

    Equality is identity: comparing element arrays is the caller's call.
    """

    values: np.ndarray
    alphas: ARCoefficients
    sigma: float
    seed: int
    burn_in: int

    @property
    def n(self) -> int:
        return len(self.values)


def default_burn_in(roots: RootMultiset) -> int:
    """10 k / (1 - max|lambda|) steps; geometric forgetting puts the
    zero-initialization bias below sampling noise at this depth."""
    return int(math.ceil(10.0 * roots.k / (1.0 - roots.max_modulus)))


def simulate(
    alphas: ARCoefficients,
    sigma: float = 1.0,
    n: int = 1,
    burn_in: Optional[int] = None,
    seed: int = 0,
) -> SeriesSample:
    """Generate n observations of the stationary-phase autoregression.

    The k pre-sample values start at zero, the recursion runs for
    burn_in + n steps and the last n are kept.  Identical
    (alphas, sigma, n, burn_in, seed) regenerate the series bit for bit.
    """
    if sigma <= 0.0 or not math.isfinite(sigma):
        raise InvalidParameterError("sigma must be positive and finite")
    if not isinstance(n, int) or n < 1:
        raise InvalidParameterError("n must be a positive integer")
    roots = validate_roots(solve_roots(char_polynomial(alphas)))
    if burn_in is None:
        burn_in = default_burn_in(roots)
    elif not isinstance(burn_in, int) or burn_in < 0:
        raise InvalidParameterError("burn_in must be a non-negative integer")
    eps = sigma * gaussian_variates(seed, burn_in + n)
    denom = np.concatenate(([1.0], -np.asarray(alphas.alphas)))
    path = lfilter([1.0], denom, eps)
    values = np.array(path[burn_in:])
    values.flags.writeable = False
    return SeriesSample(
        values=values, alphas=alphas, sigma=sigma, seed=seed, burn_in=burn_in
    )


def series_sum(series: SeriesSample) -> float:
    """Sum of the observations, pairwise-tree reduced."""
    return float(tree_sum(series.values))


def lagged_cross_sum(series: SeriesSample, lag: int) -> float:
    """sum_{i=1}^{n-lag} X_i X_{i+lag}, pairwise-tree reduced."""
    if not isinstance(lag, int) or lag < 0:
        raise InvalidParameterError("lag must be a non-negative integer")
    if lag >= series.n:
        raise LagTooLargeError(f"lag {lag} >= series length {series.n}")
    if lag == 0:
        products = series.values * series.values
    else:
        products = series.values[:-lag] * series.values[lag:]
    return float(tree_sum(products))


def serial_correlation(
    weights: Sequence[complex], roots: RootMultiset, lag: int
) -> complex:
    """sum_p w_p lambda_p^|lag|, with caller-supplied weights.

    The weights that make this the lag-correlation of the stationary
    process are functions of the roots that this library deliberately does
    not derive; they are inputs only.
    """
    w = [complex(x) for x in weights]
    if len(w) != roots.k:
        raise LengthMismatchError(
            f"{len(w)} weights but {roots.k} roots; lengths must agree"
        )
    e = abs(int(lag))
    return sum(
        (wp * lam**e for wp, lam in zip(w, roots.roots)), start=0.0 + 0.0j
    )


def write_series(series: SeriesSample, path: str) -> None:
    """Export one value per line at full double precision ('.' decimal)."""
    with open(path, "w", encoding="ascii") as fh:
        for v in series.values:
            fh.write(repr(float(v)))
            fh.write("\n")


def read_series_values(path: str) -> np.ndarray:
    """Read a single-column series file written by write_series."""
    with open(path, "r", encoding="ascii") as fh:
        return np.array([float(line) for line in fh if line.strip()])
