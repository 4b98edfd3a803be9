"""Deterministic pairwise-tree summation.

Reductions over long term sequences use a fixed balanced binary tree so
that results are bit-identical across runs, block decompositions and
worker counts, and rounding error grows only logarithmically with the
number of terms.
"""

from __future__ import annotations

import numpy as np


def tree_sum(values: np.ndarray) -> np.ndarray:
    """Sum a 1-d array with even/odd pairwise halving.

    The reduction is the perfect binary tree over the input order with the
    tail implicitly zero-padded to a power of two; zero pads are exact and
    do not perturb the result.  Returns a numpy scalar of the input dtype.
    """
    a = np.asarray(values).ravel()
    if a.size == 0:
        return a.dtype.type(0)
    while a.size > 1:
        if a.size & 1:
            a = np.concatenate([a, np.zeros(1, dtype=a.dtype)])
        a = a[0::2] + a[1::2]
    return a[0]


def next_pow2(n: int) -> int:
    """Smallest power of two >= n (n >= 1)."""
    return 1 << (n - 1).bit_length()
