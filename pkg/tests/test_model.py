import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from arklimit import (
    ARCoefficients,
    EmptyInputError,
    EvalResult,
    InvalidParameterError,
    NonStationaryError,
    RootMultiset,
    ShiftVector,
    validate_roots,
)
from conftest import random_conjugate_closed_roots


class TestARCoefficients:
    def test_order(self):
        assert ARCoefficients((0.8, -0.15)).k == 2

    def test_trailing_zero_rejected(self):
        with pytest.raises(InvalidParameterError):
            ARCoefficients((0.5, 0.0))

    def test_single_zero_rejected(self):
        with pytest.raises(InvalidParameterError):
            ARCoefficients((0.0,))

    def test_empty_rejected(self):
        with pytest.raises(EmptyInputError):
            ARCoefficients(())

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidParameterError):
            ARCoefficients((math.nan,))
        with pytest.raises(InvalidParameterError):
            ARCoefficients((math.inf, 0.5))

    def test_immutable(self):
        a = ARCoefficients((0.5,))
        with pytest.raises(dataclasses.FrozenInstanceError):
            a.alphas = (0.2,)


class TestRootMultiset:
    def test_empty_rejected(self):
        with pytest.raises(EmptyInputError):
            RootMultiset(())

    def test_real_root_is_conjugate_closed(self):
        assert RootMultiset((0.5,)).conjugate_closed

    def test_conjugate_pair_closed(self):
        ms = RootMultiset((0.5 + 0.5j, 0.5 - 0.5j))
        assert ms.conjugate_closed
        assert ms.max_modulus == pytest.approx(math.sqrt(0.5), rel=1e-15)
        assert ms.is_stationary

    def test_lone_complex_root_not_closed(self):
        assert not RootMultiset((0.5 + 0.5j,)).conjugate_closed

    def test_unbalanced_multiplicity_not_closed(self):
        ms = RootMultiset((0.5 + 0.5j, 0.5 + 0.5j, 0.5 - 0.5j))
        assert not ms.conjugate_closed

    def test_near_conjugates_within_tolerance(self):
        eps = 1e-14
        ms = RootMultiset((0.5 + 0.5j, 0.5 + eps - 0.5j))
        assert ms.conjugate_closed

    def test_min_separation(self):
        assert RootMultiset((0.5, 0.3)).min_separation() == pytest.approx(0.2)
        assert RootMultiset((0.5,)).min_separation() == math.inf

    @given(seed=st.integers(0, 10**6), k=st.integers(1, 5))
    def test_conjugate_closure_permutation_invariant(self, seed, k):
        rng = np.random.default_rng(seed)
        ms = random_conjugate_closed_roots(rng, k)
        perm = rng.permutation(k)
        shuffled = RootMultiset(tuple(ms.roots[i] for i in perm))
        assert shuffled.conjugate_closed == ms.conjugate_closed


class TestValidateRoots:
    def test_accepts_stationary_real_root(self):
        ms = validate_roots(RootMultiset((0.5,)))
        assert ms.is_stationary and ms.conjugate_closed

    def test_rejects_boundary_root(self):
        with pytest.raises(NonStationaryError):
            validate_roots(RootMultiset((1.0,)))

    def test_accepts_conjugate_pair(self):
        ms = validate_roots(RootMultiset((0.5 + 0.5j, 0.5 - 0.5j)))
        assert ms.conjugate_closed

    def test_margin(self):
        validate_roots(RootMultiset((0.85,)), stationarity_margin=0.1)
        with pytest.raises(NonStationaryError):
            validate_roots(RootMultiset((0.95,)), stationarity_margin=0.1)

    def test_bad_margin_rejected(self):
        with pytest.raises(InvalidParameterError):
            validate_roots(RootMultiset((0.5,)), stationarity_margin=-0.1)

    def test_accepts_plain_iterable(self):
        ms = validate_roots([0.5, 0.3])
        assert isinstance(ms, RootMultiset)

    def test_empty_iterable(self):
        with pytest.raises(EmptyInputError):
            validate_roots([])

    def test_idempotent(self):
        ms = RootMultiset((0.5, 0.3))
        assert validate_roots(validate_roots(ms)) == ms


class TestShiftVector:
    def test_total_is_absolute_sum(self):
        assert ShiftVector((1, -3)).total == 2
        assert ShiftVector((2,)).total == 2

    def test_empty_rejected(self):
        with pytest.raises(EmptyInputError):
            ShiftVector(())

    def test_non_integer_rejected(self):
        with pytest.raises(InvalidParameterError):
            ShiftVector((1.5,))
        with pytest.raises(InvalidParameterError):
            ShiftVector((True,))

    @given(shifts=st.lists(st.integers(-20, 20), min_size=1, max_size=6), data=st.data())
    def test_total_invariant_under_permutation_and_negation(self, shifts, data):
        perm = data.draw(st.permutations(shifts))
        base = ShiftVector(tuple(shifts))
        assert ShiftVector(tuple(perm)).total == base.total
        assert ShiftVector(tuple(-s for s in shifts)).total == base.total


class TestEvalResult:
    def test_unknown_method_rejected(self):
        with pytest.raises(InvalidParameterError):
            EvalResult(value=1.0, method="wishful", max_imag=0.0)

    def test_negative_max_imag_rejected(self):
        with pytest.raises(InvalidParameterError):
            EvalResult(value=1.0, method="contour", max_imag=-1.0)

    def test_negative_tail_bound_rejected(self):
        with pytest.raises(InvalidParameterError):
            EvalResult(value=1.0, method="truncated", max_imag=0.0, tail_bound=-1e-3)
