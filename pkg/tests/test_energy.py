from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sumprod import (
    ElementSet, Scalar, ZeroDivisorError, additive_energy, cubic_energy,
    cubic_energy_via_slices, energy_on_subset, multiplicative_energy, popular_set,
)
from sumprod import oracles

ints = st.lists(st.integers(-25, 25), min_size=1, max_size=9)
nonzero = st.lists(st.integers(1, 40), min_size=1, max_size=9)
gauss = st.lists(st.builds(lambda a, b: Scalar(Fraction(a, 2), b, True),
                           st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=7)


def test_frozen_values():
    # values from oracles.quadruple_energy / sextuple_cubic_energy on these sets
    A = ElementSet([1, 2, 3])
    assert additive_energy(A, A) == 19
    assert additive_energy(A, ElementSet([1, 2])) == 10
    assert cubic_energy(A) == 45 == cubic_energy_via_slices(A)
    assert multiplicative_energy(ElementSet([1, 2, 4])) == 19
    ap = ElementSet(range(1, 6))
    assert additive_energy(ap, ap) == 85
    assert additive_energy(A, A).kind == "additive"


def test_single_element():
    A = ElementSet([7])
    assert additive_energy(A, A) == 1 and cubic_energy(A) == 1
    assert multiplicative_energy(A) == 1


def test_multiplicative_needs_nonzero():
    with pytest.raises(ZeroDivisorError):
        multiplicative_energy(ElementSet([0, 1, 2]))


@settings(max_examples=50, deadline=None)
@given(ints, ints)
def test_additive_matches_oracle(xs, ys):
    A, B = ElementSet(xs), ElementSet(ys)
    assert additive_energy(A, B) == oracles.quadruple_energy(A, B)


@settings(max_examples=40, deadline=None)
@given(gauss)
def test_gaussian_energies(xs):
    A = ElementSet(xs)
    assert additive_energy(A, A) == oracles.quadruple_energy(A, A)
    assert cubic_energy(A) == oracles.sextuple_cubic_energy(A)
    if not A.has_zero():
        assert multiplicative_energy(A) == oracles.quadruple_multiplicative_energy(A)


@settings(max_examples=40, deadline=None)
@given(nonzero)
def test_multiplicative_forms_agree(xs):
    A = ElementSet(xs)
    e = multiplicative_energy(A)
    assert e == oracles.quadruple_multiplicative_energy(A) == oracles.product_form_energy(A)


@settings(max_examples=40, deadline=None)
@given(ints)
def test_cubic_routes(xs):
    A = ElementSet(xs)
    assert cubic_energy(A) == cubic_energy_via_slices(A) == oracles.sextuple_cubic_energy(A)


def test_popular_sets():
    A = ElementSet([0, 1, 2, 4])
    # |A-A| = 9, so the threshold is 16/18 and every difference qualifies
    assert len(popular_set(A, "dprime")) == 9
    # |A+A| = 8 gives threshold 1, which every difference meets
    assert popular_set(A, "dplus") == popular_set(A, "dprime")
    B = ElementSet([1, 2, 3, 10])
    dplus = popular_set(B, "dplus")
    assert Scalar(0) in dplus
    with pytest.raises(ValueError):
        popular_set(B, "other")


@settings(max_examples=40, deadline=None)
@given(ints)
def test_popular_energy_bound(xs):
    A = ElementSet(xs)
    from sumprod.sets import set_size
    n = len(A)
    lhs = energy_on_subset(A, popular_set(A, "dplus"))
    assert 2 * lhs * set_size(A, A, "sum") >= n ** 4
