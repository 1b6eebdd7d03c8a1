import pytest
from hypothesis import given, settings, strategies as st

from qhaar import freelimit

import oracles


def test_single_variable_moments_are_catalan():
    assert [freelimit.semicircular_moment([(1, 1)] * k) for k in (2, 4, 6)] == [1, 2, 5]
    for k in range(0, 17):
        assert freelimit.semicircular_moment([(1, 1)] * k) \
            == freelimit.semicircle_moment_single(k)


def test_semicircle_single_values():
    assert freelimit.semicircle_moment_single(0) == 1
    assert freelimit.semicircle_moment_single(2) == 1
    assert freelimit.semicircle_moment_single(7) == 0
    assert freelimit.semicircle_moment_single(10) == 42


def test_semicircle_single_matches_quadrature():
    for k in range(0, 11):
        got = freelimit.semicircle_moment_single(k)
        assert abs(got - oracles.quadrature_semicircle_moment(k)) < 1e-7


def test_mixed_label_words():
    s = [(1, 1), (1, 2), (1, 1), (1, 2)]
    assert freelimit.semicircular_moment(s) == 0
    nested = [(1, 1), (1, 2), (1, 2), (1, 1)]
    assert freelimit.semicircular_moment(nested) == 1


def test_circular_examples():
    c = (1, 1)
    assert freelimit.circular_moment([(c, "1"), (c, "*")]) == 1
    assert freelimit.circular_moment([(c, "1"), (c, "1")]) == 0
    assert freelimit.circular_moment([(c, "1"), (c, "*")] * 2) == 2


def test_circular_alternating_is_catalan():
    c = (2, 3)
    for m in range(1, 9):
        word = [(c, "1"), (c, "*")] * m
        assert freelimit.circular_moment(word) == freelimit.catalan(m)


@settings(deadline=None, max_examples=60)
@given(st.lists(st.sampled_from([(1, 1), (1, 2), (2, 1)]), max_size=10))
def test_semicircular_matches_brute_force(labels):
    assert freelimit.semicircular_moment(labels) == oracles.brute_semicircular_moment(labels)


@settings(deadline=None, max_examples=60)
@given(st.lists(st.tuples(st.sampled_from([(1, 1), (1, 2)]),
                          st.sampled_from(["1", "*"])), max_size=10))
def test_circular_matches_brute_force(letters):
    assert freelimit.circular_moment(letters) == oracles.brute_circular_moment(letters)


def test_negative_k_rejected():
    with pytest.raises(ValueError):
        freelimit.semicircle_moment_single(-1)
