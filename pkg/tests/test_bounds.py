import pytest
from hypothesis import given
from hypothesis import strategies as st

from homowall.bounds import (
    bound_lemma31,
    bound_lemma32,
    bound_lemma33,
    bound_main,
    bound_rainbow,
    bound_uniform,
    printed_gap,
    printed_polynomial,
    r_hat,
    rainbow_parameters,
)


@pytest.mark.parametrize("q,r,expected", [(0, 0, 0), (0, 2, 4), (1, 29, 870), (1, 2, 6), (1, 3, 12)])
def test_r_hat(q, r, expected):
    assert r_hat(q, r) == expected


@pytest.mark.parametrize("args,expected", [((2, 2, 1, 2, 1), 24), ((1, 2, 1, 2, 1), 12)])
def test_bound_lemma31_values(args, expected):
    assert bound_lemma31(*args) == expected


@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50), st.integers(1, 50))
def test_bound_lemma31_collapses_without_colors(r, p, b, x):
    assert bound_lemma31(0, r, p, b, x) == x * (2 * p + b)


def test_bound_lemma31_rejects_zero_x():
    with pytest.raises(ValueError):
        bound_lemma31(1, 2, 1, 2, 0)


@pytest.mark.parametrize("args,expected", [((1, 1, 2, 2), 60), ((1, 60, 2, 29), 211508)])
def test_bound_lemma33_values(args, expected):
    assert bound_lemma33(*args) == expected


def test_bound_lemma33_factors():
    # 874 strips of breadth 242
    assert bound_lemma33(1, 60, 2, 29) == 874 * 242


@given(st.integers(0, 100), st.integers(0, 100))
def test_bound_lemma33_collapses_without_colors(p, r):
    assert bound_lemma33(0, p, 2, r) == 2 * p + 2


def test_bound_lemma32_is_lemma33_at_r_hat():
    for q in range(4):
        for r in range(2, 5):
            assert bound_lemma33(q, 2, 2, r) == bound_lemma32(q, r_hat(q, r), 2, 2)


@pytest.mark.parametrize("n,m,q,expected", [(4, 4, 0, 18), (4, 4, 1, 544), (12, 30, 1, 211508)])
def test_bound_rainbow(n, m, q, expected):
    assert bound_rainbow(n, m, q) == expected


def test_rainbow_parameters():
    assert rainbow_parameters(4, 4, 1) == (8, 2, 3)
    assert rainbow_parameters(12, 30, 1) == (60, 2, 29)
    with pytest.raises(ValueError):
        rainbow_parameters(5, 4, 1)


@pytest.mark.parametrize("ell,q,expected", [(2, 0, 10), (6, 0, 122), (12, 0, 530)])
def test_bound_uniform(ell, q, expected):
    assert bound_uniform(ell, q) == expected


@pytest.mark.parametrize("q,k", [(0, 1), (0, 2), (0, 3)])
def test_main_bound_agrees_with_expansion_without_colors(q, k):
    assert bound_main(q, k) == printed_polynomial(q, k)


def test_main_bound_ledger():
    assert bound_main(0, 1) == 122
    assert bound_main(0, 2) == 530
    assert bound_main(1, 1) == 211508
    assert printed_polynomial(1, 1) == 211266
    assert bound_main(1, 1) - printed_polynomial(1, 1) == 242 == printed_gap(1, 1)


@given(st.integers(0, 12), st.integers(1, 8))
def test_expansion_gap_closed_form(q, k):
    assert bound_main(q, k) - printed_polynomial(q, k) == printed_gap(q, k)


@given(st.integers(0, 12), st.integers(1, 8))
def test_expansion_drops_one_strip_of_the_lemma33_count(q, k):
    # the gap is exactly q strips of the rainbow breadth
    ell = 6 * k
    p, b, _ = rainbow_parameters(2 * ell, ell * ell - ell, q)
    assert printed_gap(q, k) == q * (2 * (q + 1) * p + b)


def test_bounds_reject_bad_arguments():
    with pytest.raises(ValueError):
        r_hat(-1, 2)
    with pytest.raises(ValueError):
        bound_main(0, 0)
    with pytest.raises(ValueError):
        bound_uniform(1, 0)
    with pytest.raises(ValueError):
        printed_polynomial(-1, 1)
