import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hankelform.closedform import (
    EvalOutcome,
    MnParams,
    SingularDenominator,
    d_lemma,
    d_principal,
    d_reciprocal,
    d_via_M,
    det_M,
    det_M_by_recurrence,
    det_M_recurrence_step,
    lemma_substitution,
    ratio_in_k,
    ratio_in_n,
)
from hankelform.hankel import build_matrix, det_bareiss
from hankelform.recurrence import SequenceWindow, ZeroTerm, make_spec, reciprocal_spec, term, window

from .conftest import leibniz_det, small_rationals, specs

F = Fraction
CATALAN = make_spec(4, -6, 2)
HILBERT = make_spec(1, -1, 2)
CENTRAL = make_spec(4, -2, 1)
INV_FACT = make_spec(0, 1, 1)


def explicit_m_prime(a, b, c, n):
    """m'_ij built straight from the definition (1-based i, j)."""
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            x = F(1)
            for s in range(1, i):
                x *= (a * (s + j) + b) / (s + j + c)
            row.append(x)
        rows.append(row)
    return rows


def oracle(spec, n, k):
    return det_bareiss(build_matrix(window(spec, k, 2 * n - 1), n, k))


# --- M_n(a, b, c) ---------------------------------------------------------------


def test_det_M_trivial():
    assert det_M(MnParams(F(3, 7), -5, F(1, 2), 1)).unwrap() == 1


def test_det_M_n2():
    # 2x2 brute force: rows [1, 1], [2/3, 3/4]
    assert leibniz_det(explicit_m_prime(F(1), F(0), F(1), 2)) == F(1, 12)
    assert det_M(MnParams(1, 0, 1, 2)).unwrap() == F(1, 12)


def test_det_M_n3():
    p = MnParams(0, 1, 0, 3)
    assert det_M(p).unwrap() == F(-1, 720)
    assert leibniz_det(explicit_m_prime(F(0), F(1), F(0), 3)) == F(-1, 720)


def test_det_M_singular_is_an_outcome():
    out = det_M(MnParams(1, 0, -2, 3))
    assert not out.ok
    assert out.singular.factor == "i+1+c"
    with pytest.raises(SingularDenominator):
        out.unwrap()


def test_recurrence_step_examples():
    coeff, reduced = det_M_recurrence_step(MnParams(1, 0, 1, 2))
    assert coeff == F(1, 12)
    assert reduced == MnParams(1, 1, 3, 1)
    coeff, _ = det_M_recurrence_step(MnParams(2, 6, 3, 2))
    assert coeff == 0


def test_recurrence_step_singular():
    with pytest.raises(SingularDenominator):
        det_M_recurrence_step(MnParams(1, 0, -3, 3))


@settings(max_examples=80)
@given(small_rationals, small_rationals, small_rationals, st.integers(1, 5))
def test_det_M_three_ways(a, b, c, n):
    closed = det_M(MnParams(a, b, c, n))
    # every denominator that can appear is (integer + c)
    assume(all(m + c != 0 for m in range(2, 2 * n + 1)))
    assert closed.ok
    assert closed.value == det_M_by_recurrence(MnParams(a, b, c, n))
    assert closed.value == leibniz_det(explicit_m_prime(a, b, c, n))


def test_lemma_substitution():
    s = make_spec(F(3, 2), -1, F(5, 3))
    p = lemma_substitution(s, 4, 2)
    assert (p.a, p.b, p.c, p.n) == (F(3, 2), F(3, 2) * F(5, 3) + 3 - 3 - 1, F(5, 3), 4)


# --- the transform ----------------------------------------------------------------


def test_d_lemma_examples():
    s = make_spec(2, 1, 3, F(5, 2))
    for k in range(5):
        assert d_lemma(s, 1, k).unwrap() == term(s, k)
    assert d_lemma(HILBERT, 2, 0).unwrap() == F(1, 12)
    assert d_lemma(CATALAN, 3, 0).unwrap() == 1


def test_ratio_in_k_examples():
    assert ratio_in_k(CATALAN, 1, 0) == 1
    assert ratio_in_k(make_spec(2, 1, 3), 1, 0) == F(7, 3)
    assert ratio_in_k(make_spec(1, -2, 2), 1, 0) == 0


def test_ratio_in_n_examples():
    assert ratio_in_n(CATALAN, 1) == 1
    assert ratio_in_n(HILBERT, 1) == F(1, 12)
    assert ratio_in_n(INV_FACT, 1) == F(-1, 2)
    assert det_bareiss([[1, 1], [1, F(1, 2)]]) == F(-1, 2)


def test_d_principal_examples():
    assert d_principal(make_spec(2, 1, 3), 1, 1).unwrap() == F(7, 3)
    assert d_principal(CENTRAL, 3, 0).unwrap() == 4
    expected = -F(1, 24) * F(1, 120) * F(2, 720)
    assert expected == F(-1, 1036800)
    assert d_principal(INV_FACT, 3, 2).unwrap() == expected
    assert oracle(INV_FACT, 3, 2) == expected


def test_empty_determinant():
    assert d_principal(CATALAN, 0, 4).unwrap() == 1


def test_d_reciprocal_examples():
    assert d_reciprocal(CATALAN, 1, 1).unwrap() == 1
    assert d_reciprocal(CATALAN, 2, 0).unwrap() == F(-1, 2)
    assert det_bareiss([[F(1, 2), F(1, 6)], [F(1, 6), F(1, 20)]]) == F(-1, 360)
    assert d_reciprocal(CENTRAL, 2, 1).unwrap() == F(-1, 360)


def test_d_reciprocal_zero_term():
    with pytest.raises(ZeroTerm):
        d_reciprocal(make_spec(-1, 4, 1), 2, 0)
    with pytest.raises(ZeroTerm):
        d_reciprocal(make_spec(0, 0, 1), 2, 0)


def test_eval_outcome_exactly_one():
    with pytest.raises(ValueError):
        EvalOutcome()
    with pytest.raises(ValueError):
        EvalOutcome(value=F(1), singular=det_M(MnParams(1, 0, -2, 2)).singular)


# --- identities over random specs ------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(specs)
def test_principal_matches_oracle(spec):
    for n in range(1, 6):
        for k in range(5):
            out = d_principal(spec, n, k)
            assert out.ok
            assert out.value == oracle(spec, n, k)


@settings(max_examples=60, deadline=None)
@given(specs)
def test_lemma_equals_principal(spec):
    for n in range(1, 7):
        for k in range(6):
            assert d_lemma(spec, n, k).unwrap() == d_principal(spec, n, k).unwrap()


@settings(max_examples=60, deadline=None)
@given(specs)
def test_lemma_through_M(spec):
    for n in range(1, 6):
        for k in range(4):
            via = d_via_M(spec, n, k)
            if via.ok:
                assert via.value == d_lemma(spec, n, k).unwrap()


@settings(max_examples=60, deadline=None)
@given(specs)
def test_ratio_recurrences(spec):
    for n in range(1, 7):
        for k in range(5):
            assert d_principal(spec, n, k + 1).unwrap() == d_principal(spec, n, k).unwrap() * ratio_in_k(spec, n, k)
    for j in range(1, 7):
        assert d_principal(spec, j + 1, 0).unwrap() == d_principal(spec, j, 0).unwrap() * spec.a0 * ratio_in_n(spec, j)


@settings(max_examples=80, deadline=None)
@given(specs)
def test_zero_propagation_in_n(spec):
    for n in range(1, 8):
        if d_principal(spec, n, 0).unwrap() == 0:
            assert d_principal(spec, n + 1, 0).unwrap() == 0


def test_zero_propagation_in_n_hits_zeros():
    # alpha(i-1) = beta at i = 3 kills d_n^(0) from n = 3 on
    s = make_spec(1, 2, F(1, 2))
    values = [d_principal(s, n, 0).unwrap() for n in range(1, 8)]
    assert values[0] != 0 and values[1] != 0
    assert all(v == 0 for v in values[3:])
    assert values == [oracle(s, n, 0) for n in range(1, 8)]


@settings(max_examples=60, deadline=None)
@given(specs)
def test_reciprocal_corollary_matches_reciprocal_spec(spec):
    assume(spec.alpha != 0 and spec.vanishing_index() is None)
    r = reciprocal_spec(spec)
    for n in range(1, 6):
        for k in range(4):
            assert d_reciprocal(spec, n, k).unwrap() == d_principal(r, n, k).unwrap()


@pytest.mark.parametrize("beta, gamma", [(1, 1), (2, 1), (F(-1, 3), F(5, 2)), (3, F(1, 2))])
def test_reciprocal_at_alpha_zero(beta, gamma):
    # a_n = beta^n / (gamma)_n, so 1/a_n = (gamma)_n / beta^n
    spec = make_spec(0, beta, gamma)
    recips = [1 / term(spec, t) for t in range(12)]
    if (beta, gamma) == (1, 1):
        assert recips[:6] == [math.factorial(t) for t in range(6)]
    w = SequenceWindow(0, tuple(recips))
    for n in range(1, 6):
        for k in range(3):
            assert d_reciprocal(spec, n, k).unwrap() == det_bareiss(build_matrix(w, n, k))
