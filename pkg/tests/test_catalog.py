import math
from fractions import Fraction

import pytest

from hankelform import catalog
from hankelform.catalog import InvalidParams, UnknownEntry, entry, eval_simplified, verify_entry
from hankelform.closedform import d_principal, d_reciprocal
from hankelform.hankel import build_matrix, det_bareiss
from hankelform.recurrence import SequenceWindow, make_spec, term

F = Fraction

ENTRY_PARAMS = {
    "hilbert": [{}],
    "shifted_linear": [{"lam": 2, "mu": 3}, {"lam": F(1, 3), "mu": F(-5, 2)}, {"lam": -1, "mu": F(1, 2)}],
    "triangular_reciprocal": [{}],
    "inverse_factorial": [{}],
    "catalan": [{}],
    "central_binomial": [{}],
    "binomial_lambda": [{"lam": F(1, 2)}, {"lam": 5}, {"lam": -3}],
    "binomial_shifted": [{"lam": 1, "m": 1}, {"lam": 4, "m": 2}, {"lam": F(7, 2), "m": 2}, {"lam": F(-5, 3), "m": 3}],
    "reciprocal_catalan": [{}],
    "reciprocal_central_binomial": [{}],
    "reciprocal_binomial_lambda": [{"lam": F(1, 2)}, {"lam": -2}, {"lam": F(-7, 3)}],
}
CASES = [(name, p) for name, plist in ENTRY_PARAMS.items() for p in plist]


def test_all_names_covered():
    assert set(ENTRY_PARAMS) == set(catalog.ENTRY_NAMES)
    assert len(catalog.ENTRY_NAMES) == 11


def test_entry_specs():
    assert entry("catalan").spec == make_spec(4, -6, 2, 1)
    assert entry("hilbert").spec == make_spec(1, -1, 2, 1)
    e = entry("binomial_shifted", lam=1, m=1)
    assert e.spec == make_spec(1, 1, 1, 1)
    assert entry("binomial_shifted", lam=F(7, 2), m=2).spec.a0 == F(35, 8)


@pytest.mark.parametrize("name, params", CASES)
def test_spec_generates_defining_sequence(name, params):
    e = entry(name, **params)
    assert [term(e.spec, n) for n in range(21)] == [e.sequence(n) for n in range(21)]


def test_defining_sequences_spot_values():
    assert [entry("catalan").sequence(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]
    assert entry("binomial_shifted", lam=4, m=2).sequence(3) == math.comb(7, 2)
    assert entry("reciprocal_binomial_lambda", lam=F(1, 2)).sequence(2) == -8


@pytest.mark.parametrize("name, params", CASES)
def test_verify_entry(name, params):
    report = verify_entry(entry(name, **params), 6, 4)
    assert report.ok, report.mismatches[:3]
    assert len(report.checks) == 6 * 5


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        entry("fibonacci")


@pytest.mark.parametrize(
    "name, params",
    [
        ("catalan", {"lam": 1}),
        ("binomial_lambda", {}),
        ("shifted_linear", {"lam": 0, "mu": 1}),
        ("shifted_linear", {"lam": 1, "mu": -2}),
        ("binomial_shifted", {"lam": 1, "m": 3}),
        ("reciprocal_binomial_lambda", {"lam": 4}),
        ("reciprocal_binomial_lambda", {"lam": 0}),
    ],
)
def test_invalid_params(name, params):
    with pytest.raises(InvalidParams):
        entry(name, **params)


def test_catalan_examples():
    e = entry("catalan")
    assert eval_simplified(e, 5, 2).unwrap() == 6
    for n in range(1, 13):
        assert eval_simplified(e, n, 0).unwrap() == 1
        assert eval_simplified(e, n, 1).unwrap() == 1


def test_central_binomial_examples():
    e = entry("central_binomial")
    assert eval_simplified(e, 4, 0).unwrap() == 8
    for n in range(1, 13):
        assert eval_simplified(e, n, 0).unwrap() == 2 ** (n - 1)


def test_odd_central_binomial_relation():
    # C(2m, m) = 2 C(2m-1, m): the odd sequence's transform is the even one's over 2^n
    e = entry("central_binomial")
    odd = [F(math.comb(2 * m + 1, m + 1)) for m in range(20)]
    w = SequenceWindow(0, tuple(odd))
    for n in range(1, 6):
        for k in range(1, 4):
            # odd[m] = C(2m+1, m+1) = C(2(m+1), m+1) / 2
            assert det_bareiss(build_matrix(w, n, k - 1)) * 2**n == eval_simplified(e, n, k).unwrap()


def test_shifted_linear_degenerates_to_hilbert():
    a, b = entry("shifted_linear", lam=1, mu=1), entry("hilbert")
    assert a.spec == b.spec
    for n in range(1, 7):
        for k in range(5):
            assert eval_simplified(a, n, k).unwrap() == eval_simplified(b, n, k).unwrap()


def test_binomial_lambda_integer_has_zeros():
    e = entry("binomial_lambda", lam=5)
    zeros = 0
    for n in range(1, 5):
        for k in range(4):
            simp = eval_simplified(e, n, k).unwrap()
            assert simp == d_principal(e.spec, n, k).unwrap()
            assert simp == det_bareiss(build_matrix(e.terms(2 * n - 1, k), n, k))
            zeros += simp == 0
    assert zeros > 0


def test_binomial_shifted_sign_rule():
    for lam in (2, 5, F(1, 3), F(9, 2)):
        e = entry("binomial_shifted", lam=lam, m=2)
        assert eval_simplified(e, 3, 1).unwrap() == -1
    e = entry("binomial_shifted", lam=F(7, 2), m=2)
    assert eval_simplified(e, 4, 0).unwrap() == 0


@pytest.mark.parametrize("m", range(4))
@pytest.mark.parametrize("lam_offset", [2, F(1, 2)])
def test_binomial_shifted_vanishing(m, lam_offset):
    e = entry("binomial_shifted", lam=m + lam_offset, m=m)
    for n in range(m + 2, m + 5):
        for k in range(4):
            assert eval_simplified(e, n, k).unwrap() == 0
            assert d_principal(e.spec, n, k).unwrap() == 0
            assert det_bareiss(build_matrix(e.terms(2 * n - 1, k), n, k)) == 0


@pytest.mark.parametrize(
    "name, params",
    [("reciprocal_catalan", {}), ("reciprocal_central_binomial", {}), ("reciprocal_binomial_lambda", {"lam": F(1, 2)})],
)
def test_reciprocal_bullets(name, params):
    e = entry(name, **params)
    for n in range(1, 6):
        for k in range(4):
            simp = eval_simplified(e, n, k).unwrap()
            assert simp == d_reciprocal(e.base, n, k).unwrap()
            assert simp == det_bareiss(build_matrix(e.terms(2 * n - 1, k), n, k))


def test_reciprocal_central_binomial_small():
    # 1/C(2n, n) = 1, 1/2, 1/6, 1/20; det [[1, 1/2], [1/2, 1/6]] = -1/12
    e = entry("reciprocal_central_binomial")
    assert eval_simplified(e, 1, 0).unwrap() == 1
    assert eval_simplified(e, 1, 3).unwrap() == F(1, 20)
    assert eval_simplified(e, 2, 0).unwrap() == F(-1, 12)
