"""Named sequences with known simplified Hankel-transform formulas.

Each entry carries its recurrence parameters, an independent definition of
the sequence (used to build oracle matrices) and the simplified product
formula for d_n^(k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .arith import RationalLike, as_rational, generalized_binomial
from .closedform import EvalOutcome, Singularity, _Product, d_principal, d_reciprocal
from .hankel import build_matrix, det_bareiss
from .recurrence import RecurrenceSpec, SequenceWindow, make_spec, reciprocal_spec


class UnknownEntry(KeyError):
    pass


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class CatalogParams:
    lam: Optional[Fraction] = None
    mu: Optional[Fraction] = None
    m: Optional[int] = None

    @property
    def kappa(self) -> Optional[Fraction]:
        if self.lam is None or self.mu is None or self.lam == 0:
            return None
        return self.mu / self.lam

    def to_dict(self) -> dict:
        out: dict = {}
        if self.lam is not None:
            out["lambda"] = str(self.lam)
        if self.mu is not None:
            out["mu"] = str(self.mu)
        if self.m is not None:
            out["m"] = self.m
        return out


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: CatalogParams
    spec: RecurrenceSpec
    sequence: Callable[[int], Fraction] = field(repr=False)
    simplified: Callable[[int, int], EvalOutcome] = field(repr=False)
    # for reciprocal entries: the spec whose reciprocals form this sequence
    base: Optional[RecurrenceSpec] = None

    def eval_simplified(self, n: int, k: int) -> EvalOutcome:
        return eval_simplified(self, n, k)

    def terms(self, count: int, origin: int = 0) -> SequenceWindow:
        return SequenceWindow(origin, tuple(self.sequence(i) for i in range(origin, origin + count)))


# --- product helpers ----------------------------------------------------------


def _superfactorial_sq(n: int) -> int:
    out = 1
    for i in range(1, n):
        out *= math.factorial(i) ** 2
    return out


def _square_product(n: int, shift: Fraction) -> Fraction:
    """prod_{i,j=1}^{n} (i + j + shift)."""
    out = Fraction(1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            out *= i + j + shift
    return out


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _triangle(k: int, offset: int, shift: int) -> Fraction:
    """prod_{1<=i<=j<=k-1} (i + j + offset + shift) / (i + j + offset)."""
    out = Fraction(1)
    for i in range(1, k):
        for j in range(i, k):
            out *= Fraction(i + j + offset + shift, i + j + offset)
    return out


def _cauchy_like(n: int, prefactor: Fraction, shift: Fraction) -> EvalOutcome:
    den = _square_product(n, shift)
    if den == 0:
        return EvalOutcome(singular=Singularity("i+j+shift", (n,)))
    return EvalOutcome(value=prefactor * _superfactorial_sq(n) / den)


# --- simplified formulas ------------------------------------------------------


def _hilbert(n: int, k: int) -> EvalOutcome:
    return _cauchy_like(n, Fraction(1), Fraction(k - 1))


def _make_shifted_linear(p: CatalogParams):
    lam, kappa = p.lam, p.kappa

    def f(n: int, k: int) -> EvalOutcome:
        return _cauchy_like(n, 1 / lam**n, k + kappa - 2)

    return f


def _triangular_reciprocal(n: int, k: int) -> EvalOutcome:
    return _cauchy_like(n, Fraction(2**n, math.comb(n + k, n)), Fraction(k))


def _inverse_factorial(n: int, k: int) -> EvalOutcome:
    out = Fraction(_sign(n * (n - 1) // 2))
    for i in range(n):
        out *= Fraction(math.factorial(i), math.factorial(i + k + n - 1))
    return EvalOutcome(value=out)


def _catalan(n: int, k: int) -> EvalOutcome:
    return EvalOutcome(value=_triangle(k, 0, 2 * n))


def _central_binomial(n: int, k: int) -> EvalOutcome:
    if k == 0:
        return EvalOutcome(value=Fraction(2 ** (n - 1)))
    return EvalOutcome(value=2**n * _triangle(k, -1, 2 * n))


def _make_binomial_lambda(p: CatalogParams):
    lam = p.lam

    def f(n: int, k: int) -> EvalOutcome:
        acc = _Product(Fraction(_sign(n * k)))
        for i in range(1, n):
            for j in range(i, n):
                acc.mul((i - lam - 1) * (i + lam), Fraction((i + j - 1) * (i + j)), "(i+j-1)(i+j)", i, j)
        for j in range(k):
            for i in range(1, n + 1):
                acc.mul(i + j - lam - 1, Fraction(i + j + n - 1), "i+j+n-1", i, j)
        return acc.outcome()

    return f


def _make_binomial_shifted(p: CatalogParams):
    lam, m = p.lam, p.m
    a0 = generalized_binomial(lam, m)

    def f(n: int, k: int) -> EvalOutcome:
        if n >= m + 2:
            return EvalOutcome(value=Fraction(0))
        if n == m + 1:
            return EvalOutcome(value=Fraction(_sign(m * (m + 1) // 2)))
        acc = _Product(a0**n)
        for i in range(1, n):
            for j in range(i, n):
                acc.mul(
                    i * (i + lam) * (i - 1 - m),
                    (i + lam - m) * (i + j + lam - m - 1) * (i + j + lam - m),
                    "(i+lambda-m)(i+j+lambda-m-1)(i+j+lambda-m)",
                    i,
                    j,
                )
        for j in range(k):
            for i in range(1, n + 1):
                acc.mul(i + j + lam, i + j + n + lam - m - 1, "i+j+n+lambda-m-1", i, j)
        return acc.outcome()

    return f


def _reciprocal_catalan(n: int, k: int) -> EvalOutcome:
    acc = _Product(Fraction(1, 2 ** (n * (n + k - 1))))
    for i in range(1, n):
        for j in range(i, n):
            acc.mul(
                Fraction(i * (i + 1) * (2 * i - 5)),
                Fraction((2 * i - 1) * (2 * (i + j) - 3) * (2 * (i + j) - 1)),
                "(2i-1)(2(i+j)-3)(2(i+j)-1)",
                i,
                j,
            )
    for j in range(k):
        for i in range(1, n + 1):
            acc.mul(Fraction(i + j + 1), Fraction(2 * (i + j + n) - 3), "2(i+j+n)-3", i, j)
    return acc.outcome()


def _reciprocal_central_binomial(n: int, k: int) -> EvalOutcome:
    acc = _Product(Fraction(1, 2 ** (n * (n + k - 1))))
    for i in range(1, n):
        for j in range(i, n):
            acc.mul(
                Fraction(i * i * (2 * i - 3)),
                Fraction((2 * i - 1) * (2 * (i + j) - 3) * (2 * (i + j) - 1)),
                "(2i-1)(2(i+j)-3)(2(i+j)-1)",
                i,
                j,
            )
    for j in range(k):
        for i in range(1, n + 1):
            acc.mul(Fraction(i + j), Fraction(2 * (i + j + n) - 3), "2(i+j+n)-3", i, j)
    return acc.outcome()


def _make_reciprocal_binomial_lambda(p: CatalogParams):
    lam = p.lam

    def f(n: int, k: int) -> EvalOutcome:
        acc = _Product(Fraction(_sign(n * k)))
        for i in range(1, n):
            for j in range(i, n):
                acc.mul(
                    i * i * (i - lam - 2),
                    (i - lam - 1) * (i + j - lam - 2) * (i + j - lam - 1),
                    "(i-lambda-1)(i+j-lambda-2)(i+j-lambda-1)",
                    i,
                    j,
                )
        for j in range(k):
            for i in range(1, n + 1):
                acc.mul(Fraction(i + j), i + j + n - lam - 2, "i+j+n-lambda-2", i, j)
        return acc.outcome()

    return f


# --- registry -----------------------------------------------------------------


def _catalan_number(n: int) -> Fraction:
    return Fraction(math.comb(2 * n, n), n + 1)


ENTRY_NAMES = (
    "hilbert",
    "shifted_linear",
    "triangular_reciprocal",
    "inverse_factorial",
    "catalan",
    "central_binomial",
    "binomial_lambda",
    "binomial_shifted",
    "reciprocal_catalan",
    "reciprocal_central_binomial",
    "reciprocal_binomial_lambda",
)

_REQUIRED = {
    "shifted_linear": {"lam", "mu"},
    "binomial_lambda": {"lam"},
    "binomial_shifted": {"lam", "m"},
    "reciprocal_binomial_lambda": {"lam"},
}

DESCRIPTIONS = {
    "hilbert": "a_n = 1/(n+1) (Hilbert matrices)",
    "shifted_linear": "a_n = 1/(lambda*n + mu)",
    "triangular_reciprocal": "a_n = 2/((n+1)(n+2))",
    "inverse_factorial": "a_n = 1/n!",
    "catalan": "a_n = C(2n,n)/(n+1)",
    "central_binomial": "a_n = C(2n,n)",
    "binomial_lambda": "a_n = C(lambda, n)",
    "binomial_shifted": "a_n = C(n + lambda, m)",
    "reciprocal_catalan": "a_n = (n+1)/C(2n,n)",
    "reciprocal_central_binomial": "a_n = 1/C(2n,n)",
    "reciprocal_binomial_lambda": "a_n = 1/C(lambda, n)",
}


def _check_params(name: str, p: CatalogParams) -> None:
    given = {f for f in ("lam", "mu", "m") if getattr(p, f) is not None}
    need = _REQUIRED.get(name, set())
    if given != need:
        missing, extra = need - given, given - need
        parts = []
        if missing:
            parts.append("missing " + ", ".join(sorted(missing)))
        if extra:
            parts.append("unexpected " + ", ".join(sorted(extra)))
        raise InvalidParams(f"{name}: " + "; ".join(parts))
    lam = p.lam
    if name == "shifted_linear":
        if lam == 0 or p.mu == 0:
            raise InvalidParams("shifted_linear needs lambda != 0 and mu != 0")
        kappa = p.kappa
        if kappa.denominator == 1 and kappa <= 0:
            raise InvalidParams(f"mu/lambda = {kappa} makes lambda*n + mu vanish")
    elif name == "binomial_shifted":
        if p.m < 0:
            raise InvalidParams("m must be a nonnegative integer")
        if lam.denominator == 1 and lam < p.m:
            raise InvalidParams("lambda must be an integer >= m or a non-integer")
    elif name == "reciprocal_binomial_lambda":
        if lam.denominator == 1 and lam >= 0:
            raise InvalidParams("lambda must not be a nonnegative integer (C(lambda, n) would vanish)")


def entry(
    name: str,
    lam: RationalLike | None = None,
    mu: RationalLike | None = None,
    m: int | None = None,
) -> CatalogEntry:
    if name not in ENTRY_NAMES:
        raise UnknownEntry(name)
    p = CatalogParams(
        None if lam is None else as_rational(lam),
        None if mu is None else as_rational(mu),
        None if m is None else int(m),
    )
    _check_params(name, p)

    if name == "hilbert":
        return CatalogEntry(name, p, make_spec(1, -1, 2), lambda n: Fraction(1, n + 1), _hilbert)
    if name == "shifted_linear":
        spec = make_spec(1, -1, p.kappa + 1, 1 / p.mu)
        return CatalogEntry(name, p, spec, lambda n: 1 / (p.lam * n + p.mu), _make_shifted_linear(p))
    if name == "triangular_reciprocal":
        return CatalogEntry(
            name, p, make_spec(1, -2, 3), lambda n: Fraction(2, (n + 1) * (n + 2)), _triangular_reciprocal
        )
    if name == "inverse_factorial":
        return CatalogEntry(
            name, p, make_spec(0, 1, 1), lambda n: Fraction(1, math.factorial(n)), _inverse_factorial
        )
    if name == "catalan":
        return CatalogEntry(name, p, make_spec(4, -6, 2), _catalan_number, _catalan)
    if name == "central_binomial":
        return CatalogEntry(
            name, p, make_spec(4, -2, 1), lambda n: Fraction(math.comb(2 * n, n)), _central_binomial
        )
    if name == "binomial_lambda":
        return CatalogEntry(
            name,
            p,
            make_spec(-1, p.lam + 1, 1),
            lambda n: generalized_binomial(p.lam, n),
            _make_binomial_lambda(p),
        )
    if name == "binomial_shifted":
        spec = make_spec(1, p.m, p.lam - p.m + 1, generalized_binomial(p.lam, p.m))
        return CatalogEntry(
            name, p, spec, lambda n: generalized_binomial(n + p.lam, p.m), _make_binomial_shifted(p)
        )
    if name == "reciprocal_catalan":
        base = make_spec(4, -6, 2)
        return CatalogEntry(
            name, p, reciprocal_spec(base), lambda n: 1 / _catalan_number(n), _reciprocal_catalan, base
        )
    if name == "reciprocal_central_binomial":
        base = make_spec(4, -2, 1)
        return CatalogEntry(
            name,
            p,
            reciprocal_spec(base),
            lambda n: Fraction(1, math.comb(2 * n, n)),
            _reciprocal_central_binomial,
            base,
        )
    # reciprocal_binomial_lambda
    base = make_spec(-1, p.lam + 1, 1)
    return CatalogEntry(
        name,
        p,
        reciprocal_spec(base),
        lambda n: 1 / generalized_binomial(p.lam, n),
        _make_reciprocal_binomial_lambda(p),
        base,
    )


def eval_simplified(e: CatalogEntry, n: int, k: int) -> EvalOutcome:
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return e.simplified(n, k)


@dataclass(frozen=True)
class EntryCheck:
    n: int
    k: int
    simplified: Optional[Fraction]
    principal: Optional[Fraction]
    oracle: Fraction
    reciprocal: Optional[Fraction] = None

    @property
    def agree(self) -> bool:
        values = [v for v in (self.simplified, self.principal, self.reciprocal) if v is not None]
        return self.simplified is not None and all(v == self.oracle for v in values)


@dataclass(frozen=True)
class VerifyReport:
    name: str
    checks: tuple[EntryCheck, ...]

    @property
    def mismatches(self) -> list[EntryCheck]:
        return [c for c in self.checks if not c.agree]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_entry(e: CatalogEntry, n: int, k: int) -> EntryCheck:
    simp = eval_simplified(e, n, k)
    prin = d_principal(e.spec, n, k)
    oracle = det_bareiss(build_matrix(e.terms(2 * n - 1, k), n, k))
    recip = d_reciprocal(e.base, n, k).value if e.base is not None else None
    return EntryCheck(n, k, simp.value, prin.value, oracle, recip)


def verify_entry(e: CatalogEntry, n_max: int, k_max: int) -> VerifyReport:
    """Compare simplified formula, principal identity and Bareiss over a grid."""
    checks = tuple(check_entry(e, n, k) for n in range(1, n_max + 1) for k in range(k_max + 1))
    return VerifyReport(e.name, checks)
