"""Closed-form product evaluations of d_n^(k) = det H_n^(k).

Everything here is evaluated at concrete rational parameters.  A vanishing
denominator factor is reported as a :class:`Singularity` inside an
:class:`EvalOutcome` instead of raising, so callers can fall back to an
exact determinant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import as_rational
from .recurrence import RecurrenceSpec, ZeroTerm, term


class SingularDenominator(ZeroDivisionError):
    def __init__(self, singularity: "Singularity"):
        super().__init__(str(singularity))
        self.singularity = singularity


@dataclass(frozen=True)
class Singularity:
    factor: str
    indices: tuple[int, ...]

    def __str__(self) -> str:
        idx = ", ".join(str(i) for i in self.indices)
        return f"denominator factor {self.factor} vanishes at ({idx})"


@dataclass(frozen=True)
class EvalOutcome:
    value: Fraction | None = None
    singular: Singularity | None = None

    def __post_init__(self):
        if (self.value is None) == (self.singular is None):
            raise ValueError("exactly one of value / singular must be set")

    @property
    def ok(self) -> bool:
        return self.singular is None

    def unwrap(self) -> Fraction:
        if self.singular is not None:
            raise SingularDenominator(self.singular)
        return self.value


class _Product:
    """Collects numerator and denominator factors; remembers the first zero denominator."""

    __slots__ = ("num", "den", "singular")

    def __init__(self, start: Fraction = Fraction(1)):
        self.num = start
        self.den = Fraction(1)
        self.singular: Singularity | None = None

    def mul(self, num: Fraction, den: Fraction, label: str, *idx: int, power: int = 1) -> bool:
        if self.singular is not None:
            return False
        if den == 0:
            self.singular = Singularity(label, idx)
            return False
        if power == 1:
            self.num *= num
            self.den *= den
        else:
            self.num *= num**power
            self.den *= den**power
        return True

    def outcome(self) -> EvalOutcome:
        if self.singular is not None:
            return EvalOutcome(singular=self.singular)
        return EvalOutcome(value=self.num / self.den)

    def result(self) -> Fraction:
        if self.singular is not None:
            raise SingularDenominator(self.singular)
        return self.num / self.den


# --- the auxiliary matrix M_n(a, b, c) ---------------------------------------


@dataclass(frozen=True)
class MnParams:
    a: Fraction
    b: Fraction
    c: Fraction
    n: int

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.n < 1:
            raise ValueError("M_n needs n >= 1")


def m_prime_matrix(p: MnParams) -> list[list[Fraction]]:
    """Explicit entries m'_ij = prod_{s=1}^{i-1} (a(s+j) + b) / (s+j+c)."""
    rows = []
    for i in range(1, p.n + 1):
        row = []
        for j in range(1, p.n + 1):
            acc = _Product()
            for s in range(1, i):
                acc.mul(p.a * (s + j) + p.b, s + j + p.c, "s+j+c", i, j, s)
            row.append(acc.result())
        rows.append(row)
    return rows


def det_M(p: MnParams) -> EvalOutcome:
    a, b, c, n = p.a, p.b, p.c, p.n
    acc = _Product()
    for i in range(1, n):
        acc.mul(Fraction(math.factorial(i)), Fraction(1), "", i)
        acc.mul(a * (i - 1) + a * c - b, Fraction(1), "", i, power=n - i)
        acc.mul(Fraction(1), i + 1 + c, "i+1+c", i, power=i)
        acc.mul(Fraction(1), 2 * n - i + c, "2n-i+c", i, power=i)
    return acc.outcome()


def det_M_recurrence_step(p: MnParams) -> tuple[Fraction, MnParams]:
    """One reduction det M_n(a,b,c) = coeff * det M_{n-1}(a, a+b, c+2)."""
    a, b, c, n = p.a, p.b, p.c, p.n
    if n < 2:
        raise ValueError("the recurrence step needs n >= 2")
    acc = _Product(Fraction(math.factorial(n - 1)) * (a * c - b) ** (n - 1))
    for i in range(1, n):
        acc.mul(Fraction(1), i + 1 + c, "i+1+c", i)
        acc.mul(Fraction(1), i + 2 + c, "i+2+c", i)
    return acc.result(), MnParams(a, a + b, c + 2, n - 1)


def det_M_by_recurrence(p: MnParams) -> Fraction:
    """Chain recurrence steps down to M_1, whose determinant is 1."""
    out = Fraction(1)
    while p.n > 1:
        coeff, p = det_M_recurrence_step(p)
        out *= coeff
    return out


def lemma_substitution(spec: RecurrenceSpec, n: int, k: int) -> MnParams:
    """(a, b, c) := (alpha, alpha*gamma + alpha*k - 2*alpha + beta, gamma + k - 2)."""
    al, be, ga = spec.alpha, spec.beta, spec.gamma
    return MnParams(al, al * ga + al * k - 2 * al + be, ga + k - 2, n)


def d_via_M(spec: RecurrenceSpec, n: int, k: int) -> EvalOutcome:
    """a_k * ... * a_{k+n-1} * det M_n under the lemma substitution."""
    dm = det_M(lemma_substitution(spec, n, k))
    if not dm.ok:
        return dm
    out = dm.value
    for t in range(k, k + n):
        out *= term(spec, t)
    return EvalOutcome(value=out)


# --- the Hankel transform -----------------------------------------------------


def d_lemma(spec: RecurrenceSpec, n: int, k: int) -> EvalOutcome:
    al, be, ga = spec.alpha, spec.beta, spec.gamma
    base = spec.normalized()
    acc = _Product(spec.a0**n)
    for t in range(k, k + n):
        acc.mul(term(base, t), Fraction(1), "", t)
    for i in range(1, n):
        acc.mul(Fraction(math.factorial(i)) * (al * (i - 1) - be) ** (n - i), Fraction(1), "", i)
        acc.mul(Fraction(1), i + k + ga - 1, "i+k+gamma-1", i, power=i)
        acc.mul(Fraction(1), 2 * n - i + k + ga - 2, "2n-i+k+gamma-2", i, power=i)
    return acc.outcome()


def ratio_in_k(spec: RecurrenceSpec, n: int, j: int) -> Fraction:
    """d_n^(j+1) / d_n^(j)."""
    al, be, ga = spec.alpha, spec.beta, spec.gamma
    acc = _Product()
    for i in range(1, n + 1):
        acc.mul(al * (i + j + ga - 1) + be, i + j + ga + n - 2, "i+j+gamma+n-2", i, j)
    return acc.result()


def ratio_in_n(spec: RecurrenceSpec, j: int) -> Fraction:
    """d_{j+1}^(0) / d_j^(0) for the a0 = 1 normalization of ``spec``."""
    al, be, ga = spec.alpha, spec.beta, spec.gamma
    acc = _Product()
    for i in range(1, j + 1):
        acc.mul(i * (al * (i + ga - 1) + be) * (al * (i - 1) - be), i + ga - 1, "i+gamma-1", i)
        acc.mul(Fraction(1), (i + j + ga - 2) * (i + j + ga - 1), "(i+j+gamma-2)(i+j+gamma-1)", i, j)
    return acc.result()


def _shift_product(acc: _Product, spec: RecurrenceSpec, n: int, k: int) -> None:
    al, be, ga = spec.alpha, spec.beta, spec.gamma
    for j in range(k):
        for i in range(1, n + 1):
            acc.mul(al * (i + j + ga - 1) + be, i + j + ga + n - 2, "i+j+gamma+n-2", i, j)


def d_principal(spec: RecurrenceSpec, n: int, k: int) -> EvalOutcome:
    """The product identity for d_n^(k), including the a0^n factor.

    d_0^(k) is the empty determinant and equals 1.
    """
    if n < 0 or k < 0:
        raise ValueError("need n >= 0 and k >= 0")
    if n == 0:
        return EvalOutcome(value=Fraction(1))
    al, be, ga = spec.alpha, spec.beta, spec.gamma
    acc = _Product(spec.a0**n)
    for i in range(1, n):
        lead = i * (al * (i + ga - 1) + be) * (al * (i - 1) - be)
        head = i + ga - 1
        for j in range(i, n):
            acc.mul(lead, head * (i + j + ga - 2) * (i + j + ga - 1), "(i+gamma-1)(i+j+gamma-2)(i+j+gamma-1)", i, j)
    _shift_product(acc, spec, n, k)
    return acc.outcome()


def d_reciprocal(spec: RecurrenceSpec, n: int, k: int) -> EvalOutcome:
    """d_n^(k) of the sequence 1/a_n, evaluated directly from the parameters of a_n.

    Also valid for alpha = 0 (beta != 0), where the reciprocal recurrence
    itself has no finite parameters.
    """
    if n < 0 or k < 0:
        raise ValueError("need n >= 0 and k >= 0")
    idx = spec.vanishing_index()
    if idx is not None:
        raise ZeroTerm(f"a_{idx} = 0, so the reciprocal sequence is undefined")
    if n == 0:
        return EvalOutcome(value=Fraction(1))
    al, be, ga = spec.alpha, spec.beta, spec.gamma
    acc = _Product(1 / spec.a0**n)
    for i in range(1, n):
        lead = i * (i + ga - 1) * (al * (i - 1) + be)
        head = al * (i + ga - 1) + be
        for j in range(i, n):
            den = head * (al * (i + j + ga - 2) + be) * (al * (i + j + ga - 1) + be)
            acc.mul(lead, den, "alpha-linear factors", i, j)
    for j in range(k):
        for i in range(1, n + 1):
            acc.mul(i + j + ga - 1, al * (i + j + ga + n - 2) + be, "alpha(i+j+gamma+n-2)+beta", i, j)
    return acc.outcome()
