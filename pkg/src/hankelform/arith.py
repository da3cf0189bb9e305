"""Exact scalars, primality and integer factorization.

Python's ``int`` already is an arbitrary-precision signed integer with a
canonical zero, so it serves as the big-integer type directly.  Rationals
are :class:`fractions.Fraction`, which keeps ``den > 0`` and
``gcd(|num|, den) == 1`` after every operation.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

BigRational = Fraction
RationalLike = Union[int, Fraction, str]

TRIAL_DIVISION_LIMIT = 10**6
DEFAULT_FACTOR_BUDGET = 10**7

# Miller-Rabin with the first 13 prime bases is deterministic below this bound.
_DETERMINISTIC_LIMIT = 3317044064679887385961981
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_RANDOM_ROUNDS = 64

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?")


class ZeroDenominator(ZeroDivisionError):
    pass


class FactorTimeout(RuntimeError):
    """Raised when Pollard rho exhausts its work budget.

    ``partial`` holds everything that was factored, with the remaining
    composite cofactors listed in ``partial.unfactored``.
    """

    def __init__(self, partial: "Factorization"):
        super().__init__(
            f"factor budget exhausted; unfactored composites: {list(partial.unfactored)}"
        )
        self.partial = partial


def normalize(num: int, den: int) -> Fraction:
    if den == 0:
        raise ZeroDenominator(f"zero denominator for numerator {num}")
    return Fraction(num, den)


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``.  Decimal and float notation is rejected."""
    m = _RATIONAL_RE.fullmatch(text)
    if m is None:
        raise ValueError(f"not an exact rational: {text!r} (use p/q or an integer)")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return normalize(num, den)


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def generalized_binomial(lam: RationalLike, n: int) -> Fraction:
    """``lam*(lam-1)*...*(lam-n+1) / n!`` for any rational ``lam``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    lam = as_rational(lam)
    out = Fraction(1)
    for i in range(n):
        out = out * (lam - i) / (i + 1)
    return out


def _miller_rabin_round(x: int, d: int, s: int, a: int) -> bool:
    y = pow(a, d, x)
    if y == 1 or y == x - 1:
        return True
    for _ in range(s - 1):
        y = y * y % x
        if y == x - 1:
            return True
    return False


def is_probable_prime(x: int) -> bool:
    if x < 0:
        raise ValueError("primality is only defined here for x >= 0")
    if x < 2:
        return False
    for p in _DETERMINISTIC_BASES:
        if x % p == 0:
            return x == p
    d, s = x - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if x < _DETERMINISTIC_LIMIT:
        bases: Iterable[int] = _DETERMINISTIC_BASES
    else:
        # seeded by x so the answer is reproducible
        rng = random.Random(x)
        bases = [rng.randrange(2, x - 1) for _ in range(_RANDOM_ROUNDS)]
    return all(_miller_rabin_round(x, d, s, a) for a in bases)


@lru_cache(maxsize=4)
def small_primes(limit: int = TRIAL_DIVISION_LIMIT) -> tuple[int, ...]:
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]
    unfactored: tuple[int, ...] = field(default=())

    @property
    def complete(self) -> bool:
        return not self.unfactored

    @property
    def largest_prime(self) -> int:
        return self.factors[-1][0] if self.factors else 0

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        for c in self.unfactored:
            out *= c
        return out

    def as_pairs(self) -> list[list]:
        return [[str(p), e] for p, e in self.factors]

    def __str__(self) -> str:
        if self.value == 1:
            return "1"
        parts = [str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors]
        parts += [f"[{c}]" for c in self.unfactored]
        return " * ".join(parts)


def _brent(n: int, budget: int, rng: random.Random) -> tuple[int | None, int]:
    """One run of Brent's variant of Pollard rho.

    Returns ``(divisor or None, iterations used)``.
    """
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        used += r
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        used += min(k, r)
        r *= 2
        if used > budget:
            return None, used
    if g == n:
        # batch overshot; step back one at a time
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            used += 1
            if g > 1:
                break
    return (g if g != n else None), used


def _split(n: int, budget: int) -> int | None:
    rng = random.Random(n)
    remaining = budget
    while remaining > 0:
        d, used = _brent(n, remaining, rng)
        remaining -= used
        if d is not None:
            return d
    return None


def factor(x: int, budget: int = DEFAULT_FACTOR_BUDGET) -> Factorization:
    """Prime factorization of ``x >= 1``.

    Trial division by primes below 10**6, then recursive Pollard rho (Brent)
    on whatever composite cofactor is left.  ``budget`` caps the rho
    iterations spent on each composite; when it runs out, FactorTimeout is
    raised carrying the partial result.
    """
    if x < 1:
        raise ValueError("factor() requires x >= 1")
    counts: dict[int, int] = {}
    rest = x
    for p in small_primes():
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            counts[p] = e
    stuck: list[int] = []
    stack = [rest] if rest > 1 else []
    while stack:
        n = stack.pop()
        if n < TRIAL_DIVISION_LIMIT**2 or is_probable_prime(n):
            # every prime below the trial limit is gone, so n < limit^2 is prime
            counts[n] = counts.get(n, 0) + 1
            continue
        d = _split(n, budget)
        if d is None:
            stuck.append(n)
            continue
        stack.extend((d, n // d))
    result = Factorization(x, tuple(sorted(counts.items())), tuple(sorted(stuck)))
    if stuck:
        raise FactorTimeout(result)
    return result
