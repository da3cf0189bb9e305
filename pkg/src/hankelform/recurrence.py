"""Sequences with a_{n+1} = (alpha + beta/(n + gamma)) * a_n."""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import RationalLike, as_rational, format_rational


class InvalidGamma(ValueError):
    pass


class ZeroAlpha(ValueError):
    pass


class ZeroTerm(ValueError):
    pass


def _is_nonpositive_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


@dataclass(frozen=True)
class RecurrenceSpec:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    a0: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "a0"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if _is_nonpositive_integer(self.gamma):
            raise InvalidGamma(
                f"gamma = {format_rational(self.gamma)} makes n + gamma vanish for some n >= 0"
            )

    def step(self, n: int) -> Fraction:
        """The ratio a_{n+1} / a_n."""
        return self.alpha + self.beta / (n + self.gamma)

    def normalized(self) -> "RecurrenceSpec":
        """Same recurrence with a0 = 1."""
        return RecurrenceSpec(self.alpha, self.beta, self.gamma, Fraction(1))

    def vanishing_index(self) -> int | None:
        """Smallest n with a_n = 0, or None when every term is nonzero."""
        if self.a0 == 0:
            return 0
        # a_{n+1} = 0 exactly when alpha*(n + gamma) + beta = 0
        if self.alpha == 0:
            return 1 if self.beta == 0 else None
        root = -(self.alpha * self.gamma + self.beta) / self.alpha
        if root.denominator == 1 and root >= 0:
            return int(root) + 1
        return None

    def to_dict(self) -> dict[str, str]:
        return {
            "alpha": format_rational(self.alpha),
            "beta": format_rational(self.beta),
            "gamma": format_rational(self.gamma),
            "a0": format_rational(self.a0),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "RecurrenceSpec":
        return cls(
            as_rational(str(data["alpha"])),
            as_rational(str(data["beta"])),
            as_rational(str(data["gamma"])),
            as_rational(str(data.get("a0", "1"))),
        )

    @classmethod
    def from_json(cls, text: str) -> "RecurrenceSpec":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        d = self.to_dict()
        return f"(alpha={d['alpha']}, beta={d['beta']}, gamma={d['gamma']}, a0={d['a0']})"


def make_spec(
    alpha: RationalLike, beta: RationalLike, gamma: RationalLike, a0: RationalLike = 1
) -> RecurrenceSpec:
    return RecurrenceSpec(
        as_rational(alpha), as_rational(beta), as_rational(gamma), as_rational(a0)
    )


_cache: dict[RecurrenceSpec, list[Fraction]] = {}
_cache_lock = threading.Lock()
_CACHE_SPECS = 512


def _prefix(spec: RecurrenceSpec, n: int) -> list[Fraction]:
    with _cache_lock:
        terms = _cache.get(spec)
        if terms is None:
            if len(_cache) >= _CACHE_SPECS:
                _cache.clear()
            terms = _cache[spec] = [spec.a0]
        while len(terms) <= n:
            s = len(terms)
            # factor for a_s in the product form
            terms.append(terms[-1] * (spec.alpha * (s + spec.gamma - 1) + spec.beta) / (s + spec.gamma - 1))
        return terms


def term(spec: RecurrenceSpec, n: int) -> Fraction:
    """a_n = a0 * prod_{s=1}^{n} (alpha(s+gamma-1) + beta) / (s+gamma-1)."""
    if n < 0:
        raise ValueError("term index must be nonnegative")
    return _prefix(spec, n)[n]


@dataclass(frozen=True)
class SequenceWindow:
    """Terms a_origin, a_{origin+1}, ... of some sequence."""

    origin: int
    terms: tuple[Fraction, ...]

    @property
    def stop(self) -> int:
        return self.origin + len(self.terms)

    def covers(self, lo: int, hi: int) -> bool:
        """True when indices lo..hi inclusive are available."""
        return self.origin <= lo and hi < self.stop

    def __getitem__(self, index: int) -> Fraction:
        if not self.origin <= index < self.stop:
            raise IndexError(f"a_{index} is outside the window [{self.origin}, {self.stop})")
        return self.terms[index - self.origin]

    def __len__(self) -> int:
        return len(self.terms)

    @classmethod
    def from_terms(cls, terms: Sequence[RationalLike], origin: int = 0) -> "SequenceWindow":
        return cls(origin, tuple(as_rational(t) for t in terms))


def window(spec: RecurrenceSpec, k: int, count: int) -> SequenceWindow:
    if k < 0 or count < 1:
        raise ValueError("window needs k >= 0 and count >= 1")
    terms = _prefix(spec, k + count - 1)
    return SequenceWindow(k, tuple(terms[k : k + count]))


def reciprocal_spec(spec: RecurrenceSpec) -> RecurrenceSpec:
    """Parameters of the recurrence satisfied by 1/a_n.

    (alpha, beta, gamma, a0) -> (1/alpha, -beta/alpha^2, gamma + beta/alpha, 1/a0)
    """
    if spec.alpha == 0:
        raise ZeroAlpha("the reciprocal recurrence needs alpha != 0")
    idx = spec.vanishing_index()
    if idx is not None:
        raise ZeroTerm(f"a_{idx} = 0, so the reciprocal sequence is undefined")
    a = spec.alpha
    return RecurrenceSpec(1 / a, -spec.beta / a**2, spec.gamma + spec.beta / a, 1 / spec.a0)
