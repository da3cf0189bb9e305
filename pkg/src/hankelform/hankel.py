"""Hankel matrices H_n^(k) and exact determinants.

Two independent algorithms are provided so that closed forms can be checked
against a pair that is unlikely to share a bug: fraction-free Bareiss
elimination over the integers, and Dodgson condensation over the rationals.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .arith import as_rational, format_rational
from .recurrence import SequenceWindow

METHODS = ("bareiss", "condensation", "closed_form", "catalog")


class InsufficientTerms(ValueError):
    pass


@dataclass(frozen=True)
class HankelMatrix:
    n: int
    k: int
    entries: tuple[tuple[Fraction, ...], ...]

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "rows": [[format_rational(x) for x in r] for r in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "HankelMatrix":
        rows = tuple(tuple(as_rational(str(x)) for x in r) for r in data["rows"])
        n = int(data.get("n", len(rows)))
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"rows do not form a {n}x{n} matrix")
        return cls(n, int(data.get("k", 0)), rows)

    @classmethod
    def from_json(cls, text: str) -> "HankelMatrix":
        return cls.from_dict(json.loads(text))


Grid = Union[HankelMatrix, Sequence[Sequence[Fraction]]]


@dataclass(frozen=True)
class TransformValue:
    n: int
    k: int
    value: Fraction
    method: str
    note: str = ""

    def to_dict(self) -> dict:
        out = {"n": self.n, "k": self.k, "value": format_rational(self.value), "method": self.method}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class CondensationResult:
    value: Fraction
    fallback: bool


def build_matrix(w: SequenceWindow, n: int, k: int) -> HankelMatrix:
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if not w.covers(k, k + 2 * n - 2):
        raise InsufficientTerms(
            f"H_{n}^({k}) needs a_{k}..a_{k + 2 * n - 2}; window holds a_{w.origin}..a_{w.stop - 1}"
        )
    entries = tuple(tuple(w[i + j + k] for j in range(n)) for i in range(n))
    return HankelMatrix(n, k, entries)


def _as_rows(m: Grid) -> list[list[Fraction]]:
    rows = m.rows() if isinstance(m, HankelMatrix) else [[as_rational(x) for x in r] for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    return rows


def det_bareiss(m: Grid) -> Fraction:
    """Fraction-free Gaussian elimination.

    Entries are scaled by the LCM of all denominators so that every Bareiss
    division is an exact integer division; the LCM^n factor is divided out
    at the end.  A zero pivot is replaced by swapping in a later column.
    """
    rows = _as_rows(m)
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = 1
    for r in rows:
        for x in r:
            scale = math.lcm(scale, x.denominator)
    a = [[int(x * scale) for x in r] for r in rows]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if a[t][t] == 0:
            col = next((j for j in range(t + 1, n) if a[t][j] != 0), None)
            if col is None:
                return Fraction(0)
            for r in a:
                r[t], r[col] = r[col], r[t]
            sign = -sign
        piv = a[t][t]
        for i in range(t + 1, n):
            ai, ait = a[i], a[i][t]
            at = a[t]
            for j in range(t + 1, n):
                ai[j] = (ai[j] * piv - ait * at[j]) // prev
            ai[t] = 0
        prev = piv
    return Fraction(sign * a[n - 1][n - 1], scale**n)


def condense(m: Grid) -> CondensationResult:
    """Dodgson condensation, falling back to Bareiss on a zero interior divisor."""
    rows = _as_rows(m)
    n = len(rows)
    if n == 0:
        return CondensationResult(Fraction(1), False)
    older = [[Fraction(1)] * (n + 1) for _ in range(n + 1)]
    cur = rows
    while len(cur) > 1:
        size = len(cur) - 1
        nxt = []
        for i in range(size):
            row = []
            for j in range(size):
                div = older[i + 1][j + 1]
                if div == 0:
                    return CondensationResult(det_bareiss(rows), True)
                minor = cur[i][j] * cur[i + 1][j + 1] - cur[i][j + 1] * cur[i + 1][j]
                row.append(minor / div)
            nxt.append(row)
        older, cur = cur, nxt
    return CondensationResult(cur[0][0], False)


def det_condensation(m: Grid) -> Fraction:
    return condense(m).value
