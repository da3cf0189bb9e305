"""Cross-checking the product identity against both determinant oracles over (n, k) grids."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .arith import format_rational
from .closedform import d_principal
from .hankel import build_matrix, condense, det_bareiss
from .recurrence import InvalidGamma, RecurrenceSpec, make_spec, window


@dataclass(frozen=True)
class GridCheck:
    n: int
    k: int
    closed: Fraction | None
    singular: str
    bareiss: Fraction
    condensation: Fraction
    fallback: bool

    @property
    def agree(self) -> bool:
        if self.bareiss != self.condensation:
            return False
        return self.closed is None or self.closed == self.bareiss

    def to_dict(self) -> dict:
        fmt = lambda v: None if v is None else format_rational(v)  # noqa: E731
        return {
            "n": self.n,
            "k": self.k,
            "closed_form": fmt(self.closed),
            "singular": self.singular or None,
            "bareiss": fmt(self.bareiss),
            "condensation": fmt(self.condensation),
            "condensation_fallback": self.fallback,
            "agree": self.agree,
        }


def check_point(spec: RecurrenceSpec, n: int, k: int) -> GridCheck:
    closed = d_principal(spec, n, k)
    m = build_matrix(window(spec, k, 2 * n - 1), n, k)
    cond = condense(m)
    return GridCheck(
        n,
        k,
        closed.value,
        "" if closed.ok else str(closed.singular),
        det_bareiss(m),
        cond.value,
        cond.fallback,
    )


def _task(args):
    return check_point(*args)


def verify_grid(spec: RecurrenceSpec, n_max: int, k_max: int, jobs: int = 1) -> list[GridCheck]:
    """Results are ordered by (n, k) whatever the number of workers."""
    tasks = [(spec, n, k) for n in range(1, n_max + 1) for k in range(k_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_task, tasks, chunksize=4))
    return [_task(t) for t in tasks]


def random_rational(rng: random.Random, bound: int = 6, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def random_specs(count: int, seed: int = 0) -> Iterator[RecurrenceSpec]:
    """Specs with small rational parameters; invalid gammas are redrawn."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        try:
            spec = make_spec(
                random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng)
            )
        except InvalidGamma:
            continue
        made += 1
        yield spec
