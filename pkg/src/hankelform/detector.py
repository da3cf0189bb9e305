"""Heuristic evidence that a Hankel transform has no closed product form.

Product formulas built from factors linear in the indices only ever produce
small primes.  Computing the first few determinants exactly and finding a
prime far above any such factor is strong evidence against a product form.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import (
    DEFAULT_FACTOR_BUDGET,
    TRIAL_DIVISION_LIMIT,
    Factorization,
    FactorTimeout,
    factor,
    format_rational,
)
from .hankel import InsufficientTerms, TransformValue, build_matrix, det_bareiss
from .recurrence import SequenceWindow

PLAUSIBLE = "product_form_plausible"
UNLIKELY = "no_product_form_likely"
INCONCLUSIVE = "inconclusive"


def default_bound(n_max: int, k: int = 0) -> int:
    return 1000 * (2 * n_max + k + 2) ** 2


def transform_sequence(terms: SequenceWindow, n_max: int, k: int = 0) -> list[TransformValue]:
    """d_1^(k), ..., d_{n_max}^(k) by Bareiss elimination."""
    if n_max < 1 or k < 0:
        raise ValueError("need n_max >= 1 and k >= 0")
    if not terms.covers(k, k + 2 * n_max - 2):
        raise InsufficientTerms(
            f"n_max={n_max}, k={k} needs a_{k}..a_{k + 2 * n_max - 2}; "
            f"got a_{terms.origin}..a_{terms.stop - 1}"
        )
    return [
        TransformValue(n, k, det_bareiss(build_matrix(terms, n, k)), "bareiss")
        for n in range(1, n_max + 1)
    ]


@dataclass(frozen=True)
class FactorizationReport:
    n: int
    k: int
    value: Fraction
    num_factors: Factorization | None
    den_factors: Factorization | None
    largest_prime: int
    # None when a factorization ran out of budget before smoothness was settled
    smooth: bool | None

    @property
    def complete(self) -> bool:
        return all(f is None or f.complete for f in (self.num_factors, self.den_factors))

    def reconstruct(self) -> Fraction:
        if self.value == 0:
            return Fraction(0)
        sign = -1 if self.value < 0 else 1
        return Fraction(sign * self.num_factors.product(), self.den_factors.product())

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "value": format_rational(self.value),
            "largest_prime": str(self.largest_prime),
            "smooth": self.smooth,
        }
        for key, f in (("num_factors", self.num_factors), ("den_factors", self.den_factors)):
            out[key] = None if f is None else f.as_pairs()
            if f is not None and f.unfactored:
                out[key + "_unfactored"] = [str(c) for c in f.unfactored]
        return out


@dataclass(frozen=True)
class DetectorVerdict:
    reports: tuple[FactorizationReport, ...]
    verdict: str
    bound_used: int

    @property
    def largest_prime(self) -> int:
        return max((r.largest_prime for r in self.reports), default=0)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "bound": str(self.bound_used),
            "largest_prime": str(self.largest_prime),
            "reports": [r.to_dict() for r in self.reports],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _factor_or_partial(x: int, budget: int) -> Factorization:
    try:
        return factor(x, budget)
    except FactorTimeout as exc:
        return exc.partial


def _smooth(f: Factorization, bound: int) -> bool | None:
    if f.largest_prime > bound:
        return False
    if f.unfactored:
        # unfactored composites only have prime factors above the trial-division limit
        return False if TRIAL_DIVISION_LIMIT > bound else None
    return True


def report_for(tv: TransformValue, bound: int, budget: int = DEFAULT_FACTOR_BUDGET) -> FactorizationReport:
    v = tv.value
    if v == 0 or abs(v) == 1:
        one = Factorization(1, ()) if v != 0 else None
        return FactorizationReport(tv.n, tv.k, v, one, one, 0, True if v != 0 else None)
    num = _factor_or_partial(abs(v.numerator), budget)
    den = _factor_or_partial(v.denominator, budget)
    verdicts = [_smooth(num, bound), _smooth(den, bound)]
    if False in verdicts:
        smooth = False
    elif None in verdicts:
        smooth = None
    else:
        smooth = True
    largest = max(num.largest_prime, den.largest_prime)
    return FactorizationReport(tv.n, tv.k, v, num, den, largest, smooth)


def _report_task(args):
    return report_for(*args)


def analyze(
    values: Sequence[TransformValue],
    bound: int | None = None,
    budget: int = DEFAULT_FACTOR_BUDGET,
    jobs: int = 1,
) -> DetectorVerdict:
    """Factor every nonzero value and judge smoothness against ``bound``.

    Zero values are reported but play no part in the verdict.
    """
    if bound is None:
        n_max = max((tv.n for tv in values), default=1)
        k = max((tv.k for tv in values), default=0)
        bound = default_bound(n_max, k)
    tasks = [(tv, bound, budget) for tv in values]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = tuple(pool.map(_report_task, tasks))
    else:
        reports = tuple(_report_task(t) for t in tasks)
    return DetectorVerdict(reports, _verdict(reports), bound)


def _verdict(reports: Iterable[FactorizationReport]) -> str:
    judged = [r.smooth for r in reports if r.value != 0]
    if False in judged:
        return UNLIKELY
    if None in judged:
        return INCONCLUSIVE
    return PLAUSIBLE


def detect(
    terms: SequenceWindow,
    n_max: int,
    k: int = 0,
    bound: int | None = None,
    budget: int = DEFAULT_FACTOR_BUDGET,
    jobs: int = 1,
) -> DetectorVerdict:
    if bound is None:
        bound = default_bound(n_max, k)
    return analyze(transform_sequence(terms, n_max, k), bound, budget, jobs)
