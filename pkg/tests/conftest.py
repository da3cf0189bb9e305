from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from hankelform.recurrence import RecurrenceSpec


def leibniz_det(rows) -> Fraction:
    """Permutation-expansion determinant; independent of both library algorithms."""
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = Fraction(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            prod *= rows[i][j]
            if prod == 0:
                break
        total += prod
    return total


def iterate_terms(alpha, beta, gamma, a0, count) -> list[Fraction]:
    """Step the recurrence a_{n+1} = (alpha + beta/(n+gamma)) a_n directly."""
    out = [Fraction(a0)]
    for n in range(count - 1):
        out.append((alpha + Fraction(beta) / (n + gamma)) * out[-1])
    return out


small_rationals = st.builds(
    Fraction, st.integers(min_value=-8, max_value=8), st.integers(min_value=1, max_value=5)
)

valid_gammas = small_rationals.filter(lambda g: not (g.denominator == 1 and g <= 0))

specs = st.builds(RecurrenceSpec, small_rationals, small_rationals, valid_gammas, small_rationals)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance") or sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.format_results():
        terminalreporter.write_line(line)
