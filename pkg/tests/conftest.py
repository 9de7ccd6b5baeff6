import itertools
import math

import pytest

from rdpell.errors import ConditionViolation
from rdpell.families import FamilyParams, family_convergent

ACCEPTANCE_RESULTS = {}


def brute_continued_fraction(D, terms, dps=400):
    """First ``terms`` partial quotients of sqrt(D) from a high-precision float expansion."""
    import mpmath

    with mpmath.workdps(dps):
        x = mpmath.sqrt(D)
        out = []
        for _ in range(terms):
            a = int(mpmath.floor(x))
            out.append(a)
            x = 1 / (x - a)
    return out


def trial_squarefree(n):
    return all(n % (k * k) for k in range(2, math.isqrt(n) + 1))


def nonsquares(lo, hi):
    return [D for D in range(lo, hi + 1) if math.isqrt(D) ** 2 != D]


def family_grid(fid, want=25):
    """First ``want`` valid parameter points of a family, in a fixed order."""
    points = []
    combos = itertools.product(
        range(1, 40),  # d
        (1, 2, 3),  # m
        (1, 2, 3, 5),  # n
        (0, 1, 2, 3),  # alpha
        (1, 2),  # beta
        ("+", "-"),
        ("+", "-"),
    )
    for d, m, n, alpha, beta, sign, inner in combos:
        fp = FamilyParams(fid, d=d, m=m, n=n, alpha=alpha, beta=beta, sign=sign, inner_sign=inner)
        try:
            rad, conv = family_convergent(fp)
        except ConditionViolation:
            continue
        points.append((fp, rad, conv))
        if len(points) == want:
            break
    return points


@pytest.fixture
def acceptance():
    def record(criterion, ok, detail=""):
        ACCEPTANCE_RESULTS[criterion] = (ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[criterion]
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
