import math

import pytest
from hypothesis import given, settings, strategies as st

from rdpell.cf import convergent_at, expand_sqrt
from rdpell.errors import DomainError, NotASolution, NotFound, NotFundamental
from rdpell.pell import (
    PellSolution,
    brute_fundamental,
    branch_position,
    compose,
    fundamental_solution,
    is_solution,
    iter_branch,
    nth_solution,
)

from conftest import nonsquares


def _zsqrt_pow(x, y, D, n):
    """(x + y sqrt D)^n by square-and-multiply, independent of the branch recurrence."""
    rx, ry = 1, 0
    while n:
        if n & 1:
            rx, ry = rx * x + D * ry * y, rx * y + ry * x
        x, y = x * x + D * y * y, 2 * x * y
        n >>= 1
    return rx, ry


@pytest.mark.parametrize(
    "D, X, Y",
    [(3, 2, 1), (5, 9, 4), (13, 649, 180), (21, 55, 12), (2, 3, 2), (61, 1766319049, 226153980)],
)
def test_fundamental_examples(D, X, Y):
    assert fundamental_solution(D).pair == (X, Y)


def test_fundamental_is_irreducible():
    for D in nonsquares(2, 400):
        sol = fundamental_solution(D)
        assert sol.X > 1 and sol.Y > 0
        assert math.gcd(sol.X, sol.Y) == 1


@pytest.mark.parametrize("D", [2, 5, 10, 13, 29])
def test_even_r_uses_second_period(D):
    exp = expand_sqrt(D)
    assert exp.r % 2 == 0
    half = convergent_at(exp, exp.r)
    assert half.p**2 - D * half.q**2 == -1
    full = convergent_at(exp, 2 * exp.r + 1)
    assert fundamental_solution(D).pair == (full.p, full.q)


@pytest.mark.parametrize(
    "D, y_max, X, Y",
    [(6, 10, 5, 2), (2, 2, 3, 2), (13, 1000, 649, 180)],
)
def test_brute_examples(D, y_max, X, Y):
    assert brute_fundamental(D, y_max).pair == (X, Y)


def test_brute_not_found():
    with pytest.raises(NotFound):
        brute_fundamental(61, 10**3)
    # (3, 2) needs Y = 2
    with pytest.raises(NotFound):
        brute_fundamental(2, 1)


def test_brute_python_path_agrees():
    # D * y_max^2 beyond the int64-safe window forces the pure Python scan
    f = 10**6
    D = f * f + f
    sol = brute_fundamental(D, 10**3)
    assert sol.pair == (2 * f + 1, 2) == fundamental_solution(D).pair


def test_brute_rejects_bad_range():
    with pytest.raises(DomainError):
        brute_fundamental(2, 0)


@pytest.mark.parametrize("D, X, Y, ok", [(3, 2, 1, True), (3, 1, 0, True), (3, 2, 2, False)])
def test_is_solution(D, X, Y, ok):
    assert is_solution(D, X, Y) is ok


def test_solution_validation():
    with pytest.raises(NotASolution):
        PellSolution(2, 2, 3, 1)
    with pytest.raises(NotASolution):
        PellSolution(1, 0, 3, 1)
    assert PellSolution(1, 0, 3, 0).pair == (1, 0)


@pytest.mark.parametrize(
    "D, n, X, Y",
    [(3, 1, 2, 1), (3, 2, 7, 4), (2, 3, 99, 70)],
)
def test_nth_examples(D, n, X, Y):
    sol = nth_solution(fundamental_solution(D), n)
    assert sol.pair == (X, Y)
    assert sol.index == n


def test_nth_requires_fundamental():
    second = nth_solution(fundamental_solution(3), 2)
    with pytest.raises(NotFundamental):
        nth_solution(second, 2)
    with pytest.raises(DomainError):
        nth_solution(fundamental_solution(3), 0)


@pytest.mark.parametrize("D", [2, 3, 5, 6, 7, 10])
def test_branch_consistency(D):
    fund = fundamental_solution(D)
    acc = fund
    prev = PellSolution(1, 0, D, 0)
    for n in range(1, 11):
        sol = nth_solution(fund, n)
        assert sol.pair == acc.pair == _zsqrt_pow(fund.X, fund.Y, D, n)
        nxt = nth_solution(fund, n + 1)
        assert nxt.X == 2 * fund.X * sol.X - prev.X
        assert math.gcd(sol.X, sol.Y) == 1
        prev, acc = sol, compose(acc, fund)


def test_binet_form_high_precision():
    import mpmath

    with mpmath.workdps(200):
        for D in (2, 3, 7, 13):
            x1, y1 = fundamental_solution(D).pair
            s = mpmath.sqrt(D)
            for n in range(1, 8):
                X = ((x1 + s * y1) ** n + (x1 - s * y1) ** n) / 2
                Y = ((x1 + s * y1) ** n - (x1 - s * y1) ** n) / (2 * s)
                assert nth_solution(fundamental_solution(D), n).pair == (int(mpmath.nint(X)), int(mpmath.nint(Y)))


def test_branch_position():
    fund = fundamental_solution(21)
    assert branch_position(fund, 6049, 1320) == 2
    assert branch_position(fund, 1, 0) == 0
    sixth = nth_solution(fund, 6)
    assert branch_position(fund, sixth.X, sixth.Y) == 6
    with pytest.raises(NotASolution):
        branch_position(fund, 56, 12)


def test_iter_branch_starts_at_one():
    it = iter_branch(fundamental_solution(2))
    assert [next(it).pair for _ in range(3)] == [(3, 2), (17, 12), (99, 70)]


@given(st.integers(min_value=2, max_value=10**6).filter(lambda D: math.isqrt(D) ** 2 != D))
@settings(max_examples=80, deadline=None)
def test_fundamental_satisfies_identity(D):
    sol = fundamental_solution(D)
    assert is_solution(D, sol.X, sol.Y)


def test_minimal_y_against_oracle():
    for D in nonsquares(2, 10**4):
        sol = fundamental_solution(D)
        assert is_solution(D, sol.X, sol.Y)
        bound = min(sol.Y - 1, 2000)
        if bound >= 1:
            with pytest.raises(NotFound):
                brute_fundamental(D, bound)
