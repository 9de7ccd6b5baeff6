"""Closed-form Pell solutions for radicands D = f^2 +/- 2^alpha * n.

Two congruence classes admit a short, explicit continued fraction and hence
a closed-form convergent.  Writing m = 2^alpha * n:

* ``T1``:       2f = 0 (mod m)       -- period 2 (plus) or 4 (minus)
* ``T3-even``:  4f = m (mod 2m), f even -- period 8
* ``T3-odd``:   4f = m (mod 2m), f odd  -- period 10 (plus) or 12 (minus)

All fractions in the textbook formulas have power-of-two denominators that
may be fractional for small alpha; here every formula is multiplied through
by a power of m so only exact integer divisions remain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .cf import Convergent, RadicandLike, as_radicand
from .errors import (
    ConditionViolation,
    DivisionInexact,
    DomainError,
    NotASolution,
)
from .pell import PellSolution, branch_position, fundamental_solution, is_solution

PLUS = "+"
MINUS = "-"
T1 = "T1"
T3_EVEN = "T3-even"
T3_ODD = "T3-odd"
VARIANTS = (T1, T3_EVEN, T3_ODD)

# index r of the closing convergent p_r/q_r in the explicit expansions
CLAIMED_R = {
    (T1, PLUS): 1,
    (T1, MINUS): 3,
    (T3_EVEN, PLUS): 7,
    (T3_EVEN, MINUS): 7,
    (T3_ODD, PLUS): 9,
    (T3_ODD, MINUS): 11,
}


def _sgn(sign: str) -> int:
    if sign == PLUS:
        return 1
    if sign == MINUS:
        return -1
    raise DomainError(f"sign must be '+' or '-', got {sign!r}")


def _exact_div(num: int, den: int) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise DivisionInexact(f"{num} is not divisible by {den}")
    return q


def variant_of(f: int, m: int) -> Optional[str]:
    """Which congruence class (if any) the pair (f, m) falls in."""
    if (2 * f) % m == 0:
        return T1
    if (4 * f) % (2 * m) == m:
        return T3_EVEN if f % 2 == 0 else T3_ODD
    return None


def two_adic_valuation(m: int) -> int:
    return (m & -m).bit_length() - 1


@dataclass(frozen=True)
class RDDecomposition:
    """D = f^2 +/- 2^alpha * n together with its congruence class.

    ``variant`` is inferred from (f, m) when omitted.  Construction checks the
    algebraic shape only; the size conditions are checked by
    :func:`conditions_hold` / :func:`check_conditions`.
    """

    f: int
    alpha: int
    n: int
    sign: str
    variant: Optional[str] = None

    def __post_init__(self):
        _sgn(self.sign)
        if self.f < 1 or self.alpha < 0 or self.n < 1:
            raise ConditionViolation("need f >= 1, alpha >= 0, n >= 1")
        if self.sign == MINUS and self.f * self.f <= self.m:
            raise ConditionViolation(f"f^2 = {self.f * self.f} must exceed m = {self.m}")
        actual = variant_of(self.f, self.m)
        if actual is None:
            raise ConditionViolation(
                f"f={self.f} satisfies neither 2f = 0 nor 4f = m (mod 2m) for m={self.m}"
            )
        if self.variant is None:
            object.__setattr__(self, "variant", actual)
        elif self.variant != actual:
            raise ConditionViolation(f"declared variant {self.variant}, congruence gives {actual}")

    @property
    def m(self) -> int:
        return (1 << self.alpha) * self.n

    @property
    def D(self) -> int:
        return self.f * self.f + _sgn(self.sign) * self.m

    @property
    def k(self) -> int:
        """Integer parameter: f = k*m/2 for T1, f = (2k+1)*m/4 for T3."""
        if self.variant == T1:
            return 2 * self.f // self.m
        return (4 * self.f // self.m - 1) // 2

    @property
    def claimed_r(self) -> int:
        return CLAIMED_R[self.variant, self.sign]

    def __str__(self):
        return f"f={self.f} alpha={self.alpha} n={self.n} sign={self.sign} variant={self.variant}"


def _violation(dec: RDDecomposition) -> Optional[str]:
    f, alpha, n, m = dec.f, dec.alpha, dec.n, dec.m
    if dec.variant == T1:
        if dec.sign == PLUS:
            return None if 2 * f >= m else "T1 plus needs 2f >= m"
        if alpha == 0 and n == 1:
            return "T1 minus excludes alpha=0 with n=1"
        return None if f > m else "T1 minus needs f > m"
    if dec.sign == PLUS:
        # n <= 2^(2-alpha)  <=>  m <= 4
        if m <= 4:
            return None if 2 * f >= m else "T3 plus (m <= 4) needs 2f >= m"
        return None if 4 * f >= 3 * m - 4 else "T3 plus (m > 4) needs 4f >= 3m - 4"
    if dec.variant == T3_EVEN:
        if alpha >= 2 or 3 * n >= (1 << (3 - alpha)):
            return None if f >= m else "T3-even minus needs f >= m"
        return None if 4 * f > m + 8 else "T3-even minus needs 4f > m + 8"
    # n >= 2^(2-alpha) + 1  <=>  m >= 4 + 2^alpha
    if m >= 4 + (1 << alpha):
        return None if 4 * f >= 3 * m else "T3-odd minus needs 4f >= 3m"
    return None if 8 * f > m + 24 else "T3-odd minus needs 8f > m + 24"


def conditions_hold(dec: RDDecomposition) -> bool:
    return _violation(dec) is None


def check_conditions(dec: RDDecomposition) -> None:
    reason = _violation(dec)
    if reason is not None:
        raise ConditionViolation(f"{dec}: {reason}")


def classify(D: RadicandLike) -> list:
    """All decompositions of D whose closed form is certified.

    Only f = floor(sqrt(D)) (plus sign) and f = floor(sqrt(D)) + 1 (minus
    sign) are possible.  Each residual m is split as 2^alpha * n for every
    alpha up to its 2-adic valuation.  Ordered T1 first, then by sign and
    smallest alpha.
    """
    rad = as_radicand(D)
    a0 = rad.a0
    found = []
    for f, sign, m in ((a0, PLUS, rad.D - a0 * a0), (a0 + 1, MINUS, (a0 + 1) ** 2 - rad.D)):
        variant = variant_of(f, m)
        if variant is None:
            continue
        for alpha in range(two_adic_valuation(m) + 1):
            dec = RDDecomposition(f, alpha, m >> alpha, sign, variant)
            if conditions_hold(dec):
                found.append(dec)
    found.sort(key=lambda d: (d.variant != T1, d.sign == MINUS, d.alpha))
    return found


def closed_form_T1(dec: RDDecomposition) -> Convergent:
    """p = f*K +/- 1, q = K with K = 2f/m."""
    if dec.variant != T1:
        raise ConditionViolation(f"closed_form_T1 called on {dec.variant}")
    check_conditions(dec)
    K = _exact_div(2 * dec.f, dec.m)
    p = dec.f * K + _sgn(dec.sign)
    assert is_solution(dec.D, p, K)
    return Convergent(dec.claimed_r, p, K)


def closed_form_T3(dec: RDDecomposition) -> Convergent:
    if dec.variant not in (T3_EVEN, T3_ODD):
        raise ConditionViolation(f"closed_form_T3 called on {dec.variant}")
    check_conditions(dec)
    f, m, s = dec.f, dec.m, _sgn(dec.sign)
    f2 = f * f
    if dec.variant == T3_EVEN:
        m2 = m * m
        p = _exact_div(8 * f2 * (f2 + s * m), m2) + 1
        q = _exact_div(4 * f * (2 * f2 + s * m), m2)
    else:
        m3 = m * m * m
        outer = 4 * f2 + 3 * s * m
        p = _exact_div(2 * f2 * outer * outer, m3) + s
        q = _exact_div(2 * f * (4 * f2 + s * m) * outer, m3)
    if not is_solution(dec.D, p, q):
        raise DivisionInexact(f"closed form for {dec} is not a Pell solution")
    return Convergent(dec.claimed_r, p, q)


def closed_form(dec: RDDecomposition) -> Convergent:
    if dec.variant == T1:
        return closed_form_T1(dec)
    return closed_form_T3(dec)


def _halve(D: int, X: int, Y: int) -> Optional[tuple]:
    """If (X, Y) is the square of a solution (x, y), return (x, y)."""
    if X % 2 == 0:
        return None
    h = (X + 1) // 2
    x = math.isqrt(h)
    if x * x != h or Y % (2 * x):
        return None
    y = Y // (2 * x)
    if y == 0 or x * x - D * y * y != 1:
        return None
    return x, y


def reduce_pair(D: int, X: int, Y: int, verify: bool = True) -> tuple:
    """Return (fundamental, power) with X + Y*sqrt(D) = fundamental**power.

    Repeated halving (X = 2x^2 - 1, Y = 2xy) is tried first.  With
    ``verify`` the result is checked against the continued fraction and the
    power corrected if the halving could not reach the fundamental.
    """
    if not is_solution(D, X, Y):
        raise NotASolution(f"{X}^2 - {D}*{Y}^2 != 1")
    if X < 1 or Y < 1:
        raise NotASolution("the trivial solution has no fundamental reduction")
    power = 1
    while (half := _halve(D, X, Y)) is not None:
        X, Y = half
        power *= 2
    if verify:
        fund = fundamental_solution(D)
        if (fund.X, fund.Y) != (X, Y):
            power *= branch_position(fund, X, Y)
        return fund, power
    return PellSolution(X, Y, D, 1), power


def reduce_to_fundamental(sol: PellSolution, verify: bool = True) -> PellSolution:
    """Fundamental solution of which ``sol`` is a branch element."""
    return reduce_pair(sol.D, sol.X, sol.Y, verify)[0]


@dataclass(frozen=True)
class FastPath:
    decomposition: RDDecomposition
    closed_form: Convergent
    power: int

    @property
    def reduced(self) -> bool:
        return self.power > 1


@dataclass(frozen=True)
class SolveResult:
    solution: PellSolution
    fast_path: Optional[FastPath]


def solve(D: RadicandLike, fastpath: bool = True, verify: bool = True) -> SolveResult:
    """Fundamental solution, via a closed form when D is covered.

    The first decomposition from :func:`classify` is used; D outside both
    classes (or ``fastpath=False``) goes straight to the continued fraction.
    """
    rad = as_radicand(D)
    if fastpath:
        decs = classify(rad)
        if decs:
            dec = decs[0]
            conv = closed_form(dec)
            fund, power = reduce_pair(rad.D, conv.p, conv.q, verify)
            return SolveResult(fund, FastPath(dec, conv, power))
    return SolveResult(fundamental_solution(rad), None)
