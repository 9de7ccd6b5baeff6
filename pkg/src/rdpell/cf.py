"""Regular continued fractions of sqrt(D) in exact integer arithmetic.

The expansion follows the classical (b_i, c_i) recurrence for the complete
quotients (sqrt(D) + b_i) / c_i:

    a_i     = (a_0 + b_i) // c_i
    b_{i+1} = a_i * c_i - b_i
    c_{i+1} = (D - b_{i+1}^2) / c_i        (always exact)

starting from b_1 = a_0, c_1 = D - a_0^2.  The period closes at the first
i >= 1 with c_i == 1, where a_i == 2 * a_0.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Union

from .errors import DomainError, PerfectSquare, PeriodTooLong

DEFAULT_ITER_CAP = 10**6
ITER_CAP_ENV = "PELL_ITER_CAP"

# Above this, trial factorisation is too slow and the flag is left unknown.
SQUAREFREE_LIMIT = 10**15


def isqrt(n: int) -> int:
    """Exact floor square root: the s with s*s <= n < (s+1)**2."""
    return math.isqrt(n)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    s = math.isqrt(n)
    return s * s == n


def is_squarefree(n: int) -> bool:
    """Trial-division squarefree test.

    Primes up to the cube root of the remaining cofactor are stripped; what
    is left has at most two prime factors, so it is squarefree unless it is
    a perfect square.
    """
    if n < 1:
        raise DomainError(f"squarefree test needs n >= 1, got {n}")
    rest = n
    p = 2
    while p * p * p <= rest:
        if rest % p == 0:
            rest //= p
            if rest % p == 0:
                return False
        p += 1 if p == 2 else 2
    return rest == 1 or not is_square(rest)


def iter_cap_default() -> int:
    raw = os.environ.get(ITER_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_ITER_CAP
    cap = int(raw)
    if cap < 1:
        raise DomainError(f"{ITER_CAP_ENV} must be positive, got {raw!r}")
    return cap


@dataclass(frozen=True)
class Radicand:
    """A validated non-square radicand D >= 2.

    ``squarefree`` is computed by trial factorisation when not supplied;
    for D above SQUAREFREE_LIMIT it stays None (unknown).
    """

    D: int
    squarefree: Optional[bool] = field(default=None, compare=False)

    def __post_init__(self):
        D = self.D
        if isinstance(D, bool) or not isinstance(D, int):
            raise TypeError(f"radicand must be an int, got {type(D).__name__}")
        if D < 2:
            raise DomainError(f"radicand must be >= 2, got {D}")
        if is_square(D):
            raise PerfectSquare(f"{D} is a perfect square")
        if self.squarefree is None and D <= SQUAREFREE_LIMIT:
            object.__setattr__(self, "squarefree", is_squarefree(D))

    def __int__(self):
        return self.D

    @property
    def a0(self) -> int:
        return math.isqrt(self.D)


RadicandLike = Union[int, Radicand]


def as_radicand(D: RadicandLike) -> Radicand:
    if isinstance(D, Radicand):
        return D
    return Radicand(D)


@dataclass(frozen=True)
class CFState:
    """Complete quotient (sqrt(D) + b) / c at index i, with a = floor of it."""

    index: int
    b: int
    c: int
    a: int


@dataclass(frozen=True)
class CFExpansion:
    """sqrt(D) = [a0; period...] where the period ends with 2*a0."""

    D: int
    a0: int
    period: tuple

    @property
    def r(self) -> int:
        """Period length minus one (so D=2 has r=0)."""
        return len(self.period) - 1

    @property
    def period_length(self) -> int:
        return len(self.period)

    def partial_quotient(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        if i == 0:
            return self.a0
        return self.period[(i - 1) % len(self.period)]

    def __str__(self):
        return f"[{self.a0}; {','.join(map(str, self.period))}]"


@dataclass(frozen=True)
class Convergent:
    index: int
    p: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


def iter_states(D: RadicandLike, max_iter: Optional[int] = None) -> Iterator[CFState]:
    """Yield the states 0, 1, ... up to and including the one closing the period."""
    rad = as_radicand(D)
    D = rad.D
    cap = iter_cap_default() if max_iter is None else max_iter
    a0 = math.isqrt(D)
    yield CFState(0, 0, 1, a0)
    b, c = a0, D - a0 * a0
    i = 1
    while True:
        a = (a0 + b) // c
        yield CFState(i, b, c, a)
        if c == 1:
            return
        if i >= cap:
            raise PeriodTooLong(f"period of sqrt({D}) exceeds {cap} terms")
        b = a * c - b
        c, rem = divmod(D - b * b, c)
        assert rem == 0, "inexact division in continued fraction recurrence"
        i += 1


def expand_sqrt(D: RadicandLike, max_iter: Optional[int] = None) -> CFExpansion:
    """Continued fraction of sqrt(D): a0 and one full period.

    >>> str(expand_sqrt(7))
    '[2; 1,1,1,4]'
    """
    rad = as_radicand(D)
    states = iter_states(rad, max_iter)
    a0 = next(states).a
    period = [s.a for s in states]
    # closing state has c == 1, which forces a == 2*a0
    if period[-1] != 2 * a0:
        raise AssertionError(f"period of sqrt({rad.D}) closed on {period[-1]}, not 2*a0")
    return CFExpansion(rad.D, a0, tuple(period))


def iter_convergents(exp: CFExpansion) -> Iterator[Convergent]:
    """Endless stream p_i/q_i for i = 0, 1, 2, ... (period reused cyclically)."""
    p_prev, p = 1, exp.a0
    q_prev, q = 0, 1
    yield Convergent(0, p, q)
    L = len(exp.period)
    i = 1
    while True:
        a = exp.period[(i - 1) % L]
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield Convergent(i, p, q)
        i += 1


def convergents(exp: CFExpansion, upto: int) -> list:
    """Convergents with indices 0..upto; ``result[i]`` is p_i/q_i."""
    if upto < 0:
        raise DomainError(f"upto must be >= 0, got {upto}")
    out = []
    for conv in iter_convergents(exp):
        out.append(conv)
        if conv.index == upto:
            return out


def convergent_at(exp: CFExpansion, index: int) -> Convergent:
    return convergents(exp, index)[-1]
