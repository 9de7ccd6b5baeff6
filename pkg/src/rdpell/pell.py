"""Solutions of X^2 - D*Y^2 = 1."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .cf import RadicandLike, as_radicand, convergent_at, expand_sqrt
from .errors import DomainError, NotASolution, NotFound, NotFundamental

DEFAULT_ORACLE_YMAX = 10**6

# D*Y^2 + 1 must stay below this for the vectorised oracle (int64, exact
# float64 square roots).
_INT64_SAFE = 2**52


def is_solution(D: int, X: int, Y: int) -> bool:
    return X * X - D * Y * Y == 1


@dataclass(frozen=True)
class PellSolution:
    """(X, Y) on the solution branch of D; ``index`` is n in X_n + Y_n*sqrt(D)."""

    X: int
    Y: int
    D: int
    index: int

    def __post_init__(self):
        if not is_solution(self.D, self.X, self.Y):
            raise NotASolution(f"{self.X}^2 - {self.D}*{self.Y}^2 != 1")
        if self.X < 1 or self.Y < 0 or self.index < 0:
            raise NotASolution("expected X >= 1, Y >= 0 and index >= 0")
        if (self.index == 0) != (self.Y == 0):
            raise NotASolution("index 0 is reserved for the trivial solution (1, 0)")

    @property
    def pair(self) -> tuple:
        return (self.X, self.Y)


def fundamental_solution(D: RadicandLike, max_iter: Optional[int] = None) -> PellSolution:
    """Smallest nontrivial solution, read off the continued fraction of sqrt(D).

    With period length r+1 the solution is p_r/q_r for odd r and
    p_{2r+1}/q_{2r+1} for even r.
    """
    rad = as_radicand(D)
    exp = expand_sqrt(rad, max_iter)
    r = exp.r
    conv = convergent_at(exp, r if r % 2 == 1 else 2 * r + 1)
    return PellSolution(conv.p, conv.q, rad.D, 1)


def compose(a: PellSolution, b: PellSolution) -> PellSolution:
    """Product (X_a + Y_a*sqrt(D)) * (X_b + Y_b*sqrt(D)); indices add."""
    if a.D != b.D:
        raise DomainError(f"cannot compose solutions for D={a.D} and D={b.D}")
    D = a.D
    return PellSolution(a.X * b.X + D * a.Y * b.Y, a.X * b.Y + a.Y * b.X, D, a.index + b.index)


def iter_branch(fund: PellSolution) -> Iterator[PellSolution]:
    """Yield X_1, X_2, ... forever."""
    if fund.index != 1:
        raise NotFundamental(f"expected branch index 1, got {fund.index}")
    D, x1, y1 = fund.D, fund.X, fund.Y
    x, y, k = x1, y1, 1
    while True:
        yield PellSolution(x, y, D, k)
        x, y = x1 * x + D * y1 * y, x1 * y + y1 * x
        k += 1


def nth_solution(fund: PellSolution, n: int) -> PellSolution:
    """n-th branch element via X_{k+1} = X1*X_k + D*Y1*Y_k, Y_{k+1} = X1*Y_k + Y1*X_k."""
    if fund.index != 1:
        raise NotFundamental(f"expected branch index 1, got {fund.index}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    for sol in iter_branch(fund):
        if sol.index == n:
            return sol


def branch_position(fund: PellSolution, X: int, Y: int) -> int:
    """Return n with X + Y*sqrt(D) == fund**n, walking the branch upward.

    Raises NotASolution if (X, Y) is not on the branch generated by fund.
    """
    if Y == 0 and X == 1:
        return 0
    for cand in iter_branch(fund):
        if cand.X == X and cand.Y == Y:
            return cand.index
        if cand.X > X:
            raise NotASolution(f"({X}, {Y}) is not a power of ({fund.X}, {fund.Y})")


def _brute_numpy(D: int, y_max: int, chunk: int = 1 << 18) -> Optional[int]:
    for start in range(1, y_max + 1, chunk):
        ys = np.arange(start, min(start + chunk, y_max + 1), dtype=np.int64)
        vals = D * ys * ys + 1
        roots = np.rint(np.sqrt(vals.astype(np.float64))).astype(np.int64)
        hits = np.nonzero(roots * roots == vals)[0]
        if hits.size:
            return int(ys[hits[0]])
    return None


def _brute_python(D: int, y_max: int) -> Optional[int]:
    for y in range(1, y_max + 1):
        v = D * y * y + 1
        s = math.isqrt(v)
        if s * s == v:
            return y
    return None


def brute_fundamental(D: RadicandLike, y_max: int = DEFAULT_ORACLE_YMAX) -> PellSolution:
    """Independent oracle: first Y in 1..y_max with D*Y^2 + 1 a perfect square.

    Raises NotFound when the range is too small; that says nothing about
    whether a solution exists.
    """
    rad = as_radicand(D)
    if y_max < 1:
        raise DomainError(f"y_max must be >= 1, got {y_max}")
    D = rad.D
    if D * y_max * y_max + 1 < _INT64_SAFE:
        y = _brute_numpy(D, y_max)
    else:
        y = _brute_python(D, y_max)
    if y is None:
        raise NotFound(f"no solution for D={D} with Y <= {y_max}")
    return PellSolution(math.isqrt(D * y * y + 1), y, D, 1)
