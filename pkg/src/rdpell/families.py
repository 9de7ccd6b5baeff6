"""Named one- and two-parameter radicand families with explicit solutions.

Family ids are ``C1.i`` ... ``C1.ix`` (the 2f = 0 (mod m) class) and
``C2.i`` ... ``C2.vi`` (the 4f = m (mod 2m) class, d odd).  Each entry
evaluates its own polynomial formula for (D, p, q); none of them route
through :mod:`rdpell.closed_forms`, which keeps the two paths independent
for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .cf import Convergent, Radicand, is_square, is_squarefree
from .closed_forms import MINUS, PLUS, RDDecomposition, check_conditions, _sgn
from .errors import ConditionViolation, DomainError
from .pell import is_solution


@dataclass(frozen=True)
class FamilyParams:
    """Parameters for one family member; unused fields are ignored."""

    family: str
    d: int
    m: int = 1
    n: int = 1
    beta: int = 1
    alpha: int = 0
    sign: str = PLUS
    inner_sign: str = PLUS


@dataclass(frozen=True)
class Family:
    id: str
    formula: str
    params: tuple
    signed: bool
    evaluate: Callable


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ConditionViolation(msg)


def _half(x: int) -> int:
    q, r = divmod(x, 2)
    _require(r == 0, f"{x} is odd; closed form needs it even")
    return q


def _c1_i(fp):
    d = fp.d
    _require(d >= 2, "C1.i needs d >= 2")
    return d * d - 1, d, 1


def _c1_ii(fp):
    d = fp.d
    _require(d >= 1, "C1.ii needs d >= 1")
    return d * d + 1, 2 * d * d + 1, 2 * d


def _c1_iii(fp):
    d, s = fp.d, _sgn(fp.sign)
    if s < 0:
        _require(d >= 2, "C1.iii minus needs d >= 2")
        if d == 2:
            # sqrt(2) = [1; 2, ...] with r = 1
            return 2, 3, 2
    _require(d >= 1, "C1.iii needs d >= 1")
    return d * d + 2 * s, d * d + s, d


def _c1_iv(fp):
    d, m, n, alpha, s = fp.d, fp.m, fp.n, fp.alpha, _sgn(fp.sign)
    _require(d >= 1 and m >= 1 and n >= 1 and alpha >= 0, "C1.iv needs d, m, n >= 1, alpha >= 0")
    g = (1 << alpha) * n
    _require((2 * d) % (g * m) == 0, "C1.iv needs d = 0 (mod 2^(alpha-1)*n*m)")
    # same radicand as f = m*d, 2^alpha * (n*m^2)
    check_conditions(RDDecomposition(m * d, alpha, n * m * m, fp.sign))
    return m * m * (d * d + s * g), 2 * d * d // g + s, 2 * d // (g * m)


def _c1_v(fp):
    d, m, beta, n, alpha, s = fp.d, fp.m, fp.beta, fp.n, fp.alpha, _sgn(fp.sign)
    _require(d >= 1 and m >= 1 and n >= 1 and alpha >= 0 and beta >= 0, "C1.v parameter out of range")
    f = m * d**beta
    g = (1 << alpha) * n
    _require((2 * f) % g == 0, "C1.v needs m*d^beta = 0 (mod 2^(alpha-1)*n)")
    check_conditions(RDDecomposition(f, alpha, n, fp.sign))
    return f * f + s * g, 2 * f * f // g + s, 2 * f // g


def _c1_vi(fp):
    d, n, s = fp.d, fp.n, _sgn(fp.sign)
    _require(d >= 1 and n >= 1, "C1.vi needs d, n >= 1")
    return n * (n * d * d + s), 2 * n * d * d + s, 2 * d


def _c1_vii(fp):
    d, m, s = fp.d, fp.m, _sgn(fp.sign)
    _require(d >= 1 and m >= 1, "C1.vii needs d, m >= 1")
    return d * (m * m * d + 2 * s), m * m * d + s, m


def _c1_viii(fp):
    d = fp.d
    _require(d >= 2 and d % 2 == 0, "C1.viii needs even d >= 2")
    return d * (d + 4), (d + 2) ** 2 // 2 - 1, (d + 2) // 2


def _c1_ix(fp):
    d, s = fp.d, _sgn(fp.sign)
    _require(d >= 2 and d % 2 == 0, "C1.ix needs even d >= 2")
    f = d + 2 * _sgn(fp.inner_sign)
    _require(f >= 1, "C1.ix needs d +/- 2 >= 1")
    return f * f + 4 * s, f * f // 2 + s, f // 2


def _odd_d(fp, name):
    _require(fp.d >= 1 and fp.d % 2 == 1, f"{name} needs odd d >= 1")


def _c2_i(fp):
    _odd_d(fp, "C2.i")
    d, s = fp.d, _sgn(fp.sign)
    _require(s > 0 or d >= 3, "C2.i minus needs d >= 3")
    return 4 * d * (d + 2 * s), 2 * d * (d + 2 * s) + 1, d + s


def _c2_ii(fp):
    _odd_d(fp, "C2.ii")
    d, s = fp.d, _sgn(fp.sign)
    _require(s > 0 or d >= 3, "C2.ii minus needs d >= 3")
    d2 = d * d
    return 4 * (d2 + 2 * s), 2 * d2 * (d2 + 2 * s) + 1, d * (d2 + s)


def _c2_iii(fp):
    _odd_d(fp, "C2.iii")
    d, n, s = fp.d, fp.n, _sgn(fp.sign)
    _require(n >= 1, "C2.iii needs n >= 1")
    _require(s > 0 or n * d > 1, "C2.iii minus needs n*d > 1")
    t = n * d * d
    return 16 * n * (t + s), 8 * t * (t + s) + 1, d * (2 * t + s)


def _c2_iv(fp):
    _odd_d(fp, "C2.iv")
    d, n, s = fp.d, fp.n, _sgn(fp.sign)
    _require(n >= 1, "C2.iv needs n >= 1")
    _require(s > 0 or n * d > 2, "C2.iv minus needs n*d > 2")
    t = n * d * d
    return 4 * n * (t + 2 * s), 2 * t * (t + 2 * s) + 1, d * (t + s)


def _c2_v(fp):
    _odd_d(fp, "C2.v")
    d, s = fp.d, _sgn(fp.sign)
    _require(s > 0 or d >= 3, "C2.v minus needs d >= 3")
    d2 = d * d
    return (
        d2 + 4 * s,
        _half(d2 * (d2 + 3 * s) ** 2) + s,
        _half(d * (d2 + s) * (d2 + 3 * s)),
    )


def _c2_vi(fp):
    _odd_d(fp, "C2.vi")
    d, n, s = fp.d, fp.n, _sgn(fp.sign)
    _require(n >= 1 and n % 2 == 1, "C2.vi needs odd n >= 1")
    t = n * d * d
    _require(s > 0 or t > 2, "C2.vi minus needs n*d^2 > 2")
    return (
        n * (t + 4 * s),
        _half(t * (t + 3 * s) ** 2) + s,
        _half(d * (t + s) * (t + 3 * s)),
    )


CATALOG = {
    fam.id: fam
    for fam in (
        Family("C1.i", "D = d^2 - 1", ("d",), False, _c1_i),
        Family("C1.ii", "D = d^2 + 1", ("d",), False, _c1_ii),
        Family("C1.iii", "D = d^2 +/- 2", ("d",), True, _c1_iii),
        Family("C1.iv", "D = m^2 (d^2 +/- 2^alpha n)", ("d", "m", "n", "alpha"), True, _c1_iv),
        Family("C1.v", "D = (m d^beta)^2 +/- 2^alpha n", ("d", "m", "beta", "n", "alpha"), True, _c1_v),
        Family("C1.vi", "D = n (n d^2 +/- 1)", ("d", "n"), True, _c1_vi),
        Family("C1.vii", "D = d (m^2 d +/- 2)", ("d", "m"), True, _c1_vii),
        Family("C1.viii", "D = d (d + 4), d even", ("d",), False, _c1_viii),
        Family("C1.ix", "D = (d +/- 2)^2 +/- 4, d even", ("d", "inner_sign"), True, _c1_ix),
        Family("C2.i", "D = 4d (d +/- 2), d odd", ("d",), True, _c2_i),
        Family("C2.ii", "D = 4 (d^2 +/- 2), d odd", ("d",), True, _c2_ii),
        Family("C2.iii", "D = 16n (n d^2 +/- 1), d odd", ("d", "n"), True, _c2_iii),
        Family("C2.iv", "D = 4n (n d^2 +/- 2), d odd", ("d", "n"), True, _c2_iv),
        Family("C2.v", "D = d^2 +/- 4, d odd", ("d",), True, _c2_v),
        Family("C2.vi", "D = n (n d^2 +/- 4), d, n odd", ("d", "n"), True, _c2_vi),
    )
}


def family_convergent(fp: FamilyParams) -> tuple:
    """Evaluate a family member: returns (Radicand, Convergent).

    The convergent index is left at -1 when the family does not pin the
    period; the pair always satisfies p^2 - D q^2 = 1.
    """
    try:
        fam = CATALOG[fp.family]
    except KeyError:
        raise DomainError(f"unknown family {fp.family!r}; known: {', '.join(CATALOG)}") from None
    _sgn(fp.sign)
    _sgn(fp.inner_sign)
    D, p, q = fam.evaluate(fp)
    _require(D >= 2 and not is_square(D), f"{fp.family} gives D={D}, not a non-square >= 2")
    if not is_solution(D, p, q):
        raise AssertionError(f"{fp.family} produced ({p}, {q}) which fails the Pell identity for D={D}")
    return Radicand(D), Convergent(-1, p, q)


@dataclass(frozen=True)
class TriangularRadicand:
    k: int
    plus: Radicand
    minus: Optional[Radicand]


def triangular_radicands(k_max: int) -> list:
    """D = 8T(k) + 5 = (2k+1)^2 + 4 and D = 8T(k) - 3 = (2k+1)^2 - 4.

    T(k) = k(k+1)/2.  k runs over 0..k_max; the minus form needs k >= 1.
    Radicands carry their squarefree flag.
    """
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    out = []
    for k in range(k_max + 1):
        tri = k * (k + 1) // 2
        plus = Radicand(8 * tri + 5, is_squarefree(8 * tri + 5))
        minus = Radicand(8 * tri - 3, is_squarefree(8 * tri - 3)) if k >= 1 else None
        out.append(TriangularRadicand(k, plus, minus))
    return out
