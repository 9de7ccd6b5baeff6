"""Coverage survey: what share of radicands up to N the closed forms solve."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .cf import Radicand, convergent_at, expand_sqrt
from .closed_forms import VARIANTS, classify, closed_form, reduce_pair
from .errors import DomainError, PeriodTooLong
from .pell import fundamental_solution

DEFAULT_PERIOD_CAP = 10**4

CSV_HEADER = ("D", "squarefree", "covered", "variants", "X1_digits", "period_length")

PRIMARY_DENOMINATOR = "squarefree non-square D in [2, N]"
ALTERNATIVE_DENOMINATOR = "non-square D in [2, N]"


def sieve_squarefree(N: int) -> np.ndarray:
    """Boolean array ``sf`` of length N+1 with sf[d] true iff d is squarefree.

    Index 0 is unused and set False.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    sf = np.ones(N + 1, dtype=bool)
    sf[0] = False
    for p in range(2, math.isqrt(N) + 1):
        # composite p: p^2 multiples already hit by a prime factor's square
        sf[p * p :: p * p] = False
    return sf


def decimal_digits(x: int) -> int:
    """Number of decimal digits of |x| (without str(), which caps at 4300 digits)."""
    x = abs(x)
    if x < 10:
        return 1
    d = int((x.bit_length() - 1) * 0.30102999566398120) + 1
    while 10**d <= x:
        d += 1
    while 10 ** (d - 1) > x:
        d -= 1
    return d


@dataclass(frozen=True)
class SurveyRecord:
    D: int
    squarefree: bool
    covered: bool
    variants: tuple
    x1_digits: Optional[int]
    period_length: Optional[int]
    mismatch: bool = False


@dataclass
class CoverageStats:
    bound: int
    total_squarefree: int = 0
    total_covered: int = 0
    per_variant: dict = field(default_factory=lambda: {v: 0 for v in VARIANTS})
    total_nonsquare: int = 0
    covered_nonsquare: int = 0
    verified: bool = False
    mismatches: list = field(default_factory=list)

    @property
    def percent(self) -> Fraction:
        """100 * covered / squarefree non-square D in [2, bound]."""
        if not self.total_squarefree:
            return Fraction(0)
        return Fraction(100 * self.total_covered, self.total_squarefree)

    @property
    def percent_nonsquare(self) -> Fraction:
        """Same ratio over every non-square D in [2, bound]."""
        if not self.total_nonsquare:
            return Fraction(0)
        return Fraction(100 * self.covered_nonsquare, self.total_nonsquare)

    def as_dict(self) -> dict:
        return {
            "bound_inclusive": True,
            "denominator": PRIMARY_DENOMINATOR,
            "total_squarefree": self.total_squarefree,
            "total_covered": self.total_covered,
            "percent": _frac_str(self.percent),
            "percent_decimal": format_percent(self.percent),
            "per_variant": dict(self.per_variant),
            "alternative": {
                "denominator": ALTERNATIVE_DENOMINATOR,
                "total": self.total_nonsquare,
                "covered": self.covered_nonsquare,
                "percent": _frac_str(self.percent_nonsquare),
                "percent_decimal": format_percent(self.percent_nonsquare),
            },
            "verified": self.verified,
            "mismatches": list(self.mismatches),
        }


def _frac_str(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def format_percent(fr: Fraction, places: int = 2) -> str:
    scaled = round(fr * 10**places)
    whole, frac = divmod(scaled, 10**places)
    return f"{whole}.{frac:0{places}d}"


def _survey_one(D: int, squarefree: bool, verify: bool, period_cap: int) -> SurveyRecord:
    rad = Radicand(D, squarefree)
    decs = classify(rad)
    variants = tuple(sorted({d.variant for d in decs}, key=VARIANTS.index))
    try:
        exp = expand_sqrt(rad, period_cap)
    except PeriodTooLong:
        exp = None
    x1 = None
    mismatch = False
    if decs:
        conv = closed_form(decs[0])
        fund, _ = reduce_pair(D, conv.p, conv.q, verify=False)
        x1 = fund.X
        if verify:
            mismatch = fundamental_solution(rad).pair != fund.pair
    elif exp is not None:
        r = exp.r
        x1 = convergent_at(exp, r if r % 2 else 2 * r + 1).p
    return SurveyRecord(
        D,
        squarefree,
        bool(decs),
        variants,
        decimal_digits(x1) if x1 is not None else None,
        exp.period_length if exp is not None else None,
        mismatch,
    )


def _survey_chunk(args):
    items, verify, period_cap = args
    return [_survey_one(D, sf, verify, period_cap) for D, sf in items]


def survey_range(
    N: int,
    verify: bool = False,
    period_cap: int = DEFAULT_PERIOD_CAP,
    include_nonsquarefree: bool = False,
    jobs: int = 1,
) -> tuple:
    """Survey non-square D in [2, N] (inclusive).  Returns (stats, records).

    Records cover squarefree D unless ``include_nonsquarefree``; the stats
    always carry both denominators.  With ``verify`` every covered record's
    reduced closed form is compared to the continued-fraction solution and
    disagreements are listed in ``stats.mismatches``.
    """
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    sf = sieve_squarefree(N)
    stats = CoverageStats(N, verified=verify)
    items = []
    for D in range(2, N + 1):
        if math.isqrt(D) ** 2 == D:
            continue
        stats.total_nonsquare += 1
        is_sf = bool(sf[D])
        if is_sf or include_nonsquarefree:
            items.append((D, is_sf))
        elif classify(Radicand(D, False)):
            stats.covered_nonsquare += 1

    if jobs > 1 and len(items) > 1:
        size = -(-len(items) // (jobs * 4))
        chunks = [(items[i : i + size], verify, period_cap) for i in range(0, len(items), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = [rec for part in pool.map(_survey_chunk, chunks) for rec in part]
    else:
        records = _survey_chunk((items, verify, period_cap))
    records.sort(key=lambda rec: rec.D)

    for rec in records:
        if rec.covered:
            stats.covered_nonsquare += 1
        if not rec.squarefree:
            continue
        stats.total_squarefree += 1
        if rec.covered:
            stats.total_covered += 1
            for v in rec.variants:
                stats.per_variant[v] += 1
    stats.mismatches = [rec.D for rec in records if rec.mismatch]
    return stats, records


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def emit_report(stats: CoverageStats, records: list, fmt: str = "csv") -> bytes:
    """Serialise a survey deterministically, sorted by D."""
    records = sorted(records, key=lambda rec: rec.D)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow(
                [
                    _cell(rec.D),
                    _cell(rec.squarefree),
                    _cell(rec.covered),
                    "|".join(rec.variants),
                    _cell(rec.x1_digits),
                    _cell(rec.period_length),
                ]
            )
        return buf.getvalue().encode()
    if fmt == "json":
        doc = {
            "bound": stats.bound,
            "stats": stats.as_dict(),
            "records": [
                {
                    "D": rec.D,
                    "squarefree": rec.squarefree,
                    "covered": rec.covered,
                    "variants": list(rec.variants),
                    "X1_digits": rec.x1_digits,
                    "period_length": rec.period_length,
                }
                for rec in records
            ],
        }
        return (json.dumps(doc, indent=2) + "\n").encode()
    raise DomainError(f"unknown report format {fmt!r}")
