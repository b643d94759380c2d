"""Exact commuting probability, three ways, plus a seeded Monte Carlo estimate.

The three exact routes are: direct ordered-pair counting over the table,
summing centralizer sizes, and class-number counting.  They must agree
exactly on every group; a disagreement is an implementation bug and is
raised as :class:`MethodDisagreement`, never returned.

Every probability is a :class:`fractions.Fraction` (exact, arbitrary
precision); nothing in this module ever rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidParameter, MethodDisagreement
from .groups import FiniteGroup
from .rng import SplitMix64
from .structure import centralizer, conjugacy_classes
from .util import fraction_str

Rational = Fraction  # exact rational carrier used across the package

#: two-sided 99% normal quantile used by the Wilson interval
_WILSON_Z99 = 2.5758293035489004


@dataclass(frozen=True)
class CpReport:
    """One exact cp computation: counts, class number and the probability.

    Invariant: ``cp == pair_count / order**2 == class_number / order``.
    """

    group: str
    order: int
    pair_count: int
    class_number: int
    cp: Fraction
    method: str
    verified: bool = False

    def to_json_dict(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "pairs": self.pair_count,
            "classes": self.class_number,
            "cp": fraction_str(self.cp),
        }


def _report(g: FiniteGroup, pair_count: int, method: str, verified: bool = False) -> CpReport:
    n = g.order
    if pair_count % n != 0:
        raise MethodDisagreement(
            f"{method}: pair count {pair_count} not divisible by order {n}"
        )
    return CpReport(
        group=g.name,
        order=n,
        pair_count=pair_count,
        class_number=pair_count // n,
        cp=Fraction(pair_count, n * n),
        method=method,
        verified=verified,
    )


def cp_pairs(g: FiniteGroup) -> CpReport:
    """Count ordered commuting pairs by scanning the whole table."""
    pairs = int((g.table == g.table.T).sum())
    return _report(g, pairs, "pairs")


def cp_centralizer_sum(g: FiniteGroup) -> CpReport:
    """Sum |Z_G(x)| over all x (each pair (x, y) counted at its x)."""
    total = 0
    for x in range(g.order):
        total += int(centralizer(g, x).size)
    return _report(g, total, "centralizer_sum")


def cp_class_count(g: FiniteGroup) -> CpReport:
    """Class number over order; the cheap route used by default."""
    k = conjugacy_classes(g).class_number
    return _report(g, k * g.order, "class_count")


def commuting_probability(g: FiniteGroup, *, verify: bool = False) -> CpReport:
    """cp(G) by class counting; with ``verify`` all three methods must agree."""
    base = cp_class_count(g)
    if not verify:
        return base
    others = [cp_pairs(g), cp_centralizer_sum(g)]
    for other in others:
        if other.cp != base.cp:
            raise MethodDisagreement(
                f"{g.name}: {base.method}={fraction_str(base.cp)} "
                f"but {other.method}={fraction_str(other.cp)}"
            )
    return CpReport(
        group=base.group,
        order=base.order,
        pair_count=base.pair_count,
        class_number=base.class_number,
        cp=base.cp,
        method="class_count",
        verified=True,
    )


def cp_value(g: FiniteGroup) -> Fraction:
    return cp_class_count(g).cp


@dataclass(frozen=True)
class McEstimate:
    """Seeded Monte Carlo estimate with a 99% Wilson interval.

    The interval endpoints are Wilson limits evaluated in floats and then
    converted to exact rationals, clamped so that
    ``ci_low <= estimate <= ci_high`` holds exactly.
    """

    samples: int
    hits: int
    estimate: Fraction
    ci_low: Fraction
    ci_high: Fraction
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "samples": self.samples,
            "hits": self.hits,
            "estimate": fraction_str(self.estimate),
            "ci_low": fraction_str(self.ci_low),
            "ci_high": fraction_str(self.ci_high),
            "seed": self.seed,
        }


def wilson_interval_99(hits: int, samples: int) -> tuple[Fraction, Fraction]:
    """99% Wilson score interval for a binomial proportion, as exact rationals."""
    z = _WILSON_Z99
    phat = hits / samples
    denom = 1.0 + z * z / samples
    centre = (phat + z * z / (2 * samples)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / samples + z * z / (4 * samples * samples)) / denom
    est = Fraction(hits, samples)
    low = min(max(Fraction(0), Fraction(centre - half)), est)
    high = max(min(Fraction(1), Fraction(centre + half)), est)
    return low, high


def mc_estimate(g: FiniteGroup, samples: int, seed: int) -> McEstimate:
    """Estimate cp(G) from ``samples`` i.i.d. uniform ordered pairs.

    Pairs are drawn from the package's SplitMix64 stream (see
    :mod:`commprob.rng`), interleaved a, b, a, b, ...; identical
    (seed, samples) reproduce identical results bit for bit.
    """
    if samples < 1:
        raise InvalidParameter("samples must be >= 1")
    n = g.order
    a, b = SplitMix64(seed).uniform_pairs(n, samples)
    flat = g.table.astype(np.int64).ravel()
    hits = int((flat[a * n + b] == flat[b * n + a]).sum())
    low, high = wilson_interval_99(hits, samples)
    return McEstimate(
        samples=samples,
        hits=hits,
        estimate=Fraction(hits, samples),
        ci_low=low,
        ci_high=high,
        seed=seed,
    )
