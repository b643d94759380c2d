"""Machine-checkable reports for every cp inequality the package knows.

Each check produces a :class:`BoundReport`; hypotheses that fail make a
report inapplicable rather than silent, so coverage stays auditable.
``run_suite`` evaluates the whole battery on one group, including the
quotient/product checks over every normal subgroup and the subgroup
check over a fixed, seeded sample of generated subgroups.

Check ids, in report order:

=============================  =====================================================
lower_elementary               cp >= (3n-2)/n^2 for n >= 2
lower_elementary_order3        cp >= 3/n for n >= 3
upper_erdos_5_8                non-abelian: cp <= 5/8; equality iff G/Z is Klein four
upper_class_count              non-abelian: K <= floor(5n/8)
upper_smallest_prime           non-abelian: cp <= 1/p + (p-1)/(p m),  m = [G:Z]
upper_smallest_prime_global    non-abelian: cp <= (p^2+p-1)/p^3; equality iff G/Z
                               is elementary abelian of order p^2
upper_half_no8                 non-abelian, 8 does not divide n: cp <= 1/2
dyadic_form                    cp in (1/2, 1): cp = 1/2 + 1/2^(2s+1) (external claim)
lower_center_index             non-abelian: cp >= ((p+1)m - p)/m^2; equality iff
                               every non-central centralizer has index p over Z
lower_class_count              non-abelian: K >= p |Z| + 1
upper_derived                  cp <= (1/4)(1 + 3/|G'|)
upper_derived_prime            cp <= (1/p^2)(1 + (p^2-1)/|G'|)
lower_derived_center           cp >= (m + |G'| - 1)/(|G'| m); equality iff every
                               non-central class has size |G'|
solvable_above_dixon           cp > 1/12 implies solvable (implication only)
simple_min_class_size          simple non-abelian: classes >= k+1, k! <= n maximal
simple_upper_fifth             simple non-abelian: cp < 1/5 (strict)
simple_upper_dixon             simple non-abelian: cp <= 1/12; equality only at
                               order 60
upper_composition_factors      cp <= product of composition-factor cps
upper_quotient                 per normal N: cp(G) <= cp(G/N); equality iff every
                               commutator lying in N is trivial
upper_normal_product           per normal N: cp(G) <= cp(N) cp(G/N)
lower_subgroup                 per sampled H <= G: cp(H) >= cp(G)
=============================  =====================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .commuting import cp_value
from .errors import NotNormal, OrderCapExceeded
from .groups import (
    FiniteGroup,
    SubgroupEmbedding,
    _closure_indices,
    cyclic_subgroup_indices,
    is_elementary_abelian_p_squared,
    is_klein_four,
    quotient,
    subgroup_from_indices,
)
from .rng import SplitMix64
from .structure import (
    DEFAULT_NORMAL_ENUM_CAP,
    centralizer_sizes,
    center,
    central_quotient,
    commutator_values,
    composition_series,
    conjugacy_classes,
    derived_subgroup,
    is_simple,
    is_solvable,
    normal_subgroups,
    subgroup_indices_closed,
)
from .util import dyadic_form_exponent, fraction_str, smallest_prime_factor

#: seed for the fixed random-pair subgroup sample in run_suite
SUITE_SAMPLE_SEED = 1729
SUITE_PAIR_SAMPLES = 32

CHECK_ORDER = (
    "lower_elementary",
    "lower_elementary_order3",
    "upper_erdos_5_8",
    "upper_class_count",
    "upper_smallest_prime",
    "upper_smallest_prime_global",
    "upper_half_no8",
    "dyadic_form",
    "lower_center_index",
    "lower_class_count",
    "upper_derived",
    "upper_derived_prime",
    "lower_derived_center",
    "solvable_above_dixon",
    "simple_min_class_size",
    "simple_upper_fifth",
    "simple_upper_dixon",
    "upper_composition_factors",
    "upper_quotient",
    "upper_normal_product",
    "lower_subgroup",
)


@dataclass(frozen=True)
class BoundReport:
    """One check evaluated on one group.

    For applicable inequalities ``slack`` is rhs-lhs for upper bounds and
    lhs-rhs for lower bounds, ``holds`` is slack >= 0 (strictly > 0 when
    ``strict``), and ``equality`` is slack == 0.  Inapplicable reports
    keep lhs/rhs where defined but carry no slack.
    ``equality_condition_holds`` is set only where a characterization of
    the equality case exists.  ``external_claim`` marks the one check
    whose failure would be a reportable finding rather than a bug.
    """

    theorem: str
    applicable: bool
    lhs: Fraction | None
    rhs: Fraction | None
    holds: bool
    slack: Fraction | None
    equality: bool
    equality_condition_holds: bool | None = None
    strict: bool = False
    external_claim: bool = False
    context: str = ""

    def to_json_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "applicable": self.applicable,
            "lhs": None if self.lhs is None else fraction_str(self.lhs),
            "rhs": None if self.rhs is None else fraction_str(self.rhs),
            "holds": self.holds,
            "equality": self.equality,
            "equality_condition": self.equality_condition_holds,
            "context": self.context,
        }


@dataclass(frozen=True)
class SimpleGroupFacts:
    """Class-size data backing the simple-group checks."""

    min_nontrivial_class_size: int
    min_subgroup_index_witness: int | None = None


def _bound(
    theorem: str,
    lhs: Fraction,
    rhs: Fraction,
    *,
    upper: bool,
    condition: bool | None = None,
    strict: bool = False,
    external: bool = False,
    context: str = "",
) -> BoundReport:
    slack = (rhs - lhs) if upper else (lhs - rhs)
    holds = slack > 0 if strict else slack >= 0
    return BoundReport(
        theorem=theorem,
        applicable=True,
        lhs=lhs,
        rhs=rhs,
        holds=holds,
        slack=slack,
        equality=(slack == 0),
        equality_condition_holds=condition,
        strict=strict,
        external_claim=external,
        context=context,
    )


def _inapplicable(
    theorem: str,
    lhs: Fraction | None = None,
    rhs: Fraction | None = None,
    *,
    external: bool = False,
    context: str = "",
) -> BoundReport:
    return BoundReport(
        theorem=theorem,
        applicable=False,
        lhs=lhs,
        rhs=rhs,
        holds=True,
        slack=None,
        equality=False,
        equality_condition_holds=None,
        external_claim=external,
        context=context,
    )


def _smallest_prime(g: FiniteGroup) -> int | None:
    return smallest_prime_factor(g.order) if g.order >= 2 else None


def _center_index(g: FiniteGroup) -> int:
    return g.order // center(g).size


def check_elementary_lower(g: FiniteGroup) -> list[BoundReport]:
    """cp >= (3n-2)/n^2, and cp >= 3/n once the order reaches 3."""
    n = g.order
    cp = cp_value(g)
    first_rhs = Fraction(3 * n - 2, n * n)
    reports = []
    if n >= 2:
        reports.append(_bound("lower_elementary", cp, first_rhs, upper=False))
    else:
        reports.append(_inapplicable("lower_elementary", cp, first_rhs))
    if n >= 3:
        reports.append(_bound("lower_elementary_order3", cp, Fraction(3, n), upper=False))
    else:
        reports.append(_inapplicable("lower_elementary_order3", cp))
    return reports


def check_erdos58(g: FiniteGroup) -> BoundReport:
    """Five-eighths upper bound with the Klein-four equality recognizer."""
    cp = cp_value(g)
    rhs = Fraction(5, 8)
    if g.is_abelian:
        return _inapplicable("upper_erdos_5_8", cp, rhs)
    quo = central_quotient(g)
    cond = is_klein_four(quo)
    # the index-4 criterion is equivalent; check we agree with it
    assert cond == (_center_index(g) == 4)
    return _bound("upper_erdos_5_8", cp, rhs, upper=True, condition=cond)


def check_class_count_upper(g: FiniteGroup) -> BoundReport:
    k = Fraction(conjugacy_classes(g).class_number)
    rhs = Fraction(5 * g.order // 8)
    if g.is_abelian:
        return _inapplicable("upper_class_count", k, rhs)
    return _bound("upper_class_count", k, rhs, upper=True)


def check_p_upper(g: FiniteGroup) -> list[BoundReport]:
    """Smallest-prime refinements of the 5/8 bound (sharp and global forms)."""
    cp = cp_value(g)
    p = _smallest_prime(g)
    if p is None:
        return [_inapplicable("upper_smallest_prime", cp), _inapplicable("upper_smallest_prime_global", cp)]
    m = _center_index(g)
    sharp = Fraction(1, p) + Fraction(p - 1, p * m)
    global_ = Fraction(p * p + p - 1, p**3)
    if g.is_abelian:
        return [
            _inapplicable("upper_smallest_prime", cp, sharp),
            _inapplicable("upper_smallest_prime_global", cp, global_),
        ]
    quo = central_quotient(g)
    cond = is_elementary_abelian_p_squared(quo, p)
    # equality through the whole chain happens exactly at the global bound
    return [
        _bound("upper_smallest_prime", cp, sharp, upper=True),
        _bound("upper_smallest_prime_global", cp, global_, upper=True, condition=cond),
    ]


def check_half_form(g: FiniteGroup) -> list[BoundReport]:
    """The no-8 half bound, plus the dyadic shape of values above 1/2.

    The dyadic-form report is flagged as an external claim: a catalog
    counterexample would be a finding to report, not a test failure.
    """
    cp = cp_value(g)
    half = Fraction(1, 2)
    reports = []
    if not g.is_abelian and g.order % 8 != 0:
        reports.append(_bound("upper_half_no8", cp, half, upper=True))
    else:
        reports.append(_inapplicable("upper_half_no8", cp, half))
    if half < cp < 1:
        s = dyadic_form_exponent(cp)
        reports.append(
            BoundReport(
                theorem="dyadic_form",
                applicable=True,
                lhs=cp,
                rhs=None if s is None else half + Fraction(1, 2 ** (2 * s + 1)),
                holds=s is not None,
                slack=None,
                equality=False,
                external_claim=True,
                context="" if s is None else f"s={s}",
            )
        )
    else:
        reports.append(_inapplicable("dyadic_form", cp, external=True))
    return reports


def check_center_lower(g: FiniteGroup) -> BoundReport:
    """cp >= ((p+1)m - p)/m^2 with the centralizer-index equality scan."""
    cp = cp_value(g)
    if g.is_abelian:
        return _inapplicable("lower_center_index", cp)
    p = _smallest_prime(g)
    m = _center_index(g)
    rhs = Fraction((p + 1) * m - p, m * m)
    z = center(g).size
    czs = centralizer_sizes(g)
    noncentral = czs != g.order
    cond = bool(np.all(czs[noncentral] == p * z))
    return _bound("lower_center_index", cp, rhs, upper=False, condition=cond)


def check_class_count_lower(g: FiniteGroup) -> BoundReport:
    k = Fraction(conjugacy_classes(g).class_number)
    if g.is_abelian:
        return _inapplicable("lower_class_count", k)
    p = _smallest_prime(g)
    rhs = Fraction(p * center(g).size + 1)
    return _bound("lower_class_count", k, rhs, upper=False)


def check_derived_upper(g: FiniteGroup) -> list[BoundReport]:
    """Both derived-subgroup upper bounds (the 1/4 form and the 1/p^2 form)."""
    cp = cp_value(g)
    d = derived_subgroup(g).sub.order
    rhs1 = Fraction(d + 3, 4 * d)
    reports = [_bound("upper_derived", cp, rhs1, upper=True)]
    p = _smallest_prime(g)
    if p is None:
        reports.append(_inapplicable("upper_derived_prime", cp))
    else:
        rhs2 = Fraction(d + p * p - 1, p * p * d)
        reports.append(_bound("upper_derived_prime", cp, rhs2, upper=True))
    return reports


def check_derived_lower(g: FiniteGroup) -> BoundReport:
    """cp >= (m + |G'| - 1)/(|G'| m) with the class-size equality scan."""
    cp = cp_value(g)
    d = derived_subgroup(g).sub.order
    m = _center_index(g)
    rhs = Fraction(m + d - 1, d * m)
    sizes = conjugacy_classes(g).sizes()
    cond = all(size == d for size in sizes if size > 1)
    return _bound("lower_derived_center", cp, rhs, upper=False, condition=cond)


def check_solvability_threshold(g: FiniteGroup) -> BoundReport:
    """cp above one-twelfth forces solvability (implication, never converse)."""
    cp = cp_value(g)
    rhs = Fraction(1, 12)
    if cp <= rhs:
        return _inapplicable("solvable_above_dixon", cp, rhs)
    return BoundReport(
        theorem="solvable_above_dixon",
        applicable=True,
        lhs=cp,
        rhs=rhs,
        holds=is_solvable(g),
        slack=None,
        equality=False,
    )


def simple_group_facts(g: FiniteGroup) -> SimpleGroupFacts:
    sizes = [s for s in conjugacy_classes(g).sizes() if s > 1]
    return SimpleGroupFacts(min_nontrivial_class_size=min(sizes))


def _largest_factorial_k(n: int) -> int:
    k = 1
    while math.factorial(k + 1) <= n:
        k += 1
    return k


def check_simple_bounds(
    g: FiniteGroup, *, cap: int = DEFAULT_NORMAL_ENUM_CAP
) -> list[BoundReport]:
    """Class-size floor, the strict 1/5 bound, and the 1/12 bound with its
    order-60 equality flag; all only for simple non-abelian groups."""
    cp = cp_value(g)
    fifth = Fraction(1, 5)
    twelfth = Fraction(1, 12)
    simple = (not g.is_abelian) and is_simple(g, cap=cap)
    if not simple:
        return [
            _inapplicable("simple_min_class_size"),
            _inapplicable("simple_upper_fifth", cp, fifth),
            _inapplicable("simple_upper_dixon", cp, twelfth),
        ]
    facts = simple_group_facts(g)
    k = _largest_factorial_k(g.order)
    return [
        _bound(
            "simple_min_class_size",
            Fraction(facts.min_nontrivial_class_size),
            Fraction(k + 1),
            upper=False,
            context=f"k={k}",
        ),
        _bound("simple_upper_fifth", cp, fifth, upper=True, strict=True),
        _bound("simple_upper_dixon", cp, twelfth, upper=True, condition=(g.order == 60)),
    ]


def check_quotient_monotonicity(
    g: FiniteGroup, normal: Iterable[int], *, assume_normal: bool = False, context: str = ""
) -> BoundReport:
    """cp(G) <= cp(G/N), equality iff no non-trivial commutator lies in N."""
    nidx = np.unique(np.asarray(list(normal), dtype=np.int64))
    quo = quotient(g, nidx, assume_normal=assume_normal)
    lhs = cp_value(g)
    rhs = cp_value(quo)
    in_n = np.zeros(g.order, dtype=bool)
    in_n[nidx] = True
    comm = commutator_values(g)
    cond = bool(np.all(~in_n[comm] | (comm == 0)))
    return _bound("upper_quotient", lhs, rhs, upper=True, condition=cond, context=context)


def check_subgroup_monotonicity(
    g: FiniteGroup, emb: SubgroupEmbedding, *, context: str = ""
) -> BoundReport:
    """cp(H) >= cp(G) for any subgroup H."""
    return _bound(
        "lower_subgroup", cp_value(emb.sub), cp_value(g), upper=False, context=context
    )


def check_product_bound(
    g: FiniteGroup, normal: Iterable[int], *, assume_normal: bool = False, context: str = ""
) -> BoundReport:
    """cp(G) <= cp(N) * cp(G/N) for normal N."""
    nidx = np.asarray(list(normal), dtype=np.int64)
    if not assume_normal:
        nidx = subgroup_indices_closed(g, nidx)
        for a in range(g.order):
            left = np.sort(np.asarray(g.table[a, nidx], dtype=np.int64))
            right = np.sort(np.asarray(g.table[nidx, a], dtype=np.int64))
            if not np.array_equal(left, right):
                raise NotNormal(f"subgroup is not normal (witness element {a})")
    sub = subgroup_from_indices(g, nidx).sub
    quo = quotient(g, nidx, assume_normal=True)
    rhs = cp_value(sub) * cp_value(quo)
    return _bound("upper_normal_product", cp_value(g), rhs, upper=True, context=context)


def check_composition_bound(
    g: FiniteGroup, *, cap: int = DEFAULT_NORMAL_ENUM_CAP
) -> BoundReport:
    """cp(G) <= product of the composition factors' cps."""
    series = composition_series(g, cap=cap)
    rhs = math.prod((cp_value(f) for f in series.factors), start=Fraction(1))
    return _bound("upper_composition_factors", cp_value(g), rhs, upper=True)


def _sampled_subgroups(
    g: FiniteGroup, pair_samples: int, seed: int
) -> list[tuple[np.ndarray, str]]:
    """All cyclic subgroups plus ``pair_samples`` seeded two-generator ones,
    deduplicated and sorted canonically by (order, element set)."""
    by_key: dict[bytes, tuple[np.ndarray, str]] = {}
    for a in range(g.order):
        idx = cyclic_subgroup_indices(g, a)
        key = idx.tobytes()
        if key not in by_key:
            by_key[key] = (idx, f"<{a}>")
    xs, ys = SplitMix64(seed).uniform_pairs(g.order, pair_samples)
    for x, y in zip(xs.tolist(), ys.tolist()):
        idx = _closure_indices(g, [x, y])
        key = idx.tobytes()
        if key not in by_key:
            by_key[key] = (idx, f"<{x},{y}>")
    return sorted(by_key.values(), key=lambda item: (item[0].size, tuple(item[0])))


def run_suite(
    g: FiniteGroup,
    *,
    normal_cap: int = DEFAULT_NORMAL_ENUM_CAP,
    pair_samples: int = SUITE_PAIR_SAMPLES,
    sample_seed: int = SUITE_SAMPLE_SEED,
) -> list[BoundReport]:
    """Every check on one group, deterministically ordered.

    Reports appear in ``CHECK_ORDER``; the per-normal-subgroup and
    per-sampled-subgroup families are ordered canonically by
    (order, element set).  If the group is over the normal-enumeration
    cap, the checks that need that enumeration are reported as
    inapplicable with an explanatory context instead of aborting.
    """
    by_id: dict[str, list[BoundReport]] = {tid: [] for tid in CHECK_ORDER}

    def put(report_or_list):
        reports = report_or_list if isinstance(report_or_list, list) else [report_or_list]
        for rep in reports:
            by_id[rep.theorem].append(rep)

    put(check_elementary_lower(g))
    put(check_erdos58(g))
    put(check_class_count_upper(g))
    put(check_p_upper(g))
    put(check_half_form(g))
    put(check_center_lower(g))
    put(check_class_count_lower(g))
    put(check_derived_upper(g))
    put(check_derived_lower(g))
    put(check_solvability_threshold(g))

    capped = f"normal enumeration capped at {normal_cap}"
    try:
        put(check_simple_bounds(g, cap=normal_cap))
    except OrderCapExceeded:
        for tid in ("simple_min_class_size", "simple_upper_fifth", "simple_upper_dixon"):
            put(_inapplicable(tid, context=capped))

    try:
        normals = normal_subgroups(g, cap=normal_cap)
    except OrderCapExceeded:
        put(_inapplicable("upper_quotient", cp_value(g), context=capped))
        put(_inapplicable("upper_normal_product", cp_value(g), context=capped))
    else:
        lhs = cp_value(g)
        comm = commutator_values(g)
        for i, nidx in enumerate(normals):
            ctx = f"normal[{i}] order {nidx.size}"
            # one quotient shared by the quotient and product checks
            quo_cp = cp_value(quotient(g, nidx, assume_normal=True))
            in_n = np.zeros(g.order, dtype=bool)
            in_n[nidx] = True
            cond = bool(np.all(~in_n[comm] | (comm == 0)))
            put(_bound("upper_quotient", lhs, quo_cp, upper=True, condition=cond, context=ctx))
            sub_cp = cp_value(subgroup_from_indices(g, nidx).sub)
            put(_bound("upper_normal_product", lhs, sub_cp * quo_cp, upper=True, context=ctx))

    try:
        put(check_composition_bound(g, cap=normal_cap))
    except OrderCapExceeded:
        put(_inapplicable("upper_composition_factors", cp_value(g), context=capped))

    for i, (idx, gens) in enumerate(_sampled_subgroups(g, pair_samples, sample_seed)):
        emb = subgroup_from_indices(g, idx)
        put(check_subgroup_monotonicity(g, emb, context=f"subgroup[{i}] order {idx.size} {gens}"))

    return [rep for tid in CHECK_ORDER for rep in by_id[tid]]


def suite_holds(reports: Iterable[BoundReport]) -> bool:
    """True when every applicable non-external check holds."""
    return all(r.holds for r in reports if r.applicable and not r.external_claim)


def suite_findings(reports: Iterable[BoundReport]) -> list[BoundReport]:
    """External-claim reports that failed (reportable findings, not bugs)."""
    return [r for r in reports if r.applicable and r.external_claim and not r.holds]
