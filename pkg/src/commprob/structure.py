"""Structural invariants: centralizers, conjugacy classes, derived and
composition series, normal subgroups, and cycle-type predicates.

All functions are pure; results that are expensive and reusable
(classes, center, commutators, derived subgroup) are memoized on the
group object, which is safe because groups are immutable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import NotSubgroup, OddPermutationType, OrderCapExceeded
from .groups import (
    FiniteGroup,
    SubgroupEmbedding,
    _closure_indices,
    quotient,
    subgroup_from_indices,
)
from .perms import Permutation
from .util import is_prime, smallest_prime_factor

DEFAULT_NORMAL_ENUM_CAP = 2520


@dataclass(frozen=True)
class ClassDecomposition:
    """Partition of a group into conjugacy classes.

    Classes are ordered by smallest member and each class is sorted, so
    the decomposition is deterministic; the identity class {0} is first.
    """

    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray
    class_number: int

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def to_json(self) -> str:
        return json.dumps({"class_sizes": list(self.sizes()), "class_number": self.class_number})


def centralizer(g: FiniteGroup, a: int) -> np.ndarray:
    """Indices of elements commuting with ``a``, ascending."""
    return np.flatnonzero(g.table[a, :] == g.table[:, a]).astype(np.int64)


def centralizer_sizes(g: FiniteGroup) -> np.ndarray:
    """|Z_G(a)| for every a in one pass (row-vs-column comparison)."""
    cached = g._cache.get("centralizer_sizes")
    if cached is None:
        cached = (g.table == g.table.T).sum(axis=1).astype(np.int64)
        g._cache["centralizer_sizes"] = cached
    return cached


def center(g: FiniteGroup) -> np.ndarray:
    cached = g._cache.get("center")
    if cached is None:
        cached = np.flatnonzero((g.table == g.table.T).all(axis=1)).astype(np.int64)
        g._cache["center"] = cached
    return cached


def central_quotient(g: FiniteGroup) -> FiniteGroup:
    """G/Z(G), cached (several bound checks inspect it)."""
    cached = g._cache.get("central_quotient")
    if cached is None:
        cached = quotient(g, center(g), assume_normal=True, name_hint=f"{g.name}/Z")
        g._cache["central_quotient"] = cached
    return cached


def conjugacy_classes(g: FiniteGroup) -> ClassDecomposition:
    cached = g._cache.get("classes")
    if cached is not None:
        return cached
    n = g.order
    class_of = np.full(n, -1, dtype=np.int64)
    classes: list[tuple[int, ...]] = []
    if g.is_abelian:
        class_of = np.arange(n, dtype=np.int64)
        classes = [(a,) for a in range(n)]
    else:
        flat = g.table.astype(np.int64).ravel()
        inv = np.asarray(g.inverse, dtype=np.int64)
        for a in range(n):
            if class_of[a] >= 0:
                continue
            ga = np.asarray(g.table[:, a], dtype=np.int64)  # g*a for every g
            orbit = np.unique(flat[ga * n + inv])  # (g*a)*g^-1
            class_of[orbit] = len(classes)
            classes.append(tuple(int(x) for x in orbit))
    dec = ClassDecomposition(tuple(classes), class_of, len(classes))
    g._cache["classes"] = dec
    return dec


def commutator_values(g: FiniteGroup) -> np.ndarray:
    """Sorted indices of all commutators [x, y] (values, not the subgroup)."""
    cached = g._cache.get("commutators")
    if cached is not None:
        return cached
    n = g.order
    if g.is_abelian:
        vals = np.zeros(1, dtype=np.int64)
    else:
        flat = g.table.astype(np.int64).ravel()
        inv = np.asarray(g.inverse, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        for x in range(n):
            lhs = np.asarray(g.table[inv[x], inv], dtype=np.int64)  # x^-1 y^-1
            rhs = np.asarray(g.table[x], dtype=np.int64)  # x y
            seen[flat[lhs * n + rhs]] = True
        vals = np.flatnonzero(seen).astype(np.int64)
    g._cache["commutators"] = vals
    return vals


def derived_subgroup(g: FiniteGroup) -> SubgroupEmbedding:
    """Subgroup generated by all commutators, with inclusion into ``g``."""
    cached = g._cache.get("derived")
    if cached is None:
        idx = _closure_indices(g, commutator_values(g))
        cached = subgroup_from_indices(g, idx, name=f"derived({g.name})")
        g._cache["derived"] = cached
    return cached


def derived_series(g: FiniteGroup) -> list[SubgroupEmbedding]:
    """Successive derived subgroups until the series stabilizes."""
    series: list[SubgroupEmbedding] = []
    cur = g
    while cur.order > 1:
        emb = derived_subgroup(cur)
        if emb.sub.order == cur.order:  # perfect group: series stalls
            series.append(emb)
            break
        series.append(emb)
        cur = emb.sub
    return series


def is_solvable(g: FiniteGroup) -> bool:
    cached = g._cache.get("solvable")
    if cached is None:
        series = derived_series(g)
        cached = g.order == 1 or (len(series) > 0 and series[-1].sub.order == 1)
        g._cache["solvable"] = cached
    return cached


def _normal_closure_mask(g: FiniteGroup, cls: Iterable[int]) -> np.ndarray:
    idx = _closure_indices(g, cls)
    mask = np.zeros(g.order, dtype=bool)
    mask[idx] = True
    return mask


def _join_normals(g: FiniteGroup, n_mask: np.ndarray, a_idx: np.ndarray) -> np.ndarray:
    """N*A for normal subgroups N, A; one product pass is already closed."""
    n_idx = np.flatnonzero(n_mask)
    out = np.zeros(g.order, dtype=bool)
    out[g.table[n_idx[:, None], a_idx].ravel()] = True
    return out


def _prime_power_order(g: FiniteGroup, a: int) -> bool:
    k = g.element_order(a)
    if k == 1:
        return False
    p = smallest_prime_factor(k)
    while k % p == 0:
        k //= p
    return k == 1


def normal_subgroups(
    g: FiniteGroup, *, cap: int = DEFAULT_NORMAL_ENUM_CAP
) -> list[np.ndarray]:
    """All normal subgroups, as sorted element-index arrays.

    Enumeration is a breadth-first join closure.  Atoms are the normal
    closures of single classes of prime-power-order elements (enough,
    because any element is the product of its commuting prime-power
    parts), and the join of two normal subgroups is just their product
    set, so each new candidate costs one table gather.  Results are
    sorted by (order, element tuple).
    """
    if g.order > cap:
        raise OrderCapExceeded(f"normal-subgroup enumeration capped at {cap}, order {g.order}")
    cached = g._cache.get("normals")
    if cached is not None:
        return [x.copy() for x in cached]

    dec = conjugacy_classes(g)
    atom_masks: dict[bytes, np.ndarray] = {}
    for cls in dec.classes[1:]:
        if not _prime_power_order(g, cls[0]):
            continue
        mask = _normal_closure_mask(g, cls)
        key = mask.tobytes()
        if key not in atom_masks:
            atom_masks[key] = mask
    atoms = sorted(atom_masks.values(), key=lambda m: (int(m.sum()), tuple(np.flatnonzero(m))))
    atom_idx = [np.flatnonzero(m) for m in atoms]

    trivial = np.zeros(g.order, dtype=bool)
    trivial[0] = True
    found: dict[bytes, np.ndarray] = {trivial.tobytes(): trivial}
    queue = [trivial]
    while queue:
        nmask = queue.pop()
        for amask, aidx in zip(atoms, atom_idx):
            if not np.any(amask & ~nmask):
                continue
            joined = _join_normals(g, nmask, aidx)
            key = joined.tobytes()
            if key not in found:
                found[key] = joined
                queue.append(joined)

    result = sorted(
        (np.flatnonzero(m).astype(np.int64) for m in found.values()),
        key=lambda idx: (idx.size, tuple(idx)),
    )
    g._cache["normals"] = result
    return [x.copy() for x in result]


def is_simple(g: FiniteGroup, *, cap: int = DEFAULT_NORMAL_ENUM_CAP) -> bool:
    """True iff the group has exactly two normal subgroups.

    Prime order short-circuits; otherwise an abelian group is never
    simple, and a non-abelian one is simple iff every non-trivial
    conjugacy class normally generates the whole group (equivalent to
    the two-normal-subgroup condition, without the full enumeration).
    """
    if g.order == 1:
        return False
    if is_prime(g.order):
        return True
    if g.is_abelian:
        return False
    if g.order > cap:
        raise OrderCapExceeded(f"simplicity check capped at {cap}, order {g.order}")
    cached = g._cache.get("simple")
    if cached is None:
        dec = conjugacy_classes(g)
        cached = all(
            _normal_closure_mask(g, cls).all() for cls in dec.classes[1:]
        )
        g._cache["simple"] = cached
    return cached


@dataclass(frozen=True)
class CompositionSeries:
    """Jordan-Hoelder data: proper subgroups descending to 1, plus factors.

    ``subgroups[i]`` embeds the i-th proper term into the *original*
    group; ``factors[i]`` is the simple quotient of the previous term by
    it (top-down, so factors[0] = G / subgroups[0]).
    """

    subgroups: tuple[SubgroupEmbedding, ...]
    factors: tuple[FiniteGroup, ...]

    def factor_orders(self) -> tuple[int, ...]:
        return tuple(f.order for f in self.factors)


def composition_series(
    g: FiniteGroup, *, cap: int = DEFAULT_NORMAL_ENUM_CAP
) -> CompositionSeries:
    """Chain built by repeatedly taking a maximal proper normal subgroup.

    Ties on order break to the lexicographically smallest element-index
    set, so the chain (not just the factor multiset) is deterministic.
    """
    steps: list[SubgroupEmbedding] = []
    factors: list[FiniteGroup] = []
    cur = g
    cur_inc = np.arange(g.order, dtype=np.int64)
    while cur.order > 1:
        proper = [n for n in normal_subgroups(cur, cap=cap) if n.size < cur.order]
        maximal = min(proper, key=lambda idx: (-idx.size, tuple(idx)))
        factors.append(quotient(cur, maximal, assume_normal=True, name_hint=f"{cur.name} factor"))
        emb = subgroup_from_indices(cur, maximal)
        cur_inc = cur_inc[maximal]
        steps.append(SubgroupEmbedding(sub=emb.sub, inclusion=cur_inc))
        cur = emb.sub
    return CompositionSeries(tuple(steps), tuple(factors))


# -- cycle types -------------------------------------------------------------


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths (fixed points included), sorted descending."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("cycle lengths must be positive")
        if list(self.parts) != sorted(self.parts, reverse=True):
            raise ValueError("parts must be sorted descending")

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def is_even(self) -> bool:
        return (self.degree - len(self.parts)) % 2 == 0

    def to_json(self) -> str:
        return json.dumps(list(self.parts))


def cycle_type(p: Permutation) -> CycleType:
    return CycleType(p.cycle_type())


def is_odc(t: CycleType) -> bool:
    """All parts odd and pairwise distinct."""
    return all(part % 2 == 1 for part in t.parts) and len(set(t.parts)) == len(t.parts)


def an_class_splits(n: int, t: CycleType) -> bool:
    """Whether the symmetric-group class of type ``t`` splits in two inside
    the alternating group of degree ``n`` (it does exactly when the type has
    odd, pairwise-distinct parts)."""
    if t.degree != n:
        raise ValueError(f"type {t.parts} is not a type of degree {n}")
    if not t.is_even():
        raise OddPermutationType(f"type {t.parts} has odd sign")
    return is_odc(t)


def subgroup_indices_closed(g: FiniteGroup, indices: Iterable[int]) -> np.ndarray:
    """Validate that ``indices`` form a subgroup and return them sorted."""
    idx = np.unique(np.asarray(list(indices), dtype=np.int64))
    mask = np.zeros(g.order, dtype=bool)
    mask[idx] = True
    prods = np.asarray(g.table[np.ix_(idx, idx)], dtype=np.int64)
    if not mask[prods.ravel()].all():
        raise NotSubgroup("element set is not closed under multiplication")
    return idx
