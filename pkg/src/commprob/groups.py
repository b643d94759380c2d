"""Finite groups as explicit multiplication tables.

Conventions, fixed across the package:

* elements are indices ``0..n-1`` and the identity is always index 0;
* ``table[a, b]`` is the index of ``a * b``;
* permutation products compose right-to-left (``(p*q)(x) = p(q(x))``);
* :func:`closure` enumerates elements breadth-first from the identity,
  applying generators in list order, so identical generator lists yield
  identical element orderings and tables.

Tables are numpy arrays of the smallest signed integer dtype that fits,
made read-only after construction.  Every structural computation in the
rest of the package is an O(n^2) scan over this table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    ActionNotAutomorphism,
    ActionNotHomomorphism,
    DegreeMismatch,
    InvalidParameter,
    NotNormal,
    NotSubgroup,
    OrderCapExceeded,
)
from .perms import Permutation
from .rng import SplitMix64
from .util import is_prime

DEFAULT_ORDER_CAP = 10080
#: above this order the constructor spot-checks associativity instead of
#: proving it exhaustively
ASSOC_EXHAUSTIVE_CAP = 512
ASSOC_SAMPLE_COUNT = 100_000
_ASSOC_SAMPLE_SEED = 0x5EED_0A55
DEFAULT_MAX_PERM_DEGREE = 7


def _table_dtype(n: int):
    return np.int16 if n <= np.iinfo(np.int16).max else np.int32


class FiniteGroup:
    """Immutable finite group carried by its full Cayley table.

    ``validate=True`` is for hand-built tables: it proves the identity
    row/column, the Latin-square property, unique inverses, and
    associativity (exhaustively up to ``ASSOC_EXHAUSTIVE_CAP``, by at
    least ``ASSOC_SAMPLE_COUNT`` seeded random triples above).  Tables
    that are associative by construction (closures, products, quotients,
    subgroups) are built with ``validate=False`` and only get the cheap
    identity/inverse checks.

    Instances are safe to share between threads: the table is read-only
    and the only mutation is an idempotent memo cache.
    """

    __slots__ = ("table", "order", "inverse", "labels", "name", "perms", "_cache")

    def __init__(
        self,
        table,
        *,
        name: str = "G",
        labels: Sequence[str] | None = None,
        perms: tuple[Permutation, ...] | None = None,
        validate: bool = True,
    ):
        arr = np.asarray(table)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidParameter(f"table must be square, got shape {arr.shape}")
        n = int(arr.shape[0])
        if n < 1:
            raise InvalidParameter("group order must be at least 1")
        arr = arr.astype(_table_dtype(n), copy=True)
        if arr.min() < 0 or arr.max() >= n:
            raise InvalidParameter("table entries out of range")

        rng = np.arange(n, dtype=arr.dtype)
        if not (np.array_equal(arr[0], rng) and np.array_equal(arr[:, 0], rng)):
            raise InvalidParameter("identity (index 0) row/column malformed")

        if validate:
            if not np.array_equal(np.sort(arr, axis=1), np.broadcast_to(rng, arr.shape)):
                raise InvalidParameter("some row is not a permutation of the elements")
            if not np.array_equal(np.sort(arr, axis=0), np.broadcast_to(rng[:, None], arr.shape)):
                raise InvalidParameter("some column is not a permutation of the elements")

        hits = arr == 0
        if not np.all(hits.any(axis=1)):
            raise InvalidParameter("some element has no inverse")
        inverse = hits.argmax(axis=1).astype(arr.dtype)
        if validate and not np.all(hits.sum(axis=1) == 1):
            raise InvalidParameter("inverses are not unique")
        if np.any(arr[inverse, np.arange(n)] != 0):
            raise InvalidParameter("left and right inverses disagree")

        if validate:
            self._check_associativity(arr)

        arr.setflags(write=False)
        self.table = arr
        self.order = n
        self.inverse = inverse
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise InvalidParameter("label count does not match order")
        self.name = name
        self.perms = perms
        self._cache: dict = {}

    @staticmethod
    def _check_associativity(arr: np.ndarray) -> None:
        n = arr.shape[0]
        if n <= ASSOC_EXHAUSTIVE_CAP:
            for a in range(n):
                row = arr[a]
                if not np.array_equal(arr[row], row[arr]):
                    raise InvalidParameter(f"associativity fails at element {a}")
        else:
            flat = arr.astype(np.int64).ravel()
            draws = SplitMix64(_ASSOC_SAMPLE_SEED).uniform_below(n, 3 * ASSOC_SAMPLE_COUNT)
            a, b, c = draws[0::3], draws[1::3], draws[2::3]
            ab = flat[a * n + b]
            bc = flat[b * n + c]
            if not np.array_equal(flat[ab * n + c], flat[a * n + bc]):
                raise InvalidParameter("associativity fails on sampled triples")

    # -- element arithmetic ------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conjugate(self, g: int, a: int) -> int:
        """g * a * g^-1."""
        return int(self.table[self.table[g, a], self.inverse[g]])

    def commutator(self, g: int, h: int) -> int:
        """g^-1 * h^-1 * g * h."""
        return int(self.table[self.table[self.inverse[g], self.inverse[h]], self.table[g, h]])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        acc = 0
        for _ in range(k):
            acc = int(self.table[acc, a])
        return acc

    def element_order(self, a: int) -> int:
        cur, k = int(a), 1
        while cur != 0:
            cur = int(self.table[cur, a])
            k += 1
        return k

    @property
    def is_abelian(self) -> bool:
        cached = self._cache.get("abelian")
        if cached is None:
            cached = bool(np.array_equal(self.table, self.table.T))
            self._cache["abelian"] = cached
        return cached

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class SubgroupEmbedding:
    """A subgroup as its own group plus the index map into the parent."""

    sub: FiniteGroup
    inclusion: np.ndarray

    def __post_init__(self):
        inc = np.asarray(self.inclusion, dtype=np.int64)
        object.__setattr__(self, "inclusion", inc)
        if inc.shape != (self.sub.order,):
            raise InvalidParameter("inclusion length does not match subgroup order")
        if inc[0] != 0:
            raise InvalidParameter("inclusion must map the identity to index 0")
        if len(set(inc.tolist())) != inc.size:
            raise InvalidParameter("inclusion is not injective")


def _verify_embedding(parent: FiniteGroup, emb: SubgroupEmbedding) -> None:
    inc = emb.inclusion
    expected = inc[emb.sub.table.astype(np.int64)]
    actual = parent.table[np.ix_(inc, inc)].astype(np.int64)
    if not np.array_equal(expected, actual):
        raise NotSubgroup("inclusion is not a homomorphism")


# -- construction from permutation generators -------------------------------


def closure(
    generators: Iterable[Permutation],
    degree: int,
    *,
    order_cap: int = DEFAULT_ORDER_CAP,
    name: str | None = None,
) -> FiniteGroup:
    """Group generated by ``generators`` under composition.

    Elements are discovered breadth-first from the identity with generators
    applied on the right in list order, and the table is filled column by
    column from the BFS word decomposition (each non-identity element is
    parent * generator, so its column is one gather of the parent's).
    """
    gens = list(generators)
    if degree < 0:
        raise InvalidParameter("degree must be non-negative")
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator degree {g.degree} != {degree}")

    ident = Permutation.identity(degree)
    index: dict[Permutation, int] = {ident: 0}
    elems: list[Permutation] = [ident]
    parent: list[tuple[int, int]] = [(-1, -1)]
    rmul: list[list[int]] = [[] for _ in gens]

    i = 0
    while i < len(elems):
        p = elems[i]
        for j, g in enumerate(gens):
            q = p * g
            k = index.get(q)
            if k is None:
                k = len(elems)
                if k >= order_cap:
                    raise OrderCapExceeded(
                        f"closure exceeded order cap {order_cap} (degree {degree})"
                    )
                index[q] = k
                elems.append(q)
                parent.append((i, j))
            rmul[j].append(k)
        i += 1

    n = len(elems)
    if n > order_cap:
        raise OrderCapExceeded(f"closure order {n} exceeds cap {order_cap}")
    dtype = _table_dtype(n)
    table = np.empty((n, n), dtype=dtype)
    table[:, 0] = np.arange(n, dtype=dtype)
    rcols = [np.asarray(col, dtype=dtype) for col in rmul]
    for k in range(1, n):
        pi, j = parent[k]
        table[:, k] = rcols[j][table[:, pi]]

    labels = [str(p) for p in elems]
    return FiniteGroup(
        table,
        name=name or f"perm({degree})",
        labels=labels,
        perms=tuple(elems),
        validate=False,
    )


# -- named families ----------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter("cyclic order must be >= 1")
    a = np.arange(n)
    table = (a[:, None] + a[None, :]) % n
    return FiniteGroup(
        table.astype(_table_dtype(n)),
        name=f"cyclic({n})",
        labels=[str(i) for i in range(n)],
        validate=False,
    )


def dihedral(n: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Dihedral group of order 2n; index p is x^p, index n+p is x^p y."""
    if n < 3:
        raise InvalidParameter("dihedral parameter must be >= 3")
    if 2 * n > order_cap:
        raise OrderCapExceeded(f"dihedral order {2 * n} exceeds cap {order_cap}")
    a = np.arange(n)
    add = (a[:, None] + a[None, :]) % n
    sub = (a[:, None] - a[None, :]) % n
    table = np.block([[add, add + n], [sub + n, sub]])

    def rot(p: int) -> str:
        return "1" if p == 0 else ("x" if p == 1 else f"x^{p}")

    labels = [rot(p) for p in range(n)] + [("y" if p == 0 else rot(p) + " y") for p in range(n)]
    return FiniteGroup(table.astype(_table_dtype(2 * n)), name=f"dihedral({n})", labels=labels)


def symmetric(
    n: int,
    *,
    max_degree: int = DEFAULT_MAX_PERM_DEGREE,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter("symmetric degree must be >= 1")
    if n > max_degree:
        raise OrderCapExceeded(f"symmetric degree {n} exceeds configured max {max_degree}")
    if n == 1:
        gens: list[Permutation] = []
    elif n == 2:
        gens = [Permutation.from_cycles(2, [(1, 2)])]
    else:
        gens = [
            Permutation.from_cycles(n, [(1, 2)]),
            Permutation.from_cycles(n, [tuple(range(1, n + 1))]),
        ]
    grp = closure(gens, n, order_cap=order_cap, name=f"sym({n})")
    assert grp.order == math.factorial(n)
    return grp


def alternating(
    n: int,
    *,
    max_degree: int = DEFAULT_MAX_PERM_DEGREE,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter("alternating degree must be >= 1")
    if n > max_degree:
        raise OrderCapExceeded(f"alternating degree {n} exceeds configured max {max_degree}")
    gens = [Permutation.from_cycles(n, [(i, i + 1, i + 2)]) for i in range(1, n - 1)]
    grp = closure(gens, n, order_cap=order_cap, name=f"alt({n})")
    assert grp.order == (math.factorial(n) // 2 if n >= 2 else 1)
    return grp


_Q8_AXIS = {
    (1, 1): (1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 1): (-1, 3), (2, 2): (1, 0), (2, 3): (1, 1),
    (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (1, 0),
}


def quaternion() -> FiniteGroup:
    """Q8 with elements 1, i, j, k, -1, -i, -j, -k (in that index order)."""

    def unit(idx: int) -> tuple[int, int]:
        return (-1 if idx >= 4 else 1, idx % 4)

    def index(sign: int, axis: int) -> int:
        return axis + (4 if sign < 0 else 0)

    def qmul(a: int, b: int) -> int:
        s1, a1 = unit(a)
        s2, a2 = unit(b)
        if a1 == 0:
            s, ax = 1, a2
        elif a2 == 0:
            s, ax = 1, a1
        elif a1 == a2:
            s, ax = -1, 0
        else:
            s, ax = _Q8_AXIS[(a1, a2)]
        return index(s1 * s2 * s, ax)

    table = [[qmul(a, b) for b in range(8)] for a in range(8)]
    labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    return FiniteGroup(np.array(table), name="q8", labels=labels)


# -- combinators -------------------------------------------------------------


def direct_product(
    g: FiniteGroup, h: FiniteGroup, *, order_cap: int = DEFAULT_ORDER_CAP
) -> FiniteGroup:
    """Componentwise product on pairs, indexed as (a, b) -> a*|H| + b."""
    n, m = g.order, h.order
    total = n * m
    if total > order_cap:
        raise OrderCapExceeded(f"product order {total} exceeds cap {order_cap}")
    dtype = _table_dtype(total)
    table = np.empty((total, total), dtype=dtype)
    gt = g.table.astype(np.int32) * m
    ht = h.table.astype(np.int32)
    for a in range(n):  # row block for all pairs (a, *); keeps peak memory ~m*total ints
        block = gt[a][None, :, None] + ht[:, None, :]
        table[a * m : (a + 1) * m] = block.reshape(m, total).astype(dtype)
    labels = [f"({la},{lb})" for la in g.labels for lb in h.labels]
    return FiniteGroup(
        table,
        name=f"prod({g.name},{h.name})",
        labels=labels,
        validate=False,
    )


def semidirect_product(
    g: FiniteGroup,
    h: FiniteGroup,
    action,
    *,
    order_cap: int = DEFAULT_ORDER_CAP,
    name: str | None = None,
) -> FiniteGroup:
    """Semidirect product with G acting on the normal factor H.

    ``action`` is an array-like of shape (|G|, |H|): row g is the
    permutation of H's element indices giving the automorphism by which
    g acts.  Elements are pairs (g, h) indexed as g*|H| + h, multiplied by
    ``(g1,h1)(g2,h2) = (g1 g2, act[inv(g2)](h1) h2)``, so {0} x H is a
    normal subgroup and the quotient by it is G on the nose.
    """
    n, m = g.order, h.order
    total = n * m
    if total > order_cap:
        raise OrderCapExceeded(f"semidirect order {total} exceeds cap {order_cap}")

    act = np.asarray(action, dtype=np.int64)
    if act.shape != (n, m):
        raise InvalidParameter(f"action shape {act.shape} != ({n}, {m})")
    ht = h.table.astype(np.int64)
    rng_m = np.arange(m)
    for gi in range(n):
        phi = act[gi]
        if not np.array_equal(np.sort(phi), rng_m):
            raise ActionNotAutomorphism(f"action of element {gi} is not a permutation")
        if not np.array_equal(phi[ht], ht[np.ix_(phi, phi)]):
            raise ActionNotAutomorphism(f"action of element {gi} does not preserve the table")
    for g1 in range(n):
        for g2 in range(n):
            if not np.array_equal(act[g.table[g1, g2]], act[g1][act[g2]]):
                raise ActionNotHomomorphism(f"action is not multiplicative at ({g1}, {g2})")

    act_inv = act[np.asarray(g.inverse, dtype=np.int64)]
    twisted = ht[act_inv]  # twisted[g2, h1, h2] = h.table[act_inv[g2, h1], h2]
    gt = g.table.astype(np.int64) * m
    table4 = gt[:, None, :, None] + twisted.transpose(1, 0, 2)[None, :, :, :]
    table = table4.reshape(total, total)

    labels = [f"({la},{lb})" for la in g.labels for lb in h.labels]
    grp = FiniteGroup(
        table,
        name=name or f"semidirect({g.name},{h.name})",
        labels=labels,
    )
    # construction-time verification: {0} x H normal, quotient equal to G's table
    h_block = np.arange(m, dtype=np.int64)
    for gi in range(total):
        conj = grp.table[grp.table[gi, h_block], grp.inverse[gi]]
        if not np.array_equal(np.sort(np.asarray(conj, dtype=np.int64)), h_block):
            raise NotNormal("embedded H is not normal (action verification bug)")
    q = quotient(grp, h_block, name_hint=g.name)
    assert np.array_equal(q.table, g.table), "quotient by embedded H must reproduce G"
    return grp


def quotient(
    g: FiniteGroup,
    normal: Iterable[int],
    *,
    name_hint: str | None = None,
    assume_normal: bool = False,
) -> FiniteGroup:
    """Quotient of ``g`` by a normal subgroup given as an element set.

    ``assume_normal`` skips the subgroup/normality verification; callers may
    set it only for sets produced by the normal-subgroup enumerator.
    """
    nset = np.unique(np.asarray(list(normal), dtype=np.int64))
    if nset.size == 0 or nset[0] != 0:
        raise NotSubgroup("a subgroup must contain the identity")
    if not assume_normal:
        mask = np.zeros(g.order, dtype=bool)
        mask[nset] = True
        prods = g.table[np.ix_(nset, nset)]
        if not mask[np.asarray(prods, dtype=np.int64)].all():
            raise NotSubgroup("element set is not closed under multiplication")
        for a in range(g.order):
            left = np.sort(np.asarray(g.table[a, nset], dtype=np.int64))
            right = np.sort(np.asarray(g.table[nset, a], dtype=np.int64))
            if not np.array_equal(left, right):
                raise NotNormal(f"subgroup is not normal (witness element {a})")

    k = nset.size
    q = g.order // k
    if k == 1:
        return FiniteGroup(
            g.table,
            name=name_hint or f"{g.name}/N1",
            labels=[f"[{lab}]" for lab in g.labels],
            validate=False,
        )
    # coset of a is a*N; its smallest member indexes the coset, ascending
    mins = g.table[:, nset].min(axis=1)
    reps_arr, coset_id = np.unique(mins, return_inverse=True)
    table = coset_id[g.table[reps_arr[:, None], reps_arr]]
    labels = [f"[{g.labels[r]}]" for r in reps_arr.tolist()]
    return FiniteGroup(
        table.astype(_table_dtype(q)),
        name=name_hint or f"{g.name}/N{k}",
        labels=labels,
        validate=False,
    )


def _closure_indices(g: FiniteGroup, seed: Iterable[int]) -> np.ndarray:
    """Indices of the subgroup generated by ``seed`` (always includes 0)."""
    seed_list = [int(x) for x in seed]
    if g.is_abelian:
        # fold in one generator's cyclic orbit at a time: <S, a> = S + <a>
        mask = np.zeros(g.order, dtype=bool)
        mask[0] = True
        for a in seed_list:
            if mask[a]:
                continue
            powers = cyclic_subgroup_indices(g, a)
            members = np.flatnonzero(mask)
            mask[g.table[members[:, None], powers].ravel()] = True
        return np.flatnonzero(mask)
    mask = np.zeros(g.order, dtype=bool)
    mask[0] = True
    if seed_list:
        mask[np.asarray(seed_list, dtype=np.int64)] = True
    frontier = np.flatnonzero(mask)
    while frontier.size:
        members = np.flatnonzero(mask)
        new_mask = np.zeros(g.order, dtype=bool)
        new_mask[g.table[frontier[:, None], members].ravel()] = True
        new_mask[g.table[members[:, None], frontier].ravel()] = True
        new_mask &= ~mask
        mask |= new_mask
        frontier = np.flatnonzero(new_mask)
    return np.flatnonzero(mask)


def subgroup_from_indices(
    g: FiniteGroup, indices: Iterable[int], *, name: str | None = None
) -> SubgroupEmbedding:
    """Wrap an already-closed element set as a subgroup with its inclusion."""
    inc = np.unique(np.asarray(list(indices), dtype=np.int64))
    if inc.size == 0 or inc[0] != 0:
        raise NotSubgroup("a subgroup must contain the identity")
    pos = np.full(g.order, -1, dtype=np.int64)
    pos[inc] = np.arange(inc.size)
    sub_table = pos[g.table[inc[:, None], inc]]
    if sub_table.min() < 0:
        raise NotSubgroup("element set is not closed under multiplication")
    sub = FiniteGroup(
        sub_table.astype(_table_dtype(inc.size)),
        name=name or f"sub{inc.size}({g.name})",
        labels=[g.labels[i] for i in inc],
        validate=False,
    )
    # the closedness check above already makes pos o table o inc a homomorphism
    return SubgroupEmbedding(sub=sub, inclusion=inc)


def subgroup_generated(
    g: FiniteGroup, gens: Iterable[int], *, name: str | None = None
) -> SubgroupEmbedding:
    """Subgroup generated by the given element indices, with inclusion map.

    Elements are listed in ascending parent-index order (identity first).
    """
    return subgroup_from_indices(g, _closure_indices(g, gens), name=name)


def cyclic_subgroup_indices(g: FiniteGroup, a: int) -> np.ndarray:
    """Elements of <a>, computed by walking powers (fast path for sampling)."""
    out = [0]
    cur = int(a)
    while cur != 0:
        out.append(cur)
        cur = int(g.table[cur, a])
    return np.unique(np.asarray(out, dtype=np.int64))


# -- recognizers used by equality conditions ---------------------------------


def is_klein_four(g: FiniteGroup) -> bool:
    """Order 4 and exponent 2 (every element is its own inverse)."""
    return g.order == 4 and bool((np.diagonal(g.table) == 0).all())


def is_elementary_abelian_p_squared(g: FiniteGroup, p: int) -> bool:
    """Abelian of order p^2 in which every non-identity element has order p."""
    if not is_prime(p) or g.order != p * p or not g.is_abelian:
        return False
    return all(g.power(a, p) == 0 for a in range(1, g.order))
