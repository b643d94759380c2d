"""Integer-partition counts and the closed-form commuting probabilities
they yield for the symmetric, alternating and dihedral families.

Four counting sequences are tabulated together:

* ``p[n]`` - all partitions of n;
* ``q[n]`` - partitions into distinct odd parts;
* ``r[n]`` / ``s[n]`` - partitions with an even / odd number of even
  parts.

They satisfy ``r + s = p`` and ``r - s = q``.  Everything is a Python
int, so the tables stay exact at any size (p(200) needs > 64 bits).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import FormulaMismatch, InvalidParameter


@dataclass(frozen=True)
class PartitionTable:
    max_n: int
    p: tuple[int, ...]
    q: tuple[int, ...]
    r: tuple[int, ...]
    s: tuple[int, ...]

    def row(self, n: int) -> tuple[int, int, int, int]:
        return self.p[n], self.q[n], self.r[n], self.s[n]


def build_partition_table(max_n: int) -> PartitionTable:
    """Tabulate p, q, r, s for 0..max_n by dynamic programming over part sizes."""
    if max_n < 0:
        raise InvalidParameter("max_n must be >= 0")
    size = max_n + 1

    # p: unbounded parts, classic coin-style DP
    p = [0] * size
    p[0] = 1
    for part in range(1, size):
        for m in range(part, size):
            p[m] += p[m - part]

    # q: distinct odd parts, 0/1 DP (descending m)
    q = [0] * size
    q[0] = 1
    for part in range(1, size, 2):
        for m in range(max_n, part - 1, -1):
            q[m] += q[m - part]

    # r, s: unbounded parts tracking the parity of the number of even parts
    r = [0] * size
    s = [0] * size
    r[0] = 1
    for part in range(1, size):
        if part % 2 == 1:
            for m in range(part, size):
                r[m] += r[m - part]
                s[m] += s[m - part]
        else:
            for m in range(part, size):
                r[m], s[m] = r[m] + s[m - part], s[m] + r[m - part]

    return PartitionTable(max_n, tuple(p), tuple(q), tuple(r), tuple(s))


def partition_count(n: int) -> int:
    return build_partition_table(n).p[n]


def cp_symmetric_closed(n: int) -> Fraction:
    """Closed-form cp of the symmetric group of degree n: p(n)/n!."""
    if n < 1:
        raise InvalidParameter("degree must be >= 1")
    return Fraction(build_partition_table(n).p[n], math.factorial(n))


def cp_alternating_closed(n: int) -> Fraction:
    """Closed-form cp of the alternating group of degree n (n >= 3).

    Both equivalent expressions, 2(r(n)+q(n))/n! and (p(n)+3q(n))/n!,
    are evaluated; a mismatch means the partition tables are broken.
    """
    if n < 3:
        raise InvalidParameter("degree must be >= 3")
    t = build_partition_table(n)
    fact = math.factorial(n)
    via_rq = Fraction(2 * (t.r[n] + t.q[n]), fact)
    via_pq = Fraction(t.p[n] + 3 * t.q[n], fact)
    if via_rq != via_pq:
        raise FormulaMismatch(f"n={n}: 2(r+q)/n! = {via_rq} but (p+3q)/n! = {via_pq}")
    return via_rq


def cp_dihedral_closed(n: int) -> Fraction:
    """Closed-form cp of the dihedral group of order 2n (n >= 3)."""
    if n < 3:
        raise InvalidParameter("parameter must be >= 3")
    if n % 2 == 0:
        return Fraction(n + 6, 4 * n)
    return Fraction(n + 3, 4 * n)
