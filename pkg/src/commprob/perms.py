"""Permutations of {0, ..., degree-1} with 1-based cycle-notation I/O.

Products compose right-to-left: ``(p * q)(x) == p(q(x))``, i.e. q acts
first.  Cycle notation uses 1-based points, matching the group-spec
grammar; everything internal is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegreeMismatch


@dataclass(frozen=True)
class Permutation:
    """Bijection of {0..degree-1} stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        d = len(self.images)
        if sorted(self.images) != list(range(d)):
            raise ValueError(f"images {self.images!r} are not a bijection on 0..{d - 1}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build the product of ``cycles`` (1-based points), rightmost applied first.

        Points may repeat across cycles (product semantics) but not within one.
        """
        result = cls.identity(degree)
        for cycle in reversed(list(cycles)):
            images = list(range(degree))
            seen: set[int] = set()
            for pt in cycle:
                if not 1 <= pt <= degree:
                    raise ValueError(f"point {pt} out of range 1..{degree}")
                if pt in seen:
                    raise ValueError(f"point {pt} repeated within one cycle")
                seen.add(pt)
            for i, pt in enumerate(cycle):
                nxt = cycle[(i + 1) % len(cycle)]
                images[pt - 1] = nxt - 1
            result = cls(tuple(images)) * result
        return result

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")
        return Permutation(tuple(self.images[i] for i in other.images))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles as 1-based tuples, each starting at its smallest point."""
        seen = [False] * self.degree
        out: list[tuple[int, ...]] = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cur, cyc = start, []
            while not seen[cur]:
                seen[cur] = True
                cyc.append(cur + 1)
                cur = self.images[cur]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths including fixed points, sorted descending."""
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles(include_fixed=True)) % 2 == 0

    def order(self) -> int:
        import math

        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def __str__(self) -> str:
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)
