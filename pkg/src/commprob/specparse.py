"""Parser and builder for the group-spec mini-language.

Grammar (whitespace-insensitive)::

    spec   := family | "prod(" spec "," spec ")"
    family := "cyclic(" int ")" | "dihedral(" int ")" | "sym(" int ")"
            | "alt(" int ")" | "q8" | "perm(" int ";" cycles ")"
    cycles := item {"," item}          -- one item per generator
    item   := cycle {cycle}            -- juxtaposed cycles multiply
    cycle  := "(" int {int} ")"        -- 1-based points

Juxtaposed cycles within one item compose right-to-left (the rightmost
cycle acts first), so "(1 2)(3 4)" is the usual disjoint product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import groups
from .errors import ParseError
from .perms import Permutation


@dataclass(frozen=True)
class CyclicSpec:
    n: int


@dataclass(frozen=True)
class DihedralSpec:
    n: int


@dataclass(frozen=True)
class SymSpec:
    n: int


@dataclass(frozen=True)
class AltSpec:
    n: int


@dataclass(frozen=True)
class Q8Spec:
    pass


@dataclass(frozen=True)
class PermSpec:
    degree: int
    generators: tuple[Permutation, ...]


@dataclass(frozen=True)
class ProdSpec:
    left: "GroupSpec"
    right: "GroupSpec"


GroupSpec = Union[CyclicSpec, DihedralSpec, SymSpec, AltSpec, Q8Spec, PermSpec, ProdSpec]


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str) -> None:
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            raise ParseError(self.pos, repr(token))
        self.pos += len(token)

    def parse_int(self, what: str = "an integer") -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError(start, what)
        return int(self.text[start : self.pos])

    def parse_word(self) -> tuple[str, int]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalnum():
            self.pos += 1
        return self.text[start : self.pos], start


_FAMILIES = ("cyclic", "dihedral", "sym", "alt", "q8", "perm", "prod")


def _parse_spec(cur: _Cursor) -> GroupSpec:
    word, start = cur.parse_word()
    if word == "prod":
        cur.expect("(")
        left = _parse_spec(cur)
        cur.expect(",")
        right = _parse_spec(cur)
        cur.expect(")")
        return ProdSpec(left, right)
    if word == "q8":
        return Q8Spec()
    if word in ("cyclic", "dihedral", "sym", "alt"):
        cur.expect("(")
        npos = cur.pos
        n = cur.parse_int()
        cur.expect(")")
        if word == "cyclic":
            if n < 1:
                raise ParseError(npos, "cyclic order >= 1")
            return CyclicSpec(n)
        if word == "dihedral":
            if n < 3:
                raise ParseError(npos, "dihedral parameter >= 3")
            return DihedralSpec(n)
        if n < 1:
            raise ParseError(npos, f"{word} degree >= 1")
        return SymSpec(n) if word == "sym" else AltSpec(n)
    if word == "perm":
        cur.expect("(")
        dpos = cur.pos
        degree = cur.parse_int()
        if degree < 1:
            raise ParseError(dpos, "degree >= 1")
        cur.expect(";")
        gens = [_parse_generator(cur, degree)]
        while cur.peek() == ",":
            cur.expect(",")
            gens.append(_parse_generator(cur, degree))
        cur.expect(")")
        return PermSpec(degree, tuple(gens))
    raise ParseError(start, "one of " + ", ".join(_FAMILIES))


def _parse_generator(cur: _Cursor, degree: int) -> Permutation:
    cycles = [_parse_cycle(cur, degree)]
    while cur.peek() == "(":
        cycles.append(_parse_cycle(cur, degree))
    start = cur.pos
    try:
        return Permutation.from_cycles(degree, cycles)
    except ValueError as exc:
        raise ParseError(start, f"a valid cycle product ({exc})") from exc


def _parse_cycle(cur: _Cursor, degree: int) -> tuple[int, ...]:
    cur.expect("(")
    points = []
    seen: set[int] = set()
    while True:
        if cur.peek() == ")":
            break
        ppos = cur.pos
        cur.skip_ws()
        ppos = cur.pos
        pt = cur.parse_int("a point")
        if not 1 <= pt <= degree:
            raise ParseError(ppos, f"a point in 1..{degree}")
        if pt in seen:
            raise ParseError(ppos, "distinct points within one cycle")
        seen.add(pt)
        points.append(pt)
    cur.expect(")")
    if not points:
        raise ParseError(cur.pos - 1, "at least one point in a cycle")
    return tuple(points)


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``text`` into a spec AST; raises :class:`ParseError` with position."""
    cur = _Cursor(text)
    spec = _parse_spec(cur)
    cur.skip_ws()
    if cur.pos != len(text):
        raise ParseError(cur.pos, "end of input")
    return spec


def describe(spec: GroupSpec) -> str:
    """Canonical text form of a spec (parses back to an equal AST)."""
    if isinstance(spec, CyclicSpec):
        return f"cyclic({spec.n})"
    if isinstance(spec, DihedralSpec):
        return f"dihedral({spec.n})"
    if isinstance(spec, SymSpec):
        return f"sym({spec.n})"
    if isinstance(spec, AltSpec):
        return f"alt({spec.n})"
    if isinstance(spec, Q8Spec):
        return "q8"
    if isinstance(spec, PermSpec):
        gens = ", ".join(str(p) for p in spec.generators)
        return f"perm({spec.degree}; {gens})"
    if isinstance(spec, ProdSpec):
        return f"prod({describe(spec.left)},{describe(spec.right)})"
    raise TypeError(f"not a GroupSpec: {spec!r}")


def build(
    spec: GroupSpec,
    *,
    order_cap: int = groups.DEFAULT_ORDER_CAP,
    max_perm_degree: int = groups.DEFAULT_MAX_PERM_DEGREE,
) -> groups.FiniteGroup:
    """Construct the group a spec denotes."""
    if isinstance(spec, CyclicSpec):
        if spec.n > order_cap:
            from .errors import OrderCapExceeded

            raise OrderCapExceeded(f"cyclic order {spec.n} exceeds cap {order_cap}")
        return groups.cyclic(spec.n)
    if isinstance(spec, DihedralSpec):
        return groups.dihedral(spec.n, order_cap=order_cap)
    if isinstance(spec, SymSpec):
        return groups.symmetric(spec.n, max_degree=max_perm_degree, order_cap=order_cap)
    if isinstance(spec, AltSpec):
        return groups.alternating(spec.n, max_degree=max_perm_degree, order_cap=order_cap)
    if isinstance(spec, Q8Spec):
        return groups.quaternion()
    if isinstance(spec, PermSpec):
        return groups.closure(
            list(spec.generators), spec.degree, order_cap=order_cap, name=describe(spec)
        )
    if isinstance(spec, ProdSpec):
        left = build(spec.left, order_cap=order_cap, max_perm_degree=max_perm_degree)
        right = build(spec.right, order_cap=order_cap, max_perm_degree=max_perm_degree)
        return groups.direct_product(left, right, order_cap=order_cap)
    raise TypeError(f"not a GroupSpec: {spec!r}")


def build_from_text(text: str, **kwargs) -> groups.FiniteGroup:
    return build(parse_group_spec(text), **kwargs)
