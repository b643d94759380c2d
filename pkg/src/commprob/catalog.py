"""Built-in group catalog, the cp spectrum over it, and exports.

The catalog is families plus pairwise direct products, not an
isomorphism-classified census, so the spectrum it yields is a subset of
the set of all attainable cp values.  Base members:

* cyclic(n) for n <= 64;
* dihedral(n) for 3 <= n <= 64;
* sym(n) and alt(n) for n <= 7;
* q8;
* the non-abelian group of order 21 (cyclic(7) twisted by cyclic(3));
* the simple group of order 168, generated by two fixed permutations of
  8 points (closure order and simplicity are asserted at build time);
* every unordered pair product of the above that fits the order bound.

Entry names are stable and the list is sorted by name, so exports are
byte-identical across runs of one version.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable

from . import __version__
from .commuting import commuting_probability
from .errors import InvalidParameter
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    closure,
    cyclic,
    dihedral,
    direct_product,
    quaternion,
    semidirect_product,
    symmetric,
    alternating,
)
from .perms import Permutation
from .structure import DEFAULT_NORMAL_ENUM_CAP, conjugacy_classes, is_simple, is_solvable
from .util import dyadic_form_exponent, fraction_str

DEFAULT_CATALOG_MAX_ORDER = 128


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog member with its precomputed invariants."""

    name: str
    spec_text: str | None
    group: FiniteGroup
    cp: Fraction
    class_number: int
    order: int
    abelian: bool
    simple: bool
    solvable: bool

    def to_row(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "cp_num": self.cp.numerator,
            "cp_den": self.cp.denominator,
            "classes": self.class_number,
            "abelian": self.abelian,
            "simple": self.simple,
            "solvable": self.solvable,
        }


def order21_nonabelian() -> FiniteGroup:
    """The unique non-abelian group of order 21: cyclic(7) twisted by cyclic(3),
    the generator acting as multiplication by 2 (an order-3 automorphism)."""
    c3 = cyclic(3)
    c7 = cyclic(7)
    action = [[(h * pow(2, g, 7)) % 7 for h in range(7)] for g in range(3)]
    grp = semidirect_product(c3, c7, action, name="c7:c3")
    assert grp.order == 21 and not grp.is_abelian
    return grp


def psl_2_7() -> FiniteGroup:
    """Order-168 simple group from two fixed permutations of 8 points."""
    gens = [
        Permutation.from_cycles(8, [(1, 2, 3, 4, 5, 6, 7)]),
        Permutation.from_cycles(8, [(1, 8), (2, 7), (3, 4), (5, 6)]),
    ]
    grp = closure(gens, 8, name="psl(2,7)")
    assert grp.order == 168, f"expected order 168, got {grp.order}"
    assert is_simple(grp)
    return grp


def _base_builders(max_order: int, order_cap: int) -> list[tuple[str, int, Callable[[], FiniteGroup]]]:
    """(name, order, builder) for base members, pre-filtered by known order."""
    import math

    out: list[tuple[str, int, Callable[[], FiniteGroup]]] = []
    for n in range(1, 65):
        out.append((f"cyclic({n})", n, lambda n=n: cyclic(n)))
    for n in range(3, 65):
        out.append((f"dihedral({n})", 2 * n, lambda n=n: dihedral(n, order_cap=order_cap)))
    for n in range(1, 8):
        out.append((f"sym({n})", math.factorial(n), lambda n=n: symmetric(n, order_cap=order_cap)))
    for n in range(1, 8):
        order = math.factorial(n) // 2 if n >= 2 else 1
        out.append((f"alt({n})", order, lambda n=n: alternating(n, order_cap=order_cap)))
    out.append(("q8", 8, quaternion))
    out.append(("c7:c3", 21, order21_nonabelian))
    out.append(("psl(2,7)", 168, psl_2_7))
    return [(name, order, build) for name, order, build in out if order <= max_order]


def _make_entry(name: str, spec_text: str | None, group: FiniteGroup, normal_cap: int) -> CatalogEntry:
    report = commuting_probability(group, verify=True)
    return CatalogEntry(
        name=name,
        spec_text=spec_text,
        group=group,
        cp=report.cp,
        class_number=report.class_number,
        order=group.order,
        abelian=group.is_abelian,
        simple=is_simple(group, cap=max(normal_cap, group.order)),
        solvable=is_solvable(group),
    )


def builtin_catalog(
    max_order: int = DEFAULT_CATALOG_MAX_ORDER,
    *,
    order_cap: int = DEFAULT_ORDER_CAP,
    normal_cap: int = DEFAULT_NORMAL_ENUM_CAP,
) -> list[CatalogEntry]:
    """Deterministic catalog of every member with order <= max_order."""
    if max_order < 1:
        raise InvalidParameter("max_order must be >= 1")
    if max_order > order_cap:
        raise InvalidParameter(f"max_order {max_order} exceeds order cap {order_cap}")

    base: list[CatalogEntry] = []
    for name, _, build in _base_builders(max_order, order_cap):
        grp = build()
        spec_text = name if name not in ("c7:c3", "psl(2,7)") else None
        base.append(_make_entry(name, spec_text, grp, normal_cap))

    entries = list(base)
    for i, left in enumerate(base):
        for right in base[i:]:
            if left.order * right.order > max_order:
                continue
            product = direct_product(left.group, right.group, order_cap=order_cap)
            name = f"prod({left.name},{right.name})"
            spec_text = (
                name if left.spec_text is not None and right.spec_text is not None else None
            )
            entries.append(_make_entry(name, spec_text, product, normal_cap))

    entries.sort(key=lambda e: e.name)
    names = [e.name for e in entries]
    assert len(set(names)) == len(names), "catalog names must be unique"
    return entries


@dataclass(frozen=True)
class SpectrumReport:
    """Distinct cp values over a catalog, with witnesses.

    ``values`` is strictly descending; ``dyadic`` decomposes every value
    in (1/2, 1) as 1/2 + 1/2**(2s+1), recording None for any value that
    fails the form (a reportable finding).
    """

    max_order: int
    values: tuple[tuple[Fraction, tuple[str, ...]], ...]
    max_nonabelian: Fraction | None
    dyadic: tuple[tuple[Fraction, int | None], ...]


def spectrum_from_entries(entries: Iterable[CatalogEntry], max_order: int) -> SpectrumReport:
    witnesses: dict[Fraction, list[str]] = {}
    max_nonabelian: Fraction | None = None
    for entry in entries:
        witnesses.setdefault(entry.cp, []).append(entry.name)
        if not entry.abelian and (max_nonabelian is None or entry.cp > max_nonabelian):
            max_nonabelian = entry.cp
    values = tuple(
        (value, tuple(sorted(witnesses[value])))
        for value in sorted(witnesses, reverse=True)
    )
    dyadic = tuple(
        (value, dyadic_form_exponent(value))
        for value, _ in values
        if Fraction(1, 2) < value < 1
    )
    return SpectrumReport(
        max_order=max_order, values=values, max_nonabelian=max_nonabelian, dyadic=dyadic
    )


def spectrum(
    max_order: int = DEFAULT_CATALOG_MAX_ORDER,
    *,
    order_cap: int = DEFAULT_ORDER_CAP,
    normal_cap: int = DEFAULT_NORMAL_ENUM_CAP,
) -> SpectrumReport:
    entries = builtin_catalog(max_order, order_cap=order_cap, normal_cap=normal_cap)
    return spectrum_from_entries(entries, max_order)


# -- exports -----------------------------------------------------------------


def _bool_str(x: bool) -> str:
    return "true" if x else "false"


def render_spectrum_csv(report: SpectrumReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["cp_num", "cp_den", "witnesses"])
    for value, names in report.values:
        writer.writerow([value.numerator, value.denominator, ";".join(names)])
    return buf.getvalue()


def render_spectrum_json(report: SpectrumReport) -> str:
    dyadic = dict((fraction_str(v), s) for v, s in report.dyadic)
    payload = {
        "version": __version__,
        "max_order": report.max_order,
        "max_nonabelian": None
        if report.max_nonabelian is None
        else fraction_str(report.max_nonabelian),
        "values": [
            {
                "cp": fraction_str(value),
                "witnesses": list(names),
                "dyadic_s": dyadic.get(fraction_str(value)),
            }
            for value, names in report.values
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def render_catalog_csv(entries: Iterable[CatalogEntry]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(
        buf,
        fieldnames=["name", "order", "cp_num", "cp_den", "classes", "abelian", "simple", "solvable"],
        lineterminator="\n",
    )
    writer.writeheader()
    for entry in entries:
        row = entry.to_row()
        for key in ("abelian", "simple", "solvable"):
            row[key] = _bool_str(row[key])
        writer.writerow(row)
    return buf.getvalue()


def render_catalog_json(entries: Iterable[CatalogEntry]) -> str:
    payload = {
        "version": __version__,
        "entries": [entry.to_row() for entry in entries],
    }
    return json.dumps(payload, indent=2) + "\n"


def export(report: SpectrumReport, format: str, path: str | Path) -> None:
    """Write a spectrum report to ``path`` as csv or json (bit-stable)."""
    if format == "csv":
        text = render_spectrum_csv(report)
    elif format == "json":
        text = render_spectrum_json(report)
    else:
        raise InvalidParameter(f"unknown export format {format!r}")
    Path(path).write_text(text, encoding="utf-8")


def export_catalog(entries: Iterable[CatalogEntry], format: str, path: str | Path) -> None:
    """Write catalog rows to ``path`` as csv or json (bit-stable)."""
    if format == "csv":
        text = render_catalog_csv(entries)
    elif format == "json":
        text = render_catalog_json(entries)
    else:
        raise InvalidParameter(f"unknown export format {format!r}")
    Path(path).write_text(text, encoding="utf-8")
