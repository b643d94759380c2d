"""Command-line interface.

Subcommands: cp, classes, verify, spectrum, estimate, partitions.
Machine formats (json, csv) print rationals as ``num/den`` and are
byte-identical across runs of one version for identical argv.

Exit codes: 0 all good, 1 a theorem check failed (implementation bug),
2 usage or parse/build error, 3 a resource cap was hit.  Errors print
one ``error: <Kind>: <message>`` line on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import run_suite, suite_findings, suite_holds
from .catalog import (
    builtin_catalog,
    render_catalog_csv,
    render_catalog_json,
    render_spectrum_csv,
    render_spectrum_json,
    spectrum_from_entries,
)
from .commuting import (
    commuting_probability,
    cp_centralizer_sum,
    cp_class_count,
    cp_pairs,
    mc_estimate,
)
from .errors import (
    CommprobError,
    FormulaMismatch,
    MethodDisagreement,
    OrderCapExceeded,
    ParseError,
)
from .groups import DEFAULT_ORDER_CAP
from .partitions import build_partition_table
from .specparse import build_from_text
from .structure import DEFAULT_NORMAL_ENUM_CAP, conjugacy_classes
from .util import fraction_str

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3


@dataclass
class CliConfig:
    order_cap: int
    normal_enum_cap: int
    format: str
    seed: int = 0
    samples: int = 10000
    out: Path | None = None


def _env_order_cap() -> int:
    raw = os.environ.get("COMMPROB_ORDER_CAP")
    if raw is None:
        return DEFAULT_ORDER_CAP
    try:
        return int(raw)
    except ValueError:
        raise CommprobError(f"COMMPROB_ORDER_CAP must be an integer, got {raw!r}")


def _fmt_text_fraction(x: Fraction) -> str:
    return f"{fraction_str(x)} ({float(x):.6f})"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commprob",
        description="Exact commuting-probability toolkit for finite groups.",
    )
    parser.add_argument("--version", action="version", version=f"commprob {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("text", "json", "csv"),
        default="text",
        help="output format (default text)",
    )
    common.add_argument(
        "--order-cap",
        type=int,
        default=None,
        help="largest group order constructions may produce "
        "(default 10080, or COMMPROB_ORDER_CAP)",
    )
    common.add_argument(
        "--normal-cap",
        type=int,
        default=DEFAULT_NORMAL_ENUM_CAP,
        help="largest order for normal-subgroup enumeration (default 2520)",
    )
    common.add_argument(
        "--verify",
        action="store_true",
        help="recompute cp by all three exact methods and require agreement",
    )
    common.add_argument("--out", type=Path, default=None, help="write output to this file")

    sub = parser.add_subparsers(dest="command", required=True)

    p_cp = sub.add_parser("cp", parents=[common], help="exact commuting probability of a group spec")
    p_cp.add_argument("spec", help='group spec, e.g. "sym(3)" or "prod(q8,cyclic(3))"')

    p_classes = sub.add_parser("classes", parents=[common], help="conjugacy class decomposition")
    p_classes.add_argument("spec")

    p_verify = sub.add_parser(
        "verify", parents=[common], help="run the full bound suite; exit 0 iff every check holds"
    )
    p_verify.add_argument("spec")

    p_spec = sub.add_parser("spectrum", parents=[common], help="cp spectrum of the built-in catalog")
    p_spec.add_argument("--max-order", type=int, default=128, help="catalog order bound (default 128)")
    p_spec.add_argument("--plot", type=Path, default=None, help="also render a figure to this file")
    p_spec.add_argument(
        "--catalog-out", type=Path, default=None, help="also write per-group catalog rows here"
    )

    p_est = sub.add_parser("estimate", parents=[common], help="seeded Monte Carlo estimate of cp")
    p_est.add_argument("spec")
    p_est.add_argument("--samples", type=int, default=10000)
    p_est.add_argument("--seed", type=int, default=0)

    p_part = sub.add_parser(
        "partitions",
        parents=[common],
        aliases=["partition-table"],
        help="table of partition counts n, p, q, r, s",
    )
    p_part.add_argument("--max", type=int, default=20, dest="max_n")
    p_part.add_argument("--plot", type=Path, default=None, help="also render a figure to this file")

    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(out).write_text(text, encoding="utf-8")


def _cmd_cp(args) -> int:
    grp = build_from_text(args.spec, order_cap=args.order_cap)
    report = commuting_probability(grp, verify=args.verify)
    if args.format == "json":
        payload = report.to_json_dict()
        if args.verify:
            payload["verified"] = True
            payload["methods"] = {
                r.method: fraction_str(r.cp)
                for r in (cp_pairs(grp), cp_centralizer_sum(grp), cp_class_count(grp))
            }
        _emit(json.dumps(payload) + "\n", args.out)
    elif args.format == "csv":
        lines = ["group,order,pairs,classes,cp_num,cp_den"]
        lines.append(
            f"{_csv_quote(report.group)},{report.order},{report.pair_count},"
            f"{report.class_number},{report.cp.numerator},{report.cp.denominator}"
        )
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = [
            f"group: {report.group}",
            f"order: {report.order}",
            f"commuting pairs: {report.pair_count}",
            f"conjugacy classes: {report.class_number}",
            f"cp = {_fmt_text_fraction(report.cp)}",
        ]
        if args.verify:
            lines.append("verified: pairs, centralizer sum and class count agree")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _csv_quote(value: str) -> str:
    if any(ch in value for ch in ',"\n'):
        return '"' + value.replace('"', '""') + '"'
    return value


def _cmd_classes(args) -> int:
    grp = build_from_text(args.spec, order_cap=args.order_cap)
    dec = conjugacy_classes(grp)
    if args.format == "json":
        _emit(dec.to_json() + "\n", args.out)
    elif args.format == "csv":
        lines = ["class,size"] + [f"{i},{size}" for i, size in enumerate(dec.sizes())]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = [
            f"group: {grp.name}",
            f"class number K = {dec.class_number}",
            f"class sizes: {list(dec.sizes())}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    grp = build_from_text(args.spec, order_cap=args.order_cap)
    reports = run_suite(grp, normal_cap=args.normal_cap)
    ok = suite_holds(reports)
    findings = suite_findings(reports)
    if args.format == "json":
        payload = {
            "group": grp.name,
            "version": __version__,
            "all_hold": ok,
            "reports": [r.to_json_dict() for r in reports],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    elif args.format == "csv":
        lines = ["theorem,applicable,lhs,rhs,holds,equality,equality_condition,context"]
        for r in reports:
            d = r.to_json_dict()
            lines.append(
                ",".join(
                    [
                        d["theorem"],
                        str(d["applicable"]).lower(),
                        d["lhs"] or "",
                        d["rhs"] or "",
                        str(d["holds"]).lower(),
                        str(d["equality"]).lower(),
                        "" if d["equality_condition"] is None else str(d["equality_condition"]).lower(),
                        _csv_quote(d["context"]),
                    ]
                )
            )
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = [f"bound suite for {grp.name} (order {grp.order})"]
        for r in reports:
            if not r.applicable:
                status = "n/a"
            elif not r.holds:
                status = "FINDING" if r.external_claim else "FAIL"
            elif r.equality:
                status = "equality"
            else:
                status = "holds"
            lhs = "" if r.lhs is None else fraction_str(r.lhs)
            rhs = "" if r.rhs is None else fraction_str(r.rhs)
            ctx = f"  [{r.context}]" if r.context else ""
            cond = "" if r.equality_condition_holds is None else f"  condition={r.equality_condition_holds}"
            lines.append(f"  {r.theorem:<28} {status:<9} lhs={lhs:<12} rhs={rhs:<12}{cond}{ctx}")
        lines.append(f"result: {'all checks hold' if ok else 'CHECK FAILED'}")
        for r in findings:
            lines.append(f"finding: {r.theorem} does not hold for {grp.name}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_spectrum(args) -> int:
    entries = builtin_catalog(
        args.max_order, order_cap=args.order_cap, normal_cap=args.normal_cap
    )
    report = spectrum_from_entries(entries, args.max_order)
    if args.format == "json":
        text = render_spectrum_json(report)
    elif args.format == "csv":
        text = render_spectrum_csv(report)
    else:
        lines = [
            f"catalog: {len(entries)} groups of order <= {args.max_order}",
            f"distinct cp values: {len(report.values)}",
            "max non-abelian cp: "
            + ("n/a" if report.max_nonabelian is None else _fmt_text_fraction(report.max_nonabelian)),
        ]
        for value, names in report.values:
            shown = ", ".join(names[:4]) + (", ..." if len(names) > 4 else "")
            lines.append(f"  {fraction_str(value):>10}  ({len(names)} witnesses: {shown})")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if args.catalog_out is not None:
        suffix = Path(args.catalog_out).suffix.lower()
        render = render_catalog_json if suffix == ".json" else render_catalog_csv
        Path(args.catalog_out).write_text(render(entries), encoding="utf-8")
    if args.plot is not None:
        from .plotting import save_spectrum_plot

        save_spectrum_plot(entries, args.plot)
    return EXIT_OK


def _cmd_estimate(args) -> int:
    grp = build_from_text(args.spec, order_cap=args.order_cap)
    est = mc_estimate(grp, args.samples, args.seed)
    if args.format == "json":
        payload = {"group": grp.name, **est.to_json_dict()}
        _emit(json.dumps(payload) + "\n", args.out)
    elif args.format == "csv":
        lines = [
            "group,samples,hits,estimate,ci_low,ci_high,seed",
            f"{_csv_quote(grp.name)},{est.samples},{est.hits},{fraction_str(est.estimate)},"
            f"{fraction_str(est.ci_low)},{fraction_str(est.ci_high)},{est.seed}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = [
            f"group: {grp.name}",
            f"samples: {est.samples}, hits: {est.hits}, seed: {est.seed}",
            f"estimate = {_fmt_text_fraction(est.estimate)}",
            f"99% Wilson interval: [{float(est.ci_low):.6f}, {float(est.ci_high):.6f}]",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_partitions(args) -> int:
    table = build_partition_table(args.max_n)
    if args.format == "json":
        payload = {
            "max_n": table.max_n,
            "rows": [
                {"n": n, "p": table.p[n], "q": table.q[n], "r": table.r[n], "s": table.s[n]}
                for n in range(table.max_n + 1)
            ],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    elif args.format == "csv":
        lines = ["n,p,q,r,s"] + [
            f"{n},{table.p[n]},{table.q[n]},{table.r[n]},{table.s[n]}"
            for n in range(table.max_n + 1)
        ]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        width = max(len(str(table.p[table.max_n])), 6)
        lines = [f"{'n':>4} {'p':>{width}} {'q':>{width}} {'r':>{width}} {'s':>{width}}"]
        for n in range(table.max_n + 1):
            lines.append(
                f"{n:>4} {table.p[n]:>{width}} {table.q[n]:>{width}} "
                f"{table.r[n]:>{width}} {table.s[n]:>{width}}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    if args.plot is not None:
        from .plotting import save_partition_plot

        save_partition_plot(table, args.plot)
    return EXIT_OK


_COMMANDS = {
    "cp": _cmd_cp,
    "classes": _cmd_classes,
    "verify": _cmd_verify,
    "spectrum": _cmd_spectrum,
    "estimate": _cmd_estimate,
    "partitions": _cmd_partitions,
    "partition-table": _cmd_partitions,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "order_cap", None) is None:
        args.order_cap = _env_order_cap()
    try:
        return _COMMANDS[args.command](args)
    except (MethodDisagreement, FormulaMismatch) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except OrderCapExceeded as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ParseError as exc:
        print(f"error: ParseError: {exc} in spec {getattr(args, 'spec', '')!r}", file=sys.stderr)
        return EXIT_USAGE
    except CommprobError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: IOError: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
