"""Command surface: classification ladders, order tools, category tools, sweeps.

Exit codes: 0 when every requested check holds, 1 when some law fails
(witnesses are in the report), 2 for structural or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import zoo
from .category import (
    FiniteOrderedCategory,
    category_of,
    check_ehresmann_category_two_orders,
    check_ehresmann_ordered_category,
    check_omega_structured,
    check_OC_property,
    check_prop_oc_equivalences,
    check_special_correspondences,
    derive_biaction,
    esn_round_trip,
    esn_round_trip_category,
    partial_product_category,
    verify_biaction,
)
from .core import (
    FiniteBiunarySemigroup,
    LawReport,
    StructureError,
    WorkbenchError,
    check_associativity,
    check_de_barros_equational,
    check_ehresmann,
    check_functional,
    check_left_restriction_with_range,
    check_localisable,
    check_restriction,
    check_right_restriction_with_domain,
)
from .fileformat import StructureFile, emit_structure, resolve, semigroup_file
from .orders import (
    OrderedSemigroup,
    check_OS_property,
    check_ehresmann_order,
    check_leq_e_partial_laws,
    derive_orders,
    enumerate_ehresmann_orders,
    is_de_barros,
    leq_e_containment,
    semilattice_order_agreement,
    smallest_order_check,
)
from .sweep import run_sweep

SCHEMA = "ehresmann-report/1"

SEMIGROUP_LADDER = (
    "associativity",
    "localisable",
    "ehresmann",
    "left-restriction-with-range",
    "right-restriction-with-domain",
    "restriction",
    "functional",
    "de-barros",
)
ORDER_LADDER = (
    "ehresmann-order",
    "semilattice-order-agreement",
    "leq-e-containment",
    "os4",
    "os4a",
    "os4b",
    "os7",
)
CATEGORY_LADDER = ("omega-structured", "ehresmann-ordered-category", "oc-equivalences")


@dataclass
class RunReport:
    command: list[str]
    kind: str = ""
    summary: dict = field(default_factory=dict)
    reports: list[LawReport] = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)
    exit_code: int = 0
    text_lines: list[str] = field(default_factory=list)
    json_requested: bool = False
    # when set, --json emits this document instead of the wrapped report;
    # used by sweep so its bytes do not depend on worker count
    raw_json: str | None = None

    def to_json(self) -> str:
        payload = {
            "schema": SCHEMA,
            "command": self.command,
            "kind": self.kind,
            "summary": self.summary,
            "reports": [r.to_dict() for r in self.reports],
            "artifacts": self.artifacts,
            "exit_code": self.exit_code,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = list(self.text_lines)
        for r in self.reports:
            status = "PASS" if r.holds else "FAIL"
            extra = ""
            if not r.applicable:
                extra = " (not applicable)"
            if r.witness is not None:
                extra += f" witness={list(r.witness)}"
            if r.detail:
                extra += f" :: {r.detail}"
            lines.append(f"{r.law}: {status}{extra}")
        return "\n".join(lines) + ("\n" if lines else "")


def _summary_of(sf: StructureFile) -> dict:
    if sf.kind == "semigroup":
        s = sf.semigroup
        return {
            "n": s.n,
            "names": [s.name_of(i) for i in range(s.n)],
            "has_order": sf.order is not None,
        }
    c = sf.category
    return {
        "n": c.n,
        "names": [c.name_of(i) for i in range(c.n)],
        "identities": [c.name_of(i) for i in c.identities()],
    }


def _semigroup_law_runners(sf: StructureFile) -> dict:
    s = sf.semigroup

    def with_order(fn):
        def run():
            if sf.order is None:
                return LawReport(
                    "order-law", False, detail="the file carries no order section", applicable=False
                )
            return fn(OrderedSemigroup(s, sf.order))

        return run

    return {
        "associativity": lambda: check_associativity(s),
        "localisable": lambda: check_localisable(s),
        "ehresmann": lambda: check_ehresmann(s),
        "left-restriction-with-range": lambda: check_left_restriction_with_range(s),
        "right-restriction-with-domain": lambda: check_right_restriction_with_domain(s),
        "restriction": lambda: check_restriction(s),
        "functional": lambda: check_functional(s),
        "de-barros": lambda: is_de_barros(s),
        "de-barros-equational": lambda: check_de_barros_equational(s),
        "leq-e-partial-laws": lambda: check_leq_e_partial_laws(s),
        "smallest-ehresmann-order": lambda: smallest_order_check(s),
        "ehresmann-order": with_order(check_ehresmann_order),
        "semilattice-order-agreement": with_order(semilattice_order_agreement),
        "leq-e-containment": with_order(leq_e_containment),
        "os4": with_order(lambda o: check_OS_property(o, "OS4")),
        "os4a": with_order(lambda o: check_OS_property(o, "OS4A")),
        "os4b": with_order(lambda o: check_OS_property(o, "OS4B")),
        "os7": with_order(lambda o: check_OS_property(o, "OS7")),
    }


def _category_law_runners(c: FiniteOrderedCategory) -> dict:
    runners = {
        "omega-structured": lambda: check_omega_structured(c),
        "ehresmann-ordered-category": lambda: check_ehresmann_ordered_category(c),
        "oc-equivalences": lambda: check_prop_oc_equivalences(c),
    }
    for prop in ("OC4", "OC4A", "OC4B", "OC6", "OC6A", "OC6B", "OC7", "OC7'", "OC8", "OC8A", "OC8B", "OCI"):
        runners[prop.lower()] = lambda p=prop: check_OC_property(c, p)
    runners["oc7p"] = runners["oc7'"]  # apostrophe-free spelling for shells
    return runners


def _order_pairs_named(s, order) -> list[str]:
    return [f"{s.name_of(a)} <= {s.name_of(b)}" for a, b in order.pairs(strict=True)]


def _cmd_check(args, report: RunReport) -> None:
    sf = resolve(args.file)
    report.kind = sf.kind
    report.summary = _summary_of(sf)
    if sf.kind == "semigroup":
        runners = _semigroup_law_runners(sf)
        if args.law:
            wanted = [w.lower() for w in args.law]
            unknown = [w for w in wanted if w not in runners]
            if unknown:
                raise StructureError(f"unknown law name(s): {', '.join(unknown)}")
        else:
            wanted = list(SEMIGROUP_LADDER)
            if sf.order is not None:
                wanted += list(ORDER_LADDER)
        for name in wanted:
            report.reports.append(runners[name]())
    else:
        runners = _category_law_runners(sf.category)
        if args.law:
            wanted = [w.lower() for w in args.law]
            unknown = [w for w in wanted if w not in runners]
            if unknown:
                raise StructureError(f"unknown law name(s): {', '.join(unknown)}")
        else:
            wanted = list(CATEGORY_LADDER)
        for name in wanted:
            report.reports.append(runners[name]())
    report.exit_code = 0 if all(r.holds for r in report.reports) else 1


def _cmd_orders(args, report: RunReport) -> None:
    sf = resolve(args.file)
    if sf.kind != "semigroup":
        raise StructureError("orders applies to semigroup files")
    s = sf.semigroup
    report.kind = sf.kind
    report.summary = _summary_of(sf)
    found = enumerate_ehresmann_orders(s, up_to_iso=args.up_to_iso, jobs=args.jobs)
    report.artifacts["count"] = len(found)
    report.artifacts["up_to_iso"] = bool(args.up_to_iso)
    report.text_lines.append(f"ehresmann orders: {len(found)}")
    if not args.count_only:
        report.artifacts["orders"] = [
            _order_pairs_named(s, order) for order in found
        ]
        for i, order in enumerate(found):
            pairs = ", ".join(_order_pairs_named(s, order)) or "(equality)"
            report.text_lines.append(f"  order {i}: {pairs}")


def _cmd_derive(args, report: RunReport) -> None:
    sf = resolve(args.file)
    if sf.kind != "semigroup":
        raise StructureError("derive applies to semigroup files")
    s = sf.semigroup
    report.kind = sf.kind
    report.summary = _summary_of(sf)
    ders = derive_orders(s)
    order = {"l": ders.leq_l, "r": ders.leq_r, "e": ders.leq_e}[args.order]
    report.artifacts["order"] = args.order
    report.artifacts["pairs"] = _order_pairs_named(s, order)
    report.artifacts["matrix"] = [[int(v) for v in row] for row in order.rel]
    report.text_lines.append(f"derived order {args.order}:")
    for line in report.artifacts["pairs"]:
        report.text_lines.append(f"  {line}")
    if not report.artifacts["pairs"]:
        report.text_lines.append("  (equality)")


def _load_category(sf: StructureFile) -> FiniteOrderedCategory:
    if sf.kind == "category":
        return sf.category
    return category_of(sf.ordered())


def _cmd_cat(args, report: RunReport) -> None:
    sf = resolve(args.file)
    report.kind = sf.kind
    report.summary = _summary_of(sf)
    if args.two_orders:
        if sf.kind != "semigroup":
            raise StructureError("--two-orders applies to semigroup files")
        ders = derive_orders(sf.semigroup)
        c0 = partial_product_category(sf.semigroup)
        report.reports.append(
            check_ehresmann_category_two_orders(c0, ders.leq_l, ders.leq_r)
        )
        report.exit_code = 0 if all(r.holds for r in report.reports) else 1
        return
    c = _load_category(sf)
    runners = _category_law_runners(c)
    wanted = [w.lower() for w in args.check] if args.check else list(CATEGORY_LADDER)
    unknown = [w for w in wanted if w not in runners]
    if unknown:
        raise StructureError(f"unknown OC law name(s): {', '.join(unknown)}")
    for name in wanted:
        report.reports.append(runners[name]())
    if args.biaction:
        b = derive_biaction(c)
        report.reports.append(verify_biaction(c, b))
        report.artifacts["biaction"] = {
            "left": [
                [None if v is None else c.name_of(v) for v in row] for row in b.left
            ],
            "right": [
                [None if v is None else c.name_of(v) for v in row] for row in b.right
            ],
        }
    report.exit_code = 0 if all(r.holds for r in report.reports) else 1


def _cmd_esn(args, report: RunReport) -> None:
    sf = resolve(args.file)
    report.kind = sf.kind
    report.summary = _summary_of(sf)
    if sf.kind == "semigroup":
        osg = sf.ordered()
        report.reports.append(esn_round_trip(osg))
        report.reports.append(check_special_correspondences(osg))
    else:
        report.reports.append(esn_round_trip_category(sf.category))
    report.exit_code = 0 if all(r.holds for r in report.reports) else 1


def _structure_as_dict(s: FiniteBiunarySemigroup) -> dict:
    return {
        "n": s.n,
        "mul": [list(row) for row in s.mul],
        "D": list(s.dmap),
        "R": list(s.rmap),
    }


def _cmd_enumerate(args, report: RunReport) -> None:
    report.kind = "enumeration"
    stream = zoo.enumerate_ehresmann_semigroups(
        args.size, up_to_iso=args.up_to_iso, allow_large=args.allow_large, jobs=args.jobs
    )
    structures = []
    for s in stream:
        if args.filter:
            runners = _semigroup_law_runners(semigroup_file(s))
            name = args.filter.lower()
            if name not in runners:
                raise StructureError(f"unknown law name {args.filter!r}")
            if not runners[name]().holds:
                continue
        structures.append(s)
    report.summary = {"size": args.size, "count": len(structures)}
    report.artifacts["count"] = len(structures)
    report.artifacts["structures"] = [_structure_as_dict(s) for s in structures]
    report.text_lines.append(f"structures: {len(structures)}")
    for s in structures:
        flat_mul = " ".join("".join(str(v) for v in row) for row in s.mul)
        d = "".join(str(v) for v in s.dmap)
        r = "".join(str(v) for v in s.rmap)
        report.text_lines.append(f"  mul={flat_mul} D={d} R={r}")


def _cmd_example(args, report: RunReport) -> None:
    entry = zoo.get(args.name)
    report.kind = "example"
    report.summary = {
        "name": entry.name,
        "n": entry.structure.n,
        "provenance": entry.provenance,
        "orders": list(entry.order_names()),
    }
    report.text_lines.append(
        f"{entry.name}: {entry.structure.n} elements, orders: "
        + (", ".join(entry.order_names()) or "none")
    )
    if args.emit:
        order = entry.orders[0][1] if entry.orders else None
        text = emit_structure(semigroup_file(entry.structure, order))
        report.artifacts["file"] = text
        report.text_lines = [text.rstrip("\n")]


def _cmd_sweep(args, report: RunReport) -> None:
    result = run_sweep(max_size=args.max_size, jobs=args.jobs)
    report.kind = "sweep"
    report.summary = {
        "max_size": result["max_size"],
        "structure_count": result["structure_count"],
    }
    report.artifacts = result
    report.raw_json = json.dumps(result, sort_keys=True, indent=2) + "\n"
    for name, ok in sorted(result["criteria"].items()):
        report.text_lines.append(f"{name}: {'PASS' if ok else 'FAIL'}")
    report.exit_code = 0 if result["all_pass"] else 1


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand's default from clobbering a --json given
    # before the subcommand name
    common.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON report"
    )
    parser = argparse.ArgumentParser(
        prog="ehresmann",
        description="Workbench for finite biunary semigroups, Ehresmann orders, and ordered categories",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", parents=[common], help="run the classification ladder")
    p.add_argument("file", help="structure file path or example://NAME")
    p.add_argument("--law", action="append", help="check only the named law (repeatable)")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("orders", parents=[common], help="enumerate Ehresmann orders")
    p.add_argument("file")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=_cmd_orders)

    p = sub.add_parser("derive", parents=[common], help="derive an algebraic order")
    p.add_argument("file")
    p.add_argument("--order", choices=("l", "r", "e"), required=True)
    p.set_defaults(fn=_cmd_derive)

    p = sub.add_parser("cat", parents=[common], help="build and check the category")
    p.add_argument("file")
    p.add_argument("--check", action="append", help="check the named OC law (repeatable)")
    p.add_argument("--biaction", action="store_true", help="derive and verify the biaction")
    p.add_argument(
        "--two-orders",
        action="store_true",
        help="check the two-order category laws with the derived left/right orders",
    )
    p.set_defaults(fn=_cmd_cat)

    p = sub.add_parser("esn", parents=[common], help="round trip and special correspondences")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_esn)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate Ehresmann semigroups")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--filter", help="keep only structures satisfying the named law")
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--allow-large", action="store_true", help="permit the long-running size 4")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("example", parents=[common], help="show a catalogued example")
    p.add_argument("name")
    p.add_argument("--emit", action="store_true", help="print it in the file format")
    p.set_defaults(fn=_cmd_example)

    p = sub.add_parser("sweep", parents=[common], help="run the exhaustive theorem sweep")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=_cmd_sweep)
    return parser


def run_command(argv: list[str]) -> RunReport:
    """Execute one CLI invocation and return its report."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        report = RunReport(command=list(argv), exit_code=2 if exc.code else 0)
        return report
    report = RunReport(command=list(argv))
    try:
        args.fn(args, report)
    except WorkbenchError as exc:
        report.exit_code = 2
        report.text_lines = [f"error: {exc}"]
        report.artifacts = {"error": str(exc)}
    report.json_requested = bool(getattr(args, "json", False))
    return report


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    report = run_command(argv)
    if report.json_requested:
        sys.stdout.write(report.raw_json if report.raw_json is not None else report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
