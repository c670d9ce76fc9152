"""Exhaustive theorem sweeps over enumerated structures and the zoo.

The sweep replays every law-transfer statement on every Ehresmann
semigroup up to a given size and on the catalogued examples, and reduces
the outcomes to named criteria.  Records are keyed canonically so the
JSON report is byte-identical regardless of worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from . import zoo
from .category import (
    category_of,
    check_prop_oc_equivalences,
    check_ehresmann_category_two_orders,
    derive_biaction,
    esn_round_trip,
    partial_product_category,
    verify_biaction,
)
from .core import (
    check_de_barros_equational,
    check_left_restriction_with_range,
    check_restriction,
    check_right_restriction_with_domain,
)
from .orders import (
    OrderedSemigroup,
    check_OS_property,
    check_leq_e_partial_laws,
    derive_orders,
    enumerate_ehresmann_orders,
    is_de_barros,
    leq_e_containment,
    semilattice_order_agreement,
    smallest_order_check,
)
from .category import check_special_correspondences

SCHEMA = "ehresmann-sweep/1"


def _ordered_instance_record(osg: OrderedSemigroup, natural: bool) -> dict:
    s = osg.base
    os4 = check_OS_property(osg, "OS4").holds
    os7 = check_OS_property(osg, "OS7").holds
    os4a = check_OS_property(osg, "OS4A").holds
    os4b = check_OS_property(osg, "OS4B").holds
    lrr = check_left_restriction_with_range(s).holds
    rrd = check_right_restriction_with_domain(s).holds
    restr = check_restriction(s).holds
    c = category_of(osg)
    bia = verify_biaction(c, derive_biaction(c))
    return {
        "os4": os4,
        "os7": os7,
        "os4_implies_os7": (not os4) or os7,
        "os4_order_is_natural": (not os4) or natural,
        "os4a_bicond": os4a == (lrr and natural),
        "os4b_bicond": os4b == (rrd and natural),
        "restriction_bicond": (os4a and os4b) == (restr and natural),
        "lemma_containment": leq_e_containment(osg).holds,
        "semilattice_agreement": semilattice_order_agreement(osg).holds,
        "esn_round_trip": esn_round_trip(osg).holds,
        "biaction": bia.holds,
        "oc_equivalences": check_prop_oc_equivalences(c).holds,
        "special_correspondences": check_special_correspondences(osg).holds,
    }


def _base_record(s) -> dict:
    partial = check_leq_e_partial_laws(s)
    db = is_de_barros(s)
    eq = check_de_barros_equational(s)
    rec = {
        "n": s.n,
        "leq_e_partial_laws": dict((k, v) for k, v in partial.parts),
        "de_barros": db.holds,
        "de_barros_equational": eq.holds,
        "de_barros_agreement": db.holds == eq.holds,
        "os3_matches_de_barros": partial.holds == db.holds,
    }
    two = derive_orders(s)
    c0 = partial_product_category(s)
    rec["two_order_category"] = check_ehresmann_category_two_orders(
        c0, two.leq_l, two.leq_r
    ).holds
    return rec


def _enumerated_record(item: tuple[str, object]) -> tuple[str, dict]:
    sid, s = item
    rec = _base_record(s)
    leq_e = derive_orders(s).leq_e
    orders = enumerate_ehresmann_orders(s)
    rec["order_count"] = len(orders)
    per_order = []
    os4_seen = False
    for order in orders:
        osg = OrderedSemigroup(s, order)
        inst = _ordered_instance_record(osg, natural=order.rel == leq_e.rel)
        os4_seen = os4_seen or inst["os4"]
        per_order.append(inst)
    rec["orders"] = per_order
    rec["os4_exists_iff_de_barros"] = os4_seen == rec["de_barros"]
    if rec["de_barros"]:
        rec["smallest_order"] = smallest_order_check(s).holds
    return sid, rec


def _zoo_record(name: str) -> tuple[str, dict]:
    entry = zoo.get(name)
    rec = _base_record(entry.structure)
    rec["orders"] = []
    for oname, order in entry.orders:
        osg = OrderedSemigroup(entry.structure, order)
        leq_e = derive_orders(entry.structure).leq_e
        inst = _ordered_instance_record(osg, natural=order.rel == leq_e.rel)
        inst["order_name"] = oname
        rec["orders"].append(inst)
    return name, rec


def _criteria(records: list[dict]) -> dict:
    def every(key: str) -> bool:
        ok = True
        for rec in records:
            for inst in rec.get("orders", []):
                ok = ok and inst[key]
        return ok

    def every_base(key: str) -> bool:
        return all(rec[key] for rec in records if key in rec)

    return {
        "lemma-containment": every("lemma_containment"),
        "leq-e-partial-laws": every_base("os3_matches_de_barros")
        and every_base("de_barros_agreement")
        and all(
            all(rec["leq_e_partial_laws"][k] for k in ("OS1", "OS2", "OS6", "OSI"))
            for rec in records
        ),
        "os4-de-barros": every_base("os4_exists_iff_de_barros")
        and every("os4_implies_os7")
        and every("os4_order_is_natural"),
        "restriction-biconditionals": every("os4a_bicond")
        and every("os4b_bicond")
        and every("restriction_bicond"),
        "esn-round-trip": every("esn_round_trip"),
        "biaction": every("biaction"),
        "oc-equivalences": every("oc_equivalences"),
        "special-correspondences": every("special_correspondences"),
        "semilattice-agreement": every("semilattice_agreement"),
        "two-order-categories": every_base("two_order_category"),
        "smallest-order": every_base("smallest_order"),
    }


def run_sweep(max_size: int = 3, jobs: int = 1, include_zoo: bool = True) -> dict:
    """Run the full theorem sweep and return a JSON-ready report."""
    items: list[tuple[str, object]] = []
    for n in range(1, max_size + 1):
        for i, s in enumerate(zoo.enumerate_ehresmann_semigroups(n)):
            items.append((f"n{n}-{i:04d}", s))
    if jobs <= 1:
        enumerated = [_enumerated_record(item) for item in items]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            enumerated = list(ex.map(_enumerated_record, items))
    zoo_records: list[tuple[str, dict]] = []
    if include_zoo:
        names = list(zoo.SWEEP_NAMES) + ["orderless-band"]
        if jobs <= 1:
            zoo_records = [_zoo_record(name) for name in names]
        else:
            with ThreadPoolExecutor(max_workers=jobs) as ex:
                zoo_records = list(ex.map(_zoo_record, names))
    all_records = [rec for _, rec in enumerated] + [rec for _, rec in zoo_records]
    criteria = _criteria(all_records)
    return {
        "schema": SCHEMA,
        "max_size": max_size,
        "structure_count": len(items),
        "structures": {sid: rec for sid, rec in enumerated},
        "zoo": {name: rec for name, rec in zoo_records},
        "criteria": criteria,
        "all_pass": all(criteria.values()),
    }
