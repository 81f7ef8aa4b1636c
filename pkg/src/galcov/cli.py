"""Command-line front end (`hp`).

Exit status: 0 on a completed computation (negative answers included), 1 on usage or parse
errors, 3 when a search budget runs out.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .classify import (generic_exists, generic_extension_conditions, is_pgl2_subgroup,
                       laurent_parametric_condition, parse_field)
from .extensions import (ACTION_FILTERS, build_extension, cocycle_combinations, enumerate_actions,
                         format_report, replicate_appendix_checks, report_json, second_cohomology)
from .groups import GroupParseError, identify_family, make_group, parse_cycles
from .hurwitz import (BudgetExceeded, DEFAULT_BUDGET, RamificationType, UnrealizableType,
                      first_nielsen_tuple, genus, genus_from_orders, nielsen_tuples)
from .obstruction import build_Dy, certify_not_pullback, thm1b_threshold
from .pullback import (CoverCycles, PullbackProfile, abhyankar_pullback_type, fiber_product_oracle,
                       divisibility_counts, rt0_lower_bound)

EXIT_OK, EXIT_USAGE, EXIT_BUDGET = 0, 1, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _classes(text: str) -> tuple[str, ...]:
    return tuple(c.strip() for c in text.split(",") if c.strip())


def _type(group: str, classes: str) -> RamificationType:
    G = make_group(group)
    return RamificationType(G, _classes(classes))


def _budget(value: str) -> int:
    b = int(value)
    if b <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return b


# commands


def cmd_group_info(a):
    G = make_group(a.spec)
    return {"name": G.name, "order": G.order,
            "classes": [{"id": c.id, "order": c.order, "size": c.size, "rep": c.rep} for c in G.classes],
            "maximal_cyclic_class_count": G.maximal_cyclic_class_count(),
            "maximal_cyclic_orders": G.maximal_cyclic_orders(),
            "abelian": G.is_abelian(), "pgl2_family": identify_family(G)}


def cmd_nielsen_count(a):
    T = _type(a.group, a.classes)
    tuples = nielsen_tuples(T, a.budget)
    out = {"group": T.group.name, "classes": list(T.classes), "count": len(tuples)}
    if a.list:
        out["tuples"] = [list(t) for t in tuples]
    return out


def cmd_genus(a):
    if a.orders:
        if not a.group:
            raise UsageError("--orders needs --group")
        n = make_group(a.group).order
        return {"genus": genus_from_orders(n, _ints(a.orders))}
    if a.classes:
        return {"genus": genus(_type(a.group, a.classes))}
    raise UsageError("give --orders or --classes")


def _profile(text: str) -> PullbackProfile:
    try:
        return PullbackProfile.from_json(text)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"bad profile JSON: {exc}") from exc


def cmd_pullback_type(a):
    T = _type(a.group, a.classes)
    res = abhyankar_pullback_type(T, _profile(a.profile))
    return {"classes": list(res.multiset()), "r_t0": res.r_t0, "genus": res.genus,
            "connectivity": res.connectivity}


def cmd_pullback_bound(a):
    T = _type(a.group, a.classes)
    prof = _profile(a.profile)
    ac, b, usum = divisibility_counts(T, prof)
    return {"a": list(ac), "b": list(b), "usum": usum,
            "bound": rt0_lower_bound(T.orders, prof.degree, ac, usum)}


def cmd_pullback_oracle(a):
    G = make_group(a.group)
    g = _ints(a.g_tuple)
    sig_text = [s.strip() for s in a.sigma.split(";")]
    if len(sig_text) != len(g):
        raise UsageError("need one T0 cycle per f cycle (pad f with 0 at extra points)")
    n = a.degree
    sig = tuple(parse_cycles(s, degree=n) for s in sig_text)
    cc = CoverCycles(G, tuple(range(len(g))), tuple(g), sig)
    res = fiber_product_oracle(cc)
    return {"connected": res.connected, "components": res.components,
            "classes": sorted(res.classes(), key=G.resolve_class), "r_t0": res.r_t0,
            "genus": res.genus, "profile": res.profile.to_dict()}


def cmd_certify(a):
    f = _type(a.group, a.f_classes)
    t = RamificationType(f.group, _classes(a.target_classes))
    md = None if a.max_degree in (None, "auto") else int(a.max_degree)
    return certify_not_pullback(f, t, a.budget, md).to_dict()


def cmd_build_dy(a):
    T = _type(a.group, a.classes)
    tup = _ints(a.tuple) if a.tuple else first_nielsen_tuple(T, a.budget)
    if tup is None:
        raise ValueError("empty Nielsen class")
    D = build_Dy(T.group, tup, a.y)
    return {"tuple": list(tup), "y": a.y, "classes": list(D.classes), "genus": genus(D),
            "realizable": first_nielsen_tuple(D, a.budget) is not None}


def cmd_extensions(a):
    Q = make_group(a.quotient)
    keep = ACTION_FILTERS[a.filter]
    rows = []
    for spec in enumerate_actions(Q, a.p, a.u, a.budget):
        if not keep(spec):
            continue
        coh = second_cohomology(spec)
        exts = [build_extension(spec, c) for c in cocycle_combinations(spec, coh)]
        rows.append({"matrices": [[list(r) for r in A] for A in spec.matrices],
                     "h2_dim": coh.dim, "line_orbits": len(spec.line_orbits()),
                     "extensions": [{"order_histogram": sorted(_hist(E).items()),
                                     "maximal_cyclic_orders": E.maximal_cyclic_orders()} for E in exts]})
    return {"quotient": Q.name, "p": a.p, "u": a.u, "filter": a.filter, "actions": rows}


def _hist(E):
    out: dict[int, int] = {}
    for o in E.orders:
        out[o] = out.get(o, 0) + 1
    return out


def cmd_replicate(a):
    if a.what == "thm1b":
        return {"caps": {"p1+u1": 2, "p_j": [2, 2, 2]}, "threshold": thm1b_threshold(2, [2, 2, 2]),
                "derivation": "N < 6 * (2 + 2 + 2 + 2) = 48",
                "elementary_abelian_threshold": thm1b_threshold(0, [2] * 6, elementary_abelian=True)}
    if a.what == "genus0":
        from .sweeps import genus0_sweep
        rep = genus0_sweep()
        return {"groups": rep.groups, "types_checked": rep.types_checked,
                "families": sorted(rep.families), "genus0_types": len(rep.genus0),
                "unmatched": [list(map(str, u)) for u in rep.unmatched],
                "missing": [list(m) for m in rep.missing], "ok": rep.ok}
    results = replicate_appendix_checks(budget=a.budget)
    if a.json:
        return json.loads(report_json(results))
    return format_report(results)


def cmd_classify(a):
    if a.what == "pgl2":
        G = make_group(a.group)
        return {"group": G.name, "pgl2": is_pgl2_subgroup(G), "family": identify_family(G)}
    if a.what == "generic":
        G = make_group(a.group)
        k = parse_field(a.field)
        out = {"group": G.name, "field": str(k), "generic_exists": generic_exists(G, k)}
        if a.r is not None:
            out["conditions"] = generic_extension_conditions(G, a.r, a.branch_rational, k)
        return out
    if not a.classes:
        raise UsageError("classify laurent needs --classes")
    T = _type(a.group, a.classes)
    return {"group": T.group.name, "classes": list(T.classes), "laurent": laurent_parametric_condition(T)}


# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="canonical JSON output")
    common.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET)
    p = _Parser(prog="hp", description="Galois covers, rational pullbacks and their obstructions.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    grp = sub.add_parser("group", parents=[common]).add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s = grp.add_parser("info", parents=[common])
    s.add_argument("spec")
    s.set_defaults(func=cmd_group_info)

    ni = sub.add_parser("nielsen", parents=[common]).add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s = ni.add_parser("count", parents=[common])
    s.add_argument("--group", required=True)
    s.add_argument("--classes", required=True)
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_nielsen_count)

    s = sub.add_parser("genus", parents=[common])
    s.add_argument("--group")
    s.add_argument("--orders")
    s.add_argument("--classes")
    s.set_defaults(func=cmd_genus)

    pb = sub.add_parser("pullback", parents=[common]).add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name, fn in (("type", cmd_pullback_type), ("bound", cmd_pullback_bound)):
        s = pb.add_parser(name, parents=[common])
        s.add_argument("--group", required=True)
        s.add_argument("--classes", required=True)
        s.add_argument("--profile", required=True, help='e.g. {"degree":2,"over_branch":[[1,1],[1,1]],"extra":[[2],[2]]}')
        s.set_defaults(func=fn)
    s = pb.add_parser("oracle", parents=[common])
    s.add_argument("--group", required=True)
    s.add_argument("--g-tuple", required=True, help="element indices, 0 at extra points")
    s.add_argument("--sigma", required=True, help="T0 cycles separated by ';', e.g. '();(1,2);(1,2)'")
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(func=cmd_pullback_oracle)

    ce = sub.add_parser("certify", parents=[common]).add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s = ce.add_parser("not-pullback", parents=[common])
    s.add_argument("--group", required=True)
    s.add_argument("--f-classes", required=True)
    s.add_argument("--target-classes", required=True)
    s.add_argument("--max-degree", default="auto")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("build-dy", parents=[common])
    s.add_argument("--group", required=True)
    s.add_argument("--classes", required=True)
    s.add_argument("--y", type=int, required=True, help="element index")
    s.add_argument("--tuple", help="Nielsen tuple as element indices (default: minimal representative)")
    s.set_defaults(func=cmd_build_dy)

    ex = sub.add_parser("extensions", parents=[common]).add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s = ex.add_parser("enumerate", parents=[common])
    s.add_argument("--quotient", required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--u", type=int, required=True)
    s.add_argument("--filter", choices=sorted(ACTION_FILTERS), default="any")
    s.set_defaults(func=cmd_extensions)

    s = sub.add_parser("replicate", parents=[common])
    s.add_argument("what", choices=["appendix", "thm1b", "genus0"])
    s.set_defaults(func=cmd_replicate)

    s = sub.add_parser("classify", parents=[common])
    s.add_argument("what", choices=["pgl2", "generic", "laurent"])
    s.add_argument("--group", required=True)
    s.add_argument("--field", default="Q")
    s.add_argument("--r", type=int)
    s.add_argument("--branch-rational", action="store_true")
    s.add_argument("--classes")
    s.set_defaults(func=cmd_classify)
    return p


def _text(obj) -> str:
    if isinstance(obj, str):
        return obj
    if isinstance(obj, dict) and len(obj) == 1:
        (v,) = obj.values()
        if not isinstance(v, (dict, list)):
            return str(v)
    if isinstance(obj, dict):
        return "\n".join(f"{k}: {canonical_json(v) if isinstance(v, (dict, list)) else v}"
                         for k, v in sorted(obj.items()))
    return canonical_json(obj)


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
    except UsageError as exc:
        print(f"hp: error: {exc}", file=err)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"hp: budget exceeded: {exc}", file=err)
        return EXIT_BUDGET
    except (GroupParseError, UnrealizableType, ValueError, KeyError, OSError) as exc:
        print(f"hp: error: {exc}", file=err)
        return EXIT_USAGE
    if args.json:
        print(canonical_json(result), file=out)
    else:
        print(_text(result), file=out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
