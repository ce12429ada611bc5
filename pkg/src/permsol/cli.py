"""Command-line interface.

Every command prints one JSON payload (with a ``schema`` version field) to
stdout, or a plain value with ``--quiet``.  Exit codes: 0 ok, 1 usage or bad
input, 2 resource budget exceeded, 3 main-theorem violation (which would
indicate an implementation bug, never valid mathematics).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from permsol import connection, graphs, groupio, liearith, structure
from permsol.budgets import (
    DEFAULT_BUDGETS,
    BudgetExceededError,
    NotSConnectedError,
    TheoremViolationError,
)
from permsol.groupio import GeneratorParseError
from permsol.permcore import PermGroup, build_group


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _emit(args, payload: dict, quiet_value: str) -> None:
    if args.quiet:
        print(quiet_value)
    else:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _emit_error(code: str, message: str, context: dict) -> None:
    print(
        json.dumps(
            {"code": code, "message": message, "context": context},
            sort_keys=True,
            separators=(",", ":"),
        )
    )


def _budgets(args):
    budgets = DEFAULT_BUDGETS
    if args.budget_order is not None:
        budgets = replace(
            budgets,
            order_limit=args.budget_order,
            subgroup_order_limit=min(args.budget_order, budgets.subgroup_order_limit),
        )
    if args.budget_pairs is not None:
        budgets = replace(budgets, pair_limit=args.budget_pairs)
    return budgets


def _load_group(src: str, args) -> PermGroup:
    if src.startswith("builtin:"):
        return groupio.builtin(src.split(":", 1)[1])
    with open(src, "r", encoding="ascii") as handle:
        gens = groupio.parse_generators(handle.read())
    if not gens:
        raise ValueError(f"{src}: no generators in file")
    return build_group(gens, randomized_seed=args.seed)


def _fmt_bool(value: bool) -> str:
    return "true" if value else "false"


def _witness_payload(witness) -> dict | None:
    if witness is None:
        return None
    a, b = witness
    return {
        "a": groupio.render_permutation(a),
        "b": groupio.render_permutation(b),
    }


# -- commands ----------------------------------------------------------------


def _cmd_group_info(args) -> int:
    G = _load_group(args.src, args)
    budgets = _budgets(args)
    series = structure.derived_series(G)
    radical = structure.soluble_radical(G, "gkps", budgets)
    payload = {
        "schema": 1,
        "source": args.src,
        "degree": G.degree,
        "order": G.order(),
        "soluble": structure.is_soluble(G),
        "derived_length": series.derived_length,
        "radical_order": radical.order(),
    }
    _emit(args, payload, str(payload["order"]))
    return 0


def _cmd_radical(args) -> int:
    G = _load_group(args.src, args)
    budgets = _budgets(args)
    method = args.method.replace("-", "")
    R = structure.soluble_radical(G, method, budgets)
    payload = {
        "schema": 1,
        "method": args.method,
        "order": R.order(),
        "generators": [groupio.render_permutation(g) for g in R.generators],
    }
    if args.method == "both":
        payload["agree"] = True  # soluble_radical raises otherwise
    _emit(args, payload, str(R.order()))
    return 0


def _cmd_sconnect(args) -> int:
    budgets = _budgets(args)
    G = _load_group(args.src, args)
    A = _load_group(args.a, args)
    B = _load_group(args.b, args)
    F = connection.make_factorized(G, A, B, budgets)
    mode = "prime_pairs" if args.mode == "prime-pairs" else "full"
    connected, witness = connection.check_condition(F, mode, budgets)
    payload = {
        "schema": 1,
        "mode": args.mode,
        "connected": connected,
        "witness": _witness_payload(witness),
    }
    _emit(args, payload, _fmt_bool(connected))
    return 0


def _cmd_maintheorem(args) -> int:
    budgets = _budgets(args)
    G = _load_group(args.src, args)
    A = _load_group(args.a, args)
    B = _load_group(args.b, args)
    F = connection.make_factorized(G, A, B, budgets)
    report = connection.verify_main_theorem(F, budgets)
    payload = {
        "schema": 1,
        "status": "ok",
        "c1": report.condition1,
        "c2": report.condition2,
        "c3": report.condition3,
        "witness": _witness_payload(report.witness),
        "radical_order": report.radical_order,
    }
    _emit(
        args,
        payload,
        f"{_fmt_bool(report.condition1)} {_fmt_bool(report.condition2)} "
        f"{_fmt_bool(report.condition3)}",
    )
    return 0


def _cmd_graph(args) -> int:
    budgets = _budgets(args)
    G = _load_group(args.src, args)
    label = args.src.split(":", 1)[-1]
    if args.kind == "prime":
        graph = graphs.prime_graph(G, budgets, label=label)
    else:
        graph = graphs.soluble_graph(G, budgets, label=label, jobs=args.jobs)
    text = graphs.export_graph(graph, args.format)
    if args.out:
        with open(args.out, "w", encoding="ascii") as handle:
            handle.write(text if text.endswith("\n") else text + "\n")
        _emit(args, {"schema": 1, "written": args.out}, args.out)
    else:
        print(text, end="" if text.endswith("\n") else "\n")
    return 0


def _cmd_independent(args) -> int:
    budgets = _budgets(args)
    G = _load_group(args.src, args)
    result = graphs.are_independent(G, args.p, args.q, budgets, jobs=args.jobs)
    _emit(args, {"schema": 1, "independent": result}, _fmt_bool(result))
    return 0


def _cmd_zsigmondy(args) -> int:
    r = liearith.zsigmondy(args.p, args.k)
    exception = None
    if r is None:
        exception = "zsigmondy" if (args.p, args.k) == (2, 6) else "mersenne"
    payload = {"schema": 1, "prime": r, "exception": exception}
    _emit(args, payload, str(r) if r is not None else "none")
    return 0


def _cmd_lieorder(args) -> int:
    spec = liearith.LieSpec(args.family, args.dim, args.q)
    order, out = liearith.simple_group_order(spec)
    payload = {"schema": 1, "order": order, "out_order": out}
    _emit(args, payload, f"{order} {out}")
    return 0


def _cmd_lieprimes(args) -> int:
    spec = liearith.LieSpec(args.family, args.dim, args.q)
    fp = liearith.family_primes(spec)
    payload = {"schema": 1, "r": fp.r, "s": fp.s, "t": fp.t}
    fmt = lambda v: str(v) if v is not None else "none"
    _emit(args, payload, f"{fmt(fp.r)} {fmt(fp.s)} {fmt(fp.t)}")
    return 0


def _cmd_l1check(args) -> int:
    bound = liearith.l1_bound(args.p, args.n_order, args.bcap_order, args.out_order)
    payload = {
        "schema": 1,
        "p": args.p,
        "valuations": {
            "n": bound.n_exp,
            "bcap": bound.b_exp,
            "out": bound.out_exp,
        },
        "guaranteed_exponent": bound.guaranteed_exp,
    }
    _emit(args, payload, str(bound.guaranteed_exp))
    return 0


def _cmd_ackcert(args) -> int:
    spec = liearith.LieSpec(args.family, args.dim, args.q)
    cert = liearith.ack_certificate(spec, args.r, args.s)
    payload = {
        "schema": 1,
        "certified": cert.certified,
        "reason": cert.reason,
        "sets": list(cert.sets),
    }
    _emit(args, payload, "certified" if cert.certified else "not_certified")
    return 0


def _cmd_factorizations(args) -> int:
    budgets = _budgets(args)
    G = _load_group(args.src, args)
    factorizations = groupio.enumerate_factorizations(G, budgets)
    pairs = []
    violations = 0
    for F in factorizations:
        entry = {
            "a_order": F.A.order(),
            "b_order": F.B.order(),
            "intersection_order": F.intersection_order,
        }
        if args.check_maintheorem:
            try:
                report = connection.verify_main_theorem(F, budgets)
                entry["c1"] = report.condition1
                entry["c2"] = report.condition2
                entry["c3"] = report.condition3
            except TheoremViolationError:
                violations += 1
                entry["status"] = "theorem-violation"
        pairs.append(entry)
    payload = {"schema": 1, "count": len(pairs), "pairs": pairs}
    if args.check_maintheorem:
        payload["violations"] = violations
    _emit(args, payload, str(len(pairs)))
    if violations:
        raise TheoremViolationError(f"{violations} factorization(s) violated the theorem")
    return 0


def _build_parser() -> _Parser:
    # allow_abbrev=False keeps the subcommand flags --a/--b from colliding
    # with prefix matches of the global --budget-* options
    parser = _Parser(prog="permsol", description=__doc__, allow_abbrev=False)
    parser.add_argument("--budget-order", type=int, default=None)
    parser.add_argument("--budget-pairs", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--quiet", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="group queries")
    gsub = p.add_subparsers(dest="subcommand", required=True)
    info = gsub.add_parser("info")
    info.add_argument("src")
    info.set_defaults(func=_cmd_group_info)

    p = sub.add_parser("radical")
    p.add_argument("src")
    p.add_argument("--method", choices=["gkps", "bruteforce", "both"], default="gkps")
    p.set_defaults(func=_cmd_radical)

    p = sub.add_parser("sconnect")
    p.add_argument("src")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--mode", choices=["full", "prime-pairs"], default="full")
    p.set_defaults(func=_cmd_sconnect)

    p = sub.add_parser("maintheorem")
    p.add_argument("src")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=_cmd_maintheorem)

    p = sub.add_parser("graph")
    p.add_argument("kind", choices=["prime", "soluble"])
    p.add_argument("src")
    p.add_argument("--format", choices=["dot", "json"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("independent")
    p.add_argument("src")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=_cmd_independent)

    p = sub.add_parser("zsigmondy")
    p.add_argument("p", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=_cmd_zsigmondy)

    families = [
        "linear",
        "unitary",
        "symplectic",
        "odd_orthogonal",
        "minus_orthogonal",
        "plus_orthogonal",
    ]
    p = sub.add_parser("lieorder")
    p.add_argument("family", choices=families)
    p.add_argument("dim", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=_cmd_lieorder)

    p = sub.add_parser("lieprimes")
    p.add_argument("family", choices=families)
    p.add_argument("dim", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=_cmd_lieprimes)

    p = sub.add_parser("l1check")
    p.add_argument("p", type=int)
    p.add_argument("n_order", type=int)
    p.add_argument("bcap_order", type=int)
    p.add_argument("out_order", type=int)
    p.set_defaults(func=_cmd_l1check)

    p = sub.add_parser("ackcert")
    p.add_argument("family", choices=families)
    p.add_argument("dim", type=int)
    p.add_argument("q", type=int)
    p.add_argument("r", type=int)
    p.add_argument("s", type=int)
    p.set_defaults(func=_cmd_ackcert)

    p = sub.add_parser("factorizations")
    p.add_argument("src")
    p.add_argument("--check-maintheorem", action="store_true")
    p.set_defaults(func=_cmd_factorizations)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        _emit_error("usage", str(exc), {})
        return 1
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        _emit_error(
            "budget-exceeded",
            str(exc),
            {"budget": exc.budget, "limit": exc.limit, "needed": exc.needed},
        )
        return 2
    except TheoremViolationError as exc:
        _emit_error("theorem-violation", str(exc), {})
        return 3
    except (GeneratorParseError, NotSConnectedError, ValueError, OSError) as exc:
        _emit_error("invalid-input", str(exc), {})
        return 1


if __name__ == "__main__":
    sys.exit(main())
