"""Command-line interface.

Subcommands mirror the library layers: `rank` for matrix files, `gen-graph`
for the families, `birep` and `inclusion-rep` for representing matrices,
`certify-chiv` for the vector-coloring certificates, `oracle` for the
brute-force searches, and `theorem` / `sweep` / `sidequests` for the full
reproduction reports.  All output is JSON on stdout; exit code 0 means every
internal assertion passed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import comb
from pathlib import Path

from . import certificates, experiments, graphs, inclusion, oracle, polyrep
from .errors import IntegrityError, ParameterError
from .ff_linalg import (FpMatrix, IntMatrix, RationalMatrix, dump_matrix_text,
                        matmul_fp, parse_matrix_text, rank_fp, rank_rational)


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    print(text)


def _parse_sizes(raw: str) -> set[int]:
    if not raw.strip():
        return set()
    return {int(tok) for tok in raw.split(",")}


# ------------------------------------------------------------- subcommands


def _cmd_rank(args):
    m = parse_matrix_text(Path(args.infile).read_text())
    if isinstance(m, FpMatrix):
        result = {"rows": m.rows, "cols": m.cols, "field": f"F_{m.modulus.p}",
                  "rank": rank_fp(m)}
    else:
        field_name = "Q" if isinstance(m, RationalMatrix) else "Z (rank over Q)"
        result = {"rows": m.rows, "cols": m.cols, "field": field_name,
                  "rank": rank_rational(m)}
    _emit(result)


def _require(args, fam, *names):
    for name in names:
        if getattr(args, name) is None:
            raise ParameterError(f"family {fam!r} needs --{name}")


def _build_graph(args):
    fam = args.family
    if fam == "kneser":
        _require(args, fam, "s")
        g = graphs.kneser(args.d, args.s, _parse_sizes(args.T))
    elif fam == "kneser-mod":
        _require(args, fam, "s", "t", "q")
        g = graphs.kneser_mod(args.d, args.s, args.t, args.q)
    elif fam == "g1":
        _require(args, fam, "p")
        g = graphs.g1(args.d, args.p)
    elif fam == "g2":
        _require(args, fam, "p")
        g = graphs.g2(args.d, args.p)
    elif fam == "ternary":
        g = graphs.directed_ternary(args.d)
    else:
        raise ParameterError(f"unknown family {fam!r}")
    if args.complement:
        if isinstance(g, graphs.DiGraph):
            raise ParameterError("complement is only defined here for "
                                 "undirected graphs")
        g = graphs.complement(g)
    return g


def _cmd_gen_graph(args):
    g = _build_graph(args)
    obj = graphs.graph_to_json(g)
    text = json.dumps(obj, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
        _emit({"n": g.n, "directed": isinstance(g, graphs.DiGraph),
               "edges": g.edge_count(), "out": args.out})
    else:
        print(text)


def _cmd_birep(args):
    fam = args.family
    if fam == "kneser":
        _require(args, fam, "s", "p")
        rep = polyrep.birep_kneser(args.d, args.s, _parse_sizes(args.T), args.p)
        target = graphs.kneser(args.d, args.s, _parse_sizes(args.T))
    elif fam == "gp":
        _require(args, fam, "p")
        rep = polyrep.birep_gp(args.d, args.p)
        target = graphs.kneser(args.d, 2 * args.p - 1, {args.p - 1})
    elif fam == "g2c":
        _require(args, fam, "p")
        rep = polyrep.birep_g2_complement(args.d, args.p)
        target = graphs.complement(graphs.g2(args.d, args.p))
    elif fam == "ternary":
        rep = polyrep.birep_directed_ternary(args.d)
        target = graphs.directed_ternary(args.d)
    else:
        raise ParameterError(f"unknown family {fam!r}")
    product = matmul_fp(rep.a, rep.b)
    verified = polyrep.matrix_represents(product, target)
    result = {
        "family": fam,
        "n": rep.n,
        "dimension": rep.dimension,
        "modulus": rep.modulus.p,
        "verified": verified,
        "product_rank": rank_fp(product),
    }
    if args.out:
        payload = dict(result)
        payload["a"] = dump_matrix_text(rep.a)
        payload["b"] = dump_matrix_text(rep.b)
        Path(args.out).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        result["out"] = args.out
    _emit(result)
    if not verified:
        raise IntegrityError("bi-representation failed verification")


def _cmd_inclusion_rep(args):
    modular = args.q is not None
    if modular:
        if args.t is None:
            raise ParameterError("--q requires --t")
        m = inclusion.rep_matrix_kneser_mod(args.d, args.s, args.t, args.q, args.p)
        target = graphs.kneser_mod(args.d, args.s, args.t, args.q)
        bound = comb(args.d, args.q - 1)
    else:
        if args.T is None:
            raise ParameterError("need either --T or both --t and --q")
        tset = _parse_sizes(args.T)
        m = inclusion.rep_matrix_kneser(args.d, args.s, tset, args.p)
        target = graphs.kneser(args.d, args.s, tset)
        bound = comb(args.d, args.s - len(tset))
    represents = polyrep.matrix_represents(m, target)
    result = {"n": m.rows, "modulus": m.modulus.p, "rank_bound": bound,
              "rank_actual": rank_fp(m), "represents": represents}
    if args.out:
        Path(args.out).write_text(dump_matrix_text(m))
        result["out"] = args.out
    _emit(result)
    if not represents:
        raise IntegrityError("representing matrix failed the entrywise check")


def _cmd_certify_chiv(args):
    mode = (certificates.MODE_EQUALITY if args.mode == "eq"
            else certificates.MODE_INEQUALITY)
    cert = certificates.make_certificate(args.d, args.s, args.t, mode)
    exhaustive = not args.sample
    verified = certificates.verify_certificate(cert, exhaustive=exhaustive)
    if exhaustive:
        checked = len(certificates.achievable_intersection_classes(args.d, args.s))
    else:
        adjacent = certificates.adjacent_intersection_classes(cert)
        checked = len(sorted(set(adjacent[:1] + adjacent[-1:])))
    _emit({"kappa": str(cert.kappa), "z": str(cert.z), "mode": cert.mode,
           "verified": verified, "classes_checked": checked})
    if not verified:
        raise IntegrityError("certificate failed verification")


def _load_graph(path: str):
    return graphs.graph_from_json(json.loads(Path(path).read_text()))


def _cmd_oracle(args):
    g = _load_graph(args.graph)
    budget = oracle.SearchBudget(
        max_vertices=args.max_vertices,
        max_rank=args.max_rank,
        max_nodes_expanded=args.max_nodes,
        time_limit_seconds=args.time_limit,
    )
    if args.what == "alpha":
        value = oracle.independence_number(g, budget)
    elif args.what == "cliquecover":
        value = oracle.clique_cover_number(g, budget)
    elif args.what == "minrank":
        value = oracle.minrank_bruteforce(g, args.p, budget)
    elif args.what == "mais":
        value = oracle.max_acyclic_induced(g, budget)
    else:
        raise ParameterError(f"unknown oracle request {args.what!r}")
    if isinstance(value, oracle.Bounds):
        _emit({"what": args.what, "exhausted": True,
               "lower": value.lower, "upper": value.upper})
    else:
        _emit({"what": args.what, "exhausted": False, "value": value})


def _run_theorem(which: int, args, emit_dir):
    if which == 1:
        if args.p is None or args.l is None:
            raise ParameterError("theorem 1 needs --p and --l")
        return experiments.run_theorem1(args.p, args.l, emit_dir)
    if which == 2:
        if args.p is None or args.eps_num is None or args.eps_den is None:
            raise ParameterError("theorem 2 needs --p, --eps-num, --eps-den")
        return experiments.run_theorem2(args.p, args.eps_num, args.eps_den,
                                        emit_dir)
    if which == 3:
        if args.t is None or args.p is None:
            raise ParameterError("theorem 3 needs --t and --p")
        return experiments.run_theorem3(args.t, args.p, emit_dir)
    raise ParameterError(f"--which must be 1, 2, or 3, got {which}")


def _cmd_theorem(args):
    report = _run_theorem(args.which, args, args.emit_artifacts)
    _emit(report.to_json_dict(), out=args.out)


def _parse_range(raw: str) -> list[int]:
    if ".." in raw:
        lo, hi = raw.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(raw)]


def _cmd_sweep(args):
    cells = []
    if args.which == 1:
        if args.p is None or args.l is None:
            raise ParameterError("sweep --which 1 needs --p and --l")
        for l in sorted(_parse_range(args.l)):
            cells.append(experiments.run_theorem1(args.p, l, args.emit_artifacts))
    elif args.which == 3:
        if args.t is None or args.p is None:
            raise ParameterError("sweep --which 3 needs --t and --p")
        for t in sorted(_parse_range(args.t)):
            cells.append(experiments.run_theorem3(t, args.p, args.emit_artifacts))
    else:
        raise ParameterError("sweep supports --which 1 (over --l) and "
                             "--which 3 (over --t)")
    _emit({"schema": experiments.SCHEMA, "sweep": args.which,
           "cells": [r.to_json_dict() for r in cells]}, out=args.out)


def _cmd_sidequests(args):
    bundle = experiments.run_sidequests()
    _emit(bundle, out=args.out)


def _cmd_exponent(args):
    params = {}
    if args.p is not None:
        params["p"] = args.p
    if args.eps_num is not None and args.eps_den is not None:
        params["eps"] = Fraction(args.eps_num, args.eps_den)
    _emit(experiments.exponent_context(str(args.which), params))


# ------------------------------------------------------------- wiring


def _add_budget_flags(sub):
    sub.add_argument("--max-vertices", type=int, default=128)
    sub.add_argument("--max-rank", type=int, default=16)
    sub.add_argument("--max-nodes", type=int, default=20_000_000)
    sub.add_argument("--time-limit", type=float, default=300.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minrank-lab",
        description="Exact rank bounds and certificates for Kneser-type graphs")
    subs = parser.add_subparsers(dest="command", required=True)

    p_rank = subs.add_parser("rank", help="exact rank of a matrix file")
    p_rank.add_argument("--in", dest="infile", required=True)
    p_rank.set_defaults(func=_cmd_rank)

    p_gen = subs.add_parser("gen-graph", help="emit a graph family as JSON")
    p_gen.add_argument("--family", required=True,
                       choices=["kneser", "kneser-mod", "g1", "g2", "ternary"])
    p_gen.add_argument("--d", type=int, required=True)
    p_gen.add_argument("--s", type=int)
    p_gen.add_argument("--T", default="")
    p_gen.add_argument("--t", type=int)
    p_gen.add_argument("--q", type=int)
    p_gen.add_argument("--p", type=int)
    p_gen.add_argument("--complement", action="store_true")
    p_gen.add_argument("--out")
    p_gen.set_defaults(func=_cmd_gen_graph)

    p_birep = subs.add_parser("birep", help="build and verify a bi-representation")
    p_birep.add_argument("--family", required=True,
                         choices=["kneser", "gp", "g2c", "ternary"])
    p_birep.add_argument("--d", type=int, required=True)
    p_birep.add_argument("--s", type=int)
    p_birep.add_argument("--T", default="")
    p_birep.add_argument("--p", type=int)
    p_birep.add_argument("--out")
    p_birep.set_defaults(func=_cmd_birep)

    p_incl = subs.add_parser("inclusion-rep",
                             help="entrywise representing matrix and its rank")
    p_incl.add_argument("--d", type=int, required=True)
    p_incl.add_argument("--s", type=int, required=True)
    p_incl.add_argument("--T")
    p_incl.add_argument("--t", type=int)
    p_incl.add_argument("--q", type=int)
    p_incl.add_argument("--p", type=int, required=True)
    p_incl.add_argument("--out")
    p_incl.set_defaults(func=_cmd_inclusion_rep)

    p_cert = subs.add_parser("certify-chiv",
                             help="verify a vector chromatic certificate")
    p_cert.add_argument("--d", type=int, required=True)
    p_cert.add_argument("--s", type=int, required=True)
    p_cert.add_argument("--t", type=int, required=True)
    p_cert.add_argument("--mode", choices=["ineq", "eq"], default="ineq")
    p_cert.add_argument("--sample", action="store_true",
                        help="check the deterministic class sample only")
    p_cert.set_defaults(func=_cmd_certify_chiv)

    p_oracle = subs.add_parser("oracle", help="brute-force ground truth")
    p_oracle.add_argument("--graph", required=True)
    p_oracle.add_argument("--what", required=True,
                          choices=["alpha", "cliquecover", "minrank", "mais"])
    p_oracle.add_argument("--p", type=int, default=2)
    _add_budget_flags(p_oracle)
    p_oracle.set_defaults(func=_cmd_oracle)

    p_thm = subs.add_parser("theorem", help="run a reproduction report")
    p_thm.add_argument("--which", type=int, required=True, choices=[1, 2, 3])
    p_thm.add_argument("--p", type=int)
    p_thm.add_argument("--l", type=int)
    p_thm.add_argument("--eps-num", type=int)
    p_thm.add_argument("--eps-den", type=int)
    p_thm.add_argument("--t", type=int)
    p_thm.add_argument("--out")
    p_thm.add_argument("--emit-artifacts", metavar="DIR")
    p_thm.set_defaults(func=_cmd_theorem)

    p_sweep = subs.add_parser("sweep", help="run a parameter sweep of reports")
    p_sweep.add_argument("--which", type=int, required=True, choices=[1, 3])
    p_sweep.add_argument("--p", type=int)
    p_sweep.add_argument("--l", help="single value or lo..hi")
    p_sweep.add_argument("--t", help="single value or lo..hi")
    p_sweep.add_argument("--out")
    p_sweep.add_argument("--emit-artifacts", metavar="DIR")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_side = subs.add_parser("sidequests", help="verify the small side claims")
    p_side.add_argument("--out")
    p_side.set_defaults(func=_cmd_sidequests)

    p_exp = subs.add_parser("exponent", help="entropy exponent enclosures")
    p_exp.add_argument("--which", type=int, required=True, choices=[1, 2, 3])
    p_exp.add_argument("--p", type=int)
    p_exp.add_argument("--eps-num", type=int)
    p_exp.add_argument("--eps-den", type=int)
    p_exp.set_defaults(func=_cmd_exponent)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2
    except IntegrityError as exc:
        print(f"integrity failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
