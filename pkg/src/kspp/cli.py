"""Command-line entry point: ``kspp check|scan|extremal|enumerate|verify-proofs``.

Exit codes for ``check``: 0 property holds, 1 it fails, 2 undetermined
(budget or non-convergence), 3 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from ._accel import backend
from .graph import (BudgetError, Graph, GraphError, build_extremal_gstar, components_after_removal,
                    enumerate_connected_labeled, read_edge_list, write_edge_list)
from .graph6 import MAX_N, Graph6Error, parse_graph6, read_graph6_lines, write_graph6
from .ledger import (LedgerGrid, gap_cubic, gap_cubic_at_one, run_ledger, verify_balanced_identity,
                     verify_cubic_monotone, verify_singleton_identity)
from .parity import (Budget, ConditionVerdict, DefinitionVerdict, Outcome, check_k,
                     condition_bound, kspp_condition, kspp_definition)
from .spectral import DEFAULT_MAX_ITER, DEFAULT_TOL, SpectralEstimate, a_spectral_radius, q_spectral_radius
from .thresholds import (DEFAULT_EPS, AuditOutcome, TheoremReport, audit_size_theorem,
                         audit_spectral_theorem, gstar_edge_count, size_premise, size_premise_bound)

EXIT_OK, EXIT_VIOLATED, EXIT_UNDETERMINED, EXIT_USAGE = 0, 1, 2, 3
CSV_HEADER = ["graph_id", "n", "e", "delta", "q", "kspp", "witness", "thm12", "thm13"]


@dataclass(frozen=True)
class RunConfig:
    k: int
    budget: Budget
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    eps: float = DEFAULT_EPS


def fmt_float(x: float) -> float:
    """Round to 12 significant digits so output is byte-stable."""
    return float(f"{x:.12g}")


def fmt_exact(x) -> str | None:
    if x is None:
        return None
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return str(x)


def _members(vs) -> list[int] | None:
    return None if vs is None else vs.members


def condition_json(v: ConditionVerdict | None) -> dict:
    if v is None:
        return {"outcome": Outcome.BUDGET_EXCEEDED.value}
    return {"outcome": v.outcome.value, "witness_S": _members(v.witness_S),
            "components": v.components, "bound": v.bound}


def definition_json(v: DefinitionVerdict) -> dict:
    return {"outcome": v.outcome.value, "witness_X": _members(v.witness_X),
            "served_count": v.served_count}


def spectral_json(e: SpectralEstimate) -> dict:
    return {"value": fmt_float(e.value), "residual": fmt_float(e.residual),
            "iterations": e.iterations, "converged": e.converged, "disconnected": e.disconnected}


def report_json(r: TheoremReport) -> dict:
    measured = r.measured
    if isinstance(measured, float):
        measured = fmt_float(measured)
    return {"premise_met": r.premise_met, "failed_premise": r.failed_premise,
            "threshold": fmt_exact(r.threshold),
            "threshold_float": None if r.threshold is None else fmt_float(float(r.threshold)),
            "measured": measured, "triggered": r.triggered, "borderline": r.borderline,
            "recognized_gstar": r.recognized_gstar,
            "property_verdict": None if r.property_verdict is None else condition_json(r.property_verdict),
            "outcome": r.outcome.value, "note": r.note}


def dump_json(obj, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(obj, indent=2) + "\n")


# -- input -------------------------------------------------------------------

def load_graph(source: str, fmt: str = "auto") -> Graph:
    """A path (graph6 first line or edge list) or an inline graph6 string."""
    path = Path(source)
    if path.is_file():
        text = path.read_text()
        if fmt == "auto":
            first = next((ln for ln in text.splitlines() if ln.strip()), "")
            fmt = "edgelist" if len(first.split()) == 2 else "graph6"
        if fmt == "edgelist":
            return read_edge_list(text)
        for _, _, item in read_graph6_lines(text.splitlines()):
            if isinstance(item, Exception):
                raise item
            return item
        raise GraphError(f"{source}: no graph found")
    if fmt == "edgelist":
        raise GraphError(f"{source}: edge-list input must be a file")
    return parse_graph6(source)


# -- per-graph analysis ------------------------------------------------------

def _condition_or_none(G: Graph, cfg: RunConfig) -> ConditionVerdict | None:
    try:
        return kspp_condition(G, cfg.k, cfg.budget.max_n_condition)
    except BudgetError:
        return None


def analyse(G: Graph, cfg: RunConfig, with_definition: bool = True, with_rho: bool = True) -> dict:
    connected = G.is_connected()
    condition = _condition_or_none(G, cfg) if G.n >= 1 else None
    definition = kspp_definition(G, cfg.k, cfg.budget) if with_definition or not connected else None
    q = q_spectral_radius(G, cfg.tol, cfg.max_iter) if G.n >= 1 else None
    size = audit_size_theorem(G, cfg.k, cfg.budget.max_n_condition)
    spectral = audit_spectral_theorem(G, cfg.k, cfg.eps, cfg.tol, cfg.max_iter,
                                      cfg.budget.max_n_condition, q=q)
    def_ok = definition is not None and definition.outcome is not Outcome.BUDGET_EXCEEDED
    if connected and condition is not None:
        verdict, witness = condition.outcome, ("S", condition.witness_S)
    elif def_ok:
        verdict, witness = definition.outcome, ("X", definition.witness_X)
    elif condition is not None:
        verdict, witness = condition.outcome, ("S", condition.witness_S)
    else:
        verdict, witness = Outcome.BUDGET_EXCEEDED, (None, None)
    return {"graph": G, "connected": connected, "condition": condition,
            "definition": definition, "q": q,
            "rho": a_spectral_radius(G, cfg.tol, cfg.max_iter) if with_rho and G.n >= 1 else None,
            "size": size, "spectral": spectral, "verdict": verdict, "witness": witness}


def _exit_for(verdict: Outcome) -> int:
    return {Outcome.SATISFIED: EXIT_OK, Outcome.VIOLATED: EXIT_VIOLATED}.get(verdict, EXIT_UNDETERMINED)


def cmd_check(args) -> int:
    cfg = _config(args)
    try:
        G = load_graph(args.input, args.format)
    except (GraphError, OSError) as exc:
        print(f"error: cannot read graph: {exc}", file=sys.stderr)
        return EXIT_USAGE
    res = analyse(G, cfg)
    definition = res["definition"]
    condition = res["condition"]
    agree = None
    if (condition is not None and definition is not None
            and definition.outcome is not Outcome.BUDGET_EXCEEDED):
        agree = condition.outcome is definition.outcome
    kind, witness = res["witness"]
    out = {
        "graph6": write_graph6(G) if G.n <= MAX_N else None,
        "n": G.n, "e": G.edge_count, "delta": G.min_degree, "k": cfg.k,
        "connected": res["connected"],
        "kspp": res["verdict"].value,
        "witness": None if witness is None else {kind: witness.members},
        "condition": condition_json(condition),
        "definition": definition_json(definition),
        "oracles_agree": agree,
        "in_theorem_scope": res["connected"],
        "q": None if res["q"] is None else spectral_json(res["q"]),
        "rho": None if res["rho"] is None else spectral_json(res["rho"]),
        "size_theorem": report_json(res["size"]),
        "spectral_theorem": report_json(res["spectral"]),
        "backend": backend(),
    }
    dump_json(out)
    return _exit_for(res["verdict"])


# -- scan --------------------------------------------------------------------

def _witness_text(kind, vs, connected) -> str:
    text = "" if vs is None else f"{kind}=[{' '.join(map(str, vs.members))}]"
    if not connected:
        text = (text + " out-of-scope").strip()
    return text


def scan_record(job) -> list:
    graph_id, text, cfg, oracle = job
    G = parse_graph6(text)
    res = analyse(G, cfg, with_definition=(oracle == "definition"), with_rho=False)
    verdict, (kind, vs) = res["verdict"], res["witness"]
    d = res["definition"]
    if oracle == "definition" and d is not None:
        verdict, kind, vs = d.outcome, "X", d.witness_X
    q = res["q"]
    return [graph_id, G.n, G.edge_count, G.min_degree,
            "" if q is None else f"{q.value:.12g}", verdict.value,
            _witness_text(kind, vs, res["connected"]),
            res["size"].outcome.value, res["spectral"].outcome.value]


def cmd_scan(args) -> int:
    cfg = _config(args)
    try:
        with open(args.corpus) as fh:
            items = list(read_graph6_lines(fh))
    except OSError as exc:
        print(f"error: cannot read corpus: {exc}", file=sys.stderr)
        return EXIT_USAGE
    errors = []
    jobs = []
    for ordinal, (lineno, text, item) in enumerate(items):
        if isinstance(item, Graph6Error):
            errors.append({"graph_id": ordinal, "line": lineno, "error": str(item)})
        else:
            jobs.append((ordinal, text, cfg, args.oracle))
    if args.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            rows = list(pool.map(scan_record, jobs, chunksize=max(1, len(jobs) // (8 * args.workers))))
    else:
        rows = [scan_record(job) for job in jobs]

    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        if rows:
            writer.writerow(CSV_HEADER)
        writer.writerows(rows)
    finally:
        if args.output:
            out.close()

    counts = {"thm12": {}, "thm13": {}, "kspp": {}}
    for row in rows:
        for key, col in (("kspp", 5), ("thm12", 7), ("thm13", 8)):
            counts[key][row[col]] = counts[key].get(row[col], 0) + 1
    counter = [dict(zip(CSV_HEADER, r)) for r in rows
               if AuditOutcome.COUNTEREXAMPLE.value in (r[7], r[8])]
    undetermined = sum(1 for r in rows
                       if r[5] == Outcome.BUDGET_EXCEEDED.value
                       or AuditOutcome.UNDETERMINED.value in (r[7], r[8]))
    summary = {"records": len(rows), "k": cfg.k, "outcomes": {k: dict(sorted(v.items()))
                                                              for k, v in counts.items()},
               "counterexamples": counter, "undetermined": undetermined, "parse_errors": errors}
    if args.summary:
        with open(args.summary, "w") as fh:
            dump_json(summary, fh)
    else:
        dump_json(summary, sys.stderr)
    if counter:
        return EXIT_VIOLATED
    if undetermined or errors:
        return EXIT_UNDETERMINED
    return EXIT_OK


# -- extremal ----------------------------------------------------------------

def cmd_extremal(args) -> int:
    cfg = _config(args)
    n, delta, k = args.n, args.delta, args.k
    try:
        G = build_extremal_gstar(n, delta, k)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    universal = (1 << delta) - 1  # apex clique occupies vertices 0..delta-1
    comps = components_after_removal(G, universal).count
    bound = condition_bound(G, universal, k)
    fmt = args.format
    if fmt == "graph6" and n > MAX_N:
        print(f"notice: n={n} exceeds graph6 limit {MAX_N}; emitting edge list", file=sys.stderr)
        fmt = "edgelist"
    encoded = write_graph6(G) if fmt == "graph6" else write_edge_list(G)
    if args.graph_out:
        Path(args.graph_out).write_text(encoded if fmt == "edgelist" else encoded + "\n")
    try:
        premise = size_premise(n, delta, k)
        premise_bound = fmt_exact(size_premise_bound(delta, k))
    except GraphError:
        premise, premise_bound = False, None
    out = {"n": n, "delta": delta, "k": k, "format": fmt,
           "graph6" if fmt == "graph6" else "edge_list": encoded,
           "e_formula": gstar_edge_count(n, delta, k), "e_constructed": G.edge_count,
           "edge_counts_match": gstar_edge_count(n, delta, k) == G.edge_count,
           "min_degree": G.min_degree, "size_premise": premise, "size_premise_bound": premise_bound,
           "targeted_S": {"S": list(range(delta)), "components": comps, "bound": bound,
                          "violated": comps > bound}}
    if n <= cfg.budget.max_n_condition:
        out["condition"] = condition_json(kspp_condition(G, k, cfg.budget.max_n_condition))
    else:
        out["condition"] = condition_json(None)
    dump_json(out)
    return EXIT_OK


# -- enumerate ---------------------------------------------------------------

def cmd_enumerate(args) -> int:
    try:
        graphs = enumerate_connected_labeled(args.n, args.cap)
        out = open(args.output, "w") if args.output else sys.stdout
        try:
            for G in graphs:
                out.write(write_graph6(G) + "\n")
        finally:
            if args.output:
                out.close()
    except (BudgetError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


# -- verify-proofs -----------------------------------------------------------

def _tuple_ledger(n: int, delta: int, k: int, s: int) -> dict:
    bal = verify_balanced_identity(n, delta, k, s)
    sing = verify_singleton_identity(n, delta, k, s)
    mono = verify_cubic_monotone(n, delta, k)

    def identity(r):
        return {"applicable": r.applicable, "lhs": fmt_exact(r.lhs), "rhs": fmt_exact(r.rhs),
                "holds": r.holds, "context": r.context}

    checks = {"balanced_identity": identity(bal), "singleton_identity": identity(sing),
              "cubic_monotone": {"applicable": mono.applicable, "holds": mono.holds,
                                 "axis": fmt_exact(mono.axis),
                                 "min_derivative": fmt_exact(mono.min_derivative),
                                 "value_at_one": mono.value_at_one},
              "cubic_at_one": {"value": gap_cubic(1, n, delta, k),
                               "closed_form": gap_cubic_at_one(n, delta, k)}}
    fails = sum(1 for r in (bal, sing) if r.applicable and not r.holds)
    fails += int(mono.applicable and not mono.holds)
    fails += int(checks["cubic_at_one"]["value"] != checks["cubic_at_one"]["closed_form"])
    return {"tuple": {"n": n, "delta": delta, "k": k, "s": s}, "checks": checks, "fails": fails}


def cmd_verify_proofs(args) -> int:
    if args.tuple:
        n, delta, k, s = args.tuple
        try:
            out = _tuple_ledger(n, delta, k, s)
        except GraphError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        fails = out["fails"]
    else:
        ks = tuple(args.k or (2, 4))
        try:
            for k in ks:
                check_k(k)
            grid = LedgerGrid(ks=ks, delta_span=args.delta_span, n_span=args.n_span,
                              case_n_max=args.case_n_max, random_graphs=args.random_graphs,
                              seed=args.seed, tol=args.tol)
            tallies = run_ledger(grid)
        except GraphError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        fails = sum(t.fails for t in tallies.values())
        out = {"ks": list(ks), "checks": {name: t.as_dict() for name, t in tallies.items()},
               "failures": {name: [repr(c) for c in t.failures]
                            for name, t in tallies.items() if t.failures},
               "fails": fails}
    if args.output:
        with open(args.output, "w") as fh:
            dump_json(out, fh)
    dump_json(out)
    return EXIT_OK if fails == 0 else EXIT_VIOLATED


# -- argument parsing --------------------------------------------------------

def _config(args) -> RunConfig:
    budget = Budget(args.max_n_condition, args.max_m_definition, args.max_n_definition)
    return RunConfig(args.k, budget, args.tol, args.max_iter, args.eps_borderline)


def _even_k(text: str) -> int:
    k = int(text)
    if k < 2 or k % 2:
        raise argparse.ArgumentTypeError(f"k must be an even integer >= 2, got {text}")
    return k


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    d = Budget()
    p.add_argument("--max-n-condition", type=int, default=d.max_n_condition)
    p.add_argument("--max-m-definition", type=int, default=d.max_m_definition)
    p.add_argument("--max-n-definition", type=int, default=d.max_n_definition)
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--eps-borderline", type=float, default=DEFAULT_EPS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kspp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="analyse a single graph")
    p.add_argument("input", help="graph6 string, or a file with graph6 / edge-list content")
    p.add_argument("-k", type=_even_k, default=2)
    p.add_argument("--format", choices=("auto", "graph6", "edgelist"), default="auto")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", help="audit every graph in a graph6 corpus (CSV output)")
    p.add_argument("corpus")
    p.add_argument("-k", type=_even_k, default=2)
    p.add_argument("--oracle", choices=("condition", "definition"), default="condition")
    p.add_argument("--output", "-o")
    p.add_argument("--summary")
    p.add_argument("--workers", type=int, default=1)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("extremal", help="build and analyse the extremal join-of-cliques graph")
    p.add_argument("n", type=int)
    p.add_argument("delta", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    p.add_argument("--graph-out")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("enumerate", help="emit all connected labeled graphs on n vertices")
    p.add_argument("n", type=int)
    p.add_argument("--cap", type=int, default=7)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-proofs", help="run the exact identity and inequality ledger")
    p.add_argument("-k", type=_even_k, action="append")
    p.add_argument("--delta-span", type=int, default=5)
    p.add_argument("--n-span", type=int, default=6)
    p.add_argument("--case-n-max", type=int, default=20)
    p.add_argument("--random-graphs", type=int, default=1000)
    p.add_argument("--seed", type=int, default=LedgerGrid().seed)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--tuple", type=int, nargs=4, metavar=("N", "DELTA", "K", "S"))
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_verify_proofs)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
