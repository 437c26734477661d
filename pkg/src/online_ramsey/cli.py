"""Command-line interface.

Subcommands::

    solve       exact game value of a small target, with certificates
    match       builder-vs-painter matches streamed as JSON lines
    bounds      budget formulas and inequality-chain tables over a t-range
    verify-kst  run the dense-biclique extractor on a file or random batch
    serve       start the HTTP session API

Any failed verification (a bad certificate, an aborted match, a failed
extraction) exits nonzero so shell pipelines notice.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import ids
from .bounds import (
    BoundDomainError,
    budget_bipartite,
    budget_main,
    budget_specifics,
    verify_bipartite_chain,
    verify_main_chain,
    verify_specifics_chain,
)
from .engine import play_match
from .kst import KstInstance, KstNotFound, extract_krs, kst_thresholds

__all__ = ["main"]


# ======================================================================
# solve
# ======================================================================


def _cmd_solve(args: argparse.Namespace) -> int:
    from .solver import solve, verify_certificate

    target = ids.parse_target(args.target, q=args.q)
    result = solve(target, max_budget=args.max_budget,
                   use_table=not args.no_table, threads=args.threads,
                   collect_certificates=args.emit_certificate is not None
                   or args.verify)
    doc = result.to_json_dict()
    if result.lower_bound_only:
        print("%s: no win within %d edges (value > %d); "
              "%d nodes searched"
              % (args.target, result.max_budget, result.max_budget,
                 result.stats.nodes), file=sys.stderr)
    else:
        print("%s: value %d; %d nodes searched"
              % (args.target, result.value, result.stats.nodes),
              file=sys.stderr)
    status = 0
    if args.verify and not result.lower_bound_only:
        report = verify_certificate(result)
        doc["certificate_check"] = {
            "builder_ok": report.builder_ok,
            "painter_ok": report.painter_ok,
            "builder_leaves": report.builder_leaves,
            "painter_leaves": report.painter_leaves,
        }
        if not (report.builder_ok and report.painter_ok):
            print("certificate verification FAILED", file=sys.stderr)
            status = 1
        else:
            print("certificates verified (%d builder / %d painter leaves)"
                  % (report.builder_leaves, report.painter_leaves),
                  file=sys.stderr)
    if args.emit_certificate:
        with open(args.emit_certificate, "w") as fh:
            json.dump(doc, fh, indent=2)
        print("wrote %s" % args.emit_certificate, file=sys.stderr)
    print(json.dumps(doc))
    return status


# ======================================================================
# match
# ======================================================================


def _cmd_match(args: argparse.Namespace) -> int:
    if args.target is not None:
        target = ids.parse_target(args.target, q=args.q)
    else:
        target = ids.builder_target(args.builder)
    out = open(args.out, "w") if args.out else sys.stdout
    aborted = 0
    wins = 0
    try:
        for i in range(args.repeat):
            seed = args.seed_base + i
            builder = ids.make_builder(args.builder, target, seed=seed)
            painter = ids.make_painter(args.painter, target, seed=seed)
            if args.budget == "auto":
                budget = builder.declared_budget
                if budget is None:
                    raise SystemExit(
                        "builder %r declares no budget; give --budget N"
                        % args.builder)
            else:
                budget = int(args.budget)
            rec = play_match(builder, painter, target, budget=budget,
                             seed=seed)
            out.write(rec.to_json() + "\n")
            kind = rec.result.kind
            wins += kind == "builder_win"
            aborted += kind == "aborted"
    finally:
        if out is not sys.stdout:
            out.close()
    print("%d matches: %d builder wins, %d aborted"
          % (args.repeat, wins, aborted), file=sys.stderr)
    return 1 if aborted else 0


# ======================================================================
# bounds
# ======================================================================


def _parse_t_range(text: str) -> list[int]:
    if ".." in text:
        lo, _, hi = text.partition("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _cmd_bounds(args: argparse.Namespace) -> int:
    ts = _parse_t_range(args.t)
    alpha = ids.parse_fraction(args.alpha)
    mu = ids.parse_fraction(args.mu)
    nu = ids.parse_fraction(args.nu)
    if args.chain == "budgets":
        print("%4s  %22s  %22s  %22s"
              % ("t", "specifics_total", "adaptive_total", "bipartite_budget"))
        for t in ts:
            def cell(fn):
                try:
                    return str(fn())
                except BoundDomainError:
                    return "-"
            print("%4d  %22s  %22s  %22s" % (
                t,
                cell(lambda: budget_specifics(t).total),
                cell(lambda: budget_main(t, alpha, mu, nu).total),
                cell(lambda: "%.6g" % budget_bipartite(args.q, t))))
        return 0
    failures = 0
    for t in ts:
        try:
            if args.chain == "specifics":
                report = verify_specifics_chain(t)
            elif args.chain == "main":
                report = verify_main_chain(t, alpha, mu, nu)
            else:
                report = verify_bipartite_chain(args.q, t)
        except BoundDomainError as exc:
            print("t=%d: out of domain (%s)" % (t, exc))
            continue
        failures += sum(not l.holds for l in report.links)
        if args.json:
            print(json.dumps(report.to_json_dict()))
        else:
            print("== t=%d %s" % (t, "" if report.all_hold
                                  else " [%d links fail]"
                                  % sum(not l.holds for l in report.links)))
            print(report.format_table())
    if failures:
        print("%d links fail across the range" % failures, file=sys.stderr)
    return 0


# ======================================================================
# verify-kst
# ======================================================================


def _random_instance(rng: random.Random, r: int, s: int,
                     epsilon: Fraction) -> KstInstance:
    """At-threshold instance with edge density a hair above epsilon."""
    m, n = kst_thresholds(epsilon, r, s)
    target_edges = int(epsilon * m * n) + 1
    cells = [(i, j) for i in range(m) for j in range(n)]
    rng.shuffle(cells)
    rows = [0] * m
    for i, j in cells[:target_edges]:
        rows[i] |= 1 << j
    return KstInstance(m=m, n=n, epsilon=epsilon, r=r, s=s, adj=tuple(rows))


def _cmd_verify_kst(args: argparse.Namespace) -> int:
    if args.instance:
        with open(args.instance) as fh:
            inst = KstInstance.from_json_dict(json.load(fh))
        try:
            res = extract_krs(inst, seed=args.seed)
        except KstNotFound as exc:
            print("FAIL: no K_{%d,%d} found (density %s)"
                  % (inst.r, inst.s, exc.density), file=sys.stderr)
            return 1
        print(json.dumps({"v": 1, "a_set": list(res.a_set),
                          "b_set": list(res.b_set), "rounds": res.rounds,
                          "used_fallback": res.used_fallback}))
        return 0
    rng = random.Random(args.seed)
    epsilon = ids.parse_fraction(args.epsilon)
    bad = 0
    for i in range(args.batch):
        inst = _random_instance(rng, args.r, args.s, epsilon)
        try:
            res = extract_krs(inst, seed=rng.randrange(2 ** 30))
            print("instance %3d: ok (rounds=%d%s)"
                  % (i, res.rounds, ", fallback" if res.used_fallback else ""))
        except KstNotFound as exc:
            bad += 1
            print("instance %3d: FAIL (density %s)" % (i, exc.density))
    print("%d/%d extractions succeeded" % (args.batch - bad, args.batch),
          file=sys.stderr)
    return 1 if bad else 0


# ======================================================================
# serve
# ======================================================================


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import bind_address, create_app
    from .session import SessionStore

    host, port = bind_address()
    if args.host:
        host = args.host
    if args.port:
        port = args.port
    app = create_app(SessionStore(log_path=args.log))
    uvicorn.run(app, host=host, port=port, log_level="info")
    return 0


# ======================================================================
# parser
# ======================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="online-ramsey",
        description="Builder/Painter game engine, solver, and bound tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact game value of a small target")
    p.add_argument("--target", required=True,
                   help="K4, P5, or K3,3 style name")
    p.add_argument("--q", type=int, default=2, help="number of colours")
    p.add_argument("--max-budget", type=int, default=12,
                   help="search envelope in edges")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-table", action="store_true",
                   help="disable the position table (cross-check mode)")
    p.add_argument("--emit-certificate", metavar="PATH",
                   help="write the result with policies as JSON")
    p.add_argument("--verify", action="store_true",
                   help="replay both certificates before reporting")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("match", help="run matches, one JSON record per line")
    p.add_argument("--builder", required=True, help="e.g. chase:t=3")
    p.add_argument("--painter", required=True, help="e.g. random:seed=1")
    p.add_argument("--target", default=None,
                   help="defaults to the builder's own target")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--budget", default="auto",
                   help="edge budget, or 'auto' for the builder's declaration")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--seed-base", type=int, default=0)
    p.add_argument("--out", default=None, help="write records here instead "
                   "of stdout")
    p.set_defaults(fn=_cmd_match)

    p = sub.add_parser("bounds", help="budget and inequality-chain tables")
    p.add_argument("--chain", required=True,
                   choices=["specifics", "main", "bipartite", "budgets"])
    p.add_argument("--t", required=True, help="single value or range: 4..64")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--alpha", default="1/100")
    p.add_argument("--mu", default="99/100")
    p.add_argument("--nu", default="1/100")
    p.add_argument("--json", action="store_true",
                   help="one JSON report per line instead of tables")
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("verify-kst", help="run the biclique extractor")
    p.add_argument("--instance", metavar="PATH",
                   help="JSON instance file; omit for a random batch")
    p.add_argument("--batch", type=int, default=20,
                   help="number of random at-threshold instances")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--epsilon", default="1/4")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify_kst)

    p = sub.add_parser("serve", help="start the HTTP session API")
    p.add_argument("--host", default=None,
                   help="bind address (or ONLINE_RAMSEY_HOST)")
    p.add_argument("--port", type=int, default=None,
                   help="bind port (or ONLINE_RAMSEY_PORT)")
    p.add_argument("--log", default=None,
                   help="append-only JSON-lines session log")
    p.set_defaults(fn=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ids.UnknownStrategyError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except BoundDomainError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
