"""Scan the inequality chains over a range of t and report margins.

For each chain (``main``, ``specifics``, ``bipartite``) the sweep prints
the smallest log2 margin across all links at every sampled t, flagging
any t where a link fails.  Useful for locating the crossover where an
asymptotic comparison starts to hold.

Example:

    python scripts/run_bounds_sweep.py --t-max 4096
    python scripts/run_bounds_sweep.py --chain bipartite --q 3 --json
"""

from __future__ import annotations

import argparse
import json
import sys

from online_ramsey.bounds import (
    BoundDomainError,
    verify_bipartite_chain,
    verify_main_chain,
    verify_specifics_chain,
)

CHAINS = ("main", "specifics", "bipartite")


# ======================================================================
# Sweep
# ======================================================================


def _sample_ts(t_min: int, t_max: int) -> list[int]:
    """Geometric sampling: every t up to 32, then doubling."""
    ts = list(range(t_min, min(t_max, 32) + 1))
    t = 64
    while t <= t_max:
        ts.append(t)
        t *= 2
    return ts


def _report(chain: str, q: int, t: int):
    if chain == "main":
        return verify_main_chain(t)
    if chain == "specifics":
        return verify_specifics_chain(t)
    return verify_bipartite_chain(q, t)


def sweep(chain: str, q: int, ts: list[int]) -> list[dict]:
    rows = []
    for t in ts:
        try:
            rep = _report(chain, q, t)
        except BoundDomainError as exc:
            rows.append({"chain": chain, "t": t, "error": str(exc)})
            continue
        worst = min(rep.links, key=lambda link: link.margin)
        failing = [link.name for link in rep.links if not link.holds]
        rows.append({"chain": chain, "t": t, "all_hold": rep.all_hold,
                     "min_margin_log2": worst.margin,
                     "tightest_link": worst.name, "failing": failing})
    return rows


# ======================================================================
# Entry point
# ======================================================================


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--chain", choices=CHAINS + ("all",), default="all")
    ap.add_argument("--q", type=int, default=2,
                    help="colour count for the bipartite chain (default 2)")
    ap.add_argument("--t-min", type=int, default=2)
    ap.add_argument("--t-max", type=int, default=2**20)
    ap.add_argument("--json", action="store_true",
                    help="emit one JSON document per sampled t")
    args = ap.parse_args(argv)

    chains = CHAINS if args.chain == "all" else (args.chain,)
    ts = _sample_ts(args.t_min, args.t_max)
    failures = 0
    for chain in chains:
        for row in sweep(chain, args.q, ts):
            if args.json:
                print(json.dumps(row, sort_keys=True))
                continue
            if "error" in row:
                print("%-10s t=%-8d out of domain: %s"
                      % (chain, row["t"], row["error"]))
                continue
            mark = "ok  " if row["all_hold"] else "FAIL"
            print("%-10s t=%-8d %s  min margin %+9.3f  (%s)"
                  % (chain, row["t"], mark, row["min_margin_log2"],
                     row["failing"][0] if row["failing"]
                     else row["tightest_link"]))
            if not row["all_hold"]:
                failures += 1
    if failures:
        print("%d sampled points with failing links" % failures, file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
