"""Exact two-colour game values for short paths, with certificates.

Solves the n-vertex path for each n in a range, prints the value with
search statistics, and (optionally) replays both strategy certificates
to confirm them.  P6 is the practical frontier for a single process;
expect hours there and pass a generous --budget.

Example:

    python scripts/solve_paths.py --max-n 5 --verify
"""

from __future__ import annotations

import argparse
import time

from online_ramsey.graph import TargetSpec
from online_ramsey.solver import solve, verify_certificate

# exact values known from exhaustive runs, used only to annotate output
KNOWN = {2: 1, 3: 3, 4: 5, 5: 7, 6: 10}


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=2)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--budget", type=int, default=10,
                    help="search envelope in edges (default 10)")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--verify", action="store_true",
                    help="replay both certificates after each solve")
    args = ap.parse_args(argv)

    for n in range(args.min_n, args.max_n + 1):
        t0 = time.monotonic()
        res = solve(TargetSpec.path(n, 2), max_budget=args.budget,
                    threads=args.threads)
        elapsed = time.monotonic() - t0
        if res.value is None:
            print("P%d: no win within %d edges (lower bound %d)  [%.2fs]"
                  % (n, args.budget, res.lower_bound, elapsed))
            continue
        note = ""
        if n in KNOWN and KNOWN[n] != res.value:
            note = "  ** differs from recorded value %d" % KNOWN[n]
        print("P%d: value %d  nodes=%d table_hits=%d  [%.2fs]%s"
              % (n, res.value, res.stats.nodes, res.stats.table_hits,
                 elapsed, note))
        if args.verify:
            report = verify_certificate(res)
            print("    certificates: builder %s (%d leaves), painter %s (%d leaves)"
                  % ("ok" if report.builder_ok else "BAD", report.builder_leaves,
                     "ok" if report.painter_ok else "BAD", report.painter_leaves))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
