"""Fuzz every inequality and print a per-bound tally with the worst violations.

    python scripts/fuzz_report.py --seed 1 --count 500 --out results/fuzz
"""

import argparse
import pathlib
from collections import defaultdict

from sombor import bounds as bl
from sombor.fileio import bound_jsonl, fuzz_summary_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--n-max", type=int, default=40)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--worst", type=int, default=3, help="violations to show per bound")
    ap.add_argument("--out")
    args = ap.parse_args()

    res = bl.fuzz_bounds(args.seed, args.count, n_max=args.n_max, workers=args.workers)
    print(fuzz_summary_csv(res.summary), end="")

    by_bound = defaultdict(list)
    for r in res.violations():
        by_bound[r.bound].append(r)
    for b, reps in by_bound.items():
        print(f"\n{b.value}: {len(reps)} violations, most negative slack:")
        for r in sorted(reps, key=lambda r: r.slack)[: args.worst]:
            print(f"  slack={r.slack:.6g} lhs={r.lhs:.6g} rhs={r.rhs:.6g}  {r.instance['label']}")

    if args.out:
        out = pathlib.Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "reports.jsonl").write_text(bound_jsonl(res.reports))
        (out / "summary.csv").write_text(fuzz_summary_csv(res.summary))
        print(f"\nwritten to {out}/")


if __name__ == "__main__":
    main()
