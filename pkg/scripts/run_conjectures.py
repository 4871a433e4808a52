"""Run both conjecture harnesses with checkpointing and write JSON reports."""

import argparse
from pathlib import Path

from blockspec.lab import test_conjecture_1, test_conjecture_2, write_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=11, help="vertex bound for conjecture 1")
    ap.add_argument("--parts", type=int, default=4, help="part-size bound for conjecture 2")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--resume", action="store_true")
    args = ap.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    runs = [
        ("conjecture1", lambda ck: test_conjecture_1(args.n_max, jobs=args.jobs, checkpoint=ck, resume=args.resume)),
        ("conjecture2", lambda ck: test_conjecture_2(args.parts, jobs=args.jobs, checkpoint=ck, resume=args.resume)),
    ]
    failed = False
    for name, run in runs:
        out = args.outdir / f"{name}.json"
        report = run(args.outdir / f"{name}.checkpoint.json")
        write_report(report, out)
        graphs = sum(t["count"] for t in report.tiers)
        print(f"{name}: {graphs} graphs, {len(report.counterexamples)} counterexamples, "
              f"complete={report.complete}, {report.elapsed:.1f}s -> {out}")
        failed |= not report.verified
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
