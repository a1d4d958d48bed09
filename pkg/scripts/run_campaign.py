"""Randomized verification campaign over several rho values.

    python3 scripts/run_campaign.py --samples 125 --out campaign

For each rho writes ``scan_rho_<rho>.csv`` and prints the summary line
(violation count, slack histogram, largest measured radii). Seeds are derived
from ``--seed`` and the rho index, so reruns are byte-identical.
"""
import argparse
import json
import logging
import sys
import time
from pathlib import Path

from rhocalc.cli import SCAN_COLUMNS, RunConfig, _csv_text, scan_rows, scan_summary


def parse_args(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rho", type=float, nargs="+", default=[1.0, 1.5, 2.0, 3.0])
    p.add_argument("--samples", type=int, default=125)
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--out", default="campaign")
    return p.parse_args(argv)


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING)
    args = parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    total = 0
    for j, rho in enumerate(args.rho):
        cfg = RunConfig(command="scan", rho=rho, seed=args.seed + j, samples=args.samples, format="csv")
        t0 = time.perf_counter()
        rows = scan_rows(rho, args.samples, cfg.seed)
        summary = scan_summary(rows)
        (out / f"scan_rho_{rho:.2f}.csv").write_text(_csv_text(cfg.comment(), SCAN_COLUMNS, rows))
        total += summary["violations"]
        print(f"rho={rho:g} ({time.perf_counter() - t0:.0f}s): {json.dumps(summary, sort_keys=True)}")
    print(f"total violations: {total}")
    return 0 if total == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
