"""Recompute every catalog table and write a JSON report.

    python3 scripts/reproduce_tables.py [--out results/tables.json] [--seed 0]
"""
import argparse
import sys
from pathlib import Path

from multigme.cli import main


def run():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results/tables.json")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--restarts", type=int, default=64)
    args = ap.parse_args()
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    return main([
        "reproduce", "all", "--seed", str(args.seed),
        "--restarts", str(args.restarts), "--json", args.out,
    ])


if __name__ == "__main__":
    sys.exit(run())
