"""Run the acceptance criteria and print one line per criterion.

    python scripts/run_acceptance.py            # all nine
    python scripts/run_acceptance.py 3 6 --json results/acceptance.json
"""
import argparse
import json
import time
from pathlib import Path

from ktrace.acceptance import CRITERIA


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("numbers", nargs="*", type=int)
    ap.add_argument("--json", type=Path, help="also dump the full results here")
    args = ap.parse_args()
    results = []
    for i in args.numbers or sorted(CRITERIA):
        t0 = time.perf_counter()
        res = CRITERIA[i]()
        print(f"{res.line()}  [{time.perf_counter() - t0:.1f}s]", flush=True)
        results.append(res.to_json_obj())
    if args.json:
        args.json.parent.mkdir(parents=True, exist_ok=True)
        args.json.write_text(json.dumps(results, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
