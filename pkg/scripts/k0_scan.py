"""Tabulate the per-k status of the trace identity on the small (r, n) grid."""
import argparse

from ktrace.acceptance import trace_grid
from ktrace.vertexops import check_theoremA


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--D-z", dest="D_z", type=int, default=6)
    ap.add_argument("--kmax", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    fs = trace_grid()
    print(f"{'r':>2} {'n':>2} {'f':>4} {'g':>4}  k0  statuses (e=equal p=pole m=mismatch)")
    for r, n in ((1, 1), (1, 2), (2, 1)):
        for fn, f in fs.items():
            for gn, g in fs.items():
                rep = check_theoremA(f, g, r, n, range(args.kmax + 1), args.D_z, seed=args.seed)
                st = "".join(c.status[0] for c in rep.checks)
                print(f"{r:>2} {n:>2} {fn:>4} {gn:>4}  {rep.k0!s:>2}  {st}", flush=True)


if __name__ == "__main__":
    main()
