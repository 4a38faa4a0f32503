"""Split the Grassmannian grid by whether the Schur index of f fits in the m x m box.

Prints equal/total for the in-box and out-of-box parts and the smallest
failing pairings.
"""
import argparse

from ktrace.acceptance import schur_upto, weight_sets
from ktrace.corealg import RatFunc
from ktrace.localization import grass_inner
from ktrace.vertexops import grass_rhs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--Nmax", type=int, default=4)
    ap.add_argument("--deg", type=int, default=3)
    ap.add_argument("--sets", type=int, default=2)
    args = ap.parse_args()
    tally = {"in_box": [0, 0], "outside": [0, 0]}
    fails = []
    for N in range(1, args.Nmax + 1):
        for X in weight_sets(N, args.sets):
            for m in range(N + 1):
                for mu, f in schur_upto(args.deg, maxlen=m):
                    part = "outside" if mu and mu[0] > m else "in_box"
                    for nu, g in schur_upto(args.deg):
                        lhs = grass_inner(f, g, X, m)
                        ok = lhs == RatFunc(grass_rhs(f, g, X, m, N - m))
                        tally[part][0] += ok
                        tally[part][1] += 1
                        if not ok:
                            fails.append((N, m, tuple(mu), tuple(nu), str(lhs)))
    for part, (ok, tot) in tally.items():
        print(f"{part:8s} {ok}/{tot}")
    for row in sorted(fails)[:10]:
        print("  N=%d m=%d f=s%s g=s%s localization=%s" % row)


if __name__ == "__main__":
    main()
