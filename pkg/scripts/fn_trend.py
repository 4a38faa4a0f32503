"""Exact finite-N approximants at rational z and their distance to the localization value."""
import argparse
from fractions import Fraction

from ktrace.localization import f_N, f_N_pruned_count, moduli_inner
from ktrace.symfunc import SymFunc


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--Nmax", type=int, default=4)
    ap.add_argument("--z1", type=Fraction, default=Fraction(1, 3))
    ap.add_argument("--z2", type=Fraction, default=Fraction(1, 5))
    args = ap.parse_args()
    vals = {"z1": args.z1, "z2": args.z2, "w1": Fraction(1)}
    one = SymFunc.one(4)
    target = moduli_inner(one, one, 1, 1, args.k, vals).evaluate({})
    print(f"localization: {target} ~ {float(target):.8f}")
    for N in range(1, args.Nmax + 1):
        val = f_N(one, one, 1, 1, args.k, N, vals, v=1).evaluate({})
        kept, pruned = f_N_pruned_count(1, 1, N)
        print(f"N={N}: {val} ~ {float(val):.8f}  diff {float(abs(val - target)):.3e}  subsets kept {kept} pruned {pruned}")


if __name__ == "__main__":
    main()
