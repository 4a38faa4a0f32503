"""Evaluate both candidate constants in the n -> infinity trace identity for several ranks."""
from fractions import Fraction

from ktrace.vertexops import random_w_values, z_infinity_check


def main(D_z=4):
    cases = [(0, {}), (1, {"w1": Fraction(1)}), (1, {"w1": Fraction(3, 2)}), (2, random_w_values(2, 0))]
    for r, vals in cases:
        rep = z_infinity_check(r, D_z, vals or None)
        shown = ", ".join(f"{k}={v}" for k, v in vals.items()) or "-"
        flags = "  ".join(f"{name}:{'holds' if ok else 'fails'}" for name, (_, ok) in rep.candidates.items())
        print(f"r={r} ({shown})  {flags}")


if __name__ == "__main__":
    main()
