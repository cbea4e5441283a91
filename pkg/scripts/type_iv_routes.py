"""Side-by-side type IV tables from the two deformation routes."""
import argparse
from fractions import Fraction

from localgw.scatter import boundary_invariants


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cutoff", type=int, default=5)
    ap.add_argument("--both-orientations", action="store_true",
                    help="also run the two-II route with the pairing negated (slow)")
    args = ap.parse_args()
    cols = {"four-I1": boundary_invariants("IV", args.cutoff, route="four-I1"),
            "two-II": boundary_invariants("IV", args.cutoff, route="two-II")}
    if args.both_orientations:
        cols["two-II (-)"] = boundary_invariants("IV", args.cutoff, route="two-II", orientation=-1)
    keys = sorted({k for t in cols.values() for k in t.omega if k > (0, 0)})
    print(f"{'class':<10}" + "".join(f"{c:>12}" for c in cols))
    for k in keys:
        print(f"{str(k):<10}" + "".join(f"{str(t.omega.get(k, Fraction(0))):>12}" for t in cols.values()))


if __name__ == "__main__":
    main()
