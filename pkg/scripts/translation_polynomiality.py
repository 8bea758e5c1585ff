"""Degree in t of Omega_s(P + t; x) at a fixed generic x, from exact grid interpolation."""
import argparse
import random

from polyadjoint.canonical import drop
from polyadjoint.families import cube, prism, random_polytope, simplex
from polyadjoint.theorems import verify_translation_laws


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s-max", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    items = [("triangle", simplex(2)), ("square", cube(2)), ("tetrahedron", simplex(3)), ("prism", prism(simplex(2)))]
    items += [(f"random2-{i}", random_polytope(2, rng, n_max=6)) for i in range(3)]
    for name, P in items:
        r = verify_translation_laws(P, args.s_max, [(1,) * P.dim], seed=args.seed)
        print(f"{name:14s} drop={drop(P)} degrees={r.lhs['degrees']} pass={r.passed}")


if __name__ == "__main__":
    main()
