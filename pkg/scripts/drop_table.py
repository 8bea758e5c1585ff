"""Print drops, adjoint degrees and 3D labels for the curated corpus and standard families."""
import argparse
import time

from polyadjoint.canonical import drop
from polyadjoint.families import corpus, crosspolytope, cube, pythagorean_corpus
from polyadjoint.theorems import classify_polytope


def rows(include_24cell):
    items = list(corpus()) + list(pythagorean_corpus())
    items += [(f"cube{d}", cube(d)) for d in (1, 5)] + [(f"cross{d}", crosspolytope(d)) for d in (5,)]
    if include_24cell:
        from polyadjoint.families import cell24

        items.append(("24-cell", cell24()))
    for name, P in items:
        t = time.perf_counter()
        dp = drop(P)
        expected = P.m - P.dim - 1
        label = classify_polytope(P).label if P.dim <= 3 else "-"
        yield name, P.dim, P.m, expected, expected - dp, dp, label, time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--with-24cell", action="store_true")
    args = ap.parse_args()
    print(f"{'polytope':32s} {'d':>2s} {'m':>3s} {'exp':>4s} {'deg':>4s} {'drop':>4s}  {'label':24s} secs")
    for name, d, m, exp, deg, dp, label, secs in rows(args.with_24cell):
        print(f"{name:32s} {d:2d} {m:3d} {exp:4d} {deg:4d} {dp:4d}  {str(label):24s} {secs:.2f}")


if __name__ == "__main__":
    main()
