"""Run every law battery on seeded random instances and print the summary table."""
import argparse
import json
import time
from pathlib import Path

from polyadjoint.batteries import LAWS, run_battery, summarize
from polyadjoint.cli import format_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--laws", nargs="*", default=sorted(LAWS))
    ap.add_argument("--all-dims", action="store_true", help="run each law in every supported dimension")
    ap.add_argument("--out", type=Path, help="JSON lines output")
    args = ap.parse_args()
    reports = []
    for law in args.laws:
        dims = LAWS[law].dims if args.all_dims else (LAWS[law].default_d,)
        for d in dims:
            t = time.perf_counter()
            batch = run_battery(law, args.count, args.seed, d, "float" if law == "edge-identity" else "exact")
            reports.extend(batch)
            print(f"{law} d={d}: {sum(r.passed is True for r in batch)}/{len(batch)} in {time.perf_counter() - t:.1f}s", flush=True)
    if args.out:
        args.out.write_text("".join(json.dumps(r.to_json()) + "\n" for r in reports))
    print(format_table(summarize(reports)))
    return 1 if any(r.passed is False for r in reports) else 0


if __name__ == "__main__":
    raise SystemExit(main())
