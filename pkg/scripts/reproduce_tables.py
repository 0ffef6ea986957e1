"""Recompute the census tables for n = 4..6 and diff them against the
published values.

    python scripts/reproduce_tables.py            # both tables, text
    python scripts/reproduce_tables.py --json out.json

Table 2 takes several minutes on one core (the (i),(ii) census at n = 6 has
15933 classes and every one passing (iii) or (iv) gets an exact LP).
"""
import argparse
import json
import sys

from minzero.census import reproduce_table


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--which", choices=("1", "2", "both"), default="both")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--strict-chain", action="store_true")
    ap.add_argument("--json", help="also write the reports here")
    args = ap.parse_args(argv)
    reports = []
    for which in (("1", "2") if args.which == "both" else (args.which,)):
        rep = reproduce_table(which, jobs=args.jobs, strict_chain=args.strict_chain)
        print(f"== table {which} ({rep.elapsed:.0f}s)")
        print(rep.text())
        reports.append(rep)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2)
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
