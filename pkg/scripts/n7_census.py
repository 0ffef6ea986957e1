"""n = 7 census (about 3 min for (i)-(iv), 20-30 min with (v), one core).

Runs the rows of the census table that include condition (iii), which keeps
the search tree small enough to finish; the (iii)-free rows are refused.

    python scripts/n7_census.py --conditions i-iv --jobs 8 --out n7_iv.json
"""
import argparse
import json
import sys
import time

from minzero.census import TABLE2, enumerate_classes, normalize_conditions


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--conditions", default="i-v")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--strict-chain", action="store_true")
    ap.add_argument("--out", help="write the classes as JSON here")
    args = ap.parse_args(argv)
    conds = normalize_conditions(args.conditions)
    t0 = time.time()

    def progress(done, total, nodes):
        print(f"[{time.time() - t0:8.0f}s] branch {done}/{total}, {nodes} nodes", file=sys.stderr, flush=True)

    res = enumerate_classes(7, conds, jobs=args.jobs, strict_chain=args.strict_chain, allow_long=True,
                            progress=progress)
    expected = dict((row, cells.get(7)) for row, cells in TABLE2).get(conds)
    print(f"n=7 {','.join(conds)}: {res.count} classes, {res.nodes} nodes, {res.elapsed:.0f}s"
          + (f" (published: {expected})" if expected is not None else ""))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(res.to_json(), fh)
    return 0


if __name__ == "__main__":
    sys.exit(main())
