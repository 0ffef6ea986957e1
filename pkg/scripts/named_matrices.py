"""Minimal zeros, irreducibility and angle relations for the Horn matrix and
a sweep of equal-angle T-matrices.

    python scripts/named_matrices.py --steps 8
"""
import argparse
import math

from minzero.census import check_family
from minzero.irred import irreducibility_report, lin_rel_check
from minzero.matgen import gen_horn, gen_tmat
from minzero.zeros import find_minimal_zeros


def report(name, A, tol):
    mz = find_minimal_zeros(A, tol)
    irr = irreducibility_report(A, mz, tol=tol)
    rel = lin_rel_check(A, mz, tol)
    fam = mz.family()
    conds = check_family(fam)
    print(f"{name}")
    print(f"  supports        {fam.literal()}")
    print(f"  irreducible     N_n: {irr.wrt_nonnegative.holds}  S_+: {irr.wrt_psd.holds} (rank {irr.wrt_psd.rank})")
    print(f"  relations       " + " ".join(f"{k}:{v}" for k, v in rel.summary().items()))
    print(f"  conditions      " + " ".join(f"{k}:{v.status}" for k, v in conds.items()))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--steps", type=int, default=6, help="equal angles theta = k*pi/(5*(steps+1))")
    ap.add_argument("--tol", type=float, default=1e-9)
    args = ap.parse_args(argv)
    report("Horn (exact)", gen_horn(), 0)
    for k in range(1, args.steps + 1):
        t = k * math.pi / (5 * (args.steps + 1))
        report(f"T-matrix theta = {t:.4f} (x5)", gen_tmat([t] * 5), args.tol)


if __name__ == "__main__":
    main()
