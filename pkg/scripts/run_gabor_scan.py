"""Scan time-frequency lattices over several abelian bases.

Writes one CSV per base into --outdir, re-audits every file against
the density bound, and prints a per-base summary.  Exits nonzero if
any audit finds a violation.
"""

import argparse
import os
import sys

from latdim import audit_rows, build_tf, gabor_scan, read_scan_csv, write_scan_csv
from latdim.cli import _token_group
from latdim.groups import cyclic_factor_generators, dual_group

DEFAULT_BASES = ["Z2", "Z3", "Z4", "Z5", "Z6", "Z2xZ2", "Z8", "Z2xZ4"]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bases", nargs="*", default=DEFAULT_BASES)
    ap.add_argument("--nmax", type=int, default=3)
    ap.add_argument("--dmax", type=int, default=3)
    ap.add_argument("--construct", action="store_true",
                    help="also build Parseval generators on feasible cells")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--outdir", default="scan_out")
    args = ap.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    bad = 0
    for base_spec in args.bases:
        base, factors = _token_group(base_spec)
        gens, orders = cyclic_factor_generators(list(factors))
        tf = build_tf(base, dual_group(base, gens, orders))
        rows = gabor_scan(
            tf, args.nmax, args.dmax, construct=args.construct, seed=args.seed
        )
        path = os.path.join(args.outdir, f"scan_{base_spec}.csv")
        write_scan_csv(rows, path)
        problems = audit_rows(read_scan_csv(path))
        bad += len(problems)
        frames = sum(1 for r in rows if r["frame"] == "yes")
        bases_cells = sum(1 for r in rows if r["basis"] == "yes")
        print(
            f"{base_spec:>6}: {len(rows)} cells, {frames} frame, "
            f"{bases_cells} basis, {len(problems)} violations -> {path}"
        )
        for p in problems:
            print(f"  violation: {p}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
