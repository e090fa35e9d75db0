"""Build a d-copy orthonormal super system over one abelian base.

With d equal to the base order the full-group orbit of a single
window gives an orthonormal basis of the stacked space; smaller d
gives a strictly overcomplete Parseval frame.  Prints the bounds and
the worst Gram deviation, and optionally saves the generators.
"""

import argparse
import sys

import numpy as np

from latdim import (
    build_tf,
    dump_json,
    full_subgroup,
    generators_to_json,
    gram_matrix,
    multiwindow_system,
    superframe_demo,
)
from latdim.cli import _token_group
from latdim.groups import cyclic_factor_generators, dual_group


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--base", default="Z4")
    ap.add_argument("--d", type=int, default=None,
                    help="copies to stack (default: the base order)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, metavar="FILE")
    args = ap.parse_args()

    base, factors = _token_group(args.base)
    gens, orders = cyclic_factor_generators(list(factors))
    tf = build_tf(base, dual_group(base, gens, orders))
    d = args.d if args.d is not None else base.order

    demo = superframe_demo(tf, d, seed=args.seed)
    system = multiwindow_system(tf.rep, full_subgroup(tf.group), demo.generators)
    gram = gram_matrix(system)
    ortho = float(np.abs(gram - np.eye(gram.shape[0])).max())

    print(f"base {args.base}, group order {tf.group.order}, d {d}")
    print(f"bounds {demo.report.lower:.12g} {demo.report.upper:.12g}")
    print(f"gram-deviation {ortho:.3e}")
    print(f"riesz-basis {'yes' if demo.report.is_riesz_basis else 'no'}")
    if args.out:
        dump_json(generators_to_json(demo.generators), args.out)
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
