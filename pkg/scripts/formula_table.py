"""Print closed-form versus computed invariants for every shape up to nmax.

    python3 scripts/formula_table.py 7
    python3 scripts/formula_table.py 6 --rees --only-mismatch
"""

import argparse

from sparserees.checks import check_fiber_invariants, check_rees_invariants
from sparserees.sparse import valid_shapes


def fmt(v):
    return "(" + ",".join(map(str, v)) + ")" if isinstance(v, list) else str(v)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("nmax", type=int, nargs="?", default=7)
    ap.add_argument("--rees", action="store_true", help="Rees algebra instead of the special fiber")
    ap.add_argument("--only-mismatch", action="store_true")
    args = ap.parse_args()
    check = check_rees_invariants if args.rees else check_fiber_invariants
    mismatches = 0
    for sh in valid_shapes(args.nmax):
        rep = check(sh)
        bad = [c for c in rep.comparisons if not c.equal]
        mismatches += bool(bad)
        if args.only_mismatch and not bad:
            continue
        cells = [f"{c.quantity}={fmt(c.computed)}" + ("" if c.equal else f" [formula {fmt(c.formula)}]")
                 for c in rep.comparisons]
        print(f"{str(sh):10} {'ok ' if not bad else 'BAD'}  " + "  ".join(cells))
    print(f"{mismatches} shape(s) disagree")


if __name__ == "__main__":
    main()
