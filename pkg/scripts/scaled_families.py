#!/usr/bin/env python3
"""Parameters of the simplex-juxtaposed families for s = 1..S (arithmetic only)."""

import argparse

from lcdforge import artifacts


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", type=int, choices=[2, 3, 4], required=True)
    ap.add_argument("--s", type=int, default=3)
    args = ap.parse_args()
    for base in sorted(artifacts.FAMILIES[args.field]):
        cells = []
        for s in range(1, args.s + 1):
            fam = artifacts.scaled_family(args.field, base, s)
            n, k, d = fam["params"]
            cell = f"[{n},{k},{d}]"
            if "eaqecc" in fam:
                cell += f" {fam['eaqecc']}"
            cells.append(cell)
        print(f"{base}: " + "  ".join(cells))


if __name__ == "__main__":
    main()
