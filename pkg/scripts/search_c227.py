#!/usr/bin/env python3
"""Exhaustive sweep of the 2^15 normalized extension vectors of C_2_27.

Runs the search at two worker counts, checks that the reports are
byte-identical and that the published vector is among the hits.
"""

import argparse
import sys

from lcdforge import artifacts, gf
from lcdforge.search import SearchSpec, run_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, nargs=2, default=(8, 1))
    ap.add_argument("--target-d", type=int, default=8)
    ap.add_argument("-o", "--output", default="search_c227.txt")
    args = ap.parse_args()

    reports = []
    for w in args.workers:
        spec = SearchSpec("C_2_27", "extend-binary", args.target_d, mode="exhaustive", workers=w)
        rep = run_search(spec)
        print(f"workers={w}: {len(rep.hits)} hits of {rep.admissible} admissible in {rep.elapsed:.1f}s")
        reports.append(rep)
    with open(args.output, "w") as fh:
        fh.write(reports[0].to_text())
    same = reports[0].to_text() == reports[1].to_text()
    printed = gf.format_vector(2, artifacts.printed_vector("C_2_29"))
    found = any(h.x == printed for h in reports[0].hits)
    print(f"byte-identical: {same}; published vector among hits: {found}; report in {args.output}")
    return 0 if same and found else 1


if __name__ == "__main__":
    sys.exit(main())
