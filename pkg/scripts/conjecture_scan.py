#!/usr/bin/env python3
"""Scan Pontryagin products against the available quantum data.

For every pair of affine Grassmannian classes from cosets whose translation
lies in [-N, N]^rank, expand the product, decompose each support element
as w t_{nu + eta} (nu the sum of the input translations), and compare the
coefficient with the matching quantum constant when one is known: the
embedded rank-one fixture plus degree-zero constants generated by the
classical finite-type oracle.  Entries without data are reported as
evidence, not failures.

Usage: python3 scripts/conjecture_scan.py [--type A1|A2] [--max-translation N]
Exit code 0 when no mismatch was found, 1 otherwise.
"""

import argparse
import sys
import time

from kschubert.constants import (
    classical_quantum_data,
    conjecture_check,
    element_sort_key,
    load_quantum_data,
)
from kschubert.ring import format_gae
from kschubert.rootsys import build_root_system
from kschubert.weyl import (
    coset_min,
    finite_element,
    format_element,
    length,
    translation,
)


def grassmannian_reps(datum, bound):
    # one representative per coset whose translation lies in the box
    coords = [()]
    for _ in range(datum.rank):
        coords = [c + (k,) for c in coords for k in range(-bound, bound + 1)]
    reps = {coset_min(translation(datum, c)) for c in coords}
    return sorted(reps, key=element_sort_key)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--type", default="A1", choices=["A1", "A2"])
    parser.add_argument("--max-translation", type=int, default=2)
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args()

    datum = build_root_system(args.type)
    reps = grassmannian_reps(datum, args.max_translation)
    print(
        f"type {datum.label}: {len(reps)} classes from coset translations in "
        f"[-{args.max_translation}, {args.max_translation}]^{datum.rank}, "
        f"max length {max(length(x) for x in reps)}"
    )

    data = [d for d in load_quantum_data() if d.u.datum == datum]
    pairs = sorted(
        {
            (finite_element(datum, x.wmat), finite_element(datum, y.wmat))
            for x in reps
            for y in reps
        },
        key=lambda p: (element_sort_key(p[0]), element_sort_key(p[1])),
    )
    data.extend(classical_quantum_data(datum, pairs))

    start = time.monotonic()
    matches = mismatches = nodata = 0
    for i, x in enumerate(reps):
        for y in reps[i:]:
            report = conjecture_check(x, y, data)
            matches += report.matches
            mismatches += report.mismatches
            nodata += sum(1 for e in report.entries if e.verdict == "no-data")
            for e in report.entries:
                if e.verdict == "mismatch" or args.verbose:
                    print(
                        f"  {format_element(x)} * {format_element(y)} -> "
                        f"{format_element(e.z)}  eta={list(e.eta)}  "
                        f"c={format_gae(e.c_value, datum, True)}  [{e.verdict}]"
                    )
    elapsed = time.monotonic() - start
    print(
        f"match {matches}, mismatch {mismatches}, no-data {nodata} "
        f"({elapsed:.2f} s)"
    )
    return 0 if mismatches == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
