#!/usr/bin/env python3
"""Sweep the intermediate-series infeasibility certificate over a grid.

For every probe pair (a, k) the compatibility constraint fails at l = 2 with
residue k**4 / a**2; this script prints the certificates as JSON lines.
"""

import argparse
import json
import sys
from fractions import Fraction

from vlike.intermediate import falsify
from vlike.scalars import parse_scalar


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--a-values", nargs="+", default=["1", "2", "1/2", "-3"],
                        help="step coefficients to probe, as p/q strings")
    parser.add_argument("--k-max", type=int, default=3)
    parser.add_argument("--lmax", type=int, default=4)
    args = parser.parse_args(argv)

    for a_text in args.a_values:
        a = parse_scalar(a_text)
        for k in range(1, args.k_max + 1):
            cert = falsify(a, k, args.lmax)
            expected = Fraction(k ** 4) / (a * a)
            payload = cert.to_json()
            payload["residue_matches_closed_form"] = cert.residue == expected
            print(json.dumps(payload, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
