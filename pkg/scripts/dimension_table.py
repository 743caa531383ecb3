#!/usr/bin/env python3
"""Print quotient dimension tables for a weight functional.

Examples:

    python scripts/dimension_table.py --weight even --max-level 3
    python scripts/dimension_table.py --weight-json my_weight.json --band 3
"""

import argparse
import json
import sys

from vlike.cli import emit_dimension_table
from vlike.functionals import functional, functional_from_json
from vlike.hw import DimensionEngine, TruncationParams

BUILTIN = {
    "even": functional([(1, [1]), (-1, [1])]),
    "one": functional([(1, [1])]),
    "zero": functional([]),
    "ramp": functional([(1, [0, 1])]),
}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--weight", choices=sorted(BUILTIN), default="even")
    parser.add_argument("--weight-json", default=None,
                        help="path to a functional JSON file (overrides --weight)")
    parser.add_argument("--max-level", type=int, default=2)
    parser.add_argument("--band", type=int, default=2)
    parser.add_argument("--raising-band", type=int, default=None)
    args = parser.parse_args(argv)

    if args.weight_json:
        with open(args.weight_json, "r", encoding="utf-8") as fh:
            psi = functional_from_json(json.load(fh))
    else:
        psi = BUILTIN[args.weight]
    params = TruncationParams(
        band=args.band,
        raising_band=args.raising_band if args.raising_band is not None else args.band,
        max_level=args.max_level,
    )
    engine = DimensionEngine.for_functional(psi)
    sys.stdout.write(emit_dimension_table(engine.dimension_table(params), "csv"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
