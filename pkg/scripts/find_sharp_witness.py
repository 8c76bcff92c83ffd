#!/usr/bin/env python3
"""Search small graphs for runs attaining the worst-case termination round
e + d + 1 and print the witnesses as JSON."""

from __future__ import annotations

import argparse
import sys

from amflood.analysis import find_sharp_example
from amflood.jsonio import dumps_stable


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=8, help="largest node count (2..8)")
    ap.add_argument("--eccentricity", type=int, default=2,
                    help="target source eccentricity")
    ap.add_argument("--diameter", type=int, default=4, help="target diameter")
    args = ap.parse_args()

    result = find_sharp_example(args.n_max,
                                target=(args.eccentricity, args.diameter))
    sys.stdout.write(dumps_stable(result.to_json_obj()))
    return 0 if result.target is not None else 1


if __name__ == "__main__":
    raise SystemExit(main())
