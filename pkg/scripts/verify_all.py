#!/usr/bin/env python3
"""Verify every fixture against its published values and print the reports.

Structural checks by default; --full adds distance work (the two 2^37
sweeps take a few minutes each on one core, the n = 81 and 94 codes get
sampled floors instead of exact sweeps).
"""

import argparse
import sys
import time

from metacirc import enumeration
from metacirc.fixtures import names
from metacirc.verify import DEFAULT_FLOOR_SAMPLES, DEFAULT_FLOOR_SEED, verify_fixture


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true",
                        help="include exact sweeps and sampled floors")
    parser.add_argument("--samples", type=int, default=DEFAULT_FLOOR_SAMPLES,
                        help="sample count for the weight-floor checks")
    parser.add_argument("--seed", type=int, default=DEFAULT_FLOOR_SEED)
    parser.add_argument("--fixtures", nargs="*", default=None,
                        help="subset of fixture names (default: all)")
    args = parser.parse_args()

    enumeration.warm_up()
    level = "full" if args.full else "structural"
    all_passed = True
    t0 = time.perf_counter()
    for name in args.fixtures or names():
        report = verify_fixture(name, level=level, floor_samples=args.samples,
                                floor_seed=args.seed)
        print(report.format_text())
        print()
        all_passed &= report.passed
    print(f"total: {time.perf_counter() - t0:.1f}s, "
          f"{'all fixtures PASS' if all_passed else 'FAILURES present'}")
    return 0 if all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
