#!/usr/bin/env python3
"""Print the nine-map suite — predicted chaos flavor per map, with the
hand-checked rationale — and confirm the union/composition algebra laws."""

import argparse
import sys

from gshift import (
    check_composition_law,
    check_product_law,
    counterexample_suite,
    parity_down,
    parity_up,
    successor,
)

FLAVORS = ("li-yorke", "distributional", "omega", "dense", "transitive")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=100,
                        help="sample count for the algebra laws")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    entries = counterexample_suite()
    width = max(len(e.name) for e in entries)
    for e in entries:
        marks = " ".join(
            f"{flavor}={truth.removeprefix('proven_')}"
            for flavor, truth in zip(FLAVORS, e.computed.truths())
        )
        status = "ok " if e.passed else "BAD"
        print(f"{status} {e.name.ljust(width)}  {marks}")
        print(f"     {e.rationale}")
    passed = sum(e.passed for e in entries)
    print(f"\n{passed}/{len(entries)} suite entries match their expected profiles")

    laws_ok = (
        check_product_law(successor(), parity_up(), args.samples, args.seed)
        and check_product_law(parity_up(), parity_down(), args.samples, args.seed)
        and check_composition_law(parity_up(), parity_down(), args.samples, args.seed)
    )
    print(f"algebra laws ({args.samples} samples): {'pass' if laws_ok else 'FAIL'}")
    return 0 if passed == len(entries) and laws_ok else 1


if __name__ == "__main__":
    sys.exit(main())
