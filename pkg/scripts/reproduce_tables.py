#!/usr/bin/env python3
"""Print the tight right-hand sides and decomposition coefficients of the
two tripods, subset by subset, verifying the closed form against the
Moebius oracle on the way."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from arbora.catalog import tripod_neg, tripod_pos
from arbora.minkowski import minkowski_coefficients, tight_rhs

SUBSETS = [
    frozenset({1}),
    frozenset({2}),
    frozenset({1, 2}),
    frozenset({1, 3}),
    frozenset({1, 2, 3}),
    frozenset({1, 3, 4}),
    frozenset({1, 2, 3, 4}),
]


def label(subset):
    return "{" + ",".join(str(v) for v in sorted(subset)) + "}"


def main():
    for name, tree in (("all-negative tripod", tripod_neg()), ("center-positive tripod", tripod_pos())):
        table = minkowski_coefficients(tree, check=True)
        print(f"\n{name} (oracle check: {'PASS' if table.checked else 'FAIL'})")
        print(f"  {'subset':<12} {'z':>4} {'y':>4}")
        for subset in SUBSETS:
            print(f"  {label(subset):<12} {tight_rhs(tree, subset):>4} {table.y_of(subset):>4}")


if __name__ == "__main__":
    main()
