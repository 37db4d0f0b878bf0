#!/usr/bin/env python3
"""Sweep the small-tree corpus: for every signature of every shape, verify
the realization certificate, the fiber partition, the singleton recursion,
and the coefficient oracle.  Prints one summary line per shape."""

import argparse
import sys
from math import factorial
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from arbora.catalog import all_signatures, tree_shapes
from arbora.fans import fiber
from arbora.geometry import singleton_count_recursive, verify_realization
from arbora.minkowski import minkowski_coefficients
from arbora.spines import enumerate_maximal_spines


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-nu", type=int, default=6)
    args = parser.parse_args()

    for n in range(1, args.max_nu + 1):
        for edges in tree_shapes(n):
            signatures = 0
            facet_counts = set()
            singleton_counts = set()
            for tree in all_signatures(edges, n):
                assert verify_realization(tree)
                spines = enumerate_maximal_spines(tree)
                assert sum(len(fiber(tree, s)) for s in spines) == factorial(n)
                singleton_counts.add(singleton_count_recursive(tree))
                minkowski_coefficients(tree, max_nu=args.max_nu, check=True)
                facet_counts.add(len(spines))
                signatures += 1
            shape = ",".join(f"{u}-{v}" for u, v in edges) or "point"
            print(
                f"nu={n} shape [{shape}]: {signatures} signatures OK, "
                f"facets {sorted(facet_counts)}, singletons {sorted(singleton_counts)}"
            )


if __name__ == "__main__":
    main()
