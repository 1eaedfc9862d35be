#!/usr/bin/env python3
"""Solve the critical displacement for the three benchmark parameter sets
and print the resulting phase-transition table."""

import json
import sys

from dpagauss import classify_behavior, find_critical_alpha

BENCHMARKS = ((0.2, 0.1), (0.1, 0.2), (1.0, 1.0))


def main() -> int:
    records = []
    for nbar, r in BENCHMARKS:
        result = find_critical_alpha(nbar, r)
        classification = classify_behavior(nbar, r, result.alpha_c)
        records.append({
            "nbar": nbar,
            "r": r,
            "alpha_c": result.alpha_c,
            "tangency_u": result.tangency_u,
            "mechanism": result.mechanism.value,
            "zeros": list(classification.zeros),
        })
        tangency = ("-" if result.tangency_u is None
                    else f"{result.tangency_u:.4f}")
        print(f"nbar={nbar:<4} r={r:<4} alpha_c={result.alpha_c:.4f} "
              f"tangency_u={tangency} mechanism={result.mechanism.value}")
    if len(sys.argv) > 1:
        with open(sys.argv[1], "w", encoding="utf-8") as fh:
            json.dump(records, fh, indent=2, sort_keys=True)
        print(f"wrote {sys.argv[1]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
