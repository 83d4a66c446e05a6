#!/usr/bin/env python3
"""Re-derive the six default trust-model weights from the bundled dataset.

The default scheme's TM weights are the unique least-squares solution of

    normalized property columns (17 x 6)  @  w  =  published raw TM scores

This script runs the solve, prints the solution next to the shipped values,
and fails loudly if the system stops being uniquely solvable or the residual
grows. Run it whenever the dataset or the default scheme file changes.
"""

from __future__ import annotations

import sys

from ivmf.calibration import REFERENCE_TM_RAW, derive_tm_weights
from ivmf.dataio import load_bundled_dataset, load_bundled_weights
from ivmf.model import SecurityProperty

RESIDUAL_LIMIT = 1e-3


def main() -> int:
    dataset = load_bundled_dataset()
    solve = derive_tm_weights(dataset, REFERENCE_TM_RAW)
    shipped = load_bundled_weights("default").tm_weights()

    print(f"matrix rank: {solve.matrix_rank} (unique: {solve.unique})")
    print(f"max |residual|: {solve.max_residual:.2e} (limit {RESIDUAL_LIMIT:.0e})")
    print()
    print(f"{'property':<8} {'solved':>12} {'shipped':>9}")
    ok = solve.unique and solve.max_residual < RESIDUAL_LIMIT
    for prop in SecurityProperty:
        solved = solve.weights[prop]
        expected = shipped[prop]
        match = abs(solved - expected) < 1e-3
        ok = ok and match
        flag = "" if match else "  <-- MISMATCH"
        print(f"{prop.value:<8} {solved:>12.6f} {expected:>9.2f}{flag}")

    print()
    print("OK: shipped default weights reproduce the reference scores"
          if ok else "FAILED: see above")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
