#!/usr/bin/env python3
"""Print bounded finite-quotient sets for a few small lamp groups."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from lamprigid import FieldSpec, ModulePresentation, truncated_qu


def main() -> None:
    for p, n, bound in [(2, 1, 8), (3, 1, 8), (2, 2, 8)]:
        qs = truncated_qu(ModulePresentation.free(FieldSpec(p), n), bound)
        print(f"(Z/{p})^{n} wr Z, quotients of order <= {bound}:")
        for fp in qs.fingerprints:
            print(f"  order {fp.order:2d}  {fp.describe()}")
        print()


if __name__ == "__main__":
    main()
