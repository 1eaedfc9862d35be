#!/usr/bin/env python3
"""Write the Mandel-parameter sweep CSVs for the three benchmark parameter
sets, one file per displacement magnitude, into an output directory
(default ./sweeps).  Each family brackets its critical displacement."""

import pathlib
import sys

from dpagauss.cli import main as cli_main

FAMILIES = (
    (0.2, 0.1, (0.3, 0.3494, 0.4)),
    (0.1, 0.2, (0.3, 0.4961, 0.6507, 1.0)),
    (1.0, 1.0, (8.0, 9.7140, 12.0)),
)


def main() -> int:
    out_dir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "sweeps")
    out_dir.mkdir(parents=True, exist_ok=True)
    for nbar, r, alphas in FAMILIES:
        for alpha in alphas:
            path = out_dir / f"mandel_nbar{nbar}_r{r}_alpha{alpha}.csv"
            code = cli_main([
                "sweep", "--nbar", str(nbar), "--r", str(r),
                "--alpha", str(alpha), "--u-start", "0", "--u-stop", "1.2",
                "--u-steps", "241", "--workers", "1", "--out", str(path),
            ])
            if code != 0:
                return code
            print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
