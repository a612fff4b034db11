#!/usr/bin/env python3
"""Runs `fppsim gauss-check` and validates the JSON certificate report."""
import json
import subprocess
import sys


def main() -> int:
    cli = sys.argv[1]
    out = subprocess.run([cli, "gauss-check"], capture_output=True, text=True, check=True)
    report = json.loads(out.stdout)
    row = dict(zip(report["columns"], report["rows"][0]))
    assert row["logconcavity_min"] >= -1e-12, row
    assert abs(row["logconcavity_at_0"] - (0.25 - 1.0 / (2.0 * 3.141592653589793))) < 1e-12
    assert row["quantile_derivative_fd_error"] <= 1e-4
    assert row["dispersive_worst_margin"] >= -1e-9
    for interval in report["metadata"]["iid_fluct_intervals"]:
        assert interval["found"], interval
        assert interval["c"] >= 0.05
    print("gauss-check report ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
