#!/usr/bin/env python3
"""Drive every applicable CLI command over the shipped spec corpus.

Prints one line per (spec, command) pair with the exit code and a short
summary pulled from the JSON output.  Exits nonzero if anything that should
succeed does not.
"""

import json
import subprocess
import sys
from pathlib import Path

SPECS = Path(__file__).resolve().parent.parent / "specs"

RUNS = [
    ("one_object_k2", ["validate"]),
    ("one_object_k2", ["coend", "--functor", "F"]),
    ("one_object_k2", ["cohom", "--x", "K2", "--y", "K2"]),
    ("one_object_k2", ["reconstruct", "--coalgebra", "M2", "--seeds", "V"]),
    ("one_object_k2", ["equiv", "--coalgebra", "M2", "--seeds", "V",
                       "--probes", "regular"]),
    ("one_object_k2", ["factor", "--functor", "F", "--transformation", "t_id"]),
    ("one_object_k2", ["bcoend", "--functor", "F", "--field", "padic:2"]),
    ("glued_pair", ["validate"]),
    ("glued_pair", ["coend", "--functor", "F"]),
    ("glued_pair", ["bcoend", "--functor", "F", "--field", "padic:2"]),
    ("discrete_points", ["coend", "--functor", "F"]),
    ("discrete_points", ["ccoend", "--functor", "F", "--controls", "unit"]),
    ("discrete_points", ["ccoend", "--functor", "F", "--controls", "merge01"]),
    ("z2_grading", ["validate"]),
    ("z2_grading", ["bialgebra", "--functor", "F"]),
    ("z2_grading", ["hopf", "--functor", "F"]),
    ("z2_grading", ["ccoend", "--functor", "F", "--controls", "shift"]),
    ("z2_grading", ["reconstruct", "--coalgebra", "KZ2", "--seeds", "k0,k1"]),
    ("z2_grading", ["equiv", "--coalgebra", "KZ2", "--seeds", "k0,k1",
                    "--probes", "regular,ksum"]),
    ("z3_grading", ["hopf", "--functor", "F"]),
    ("z3_grading", ["hopf", "--functor", "F", "--field", "fp:2"]),
    ("z3_grading", ["bcoend", "--functor", "F", "--field", "padic:3"]),
]

SUMMARY_KEYS = ["ok", "carrier_dim", "verdict", "plain_carrier_dim"]


def main() -> int:
    failures = 0
    for spec, args in RUNS:
        cmd = [sys.executable, "-m", "coendforge", args[0],
               str(SPECS / f"{spec}.json"), *args[1:]]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        summary = ""
        try:
            data = json.loads(proc.stdout)
            bits = [f"{k}={data[k]}" for k in SUMMARY_KEYS if k in data]
            summary = ", ".join(bits)
        except json.JSONDecodeError:
            summary = proc.stdout.strip()[:60]
        status = "ok" if proc.returncode == 0 else f"exit {proc.returncode}"
        print(f"{spec:18s} {' '.join(args):55s} {status:8s} {summary}")
        if proc.returncode != 0:
            failures += 1
    print(f"\n{len(RUNS) - failures}/{len(RUNS)} runs succeeded")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
