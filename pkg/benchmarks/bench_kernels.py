"""Time the compiled kernels against the pure-Python fallback.

Each backend runs in its own interpreter because the backend is fixed at
import time by KSPP_DISABLE_NUMBA.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from kspp import _accel
from kspp.graph import build_extremal_gstar, connected_edge_masks, cycle_graph
from kspp.parity import kspp_condition, kspp_definition
from kspp.random_graphs import random_connected_graph
from kspp.spectral import q_spectral_radius

repeat = int(sys.argv[1])
rng = np.random.default_rng(1)
gstar = build_extremal_gstar(18, 3, 2)
sparse = cycle_graph(17)
dense = random_connected_graph(60, 0.3, rng)
cases = {
    "condition_sweep G*(18,3,2)": lambda: kspp_condition(gstar, 2),
    "definition_sweep m=17": lambda: kspp_definition(sparse, 2),
    "power_iteration n=60": lambda: q_spectral_radius(dense),
    "enumerate n=6": lambda: connected_edge_masks(6),
}
for fn in cases.values():  # compile / warm up
    fn()
out = {"backend": _accel.backend(), "seconds": {}}
for name, fn in cases.items():
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out["seconds"][name] = best
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("KSPP_DISABLE_NUMBA", None)
    if disable:
        env["KSPP_DISABLE_NUMBA"] = "1"
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if fast["backend"] != "numba":
        print("numba is not available; only the fallback was timed", file=sys.stderr)
    print(f"{'kernel':<30}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    for name, t_fast in fast["seconds"].items():
        t_slow = slow["seconds"][name]
        print(f"{name:<30}{t_fast:>12.4f}{t_slow:>12.4f}{t_slow / t_fast:>9.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
