"""Compare the numba and numpy kernel backends on the hot paths.

Run:  python benchmarks/bench_backends.py [--modules N] [--seed S]

Spawns one subprocess per backend (the choice is fixed at import via
GRADEDSK_BACKEND) and times the degree -1/0/1/2 cohomology of a seeded
random module batch plus the brute-force oracles, printing a table.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = """
import json, random, sys, time
import numpy as np
from gradedsk.cohomology import backend
from gradedsk.cohomology.groups import FiniteGroup
from gradedsk.cohomology.modulezoo import random_module
from gradedsk.cohomology.tate import tate, brute_tate
from gradedsk.cohomology.les import les_check

n_modules = int(sys.argv[1])
seed = int(sys.argv[2])
rng = random.Random(seed)
groups = [
    FiniteGroup.abelian([2]),
    FiniteGroup.abelian([4]),
    FiniteGroup.abelian([2, 2]),
    FiniteGroup.generalized_dihedral([4]),
]
mods = []
for k in range(n_modules):
    mods.append(random_module(groups[k % len(groups)], rng))

t0 = time.time()
sigs = []
for m in mods:
    sigs.append([list(tate(i, m).invariants) for i in (-1, 0, 1, 2)])
t_tate = time.time() - t0

t0 = time.time()
for m in mods:
    brute_tate(-1, m)
    brute_tate(0, m)
t_brute = time.time() - t0

t0 = time.time()
dih = FiniteGroup.generalized_dihedral([4])
les_sigs = []
for k in range(max(2, n_modules // 4)):
    m = random_module(dih, rng, max_order=256)
    les_sigs.append(les_check(m).ok)
t_les = time.time() - t0

print(json.dumps({
    "backend": backend.BACKEND,
    "tate_seconds": t_tate,
    "brute_seconds": t_brute,
    "les_seconds": t_les,
    "signature": sigs,
    "les_ok": all(les_sigs),
}))
"""


def run_backend(mode: str, n_modules: int, seed: int) -> dict:
    env = dict(os.environ, GRADEDSK_BACKEND=mode)
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(n_modules), str(seed)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--modules", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    results = {}
    for mode in ("numpy", "numba"):
        t0 = time.time()
        try:
            results[mode] = run_backend(mode, args.modules, args.seed)
            results[mode]["wall"] = time.time() - t0
        except subprocess.CalledProcessError as exc:
            print("%s backend failed:\n%s" % (mode, exc.stderr))
            return 1
    if results["numpy"]["signature"] != results["numba"]["signature"]:
        print("BACKENDS DISAGREE")
        return 1
    print("backends agree on %d modules (les ok: %s)" % (
        args.modules, results["numba"]["les_ok"]))
    print("%-8s %12s %12s %12s %10s" % (
        "backend", "tate [s]", "oracle [s]", "les [s]", "wall [s]"))
    for mode in ("numpy", "numba"):
        r = results[mode]
        print("%-8s %12.3f %12.3f %12.3f %10.1f" % (
            mode, r["tate_seconds"], r["brute_seconds"], r["les_seconds"],
            r["wall"]))
    sp = results["numpy"]["tate_seconds"] / max(results["numba"]["tate_seconds"], 1e-9)
    print("tate speedup (numba over numpy): %.1fx" % sp)
    return 0


if __name__ == "__main__":
    sys.exit(main())
