"""Time the compiled search kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Workloads: all embeddings of random graphs into a larger random graph, all
homomorphisms into a dense graph, and canonical codes of random graphs.
The last row times a whole 64-step graph build in a fresh interpreter with
each backend selected through ``FRAISSE_PURE``.
"""
import argparse
import os
import random
import subprocess
import sys
import time
import timeit

from fraisse import _kernels_py

try:
    from fraisse import _kernels
except ImportError:
    _kernels = None


def random_relation(rng, n, p):
    rel = bytearray(n * n)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                rel[i * n + j] = rel[j * n + i] = 1
    return bytes(rel)


def workloads(seed=0):
    rng = random.Random(seed)
    big = random_relation(rng, 12, 0.5)
    small = [random_relation(rng, 4, 0.5) for _ in range(6)]
    dense = random_relation(rng, 7, 0.8)
    codes = [random_relation(rng, 8, 0.4) for _ in range(4)]

    def embeddings(mod):
        return sum(len(mod.extend_maps(s, 4, big, 12, [-1] * 4, True, True, 0)) for s in small)

    def homs(mod):
        return sum(len(mod.extend_maps(s, 4, dense, 7, [-1] * 4, False, False, 0)) for s in small)

    def canon(mod):
        return [mod.canonical_code(r, 8)[0] for r in codes]

    return {"embeddings 4->12": embeddings, "homomorphisms 4->7": homs, "canonical codes n=8": canon}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; only the fallback can be timed")
    print(f"{'workload':<24}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for name, fn in workloads().items():
        slow = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{name:<24}{slow:>10.3f}{'-':>10}{'-':>9}")
            continue
        if fn(_kernels) != fn(_kernels_py):
            raise SystemExit(f"{name}: backends disagree")
        fast = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:<24}{slow:>10.3f}{fast:>10.3f}{slow / fast:>8.1f}x")
    if _kernels is not None:
        slow, fast = build_seconds(pure=True), build_seconds(pure=False)
        print(f"{'graph build, 64 steps':<24}{slow:>10.3f}{fast:>10.3f}{slow / fast:>8.1f}x")


BUILD = "from fraisse import FINGRAPH; from fraisse.generic import build_fraisse; build_fraisse(FINGRAPH, steps=64)"


def build_seconds(pure):
    env = dict(os.environ)
    env.pop("FRAISSE_PURE", None)
    if pure:
        env["FRAISSE_PURE"] = "1"
    start = time.perf_counter()
    subprocess.run([sys.executable, "-c", BUILD], env=env, check=True)
    return time.perf_counter() - start


if __name__ == "__main__":
    main()
