#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Spawns one subprocess per backend (selection happens at import time) and
compares wall times for the closure/witness-scan heavy workloads:

    python benchmarks/bench.py
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def workload() -> dict[str, float]:
    import dlcmi
    from dlcmi.varieties import VarietyTag

    timings: dict[str, float] = {}
    ex1 = dlcmi.from_recipe("ex1")
    mv6 = dlcmi.mv_chain(6)

    start = time.perf_counter()
    for _ in range(20):
        dlcmi.principal_oracle.cache_clear()
        report = dlcmi.verify_pt(ex1)
        assert report.ok
    timings["verify_pt mixed 9-element product x20"] = time.perf_counter() - start

    start = time.perf_counter()
    for _ in range(20):
        dlcmi.principal_oracle.cache_clear()
        report = dlcmi.verify_pt(mv6)
        assert report.ok
    timings["verify_pt mv:6 x20"] = time.perf_counter() - start

    corpus = dlcmi.enumerate_algebras(3, VarietyTag.DLCMI)
    start = time.perf_counter()
    for _ in range(10):
        dlcmi.principal_oracle.cache_clear()
        for alg in corpus:
            dlcmi.verify_pt(alg)
    timings["verify_pt size-3 corpus x10"] = time.perf_counter() - start

    start = time.perf_counter()
    for _ in range(50):
        dlcmi.principal_oracle.cache_clear()
        for a in range(ex1.size):
            for b in range(ex1.size):
                dlcmi.principal_oracle(ex1, a, b)
    timings["principal closures 9-element x50"] = time.perf_counter() - start
    return timings


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--inner", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.inner:
        import dlcmi

        print(json.dumps({"backend": dlcmi.KERNEL_BACKEND, "timings": workload()}))
        return

    results = {}
    for label, extra_env in (("compiled", {}), ("pure", {"DLCMI_PURE": "1"})):
        env = dict(os.environ, **extra_env)
        out = subprocess.run(
            [sys.executable, __file__, "--inner"],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        )
        data = json.loads(out.stdout)
        results[label] = data
        if label == "compiled" and data["backend"] != "compiled":
            print("note: compiled kernels unavailable, comparing pure vs pure")

    width = max(len(k) for k in results["compiled"]["timings"]) + 2
    print(f"{'workload':<{width}} {'compiled':>10} {'pure':>10} {'speedup':>9}")
    for name, fast in results["compiled"]["timings"].items():
        slow = results["pure"]["timings"][name]
        ratio = slow / fast if fast > 0 else float("inf")
        print(f"{name:<{width}} {fast:>9.3f}s {slow:>9.3f}s {ratio:>8.1f}x")


if __name__ == "__main__":
    main()
