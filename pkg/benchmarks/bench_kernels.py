"""Compiled core versus pure-Python kernels.

Kernel timings call both implementations in-process on identical inputs and
check that they agree.  Workload timings run a real computation twice in
fresh interpreters, once with ORBIGW_PURE_PYTHON=1.

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import json
import os
import random
import subprocess
import sys
import timeit

from gmpy2 import mpq

from orbigw import _kernels_py
from orbigw.exactalg import CycField, _add_exponents

try:
    from orbigw import _ckernels
except ImportError:
    _ckernels = None


WORKLOADS = {
    "R symplecticity, Z/3 on C^3, order 6": (
        "from orbigw.groupchar import build_orbifold\n"
        "from orbigw.rmatrix import RMatrix\n"
        "assert not RMatrix(build_orbifold([3], [[1], [1], [1]]), 6).symplectic_defect()"
    ),
    "graph sum, Z/3 on C^2, genus 2 tau_4": (
        "from orbigw.groupchar import build_orbifold\n"
        "from orbigw.graphsum import CorrelatorRequest, GraphSum, monomial_series\n"
        "orb = build_orbifold([3], [[1], [2]])\n"
        "GraphSum(orb, 4).correlator(CorrelatorRequest(orb, 2, [monomial_series(orb, 1, 4)], normalization='twisted'))"
    ),
    "graph sum, Z/2 x Z/2 on C^3, genus 0 five points": (
        "from orbigw.groupchar import build_orbifold\n"
        "from orbigw.graphsum import CorrelatorRequest, GraphSum, monomial_series\n"
        "orb = build_orbifold([2, 2], [[1, 0], [0, 1], [1, 1]])\n"
        "GraphSum(orb, 2).correlator(CorrelatorRequest(orb, 0, [monomial_series(orb, c, 0) for c in (0, 1, 2, 3, 0)], normalization='twisted'))"
    ),
}


def random_cyc(rng: random.Random, size: int):
    return tuple(mpq(rng.randint(-50, 50), rng.randint(1, 30)) for _ in range(size))


def random_poly(rng: random.Random, terms: int, r: int = 3):
    return {
        tuple(mpq(rng.randint(-6, 6), 3) for _ in range(r)): mpq(rng.randint(-50, 50), rng.randint(1, 30))
        for _ in range(terms)
    }


def kernel_rows(repeat: int):
    rng = random.Random(7)
    rows = []
    for n in (3, 4, 12):
        field = CycField.get(n)
        size = field.degree
        pairs = [(random_cyc(rng, size), random_cyc(rng, size)) for _ in range(200)]
        powers = field.sparse_powers

        def run(kernel):
            for a, b in pairs:
                kernel.cyc_mul(a, b, powers, n)

        if _ckernels is not None:
            for a, b in pairs[:20]:
                assert _ckernels.cyc_mul(a, b, powers, n) == _kernels_py.cyc_mul(a, b, powers, n)
        rows.append((f"cyc_mul Q(zeta_{n}) x200", run))
    a, b = random_poly(rng, 40), random_poly(rng, 40)

    def run_poly(kernel):
        kernel.poly_mul(a, b, _add_exponents)

    if _ckernels is not None:
        assert _ckernels.poly_mul(a, b, _add_exponents) == _kernels_py.poly_mul(a, b, _add_exponents)
    rows.append(("poly_mul 40x40 terms", run_poly))

    out = []
    for name, run in rows:
        pure = min(timeit.repeat(lambda: run(_kernels_py), number=1, repeat=repeat))
        compiled = min(timeit.repeat(lambda: run(_ckernels), number=1, repeat=repeat)) if _ckernels else None
        out.append({"name": name, "python_s": pure, "compiled_s": compiled})
    return out


def workload_rows(repeat: int):
    out = []
    for name, code in WORKLOADS.items():
        times = {}
        for label, env_value in (("python_s", "1"), ("compiled_s", "")):
            env = dict(os.environ, ORBIGW_PURE_PYTHON=env_value)
            script = (
                "import time\nt = time.perf_counter()\n" + code + "\nprint(time.perf_counter() - t)"
            )
            best = None
            for _ in range(repeat):
                done = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
                elapsed = float(done.stdout.strip().splitlines()[-1])
                best = elapsed if best is None else min(best, elapsed)
            times[label] = best
        out.append({"name": name, **times})
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", action="store_true", help="print machine-readable rows")
    args = parser.parse_args(argv)
    if _ckernels is None:
        print("compiled core not built; only the pure-Python column is meaningful", file=sys.stderr)
    rows = kernel_rows(args.repeat) + workload_rows(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'benchmark':<52} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for row in rows:
        pure, comp = row["python_s"], row["compiled_s"]
        speed = f"{pure / comp:7.2f}x" if comp else "    n/a"
        comp_text = f"{comp:10.4f}" if comp else "       n/a"
        print(f"{row['name']:<52} {pure:10.4f} {comp_text} {speed}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
