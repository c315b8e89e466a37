"""Time the numba kernels against their numpy twins on corpus-sized inputs.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends are imported directly, so FQPLAB_BACKEND does not matter here.
Each kernel is called once untimed first (numba compiles or loads its cache).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fqplab.deciders import _ideal_sum_table
from fqplab.kernels import _numba, _numpy
from fqplab.modules import _presentation, module_from_ideal
from fqplab.ideals import maximal_ideal
from fqplab.specparse import build_ring


def best_of(fn, repeat: int) -> float:
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    cube = build_ring("Poly(2,[x,y],[x^3,x^2*y,x*y^2,y^3])")
    ex32 = build_ring("Poly(2,[x,y],[x^2,x*y,y^2])")
    z64 = build_ring("Z(64)")
    big = build_ring("TrivExt(Poly(2,[x1,x2,x3],[x1^2,x1*x2,x1*x3,x2^2,x2*x3,x3^2]),[x1,x2,x3],2)")

    def axioms(R):
        return lambda k: k.axiom_violation(R.add, R.mul, R.zero, R.one)

    def sumset(R):
        a = np.arange(0, R.size, 2)
        b = np.arange(0, R.size, 3)
        return lambda k: k.sumset(R.add, a, b)

    def closure(R):
        mask = np.zeros(R.size, dtype=np.bool_)
        mask[[1, 2]] = True
        return lambda k: k.additive_closure(R.add, mask, R.zero)

    def homs(R):
        M = module_from_ideal(maximal_ideal(R))
        p = _presentation(M)
        return lambda k: k.hom_search(p.coef, p.orbit, p.cyc, M.add, M.add, M.action, M.zero, False)

    def gaussian(R):
        return lambda k: k.gaussian_violation(R.mul, R.principal, R.zero)

    def content(R, d):
        _, pid, isum = _ideal_sum_table(R, 100_000)
        return lambda k: k.content_search(R.mul, R.add, pid, isum, R.zero, d, 0)

    yield "axiom_violation  |R|=128", axioms(big)
    yield "sumset           |R|=128", sumset(big)
    yield "additive_closure |R|=128", closure(big)
    yield "hom_search       End(m), ex3.2", homs(ex32)
    yield "hom_search       End(m), cube", homs(cube)
    yield "gaussian_violation Z/64", gaussian(z64)
    yield "content_search   ex3.2, d=1", content(ex32, 1)
    yield "content_search   Z/64, d=1", content(z64, 1)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'kernel':<36} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, make in cases():
        t_nb = best_of(lambda: make(_numba), args.repeat)
        t_np = best_of(lambda: make(_numpy), args.repeat)
        print(f"{name:<36} {t_nb * 1e3:>8.2f}ms {t_np * 1e3:>8.2f}ms {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
