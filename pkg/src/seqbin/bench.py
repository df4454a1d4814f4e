"""Scaling measurements for the propagator.

Bench instances use anchored domains (0 and d - 1 always present) and
D(N) = [1, n], so long chains stay feasible and every pass does full work.
"""

from __future__ import annotations

import statistics
import time
from typing import Iterable

import numpy as np

from .domain import Domain
from .dp import propagate
from .fast import select_kernel
from .generate import random_instance


def bench_instance(family: str, n: int, d: int, seed: int):
    rng = np.random.default_rng([seed, n, d])
    return random_instance(family, n, d, rng, n_domain=Domain.interval(1, n), anchored=True)


def _warm_up(family: str, specialize: bool) -> None:
    # trigger JIT compilation outside the timed region
    propagate(bench_instance(family, 4, 3, 0), specialize=specialize)


def bench_row(family: str, n: int, d: int, reps: int = 3, seed: int = 0,
              specialize: bool = True) -> dict:
    inst = bench_instance(family, n, d, seed)
    times, out = [], None
    for _ in range(max(1, reps)):
        t0 = time.perf_counter()
        out = propagate(inst, specialize=specialize)
        times.append(time.perf_counter() - t0)
    return {
        "family": family,
        "n": n,
        "d": d,
        "sum_d": int(sum(len(x) for x in inst.x_domains)),
        "specialized": bool(specialize and select_kernel(inst.c_rel, inst.b_rel) is not None),
        "median_s": round(statistics.median(times), 6),
        "work": out.work,
        "passes": out.passes,
        "status": out.status,
    }


def run_bench(family: str, ns: Iterable[int], ds: Iterable[int], reps: int = 3,
              seed: int = 0, specialize: bool = True) -> list[dict]:
    """One row per (n, d) with the median wall time and the work counter."""
    _warm_up(family, specialize)
    return [bench_row(family, n, d, reps, seed, specialize) for n in ns for d in ds]
