"""Linear-time stretch-count recurrences for specific (C, B) families.

Each kernel takes one pair of consecutive domains ``a = D(x_i)`` and
``b = D(x_{i+1})`` (both sorted), the already computed counts of ``b`` and
returns, for every value of ``a``, the minimum and maximum number of
C-stretches of the suffix starting at ``x_i``. Work is
``O(len(a) + len(b))``; the returned ``work`` is the number of values
touched, used by the scaling benchmarks.

The min and max sides use the sentinels ``big`` (any value above the
largest possible count) and ``-1``; adding one to a sentinel keeps it a
sentinel for the purpose of the final min/max.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from numba import njit

from . import binrel as br
from .binrel import BinRel


class PairCounts(NamedTuple):
    s_min: np.ndarray
    s_max: np.ndarray
    work: int


@dataclass(frozen=True)
class PairState:
    """Inputs of one suffix step: ``left`` gets counts from ``right``."""

    left: np.ndarray
    right: np.ndarray
    s_min: np.ndarray
    s_max: np.ndarray
    c_rel: BinRel
    b_rel: BinRel
    big: int

    def __post_init__(self):
        for name in ("left", "right", "s_min", "s_max"):
            object.__setattr__(self, name,
                               np.ascontiguousarray(getattr(self, name), dtype=np.int64))


# --- kernels --------------------------------------------------------------

@njit(cache=True)
def _monotone_c(a, b, smin, smax, big, support_below, strict_below):
    na, nb = a.shape[0], b.shape[0]
    lo_min = np.empty(na, np.int64)
    lo_max = np.empty(na, np.int64)
    hi_min = np.empty(na, np.int64)
    hi_max = np.empty(na, np.int64)
    # increasing sweep: aggregate over w < v (strict) or w <= v
    run_min, run_max, k = big, -1, 0
    for j in range(na):
        v = a[j]
        while k < nb and (b[k] < v if strict_below else b[k] <= v):
            if smin[k] < run_min:
                run_min = smin[k]
            if smax[k] > run_max:
                run_max = smax[k]
            k += 1
        lo_min[j] = run_min
        lo_max[j] = run_max
    # decreasing sweep over the complement
    run_min, run_max, k = big, -1, nb - 1
    for j in range(na - 1, -1, -1):
        v = a[j]
        while k >= 0 and (b[k] >= v if strict_below else b[k] > v):
            if smin[k] < run_min:
                run_min = smin[k]
            if smax[k] > run_max:
                run_max = smax[k]
            k -= 1
        hi_min[j] = run_min
        hi_max[j] = run_max
    out_min = np.empty(na, np.int64)
    out_max = np.empty(na, np.int64)
    for j in range(na):
        if support_below:
            out_min[j] = min(lo_min[j], hi_min[j] + 1)
            out_max[j] = max(lo_max[j], hi_max[j] + 1)
        else:
            out_min[j] = min(hi_min[j], lo_min[j] + 1)
            out_max[j] = max(hi_max[j], lo_max[j] + 1)
    return out_min, out_max, 2 * (na + nb)


@njit(cache=True)
def _eq_neq(a, b, smin, smax, big, is_eq):
    na, nb = a.shape[0], b.shape[0]
    # two best entries of b on each side
    m1, m2, x1, x2 = -1, -1, -1, -1
    for k in range(nb):
        if m1 < 0 or smin[k] < smin[m1]:
            m2 = m1
            m1 = k
        elif m2 < 0 or smin[k] < smin[m2]:
            m2 = k
        if x1 < 0 or smax[k] > smax[x1]:
            x2 = x1
            x1 = k
        elif x2 < 0 or smax[k] > smax[x2]:
            x2 = k
    out_min = np.empty(na, np.int64)
    out_max = np.empty(na, np.int64)
    k = 0
    for j in range(na):
        v = a[j]
        while k < nb and b[k] < v:
            k += 1
        member = k < nb and b[k] == v
        self_min = smin[k] if member else big
        self_max = smax[k] if member else -1
        # best over b without v itself
        if member and k == m1:
            other_min = smin[m2] if m2 >= 0 else big
        else:
            other_min = smin[m1] if m1 >= 0 else big
        if member and k == x1:
            other_max = smax[x2] if x2 >= 0 else -1
        else:
            other_max = smax[x1] if x1 >= 0 else -1
        if is_eq:
            out_min[j] = min(self_min, other_min + 1)
            out_max[j] = max(self_max, other_max + 1)
        else:
            out_min[j] = min(other_min, self_min + 1)
            out_max[j] = max(other_max, self_max + 1)
    return out_min, out_max, na + 2 * nb


@njit(cache=True)
def _window_extrema(vals, lo, hi, want_max, empty):
    """Extremum of ``vals[lo[j]:hi[j]]`` for nondecreasing ``lo`` and ``hi``.

    Ascending-minima scheme: the deque holds indices whose values are
    monotone, so the front is the extremum of the current window.
    """
    m = lo.shape[0]
    out = np.empty(m, np.int64)
    dq = np.empty(vals.shape[0], np.int64)
    head, tail, nxt = 0, 0, 0
    for j in range(m):
        while nxt < hi[j]:
            x = vals[nxt]
            if want_max:
                while tail > head and vals[dq[tail - 1]] <= x:
                    tail -= 1
            else:
                while tail > head and vals[dq[tail - 1]] >= x:
                    tail -= 1
            dq[tail] = nxt
            tail += 1
            nxt += 1
        while head < tail and dq[head] < lo[j]:
            head += 1
        out[j] = vals[dq[head]] if head < tail else empty
    return out


@njit(cache=True)
def _abs_leq(a, b, smin, smax, big, cst):
    na, nb = a.shape[0], b.shape[0]
    lo = np.empty(na, np.int64)
    hi = np.empty(na, np.int64)
    p, q = 0, 0
    for j in range(na):
        while p < nb and b[p] < a[j] - cst:
            p += 1
        while q < nb and b[q] <= a[j] + cst:
            q += 1
        lo[j] = p
        hi[j] = q
    win_min = _window_extrema(smin, lo, hi, False, big)
    win_max = _window_extrema(smax, lo, hi, True, -1)
    # non-supports: b[:lo] and b[hi:]
    pre_min = np.empty(nb + 1, np.int64)
    pre_max = np.empty(nb + 1, np.int64)
    suf_min = np.empty(nb + 1, np.int64)
    suf_max = np.empty(nb + 1, np.int64)
    pre_min[0], pre_max[0] = big, -1
    for k in range(nb):
        pre_min[k + 1] = min(pre_min[k], smin[k])
        pre_max[k + 1] = max(pre_max[k], smax[k])
    suf_min[nb], suf_max[nb] = big, -1
    for k in range(nb - 1, -1, -1):
        suf_min[k] = min(suf_min[k + 1], smin[k])
        suf_max[k] = max(suf_max[k + 1], smax[k])
    out_min = np.empty(na, np.int64)
    out_max = np.empty(na, np.int64)
    for j in range(na):
        out_min[j] = min(win_min[j], min(pre_min[lo[j]], suf_min[hi[j]]) + 1)
        out_max[j] = max(win_max[j], max(pre_max[lo[j]], suf_max[hi[j]]) + 1)
    return out_min, out_max, 3 * (na + nb)


@njit(cache=True)
def _incnv(a, b, smin, smax, big, b_leq):
    na, nb = a.shape[0], b.shape[0]
    out_min = np.empty(na, np.int64)
    out_max = np.empty(na, np.int64)
    run_min, run_max = big, -1
    if b_leq:
        # B-supports of v are w >= v: grow the admitted set from the top
        k = nb - 1
        for j in range(na - 1, -1, -1):
            v = a[j]
            while k >= 0 and b[k] > v:
                if smin[k] < run_min:
                    run_min = smin[k]
                if smax[k] > run_max:
                    run_max = smax[k]
                k -= 1
            member = k >= 0 and b[k] == v
            if not member and run_max < 0:
                raise ValueError("value without B-support; prune B-coherence first")
            self_min = smin[k] if member else big
            self_max = smax[k] if member else -1
            out_min[j] = min(self_min, run_min + 1)
            out_max[j] = max(self_max, run_max + 1)
    else:
        k = 0
        for j in range(na):
            v = a[j]
            while k < nb and b[k] < v:
                if smin[k] < run_min:
                    run_min = smin[k]
                if smax[k] > run_max:
                    run_max = smax[k]
                k += 1
            member = k < nb and b[k] == v
            if not member and run_max < 0:
                raise ValueError("value without B-support; prune B-coherence first")
            self_min = smin[k] if member else big
            self_max = smax[k] if member else -1
            out_min[j] = min(self_min, run_min + 1)
            out_max[j] = max(self_max, run_max + 1)
    return out_min, out_max, na + nb


# --- dispatch -------------------------------------------------------------

MONOTONE_C, EQ_C, NEQ_C, ABS_LEQ_C, INCNV = 1, 2, 3, 4, 5


@njit(cache=True)
def _pair(code, p1, p2, a, b, smin, smax, big):
    if code == MONOTONE_C:
        return _monotone_c(a, b, smin, smax, big, p1 != 0, p2 != 0)
    if code == EQ_C:
        return _eq_neq(a, b, smin, smax, big, True)
    if code == NEQ_C:
        return _eq_neq(a, b, smin, smax, big, False)
    if code == ABS_LEQ_C:
        return _abs_leq(a, b, smin, smax, big, p1)
    return _incnv(a, b, smin, smax, big, p1 != 0)


@njit(cache=True)
def _suffix_all(code, p1, p2, values, offsets, big):
    n = offsets.shape[0] - 1
    smin = np.ones(values.shape[0], np.int64)
    smax = np.ones(values.shape[0], np.int64)
    work = 0
    for i in range(n - 2, -1, -1):
        a0, a1, b1 = offsets[i], offsets[i + 1], offsets[i + 2]
        mn, mx, w = _pair(code, p1, p2, values[a0:a1], values[a1:b1],
                          smin[a1:b1], smax[a1:b1], big)
        smin[a0:a1] = mn
        smax[a0:a1] = mx
        work += w
    return smin, smax, work


class Kernel(NamedTuple):
    """A specialization with its parameters; callable on one pair."""

    code: int
    p1: int = 0
    p2: int = 0

    def __call__(self, a, b, smin, smax, big):
        return _pair(self.code, self.p1, self.p2, a, b, smin, smax, big)

    def suffix(self, values: np.ndarray, offsets: np.ndarray, big: int):
        """Suffix counts for a whole flat layout: ``(smin, smax, work)``."""
        return _suffix_all(self.code, self.p1, self.p2, values, offsets, big)


_MONOTONE = {  # C kind -> (supports lie below v, lower part is strict)
    br.GT: (True, True),
    br.GEQ: (True, False),
    br.LT: (False, False),
    br.LEQ: (False, True),
}


def select_kernel(c_rel: BinRel, b_rel: BinRel) -> Optional[Kernel]:
    """Specialized kernel for ``(C, B)``, or ``None`` to use the generic DP."""
    if c_rel.negated or b_rel.negated:
        return None
    c, b = c_rel.kind, b_rel.kind
    if b == br.TRUE:
        if c in _MONOTONE:
            below, strict = _MONOTONE[c]
            return Kernel(MONOTONE_C, int(below), int(strict))
        if c == br.EQ:
            return Kernel(EQ_C)
        if c == br.NEQ:
            return Kernel(NEQ_C)
        if c == br.ABS_LEQ:
            return Kernel(ABS_LEQ_C, c_rel.cst)
        return None
    if c == br.EQ and b in (br.LEQ, br.GEQ):
        return Kernel(INCNV, int(b == br.LEQ))
    return None


def _run(kernel_args, fn) -> PairCounts:
    mn, mx, work = fn(*kernel_args)
    return PairCounts(mn, mx, int(work))


def _args(state: PairState):
    return state.left, state.right, state.s_min, state.s_max, state.big


def counts_monotone_c(state: PairState) -> PairCounts:
    if not state.b_rel.is_universal or state.c_rel.kind not in _MONOTONE or state.c_rel.negated:
        raise ValueError(f"unsupported relations for counts_monotone_c: {state.c_rel!r}, {state.b_rel!r}")
    below, strict = _MONOTONE[state.c_rel.kind]
    return _run(_args(state) + (below, strict), _monotone_c)


def counts_eq(state: PairState) -> PairCounts:
    if not state.b_rel.is_universal or state.c_rel != BinRel(br.EQ):
        raise ValueError("counts_eq needs C = eq and B = true")
    return _run(_args(state) + (True,), _eq_neq)


def counts_neq(state: PairState) -> PairCounts:
    if not state.b_rel.is_universal or state.c_rel != BinRel(br.NEQ):
        raise ValueError("counts_neq needs C = neq and B = true")
    return _run(_args(state) + (False,), _eq_neq)


def counts_abs_leq(state: PairState) -> PairCounts:
    if not state.b_rel.is_universal or state.c_rel.kind != br.ABS_LEQ or state.c_rel.negated:
        raise ValueError("counts_abs_leq needs C = abs_leq and B = true")
    return _run(_args(state) + (state.c_rel.cst,), _abs_leq)


def counts_incnv(state: PairState) -> PairCounts:
    b = state.b_rel
    if state.c_rel != BinRel(br.EQ) or b.negated or b.kind not in (br.LEQ, br.GEQ):
        raise ValueError("counts_incnv needs C = eq and B in {leq, geq}")
    return _run(_args(state) + (b.kind == br.LEQ,), _incnv)


def counts_fast(state: PairState) -> PairCounts:
    kernel = select_kernel(state.c_rel, state.b_rel)
    if kernel is None:
        raise ValueError(f"no specialization for C={state.c_rel!r}, B={state.b_rel!r}")
    return _run(_args(state), kernel)


def sliding_min(values, width: int) -> np.ndarray:
    """Minimum of every length-``width`` window of ``values``."""
    vals = np.ascontiguousarray(values, dtype=np.int64)
    m = len(vals) - width + 1
    if width <= 0 or m <= 0:
        return np.zeros(0, dtype=np.int64)
    lo = np.arange(m, dtype=np.int64)
    return _window_extrema(vals, lo, lo + width, False, 0)


def sliding_max(values, width: int) -> np.ndarray:
    vals = np.ascontiguousarray(values, dtype=np.int64)
    m = len(vals) - width + 1
    if width <= 0 or m <= 0:
        return np.zeros(0, dtype=np.int64)
    lo = np.arange(m, dtype=np.int64)
    return _window_extrema(vals, lo, lo + width, True, 0)
