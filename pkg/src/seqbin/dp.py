"""SEQ_BIN propagation.

The propagator runs four phases until nothing changes:

1. remove values that are in no B-coherent instantiation;
2. compute, for every remaining value, the min/max number of C-stretches
   of the suffix starting and the prefix ending at that value;
3. restrict D(N) to the bounds of the whole sequence;
4. remove every value whose combined prefix/suffix interval misses D(N).

Phase 2 dispatches to :mod:`seqbin.fast` when the (C, B) pair has a
linear-time kernel and otherwise uses the quadratic recurrence in
:func:`generic_pair`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .binrel import BinRel, flip, holds_matrix, prune_flat, value_ranks
from .domain import Domain, FlatDomains, Infeasible, Instance
from .fast import PairCounts, PairState, select_kernel

log = logging.getLogger(__name__)


def generic_pair(state: PairState) -> PairCounts:
    """One suffix step by direct minimization over ``right`` (O(|left| |right|))."""
    bm = holds_matrix(state.b_rel, state.left, state.right)
    cm = holds_matrix(state.c_rel, state.left, state.right)
    if len(state.left) and not bm.any(axis=1).all():
        raise ValueError("value without B-support; prune B-coherence first")
    sup, non = bm & cm, bm & ~cm
    big = state.big
    mn = state.s_min[None, :]
    mx = state.s_max[None, :]
    s_min = np.minimum(np.where(sup, mn, big).min(axis=1),
                       np.where(non, mn, big).min(axis=1) + 1)
    s_max = np.maximum(np.where(sup, mx, -1).max(axis=1),
                       np.where(non, mx, -1).max(axis=1) + 1)
    return PairCounts(s_min, s_max, len(state.left) * len(state.right))


def _suffix_flat(flat: FlatDomains, c_rel: BinRel, b_rel: BinRel,
                 specialize: bool) -> tuple[np.ndarray, np.ndarray, int]:
    n = flat.n
    big = n + 1
    smin = np.ones(len(flat), dtype=np.int64)
    smax = np.ones(len(flat), dtype=np.int64)
    kernel = select_kernel(c_rel, b_rel) if specialize else None
    if kernel is not None:
        smin, smax, work = kernel.suffix(flat.values, flat.offsets, big)
        return smin, smax, int(work)
    off = flat.offsets
    vals = flat.values
    work = 0
    for i in range(n - 2, -1, -1):
        a0, a1, b1 = off[i], off[i + 1], off[i + 2]
        mn, mx, w = generic_pair(PairState(vals[a0:a1], vals[a1:b1], smin[a1:b1],
                                           smax[a1:b1], c_rel, b_rel, big))
        smin[a0:a1] = mn
        smax[a0:a1] = mx
        work += int(w)
    return smin, smax, work


def _prefix_flat(flat: FlatDomains, c_rel: BinRel, b_rel: BinRel,
                 specialize: bool) -> tuple[np.ndarray, np.ndarray, int]:
    rev = flat.reversed()
    rmin, rmax, work = _suffix_flat(rev, flip(c_rel), flip(b_rel), specialize)
    back = flat.reverse_index()
    pmin = np.empty_like(rmin)
    pmax = np.empty_like(rmax)
    pmin[back] = rmin
    pmax[back] = rmax
    return pmin, pmax, work


@dataclass
class StretchTable:
    """Per-value stretch counts, arrays parallel to ``flat.values``.

    A half computed alone (suffix or prefix) leaves the other pair ``None``.
    """

    flat: FlatDomains
    smin: Optional[np.ndarray] = None
    smax: Optional[np.ndarray] = None
    pmin: Optional[np.ndarray] = None
    pmax: Optional[np.ndarray] = None
    work: int = 0

    @property
    def n(self) -> int:
        return self.flat.n

    def _index(self, i: int, v: int) -> int:
        blk = self.flat.block(i)
        k = int(np.searchsorted(blk, v))
        if k >= len(blk) or blk[k] != v:
            raise KeyError(f"{v} not in D(x[{i}])")
        return int(self.flat.offsets[i]) + k

    def suffix(self, i: int, v: int) -> tuple[int, int]:
        k = self._index(i, v)
        return int(self.smin[k]), int(self.smax[k])

    def prefix(self, i: int, v: int) -> tuple[int, int]:
        k = self._index(i, v)
        return int(self.pmin[k]), int(self.pmax[k])

    def rows(self, i: int) -> dict[int, tuple[int, ...]]:
        """``{v: (smin, smax, pmin, pmax)}`` for position ``i`` (missing halves omitted)."""
        sl = slice(self.flat.offsets[i], self.flat.offsets[i + 1])
        cols = [c for c in (self.smin, self.smax, self.pmin, self.pmax) if c is not None]
        return {int(v): tuple(int(c[sl][k]) for c in cols)
                for k, v in enumerate(self.flat.values[sl])}


def _flat_of(instance: Instance) -> FlatDomains:
    return FlatDomains.from_domains(instance.x_domains)


def suffix_counts(instance: Instance, specialize: bool = True) -> StretchTable:
    """Suffix stretch counts; domains must already be B-coherent."""
    flat = _flat_of(instance)
    smin, smax, work = _suffix_flat(flat, instance.c_rel, instance.b_rel, specialize)
    return StretchTable(flat, smin=smin, smax=smax, work=work)


def prefix_counts(instance: Instance, specialize: bool = True) -> StretchTable:
    """Prefix stretch counts; domains must already be B-coherent."""
    flat = _flat_of(instance)
    pmin, pmax, work = _prefix_flat(flat, instance.c_rel, instance.b_rel, specialize)
    return StretchTable(flat, pmin=pmin, pmax=pmax, work=work)


def stretch_table(instance: Instance, specialize: bool = True) -> StretchTable:
    flat = _flat_of(instance)
    return _table_flat(flat, instance.c_rel, instance.b_rel, specialize)


def _table_flat(flat, c_rel, b_rel, specialize) -> StretchTable:
    smin, smax, w1 = _suffix_flat(flat, c_rel, b_rel, specialize)
    pmin, pmax, w2 = _prefix_flat(flat, c_rel, b_rel, specialize)
    return StretchTable(flat, smin, smax, pmin, pmax, w1 + w2)


def seqbin_bounds(table: StretchTable) -> tuple[int, int]:
    """``(min, max)`` number of C-stretches over the whole sequence."""
    sl = slice(table.flat.offsets[0], table.flat.offsets[1])
    return int(table.smin[sl].min()), int(table.smax[sl].max())


def _restrict_n(n_domain: Domain, bounds: tuple[int, int]) -> Domain:
    out = n_domain.restrict(*bounds)
    if out.is_empty():
        raise Infeasible(f"D(N) misses the feasible count range {list(bounds)}", phase="count")
    return out


def filter_count_var(instance: Instance, bounds: tuple[int, int]) -> Domain:
    """D(N) intersected with ``bounds``; holes are kept."""
    return _restrict_n(instance.n_domain, bounds)


def _sequence_mask(table: StretchTable, n_values: np.ndarray) -> np.ndarray:
    lo = table.pmin + table.smin - 1
    hi = table.pmax + table.smax - 1
    idx = np.searchsorted(n_values, lo, side="left")
    ok = idx < len(n_values)
    ok[ok] = n_values[idx[ok]] <= hi[ok]
    return ok


def _check_blocks(flat: FlatDomains, phase: str) -> None:
    empty = np.flatnonzero(flat.sizes() == 0)
    if len(empty):
        raise Infeasible(f"D(x[{int(empty[0])}]) wiped out", phase=phase)


def filter_sequence_vars(instance: Instance, table: StretchTable) -> list[Domain]:
    """Drop values whose full-sequence count interval misses D(N)."""
    keep = _sequence_mask(table, instance.n_domain.values)
    out = table.flat.compress(keep)
    _check_blocks(out, "sequence")
    return out.to_domains()


@dataclass
class PropagationOutcome:
    """Result of :func:`propagate`.

    On failure the domains are those held when the wipe-out was detected.
    ``work`` counts the values touched by the stretch-count step over all
    passes.
    """

    status: str
    n_domain: Domain
    x_domains: tuple[Domain, ...]
    removed: int = 0
    passes: int = 0
    removed_per_pass: list[int] = field(default_factory=list)
    work: int = 0
    tables: list[StretchTable] = field(default_factory=list, repr=False)
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "n": self.n_domain.tolist(),
            "x": [d.tolist() for d in self.x_domains],
            "removed": self.removed,
            "passes": self.passes,
        }


def propagate(instance: Instance, specialize: bool = True, max_passes: int | None = None,
              keep_tables: bool = False) -> PropagationOutcome:
    """Filter ``instance`` to a fixpoint of the four phases.

    Raises :class:`~seqbin.binrel.NonMonotonicError` when B is not monotonic
    on the union of the x-domains.
    """
    c_rel, b_rel = instance.c_rel, instance.b_rel
    if c_rel is None or b_rel is None:
        raise ValueError("propagate needs a pure seqbin instance; see seqbin.catalog")
    flat = _flat_of(instance)
    n_dom = instance.n_domain
    total_in = len(flat) + len(n_dom)
    out = PropagationOutcome("ok", n_dom, tuple(instance.x_domains))

    ranks = value_ranks(b_rel, flat.values, np.unique(flat.values))
    try:
        _check_blocks(flat, "input")
        if n_dom.is_empty():
            raise Infeasible("empty D(N)", phase="input")
        while max_passes is None or out.passes < max_passes:
            size_before = len(flat) + len(n_dom)
            keep = prune_flat(flat, b_rel, ranks)
            flat, ranks = flat.compress(keep), ranks[keep]

            table = _table_flat(flat, c_rel, b_rel, specialize)
            out.work += table.work
            if keep_tables:
                out.tables.append(table)

            n_dom = _restrict_n(n_dom, seqbin_bounds(table))
            keep = _sequence_mask(table, n_dom.values)
            flat, ranks = flat.compress(keep), ranks[keep]
            _check_blocks(flat, "sequence")

            out.passes += 1
            out.removed_per_pass.append(size_before - len(flat) - len(n_dom))
            if out.removed_per_pass[-1] == 0:
                break
    except Infeasible as exc:
        out.status = "fail"
        out.message = f"{exc.phase}: {exc}" if exc.phase else str(exc)
        out.passes += 1
        log.debug("propagation failed: %s", out.message)
    out.n_domain = n_dom
    out.x_domains = tuple(flat.to_domains())
    out.removed = total_in - len(flat) - len(n_dom)
    return out


def propagate_domains(instance: Instance, **kwargs) -> Optional[tuple[Domain, tuple[Domain, ...]]]:
    """``(D(N), D(X))`` after propagation, or ``None`` on failure."""
    res = propagate(instance, **kwargs)
    return (res.n_domain, res.x_domains) if res.ok else None


def reverse_instance(instance: Instance) -> Instance:
    """Sequence reversed, both relations argument-flipped."""
    return Instance(instance.n_domain, tuple(reversed(instance.x_domains)),
                    flip(instance.c_rel), flip(instance.b_rel))


def domains_equal(a: Sequence[Domain], b: Sequence[Domain]) -> bool:
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))
