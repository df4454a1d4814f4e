"""Binary relations over integers.

A relation is either one of the built-in comparisons, a distance test
against a constant, the universal relation, or an explicit table of
supported pairs. Every relation can be negated and argument-flipped, which
is all the propagator needs to turn suffix computations into prefix ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from numba import njit

from .domain import Domain, FlatDomains, Infeasible

EQ, NEQ, LT, LEQ, GT, GEQ = "eq", "neq", "lt", "leq", "gt", "geq"
TRUE, ABS_LEQ, ABS_GT, TABLE = "true", "abs_leq", "abs_gt", "table"

KINDS = (EQ, NEQ, LT, LEQ, GT, GEQ, TRUE, ABS_LEQ, ABS_GT, TABLE)
COMPARISONS = (EQ, NEQ, LT, LEQ, GT, GEQ)

_COMPLEMENT = {EQ: NEQ, NEQ: EQ, LT: GEQ, GEQ: LT, LEQ: GT, GT: LEQ,
               ABS_LEQ: ABS_GT, ABS_GT: ABS_LEQ}
_FLIP = {EQ: EQ, NEQ: NEQ, LT: GT, GT: LT, LEQ: GEQ, GEQ: LEQ,
         TRUE: TRUE, ABS_LEQ: ABS_LEQ, ABS_GT: ABS_GT}


class NonMonotonicError(ValueError):
    """B admits no total order satisfying the monotonicity condition."""


@dataclass(frozen=True)
class BinRel:
    kind: str
    cst: int = 0
    pairs: frozenset = frozenset()
    negated: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown relation kind {self.kind!r}")
        if self.kind in (ABS_LEQ, ABS_GT) and self.cst < 0:
            raise ValueError("distance constant must be >= 0")
        if self.kind == TABLE:
            object.__setattr__(self, "pairs",
                               frozenset((int(v), int(w)) for v, w in self.pairs))

    @classmethod
    def table(cls, pairs: Iterable[tuple[int, int]]) -> "BinRel":
        return cls(TABLE, pairs=frozenset(pairs))

    @property
    def is_universal(self) -> bool:
        return self.kind == TRUE and not self.negated

    def __call__(self, v: int, w: int) -> bool:
        return holds(self, v, w)

    def __repr__(self) -> str:
        inner = self.kind
        if self.kind in (ABS_LEQ, ABS_GT):
            inner += f"({self.cst})"
        elif self.kind == TABLE:
            inner += f"({sorted(self.pairs)})"
        return f"not {inner}" if self.negated else inner


def _base_holds(rel: BinRel, v: int, w: int) -> bool:
    k = rel.kind
    if k == EQ:
        return v == w
    if k == NEQ:
        return v != w
    if k == LT:
        return v < w
    if k == LEQ:
        return v <= w
    if k == GT:
        return v > w
    if k == GEQ:
        return v >= w
    if k == TRUE:
        return True
    if k == ABS_LEQ:
        return abs(v - w) <= rel.cst
    if k == ABS_GT:
        return abs(v - w) > rel.cst
    return (v, w) in rel.pairs


def holds(rel: BinRel, v: int, w: int) -> bool:
    """Truth of ``v rel w``."""
    return _base_holds(rel, int(v), int(w)) != rel.negated


def negate(rel: BinRel) -> BinRel:
    """Complement over Z x Z. Built-in kinds map to their canonical opposite."""
    if not rel.negated and rel.kind in _COMPLEMENT:
        return BinRel(_COMPLEMENT[rel.kind], cst=rel.cst)
    if rel.negated and rel.kind in _COMPLEMENT:
        return BinRel(rel.kind, cst=rel.cst)
    return BinRel(rel.kind, cst=rel.cst, pairs=rel.pairs, negated=not rel.negated)


def flip(rel: BinRel) -> BinRel:
    """The relation with its arguments swapped: ``flip(r)(v, w) == r(w, v)``."""
    if rel.kind == TABLE:
        return BinRel(TABLE, pairs=frozenset((w, v) for v, w in rel.pairs),
                      negated=rel.negated)
    return BinRel(_FLIP[rel.kind], cst=rel.cst, negated=rel.negated)


def holds_matrix(rel: BinRel, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Boolean matrix ``M[a, b] = left[a] rel right[b]``."""
    v = np.asarray(left, dtype=np.int64)[:, None]
    w = np.asarray(right, dtype=np.int64)[None, :]
    k = rel.kind
    if k == EQ:
        m = v == w
    elif k == NEQ:
        m = v != w
    elif k == LT:
        m = v < w
    elif k == LEQ:
        m = v <= w
    elif k == GT:
        m = v > w
    elif k == GEQ:
        m = v >= w
    elif k == TRUE:
        m = np.ones((v.shape[0], w.shape[1]), dtype=bool)
    elif k == ABS_LEQ:
        m = np.abs(v - w) <= rel.cst
    elif k == ABS_GT:
        m = np.abs(v - w) > rel.cst
    else:
        m = np.zeros((v.shape[0], w.shape[1]), dtype=bool)
        if rel.pairs:
            rows = {int(x): a for a, x in enumerate(v[:, 0])}
            cols = {int(x): b for b, x in enumerate(w[0, :])}
            for pv, pw in rel.pairs:
                a, b = rows.get(pv), cols.get(pw)
                if a is not None and b is not None:
                    m[a, b] = True
    return ~m if rel.negated else m


@dataclass(frozen=True)
class MonotonicOrder:
    """Total order witnessing monotonicity, lowest element first."""

    ordered_values: tuple[int, ...]
    support_counts: tuple[int, ...]

    def rank(self) -> dict[int, int]:
        return {v: r for r, v in enumerate(self.ordered_values)}


def monotonic_order(rel: BinRel, universe: Iterable[int]) -> Optional[MonotonicOrder]:
    """Order the universe by decreasing number of supports and certify it.

    Ties in the support count are broken by the number of left-supports
    (ascending), then by value. Returns ``None`` when the support sets are not
    nested under the resulting order, i.e. the relation is not monotonic on
    ``universe``.
    """
    u = np.unique(np.fromiter((int(x) for x in universe), dtype=np.int64))
    m = holds_matrix(rel, u, u)
    succ = m.sum(axis=1)
    pred = m.sum(axis=0)
    order = sorted(range(len(u)), key=lambda a: (-succ[a], pred[a], u[a]))
    mo = m[np.ix_(order, order)]
    # consecutive nesting: successor sets shrink down the order,
    # predecessor sets grow along it
    if len(order) > 1:
        if np.any(mo[1:, :] & ~mo[:-1, :]):
            return None
        if np.any(mo[:, :-1] & ~mo[:, 1:]):
            return None
    return MonotonicOrder(tuple(int(u[a]) for a in order),
                          tuple(int(succ[a]) for a in order))


def natural_rank(rel: BinRel) -> Optional[int]:
    """+1 / -1 when the integer order (or its reverse) is known to work."""
    if rel.negated:
        return None
    if rel.kind in (LT, LEQ, TRUE):
        return 1
    if rel.kind in (GT, GEQ):
        return -1
    return None


def value_ranks(rel: BinRel, values: np.ndarray, universe: np.ndarray) -> np.ndarray:
    """Rank of every entry of ``values`` in the monotonic order of ``rel``.

    Raises :class:`NonMonotonicError` when no such order exists.
    """
    sign = natural_rank(rel)
    if sign is not None:
        return values * sign
    order = monotonic_order(rel, universe)
    if order is None:
        raise NonMonotonicError(f"relation {rel!r} is not monotonic on the domain universe")
    rank = order.rank()
    return np.fromiter((rank[int(v)] for v in values), dtype=np.int64, count=len(values))


_ORDER_CODES = {LT: 0, LEQ: 1, GT: 2, GEQ: 3}


@njit(cache=True)
def _cmp(code, v, w):
    if code == 0:
        return v < w
    if code == 1:
        return v <= w
    if code == 2:
        return v > w
    return v >= w


@njit(cache=True)
def _prune_comparison(values, offsets, code):
    # returns (keep mask, first emptied position or -1)
    keep = np.ones(values.shape[0], np.bool_)
    n = offsets.shape[0] - 1
    ascending = code <= 1
    for i in range(n - 2, -1, -1):
        # w with the largest predecessor set: max for lt/leq, min for gt/geq
        found = False
        ext = 0
        for k in range(offsets[i + 1], offsets[i + 2]):
            if keep[k] and (not found or (values[k] > ext) == ascending):
                ext = values[k]
                found = True
        if not found:
            return keep, i + 1
        for k in range(offsets[i], offsets[i + 1]):
            if keep[k] and not _cmp(code, values[k], ext):
                keep[k] = False
    for i in range(n - 1):
        found = False
        ext = 0
        for k in range(offsets[i], offsets[i + 1]):
            if keep[k] and (not found or (values[k] < ext) == ascending):
                ext = values[k]
                found = True
        if not found:
            return keep, i
        for k in range(offsets[i + 1], offsets[i + 2]):
            if keep[k] and not _cmp(code, ext, values[k]):
                keep[k] = False
    last = False
    for k in range(offsets[n - 1], offsets[n]):
        last = last or keep[k]
    if not last:
        return keep, n - 1
    return keep, -1


def _prune_flat(flat: FlatDomains, rel: BinRel, ranks: np.ndarray) -> np.ndarray:
    keep = np.ones(len(flat.values), dtype=bool)
    if rel.is_universal or flat.n == 1:
        return keep
    if not rel.negated and rel.kind in _ORDER_CODES:
        keep, emptied = _prune_comparison(flat.values, flat.offsets, _ORDER_CODES[rel.kind])
        if emptied >= 0:
            raise Infeasible(f"x[{emptied}] has no B-coherent value", phase="b-coherence")
        return keep
    off = flat.offsets
    vals = flat.values

    def alive(i):
        sl = slice(off[i], off[i + 1])
        return np.flatnonzero(keep[sl]) + off[i]

    # backward: v needs a successor; the highest-ranked w has the largest predecessor set
    for i in range(flat.n - 2, -1, -1):
        nxt = alive(i + 1)
        if len(nxt) == 0:
            raise Infeasible(f"x[{i + 1}] has no B-coherent value", phase="b-coherence")
        w_star = vals[nxt[np.argmax(ranks[nxt])]]
        cur = alive(i)
        ok = holds_matrix(rel, vals[cur], np.array([w_star]))[:, 0]
        keep[cur[~ok]] = False
    # forward: w needs a predecessor; the lowest-ranked v has the largest successor set
    for i in range(flat.n - 1):
        cur = alive(i)
        if len(cur) == 0:
            raise Infeasible(f"x[{i}] has no B-coherent value", phase="b-coherence")
        v_0 = vals[cur[np.argmin(ranks[cur])]]
        nxt = alive(i + 1)
        ok = holds_matrix(rel, np.array([v_0]), vals[nxt])[0, :]
        keep[nxt[~ok]] = False
    if not keep[off[-2]:off[-1]].any():
        raise Infeasible(f"x[{flat.n - 1}] has no B-coherent value", phase="b-coherence")
    return keep


def prune_b_coherent(x_domains: Sequence[Domain], b_rel: BinRel,
                     universe: np.ndarray | None = None) -> list[Domain]:
    """Remove every value that is in no B-coherent instantiation.

    One backward then one forward sweep, each pair filtered against the
    extremal value of the monotonic order. Raises :class:`Infeasible` if a
    domain empties and :class:`NonMonotonicError` if ``b_rel`` is not
    monotonic on ``universe`` (default: union of the domains).
    """
    flat = FlatDomains.from_domains(x_domains)
    if universe is None:
        universe = np.unique(flat.values)
    if any(len(d) == 0 for d in x_domains):
        raise Infeasible("empty domain", phase="b-coherence")
    ranks = value_ranks(b_rel, flat.values, universe)
    keep = _prune_flat(flat, b_rel, ranks)
    return flat.compress(keep).to_domains()


def prune_flat(flat: FlatDomains, b_rel: BinRel, ranks: np.ndarray) -> np.ndarray:
    """Mask form of :func:`prune_b_coherent` over a flat layout."""
    return _prune_flat(flat, b_rel, ranks)
