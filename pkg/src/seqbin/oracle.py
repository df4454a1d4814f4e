"""Brute-force ground truth for SEQ_BIN.

Everything here enumerates instantiations explicitly and only uses the
scalar :func:`seqbin.binrel.holds`; nothing is shared with the propagator's
code paths beyond the instance model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .binrel import BinRel, holds, monotonic_order
from .catalog import CatalogSpec, user_count
from .domain import Domain, Instance

DEFAULT_CAP = 10**6


class EnumerationCapExceeded(RuntimeError):
    pass


# --- stretch counting -----------------------------------------------------

def count_stretches(values: Sequence[int], c_rel: BinRel) -> int:
    """Number of maximal C-runs, by scanning runs left to right."""
    n = len(values)
    count, i = 0, 0
    while i < n:
        j = i
        while j + 1 < n and holds(c_rel, values[j], values[j + 1]):
            j += 1
        count += 1
        i = j + 1
    return count


def count_stretches_by_violations(values: Sequence[int], c_rel: BinRel) -> int:
    return 1 + sum(1 for i in range(len(values) - 1)
                   if not holds(c_rel, values[i], values[i + 1]))


def count_stretches_by_definition(values: Sequence[int], c_rel: BinRel) -> int:
    """Count subsequences that are C-sequences and not strictly contained in one."""
    n = len(values)

    def c_sequence(i, j):
        return all(holds(c_rel, values[k], values[k + 1]) for k in range(i, j))

    runs = [(i, j) for i in range(n) for j in range(i, n) if c_sequence(i, j)]
    maximal = [(i, j) for (i, j) in runs
               if not any((p <= i and j <= q) and (p, q) != (i, j) for (p, q) in runs)]
    return len(maximal)


# --- enumeration ----------------------------------------------------------

def _pair_matrix(rel: BinRel, left: Domain, right: Domain) -> np.ndarray:
    return np.array([[holds(rel, v, w) for w in right] for v in left],
                    dtype=bool).reshape(len(left), len(right))


@dataclass
class _Space:
    sizes: tuple[int, ...]
    index: np.ndarray       # (m, n) value indices
    counts: np.ndarray      # (m,) stretch counts
    coherent: np.ndarray    # (m,) B-coherence


def _space(instance: Instance, cap: int) -> _Space:
    doms = instance.x_domains
    sizes = tuple(len(d) for d in doms)
    total = int(np.prod(sizes, dtype=object))
    if total > cap:
        raise EnumerationCapExceeded(f"{total} instantiations exceed the cap {cap}")
    n = len(doms)
    index = np.indices(sizes, dtype=np.int64).reshape(n, -1).T if total else \
        np.zeros((0, n), dtype=np.int64)
    counts = np.ones(len(index), dtype=np.int64)
    coherent = np.ones(len(index), dtype=bool)
    for i in range(n - 1):
        cm = _pair_matrix(instance.c_rel, doms[i], doms[i + 1])
        bm = _pair_matrix(instance.b_rel, doms[i], doms[i + 1])
        a, b = index[:, i], index[:, i + 1]
        counts += ~cm[a, b]
        coherent &= bm[a, b]
    return _Space(sizes, index, counts, coherent)


def _values_of(instance: Instance, row: np.ndarray) -> tuple[int, ...]:
    return tuple(int(instance.x_domains[i].values[k]) for i, k in enumerate(row))


def solutions(instance: Instance, cap: int = DEFAULT_CAP) -> Iterator[tuple[tuple[int, ...], int]]:
    """Every valid B-coherent instantiation of X with its stretch count.

    D(N) is not applied; filter on ``count in instance.n_domain`` for actual
    SEQ_BIN solutions.
    """
    sp = _space(instance, cap)
    for row, k in zip(sp.index[sp.coherent], sp.counts[sp.coherent]):
        yield _values_of(instance, row), int(k)


def gac_oracle(instance: Instance, cap: int = DEFAULT_CAP) -> Optional[tuple[Domain, tuple[Domain, ...]]]:
    """GAC domains ``(D(N), D(X))`` of the single SEQ_BIN constraint, or None if unsatisfiable."""
    sp = _space(instance, cap)
    sol = sp.coherent & np.isin(sp.counts, instance.n_domain.values)
    if not sol.any():
        return None
    rows = sp.index[sol]
    x = tuple(Domain(instance.x_domains[i].values[np.unique(rows[:, i])])
              for i in range(instance.n))
    return Domain(np.unique(sp.counts[sol])), x


def b_coherent_fixpoint(x_domains: Sequence[Domain], b_rel: BinRel) -> Optional[list[Domain]]:
    """Arc consistency on the chain of B constraints by naive revision."""
    doms = [list(d) for d in x_domains]
    changed = True
    while changed:
        changed = False
        for i in range(len(doms) - 1):
            left = [v for v in doms[i] if any(holds(b_rel, v, w) for w in doms[i + 1])]
            right = [w for w in doms[i + 1] if any(holds(b_rel, v, w) for v in doms[i])]
            if len(left) != len(doms[i]) or len(right) != len(doms[i + 1]):
                doms[i], doms[i + 1] = left, right
                changed = True
    if any(not d for d in doms):
        return None
    return [Domain(d) for d in doms]


# --- counting continuity --------------------------------------------------

@dataclass(frozen=True)
class Witness:
    values: tuple[int, ...]
    position: int
    old_value: int
    new_value: int
    old_count: int
    new_count: int

    def replay(self, c_rel: BinRel) -> tuple[int, int]:
        changed = list(self.values)
        changed[self.position] = self.new_value
        return count_stretches(self.values, c_rel), count_stretches(changed, c_rel)


def check_counting_continuous(instance: Instance, cap: int = DEFAULT_CAP,
                              scope: str = "coherent") -> tuple[bool, Optional[Witness]]:
    """Does any single-variable change move the stretch count by 2 or more?

    ``scope="coherent"`` compares B-coherent instantiations only (both before
    and after the change); ``scope="valid"`` compares every instantiation of
    the domains regardless of B.
    """
    if scope not in ("coherent", "valid"):
        raise ValueError("scope must be 'coherent' or 'valid'")
    sp = _space(instance, cap)
    if len(sp.counts) == 0:
        return True, None
    counts = sp.counts.reshape(sp.sizes)
    ok = (sp.coherent if scope == "coherent" else np.ones_like(sp.coherent)).reshape(sp.sizes)
    for axis, size in enumerate(sp.sizes):
        for a, b in itertools.combinations(range(size), 2):
            ca, cb = np.take(counts, a, axis=axis), np.take(counts, b, axis=axis)
            both = np.take(ok, a, axis=axis) & np.take(ok, b, axis=axis)
            bad = both & (np.abs(ca - cb) >= 2)
            if bad.any():
                rest = np.unravel_index(int(np.flatnonzero(bad)[0]), bad.shape)
                row = list(rest)
                row.insert(axis, a)
                values = _values_of(instance, np.array(row))
                dom = instance.x_domains[axis].values
                return False, Witness(values, axis, int(dom[a]), int(dom[b]),
                                      int(ca[rest]), int(cb[rest]))
    return True, None


# --- monotonicity ---------------------------------------------------------

def _monotone_matrix(m: np.ndarray) -> bool:
    # rows ordered by the candidate order: supports only shrink going down
    # and only grow going right
    if m.shape[0] <= 1:
        return True
    return not (np.any(m[1:, :] & ~m[:-1, :]) or np.any(m[:, :-1] & ~m[:, 1:]))


def satisfies_monotonic_definition(rel: BinRel, order: Sequence[int]) -> bool:
    """Literal check: ``v rel w`` implies ``v' rel w'`` for every v' <= v, w <= w' in ``order``."""
    order = list(order)
    for iv, v in enumerate(order):
        for iw, w in enumerate(order):
            if not holds(rel, v, w):
                continue
            for v2 in order[:iv + 1]:
                for w2 in order[iw:]:
                    if not holds(rel, v2, w2):
                        return False
    return True


def check_monotonic(rel: BinRel, universe: Iterable[int],
                    max_exhaustive: int = 8) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Search for an order witnessing monotonicity.

    Small universes are searched exhaustively over all permutations (first
    valid order in lexicographic order is returned). Larger ones only verify
    the candidate from :func:`seqbin.binrel.monotonic_order`.
    """
    u = sorted({int(x) for x in universe})
    full = np.array([[holds(rel, v, w) for w in u] for v in u], dtype=bool).reshape(len(u), len(u))
    if len(u) <= max_exhaustive:
        for perm in itertools.permutations(range(len(u))):
            if _monotone_matrix(full[np.ix_(perm, perm)]):
                return True, tuple(u[k] for k in perm)
        return False, None
    cand = monotonic_order(rel, u)
    if cand is None:
        return False, None
    pos = {v: k for k, v in enumerate(u)}
    perm = [pos[v] for v in cand.ordered_values]
    if _monotone_matrix(full[np.ix_(perm, perm)]):
        return True, cand.ordered_values
    return False, None


# --- catalog constraints --------------------------------------------------

def user_solutions(spec: CatalogSpec, n_domain: Domain, x_domains: Sequence[Domain],
                   cap: int = DEFAULT_CAP) -> set[tuple[tuple[int, ...], int]]:
    """All ``(assignment, N)`` pairs satisfying the catalog constraint as defined."""
    total = int(np.prod([len(d) for d in x_domains], dtype=object))
    if total > cap:
        raise EnumerationCapExceeded(f"{total} instantiations exceed the cap {cap}")
    out = set()
    for values in itertools.product(*[list(d) for d in x_domains]):
        k = user_count(spec, values)
        if k is not None and k in n_domain:
            out.add((values, k))
    return out


# --- comparison -----------------------------------------------------------

EQUAL, SOUND_SUPERSET, UNSOUND = "EQUAL", "SOUND-SUPERSET", "UNSOUND"

Filtered = Optional[tuple[Domain, Sequence[Domain]]]


def compare(filtered: Filtered, reference: Filtered) -> tuple[str, list[str]]:
    """Classify propagator output against oracle GAC domains.

    Both arguments are ``(D(N), D(X))`` or ``None`` for failure. Returns the
    verdict and human-readable per-variable differences.
    """
    if reference is None:
        if filtered is None:
            return EQUAL, []
        return SOUND_SUPERSET, ["propagator kept an infeasible instance"]
    if filtered is None:
        return UNSOUND, ["propagator failed on a feasible instance"]
    names = ["N"] + [f"x[{i}]" for i in range(len(reference[1]))]
    got = [filtered[0], *filtered[1]]
    want = [reference[0], *reference[1]]
    verdict, diffs = EQUAL, []
    for name, g, w in zip(names, got, want):
        lost = sorted(set(w) - set(g))
        extra = sorted(set(g) - set(w))
        if lost:
            verdict = UNSOUND
            diffs.append(f"{name}: removed supported values {lost}")
        if extra:
            if verdict == EQUAL:
                verdict = SOUND_SUPERSET
            diffs.append(f"{name}: kept unsupported values {extra}")
    return verdict, diffs
