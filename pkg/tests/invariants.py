"""Stretch-table invariant checks shared by the unit and acceptance tests.

Each checker returns a list of violation strings (empty when the table is
fine) so callers can either assert or tally.
"""

import numpy as np

from seqbin.binrel import holds_matrix


def _blocks(table, col):
    off = table.flat.offsets
    return [col[off[i]:off[i + 1]] for i in range(table.n)]


def bounds_and_ends(table):
    bad = []
    n = table.n
    pos = table.flat.positions()
    if np.any(table.smin > table.smax) or np.any(table.pmin > table.pmax):
        bad.append("min exceeds max")
    if np.any(table.smin < 1) or np.any(table.pmin < 1):
        bad.append("count below 1")
    if np.any(table.smax > n - pos) or np.any(table.pmax > pos + 1):
        bad.append("count exceeds remaining length")
    last, first = pos == n - 1, pos == 0
    if np.any(table.smin[last] != 1) or np.any(table.smax[last] != 1):
        bad.append("last suffix counts differ from 1")
    if np.any(table.pmin[first] != 1) or np.any(table.pmax[first] != 1):
        bad.append("first prefix counts differ from 1")
    return bad


def shared_support(table, b_rel):
    """Pairs of values at one position sharing a B-support: max+1 >= min, no gap."""
    bad = []
    vals = _blocks(table, table.flat.values)
    lo, hi = _blocks(table, table.smin), _blocks(table, table.smax)
    for i in range(table.n - 1):
        bm = holds_matrix(b_rel, vals[i], vals[i + 1])
        share = (bm.astype(np.int64) @ bm.T.astype(np.int64)) > 0
        a, b = np.nonzero(share)
        if np.any(hi[i][a] + 1 < lo[i][b]):
            bad.append(f"position {i}: s_max + 1 < s_min for a shared-support pair")
        # two intervals with max+1 >= min both ways leave no hole in their union
        gap = (hi[i][a] + 1 < lo[i][b]) | (hi[i][b] + 1 < lo[i][a])
        if np.any(gap):
            bad.append(f"position {i}: hole in the union of shared-support intervals")
    return bad


def whole_range_covered(table):
    lo, hi = _blocks(table, table.smin)[0], _blocks(table, table.smax)[0]
    covered = set()
    for a, b in zip(lo, hi):
        covered.update(range(int(a), int(b) + 1))
    want = set(range(int(lo.min()), int(hi.max()) + 1))
    return [] if want <= covered else [f"counts {sorted(want - covered)} not covered by x[0]"]


def all_table_checks(table, b_rel):
    return bounds_and_ends(table) + shared_support(table, b_rel) + whole_range_covered(table)
