import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given

from seqbin import BinRel
from seqbin.bench import bench_instance
from seqbin.dp import generic_pair, prefix_counts, propagate, suffix_counts
from seqbin.fast import (PairState, counts_abs_leq, counts_eq, counts_fast, counts_incnv,
                         counts_monotone_c, counts_neq, select_kernel, sliding_max, sliding_min)
from seqbin.generate import random_instance

from conftest import make

TRUE = BinRel("true")


def state(left, right, smin, c, b=TRUE, smax=None, big=10):
    return PairState(left, right, smin, smin if smax is None else smax, c, b, big)


def test_monotone_gt_hand_values():
    out = counts_monotone_c(state([1, 2, 3], [1, 2, 3], [3, 1, 2], BinRel("gt")))
    assert out.s_min.tolist() == [2, 2, 1]


def test_monotone_gt_flat_successors():
    out = counts_monotone_c(state([1, 2, 3], [1, 2, 3], [1, 1, 1], BinRel("gt")))
    # 1 has no support, 2 and 3 have both kinds
    assert out.s_min.tolist() == [2, 1, 1]


def test_eq_hand_values():
    out = counts_eq(state([1, 3], [1, 2], [1, 2], BinRel("eq")))
    assert out.s_min.tolist() == [1, 2]


def test_eq_flat_successors():
    out = counts_eq(state([0, 1, 2, 3], [1, 2], [1, 1], BinRel("eq")))
    assert out.s_min.tolist() == [2, 1, 1, 2]


def test_neq_hand_values():
    out = counts_neq(state([1, 2, 5], [1, 2], [1, 2], BinRel("neq")))
    assert out.s_min.tolist() == [2, 1, 1]


def test_neq_singleton_successor():
    out = counts_neq(state([4], [4], [3], BinRel("neq")))
    assert out.s_min.tolist() == [4]


def test_incnv_hand_values():
    out = counts_incnv(state([1, 2], [1, 2], [1, 1], BinRel("eq"), BinRel("leq")))
    assert out.s_min.tolist() == [1, 1]
    out = counts_incnv(state([3], [5], [1], BinRel("eq"), BinRel("leq")))
    assert out.s_min.tolist() == [2]


def test_incnv_requires_b_support():
    with pytest.raises(ValueError):
        counts_incnv(state([6], [5], [1], BinRel("eq"), BinRel("leq")))


def test_abs_leq_wide_window_gives_global_min():
    out = counts_abs_leq(state([0, 4, 9], [2, 3, 7], [3, 2, 4], BinRel("abs_leq", cst=20)))
    assert out.s_min.tolist() == [2, 2, 2]


def test_sliding_extrema():
    assert sliding_min([4, 2, 5, 3], 2).tolist() == [2, 2, 3]
    assert sliding_max([4, 2, 5, 3], 2).tolist() == [4, 5, 5]
    assert sliding_min([1, 2], 3).tolist() == []


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=30), st.integers(1, 8))
def test_sliding_min_matches_naive(values, width):
    want = [min(values[k:k + width]) for k in range(len(values) - width + 1)]
    assert sliding_min(values, width).tolist() == want


def test_wrong_relations_are_rejected():
    with pytest.raises(ValueError):
        counts_eq(state([1], [1], [1], BinRel("neq")))
    with pytest.raises(ValueError):
        counts_fast(state([1], [1], [1], BinRel("eq"), BinRel("lt")))


@pytest.mark.parametrize("c, b, expected", [
    ("gt", "true", True), ("eq", "leq", True), ("eq", "geq", True), ("neq", "true", True),
    ("eq", "lt", False), ("neq", "leq", False), ("table", "true", False),
])
def test_dispatch(c, b, expected):
    c_rel = BinRel.table({(0, 0)}) if c == "table" else BinRel(c)
    assert (select_kernel(c_rel, BinRel(b)) is not None) == expected


KERNEL_RELATIONS = [
    (BinRel("lt"), TRUE), (BinRel("leq"), TRUE), (BinRel("gt"), TRUE), (BinRel("geq"), TRUE),
    (BinRel("eq"), TRUE), (BinRel("neq"), TRUE),
    (BinRel("abs_leq", cst=0), TRUE), (BinRel("abs_leq", cst=1), TRUE),
    (BinRel("abs_leq", cst=2), TRUE),
    (BinRel("eq"), BinRel("leq")), (BinRel("eq"), BinRel("geq")),
]


@st.composite
def pair_states(draw):
    c, b = draw(st.sampled_from(KERNEL_RELATIONS))
    vals = st.lists(st.integers(0, 7), min_size=1, max_size=6, unique=True).map(sorted)
    right = draw(vals)
    left = draw(vals)
    if b.kind == "leq":
        left = [v for v in left if v <= right[-1]] or [right[-1]]
    elif b.kind == "geq":
        left = [v for v in left if v >= right[0]] or [right[0]]
    smin = draw(st.lists(st.integers(1, 5), min_size=len(right), max_size=len(right)))
    extra = draw(st.lists(st.integers(0, 3), min_size=len(right), max_size=len(right)))
    smax = [a + e for a, e in zip(smin, extra)]
    return PairState(left, right, smin, smax, c, b, 9)


@given(pair_states())
def test_kernels_match_generic_pair(ps):
    fast, slow = counts_fast(ps), generic_pair(ps)
    assert fast.s_min.tolist() == slow.s_min.tolist()
    assert fast.s_max.tolist() == slow.s_max.tolist()


@pytest.mark.parametrize("family", ["increasing_nvalue", "change_lt", "change_geq", "eq", "neq",
                                    "smooth0", "smooth2"])
def test_whole_tables_match_generic(family, rng):
    for _ in range(25):
        inst = random_instance(family, int(rng.integers(1, 7)), 6, rng, anchored=True)
        for fn in (suffix_counts, prefix_counts):
            a, b = fn(inst, specialize=True), fn(inst, specialize=False)
            for col in ("smin", "smax", "pmin", "pmax"):
                x, y = getattr(a, col), getattr(b, col)
                assert (x is None and y is None) or np.array_equal(x, y)


def test_propagate_same_result_both_paths(rng):
    for family in ("increasing_nvalue", "change_leq", "neq", "smooth1"):
        for _ in range(20):
            inst = random_instance(family, int(rng.integers(1, 7)), 5, rng)
            a, b = propagate(inst), propagate(inst, specialize=False)
            assert a.to_json() == b.to_json()


def test_work_counter_grows_linearly():
    w1 = propagate(bench_instance("increasing_nvalue", 1000, 40, 0)).work
    w2 = propagate(bench_instance("increasing_nvalue", 2000, 40, 0)).work
    assert 1.5 <= w2 / w1 <= 2.5


def test_generic_work_is_quadratic_in_d():
    w1 = propagate(bench_instance("increasing_nvalue", 100, 10, 0), specialize=False).work
    w2 = propagate(bench_instance("increasing_nvalue", 100, 20, 0), specialize=False).work
    assert w2 / w1 > 3
