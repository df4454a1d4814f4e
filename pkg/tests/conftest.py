import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import settings

from seqbin import BinRel, Domain, Instance

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def make(n, xs, c, b):
    """Instance from plain lists; relations given as kind strings or BinRel."""
    c = BinRel(c) if isinstance(c, str) else c
    b = BinRel(b) if isinstance(b, str) else b
    return Instance(Domain(n), [Domain(x) for x in xs], c, b)


def as_lists(res):
    if res is None:
        return None
    n_dom, xs = res
    return n_dom.tolist(), [x.tolist() for x in xs]


@st.composite
def domain_lists(draw, n_max=4, v_max=4):
    n = draw(st.integers(1, n_max))
    return [draw(st.lists(st.integers(0, v_max), min_size=1, max_size=v_max + 1, unique=True))
            for _ in range(n)]


SIMPLE_KINDS = ("eq", "neq", "lt", "leq", "gt", "geq", "true")


@st.composite
def relations(draw, v_max=4):
    kind = draw(st.sampled_from(SIMPLE_KINDS + ("abs_leq", "abs_gt", "table")))
    if kind in ("abs_leq", "abs_gt"):
        return BinRel(kind, cst=draw(st.integers(0, 3)))
    if kind == "table":
        pairs = draw(st.sets(st.tuples(st.integers(0, v_max), st.integers(0, v_max)), max_size=12))
        return BinRel.table(pairs)
    return BinRel(kind)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# --- acceptance summary ---------------------------------------------------

ACCEPTANCE = []


def record(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
