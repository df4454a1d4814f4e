import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given

from seqbin import Domain, Infeasible, Instance, InstanceError, dump_domains, load_instance
from seqbin.domain import FlatDomains

WORKED = '{"n":[1,2],"x":[[1,2],[1,2]],"C":{"kind":"eq"},"B":{"kind":"leq"}}'


def test_domain_is_sorted_and_deduplicated():
    d = Domain([3, 1, 3, 2])
    assert d.tolist() == [1, 2, 3]
    assert 2 in d and 5 not in d
    assert (d.min(), d.max()) == (1, 3)


def test_domain_values_are_read_only():
    d = Domain([1, 2])
    with pytest.raises(ValueError):
        d.values[0] = 9


def test_empty_domain_min_raises():
    with pytest.raises(Infeasible):
        Domain().min()


def test_restrict_keeps_holes():
    assert Domain([1, 2, 7, 9]).restrict(2, 8).tolist() == [2, 7]


def test_shift():
    assert Domain([1, 3]).shift(-1).tolist() == [0, 2]


@given(st.lists(st.integers(-5, 5)), st.lists(st.tuples(st.booleans(), st.integers(-5, 5))))
def test_add_remove_match_python_set(initial, ops):
    d, ref = Domain(initial), set(initial)
    for insert, v in ops:
        if insert:
            d, _ = d.add(v), ref.add(v)
        else:
            d, _ = d.remove(v), ref.discard(v)
        assert d.tolist() == sorted(ref)


def test_load_worked_instance():
    inst = load_instance(WORKED)
    assert inst.n == 2
    assert inst.n_domain.tolist() == [1, 2]
    assert inst.c_rel.kind == "eq" and inst.b_rel.kind == "leq"


def test_load_single_variable():
    inst = load_instance('{"n":[1],"x":[[5]],"C":{"kind":"neq"},"B":{"kind":"true"}}')
    assert inst.n == 1


@pytest.mark.parametrize("text, fragment", [
    ('{"n":[],"x":[[1]],"C":{"kind":"eq"},"B":{"kind":"true"}}', "n: empty domain"),
    ('{"n":[1],"x":[],"C":{"kind":"eq"},"B":{"kind":"true"}}', "n = 0"),
    ('{"n":[1],"x":[[1],[]],"C":{"kind":"eq"},"B":{"kind":"true"}}', "x[1]"),
    ('{"n":[1],"x":[[1]],"C":{"kind":"foo"},"B":{"kind":"true"}}', "C.kind"),
    ('{"n":[1],"x":[[1]],"C":{"kind":"abs_leq"},"B":{"kind":"true"}}', "cst"),
    ('{"n":[1],"x":[["a"]],"C":{"kind":"eq"},"B":{"kind":"true"}}', "x[0][0]"),
    ('{"n":[1],"x":[[1]],"C":{"kind":"eq"}}', "'B'"),
    ('{"n":[1],"x":[[1]]', "line 1"),
    ('{"n":[1],"x":[[1]],"constraint":"change"}', "ctr"),
    ('{"n":[1],"x":[[1]],"constraint":"smooth","cst":1,"C":{"kind":"eq"}}', "C/B"),
])
def test_load_rejects_with_context(text, fragment):
    with pytest.raises(InstanceError, match=None) as info:
        load_instance(text)
    assert fragment in str(info.value)


def test_dump_contains_domains():
    assert '"x":[[1,2],[1,2]]' in dump_domains(load_instance(WORKED))


def test_dump_reflects_removal():
    inst = load_instance(WORKED)
    smaller = inst.with_domains(x_domains=[inst.x_domains[0].remove(2), inst.x_domains[1]])
    assert '"x":[[1],[1,2]]' in dump_domains(smaller)


@given(st.lists(st.lists(st.integers(-3, 9), min_size=1, max_size=5), min_size=1, max_size=4),
       st.lists(st.integers(1, 6), min_size=1, max_size=4))
def test_dump_load_round_trip(xs, ns):
    from seqbin import BinRel
    inst = Instance(Domain(ns), [Domain(x) for x in xs], BinRel("abs_leq", cst=2), BinRel("geq"))
    assert load_instance(dump_domains(inst)) == inst


def test_catalog_round_trip():
    text = '{"n":[0,1],"x":[[1,2],[1,2]],"constraint":"change","ctr":{"kind":"lt"}}'
    inst = load_instance(text)
    assert load_instance(dump_domains(inst)) == inst


def test_instance_needs_variables():
    with pytest.raises(InstanceError):
        Instance(Domain([1]), [], None, None)


@given(st.lists(st.lists(st.integers(0, 9), max_size=5), min_size=1, max_size=5), st.data())
def test_flat_layout_round_trips(xs, data):
    doms = [Domain(x) for x in xs]
    flat = FlatDomains.from_domains(doms)
    assert [d.tolist() for d in flat.to_domains()] == [d.tolist() for d in doms]
    keep = np.array(data.draw(st.lists(st.booleans(), min_size=len(flat), max_size=len(flat))),
                    dtype=bool)
    kept = flat.compress(keep)
    pos = flat.positions()
    for i, d in enumerate(kept.to_domains()):
        assert d.tolist() == flat.values[(pos == i) & keep].tolist()
    rev = flat.reversed()
    assert [d.tolist() for d in rev.to_domains()] == [d.tolist() for d in reversed(doms)]
    assert np.array_equal(rev.values, flat.values[flat.reverse_index()])
