import pytest
from conftest import build_quiver, small_acyclic_quivers, small_quivers
from hypothesis import given
from hypothesis import strategies as st

from mixedquiver.harness import corpus_config
from mixedquiver.monoid import CyclicQuiver, GraphMonoid, Inconclusive
from mixedquiver.quiver import Quiver


def a2():
    return GraphMonoid(build_quiver(2, [(0, 1)]))


def et_monoid():
    return GraphMonoid(Quiver(["1", "2"], [("f", "1", "1"), ("e", "1", "2")]))


def test_relation_examples():
    M = a2()
    assert [(str(l), str(r)) for l, r in M.relations()] == [("@1", "@2")]
    assert [(str(l), str(r)) for l, r in et_monoid().relations()] == [("@1", "@1 + @2")]
    assert GraphMonoid(build_quiver(2, [])).relations() == []


def test_normal_form_examples():
    M = a2()
    assert M.normal_form_acyclic(M.parse("@1")) == M.parse("@2")
    trace = []
    x = M.parse("2*@1 + @2")
    nf = M.normal_form_acyclic(x, trace)
    assert str(nf) == "3*@2"
    assert trace == [("1", 2)]
    assert M.replay(x, trace) == nf
    assert M.normal_form_acyclic(M.parse("4*@2")) == M.parse("4*@2")
    with pytest.raises(CyclicQuiver):
        et_monoid().normal_form_acyclic(et_monoid().parse("@1"))


def test_equality_examples():
    M = et_monoid()
    assert M.equals_bounded(M.parse("@1"), M.parse("@1 + @2")) == "yes"
    assert M.equals_bounded(M.parse("@2"), M.parse("2*@2"), 10) == "no"
    assert M.equals_bounded(M.parse("@1"), M.parse("@1")) == "yes"
    assert M.default_bound() == 24


def test_equality_can_be_unknown():
    M = et_monoid()
    # both classes are infinite, so pruning always happens
    assert M.equals_bounded(M.parse("@1"), M.parse("2*@1"), 6) == "unknown"


def test_ideal_lattice_examples():
    assert len(a2().order_ideal_lattice()) == 2
    lat = et_monoid().order_ideal_lattice()
    assert len(lat) == 3 and lat.is_isomorphic()
    assert lat.to_json()["ideals"] == [[], ["2"], ["1", "2"]]
    assert len(GraphMonoid(build_quiver(2, [])).order_ideal_lattice()) == 4


def test_generated_ideal_examples():
    M = a2()
    assert M.generated_ideal({"2"}) == {"1", "2"}
    assert M.generated_ideal(()) == frozenset()
    assert et_monoid().generated_ideal({"2"}) == {"2"}


def test_generated_ideal_bound_too_small():
    M = GraphMonoid(build_quiver(3, [(0, 1), (0, 2), (0, 2), (1, 2)]))
    with pytest.raises(Inconclusive):
        M.generated_ideal({"1"}, bound=1)


def test_parse_and_format():
    M = et_monoid()
    for text in ("0", "@1", "2*@1 + @2"):
        assert str(M.parse(text)) == text
    with pytest.raises(ValueError):
        M.parse("2*1")
    assert (M.parse("@1") + M.parse("@2")).to_json() == {"1": 1, "2": 1}


small_vectors = st.lists(st.integers(0, 2), min_size=4, max_size=4)


@given(small_acyclic_quivers(max_vertices=4, max_edges=4), small_vectors, small_vectors)
def test_bounded_equality_matches_normal_forms(q, xs, ys):
    M = GraphMonoid(q)
    d = len(q.vertices)
    x = M.element(dict(zip(q.vertices, xs[:d])))
    y = M.element(dict(zip(q.vertices, ys[:d])))
    same = M.normal_form_acyclic(x) == M.normal_form_acyclic(y)
    assert M.equals_bounded(x, y, 80) == ("yes" if same else "no")


@given(small_acyclic_quivers(max_vertices=4, max_edges=5), small_vectors)
def test_trace_replays(q, xs):
    M = GraphMonoid(q)
    x = M.element(dict(zip(q.vertices, xs)))
    trace = []
    nf = M.normal_form_acyclic(x, trace)
    assert M.replay(x, trace) == nf
    assert all(not q.out_edges[v] for v in nf.support())


@given(small_quivers(max_vertices=4, max_edges=5))
def test_ideals_match_hereditary_saturated_sets(q):
    M = GraphMonoid(q)
    lat = M.order_ideal_lattice(bound=40)
    assert len(lat) == len(q.enumerate_lattice())
    assert lat.is_isomorphic()


@pytest.mark.parametrize("name", ["edgeless", "a2", "et", "rose", "chain3", "kronecker", "cycle4"])
def test_corpus_ideal_counts(name):
    q = corpus_config(name).quiver
    lat = GraphMonoid(q).order_ideal_lattice()
    assert len(lat) == len(q.enumerate_lattice())
    assert lat.is_isomorphic()
