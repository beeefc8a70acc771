from itertools import combinations

import pytest
from conftest import build_quiver, small_quivers
from hypothesis import given

from mixedquiver.quiver import HereditaryChain, Path, Quiver, QuiverError, load_quiver_document


def q12():
    return build_quiver(2, [(0, 1)])


def qet():
    return Quiver(["1", "2"], [("f", "1", "1"), ("e", "1", "2")])


def q123():
    return build_quiver(3, [(0, 1), (1, 2)])


def brute_force_lattice(q):
    """Subsets closed forward along edges and backward over fully-captured emitters."""
    succ = {v: [e.dst for e in q.edges if e.src == v] for v in q.vertices}
    out = set()
    for k in range(len(q.vertices) + 1):
        for S in combinations(q.vertices, k):
            S = frozenset(S)
            hered = all(w in S for v in S for w in succ[v])
            sat = all(v in S for v in q.vertices if succ[v] and all(w in S for w in succ[v]))
            if hered and sat:
                out.add(S)
    return out


def test_hereditary_examples():
    assert q12().is_hereditary({"2"})
    assert not q12().is_hereditary({"1"})
    assert qet().is_hereditary({"2"})


def test_saturated_examples():
    assert not q12().is_saturated({"2"})
    assert qet().is_saturated({"2"})
    for q in (q12(), qet(), q123()):
        assert q.is_saturated(q.vertices)


def test_closure_examples():
    assert q12().hereditary_saturated_closure({"2"}) == {"1", "2"}
    assert q12().hereditary_saturated_closure(()) == frozenset()
    assert qet().hereditary_saturated_closure(()) == frozenset()
    assert qet().hereditary_saturated_closure({"2"}) == {"2"}


def test_lattice_examples():
    assert set(q12().enumerate_lattice().sets) == {frozenset(), frozenset({"1", "2"})}
    assert set(qet().enumerate_lattice().sets) == {frozenset(), frozenset({"2"}), frozenset({"1", "2"})}
    assert len(build_quiver(3, []).enumerate_lattice()) == 8


def test_quotient_and_restriction_examples():
    q = qet()
    quo = q.quotient_graph({"2"})
    assert quo.vertices == ("1",) and [e.id for e in quo.edges] == ["f"]
    assert q.quotient_graph(()) == q
    assert q.quotient_graph(q.vertices).vertices == ()
    res = q.restriction_graph({"2"})
    assert res.vertices == ("2",) and res.edges == ()
    assert q.restriction_graph(q.vertices) == q
    chain = q123().restriction_graph({"2", "3"})
    assert chain.vertices == ("2", "3") and [(e.src, e.dst) for e in chain.edges] == [("2", "3")]


def test_crossing_edges_examples():
    assert qet().crossing_edges({"2"}) == ["e"]
    assert qet().crossing_edges({"1", "2"}) == []
    q = q123()
    assert [(q.edge_map[x].src, q.edge_map[x].dst) for x in q.crossing_edges({"3"})] == [("2", "3")]


def test_quotient_needs_hereditary_saturated():
    with pytest.raises(QuiverError):
        q12().quotient_graph({"2"})


@given(small_quivers(max_vertices=5, max_edges=7))
def test_lattice_matches_brute_force(q):
    lat = q.enumerate_lattice()
    assert set(lat.sets) == brute_force_lattice(q)
    assert len(lat.sets) == len(set(lat.sets))


@given(small_quivers(max_vertices=5, max_edges=7))
def test_generated_lattice_matches_exhaustive(q):
    assert set(q._lattice_generated()) == set(q._lattice_exhaustive())


@given(small_quivers(max_vertices=5, max_edges=6))
def test_lattice_meet_join(q):
    lat = q.enumerate_lattice()
    for a in lat.sets:
        for b in lat.sets:
            assert lat.meet(a, b) == a & b
            assert lat.join(a, b) == q.hereditary_saturated_closure(a | b)


@given(small_quivers(max_vertices=5, max_edges=7))
def test_closure_is_least_upper_member(q):
    lat = brute_force_lattice(q)
    for v in q.vertices:
        c = q.hereditary_saturated_closure({v})
        assert c in lat
        assert c == min((H for H in lat if v in H), key=len)


@given(small_quivers(max_vertices=4, max_edges=6))
def test_quotient_and_restriction_partition_edges(q):
    for H in q.enumerate_lattice().sets:
        quo = q.quotient_graph(H)
        res = q.restriction_graph(H)
        crossing = set(q.crossing_edges(H))
        ids = {e.id for e in quo.edges} | {e.id for e in res.edges} | crossing
        assert ids == {e.id for e in q.edges}
        assert len(quo.edges) + len(res.edges) + len(crossing) == len(q.edges)


@given(small_quivers(max_vertices=4, max_edges=5))
def test_path_counts(q):
    for n in range(4):
        paths = q.paths_of_length(n)
        assert len(set(paths)) == len(paths)
        for p in paths:
            assert p.length == n
            if n:
                assert q.path(p.edges) == p
                assert str(q.path(str(p))) == str(p)


def test_concat_and_keys():
    q = qet()
    f, e = q.path("f"), q.path("e")
    assert Quiver.concat(f, e) == q.path("f.e")
    assert Quiver.concat(e, f) is None
    assert Quiver.concat(q.trivial("1"), f) == f
    assert q.path_key(q.trivial("1")) < q.path_key(f) < q.path_key(q.path("f.e"))
    with pytest.raises(QuiverError):
        q.path("e.f")
    assert str(Path("1", "1")) == "@1"


def test_chain_levels():
    q = qet()
    chain = HereditaryChain(q, [{"2"}, {"1", "2"}])
    assert chain.r == 1
    assert chain.levels() == {"1": 0, "2": 1}
    empty = HereditaryChain(q, [(), {"2"}, {"1", "2"}])
    assert empty.levels() == {"1": 0, "2": 1}
    assert HereditaryChain.trivial(q).levels() == {"1": 0, "2": 0}
    with pytest.raises(QuiverError):
        HereditaryChain(q, [{"1", "2"}, {"2"}])
    with pytest.raises(QuiverError):
        HereditaryChain(q12(), [{"2"}, {"1", "2"}])


@given(small_quivers(max_vertices=4, max_edges=6))
def test_levels_are_antitone_along_edges(q):
    lat = q.enumerate_lattice().sets
    full = frozenset(q.vertices)
    for H in lat:
        if H == full:
            continue
        levels = HereditaryChain(q, [H, full]).levels()
        assert all(levels[e.src] <= levels[e.dst] for e in q.edges)


@pytest.mark.parametrize("doc", [
    '{"vertices": ["1"], "edges": [{"id": "e", "src": "1", "dst": "9"}]}',
    '{"vertices": ["1", "1"], "edges": []}',
    '{"vertices": ["1"], "edges": [{"id": "e", "src": "1", "dst": "1"}, {"id": "e", "src": "1", "dst": "1"}]}',
    '{"vertices": ["a.b"], "edges": []}',
    '{"edges": []}',
    '{"vertices": ["1", "2"], "edges": [{"id": "e", "src": "1", "dst": "2"}], "chain": [["2"], ["1", "2"]]}',
])
def test_malformed_documents(doc):
    with pytest.raises(QuiverError):
        load_quiver_document(doc)


@pytest.mark.parametrize("content", ["[1, 2]", "not json"])
def test_malformed_files(tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    with pytest.raises(QuiverError):
        load_quiver_document(str(path))


def test_json_round_trip():
    q = qet()
    assert Quiver.from_json(q.to_json()) == q
