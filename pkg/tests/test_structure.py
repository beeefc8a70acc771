import random

import pytest
from conftest import build_quiver, small_quivers
from hypothesis import given
from hypothesis import strategies as st

from mixedquiver import sampling
from mixedquiver.harness import corpus_config
from mixedquiver.quiver import QuiverError
from mixedquiver.series import TruncatedSeries
from mixedquiver.structure import ChainReindex, check_corner_path_identities, corner, cut

seeds = st.integers(0, 2 ** 32 - 1)


def test_cut_examples(et):
    P = et.paths
    x = P.parse("f + w * e")
    y = cut(x, 1)
    assert y.to_text() == "1 * f"
    assert y.algebra.quiver.vertices == ("1",)
    assert cut(P.vertex("2"), 1).is_zero()
    assert cut(et.leavitt.parse("f + w * e.~e"), 1).to_text() == "1 * f"


def test_corner_examples(et):
    P = et.paths
    w = P.tower.parse("w")
    y = corner(P.parse("w * @2 + f"), 0)
    assert y.to_text() == "w * @2"
    assert y.algebra.levels == {"2": 0}
    assert y.algebra.tower.contains(w, 0)
    assert corner(P.parse("f + f.f"), 0).is_zero()


def test_corner_path_identities_examples():
    chain = build_quiver(3, [(0, 1), (1, 2)])
    assert check_corner_path_identities(chain, {"2", "3"})
    assert check_corner_path_identities(chain, chain.vertices)
    with pytest.raises(QuiverError):
        check_corner_path_identities(chain, {"1"})


@given(small_quivers(max_vertices=4, max_edges=6))
def test_corner_path_identities_random(q):
    for H in q.enumerate_lattice().sets:
        assert check_corner_path_identities(q, H, 3)


def test_reindex_targets_cycle4():
    P = corpus_config("cycle4").paths
    R = ChainReindex(P, "cut", 1)
    assert R.quiver.vertices == ("a", "b", "d")
    assert R.chain.to_json() == [["d"], ["a", "b", "d"]]
    assert R.tower.r == 1 and R.levels == {"a": 0, "b": 0, "d": 1}
    C = ChainReindex(P, "corner", 1)
    assert C.quiver.vertices == ("c", "d")
    assert C.levels == {"c": 1, "d": 0}
    assert C.tower.spec.to_json()["window"] == [1, 2]
    with pytest.raises(ValueError):
        ChainReindex(P, "cut", 0)
    with pytest.raises(ValueError):
        ChainReindex(P, "corner", 3)


def test_corner_level_shift_uses_same_field():
    P = corpus_config("cycle4").paths
    w = P.tower.parse("w")
    x = P.parse("w^5 * t + w * u + w * @c")
    y = corner(x, 1)
    assert y.to_text() == "w * @c + w * u"
    assert y.algebra.tower.same_field(P.tower)
    assert y.algebra.tower.level(w) == 1


@pytest.mark.parametrize("name", ["cycle4", "et", "edgeless"])
@given(seed=seeds)
def test_cut_composition_and_products(name, seed):
    cfg = corpus_config(name)
    P = cfg.paths
    r = cfg.chain.r
    rng = random.Random(seed)
    a, b = sampling.random_mpa(P, rng), sampling.random_mpa(P, rng)
    for i in range(1, r + 1):
        ca = cut(a, i)
        assert cut(a * b, i) == ca * cut(b, i)
        for j in range(i + 1, r + 1):
            assert cut(ca, j - i) == cut(a, j)
    for i in range(r + 1):
        assert corner(a * b, i) == corner(a, i) * corner(b, i)


@pytest.mark.parametrize("name", ["cycle4", "et"])
@given(seed=seeds)
def test_reindex_series_keeps_validity(name, seed):
    cfg = corpus_config(name)
    rng = random.Random(seed)
    s = sampling.random_series(cfg.paths, rng, 3)
    for i in range(cfg.chain.r + 1):
        out = ChainReindex(cfg.paths, "corner", i).apply(s)
        assert isinstance(out, TruncatedSeries) and out.is_mixed_valid()
        if i:
            assert ChainReindex(cfg.paths, "cut", i).apply(s).is_mixed_valid()


def test_reindex_needs_chain():
    from mixedquiver.mpa import MixedPathAlgebra
    q = build_quiver(2, [(0, 1)])
    P = MixedPathAlgebra(q, levels={"1": 0, "2": 0})
    with pytest.raises(QuiverError):
        cut(P.vertex("1"), 1)
