import random

import pytest
from conftest import build_quiver
from hypothesis import given
from hypothesis import strategies as st

from mixedquiver import sampling
from mixedquiver.harness import corpus_config
from mixedquiver.mpa import MixedPathAlgebra
from mixedquiver.series import (EpsilonNonzero, LinearRep, TruncatedSeries, check_binverse_identity,
                                check_claim1, check_crossing_independence, check_derivation_law,
                                compress_series, corner_rep, expand, left_transduction,
                                mixed_closure_probe, right_transduction, split_B, tau)

seeds = st.integers(0, 2 ** 32 - 1)


def rep_named(cfg, name):
    return next((rep, H) for n, rep, H in cfg.reps() if n == name)


def series(alg, text, order):
    return TruncatedSeries.from_element(alg.parse(text), order)


def matrix_route(rep, order):
    """lambda (sum_k B^k) rho with plain element arithmetic, then truncated."""
    P = rep.algebra
    n = rep.size

    def cut(x):
        return P.element([(p, c) for p, c in x.terms.items() if p.length <= order])

    power = [[P.one() if i == j else P.zero() for j in range(n)] for i in range(n)]
    total = [row[:] for row in power]
    for _ in range(order):
        power = [[cut(sum((power[i][k] * rep.B[k][j] for k in range(n)), P.zero())) for j in range(n)]
                 for i in range(n)]
        total = [[total[i][j] + power[i][j] for j in range(n)] for i in range(n)]
    value = P.zero()
    for i in range(n):
        for j in range(n):
            value = value + rep.lam[i] * total[i][j] * rep.rho[j]
    return cut(value)


def test_loop_expansion():
    P = MixedPathAlgebra(build_quiver(1, [(0, 0)]))
    rep = LinearRep(P, ["@1"], [["x0"]], ["@1"])
    assert expand(rep, 3).to_text() == "1 * @1 + 1 * x0 + 1 * x0.x0 + 1 * x0.x0.x0"


def test_zero_matrix_gives_lambda_rho(et):
    P = et.paths
    rep = LinearRep(P, ["@1", "e"], [[0, 0], [0, 0]], ["f", "@2"])
    assert expand(rep, 4).terms == (P.parse("f + e")).terms


def test_running_example_expansion(et):
    rep, _ = rep_named(et, "running")
    assert expand(rep, 2).to_text() == "1 * @1 + 1 * f + 1 * e + 1 * f.f + 1 * f.e"


def test_running_example_split(et):
    rep, H = rep_named(et, "running")
    f, e = et.quiver.path("f"), et.quiver.path("e")
    one = et.tower.one()
    B1, B2 = split_B(rep, H)
    assert B1 == [[{f: one}, {}], [{}, {}]]
    assert B2 == [[{}, {e: one}], [{}, {}]]
    B1, B2 = split_B(rep, et.quiver.vertices)
    assert B1 == [[{}, {}], [{}, {}]]
    assert B2 == [[{f: one}, {e: one}], [{}, {}]]


def test_running_example_identities(et):
    rep, H = rep_named(et, "running")
    assert check_binverse_identity(rep, H, 4)
    assert all(check_claim1(rep, H, 4).values())


def test_nilpotent_inverse_is_finite(et):
    rep, H = rep_named(et, "nilpotent")
    assert expand(rep, 6).terms == expand(rep, 1).terms
    for H in et.quiver.enumerate_lattice().sets:
        assert check_binverse_identity(rep, H, 5)


def test_compression_examples(et):
    rep, H = rep_named(et, "running")
    assert compress_series(expand(rep, 4), H).is_zero()
    small = corner_rep(rep, H)
    assert small.to_json()["lambda"] == ["0", "0"]
    full = corner_rep(rep, et.quiver.vertices)
    assert expand(full, 4).terms == expand(rep, 4).terms


def test_epsilon_must_vanish(et):
    rep = LinearRep(et.paths, ["@1"], [["@1 + f"]], ["@1"])
    assert rep.epsilon_defect() == [(0, 0, "1")]
    with pytest.raises(EpsilonNonzero):
        expand(rep, 2)


def test_transduction_examples(et_rational, rose):
    Q = et_rational.paths
    assert right_transduction(series(Q, "2 * f + 3 * f.e", 3), "f").terms == Q.parse("2 * @1 + 3 * e").terms
    assert right_transduction(series(Q, "@1", 3), "e").is_zero()
    assert left_transduction(series(Q, "3 * f.e", 3), "e").terms == Q.parse("3 * f").terms
    assert left_transduction(series(Q, "@2", 3), "e").is_zero()
    assert left_transduction(series(Q, "f.f", 3), "f").terms == Q.parse("f").terms
    loop = rose.paths
    shifted = right_transduction(series(loop, "@v + a + a.a + a.a.a", 3), "a")
    assert shifted.terms == loop.parse("@v + a + a.a").terms


def test_tau_examples(et_rational):
    Q = et_rational.paths
    assert tau(series(Q, "@1", 2), "e").terms == Q.parse("@2").terms
    assert tau(series(Q, "f + @2", 2), "e").is_zero()
    assert tau(series(Q, "5/3 * @1 + f", 2), "e").terms == Q.parse("5/3 * @2").terms


def test_derivation_law_examples(et):
    P = et.paths
    f = series(P, "f", 4)
    assert check_derivation_law(f, f, "f")
    assert check_derivation_law(series(P, "@1", 4), series(P, "f.e + f", 4), "f")


def test_closure_asymmetry_example(et):
    P = et.paths
    rep = mixed_closure_probe(series(P, "w * e", 3), "e", "left")
    assert rep["output"] == "w * @1"
    assert not rep["valid"]
    right = mixed_closure_probe(series(P, "w * e + f.f.e", 3), "f", "right")
    assert right["valid"]
    base = mixed_closure_probe(series(P, "f.e + e", 3), "e", "left")
    assert base["valid"]


@pytest.mark.parametrize("name", ["et", "et_rational", "rose", "cycle4", "chain3", "kronecker"])
@pytest.mark.parametrize("order", [2, 4, 6])
def test_expansion_matches_matrix_route(name, order):
    cfg = corpus_config(name)
    for _, rep, _ in cfg.reps():
        assert expand(rep, order).terms == matrix_route(rep, order).terms


@pytest.mark.parametrize("name", ["et", "et_rational", "cycle4", "rose"])
@given(seed=seeds)
def test_random_reps_satisfy_identities(name, seed):
    cfg = corpus_config(name)
    rng = random.Random(seed)
    rep = sampling.random_rep(cfg.paths, rng)
    for H in cfg.quiver.enumerate_lattice().sets:
        assert check_binverse_identity(rep, H, 4)
        assert all(check_claim1(rep, H, 4).values())
    assert expand(rep, 4).terms == matrix_route(rep, 4).terms


@pytest.mark.parametrize("name", ["et", "et_rational", "rose", "cycle4"])
@given(seed=seeds)
def test_random_derivation_law(name, seed):
    cfg = corpus_config(name)
    rng = random.Random(seed)
    r = sampling.random_series(cfg.paths, rng, 4)
    s = sampling.random_series(cfg.paths, rng, 4)
    for e in cfg.quiver.edges:
        assert check_derivation_law(r, s, e.id)


@pytest.mark.parametrize("name", ["et", "et_rational", "cycle4"])
@given(seed=seeds)
def test_right_transduction_preserves_validity(name, seed):
    cfg = corpus_config(name)
    rng = random.Random(seed)
    s = sampling.random_series(cfg.paths, rng, 4)
    for e in cfg.quiver.edges:
        assert mixed_closure_probe(s, e.id, "right")["valid"]


@given(seed=seeds)
def test_series_product_matches_element_product(seed):
    cfg = corpus_config("cycle4")
    rng = random.Random(seed)
    a, b = sampling.random_mpa(cfg.paths, rng), sampling.random_mpa(cfg.paths, rng)
    lhs = TruncatedSeries.from_element(a, 3) * TruncatedSeries.from_element(b, 3)
    expected = {p: c for p, c in (a * b).terms.items() if p.length <= 3}
    assert lhs.terms == expected


def test_crossing_equations(et):
    P = et.paths
    a_list = [series(P, "@1 + f", 2), series(P, "f.f", 2)]
    b_list = [series(P, "@2", 0), series(P, "w * @2", 0)]
    report = check_crossing_independence(a_list, "e", b_list, 0)
    assert report == {"independent": True, "some_a_e_nonzero": True, "equations_hold": True,
                      "sum_nonzero": True, "ok": True}
    dependent = [series(P, "@2", 0), series(P, "@2", 0)]
    report = check_crossing_independence([series(P, "@1", 1), series(P, "@1", 1)], "e", dependent, 0)
    assert not report["independent"]
    assert not report["sum_nonzero"]
    assert report["equations_hold"]


def test_rep_json_round_trip(et):
    for _, rep, _ in et.reps():
        again = LinearRep.from_json(et.paths, rep.to_json())
        assert again.to_json() == rep.to_json()
