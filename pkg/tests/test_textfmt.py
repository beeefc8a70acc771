import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mixedquiver import sampling
from mixedquiver.harness import corpus_config
from mixedquiver.textfmt import ParseError, evaluate, split_coefficient, split_terms, split_top_level, wrap


def ev(text, **env):
    return evaluate(text, Fraction, lambda name: Fraction(env[name]))


def test_precedence():
    assert ev("1 + 2 * 3") == 7
    assert ev("2 * 3 ^ 2") == 18
    assert ev("-(1 + 2) / 4") == Fraction(-3, 4)
    assert ev("x^2 - x", x=3) == 6


@pytest.mark.parametrize("bad", ["", "1 +", "(1", "1)", "2 $ 3", "x^y"])
def test_malformed_expressions(bad):
    with pytest.raises((ParseError, KeyError)):
        ev(bad, x=1, y=2)


def test_splitting_helpers():
    assert split_top_level("a * (b * c) * d", " * ") == ["a", "(b * c)", "d"]
    assert split_terms("1 * f + (t1 - 1) * e - @2") == [(1, "1 * f"), (1, "(t1 - 1) * e"), (-1, "@2")]
    assert split_coefficient("(w + 1) * f.e") == ("(w + 1)", "f.e")
    assert split_coefficient("f.e") == (None, "f.e")
    assert wrap("w^2") == "w^2"
    assert wrap("w+1") == "(w+1)"


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6))
def test_sum_evaluation(xs):
    text = " + ".join(f"({x})" for x in xs)
    assert ev(text) == sum(xs)


CASES = ["et", "et_rational", "cycle4", "rose", "kronecker"]


@pytest.mark.parametrize("name", CASES)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_element_text_round_trip(name, seed):
    cfg = corpus_config(name)
    rng = random.Random(seed)
    x = sampling.random_mpa(cfg.paths, rng)
    assert cfg.paths.parse(x.to_text()) == x
    y = sampling.random_lpa(cfg.leavitt, rng)
    assert cfg.leavitt.parse(y.to_text()) == y


@pytest.mark.parametrize("name", CASES)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_series_text_round_trip(name, seed):
    cfg = corpus_config(name)
    s = sampling.random_series(cfg.paths, random.Random(seed), 3)
    again = cfg.paths.parse(s.to_text())
    assert again.terms == s.terms
