import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mixedquiver.harness import corpus_config
from mixedquiver.quiver import Quiver
from mixedquiver.tower import make_tower

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def et():
    return corpus_config("et")


@pytest.fixture(scope="session")
def et_rational():
    return corpus_config("et_rational")


@pytest.fixture(scope="session")
def rose():
    return corpus_config("rose")


@pytest.fixture(scope="session")
def f4():
    return make_tower({"kind": "finite-field", "p": 2, "degrees": [1, 2]})


@pytest.fixture(scope="session")
def qt():
    return make_tower({"kind": "rational-function", "levels": 1})


def build_quiver(nv, edge_pairs):
    vs = [str(i + 1) for i in range(nv)]
    edges = [{"id": f"x{k}", "src": vs[a], "dst": vs[b]} for k, (a, b) in enumerate(edge_pairs)]
    return Quiver.from_json({"vertices": vs, "edges": edges})


@st.composite
def small_quivers(draw, max_vertices=4, max_edges=5):
    nv = draw(st.integers(1, max_vertices))
    pairs = draw(st.lists(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)), max_size=max_edges))
    return build_quiver(nv, pairs)


@st.composite
def small_acyclic_quivers(draw, max_vertices=4, max_edges=5):
    nv = draw(st.integers(1, max_vertices))
    pairs = draw(st.lists(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1))
                          .filter(lambda t: t[0] < t[1]), max_size=max_edges))
    return build_quiver(nv, pairs)


_ACCEPTANCE = []


@pytest.fixture
def acceptance_lines():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
