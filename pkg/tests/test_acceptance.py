"""Acceptance criteria 1-11 over the bundled corpus.

Each criterion prints one ``PASS``/``FAIL`` line.  Run directly with
``python3 tests/test_acceptance.py`` or through pytest.
"""

import sys
import time

import pytest

from mixedquiver import harness
from mixedquiver.series import TruncatedSeries, mixed_closure_probe

TIME_LIMIT = 60.0
REQUIRED_QUIVERS = {"edgeless", "a2", "et", "rose", "chain3", "cycle4"}


def configs():
    return [cfg for cfg, _ in harness.corpus_entries()]


def by_name(name):
    return next(cfg for cfg in configs() if cfg.name == name)


def run_all(check, cfgs, **kwargs):
    reports = {cfg.name: harness.CHECKS[check](cfg, **kwargs) for cfg in cfgs}
    bad = sorted(name for name, rep in reports.items() if rep["status"] != "pass")
    return reports, bad


def criterion_1():
    cfgs = configs()
    names = {cfg.name for cfg in cfgs}
    reports, bad = run_all("relations", cfgs)
    instances = sum(rep["details"]["instances"] for rep in reports.values())
    ok = REQUIRED_QUIVERS <= names and len(cfgs) >= 6 and not bad
    return ok, f"relation instances on {len(cfgs)} quivers: {instances} checked, failing quivers {bad}"


def criterion_2():
    reports, bad = run_all("confluence", configs(), trials=1000)
    runs = {name: rep["details"]["random_orders"] for name, rep in reports.items()}
    ok = not bad and all(n >= 1000 for n in runs.values())
    return ok, f"random reduction orders per quiver {min(runs.values())}+, disagreeing quivers {bad}"


def criterion_3():
    cfgs = [by_name("et"), by_name("et_rational")]
    kinds = sorted(cfg.tower.kind for cfg in cfgs)
    reports, bad = run_all("level-closure", cfgs, trials=500)
    ok = kinds == ["finite-field", "rational-function"] and not bad
    return ok, f"500 random element pairs over F2<=F4 and Q<=Q(t1); failing {bad}"


def criterion_4():
    cfgs = [cfg for cfg in configs() if len(cfg.quiver.vertices) <= 4]
    reports, bad = run_all("oracle", cfgs, max_length=4)
    total = sum(rep["details"]["candidates"] for rep in reports.values())
    algebras = sum(rep["details"]["algebras"] for rep in reports.values())
    return not bad, f"{total} candidates on {algebras} F2<=F4 algebras agree with the recursion; failing {bad}"


def criterion_5():
    cfgs = [cfg for cfg in configs() if cfg.reps()]
    reports, bad = run_all("series", cfgs, orders=range(2, 7))
    pairs = sum(len(rep["details"]["reps"]) for rep in reports.values())
    return not bad and pairs > 0, f"{pairs} (rep, H) pairs at N=2..6; failing {bad}"


def criterion_6():
    cfgs = [cfg for cfg in configs() if cfg.quiver.edges]
    reports, bad = run_all("derivation", cfgs, trials=500)
    short = [cfg.name for cfg in cfgs
             if reports[cfg.name]["details"]["pairs"] < 500 * len(cfg.quiver.edges)]
    ok = not bad and not short
    return ok, f"500 pairs per edge on {len(cfgs)} quivers; failing {bad}"


def criterion_7():
    cfgs = [cfg for cfg in configs() if cfg.quiver.edges]
    reports, bad = run_all("right-closure", cfgs)
    et = by_name("et")
    assert et.chain.to_json() == [["2"], ["1", "2"]]
    assert et.tower.spec.to_json() == {"kind": "finite-field", "p": 2, "degrees": [1, 2]}
    probe = mixed_closure_probe(TruncatedSeries.from_element(et.paths.parse("w * e"), 3), "e", "left")
    witness = probe["output"] == "w * @1" and not probe["valid"]
    found = harness.CHECKS["left-witness"](et)["status"] == "witness-found"
    ok = not bad and witness and found
    return ok, f"right closure failing {bad}; left witness w*e -> {probe['output']} invalid={not probe['valid']}"


def criterion_8():
    cfgs = configs()
    reports, bad = run_all("lattice-ideals", cfgs)
    counts = {name: rep["details"]["order_ideals"] for name, rep in reports.items()}
    exact = counts["a2"] == 2 and counts["et"] == 3 and counts["edgeless"] == 4
    return not bad and exact, f"ideal counts {counts}; mismatching {bad}"


def criterion_9():
    reports, bad = run_all("quotient-hom", configs())
    pairs = sum(rep["details"]["pairs"] for rep in reports.values())
    return not bad, f"{pairs} (algebra, H) quotient maps checked; failing {bad}"


def criterion_10():
    reports, bad = run_all("reindex", configs(), trials=200)
    checks = sum(rep["details"]["checks"] for rep in reports.values())
    return not bad, f"{checks} cut/corner checks from 200 elements per chain; failing {bad}"


def criterion_11():
    reports, bad = run_all("mu-inverse", configs())
    emitters = sum(len(rep["details"]["emitters"]) for rep in reports.values())
    return not bad and emitters > 0, f"{emitters} emitters verified; failing {bad}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def evaluate(n):
    start = time.perf_counter()
    ok, summary = CRITERIA[n - 1]()
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < TIME_LIMIT
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {summary} ({elapsed:.1f}s)"
    return ok, line


@pytest.mark.parametrize("n", range(1, len(CRITERIA) + 1))
def test_criterion(n, acceptance_lines):
    ok, line = evaluate(n)
    print(line)
    acceptance_lines.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n in range(1, len(CRITERIA) + 1)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
