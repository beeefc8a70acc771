"""Named checks over a quiver configuration; each returns a JSON-ready report dict.

A report has ``check``, ``status`` (one of pass, fail, witness-found,
inconclusive) and ``details``.
"""

import json
import random
from importlib import resources
from itertools import product

from . import sampling
from .leavitt import (LeavittAlgebra, WordRewriter, check_relations, mul, normal_monomials,
                      quotient_map, reduce, verify_mu_inverse)
from .monoid import GraphMonoid, Inconclusive
from .mpa import LevelViolation, MixedPathAlgebra, make_element, oracle_membership
from .quiver import HereditaryChain, QuiverError, load_quiver_document
from .series import (LinearRep, TruncatedSeries, check_binverse_identity, check_claim1,
                     check_crossing_independence, check_derivation_law, compress_series,
                     corner_rep, expand, left_transduction, mixed_closure_probe, split_B)
from .structure import ChainReindex
from .tower import make_tower

STATUSES = ("pass", "fail", "witness-found", "inconclusive")


class Config:
    """A quiver document: quiver, chain, tower and optional linear representations."""

    def __init__(self, source, name=None):
        q, chain, tower, raw = load_quiver_document(source)
        self.raw = raw
        self.name = name or raw.get("name") or (source if isinstance(source, str) and not source.lstrip().startswith("{") else "inline")
        self.quiver = q
        self.chain = chain or HereditaryChain.trivial(q)
        self.tower = make_tower(tower) if tower is not None else make_tower(
            {"kind": "constant", "levels": self.chain.r})
        self._paths = None
        self._leavitt = None

    @property
    def paths(self):
        if self._paths is None:
            self._paths = MixedPathAlgebra(self.quiver, self.chain, self.tower)
        return self._paths

    @property
    def leavitt(self):
        if self._leavitt is None:
            self._leavitt = LeavittAlgebra.from_paths(self.paths)
        return self._leavitt

    def reps(self):
        out = []
        for data in self.raw.get("reps", []):
            rep = LinearRep.from_json(self.paths, data)
            out.append((data.get("name", f"rep{len(out)}"), rep, self.quiver.vertex_set(data.get("H", []))))
        return out


def _report(check, ok, details, positive="pass"):
    return {"check": check, "status": positive if ok else "fail", "details": details}


def corpus_entries():
    """(Config, expected checks) for every bundled corpus entry, in index order."""
    base = resources.files("mixedquiver") / "corpus"
    index = json.loads((base / "index.json").read_text(encoding="utf-8"))
    out = []
    for entry in index["entries"]:
        text = (base / entry["file"]).read_text(encoding="utf-8")
        out.append((Config(text, name=entry["file"].removesuffix(".json")), entry["checks"]))
    return out


def corpus_config(name):
    for cfg, _ in corpus_entries():
        if cfg.name == name or cfg.raw.get("name") == name:
            return cfg
    raise KeyError(name)


# leavitt

def run_relations(cfg):
    records = check_relations(cfg.leavitt)
    failed = [r for r in records if not r["ok"]]
    return _report("relations", not failed, {"instances": len(records), "failed": failed})


def run_mu_inverse(cfg):
    emitters = [v for v in cfg.quiver.vertices if cfg.quiver.out_edges[v]]
    results = {v: verify_mu_inverse(cfg.leavitt, v) for v in emitters}
    return _report("mu-inverse", all(results.values()), {"emitters": results})


def run_confluence(cfg, trials=1000, seed=0, products=10):
    """Random rule orders on products of random elements, compared with each other and with reduce."""
    rng = random.Random(seed)
    alg = cfg.leavitt
    rw = WordRewriter(alg)
    per = max(1, trials // products)
    runs = 0
    disagreements = []
    for k in range(products):
        factors = sampling.random_walk_factors(alg, rng, length=rng.randint(3, 7))
        expected = alg.one()
        for f in factors:
            expected = reduce(mul(expected, f))
        start = rw.state_of_product(factors)
        leftmost = rw.to_element(rw.normalize(start))
        if leftmost != expected:
            disagreements.append({"product": k, "strategy": "leftmost", "got": leftmost.to_text(),
                                  "expected": expected.to_text()})
        for _ in range(per):
            got = rw.to_element(rw.normalize(start, rng))
            runs += 1
            if got != expected:
                disagreements.append({"product": k, "strategy": "random", "got": got.to_text(),
                                      "expected": expected.to_text()})
                break
    return _report("confluence", not disagreements, {"random_orders": runs, "disagreements": disagreements[:5]})


def run_level_closure(cfg, trials=500, seed=0):
    """Sums, products and normal forms of random valid elements stay valid."""
    rng = random.Random(seed)
    P, L = cfg.paths, cfg.leavitt
    failures = []

    def revalidate(kind, x):
        try:
            if kind == "mpa":
                make_element(P, list(x.terms.items()))
            else:
                L.element(list(x.terms.items()))
        except LevelViolation as exc:
            failures.append(f"{kind}: {exc}")

    for _ in range(trials):
        a, b = sampling.random_mpa(P, rng), sampling.random_mpa(P, rng)
        try:
            revalidate("mpa", a + b)
            revalidate("mpa", a * b)
        except LevelViolation as exc:
            failures.append(f"mpa op: {exc}")
        x, y = sampling.random_lpa(L, rng), sampling.random_lpa(L, rng)
        try:
            revalidate("lpa", x + y)
            revalidate("lpa", mul(x, y))
            revalidate("lpa", x * y)
            revalidate("lpa", reduce(x))
        except LevelViolation as exc:
            failures.append(f"lpa op: {exc}")
    return _report("level-closure", not failures, {"trials": trials, "failures": failures[:5]})


def run_quotient_hom(cfg, trials=30, seed=0):
    """phi(ab) = phi(a) phi(b), phi(1) = 1 and relation images, for every hereditary saturated H."""
    rng = random.Random(seed)
    q = cfg.quiver
    algebras = [("constant", LeavittAlgebra(q, tower={"kind": "constant", "p": 2, "levels": 0})),
                ("configured", cfg.leavitt)]
    checked, skipped, failures = 0, [], []
    for label, alg in algebras:
        for H in q.enumerate_lattice().sets:
            try:
                target = alg.quotient(H)
            except QuiverError as exc:
                skipped.append({"algebra": label, "H": q.sorted_vertices(H), "reason": str(exc)})
                continue
            hs = q.sorted_vertices(H)
            if quotient_map(alg.one(), H, target) != target.one():
                failures.append({"algebra": label, "H": hs, "what": "unit"})
            for _ in range(trials):
                a, b = sampling.random_lpa(alg, rng), sampling.random_lpa(alg, rng)
                lhs = quotient_map(a * b, H, target)
                rhs = quotient_map(a, H, target) * quotient_map(b, H, target)
                if lhs != rhs:
                    failures.append({"algebra": label, "H": hs, "what": "product", "a": a.to_text(), "b": b.to_text()})
                    break
            for lhs, rhs, name in _relation_pairs(alg):
                if quotient_map(lhs, H, target) != quotient_map(rhs, H, target):
                    failures.append({"algebra": label, "H": hs, "what": name})
            checked += 1
    return _report("quotient-hom", not failures, {"pairs": checked, "skipped": skipped, "failures": failures[:5]})


def _relation_pairs(alg):
    """Unreduced (lhs, rhs) for every relation instance of L(E)."""
    q = alg.quiver
    zero = alg.zero()
    out = []
    for v in q.vertices:
        for w in q.vertices:
            out.append((mul(alg.vertex(v), alg.vertex(w)), alg.vertex(v) if v == w else zero, f"V {v},{w}"))
    for e in q.edges:
        out.append((mul(alg.vertex(e.src), alg.edge(e.id)), alg.edge(e.id), f"E1 {e.id}"))
        out.append((mul(alg.ghost(e.id), alg.vertex(e.src)), alg.ghost(e.id), f"E2 {e.id}"))
        for f in q.edges:
            out.append((mul(alg.ghost(e.id), alg.edge(f.id)), alg.vertex(e.dst) if e.id == f.id else zero,
                        f"CK1 {e.id},{f.id}"))
    for v in q.vertices:
        if q.out_edges[v]:
            total = zero
            for e in q.out_edges[v]:
                total = total + mul(alg.edge(e.id), alg.ghost(e.id))
            out.append((total, alg.vertex(v), f"CK2 {v}"))
    return out


def run_leavitt_dimension(cfg):
    """Acyclic quivers: normal monomials number sum over sinks of (paths ending there)^2,
    and graded counts agree across all special-edge choices (constant coefficients)."""
    q = cfg.quiver
    if not q.is_acyclic():
        return {"check": "leavitt-dimension", "status": "inconclusive", "details": {"reason": "quiver has a cycle"}}
    n = len(q.vertices)
    alg = LeavittAlgebra(q, tower={"kind": "constant", "p": 2, "levels": 0})
    counts = {s: 0 for s in q.sinks()}
    for p in q.paths_up_to(n):
        if p.dst in counts:
            counts[p.dst] += 1
    expected = sum(c * c for c in counts.values())
    graded = {k: len(v) for k, v in normal_monomials(alg, n).items()}
    emitters = [v for v in q.vertices if q.out_edges[v]]
    choices = product(*[[e.id for e in q.out_edges[v]] for v in emitters])
    mismatched = []
    for combo in choices:
        other = alg.with_choice(dict(zip(emitters, combo)))
        g = {k: len(v) for k, v in normal_monomials(other, n).items()}
        if g != graded:
            mismatched.append(dict(zip(emitters, combo)))
    total = sum(graded.values())
    return _report("leavitt-dimension", total == expected and not mismatched,
                   {"normal_monomials": total, "sum_of_squares": expected, "choice_mismatches": mismatched})


# monoid

def run_lattice_ideals(cfg, bound=None):
    q = cfg.quiver
    lattice = q.enumerate_lattice()
    try:
        ideals = GraphMonoid(q).order_ideal_lattice(bound, lattice)
    except Inconclusive as exc:
        return {"check": "lattice-ideals", "status": "inconclusive", "details": {"reason": str(exc)}}
    ok = ideals.is_isomorphic() and len(ideals) == len(lattice)
    return _report("lattice-ideals", ok, {"order_ideals": len(ideals), "hereditary_saturated": len(lattice),
                                          "ideals": [q.sorted_vertices(I) for I in ideals.ideals]})


# mixed path algebra oracle

def oracle_configurations(cfg):
    """F2 <= F4 algebras on every two-step chain H < E^0 (H hereditary saturated)."""
    q = cfg.quiver
    tower = make_tower({"kind": "finite-field", "p": 2, "degrees": [1, 2]})
    full = frozenset(q.vertices)
    out = []
    for H in q.enumerate_lattice().sets:
        if H != full:
            out.append(MixedPathAlgebra(q, HereditaryChain(q, [H, full]), tower))
    return out


def run_oracle(cfg, max_length=4, random_trials=40, seed=0, algebras=None):
    """make_element acceptance versus the recursion span, exhaustively on single terms."""
    rng = random.Random(seed)
    if algebras is None:
        algebras = oracle_configurations(cfg) if len(cfg.quiver.vertices) <= 4 else []
        if cfg.tower.is_finite and cfg.chain.r >= 1:
            algebras.append(cfg.paths)
    mismatches = []
    candidates = 0
    for alg in algebras:
        top = alg.tower
        values = _all_field_elements(top)
        for path in alg.quiver.paths_up_to(max_length):
            for c in values:
                candidates += 1
                accepted = _accepts(alg, [(path, c)])
                if accepted != oracle_membership(alg, [(path, c)]):
                    mismatches.append({"path": str(path), "coefficient": top.format(c)})
        for _ in range(random_trials):
            cand = sampling.random_candidate(alg, rng, terms=4, max_length=max_length)
            candidates += 1
            if _accepts(alg, cand) != oracle_membership(alg, cand):
                mismatches.append({"candidate": [(str(p), top.format(c)) for p, c in cand]})
    return _report("oracle", not mismatches, {"algebras": len(algebras), "candidates": candidates,
                                              "mismatches": mismatches[:5]})


def _all_field_elements(tower):
    field = tower.field
    if field.order <= 16:
        return [tower.element(v) for v in range(field.order)]
    rng = random.Random(1)
    return [tower.element(rng.randrange(field.order)) for _ in range(16)] + [tower.one()]


def _accepts(alg, pairs):
    try:
        make_element(alg, pairs)
    except LevelViolation:
        return False
    return True


# series

def run_series(cfg, orders=range(2, 7)):
    """B2 B1 = 0, the factorization of (I - B)^-1, the corner formula and the p_H x decomposition."""
    results = []
    ok = True
    for name, rep, H in cfg.reps():
        entry = {"rep": name, "H": cfg.quiver.sorted_vertices(H)}
        try:
            split_B(rep, H)
            entry["B2B1=0"] = True
        except AssertionError:
            entry["B2B1=0"] = False
        entry["binverse"] = {N: check_binverse_identity(rep, H, N) for N in orders}
        crep = corner_rep(rep, H)
        entry["corner"] = {}
        entry["claim1"] = {}
        for N in orders:
            full = expand(rep, N)
            entry["corner"][N] = expand(crep, N).terms == compress_series(full, H).terms
            entry["claim1"][N] = all(check_claim1(rep, H, N).values())
        good = entry["B2B1=0"] and all(entry["binverse"].values()) and all(entry["corner"].values()) \
            and all(entry["claim1"].values())
        ok = ok and good
        results.append(entry)
    return _report("series", ok, {"reps": results})


def run_derivation(cfg, trials=500, order=4, seed=0):
    rng = random.Random(seed)
    P = cfg.paths
    failures = []
    count = 0
    for e in cfg.quiver.edges:
        for _ in range(trials):
            r = sampling.random_series(P, rng, order)
            s = sampling.random_series(P, rng, order - rng.randint(0, 1))
            count += 1
            if not check_derivation_law(r, s, e.id):
                failures.append({"edge": e.id, "r": r.to_text(), "s": s.to_text()})
    return _report("derivation", not failures, {"pairs": count, "failures": failures[:5]})


def run_right_closure(cfg, trials=200, order=4, seed=0):
    rng = random.Random(seed)
    P = cfg.paths
    bad = []
    count = 0
    for _ in range(trials):
        s = sampling.random_series(P, rng, order)
        for e in cfg.quiver.edges:
            count += 1
            rep = mixed_closure_probe(s, e.id, "right")
            if not rep["valid"]:
                bad.append(rep)
    return _report("right-closure", not bad, {"probes": count, "failures": bad[:3]})


def find_left_witness(cfg, order=3):
    """Search c * path (c running over a basis of each level) for an invalid left transduction."""
    P = cfg.paths
    tower = P.tower
    if tower.is_finite:
        samples = [b for i in range(tower.r + 1) for b in tower.basis_of_level(i)]
    else:
        field = tower.field
        samples = [tower.one()] + [tower.element(field.variable(f"t{k}"))
                                   for k in range(1, getattr(field, "nvars", 0) + 1)]
    for path in P.quiver.paths_up_to(order):
        if not path.edges:
            continue
        for c in samples:
            if not P.admits(path, c):
                continue
            s = TruncatedSeries(P, order, {path: c})
            rep = mixed_closure_probe(s, path.edges[-1], "left")
            if not rep["valid"]:
                return rep
    return None


def run_left_witness(cfg, order=3):
    rep = find_left_witness(cfg, order)
    if rep is None:
        return {"check": "left-witness", "status": "fail", "details": {"reason": "no witness found"}}
    return {"check": "left-witness", "status": "witness-found", "details": rep}


def run_crossing(cfg, trials=100, order=2, seed=0):
    """Coefficient equations for sums a_i e b_i over crossing edges e of each chain member."""
    rng = random.Random(seed)
    P = cfg.paths
    tower = P.tower
    q = cfg.quiver
    if not tower.is_finite:
        return {"check": "crossing", "status": "inconclusive", "details": {"reason": "needs a finite-field tower"}}
    done, hypotheses, failures = 0, 0, []
    for H in cfg.chain.sets[:-1]:
        if not H:
            continue
        outside = [v for v in q.vertices if v not in H]
        base = max(P.levels[v] for v in outside)
        quot = P.quotient(H)
        sub = P.restrict(H)
        for e in q.crossing_edges(H):
            edge = q.edge_map[e]
            for _ in range(trials):
                m = rng.randint(1, 3)
                a_list, b_list = [], []
                for _ in range(m):
                    pairs = [(sampling.random_path_to(quot.quiver, rng, order, edge.src),
                              sampling.random_coefficient(tower, base, rng)) for _ in range(rng.randint(1, 2))]
                    a_list.append(TruncatedSeries.from_terms(P, order, pairs))
                    bp = [(sampling.random_path(sub.quiver, rng, order, start=edge.dst),
                           sampling.random_coefficient(tower, tower.r, rng)) for _ in range(rng.randint(1, 3))]
                    b_list.append(TruncatedSeries.from_terms(P, order, bp))
                rep = check_crossing_independence(a_list, e, b_list, base)
                done += 1
                if rep["independent"] and rep["some_a_e_nonzero"]:
                    hypotheses += 1
                if not rep["ok"]:
                    failures.append({"edge": e, "report": rep})
    if done and not hypotheses:
        return {"check": "crossing", "status": "inconclusive", "details": {"trials": done, "reason": "hypotheses never met"}}
    return _report("crossing", not failures, {"trials": done, "hypotheses_met": hypotheses, "failures": failures[:3]})


# re-indexing

def run_reindex(cfg, trials=200, seed=0):
    """cut(cut(x, i), j - i) = cut(x, j); cut and corner respect products and re-validate."""
    rng = random.Random(seed)
    L = cfg.leavitt
    r = cfg.chain.r
    failures = []
    checks = 0
    cuts = {i: ChainReindex(L, "cut", i) for i in range(1, r + 1)}
    corners = {i: ChainReindex(L, "corner", i) for i in range(0, r + 1)}
    nested = {i: {k: ChainReindex(R.leavitt, "cut", k) for k in range(1, r - i + 1)} for i, R in cuts.items()}
    for _ in range(trials):
        a, b = sampling.random_lpa(L, rng), sampling.random_lpa(L, rng)
        for i, R in cuts.items():
            ca, cb = R.apply(a), R.apply(b)
            for x in (ca, cb):
                R.leavitt.element(list(x.terms.items()))
            checks += 1
            if R.apply(a * b) != ca * cb:
                failures.append({"op": f"cut {i} product", "a": a.to_text(), "b": b.to_text()})
            if R.apply(L.one()) != R.leavitt.one():
                failures.append({"op": f"cut {i} unit"})
            inner = nested[i]
            for j in range(i + 1, r + 1):
                checks += 1
                if inner[j - i].apply(ca) != cuts[j].apply(a):
                    failures.append({"op": f"cut {i} then {j - i} vs cut {j}", "a": a.to_text()})
        for i, R in corners.items():
            ca, cb = R.apply(a), R.apply(b)
            for x in (ca, cb):
                R.leavitt.element(list(x.terms.items()))
            pH = L.element([((L.quiver.trivial(v),) * 2, 1) for v in R.kept])
            checks += 1
            if ca * cb != R.apply(a * pH * b):
                failures.append({"op": f"corner {i} product", "a": a.to_text(), "b": b.to_text()})
            if R.apply(pH) != R.leavitt.one():
                failures.append({"op": f"corner {i} unit"})
        if failures:
            break
    return _report("reindex", not failures, {"checks": checks, "failures": failures[:5]})


CHECKS = {
    "relations": run_relations,
    "confluence": run_confluence,
    "mu-inverse": run_mu_inverse,
    "level-closure": run_level_closure,
    "quotient-hom": run_quotient_hom,
    "leavitt-dimension": run_leavitt_dimension,
    "lattice-ideals": run_lattice_ideals,
    "oracle": run_oracle,
    "series": run_series,
    "derivation": run_derivation,
    "right-closure": run_right_closure,
    "left-witness": run_left_witness,
    "crossing": run_crossing,
    "reindex": run_reindex,
}
