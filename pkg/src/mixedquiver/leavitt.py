"""Mixed Leavitt path algebras as reduced combinations of monomials alpha * conj(beta).

Normal forms come from two rules applied at the midpoint of a monomial:

* (CK1) ``~e . f -> delta(e, f) p_r(e)``, realized by :func:`mul`;
* (CK2) ``e_v . ~e_v -> p_v - sum(f . ~f for f != e_v)`` for the special edge
  ``e_v`` of each emitter ``v``, realized by :func:`reduce`.

The special edge of ``v`` must end at a vertex of the same level as ``v``;
otherwise rewriting would move a coefficient onto a midpoint whose field is
too small.  :class:`WordRewriter` is an independent letter-by-letter rewriting
engine used to test that the normal form does not depend on rule order.
"""

import random
from collections import defaultdict

from .mpa import LevelViolation, MixedPathAlgebra, MpaElement, format_terms
from .quiver import Path, QuiverError
from .textfmt import ParseError, split_coefficient, split_terms

__all__ = [
    "SpecialEdgeChoice", "LeavittAlgebra", "LpaElement", "mul", "reduce",
    "check_relations", "verify_mu_inverse", "quotient_map", "WordRewriter",
    "monomial_text",
]


class SpecialEdgeChoice:
    """The edge e_v used to orient (CK2) at each emitter v."""

    def __init__(self, quiver, levels, mapping=None):
        self.quiver = quiver
        chosen = {}
        for v in quiver.vertices:
            out = quiver.out_edges[v]
            if not out:
                continue
            if mapping is not None and v in mapping:
                e = quiver.edge_map.get(mapping[v])
                if e is None or e.src != v:
                    raise QuiverError(f"special edge {mapping[v]!r} does not start at {v!r}")
                if levels[e.dst] != levels[v]:
                    raise QuiverError(f"special edge {e.id!r} changes level at {v!r}")
                chosen[v] = e.id
            else:
                same = [e for e in out if levels[e.dst] == levels[v]]
                if not same:
                    raise QuiverError(
                        f"no level-compatible special edge at {v!r}: level incompatibility after re-indexing")
                chosen[v] = same[0].id
        if mapping is not None:
            unknown = set(mapping) - set(chosen)
            if unknown:
                raise QuiverError(f"special edges given for non-emitters {sorted(unknown)}")
        self.edges = chosen

    @classmethod
    def least(cls, quiver, levels):
        return cls(quiver, levels)

    def __getitem__(self, v):
        return self.edges[v]

    def is_special(self, eid):
        e = self.quiver.edge_map[eid]
        return self.edges.get(e.src) == eid

    def to_json(self):
        return dict(self.edges)


def monomial_text(alpha, beta):
    if alpha.is_trivial and beta.is_trivial:
        return f"@{alpha.src}"
    return ".".join(list(alpha.edges) + ["~" + x for x in reversed(beta.edges)])


class LeavittAlgebra:
    """Quiver, tower, levels and special-edge choice for Leavitt elements."""

    def __init__(self, quiver, chain=None, tower=None, levels=None, choice=None):
        self.paths = MixedPathAlgebra(quiver, chain=chain, tower=tower, levels=levels)
        self.quiver = quiver
        self.chain = self.paths.chain
        self.tower = self.paths.tower
        self.levels = self.paths.levels
        if choice is None or isinstance(choice, dict):
            choice = SpecialEdgeChoice(quiver, self.levels, choice)
        self.choice = choice
        self._memo = {}

    @classmethod
    def from_paths(cls, paths, choice=None):
        return cls(paths.quiver, chain=paths.chain, tower=paths.tower, levels=paths.levels, choice=choice)

    def with_choice(self, mapping):
        return LeavittAlgebra(self.quiver, self.chain, self.tower, self.levels, mapping)

    def quotient(self, H, tower=None, chain=None):
        target = self.paths.quotient(H, tower=tower, chain=chain)
        return LeavittAlgebra.from_paths(target)

    # elements

    def coefficient(self, c):
        return self.paths.coefficient(c)

    def check_term(self, mono, coef):
        alpha, beta = mono
        if alpha.dst != beta.dst:
            raise QuiverError(f"monomial {monomial_text(alpha, beta)} has mismatched midpoint")
        q = self.quiver
        if not q.contains_path(alpha) or not q.contains_path(beta):
            raise QuiverError(f"monomial {monomial_text(alpha, beta)} is not over this quiver")
        if not self.tower.contains(coef, self.levels[alpha.dst]):
            raise LevelViolation(monomial_text(alpha, beta), self.tower.level(coef), self.levels[alpha.dst])

    def element(self, terms=()):
        acc = {}
        for mono, coef in terms:
            if isinstance(mono, str):
                mono = self.monomial(mono)
            _accumulate(acc, mono, self.coefficient(coef))
        for mono, coef in acc.items():
            self.check_term(mono, coef)
        return LpaElement(self, acc)

    def zero(self):
        return LpaElement(self, {})

    def one(self):
        one = self.tower.one()
        return LpaElement(self, {(Path(v, v), Path(v, v)): one for v in self.quiver.vertices})

    def vertex(self, v, coef=1):
        t = self.quiver.trivial(v)
        return self.element([((t, t), coef)])

    def edge(self, eid, coef=1):
        e = self.quiver.edge_map[eid]
        return self.element([((self.quiver.edge_path(eid), Path(e.dst, e.dst)), coef)])

    def ghost(self, eid, coef=1):
        e = self.quiver.edge_map[eid]
        return self.element([((Path(e.dst, e.dst), self.quiver.edge_path(eid)), coef)])

    def from_mpa(self, x):
        return self.element([((p, Path(p.dst, p.dst)), c) for p, c in x.terms.items()])

    def monomial(self, text):
        """``a.b.~d.~c`` -> (a.b, c.d); ``@v`` -> trivial pair."""
        text = text.strip()
        q = self.quiver
        if text.startswith("@"):
            t = q.trivial(text[1:])
            return (t, t)
        letters = text.split(".")
        real = [x for x in letters if not x.startswith("~")]
        ghosts = [x[1:] for x in letters if x.startswith("~")]
        if letters != real + ["~" + g for g in ghosts]:
            raise ParseError(f"ghost edges must follow real edges in {text!r}")
        try:
            beta = q.path(list(reversed(ghosts))) if ghosts else None
            alpha = q.path(real) if real else None
        except QuiverError as exc:
            raise ParseError(str(exc)) from None
        if alpha is None:
            alpha = q.trivial(beta.dst)
        if beta is None:
            beta = q.trivial(alpha.dst)
        if alpha.dst != beta.dst:
            raise ParseError(f"real and ghost parts of {text!r} do not meet")
        return (alpha, beta)

    def parse(self, text):
        text = text.strip()
        if text == "0":
            return self.zero()
        terms = []
        for sign, chunk in split_terms(text):
            coef_text, word = split_coefficient(chunk)
            coef = self.tower.one() if coef_text is None else self.tower.parse(coef_text)
            terms.append((self.monomial(word), -coef if sign < 0 else coef))
        return self.element(terms)

    def term_key(self, mono):
        alpha, beta = mono
        key = self.quiver.path_key
        return (alpha.length + beta.length, key(alpha), key(beta))

    # normal forms

    def is_normal(self, mono):
        alpha, beta = mono
        if not alpha.edges or not beta.edges:
            return True
        last = alpha.edges[-1]
        return last != beta.edges[-1] or not self.choice.is_special(last)

    def reduce_monomial(self, mono):
        """Normal form of a monomial as {monomial: integer multiplicity}."""
        hit = self._memo.get(mono)
        if hit is not None:
            return hit
        if self.is_normal(mono):
            out = {mono: 1}
        else:
            alpha, beta = mono
            e = self.quiver.edge_map[alpha.edges[-1]]
            a0 = Path(alpha.src, e.src, alpha.edges[:-1])
            b0 = Path(beta.src, e.src, beta.edges[:-1])
            out = dict(self.reduce_monomial((a0, b0)))
            for f in self.quiver.out_edges[e.src]:
                if f.id == e.id:
                    continue
                m = (Path(a0.src, f.dst, a0.edges + (f.id,)), Path(b0.src, f.dst, b0.edges + (f.id,)))
                out[m] = out.get(m, 0) - 1
            out = {m: k for m, k in out.items() if k}
        self._memo[mono] = out
        return out

    def __repr__(self):
        return f"LeavittAlgebra({self.quiver!r}, choice={self.choice.edges})"


def _accumulate(terms, key, coef):
    prev = terms.get(key)
    if prev is None:
        if not coef.is_zero():
            terms[key] = coef
    else:
        total = prev + coef
        if total.is_zero():
            del terms[key]
        else:
            terms[key] = total


class LpaElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def items(self):
        key = self.algebra.term_key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, mono):
        if isinstance(mono, str):
            mono = self.algebra.monomial(mono)
        return self.terms.get(mono, self.algebra.tower.zero())

    def _check(self, other):
        if not isinstance(other, LpaElement):
            return False
        if other.algebra.quiver != self.algebra.quiver:
            raise ValueError("elements of different algebras")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(terms, m, c)
        return LpaElement(self.algebra, terms)

    def __neg__(self):
        return LpaElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LpaElement):
            self._check(other)
            return reduce(mul(self, other))
        c = self.algebra.coefficient(other)
        return self.algebra.element([(m, c * x) for m, x in self.terms.items()])

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, LpaElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_normal(self):
        return all(self.algebra.is_normal(m) for m in self.terms)

    def to_text(self):
        return format_terms([(monomial_text(*m), c) for m, c in self.items()], self.algebra.tower)

    __str__ = to_text

    def __repr__(self):
        return f"LpaElement({self.to_text()!r})"


def _mul_monomials(m1, m2):
    """(alpha ~beta)(gamma ~delta) via (CK1); None when the product vanishes."""
    alpha, beta = m1
    gamma, delta = m2
    if beta.src != gamma.src:
        return None
    nb, ng = beta.length, gamma.length
    if nb <= ng:
        if gamma.edges[:nb] != beta.edges:
            return None
        rest = gamma.edges[nb:]
        return (Path(alpha.src, gamma.dst, alpha.edges + rest), delta)
    if beta.edges[:ng] != gamma.edges:
        return None
    rest = beta.edges[ng:]
    return (alpha, Path(delta.src, beta.dst, delta.edges + rest))


def mul(a, b):
    """Product without (CK2) reduction."""
    out = {}
    for m1, c in a.terms.items():
        for m2, d in b.terms.items():
            m = _mul_monomials(m1, m2)
            if m is not None:
                _accumulate(out, m, c * d)
    return LpaElement(a.algebra, out)


def reduce(a, choice=None):
    """Normal form of ``a`` with respect to the algebra's (or the given) special edges."""
    alg = a.algebra
    if choice is not None:
        alg = alg.with_choice(choice.edges if isinstance(choice, SpecialEdgeChoice) else choice)
    out = {}
    for m, c in a.terms.items():
        for m2, k in alg.reduce_monomial(m).items():
            _accumulate(out, m2, c * k)
    return LpaElement(alg, out)


# relation checks

def check_relations(alg):
    """Evaluate every instance of (V), (E1), (E2), (CK1), (CK2); returns a list of records."""
    q = alg.quiver
    zero = alg.zero()
    records = []

    def record(rel, text, lhs, rhs):
        records.append({"relation": rel, "instance": text, "ok": lhs == rhs})

    for v in q.vertices:
        for w in q.vertices:
            record("V", f"@{v} * @{w}", alg.vertex(v) * alg.vertex(w), alg.vertex(v) if v == w else zero)
    for e in q.edges:
        ee, ge = alg.edge(e.id), alg.ghost(e.id)
        record("E1", f"@{e.src} * {e.id}", alg.vertex(e.src) * ee, ee)
        record("E1", f"{e.id} * @{e.dst}", ee * alg.vertex(e.dst), ee)
        record("E2", f"@{e.dst} * ~{e.id}", alg.vertex(e.dst) * ge, ge)
        record("E2", f"~{e.id} * @{e.src}", ge * alg.vertex(e.src), ge)
        for f in q.edges:
            rhs = alg.vertex(e.dst) if e.id == f.id else zero
            record("CK1", f"~{e.id} * {f.id}", ge * alg.edge(f.id), rhs)
    for v in q.vertices:
        out = q.out_edges[v]
        if not out:
            continue
        total = zero
        for e in out:
            total = total + alg.edge(e.id) * alg.ghost(e.id)
        record("CK2", " + ".join(f"{e.id}.~{e.id}" for e in out), total, alg.vertex(v))
    return records


def verify_mu_inverse(alg, v):
    """Check that (x_i) -> sum x_i ~e_i inverts right multiplication by (e_1, ..., e_n) at v."""
    q = alg.quiver
    if v not in q.vertex_index:
        raise QuiverError(f"unknown vertex {v!r}")
    out = q.out_edges[v]
    if not out:
        raise QuiverError(f"vertex {v!r} is a sink; no inverse is adjoined there")
    for ei in out:
        for ej in out:
            expected = alg.vertex(ei.dst) if ei.id == ej.id else alg.zero()
            if alg.ghost(ei.id) * alg.edge(ej.id) != expected:
                return False
    total = alg.zero()
    for e in out:
        total = total + alg.edge(e.id) * alg.ghost(e.id)
    return total == alg.vertex(v)


def quotient_map(a, H, target=None):
    """Kill monomials meeting H; reduce the survivors in L(E/H)."""
    alg = a.algebra
    H = alg.quiver.vertex_set(H)
    if target is None:
        target = alg.quotient(H)
    kept = [(m, c) for m, c in a.terms.items() if m[0].dst not in H]
    return reduce(target.element(kept))


# independent word rewriting

class WordRewriter:
    """Rewrites words in the letters p_v, e, ~e with explicit relation rules.

    Letters are ('p', v), ('e', id), ('g', id).  A state is a dict word -> coefficient.
    """

    def __init__(self, alg):
        self.alg = alg
        self.q = alg.quiver
        self.special = dict(alg.choice.edges)

    def ends(self, letter):
        kind, x = letter
        if kind == "p":
            return x, x
        e = self.q.edge_map[x]
        return (e.src, e.dst) if kind == "e" else (e.dst, e.src)

    def rule(self, x, y):
        """Replacement for the adjacent pair (x, y) as [(word, sign)], or None if no rule applies."""
        if self.ends(x)[1] != self.ends(y)[0]:
            return []
        if x[0] == "p":
            return [((y,), 1)]
        if y[0] == "p":
            return [((x,), 1)]
        if x[0] == "g" and y[0] == "e":
            if x[1] == y[1]:
                return [((("p", self.q.edge_map[x[1]].dst),), 1)]
            return []
        if x[0] == "e" and y[0] == "g" and x[1] == y[1]:
            v = self.q.edge_map[x[1]].src
            if self.special.get(v) == x[1]:
                out = [((("p", v),), 1)]
                for f in self.q.out_edges[v]:
                    if f.id != x[1]:
                        out.append(((("e", f.id), ("g", f.id)), -1))
                return out
        return None

    def redexes(self, word):
        return [i for i in range(len(word) - 1) if self.rule(word[i], word[i + 1]) is not None]

    def step(self, state, word, i):
        coef = state.pop(word)
        for piece, sign in self.rule(word[i], word[i + 1]):
            new = word[:i] + piece + word[i + 2:]
            _accumulate(state, new, coef * sign)

    def normalize(self, state, rng=None, max_steps=100000):
        """Rewrite to a fixpoint; leftmost redex of the first word unless ``rng`` is given."""
        state = dict(state)
        for _ in range(max_steps):
            pending = [(w, r) for w, r in ((w, self.redexes(w)) for w in state) if r]
            if not pending:
                return state
            if rng is None:
                word, positions = min(pending, key=lambda wr: (len(wr[0]), wr[0]))
                self.step(state, word, positions[0])
            else:
                word, positions = rng.choice(sorted(pending))
                self.step(state, word, rng.choice(positions))
        raise RuntimeError("rewriting did not terminate within the step budget")

    def to_element(self, state):
        """Convert normal words to an element; every normal word is real letters then ghosts."""
        terms = {}
        for word, coef in state.items():
            if len(word) == 1 and word[0][0] == "p":
                v = word[0][1]
                mono = (Path(v, v), Path(v, v))
            else:
                real = [x for k, x in word if k == "e"]
                ghosts = [x for k, x in word if k == "g"]
                if [k for k, _ in word] != ["e"] * len(real) + ["g"] * len(ghosts):
                    raise AssertionError(f"irreducible word {word} is not real-then-ghost")
                mid = self.ends(word[len(real) - 1])[1] if real else self.ends(word[0])[0]
                alpha = self.q.path(real) if real else Path(mid, mid)
                beta = self.q.path(list(reversed(ghosts))) if ghosts else Path(mid, mid)
                mono = (alpha, beta)
            _accumulate(terms, mono, coef)
        return LpaElement(self.alg, terms)

    @staticmethod
    def letters_of(mono):
        alpha, beta = mono
        if alpha.is_trivial and beta.is_trivial:
            return (("p", alpha.src),)
        return tuple(("e", x) for x in alpha.edges) + tuple(("g", x) for x in reversed(beta.edges))

    def state_of_product(self, factors):
        """Word state for a product of elements, expanded letterwise without any reduction."""
        state = {(): self.alg.tower.one()}
        for f in factors:
            new = {}
            for w, c in state.items():
                for m, d in f.terms.items():
                    _accumulate(new, w + self.letters_of(m), c * d)
            state = new
        return state


def random_orders_agree(alg, factors, trials, seed=0):
    """Normalize one product under ``trials`` random rule orders; return the distinct results."""
    rw = WordRewriter(alg)
    start = rw.state_of_product(factors)
    rng = random.Random(seed)
    seen = set()
    results = []
    for _ in range(trials):
        out = rw.to_element(rw.normalize(start, rng))
        key = frozenset(out.terms.items())
        if key not in seen:
            seen.add(key)
            results.append(out)
    return results


def normal_monomials(alg, n):
    """All normal monomials with |alpha|, |beta| <= n, grouped by (|alpha|, |beta|)."""
    q = alg.quiver
    by_end = defaultdict(list)
    for p in q.paths_up_to(n):
        by_end[p.dst].append(p)
    out = defaultdict(list)
    for v, paths in by_end.items():
        for a in paths:
            for b in paths:
                if alg.is_normal((a, b)):
                    out[a.length, b.length].append((a, b))
    return dict(out)
