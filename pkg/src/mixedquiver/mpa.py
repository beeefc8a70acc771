"""Mixed path algebras.

A mixed path algebra over a quiver E, a chain H_0 < ... < H_r = E^0 and a
field chain K_0 <= ... <= K_r is represented by its basis description: a
finite combination of paths where the coefficient of a path ending at v lies
in K_lev(v), lev(v) = r - min{i : v in H_i}.  :func:`oracle_membership`
rebuilds the algebra from its recursive definition to check that description.
"""

from . import kernels
from .quiver import HereditaryChain, Path, QuiverError
from .textfmt import ParseError, split_coefficient, split_terms, wrap
from .tower import make_tower

__all__ = [
    "LevelViolation", "MixedPathAlgebra", "MpaElement", "make_element", "mul",
    "augmentation", "oracle_membership", "graded_dimension",
]


class LevelViolation(ValueError):
    def __init__(self, path, coefficient_level, required_level):
        self.path = path
        self.coefficient_level = coefficient_level
        self.required_level = required_level
        super().__init__(
            f"coefficient of {path} has level {coefficient_level}, "
            f"but its end vertex admits level <= {required_level}")


class MixedPathAlgebra:
    """The data (quiver, tower, vertex levels) shared by all algebra elements.

    ``levels`` maps each vertex to a window level of ``tower``; it defaults to
    the levels induced by ``chain``.  Levels must not decrease along edges.
    """

    def __init__(self, quiver, chain=None, tower=None, levels=None):
        self.quiver = quiver
        if chain is None and levels is None:
            chain = HereditaryChain.trivial(quiver)
        self.chain = chain
        if tower is None:
            tower = make_tower({"kind": "constant", "levels": chain.r if chain else max(levels.values(), default=0)})
        elif not hasattr(tower, "field"):
            tower = make_tower(tower)
        self.tower = tower
        if levels is None:
            if chain.r != tower.r:
                raise QuiverError(f"chain length r={chain.r} does not match tower r={tower.r}")
            levels = chain.levels()
        self.levels = dict(levels)
        for v in quiver.vertices:
            if not 0 <= self.levels[v] <= tower.r:
                raise QuiverError(f"level of vertex {v!r} outside the tower window")
        for e in quiver.edges:
            if self.levels[e.src] > self.levels[e.dst]:
                raise QuiverError(f"levels decrease along edge {e.id!r}")

    # derived algebras

    def restrict(self, H, tower=None, shift=0, chain=None):
        """Algebra on E_H; levels are moved down by ``shift`` (for windowed towers)."""
        q = self.quiver.restriction_graph(H)
        levels = {v: self.levels[v] - shift for v in q.vertices}
        return MixedPathAlgebra(q, chain=chain, tower=tower or self.tower, levels=levels)

    def quotient(self, H, tower=None, chain=None):
        q = self.quiver.quotient_graph(H)
        levels = {v: self.levels[v] for v in q.vertices}
        return MixedPathAlgebra(q, chain=chain, tower=tower or self.tower, levels=levels)

    # elements

    def path_level(self, path):
        return self.levels[path.dst]

    def admits(self, path, coef):
        return self.tower.contains(coef, self.levels[path.dst])

    def check_term(self, path, coef):
        if not self.quiver.contains_path(path):
            raise QuiverError(f"path {path} is not a path of this quiver")
        if not self.admits(path, coef):
            raise LevelViolation(path, self.tower.level(coef), self.levels[path.dst])

    def coefficient(self, c):
        if isinstance(c, int):
            return self.tower.from_int(c)
        if isinstance(c, str):
            return self.tower.parse(c)
        return c

    def element(self, terms=()):
        return make_element(self, terms)

    def zero(self):
        return MpaElement(self, {})

    def one(self):
        one = self.tower.one()
        return MpaElement(self, {Path(v, v): one for v in self.quiver.vertices})

    def vertex(self, v, coef=1):
        return self.element([(self.quiver.trivial(v), coef)])

    def edge(self, eid, coef=1):
        return self.element([(self.quiver.edge_path(eid), coef)])

    def path(self, spec, coef=1):
        return self.element([(self.quiver.path(spec), coef)])

    def from_vertex_values(self, values):
        return self.element([(self.quiver.trivial(v), c) for v, c in values.items()])

    def term_key(self, path):
        return self.quiver.path_key(path)

    def parse(self, text):
        """Parse ``c1 * e1.e2 + c2 * @v`` text."""
        text = text.strip()
        if text == "0":
            return self.zero()
        terms = []
        for sign, chunk in split_terms(text):
            coef_text, word = split_coefficient(chunk)
            if word.startswith("-") and coef_text is None:
                sign, word = -sign, word[1:].strip()
            coef = self.tower.one() if coef_text is None else self.tower.parse(coef_text)
            if sign < 0:
                coef = -coef
            try:
                path = self.quiver.path(word)
            except QuiverError as exc:
                raise ParseError(str(exc)) from None
            terms.append((path, coef))
        return self.element(terms)

    def __repr__(self):
        return f"MixedPathAlgebra({self.quiver!r}, levels={self.levels})"


def _accumulate(terms, path, coef):
    prev = terms.get(path)
    if prev is None:
        if not coef.is_zero():
            terms[path] = coef
    else:
        total = prev + coef
        if total.is_zero():
            del terms[path]
        else:
            terms[path] = total


def format_terms(items, tower):
    if not items:
        return "0"
    return " + ".join(f"{wrap(tower.format(c))} * {word}" for word, c in items)


class MpaElement:
    """A finite combination of paths with level-constrained coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def _same(self, other):
        if not isinstance(other, MpaElement):
            return False
        if other.algebra is not self.algebra and other.algebra.quiver != self.algebra.quiver:
            raise ValueError("elements of different algebras")
        return True

    def items(self):
        key = self.algebra.term_key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]))

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, path):
        return self.terms.get(path, self.algebra.tower.zero())

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        terms = dict(self.terms)
        for p, c in other.terms.items():
            _accumulate(terms, p, c)
        return MpaElement(self.algebra, terms)

    def __neg__(self):
        return MpaElement(self.algebra, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MpaElement):
            self._same(other)
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        """Multiply by a scalar; raises LevelViolation if the result leaves the algebra."""
        c = self.algebra.coefficient(c)
        return make_element(self.algebra, [(p, c * x) for p, x in self.terms.items()])

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, MpaElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def max_length(self):
        return max((p.length for p in self.terms), default=0)

    def augmentation(self):
        return augmentation(self)

    def to_text(self):
        return format_terms([(str(p), c) for p, c in self.items()], self.algebra.tower)

    __str__ = to_text

    def __repr__(self):
        return f"MpaElement({self.to_text()!r})"


def make_element(algebra, terms):
    """Canonical element from (path, coefficient) pairs; enforces the level constraint."""
    acc = {}
    for path, coef in terms:
        if isinstance(path, str):
            path = algebra.quiver.path(path)
        _accumulate(acc, path, algebra.coefficient(coef))
    for path, coef in acc.items():
        algebra.check_term(path, coef)
    return MpaElement(algebra, acc)


def mul(a, b):
    """Bilinear extension of path concatenation."""
    out = {}
    concat = a.algebra.quiver.concat
    for p, c in a.terms.items():
        for q, d in b.terms.items():
            pq = concat(p, q)
            if pq is not None:
                _accumulate(out, pq, c * d)
    return MpaElement(a.algebra, out)


def augmentation(a):
    """Coefficients of the trivial paths, one per vertex."""
    zero = a.algebra.tower.zero()
    out = {v: zero for v in a.algebra.quiver.vertices}
    for p, c in a.terms.items():
        if p.is_trivial:
            out[p.src] = c
    return out


def graded_dimension(algebra, n):
    """Dimension over K_0 of the span of length-n terms."""
    tower = algebra.tower
    if tower.dim_over_base(tower.r) is None:
        raise ValueError("graded dimension is infinite for rational-function towers")
    return sum(tower.dim_over_base(algebra.levels[p.dst]) for p in algebra.quiver.paths_of_length(n))


# recursion oracle

def _span_insert(basis, vec, p):
    if not any(vec):
        return False
    if kernels.rank_mod_p(basis + [vec], p) > len(basis):
        basis.append(vec)
        return True
    return False


def _span_contains(basis, vec, p):
    if not any(vec):
        return True
    return kernels.rank_mod_p(basis + [vec], p) == len(basis)


def recursive_spans(algebra, max_length):
    """Per-path F_p-subspaces of K_r spanned by the recursively defined algebra.

    P_0 = P_{K_r}(E_{H_0}); P_i = P_{K_{r-i}}(E_{H_i}) + P_{K_{r-i}}(E_{H_i}) p_{H_{i-1}} P_{i-1}.
    Only terms of length <= ``max_length`` are generated; since every
    generator is a single path times a scalar, the span splits path by path.
    """
    chain, tower, q = algebra.chain, algebra.tower, algebra.quiver
    if chain is None:
        raise ValueError("the recursion oracle needs an explicit chain")
    if not tower.is_finite:
        raise ValueError("the recursion oracle needs a finite-field tower")
    p = tower.characteristic
    field = tower.field
    r = chain.r
    spans = {}
    for i, H in enumerate(chain.sets):
        basis_i = [b.value for b in tower.basis_of_level(r - i)]
        local = [path for path in q.paths_up_to(max_length) if path.src in H]
        new = {}
        for path in local:
            space = new.setdefault(path, [])
            for b in basis_i:
                _span_insert(space, field.coords(b), p)
        if i > 0:
            prev_set = chain.sets[i - 1]
            for beta in local:
                if beta.dst not in prev_set:
                    continue
                for gamma, space_prev in spans.items():
                    path = q.concat(beta, gamma)
                    if path is None or path.length > max_length:
                        continue
                    space = new.setdefault(path, [])
                    for b in basis_i:
                        for vec in space_prev:
                            prod = field.mul(b, kernels.pack(vec, p))
                            _span_insert(space, field.coords(prod), p)
        spans = {path: s for path, s in new.items() if s}
    return spans


def oracle_membership(algebra, terms):
    """Does the combination ``terms`` (unconstrained coefficients) lie in the recursive span?"""
    terms = list(terms.terms.items()) if isinstance(terms, MpaElement) else list(terms)
    resolved = []
    for path, coef in terms:
        if isinstance(path, str):
            path = algebra.quiver.path(path)
        resolved.append((path, algebra.coefficient(coef)))
    max_length = max((path.length for path, _ in resolved), default=0)
    cache = algebra.__dict__.setdefault("_oracle_spans", {})
    if max_length not in cache:
        cache[max_length] = recursive_spans(algebra, max_length)
    spans = cache[max_length]
    p = algebra.tower.characteristic
    acc = {}
    for path, coef in resolved:
        acc[path] = acc.get(path, algebra.tower.zero()) + coef
    for path, coef in acc.items():
        if coef.is_zero():
            continue
        if not _span_contains(spans.get(path, []), algebra.tower.field.coords(coef.value), p):
            return False
    return True
