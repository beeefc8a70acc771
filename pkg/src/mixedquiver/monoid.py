"""The graph monoid M(E): vertex generators with v = sum of r(e) over edges e leaving v."""

from collections import deque
from itertools import combinations

from .quiver import QuiverError

__all__ = [
    "CyclicQuiver", "Inconclusive", "MonoidElement", "GraphMonoid", "OrderIdealLattice",
]


class CyclicQuiver(QuiverError):
    pass


class Inconclusive(RuntimeError):
    """A bounded search could not settle the question."""


class MonoidElement:
    __slots__ = ("monoid", "vec")

    def __init__(self, monoid, vec):
        self.monoid = monoid
        self.vec = tuple(vec)
        if len(self.vec) != len(monoid.vertices) or any(c < 0 for c in self.vec):
            raise ValueError("monoid elements are nonnegative vectors indexed by the vertices")

    def __add__(self, other):
        return MonoidElement(self.monoid, [a + b for a, b in zip(self.vec, other.vec)])

    def __rmul__(self, n):
        return MonoidElement(self.monoid, [n * a for a in self.vec])

    def __eq__(self, other):
        return isinstance(other, MonoidElement) and self.vec == other.vec

    def __hash__(self):
        return hash(self.vec)

    def support(self):
        return {v for v, c in zip(self.monoid.vertices, self.vec) if c}

    def to_json(self):
        return {v: c for v, c in zip(self.monoid.vertices, self.vec) if c}

    def __str__(self):
        parts = [f"@{v}" if c == 1 else f"{c}*@{v}" for v, c in zip(self.monoid.vertices, self.vec) if c]
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"MonoidElement({self})"


class GraphMonoid:
    def __init__(self, quiver):
        self.quiver = quiver
        self.vertices = quiver.vertices
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self._relations = None

    def element(self, counts=None):
        vec = [0] * len(self.vertices)
        for v, c in (counts or {}).items():
            if v not in self.index:
                raise QuiverError(f"unknown vertex {v!r}")
            vec[self.index[v]] += int(c)
        return MonoidElement(self, vec)

    def generator(self, v):
        return self.element({v: 1})

    def parse(self, text):
        """``2*@1 + @2`` (``0`` for the identity)."""
        text = text.strip()
        counts = {}
        if text != "0":
            for part in text.split("+"):
                part = part.strip()
                n, _, v = part.rpartition("*")
                if not v.startswith("@"):
                    raise ValueError(f"monoid term {part!r} must name a vertex as @v")
                counts[v[1:]] = counts.get(v[1:], 0) + (int(n) if n else 1)
        return self.element(counts)

    def relations(self):
        """(indicator(v), sum of indicator(r(e))) for every emitter v, edges counted with multiplicity."""
        if self._relations is None:
            out = []
            d = len(self.vertices)
            for v in self.vertices:
                edges = self.quiver.out_edges[v]
                if not edges:
                    continue
                lhs = [0] * d
                lhs[self.index[v]] = 1
                rhs = [0] * d
                for e in edges:
                    rhs[self.index[e.dst]] += 1
                out.append((tuple(lhs), tuple(rhs)))
            self._relations = out
        return [(MonoidElement(self, l), MonoidElement(self, r)) for l, r in self._relations]

    def normal_form_acyclic(self, x, trace=None):
        """Push every emitter's mass forward along a topological order.

        ``trace``, if a list, receives (vertex, multiplicity) for each rewrite.
        """
        if not self.quiver.is_acyclic():
            raise CyclicQuiver("normal forms need an acyclic quiver")
        vec = list(x.vec)
        for v in self.quiver.topological_order():
            i = self.index[v]
            n = vec[i]
            edges = self.quiver.out_edges[v]
            if not n or not edges:
                continue
            vec[i] = 0
            for e in edges:
                vec[self.index[e.dst]] += n
            if trace is not None:
                trace.append((v, n))
        return MonoidElement(self, vec)

    def replay(self, x, trace):
        """Apply a rewrite trace step by step, checking each step is a relation instance."""
        vec = list(x.vec)
        for v, n in trace:
            i = self.index[v]
            if vec[i] < n or not self.quiver.out_edges[v]:
                raise ValueError(f"trace step ({v}, {n}) does not apply")
            vec[i] -= n
            for e in self.quiver.out_edges[v]:
                vec[self.index[e.dst]] += n
        return MonoidElement(self, vec)

    def default_bound(self):
        return 12 * len(self.vertices)

    def _neighbors(self, u):
        self.relations()
        for lhs, rhs in self._relations:
            for a, b in ((lhs, rhs), (rhs, lhs)):
                if all(x >= y for x, y in zip(u, a)):
                    yield tuple(x - y + z for x, y, z in zip(u, a, b))

    def equals_bounded(self, x, y, bound=None):
        """'yes', 'no' or 'unknown' for x ~ y, exploring vectors of coordinate sum <= bound."""
        if bound is None:
            bound = self.default_bound()
        if x.vec == y.vec:
            return "yes"
        sides = []
        for start in (x.vec, y.vec):
            sides.append({"seen": {start}, "frontier": deque([start]), "pruned": False})
        for s in sides:
            if sum(next(iter(s["seen"]))) > bound:
                s["pruned"] = True
        while True:
            for k, s in enumerate(sides):
                other = sides[1 - k]
                if not s["frontier"]:
                    continue
                u = s["frontier"].popleft()
                for w in self._neighbors(u):
                    if sum(w) > bound:
                        s["pruned"] = True
                        continue
                    if w in other["seen"]:
                        return "yes"
                    if w not in s["seen"]:
                        s["seen"].add(w)
                        s["frontier"].append(w)
            for k, s in enumerate(sides):
                # a completed class without pruning is the whole congruence class
                if not s["frontier"] and not s["pruned"]:
                    return "no"
            if not sides[0]["frontier"] and not sides[1]["frontier"]:
                return "unknown"

    def class_support(self, start, bound):
        """Vertices in the support of some vector congruent to ``start`` (bounded search)."""
        seen = {start}
        queue = deque([start])
        support = set()
        while queue:
            u = queue.popleft()
            support.update(self.vertices[i] for i, c in enumerate(u) if c)
            for w in self._neighbors(u):
                if sum(w) <= bound and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return support

    def generated_ideal(self, S, bound=None):
        """Generators of the order ideal generated by {a_v : v in S}.

        Vertices found in classes of m * sum(S) lie in the ideal; the search is
        repeated until no new vertices appear.  The result is certified when
        the vertex set V is closed under both relation directions (then the
        vectors supported on V form an order ideal); otherwise Inconclusive.
        """
        q = self.quiver
        if bound is None:
            bound = self.default_bound()
        m = max([1] + [len(q.out_edges[v]) for v in self.vertices])
        V = set(S)
        while True:
            start = tuple(m if v in V else 0 for v in self.vertices)
            if sum(start) > bound:
                raise Inconclusive(f"bound {bound} too small for the generating vector")
            found = self.class_support(start, bound) | V
            if found == V:
                break
            V = found
        for v in self.vertices:
            edges = q.out_edges[v]
            if not edges:
                continue
            ranges_in = all(e.dst in V for e in edges)
            if (v in V) != ranges_in:
                raise Inconclusive(f"ideal generated by {sorted(S)} not certified within bound {bound}")
        return frozenset(V)

    def order_ideal_lattice(self, bound=None, lattice=None):
        return OrderIdealLattice(self, bound, lattice)


class OrderIdealLattice:
    """All order ideals I(S), S a set of generators, compared with the hereditary saturated lattice."""

    def __init__(self, monoid, bound=None, lattice=None):
        q = monoid.quiver
        self.monoid = monoid
        vs = monoid.vertices
        if len(vs) <= 12:
            subsets = [c for k in range(len(vs) + 1) for c in combinations(vs, k)]
        else:
            subsets = [()] + [(v,) for v in vs]
        ideals = {}
        for S in subsets:
            ideals.setdefault(monoid.generated_ideal(S, bound), S)
        if len(vs) > 12:
            # close under joins of generated ideals
            grown = True
            while grown:
                grown = False
                for a, b in combinations(list(ideals), 2):
                    c = monoid.generated_ideal(a | b, bound)
                    if c not in ideals:
                        ideals[c] = tuple(sorted(c))
                        grown = True
        self.ideals = sorted(ideals, key=lambda s: (len(s), sorted(q.vertex_index[v] for v in s)))
        if lattice is None:
            lattice = q.enumerate_lattice()
        self.lattice = lattice
        self.image = {H: monoid.generated_ideal(H, bound) for H in lattice.sets}

    def __len__(self):
        return len(self.ideals)

    def is_isomorphic(self):
        """H -> I(H) is a bijection onto the ideals and H <= H' iff I(H) <= I(H')."""
        images = list(self.image.values())
        if len(set(images)) != len(images) or set(images) != set(self.ideals):
            return False
        sets = self.lattice.sets
        return all((a <= b) == (self.image[a] <= self.image[b]) for a in sets for b in sets)

    def to_json(self):
        q = self.monoid.quiver
        return {
            "ideals": [q.sorted_vertices(I) for I in self.ideals],
            "lattice_size": len(self.lattice),
            "isomorphic": self.is_isomorphic(),
        }
