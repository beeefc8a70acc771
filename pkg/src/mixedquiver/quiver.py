"""Finite quivers, paths, hereditary saturated vertex sets and chains of them."""

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations

__all__ = [
    "QuiverError", "Edge", "Path", "Quiver", "Lattice", "HereditaryChain",
    "load_quiver_document",
]

_RESERVED = set(" \t\n.~@*+()/")


class QuiverError(ValueError):
    """Malformed quiver data or an argument violating a structural precondition."""


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


class Path:
    """A path: either the trivial path at a vertex or a composable edge sequence.

    Equality only looks at vertex/edge ids, so a path of a subquiver compares
    equal to the same path of the ambient quiver.
    """

    __slots__ = ("src", "dst", "edges", "_hash")

    def __init__(self, src, dst, edges=()):
        self.src = src
        self.dst = dst
        self.edges = tuple(edges)
        self._hash = hash((self.src, self.dst, self.edges))

    @property
    def length(self):
        return len(self.edges)

    @property
    def is_trivial(self):
        return not self.edges

    def __eq__(self, other):
        return (isinstance(other, Path) and self.edges == other.edges
                and self.src == other.src and self.dst == other.dst)

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.edges)

    def __str__(self):
        return f"@{self.src}" if not self.edges else ".".join(self.edges)

    def __repr__(self):
        return f"Path({self})"


class Quiver:
    def __init__(self, vertices, edges):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex id")
        self.edges = tuple(e if isinstance(e, Edge) else Edge(str(e[0]), str(e[1]), str(e[2]))
                           for e in edges)
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise QuiverError("duplicate edge id")
        for name in self.vertices + tuple(ids):
            if not name or _RESERVED & set(name):
                raise QuiverError(f"id {name!r} is empty or uses a reserved character")
        vset = set(self.vertices)
        for e in self.edges:
            if e.src not in vset or e.dst not in vset:
                raise QuiverError(f"edge {e.id!r} has an endpoint that is not a declared vertex")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.edge_index = {e.id: i for i, e in enumerate(self.edges)}
        self.edge_map = {e.id: e for e in self.edges}
        self.out_edges = {v: tuple(e for e in self.edges if e.src == v) for v in self.vertices}
        self.in_edges = {v: tuple(e for e in self.edges if e.dst == v) for v in self.vertices}
        self._masks = None

    # construction / io

    @classmethod
    def from_json(cls, data):
        try:
            vertices = data["vertices"]
            edges = [Edge(str(e["id"]), str(e["src"]), str(e["dst"])) for e in data.get("edges", [])]
        except (KeyError, TypeError) as exc:
            raise QuiverError(f"malformed quiver document: {exc}") from exc
        return cls(vertices, edges)

    def to_json(self):
        return {"vertices": list(self.vertices),
                "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in self.edges]}

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.edges)} edges)"

    # paths

    def trivial(self, v):
        if v not in self.vertex_index:
            raise QuiverError(f"unknown vertex {v!r}")
        return Path(v, v)

    def path(self, edge_ids):
        """Path from an edge id sequence (a list, or 'e1.e2' text)."""
        if isinstance(edge_ids, str):
            if edge_ids.startswith("@"):
                return self.trivial(edge_ids[1:])
            edge_ids = edge_ids.split(".")
        edge_ids = tuple(edge_ids)
        if not edge_ids:
            raise QuiverError("empty edge sequence; use trivial(v)")
        try:
            es = [self.edge_map[x] for x in edge_ids]
        except KeyError as exc:
            raise QuiverError(f"unknown edge {exc.args[0]!r}") from None
        for a, b in zip(es, es[1:]):
            if a.dst != b.src:
                raise QuiverError(f"edges {a.id!r} and {b.id!r} are not composable")
        return Path(es[0].src, es[-1].dst, edge_ids)

    def edge_path(self, eid):
        e = self.edge_map[eid]
        return Path(e.src, e.dst, (eid,))

    def contains_path(self, path):
        if path.is_trivial:
            return path.src in self.vertex_index
        return all(x in self.edge_map for x in path.edges)

    @staticmethod
    def concat(a, b):
        """Concatenation ``a b`` or None when ``r(a) != s(b)``."""
        if a.dst != b.src:
            return None
        if not a.edges:
            return b
        if not b.edges:
            return a
        return Path(a.src, b.dst, a.edges + b.edges)

    def path_key(self, path):
        """Canonical order: length, then edge sequence in declaration order."""
        if not path.edges:
            return (0, (self.vertex_index[path.src],))
        return (len(path.edges), tuple(self.edge_index[x] for x in path.edges))

    def paths_of_length(self, n, start=None):
        if n == 0:
            vs = self.vertices if start is None else (start,)
            return [Path(v, v) for v in vs]
        layer = [Path(e.src, e.dst, (e.id,)) for e in self.edges if start is None or e.src == start]
        for _ in range(n - 1):
            layer = [Path(p.src, e.dst, p.edges + (e.id,)) for p in layer for e in self.out_edges[p.dst]]
        return layer

    def paths_up_to(self, n):
        out = []
        for k in range(n + 1):
            out.extend(self.paths_of_length(k))
        return out

    def path_vertices(self, path):
        if not path.edges:
            return [path.src]
        return [path.src] + [self.edge_map[x].dst for x in path.edges]

    # reachability

    def reachable(self, v):
        """All w with v >= w (v itself included)."""
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for e in self.out_edges[u]:
                if e.dst not in seen:
                    seen.add(e.dst)
                    queue.append(e.dst)
        return seen

    def is_acyclic(self):
        indeg = {v: 0 for v in self.vertices}
        for e in self.edges:
            indeg[e.dst] += 1
        queue = deque(v for v in self.vertices if indeg[v] == 0)
        count = 0
        while queue:
            u = queue.popleft()
            count += 1
            for e in self.out_edges[u]:
                indeg[e.dst] -= 1
                if indeg[e.dst] == 0:
                    queue.append(e.dst)
        return count == len(self.vertices)

    def topological_order(self):
        if not self.is_acyclic():
            raise QuiverError("quiver has a cycle")
        order, seen = [], set()

        def visit(v):
            if v in seen:
                return
            seen.add(v)
            for e in self.out_edges[v]:
                visit(e.dst)
            order.append(v)

        for v in self.vertices:
            visit(v)
        return order[::-1]

    def is_emitter(self, v):
        return bool(self.out_edges[v])

    def sinks(self):
        return [v for v in self.vertices if not self.out_edges[v]]

    # vertex sets

    def vertex_set(self, vs):
        vs = frozenset(str(v) for v in vs)
        unknown = vs - set(self.vertices)
        if unknown:
            raise QuiverError(f"unknown vertices {sorted(unknown)}")
        return vs

    def sorted_vertices(self, vs):
        return sorted(vs, key=self.vertex_index.__getitem__)

    def is_hereditary(self, H):
        H = self.vertex_set(H)
        return all(e.dst in H for e in self.edges if e.src in H)

    def is_saturated(self, H):
        H = self.vertex_set(H)
        for v in self.vertices:
            if v not in H and self.out_edges[v] and all(e.dst in H for e in self.out_edges[v]):
                return False
        return True

    def is_hereditary_saturated(self, H):
        return self.is_hereditary(H) and self.is_saturated(H)

    def hereditary_closure(self, S):
        out = set()
        for v in self.vertex_set(S):
            out |= self.reachable(v)
        return frozenset(out)

    def hereditary_saturated_closure(self, S):
        H = set(self.vertex_set(S))
        while True:
            size = len(H)
            H = set(self.hereditary_closure(H))
            changed = True
            while changed:
                changed = False
                for v in self.vertices:
                    if v not in H and self.out_edges[v] and all(e.dst in H for e in self.out_edges[v]):
                        H.add(v)
                        changed = True
            if len(H) == size and self.is_hereditary(H):
                return frozenset(H)

    def enumerate_lattice(self):
        d = len(self.vertices)
        if d <= 20:
            sets = self._lattice_exhaustive()
        else:
            sets = self._lattice_generated()
        return Lattice(self, sets)

    def _lattice_exhaustive(self):
        idx = self.vertex_index
        succ = [0] * len(self.vertices)
        for e in self.edges:
            succ[idx[e.src]] |= 1 << idx[e.dst]
        emitters = [i for i, m in enumerate(succ) if m]
        found = []
        for mask in range(1 << len(self.vertices)):
            ok = True
            for i in emitters:
                inside = mask >> i & 1
                covered = succ[i] & ~mask == 0
                if inside and not covered or covered and not inside:
                    ok = False
                    break
            if ok:
                found.append(frozenset(v for v, i in idx.items() if mask >> i & 1))
        return found

    def _lattice_generated(self):
        seeds = {self.hereditary_saturated_closure(())}
        seeds |= {self.hereditary_saturated_closure((v,)) for v in self.vertices}
        sets = set(seeds)
        frontier = set(seeds)
        while frontier:
            new = set()
            for a in frontier:
                for b in sets | frontier:
                    for c in (a & b, self.hereditary_saturated_closure(a | b)):
                        if c not in sets:
                            new.add(c)
            sets |= new
            frontier = new
        return list(sets)

    def quotient_graph(self, H):
        """E/H: vertices outside H, edges whose range is outside H."""
        H = self.vertex_set(H)
        if not self.is_hereditary_saturated(H):
            raise QuiverError("quotient needs a hereditary saturated set")
        return Quiver([v for v in self.vertices if v not in H], [e for e in self.edges if e.dst not in H])

    def restriction_graph(self, H):
        """E_H: vertices in H, edges whose source is in H."""
        H = self.vertex_set(H)
        if not self.is_hereditary(H):
            raise QuiverError("restriction needs a hereditary set")
        return Quiver([v for v in self.vertices if v in H], [e for e in self.edges if e.src in H])

    def crossing_edges(self, H):
        H = self.vertex_set(H)
        if not self.is_hereditary(H):
            raise QuiverError("crossing edges need a hereditary set")
        return [e.id for e in self.edges if e.src not in H and e.dst in H]


class Lattice:
    """The hereditary saturated subsets of a quiver with meet/join tables."""

    def __init__(self, quiver, sets):
        self.quiver = quiver
        order = quiver.vertex_index
        self.sets = sorted(set(sets), key=lambda s: (len(s), sorted(order[v] for v in s)))
        self.index = {s: i for i, s in enumerate(self.sets)}
        n = len(self.sets)
        self.meet_table = {}
        self.join_table = {}
        for i, j in combinations(range(n), 2):
            a, b = self.sets[i], self.sets[j]
            m = self.index[a & b]
            jn = self.index[quiver.hereditary_saturated_closure(a | b)]
            self.meet_table[i, j] = self.meet_table[j, i] = m
            self.join_table[i, j] = self.join_table[j, i] = jn
        for i in range(n):
            self.meet_table[i, i] = self.join_table[i, i] = i

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, s):
        return frozenset(s) in self.index

    def meet(self, a, b):
        return self.sets[self.meet_table[self.index[a], self.index[b]]]

    def join(self, a, b):
        return self.sets[self.join_table[self.index[a], self.index[b]]]

    def covers(self):
        """Hasse diagram edges (i, j) with sets[i] covered by sets[j]."""
        out = []
        for i, a in enumerate(self.sets):
            for j, b in enumerate(self.sets):
                if a < b and not any(a < c < b for c in self.sets):
                    out.append((i, j))
        return out

    def to_json(self):
        q = self.quiver
        return {
            "sets": [q.sorted_vertices(s) for s in self.sets],
            "covers": [list(c) for c in self.covers()],
        }


class HereditaryChain:
    """H_0 < H_1 < ... < H_r = E^0, all hereditary and saturated."""

    def __init__(self, quiver, sets):
        self.quiver = quiver
        self.sets = tuple(quiver.vertex_set(s) for s in sets)
        if not self.sets:
            raise QuiverError("a chain needs at least one set")
        for a, b in zip(self.sets, self.sets[1:]):
            if not a < b:
                raise QuiverError("chain is not strictly increasing")
        if self.sets[-1] != frozenset(quiver.vertices):
            raise QuiverError("last set of the chain must be all vertices")
        for s in self.sets:
            if not quiver.is_hereditary_saturated(s):
                raise QuiverError(f"chain member {quiver.sorted_vertices(s)} is not hereditary saturated")

    @classmethod
    def trivial(cls, quiver):
        return cls(quiver, [quiver.vertices])

    @property
    def r(self):
        return len(self.sets) - 1

    def depth(self, v):
        """min{i : v in H_i}."""
        for i, s in enumerate(self.sets):
            if v in s:
                return i
        raise QuiverError(f"unknown vertex {v!r}")

    def levels(self):
        """Coefficient level r - depth(v) of every vertex."""
        return {v: self.r - self.depth(v) for v in self.quiver.vertices}

    def to_json(self):
        return [self.quiver.sorted_vertices(s) for s in self.sets]

    def __repr__(self):
        return f"HereditaryChain({self.to_json()})"


def load_quiver_document(source):
    """Parse a quiver document (path, JSON text or mapping).

    Returns ``(quiver, chain_or_None, tower_json_or_None, raw)``.
    """
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if not text.lstrip().startswith("{"):
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuiverError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise QuiverError("quiver document must be a JSON object")
    quiver = Quiver.from_json(data)
    chain = HereditaryChain(quiver, data["chain"]) if "chain" in data else None
    return quiver, chain, data.get("tower"), data
