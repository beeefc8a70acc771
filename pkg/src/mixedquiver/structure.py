"""Cutting and cornering a mixed algebra along its chain.

``cut`` at i passes to E/H_{i-1} with chain H_j minus H_{i-1} (j >= i) and
tower window K_0..K_{r-i}; vertex levels do not move.  ``corner`` at i passes
to E_{H_i} with chain H_0..H_i and tower window K_{r-i}..K_r; window-relative
levels drop by r - i while the fields stay the same.
"""

from .leavitt import LeavittAlgebra, LpaElement, reduce
from .mpa import MixedPathAlgebra, MpaElement, make_element
from .quiver import HereditaryChain, QuiverError
from .series import TruncatedSeries

__all__ = ["ChainReindex", "cut", "corner", "check_corner_path_identities"]


class ChainReindex:
    """Target data of a cut or corner of ``algebra`` (a path or Leavitt algebra) at index i."""

    def __init__(self, algebra, kind, i):
        chain = algebra.chain
        if chain is None:
            raise QuiverError("re-indexing needs an algebra built from a chain")
        r = chain.r
        q = algebra.quiver
        self.source = algebra
        self.kind = kind
        self.i = i
        if kind == "cut":
            if not 1 <= i <= r:
                raise ValueError(f"cut index must lie in 1..{r}")
            self.killed = chain.sets[i - 1]
            self.quiver = q.quotient_graph(self.killed)
            self.chain = HereditaryChain(self.quiver, [s - self.killed for s in chain.sets[i:]])
            self.tower = algebra.tower.window(0, r - i)
            shift = 0
        elif kind == "corner":
            if not 0 <= i <= r:
                raise ValueError(f"corner index must lie in 0..{r}")
            self.kept = chain.sets[i]
            self.quiver = q.restriction_graph(self.kept)
            self.chain = HereditaryChain(self.quiver, chain.sets[:i + 1])
            self.tower = algebra.tower.window(r - i, r)
            shift = r - i
        else:
            raise ValueError(f"unknown re-indexing kind {kind!r}")
        self.levels = {v: algebra.levels[v] - shift for v in self.quiver.vertices}
        if self.levels != self.chain.levels():
            raise AssertionError("re-indexed levels disagree with the target chain")
        self.paths = MixedPathAlgebra(self.quiver, self.chain, self.tower)
        self._leavitt = None

    @property
    def leavitt(self):
        if self._leavitt is None:
            self._leavitt = LeavittAlgebra.from_paths(self.paths)
        return self._leavitt

    def keeps_path(self, p):
        if self.kind == "cut":
            return p.dst not in self.killed
        return p.src in self.kept and p.dst in self.kept

    def keeps_monomial(self, mono):
        alpha, beta = mono
        if self.kind == "cut":
            return alpha.dst not in self.killed
        return alpha.src in self.kept and beta.src in self.kept

    def apply(self, x):
        if isinstance(x, MpaElement):
            return make_element(self.paths, [(p, c) for p, c in x.terms.items() if self.keeps_path(p)])
        if isinstance(x, LpaElement):
            kept = [(m, c) for m, c in x.terms.items() if self.keeps_monomial(m)]
            return reduce(self.leavitt.element(kept))
        if isinstance(x, TruncatedSeries):
            out = TruncatedSeries(self.paths, x.order,
                                  {p: c for p, c in x.terms.items() if self.keeps_path(p)})
            if not x.violations() and out.violations():
                raise AssertionError("re-indexing broke the level constraint")
            return out
        raise TypeError(f"cannot re-index {type(x).__name__}")

    def to_json(self):
        return {
            "kind": self.kind,
            "at": self.i,
            "quiver": self.quiver.to_json(),
            "chain": self.chain.to_json(),
            "tower": self.tower.spec.to_json(),
        }


def cut(x, i):
    return ChainReindex(x.algebra, "cut", i).apply(x)


def corner(x, i):
    return ChainReindex(x.algebra, "corner", i).apply(x)


def check_corner_path_identities(quiver, H, max_length=3):
    """p_H P(E) = p_H P(E) p_H = P(E_H) on the spanning set of paths of length <= max_length."""
    H = quiver.vertex_set(H)
    if not quiver.is_hereditary(H):
        raise QuiverError("corner identities need a hereditary set")
    paths = quiver.paths_up_to(max_length)
    left = {p for p in paths if p.src in H}
    both = {p for p in paths if p.src in H and p.dst in H}
    sub = set(quiver.restriction_graph(H).paths_up_to(max_length))
    return left == both == sub
