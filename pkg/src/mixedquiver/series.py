"""Truncated path series, linear representations lambda (I - B)^-1 rho, and transductions."""

import json

from . import kernels
from .mpa import MixedPathAlgebra, MpaElement, format_terms, make_element
from .quiver import Path

__all__ = [
    "EpsilonNonzero", "InternalInvariantViolation", "TruncatedSeries", "LinearRep",
    "expand", "geometric", "split_B", "check_binverse_identity", "check_claim1",
    "corner_rep", "right_transduction", "left_transduction", "tau",
    "check_derivation_law", "mixed_closure_probe", "check_crossing_independence",
]


class EpsilonNonzero(ValueError):
    """B has an entry with a nonzero trivial-path part, so I - B is not expanded."""


class InternalInvariantViolation(AssertionError):
    """An identity that holds for every valid input failed."""


# sparse polynomial helpers: dict Path -> TowerElement

def _add_into(acc, poly, sign=1):
    for p, c in poly.items():
        if sign < 0:
            c = -c
        prev = acc.get(p)
        total = c if prev is None else prev + c
        if total.is_zero():
            acc.pop(p, None)
        else:
            acc[p] = total


def _pmul(a, b, order=None):
    out = {}
    for p, c in a.items():
        for q, d in b.items():
            if p.dst != q.src:
                continue
            if order is not None and p.length + q.length > order:
                continue
            pq = q if not p.edges else p if not q.edges else Path(p.src, q.dst, p.edges + q.edges)
            _add_into(out, {pq: c * d})
    return out


def _truncate(poly, order):
    return {p: c for p, c in poly.items() if p.length <= order}


def _compress(poly, H):
    """p_H poly p_H."""
    return {p: c for p, c in poly.items() if p.src in H and p.dst in H}


def _mat_mul(A, B, order=None):
    n, m, k = len(A), len(B), len(B[0]) if B else 0
    out = [[{} for _ in range(k)] for _ in range(n)]
    for i in range(n):
        for j in range(k):
            acc = out[i][j]
            for t in range(m):
                if A[i][t] and B[t][j]:
                    _add_into(acc, _pmul(A[i][t], B[t][j], order))
    return out


def _mat_add(A, B):
    out = []
    for ra, rb in zip(A, B):
        row = []
        for x, y in zip(ra, rb):
            acc = dict(x)
            _add_into(acc, y)
            row.append(acc)
        out.append(row)
    return out


def _identity(vertices, n, tower):
    one = tower.one()
    unit = {Path(v, v): one for v in vertices}
    return [[dict(unit) if i == j else {} for j in range(n)] for i in range(n)]


def _is_zero_matrix(M):
    return all(not x for row in M for x in row)


class TruncatedSeries:
    """Coefficients of all paths of length <= order; unconstrained unless checked."""

    __slots__ = ("algebra", "order", "terms")

    def __init__(self, algebra, order, terms=None):
        self.algebra = algebra
        self.order = order
        self.terms = _truncate(terms or {}, order)

    @classmethod
    def from_element(cls, x, order):
        return cls(x.algebra, order, dict(x.terms))

    @classmethod
    def from_terms(cls, algebra, order, pairs):
        acc = {}
        for path, c in pairs:
            if isinstance(path, str):
                path = algebra.quiver.path(path)
            c = algebra.coefficient(c)
            if not c.is_zero():
                _add_into(acc, {path: c})
        return cls(algebra, order, acc)

    def coefficient(self, path):
        return self.terms.get(path, self.algebra.tower.zero())

    def truncate(self, order):
        return TruncatedSeries(self.algebra, min(order, self.order), self.terms)

    def __add__(self, other):
        acc = dict(self.terms)
        _add_into(acc, other.terms)
        return TruncatedSeries(self.algebra, min(self.order, other.order), acc)

    def __sub__(self, other):
        acc = dict(self.terms)
        _add_into(acc, other.terms, -1)
        return TruncatedSeries(self.algebra, min(self.order, other.order), acc)

    def __neg__(self):
        return TruncatedSeries(self.algebra, self.order, {p: -c for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            order = min(self.order, other.order)
            return TruncatedSeries(self.algebra, order, _pmul(self.terms, other.terms, order))
        c = self.algebra.coefficient(other)
        return TruncatedSeries(self.algebra, self.order,
                               {p: c * x for p, x in self.terms.items() if not (c * x).is_zero()})

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def agrees(self, other, order):
        return _truncate(self.terms, order) == _truncate(other.terms, order)

    def is_zero(self):
        return not self.terms

    def violations(self):
        """Paths whose coefficient is outside the field allowed at their end vertex."""
        alg = self.algebra
        return [p for p, c in self.terms.items() if not alg.admits(p, c)]

    def is_mixed_valid(self):
        return not self.violations()

    def to_text(self):
        key = self.algebra.term_key
        items = sorted(self.terms.items(), key=lambda kv: key(kv[0]))
        return format_terms([(str(p), c) for p, c in items], self.algebra.tower)

    __str__ = to_text

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, {self.to_text()!r})"


class LinearRep:
    """(lambda, B, rho): a 1 x n row, an n x n matrix and an n x 1 column of path-algebra elements."""

    def __init__(self, algebra, lam, B, rho):
        self.algebra = algebra
        self.lam = [self._entry(x) for x in lam]
        self.B = [[self._entry(x) for x in row] for row in B]
        self.rho = [self._entry(x) for x in rho]
        n = len(self.lam)
        if len(self.rho) != n or len(self.B) != n or any(len(row) != n for row in self.B):
            raise ValueError("lambda, B, rho have inconsistent sizes")
        self.size = n
        # end-vertex masks, used by split_B
        self.B_ends = [[frozenset(p.dst for p in x.terms) for x in row] for row in self.B]

    def _entry(self, x):
        if isinstance(x, MpaElement):
            return x
        if isinstance(x, int):
            return self.algebra.zero() if x == 0 else self.algebra.one().scale(x)
        return self.algebra.parse(x)

    def epsilon_defect(self):
        """Positions (i, j, vertex) where B has a trivial-path term."""
        return [(i, j, p.src) for i, row in enumerate(self.B) for j, x in enumerate(row)
                for p in x.terms if p.is_trivial]

    def require_epsilon_zero(self):
        bad = self.epsilon_defect()
        if bad:
            i, j, v = bad[0]
            raise EpsilonNonzero(f"B[{i}][{j}] has a trivial-path term at vertex {v!r}")

    def matrices(self):
        lam = [[dict(x.terms) for x in self.lam]]
        B = [[dict(x.terms) for x in row] for row in self.B]
        rho = [[dict(x.terms)] for x in self.rho]
        return lam, B, rho

    @classmethod
    def from_json(cls, algebra, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(algebra, data["lambda"], data["B"], data["rho"])

    def to_json(self):
        return {
            "size": self.size,
            "lambda": [x.to_text() for x in self.lam],
            "B": [[x.to_text() for x in row] for row in self.B],
            "rho": [x.to_text() for x in self.rho],
        }


def geometric(B, order, vertices, tower):
    """sum_{k <= order} B^k truncated at ``order``; B must have no trivial-path terms."""
    n = len(B)
    power = _identity(vertices, n, tower)
    total = _identity(vertices, n, tower)
    for _ in range(order):
        power = _mat_mul(power, B, order)
        if _is_zero_matrix(power):
            break
        total = _mat_add(total, power)
    return total


def expand(rep, order):
    rep.require_epsilon_zero()
    lam, B, rho = rep.matrices()
    q = rep.algebra.quiver
    inv = geometric(B, order, q.vertices, rep.algebra.tower)
    value = _mat_mul(_mat_mul(lam, inv, order), rho, order)[0][0]
    return TruncatedSeries(rep.algebra, order, value)


def split_B(rep, H):
    """(B1, B2): terms of B ending outside / inside H.  B2 B1 = 0 is verified."""
    q = rep.algebra.quiver
    H = q.vertex_set(H)
    if not q.is_hereditary(H):
        raise ValueError("split_B needs a hereditary set")
    rep.require_epsilon_zero()
    B1, B2 = [], []
    for row, ends in zip(rep.B, rep.B_ends):
        r1, r2 = [], []
        for x, e in zip(row, ends):
            if e <= H:
                r1.append({})
                r2.append(dict(x.terms))
            elif not e & H:
                r1.append(dict(x.terms))
                r2.append({})
            else:
                r1.append({p: c for p, c in x.terms.items() if p.dst not in H})
                r2.append({p: c for p, c in x.terms.items() if p.dst in H})
        B1.append(r1)
        B2.append(r2)
    if not _is_zero_matrix(_mat_mul(B2, B1)):
        raise InternalInvariantViolation("B2 B1 != 0 for a hereditary set")
    return B1, B2


def check_binverse_identity(rep, H, order):
    """(I - B)^-1 = (I - B1)^-1 (I - B2)^-1 entrywise up to ``order``."""
    B1, B2 = split_B(rep, H)
    _, B, _ = rep.matrices()
    vs, tower = rep.algebra.quiver.vertices, rep.algebra.tower
    lhs = geometric(B, order, vs, tower)
    rhs = _mat_mul(geometric(B1, order, vs, tower), geometric(B2, order, vs, tower), order)
    return lhs == rhs


def check_claim1(rep, H, order):
    """Corner identities for p_H lambda (I - B)^-1 rho; returns {name: bool}.

    B2 = B2' + B2'' by start vertex (outside / inside H); checks B2'^2 = 0,
    B2'' B2' = 0, and
    p_H x = p_H lam p_H rho p_H + p_H lam p_H B2 p_H (I - B2'')^-1 p_H rho p_H.
    """
    q = rep.algebra.quiver
    H = q.vertex_set(H)
    _, B2 = split_B(rep, H)
    B2a = [[{p: c for p, c in x.items() if p.src not in H} for x in row] for row in B2]
    B2b = [[{p: c for p, c in x.items() if p.src in H} for x in row] for row in B2]
    lam, _, rho = rep.matrices()
    vs, tower = q.vertices, rep.algebra.tower
    x = expand(rep, order)
    lhs = {p: c for p, c in x.terms.items() if p.src in H}
    lam_h = [[_compress(e, H) for e in lam[0]]]
    rho_h = [[_compress(row[0], H)] for row in rho]
    B2_h = [[_compress(e, H) for e in row] for row in B2]
    first = _mat_mul(lam_h, rho_h, order)[0][0]
    inner = _mat_mul(_mat_mul(lam_h, B2_h, order), geometric(B2b, order, vs, tower), order)
    second = _mat_mul(inner, rho_h, order)[0][0]
    rhs = dict(first)
    _add_into(rhs, second)
    return {
        "B2'^2 = 0": _is_zero_matrix(_mat_mul(B2a, B2a)),
        "B2'' B2' = 0": _is_zero_matrix(_mat_mul(B2b, B2a)),
        "corner expansion": lhs == rhs,
    }


def corner_rep(rep, H):
    """Compression (p_H lam p_H, p_H B p_H, p_H rho p_H) over E_H."""
    q = rep.algebra.quiver
    H = q.vertex_set(H)
    target = rep.algebra.restrict(H)

    def comp(x):
        return make_element(target, [(p, c) for p, c in x.terms.items() if p.src in H and p.dst in H])

    return LinearRep(target, [comp(x) for x in rep.lam], [[comp(x) for x in row] for row in rep.B],
                     [comp(x) for x in rep.rho])


def compress_series(s, H, target=None):
    """p_H s p_H, optionally re-attached to the algebra of E_H."""
    H = s.algebra.quiver.vertex_set(H)
    return TruncatedSeries(target or s.algebra, s.order, _compress(s.terms, H))


# transductions

def right_transduction(s, e):
    """Coefficient of alpha becomes that of e.alpha."""
    q = s.algebra.quiver
    edge = q.edge_map[e]
    out = {}
    for p, c in s.terms.items():
        if p.edges and p.edges[0] == e:
            rest = p.edges[1:]
            out[Path(edge.dst, p.dst, rest)] = c
    return TruncatedSeries(s.algebra, s.order - 1, out)


def left_transduction(s, e):
    """Coefficient of alpha becomes that of alpha.e."""
    q = s.algebra.quiver
    edge = q.edge_map[e]
    out = {}
    for p, c in s.terms.items():
        if p.edges and p.edges[-1] == e:
            out[Path(p.src, edge.src, p.edges[:-1])] = c
    return TruncatedSeries(s.algebra, s.order - 1, out)


def tau(s, e):
    """Keep the p_{s(e)} coefficient and move it to p_{r(e)}; everything else goes to 0."""
    edge = s.algebra.quiver.edge_map[e]
    c = s.terms.get(Path(edge.src, edge.src))
    terms = {Path(edge.dst, edge.dst): c} if c is not None else {}
    return TruncatedSeries(s.algebra, s.order, terms)


def check_derivation_law(r, s, e):
    lhs = right_transduction(r * s, e)
    rhs = right_transduction(r, e) * s + tau(r, e) * right_transduction(s, e)
    order = min(lhs.order, rhs.order)
    return lhs.agrees(rhs, order) and lhs.order == rhs.order


def mixed_closure_probe(s, e, side):
    """Apply a transduction to a mixed-valid series and report whether the output stays valid."""
    if not s.is_mixed_valid():
        raise ValueError("probe input must satisfy the level constraint")
    if side == "right":
        out = right_transduction(s, e)
    elif side == "left":
        out = left_transduction(s, e)
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    bad = out.violations()
    return {
        "side": side,
        "edge": e,
        "input": s.to_text(),
        "output": out.to_text(),
        "valid": not bad,
        "violations": [str(p) for p in sorted(bad, key=s.algebra.term_key)],
    }


def _series_independent(series, level, tower):
    """K_level-independence of truncated series viewed as coefficient vectors (finite fields)."""
    if not series:
        return True
    paths = sorted({p for s in series for p in s.terms}, key=lambda p: (p.length, p.edges, p.src))
    basis = tower.basis_of_level(level)
    rows = []
    for s in series:
        for g in basis:
            row = []
            for p in paths:
                row.extend(tower.field.coords((g * s.coefficient(p)).value))
            rows.append(row)
    return kernels.rank_mod_p(rows, tower.characteristic) == len(rows)


def check_crossing_independence(a_list, e, b_list, base_level):
    """Coefficient equations behind the non-vanishing of sum a_i e b_i for a crossing edge e.

    ``a_list`` are series over E with paths avoiding H and coefficients in
    K_base_level, ``b_list`` series starting at r(e) over E_H.  Returns a
    report; ``ok`` means every checked implication held.
    """
    alg = a_list[0].algebra
    q, tower = alg.quiver, alg.tower
    edge = q.edge_map[e]
    # exact product of the finite supports
    order = max(s.order for s in a_list) + 1 + max(s.order for s in b_list)
    es = {q.edge_path(e): tower.one()}
    acc = {}
    for a, b in zip(a_list, b_list):
        _add_into(acc, _pmul(_pmul(a.terms, es), b.terms))
    total = TruncatedSeries(alg, order, acc)
    independent = _series_independent(b_list, base_level, tower)
    gammas = sorted({p for a in a_list for p in a.terms if p.dst == edge.src}, key=alg.term_key)
    equations_ok = True
    witnessed = False
    for gamma in gammas:
        combo = {}
        for a, b in zip(a_list, b_list):
            c = a.coefficient(gamma)
            if c.is_zero():
                continue
            _add_into(combo, {mu: c * x for mu, x in b.terms.items()})
        for mu, c in combo.items():
            path = Path(gamma.src, mu.dst, gamma.edges + (e,) + mu.edges)
            if total.coefficient(path) != c:
                equations_ok = False
        if combo:
            witnessed = True
    nonzero_hyp = bool(gammas)
    return {
        "independent": independent,
        "some_a_e_nonzero": nonzero_hyp,
        "equations_hold": equations_ok,
        "sum_nonzero": not total.is_zero(),
        "ok": equations_ok and (not (independent and nonzero_hyp) or (witnessed and not total.is_zero())),
    }
