"""Seeded random elements for property checks; every function takes a ``random.Random``."""

from fractions import Fraction

from .quiver import Path
from .series import LinearRep, TruncatedSeries


def random_coefficient(tower, level, rng, allow_zero=True):
    """A random element of K_level (window-relative)."""
    field = tower.field
    while True:
        if tower.is_finite:
            c = tower.zero()
            for b in tower.basis_of_level(level):
                c = c + b * rng.randrange(tower.characteristic)
        else:
            nvars = min(tower.lo + level, getattr(field, "nvars", 0))
            c = _random_rational_function(tower, nvars, rng)
        if allow_zero or not c.is_zero():
            return c


def _random_rational_function(tower, nvars, rng):
    def small():
        f = Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2, 3)))
        return tower.element(tower.field.from_rational(f.numerator, f.denominator))

    def poly():
        acc = small()
        for k in range(1, nvars + 1):
            if rng.random() < 0.6:
                t = tower.element(tower.field.variable(f"t{k}"))
                acc = acc + small() * t ** rng.randint(1, 2)
        return acc

    num = poly()
    if nvars and rng.random() < 0.4:
        den = poly()
        if not den.is_zero():
            return num / den
    return num


def random_path(quiver, rng, max_length, start=None, min_length=0):
    """Random forward walk; stops early at sinks."""
    v = start if start is not None else rng.choice(quiver.vertices)
    n = rng.randint(min_length, max_length)
    edges = []
    cur = v
    for _ in range(n):
        out = quiver.out_edges[cur]
        if not out:
            break
        e = rng.choice(out)
        edges.append(e.id)
        cur = e.dst
    return Path(v, cur, edges)


def random_path_to(quiver, rng, max_length, end):
    """Random backward walk ending at ``end``."""
    n = rng.randint(0, max_length)
    edges = []
    cur = end
    for _ in range(n):
        inc = quiver.in_edges[cur]
        if not inc:
            break
        e = rng.choice(inc)
        edges.append(e.id)
        cur = e.src
    return Path(cur, end, reversed(edges))


def random_mpa(alg, rng, terms=3, max_length=3):
    pairs = []
    for _ in range(rng.randint(0, terms)):
        p = random_path(alg.quiver, rng, max_length)
        pairs.append((p, random_coefficient(alg.tower, alg.levels[p.dst], rng, allow_zero=False)))
    return alg.element(pairs)


def random_candidate(alg, rng, terms=3, max_length=3):
    """(path, coefficient) pairs with coefficients from K_r, ignoring the level constraint."""
    pairs = []
    for _ in range(rng.randint(1, terms)):
        p = random_path(alg.quiver, rng, max_length)
        pairs.append((p, random_coefficient(alg.tower, alg.tower.r, rng)))
    return pairs


def random_monomial(alg, rng, max_length=2):
    alpha = random_path(alg.quiver, rng, max_length)
    beta = random_path_to(alg.quiver, rng, max_length, alpha.dst)
    return (alpha, beta)


def random_lpa(alg, rng, terms=3, max_length=2):
    pairs = []
    for _ in range(rng.randint(0, terms)):
        m = random_monomial(alg, rng, max_length)
        pairs.append((m, random_coefficient(alg.tower, alg.levels[m[0].dst], rng, allow_zero=False)))
    return alg.element(pairs)


def random_letter_walk(quiver, rng, length):
    """Composable letters ('p', v), ('e', id), ('g', id) in the doubled quiver."""
    v = rng.choice(quiver.vertices)
    out = []
    for _ in range(length):
        moves = [("p", v, v)]
        moves += [("e", e.id, e.dst) for e in quiver.out_edges[v]]
        moves += [("g", e.id, e.src) for e in quiver.in_edges[v]]
        kind, x, v = rng.choice(moves)
        out.append((kind, x))
    return out


def random_walk_factors(alg, rng, length=6, extra=0.4):
    """Generator elements along a letter walk; some factors get a second random letter."""
    q = alg.quiver

    def letter(kind, x):
        if kind == "p":
            mid = x
        else:
            mid = q.edge_map[x].dst
        c = random_coefficient(alg.tower, alg.levels[mid], rng, allow_zero=False)
        if kind == "p":
            return alg.vertex(x, c)
        return alg.edge(x, c) if kind == "e" else alg.ghost(x, c)

    factors = []
    for kind, x in random_letter_walk(q, rng, length):
        f = letter(kind, x)
        if rng.random() < extra:
            (k2, x2), = random_letter_walk(q, rng, 1)
            f = f + letter(k2, x2)
        factors.append(f)
    return factors


def random_series(alg, rng, order, terms=4):
    """Random mixed-valid truncated series (a polynomial of degree <= order)."""
    pairs = []
    for _ in range(rng.randint(0, terms)):
        p = random_path(alg.quiver, rng, order)
        pairs.append((p, random_coefficient(alg.tower, alg.levels[p.dst], rng, allow_zero=False)))
    return TruncatedSeries.from_terms(alg, order, pairs)


def random_rep(alg, rng, size=2, max_length=2, terms=2):
    """Random representation with epsilon(B) = 0."""
    def entry(min_length):
        pairs = []
        for _ in range(rng.randint(0, terms)):
            p = random_path(alg.quiver, rng, max_length, min_length=min_length)
            if p.length < min_length:
                continue
            pairs.append((p, random_coefficient(alg.tower, alg.levels[p.dst], rng)))
        return alg.element(pairs)

    lam = [entry(0) for _ in range(size)]
    B = [[entry(1) for _ in range(size)] for _ in range(size)]
    rho = [entry(0) for _ in range(size)]
    return LinearRep(alg, lam, B, rho)
