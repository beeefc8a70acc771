"""Exact arithmetic in a chain of fields K_0 <= K_1 <= ... <= K_r.

Three kinds of chain are supported:

* ``finite-field``: GF(p^d_0) <= ... <= GF(p^d_r) with d_0 | d_1 | ... | d_r.
  The top field is GF(p)[w]/(C(w)) for the Conway polynomial C of degree d_r;
  level i is generated by w^((p^d_r - 1)/(p^d_i - 1)).
* ``rational-function``: Q <= Q(t1) <= Q(t1, t2) <= ... <= Q(t1, ..., tr).
* ``constant``: one field (Q, or GF(p) when ``p`` is given) repeated r + 1 times.

A :class:`Tower` is a window ``[lo, lo + r]`` onto one of these chains; windows
share elements with the full chain so re-indexed algebras can exchange
coefficients freely.
"""

from dataclasses import dataclass
from sympy.polys.domains import QQ
from sympy.polys.fields import FracField
from sympy.polys.orderings import grlex

from . import kernels
from ._conway import CONWAY
from .textfmt import ParseError, evaluate, wrap

__all__ = [
    "TowerSpec", "TowerElement", "Tower", "make_tower", "ZeroDivision",
    "membership_at_level", "linear_independent_over",
]


class ZeroDivision(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class TowerSpec:
    kind: str
    p: int | None = None
    degrees: tuple | None = None
    levels: int | None = None
    window: tuple | None = None

    def __post_init__(self):
        if self.kind == "finite-field":
            if self.p is None or not self.degrees:
                raise ValueError("finite-field tower needs p and degrees")
            if any(b % a for a, b in zip(self.degrees, self.degrees[1:])):
                raise ValueError(f"degrees {list(self.degrees)} do not form a divisibility chain")
            if (self.p, self.degrees[-1]) not in CONWAY:
                raise ValueError(f"no stored Conway polynomial for p={self.p}, d={self.degrees[-1]}")
        elif self.kind in ("rational-function", "constant"):
            if self.levels is None or self.levels < 0:
                raise ValueError(f"{self.kind} tower needs levels >= 0")
            if self.kind == "constant" and self.p is not None and (self.p, 1) not in CONWAY:
                raise ValueError(f"unsupported prime {self.p}")
        else:
            raise ValueError(f"unknown tower kind {self.kind!r}")
        if self.window is not None:
            lo, hi = self.window
            if not 0 <= lo <= hi <= self.full_r:
                raise ValueError(f"window {self.window} outside 0..{self.full_r}")

    @property
    def full_r(self):
        if self.kind == "finite-field":
            return len(self.degrees) - 1
        return self.levels

    @classmethod
    def from_json(cls, data):
        kind = data.get("kind")
        window = tuple(data["window"]) if "window" in data else None
        if kind == "finite-field":
            return cls(kind, p=int(data["p"]), degrees=tuple(int(d) for d in data["degrees"]), window=window)
        if kind == "rational-function":
            return cls(kind, levels=int(data["levels"]), window=window)
        if kind == "constant":
            p = data.get("p")
            return cls(kind, p=int(p) if p else None, levels=int(data.get("levels", 0)), window=window)
        raise ValueError(f"unknown tower kind {kind!r}")

    def to_json(self):
        if self.kind == "finite-field":
            out = {"kind": self.kind, "p": self.p, "degrees": list(self.degrees)}
        elif self.kind == "rational-function":
            out = {"kind": self.kind, "levels": self.levels}
        else:
            out = {"kind": self.kind, "levels": self.levels}
            if self.p is not None:
                out["p"] = self.p
        if self.window is not None and self.window != (0, self.full_r):
            out["window"] = list(self.window)
        return out


class TowerElement:
    """A field element of the full chain, with its minimal level cached."""

    __slots__ = ("field", "value", "_level")

    def __init__(self, field, value):
        self.field = field
        self.value = value
        self._level = None

    @property
    def level(self):
        """Least i (in the full chain) such that the element lies in K_i."""
        if self._level is None:
            self._level = self.field.level_of(self.value)
        return self._level

    def _wrap(self, value):
        return TowerElement(self.field, value)

    def _coerce(self, other):
        if isinstance(other, TowerElement):
            if other.field is not self.field:
                raise TypeError("elements of different towers")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self._wrap(self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self._wrap(self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self._wrap(self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self._wrap(self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self._wrap(self.field.div(self.value, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self._wrap(self.field.div(v, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n):
        result = self._wrap(self.field.one)
        base = self
        if n < 0:
            base, n = 1 / base, -n
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def is_zero(self):
        return self.field.is_zero(self.value)

    def is_one(self):
        return self.value == self.field.one

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
            return self.value == other
        if not isinstance(other, TowerElement):
            return NotImplemented
        return self.field is other.field and self.value == other.value

    def __hash__(self):
        return hash(self.field.key(self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"TowerElement({self.field.format(self.value)!r})"


class _FiniteField:
    """GF(p^d) for the top degree d of a divisibility chain, in the w-basis."""

    def __init__(self, p, degrees):
        self.p = p
        self.degrees = tuple(degrees)
        self.d = degrees[-1]
        self.mod_low = kernels.pack(CONWAY[(p, self.d)], p)
        self.zero = 0
        self.one = 1
        self.gen_value = p if self.d > 1 else (-self.mod_low) % p
        self.order = p ** self.d
        # w^((p^d - 1)/(p^d_i - 1)) generates level i
        self.sub_generators = [
            kernels.gf_pow(self.gen_value, (self.order - 1) // (p**di - 1), p, self.d, self.mod_low)
            for di in self.degrees
        ]

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return kernels.gf_add(a, b, self.p, self.d)

    def sub(self, a, b):
        return kernels.gf_sub(a, b, self.p, self.d)

    def neg(self, a):
        return kernels.gf_neg(a, self.p, self.d)

    def mul(self, a, b):
        return kernels.gf_mul(a, b, self.p, self.d, self.mod_low)

    def inv(self, a):
        if a == 0:
            raise ZeroDivision("division by zero in finite field")
        return kernels.gf_pow(a, self.order - 2, self.p, self.d, self.mod_low)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == 0

    def key(self, a):
        return a

    def frobenius_fixed(self, a, i):
        q = self.p ** self.degrees[i]
        return kernels.gf_pow(a, q, self.p, self.d, self.mod_low) == a

    def level_of(self, a):
        for i in range(len(self.degrees)):
            if self.frobenius_fixed(a, i):
                return i
        raise AssertionError("element outside the top field")

    def coords(self, a):
        return kernels.unpack(a, self.p, self.d)

    def variable(self, name):
        if name == "w":
            return self.gen_value
        raise ParseError(f"unknown symbol {name!r} (finite-field literals use w)")

    def format(self, a):
        if a == 0:
            return "0"
        parts = []
        for k, c in reversed(list(enumerate(self.coords(a)))):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "w" if k == 1 else f"w^{k}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts)

    def basis_of_level(self, i):
        g = self.sub_generators[i]
        return [kernels.gf_pow(g, a, self.p, self.d, self.mod_low) for a in range(self.degrees[i])]

    def independent(self, values, i):
        """K_i-independence: the F_p-span of {g^a b_j} must have full size."""
        basis = self.basis_of_level(i)
        rows = [self.coords(self.mul(g, v)) for v in values for g in basis]
        return kernels.rank_mod_p(rows, self.p) == len(rows)


class _RationalFunctionField:
    """Q(t1, ..., tn) as gcd-reduced fractions with monic (grlex) denominators.

    Ring generators are ordered (tn, ..., t1) so that grlex has t1 < t2 < ...
    """

    def __init__(self, nvars):
        self.nvars = nvars
        self.names = tuple(f"t{k}" for k in range(nvars, 0, -1))
        self.F = FracField(self.names, QQ, grlex)
        self.gens = self.F.gens if nvars else ()
        self.zero = self.F.zero
        self.one = self.F.one

    def _norm(self, f):
        den = f.denom
        lc = den.LC
        if lc != 1:
            return self.F.raw_new(f.numer.quo_ground(lc), den.quo_ground(lc))
        return f

    def from_int(self, n):
        return self.F(n)

    def from_rational(self, num, den=1):
        return self._norm(self.F(QQ(num, den)))

    def add(self, a, b):
        return self._norm(a + b)

    def sub(self, a, b):
        return self._norm(a - b)

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return self._norm(a * b)

    def div(self, a, b):
        if not b:
            raise ZeroDivision("division by zero in rational function field")
        return self._norm(a / b)

    def inv(self, a):
        return self.div(self.one, a)

    def is_zero(self, a):
        return not a

    def key(self, a):
        return (a.numer, a.denom)

    def level_of(self, a):
        if not self.nvars:
            return 0
        used = [max(x, y) for x, y in zip(a.numer.degrees(), a.denom.degrees())]
        for pos, deg in enumerate(used):
            if deg > 0:
                return self.nvars - pos
        return 0

    def variable(self, name):
        if name in self.names:
            return self.gens[self.names.index(name)]
        raise ParseError(f"unknown symbol {name!r} (expected one of {', '.join(self.names) or 'no variables'})")

    def _format_poly(self, poly):
        if not poly:
            return "0"
        out = []
        for monom, coeff in poly.terms():
            factors = []
            for name, e in zip(self.names, monom):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            c = QQ.to_sympy(coeff)
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if factors:
                body = "*".join(factors)
                if c != 1:
                    body = f"{c}*{body}"
            else:
                body = str(c)
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += sign + body
        return text

    def format(self, a):
        num = self._format_poly(a.numer)
        if a.denom == 1:
            return num
        den = self._format_poly(a.denom)
        den = f"({den})" if "*" in den else wrap(den)
        return f"{wrap(num)}/{den}"

    def independent(self, values, i):
        """Independence over Q(t1..ti) after clearing denominators.

        Each cleared numerator is split by monomials in the variables above
        level i; the coefficients (polynomials in t1..ti) form a matrix whose
        rank over K_i is computed by elimination.
        """
        if not values:
            return True
        common = self.one
        for v in values:
            common = common * v.denom
        # internal positions [0, cut) hold t_n..t_{i+1}; [cut, n) hold t_i..t_1
        cut = self.nvars - min(i, self.nvars)
        rows = []
        columns = {}
        for v in values:
            poly = (v * common).numer
            row = {}
            for monom, coeff in poly.terms():
                high, low = monom[:cut], monom[cut:]
                col = columns.setdefault(high, len(columns))
                term = self.F(QQ.to_sympy(coeff))
                for g, e in zip(self.gens[cut:], low):
                    term = term * g**e
                row[col] = row.get(col, self.zero) + term
            rows.append(row)
        matrix = [[self._norm(row.get(c, self.zero)) for c in range(len(columns))] for row in rows]
        return _rank(self, matrix) == len(values)


def _rank(field, matrix):
    """Gaussian elimination over a field given by raw-value callbacks."""
    m = [list(row) for row in matrix]
    if not m:
        return 0
    rank = 0
    ncols = len(m[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if not field.is_zero(m[r][col])), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = field.inv(m[rank][col])
        m[rank] = [field.mul(x, inv) for x in m[rank]]
        for r in range(len(m)):
            if r != rank and not field.is_zero(m[r][col]):
                f = m[r][col]
                m[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


class Tower:
    """Window ``[lo, lo + r]`` of a field chain; level indices are window-relative."""

    def __init__(self, spec, field=None):
        self.spec = spec
        if field is None:
            field = _build_field(spec)
        self.field = field
        lo, hi = spec.window if spec.window is not None else (0, spec.full_r)
        self.lo = lo
        self.r = hi - lo
        self.kind = spec.kind

    def window(self, lo, hi):
        """Sub-window ``[lo, hi]`` (relative to this window), sharing elements."""
        if not 0 <= lo <= hi <= self.r:
            raise ValueError(f"window [{lo}, {hi}] outside 0..{self.r}")
        spec = TowerSpec(self.spec.kind, p=self.spec.p, degrees=self.spec.degrees,
                         levels=self.spec.levels, window=(self.lo + lo, self.lo + hi))
        return Tower(spec, self.field)

    def same_field(self, other):
        return self.field is other.field

    # element construction

    def element(self, value):
        return TowerElement(self.field, value)

    def zero(self):
        return TowerElement(self.field, self.field.zero)

    def one(self):
        return TowerElement(self.field, self.field.one)

    def from_int(self, n):
        return TowerElement(self.field, self.field.from_int(n))

    def parse(self, text):
        result = evaluate(text, self.from_int, lambda name: self.element(self.field.variable(name)))
        if not isinstance(result, TowerElement):
            result = self.from_int(result)
        if result.level > self.lo + self.r:
            raise ValueError(f"{text!r} is not in the top field of this tower window")
        return result

    def format(self, a):
        return self.field.format(a.value)

    # levels

    def level(self, a):
        """Window-relative minimal level of ``a``."""
        return max(0, a.level - self.lo)

    def contains(self, a, i):
        if not 0 <= i <= self.r:
            raise ValueError(f"level {i} outside 0..{self.r}")
        return a.level <= self.lo + i

    def dim_over_base(self, i):
        """[K_i : K_0] within this window; None for infinite extensions."""
        if self.kind == "finite-field":
            return self.spec.degrees[self.lo + i] // self.spec.degrees[self.lo]
        if self.kind == "constant":
            return 1
        return 1 if i == 0 else None

    def linear_independent_over(self, elems, i):
        elems = list(elems)
        if not 0 <= i <= self.r:
            raise ValueError(f"level {i} outside 0..{self.r}")
        if not elems:
            return True
        if any(e.is_zero() for e in elems):
            return False
        return self.field.independent([e.value for e in elems], self.lo + i)

    def basis_of_level(self, i):
        """F_p-basis of K_i (finite-field towers only)."""
        if not hasattr(self.field, "basis_of_level"):
            raise TypeError("basis_of_level needs a finite-field tower")
        return [self.element(v) for v in self.field.basis_of_level(self.lo + i)]

    @property
    def is_finite(self):
        return hasattr(self.field, "basis_of_level")

    @property
    def characteristic(self):
        return getattr(self.field, "p", 0)

    def __repr__(self):
        return f"Tower({self.spec.to_json()})"


_FIELDS = {}


def _build_field(spec):
    if spec.kind == "finite-field":
        key = ("ff", spec.p, spec.degrees)
        factory = lambda: _FiniteField(spec.p, spec.degrees)
    elif spec.kind == "rational-function":
        key = ("rf", spec.levels)
        factory = lambda: _RationalFunctionField(spec.levels)
    elif spec.p is not None:
        key = ("ff", spec.p, (1,) * (spec.levels + 1))
        factory = lambda: _FiniteField(spec.p, (1,) * (spec.levels + 1))
    else:
        key = ("const-q", spec.levels)
        factory = lambda: _ConstantRationals(spec.levels)
    if key not in _FIELDS:
        _FIELDS[key] = factory()
    return _FIELDS[key]


class _ConstantRationals(_RationalFunctionField):
    def __init__(self, levels):
        super().__init__(0)
        self.levels = levels


def make_tower(data):
    """Build a :class:`Tower` from a spec, a JSON mapping, or a Tower."""
    if isinstance(data, Tower):
        return data
    if isinstance(data, TowerSpec):
        return Tower(data)
    return Tower(TowerSpec.from_json(data))


def membership_at_level(a, i, tower):
    return tower.contains(a, i)


def linear_independent_over(elems, i, tower):
    return tower.linear_independent_over(elems, i)
