"""Exact arithmetic in towers of simple algebraic extensions of Q.

A tower Q(a1)(a2)...(aL) is described by its levels: a generator symbol and
a monic minimal polynomial whose coefficients live in the previous level.
Elements are dense rational coefficient vectors in the monomial basis
a1^e1 * ... * aL^eL (0 <= ei < deg_i), ordered lexicographically by the
exponent tuple.  Multiplication goes through a precomputed table of
structure constants, so every element has exactly one representation.
"""

import random
from fractions import Fraction
from dataclasses import dataclass, field as dc_field

from .literal import LiteralError, evaluate
from .poly import Polynomial

__all__ = [
    "FieldTower",
    "FieldElement",
    "Embedding",
    "ValidationReport",
    "TowerError",
    "make_tower",
    "QQ",
    "minpoly_over",
    "validate_embedding",
    "common_field",
]


class TowerError(ValueError):
    pass


def _solve_rational(rows, rhs):
    """Solve ``x . rows = rhs`` over Q; ``rows`` is square.  None if singular."""
    n = len(rows)
    # augmented transpose: columns of `rows` become equations
    aug = [[Fraction(rows[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        prow = [v * inv for v in aug[col]]
        aug[col] = prow
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                row = aug[r]
                aug[r] = [a - f * b for a, b in zip(row, prow)]
    return [aug[i][n] for i in range(n)]


class FieldTower:
    """A number field presented as a tower of simple extensions over Q.

    ``base_marker`` selects the subfield k: the tower prefix consisting of
    the first ``base_marker`` levels (0 means k = Q).
    """

    characteristic = 0
    is_finite = False

    def __init__(self, levels=(), base_marker=0):
        levels = list(levels)
        if not 0 <= base_marker <= len(levels):
            raise TowerError(f"base_marker {base_marker} out of range for {len(levels)} levels")
        self.base_marker = base_marker
        if levels:
            *lower, (sym, poly) = levels
            prefix = FieldTower(lower, min(base_marker, len(lower)))
            self._init_from(prefix, sym, poly)
        else:
            self._prefix = None
            self.symbols = ()
            self.minpolys = ()
            self.degrees = ()
            self.degree = 1
            self.monomials = [()]
            self._table = [[[(0, Fraction(1))]]]
            self._finish()

    # construction ---------------------------------------------------------

    @classmethod
    def _extension(cls, prefix, sym, poly, base_marker):
        self = cls.__new__(cls)
        self.base_marker = base_marker
        self._init_from(prefix, sym, poly)
        return self

    def _init_from(self, prefix, sym, poly):
        if not (isinstance(sym, str) and sym.isidentifier() and sym.isascii()):
            raise TowerError(f"generator symbol must be an ASCII identifier, got {sym!r}")
        if sym in prefix.symbols or sym == "x":
            raise TowerError(f"generator symbol {sym!r} is reserved or already used")
        if isinstance(poly, str):
            try:
                poly = prefix.parse_poly(poly)
            except LiteralError as exc:
                raise TowerError(f"minimal polynomial for {sym!r}: {exc}") from None
        elif not isinstance(poly, Polynomial):
            poly = Polynomial(prefix, poly)
        elif poly.field is not prefix:
            poly = poly.map_coeffs(prefix, prefix)
        if poly.degree < 2:
            raise TowerError(f"minimal polynomial for {sym!r} must have degree >= 2, got {poly}")
        if not poly.is_monic():
            raise TowerError(f"minimal polynomial for {sym!r} is not monic: {poly}")
        self._prefix = prefix
        self.symbols = prefix.symbols + (sym,)
        self.minpolys = prefix.minpolys + (poly,)
        self.degrees = prefix.degrees + (poly.degree,)
        self.degree = prefix.degree * poly.degree
        self.monomials = [p + (u,) for p in prefix.monomials for u in range(poly.degree)]
        self._table = self._build_table(prefix, poly)
        self._finish()

    def _build_table(self, prefix, poly):
        d = poly.degree
        # powers a^t for t < 2d-1 as coefficient lists over the prefix
        neg_tail = [-c for c in poly.coeffs[:d]]
        powers = []
        cur = [prefix.one] + [prefix.zero] * (d - 1)
        for _ in range(2 * d - 1):
            powers.append(cur)
            top = cur[-1]
            cur = [prefix.zero] + cur[:-1]
            if top:
                cur = [c + top * t for c, t in zip(cur, neg_tail)]
        pbasis = [prefix.basis_element(i) for i in range(prefix.degree)]
        D = prefix.degree * d
        table = []
        for i in range(D):
            p1, u1 = divmod(i, d)
            row = []
            for j in range(D):
                p2, u2 = divmod(j, d)
                pp = pbasis[p1] * pbasis[p2]
                acc = {}
                for u, c in enumerate(powers[u1 + u2]):
                    if not c:
                        continue
                    prod = pp * c
                    for p, v in enumerate(prod.coeffs):
                        if v:
                            acc[p * d + u] = acc.get(p * d + u, 0) + v
                row.append([(k, Fraction(v)) for k, v in sorted(acc.items()) if v])
            table.append(row)
        return table

    def _finish(self):
        self._key = tuple(
            (s, tuple(c.coeffs for c in p.coeffs)) for s, p in zip(self.symbols, self.minpolys)
        )
        self._index = {m: i for i, m in enumerate(self.monomials)}
        self.zero = FieldElement(self, (0,) * self.degree)
        self.one = FieldElement(self, (1,) + (0,) * (self.degree - 1))
        self._prefixes = {}

    def extend(self, symbol, poly):
        """Return the tower with one more level on top of this one."""
        return FieldTower._extension(self, symbol, poly, self.base_marker)

    # structure ------------------------------------------------------------

    @property
    def num_levels(self):
        return len(self.symbols)

    def prefix(self, j):
        """The subfield generated by the first ``j`` levels."""
        if not 0 <= j <= self.num_levels:
            raise TowerError(f"prefix index {j} out of range")
        if j == self.num_levels:
            return self
        t = self
        while t.num_levels > j:
            t = t._prefix
        return t

    @property
    def base(self):
        return self.prefix(self.base_marker)

    def is_prefix_of(self, other):
        if not isinstance(other, FieldTower):
            return False
        n = self.num_levels
        return n <= other.num_levels and other._key[:n] == self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldTower):
            return NotImplemented
        return self._key == other._key and self.base_marker == other.base_marker

    def __hash__(self):
        return hash((self._key, self.base_marker))

    def __repr__(self):
        if not self.symbols:
            return "FieldTower(QQ)"
        lv = ", ".join(f"{s}: {p}" for s, p in zip(self.symbols, self.minpolys))
        return f"FieldTower([{lv}], base={self.base_marker})"

    def describe(self):
        return {
            "levels": [[s, str(p)] for s, p in zip(self.symbols, self.minpolys)],
            "base": self.base_marker,
        }

    # elements -------------------------------------------------------------

    def basis_element(self, i):
        coeffs = [0] * self.degree
        coeffs[i] = 1
        return FieldElement(self, tuple(coeffs))

    def gen(self, symbol):
        try:
            level = self.symbols.index(symbol)
        except ValueError:
            raise TowerError(f"unknown generator {symbol!r}") from None
        mono = tuple(1 if k == level else 0 for k in range(self.num_levels))
        return self.basis_element(self._index[mono])

    def gens(self):
        return [self.gen(s) for s in self.symbols]

    def __call__(self, value):
        """Coerce an int, Fraction, literal string or subfield element."""
        if isinstance(value, FieldElement):
            if value.tower is self:
                return value
            return self.lift(value)
        if isinstance(value, (int, Fraction)):
            return FieldElement(self, (Fraction(value),) + (0,) * (self.degree - 1))
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def lift(self, x):
        """Image of ``x`` (an element of a prefix of this tower) in this tower."""
        if x.tower is self:
            return x
        src = x.tower
        if not src.is_prefix_of(self):
            raise TowerError(f"{src!r} is not a subfield of {self!r}")
        stride = self.degree // src.degree
        coeffs = [0] * self.degree
        for p, v in enumerate(x.coeffs):
            coeffs[p * stride] = v
        return FieldElement(self, tuple(coeffs))

    def parse(self, text):
        ns = {s: g for s, g in zip(self.symbols, self.gens())}
        try:
            value = evaluate(text, ns)
        except ZeroDivisionError:
            raise LiteralError(f"division by zero in literal {text!r}") from None
        return self(value)

    def parse_poly(self, text, var="x"):
        ns = {s: Polynomial.constant(self, g) for s, g in zip(self.symbols, self.gens())}
        ns[var] = Polynomial.x(self)
        value = evaluate(text, ns)
        if not isinstance(value, Polynomial):
            value = Polynomial.constant(self, value)
        return value

    def random_element(self, rng=random, lo=-3, hi=3):
        return FieldElement(self, tuple(Fraction(rng.randint(lo, hi)) for _ in range(self.degree)))

    # arithmetic kernels ---------------------------------------------------

    def _mul(self, a, b):
        res = [0] * self.degree
        table = self._table
        bnz = [(j, v) for j, v in enumerate(b) if v]
        for i, av in enumerate(a):
            if not av:
                continue
            row = table[i]
            for j, bv in bnz:
                c = av * bv
                for k, t in row[j]:
                    res[k] += c * t
        return tuple(res)

    def mult_matrix(self, a):
        """Rows are the coefficient vectors of basis_i * a."""
        return [self._mul(self.basis_element(i).coeffs, a.coeffs) for i in range(self.degree)]

    def _inv(self, a):
        if not any(a.coeffs):
            raise ZeroDivisionError("division by zero in number field")
        sol = _solve_rational(self.mult_matrix(a), self.one.coeffs)
        if sol is None:
            raise ZeroDivisionError(f"non-invertible element {a} (reducible minimal polynomial?)")
        return FieldElement(self, tuple(sol))


def make_tower(levels, base_marker=0):
    """Build a validated tower from ``(symbol, minpoly)`` pairs."""
    return FieldTower(levels, base_marker)



def _unify(a, b):
    """Coerce two operands into a common tower."""
    if isinstance(b, FieldElement):
        if a.tower is b.tower:
            return a, b
        if b.tower.is_prefix_of(a.tower):
            return a, a.tower.lift(b)
        if a.tower.is_prefix_of(b.tower):
            return b.tower.lift(a), b
        raise TowerError(f"tower mismatch: {a.tower!r} vs {b.tower!r}")
    if isinstance(b, (int, Fraction)):
        return a, a.tower(b)
    return None, None


class FieldElement:
    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs):
        if len(coeffs) != tower.degree:
            raise TowerError(f"expected {tower.degree} coefficients, got {len(coeffs)}")
        self.tower = tower
        self.coeffs = tuple(coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __add__(self, other):
        a, b = _unify(self, other)
        if a is None:
            return NotImplemented
        return FieldElement(a.tower, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return FieldElement(self.tower, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = _unify(self, other)
        if a is None:
            return NotImplemented
        return FieldElement(a.tower, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        a, b = _unify(self, other)
        if a is None:
            return NotImplemented
        return FieldElement(a.tower, tuple(y - x for x, y in zip(a.coeffs, b.coeffs)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.tower, tuple(x * other for x in self.coeffs))
        a, b = _unify(self, other)
        if a is None:
            return NotImplemented
        if a.tower.degree == 1:
            return FieldElement(a.tower, (a.coeffs[0] * b.coeffs[0],))
        return FieldElement(a.tower, a.tower._mul(a.coeffs, b.coeffs))

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self):
        if self.tower.degree == 1:
            if not self.coeffs[0]:
                raise ZeroDivisionError("division by zero in number field")
            return FieldElement(self.tower, (1 / Fraction(self.coeffs[0]),))
        return self.tower._inv(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero in number field")
            return FieldElement(self.tower, tuple(x / Fraction(other) for x in self.coeffs))
        a, b = _unify(self, other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = _unify(self, other)
        if a is None:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.tower.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if self.tower is not other.tower:
                try:
                    a, b = _unify(self, other)
                except TowerError:
                    return False
                return a.coeffs == b.coeffs
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        # hash in the smallest prefix containing the element, so that equal
        # elements of nested towers hash alike
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        t = self.tower
        for j in range(1, t.num_levels + 1):
            stride = t.degree // t.prefix(j).degree
            if not any(c for i, c in enumerate(self.coeffs) if i % stride):
                return hash((j, self.coeffs[::stride]))
        return hash(self.coeffs)

    def to_literal(self):
        parts = []
        for idx in range(self.tower.degree - 1, -1, -1):
            c = self.coeffs[idx]
            if not c:
                continue
            mono = "*".join(
                s if e == 1 else f"{s}^{e}"
                for s, e in zip(self.tower.symbols, self.tower.monomials[idx])
                if e
            )
            c = Fraction(c)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    __str__ = to_literal

    def __repr__(self):
        return f"FieldElement({self.to_literal()!r})"

    def over(self, sub):
        """Coordinates over a prefix subfield: one ``sub`` element per upper monomial."""
        if not sub.is_prefix_of(self.tower):
            raise TowerError(f"{sub!r} is not a subfield of {self.tower!r}")
        R = self.tower.degree // sub.degree
        return [
            FieldElement(sub, tuple(self.coeffs[s * R + u] for s in range(sub.degree)))
            for u in range(R)
        ]


QQ = FieldTower()


def common_field(fields):
    """The largest of a chain of fields (each a subfield of the next)."""
    best = None
    for f in fields:
        if best is None or best is f:
            best = f if best is None else best
            continue
        if isinstance(f, FieldTower) and isinstance(best, FieldTower):
            if best.is_prefix_of(f):
                best = f
            elif not f.is_prefix_of(best):
                raise TowerError(f"fields {best!r} and {f!r} are not nested")
        elif f != best:
            raise TowerError(f"fields {best!r} and {f!r} are incompatible")
    return best


def minpoly_over(x, sub=None):
    """Minimal polynomial of ``x`` over the subfield ``sub`` (default Q).

    Finds the first linear dependency among 1, x, x^2, ... with coordinates
    taken over ``sub``.
    """
    from .exactla import solve_left  # local: exactla is generic over fields

    tower = x.tower
    if sub is None:
        sub = tower.prefix(0)
    powers = [tower.one]
    vecs = [tower.one.over(sub)]
    while True:
        nxt = powers[-1] * x
        v = nxt.over(sub)
        coeffs = solve_left(vecs, v, sub)
        if coeffs is not None:
            return Polynomial(sub, [-c for c in coeffs] + [sub.one])
        powers.append(nxt)
        vecs.append(v)


@dataclass
class ValidationReport:
    ok: bool
    failures: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {"ok": self.ok, "failures": list(self.failures)}


class Embedding:
    """A k-linear field embedding given by generator images.

    ``images`` maps each generator symbol of ``source`` to an element of
    ``target``.  Nothing is checked at construction; call
    :func:`validate_embedding`.
    """

    def __init__(self, source, target, images, name=None):
        self.source = source
        self.target = target
        self.images = {s: target(v) for s, v in images.items()}
        self.name = name

    def __repr__(self):
        body = ", ".join(f"{s} -> {v}" for s, v in self.images.items())
        return f"Embedding({self.name or ''}{': ' if self.name else ''}{body})"

    def image_of_gen(self, symbol):
        return self.images[symbol]

    def _apply_levels(self, x, nlevels):
        src = x.tower
        imgs = [self.images[s] for s in src.symbols[:nlevels]]
        # power cache per generator
        pw = [[self.target.one] for _ in imgs]
        result = self.target.zero
        for c, mono in zip(x.coeffs, src.monomials):
            if not c:
                continue
            term = self.target(Fraction(c))
            for lvl, e in enumerate(mono):
                cache = pw[lvl]
                while len(cache) <= e:
                    cache.append(cache[-1] * imgs[lvl])
                term = term * cache[e]
            result = result + term
        return result

    def __call__(self, x):
        x = self.source(x) if not (isinstance(x, FieldElement) and x.tower is self.source) else x
        return self._apply_levels(x, self.source.num_levels)

    def describe(self):
        return {s: str(v) for s, v in self.images.items()}


def validate_embedding(e):
    """Check that generator images satisfy their mapped minimal polynomials
    and that the base subfield is fixed pointwise."""
    failures = []
    src = e.source
    missing = [s for s in src.symbols if s not in e.images]
    if missing:
        return ValidationReport(False, [f"no image given for generator(s) {', '.join(missing)}"])
    for level, (sym, poly) in enumerate(zip(src.symbols, src.minpolys)):
        img = e.images[sym]
        lower = src.prefix(level)
        mapped = poly.map_coeffs(lambda c: e._apply_levels(lower(c), level), e.target)
        val = mapped(img)
        if val:
            failures.append(f"{sym} -> {img}: ({mapped})(x={img}) = {val} != 0")
    base = src.base
    if base.num_levels:
        if not base.is_prefix_of(e.target):
            failures.append(f"base field {base!r} is not a subfield of the target")
        else:
            for sym in base.symbols:
                want = e.target.lift(base.gen(sym))
                if e.images[sym] != want:
                    failures.append(f"base generator {sym} is moved: {sym} -> {e.images[sym]}")
    return ValidationReport(not failures, failures)


def monomial_elements(tower):
    """The tower basis as field elements, in coefficient order."""
    return [tower.basis_element(i) for i in range(tower.degree)]

