"""Dense univariate polynomials over any of the library's fields."""

from fractions import Fraction

__all__ = ["Polynomial"]


class Polynomial:
    """Polynomial in ``x`` with coefficients in ``field``, stored low to high.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field, roots):
        p = cls(field, [1])
        for r in roots:
            p = p * cls(field, [-r, 1])
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self):
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        inv = self.field.one / self.coeffs[-1]
        return Polynomial(self.field, [c * inv for c in self.coeffs])

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        return Polynomial(self.field, [other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial(self.field, [])
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            q, r = divmod(self, other)
            if r:
                raise ValueError("polynomial division is not exact")
            return q
        inv = self.field.one / self.field(other)
        return Polynomial(self.field, [c * inv for c in self.coeffs])

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial exponent must be a non-negative int")
        result = Polynomial(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(self.field, []), self
        inv_lead = self.field.one / other.coeffs[-1]
        quot = [self.field.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * inv_lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Polynomial(self.field, quot), Polynomial(self.field, rem[: len(other.coeffs) - 1])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def gcd(self, other):
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic() if a else a

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            n = max(len(self.coeffs), len(other.coeffs))
            return all(self[i] == other[i] for i in range(n))
        if isinstance(other, (int, Fraction)):
            return self == Polynomial(self.field, [other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, value):
        """Horner evaluation; works for field elements and square matrices."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c + 0 * value if acc is None else acc * value + c
        if acc is None:
            return 0 * value
        return acc

    def map_coeffs(self, fn, field):
        return Polynomial(field, [fn(c) for c in self.coeffs])

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            cs = str(c)
            if not mono:
                term = cs
            elif c == self.field.one:
                term = mono
            elif c == -self.field.one:
                term = "-" + mono
            elif _is_atomic(cs):
                term = f"{cs}*{mono}"
            else:
                term = f"({cs})*{mono}"
            parts.append(term)
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return f"Polynomial({self})"


def _is_atomic(s):
    """True when ``s`` can be multiplied by a monomial without parentheses."""
    body = s[1:] if s.startswith("-") else s
    return "+" not in body and "-" not in body
