"""Prime fields F_p, used by the brute-force enumeration oracle."""

import random
from fractions import Fraction

from .literal import evaluate

__all__ = ["PrimeField", "GF"]


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    is_finite = True
    symbols = ()
    degree = 1
    base_marker = 0

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"F_p needs a prime modulus, got {p}")
        self.p = p
        self.characteristic = p
        self.zero = GF(self, 0)
        self.one = GF(self, 1)

    @property
    def order(self):
        return self.p

    def __call__(self, value):
        if isinstance(value, GF):
            if value.field.p != self.p:
                raise ValueError(f"cannot coerce F_{value.field.p} element into F_{self.p}")
            return value
        if isinstance(value, int):
            return GF(self, value % self.p)
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"{value} has no image in F_{self.p}")
            return GF(self, value.numerator * pow(den, -1, self.p) % self.p)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into F_{self.p}")

    def parse(self, text):
        return self(evaluate(text, {}))

    def elements(self):
        return [GF(self, v) for v in range(self.p)]

    def random_element(self, rng=random, lo=None, hi=None):
        return GF(self, rng.randrange(self.p))

    def is_prefix_of(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    @property
    def base(self):
        return self

    def describe(self):
        return {"prime": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class GF:
    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _v(self, other):
        if isinstance(other, GF):
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field(other).value
        return None

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __add__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        return GF(self.field, (self.value + v) % self.field.p)

    __radd__ = __add__

    def __neg__(self):
        return GF(self.field, -self.value % self.field.p)

    def __sub__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        return GF(self.field, (self.value - v) % self.field.p)

    def __rsub__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        return GF(self.field, (v - self.value) % self.field.p)

    def __mul__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        return GF(self.field, self.value * v % self.field.p)

    __rmul__ = __mul__

    def inverse(self):
        if not self.value:
            raise ZeroDivisionError(f"division by zero in F_{self.field.p}")
        return GF(self.field, pow(self.value, -1, self.field.p))

    def __truediv__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        if not v:
            raise ZeroDivisionError(f"division by zero in F_{self.field.p}")
        return GF(self.field, self.value * pow(v, -1, self.field.p) % self.field.p)

    def __rtruediv__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        return GF(self.field, v) / self

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return GF(self.field, pow(self.value, e, self.field.p))

    def __eq__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        return self.value == v

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"GF({self.value} mod {self.field.p})"
