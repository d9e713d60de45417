"""The exterior power of F^n: subset indexing, Plücker vectors, and the
derivation d(psi) used for tangent vectors.

Basis vectors of the m-th exterior power are indexed by strictly increasing
m-subsets of {0..n-1} in lexicographic order; this order is also the wire
order of serialized wedge vectors.  Labels shown to users are 1-based.
"""

import itertools
from functools import lru_cache

from .exactla import DimensionError, Matrix, _infer_field, _rref_rows

__all__ = [
    "WedgeIndex",
    "WedgeVector",
    "plucker",
    "wedge",
    "wedge_derivation",
    "plucker_relation_check",
]


class WedgeIndex:
    __slots__ = ("n", "m", "subsets", "position")

    def __init__(self, n, m):
        if n < 0 or m < 0:
            raise DimensionError("negative exterior power parameters")
        self.n = n
        self.m = m
        self.subsets = tuple(itertools.combinations(range(n), m))
        self.position = {s: i for i, s in enumerate(self.subsets)}

    def __len__(self):
        return len(self.subsets)

    def __eq__(self, other):
        return isinstance(other, WedgeIndex) and (self.n, self.m) == (other.n, other.m)

    def __hash__(self):
        return hash((self.n, self.m))

    def labels(self):
        return ["^".join(f"e{i + 1}" for i in s) if s else "1" for s in self.subsets]

    def __repr__(self):
        return f"WedgeIndex(n={self.n}, m={self.m})"


@lru_cache(maxsize=None)
def wedge_index(n, m):
    return WedgeIndex(n, m)


def _sort_sign(idx):
    """Sign of the permutation sorting ``idx``; 0 if an index repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class WedgeVector:
    __slots__ = ("index", "coeffs", "field")

    def __init__(self, index, coeffs, field):
        if len(coeffs) != len(index):
            raise DimensionError(f"expected {len(index)} wedge coordinates, got {len(coeffs)}")
        self.index = index
        self.field = field
        self.coeffs = tuple(field(c) for c in coeffs)

    @classmethod
    def zero(cls, field, n, m):
        idx = wedge_index(n, m)
        return cls(idx, [field.zero] * len(idx), field)

    @classmethod
    def from_terms(cls, field, n, m, terms):
        """Build from ``{(i1, ..., im): coeff}`` with 1-based, possibly
        unsorted indices (sign of the sorting permutation applied)."""
        idx = wedge_index(n, m)
        coeffs = [field.zero] * len(idx)
        for key, c in terms.items():
            sign, srt = _sort_sign([i - 1 for i in key])
            if sign == 0:
                continue
            pos = idx.position[srt]
            coeffs[pos] = coeffs[pos] + field(c) * sign
        return cls(idx, coeffs, field)

    def __getitem__(self, subset):
        """Coefficient at a 1-based subset, e.g. ``w[1, 3]``."""
        if isinstance(subset, int):
            subset = (subset,)
        sign, srt = _sort_sign([i - 1 for i in subset])
        if sign == 0:
            return self.field.zero
        return self.coeffs[self.index.position[srt]] * sign

    def __bool__(self):
        return any(self.coeffs)

    def _same(self, other):
        if self.index != other.index:
            raise DimensionError("wedge vectors of different exterior powers")

    def __add__(self, other):
        self._same(other)
        coeffs = [a + b for a, b in zip(self.coeffs, other.coeffs)]
        return WedgeVector(self.index, coeffs, _infer_field([coeffs]))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return WedgeVector(self.index, [-a for a in self.coeffs], self.field)

    def __mul__(self, c):
        coeffs = [a * c for a in self.coeffs]
        return WedgeVector(self.index, coeffs, _infer_field([coeffs], None) if coeffs else self.field)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, WedgeVector):
            return NotImplemented
        return self.index == other.index and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.index.n, self.index.m))

    def lift(self, field):
        return WedgeVector(self.index, self.coeffs, field)

    def to_strings(self):
        return [str(c) for c in self.coeffs]

    def __str__(self):
        parts = []
        for lab, c in zip(self.index.labels(), self.coeffs):
            if c:
                parts.append(f"({c})*{lab}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"WedgeVector({self})"


def _as_rows(basis, field=None):
    if isinstance(basis, Matrix):
        return [list(r) for r in basis.rows], basis.field, basis.ncols
    rows = [list(r) for r in basis]
    field = _infer_field(rows, field)
    ncols = len(rows[0]) if rows else None
    return [[field(x) for x in r] for r in rows], field, ncols


def _minor(rows, cols, field):
    m = len(cols)
    if m == 0:
        return field.one
    if m == 1:
        return rows[0][cols[0]]
    if m == 2:
        r0, r1 = rows
        a, b = cols
        return r0[a] * r1[b] - r0[b] * r1[a]
    return Matrix._raw(field, [[r[c] for c in cols] for r in rows], m).det()


def wedge(vectors, field=None, n=None):
    """Coordinates of v1 ^ ... ^ vm (zero when the vectors are dependent)."""
    rows, field, ncols = _as_rows(vectors, field)
    if n is None:
        if ncols is None:
            raise DimensionError("ambient dimension needed for the empty wedge")
        n = ncols
    m = len(rows)
    idx = wedge_index(n, m)
    return WedgeVector(idx, [_minor(rows, s, field) for s in idx.subsets], field)


def plucker(basis, field=None, n=None):
    """Plücker coordinates of the row space of an m x n matrix of rank m."""
    rows, field, ncols = _as_rows(basis, field)
    n = ncols if n is None else n
    if rows and len(_rref_rows(rows, n)[1]) != len(rows):
        raise DimensionError("Plücker coordinates need a basis of full row rank")
    return wedge(rows, field, n)


def wedge_derivation(e_basis, psi_images, field=None):
    """d(psi)(e1 ^ ... ^ em) = sum_i e1 ^ ... ^ psi(ei) ^ ... ^ em."""
    e_rows, f1, n = _as_rows(e_basis, field)
    p_rows, f2, n2 = _as_rows(psi_images, field)
    if len(e_rows) != len(p_rows):
        raise DimensionError("psi needs exactly one image per basis vector of E")
    if e_rows and n != n2:
        raise DimensionError("psi images live in a different ambient space")
    fld = _infer_field(e_rows + p_rows, field)
    m = len(e_rows)
    if m == 0:
        raise DimensionError("d(psi) needs a nonempty basis (ambient size unknown)")
    total = WedgeVector.zero(fld, n, m)
    for i in range(m):
        vecs = e_rows[:i] + [p_rows[i]] + e_rows[i + 1 :]
        if any(p_rows[i]):
            total = total + wedge(vecs, fld, n)
    return total


def plucker_relation_check(w):
    """Residual p12 p34 - p13 p24 + p14 p23 of the single relation on Gr(2, 4)."""
    if (w.index.n, w.index.m) != (4, 2):
        raise NotImplementedError("Plücker relation check is implemented for (m, n) = (2, 4) only")
    return w[1, 2] * w[3, 4] - w[1, 3] * w[2, 4] + w[1, 4] * w[2, 3]
