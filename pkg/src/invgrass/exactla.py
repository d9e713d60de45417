"""Exact dense linear algebra over any of the library's fields.

Everything here is generic: entries only need ``+ - * /``, ``bool()`` as a
nonzero test, and a field object providing ``zero``, ``one`` and coercion
by call.  Vectors are row vectors and matrices act on them from the right.
"""

from fractions import Fraction

from .fieldtower import FieldElement, QQ, common_field
from .finitefield import GF

__all__ = [
    "DimensionError",
    "Matrix",
    "Subspace",
    "field_of",
    "rref",
    "rank",
    "kernel",
    "left_kernel",
    "solve_left",
    "vecmat",
    "span",
]


class DimensionError(ValueError):
    pass


def field_of(x):
    if isinstance(x, FieldElement):
        return x.tower
    if isinstance(x, GF):
        return x.field
    return None


def _infer_field(rows, field=None):
    if field is not None:
        return field
    fields = {id(f): f for r in rows for f in map(field_of, r) if f is not None}
    if not fields:
        return QQ
    return common_field(fields.values())


def _coerce_rows(rows, field):
    return [tuple(field(x) for x in r) for r in rows]


def _rref_rows(rows, ncols):
    """In-place friendly RREF of a list of lists; returns (rows, pivots)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = prow[c].inverse() if hasattr(prow[c], "inverse") else 1 / Fraction(prow[c])
        prow = [x * inv if x else x for x in prow]
        rows[r] = prow
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


class Matrix:
    """Dense matrix with entries in ``field``; rows are tuples."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, rows, field=None, ncols=None):
        rows = [tuple(r) for r in rows]
        field = _infer_field(rows, field)
        self.field = field
        self.rows = tuple(tuple(field(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise DimensionError("cannot infer the column count of an empty matrix")
            ncols = len(self.rows[0])
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise DimensionError("ragged matrix rows")

    @classmethod
    def _raw(cls, field, rows, ncols):
        self = cls.__new__(cls)
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = ncols
        return self

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls._raw(field, [[field.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def scalar(cls, field, n, c):
        c = field(c)
        z = field.zero
        return cls._raw(field, [[c if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, field, entries):
        n = len(entries)
        z = field.zero
        return cls._raw(
            field, [[field(entries[i]) if i == j else z for j in range(n)] for i in range(n)], n
        )

    @classmethod
    def block_diag(cls, blocks):
        field = common_field([b.field for b in blocks])
        n = sum(b.nrows for b in blocks)
        out = [[field.zero] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i, r in enumerate(b.rows):
                for j, x in enumerate(r):
                    out[off + i][off + j] = field(x)
            off += b.nrows
        return cls._raw(field, out, n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def transpose(self):
        return Matrix._raw(self.field, list(zip(*self.rows)) if self.rows else [], self.nrows)

    T = property(transpose)

    def submatrix(self, rows=None, cols=None):
        rows = range(self.nrows) if rows is None else rows
        cols = range(self.ncols) if cols is None else cols
        return Matrix._raw(self.field, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def lift(self, field):
        if field is self.field:
            return self
        return Matrix._raw(field, [[field(x) for x in r] for r in self.rows], self.ncols)

    def map(self, fn, field):
        return Matrix._raw(field, [[fn(x) for x in r] for r in self.rows], self.ncols)

    def _scalar_like(self, c):
        return isinstance(c, (int, Fraction, FieldElement, GF))

    def __add__(self, other):
        if self._scalar_like(other):
            other = Matrix.scalar(self.field, self.nrows, other)
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.shape != self.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return Matrix._raw(_infer_field(rows[:1], None) if rows else self.field, rows, self.ncols)

    __radd__ = __add__

    def __neg__(self):
        return Matrix._raw(self.field, [[-a for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        if self._scalar_like(other):
            rows = [[a * other for a in r] for r in self.rows]
            return Matrix._raw(_infer_field(rows[:1]) if rows else self.field, rows, self.ncols)
        return NotImplemented

    def __rmul__(self, other):
        if self._scalar_like(other):
            return self * other
        return NotImplemented

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        field = common_field([self.field, other.field])
        z = field.zero
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for col in cols:
                acc = z
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix._raw(field, out, other.ncols)

    def __pow__(self, e):
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self):
        return not any(a for r in self.rows for a in r)

    def commutes_with(self, other):
        return self @ other == other @ self

    def det(self):
        if not self.is_square():
            raise DimensionError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return self.field.one
        rows = [list(r) for r in self.rows]
        det = self.field.one
        for c in range(n):
            piv = next((i for i in range(c, n) if rows[i][c]), None)
            if piv is None:
                return self.field.zero
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                det = -det
            p = rows[c][c]
            det = det * p
            inv = p.inverse()
            for i in range(c + 1, n):
                f = rows[i][c]
                if f:
                    f = f * inv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return det

    def inverse(self):
        n = self.nrows
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        ident = Matrix.identity(self.field, n).rows
        aug = [list(r) + list(e) for r, e in zip(self.rows, ident)]
        red, piv = _rref_rows(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(self.field, [r[n:] for r in red], n)

    def rank(self):
        return len(_rref_rows(self.rows, self.ncols)[1])

    def to_strings(self):
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self):
        return "Matrix(" + repr(self.to_strings()) + ")"


def vecmat(v, a):
    """Row vector times matrix."""
    if len(v) != a.nrows:
        raise DimensionError(f"vector of length {len(v)} times {a.shape} matrix")
    field = common_field([f for f in (field_of(v[0]) if v else None, a.field) if f is not None])
    z = field.zero
    out = [z] * a.ncols
    for x, row in zip(v, a.rows):
        if not x:
            continue
        out = [acc + x * b if b else acc for acc, b in zip(out, row)]
    return tuple(out)


def rref(m, field=None):
    """Reduced row-echelon form: ``(Matrix, pivots, rank)`` without zero rows."""
    if not isinstance(m, Matrix):
        m = Matrix(m, field)
    rows, pivots = _rref_rows(m.rows, m.ncols)
    return Matrix._raw(m.field, rows, m.ncols), pivots, len(pivots)


def rank(rows, ncols=None):
    rows = list(rows)
    if not rows:
        return 0
    return len(_rref_rows(rows, ncols or len(rows[0]))[1])


def kernel(m, field=None):
    """Basis (list of tuples) of the right kernel ``{x : m x = 0}``."""
    if not isinstance(m, Matrix):
        m = Matrix(m, field)
    rows, pivots = _rref_rows(m.rows, m.ncols)
    f = m.field
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [f.zero] * m.ncols
        x[fc] = f.one
        for r, pc in zip(rows, pivots):
            x[pc] = -r[fc]
        basis.append(tuple(x))
    return basis


def left_kernel(m, field=None):
    """Basis of ``{c : c m = 0}``."""
    if not isinstance(m, Matrix):
        m = Matrix(m, field)
    if m.nrows == 0:
        return []
    return kernel(m.transpose())


def solve_left(rows, target, field=None):
    """Coefficients ``c`` with ``sum c_i rows_i == target``, or None."""
    target = tuple(target)
    rows = [tuple(r) for r in rows]
    field = _infer_field(rows + [target], field)
    n = len(target)
    k = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("vector length mismatch in solve_left")
    # equations: for each coordinate j, sum_i c_i rows[i][j] = target[j]
    aug = [[field(rows[i][j]) for i in range(k)] + [field(target[j])] for j in range(n)]
    red, pivots = _rref_rows(aug, k + 1)
    if k in pivots:
        return None
    sol = [field.zero] * k
    for r, pc in zip(red, pivots):
        sol[pc] = r[k]
    return sol


class Subspace:
    """A subspace of F^n, stored by its canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field, ambient_dim, basis, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in basis)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors, field=None, n=None):
        vectors = [tuple(v) for v in vectors]
        if n is None:
            if not vectors:
                raise DimensionError("ambient dimension needed for an empty span")
            n = len(vectors[0])
        if any(len(v) != n for v in vectors):
            raise DimensionError(f"vectors must all have length {n}")
        field = _infer_field(vectors, field)
        rows, pivots = _rref_rows(_coerce_rows(vectors, field), n)
        return cls(field, n, rows, pivots)

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, [], [])

    @classmethod
    def whole(cls, field, n):
        return cls(field, n, Matrix.identity(field, n).rows, range(n))

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def matrix(self):
        return Matrix._raw(self.field, self.basis, self.ambient_dim)

    def _check(self, other_n):
        if other_n != self.ambient_dim:
            raise DimensionError(f"ambient dimension {other_n} != {self.ambient_dim}")

    def reduce(self, v):
        """Remainder of ``v`` after elimination against the basis."""
        self._check(len(v))
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c:
                v = [a - c * b if b else a for a, b in zip(v, row)]
        return v

    def __contains__(self, v):
        return not any(self.reduce(v))

    def coordinates(self, v):
        """Coefficients of ``v`` on the basis rows, or None if ``v`` is outside."""
        if any(self.reduce(v)):
            return None
        return [v[pc] for pc in self.pivots]

    def lift(self, field):
        if field is self.field:
            return self
        return Subspace(field, self.ambient_dim, _coerce_rows(self.basis, field), self.pivots)

    def __add__(self, other):
        self._check(other.ambient_dim)
        field = common_field([self.field, other.field])
        return Subspace.span(
            list(self.basis) + list(other.basis), field, self.ambient_dim
        )

    def intersect(self, other):
        self._check(other.ambient_dim)
        field = common_field([self.field, other.field])
        if not self.basis or not other.basis:
            return Subspace.zero(field, self.ambient_dim)
        stacked = [tuple(field(x) for x in r) for r in self.basis] + [
            tuple(-field(x) for x in r) for r in other.basis
        ]
        ker = left_kernel(Matrix._raw(field, stacked, self.ambient_dim))
        k = self.dim
        vecs = []
        for c in ker:
            v = [field.zero] * self.ambient_dim
            for ci, row in zip(c[:k], self.basis):
                if ci:
                    v = [a + ci * b for a, b in zip(v, row)]
            vecs.append(v)
        return Subspace.span(vecs, field, self.ambient_dim)

    __and__ = intersect
    __or__ = __add__

    def issubspace(self, other):
        return all(r in other for r in self.basis)

    def complement(self):
        """Canonical complement: unit vectors at the non-pivot columns."""
        f = self.field
        rows = []
        free = [c for c in range(self.ambient_dim) if c not in self.pivots]
        for c in free:
            rows.append(tuple(f.one if j == c else f.zero for j in range(self.ambient_dim)))
        return Subspace(f, self.ambient_dim, rows, free)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and all(a == b for r, s in zip(self.basis, other.basis) for a, b in zip(r, s))
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))

    def to_strings(self):
        return [[str(x) for x in r] for r in self.basis]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.ambient_dim}, basis={self.to_strings()})"


def span(vectors, field=None, n=None):
    return Subspace.span(vectors, field, n)
