"""Matrix algebras acting on row vectors from the right.

A :class:`MatrixAlgebra` is presented by generator matrices; the algebra is
the k-span of all products of generators (identity included).  Because the
action is K-linear, closing a K-subspace under the generators is the same as
closing it under K (x) A, which is what invariance means here.
"""

from dataclasses import dataclass

from .exactla import DimensionError, Matrix, Subspace, _infer_field, kernel, solve_left, vecmat
from .fieldtower import FieldTower, common_field
from .poly import Polynomial

__all__ = [
    "MatrixAlgebra",
    "DualVector",
    "generate_submodule",
    "is_invariant",
    "invariance_witness",
    "matrix_minpoly",
    "invariant_dual_check",
    "f_tangent_space",
]


class MatrixAlgebra:
    """The k-algebra generated by ``generators`` inside M_n(K)."""

    def __init__(self, generators, field=None, name=None):
        gens = [g if isinstance(g, Matrix) else Matrix(g, field) for g in generators]
        if not gens:
            raise ValueError("a matrix algebra needs at least one generator")
        n = gens[0].nrows
        for g in gens:
            if g.shape != (n, n):
                raise DimensionError(f"generators must all be {n}x{n}, got {g.shape}")
        self.field = field if field is not None else common_field([g.field for g in gens])
        self.generators = [g.lift(self.field) for g in gens]
        self.n = n
        self.name = name

    def __repr__(self):
        return f"MatrixAlgebra(n={self.n}, generators={len(self.generators)})"

    def is_commutative(self):
        gs = self.generators
        return all(gs[i].commutes_with(gs[j]) for i in range(len(gs)) for j in range(i + 1, len(gs)))

    def restrict(self, basis_rows):
        """Matrices of the generators on an invariant subspace, in the
        coordinates of ``basis_rows`` (rows are the new basis)."""
        sub = Subspace.span(basis_rows, n=self.n)
        if not is_invariant(sub, self):
            raise ValueError("cannot restrict to a non-invariant subspace")
        fld = common_field([self.field, sub.field])
        mats = []
        for g in self.generators:
            rows = [solve_left(basis_rows, vecmat(b, g), fld) for b in basis_rows]
            mats.append(Matrix(rows, fld, len(basis_rows)))
        return MatrixAlgebra(mats, fld)


@dataclass(frozen=True)
class DualVector:
    """A vector over K[eps]/(eps^2): ``real + eps * eps_part``."""

    real: tuple
    eps: tuple

    def __post_init__(self):
        if len(self.real) != len(self.eps):
            raise DimensionError("dual vector parts differ in length")

    def act(self, a):
        return DualVector(vecmat(self.real, a), vecmat(self.eps, a))


def generate_submodule(vectors, algebra, field=None):
    """Smallest A-invariant subspace containing ``vectors``."""
    n = algebra.n
    vectors = [tuple(v) for v in vectors]
    fld = _infer_field(vectors, field)
    fld = common_field([fld, algebra.field])
    current = Subspace.span(vectors, fld, n)
    while True:
        images = [vecmat(b, g) for b in current.basis for g in algebra.generators]
        fresh = [v for v in images if v not in current]
        if not fresh:
            return current
        current = Subspace.span(list(current.basis) + fresh, fld, n)


def invariance_witness(M, algebra):
    """First ``(row, generator, image)`` with ``row * g`` outside M, or None."""
    if M.ambient_dim != algebra.n:
        raise DimensionError("subspace and algebra live in different dimensions")
    for i, b in enumerate(M.basis):
        for j, g in enumerate(algebra.generators):
            img = vecmat(b, g)
            if img not in M:
                return i, j, img
    return None


def is_invariant(M, algebra):
    return invariance_witness(M, algebra) is None


def _over(x, sub):
    if sub is None or not isinstance(sub, FieldTower):
        return [x]
    return x.over(sub)


def matrix_minpoly(a, over=None):
    """Monic minimal polynomial of the square matrix ``a`` over ``over``
    (a subfield of the entry field; default the entry field itself)."""
    if not isinstance(a, Matrix):
        a = Matrix(a)
    if not a.is_square():
        raise DimensionError("minimal polynomial of a non-square matrix")
    field = a.field
    sub = field if over is None else over
    if isinstance(field, FieldTower) and not sub.is_prefix_of(field):
        raise ValueError(f"{sub!r} is not a subfield of {field!r}")

    def flat(mat):
        if isinstance(field, FieldTower) and sub is not field:
            return [c for r in mat.rows for x in r for c in x.over(sub)]
        return [x for r in mat.rows for x in r]

    power = Matrix.identity(field, a.nrows)
    vecs = [flat(power)]
    while True:
        power = power @ a
        v = flat(power)
        coeffs = solve_left(vecs, v, sub)
        if coeffs is not None:
            return Polynomial(sub, [-c for c in coeffs] + [sub.one])
        vecs.append(v)


def invariant_dual_check(E, psi_images, algebra):
    """Is the K[eps]-span of ``e_i + eps * psi(e_i)`` invariant?

    ``E`` is a Subspace whose basis rows are the e_i.  Each generator image
    must decompose over the dual-number basis: the real part fixes the
    coefficients, the eps part must then be consistent.
    """
    psi_images = [tuple(v) for v in psi_images]
    if len(psi_images) != E.dim:
        raise DimensionError("psi needs one image per basis vector of E")
    basis = [DualVector(e, f) for e, f in zip(E.basis, psi_images)]
    for bv in basis:
        for g in algebra.generators:
            img = bv.act(g)
            c = solve_left(E.basis, img.real)
            if c is None:
                return False
            resid = list(img.eps)
            for cj, other in zip(c, basis):
                if cj:
                    resid = [r - cj * x for r, x in zip(resid, other.eps)]
            if solve_left(E.basis, resid) is None:
                return False
    return True


def f_tangent_space(E, algebra, complement=None):
    """Solutions psi in Hom(E, L) of the dual-number invariance conditions.

    Returns a list of psi's, each a list of images (one per basis row of E),
    forming a basis of the tangent space to the invariant-subspace functor
    at E.  L defaults to the canonical complement of E.
    """
    if not is_invariant(E, algebra):
        raise ValueError("E is not A-invariant")
    L = E.complement() if complement is None else complement
    fld = common_field([E.field, algebra.field, L.field])
    m, q, n = E.dim, L.dim, E.ambient_dim
    unknowns = [(i, k) for i in range(m) for k in range(q)]
    # structure constants c[g][i][j] with e_i g = sum_j c_ij e_j
    consts = []
    for g in algebra.generators:
        consts.append([solve_left(E.basis, vecmat(e, g), fld) for e in E.basis])
    columns = []
    for (i, k) in unknowns:
        t = [[fld.zero] * n for _ in range(m)]
        t[i] = list(L.basis[k])
        col = []
        for g, c in zip(algebra.generators, consts):
            for i2 in range(m):
                v = list(vecmat(t[i2], g)) if any(t[i2]) else [fld.zero] * n
                for j in range(m):
                    if c[i2][j] and any(t[j]):
                        v = [a - c[i2][j] * b for a, b in zip(v, t[j])]
                col.extend(E.reduce(v))
        columns.append(col)
    if not columns:
        return []
    system = Matrix(list(zip(*columns)), fld, len(unknowns))
    sols = kernel(system)
    out = []
    for x in sols:
        imgs = [[fld.zero] * n for _ in range(m)]
        for (i, k), xv in zip(unknowns, x):
            if xv:
                imgs[i] = [a + xv * b for a, b in zip(imgs[i], L.basis[k])]
        out.append([tuple(v) for v in imgs])
    return out
