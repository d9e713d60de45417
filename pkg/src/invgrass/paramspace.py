"""Field-point oracles for the F, G and H functors, tangent spaces, affine
charts and the finite-field brute-force oracle."""

import itertools
from dataclasses import dataclass, field as dc_field

from . import _kernels
from .exactla import DimensionError, Matrix, Subspace, kernel, vecmat
from .exterior import plucker, wedge_derivation, wedge_index
from .fieldtower import FieldTower, common_field, monomial_elements, validate_embedding
from .finitefield import PrimeField
from .modalg import f_tangent_space, generate_submodule, invariance_witness
from .wedgeinv import EXACT_ENUMERATION, SAMPLED, InvariantWedgeSpace, member

__all__ = [
    "PointVerdict",
    "ChartLocation",
    "TangentReport",
    "FFReport",
    "SeparationResult",
    "classify_point",
    "tangent_space",
    "chart_locate",
    "ff_enumerate",
    "gaussian_binomial",
    "find_separating_element",
    "MAX_ENUMERATION",
]

MAX_ENUMERATION = 100_000


@dataclass
class PointVerdict:
    is_F: bool
    is_G: bool
    g_provenance: str
    witnesses: dict = dc_field(default_factory=dict)
    reason: str = None

    @property
    def is_H(self):
        return self.is_F and self.is_G

    @property
    def honesty_flag(self):
        """A G-negative against a sampled lower bound may be a false negative."""
        return self.g_provenance == SAMPLED and not self.is_G

    def triple(self):
        return (self.is_F, self.is_G, self.is_H)

    def to_dict(self):
        out = {
            "is_F": self.is_F,
            "is_G": self.is_G,
            "is_H": self.is_H,
            "g_provenance": self.g_provenance,
            "honesty_flag": self.honesty_flag,
            "witnesses": self.witnesses,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


def _lift_algebra_field(M, algebra):
    return common_field([M.field, algebra.field])


def classify_point(M, algebra, wedge_space, inclusion=None):
    """F/G/H verdict for a subspace M over a field containing K."""
    m = wedge_space.index.m
    if M.dim != m:
        raise DimensionError(f"point has dimension {M.dim}, expected m = {m}")
    if M.ambient_dim != algebra.n:
        raise DimensionError("point and algebra live in different dimensions")
    witnesses = {}
    wit = invariance_witness(M, algebra)
    is_F = wit is None
    if not is_F:
        row, gen, img = wit
        witnesses["F"] = {"row": row, "generator": gen, "image": [str(x) for x in img]}
    w = plucker(M.basis, M.field, M.ambient_dim)
    is_G = member(w, wedge_space, inclusion)
    if not is_G:
        witnesses["G"] = _residual_summary(w, wedge_space)
    return PointVerdict(is_F, is_G, wedge_space.provenance, witnesses)


def _residual_summary(w, wedge_space):
    basis = wedge_space.basis
    fld = w.field if basis.field.is_prefix_of(w.field) else basis.field
    lifted = basis.lift(fld) if fld is not basis.field else basis
    resid = lifted.reduce([fld(c) for c in w.coeffs])
    labels = wedge_space.index.labels()
    return {"residual": {lab: str(c) for lab, c in zip(labels, resid) if c}}


@dataclass
class TangentReport:
    E: Subspace
    L: Subspace
    dim_G: int
    dim_F: int
    basis_G: list
    basis_F: list
    derivations: list

    def to_dict(self):
        return {
            "E": self.E.to_strings(),
            "L": self.L.to_strings(),
            "dim_G": self.dim_G,
            "dim_F": self.dim_F,
            "basis_G": [[[str(x) for x in v] for v in psi] for psi in self.basis_G],
            "basis_F": [[[str(x) for x in v] for v in psi] for psi in self.basis_F],
        }


def tangent_space(E, algebra, wedge_space):
    """Tangent data at a K-point E: psi in Hom(E, L) with d(psi) in the
    invariant wedge span, and the dual-number invariant tangent space."""
    m = E.dim
    if wedge_space.index.m != m or wedge_space.index.n != E.ambient_dim:
        raise DimensionError("tangent point and wedge space have different (n, m)")
    if not member(plucker(E.basis, E.field, E.ambient_dim), wedge_space):
        raise ValueError("E is not generated by A-invariants")
    L = E.complement()
    fld = common_field([E.field, wedge_space.field, algebra.field])
    n = E.ambient_dim
    N = len(wedge_space.index)
    W = wedge_space.basis.lift(fld) if wedge_space.field is not fld else wedge_space.basis
    # linear functionals vanishing exactly on W
    if W.dim:
        annihilator = kernel(Matrix(W.basis, fld, N))
    else:
        annihilator = [tuple(fld.one if j == i else fld.zero for j in range(N)) for i in range(N)]
    unknowns = [(i, k) for i in range(m) for k in range(L.dim)]
    derivs = []
    for i, k in unknowns:
        imgs = [[fld.zero] * n for _ in range(m)]
        imgs[i] = list(L.basis[k])
        derivs.append(wedge_derivation(E.basis, imgs, fld))
    rows = [[sum((c * d.coeffs[j] for j, c in enumerate(a) if c), fld.zero) for d in derivs] for a in annihilator]
    if unknowns and rows:
        sols = kernel(Matrix(rows, fld, len(unknowns)))
    else:
        sols = [tuple(fld.one if j == i else fld.zero for j in range(len(unknowns))) for i in range(len(unknowns))]
    basis_G = []
    for x in sols:
        imgs = [[fld.zero] * n for _ in range(m)]
        for (i, k), xv in zip(unknowns, x):
            if xv:
                imgs[i] = [a + xv * b for a, b in zip(imgs[i], L.basis[k])]
        basis_G.append([tuple(v) for v in imgs])
    derivations = [wedge_derivation(E.basis, psi, fld) for psi in basis_G]
    for d in derivations:
        if not member(d, wedge_space):
            raise AssertionError("tangent solution left the invariant wedge span")
    basis_F = f_tangent_space(E, algebra, L)
    return TangentReport(E, L, len(basis_G), len(basis_F), basis_G, basis_F, derivations)


@dataclass
class ChartLocation:
    chart_index: int
    coords: tuple
    generator: tuple

    def to_dict(self):
        return {
            "chart": self.chart_index,
            "coords": [str(c) for c in self.coords],
            "generator": [str(c) for c in self.generator],
        }


def chart_locate(M, algebra, l=None):
    """Smallest chart whose coordinate block of M is invertible, or None.

    The principal generator is the basis row whose i-th block is
    (1, 0, ..., 0) after normalizing that block to the identity; it must
    regenerate M, otherwise the chart does not apply and the next one is
    tried.
    """
    m = M.dim
    n = M.ambient_dim
    if m == 0:
        return None
    if l is None:
        if n % m:
            raise DimensionError(f"n = {n} is not a multiple of m = {m}")
        l = n // m
    if l * m != n:
        raise DimensionError("block structure does not match the ambient dimension")
    B = M.matrix()
    for i in range(1, l + 1):
        cols = list(range((i - 1) * m, i * m))
        block = B.submatrix(cols=cols)
        if not block.det():
            continue
        normalized = block.inverse() @ B
        f = tuple(normalized.rows[0])
        coords = tuple(x for j, x in enumerate(f) if j not in cols)
        if generate_submodule([f], algebra, M.field) != M:
            continue
        return ChartLocation(i, coords, f)
    return None


def gaussian_binomial(n, m, q):
    num = den = 1
    for i in range(m):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _rref_shapes(n, m, p):
    """All m x n RREF matrices over F_p, as integer row lists."""
    for pivots in itertools.combinations(range(n), m):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
        for values in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(m)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield rows, list(pivots)


@dataclass
class FFReport:
    p: int
    n: int
    m: int
    total: int
    f_points: list
    g_points: list
    wedge: InvariantWedgeSpace
    chart_failures: list
    backend: str

    @property
    def all_charted(self):
        return not self.chart_failures

    @property
    def g_equals_f(self):
        return self.g_points == self.f_points

    def subspaces(self, which="F"):
        pts = self.f_points if which == "F" else self.g_points
        fld = PrimeField(self.p)
        return [Subspace(fld, self.n, [[fld(x) for x in r] for r in rows], piv) for rows, piv in pts]

    def to_dict(self):
        return {
            "p": self.p,
            "n": self.n,
            "m": self.m,
            "subspaces": self.total,
            "f_points": len(self.f_points),
            "g_points": len(self.g_points),
            "g_equals_f": self.g_equals_f,
            "wedge_dimension": self.wedge.dim,
            "wedge_provenance": self.wedge.provenance,
            "chart_coverage": None if self.chart_failures is None else not self.chart_failures,
            "invariant_subspaces": [[list(map(str, r)) for r in s.basis] for s in self.subspaces("F")],
        }


def ff_enumerate(algebra, m, charts=True):
    """Exhaustive oracle over a prime field: every m-subspace is tested."""
    field = algebra.field
    if not isinstance(field, PrimeField):
        raise TypeError("ff_enumerate needs an algebra over a prime field")
    p, n = field.p, algebra.n
    idx = wedge_index(n, m)
    total = gaussian_binomial(n, m, p) if m <= n else 0
    if total > MAX_ENUMERATION:
        raise ValueError(f"{total} subspaces exceed the enumeration limit {MAX_ENUMERATION}")
    gens = [[[int(x) for x in row] for row in g.rows] for g in algebra.generators]
    f_points = []
    pl = []
    everything = []
    for rows, piv in (_rref_shapes(n, m, p) if m <= n else ()):
        w = _kernels.plucker_mod(rows, idx.subsets, p)
        everything.append((rows, piv, w))
        if _kernels.is_invariant_mod(rows, piv, gens, p):
            f_points.append((rows, piv))
            pl.append(w)
    span_rows, span_piv = _kernels.rref_mod(pl, len(idx), p) if pl else ([], [])
    g_points = [
        (rows, piv)
        for rows, piv, w in everything
        if not any(_kernels.reduce_mod(span_rows, span_piv, w, p))
    ]
    certs = [Subspace(field, n, [[field(x) for x in r] for r in rows], piv) for rows, piv in f_points]
    basis = Subspace(field, len(idx), [[field(x) for x in r] for r in span_rows], span_piv)
    wedge = InvariantWedgeSpace(idx, basis, EXACT_ENUMERATION, algebra, certs)
    chart_failures = None
    if charts and m and n % m == 0:
        chart_failures = [c for c in certs if chart_locate(c, algebra) is None]
    return FFReport(p, n, m, total, f_points, g_points, wedge, chart_failures, _kernels.BACKEND)


@dataclass
class SeparationResult:
    a: object
    lhs: object
    rhs: object
    b: object
    c: object

    def to_dict(self):
        return {k: str(getattr(self, k)) for k in ("a", "lhs", "rhs", "b", "c")}


def _same_multiset(xs, ys):
    ys = list(ys)
    for x in xs:
        for j, y in enumerate(ys):
            if x == y:
                del ys[j]
                break
        else:
            return False
    return not ys


def _candidates(K):
    monos = monomial_elements(K)
    yield from monos
    for x, y in itertools.combinations(monos[1:], 2):
        yield x + y


def find_separating_element(embeddings, multiset):
    """Element a of K with prod_j l_j(a) != prod_j l_{i_j}(a).

    ``multiset`` lists 1-based indices into ``embeddings`` and must repeat
    some index.  The search fixes b with differing multisets of images,
    then scans c = 0, 1, 2, ... in the base field for a nonzero of
    prod (c - l_j(b)) - prod (c - l_{i_j}(b)), returning a = c - b.
    """
    embeddings = list(embeddings)
    multiset = list(multiset)
    m = len(embeddings)
    if len(multiset) != m:
        raise ValueError(f"multiset has {len(multiset)} entries, expected {m}")
    if any(not 1 <= i <= m for i in multiset):
        raise ValueError("multiset indices are 1-based embedding positions")
    if len(set(multiset)) == m:
        raise ValueError("multiset has no repetition; the products agree for every a")
    for e in embeddings:
        rep = validate_embedding(e)
        if not rep.ok:
            raise ValueError(f"invalid embedding {e!r}: {rep.failures}")
    K = embeddings[0].source
    F = embeddings[0].target
    if any(e.source != K or e.target != F for e in embeddings):
        raise ValueError("embeddings must share source and target")
    for x, y in itertools.combinations(embeddings, 2):
        if all(x.images[s] == y.images[s] for s in K.symbols):
            raise ValueError("embeddings are not distinct")
    chosen = [embeddings[i - 1] for i in multiset]
    for b in _candidates(K):
        left = [e(b) for e in embeddings]
        right = [e(b) for e in chosen]
        if _same_multiset(left, right):
            continue
        for c in range(10 * m):
            a = K(c) - b
            lhs = _product(e(a) for e in embeddings)
            rhs = _product(e(a) for e in chosen)
            if lhs != rhs:
                return SeparationResult(a, lhs, rhs, b, K(c))
    raise ValueError("no separating element found within the scan budget")


def _product(xs):
    out = None
    for x in xs:
        out = x if out is None else out * x
    return out
