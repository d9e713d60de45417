"""Two-sided vector spaces K^n_phi: K acts on the left by scalars and on the
right through a ring map phi: K -> M_n(K).

phi is given by the images of the tower generators.  Classification follows
the embedding-orbit picture: the simple objects are V(lambda), realized over
K by the companion matrix of the minimal polynomial of lambda(g) over K.
"""

from dataclasses import dataclass, field as dc_field

from .exactla import DimensionError, Matrix, Subspace, left_kernel, solve_left, vecmat
from .fieldtower import FieldTower, ValidationReport, common_field, minpoly_over, validate_embedding
from .modalg import MatrixAlgebra, invariance_witness, matrix_minpoly
from .paramspace import PointVerdict, classify_point
from .poly import Polynomial
from .wedgeinv import (
    EXACT_CHART_GRID,
    SAMPLED,
    InvariantWedgeSpace,
    lambda_A_chart_grid,
    lambda_A_sampled,
)
from .exterior import wedge_index

__all__ = [
    "TwoSidedStructure",
    "EmbeddingOrbit",
    "RankVector",
    "Component",
    "Classification",
    "Theorem612Result",
    "ClassificationError",
    "companion_matrix",
    "validate_phi",
    "build_V_lambda",
    "classify",
    "classify_product_point",
    "theorem612_check",
]


class ClassificationError(ValueError):
    pass


def companion_matrix(poly):
    """Companion matrix of a monic polynomial: ones on the subdiagonal and
    the negated low coefficients in the last column."""
    if not poly.is_monic():
        raise ValueError(f"companion matrix of a non-monic polynomial {poly}")
    d = poly.degree
    F = poly.field
    rows = [[F.zero] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = F.one
    for i in range(d):
        rows[i][d - 1] = -poly.coeffs[i]
    return Matrix(rows, F, d)


class TwoSidedStructure:
    def __init__(self, field, phi_images, name=None):
        self.field = field
        imgs = {}
        for sym, mat in phi_images.items():
            if sym not in field.symbols:
                raise ValueError(f"phi given on unknown generator {sym!r}")
            imgs[sym] = (mat if isinstance(mat, Matrix) else Matrix(mat, field)).lift(field)
        missing = [s for s in field.symbols if s not in imgs]
        if missing:
            raise ValueError(f"phi image missing for generator(s) {', '.join(missing)}")
        shapes = {m.shape for m in imgs.values()}
        if len(shapes) != 1 or any(a != b for a, b in shapes):
            raise DimensionError(f"phi images must be square of one size, got {sorted(shapes)}")
        self.phi_images = imgs
        self.n = next(iter(shapes))[0] if shapes else 1
        self.validated = False
        self.name = name

    def __repr__(self):
        return f"TwoSidedStructure(n={self.n}, field={self.field!r})"

    def phi(self, x):
        """phi(x) for any element x of K, by multiplicativity."""
        x = self.field(x)
        n = self.n
        cache = {s: [Matrix.identity(self.field, n)] for s in self.field.symbols}
        total = Matrix.zeros(self.field, n, n)
        for c, mono in zip(x.coeffs, self.field.monomials):
            if not c:
                continue
            term = Matrix.scalar(self.field, n, self.field(c))
            for sym, e in zip(self.field.symbols, mono):
                pw = cache[sym]
                while len(pw) <= e:
                    pw.append(pw[-1] @ self.phi_images[sym])
                if e:
                    term = term @ pw[e]
            total = total + term
        return total

    @property
    def top_symbols(self):
        """Generators above the base subfield k."""
        return self.field.symbols[self.field.base_marker:]

    def primitive_symbol(self):
        top = self.top_symbols
        if len(top) != 1:
            raise ClassificationError(
                "classification needs K = k(g) for a single generator g above the base field"
            )
        return top[0]

    def algebra(self):
        """im phi as a matrix algebra (generated by the phi-images)."""
        return MatrixAlgebra([self.phi_images[s] for s in self.field.symbols], self.field, name=self.name)

    def describe(self):
        return {s: m.to_strings() for s, m in self.phi_images.items()}


def validate_phi(V):
    """Ring-homomorphism and k-centrality certificate for phi."""
    K = V.field
    failures = []
    n = V.n
    for level, (sym, poly) in enumerate(zip(K.symbols, K.minpolys)):
        lower = K.prefix(level)
        g = V.phi_images[sym]
        acc = Matrix.zeros(K, n, n)
        power = Matrix.identity(K, n)
        for c in poly.coeffs:
            if c:
                acc = acc + V.phi(K(lower(c))) @ power
            power = power @ g
        if not acc.is_zero():
            failures.append(f"minimal polynomial of {sym} does not annihilate phi({sym})")
        for other in K.symbols[:level]:
            if not g.commutes_with(V.phi_images[other]):
                failures.append(f"phi({sym}) and phi({other}) do not commute")
    for sym in K.symbols[: K.base_marker]:
        if V.phi_images[sym] != Matrix.scalar(K, n, K.gen(sym)):
            failures.append(f"phi is not k-central: phi({sym}) != {sym}*I")
    V.validated = not failures
    return ValidationReport(not failures, failures)


@dataclass
class EmbeddingOrbit:
    members: list
    minpoly_over_K: Polynomial
    name: str = None

    @classmethod
    def from_embeddings(cls, members, name=None):
        members = list(members)
        if not members:
            raise ValueError("an orbit needs at least one embedding")
        K = members[0].source
        F = members[0].target
        if not K.is_prefix_of(F):
            raise ValueError("orbit target must contain K as a tower prefix")
        for e in members:
            rep = validate_embedding(e)
            if not rep.ok:
                raise ValueError(f"invalid embedding {e!r}: {'; '.join(rep.failures)}")
        sym = K.symbols[K.base_marker:]
        if len(sym) != 1:
            raise ClassificationError("orbits need K = k(g) for a single generator g")
        poly = minpoly_over(members[0].images[sym[0]], K)
        orbit = cls(members, poly, name)
        rep = orbit.validate()
        if not rep.ok:
            raise ValueError("; ".join(rep.failures))
        return orbit

    @property
    def size(self):
        return len(self.members)

    @property
    def source(self):
        return self.members[0].source

    def validate(self):
        failures = []
        K = self.source
        sym = K.symbols[K.base_marker]
        for e in self.members:
            if self.minpoly_over_K(e.images[sym]):
                failures.append(f"{e!r} is not a root of {self.minpoly_over_K}")
        if len(self.members) != self.minpoly_over_K.degree:
            failures.append(
                f"orbit has {len(self.members)} members but its minimal polynomial has degree "
                f"{self.minpoly_over_K.degree}"
            )
        imgs = [e.images[sym] for e in self.members]
        if any(imgs[i] == imgs[j] for i in range(len(imgs)) for j in range(i)):
            failures.append("orbit members repeat")
        return ValidationReport(not failures, failures)

    def label(self):
        return self.name or str(self.minpoly_over_K)


def build_V_lambda(orbit):
    """The simple two-sided space attached to an orbit, over K."""
    K = orbit.source
    sym = K.symbols[K.base_marker]
    poly = orbit.minpoly_over_K.map_coeffs(K, K)
    comp = companion_matrix(poly)
    images = {s: Matrix.scalar(K, comp.nrows, K.gen(s)) for s in K.symbols[: K.base_marker]}
    images[sym] = comp
    V = TwoSidedStructure(K, images, name=orbit.label())
    rep = validate_phi(V)
    if not rep.ok:
        raise ClassificationError("; ".join(rep.failures))
    return V


@dataclass
class RankVector:
    terms: list

    def as_dict(self):
        return {k: v for k, v in self.terms}

    def to_dict(self):
        return [{"simple": k, "multiplicity": v} for k, v in self.terms]


@dataclass
class Component:
    certificate: Polynomial
    label: str
    degree: int
    exponent: int
    socle: Subspace
    generalized: Subspace

    @property
    def dimension(self):
        return self.socle.dim

    @property
    def multiplicity(self):
        return self.socle.dim // self.degree

    def to_dict(self):
        return {
            "simple": self.label,
            "certificate": str(self.certificate),
            "degree": self.degree,
            "dimension": self.dimension,
            "multiplicity": self.multiplicity,
            "generalized_dimension": self.generalized.dim,
            "basis": self.socle.to_strings(),
        }


@dataclass
class Classification:
    structure: TwoSidedStructure
    rank: RankVector
    components: list
    semisimple: bool
    socle: Subspace
    complement: Subspace
    minpoly: Polynomial

    def to_dict(self):
        return {
            "rank": self.rank.to_dict(),
            "semisimple": self.semisimple,
            "minpoly": str(self.minpoly),
            "components": [c.to_dict() for c in self.components],
            "socle_dimension": self.socle.dim,
            "complement": self.complement.to_strings(),
        }


def _poly_at_matrix(poly, T):
    n = T.nrows
    acc = Matrix.zeros(T.field, n, n)
    for c in reversed(poly.coeffs):
        acc = acc @ T + Matrix.scalar(T.field, n, T.field(c))
    return acc


def _exact_power(mp, p):
    e = 0
    q = mp
    while q.degree >= p.degree:
        quo, rem = divmod(q, p)
        if rem:
            break
        q = quo
        e += 1
    return e


def classify(V, certificates, orbits=None):
    """Homogeneous decomposition and rank vector of a two-sided space.

    ``certificates`` are the irreducible factors of the minimal polynomial
    of phi(g) over K (pairwise coprime, supplied by the user).  ``orbits``
    optionally names the simples: any orbit whose minimal polynomial equals
    a certificate lends it its label.
    """
    if not V.validated:
        rep = validate_phi(V)
        if not rep.ok:
            raise ClassificationError("phi failed validation: " + "; ".join(rep.failures))
    K = V.field
    sym = V.primitive_symbol()
    T = V.phi_images[sym]
    mp = matrix_minpoly(T)
    certs = [c if isinstance(c, Polynomial) else K.parse_poly(c) for c in certificates]
    certs = [c.map_coeffs(K, K) if c.field is not K else c for c in certs]
    if not certs:
        raise ClassificationError("at least one certificate factor is required")
    for c in certs:
        if not c.is_monic() or c.degree < 1:
            raise ClassificationError(f"certificate {c} must be monic of positive degree")
    for i in range(len(certs)):
        for j in range(i):
            if Polynomial.gcd(certs[i], certs[j]).degree > 0:
                raise ClassificationError(f"certificates {certs[j]} and {certs[i]} are not coprime")
    product = Polynomial.constant(K, K.one)
    for c in certs:
        product = product * c
    exps = [_exact_power(mp, c) for c in certs]
    if any(e == 0 for e in exps):
        bad = [str(c) for c, e in zip(certs, exps) if e == 0]
        raise ClassificationError(f"certificate product mismatch: {', '.join(bad)} does not divide {mp}")
    rebuilt = Polynomial.constant(K, K.one)
    for c, e in zip(certs, exps):
        rebuilt = rebuilt * c ** e
    if rebuilt != mp:
        raise ClassificationError(f"certificate product mismatch: factors do not account for {mp}")
    labels = {}
    for name, orb in (orbits or {}).items():
        labels[str(orb.minpoly_over_K.map_coeffs(K, K))] = name
    components = []
    for c, e in zip(certs, exps):
        socle = Subspace.span(left_kernel(_poly_at_matrix(c, T)), K, V.n)
        gen = socle if e == 1 else Subspace.span(left_kernel(_poly_at_matrix(c ** e, T)), K, V.n)
        if socle.dim % c.degree:
            raise ClassificationError(
                f"component for {c} has dimension {socle.dim}, not divisible by {c.degree}; "
                "the certificate is probably reducible"
            )
        components.append(Component(c, labels.get(str(c), str(c)), c.degree, e, socle, gen))
    socle = Subspace.span([r for comp in components for r in comp.socle.basis], K, V.n)
    rank = RankVector([(comp.label, comp.multiplicity) for comp in components])
    return Classification(V, rank, components, mp == product, socle, socle.complement(), mp)


def _cyclic_basis(component, T):
    """Basis of a semisimple homogeneous component made of blocks
    (v, vT, ..., vT^(d-1)), one block per simple summand."""
    d = component.degree
    rows = []
    span = Subspace.zero(component.socle.field, component.socle.ambient_dim)
    for v in component.socle.basis:
        if v in span:
            continue
        block = [tuple(v)]
        for _ in range(d - 1):
            block.append(vecmat(block[-1], T))
        rows.extend(block)
        span = Subspace.span(rows, component.socle.field, component.socle.ambient_dim)
    return rows


def _coordinates(rows, vectors):
    out = []
    for v in vectors:
        c = solve_left(rows, v)
        if c is None:
            return None
        out.append(tuple(c))
    return out


def _component_wedge(alg, m, degree, seed):
    """Invariant wedge space of a homogeneous component in cyclic coordinates.

    Exact when M meets the component in nothing, everything, or one simple;
    other multiplicities fall back to sampling.
    """
    n = alg.n
    if m == 0 or m == n:
        idx = wedge_index(n, m)
        return InvariantWedgeSpace(idx, Subspace.whole(alg.field, 1), EXACT_CHART_GRID, alg)
    if m == degree:
        return lambda_A_chart_grid(alg, m)
    return lambda_A_sampled(alg, m, seed=seed)


def classify_product_point(classification, M, rank=None, seed=0):
    """F/G/H verdict for M against the product of per-component functors.

    ``rank`` optionally fixes the multiplicities {label: q} of the expected
    two-sided rank; otherwise they are read off from M.
    """
    if classification is None:
        raise ClassificationError("classify the two-sided space first")
    V = classification.structure
    T = V.phi_images[V.primitive_symbol()]
    F = common_field([M.field, V.field])
    expected = dict(rank or {})
    unknown = set(expected) - {c.label for c in classification.components}
    if unknown:
        raise ClassificationError(f"rank refers to unknown simple(s): {', '.join(sorted(unknown))}")
    parts = []
    for comp in classification.components:
        Mj = M.intersect(comp.socle.lift(F))
        parts.append((comp, Mj))
    empty_reason = None
    if sum(Mj.dim for _, Mj in parts) != M.dim:
        empty_reason = "rank mismatch / empty functor: M does not split along the homogeneous components"
    else:
        for comp, Mj in parts:
            q = expected.get(comp.label) if rank is not None else None
            if rank is not None and q is None:
                q = 0
            if Mj.dim % comp.degree or (q is not None and Mj.dim != q * comp.degree):
                empty_reason = (
                    f"rank mismatch / empty functor: component {comp.label} meets M in dimension "
                    f"{Mj.dim}"
                )
                break
    if empty_reason:
        return PointVerdict(False, False, EXACT_CHART_GRID, {"components": [Mj.dim for _, Mj in parts]}, empty_reason)
    is_F = is_G = True
    provenance = EXACT_CHART_GRID
    details = []
    for comp, Mj in parts:
        rows = _cyclic_basis(comp, T)
        n_j = len(rows)
        sub_alg = MatrixAlgebra([_restricted(rows, g) for g in V.algebra().generators], V.field)
        coords = _coordinates([tuple(F(x) for x in r) for r in rows], Mj.basis)
        Mj_local = Subspace.span(coords, F, n_j) if coords else Subspace.zero(F, n_j)
        W = _component_wedge(sub_alg, Mj.dim, comp.degree, seed)
        verdict = classify_point(Mj_local, sub_alg, W)
        is_F = is_F and verdict.is_F
        is_G = is_G and verdict.is_G
        if W.provenance == SAMPLED:
            provenance = SAMPLED
        details.append({
            "simple": comp.label,
            "q": Mj.dim // comp.degree,
            "dimension": Mj.dim,
            "verdict": verdict.to_dict(),
        })
    return PointVerdict(is_F, is_G, provenance, {"components": details})


def _restricted(rows, g):
    """Matrix of the right action of g on the span of ``rows``."""
    out = []
    for r in rows:
        c = solve_left(rows, vecmat(r, g))
        if c is None:
            raise ClassificationError("component basis is not invariant")
        out.append(c)
    return Matrix(out, g.field, len(rows))


@dataclass
class Theorem612Result:
    ok: bool
    restricted_minpoly: Polynomial
    expected: Polynomial
    notes: list = dc_field(default_factory=list)

    def to_dict(self):
        return {
            "ok": self.ok,
            "restricted_minpoly": str(self.restricted_minpoly),
            "expected": str(self.expected),
            "notes": list(self.notes),
        }


def theorem612_check(V, M, simple):
    """Does the right action of the primitive generator on M have the full
    orbit minimal polynomial of the simple ``simple``?

    ``simple`` is an EmbeddingOrbit or its minimal polynomial over K.
    """
    sym = V.primitive_symbol()
    g = V.phi_images[sym]
    alg = MatrixAlgebra([g], V.field)
    if invariance_witness(M, alg) is not None:
        raise ValueError("M is not invariant; the restricted action is not defined")
    F = common_field([M.field, V.field])
    expected = simple.minpoly_over_K if isinstance(simple, EmbeddingOrbit) else simple
    expected_F = expected.map_coeffs(F, F)
    R = _restricted([tuple(F(x) for x in r) for r in M.basis], g.lift(F))
    mp = matrix_minpoly(R)
    notes = []
    K = V.field
    if isinstance(K, FieldTower):
        notes.append("k is infinite and K is perfect (characteristic 0)")
    ok = mp == expected_F and M.dim == expected.degree
    return Theorem612Result(ok, mp, expected_F, notes)
