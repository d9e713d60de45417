"""The span of Plücker vectors of invariant subspaces.

Three constructions are offered:

* chart grid: exact in the homogeneous semisimple setting K^n = S^l with
  dim S = m.  Every invariant m-subspace is generated by one vector whose
  i-th block is (1, 0, ..., 0); the Plücker coordinates of that module are
  polynomials of degree <= m in the remaining lm - m entries, so evaluating
  on an (m+1)-point grid per parameter already spans everything.
* sampling: a lower bound for arbitrary algebras.
* exhaustive enumeration over a prime field (see :mod:`paramspace`).
"""

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .exactla import DimensionError, Subspace, vecmat
from .exterior import WedgeVector, plucker, wedge, wedge_index
from .fieldtower import FieldTower, TowerError, common_field
from .modalg import generate_submodule

__all__ = [
    "EXACT_CHART_GRID",
    "SAMPLED",
    "EXACT_ENUMERATION",
    "ChartGridError",
    "InvariantWedgeSpace",
    "lambda_A_chart_grid",
    "lambda_A_sampled",
    "prop43_generator",
    "member",
    "chart_generator",
    "grid_values",
]

EXACT_CHART_GRID = "exact_chart_grid"
SAMPLED = "sampled_lower_bound"
EXACT_ENUMERATION = "exact_enumeration"

MAX_GRID_POINTS = 200_000


class ChartGridError(ValueError):
    """A chart module did not have the expected dimension."""


@dataclass
class InvariantWedgeSpace:
    index: object
    basis: Subspace
    provenance: str
    algebra: object = None
    certificates: list = dc_field(default_factory=list)
    skipped: int = 0
    seed: int = None
    rounds: int = None

    @property
    def dim(self):
        return self.basis.dim

    @property
    def field(self):
        return self.basis.field

    @property
    def exact(self):
        return self.provenance != SAMPLED

    def certificate_pluckers(self):
        return [plucker(c.basis, c.field, c.ambient_dim) for c in self.certificates]

    def basis_vectors(self):
        return [WedgeVector(self.index, row, self.basis.field) for row in self.basis.basis]

    def report(self):
        out = {
            "provenance": self.provenance,
            "n": self.index.n,
            "m": self.index.m,
            "dimension": self.dim,
            "certificates": len(self.certificates),
            "skipped_grid_points": self.skipped,
            "basis": self.basis.to_strings(),
            "labels": self.index.labels(),
        }
        if self.provenance == SAMPLED:
            out["seed"] = self.seed
            out["rounds"] = self.rounds
        return out


class _SpanBuilder:
    """Incrementally grown span keeping the certificates that enlarged it."""

    def __init__(self, field, n, m):
        self.index = wedge_index(n, m)
        self.field = field
        self.span = Subspace.zero(field, len(self.index))
        self.certificates = []

    def offer(self, module):
        w = plucker(module.basis, module.field, module.ambient_dim)
        if w.coeffs in self.span:
            return False
        fld = common_field([self.span.field, w.field])
        self.span = Subspace.span(list(self.span.basis) + [w.coeffs], fld, len(self.index))
        self.certificates.append(module)
        return True

    @property
    def full(self):
        return self.span.dim == len(self.index)


def grid_values(field, m):
    """m + 1 distinct parameter values, or every element of a small field."""
    if getattr(field, "is_finite", False) and field.order <= m + 1:
        return field.elements()
    return [field(v) for v in range(m + 1)]


def chart_generator(i, params, m, field):
    """The chart-i generator: parameters around a (1, 0, ..., 0) block i (1-based)."""
    lead = [field.one] + [field.zero] * (m - 1)
    params = list(params)
    cut = (i - 1) * m
    return tuple(params[:cut] + lead + params[cut:])


def lambda_A_chart_grid(algebra, m, l=None, strict=True):
    """Exact span of Plücker vectors of invariant m-subspaces when
    K^n = S^l with dim S = m, blocks aligned with the coordinates."""
    n = algebra.n
    field = algebra.field
    if m == 0:
        idx = wedge_index(n, 0)
        basis = Subspace.span([(field.one,)], field, 1)
        return InvariantWedgeSpace(idx, basis, EXACT_CHART_GRID, algebra)
    if l is None:
        if n % m:
            raise DimensionError(f"n = {n} is not a multiple of m = {m}")
        l = n // m
    if l * m != n:
        raise DimensionError(f"l * m = {l * m} does not match n = {n}")
    values = grid_values(field, m)
    nparams = l * m - m
    npoints = l * len(values) ** nparams
    if npoints > MAX_GRID_POINTS:
        raise ChartGridError(f"chart grid has {npoints} points (limit {MAX_GRID_POINTS})")
    builder = _SpanBuilder(field, n, m)
    skipped = 0
    for i in range(1, l + 1):
        for params in itertools.product(values, repeat=nparams):
            f = chart_generator(i, params, m, field)
            module = generate_submodule([f], algebra)
            if module.dim != m:
                skipped += 1
                continue
            builder.offer(module)
    if skipped and strict:
        raise ChartGridError(
            f"{skipped} chart point(s) generated modules of dimension != {m}; "
            "K^n is not S-homogeneous semisimple with dim S = m in these coordinates"
        )
    provenance = EXACT_CHART_GRID if not skipped else SAMPLED
    return InvariantWedgeSpace(
        builder.index, builder.span, provenance, algebra, builder.certificates, skipped
    )


def _random_vector(rng, field, n):
    if isinstance(field, FieldTower):
        return tuple(field.random_element(rng, -3, 3) for _ in range(n))
    return tuple(field.random_element(rng) for _ in range(n))


def _structured_candidates(n, m, field):
    units = [tuple(field.one if j == i else field.zero for j in range(n)) for i in range(n)]
    for u in units:
        yield [u]
    for size in range(2, m + 1):
        for combo in itertools.combinations(units, size):
            yield list(combo)


def lambda_A_sampled(algebra, m, seed=0, rounds=8, max_attempts=5000):
    """Lower bound for the invariant wedge span by random closure."""
    n = algebra.n
    field = algebra.field
    idx = wedge_index(n, m)
    if m == 0:
        basis = Subspace.span([(field.one,)], field, 1)
        return InvariantWedgeSpace(idx, basis, SAMPLED, algebra, seed=seed, rounds=rounds)
    if m > n:
        return InvariantWedgeSpace(idx, Subspace.zero(field, 0), SAMPLED, algebra, seed=seed, rounds=rounds)
    rng = random.Random(seed)
    builder = _SpanBuilder(field, n, m)
    for vecs in _structured_candidates(n, m, field):
        module = generate_submodule(vecs, algebra)
        if module.dim == m:
            builder.offer(module)
    stale = 0
    attempts = 0
    while stale < rounds and attempts < max_attempts and not builder.full:
        attempts += 1
        t = rng.randint(1, m)
        vecs = [_random_vector(rng, field, n) for _ in range(t)]
        module = generate_submodule(vecs, algebra)
        if module.dim == m and builder.offer(module):
            stale = 0
        else:
            stale += 1
    return InvariantWedgeSpace(
        idx, builder.span, SAMPLED, algebra, builder.certificates, seed=seed, rounds=rounds
    )


def prop43_generator(ws, elements, counts):
    """Symmetrized wedge sum over all arrangements of a multiset.

    ``ws`` are r vectors, ``elements`` are m algebra elements (matrices) and
    ``counts`` gives the multiplicity of each w; the result is the sum over
    all distinct sequences (s_1..s_m) with that multiset of
    ``w_{s_1} a_1 ^ ... ^ w_{s_m} a_m``.
    """
    ws = [tuple(w) for w in ws]
    counts = list(counts)
    if len(counts) != len(ws):
        raise ValueError("one count per vector w is required")
    if any((not isinstance(c, int)) or c < 0 for c in counts):
        raise ValueError("counts must be non-negative integers")
    m = len(elements)
    if sum(counts) != m:
        raise ValueError(f"counts sum to {sum(counts)}, expected m = {m}")
    if not ws:
        raise ValueError("at least one vector w is required")
    multiset = [s for s, c in enumerate(counts) for _ in range(c)]
    seqs = sorted(set(itertools.permutations(multiset)))
    n = len(ws[0])
    total = None
    for seq in seqs:
        vecs = [vecmat(ws[s], a) for s, a in zip(seq, elements)]
        term = wedge(vecs, None, n)
        total = term if total is None else total + term
    return total


def member(w, space, inclusion=None):
    """Is ``w`` in the span of ``space`` extended to w's field?"""
    if w.index != space.index:
        raise DimensionError("wedge vector and wedge space have different (n, m)")
    basis = space.basis
    wf = w.field
    if basis.field is wf or basis.field == wf:
        lifted = basis
    elif isinstance(wf, FieldTower) and basis.field.is_prefix_of(wf):
        lifted = basis.lift(wf)
    elif inclusion is not None:
        rows = [[inclusion(x) for x in r] for r in basis.basis]
        lifted = Subspace(wf, basis.ambient_dim, rows, basis.pivots)
    elif isinstance(wf, FieldTower) and wf.is_prefix_of(basis.field):
        return tuple(basis.field(c) for c in w.coeffs) in basis
    else:
        raise TowerError("wedge vector field does not contain the wedge space field; pass an inclusion")
    return w.coeffs in lifted
