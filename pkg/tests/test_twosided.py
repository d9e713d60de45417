import pytest

from invgrass import Embedding, Matrix, Subspace
from invgrass.twosided import (
    ClassificationError,
    EmbeddingOrbit,
    TwoSidedStructure,
    build_V_lambda,
    classify,
    classify_product_point,
    companion_matrix,
    theorem612_check,
    validate_phi,
)

CERT = "x^2 + r*x + r^2"


@pytest.fixture(scope="module")
def V2(K, phi_r):
    return TwoSidedStructure(K, {"r": phi_r})


@pytest.fixture(scope="module")
def orbit(K, F):
    r, z = F.gen("r"), F.gen("z")
    return EmbeddingOrbit.from_embeddings(
        [Embedding(K, F, {"r": r * z}), Embedding(K, F, {"r": r * z**2})], name="V(l)"
    )


@pytest.fixture(scope="module")
def galois(QI):
    i = QI.gen("i")
    return TwoSidedStructure(QI, {"i": Matrix.scalar(QI, 2, -i)})


def test_validate_phi(V2, K, galois):
    assert validate_phi(V2).ok and V2.validated
    bad = TwoSidedStructure(K, {"r": Matrix([[0, 1], [1, 0]], K)})
    rep = validate_phi(bad)
    assert not rep.ok and rep.failures
    assert validate_phi(galois).ok


def test_validate_phi_k_central():
    from invgrass import make_tower

    L = make_tower([("r", "x^3 - 2"), ("z", "x^2 + x + 1")], base_marker=1)
    r, z = L.gen("r"), L.gen("z")
    good = TwoSidedStructure(L, {"r": Matrix.scalar(L, 1, r), "z": Matrix.scalar(L, 1, z**2)})
    assert validate_phi(good).ok
    bad = TwoSidedStructure(L, {"r": Matrix.scalar(L, 1, r * z), "z": Matrix.scalar(L, 1, z)})
    assert not validate_phi(bad).ok


def test_companion_matrix(K):
    r = K.gen("r")
    C = companion_matrix(K.parse_poly(CERT))
    assert C == Matrix([[0, -r**2], [1, -r]], K)
    with pytest.raises(ValueError):
        companion_matrix(K.parse_poly("2*x + 1"))


def test_orbit_data(orbit, K):
    assert orbit.size == 2
    assert orbit.minpoly_over_K == K.parse_poly(CERT)
    assert orbit.validate().ok


def test_orbit_incomplete(K, F):
    r, z = F.gen("r"), F.gen("z")
    with pytest.raises(ValueError):
        EmbeddingOrbit.from_embeddings([Embedding(K, F, {"r": r * z})])


def test_build_V_lambda_examples(orbit, K, QI):
    r, i = K.gen("r"), QI.gen("i")
    V = build_V_lambda(orbit)
    assert V.phi_images["r"] == Matrix([[0, -r**2], [1, -r]], K)
    central = EmbeddingOrbit.from_embeddings([Embedding(K, K, {"r": r})])
    assert build_V_lambda(central).phi_images["r"] == Matrix([[r]], K)
    twist = EmbeddingOrbit.from_embeddings([Embedding(QI, QI, {"i": -i})])
    assert twist.minpoly_over_K == QI.parse_poly("x + i")
    assert build_V_lambda(twist).phi_images["i"] == Matrix([[-i]], QI)


def test_round_trip(orbit, K, QI):
    r, i = K.gen("r"), QI.gen("i")
    orbits = [
        orbit,
        EmbeddingOrbit.from_embeddings([Embedding(K, K, {"r": r})]),
        EmbeddingOrbit.from_embeddings([Embedding(QI, QI, {"i": -i})]),
    ]
    for orb in orbits:
        cl = classify(build_V_lambda(orb), [orb.minpoly_over_K], {"S": orb})
        assert cl.rank.as_dict() == {"S": 1}
        assert cl.semisimple


def test_classify_examples(V2, orbit, galois, K):
    cl = classify(V2, [CERT], {"V(l)": orbit})
    assert cl.rank.as_dict() == {"V(l)": 2}
    assert len(cl.components) == 1 and cl.components[0].socle.dim == 4
    cl = classify(galois, ["x + i"])
    assert cl.rank.as_dict() == {"x + i": 2}
    r = K.gen("r")
    cl = classify(TwoSidedStructure(K, {"r": Matrix([[r]], K)}), ["x - r"])
    assert list(cl.rank.as_dict().values()) == [1]


def test_classify_errors(V2, K):
    with pytest.raises(ClassificationError):
        classify(V2, ["x - r"])
    with pytest.raises(ClassificationError):
        classify(V2, [CERT, CERT])
    bad = TwoSidedStructure(K, {"r": Matrix([[0, 1], [1, 0]], K)})
    with pytest.raises(ClassificationError):
        classify(bad, ["x - 1"])


def test_jordan_block_is_not_a_ring_map(K):
    # x^3 - 2 is separable, so a nilpotent part cannot satisfy it
    r = K.gen("r")
    V = TwoSidedStructure(K, {"r": Matrix([[r, 1], [0, r]], K)})
    with pytest.raises(ClassificationError):
        classify(V, ["x - r"])


def test_product_point_final_example(V2, orbit, F):
    z = F.gen("z")
    cl = classify(V2, [CERT], {"V(l)": orbit})
    M = Subspace.span([(1, z, 0, 0), (0, 0, 1, z**2)], F, 4)
    v = classify_product_point(cl, M, rank={"V(l)": 1})
    assert v.triple() == (True, True, True)
    Mp = Subspace.span([(1, z, 0, 0), (0, 0, 1, z)], F, 4)
    assert classify_product_point(cl, Mp).triple() == (True, False, False)


@pytest.fixture(scope="module")
def mixed(K):
    r = K.gen("r")
    blk = Matrix([[0, -r], [r, -r]], K)
    V = TwoSidedStructure(K, {"r": Matrix.block_diag([blk, Matrix([[r]], K)])})
    return classify(V, [CERT, "x - r"])


def test_product_point_mixed(mixed, K):
    line = Subspace.span([(0, 0, 1)], K, 3)
    v = classify_product_point(mixed, line, rank={"x - r": 1})
    assert v.triple() == (True, True, True)
    split = Subspace.span([(1, 0, 0), (0, 0, 1)], K, 3)
    v = classify_product_point(mixed, split)
    assert v.triple() == (False, False, False)
    assert v.reason.startswith("rank mismatch / empty functor")
    v = classify_product_point(mixed, line, rank={CERT: 1})
    assert v.reason.startswith("rank mismatch / empty functor")
    with pytest.raises(ClassificationError):
        classify_product_point(mixed, line, rank={"nope": 1})
    with pytest.raises(ClassificationError):
        classify_product_point(None, line)


def test_restricted_minpoly_check(V2, orbit, F, K, galois, QI):
    z, r = F.gen("z"), F.gen("r")
    M = Subspace.span([(1, z, 0, 0), (0, 0, 1, z**2)], F, 4)
    res = theorem612_check(V2, M, orbit)
    assert res.ok and res.restricted_minpoly == F.parse_poly("x^2 + r*x + r^2")
    Mp = Subspace.span([(1, z, 0, 0), (0, 0, 1, z)], F, 4)
    res = theorem612_check(V2, Mp, orbit)
    assert not res.ok
    assert res.restricted_minpoly.degree == 1 and res.restricted_minpoly(r * z) == 0
    with pytest.raises(ValueError):
        theorem612_check(V2, Subspace.span([(1, 0, 0, 0), (0, 0, 1, 0)], K, 4), orbit)
    line = Subspace.span([(1, 0)], QI, 2)
    assert theorem612_check(galois, line, QI.parse_poly("x + i")).ok
