import random

import pytest
from hypothesis import given, strategies as st

from invgrass import (
    Embedding,
    Matrix,
    MatrixAlgebra,
    Subspace,
    generate_submodule,
    is_invariant,
    lambda_A_chart_grid,
    plucker,
)
from invgrass.finitefield import PrimeField
from invgrass.paramspace import (
    chart_locate,
    classify_point,
    ff_enumerate,
    find_separating_element,
    gaussian_binomial,
    tangent_space,
)
from invgrass.wedgeinv import SAMPLED, lambda_A_sampled

from oracles import fp_invariant, fp_span, fp_subspaces


def span(field, rows, n=4):
    return Subspace.span(rows, field, n)


@pytest.fixture(scope="module")
def points(F):
    z = F.gen("z")
    M = span(F, [(1, z, 0, 0), (0, 0, 1, z**2)])
    Mp = span(F, [(1, z, 0, 0), (0, 0, 1, z)])
    return M, Mp


def test_classify_point_examples(points, A, K, wedge2):
    M, Mp = points
    assert classify_point(M, A, wedge2).triple() == (True, True, True)
    v = classify_point(Mp, A, wedge2)
    assert v.triple() == (True, False, False)
    assert "G" in v.witnesses and not v.honesty_flag
    E = span(K, [(1, 0, 0, 0), (0, 1, 0, 0)])
    assert classify_point(E, A, wedge2).triple() == (True, True, True)


def test_classify_point_f_failure(K, A, wedge2):
    M = span(K, [(1, 0, 0, 0), (0, 0, 1, 0)])
    v = classify_point(M, A, wedge2)
    assert not v.is_F and "F" in v.witnesses
    assert v.is_H == (v.is_F and v.is_G)


def test_honesty_flag_on_sampled_negative(points, A):
    _, Mp = points
    W = lambda_A_sampled(A, 2, seed=3)
    v = classify_point(Mp, A, W)
    assert v.g_provenance == SAMPLED and v.honesty_flag


def test_chart_locate_examples(points, K, A):
    M, _ = points
    assert chart_locate(M, A) is None
    loc = chart_locate(span(K, [(1, 0, 0, 0), (0, 1, 0, 0)]), A)
    assert loc.chart_index == 1 and list(loc.coords) == [0, 0]
    loc = chart_locate(span(K, [(0, 0, 1, 0), (0, 0, 0, 1)]), A)
    assert loc.chart_index == 2 and list(loc.coords) == [0, 0]


def test_chart_point_reconstruction(K, A):
    rng = random.Random(5)
    for _ in range(10):
        f = (K.random_element(rng), K.random_element(rng), 1, 0)
        M = generate_submodule([f], A)
        loc = chart_locate(M, A)
        assert loc is not None
        assert generate_submodule([loc.generator], A) == M


def test_chart_point_module(K, A):
    M = generate_submodule([(1, 2, 1, 0)], A)
    assert M == span(K, [(1, 0, K(3) / 7, K(-2) / 7), (0, 1, K(2) / 7, K(1) / 7)])


@pytest.mark.parametrize(
    "rows",
    [[(1, 0, 0, 0), (0, 1, 0, 0)], [(0, 0, 1, 0), (0, 0, 0, 1)]],
)
def test_tangent_dims_coordinate_points(K, A, wedge2, rows):
    rep = tangent_space(span(K, rows), A, wedge2)
    assert rep.dim_G == rep.dim_F == 2


def test_tangent_dims_chart_point(K, A, wedge2):
    E = generate_submodule([(1, 2, 1, 0)], A)
    rep = tangent_space(E, A, wedge2)
    assert rep.dim_G == rep.dim_F == 2


def test_tangent_galois(QI):
    i = QI.gen("i")
    alg = MatrixAlgebra([Matrix.scalar(QI, 2, -i)])
    W = lambda_A_chart_grid(alg, 1)
    rep = tangent_space(span(QI, [(1, 0)], 2), alg, W)
    assert rep.dim_G == 1


def test_tangent_rejects_non_g_point(K, A, wedge2):
    E = span(K, [(1, 0, 0, 0), (0, 0, 1, 0)])
    with pytest.raises(ValueError):
        tangent_space(E, A, wedge2)


def test_gaussian_binomial():
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(4, 2, 3) == 130
    assert gaussian_binomial(5, 0, 3) == 1


def test_ff_examples():
    F2 = PrimeField(2)
    rep = ff_enumerate(MatrixAlgebra([Matrix([[0, 1], [1, 1]], F2)]), 1)
    assert rep.total == 3 and not rep.f_points and rep.wedge.dim == 0
    rep = ff_enumerate(MatrixAlgebra([Matrix.identity(F2, 3)]), 1)
    assert len(rep.f_points) == 7 and rep.all_charted is not False
    rep = ff_enumerate(MatrixAlgebra([Matrix([[1, 0], [0, 0]], F2)]), 1)
    assert {tuple(map(int, s.basis[0])) for s in rep.subspaces("F")} == {(1, 0), (0, 1)}


@given(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=3, max_size=3))
def test_ff_matches_set_oracle(entries):
    F3 = PrimeField(3)
    g = Matrix(entries, F3)
    rep = ff_enumerate(MatrixAlgebra([g]), 1, charts=False)
    found = {fp_span([tuple(int(x) for x in r) for r in s.basis], 3) for s in rep.subspaces("F")}
    expected = {s for s in fp_subspaces(3, 1, 3) if fp_invariant(s, [entries], 3)}
    assert found == expected
    for s in rep.subspaces("F"):
        assert is_invariant(s, MatrixAlgebra([g]))


def test_ff_guard():
    F3 = PrimeField(3)
    with pytest.raises(ValueError):
        ff_enumerate(MatrixAlgebra([Matrix.identity(F3, 12)]), 6)


def test_ff_rejects_number_field(A):
    with pytest.raises(TypeError):
        ff_enumerate(A, 2)


@pytest.fixture(scope="module")
def embeddings(K, F):
    r, z = F.gen("r"), F.gen("z")
    return [Embedding(K, F, {"r": r * z}), Embedding(K, F, {"r": r * z**2})]


def test_separating_element(K, F, embeddings):
    r, z = F.gen("r"), F.gen("z")
    res = find_separating_element(embeddings, [1, 1])
    assert res.lhs != res.rhs
    assert res.a == -K.gen("r")
    assert res.lhs == r**2 and res.rhs == r**2 * z**2
    res = find_separating_element(embeddings, [2, 2])
    assert res.lhs != res.rhs and res.rhs == r**2 * z


def test_separating_element_errors(embeddings):
    with pytest.raises(ValueError):
        find_separating_element(embeddings, [1, 2])
    with pytest.raises(ValueError):
        find_separating_element(embeddings, [1])
    with pytest.raises(ValueError):
        find_separating_element(embeddings, [1, 3])
    with pytest.raises(ValueError):
        find_separating_element([embeddings[0], embeddings[0]], [1, 1])
