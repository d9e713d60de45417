"""Exact computation of invariant-subspace parameter spaces over number fields."""

from .exactla import DimensionError, Matrix, Subspace, kernel, rref, solve_left, span
from .exterior import WedgeIndex, WedgeVector, plucker, plucker_relation_check, wedge, wedge_derivation
from .fieldtower import (
    QQ,
    Embedding,
    FieldElement,
    FieldTower,
    TowerError,
    make_tower,
    minpoly_over,
    validate_embedding,
)
from .finitefield import GF, PrimeField
from .modalg import (
    DualVector,
    MatrixAlgebra,
    generate_submodule,
    invariant_dual_check,
    is_invariant,
    matrix_minpoly,
)
from .paramspace import (
    chart_locate,
    classify_point,
    ff_enumerate,
    find_separating_element,
    tangent_space,
)
from .poly import Polynomial
from .twosided import (
    EmbeddingOrbit,
    TwoSidedStructure,
    build_V_lambda,
    classify,
    classify_product_point,
    theorem612_check,
    validate_phi,
)
from .wedgeinv import InvariantWedgeSpace, lambda_A_chart_grid, lambda_A_sampled, member, prop43_generator

__version__ = "0.1.0"
