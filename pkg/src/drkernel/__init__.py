"""Numerical geometry kernel for Damek-Ricci spaces.

Builds generalized Heisenberg algebras from Clifford-module data,
evaluates the Busemann function and its closed-form Hessian on the
associated solvable group, and verifies the spectral and positivity
claims against an independent finite-difference oracle.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .algebra import (
    GeneralizedHeisenbergAlgebra,
    SUPPORTED_M,
    bracket_n,
    build_clifford_generators,
    check_gh_identities,
    decompose_v,
    j_map,
    make_algebra,
)
from .busemann import (
    BoundaryPoint,
    BusemannState,
    busemann_value,
    classify_case,
    frame_derivatives,
    gradient,
    vy_state,
)
from .group import (
    AlgebraElement,
    GroupPoint,
    connection_coeffs,
    frame_at,
    identity_point,
    inverse,
    lie_bracket_s,
    multiply,
)
from .hessian import (
    AdaptedBasis,
    BlockDecomposition,
    HessianMatrix,
    HessianReport,
    adapted_basis,
    b1_spectrum_check,
    block_decomposition,
    det_B_closed,
    hessian_closed_form,
    restricted_positivity,
    special_case_hessian,
    spectrum,
    verify_block_identities,
)
from .oracle import FDConfig, compare, directional_derivative, numeric_hessian

__version__ = "0.1.0"
