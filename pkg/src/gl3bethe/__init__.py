"""Exact off-shell Bethe vectors and scalar products for U_q(gl3-hat) chains."""
from .bethe import BetheParams, bethe_vector, direct_scalar_product, dual_bethe_vector
from .errors import Gl3BetheError
from .field import RATIONAL, FLOAT, UnivariateRationalFunction, rf_eval, rf_residue
from .kernels import (
    check_izergin_identity,
    izergin_determinant,
    kernel_KE,
    kernel_KF,
    kernel_Y,
    kernel_Z,
    phi,
    q_symmetrize,
    varphi,
)
from .residue import (
    FormalIntegrand,
    compare_scalar_products,
    formal_contour_integral,
    normalization,
    scalar_product_kernel,
)
from .rmatrix import ChainSpec, check_rtt, check_yang_baxter, gauss_decompose, monodromy, r_matrix, weight_functions
from .sampling import Sampler

__version__ = "0.1.0"
