"""Harmonic Bergman spaces on homogeneous trees: kernels, projections and dyadic operators."""

from .bergman import (
    BasisIndex,
    Coefficients,
    HarmonicCombo,
    coefficients,
    eval_basis,
    eval_normalized,
    gamma,
    gamma_ext,
    helmert_basis,
    inner_product,
    inner_product_sp,
    kernel,
    kernel_series,
    norm_basis,
    reproduce,
)
from .harmonic import ExtendedFunction, FiniteFunction, harmonic_extension, is_harmonic_on, laplacian_at, level_sum
from .measure import (
    ball_measure,
    counting_ball_measure,
    doubling_constant,
    doubling_ratio_sup,
    gromov_ball,
    sector_measure,
    sigma,
)
from .operators import (
    AtomReport,
    CZOutput,
    PiecewiseFunction,
    bmo_norm,
    cz_decompose,
    hormander_sum,
    is_atom,
    lp_norm,
    pairing,
    project_eval,
    weak_type_curve,
)
from .tree import (
    DyadicSet,
    Params,
    Vertex,
    confluent,
    dyadic_cell,
    format_vertex,
    gromov_rho,
    parse_vertex,
    predecessor,
    sector_level_slice,
    successors,
)

__version__ = "0.1.0"
