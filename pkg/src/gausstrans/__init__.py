"""Entanglement transformations of pure bipartite Gaussian states.

Gaussian LOCC between products of two-mode squeezed states (possible iff
the squeezing vectors dominate elementwise), the constructive local normal
form of pure bipartite covariance matrices, and the general-LOCC
majorization verdict for comparison.
"""

from .errors import (
    GaussTransError,
    InconsistencyError,
    InfeasibleTransformation,
    InvalidArgument,
    NumericDomainError,
    NumericInstabilityError,
    NumericSearchError,
    PreconditionError,
    SingularMapError,
)
from .glocc import (
    GaussianChannel,
    GloccVerdict,
    apply_gaussian_map,
    apply_one_local,
    cosh_r_double_prime,
    glocc_possible,
    identity_channel,
    protocol_gamma,
    r_double_prime,
    solve_channel_for_target,
)
from .io import MatrixDocument, read_document, write_document
from .majorization import (
    LoccVerdict,
    SchmidtSpectrum,
    closed_L,
    closed_M,
    concentration_feasible,
    dilution_witness,
    eta_of,
    f_function,
    nielsen_check,
    schmidt_spectrum,
    tmss_schmidt,
    two_tmss_schmidt,
)
from .states import (
    StandardForm,
    split_blocks,
    squeezing_vector,
    standard_form,
    tmss_cm,
    tmss_product_cm,
)
from .symplectic import (
    WilliamsonDecomposition,
    is_pure,
    is_symplectic,
    is_valid_cm,
    random_symplectic,
    symplectic_form,
    symplectic_spectrum,
    williamson,
)

__version__ = "0.1.0"
