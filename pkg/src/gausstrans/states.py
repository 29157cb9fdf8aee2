"""Two-mode squeezed states and the local normal form of pure bipartite states.

Bipartite covariance matrices of ``n x n`` modes are ordered with the ``n``
modes of system A first and the ``n`` modes of system B after them; in a
product of two-mode squeezed states A-mode ``k`` is entangled with B-mode
``k``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    InconsistencyError,
    InvalidArgument,
    NumericInstabilityError,
    PreconditionError,
)
from .symplectic import (
    LAMBDA1,
    TOL_CM,
    TOL_PURE,
    _as_cm,
    direct_sum,
    complex_of,
    is_pure,
    max_norm,
    passive_from_unitary,
    purity_residual,
    symplectic_spectrum,
    williamson,
)

# arccosh(1 + 1e-9) ~ 4.5e-5: closer than this to one counts as vacuum
ARCCOSH_CLAMP = 1e-9
NORMAL_FORM_TOL = 1e-7
# singular values this small are rounding noise of a vacuum pair
VACUUM_SINH = 1e-12


@dataclass(frozen=True)
class StandardForm:
    """Local symplectics bringing a pure state to a product of TMSS.

    ``(S_A (+) S_B) @ gamma @ (S_A (+) S_B).T == tmss_product_cm(r)``
    up to ``residual`` (max-norm).
    """

    r: np.ndarray
    S_A: np.ndarray
    S_B: np.ndarray
    residual: float

    @property
    def local(self):
        return direct_sum(self.S_A, self.S_B)

    def normal_form_cm(self):
        return tmss_product_cm(self.r)


def as_squeezing_vector(r, *, sort=True, check_order=True):
    """Validate squeezing parameters and return them in descending order."""
    arr = np.atleast_1d(np.asarray(r, dtype=float)).ravel()
    if arr.size == 0:
        raise InvalidArgument("squeezing vector is empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgument("squeezing parameters must be finite")
    if np.any(arr < 0):
        raise InvalidArgument(f"squeezing parameters must be >= 0, got {arr.tolist()}")
    if sort:
        return np.sort(arr)[::-1].copy()
    if check_order and np.any(np.diff(arr) > 0):
        raise InvalidArgument("squeezing vector must be in descending order")
    return arr


def tmss_cm(r):
    """CM of a two-mode squeezed state: ``[[cosh r 1, sinh r L], [sinh r L, cosh r 1]]``."""
    r = float(r)
    if not np.isfinite(r) or r < 0:
        raise InvalidArgument(f"squeezing parameter must be finite and >= 0, got {r}")
    a = np.cosh(r) * np.eye(2)
    c = np.sinh(r) * LAMBDA1
    return np.block([[a, c], [c, a]])


def c_block(r):
    """``(+)_k cosh(r_k) 1_2``."""
    return np.diag(np.repeat(np.cosh(np.asarray(r, dtype=float)), 2))


def s_block(r):
    """``(+)_k sinh(r_k) diag(1, -1)``."""
    sh = np.repeat(np.sinh(np.asarray(r, dtype=float)), 2)
    sh[1::2] *= -1.0
    return np.diag(sh)


def tmss_product_cm(r):
    """CM of ``(x)_k TMSS(r_k)`` in A-then-B mode order, ``[[c, s], [s, c]]``.

    The entries of ``r`` are used in the given order.
    """
    r = as_squeezing_vector(np.atleast_1d(r), sort=False, check_order=False)
    c, s = c_block(r), s_block(r)
    return np.block([[c, s], [s, c]])


def split_blocks(gamma, n_a=None):
    """Return ``(A, C, B)`` of a bipartite CM; defaults to an even split."""
    gamma = _as_cm(gamma)
    dim = gamma.shape[0]
    if n_a is None:
        if dim % 4:
            raise InvalidArgument("cannot split an odd number of modes evenly")
        n_a = dim // 4
    k = 2 * n_a
    if not 0 < k < dim:
        raise InvalidArgument(f"bipartition with {n_a} A-modes does not fit {dim // 2} modes")
    return gamma[:k, :k], gamma[:k, k:], gamma[k:, k:]


def _arccosh_clamped(nu):
    nu = np.asarray(nu, dtype=float)
    if np.any(nu < 1.0 - TOL_CM):
        raise InconsistencyError(
            f"block symplectic eigenvalue {nu.min():.12g} < 1: not a valid pure bipartite CM"
        )
    out = np.log(nu + np.sqrt(np.clip(nu * nu - 1.0, 0.0, None)))
    out[nu <= 1.0 + ARCCOSH_CLAMP] = 0.0
    return out


def squeezing_vector(gamma):
    """Squeezing parameters ``arccosh`` of the A-block symplectic spectrum, descending."""
    A, _, _ = split_blocks(gamma)
    nu = symplectic_spectrum(A)[::-1]
    return _arccosh_clamped(nu)


def standard_form(gamma, tol=TOL_PURE):
    """Reduce a pure ``n x n`` CM to a product of two-mode squeezed states.

    Both reduced blocks are Williamson-diagonalized first. In those bases the
    off-diagonal block has the form ``L D W`` with ``D = diag(sinh r)`` and
    ``W`` passive, so a complex SVD of ``L C`` yields the two remaining passive
    rotations and ``sinh r`` as its singular values, sorted descending. No
    step divides by ``sinh r``, which keeps clusters of weakly entangled or
    equally entangled modes well conditioned.

    Raises:
        PreconditionError: ``gamma`` is not pure.
        NumericInstabilityError: the final normal form misses tolerance.
    """
    gamma = _as_cm(gamma)
    dim = gamma.shape[0]
    if dim % 4:
        raise InvalidArgument("standard_form needs an n x n bipartition")
    if not is_pure(gamma, tol):
        raise PreconditionError(
            f"state is not pure (||(gamma sigma)^2 + 1||_max = {purity_residual(gamma):.3e})"
        )
    n = dim // 4
    A, C, B = split_blocks(gamma)
    wa, wb = williamson(A), williamson(B)
    _arccosh_clamped(wa.spectrum)
    _arccosh_clamped(wb.spectrum)

    lam = np.kron(np.eye(n), LAMBDA1)
    U, sinh, Vh = np.linalg.svd(complex_of(lam @ wa.S @ C @ wb.S.T))
    S_A = passive_from_unitary(U.T) @ wa.S
    S_B = passive_from_unitary(Vh) @ wb.S
    sinh[sinh <= VACUUM_SINH * (1.0 + max_norm(gamma))] = 0.0
    r = np.arcsinh(sinh)

    local = direct_sum(S_A, S_B)
    residual = max_norm(local @ gamma @ local.T - tmss_product_cm(r))
    if residual > NORMAL_FORM_TOL * (1.0 + max_norm(gamma)):
        raise NumericInstabilityError(
            f"normal-form reconstruction residual {residual:.3e} exceeds tolerance"
        )
    return StandardForm(r=r, S_A=S_A, S_B=S_B, residual=residual)
