"""Symplectic linear algebra on real covariance matrices.

Coordinates are interleaved as ``(x_1, p_1, x_2, p_2, ...)`` and the
one-mode symplectic form is ``[[0, -1], [1, 0]]``. Every module of the
package uses this convention.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, NumericDomainError, NumericInstabilityError

TOL_SYM = 1e-9
TOL_SYMPL = 1e-9
TOL_PURE = 1e-8
TOL_CM = 1e-9
# agreement of the +i nu / -i nu moduli pairs in symplectic_spectrum
TOL_PAIR = 1e-8

SIGMA1 = np.array([[0.0, -1.0], [1.0, 0.0]])
LAMBDA1 = np.diag([1.0, -1.0])


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """``S @ gamma @ S.T == diag(nu_1, nu_1, nu_2, nu_2, ...)``."""

    S: np.ndarray
    spectrum: np.ndarray

    @property
    def diagonal(self):
        return np.repeat(self.spectrum, 2)


def symplectic_form(m):
    """Return the ``2m x 2m`` block-diagonal symplectic form."""
    m = int(m)
    if m < 1:
        raise InvalidArgument(f"mode count must be positive, got {m}")
    return np.kron(np.eye(m), SIGMA1)


def reflection(m):
    """Return ``diag(1, -1, 1, -1, ...)`` on ``m`` modes (momentum reversal)."""
    return np.kron(np.eye(m), LAMBDA1)


def _as_square(matrix, name="matrix"):
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgument(f"{name} must be a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidArgument(f"{name} has non-finite entries")
    return a


def _as_cm(gamma, name="covariance matrix"):
    a = _as_square(gamma, name)
    if a.shape[0] % 2:
        raise InvalidArgument(f"{name} must have even dimension, got {a.shape[0]}")
    if a.shape[0] == 0:
        raise InvalidArgument(f"{name} is empty")
    return a


def max_norm(a):
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def check_symmetric(gamma, tol=TOL_SYM):
    """Raise :class:`InvalidArgument` unless ``gamma`` is symmetric within ``tol``."""
    gamma = _as_cm(gamma)
    if max_norm(gamma - gamma.T) > tol * (1.0 + max_norm(gamma)):
        raise InvalidArgument("covariance matrix is not symmetric")
    return gamma


def is_symplectic(S, tol=TOL_SYMPL):
    S = _as_square(S, "S")
    if S.shape[0] % 2:
        raise InvalidArgument(f"symplectic matrices have even dimension, got {S.shape[0]}")
    sigma = symplectic_form(S.shape[0] // 2)
    return max_norm(S @ sigma @ S.T - sigma) <= tol


def is_valid_cm(gamma, tol=TOL_CM):
    """Check the uncertainty relation ``gamma + i sigma >= 0``.

    The smallest eigenvalue of the Hermitian matrix ``gamma + i sigma`` must
    not drop below ``-tol * (1 + ||gamma||_max)``.
    """
    gamma = check_symmetric(gamma)
    sigma = symplectic_form(gamma.shape[0] // 2)
    herm = 0.5 * (gamma + gamma.T) + 1j * sigma
    lowest = np.linalg.eigvalsh(herm)[0]
    return bool(lowest >= -tol * (1.0 + max_norm(gamma)))


def _require_positive_definite(gamma):
    w = np.linalg.eigvalsh(0.5 * (gamma + gamma.T))
    if w[0] <= 0.0:
        raise NumericDomainError(
            f"matrix is not positive definite (smallest eigenvalue {w[0]:.3e})"
        )
    return w


def symplectic_spectrum(gamma):
    """Symplectic eigenvalues of a positive definite matrix, ascending.

    They are the moduli of the eigenvalues of ``sigma @ gamma``, which come
    in pairs ``+-i nu``; each pair is reported once.
    """
    gamma = check_symmetric(gamma)
    _require_positive_definite(gamma)
    sigma = symplectic_form(gamma.shape[0] // 2)
    moduli = np.sort(np.abs(np.linalg.eigvals(sigma @ gamma)))
    first, second = moduli[0::2], moduli[1::2]
    if np.any(np.abs(first - second) > TOL_PAIR * (1.0 + second)):
        raise NumericInstabilityError("eigenvalues of sigma @ gamma are not paired")
    return 0.5 * (first + second)


def is_pure(gamma, tol=TOL_PURE):
    """True iff ``(gamma sigma)^2 == -1`` within ``tol`` (scaled by the norm of gamma)."""
    gamma = _as_cm(gamma)
    sigma = symplectic_form(gamma.shape[0] // 2)
    gs = gamma @ sigma
    residual = max_norm(gs @ gs + np.eye(gamma.shape[0]))
    return residual <= tol * (1.0 + max_norm(gamma))


def purity_residual(gamma):
    gamma = _as_cm(gamma)
    sigma = symplectic_form(gamma.shape[0] // 2)
    gs = gamma @ sigma
    return max_norm(gs @ gs + np.eye(gamma.shape[0]))


def inv_sqrtm_sym(matrix):
    """Inverse square root of a symmetric positive definite matrix."""
    w, v = np.linalg.eigh(0.5 * (matrix + matrix.T))
    if w[0] <= 0.0:
        raise NumericDomainError(
            f"matrix is not positive definite (smallest eigenvalue {w[0]:.3e})"
        )
    return (v / np.sqrt(w)) @ v.T


def _skew_block_basis(W):
    """Real orthogonal ``O`` with ``O.T @ W @ O == blockdiag(mu_k * sigma1)``.

    ``W`` is real skew-symmetric and nonsingular; the ``mu_k > 0`` are returned
    in descending order. The columns pair up as ``sqrt(2) * (Re v, Im v)`` for
    the eigenvectors ``v`` of the Hermitian ``iW`` with positive eigenvalues.
    """
    dim = W.shape[0]
    m = dim // 2
    mu, vecs = np.linalg.eigh(1j * 0.5 * (W - W.T))
    # eigh sorts ascending: the top m are the positive ones, largest last
    pos = vecs[:, m:][:, ::-1]
    mu = mu[m:][::-1]
    if mu[-1] <= 0.0:
        raise NumericDomainError("skew matrix is singular")
    O = np.empty((dim, dim))
    O[:, 0::2] = np.sqrt(2.0) * pos.real
    O[:, 1::2] = np.sqrt(2.0) * pos.imag
    if max_norm(O.T @ O - np.eye(dim)) > 1e-8:
        raise NumericInstabilityError("orthogonal pairing of skew eigenvectors failed")
    return O, mu


def williamson_with_form(matrix, form):
    """Williamson normal form of ``matrix`` relative to an arbitrary skew ``form``.

    Returns ``(S, nu)`` with ``S @ form @ S.T == sigma``,
    ``S @ matrix @ S.T == diag(nu_k * 1_2)`` and ``nu`` ascending.
    """
    root = inv_sqrtm_sym(matrix)
    O, mu = _skew_block_basis(root @ form @ root)
    # largest mu is the smallest symplectic eigenvalue
    nu = 1.0 / mu
    S = np.repeat(np.sqrt(nu), 2)[:, None] * (O.T @ root)
    return S, nu


def williamson(gamma):
    """Symplectic diagonalization ``S gamma S^T = diag(nu_k 1_2)``.

    Uses only symmetric and Hermitian eigensolvers: ``gamma^{-1/2}`` is formed
    from ``eigh``, the skew matrix ``gamma^{-1/2} sigma gamma^{-1/2}`` is
    brought to ``blockdiag(sigma1 / nu_k)`` through the eigenvectors of its
    Hermitian counterpart, and the result is rescaled.

    Raises:
        NumericDomainError: ``gamma`` is not positive definite.
        NumericInstabilityError: the eigenvector pairing lost orthogonality.
    """
    gamma = check_symmetric(gamma)
    m = gamma.shape[0] // 2
    S, nu = williamson_with_form(gamma, symplectic_form(m))
    return WilliamsonDecomposition(S=S, spectrum=nu)


def direct_sum(*blocks):
    """Block-diagonal matrix of the given square blocks."""
    blocks = [np.atleast_2d(np.asarray(b, dtype=float)) for b in blocks if np.size(b)]
    dim = sum(b.shape[0] for b in blocks)
    out = np.zeros((dim, dim))
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i : i + k, i : i + k] = b
        i += k
    return out


def mode_permutation(order):
    """Symplectic permutation matrix sending mode ``order[k]`` to slot ``k``."""
    order = np.asarray(order, dtype=int)
    m = len(order)
    P = np.zeros((2 * m, 2 * m))
    for k, j in enumerate(order):
        P[2 * k, 2 * j] = 1.0
        P[2 * k + 1, 2 * j + 1] = 1.0
    return P


def passive_from_unitary(u):
    """Orthogonal symplectic matrix of the unitary ``u`` acting on ``(x + ip) / sqrt(2)``."""
    m = u.shape[0]
    O = np.empty((2 * m, 2 * m))
    O[0::2, 0::2] = u.real
    O[0::2, 1::2] = -u.imag
    O[1::2, 0::2] = u.imag
    O[1::2, 1::2] = u.real
    return O


def complex_of(Y):
    """Complex ``m x m`` matrix whose realification is ``Y`` (for ``Y`` commuting with sigma)."""
    return 0.5 * ((Y[0::2, 0::2] + Y[1::2, 1::2]) + 1j * (Y[1::2, 0::2] - Y[0::2, 1::2]))


def random_symplectic(m, scale=1.0, rng=None):
    """Random ``2m x 2m`` symplectic matrix built from a Euler decomposition.

    ``O1 @ diag(e^{z}, e^{-z}, ...) @ O2`` with Haar-random passive
    (orthogonal symplectic) factors and single-mode squeezings ``z`` drawn
    uniformly from ``[-scale, scale]``.
    """
    rng = np.random.default_rng(rng)

    def passive():
        z = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
        q, r = np.linalg.qr(z)
        return passive_from_unitary(q * (np.diag(r) / np.abs(np.diag(r))))

    z = rng.uniform(-scale, scale, size=m)
    squeeze = np.diag(np.exp(np.column_stack([z, -z]).ravel()))
    return passive() @ squeeze @ passive()
