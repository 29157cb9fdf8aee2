"""Gaussian LOCC transformations between pure two-mode-squeezed products.

A Gaussian operation is described by the covariance matrix ``Gamma`` of its
Choi state, partitioned into an output part ``Gamma_1``, an input part
``Gamma_2`` and correlations ``Gamma_12``. It maps
``gamma -> G1 - G12 (G2 + gamma)^{-1} G12^T`` with ``G = (1 (+) L) Gamma (1 (+) L)``
and ``L = diag(1, -1, 1, -1, ...)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InfeasibleTransformation,
    InvalidArgument,
    PreconditionError,
    SingularMapError,
)
from .states import as_squeezing_vector, c_block, s_block, split_blocks, tmss_product_cm
from .symplectic import (
    TOL_CM,
    _as_cm,
    _as_square,
    is_symplectic,
    is_valid_cm,
    max_norm,
    reflection,
)

# condition number beyond which an inverse is refused
MAX_CONDITION = 1e12
# cosh(r) - cosh(r') below this fraction of cosh(r) is treated as equality
EQUALITY_RTOL = 1e-12


@dataclass(frozen=True)
class GloccVerdict:
    """Outcome of the squeezing-vector comparison.

    ``witness_index`` is the 1-based mode ``k`` of the first ``r_k < r'_k``.
    """

    possible: bool
    witness_index: int | None = None


@dataclass(frozen=True)
class GaussianChannel:
    """A Gaussian operation acting on ``n_modes`` modes of one system.

    Only the modes listed in ``active`` are transformed; the others pass
    through unchanged. ``gamma`` is the Choi covariance matrix on the active
    modes, ordered ``(outputs, inputs)``, so for ``k = len(active)`` it is
    ``4k x 4k``. The number of output modes equals the number of inputs
    unless every mode is active, in which case ``n_out`` may differ.
    """

    gamma: np.ndarray
    n_modes: int
    active: tuple = None
    n_out: int = None
    r_double_prime: np.ndarray = field(default=None, compare=False)

    def __post_init__(self):
        gamma = np.asarray(self.gamma, dtype=float).reshape(
            np.shape(self.gamma) if np.size(self.gamma) else (0, 0)
        )
        active = tuple(range(self.n_modes)) if self.active is None else tuple(int(a) for a in self.active)
        if len(set(active)) != len(active) or any(not 0 <= a < self.n_modes for a in active):
            raise InvalidArgument(f"active modes {active} do not fit {self.n_modes} modes")
        n_in = len(active)
        n_out = n_in if self.n_out is None else int(self.n_out)
        if n_out != n_in and n_in != self.n_modes:
            raise InvalidArgument("changing the mode count requires every mode to be active")
        if gamma.shape != (2 * (n_in + n_out),) * 2:
            raise InvalidArgument(
                f"channel CM of shape {gamma.shape} does not match {n_out} outputs and {n_in} inputs"
            )
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "active", tuple(sorted(active)))
        object.__setattr__(self, "n_out", n_out)

    @property
    def n_in(self):
        return len(self.active)

    @property
    def passthrough(self):
        return tuple(k for k in range(self.n_modes) if k not in self.active)

    def blocks(self):
        """``(Gamma_1, Gamma_12, Gamma_2)``."""
        k = 2 * self.n_out
        g = self.gamma
        return g[:k, :k], g[:k, k:], g[k:, k:]

    def tilde_blocks(self):
        """Blocks of ``(1 (+) L) Gamma (1 (+) L)``: ``(Gamma_1, Gamma_12 L, L Gamma_2 L)``."""
        g1, g12, g2 = self.blocks()
        lam = reflection(self.n_in)
        return g1, g12 @ lam, lam @ g2 @ lam

    def embed(self, n_modes, offset=0):
        """The same channel as part of a larger system, extra modes passing through."""
        if offset + self.n_modes > n_modes:
            raise InvalidArgument("embedding does not fit")
        return GaussianChannel(
            gamma=self.gamma,
            n_modes=n_modes,
            active=tuple(offset + a for a in self.active),
            n_out=self.n_out,
            r_double_prime=self.r_double_prime,
        )


def identity_channel(n_modes):
    """Channel that leaves all ``n_modes`` modes untouched."""
    return GaussianChannel(gamma=np.zeros((0, 0)), n_modes=n_modes, active=())


def _pad(r, r_target):
    r = as_squeezing_vector(r)
    r_target = as_squeezing_vector(r_target)
    n = max(r.size, r_target.size)
    return np.pad(r, (0, n - r.size)), np.pad(r_target, (0, n - r_target.size))


def glocc_possible(r, r_target):
    """Decide ``r -> r_target`` under Gaussian LOCC: possible iff ``r_k >= r'_k`` for all k.

    Both vectors are sorted descending and the shorter one is padded with
    zeros (vacuum modes).
    """
    r, r_target = _pad(r, r_target)
    bad = np.flatnonzero(r < r_target)
    if bad.size:
        return GloccVerdict(False, int(bad[0]) + 1)
    return GloccVerdict(True)


def cosh_r_double_prime(r, r_target):
    r, r_target = float(r), float(r_target)
    if not (np.isfinite(r) and np.isfinite(r_target)) or r_target < 0:
        raise InvalidArgument("squeezing parameters must be finite and nonnegative")
    ch, ch_t = np.cosh(r), np.cosh(r_target)
    if not ch > ch_t:
        raise InvalidArgument(
            f"need r > r_target for a finite channel squeezing, got r={r}, r_target={r_target}"
        )
    return (ch * ch_t - 1.0) / (ch - ch_t)


def r_double_prime(r, r_target):
    """Squeezing of the TMSS channel that takes ``TMSS(r)`` to ``TMSS(r_target)``.

    ``cosh r'' = (cosh r cosh r' - 1) / (cosh r - cosh r')``; requires ``r > r'``.
    """
    return float(np.arccosh(max(cosh_r_double_prime(r, r_target), 1.0)))


def protocol_gamma(r, r_target):
    """Channel on system A realizing ``(x) TMSS(r_k) -> (x) TMSS(r'_k)``.

    Each mode with ``r_k > r'_k`` gets a TMSS Choi state with squeezing
    ``r''_k``; modes with ``r_k == r'_k`` pass through.

    Raises:
        PreconditionError: ``r >= r'`` fails.
    """
    verdict = glocc_possible(r, r_target)
    if not verdict.possible:
        raise PreconditionError(
            f"transformation violates r >= r' at mode k={verdict.witness_index}"
        )
    r, r_target = _pad(r, r_target)
    ch, ch_t = np.cosh(r), np.cosh(r_target)
    active = np.flatnonzero(ch - ch_t > EQUALITY_RTOL * ch)
    rpp = np.array([r_double_prime(r[k], r_target[k]) for k in active])
    full = np.zeros(r.size)
    full[active] = rpp
    gamma = tmss_product_cm(rpp) if active.size else np.zeros((0, 0))
    return GaussianChannel(
        gamma=gamma, n_modes=r.size, active=tuple(active), r_double_prime=full
    )


def _inv_sym(matrix, what):
    w, v = np.linalg.eigh(0.5 * (matrix + matrix.T))
    top = np.max(np.abs(w))
    if w[0] <= 0.0 or top / w[0] > MAX_CONDITION:
        raise SingularMapError(f"{what} is singular or ill conditioned (eigenvalues {w[0]:.3e}..{w[-1]:.3e})")
    return (v / w) @ v.T


def _mode_rows(modes):
    return np.ravel([[2 * k, 2 * k + 1] for k in modes]).astype(int)


def apply_gaussian_map(channel, gamma):
    """Apply ``channel`` to every mode of ``gamma`` as a Schur complement.

    The joint matrix over (channel outputs, untouched modes, channel inputs)
    is assembled and the input block eliminated in one step:
    ``[[G1, 0], [0, g_uu]] - [[G12], [-g_ua]] (G2 + g_aa)^{-1} [[G12], [-g_ua]]^T``.

    Raises:
        InvalidArgument: mode counts disagree.
        SingularMapError: ``G2 + g_aa`` is not safely invertible.
    """
    gamma = _as_cm(gamma)
    m = gamma.shape[0] // 2
    if channel.n_modes != m:
        raise InvalidArgument(f"channel acts on {channel.n_modes} modes, state has {m}")
    if channel.n_in == 0:
        return gamma.copy()
    g1, g12, g2 = channel.tilde_blocks()
    act = _mode_rows(channel.active)
    keep = _mode_rows(channel.passthrough)
    k_out, k_keep = g1.shape[0], keep.size

    P = np.zeros((k_out + k_keep,) * 2)
    P[:k_out, :k_out] = g1
    P[k_out:, k_out:] = gamma[np.ix_(keep, keep)]
    Q = np.vstack([g12, -gamma[np.ix_(keep, act)]])
    X = g2 + gamma[np.ix_(act, act)]
    out = P - Q @ _inv_sym(X, "G2 + gamma") @ Q.T
    out = 0.5 * (out + out.T)

    if channel.n_out == channel.n_in:
        # restore the original mode order
        res = np.empty_like(gamma)
        order = np.concatenate([act, keep])
        res[np.ix_(order, order)] = out
        return res
    return out


def apply_one_local(channel, gamma, n_a=None):
    """Apply a channel on system A of a bipartite CM via the block formulas.

    With ``gamma = [[A, C], [C^T, B]]``:
    ``A' = G1 - G12 (G2 + A)^{-1} G12^T``,
    ``B' = B - C^T (G2 + A)^{-1} C``,
    ``C' = G12 (G2 + A)^{-1} C``.
    Pass-through modes of system A are moved to the untouched side first.
    """
    gamma = _as_cm(gamma)
    m = gamma.shape[0] // 2
    if n_a is None:
        n_a = m // 2
    split_blocks(gamma, n_a)
    if channel.n_modes != n_a:
        raise InvalidArgument(f"channel acts on {channel.n_modes} modes, system A has {n_a}")
    if channel.n_out != channel.n_in:
        raise InvalidArgument("one-local application needs equal input and output mode counts")
    if channel.n_in == 0:
        return gamma.copy()
    act = _mode_rows(channel.active)
    rest = np.setdiff1d(np.arange(2 * m), act)
    A = gamma[np.ix_(act, act)]
    C = gamma[np.ix_(act, rest)]
    B = gamma[np.ix_(rest, rest)]
    g1, g12, g2 = channel.tilde_blocks()
    X = _inv_sym(g2 + A, "G2 + A")
    A_new = g1 - g12 @ X @ g12.T
    B_new = B - C.T @ X @ C
    C_new = g12 @ X @ C
    res = np.empty_like(gamma)
    res[np.ix_(act, act)] = 0.5 * (A_new + A_new.T)
    res[np.ix_(act, rest)] = C_new
    res[np.ix_(rest, act)] = C_new.T
    res[np.ix_(rest, rest)] = 0.5 * (B_new + B_new.T)
    return res


def solve_channel_for_target(r, r_target, S=None, tol=TOL_CM):
    """Closed-form channel for ``normal form(r) -> normal form(r')`` given B's unitary ``S``.

    The protocol applies the returned channel on system A and then ``S`` on
    system B (``B -> S B S^T``). Requiring the final blocks to be ``c(r')``,
    ``c(r')`` and ``s(r')`` gives, with ``D = S c(r) S^T - c(r')``,

    * ``Gamma_1 = c(r') + s(r') D^{-1} s(r')``
    * ``G_12 = s(r') D^{-1} S s(r)``
    * ``G_2 = s(r) S^T D^{-1} S s(r) - c(r)``

    where ``G`` are the blocks of ``(1 (+) L) Gamma (1 (+) L)``. ``S`` defaults
    to the identity, for which the channel is a TMSS product with squeezings
    ``r''``.

    Raises:
        InfeasibleTransformation: ``D`` is indefinite (``boundary=False``),
            singular (``boundary=True``), or the assembled matrix is not a
            valid covariance matrix.
    """
    r, r_target = _pad(r, r_target)
    n = r.size
    S = np.eye(2 * n) if S is None else _as_square(S, "S")
    if S.shape != (2 * n, 2 * n):
        raise InvalidArgument(f"S must be {2 * n}x{2 * n}, got {S.shape}")
    if not is_symplectic(S, 1e-8 * (1.0 + max_norm(S)) ** 2):
        raise InvalidArgument("S is not symplectic")
    c, c_t = c_block(r), c_block(r_target)
    s, s_t = s_block(r), s_block(r_target)
    ScS = S @ c @ S.T
    D = ScS - c_t
    D = 0.5 * (D + D.T)
    w = np.linalg.eigvalsh(D)
    scale = tol * (1.0 + max_norm(ScS))
    if w[0] < -scale:
        raise InfeasibleTransformation(
            f"S c(r) S^T - c(r') is not positive semidefinite (min eigenvalue {w[0]:.3e})",
            boundary=False,
            min_eigenvalue=float(w[0]),
        )
    if w[0] <= scale or w[-1] / w[0] > MAX_CONDITION:
        raise InfeasibleTransformation(
            f"S c(r) S^T - c(r') is singular (min eigenvalue {w[0]:.3e}); "
            "the closed form covers strict decreases only",
            boundary=True,
            min_eigenvalue=float(w[0]),
        )
    D_inv = np.linalg.inv(D)
    lam = reflection(n)
    g1 = c_t + s_t @ D_inv @ s_t
    g12_t = s_t @ D_inv @ S @ s
    g2_t = s @ S.T @ D_inv @ S @ s - c
    gamma = np.block([[g1, g12_t @ lam], [(g12_t @ lam).T, lam @ g2_t @ lam]])
    gamma = 0.5 * (gamma + gamma.T)
    if not is_valid_cm(gamma):
        raise InfeasibleTransformation("assembled channel matrix violates gamma >= i sigma")
    return GaussianChannel(gamma=gamma, n_modes=n)
