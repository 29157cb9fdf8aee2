"""General LOCC between TMSS products: Schmidt spectra and Nielsen's criterion.

A TMSS with squeezing ``r`` has geometric Schmidt coefficients
``(1 - eta) eta^k`` with ``eta = tanh^2(r / 2)``; a product of TMSS has the
product distribution, sorted descending. ``source -> target`` is possible
under LOCC iff every leading partial sum of the source is at most the
corresponding one of the target. Comparisons are made on complementary
tails ``T(N) = 1 - sum_{k<=N} p_k`` in log space, which keeps them exact far
beyond the point where the partial sums round to one.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidArgument, NumericSearchError

# partial-sum slack 1e-12 (1 + N), applied relative to the tails
SLACK = 1e-12
DILUTION_MARGIN = 1e-12
DEFAULT_COUNT = 64


def eta_of(r):
    """``tanh^2(r / 2)``, the ratio of consecutive Schmidt coefficients of TMSS(r)."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise InvalidArgument("squeezing must be nonnegative")
    out = np.tanh(0.5 * r) ** 2
    return float(out) if out.ndim == 0 else out


def squeezing_of(eta):
    """Inverse of :func:`eta_of`."""
    return 2.0 * np.arctanh(np.sqrt(eta))


def triangular(n):
    """``K(N) = (N + 1)(N + 2) / 2``, number of two-TMSS coefficients up to level ``N``."""
    return (n + 1) * (n + 2) // 2


def pair_log_tail(lam, idx):
    """log of the mass after position ``idx`` in the spectrum of two equal TMSS."""
    idx = np.asarray(idx, dtype=np.int64)
    level = ((np.sqrt(8.0 * idx + 1.0) - 1.0) / 2.0).astype(np.int64)
    # float sqrt can be off by one for huge indices
    level -= (level * (level + 1) // 2 > idx).astype(np.int64)
    level += ((level + 1) * (level + 2) // 2 <= idx).astype(np.int64)
    left_in_level = (level + 1) * (level + 2) // 2 - 1 - idx
    body = left_in_level * (1.0 - lam) ** 2 + (1.0 + (level + 1) * (1.0 - lam)) * lam
    return level * math.log(lam) + np.log(body)


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Descending Schmidt coefficients with the exact mass of what was cut off.

    ``etas`` lists the geometric ratios of the TMSS factors (descending,
    zero-squeezing factors dropped) when the spectrum is a TMSS product, and
    is ``None`` for an explicit list.
    """

    probs: np.ndarray
    tail_mass: float
    etas: tuple = None

    def __post_init__(self):
        probs = np.atleast_1d(np.asarray(self.probs, dtype=float))
        object.__setattr__(self, "probs", probs)
        if self.etas is not None:
            object.__setattr__(self, "etas", tuple(sorted((float(e) for e in self.etas), reverse=True)))

    @classmethod
    def from_probs(cls, probs):
        """Explicit finite distribution, sorted descending, tail zero."""
        p = np.sort(np.asarray(probs, dtype=float))[::-1]
        if np.any(p < 0):
            raise InvalidArgument("probabilities must be nonnegative")
        return cls(p, 0.0)

    @property
    def closed_form(self):
        return self.etas is not None and (
            len(self.etas) <= 1 or (len(self.etas) == 2 and self.etas[0] == self.etas[1])
        )

    @property
    def known_until(self):
        """Largest index whose tail can be evaluated (``inf`` for closed forms)."""
        if self.closed_form or self.tail_mass == 0.0:
            return math.inf
        return self.probs.size - 1

    def partial_sums(self):
        return np.cumsum(self.probs)

    def log_tail(self, idx):
        """log of ``T(N)``, the mass after position ``N`` (``-inf`` when zero)."""
        idx = np.asarray(idx, dtype=np.int64)
        if self.etas is not None and len(self.etas) == 0:
            return np.full(idx.shape, -np.inf)
        if self.etas is not None and len(self.etas) == 1:
            return (idx + 1.0) * math.log(self.etas[0])
        if self.closed_form:
            return pair_log_tail(self.etas[0], idx)
        suffix = np.concatenate([np.cumsum(self.probs[::-1])[::-1], [0.0]]) + self.tail_mass
        out = np.full(idx.shape, np.nan if self.tail_mass > 0 else -np.inf)
        inside = idx + 1 <= self.probs.size
        with np.errstate(divide="ignore"):
            out[inside] = np.log(suffix[idx[inside] + 1])
        return out

    def validate(self):
        total = float(np.sum(self.probs)) + self.tail_mass
        if total > 1.0 + 1e-9 or self.tail_mass < 0:
            raise InvalidArgument(f"inconsistent spectrum: sum + tail = {total!r}")
        if np.any(np.diff(self.probs) > 1e-15):
            raise InvalidArgument("Schmidt coefficients must be in descending order")


@dataclass(frozen=True)
class LoccVerdict:
    """Outcome of :func:`nielsen_check`.

    ``witness_N`` is a violated partial-sum index for ``impossible`` and the
    index that blocked a decision for ``inconclusive``. ``checked_through``
    is the last index compared exhaustively; ``certificate`` names the
    argument behind a ``possible``.
    """

    outcome: str
    witness_N: int = None
    checked_through: int = None
    certificate: str = None

    @property
    def possible(self):
        return self.outcome == "possible"


def tmss_schmidt(r, count=DEFAULT_COUNT):
    """Leading ``count`` Schmidt coefficients of TMSS(r); tail ``eta^count``."""
    if r < 0 or count < 1:
        raise InvalidArgument("need r >= 0 and count >= 1")
    eta = eta_of(r)
    if eta == 0.0:
        return SchmidtSpectrum(np.array([1.0]), 0.0, etas=())
    k = np.arange(count)
    return SchmidtSpectrum((1.0 - eta) * eta**k, eta**count, etas=(eta,))


def two_tmss_schmidt(r, count=DEFAULT_COUNT):
    """Leading ``count`` coefficients of TMSS(r) (x) TMSS(r).

    ``(1 - lam)^2 (1, lam, lam, lam^2, lam^2, lam^2, ...)`` with
    ``lam = tanh^2(r / 2)``; the tail is exact.
    """
    if r < 0 or count < 1:
        raise InvalidArgument("need r >= 0 and count >= 1")
    lam = eta_of(r)
    if lam == 0.0:
        return SchmidtSpectrum(np.array([1.0]), 0.0, etas=())
    probs = kernels.pair_spectrum(lam, int(count))
    tail = float(np.exp(pair_log_tail(lam, count - 1)))
    return SchmidtSpectrum(probs, tail, etas=(lam, lam))


def schmidt_spectrum(r, count=1024):
    """Schmidt spectrum of ``(x)_k TMSS(r_k)`` for any number of factors.

    One or two equal nonzero squeezings use the closed forms; other products
    are merged lazily from the per-factor geometric sequences.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r < 0) or not np.all(np.isfinite(r)):
        raise InvalidArgument("squeezing parameters must be finite and nonnegative")
    r = np.sort(r[r > 0])[::-1]
    etas = eta_of(r) if r.size else np.zeros(0)
    etas = np.atleast_1d(etas)
    etas = etas[etas > 0]
    if etas.size == 0:
        return SchmidtSpectrum(np.array([1.0]), 0.0, etas=())
    if etas.size == 1:
        return tmss_schmidt(r[0], count)
    if etas.size == 2 and etas[0] == etas[1]:
        return two_tmss_schmidt(r[0], count)
    probs, tail = kernels.product_spectrum(np.ascontiguousarray(etas), int(count))
    return SchmidtSpectrum(probs, float(tail), etas=tuple(etas))


def closed_L(r, n):
    """Sum of the first ``K = (N+1)(N+2)/2`` coefficients of TMSS(r) (x) TMSS(r).

    ``1 - [1 + (N+1) / cosh^2(r/2)] tanh^{2(N+1)}(r/2)``.
    """
    if r <= 0:
        raise InvalidArgument("closed_L needs r > 0")
    lam = eta_of(r)
    return 1.0 - (1.0 + (n + 1) / np.cosh(0.5 * r) ** 2) * lam ** (n + 1)


def closed_M(s, k):
    """Sum of the first ``K`` coefficients of TMSS(s): ``1 - tanh^{2K}(s/2)``."""
    if s <= 0:
        raise InvalidArgument("closed_M needs s > 0")
    return -np.expm1(k * np.log(eta_of(s)))


def f_function(lam, eta, x):
    """Margin of the sufficient concentration inequality at real ``x``.

    ``(1 - eta^{x+1}) - (1 - lam)^2 d/dlam[lam (1 - lam^{x+1}) / (1 - lam)]``;
    the derivative is expanded to ``(1 - (x+2) lam^{x+1} + (x+1) lam^{x+2}) / (1 - lam)^2``
    and the ones cancelled analytically.
    """
    x = np.asarray(x, dtype=float)
    out = (x + 2.0) * lam ** (x + 1.0) - (x + 1.0) * lam ** (x + 2.0) - eta ** (x + 1.0)
    return float(out) if out.ndim == 0 else out


def concentration_feasible(lam, eta, n_max=10_000):
    """Sufficient test for ``TMSS(r) (x) TMSS(r) -> TMSS(s) (x) vacuum`` under LOCC.

    Checks ``(1 - lam)^2 sum_{k<=N} (k+1) lam^k <= 1 - eta^{N+1}`` for
    ``N <= n_max`` with slack ``1e-12 (1 + N)``, then closes ``N > n_max``:
    either exactly (``eta <= lam``) or because both tails have dropped below
    the slack. The verdict is therefore a tolerance-level statement.
    """
    if not (0.0 < lam < 1.0 and 0.0 < eta < 1.0):
        raise InvalidArgument("lam and eta must lie in (0, 1)")
    n = np.arange(n_max + 1, dtype=float)
    tail_l = (1.0 + (n + 1.0) * (1.0 - lam)) * lam ** (n + 1.0)
    tail_m = eta ** (n + 1.0)
    if np.any(tail_m - tail_l > SLACK * (1.0 + n)):
        return False
    if eta <= lam:
        return True
    return bool(eta ** (n_max + 2.0) <= SLACK * (2.0 + n_max))


def dilution_witness(s, r, cap=10**6):
    """Smallest ``N`` with ``M_K > L_K`` at ``K = (N+1)(N+2)/2``.

    ``M_K`` sums the first ``K`` coefficients of TMSS(s), ``L_K`` those of
    TMSS(r) (x) TMSS(r). The comparison runs on the complementary tails in
    log space with relative margin ``1e-12``, so it stays meaningful when
    both sums round to one.

    Raises:
        NumericSearchError: no crossing up to ``cap``.
    """
    if not (s > 0 and r > 0):
        raise InvalidArgument("dilution_witness needs s > 0 and r > 0")
    n = kernels.dilution_search(math.log(eta_of(s)), eta_of(r), int(cap), DILUTION_MARGIN)
    if n < 0:
        raise NumericSearchError(f"no crossing M_K > L_K for N <= {cap}")
    return int(n)


def _dominates(source, target):
    """Target factors all at most as entangled as source factors (sorted, zero-padded)."""
    if source.etas is None or target.etas is None:
        return False
    es, et = list(source.etas), list(target.etas)
    d = max(len(es), len(et))
    es += [0.0] * (d - len(es))
    et += [0.0] * (d - len(et))
    return all(t <= s for s, t in zip(es, et))


def _envelope(spec, lower):
    """``(alpha, beta, delta, p)`` with ``log T(N)`` bounded by ``alpha - beta (N + delta)^p``.

    ``lower=True`` gives a lower bound, else an upper bound. Products of
    ``d >= 2`` factors use lattice-point counts of the simplex
    ``sum_j k_j a_j <= X`` (``a_j = -log eta_j``), bracketed by
    ``X^d / (d! prod a)`` and ``(X + sum a)^d / (d! prod a)``.
    """
    etas = np.asarray(spec.etas, dtype=float)
    d = etas.size
    a = -np.log(etas)
    if d == 1:
        return 0.0, float(a[0]), 1.0, 1.0
    c = math.factorial(d) * float(np.prod(a))
    if lower:
        # entry N+1 is at least P0 exp(-X) once X^d / c >= N + 2
        return float(np.sum(np.log1p(-etas))), c ** (1.0 / d), 2.0, 1.0 / d
    # at most N+1 entries have sum k a <= X for X = (c (N+1))^{1/d} - sum a;
    # the rest weigh at most d exp(-X / d)
    return math.log(d) + float(a.sum()) / d, c ** (1.0 / d) / d, 1.0, 1.0 / d


def _envelope_certificate(source, target, n0):
    """True when ``T_src(N) > T_tgt(N)`` is proven for every ``N >= n0``."""
    if source.etas is None or target.etas is None:
        return False
    if len(target.etas) == 0:
        return True
    if len(source.etas) == 0:
        return False
    al_s, be_s, de_s, p_s = _envelope(source, lower=True)
    al_t, be_t, de_t, p_t = _envelope(target, lower=False)
    if p_t < p_s:
        return False
    g0 = (al_s - al_t) - be_s * (n0 + de_s) ** p_s + be_t * (n0 + de_t) ** p_t
    # bound on the ratio of the derivative terms; nonincreasing in N when p_t >= p_s
    ratio = (be_s * p_s * (n0 + 1.0) ** (p_s - 1.0)) / (be_t * p_t * (n0 + 2.0) ** (p_t - 1.0))
    return bool(g0 > 0.0 and ratio <= 1.0)


def _probe_indices(lo, hi):
    """Sparse indices in ``(lo, hi]``: level ends of two-TMSS spectra and a geometric grid."""
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    j_max = int(math.isqrt(2 * hi)) + 2
    j = np.arange(j_max, dtype=np.int64)
    tri = (j + 1) * (j + 2) // 2 - 1
    grid = np.unique(np.floor(np.geomspace(max(lo, 1), hi, 4096)).astype(np.int64))
    cand = np.union1d(tri, grid)
    return cand[(cand > lo) & (cand <= hi)]


def nielsen_check(source, target, n_max=10_000, *, scan_limit=2**20):
    """Decide ``source -> target`` under LOCC from the partial sums.

    Every index ``N <= min(n_max, scan_limit)`` is compared; beyond that,
    closed-form spectra are probed sparsely up to ``n_max`` to find
    violations. The verdict is

    * ``impossible`` when some tail comparison fails by more than the slack,
    * ``possible`` when no comparison fails, none is a near-tie, and the
      remaining indices are covered by a certificate: factorwise domination
      of the TMSS squeezings (majorization survives tensor products), both
      supports exhausted, or an analytic tail envelope from the first
      unscanned index on,
    * ``inconclusive`` otherwise.

    Raises:
        InvalidArgument: a spectrum sums to more than one.
    """
    source.validate()
    target.validate()
    n_max = int(n_max)
    limit = min(n_max, scan_limit - 1, source.known_until, target.known_until)
    limit = int(limit)
    idx = np.arange(limit + 1, dtype=np.int64)
    log_slack = np.log1p(SLACK * (1.0 + idx))
    log_s, log_t = source.log_tail(idx), target.log_tail(idx)
    viol, tie = kernels.scan_gaps(log_s, log_t, log_slack)
    if viol >= 0:
        return LoccVerdict("impossible", int(viol), limit)
    if source.closed_form and target.closed_form:
        probes = _probe_indices(limit, n_max)
        if probes.size:
            pv, _ = kernels.scan_gaps(
                source.log_tail(probes), target.log_tail(probes), np.log1p(SLACK * (1.0 + probes))
            )
            if pv >= 0:
                return LoccVerdict("impossible", int(probes[pv]), limit)
    if _dominates(source, target):
        return LoccVerdict("possible", None, limit, "factor-domination")
    if tie >= 0:
        return LoccVerdict("inconclusive", int(tie), limit)
    if np.isneginf(log_s[-1]) and np.isneginf(log_t[-1]):
        return LoccVerdict("possible", None, limit, "exhaustive")
    if _envelope_certificate(source, target, limit + 1):
        return LoccVerdict("possible", None, limit, "tail-envelope")
    return LoccVerdict("inconclusive", limit + 1, limit)
