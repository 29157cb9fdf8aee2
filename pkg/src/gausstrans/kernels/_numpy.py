"""Pure numpy / stdlib versions of the hot loops."""

import heapq
import math

import numpy as np


def pair_spectrum(lam, count):
    """First ``count`` Schmidt coefficients of two equal TMSS, descending.

    Level ``j`` carries ``(1 - lam)^2 lam^j`` with multiplicity ``j + 1``.
    """
    levels = int(math.ceil((math.sqrt(8.0 * count + 1.0) - 1.0) / 2.0)) + 1
    j = np.arange(levels)
    values = (1.0 - lam) ** 2 * lam ** j.astype(float)
    return np.repeat(values, j + 1)[:count]


def product_spectrum(etas, count):
    """Largest ``count`` coefficients of a product of geometric distributions.

    Returns ``(probs, tail)`` where ``tail`` is the exact mass of everything
    not emitted, summed over the frontier subtrees.
    """
    etas = np.asarray(etas, dtype=float)
    d = etas.size
    log_eta = np.log(etas)
    log_q = np.log1p(-etas)
    root = (float(log_q.sum()), 0, (0,) * d)
    heap = [(-root[0], 0, root[2])]
    probs = np.empty(count)
    serial = 1
    out = 0
    while out < count and heap:
        neg, _, k = heapq.heappop(heap)
        probs[out] = math.exp(-neg)
        out += 1
        last = 0
        for j in range(d - 1, -1, -1):
            if k[j]:
                last = j
                break
        for j in range(last, d):
            child = k[:j] + (k[j] + 1,) + k[j + 1 :]
            heapq.heappush(heap, (neg - log_eta[j], serial, child))
            serial += 1
    tail = 0.0
    for _, _, k in heap:
        last = 0
        for j in range(d - 1, -1, -1):
            if k[j]:
                last = j
                break
        logm = k[last] * log_eta[last]
        for i in range(last):
            logm += log_q[i] + k[i] * log_eta[i]
        tail += math.exp(logm)
    return probs[:out], tail


def dilution_search(log_eta, lam, cap, margin):
    """Smallest level ``N`` where one TMSS out-sums two equal TMSS on the first ``K(N)`` terms.

    Compares complementary tails in log space:
    ``log([1 + (N+1)(1-lam)] lam^(N+1)) - K(N) log(eta) > margin``.
    Returns -1 when no ``N <= cap`` qualifies.
    """
    log_lam = math.log(lam)
    chunk = 65536
    start = 0
    while start <= cap:
        n = np.arange(start, min(start + chunk, cap + 1), dtype=float)
        k = 0.5 * (n + 1.0) * (n + 2.0)
        gap = np.log1p((n + 1.0) * (1.0 - lam)) + (n + 1.0) * log_lam - k * log_eta
        hit = np.flatnonzero(gap > margin)
        if hit.size:
            return int(start + hit[0])
        start += chunk
    return -1


def scan_gaps(log_src, log_tgt, log_slack):
    """First violation and first near-tie of ``log_tgt <= log_src``.

    A violation is ``log_tgt - log_src > log_slack``; a near-tie is
    ``0 < |log_tgt - log_src| <= log_slack``. Exact equality, including both
    tails being zero, counts as satisfied. Returns ``(violation, tie)``
    indices, -1 when absent; only ties before the violation are reported.
    """
    both_zero = np.isneginf(log_src) & np.isneginf(log_tgt)
    with np.errstate(invalid="ignore"):
        gap = np.where(both_zero, -np.inf, log_tgt - log_src)
    viol = np.flatnonzero(gap > log_slack)
    tie = np.flatnonzero((np.abs(gap) <= log_slack) & (gap != 0.0))
    first_viol = int(viol[0]) if viol.size else -1
    if first_viol >= 0:
        tie = tie[tie < first_viol]
    return first_viol, int(tie[0]) if tie.size else -1
