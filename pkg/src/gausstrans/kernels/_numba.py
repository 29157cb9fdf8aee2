"""numba-compiled versions of the hot loops; same contracts as ``_numpy``."""

import heapq
import math

import numpy as np
from numba import njit


@njit(cache=True)
def pair_spectrum(lam, count):
    out = np.empty(count)
    scale = (1.0 - lam) ** 2
    i = 0
    j = 0
    value = scale
    while i < count:
        for _ in range(j + 1):
            if i == count:
                break
            out[i] = value
            i += 1
        j += 1
        value = scale * lam**j
    return out


@njit(cache=True)
def _last_nonzero(row):
    for j in range(row.shape[0] - 1, -1, -1):
        if row[j] != 0:
            return j
    return 0


@njit(cache=True)
def product_spectrum(etas, count):
    d = etas.shape[0]
    log_eta = np.log(etas)
    log_q = np.log1p(-etas)
    cap = 1 + count * d
    idx = np.zeros((cap, d), dtype=np.int64)
    logv = np.empty(cap)
    logv[0] = log_q.sum()
    heap = [(-logv[0], 0)]
    probs = np.empty(count)
    nodes = 1
    out = 0
    while out < count and len(heap) > 0:
        neg, node = heapq.heappop(heap)
        probs[out] = math.exp(-neg)
        out += 1
        for j in range(_last_nonzero(idx[node]), d):
            idx[nodes, :] = idx[node, :]
            idx[nodes, j] += 1
            logv[nodes] = logv[node] + log_eta[j]
            heapq.heappush(heap, (-logv[nodes], nodes))
            nodes += 1
    tail = 0.0
    for item in heap:
        k = idx[item[1]]
        last = _last_nonzero(k)
        logm = k[last] * log_eta[last]
        for i in range(last):
            logm += log_q[i] + k[i] * log_eta[i]
        tail += math.exp(logm)
    return probs[:out], tail


@njit(cache=True)
def dilution_search(log_eta, lam, cap, margin):
    log_lam = math.log(lam)
    for n in range(cap + 1):
        k = 0.5 * (n + 1.0) * (n + 2.0)
        gap = math.log1p((n + 1.0) * (1.0 - lam)) + (n + 1.0) * log_lam - k * log_eta
        if gap > margin:
            return n
    return -1


@njit(cache=True)
def scan_gaps(log_src, log_tgt, log_slack):
    viol = -1
    tie = -1
    for i in range(log_src.shape[0]):
        if math.isinf(log_src[i]) and math.isinf(log_tgt[i]) and log_src[i] < 0 and log_tgt[i] < 0:
            continue
        gap = log_tgt[i] - log_src[i]
        if tie < 0 and gap != 0.0 and abs(gap) <= log_slack[i]:
            tie = i
        if gap > log_slack[i]:
            viol = i
            break
    return viol, tie
