import math
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gausstrans.kernels import _numba, _numpy

IMPLS = [pytest.param(_numpy, id="numpy"), pytest.param(_numba, id="numba")]


@pytest.mark.parametrize("impl", IMPLS)
def test_pair_spectrum(impl):
    p = impl.pair_spectrum(0.3, 10)
    lvl = np.array([0, 1, 1, 2, 2, 2, 3, 3, 3, 3])
    assert np.allclose(p, 0.49 * 0.3**lvl, rtol=1e-15)


@pytest.mark.parametrize("impl", IMPLS)
def test_product_spectrum_mass(impl):
    probs, tail = impl.product_spectrum(np.array([0.6, 0.3, 0.1]), 500)
    assert probs.size == 500
    assert np.all(np.diff(probs) <= 0)
    assert abs(probs.sum() + tail - 1.0) < 1e-13


@pytest.mark.parametrize("impl", IMPLS)
def test_scan_gaps(impl):
    log_src = np.log(np.array([0.5, 0.2, 0.1, 0.0 + 1e-300]))
    log_tgt = np.log(np.array([0.4, 0.2 * (1 + 1e-14), 0.3, 1e-300]))
    slack = np.full(4, 1e-12)
    assert impl.scan_gaps(log_src, log_tgt, slack) == (2, 1)


@pytest.mark.parametrize("impl", IMPLS)
def test_scan_gaps_zero_tails(impl):
    neg = np.full(3, -np.inf)
    assert impl.scan_gaps(neg, neg, np.full(3, 1e-12)) == (-1, -1)


@pytest.mark.parametrize("impl", IMPLS)
def test_dilution_search(impl):
    log_eta = math.log(math.tanh(5.0) ** 2)
    lam = math.tanh(0.1) ** 2
    assert impl.dilution_search(log_eta, lam, 10**6, 1e-12) == 50787
    assert impl.dilution_search(log_eta, lam, 100, 1e-12) == -1


@given(
    st.lists(st.floats(0.01, 0.95), min_size=2, max_size=4),
    st.integers(1, 300),
)
def test_product_spectrum_paths_agree(etas, count):
    etas = np.sort(np.array(etas))[::-1]
    p1, t1 = _numpy.product_spectrum(etas, count)
    p2, t2 = _numba.product_spectrum(etas, count)
    assert np.allclose(p1, p2, rtol=1e-13, atol=0)
    assert t1 == pytest.approx(t2, rel=1e-10, abs=1e-15)


@given(st.floats(0.01, 20.0), st.floats(0.01, 5.0))
def test_dilution_paths_agree(s, r):
    log_eta = math.log(math.tanh(s / 2) ** 2)
    lam = math.tanh(r / 2) ** 2
    assert _numpy.dilution_search(log_eta, lam, 10**5, 1e-12) == _numba.dilution_search(
        log_eta, lam, 10**5, 1e-12
    )


@given(st.integers(0, 2**32 - 1), st.integers(1, 2000))
def test_scan_paths_agree(seed, n):
    rng = np.random.default_rng(seed)
    a = np.log(rng.uniform(size=n))
    b = a + rng.choice([0.0, 1e-13, -1e-13, 1e-3, -1e-3], size=n, p=[0.2, 0.2, 0.2, 0.05, 0.35])
    slack = np.full(n, 1e-12)
    assert _numpy.scan_gaps(a, b, slack) == _numba.scan_gaps(a, b, slack)


def test_env_flag_selects_numpy():
    code = "from gausstrans import kernels; print(kernels.NUMBA_ENABLED, kernels.scan_gaps.__module__)"
    env = dict(os.environ, GAUSSTRANS_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "gausstrans.kernels._numpy"]
