import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gausstrans.states import tmss_product_cm
from gausstrans.symplectic import direct_sum, random_symplectic

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

ACCEPTANCE_LINES = []


def random_pure_bipartite(rng, n, r=None, scale=0.8):
    """(S_A + S_B) tmss_product_cm(r) (S_A + S_B)^T with random local symplectics."""
    if r is None:
        r = np.sort(rng.uniform(0.0, 2.0, n))[::-1]
    local = direct_sum(random_symplectic(n, scale, rng), random_symplectic(n, scale, rng))
    return local @ tmss_product_cm(r) @ local.T, np.asarray(r, dtype=float)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
