import numpy as np
import pytest
from hypothesis import given, strategies as st

from gausstrans.errors import InvalidArgument, NumericDomainError
from gausstrans.symplectic import (
    LAMBDA1,
    SIGMA1,
    direct_sum,
    is_pure,
    is_symplectic,
    is_valid_cm,
    max_norm,
    mode_permutation,
    random_symplectic,
    reflection,
    symplectic_form,
    symplectic_spectrum,
    williamson,
    williamson_with_form,
)

seeds = st.integers(0, 2**32 - 1)


def random_cm(rng, m, nu_max=3.0):
    S = random_symplectic(m, 0.7, rng)
    nu = rng.uniform(1.0, nu_max, m)
    return S @ np.diag(np.repeat(nu, 2)) @ S.T, np.sort(nu)


class TestForm:
    def test_one_mode(self):
        assert np.array_equal(symplectic_form(1), [[0, -1], [1, 0]])

    def test_block_diagonal(self):
        sigma = symplectic_form(3)
        assert sigma.shape == (6, 6)
        assert np.array_equal(sigma, direct_sum(SIGMA1, SIGMA1, SIGMA1))
        assert np.array_equal(sigma @ sigma, -np.eye(6))

    def test_zero_modes_rejected(self):
        with pytest.raises(InvalidArgument):
            symplectic_form(0)

    def test_reflection_is_antisymplectic(self):
        lam = reflection(2)
        assert np.allclose(lam @ symplectic_form(2) @ lam.T, -symplectic_form(2))


class TestIsSymplectic:
    def test_identity(self):
        assert is_symplectic(np.eye(4))

    def test_single_mode_squeezer(self):
        assert is_symplectic(np.diag([3.0, 1 / 3.0]))

    def test_scaling_is_not(self):
        assert not is_symplectic(2 * np.eye(2))

    def test_reflection_is_not(self):
        assert not is_symplectic(LAMBDA1)

    def test_odd_dimension(self):
        with pytest.raises(InvalidArgument):
            is_symplectic(np.eye(3))

    def test_random(self, rng):
        assert is_symplectic(random_symplectic(4, 1.0, rng))

    def test_permutation(self):
        assert is_symplectic(mode_permutation([2, 0, 1]))


class TestValidity:
    def test_vacuum(self):
        assert is_valid_cm(np.eye(4))

    def test_thermal(self):
        assert is_valid_cm(3.0 * np.eye(2))

    def test_below_vacuum(self):
        assert not is_valid_cm(0.5 * np.eye(2))

    def test_squeezed(self):
        assert is_valid_cm(np.diag([10.0, 0.1]))
        assert not is_valid_cm(np.diag([10.0, 0.09]))

    def test_asymmetric_rejected(self):
        with pytest.raises(InvalidArgument):
            is_valid_cm(np.array([[1.0, 0.5], [0.0, 1.0]]))

    def test_shape_rejected(self):
        with pytest.raises(InvalidArgument):
            is_valid_cm(np.ones((2, 3)))


class TestSpectrum:
    def test_one_mode_diag(self):
        assert np.allclose(symplectic_spectrum(np.diag([4.0, 1.0])), [2.0])

    def test_vacuum(self):
        assert np.allclose(symplectic_spectrum(np.eye(4)), [1.0, 1.0])

    def test_thermal(self):
        assert np.allclose(symplectic_spectrum(3.0 * np.eye(2)), [3.0])

    def test_ascending(self, rng):
        gamma, nu = random_cm(rng, 4)
        assert np.allclose(symplectic_spectrum(gamma), nu, atol=1e-9)

    def test_not_positive_definite(self):
        with pytest.raises(NumericDomainError):
            symplectic_spectrum(np.diag([1.0, -1.0]))


class TestPurity:
    def test_vacuum_pure(self):
        assert is_pure(np.eye(2))

    def test_thermal_impure(self):
        assert not is_pure(2.0 * np.eye(2))

    def test_squeezed_pure(self, rng):
        S = random_symplectic(3, 1.0, rng)
        assert is_pure(S @ S.T)


class TestWilliamson:
    def test_diag_example(self):
        w = williamson(np.diag([4.0, 1.0]))
        gamma = np.diag([4.0, 1.0])
        assert np.allclose(w.S @ gamma @ w.S.T, 2.0 * np.eye(2))
        assert np.allclose(w.spectrum, [2.0])

    def test_random(self, rng):
        gamma, nu = random_cm(rng, 3)
        w = williamson(gamma)
        assert is_symplectic(w.S, 1e-8)
        assert np.allclose(w.S @ gamma @ w.S.T, np.diag(w.diagonal), atol=1e-8)
        assert np.allclose(symplectic_spectrum(w.S @ gamma @ w.S.T), nu, atol=1e-9)

    def test_degenerate(self, rng):
        S = random_symplectic(3, 0.5, rng)
        gamma = S @ (2.5 * np.eye(6)) @ S.T
        w = williamson(gamma)
        assert np.allclose(w.spectrum, 2.5)
        assert np.allclose(w.S @ gamma @ w.S.T, 2.5 * np.eye(6), atol=1e-8)

    def test_pure_state(self, rng):
        S = random_symplectic(2, 1.0, rng)
        w = williamson(S @ S.T)
        assert np.allclose(w.spectrum, 1.0)

    def test_custom_form(self, rng):
        # a symplectic basis change moves the form; the diagonalizer follows it
        T = random_symplectic(2, 0.5, rng) @ np.diag([2.0, 1.0, 1.0, 0.5])
        form = T @ symplectic_form(2) @ T.T
        gamma, _ = random_cm(rng, 2)
        S, nu = williamson_with_form(gamma, form)
        assert np.allclose(S @ form @ S.T, symplectic_form(2), atol=1e-9)
        assert np.allclose(S @ gamma @ S.T, np.diag(np.repeat(nu, 2)), atol=1e-9)


@given(seeds, st.integers(1, 4))
def test_spectrum_is_symplectic_invariant(seed, m):
    rng = np.random.default_rng(seed)
    gamma, _ = random_cm(rng, m)
    S = random_symplectic(m, 0.8, rng)
    a = symplectic_spectrum(gamma)
    assert np.allclose(symplectic_spectrum(S @ gamma @ S.T), a, atol=1e-9 * (1 + a.max()))


@given(seeds, st.integers(1, 4))
def test_domination_of_ordered_matrices(seed, m):
    rng = np.random.default_rng(seed)
    M2, _ = random_cm(rng, m)
    P = rng.normal(size=(2 * m, 2 * m)) * rng.uniform(0, 1)
    M1 = M2 + P @ P.T
    assert np.all(symplectic_spectrum(M1) >= symplectic_spectrum(M2) - 1e-9)


@given(seeds, st.integers(1, 4))
def test_purity_matches_unit_spectrum(seed, m):
    rng = np.random.default_rng(seed)
    S = random_symplectic(m, 1.0, rng)
    gamma = S @ S.T
    assert is_pure(gamma)
    assert np.allclose(symplectic_spectrum(gamma), 1.0, atol=1e-8 * (1 + max_norm(gamma)))
    mixed = S @ np.diag(np.repeat(rng.uniform(1.01, 2.0, m), 2)) @ S.T
    assert not is_pure(mixed)


@given(seeds, st.integers(1, 4))
def test_williamson_round_trip(seed, m):
    rng = np.random.default_rng(seed)
    gamma, _ = random_cm(rng, m)
    w = williamson(gamma)
    inv = np.linalg.inv(w.S)
    rebuilt = inv @ np.diag(w.diagonal) @ inv.T
    assert max_norm(rebuilt - gamma) <= 1e-8 * max_norm(gamma)
    assert is_symplectic(w.S, 1e-8 * (1 + max_norm(w.S)) ** 2)


@given(
    st.floats(0.1, 10.0),
    st.floats(0.1, 10.0),
    st.floats(-0.99, 0.99),
)
def test_one_mode_spectrum_is_root_determinant(a, b, corr):
    c = corr * np.sqrt(a * b)
    gamma = np.array([[a, c], [c, b]])
    assert abs(symplectic_spectrum(gamma)[0] - np.sqrt(np.linalg.det(gamma))) <= 1e-10 * (1 + a + b)
