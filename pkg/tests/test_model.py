import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from asymtunnel.errors import DomainError
from asymtunnel.model import (
    FULL_BASIS,
    Site,
    hamiltonian_2x2,
    hamiltonian_full,
    make_params,
    number_operator,
    params_from_beta,
)

# Keep |alpha| away from the range where 1 - alpha rounds to 1.
alphas = st.just(0.0) | st.floats(min_value=1e-6, max_value=0.999) | st.floats(min_value=-0.999, max_value=-1e-6)
couplings = st.floats(min_value=0.01, max_value=10.0) | st.floats(min_value=-10.0, max_value=-0.01)


@pytest.mark.parametrize(
    "g, alpha, beta, omega",
    [(1.0, 0.0, 1.0, 1.0), (1.0, 0.6, 4.0, 0.8), (2.0, -0.6, 0.25, 1.6)],
)
def test_make_params_derived_values(g, alpha, beta, omega):
    p = make_params(g, alpha)
    assert p.beta == pytest.approx(beta, abs=1e-15)
    assert p.omega == pytest.approx(omega, abs=1e-15)


def test_omega_matches_numeric_eigenvalues():
    p = make_params(2.0, -0.6)
    ev = np.sort(np.linalg.eigvals(hamiltonian_2x2(p)).real)
    np.testing.assert_allclose(ev, [-1.6, 1.6], atol=1e-14)


@pytest.mark.parametrize("alpha", [1.0, -1.0, 1.5, -7.0, math.nan, math.inf])
def test_alpha_out_of_domain(alpha):
    with pytest.raises(DomainError):
        make_params(1.0, alpha)


def test_alpha_error_names_exceptional_point():
    with pytest.raises(DomainError, match="exceptional point"):
        make_params(1.0, 1.0)


def test_zero_coupling_rejected():
    with pytest.raises(DomainError):
        make_params(0.0, 0.3)


@pytest.mark.parametrize("beta", [0.0, -1.0])
def test_beta_must_be_positive(beta):
    with pytest.raises(DomainError):
        params_from_beta(1.0, beta)


def test_params_from_beta_roundtrip():
    assert params_from_beta(1.0, 4.0).alpha == pytest.approx(0.6, abs=1e-15)


def test_params_are_immutable():
    p = make_params(1.0, 0.2)
    with pytest.raises(AttributeError):
        p.alpha = 0.3


def test_full_hamiltonian_hermitian_limit():
    h = hamiltonian_full(make_params(1.0, 0.0))
    expected = np.zeros((4, 4))
    expected[1, 2] = expected[2, 1] = -1.0
    np.testing.assert_array_equal(h, expected)


def test_full_hamiltonian_asymmetric_entries():
    h = hamiltonian_full(make_params(1.0, 0.6))
    assert h[1, 2] == pytest.approx(-0.4, abs=1e-15)
    assert h[2, 1] == pytest.approx(-1.6, abs=1e-15)
    assert FULL_BASIS == ("11", "10", "01", "00")


@given(couplings, alphas)
def test_full_hamiltonian_outer_rows_vanish(g, alpha):
    h = hamiltonian_full(make_params(g, alpha))
    for k in (0, 3):
        assert not h[k].any() and not h[:, k].any()


@given(couplings, alphas)
def test_central_block_is_2x2(g, alpha):
    p = make_params(g, alpha)
    np.testing.assert_array_equal(hamiltonian_full(p)[1:3, 1:3], hamiltonian_2x2(p))


@pytest.mark.parametrize(
    "g, alpha, expected",
    [
        (1.0, 0.0, [[0, -1], [-1, 0]]),
        (1.0, 0.6, [[0, -0.4], [-1.6, 0]]),
        (-1.0, 0.6, [[0, 0.4], [1.6, 0]]),
    ],
)
def test_hamiltonian_2x2(g, alpha, expected):
    np.testing.assert_allclose(hamiltonian_2x2(make_params(g, alpha)), expected, atol=1e-15)


def test_sign_of_g_keeps_omega():
    assert make_params(-1.0, 0.6).omega == make_params(1.0, 0.6).omega


@given(couplings, alphas)
def test_non_hermitian_iff_asymmetric(g, alpha):
    h = hamiltonian_2x2(make_params(g, alpha))
    assert (h[0, 1] != np.conj(h[1, 0])) == (alpha != 0.0)


SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]])


@given(couplings, alphas)
def test_hermitian_plus_antihermitian_split(g, alpha):
    # With the standard sigma_y, H = H0 + iV needs V = +g alpha sigma_y.
    h0 = -g * SIGMA_X
    v = g * alpha * SIGMA_Y
    np.testing.assert_array_equal(v, v.conj().T)
    np.testing.assert_array_equal(h0, h0.conj().T)
    assert np.trace(v) == 0
    h = hamiltonian_2x2(make_params(g, alpha))
    assert np.max(np.abs(h - h0 - 1j * v)) <= 1e-15 * max(1.0, abs(g))


@given(couplings, alphas)
def test_opposite_sign_split_gives_reversed_coupling(g, alpha):
    # V = -g alpha sigma_y yields the transpose: hopping weights swapped.
    h = hamiltonian_2x2(make_params(g, alpha))
    flipped = -g * SIGMA_X + 1j * (-g * alpha * SIGMA_Y)
    assert np.max(np.abs(flipped - h.T)) <= 1e-15 * max(1.0, abs(g))


def test_number_operators():
    np.testing.assert_array_equal(number_operator("A"), np.diag([1, 0]))
    np.testing.assert_array_equal(number_operator(Site.B), np.diag([0, 1]))
    np.testing.assert_array_equal(number_operator("A") + number_operator("B"), np.eye(2))
