import numpy as np
import pytest
from scipy.integrate import quad
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import line_integral
from entprod import scenarios as S
from entprod.fields import AnalyticPiecewiseField, InitialDatum
from entprod.fluxes import burgers
from entprod.fourier import TAYLOR_SWITCH, entropy_xi, fourier_rows, moment_series, mu_hat, series_value

PHI = S.SHOCK_PHI


def closed_form(xi, k):
    return -2.0 * (np.exp(-1j * xi * k) - 1.0 + 1j * xi * k) / xi ** 2


def test_zero_frequency_is_k_squared():
    E = entropy_xi(0.0)
    k = np.linspace(-3, 3, 13)
    assert np.allclose(E.value(k), k ** 2, atol=1e-15)
    assert np.allclose(E.deriv(k), 2 * k, atol=1e-15)
    assert np.all(E.second(k) == 2)


def test_second_derivative_examples():
    assert entropy_xi(1.0).second(0.0) == 2.0
    E = entropy_xi(2 + 1j)
    k, h = 0.3, 1e-4
    fd2 = (E.value(k + h) - 2 * E.value(k) + E.value(k - h)) / h ** 2
    fd1 = (E.value(k + h) - E.value(k - h)) / (2 * h)
    assert abs(fd2 - E.second(k)) <= 1e-5
    assert abs(fd1 - E.deriv(k)) <= 1e-7


@pytest.mark.parametrize("xi", [1.0, -3.0, 2 + 1j, 0.5j])
def test_branches_agree_at_the_seam(xi):
    E = entropy_xi(xi)
    for side in (1 - 1e-9, 1 + 1e-9):
        k = side * TAYLOR_SWITCH / abs(xi)
        ref = closed_form(complex(xi), k)
        assert abs(E.value(k) - ref) <= 1e-9 * max(1.0, abs(ref))


@settings(max_examples=50, deadline=None)
@given(st.floats(-10, 10), st.floats(-3, 3), st.floats(-2, 2))
def test_matches_closed_form_away_from_zero(re, im, k):
    xi = complex(re, im)
    if abs(xi) < 0.1 or abs(xi * k) < 1e-2:
        return
    got = entropy_xi(xi).value(k)
    ref = closed_form(xi, k)
    assert abs(got - ref) <= 1e-10 * max(1.0, abs(ref))


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        entropy_xi(complex(np.inf, 0))


def test_mu_hat_shock_oracles(shock):
    L = line_integral(PHI, 0.5)
    h0 = mu_hat([0.0], *shock.args(), PHI)[0]
    assert h0 == pytest.approx(L / 6, rel=1e-12)
    xi = 3.0
    # int_0^1 k(1-k) e^{-i xi k} dk in closed form
    # int_0^1 k (1 - k) e^{-i xi k} dk by integrating by parts twice
    c = -1j * xi
    e = np.exp(c)
    exact = (1 + e) / c ** 2 - 2 * (e - 1) / c ** 3
    ref = quad(lambda k: k * (1 - k) * np.cos(xi * k), 0, 1)[0] - 1j * quad(lambda k: k * (1 - k) * np.sin(xi * k), 0, 1)[0]
    assert abs(exact - ref) <= 1e-12
    assert mu_hat([xi], *shock.args(), PHI)[0] == pytest.approx(L * ref, abs=1e-9)


def test_constant_solution_has_zero_transform():
    u = AnalyticPiecewiseField((0.3,), (), (0.3, 0.3), 2.0, datum=InitialDatum.constant(0.3))
    hats = mu_hat([0.0, 1.0, 2 + 1j], u, u.datum, burgers(), None, PHI)
    assert np.max(np.abs(hats)) <= 1e-13


def test_moment_examples(shock):
    L = line_integral(PHI, 0.5)
    a = moment_series(*shock.args(), PHI, 4)
    assert a[0] == pytest.approx(mu_hat([0.0], *shock.args(), PHI)[0], rel=1e-13)
    assert a[1] == pytest.approx(-1j * L / 12, rel=1e-12)
    # int_0^1 k^2 (1 - k) dk = 1/12, so a_2 = -(1/2)(1/12 - ...) = -L/40
    assert a[2] == pytest.approx(-0.5 * L * (1 / 4 - 1 / 5), rel=1e-12)


def test_series_truncation_decreases(shock):
    coeffs = moment_series(*shock.args(), PHI, 24)
    target = mu_hat([2.0], *shock.args(), PHI)[0]
    errs = [abs(series_value(coeffs[:n + 1], 2.0) - target) for n in (4, 8, 12, 16)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] <= 1e-8


def test_conjugate_symmetry(shock):
    xis = np.array([1.0, 2 + 1j, -0.5 + 3j])
    a = mu_hat(xis, *shock.args(), PHI)
    b = mu_hat(-np.conj(xis), *shock.args(), PHI)
    assert np.max(np.abs(b - np.conj(a))) <= 1e-10


def test_rows_layout(nonentropic):
    rows = fourier_rows([1.0, -5.0], *nonentropic.args(), PHI)
    assert len(rows) == 2
    for xi, h, via, err in rows:
        assert err == abs(h - via) and err <= 1e-6 * (1 + abs(h))
