"""Fourier transform of k -> mu_k(phi) and the complex entropies E_xi with
E_xi'' = 2 exp(-i xi k)."""
from __future__ import annotations

import math

import numpy as np

from .domain import DEFAULT_SPEC, QuadratureSpec
from .entropies import Entropy1D
from .representation import integrate_k, k_interval
from .production import production

TAYLOR_SWITCH = 1e-3
_TAYLOR_TERMS = 6


def _series(xi, k, shift):
    """Truncated power series of E_xi (shift 0) or E_xi' (shift 1) near xi k = 0."""
    out = np.zeros(np.shape(k), complex)
    for n in range(2, 2 + _TAYLOR_TERMS):
        coef = -2.0 * (-1j) ** n * xi ** (n - 2) / math.factorial(n - shift)
        out = out + coef * np.power(k, n - shift)
    return out


def entropy_xi(xi: complex) -> Entropy1D:
    xi = complex(xi)
    if not (math.isfinite(xi.real) and math.isfinite(xi.imag)):
        raise ValueError("frequency must be finite")

    def split(k):
        k = np.asarray(k, float)
        small = np.abs(xi * k) < TAYLOR_SWITCH
        return k, small

    def value(k):
        k, small = split(k)
        z = xi * k
        with np.errstate(divide="ignore", invalid="ignore"):
            closed = -2.0 * (np.exp(-1j * z) - 1.0 + 1j * z) / xi ** 2
        return np.where(small, _series(xi, k, 0), closed)

    def deriv(k):
        k, small = split(k)
        z = xi * k
        with np.errstate(divide="ignore", invalid="ignore"):
            closed = 2j * (np.exp(-1j * z) - 1.0) / xi
        return np.where(small, _series(xi, k, 1), closed)

    def second(k):
        return 2.0 * np.exp(-1j * xi * np.asarray(k, float))

    return Entropy1D(value, deriv, second, None, f"E_xi({xi})")


def mu_hat(xis, u, u0, f, g, phi, spec: QuadratureSpec = DEFAULT_SPEC, inflate: float = 0.0) -> np.ndarray:
    """int mu_k(phi) exp(-i xi k) dk over the essential range, for each xi."""
    xis = np.atleast_1d(np.asarray(xis, complex))
    a, b = k_interval(u, u0, inflate)
    q = integrate_k(lambda ks: np.exp(-1j * xis[:, None] * ks[None, :]), u, u0, f, g, phi, a, b, spec)
    return np.asarray(q.value, complex)


def moment_series(u, u0, f, g, phi, nu_max: int, spec: QuadratureSpec = DEFAULT_SPEC) -> np.ndarray:
    """a_nu = (-i)^nu / nu! * int k^nu mu_k(phi) dk for nu = 0..nu_max."""
    a, b = k_interval(u, u0)
    nus = np.arange(nu_max + 1)
    q = integrate_k(lambda ks: ks[None, :] ** nus[:, None], u, u0, f, g, phi, a, b, spec)
    fact = np.array([math.factorial(int(n)) for n in nus], float)
    return (-1j) ** nus / fact * np.asarray(q.value, float)


def series_value(coeffs, xi: complex) -> complex:
    return complex(np.polynomial.polynomial.polyval(complex(xi), np.asarray(coeffs, complex)))


def fourier_rows(xis, u, u0, f, g, phi, spec: QuadratureSpec = DEFAULT_SPEC) -> list:
    """Rows ``(xi, mu_hat, production(E_xi), abs_err)`` for each frequency."""
    xis = np.atleast_1d(np.asarray(xis, complex))
    hats = mu_hat(xis, u, u0, f, g, phi, spec)
    rows = []
    for xi, h in zip(xis, hats):
        via = complex(production(entropy_xi(xi), u, u0, f, g, phi, spec).value)
        rows.append((complex(xi), complex(h), via, abs(h - via)))
    return rows
