"""Separable polynomial approximation of zeta(t, x, u) by convolution with a
Landau-type kernel, and p_K error measurement."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.special import beta

from .domain import panel_rule


@dataclass(frozen=True)
class LandauKernel:
    """rho(s) = c (1 - (s / 3R)^2)^nu on |s| <= 3R, zero outside."""

    nu: int
    R: float

    def __post_init__(self):
        if self.nu < 1 or not self.R > 0:
            raise ValueError("need nu >= 1 and R > 0")

    @property
    def c(self) -> float:
        return 1.0 / (3.0 * self.R * beta(0.5, self.nu + 1.0))

    def __call__(self, s):
        r = np.asarray(s, float) / (3.0 * self.R)
        return self.c * np.clip(1.0 - r * r, 0.0, None) ** self.nu

    def deriv(self, s):
        r = np.asarray(s, float) / (3.0 * self.R)
        inside = np.abs(r) < 1.0
        return np.where(inside, self.c * self.nu * np.clip(1.0 - r * r, 0.0, None) ** (self.nu - 1)
                        * (-2.0 * r / (3.0 * self.R)), 0.0)

    def mass(self) -> float:
        """Integral over [-3R, 3R] by a rule exact for the polynomial."""
        n, w = panel_rule([-3.0 * self.R, 3.0 * self.R], self.nu + 2)
        return float(self(n) @ w)


def landau_kernel(nu: int, R: float) -> LandauKernel:
    return LandauKernel(int(nu), float(R))


def _smoothstep(r):
    """1 for r <= 1, 0 for r >= 2, quintic C2 blend in between."""
    s = np.clip(2.0 - np.asarray(r, float), 0.0, 1.0)
    return s ** 3 * (10.0 - 15.0 * s + 6.0 * s * s)


def _smoothstep_d(r):
    r = np.asarray(r, float)
    s = np.clip(2.0 - r, 0.0, 1.0)
    return -30.0 * s * s * (1.0 - s) ** 2 * np.sign(r)


def cutoff(y, R):
    """Product cutoff: 1 on [-R, R] per axis, 0 outside [-2R, 2R]."""
    return _smoothstep(np.abs(y) / R)


def cutoff_d(y, R):
    return _smoothstep_d(np.abs(y) / R) * np.sign(y) / R


@dataclass(frozen=True)
class SeparableFunction:
    """sum_m P_m(t, x) T_m(u / R) with P_m in the Chebyshev basis of (t / R, x / R).

    ``coeffs[i, j, m]`` multiplies T_i(t / R) T_j(x / R) T_m(u / R).
    """

    coeffs: np.ndarray
    R: float = 1.0

    @property
    def terms(self) -> list:
        """(u-degree, (t, x) coefficient array) pairs, one per Chebyshev degree in u."""
        return [(m, self.coeffs[:, :, m]) for m in range(self.coeffs.shape[2])]

    def _d(self, dt=0, dx=0, du=0):
        c = self.coeffs
        for axis, k in enumerate((dt, dx, du)):
            if k:
                c = C.chebder(c, k, axis=axis) / self.R ** k
        return c

    def _eval(self, c, t, x, u):
        t, x, u = np.broadcast_arrays(np.asarray(t, float), np.asarray(x, float), np.asarray(u, float))
        return C.chebval3d(t / self.R, x / self.R, u / self.R, c)

    def value(self, t, x, u):
        return self._eval(self.coeffs, t, x, u)

    def dt(self, t, x, u):
        return self._eval(self._d(dt=1), t, x, u)

    def dx(self, t, x, u):
        return self._eval(self._d(dx=1), t, x, u)

    def du(self, t, x, u):
        return self._eval(self._d(du=1), t, x, u)

    def dtu(self, t, x, u):
        return self._eval(self._d(dt=1, du=1), t, x, u)

    def dxu(self, t, x, u):
        return self._eval(self._d(dx=1, du=1), t, x, u)

    def grid(self, ts, xs, us, dt=0, dx=0, du=0):
        c = self._d(dt, dx, du)
        return C.chebgrid3d(np.asarray(ts) / self.R, np.asarray(xs) / self.R, np.asarray(us) / self.R, c)

    def to_json(self) -> list:
        return [{"u_power": m, "basis": "chebyshev", "R": self.R, "txt": block.tolist()} for m, block in self.terms]


def _axis_rule(nu, R):
    order = 2 * nu + 8
    return panel_rule([-2 * R, -R, R, 2 * R], order)


def _cut_values(zeta, R, nodes, deriv=None):
    T, X, U = np.meshgrid(nodes, nodes, nodes, indexing="ij")
    chi = cutoff(T, R) * cutoff(X, R) * cutoff(U, R)
    if deriv is None:
        return chi * zeta.value(T, X, U)
    if deriv == "t":
        return chi * zeta.dt(T, X, U) + cutoff_d(T, R) * cutoff(X, R) * cutoff(U, R) * zeta.value(T, X, U)
    raise ValueError(deriv)


def _contract(Z, mats):
    for M in mats:
        Z = np.tensordot(Z, M, axes=([0], [1]))
    return Z


def cheb_nodes(n: int) -> np.ndarray:
    return np.cos(np.pi * (np.arange(n) + 0.5) / n)[::-1]


def tensor_approximate(zeta, nu: int, R: float = 1.0) -> SeparableFunction:
    """Convolution of the cut-off zeta with the product Landau kernel.

    For points of K = [-R, R]^3 the kernel argument stays in [-3R, 3R], so
    the result is a polynomial of degree 2 nu per variable there. It is
    sampled at 2 nu + 1 Chebyshev points per axis and interpolated exactly.
    """
    rho = landau_kernel(nu, R)
    z, wz = _axis_rule(nu, R)
    Z = _cut_values(zeta, R, z)
    y = R * cheb_nodes(2 * nu + 1)
    A = rho(y[:, None] - z[None, :]) * wz[None, :]
    vals = _contract(Z, (A, A, A))
    V = C.chebvander(y / R, 2 * nu)
    Vinv = np.linalg.inv(V)
    coeffs = _contract(vals, (Vinv, Vinv, Vinv))
    return SeparableFunction(coeffs, R)


def convolve_at(zeta, nu: int, R: float, points, deriv=None) -> np.ndarray:
    """Direct quadrature of (cutoff * zeta) * rho at scattered points.

    ``deriv='t'`` convolves d_t(cutoff * zeta) instead.
    """
    rho = landau_kernel(nu, R)
    z, wz = _axis_rule(nu, R)
    Z = _cut_values(zeta, R, z, deriv)
    P = np.atleast_2d(np.asarray(points, float))
    At, Ax, Au = (rho(P[:, i, None] - z[None, :]) * wz[None, :] for i in range(3))
    tmp = np.einsum("abc,pc->pab", Z, Au, optimize=True)
    tmp = np.einsum("pab,pb->pa", tmp, Ax)
    return np.einsum("pa,pa->p", tmp, At)


def pk_error(zeta, approx: SeparableFunction, R: float = 1.0, n: int = 33) -> float:
    """p_K(zeta - approx) on an n^3 grid of K = [-R, R]^3."""
    g = np.linspace(-R, R, n)
    T, X, U = np.meshgrid(g, g, g, indexing="ij")

    def sup(exact, d):
        return float(np.max(np.abs(exact(T, X, U) - approx.grid(g, g, g, *d))))

    c1 = sup(zeta.value, (0, 0, 0)) + max(sup(zeta.dt, (1, 0, 0)), sup(zeta.dx, (0, 1, 0)), sup(zeta.du, (0, 0, 1)))
    return c1 + sup(zeta.dtu, (1, 0, 1)) + sup(zeta.dxu, (0, 1, 1))


def approximation_ladder(zeta, nus=(4, 8, 16, 32), R: float = 1.0, n: int = 33) -> list:
    """(nu, p_K error, number of separable terms) for each order."""
    out = []
    for nu in nus:
        approx = tensor_approximate(zeta, nu, R)
        out.append((int(nu), pk_error(zeta, approx, R, n), len(approx.terms)))
    return out


def refit_defect(zeta, nu: int, R: float = 1.0, n_points: int = 50, seed: int = 0) -> float:
    """Largest relative gap between the separable form and direct convolution at random points of K."""
    approx = tensor_approximate(zeta, nu, R)
    P = np.random.default_rng(seed).uniform(-R, R, size=(n_points, 3))
    direct = convolve_at(zeta, nu, R, P)
    sep = approx.value(P[:, 0], P[:, 1], P[:, 2])
    return float(np.max(np.abs(direct - sep)) / max(1.0, float(np.max(np.abs(direct)))))


@dataclass(frozen=True)
class TimeReflection:
    """Extension to t < 0 by 2 zeta(0, x, u) - zeta(-t, x, u); C1 across t = 0."""

    zeta: object

    def _pick(self, t, pos, neg):
        return np.where(np.asarray(t) >= 0, pos, neg)

    def value(self, t, x, u):
        z, a = self.zeta, np.abs(t)
        return self._pick(t, z.value(a, x, u), 2 * z.value(0 * a, x, u) - z.value(a, x, u))

    def dt(self, t, x, u):
        return self.zeta.dt(np.abs(t), x, u)

    def dx(self, t, x, u):
        z, a = self.zeta, np.abs(t)
        return self._pick(t, z.dx(a, x, u), 2 * z.dx(0 * a, x, u) - z.dx(a, x, u))

    def du(self, t, x, u):
        z, a = self.zeta, np.abs(t)
        return self._pick(t, z.du(a, x, u), 2 * z.du(0 * a, x, u) - z.du(a, x, u))

    def dtu(self, t, x, u):
        return self.zeta.dtu(np.abs(t), x, u)

    def dxu(self, t, x, u):
        z, a = self.zeta, np.abs(t)
        return self._pick(t, z.dxu(a, x, u), 2 * z.dxu(0 * a, x, u) - z.dxu(a, x, u))


def reflect_time(zeta) -> TimeReflection:
    return TimeReflection(zeta)

