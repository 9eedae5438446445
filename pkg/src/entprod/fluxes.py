"""Fluxes f(t, x, u), sources g(t, x, u) and the (t, x) factors used to build
separable functions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import polynomial as P


def _zeros(t, x, u):
    return np.zeros(np.broadcast(np.asarray(t), np.asarray(x), np.asarray(u)).shape)


# ---------------------------------------------------------------------------
# (t, x) factors: value, dt, dx and an optional compact support box


@dataclass(frozen=True)
class ConstTX:
    c: float = 1.0
    support = None

    def value(self, t, x):
        return np.full(np.broadcast(np.asarray(t), np.asarray(x)).shape, self.c, dtype=float)

    def dt(self, t, x):
        return np.zeros(np.broadcast(np.asarray(t), np.asarray(x)).shape)

    dx = dt


@dataclass(frozen=True)
class PolyTX:
    """sum_ij c[i, j] t^i x^j."""

    coeffs: tuple
    support = None

    @property
    def _c(self):
        return np.atleast_2d(np.asarray(self.coeffs, float))

    def value(self, t, x):
        return P.polyval2d(np.asarray(t, float), np.asarray(x, float), self._c)

    def dt(self, t, x):
        return P.polyval2d(np.asarray(t, float), np.asarray(x, float), P.polyder(self._c, axis=0))

    def dx(self, t, x):
        return P.polyval2d(np.asarray(t, float), np.asarray(x, float), P.polyder(self._c, axis=1))


@dataclass(frozen=True)
class TrigTX:
    """cos or sin of (wt t + wx x + phase)."""

    kind: str = "sin"
    wt: float = 1.0
    wx: float = 0.0
    phase: float = 0.0
    support = None

    def _arg(self, t, x):
        return self.wt * np.asarray(t, float) + self.wx * np.asarray(x, float) + self.phase

    def value(self, t, x):
        a = self._arg(t, x)
        return np.sin(a) if self.kind == "sin" else np.cos(a)

    def _d(self, t, x):
        a = self._arg(t, x)
        return np.cos(a) if self.kind == "sin" else -np.sin(a)

    def dt(self, t, x):
        return self.wt * self._d(t, x)

    def dx(self, t, x):
        return self.wx * self._d(t, x)


@dataclass(frozen=True)
class ProductTX:
    a: object
    b: object

    @property
    def support(self):
        sa, sb = self.a.support, self.b.support
        if sa is None:
            return sb
        return sa if sb is None else sa.intersect(sb)

    def value(self, t, x):
        return self.a.value(t, x) * self.b.value(t, x)

    def dt(self, t, x):
        return self.a.dt(t, x) * self.b.value(t, x) + self.a.value(t, x) * self.b.dt(t, x)

    def dx(self, t, x):
        return self.a.dx(t, x) * self.b.value(t, x) + self.a.value(t, x) * self.b.dx(t, x)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FluxFunction:
    """f with the derivative surface needed for entropy fluxes.

    ``dx`` is the x partial at fixed u (the x-divergence in one space
    dimension); ``dtu`` and ``dxu`` are the mixed derivatives. Missing
    evaluators are treated as identically zero.
    """

    value: Callable
    du: Callable
    dx: Optional[Callable] = None
    dt: Optional[Callable] = None
    dtu: Optional[Callable] = None
    dxu: Optional[Callable] = None
    autonomous: bool = False
    separable: tuple = ()
    name: str = ""

    def __post_init__(self):
        for attr in ("dx", "dt", "dtu", "dxu"):
            if getattr(self, attr) is None:
                object.__setattr__(self, attr, _zeros)

    @classmethod
    def of_u(cls, f, df, name=""):
        return cls(
            value=lambda t, x, u: f(np.asarray(u, float)) + _zeros(t, x, u),
            du=lambda t, x, u: df(np.asarray(u, float)) + _zeros(t, x, u),
            autonomous=True,
            name=name,
        )

    @classmethod
    def from_separable(cls, terms, name="separable"):
        """f = sum a_i(t, x) b_i(u); ``b_i`` needs ``value`` and ``deriv``."""
        terms = tuple(terms)

        def comb(fa, fb):
            def ev(t, x, u):
                u = np.asarray(u, float)
                return sum(getattr(a, fa)(t, x) * getattr(b, fb)(u) for a, b in terms) + _zeros(t, x, u)
            return ev

        return cls(
            value=comb("value", "value"),
            du=comb("value", "deriv"),
            dx=comb("dx", "value"),
            dt=comb("dt", "value"),
            dtu=comb("dt", "deriv"),
            dxu=comb("dx", "deriv"),
            autonomous=all(isinstance(a, ConstTX) for a, _ in terms),
            separable=terms,
            name=name,
        )

    def separable_mismatch(self, other: "FluxFunction", t, x, u) -> float:
        """Largest gap between two evaluations of the same flux."""
        gaps = [np.max(np.abs(getattr(self, k)(t, x, u) - getattr(other, k)(t, x, u)))
                for k in ("value", "du", "dx", "dt", "dtu", "dxu")]
        return float(max(gaps))

    def max_speed(self, t_range, x_range, u_range, n: int = 65) -> float:
        t = np.linspace(*t_range, n)[:, None, None]
        x = np.linspace(*x_range, n)[None, :, None]
        u = np.linspace(*u_range, n)[None, None, :]
        return float(np.max(np.abs(self.du(t, x, u))))


@dataclass(frozen=True)
class SourceFunction:
    value: Callable
    du: Optional[Callable] = None
    name: str = ""


def burgers() -> FluxFunction:
    return FluxFunction.of_u(lambda u: 0.5 * u * u, lambda u: u, name="burgers")


def linear_flux(c: float = 1.0) -> FluxFunction:
    return FluxFunction.of_u(lambda u: c * u, lambda u: c + 0.0 * u, name=f"linear_{c:g}")


def linear_x2() -> tuple:
    """f = x^2 u with g = 2 x u, so that d_t u + x^2 d_x u = 0."""
    f = FluxFunction(
        value=lambda t, x, u: np.asarray(x, float) ** 2 * np.asarray(u, float) + _zeros(t, x, u),
        du=lambda t, x, u: np.asarray(x, float) ** 2 + _zeros(t, x, u),
        dx=lambda t, x, u: 2.0 * np.asarray(x, float) * np.asarray(u, float) + _zeros(t, x, u),
        dxu=lambda t, x, u: 2.0 * np.asarray(x, float) + _zeros(t, x, u),
        name="linear_x2",
    )
    g = SourceFunction(
        value=lambda t, x, u: 2.0 * np.asarray(x, float) * np.asarray(u, float) + _zeros(t, x, u),
        du=lambda t, x, u: 2.0 * np.asarray(x, float) + _zeros(t, x, u),
        name="linear_x2",
    )
    return f, g


def linear_source(rate: float) -> SourceFunction:
    return SourceFunction(lambda t, x, u: rate * np.asarray(u, float) + _zeros(t, x, u),
                          lambda t, x, u: rate + _zeros(t, x, u), name=f"linear_{rate:g}")


def tx_factor_from_config(cfg: dict):
    kind = cfg.get("kind", "poly")
    if kind == "poly":
        return PolyTX(tuple(map(tuple, np.atleast_2d(np.asarray(cfg["coeffs"], float)))))
    if kind in ("sin", "cos"):
        return TrigTX(kind, float(cfg.get("wt", 0.0)), float(cfg.get("wx", 0.0)), float(cfg.get("phase", 0.0)))
    if kind == "const":
        return ConstTX(float(cfg.get("c", 1.0)))
    raise ValueError(f"unknown (t,x) factor kind {kind!r}")
