"""Entropies E(u) and E(t, x, u), the canonical entropy flux, seminorms and
(t, x)-supports."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .domain import DEFAULT_SPEC, Box, QuadratureSpec, integrate_oriented
from .ks import RegulatedBV


class ContractViolation(AssertionError):
    pass


def _zero_like(w):
    return np.zeros(np.shape(w))


@dataclass(frozen=True)
class Entropy1D:
    """E(u) with E' and, for the C2 variant, E''.

    For the ACR variant ``regulated`` carries E' as density plus jumps and
    ``deriv`` evaluates it with midpoint values at the jumps; ``second`` is
    then the absolutely continuous part of E'' only. ``breaks`` lists points
    where a C2 entropy is less smooth than elsewhere (support edges of a
    bump); quadrature panels are cut there as at jumps of E'.
    """

    value: Callable
    deriv: Callable
    second: Optional[Callable] = None
    regulated: Optional[RegulatedBV] = None
    name: str = ""
    breaks: tuple = ()

    @property
    def is_acr(self) -> bool:
        return self.regulated is not None

    @property
    def kinks(self) -> tuple:
        jumps = self.regulated.locations if self.regulated is not None else ()
        return tuple(sorted({*jumps, *self.breaks}))

    def __add__(self, other: "Entropy1D") -> "Entropy1D":
        s1, s2 = self.second, other.second
        second = None if (s1 is None or s2 is None) else (lambda w: s1(w) + s2(w))
        if self.regulated is not None and other.regulated is not None:
            reg = self.regulated + other.regulated
        elif self.regulated is None and other.regulated is None:
            reg = None
        else:
            acr, c2 = (self, other) if self.regulated is not None else (other, self)
            if c2.second is None:
                raise ValueError("adding a C1 entropy to an ACR entropy is not supported")
            lo, hi = acr.regulated.support
            reg = acr.regulated + RegulatedBV((lo, hi), float(c2.deriv(lo)), c2.second)
        return Entropy1D(
            lambda w: self.value(w) + other.value(w),
            (reg if reg is not None else (lambda w: self.deriv(w) + other.deriv(w))),
            second, reg, f"({self.name}+{other.name})", tuple(sorted({*self.breaks, *other.breaks})),
        )

    def __rmul__(self, a) -> "Entropy1D":
        s = self.second
        return Entropy1D(
            lambda w: a * self.value(w),
            (self.regulated.scale(a) if self.regulated is not None else (lambda w: a * self.deriv(w))),
            None if s is None else (lambda w: a * s(w)),
            None if self.regulated is None else self.regulated.scale(a),
            f"{a}*{self.name}", self.breaks,
        )

    def __sub__(self, other):
        return self + (-1.0) * other

    def c2_check(self, w, h: float = 1e-5) -> float:
        """Largest gap between E' and a central difference of E."""
        w = np.asarray(w, float)
        fd = (self.value(w + h) - self.value(w - h)) / (2 * h)
        return float(np.max(np.abs(fd - self.deriv(w))))


def c2(value, deriv, second, name="") -> Entropy1D:
    return Entropy1D(value, deriv, second, None, name)


def identity() -> Entropy1D:
    return c2(lambda w: np.asarray(w, float) * 1.0, lambda w: np.ones(np.shape(w)), _zero_like, "id")


def constant(b: float) -> Entropy1D:
    return c2(lambda w: np.full(np.shape(w), float(b)), _zero_like, _zero_like, f"const_{b:g}")


def affine(a: float, b: float) -> Entropy1D:
    return c2(lambda w: a * np.asarray(w, float) + b, lambda w: np.full(np.shape(w), float(a)), _zero_like,
              f"affine_{a:g}_{b:g}")


def power(m: int) -> Entropy1D:
    if m < 2:
        return identity() if m == 1 else constant(1.0)
    return c2(lambda w: np.asarray(w) ** m, lambda w: m * np.asarray(w) ** (m - 1),
              lambda w: m * (m - 1) * np.asarray(w) ** (m - 2), f"u^{m}")


def quadratic() -> Entropy1D:
    return c2(lambda w: 0.5 * np.asarray(w) ** 2, lambda w: np.asarray(w) * 1.0, lambda w: np.ones(np.shape(w)),
              "u^2/2")


def cosine() -> Entropy1D:
    return c2(np.cos, lambda w: -np.sin(w), lambda w: -np.cos(w), "cos")


def bump(center: float, radius: float, p: int = 4) -> Entropy1D:
    """(1 - s^2)^p on |s| < 1 with s = (u - center) / radius; C^(p-1)."""

    def parts(w):
        s = (np.asarray(w, float) - center) / radius
        b = np.clip(1.0 - s * s, 0.0, None)
        return s, b

    def value(w):
        _, b = parts(w)
        return b ** p

    def deriv(w):
        s, b = parts(w)
        return -2 * p * s * b ** (p - 1) / radius

    def second(w):
        s, b = parts(w)
        return (-2 * p * b ** (p - 1) + 4 * p * (p - 1) * s * s * b ** (p - 2)) / radius ** 2

    return Entropy1D(value, deriv, second, None, f"bump_{center:g}_{radius:g}", (center - radius, center + radius))


def kruzkov(k: float, support=(-10.0, 10.0)) -> Entropy1D:
    """|u - k| with derivative sgn(u - k), midpoint 0 at u = k."""
    reg = RegulatedBV(support, -1.0, None, ((k, 2.0),))
    return Entropy1D(lambda w: np.abs(np.asarray(w, float) - k), reg, _zero_like, reg, f"|u-{k:g}|")


def from_regulated(reg: RegulatedBV, anchor: float = 0.0, value_at_anchor: float = 0.0, name="acr") -> Entropy1D:
    """ACR entropy E(w) = E(anchor) + int_anchor^w Gamma."""

    def value(w):
        w = np.asarray(w, float)
        return value_at_anchor + integrate_oriented(lambda n, _i: reg(n), np.full(w.shape, anchor), w,
                                                    reg.locations, reg.order)

    second = reg.density if reg.density is not None else _zero_like
    return Entropy1D(value, reg, second, reg, name)


def step_ladder(locations, sizes, base: float = 0.0, support=(-10.0, 10.0)) -> Entropy1D:
    reg = RegulatedBV(support, base, None, tuple(zip(locations, sizes)))
    return from_regulated(reg, name="ladder")


_MOLLIFIER_NORM = 35.0 / 32.0


def _mollifier(y, eps):
    s = np.asarray(y, float) / eps
    return _MOLLIFIER_NORM / eps * np.clip(1.0 - s * s, 0.0, None) ** 3


def mollify(E: Entropy1D, width: float, order: int = 24) -> Entropy1D:
    """C2 entropy E * rho_width with a (1 - s^2)^3 kernel."""
    kinks = E.kinks

    def conv(fn, w):
        w = np.asarray(w, float)
        flat = w.ravel()
        out = integrate_oriented(lambda s, i: fn(s) * _mollifier(flat[i, None] - s, width),
                                 flat - width, flat + width, kinks, order)
        return out.reshape(w.shape)

    def second(w):
        w = np.asarray(w, float)
        out = conv(E.second, w) if E.second is not None else np.zeros(w.shape)
        if E.regulated is not None:
            for c, d in E.regulated.jumps:
                out = out + d * _mollifier(w - c, width)
        return out

    breaks = tuple(sorted({c + d for c in kinks for d in (-width, 0.0, width)}))
    return Entropy1D(lambda w: conv(E.value, w), lambda w: conv(E.deriv, w), second, None, f"{E.name}*rho_{width:g}",
                     breaks)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EntropyTX:
    """E(t, x, u) with the derivative surface of the class F_c.

    ``pieces`` lists boxes whose edges are kinks of E inside ``support``
    (the supports of the terms of a separable sum).
    """

    value: Callable
    dt: Callable
    dx: Callable
    du: Callable
    dtu: Callable
    dxu: Callable
    support: Optional[Box] = None
    duu: Optional[Callable] = None
    dtuu: Optional[Callable] = None
    dxuu: Optional[Callable] = None
    name: str = ""
    pieces: tuple = ()

    @classmethod
    def separable(cls, terms, name="separable") -> "EntropyTX":
        """sum psi_i(t, x) e_i(u) with (t, x) factors and Entropy1D factors."""
        terms = tuple(terms)

        def comb(fa, fb):
            def ev(t, x, u):
                u = np.asarray(u, float)
                return sum(getattr(a, fa)(t, x) * getattr(e, fb)(u) for a, e in terms)
            return ev

        has2 = all(e.second is not None for _, e in terms)
        support = None
        for a, _ in terms:
            if a.support is None:
                support = None
                break
            support = a.support.union(support)
        return cls(
            comb("value", "value"), comb("dt", "value"), comb("dx", "value"),
            comb("value", "deriv"), comb("dt", "deriv"), comb("dx", "deriv"),
            support,
            comb("value", "second") if has2 else None,
            comb("dt", "second") if has2 else None,
            comb("dx", "second") if has2 else None,
            name,
            tuple(a.support for a, _ in terms if a.support is not None),
        )

    @classmethod
    def tensor(cls, phi, E: Entropy1D) -> "EntropyTX":
        return cls.separable(((phi, E),), name=f"phi*{E.name}")


@dataclass(frozen=True)
class EntropyFluxTX:
    value: Callable
    du: Callable
    dx: Callable
    dt: Callable
    dtu: Callable
    dxu: Callable
    support: Optional[Box] = None


def _bcast(t, x, u):
    T, X, U = np.broadcast_arrays(np.asarray(t, float), np.asarray(x, float), np.asarray(u))
    return T, X, U


def _w_integral(kernel, t, x, u, breaks, order, autonomous):
    """int_0^u kernel(t, x, w) dw at every point, cut at ``breaks``."""
    T, X, U = _bcast(t, x, u)
    U = U.real.astype(float)
    shape = U.shape
    if autonomous:
        uniq, inv = np.unique(U.ravel(), return_inverse=True)
        vals = integrate_oriented(lambda w, _i: kernel(0.0, 0.0, w), np.zeros(uniq.size), uniq, breaks, order)
        return vals[inv].reshape(shape)
    Tf, Xf = T.ravel(), X.ravel()
    vals = integrate_oriented(lambda w, i: kernel(Tf[i, None], Xf[i, None], w),
                              np.zeros(U.size), U.ravel(), breaks, order)
    return vals.reshape(shape)


def entropy_flux(E, f, spec: QuadratureSpec = DEFAULT_SPEC) -> EntropyFluxTX:
    """Canonical entropy flux F(t,x,u) = int_0^u d_uE(t,x,w) d_uf(t,x,w) dw.

    The w-integral is cut at the jump points of E' so that Gauss nodes never
    straddle them; derivatives in t and x are assembled under the integral.
    """
    order = spec.flux_order
    if isinstance(E, Entropy1D):
        dE = E.deriv
        breaks = E.kinks
        auto = f.autonomous

        def value(t, x, u):
            return _w_integral(lambda tt, xx, w: dE(w) * f.du(tt, xx, w), t, x, u, breaks, order, auto)

        def dx(t, x, u):
            if auto:
                return np.zeros(np.broadcast(np.asarray(t), np.asarray(x), np.asarray(u)).shape)
            return _w_integral(lambda tt, xx, w: dE(w) * f.dxu(tt, xx, w), t, x, u, breaks, order, False)

        def dt(t, x, u):
            if auto:
                return np.zeros(np.broadcast(np.asarray(t), np.asarray(x), np.asarray(u)).shape)
            return _w_integral(lambda tt, xx, w: dE(w) * f.dtu(tt, xx, w), t, x, u, breaks, order, False)

        return EntropyFluxTX(
            value,
            lambda t, x, u: dE(u) * f.du(t, x, u),
            dx, dt,
            lambda t, x, u: dE(u) * f.dtu(t, x, u),
            lambda t, x, u: dE(u) * f.dxu(t, x, u),
            None,
        )

    def value(t, x, u):
        return _w_integral(lambda tt, xx, w: E.du(tt, xx, w) * f.du(tt, xx, w), t, x, u, (), order, False)

    def dx(t, x, u):
        return _w_integral(lambda tt, xx, w: E.dxu(tt, xx, w) * f.du(tt, xx, w) + E.du(tt, xx, w) * f.dxu(tt, xx, w),
                           t, x, u, (), order, False)

    def dt(t, x, u):
        return _w_integral(lambda tt, xx, w: E.dtu(tt, xx, w) * f.du(tt, xx, w) + E.du(tt, xx, w) * f.dtu(tt, xx, w),
                           t, x, u, (), order, False)

    return EntropyFluxTX(
        value,
        lambda t, x, u: E.du(t, x, u) * f.du(t, x, u),
        dx, dt,
        lambda t, x, u: E.dtu(t, x, u) * f.du(t, x, u) + E.du(t, x, u) * f.dtu(t, x, u),
        lambda t, x, u: E.dxu(t, x, u) * f.du(t, x, u) + E.du(t, x, u) * f.dxu(t, x, u),
        E.support,
    )


def seminorm_pk(zeta, K, n: int = 33) -> float:
    """Sampled p_K: C1 norm plus sup of the two mixed derivatives.

    The C1 part is sup|zeta| + max over first derivatives of their sups.
    ``K`` is ``((t_lo, t_hi), (x_lo, x_hi), (u_lo, u_hi))``.
    """
    (t0, t1), (x0, x1), (u0, u1) = K
    t = np.linspace(t0, t1, n)[:, None, None]
    x = np.linspace(x0, x1, n)[None, :, None]
    u = np.linspace(u0, u1, n)[None, None, :]

    def sup(fn):
        return float(np.max(np.abs(np.broadcast_to(fn(t, x, u), (n, n, n)))))

    c1 = sup(zeta.value) + max(sup(zeta.dt), sup(zeta.dx), sup(zeta.du))
    return c1 + sup(zeta.dtu) + sup(zeta.dxu)


def spt_tx(zeta, verify: bool = False, u_range=(-2.0, 2.0), margin: float = 1.0, n: int = 41):
    """Declared (t, x)-support of ``zeta``; ``None`` for the zero function.

    With ``verify`` the function is sampled on a frame around the box and
    must vanish there.
    """
    box = getattr(zeta, "support", None)
    if getattr(zeta, "is_zero", False):
        return None
    if box is None or box.is_empty:
        return None
    if verify:
        (a, b), (c, d) = box.t, box.x
        t = np.linspace(max(0.0, a - margin), b + margin, n)
        x = np.linspace(c - margin, d + margin, n)
        u = np.linspace(*u_range, 9)
        T, X, U = np.meshgrid(t, x, u, indexing="ij")
        outside = (T < a) | (T > b) | (X < c) | (X > d)
        if outside.any():
            vals = np.abs(zeta.value(T[outside], X[outside], U[outside]))
            if np.max(vals) > 0:
                raise ContractViolation("nonzero value sampled outside the declared (t,x)-support")
    return box


def shifted(phi, dt: float, dx: float):
    (t0, x0) = phi.center
    return replace(phi, center=(t0 + dt, x0 + dx))


ZERO_ENTROPY_TX = EntropyTX(*(lambda t, x, u: np.zeros(np.broadcast(np.asarray(t), np.asarray(x), np.asarray(u)).shape)
                              for _ in range(6)), support=Box.tx(0, 0, 0, 0), name="zero")
