"""Exact Riemann solutions for Burgers, closed-form strong solutions and an
explicit finite-volume scheme."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .domain import integrate_oriented
from .fields import AnalyticPiecewiseField, GridField, InitialDatum, Region
from .fluxes import FluxFunction, SourceFunction

MODES = ("entropy-shock", "rarefaction", "non-entropic-shock", "custom-speed")


@dataclass(frozen=True)
class RiemannSpec:
    u_l: float
    u_r: float
    mode: str = "entropy-shock"
    speed: Optional[float] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "entropy-shock" and not self.u_l > self.u_r:
            raise ValueError("an entropy shock for Burgers needs u_l > u_r")
        if self.mode in ("rarefaction", "non-entropic-shock") and not self.u_l < self.u_r:
            raise ValueError(f"{self.mode} needs u_l < u_r")
        if self.mode == "custom-speed" and self.speed is None:
            raise ValueError("custom-speed shocks need a speed")


def riemann_burgers(spec: RiemannSpec, t_end: float = 2.0) -> AnalyticPiecewiseField:
    ul, ur = float(spec.u_l), float(spec.u_r)
    datum = InitialDatum((0.0,), (ul, ur))
    rng = (min(ul, ur), max(ul, ur))
    if spec.mode == "rarefaction":
        fan = Region(
            formula=lambda t, x: np.asarray(x, float) / np.asarray(t, float),
            level_sets=lambda t, k: k * t if ul < k < ur else math.nan,
            name="fan",
        )
        return AnalyticPiecewiseField(
            (Region(constant=ul, name="left"), fan, Region(constant=ur, name="right")),
            (lambda t: ul * np.asarray(t, float), lambda t: ur * np.asarray(t, float)),
            rng, t_end, datum=datum, name="burgers_rarefaction",
        )
    s = float(spec.speed) if spec.mode == "custom-speed" else 0.5 * (ul + ur)
    return AnalyticPiecewiseField(
        (Region(constant=ul, name="left"), Region(constant=ur, name="right")),
        (lambda t: s * np.asarray(t, float),),
        rng, t_end, datum=datum, name=f"burgers_{spec.mode}",
    )


def bump_w(s):
    """(1 - (s - 1)^2)^4 on (0, 2), zero elsewhere; C3 and zero exactly for s <= 0."""
    s = np.asarray(s, float)
    inside = (s > 0) & (s < 2)
    return np.where(inside, np.clip(1.0 - (s - 1.0) ** 2, 0.0, None) ** 4, 0.0)


def _x2u_field(t_end: float) -> AnalyticPiecewiseField:
    def left(t, x):
        with np.errstate(divide="ignore"):
            return bump_w(np.asarray(t, float) + 1.0 / np.asarray(x, float))

    def lower(t):
        return -1.0 / t if t > 0 else math.nan

    def upper(t):
        return 1.0 / (2.0 - t) if t > 2.0 else math.nan

    def branch(sign):
        # w(s) = k on (0, 2) at s = 1 +- sqrt(1 - k^(1/4)); then x = 1 / (s - t) < 0
        def level(t, k):
            if not 0.0 < k < 1.0:
                return math.nan
            s = 1.0 + sign * math.sqrt(1.0 - k ** 0.25)
            return 1.0 / (s - t) if t > s else math.nan
        return level

    return AnalyticPiecewiseField(
        (Region(formula=left, level_sets=(branch(-1.0), branch(1.0)), name="left"),
         Region(constant=0.0, name="right")),
        (lambda t: 0.0 * np.asarray(t, float),),
        (0.0, 1.0), t_end, curves=(lower, upper), datum=InitialDatum.constant(0.0),
        t_kinks=(2.0,), name="paper_x2u",
    )


def _advected(c: float, rate: float, center: float, radius: float, t_end: float, name: str):
    def profile(y):
        return bump_w(1.0 + (np.asarray(y, float) - center) / radius)

    def formula(t, x):
        t = np.asarray(t, float)
        return np.exp(-rate * t) * profile(np.asarray(x, float) - c * t)

    datum = InitialDatum((center - radius, center + radius), (0.0, profile, 0.0), (0.0, 1.0))
    curves = (lambda t: center - radius + c * t, lambda t: center + radius + c * t)
    return AnalyticPiecewiseField((Region(formula=formula, name="smooth"),), (), (0.0, 1.0), t_end,
                                  curves=curves, datum=datum, name=name)


def characteristic_solution(name: str, params: Optional[dict] = None) -> AnalyticPiecewiseField:
    """Closed-form strong solutions.

    ``paper_x2u`` solves d_t u + d_x(x^2 u) = 2 x u with zero datum by
    u = w(t + 1/x) for x < 0 and 0 otherwise; ``linear_advection`` and
    ``decay_source`` transport a bump with speed ``c`` (and decay ``rate``).
    """
    p = dict(params or {})
    t_end = float(p.get("t_end", 2.0))
    if name == "paper_x2u":
        return _x2u_field(t_end)
    if name == "linear_advection":
        return _advected(float(p.get("c", 1.0)), 0.0, float(p.get("center", 0.0)), float(p.get("radius", 0.5)),
                         t_end, name)
    if name == "decay_source":
        return _advected(float(p.get("c", 1.0)), float(p.get("rate", 0.5)), float(p.get("center", 0.0)),
                         float(p.get("radius", 0.5)), t_end, name)
    raise ValueError(f"unknown characteristic solution {name!r}")


# ---------------------------------------------------------------------------


class BlowUpError(RuntimeError):
    pass


@dataclass(frozen=True)
class FVGrid:
    cells: int
    x_lo: float
    x_hi: float
    t_end: float
    cfl: float = 0.45
    scheme: str = "llf"
    bc: str = "transmissive"

    def __post_init__(self):
        if self.cells < 2 or not self.x_hi > self.x_lo or not self.t_end > 0:
            raise ValueError("degenerate finite-volume grid")
        if not 0 < self.cfl <= 0.9:
            raise ValueError("CFL number must lie in (0, 0.9]")
        if self.scheme not in ("llf", "godunov"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.bc not in ("transmissive", "periodic"):
            raise ValueError(f"unknown boundary condition {self.bc!r}")

    @property
    def dx(self) -> float:
        return (self.x_hi - self.x_lo) / self.cells


def cell_averages(u0: InitialDatum, edges: np.ndarray, order: int = 8) -> np.ndarray:
    vals = integrate_oriented(lambda w, _i: u0.value(w), edges[:-1], edges[1:], u0.breakpoints, order)
    return vals / np.diff(edges)


def _godunov_burgers(uL, uR):
    fl, fr = 0.5 * uL * uL, 0.5 * uR * uR
    return np.where(uL <= uR, 0.5 * np.clip(0.0, uL, uR) ** 2, np.maximum(fl, fr))


def fv_solve(f: FluxFunction, g: Optional[SourceFunction], u0: InitialDatum, grid: FVGrid) -> GridField:
    """Explicit conservative scheme with a frozen-coefficient interface flux.

    The numerical flux at x_{j+1/2} evaluates f(t_n, x_{j+1/2}, .), so the
    x-dependence of f enters through the flux difference; g is added by a
    forward Euler step at the cell centres.
    """
    dx = grid.dx
    edges = grid.x_lo + dx * np.arange(grid.cells + 1)
    centres = 0.5 * (edges[:-1] + edges[1:])
    u = cell_averages(u0, edges)
    lo0, hi0 = float(min(u.min(), u0.value_range[0])), float(max(u.max(), u0.value_range[1]))
    span = max(hi0 - lo0, abs(lo0), abs(hi0), 1e-300)
    smax = f.max_speed((0.0, grid.t_end), (grid.x_lo, grid.x_hi), (lo0 - 0.1 * span, hi0 + 0.1 * span))
    smax = max(smax, 1e-12)
    n_steps = int(math.ceil(grid.t_end / (grid.cfl * dx / smax) - 1e-12))
    dt = grid.t_end / n_steps
    use_godunov = grid.scheme == "godunov"
    if use_godunov and f.name != "burgers":
        raise ValueError("the Godunov flux is only available for Burgers")
    data = np.empty((n_steps, grid.cells))
    for n in range(n_steps):
        data[n] = u
        t = n * dt
        if grid.bc == "periodic":
            ext = np.concatenate([u[-1:], u, u[:1]])
        else:
            ext = np.concatenate([u[:1], u, u[-1:]])
        uL, uR = ext[:-1], ext[1:]
        if use_godunov:
            H = _godunov_burgers(uL, uR)
        else:
            a = np.maximum(np.abs(f.du(t, edges, uL)), np.abs(f.du(t, edges, uR)))
            H = 0.5 * (f.value(t, edges, uL) + f.value(t, edges, uR)) - 0.5 * a * (uR - uL)
        new = u - dt / dx * (H[1:] - H[:-1])
        if g is not None:
            new = new + dt * g.value(t, centres, u)
        if not np.all(np.isfinite(new)) or new.min() < lo0 - span or new.max() > hi0 + span:
            raise BlowUpError(f"values left twice the initial range at step {n + 1}")
        u = new
    return GridField(dt, dx, grid.x_lo, data, u0, name=f"fv_{grid.scheme}_{grid.cells}")
