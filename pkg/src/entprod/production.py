"""Entropy production M_u(E)(phi), Kruzkov productions mu_k(phi), the
(t, x)-dependent production and derived diagnostics."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .domain import (DEFAULT_SPEC, Box, QuadratureResult, QuadratureSpec, _refine, c1_norm, integrate_line,
                     spacetime_rule)
from .entropies import Entropy1D, EntropyTX, entropy_flux, identity
from .fields import GridField, _BreakCurves, essential_range

TERMS = ("transport", "divf_correction", "divF_correction", "source", "initial")

# Products of cell constants and polynomial test functions are integrated
# exactly by a fixed low order rule, so grid fields skip refinement.
GRID_SPEC_ORDER = 5


@dataclass
class ProductionResult:
    value: complex
    terms: dict
    quadrature: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {k: self.terms[k] for k in TERMS}
        out["total"] = self.value
        return out


@dataclass
class KruzkovCurve:
    ks: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.ks = np.asarray(self.ks, float)
        self.values = np.asarray(self.values, float)
        if np.any(np.diff(self.ks) <= 0):
            raise ValueError("k grid must be strictly increasing")

    @property
    def total_variation(self) -> float:
        return float(np.sum(np.abs(np.diff(self.values))))

    @property
    def minimum(self) -> float:
        return float(np.min(self.values))


def _result(parts, initial: QuadratureResult, quad: QuadratureResult) -> ProductionResult:
    terms = {k: parts[i] for i, k in enumerate(TERMS[:4])}
    terms["initial"] = initial.value
    total = 0.0
    for k in TERMS:
        total = total + terms[k]
    info = {"spacetime": quad.as_dict(), "initial": initial.as_dict()}
    return ProductionResult(total, terms, info)


def _scalar(v):
    v = complex(v) if np.iscomplexobj(v) else float(v)
    return v


def _setup(u, support: Box, spec: QuadratureSpec, levels=(), extra=()):
    """x / t breakpoints for ``u`` on ``support``, plus the edges of the boxes in ``extra``."""
    if support.t[1] > u.t_end * (1 + 1e-12):
        raise ValueError("test function support reaches beyond the final time")
    if isinstance(u, GridField):
        spec = replace(spec, gauss_order=GRID_SPEC_ORDER, max_subdivision_depth=0)
    xb, tb = u.x_breaks(levels), u.t_breaks(support, levels)
    boxes = [b for b in extra if b is not None]
    if boxes:
        tb = tuple(sorted({*tb, *(t for b in boxes for t in b.t)}))
        xs = sorted({x for b in boxes for x in b.x})
        if isinstance(xb, _BreakCurves):
            xb = _BreakCurves(xb.curves + tuple((lambda t, e=e: e) for e in xs))
        else:
            xb = np.sort(np.concatenate([np.asarray(xb, float), xs]))
    return xb, tb, spec


def _spacetime_reduce(reducer, support: Box, x_breaks, t_breaks, spec: QuadratureSpec,
                      shape=(4,)) -> QuadratureResult:
    """Refinement loop where ``reducer(T, X, W)`` returns the reduced value."""
    if support.is_empty:
        return QuadratureResult(np.zeros(shape), 0.0, 0, spec.base_level)

    def evaluate(level):
        T, X, W = spacetime_rule(support, spec.gauss_order, level, x_breaks, t_breaks)
        return reducer(T, X, W), W.size

    return _refine(evaluate, spec, "space-time integral")


def _zero(T):
    return np.zeros(np.shape(T))


def _initial(fn, u0, box: Box, spec: QuadratureSpec) -> QuadratureResult:
    if u0 is None or box.t[0] > 0:
        return QuadratureResult(0.0, 0.0, 0, 0)
    return integrate_line(fn, box.x[0], box.x[1], u0.breakpoints, spec)


def production(E: Entropy1D, u, u0, f, g, phi, spec: QuadratureSpec = DEFAULT_SPEC,
               flux_offset=None) -> ProductionResult:
    """M_u(E)(phi) with its five addends.

    ``flux_offset`` replaces the canonical entropy flux F by F + Delta(t, x);
    it needs ``value`` and ``dx`` methods of (t, x).
    """
    F = entropy_flux(E, f, spec)
    box = phi.support
    xb, tb, sspec = _setup(u, box, spec, E.kinks, (getattr(flux_offset, "support", None),))

    def reducer(T, X, W):
        U = u.values(T, X)
        ph, pt, px = phi.value(T, X), phi.dt(T, X), phi.dx(T, X)
        de = E.deriv(U)
        transport = E.value(U) * pt + F.value(T, X, U) * px
        divf = -de * f.dx(T, X, U) * ph
        divF = F.dx(T, X, U) * ph
        src = de * g.value(T, X, U) * ph if g is not None else _zero(T)
        if flux_offset is not None:
            transport = transport + flux_offset.value(T, X) * px
            divF = divF + flux_offset.dx(T, X) * ph
        return np.stack(np.broadcast_arrays(transport, divf, divF, src)) @ W

    quad = _spacetime_reduce(reducer, box, xb, tb, sspec)
    init = _initial(lambda x: E.value(u0.value(x)) * phi.value(np.zeros_like(x), x), u0, box, spec)
    parts = [_scalar(v) for v in quad.value]
    return _result(parts, init, quad)


def production_tx(E: EntropyTX, u, u0, f, g, spec: QuadratureSpec = DEFAULT_SPEC,
                  flux_offset=None) -> ProductionResult:
    """M^tx_u(E) for a (t, x)-dependent entropy with bounded support."""
    if E.support is None:
        raise ValueError("the (t, x)-support of E must be declared and bounded")
    F = entropy_flux(E, f, spec)
    box = E.support.intersect(Box.tx(0.0, np.inf, -np.inf, np.inf))
    xb, tb, sspec = _setup(u, box, spec, (), (*E.pieces, getattr(flux_offset, "support", None)))

    def reducer(T, X, W):
        U = u.values(T, X)
        du = E.du(T, X, U)
        transport = E.dt(T, X, U)
        divf = -du * f.dx(T, X, U)
        divF = F.dx(T, X, U)
        src = du * g.value(T, X, U) if g is not None else _zero(T)
        if flux_offset is not None:
            divF = divF + flux_offset.dx(T, X)
        return np.stack(np.broadcast_arrays(transport, divf, divF, src)) @ W

    quad = _spacetime_reduce(reducer, box, xb, tb, sspec)
    init = _initial(lambda x: E.value(np.zeros_like(x), x, u0.value(x)), u0, box, spec)
    parts = [_scalar(v) for v in quad.value]
    return _result(parts, init, quad)


def _batch_cap(n_points: int, budget: int = 4_000_000) -> int:
    return max(1, budget // max(1, n_points))


def kruzkov_many(ks, u, u0, f, g, phi, spec: QuadratureSpec = DEFAULT_SPEC):
    """mu_k(phi) for every k; returns ``(values, terms)`` with per-term arrays.

    ``phi`` may be a k-dependent family (attribute ``k_dependent``) whose
    methods take ``(t, x, k)`` with k broadcast along a leading axis.
    """
    ks = np.atleast_1d(np.asarray(ks, float))
    if getattr(u, "has_level_sets", False) and ks.size > 1:
        rows = [kruzkov_many(ks[i:i + 1], u, u0, f, g, phi, spec) for i in range(ks.size)]
        terms = {k: np.concatenate([r[1][k] for r in rows]) for k in TERMS}
        return np.concatenate([r[0] for r in rows]), terms
    box = phi.support
    xb, tb, sspec = _setup(u, box, spec, tuple(ks), getattr(phi, "pieces", ()))
    kdep = getattr(phi, "k_dependent", False)

    def reducer(T, X, W):
        U = u.values(T, X)
        if kdep:
            base = None
        else:
            base = (phi.value(T, X), phi.dt(T, X), phi.dx(T, X))
        gu = g.value(T, X, U) if g is not None else None
        fu = f.value(T, X, U)
        out = np.empty((4, ks.size))
        step = _batch_cap(T.size)
        for s in range(0, ks.size, step):
            kk = ks[s:s + step, None]
            ph, pt, px = base if base is not None else (phi.value(T, X, kk), phi.dt(T, X, kk), phi.dx(T, X, kk))
            D = U[None, :] - kk
            sg = np.sign(D)
            transport = np.abs(D) * pt + sg * (fu - f.value(T, X, kk)) * px
            divf = -sg * f.dx(T, X, kk) * ph
            src = sg * gu * ph if gu is not None else np.zeros_like(D)
            out[0, s:s + step] = transport @ W
            out[1, s:s + step] = divf @ W
            out[2, s:s + step] = 0.0
            out[3, s:s + step] = src @ W
        return out

    quad = _spacetime_reduce(reducer, box, xb, tb, sspec, (4, ks.size))

    def init_fn(x):
        u0x = u0.value(x)
        if kdep:
            return (np.abs(u0x[None, :] - ks[:, None]) * phi.value(np.zeros_like(x), x, ks[:, None]))
        return np.abs(u0x[None, :] - ks[:, None]) * phi.value(np.zeros_like(x), x)

    init = _initial(init_fn, u0, box, spec)
    init_vals = np.broadcast_to(np.asarray(init.value, float), ks.shape)
    terms = {k: np.asarray(quad.value[i], float) for i, k in enumerate(TERMS[:4])}
    terms["initial"] = np.array(init_vals, float)
    total = np.zeros(ks.shape)
    for k in TERMS:
        total = total + terms[k]
    return total, terms


def kruzkov(k: float, u, u0, f, g, phi, spec: QuadratureSpec = DEFAULT_SPEC) -> ProductionResult:
    vals, terms = kruzkov_many([k], u, u0, f, g, phi, spec)
    return ProductionResult(float(vals[0]), {key: float(v[0]) for key, v in terms.items()})


def default_k_grid(u, u0, n: int = 129) -> np.ndarray:
    a, b = essential_range(u, u0)
    pad = 0.05 * (b - a) if b > a else 0.05
    return np.linspace(a - pad, b + pad, n)


def kruzkov_curve(k_grid, u, u0, f, g, phi, spec: QuadratureSpec = DEFAULT_SPEC) -> KruzkovCurve:
    ks = np.asarray(k_grid if k_grid is not None else default_k_grid(u, u0), float)
    vals, _ = kruzkov_many(ks, u, u0, f, g, phi, spec)
    return KruzkovCurve(ks, vals)


def midpoint_defect(kbar: float, eps: float, u, u0, f, g, phi, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """|mu_kbar - (mu_{kbar-eps} + mu_{kbar+eps}) / 2|."""
    v, _ = kruzkov_many([kbar - eps, kbar, kbar + eps], u, u0, f, g, phi, spec)
    return float(abs(v[1] - 0.5 * (v[0] + v[2])))


def solution_residual(u, u0, f, g, phis, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """max over the family of |M_u(Id)(phi)| / ||phi||_C1."""
    E = identity()
    worst = 0.0
    for phi in phis:
        r = production(E, u, u0, f, g, phi, spec)
        worst = max(worst, abs(r.value) / c1_norm(phi))
    return worst
