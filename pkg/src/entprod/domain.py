"""Space-time domain primitives: sign conventions, test functions and
breakpoint-aware Gauss-Legendre quadrature on I x R^n."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np


class QuadratureError(RuntimeError):
    """Raised when refinement stops before the target tolerance is met."""

    def __init__(self, message: str, estimate=None, error: float = math.nan):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


@dataclass(frozen=True)
class Domain:
    t_end: float
    space_dim: int = 1
    space_box: tuple = ((-math.inf, math.inf),)

    def __post_init__(self):
        if not self.t_end > 0:
            raise ValueError("t_end must be positive")
        if self.space_dim < 1:
            raise ValueError("space_dim must be >= 1")
        if len(self.space_box) != self.space_dim:
            raise ValueError("space_box needs one interval per axis")
        for lo, hi in self.space_box:
            if not hi > lo:
                raise ValueError(f"degenerate axis ({lo}, {hi})")


@dataclass(frozen=True)
class Box:
    """Closed product of intervals; axis 0 is time."""

    bounds: tuple

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple((float(a), float(b)) for a, b in self.bounds))

    @classmethod
    def tx(cls, t_lo, t_hi, x_lo, x_hi) -> "Box":
        return cls(((t_lo, t_hi), (x_lo, x_hi)))

    @property
    def t(self):
        return self.bounds[0]

    @property
    def x(self):
        return self.bounds[1]

    @property
    def is_empty(self) -> bool:
        return any(b <= a for a, b in self.bounds)

    def intersect(self, other: "Box") -> "Box":
        return Box(tuple((max(a, c), min(b, d)) for (a, b), (c, d) in zip(self.bounds, other.bounds)))

    def union(self, other: "Box | None") -> "Box":
        if other is None:
            return self
        return Box(tuple((min(a, c), max(b, d)) for (a, b), (c, d) in zip(self.bounds, other.bounds)))

    def contains(self, other: "Box") -> bool:
        return all(a <= c and d <= b for (a, b), (c, d) in zip(self.bounds, other.bounds))


@dataclass(frozen=True)
class QuadratureSpec:
    gauss_order: int = 12
    max_subdivision_depth: int = 4
    k_axis_order: int = 16
    target_tolerance: float = 1e-11
    flux_order: int = 24
    base_level: int = 0

    def __post_init__(self):
        if min(self.gauss_order, self.k_axis_order, self.flux_order) < 2:
            raise ValueError("quadrature orders must be >= 2")
        if not self.target_tolerance > 0:
            raise ValueError("target_tolerance must be positive")
        if self.max_subdivision_depth < 0 or self.base_level < 0:
            raise ValueError("subdivision levels must be non-negative")


DEFAULT_SPEC = QuadratureSpec()


def sign(z):
    """Three-valued sign with sgn(0) = 0; NaN is rejected."""
    arr = np.asarray(z)
    if np.isnan(arr).any():
        raise ValueError("sign of NaN is undefined")
    out = np.sign(arr).astype(int)
    return int(out) if out.ndim == 0 else out


def chi(xi, a, b):
    """+1 on [b, a), -1 on [a, b), 0 elsewhere."""
    xi, a, b = np.broadcast_arrays(np.asarray(xi, float), np.asarray(a, float), np.asarray(b, float))
    out = np.where((b <= xi) & (xi < a), 1, 0) - np.where((a <= xi) & (xi < b), 1, 0)
    return int(out) if out.ndim == 0 else out


def phi_jump(f, t, x, u, k):
    """Kruzkov flux sgn(u - k) (f(t,x,u) - f(t,x,k))."""
    u = np.asarray(u, float)
    k = np.asarray(k, float)
    return np.sign(u - k) * (f.value(t, x, u) - f.value(t, x, k))


@lru_cache(maxsize=None)
def gauss_legendre(order: int):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def panel_rule(edges, order: int, level: int = 0):
    """Composite Gauss rule over consecutive panels given by ``edges``.

    Each panel is split into ``2**level`` equal pieces. Zero-width panels
    are dropped.
    """
    edges = np.asarray(edges, float)
    if edges.size < 2:
        return np.empty(0), np.empty(0)
    lo, hi = edges[:-1], edges[1:]
    keep = hi > lo
    lo, hi = lo[keep], hi[keep]
    if level:
        m = 2 ** level
        frac = np.arange(m + 1) / m
        pts = lo[:, None] + (hi - lo)[:, None] * frac[None, :]
        lo, hi = pts[:, :-1].ravel(), pts[:, 1:].ravel()
    z, w = gauss_legendre(order)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * z[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _edges(lo, hi, breaks):
    inner = [b for b in np.asarray(breaks, float).ravel() if lo < b < hi and np.isfinite(b)]
    return np.array([lo, *sorted(inner), hi])


@dataclass
class QuadratureResult:
    value: object
    error: float
    nodes: int
    level: int

    def as_dict(self) -> dict:
        return {"error": float(self.error), "nodes": int(self.nodes), "level": int(self.level)}


def spacetime_rule(support: Box, order: int, level: int, x_breaks=None, t_breaks=()):
    """Flat node/weight arrays for a 1D-space support box.

    ``x_breaks`` is either a fixed array of x breakpoints or a callable
    mapping a time to the breakpoints active at that time.
    """
    (t_lo, t_hi), (x_lo, x_hi) = support.t, support.x
    tn, tw = panel_rule(_edges(t_lo, t_hi, t_breaks), order, level)
    if x_breaks is None or not callable(x_breaks):
        xn, xw = panel_rule(_edges(x_lo, x_hi, () if x_breaks is None else x_breaks), order, level)
        T = np.repeat(tn, xn.size)
        X = np.tile(xn, tn.size)
        W = np.outer(tw, xw).ravel()
        return T, X, W
    if hasattr(x_breaks, "many"):
        return _moving_rule(tn, tw, x_lo, x_hi, x_breaks.many(tn), order, level)
    Ts, Xs, Ws = [], [], []
    for t, wt in zip(tn, tw):
        xn, xw = panel_rule(_edges(x_lo, x_hi, x_breaks(t)), order, level)
        Ts.append(np.full(xn.size, t))
        Xs.append(xn)
        Ws.append(wt * xw)
    if not Ts:
        return np.empty(0), np.empty(0), np.empty(0)
    return np.concatenate(Ts), np.concatenate(Xs), np.concatenate(Ws)


def _moving_rule(tn, tw, x_lo, x_hi, breaks, order, level):
    """Vectorised x panels whose inner edges move with t.

    ``breaks`` has one row per time node; NaN entries are inactive. Edges
    are clipped into [x_lo, x_hi] so unused panels get zero width.
    """
    breaks = np.asarray(breaks, float).reshape(tn.size, -1)
    inner = np.where(np.isfinite(breaks), np.clip(breaks, x_lo, x_hi), x_hi)
    edges = np.concatenate([np.full((tn.size, 1), x_lo), np.sort(inner, axis=1), np.full((tn.size, 1), x_hi)], axis=1)
    if level:
        m = 2 ** level
        frac = np.arange(m + 1) / m
        lo, hi = edges[:, :-1, None], edges[:, 1:, None]
        pts = lo + (hi - lo) * frac
        edges_lo, edges_hi = pts[..., :-1].reshape(tn.size, -1), pts[..., 1:].reshape(tn.size, -1)
    else:
        edges_lo, edges_hi = edges[:, :-1], edges[:, 1:]
    z, w = gauss_legendre(order)
    half = 0.5 * (edges_hi - edges_lo)
    mid = 0.5 * (edges_hi + edges_lo)
    X = (mid[..., None] + half[..., None] * z).reshape(tn.size, -1)
    W = (half[..., None] * w).reshape(tn.size, -1) * tw[:, None]
    T = np.broadcast_to(tn[:, None], X.shape)
    keep = W.ravel() != 0
    return T.ravel()[keep], X.ravel()[keep], W.ravel()[keep]


def _tensor_rule(support: Box, order: int, level: int):
    axes = [panel_rule(np.array([a, b]), order, level) for a, b in support.bounds]
    grids = np.meshgrid(*[n for n, _ in axes], indexing="ij")
    wgrid = np.ones_like(grids[0])
    for i, (_, w) in enumerate(axes):
        shape = [1] * len(axes)
        shape[i] = w.size
        wgrid = wgrid * w.reshape(shape)
    return [g.ravel() for g in grids], wgrid.ravel()


def _refine(evaluate, spec: QuadratureSpec, what: str) -> QuadratureResult:
    prev = None
    last = spec.base_level + spec.max_subdivision_depth
    for level in range(spec.base_level, last + 1):
        val, n = evaluate(level)
        if spec.max_subdivision_depth == 0:
            return QuadratureResult(val, math.nan, n, level)
        if prev is not None:
            err = float(np.max(np.abs(np.asarray(val) - np.asarray(prev))))
            scale = max(1.0, float(np.max(np.abs(val))) if np.size(val) else 1.0)
            if err <= spec.target_tolerance * scale:
                return QuadratureResult(val, err, n, level)
        prev = val
    raise QuadratureError(
        f"{what}: tolerance {spec.target_tolerance:g} not met at depth {spec.max_subdivision_depth}",
        estimate=prev,
        error=err,
    )


def integrate_spacetime(
    integrand: Callable,
    support: Box,
    x_breaks=None,
    spec: QuadratureSpec = DEFAULT_SPEC,
    t_breaks: Sequence[float] = (),
) -> QuadratureResult:
    """Composite Gauss-Legendre over ``support``.

    For one space dimension the x integral at every time node is split at
    ``x_breaks`` (fixed or time dependent), so no panel straddles a declared
    interface. ``integrand(t, x)`` may return shape ``(..., N)`` for vector
    valued integrands; the reduction runs over the last axis. For more space
    dimensions the integrand receives ``(t, x1, ..., xn)`` and must be
    smooth on the box.
    """
    if support.is_empty:
        return QuadratureResult(0.0, 0.0, 0, spec.base_level)
    if len(support.bounds) == 2:
        def evaluate(level):
            T, X, W = spacetime_rule(support, spec.gauss_order, level, x_breaks, t_breaks)
            return np.asarray(integrand(T, X)) @ W, W.size
    else:
        def evaluate(level):
            pts, W = _tensor_rule(support, spec.gauss_order, level)
            return np.asarray(integrand(*pts)) @ W, W.size
    return _refine(evaluate, spec, "space-time integral")


def integrate_line(integrand: Callable, lo: float, hi: float, breaks=(), spec: QuadratureSpec = DEFAULT_SPEC):
    """One-dimensional counterpart of :func:`integrate_spacetime`."""
    if not hi > lo:
        return QuadratureResult(0.0, 0.0, 0, spec.base_level)
    edges = _edges(lo, hi, breaks)

    def evaluate(level):
        n, w = panel_rule(edges, spec.gauss_order, level)
        return np.asarray(integrand(n)) @ w, w.size

    return _refine(evaluate, spec, "line integral")


def integrate_oriented(fn: Callable, lo, hi, breaks=(), order: int = 24, chunk: int = 200_000):
    """Vectorised oriented integral of ``fn`` from ``lo`` to ``hi`` (arrays).

    The path is cut at every value in ``breaks``; ``fn(w, index)`` receives
    node values of shape ``(M, order)`` and the row indices they belong to.
    """
    lo, hi = np.broadcast_arrays(np.asarray(lo, float), np.asarray(hi, float))
    shape = lo.shape
    lo, hi = lo.ravel(), hi.ravel()
    z, wq = gauss_legendre(order)
    cuts = np.array(sorted(set(float(b) for b in breaks)))
    pieces = np.concatenate([[-np.inf], cuts, [np.inf]])
    total = None
    for start in range(0, lo.size, chunk):
        sl = slice(start, min(start + chunk, lo.size))
        idx = np.arange(sl.start, sl.stop)
        acc = None
        for a, b in zip(pieces[:-1], pieces[1:]):
            p = np.clip(lo[sl], a, b)
            q = np.clip(hi[sl], a, b)
            half = 0.5 * (q - p)
            if not np.any(half):
                continue
            nodes = 0.5 * (p + q)[:, None] + half[:, None] * z[None, :]
            vals = fn(nodes, idx) @ wq * half
            acc = vals if acc is None else acc + vals
        if acc is None:
            acc = np.zeros(idx.size)
        total = acc if total is None else np.concatenate([total, acc])
    if total is None:
        total = np.zeros(0)
    return total.reshape(shape)


@dataclass(frozen=True)
class TestFunction:
    """Polynomial bump prod_axis max(0, 1 - s^2)^p on t >= 0.

    ``s`` is the offset from ``center`` normalised by ``radii``.
    """

    __test__ = False  # keep pytest from collecting this class

    center: tuple
    radii: tuple
    p: int = 4
    amplitude: float = 1.0

    def __post_init__(self):
        if self.p < 3:
            raise ValueError("smoothness exponent p must be >= 3")
        if len(self.center) != 2 or len(self.radii) != 2:
            raise ValueError("test functions live on (t, x) with one space dimension")
        if min(self.radii) <= 0:
            raise ValueError("radii must be positive")
        if self.center[0] < 0:
            raise ValueError("the time centre must be non-negative")

    @property
    def support(self) -> Box:
        (t0, x0), (rt, rx) = self.center, self.radii
        return Box.tx(max(0.0, t0 - rt), t0 + rt, x0 - rx, x0 + rx)

    def _factors(self, t, x):
        (t0, x0), (rt, rx) = self.center, self.radii
        st = (np.asarray(t, float) - t0) / rt
        sx = (np.asarray(x, float) - x0) / rx
        bt = np.clip(1.0 - st * st, 0.0, None)
        bx = np.clip(1.0 - sx * sx, 0.0, None)
        return st, sx, bt, bx

    def _mask(self, t):
        return np.asarray(t, float) >= 0.0

    def value(self, t, x):
        _, _, bt, bx = self._factors(t, x)
        return self.amplitude * np.where(self._mask(t), bt ** self.p * bx ** self.p, 0.0)

    def dt(self, t, x):
        st, _, bt, bx = self._factors(t, x)
        p, rt = self.p, self.radii[0]
        d = -2.0 * p * st / rt * bt ** (p - 1) * bx ** p
        return self.amplitude * np.where(self._mask(t), d, 0.0)

    def dx(self, t, x):
        _, sx, bt, bx = self._factors(t, x)
        p, rx = self.p, self.radii[1]
        d = -2.0 * p * sx / rx * bx ** (p - 1) * bt ** p
        return self.amplitude * np.where(self._mask(t), d, 0.0)

    def scaled(self, factor: float) -> "TestFunction":
        return TestFunction(self.center, self.radii, self.p, self.amplitude * factor)

    def c1_norm(self) -> float:
        """sup|phi| + max(sup|d_t phi|, sup|d_x phi|), in closed form."""
        p = self.p
        s = 1.0 / math.sqrt(2 * p - 1)
        slope = 2 * p * s * (1 - s * s) ** (p - 1)
        a = abs(self.amplitude)
        return a * (1.0 + slope * max(1.0 / self.radii[0], 1.0 / self.radii[1]))


def c1_norm(phi) -> float:
    if hasattr(phi, "c1_norm"):
        return phi.c1_norm()
    box = phi.support
    t = np.linspace(*box.t, 201)
    x = np.linspace(*box.x, 201)
    T, X = np.meshgrid(t, x, indexing="ij")
    return float(np.max(np.abs(phi.value(T, X))) + max(np.max(np.abs(phi.dt(T, X))), np.max(np.abs(phi.dx(T, X)))))
