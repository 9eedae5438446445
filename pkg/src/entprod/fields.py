"""Bounded fields u(t, x) and initial data u0(x) in one space dimension."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .domain import Box


@dataclass(frozen=True)
class InitialDatum:
    """Piecewise formula in x; ``pieces`` has one entry more than ``breakpoints``.

    A piece is either a float (an exact constant state) or a callable of x.
    """

    breakpoints: tuple
    pieces: tuple
    value_range: Optional[tuple] = None

    def __post_init__(self):
        bps = tuple(float(b) for b in self.breakpoints)
        if any(b <= a for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be sorted and distinct")
        if len(self.pieces) != len(bps) + 1:
            raise ValueError("need one piece per interval")
        object.__setattr__(self, "breakpoints", bps)
        if self.value_range is None:
            consts = [float(p) for p in self.pieces if not callable(p)]
            if len(consts) != len(self.pieces):
                raise ValueError("value_range must be declared for non-constant pieces")
            object.__setattr__(self, "value_range", (min(consts), max(consts)))

    @classmethod
    def constant(cls, c: float) -> "InitialDatum":
        return cls((), (float(c),))

    @property
    def states(self) -> tuple:
        return tuple(sorted({float(p) for p in self.pieces if not callable(p)}))

    def value(self, x):
        x = np.asarray(x, float)
        idx = np.searchsorted(np.asarray(self.breakpoints), x, side="right")
        out = np.empty(x.shape)
        for i, piece in enumerate(self.pieces):
            m = idx == i
            if not np.any(m):
                continue
            out[m] = piece(x[m]) if callable(piece) else float(piece)
        return out

    __call__ = value


@dataclass(frozen=True)
class Region:
    """One region of a piecewise field: an exact constant or a formula u(t, x).

    ``level_sets`` optionally lists branches ``(t, level) -> x`` at which the
    formula takes ``level`` (NaN where a branch does not exist); they cut
    quadrature panels at the kinks of |u - k|.
    """

    constant: Optional[float] = None
    formula: Optional[Callable] = None
    level_sets: tuple = ()
    name: str = ""

    def __post_init__(self):
        if (self.constant is None) == (self.formula is None):
            raise ValueError("a region is either constant or given by a formula")
        if callable(self.level_sets):
            object.__setattr__(self, "level_sets", (self.level_sets,))

    def __call__(self, t, x):
        if self.constant is not None:
            return np.full(np.broadcast(np.asarray(t), np.asarray(x)).shape, float(self.constant))
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.asarray(self.formula(t, x), float)


def _as_region(r) -> Region:
    if isinstance(r, Region):
        return r
    if callable(r):
        return Region(formula=r)
    return Region(constant=float(r))


def _curve_many(c, ts):
    try:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.asarray(c(ts), float)
        if out.shape == ts.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([float(c(t)) for t in ts])


@dataclass(frozen=True)
class _BreakCurves:
    """x-breakpoints active at a time, as a callable and in batch form."""

    curves: tuple

    def __call__(self, t):
        vals = np.array([float(c(t)) for c in self.curves]) if self.curves else np.empty(0)
        return vals[np.isfinite(vals)]

    def many(self, ts):
        ts = np.asarray(ts, float)
        if not self.curves:
            return np.empty((ts.size, 0))
        return np.stack([_curve_many(c, ts) for c in self.curves], axis=1)


@dataclass(frozen=True)
class AnalyticPiecewiseField:
    """Closed-form field on [0, t_end] x R.

    Regions are ordered left to right and separated by ``interfaces``, a
    list of curves x = gamma_j(t). A point belongs to region j when exactly
    j interfaces satisfy x >= gamma(t); there is no tolerance. ``curves``
    lists further lines where a region formula is not smooth.
    """

    regions: tuple
    interfaces: tuple = ()
    value_range: tuple = (0.0, 0.0)
    t_end: float = 1.0
    curves: tuple = ()
    datum: Optional[InitialDatum] = None
    t_kinks: tuple = ()
    name: str = ""

    def __post_init__(self):
        regions = tuple(_as_region(r) for r in self.regions)
        if len(regions) != len(self.interfaces) + 1:
            raise ValueError("need one region more than interfaces")
        object.__setattr__(self, "regions", regions)
        lo, hi = self.value_range
        if not lo <= hi:
            raise ValueError("value_range must be ordered")
        t = np.linspace(0.0, self.t_end, 65)
        for g1, g2 in zip(self.interfaces, self.interfaces[1:]):
            if np.any(np.asarray(g2(t)) < np.asarray(g1(t))):
                raise ValueError("interfaces cross on [0, t_end]")

    @property
    def states(self) -> tuple:
        vals = {float(r.constant) for r in self.regions if r.constant is not None}
        if self.datum is not None:
            vals |= set(self.datum.states)
        return tuple(sorted(vals))

    @property
    def has_level_sets(self) -> bool:
        return any(r.level_sets for r in self.regions)

    def region_index(self, t, x):
        t = np.asarray(t, float)
        x = np.asarray(x, float)
        idx = np.zeros(np.broadcast(t, x).shape, dtype=int)
        for g in self.interfaces:
            idx = idx + (x >= g(t))
        return idx

    def _check(self, t, x):
        t = np.asarray(t, float)
        if np.any(t < 0) or np.any(t > self.t_end) or not np.all(np.isfinite(x)):
            raise ValueError("point outside the space-time domain")

    def values(self, t, x):
        t, x = np.broadcast_arrays(np.asarray(t, float), np.asarray(x, float))
        idx = self.region_index(t, x)
        out = np.empty(t.shape)
        for i, region in enumerate(self.regions):
            m = idx == i
            if np.any(m):
                out[m] = region(t[m], x[m])
        return out

    def evaluate(self, t: float, x: float):
        """``(value, region_id)`` at one point."""
        self._check(t, x)
        i = int(self.region_index(t, x))
        return float(self.regions[i](t, x)), (self.regions[i].name or i)

    def _curves(self, levels=()):
        out = list(self.interfaces) + list(self.curves)
        for r in self.regions:
            for branch in r.level_sets:
                for k in levels:
                    out.append(lambda t, _b=branch, _k=float(k): _b(t, _k))
        return out

    def x_breaks(self, levels=()):
        return _BreakCurves(tuple(self._curves(levels)))

    def t_breaks(self, box: Box, levels=()) -> tuple:
        """Times at which a break curve enters or leaves ``box`` through its x-edges."""
        t_lo, t_hi = box.t
        out = {float(t) for t in self.t_kinks if t_lo < t < t_hi}
        ts = np.linspace(t_lo, t_hi, 257)
        for c in self._curves(levels):
            xs = _curve_many(c, ts)
            finite = np.isfinite(xs)
            for i in np.flatnonzero(finite[:-1] != finite[1:]):
                out.add(float(ts[i] if finite[i] else ts[i + 1]))
            both = finite[:-1] & finite[1:]
            for edge in box.x:
                d = xs - edge
                out.update(float(t) for t in ts[:-1][both & (d[:-1] == 0.0)])
                for i in np.flatnonzero(both & (d[:-1] * d[1:] < 0)):
                    out.add(float(brentq(lambda t: float(c(t)) - edge, ts[i], ts[i + 1], xtol=1e-15)))
        return tuple(sorted(t for t in out if t_lo < t < t_hi))


@dataclass(frozen=True)
class GridField:
    """Piecewise-constant field on a uniform space-time mesh.

    ``data[n, j]`` is the value on [n dt, (n+1) dt) x [x_lo + j dx, x_lo + (j+1) dx).
    """

    dt: float
    dx: float
    x_lo: float
    data: np.ndarray = field(repr=False)
    datum: Optional[InitialDatum] = None
    name: str = "grid"

    def __post_init__(self):
        data = np.array(self.data, float)
        if data.ndim != 2 or data.size == 0:
            raise ValueError("grid data must be a non-empty (steps, cells) array")
        if not np.all(np.isfinite(data)):
            raise ValueError("grid values must be finite")
        if not (self.dt > 0 and self.dx > 0):
            raise ValueError("mesh sizes must be positive")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def t_end(self) -> float:
        return self.dt * self.data.shape[0]

    @property
    def x_hi(self) -> float:
        return self.x_lo + self.dx * self.data.shape[1]

    @property
    def value_range(self) -> tuple:
        return float(self.data.min()), float(self.data.max())

    @property
    def states(self) -> tuple:
        return ()

    has_level_sets = False

    def _index(self, t, x):
        t = np.asarray(t, float)
        x = np.asarray(x, float)
        slack = 1e-12 * max(1.0, self.t_end, abs(self.x_lo), abs(self.x_hi))
        if np.any(t < -slack) or np.any(t > self.t_end + slack) or np.any(x < self.x_lo - slack) \
                or np.any(x > self.x_hi + slack):
            raise ValueError("point outside the grid")
        n = np.clip(np.floor(t / self.dt).astype(int), 0, self.data.shape[0] - 1)
        j = np.clip(np.floor((x - self.x_lo) / self.dx).astype(int), 0, self.data.shape[1] - 1)
        return n, j

    def values(self, t, x):
        n, j = self._index(t, x)
        return self.data[n, j]

    def evaluate(self, t: float, x: float):
        n, j = self._index(t, x)
        return float(self.data[n, j]), (int(n), int(j))

    def x_breaks(self, levels=()):
        return self.x_lo + self.dx * np.arange(self.data.shape[1] + 1)

    def t_breaks(self, box: Box, levels=()) -> tuple:
        edges = self.dt * np.arange(self.data.shape[0] + 1)
        return tuple(float(t) for t in edges if box.t[0] < t < box.t[1])

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t_index", "x_index", "value"])
            for n, row in enumerate(self.data):
                for j, v in enumerate(row):
                    w.writerow([n, j, repr(float(v))])

    @classmethod
    def from_csv(cls, path, dt: float, dx: float, x_lo: float, datum=None) -> "GridField":
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
        if not rows:
            raise ValueError("empty grid file")
        n = np.array([int(r["t_index"]) for r in rows])
        j = np.array([int(r["x_index"]) for r in rows])
        data = np.full((n.max() + 1, j.max() + 1), np.nan)
        data[n, j] = [float(r["value"]) for r in rows]
        return cls(dt, dx, x_lo, data, datum)


def essential_range(u, u0: Optional[InitialDatum] = None) -> tuple:
    """Smallest declared interval holding the values of u and of u0."""
    lo, hi = u.value_range
    if u0 is not None:
        lo, hi = min(lo, u0.value_range[0]), max(hi, u0.value_range[1])
    return float(lo), float(hi)
