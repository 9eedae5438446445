"""Scenario configuration, builtin scenarios and the check suite run on them."""
from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.integrate import quad

from . import entropies as ent
from .domain import DEFAULT_SPEC, QuadratureSpec, TestFunction, c1_norm
from .fields import AnalyticPiecewiseField, InitialDatum
from .fluxes import (FluxFunction, SourceFunction, burgers, linear_flux, linear_source, linear_x2,
                     tx_factor_from_config)
from .fourier import entropy_xi, fourier_rows, moment_series, mu_hat, series_value
from .production import (default_k_grid, kruzkov, kruzkov_many, midpoint_defect, production, production_tx,
                         solution_residual)
from .report import CheckRecord, RunReport, failed, spec_dict
from .representation import represent_acr, represent_c2, represent_tx
from .solvers import FVGrid, RiemannSpec, characteristic_solution, fv_solve, riemann_burgers

BUILTINS = ("burgers_shock", "burgers_rarefaction", "nonentropic_shock", "paper_x2u_strong", "fv_burgers",
            "random_piecewise")

DEFAULT_TOLERANCES = {
    "residual": 1e-6,
    "representation": 1e-6,
    "ks_vs_c2": 1e-8,
    "kruzkov_entropy": 1e-10,
    "fourier": 1e-6,
    "series": 1e-8,
    "positivity": 1e-6,
    "annihilation": 1e-5,
    "oracle": 1e-4,
    "density": 1e-4,
    "midpoint": 1e-3,
    "invariance": 1e-9,
    "fv_positivity": 5.0,
}

DEFAULT_XIS = (0.0, 1.0, -1.0, 5.0, -5.0, 2 + 1j)


class ConfigError(ValueError):
    pass


@dataclass
class Scenario:
    name: str
    u: object
    u0: InitialDatum
    f: FluxFunction
    g: Optional[SourceFunction]
    phis: list
    entropies: list
    expect: str = "entropy"
    k_grid: Optional[np.ndarray] = None
    xis: tuple = DEFAULT_XIS
    spec: QuadratureSpec = DEFAULT_SPEC
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    extra: list = field(default_factory=list)

    @property
    def ks(self) -> np.ndarray:
        return self.k_grid if self.k_grid is not None else default_k_grid(self.u, self.u0)

    def args(self):
        return self.u, self.u0, self.f, self.g


def line_integral(phi, speed: float) -> float:
    """int phi(t, speed t) dt, by adaptive quadrature independent of the library rules."""
    lo, hi = phi.support.t
    return quad(lambda t: float(phi.value(t, speed * t)), lo, hi, epsabs=1e-14, epsrel=1e-13, limit=200)[0]


# ---------------------------------------------------------------------------
# entropy, flux and test-function parsing


def parse_entropy(spec) -> ent.Entropy1D:
    named = {"id": ent.identity, "u^2/2": ent.quadratic, "quadratic": ent.quadratic, "cos": ent.cosine}
    if isinstance(spec, str):
        if spec in named:
            return named[spec]()
        if spec.startswith("u^") and spec[2:].isdigit():
            return ent.power(int(spec[2:]))
        raise ConfigError(f"entropies: unknown entropy {spec!r}")
    if isinstance(spec, dict) and len(spec) == 1:
        (key, val), = spec.items()
        if key == "power":
            return ent.power(int(val))
        if key == "kruzkov":
            return ent.kruzkov(float(val))
        if key == "ladder":
            return ent.step_ladder(val["locations"], val["sizes"], float(val.get("base", 0.0)))
        if key == "xi":
            re, im = (val, 0.0) if np.isscalar(val) else val
            return entropy_xi(complex(re, im))
        if key == "mollified":
            return ent.mollify(parse_entropy(val["entropy"]), float(val["width"]))
    raise ConfigError(f"entropies: cannot parse {spec!r}")


def parse_flux(cfg) -> tuple:
    if cfg is None:
        raise ConfigError("flux: block is required")
    name = cfg.get("name") if isinstance(cfg, dict) else cfg
    if name == "burgers":
        return burgers(), None
    if name == "linear":
        return linear_flux(float(cfg.get("c", 1.0))), None
    if name == "linear_x2":
        return linear_x2()
    if name == "separable":
        try:
            terms = [(tx_factor_from_config(t["a"]), parse_entropy(t["b"])) for t in cfg["terms"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"flux.terms: {exc}") from exc
        return FluxFunction.from_separable(terms), None
    raise ConfigError(f"flux.name: unknown builtin {name!r}")


def parse_source(cfg, implied):
    if cfg is None:
        return implied
    name = cfg.get("name")
    if name == "none":
        return None
    if name == "linear":
        return linear_source(float(cfg.get("rate", 0.0)))
    if name == "linear_x2":
        return linear_x2()[1]
    raise ConfigError(f"source.name: unknown builtin {name!r}")


def parse_test_function(cfg) -> TestFunction:
    try:
        return TestFunction(tuple(cfg["center"]), tuple(cfg["radii"]), int(cfg.get("p", 4)),
                            float(cfg.get("amplitude", 1.0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"test_functions: {exc}") from exc


def parse_xi(v) -> complex:
    return complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)


def parse_spec(cfg) -> QuadratureSpec:
    if not cfg:
        return DEFAULT_SPEC
    try:
        return QuadratureSpec(**cfg)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"quadrature: {exc}") from exc


# ---------------------------------------------------------------------------
# builtin scenarios

SHOCK_PHI = TestFunction((1.0, 0.5), (0.5, 0.5))
X2U_PHI = TestFunction((1.0, -1.2), (0.9, 0.8))


def _riemann_scenario(name, rs: RiemannSpec, expect, t_end=2.0):
    u = riemann_burgers(rs, t_end)
    return Scenario(name, u, u.datum, burgers(), None, [SHOCK_PHI],
                    [ent.quadratic(), ent.power(4), ent.cosine()], expect)


def burgers_shock() -> Scenario:
    sc = _riemann_scenario("burgers_shock", RiemannSpec(1.0, 0.0), "entropy")
    sc.extra = [shock_oracle_checks, stieltjes_vs_c2_checks, tx_checks, series_check, midpoint_check, invariance_checks]
    return sc


def burgers_rarefaction() -> Scenario:
    sc = _riemann_scenario("burgers_rarefaction", RiemannSpec(0.0, 1.0, "rarefaction"), "entropy")
    sc.extra = [zero_curve_check]
    return sc


def nonentropic_shock() -> Scenario:
    sc = _riemann_scenario("nonentropic_shock", RiemannSpec(0.0, 1.0, "non-entropic-shock"), "solution")
    sc.extra = [negative_mu_check]
    return sc


def paper_x2u_strong() -> Scenario:
    u = characteristic_solution("paper_x2u")
    f, g = linear_x2()
    sc = Scenario("paper_x2u_strong", u, u.datum, f, g, [X2U_PHI], [ent.power(2), ent.power(4), ent.cosine()],
                  "entropy")
    sc.extra = [annihilation_checks]
    return sc


def fv_burgers(cells_per_unit: int = 100, scheme: str = "llf") -> Scenario:
    u0 = InitialDatum((0.0,), (1.0, 0.0))
    grid = FVGrid(3 * cells_per_unit, -1.0, 2.0, 2.0, scheme=scheme)
    u = fv_solve(burgers(), None, u0, grid)
    sc = Scenario("fv_burgers", u, u0, burgers(), None, [SHOCK_PHI], [], "approximate",
                  k_grid=np.linspace(-0.05, 1.05, 45))
    sc.extra = [fv_checks]
    return sc


def random_piecewise_field(rng: np.random.Generator, t_end: float = 1.0) -> AnalyticPiecewiseField:
    """Piecewise-constant field with straight, non-crossing interfaces and a
    random piecewise-constant datum; in general not a solution of anything."""
    n_states = int(rng.integers(3, 7))
    pool = np.round(rng.uniform(-1.0, 2.0, n_states), 3)
    while np.unique(pool).size < n_states:
        pool = np.round(rng.uniform(-1.0, 2.0, n_states), 3)
    n_if = int(rng.integers(2, 5))
    start = np.sort(rng.uniform(-0.8, 0.8, n_if))
    end = np.sort(rng.uniform(-0.8, 0.8, n_if))
    slopes = (end - start) / t_end
    states = [float(rng.choice(pool))]
    for _ in range(n_if):
        states.append(float(rng.choice([p for p in pool if p != states[-1]])))
    n_bp = int(rng.integers(1, 4))
    bps = tuple(np.sort(rng.uniform(-0.9, 0.9, n_bp)))
    dstates = tuple(float(rng.choice(pool)) for _ in range(n_bp + 1))
    datum = InitialDatum(bps, dstates)
    vals = list(states) + list(dstates)
    interfaces = tuple((lambda t, a=a, s=s: a + s * np.asarray(t, float)) for a, s in zip(start, slopes))
    return AnalyticPiecewiseField(tuple(states), interfaces, (min(vals), max(vals)), t_end, datum=datum,
                                  name="random_piecewise")


RANDOM_PHI = TestFunction((0.3, 0.0), (0.5, 1.0))


def random_piecewise(seed: int = 0, count: int = 20) -> Scenario:
    rng = np.random.default_rng(seed)
    fields = [random_piecewise_field(rng) for _ in range(count)]
    u = fields[0]
    sc = Scenario("random_piecewise", u, u.datum, burgers(), None, [RANDOM_PHI], [], "none")
    sc.extra = [lambda s: random_field_checks(s, fields)]
    return sc


def build_builtin(name: str, seed: int = 0, cells: int = 100) -> Scenario:
    if name == "burgers_shock":
        return burgers_shock()
    if name == "burgers_rarefaction":
        return burgers_rarefaction()
    if name == "nonentropic_shock":
        return nonentropic_shock()
    if name == "paper_x2u_strong":
        return paper_x2u_strong()
    if name == "fv_burgers":
        return fv_burgers(cells)
    if name == "random_piecewise":
        return random_piecewise(seed)
    raise ConfigError(f"scenario: unknown builtin {name!r}")


def scenario_from_config(cfg: dict, seed: int = 0) -> Scenario:
    """Builtin scenario with overrides, or a fully specified one."""
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    if "scenario" in cfg:
        sc = build_builtin(cfg["scenario"], int(cfg.get("seed", seed)), int(cfg.get("cells", 100)))
    else:
        sc = _custom_scenario(cfg)
    if "entropies" in cfg:
        sc.entropies = [parse_entropy(e) for e in cfg["entropies"]]
        if not sc.entropies:
            # an explicitly empty list asks for the solution residual alone
            sc.extra = []
    if "test_functions" in cfg:
        sc.phis = [parse_test_function(p) for p in cfg["test_functions"]]
    if "k_grid" in cfg:
        kg = cfg["k_grid"]
        sc.k_grid = np.linspace(kg["lo"], kg["hi"], int(kg["n"])) if isinstance(kg, dict) else np.asarray(kg, float)
    if "xi_grid" in cfg:
        sc.xis = tuple(parse_xi(v) for v in cfg["xi_grid"])
    if "quadrature" in cfg:
        sc.spec = parse_spec(cfg["quadrature"])
    if "tolerances" in cfg:
        unknown = set(cfg["tolerances"]) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"tolerances: unknown keys {sorted(unknown)}")
        sc.tolerances.update({k: float(v) for k, v in cfg["tolerances"].items()})
    return sc


def _custom_scenario(cfg: dict) -> Scenario:
    t_end = float(cfg.get("domain", {}).get("t_end", 2.0))
    f, implied = parse_flux(cfg.get("flux"))
    g = parse_source(cfg.get("source"), implied)
    fb = cfg.get("field")
    if not isinstance(fb, dict) or "mode" not in fb:
        raise ConfigError("field.mode: required (exact | fv | characteristic)")
    mode = fb["mode"]
    try:
        if mode == "exact":
            u = riemann_burgers(RiemannSpec(**fb["riemann"]), t_end)
            u0, expect = u.datum, fb.get("expect", "entropy")
        elif mode == "characteristic":
            u = characteristic_solution(fb["name"], {**fb.get("params", {}), "t_end": t_end})
            u0, expect = u.datum, "entropy"
        elif mode == "fv":
            d = fb["datum"]
            u0 = InitialDatum(tuple(d["breakpoints"]), tuple(float(s) for s in d["states"]))
            grid = FVGrid(t_end=t_end, **fb["grid"])
            u, expect = fv_solve(f, g, u0, grid), "approximate"
        else:
            raise ConfigError(f"field.mode: unknown mode {mode!r}")
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"field: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"field: {exc}") from exc
    phis = [parse_test_function(p) for p in cfg.get("test_functions", [])] or [SHOCK_PHI]
    return Scenario(cfg.get("name", "custom"), u, u0, f, g, phis, [], expect)


# ---------------------------------------------------------------------------
# checks; each returns a list of CheckRecords


def _id(sc, *parts):
    return "/".join([sc.name, *[str(p) for p in parts]])


def residual_check(sc: Scenario):
    r = solution_residual(sc.u, sc.u0, sc.f, sc.g, sc.phis, sc.spec)
    tol = sc.tolerances["residual"] if sc.expect in ("entropy", "solution") else np.inf
    return [CheckRecord(_id(sc, "residual"), "distributional solution: M_u(Id) vanishes", r, 0.0, tol)]


def representation_checks(sc: Scenario):
    out = []
    for i, phi in enumerate(sc.phis):
        for E in sc.entropies:
            if E.is_acr:
                if sc.expect not in ("entropy", "solution"):
                    continue
                rep = represent_acr(E, *sc.args(), phi, sc.spec)
                out.append(CheckRecord(_id(sc, "ks_representation", E.name, i),
                                       "Kurzweil-Stieltjes representation for ACR entropies", rep.lhs, rep.rhs,
                                       sc.tolerances["ks_vs_c2"], relative=True, scale=c1_norm(phi)))
            else:
                rep = represent_c2(E, *sc.args(), phi, sc.spec)
                out.append(CheckRecord(_id(sc, "c2_representation", E.name, i),
                                       "C2 representation with boundary term", rep.lhs, rep.rhs,
                                       sc.tolerances["representation"], relative=True, scale=c1_norm(phi)))
    return out


def fourier_checks(sc: Scenario):
    out = []
    for i, phi in enumerate(sc.phis):
        for xi, h, via, err in fourier_rows(sc.xis, *sc.args(), phi, sc.spec):
            tol = sc.tolerances["fourier"] * (1 + abs(h))
            out.append(CheckRecord(_id(sc, "fourier", f"{xi.real:g}{xi.imag:+g}j", i),
                                   "Fourier transform of k -> mu_k equals production of E_xi", h, via, tol))
    return out


def positivity_checks(sc: Scenario):
    out = []
    for i, phi in enumerate(sc.phis):
        mu, _ = kruzkov_many(sc.ks, *sc.args(), phi, sc.spec)
        tol = sc.tolerances["positivity"] * c1_norm(phi)
        m = float(mu.min())
        out.append(CheckRecord(_id(sc, "min_mu_k", i), "entropy solutions: mu_k >= 0 for phi >= 0", min(m, 0.0), 0.0,
                               tol, note=f"min over {sc.ks.size} k values = {m:.6e}"))
    return out


def shock_oracle_checks(sc: Scenario):
    phi = sc.phis[0]
    L = line_integral(phi, 0.5)
    out = []
    r = production(ent.quadratic(), *sc.args(), phi, sc.spec)
    out.append(CheckRecord(_id(sc, "rh_quadratic"), "Rankine-Hugoniot oracle s[E] - [F] = 1/12", r.value, L / 12,
                           sc.tolerances["oracle"], relative=True))
    ks = np.round(np.arange(1, 10) / 10, 12)
    mu, _ = kruzkov_many(ks, *sc.args(), phi, sc.spec)
    for k, m in zip(ks, mu):
        out.append(CheckRecord(_id(sc, "kruzkov_density", f"{k:g}"), "Kruzkov density k(1-k) on the shock line",
                               m / L, k * (1 - k), sc.tolerances["density"]))
    return out


def stieltjes_vs_c2_checks(sc: Scenario):
    phi = sc.phis[0]
    out = []
    for E in (ent.quadratic(), ent.power(4)):
        c2 = represent_c2(E, *sc.args(), phi, sc.spec)
        ks_ = represent_acr(E, *sc.args(), phi, sc.spec)
        out.append(CheckRecord(_id(sc, "ks_vs_c2", E.name), "Stieltjes form agrees with the C2 form",
                               ks_.rhs, c2.rhs - c2.boundary_term, sc.tolerances["ks_vs_c2"], relative=True,
                               scale=c1_norm(phi)))
        out.append(CheckRecord(_id(sc, "boundary_term", E.name), "boundary term vanishes for solutions",
                               c2.boundary_term, 0.0, sc.tolerances["residual"]))
    for c in (0.0, 0.25, 0.5, 1.0):
        rep = represent_acr(ent.kruzkov(c), *sc.args(), phi, sc.spec)
        mu_c = kruzkov(c, *sc.args(), phi, sc.spec).value
        out.append(CheckRecord(_id(sc, "kruzkov_entropy", f"{c:g}"), "Stieltjes form with E=|u-c| gives mu_c",
                               rep.rhs, mu_c, sc.tolerances["kruzkov_entropy"]))
        out.append(CheckRecord(_id(sc, "kruzkov_production", f"{c:g}"), "production of |u-c| equals mu_c",
                               rep.lhs, mu_c, sc.tolerances["kruzkov_entropy"]))
    return out


def tx_checks(sc: Scenario):
    phi = sc.phis[0]
    E = ent.EntropyTX.tensor(phi, ent.power(2))
    rep = represent_tx(E, *sc.args(), sc.spec)
    bridge = production_tx(E, *sc.args(), sc.spec).value
    direct = production(ent.power(2), *sc.args(), phi, sc.spec).value
    return [
        CheckRecord(_id(sc, "tx_representation"), "(t,x)-dependent representation, E = phi u^2", rep.lhs, rep.rhs,
                    sc.tolerances["representation"], relative=True, scale=c1_norm(phi)),
        CheckRecord(_id(sc, "tensor_bridge"), "M(E)(phi) = M^tx(phi E)", bridge, direct,
                    sc.tolerances["invariance"]),
    ]


def series_check(sc: Scenario):
    phi = sc.phis[0]
    coeffs = moment_series(*sc.args(), phi, 20, sc.spec)
    h = mu_hat([1.0], *sc.args(), phi, sc.spec)[0]
    return [CheckRecord(_id(sc, "moment_series"), "power series of the transform at xi = 1", series_value(coeffs, 1.0),
                        h, sc.tolerances["series"])]


def midpoint_check(sc: Scenario):
    phi = sc.phis[0]
    d = midpoint_defect(1.0, 1e-3, *sc.args(), phi, sc.spec)
    return [CheckRecord(_id(sc, "midpoint"), "midpoint property at a state value", d, 0.0,
                        sc.tolerances["midpoint"] * c1_norm(phi))]


@dataclass(frozen=True)
class BumpOffset:
    """Compactly supported Delta(t, x) used to shift the entropy flux."""

    center: tuple = (1.0, 0.4)
    radii: tuple = (0.3, 0.4)
    amplitude: float = 0.7

    def _b(self):
        return TestFunction(self.center, self.radii, 4, self.amplitude)

    @property
    def support(self):
        return self._b().support

    def value(self, t, x):
        return self._b().value(t, x)

    def dx(self, t, x):
        return self._b().dx(t, x)


def invariance_checks(sc: Scenario):
    phi = sc.phis[0]
    E = ent.power(4)
    base = production(E, *sc.args(), phi, sc.spec).value
    shifted = production(E, *sc.args(), phi, sc.spec, flux_offset=BumpOffset()).value
    affine = production(E + ent.affine(0.7, -1.3), *sc.args(), phi, sc.spec).value
    return [
        CheckRecord(_id(sc, "flux_offset"), "entropy flux fixed up to (t,x) offsets", shifted, base,
                    sc.tolerances["invariance"]),
        CheckRecord(_id(sc, "affine"), "invariance under E -> E + a u + b for solutions", affine, base,
                    sc.tolerances["invariance"]),
    ]


def zero_curve_check(sc: Scenario):
    phi = sc.phis[0]
    mu, _ = kruzkov_many(sc.ks, *sc.args(), phi, sc.spec)
    worst = float(np.max(np.abs(mu)))
    return [CheckRecord(_id(sc, "zero_curve"), "Lipschitz solutions produce no entropy", worst, 0.0,
                        sc.tolerances["oracle"] * c1_norm(phi))]


def negative_mu_check(sc: Scenario):
    phi = sc.phis[0]
    L = line_integral(phi, 0.5)
    m = kruzkov(0.5, *sc.args(), phi, sc.spec).value
    excess = max(m + 0.2 * L, 0.0)
    return [CheckRecord(_id(sc, "negative_mu_half"), "non-entropic shock: mu_1/2 <= -0.2 int phi", excess, 0.0, 0.0,
                        note=f"mu_1/2 = {m:.6e}, line integral = {L:.6e}")]


def annihilation_checks(sc: Scenario):
    out = []
    for i, phi in enumerate(sc.phis):
        scale = c1_norm(phi)
        for E in sc.entropies:
            r = production(E, *sc.args(), phi, sc.spec)
            out.append(CheckRecord(_id(sc, "strong_zero", E.name, i), "strong solutions produce no entropy",
                                   r.value / scale, 0.0, sc.tolerances["annihilation"]))
        box = phi.support
        Etx = ent.EntropyTX.tensor(phi, ent.power(2))
        r = production_tx(Etx, *sc.args(), sc.spec)
        out.append(CheckRecord(_id(sc, "strong_zero_tx", i), "strong solutions: M^tx vanishes", r.value / scale, 0.0,
                               sc.tolerances["annihilation"], note=f"support {box.bounds}"))
    return out


def fv_checks(sc: Scenario):
    phi = sc.phis[0]
    mu, _ = kruzkov_many(sc.ks, *sc.args(), phi, sc.spec)
    dx = sc.u.dx
    floor = -sc.tolerances["fv_positivity"] * dx * c1_norm(phi)
    m = float(mu.min())
    return [CheckRecord(_id(sc, "fv_min_mu"), "monotone schemes are entropy consistent up to O(dx)", min(m - floor, 0.0),
                        0.0, 0.0, note=f"min mu_k = {m:.6e}, floor = {floor:.6e}")]


def random_field_checks(sc: Scenario, fields):
    out = []
    E = ent.power(4)
    for i, u in enumerate(fields):
        rep = represent_c2(E, u, u.datum, sc.f, sc.g, sc.phis[0], sc.spec)
        out.append(CheckRecord(_id(sc, "random_c2_u4", i), "C2 representation on arbitrary piecewise-constant fields",
                               rep.lhs, rep.rhs, sc.tolerances["representation"], relative=True, scale=c1_norm(sc.phis[0]),
                               note=f"boundary term {rep.boundary_term:.6e}"))
    return out


def check_suite(sc: Scenario) -> list:
    """(name, callable) pairs making up the checks for ``sc``."""
    suite = [("residual", residual_check)]
    if sc.entropies:
        suite.append(("representation", representation_checks))
        if sc.expect in ("entropy", "solution"):
            suite.append(("fourier", fourier_checks))
        if sc.expect == "entropy":
            suite.append(("positivity", positivity_checks))
    for fn in sc.extra:
        suite.append((getattr(fn, "__name__", "extra"), fn))
    return suite


def run_scenario(sc: Scenario, jobs: int = 1, config: Optional[dict] = None, seed: int = 0) -> RunReport:
    """Evaluate every check of ``sc``; numerical failures are recorded, not raised."""
    start = time.perf_counter()

    def one(item):
        name, fn = item
        try:
            return fn(sc)
        except Exception as exc:  # recorded as a failed check
            return [failed(sc.name, name, "numerical failure", exc)]

    suite = check_suite(sc)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(one, suite))
    else:
        results = [one(item) for item in suite]
    records = sorted((r for rs in results for r in rs), key=lambda r: r.check_id)
    cfg = config if config is not None else {"scenario": sc.name, "seed": seed}
    meta = {
        "scenario": sc.name,
        "config_hash": hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest(),
        "seed": int(seed),
        "spec": spec_dict(sc.spec),
        "wall_time": time.perf_counter() - start,
    }
    return RunReport(records, meta)


def replace_spec(sc: Scenario, **kw) -> Scenario:
    return replace(sc, spec=replace(sc.spec, **kw))
