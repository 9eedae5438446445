"""Both sides of the Kruzkov representation formulas, evaluated independently."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .domain import DEFAULT_SPEC, QuadratureResult, QuadratureSpec, _refine, panel_rule
from .entropies import Entropy1D, EntropyTX, identity
from .fields import essential_range
from .ks import RegulatedBV, ks_integrate
from .production import kruzkov_many, production, production_tx


class HypothesisViolation(ValueError):
    """An input lacks the regularity a representation formula needs."""


@dataclass
class RepresentationReport:
    lhs: complex
    rhs: complex
    boundary_term: complex = 0.0
    diagnostics: dict = field(default_factory=dict)

    @property
    def abs_err(self) -> float:
        return float(abs(self.lhs - self.rhs))

    @property
    def rel_err(self) -> float:
        scale = max(abs(self.lhs), abs(self.rhs))
        return self.abs_err / scale if scale > 0 else 0.0

    def as_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "boundary_term": self.boundary_term,
                "abs_err": self.abs_err, "rel_err": self.rel_err}


def k_interval(u, u0, inflate: float = 0.0) -> tuple:
    a, b = essential_range(u, u0)
    pad = inflate * (b - a)
    return a - pad, b + pad


def k_breaks(u, a: float, b: float) -> tuple:
    return tuple(s for s in getattr(u, "states", ()) if a < s < b)


def integrate_k(weights, u, u0, f, g, phi, a: float, b: float, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadratureResult:
    """int_a^b weights(k) mu_k(phi) dk with panels cut at the states of u.

    ``weights(k)`` may return shape ``(..., len(k))`` to integrate several
    weights against the same Kruzkov evaluations.
    """
    if b <= a:
        shape = np.shape(weights(np.array([a])))[:-1]
        return QuadratureResult(np.zeros(shape) if shape else 0.0, 0.0, 0, spec.base_level)
    edges = np.array([a, *k_breaks(u, a, b), b])

    def evaluate(level):
        nodes, w = panel_rule(edges, spec.k_axis_order, level)
        mu, _ = kruzkov_many(nodes, u, u0, f, g, phi, spec)
        return np.asarray(weights(nodes)) @ (mu * w), nodes.size

    return _refine(evaluate, spec, "k integral")


def represent_c2(E: Entropy1D, u, u0, f, g, phi, spec: QuadratureSpec = DEFAULT_SPEC,
                 inflate: float = 0.0) -> RepresentationReport:
    """production(E) against half the E''-weighted k-integral of mu_k plus
    the boundary term (E'(a) + E'(b)) / 2 * M_u(Id)."""
    if E.second is None or E.is_acr:
        raise HypothesisViolation("a C2 entropy with E'' is required")
    a, b = k_interval(u, u0, inflate)
    lhs = production(E, u, u0, f, g, phi, spec).value
    kq = integrate_k(E.second, u, u0, f, g, phi, a, b, spec)
    m_id = production(identity(), u, u0, f, g, phi, spec).value
    boundary = 0.5 * (E.deriv(np.asarray(a)) + E.deriv(np.asarray(b))) * m_id
    boundary = complex(boundary) if np.iscomplexobj(boundary) else float(boundary)
    rhs = 0.5 * kq.value + boundary
    return RepresentationReport(lhs, rhs, boundary, {"interval": (a, b), "k": kq.as_dict(), "m_id": m_id})


def represent_acr(E: Entropy1D, u, u0, f, g, phi, spec: QuadratureSpec = DEFAULT_SPEC,
                  inflate: float = 0.0) -> RepresentationReport:
    """production(E) against half the Kurzweil-Stieltjes integral of mu_k
    with respect to E'; the boundary term is reported but not added."""
    a, b = k_interval(u, u0, inflate)
    if E.regulated is not None:
        gamma = E.regulated.restrict(a, b)
    elif E.second is not None:
        gamma = RegulatedBV((a, b), float(E.deriv(np.asarray(a))), E.second)
    else:
        raise HypothesisViolation("E' must be given as a regulated function or through E''")
    kinks = k_breaks(u, a, b)

    def h(ks):
        return kruzkov_many(ks, u, u0, f, g, phi, spec)[0]

    def evaluate(level):
        return ks_integrate(h, gamma, spec, kinks, level), 0

    kq = _refine(evaluate, spec, "Kurzweil-Stieltjes integral")
    lhs = production(E, u, u0, f, g, phi, spec).value
    m_id = production(identity(), u, u0, f, g, phi, spec).value
    boundary = 0.5 * (gamma(np.asarray(a)) + gamma(np.asarray(b))) * m_id
    return RepresentationReport(lhs, 0.5 * kq.value, float(boundary),
                                {"interval": (a, b), "k": kq.as_dict(), "m_id": m_id})


@dataclass(frozen=True)
class SecondDerivativeSlices:
    """The k-dependent test functions (t, x) -> d_uu E(t, x, k)."""

    E: EntropyTX
    k_dependent = True

    @property
    def support(self):
        return self.E.support

    @property
    def pieces(self):
        return self.E.pieces

    def value(self, t, x, k):
        return self.E.duu(t, x, k)

    def dt(self, t, x, k):
        return self.E.dtuu(t, x, k)

    def dx(self, t, x, k):
        return self.E.dxuu(t, x, k)


def boundary_entropy(E: EntropyTX, a: float, b: float) -> EntropyTX:
    """((d_uE(., ., a) + d_uE(., ., b)) / 2) tensor Id."""

    def c(fn):
        return lambda t, x: 0.5 * (fn(t, x, a) + fn(t, x, b))

    cv, ct, cx = c(E.du), c(E.dtu), c(E.dxu)
    return EntropyTX(
        lambda t, x, u: cv(t, x) * u, lambda t, x, u: ct(t, x) * u, lambda t, x, u: cx(t, x) * u,
        lambda t, x, u: cv(t, x) + 0 * u, lambda t, x, u: ct(t, x) + 0 * u, lambda t, x, u: cx(t, x) + 0 * u,
        E.support, name="boundary", pieces=E.pieces,
    )


def represent_tx(E: EntropyTX, u, u0, f, g, spec: QuadratureSpec = DEFAULT_SPEC,
                 inflate: float = 0.0) -> RepresentationReport:
    """production_tx(E) against half the k-integral of mu_k(d_uu E(., ., k))
    plus production_tx of the boundary entropy."""
    if E.duu is None or E.dtuu is None or E.dxuu is None:
        raise HypothesisViolation("d_uu E and its (t, x) derivatives are required")
    if E.support is None:
        raise HypothesisViolation("the (t, x)-support of E must be bounded")
    a, b = k_interval(u, u0, inflate)
    lhs = production_tx(E, u, u0, f, g, spec).value
    slices = SecondDerivativeSlices(E)
    kq = integrate_k(lambda ks: np.ones_like(ks), u, u0, f, g, slices, a, b, spec)
    boundary = production_tx(boundary_entropy(E, a, b), u, u0, f, g, spec).value
    return RepresentationReport(lhs, 0.5 * kq.value + boundary, boundary, {"interval": (a, b), "k": kq.as_dict()})


def convexity_positivity_check(u, u0, f, g, phis, entropies, k_grid, spec: QuadratureSpec = DEFAULT_SPEC) -> dict:
    """Smallest Kruzkov production and smallest convex-entropy production."""
    for phi in phis:
        if float(np.min(phi.value(*np.meshgrid(np.linspace(*phi.support.t, 33),
                                               np.linspace(*phi.support.x, 33))))) < 0:
            raise ValueError("test functions must be nonnegative")
    min_mu = min(float(np.min(kruzkov_many(k_grid, u, u0, f, g, phi, spec)[0])) for phi in phis)
    min_e = min((float(np.real(production(E, u, u0, f, g, phi, spec).value)) for phi in phis for E in entropies),
                default=np.inf)
    return {"min_mu": min_mu, "min_production": min_e}
