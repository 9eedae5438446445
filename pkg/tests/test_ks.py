import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entprod.ks import RegulatedBV, ks_integrate, regulated_normalize


def test_single_jump_picks_the_point_value():
    gamma = RegulatedBV((-1.0, 1.0), -1.0, None, ((0.3, 2.0),))
    assert ks_integrate(lambda k: np.cos(k), gamma) == pytest.approx(2 * np.cos(0.3), abs=1e-15)


def test_riemann_examples():
    unit = RegulatedBV((0.0, 1.0), 0.0, lambda k: np.ones_like(k))
    assert ks_integrate(lambda k: k, unit) == pytest.approx(0.5, abs=1e-15)
    quartic = RegulatedBV((0.0, 1.0), 0.0, lambda k: 12 * k ** 2)
    assert ks_integrate(lambda k: np.ones_like(k), quartic) == pytest.approx(4.0, abs=1e-14)


def test_normalize_examples():
    sgn = regulated_normalize([0.0], [-1.0], [1.0])
    assert sgn.point_values == (0.0,)
    assert sgn(np.array([-0.5, 0.5])).tolist() == [-1.0, 1.0]
    double = regulated_normalize([0.0], [0.0], [4.0])
    assert double.point_values == (2.0,)
    cont = regulated_normalize([0.5], [1.5], [1.5])
    assert cont.jumps == () and float(cont(0.5)) == 1.5


def test_normalize_rejects_bad_limits():
    with pytest.raises(ValueError):
        regulated_normalize([0.0], [np.inf], [1.0])
    with pytest.raises(ValueError):
        regulated_normalize([0.0, 1.0], [0.0, 5.0], [1.0, 6.0])  # second left limit ignores the first jump


def test_jump_locations_must_increase():
    with pytest.raises(ValueError):
        RegulatedBV((0, 1), 0.0, None, ((0.5, 1.0), (0.2, 1.0)))


def test_riemann_stieltjes_agreement():
    # h = k^3 - k, Gamma = k^2 + 2k: int h dGamma = int (k^3 - k)(2k + 2) dk on [-1, 2]
    gamma = RegulatedBV((-1.0, 2.0), -1.0, lambda k: 2 * k + 2)
    got = ks_integrate(lambda k: k ** 3 - k, gamma)
    poly = np.polynomial.Polynomial([0, -1, 0, 1]) * np.polynomial.Polynomial([2, 2])
    exact = poly.integ()(2.0) - poly.integ()(-1.0)
    assert got == pytest.approx(exact, rel=1e-12)


def _mixed(locs, sizes):
    return RegulatedBV((-1.0, 1.0), 0.3, lambda k: np.cos(3 * k), tuple(zip(locs, sizes)))


def test_additivity_with_atom_at_split():
    gamma = _mixed([-0.4, 0.0, 0.5], [1.0, -2.0, 0.7])
    h = lambda k: np.exp(k) * np.sin(2 * k) + 1.0  # noqa: E731
    whole = ks_integrate(h, gamma)
    for m in (0.0, 0.25, 0.5):
        left, right = gamma.split(m)
        assert ks_integrate(h, left) + ks_integrate(h, right) == pytest.approx(whole, abs=1e-13)
    left, right = gamma.split(0.0)
    assert 0.0 in left.locations and 0.0 not in right.locations


def test_linearity():
    g1 = _mixed([-0.4], [1.0])
    g2 = RegulatedBV((-1.0, 1.0), 0.0, lambda k: k ** 2, ((0.2, -0.5),))
    h1, h2 = np.sin, lambda k: k ** 2  # noqa: E731
    a, b = 1.7, -0.6
    lhs = ks_integrate(lambda k: a * h1(k) + b * h2(k), g1)
    assert lhs == pytest.approx(a * ks_integrate(h1, g1) + b * ks_integrate(h2, g1), abs=1e-14)
    combo = g1 + g2.scale(b)
    assert ks_integrate(h1, combo) == pytest.approx(ks_integrate(h1, g1) + b * ks_integrate(h1, g2), abs=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.floats(-0.95, 0.95), st.floats(-3, 3)), max_size=4, unique_by=lambda p: round(p[0], 6)),
       st.floats(-2, 2), st.floats(0.5, 4))
def test_variation_bound(jumps, amp, freq):
    jumps = sorted((round(c, 6), d) for c, d in jumps)
    gamma = RegulatedBV((-1.0, 1.0), 0.0, lambda k: amp * np.sin(freq * k), tuple(jumps))
    h = lambda k: np.cos(5 * k) * np.exp(-k)  # noqa: E731
    grid = np.linspace(-1, 1, 20001)
    sup_h = float(np.max(np.abs(h(grid))))
    assert abs(ks_integrate(h, gamma)) <= sup_h * gamma.total_variation() * (1 + 1e-9) + 1e-12


def test_total_variation_formula():
    gamma = RegulatedBV((0.0, 1.0), 0.0, lambda k: 2 * k - 1, ((0.5, -3.0),))
    assert gamma.total_variation() == pytest.approx(0.5 + 3.0, abs=1e-12)


def test_restrict_keeps_values():
    gamma = _mixed([-0.4, 0.5], [1.0, 2.0])
    sub = gamma.restrict(-0.2, 0.8)
    k = np.linspace(-0.2, 0.8, 7)
    assert np.allclose(sub(k), gamma(k), atol=1e-13)
