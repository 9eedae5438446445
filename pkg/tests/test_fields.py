import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from entprod.domain import Box
from entprod.fields import AnalyticPiecewiseField, GridField, InitialDatum, essential_range
from entprod.solvers import RiemannSpec, riemann_burgers


@pytest.fixture(scope="module")
def shock_field():
    return riemann_burgers(RiemannSpec(1.0, 0.0))


def test_evaluate_examples(shock_field):
    assert shock_field.evaluate(1.0, 0.4) == (1.0, "left")
    assert shock_field.evaluate(1.0, 0.6) == (0.0, "right")
    fan = riemann_burgers(RiemannSpec(0.0, 1.0, "rarefaction"))
    assert fan.evaluate(1.0, 0.5) == (0.5, "fan")


def test_evaluate_outside_domain(shock_field):
    with pytest.raises(ValueError):
        shock_field.evaluate(-0.1, 0.0)
    with pytest.raises(ValueError):
        shock_field.evaluate(3.0, 0.0)


@pytest.mark.parametrize("t", [0.3, 1.0, 1.7])
def test_region_flips_exactly_on_the_interface(shock_field, t):
    gamma = 0.5 * t
    eps = 1e-12 * max(1.0, abs(gamma))
    _, left = shock_field.evaluate(t, gamma - eps)
    _, right = shock_field.evaluate(t, gamma + eps)
    assert left != right


def test_essential_range_examples(shock_field):
    assert essential_range(shock_field, shock_field.datum) == (0.0, 1.0)
    const = AnalyticPiecewiseField((0.7,), (), (0.7, 0.7), 1.0, datum=InitialDatum.constant(0.7))
    assert essential_range(const, const.datum) == (0.7, 0.7)
    grid = GridField(0.5, 0.25, -1.0, np.array([[0.2, -0.3, 1.1], [0.0, 0.5, 0.9]]))
    assert essential_range(grid) == (-0.3, 1.1)


@given(st.floats(-5, 5), st.floats(0, 5))
def test_essential_range_monotone_in_datum(lo, width):
    u = riemann_burgers(RiemannSpec(1.0, 0.0))
    small = essential_range(u, InitialDatum((0.0,), (1.0, 0.0)))
    big = essential_range(u, InitialDatum((0.0,), (1.0, 0.0), (min(lo, 0.0), max(lo + width, 1.0))))
    assert big[0] <= small[0] and big[1] >= small[1]


def test_initial_datum_validation():
    with pytest.raises(ValueError):
        InitialDatum((1.0, 0.0), (0.0, 1.0, 2.0))
    with pytest.raises(ValueError):
        InitialDatum((0.0,), (lambda x: x, 1.0))  # range must be declared for formulas
    d = InitialDatum((0.0,), (1.0, 0.0))
    assert d(np.array([-1.0, 0.0, 1.0])).tolist() == [1.0, 0.0, 0.0]


def test_crossing_interfaces_rejected():
    with pytest.raises(ValueError):
        AnalyticPiecewiseField((0.0, 1.0, 0.0), (lambda t: t, lambda t: 1 - np.asarray(t)), (0, 1), 1.0)


def test_grid_csv_round_trip(tmp_path, rng):
    data = rng.normal(size=(4, 7)) / 3.0
    g = GridField(0.1, 0.2, -0.7, data)
    path = tmp_path / "u.csv"
    g.to_csv(path)
    raw = path.read_bytes()
    assert raw.startswith(b"t_index,x_index,value\n") and b"\r" not in raw
    back = GridField.from_csv(path, 0.1, 0.2, -0.7)
    assert np.array_equal(back.data, g.data)


def test_grid_lookup_and_breaks():
    g = GridField(0.5, 0.25, -1.0, np.arange(8.0).reshape(2, 4))
    assert g.evaluate(0.6, -0.6) == (5.0, (1, 1))
    assert np.allclose(g.x_breaks(), [-1.0, -0.75, -0.5, -0.25, 0.0])
    assert g.t_breaks(Box.tx(0.0, 1.0, -1, 0)) == (0.5,)
    with pytest.raises(ValueError):
        g.values(0.2, 0.5)
    with pytest.raises(ValueError):
        GridField(0.5, 0.25, 0.0, np.array([[np.nan]]))


def test_t_breaks_catch_interface_exits():
    u = riemann_burgers(RiemannSpec(1.0, 0.0))
    tb = u.t_breaks(Box.tx(0.0, 2.0, -1.0, 0.6))
    assert tb == pytest.approx((1.2,), abs=1e-12)
