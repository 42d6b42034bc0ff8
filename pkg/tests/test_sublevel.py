import math

import numpy as np
import pytest

from oscint import (
    Interval,
    NonconvergentTailError,
    PreconditionError,
    monomial,
    osc_integrate_1d,
    osc_to_sublevel_constant,
    sublevel_1d,
    sublevel_2d,
    xy_phase,
)
from oscint.decay import DecaySample, fit_decay, geometric_grid
from oscint.phases import Phase2D, unit_square


class TestSublevel1D:
    def test_linear(self):
        f = monomial(1, (0.0, 1.0))
        res = sublevel_1d(f, 0.5, 0.1)
        assert res.measure == pytest.approx(0.2, abs=1e-11)
        assert len(res.components) == 1
        np.testing.assert_allclose(
            (res.components[0].lo, res.components[0].hi), (0.4, 0.6), atol=1e-11)

    @pytest.mark.parametrize("eps", [1e-4, 1e-2, 0.3])
    def test_square_at_zero(self, eps):
        f = monomial(2, (-1.0, 1.0))
        res = sublevel_1d(f, 0.0, eps)
        assert res.measure == pytest.approx(2.0 * math.sqrt(eps), rel=1e-9)
        assert len(res.components) == 1

    def test_square_two_components(self):
        f = monomial(2, (-1.0, 1.0))
        res = sublevel_1d(f, 0.25, 0.05)
        assert len(res.components) == 2
        lo, hi = res.components[1].lo, res.components[1].hi
        assert lo == pytest.approx(math.sqrt(0.2), abs=1e-10)
        assert hi == pytest.approx(math.sqrt(0.3), abs=1e-10)

    def test_monotone_and_nested_in_eps(self):
        f = monomial(3, (-1.0, 1.0))
        prev = None
        for eps in (0.01, 0.05, 0.2, 0.7):
            res = sublevel_1d(f, 0.1, eps)
            if prev is not None:
                assert res.measure >= prev.measure
                for comp_small in prev.components:
                    assert any(c.lo - 1e-10 <= comp_small.lo and
                               comp_small.hi <= c.hi + 1e-10
                               for c in res.components)
            prev = res

    def test_measure_equals_component_lengths(self):
        f = monomial(2, (-1.0, 1.0))
        res = sublevel_1d(f, 0.3, 0.12)
        assert res.measure == pytest.approx(
            sum(c.length for c in res.components), abs=1e-10)


class TestSublevel2D:
    def test_band_between_lines(self):
        def sep(orders, x, y):
            i, j = orders
            shape = np.broadcast_shapes(x.shape, y.shape)
            if i + j == 0:
                return np.broadcast_to(x + y, shape).copy()
            if (i, j) in ((1, 0), (0, 1)):
                return np.ones(shape)
            return np.zeros(shape)

        f2 = Phase2D(sep, (2, 2), unit_square(), name="x+y")
        m = sublevel_2d(f2, 1.0, 0.1)
        assert m == pytest.approx(0.19, rel=1e-6)

    @pytest.mark.parametrize("eps", [1e-3, 1e-2])
    def test_xy_log_formula(self, eps):
        m = sublevel_2d(xy_phase(), 0.0, eps)
        exact = eps * (1.0 + math.log(1.0 / eps))
        assert m == pytest.approx(exact, rel=1e-6)

    def test_saturates_at_area(self):
        m = sublevel_2d(xy_phase(), 0.0, 2.0)
        assert m == pytest.approx(1.0, rel=1e-9)


class TestConstant:
    def test_finite_at_half(self):
        C = osc_to_sublevel_constant(0.5)
        assert math.isfinite(C.C_delta) and C.C_delta > 0
        again = osc_to_sublevel_constant(0.5)
        assert abs(again.C_delta - C.C_delta) < 1e-6 * C.C_delta

    def test_monotone_probe(self):
        assert (osc_to_sublevel_constant(0.9).C_delta
                > osc_to_sublevel_constant(0.5).C_delta)

    def test_validity_against_measured_sublevels(self):
        f = monomial(2, (0.0, 1.0))
        delta = 0.5
        samples = [
            (lambda q: DecaySample(q.lam, abs(q.value), q.error_estimate))(
                osc_integrate_1d(f, float(l)))
            for l in geometric_grid(1e2, 1e5, 8)
        ]
        A = max(1.0, fit_decay(samples).C_hat)
        C = osc_to_sublevel_constant(delta)
        for eps in np.geomspace(1e-3, 0.5, 12):
            res = sublevel_1d(f, 0.2, float(eps))
            assert res.measure <= C.C_delta * A * eps**delta

    def test_domain_check(self):
        with pytest.raises(PreconditionError):
            osc_to_sublevel_constant(1.0)

    def test_tail_guard(self):
        with pytest.raises(NonconvergentTailError):
            osc_to_sublevel_constant(0.5, xi_cutoff=4.0)


def test_component_count_stays_bounded():
    # desk-scale conjecture: a phase with the N-th derivative bounded below
    # produces at most 2N band components
    rng = np.random.default_rng(12)
    for n in (2, 3, 4):
        f = monomial(n, (-1.0, 1.0))
        for _ in range(20):
            c = float(rng.uniform(-1.0, 1.0))
            eps = float(rng.uniform(1e-3, 0.5))
            res = sublevel_1d(f, c, eps)
            assert len(res.components) <= 2 * n


def test_sublevel_rejects_bad_eps():
    with pytest.raises(PreconditionError):
        sublevel_1d(monomial(2, (0.0, 1.0)), 0.0, -1.0)
