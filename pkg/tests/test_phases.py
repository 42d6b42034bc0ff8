import math

import numpy as np
import pytest

from oscint import (
    Interval,
    PartitionOverflowError,
    PhaseMeta,
    PlanarDomain,
    PreconditionError,
    compose_with_polynomial,
    compose_with_power,
    monomial,
    monotone_partition,
    phase_from_config,
    polynomial_phase,
    sign_partition,
    sine,
    unit_square,
    xy_quad_phase,
)


def test_sign_partition_x2_order1():
    f = monomial(2, (-1.0, 1.0))
    pieces = sign_partition(f, 1, 1e-9)
    assert len(pieces) == 2
    (iv1, s1), (iv2, s2) = pieces
    assert (s1, s2) == (-1, 1)
    assert abs(iv1.hi) < 1e-9 and abs(iv2.lo) < 1e-9


def test_sign_partition_x3_order3_single_piece():
    f = monomial(3, (0.0, 1.0))
    pieces = sign_partition(f, 3, 1e-9)
    assert len(pieces) == 1
    assert pieces[0][1] == 1


def test_sign_partition_sin_second_derivative():
    # -sin(x) on [0, 7] crosses zero at pi and 2*pi
    f = sine(1.0, 1.0, (0.0, 7.0))
    pieces = sign_partition(f, 2, 1e-9)
    assert len(pieces) == 3
    np.testing.assert_allclose(pieces[0][0].hi, math.pi, atol=1e-9)
    np.testing.assert_allclose(pieces[1][0].hi, 2.0 * math.pi, atol=1e-9)
    assert [s for _, s in pieces] == [-1, 1, -1]


def test_touching_zero_does_not_split():
    # derivative of x^3 touches zero at 0 without crossing
    f = monomial(3, (-1.0, 1.0))
    pieces = sign_partition(f, 1, 1e-9)
    assert len(pieces) == 1


def test_monotone_partition_examples():
    f = monomial(2, (-1.0, 1.0))
    parts = monotone_partition(f)
    assert len(parts) == 2
    assert abs(parts[0].hi) < 1e-9

    g = polynomial_phase((0.0, -3.0, 0.0, 1.0), (-2.0, 2.0))  # x^3 - 3x
    parts = monotone_partition(g)
    cuts = sorted(p.hi for p in parts[:-1])
    np.testing.assert_allclose(cuts, [-1.0, 0.0, 1.0], atol=1e-9)

    h = monomial(1, (0.0, 1.0))
    assert len(monotone_partition(h)) == 1


def test_partition_tiles_domain():
    f = polynomial_phase((0.3, -1.0, -2.0, 1.0, 1.0), (-2.0, 2.0))
    pieces = sign_partition(f, 1, 1e-10)
    assert pieces[0][0].lo == -2.0 and pieces[-1][0].hi == 2.0
    for (a, _), (b, _) in zip(pieces[:-1], pieces[1:]):
        assert abs(a.hi - b.lo) < 1e-12
    total = sum(iv.length for iv, _ in pieces)
    np.testing.assert_allclose(total, 4.0, atol=1e-12)


def test_refining_tol_never_merges():
    f = polynomial_phase((0.05, -1.0, 0.0, 1.0), (-2.0, 2.0))
    coarse = sign_partition(f, 1, 1e-6)
    fine = sign_partition(f, 1, 1e-12)
    assert len(fine) >= len(coarse)


def test_partition_overflow():
    f = sine(1.0, 60.0, (0.0, 7.0))
    with pytest.raises(PartitionOverflowError):
        sign_partition(f, 1, 1e-9, cap=8)


def test_declared_single_sign_order_one_piece():
    f = monomial(4, (-1.0, 1.0))
    assert f.meta.single_sign_orders == (4,)
    assert len(sign_partition(f, 4, 1e-9)) == 1


def test_meta_defaults_delta():
    meta = PhaseMeta(N=3, derivative_lower_bound=6.0)
    assert meta.claimed_delta == pytest.approx(1.0 / 3.0)
    with pytest.raises(PreconditionError):
        PhaseMeta(N=2, claimed_A=0.5)


def test_phase_from_config():
    f = phase_from_config({"family": "monomial", "n": 3, "domain": [0, 1]})
    assert f.meta.N == 3
    np.testing.assert_allclose(f.eval(0, 0.5), 0.125)
    with pytest.raises(PreconditionError):
        phase_from_config({"family": "nope"})


def test_compose_with_polynomial_derivatives():
    f = monomial(2, (0.0, 1.0))
    comp = compose_with_polynomial(f, (0.0, 0.0, 0.5))  # (x^2)^2 / 2
    xs = np.linspace(0.05, 0.95, 7)
    np.testing.assert_allclose(comp.eval(0, xs), xs**4 / 2.0, rtol=1e-12)
    np.testing.assert_allclose(comp.eval(1, xs), 2.0 * xs**3, rtol=1e-12)
    np.testing.assert_allclose(comp.eval(2, xs), 6.0 * xs**2, rtol=1e-12)


def test_compose_with_power_matches_monomial():
    f = monomial(2, (0.0, 1.0))
    comp = compose_with_power(f, 1.5)  # |x^2|^1.5 = x^3
    xs = np.linspace(0.1, 0.9, 5)
    np.testing.assert_allclose(comp.eval(0, xs), xs**3, rtol=1e-12)
    np.testing.assert_allclose(comp.eval(1, xs), 3.0 * xs**2, rtol=1e-12)


def test_planar_domain_slices():
    dom = PlanarDomain(((0.0, 1.0, 0.0, 1.0), (2.0, 3.0, 0.0, 0.5)), slice_bound=2)
    assert len(dom.x_slices(0.25)) == 2
    assert len(dom.x_slices(0.75)) == 1
    np.testing.assert_allclose(dom.area, 1.5)
    with pytest.raises(PreconditionError):
        PlanarDomain(((0.0, 1.0, 0.0, 1.0), (0.5, 2.0, 0.0, 1.0)), slice_bound=1)


def test_xy_quad_mixed_derivative():
    f2 = xy_quad_phase(0.1)
    xs = np.array([0.3])
    ys = np.array([0.7])
    np.testing.assert_allclose(f2.eval((1, 1), xs, ys), 1.0 + 0.4 * 0.3 * 0.7)
    np.testing.assert_allclose(f2.eval((0, 2), xs, ys), 0.2 * 0.09)
    assert unit_square().slice_bound == 1


def test_interval_validation():
    with pytest.raises(PreconditionError):
        Interval(1.0, 0.0)
