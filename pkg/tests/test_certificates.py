import numpy as np
import pytest

from oscint import (
    DecaySample,
    NotNormalizedError,
    Polynomial,
    PowerTransform,
    PreconditionError,
    certify_1d,
    certify_2d,
    compose_with_polynomial,
    compose_with_power,
    derivpush_bound,
    fit_decay,
    geometric_grid,
    ibp_bound,
    monomial,
    osc_integrate_1d,
    osc_integrate_2d,
    sublevel_1d,
    xy_phase,
    xy_quad_phase,
)
from oscint.phases import closure_phase, PhaseMeta

P_HALF_SQUARE = Polynomial((0.0, 0.0, 0.5))          # t^2/2, P' = t monic
P_THIRD_CUBE = Polynomial((0.0, 0.0, 0.0, 1.0 / 3.0))  # t^3/3, P' = t^2 monic
P_SND = Polynomial((0.0, 0.0, 0.5, 1.0 / 3.0))       # P' = t^2 + t, monic and SND
P_SND_ONLY = Polynomial((0.0, 0.0, 0.5, 1.0 / 6.0))  # P' = 0.5 t^2 + t, SND not monic


class TestFormulas:
    def test_derivpush_plugin(self):
        assert derivpush_bound(2.0, 0.5, 0.3) == pytest.approx(0.6)
        assert derivpush_bound(1.0, 0.5, 0.25) == pytest.approx(0.125)

    def test_derivpush_dominates_constructed_interval(self):
        # slow phase on [0, L]: f = r sin(x), |f'| <= r, sublevel constant
        # measured over a (c, alpha) grid
        r = 0.05
        f = closure_phase(
            [lambda x: r * np.sin(x), lambda x: r * np.cos(x),
             lambda x: -r * np.sin(x)],
            (0.0, 1.2), meta=PhaseMeta(N=1), name="slow")
        delta = 0.5
        B = 0.0
        for c in np.linspace(-r, r, 9):
            for alpha in np.geomspace(1e-4, 0.5, 12):
                res = sublevel_1d(f, float(c), float(alpha))
                B = max(B, res.measure / alpha**delta)
        bound = derivpush_bound(B, delta, r)
        assert f.domain.length <= bound

    def test_ibp_plugin(self):
        assert ibp_bound(1.0, 1.0, 2, 6.0) == pytest.approx(1.0)
        assert ibp_bound(1.0, 1.0, 2, 12.0) == pytest.approx(0.5)

    def test_ibp_dominates_numeric(self):
        # f = x on [1, 2], P = t^2/2: |f'| = 1 >= r, |P'(f)| = f >= 1
        f = monomial(1, (1.0, 2.0))
        comp = compose_with_polynomial(f, P_HALF_SQUARE.coeffs)
        for lam in (10.0, 100.0, 1000.0):
            quad = osc_integrate_1d(comp, lam)
            assert abs(quad.value) <= ibp_bound(1.0, 1.0, 2, lam)

    def test_formula_preconditions(self):
        with pytest.raises(PreconditionError):
            derivpush_bound(1.0, 1.5, 0.1)
        with pytest.raises(PreconditionError):
            ibp_bound(1.0, 1.0, 2, 0.0)


class TestCertify1D:
    def test_degree_one_rejected(self):
        f = monomial(2, (0.0, 1.0))
        with pytest.raises(PreconditionError):
            certify_1d(f, Polynomial((0.0, 1.0)), 100.0, "vdc")

    def test_not_normalized_rejected(self):
        f = monomial(2, (0.0, 1.0))
        # P' = 0.2 t^2 + 0.3: neither monic nor SND
        with pytest.raises(NotNormalizedError):
            certify_1d(f, Polynomial((0.0, 0.3, 0.0, 0.2 / 3.0)), 100.0, "vdc")

    def test_snd_needs_large_lambda(self):
        f = monomial(3, (0.0, 1.0))
        with pytest.raises(PreconditionError):
            certify_1d(f, P_SND, 0.5, "vdc")

    def test_vdc_square_sound_and_scaled(self):
        f = monomial(2, (0.0, 1.0))
        lam = 1e4
        cert = certify_1d(f, P_HALF_SQUARE, lam, "vdc")
        comp = compose_with_polynomial(f, P_HALF_SQUARE.coeffs)
        quad = osc_integrate_1d(comp, lam)
        assert cert.verify_against(quad)
        assert cert.total_bound <= 10.0 * lam**-0.25
        assert cert.params.epsilon == pytest.approx(lam**-0.5)
        assert cert.params.r == pytest.approx(lam**-0.25)

    def test_piece_accounting_tiles_domain(self):
        f = monomial(2, (0.0, 1.0))
        cert = certify_1d(f, P_SND, 1e4, "vdc")
        supports = sorted(p.support for p in cert.pieces)
        assert supports[0][0] == pytest.approx(0.0, abs=1e-9)
        assert supports[-1][1] == pytest.approx(1.0, abs=1e-9)
        for (a, b), (c, d) in zip(supports[:-1], supports[1:]):
            assert c <= b + 1e-9
        total_len = sum(b - a for a, b in supports)
        assert total_len == pytest.approx(1.0, abs=1e-8)

    def test_vdc_sweep_recovers_rate(self):
        f = monomial(3, (0.0, 1.0))
        lams = geometric_grid(1e4, 1e8, 6)
        totals = [DecaySample(float(l), certify_1d(f, P_SND, float(l), "vdc").total_bound)
                  for l in lams]
        fit = fit_decay(totals)
        assert abs(fit.delta_hat - 1.0 / 9.0) < 0.02

    def test_general_mode_needs_claims(self):
        f = monomial(2, (0.0, 1.0))
        with pytest.raises(PreconditionError):
            certify_1d(f, P_HALF_SQUARE, 100.0, "general")
        with pytest.raises(PreconditionError):
            certify_1d(f, P_HALF_SQUARE, 100.0, "general", delta=0.5, A=0.2)

    def test_general_mode_sound(self):
        f = monomial(2, (0.0, 1.0))
        lam = 2e3
        cert = certify_1d(f, P_THIRD_CUBE, lam, "general", delta=0.5, A=1.0)
        comp = compose_with_polynomial(f, P_THIRD_CUBE.coeffs)
        assert cert.verify_against(osc_integrate_1d(comp, lam))
        assert "C_delta" in cert.notes

    def test_vdc_N1_no_small_pieces(self):
        f = monomial(1, (0.0, 1.0))
        cert = certify_1d(f, P_HALF_SQUARE, 1e3, "vdc", N=1)
        assert not [p for p in cert.pieces if p.kind == "small_derivative"]
        assert cert.params.r == pytest.approx(1.0)

    def test_power_transform_sound(self):
        f = monomial(2, (0.0, 1.0))
        lam = 1e4
        cert = certify_1d(f, PowerTransform(1.5), lam, "vdc")
        comp = compose_with_power(f, 1.5)
        assert cert.verify_against(osc_integrate_1d(comp, lam))

    def test_power_exponent_validation(self):
        with pytest.raises(PreconditionError):
            PowerTransform(1.0)

    def test_serialization_lists_pieces(self):
        f = monomial(2, (0.0, 1.0))
        cert = certify_1d(f, P_HALF_SQUARE, 1e4, "vdc")
        doc = cert.to_dict()
        assert doc["total_bound"] == pytest.approx(cert.total_bound)
        kinds = {p["kind"] for p in doc["pieces"]}
        assert "integration_by_parts" in kinds
        for p in doc["pieces"]:
            assert {"kind", "support", "bound", "formula"} <= set(p)


class TestCertify2D:
    def test_base_case_sound(self):
        f2 = xy_phase()
        lam = 300.0
        cert = certify_2d(f2, Polynomial((0.0, 1.0)), lam)
        quad = osc_integrate_2d(f2, lam)
        assert cert.verify_against(quad)
        assert cert.params.gamma is not None

    def test_composed_sound(self):
        f2 = xy_quad_phase(0.1)
        lam = 200.0
        from oscint.phases import compose2d_with_polynomial

        comp = compose2d_with_polynomial(f2, P_HALF_SQUARE.coeffs)
        cert = certify_2d(f2, P_HALF_SQUARE, lam)
        quad = osc_integrate_2d(comp, lam)
        assert cert.verify_against(quad)
        kinds = {p.kind for p in cert.pieces}
        assert "slice_small_mixed" in kinds

    def test_snd_needs_lambda_at_least_one(self):
        f2 = xy_phase()
        with pytest.raises(PreconditionError):
            certify_2d(f2, P_SND_ONLY, 0.25)
        cert = certify_2d(f2, P_SND_ONLY, 50.0)
        assert cert.total_bound > 0

    def test_sweep_rate(self):
        f2 = xy_phase()
        lams = geometric_grid(1e4, 1e7, 6)
        totals = [DecaySample(float(l),
                              certify_2d(f2, P_HALF_SQUARE, float(l)).total_bound)
                  for l in lams]
        fit = fit_decay(totals)
        assert abs(fit.delta_hat - 0.25) < 0.02
