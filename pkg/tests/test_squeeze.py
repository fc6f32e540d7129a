import math

import numpy as np
import pytest

from twotone import (
    SqueezeConfig,
    TwoHarmonicModel,
    asym_indicator,
    asym_sst,
    critical_gap_sst,
    critical_gap_stft,
    destructive_time,
    erf_closed_form,
    g_alpha,
    preimage_intervals,
    pushforward_density,
    squeeze_cross_section,
    squeeze_transform,
    sst_extreme_amplitude,
)
from twotone.errors import (
    DegenerateAmplitudeError,
    ModelValidationError,
    OutOfBranchError,
    PreconditionError,
    SingularityError,
)
from twotone.reassign import eta_s_values
from twotone.squeeze import classify_time, squeeze_single_component

ALPHA = 1e-4


class TestConfig:
    def test_validation(self):
        with pytest.raises(ModelValidationError):
            SqueezeConfig(alpha=0.0)
        with pytest.raises(ModelValidationError):
            SqueezeConfig(alpha=1e-4, weighting="boxcar")
        with pytest.raises(ModelValidationError):
            SqueezeConfig(alpha=1e-4, weighting="indicator")  # missing radius
        with pytest.raises(ModelValidationError):
            SqueezeConfig(alpha=1e-4, reassignment_mode="other")

    def test_mollifier_unit_mass(self):
        for alpha in (1e-3, 1e-5):
            x = np.linspace(-30 * math.sqrt(alpha), 30 * math.sqrt(alpha), 40001)
            mass = np.trapezoid(g_alpha(x, alpha), x)
            assert mass == pytest.approx(1.0, abs=1e-10)


class TestTransform:
    def test_single_component_closed_form(self, window):
        model = TwoHarmonicModel(xi0=1.0, delta=0.3, a=0.0)
        config = SqueezeConfig(alpha=ALPHA, weighting="stft")
        for t, xi in ((0.0, 1.0), (0.6, 1.015), (2.0, 0.99)):
            val = squeeze_transform(model, window, config, t, xi)
            ref = squeeze_single_component(model.xi0, 1.0, window, ALPHA, t, xi)
            assert abs(val - ref) <= 1e-8 * abs(ref)

    def test_far_tail_negligible(self, window, model_balanced):
        config = SqueezeConfig(alpha=1e-3, weighting="stft")
        for xi in (model_balanced.xi0 - 1.5, model_balanced.xi1 + 1.5):
            assert abs(squeeze_transform(model_balanced, window, config, 0.3, xi)) < 1e-12

    def test_large_gap_split(self, window):
        # frozen constant: measured residual/e^{-C/4} ~ 6.1, kept with headroom
        model = TwoHarmonicModel(xi0=1.0, delta=1.0, a=1.0)
        config = SqueezeConfig(alpha=1e-3, weighting="stft")
        cap = 9.0 * math.exp(-window.C * model.delta ** 2 / 4.0)
        worst = 0.0
        for t in (0.137, 0.411, destructive_time(model, 0)):
            xis = np.linspace(model.xi0 - 0.3, model.xi1 + 0.3, 41)
            vals = squeeze_cross_section(model, window, config, t, xis)
            ref = np.array([
                squeeze_single_component(model.xi0, 1.0, window, 1e-3, t, x)
                + squeeze_single_component(model.xi1, 1.0, window, 1e-3, t, x)
                for x in xis
            ])
            worst = max(worst, float(np.max(np.abs(vals - ref))))
        assert worst <= cap

    def test_vector_scalar_consistency(self, window, model_balanced):
        config = SqueezeConfig(alpha=ALPHA, weighting="stft")
        xis = np.linspace(1.05, 1.25, 5)
        vec = squeeze_cross_section(model_balanced, window, config, 0.0, xis)
        for xi, v in zip(xis, vec):
            single = squeeze_transform(model_balanced, window, config, 0.0, float(xi))
            assert abs(single - v) <= 1e-7 * max(abs(v), 1e-12)

    def test_deterministic(self, window, model_a13):
        config = SqueezeConfig(alpha=ALPHA, weighting="stft")
        xis = np.linspace(0.95, 1.35, 21)
        first = squeeze_cross_section(model_a13, window, config, 0.4, xis)
        second = squeeze_cross_section(model_a13, window, config, 0.4, xis)
        assert np.array_equal(first, second)

    def test_phase_mode_runs(self, window, model_a13):
        config = SqueezeConfig(alpha=ALPHA, weighting="stft", reassignment_mode="phase")
        val = squeeze_transform(model_a13, window, config, 0.3, 1.1)
        assert np.isfinite(val)


class TestPushforward:
    def test_indicator_center_value(self, window, model_balanced):
        val = pushforward_density(model_balanced, window, "indicator", 0.0, model_balanced.xibar)
        expected = 1.0 / (2 * window.C * (model_balanced.delta / 2) ** 2)
        assert val == pytest.approx(expected + 0j, rel=1e-14)
        assert val.real == pytest.approx(1.1258, abs=2e-4)

    def test_off_support(self, window, model_balanced):
        assert pushforward_density(model_balanced, window, "indicator", 0.0,
                                   model_balanced.xi1 + 0.1) == 0.0
        t_minus = destructive_time(model_balanced, 0)
        assert pushforward_density(model_balanced, window, "indicator", t_minus,
                                   model_balanced.xibar) == 0.0

    def test_singularity_standoff(self, window, model_balanced):
        with pytest.raises(SingularityError):
            pushforward_density(model_balanced, window, "indicator", 0.0,
                                model_balanced.xi0 + 1e-5)

    def test_stft_weighted_center(self, window, model_balanced):
        val = pushforward_density(model_balanced, window, "stft", 0.0, model_balanced.xibar)
        theta1 = pushforward_density(model_balanced, window, "indicator", 0.0,
                                     model_balanced.xibar)
        a_plus = 2 * math.exp(-window.C * model_balanced.delta ** 2 / 4)
        assert abs(val) == pytest.approx(theta1.real * a_plus, rel=1e-12)

    def test_small_alpha_indicator_cross_check(self, window, model_balanced):
        alpha = 1e-6
        config = SqueezeConfig(alpha=alpha, weighting="indicator", R=50.0)
        for xi in (1.08, model_balanced.xibar, 1.26):
            quad = abs(squeeze_transform(model_balanced, window, config, 0.0, float(xi)))
            dens = abs(pushforward_density(model_balanced, window, "indicator", 0.0, float(xi)))
            assert quad == pytest.approx(dens, rel=5e-3)

    def test_requires_distinguished_time(self, window, model_balanced):
        with pytest.raises(PreconditionError):
            pushforward_density(model_balanced, window, "indicator", 0.123, 1.1)
        with pytest.raises(PreconditionError):
            classify_time(model_balanced, 0.123)


class TestAsymptotics:
    def test_indicator_match(self, window, model_balanced):
        alpha = 1e-5
        config = SqueezeConfig(alpha=alpha, weighting="indicator", R=50.0)
        for xi in np.linspace(model_balanced.xi0 + model_balanced.delta / 4,
                              model_balanced.xi1 - model_balanced.delta / 4, 7):
            approx = asym_indicator(model_balanced, window, alpha, 50.0, 0.0, float(xi))
            quad = abs(squeeze_transform(model_balanced, window, config, 0.0, float(xi)))
            assert abs(approx.value) == pytest.approx(quad, rel=0.05)
            assert not approx.off_support

    def test_off_support_decay(self, window, model_balanced):
        xi = model_balanced.xi0 - 0.2
        vals = []
        for alpha in (2e-4, 1e-4):
            config = SqueezeConfig(alpha=alpha, weighting="indicator", R=50.0)
            vals.append(abs(squeeze_transform(model_balanced, window, config, 0.0, xi)))
        assert vals[0] > 0.0
        assert vals[0] >= 10.0 * vals[1]
        tagged = asym_indicator(model_balanced, window, 1e-4, 50.0, 0.0, xi)
        assert tagged.off_support and tagged.value == 0.0

    def test_indicator_symmetry(self, window, model_balanced):
        for x in (0.02, 0.05, 0.1):
            left = asym_indicator(model_balanced, window, 1e-5, 50.0, 0.0,
                                  model_balanced.xibar - x)
            right = asym_indicator(model_balanced, window, 1e-5, 50.0, 0.0,
                                   model_balanced.xibar + x)
            assert abs(left.value) == pytest.approx(abs(right.value), rel=1e-12)

    def test_radius_preconditions(self, window, model_balanced):
        with pytest.raises(PreconditionError):
            asym_indicator(model_balanced, window, 1e-5, 0.5, 0.0, model_balanced.xibar)

    def test_sst_match(self, window, model_balanced):
        alpha = 1e-5
        config = SqueezeConfig(alpha=alpha, weighting="stft")
        for xi in np.linspace(model_balanced.xi0 + model_balanced.delta / 4,
                              model_balanced.xi1 - model_balanced.delta / 4, 7):
            approx = asym_sst(model_balanced, window, alpha, 0.0, float(xi))
            quad = squeeze_transform(model_balanced, window, config, 0.0, float(xi))
            assert abs(approx.value - quad) <= 0.05 * abs(quad)

    def test_weighting_contrast_at_small_gap(self, window):
        model = TwoHarmonicModel(xi0=1.0, delta=0.15, a=1.0)
        xs = np.linspace(model.xi0 + 0.005, model.xi1 - 0.005, 301)
        sst_curve = np.array([abs(asym_sst(model, window, 1e-5, 0.0, float(x)).value)
                              for x in xs])
        interior_max = np.sum((sst_curve[1:-1] > sst_curve[:-2])
                              & (sst_curve[1:-1] > sst_curve[2:]))
        assert interior_max == 1
        ind_curve = np.array([abs(asym_indicator(model, window, 1e-5, 50.0, 0.0, float(x)).value)
                              for x in xs])
        center = ind_curve[len(xs) // 2]
        assert ind_curve[0] > 5 * center and ind_curve[-1] > 5 * center
        assert np.argmin(ind_curve) == len(xs) // 2


class TestPreimage:
    def test_far_left_empty(self, window, model_balanced):
        pre = preimage_intervals(model_balanced, window, ALPHA, 7.5, 0.0,
                                 model_balanced.xi0 - 0.2)
        assert pre.label == "I1" and pre.intervals == ()

    def test_center_symmetric(self, window, model_balanced):
        pre = preimage_intervals(model_balanced, window, ALPHA, 7.5, 0.0,
                                 model_balanced.xibar)
        assert pre.label == "I4"
        assert pre.c_left == pytest.approx(-pre.c_right, abs=1e-12)
        assert pre.c_right > 0
        lo, hi = pre.intervals[0]
        scan = np.linspace(lo - 0.3, hi + 0.3, 10001)
        hit = np.abs(eta_s_values(model_balanced, window, 0.0, scan)
                     - model_balanced.xibar) < 7.5 * math.sqrt(ALPHA)
        inside = (scan >= lo) & (scan <= hi)
        boundary = (np.abs(scan - lo) < 1e-9) | (np.abs(scan - hi) < 1e-9)
        assert np.array_equal(hit[~boundary], inside[~boundary])

    def test_intermediate_center_empty(self, window, model_balanced):
        t_i = 0.25 / model_balanced.delta
        pre = preimage_intervals(model_balanced, window, ALPHA, 7.5, t_i,
                                 model_balanced.xibar)
        assert pre.intervals == ()

    def test_preconditions(self, window, model_balanced):
        with pytest.raises(PreconditionError):
            preimage_intervals(model_balanced, window, ALPHA, 8.0, 0.0, 1.1)
        with pytest.raises(DegenerateAmplitudeError):
            preimage_intervals(TwoHarmonicModel(1.0, 0.3, 0.0), window, ALPHA, 1.0, 0.0, 1.1)

    @pytest.mark.parametrize("t_kind", ["constructive", "destructive", "intermediate"])
    def test_scan_agreement_all_segments(self, window, model_a13, t_kind):
        c_small = model_a13.delta / (8 * math.sqrt(ALPHA))
        cs = c_small * math.sqrt(ALPHA)
        t = {"constructive": 0.0,
             "destructive": destructive_time(model_a13, 0),
             "intermediate": 0.25 / model_a13.delta}[t_kind]
        probes = {
            "I1": model_a13.xi0 - 3 * cs,
            "I2": model_a13.xi0,
            "I3": 0.5 * (model_a13.xi0 + model_a13.xibar),
            "I4": model_a13.xibar,
            "I5": 0.5 * (model_a13.xibar + model_a13.xi1),
            "I6": model_a13.xi1,
            "I7": model_a13.xi1 + 3 * cs,
        }
        eta_avg = model_a13.xibar - math.log(model_a13.a) / (2 * window.C * model_a13.delta)
        scan = np.linspace(eta_avg - 2.5, eta_avg + 2.5, 10001)
        for label, xi in probes.items():
            pre = preimage_intervals(model_a13, window, ALPHA, c_small, t, xi)
            assert pre.label == label
            hat = eta_s_values(model_a13, window, t, scan)
            dist = np.abs(hat - xi)
            dist[np.isneginf(hat.real)] = np.inf
            hit = dist < cs
            inside = np.zeros_like(hit)
            near_boundary = np.zeros_like(hit)
            for lo, hi in pre.intervals:
                inside |= (scan >= lo) & (scan <= hi)
                near_boundary |= np.abs(scan - lo) < 1e-7
                near_boundary |= np.abs(scan - hi) < 1e-7
            ok = hit[~near_boundary] == inside[~near_boundary]
            assert np.all(ok), f"{t_kind} {label}: {np.count_nonzero(~ok)} mismatches"


class TestErfClosedForm:
    def test_balanced_symmetry(self, window, model_balanced):
        for x in (0.01, 0.03, 0.06):
            left = erf_closed_form(model_balanced, window, ALPHA, 0.0,
                                   model_balanced.xibar - x)
            right = erf_closed_form(model_balanced, window, ALPHA, 0.0,
                                    model_balanced.xibar + x)
            assert left == pytest.approx(right, rel=1e-12)

    def test_zero_branches(self, window, model_balanced):
        t_minus = destructive_time(model_balanced, 0)
        assert erf_closed_form(model_balanced, window, ALPHA, t_minus,
                               model_balanced.xibar) == 0.0
        assert erf_closed_form(model_balanced, window, ALPHA, 0.0,
                               model_balanced.xi0 - 0.2) == 0.0
        config = SqueezeConfig(alpha=ALPHA, weighting="stft")
        assert abs(squeeze_transform(model_balanced, window, config, t_minus,
                                     model_balanced.xibar)) < 1e-8

    def test_out_of_branch_at_segment_edge(self, window, model_balanced):
        cs = model_balanced.delta / 4.0
        with pytest.raises(OutOfBranchError):
            erf_closed_form(model_balanced, window, ALPHA, 0.0, model_balanced.xi0 - cs)

    def test_one_sided_branches_with_smaller_c(self, window, model_a13):
        c_small = model_a13.delta / (8 * math.sqrt(ALPHA))
        for xi in (model_a13.xi0, model_a13.xi1):
            val = erf_closed_form(model_a13, window, ALPHA, 0.0, xi, C=c_small)
            assert np.isfinite(val) and val >= 0.0

    def test_intermediate_time_rejected(self, window, model_balanced):
        with pytest.raises(PreconditionError):
            erf_closed_form(model_balanced, window, ALPHA,
                            0.25 / model_balanced.delta, model_balanced.xibar)


class TestCriticalGap:
    def test_balanced_closed_form(self, window):
        delta_c, r, xi_c = critical_gap_sst(1.0, window)
        assert delta_c == math.sqrt(2 * math.log(3.0) / 3.0) / (math.pi * window.sigma)
        assert r == pytest.approx(1.0 / 3.0, abs=1e-15)
        assert xi_c == pytest.approx(delta_c / 2, rel=1e-14)
        assert delta_c == pytest.approx(0.192627, abs=1e-5)

    def test_ratio_to_stft(self, window):
        d_sst, _, _ = critical_gap_sst(1.0, window)
        d_stft, _ = critical_gap_stft(1.0, window)
        assert abs(d_sst / d_stft - math.sqrt(math.log(3.0) / 3.0)) <= 1e-9

    def test_inversion_duality(self, window):
        d1, _, y1 = critical_gap_sst(1.3, window)
        d2, _, y2 = critical_gap_sst(1.0 / 1.3, window)
        assert d2 == pytest.approx(d1, rel=1e-9)
        assert y2 == pytest.approx(d1 - y1, rel=1e-6)

    def test_unbalanced_matches_curve_flip(self, window):
        # independent check: maxima count of the closed-form cross section
        # flips at the solver value
        a = 1.3
        delta_c, _, _ = critical_gap_sst(a, window)

        def count(delta):
            model = TwoHarmonicModel(xi0=1.0, delta=delta, a=a)
            ys = np.linspace(0.2501 * delta, 0.7499 * delta, 4001)
            vals = np.array([erf_closed_form(model, window, ALPHA, 0.0, model.xi0 + float(y))
                             for y in ys])
            return int(np.sum((vals[1:-1] > vals[:-2]) & (vals[1:-1] > vals[2:])))

        assert count(delta_c * 0.99) == 1
        assert count(delta_c * 1.01) == 2


class TestExtremeAmplitude:
    def test_zero_amplitude_exact(self, window):
        model = TwoHarmonicModel(xi0=1.0, delta=0.3, a=0.0)
        config = SqueezeConfig(alpha=ALPHA, weighting="stft")
        for xi in (0.98, 1.01):
            approx = sst_extreme_amplitude(model, window, ALPHA, 0.5, xi, "small_a")
            quad = squeeze_transform(model, window, config, 0.5, xi)
            assert abs(approx - quad) <= 1e-7 * abs(quad)

    def test_regime_warnings(self, window, model_a13):
        with pytest.warns(UserWarning):
            sst_extreme_amplitude(model_a13, window, ALPHA, 0.0, 1.0, "small_a")
        with pytest.warns(UserWarning):
            sst_extreme_amplitude(model_a13, window, ALPHA, 0.0, 1.0, "large_a")

    def test_dominant_component_formula(self, window):
        model = TwoHarmonicModel(xi0=1.0, delta=0.3, a=20.0)
        val = sst_extreme_amplitude(model, window, ALPHA, 0.2, 1.31, "large_a")
        ref = squeeze_single_component(model.xi1, model.a, window, ALPHA, 0.2, 1.31)
        assert val == ref


class TestLaplaceConsistency:
    def test_error_shrinks_linearly_in_alpha(self, window, model_balanced):
        xi = model_balanced.xibar + 0.03
        errs = {}
        for alpha in (1e-4, 2.5e-5):
            config = SqueezeConfig(alpha=alpha, weighting="stft")
            quad = squeeze_transform(model_balanced, window, config, 0.0, xi)
            lead = asym_sst(model_balanced, window, alpha, 0.0, xi).value
            errs[alpha] = abs(quad - lead)
        assert errs[2.5e-5] <= 0.3 * errs[1e-4]

    def test_indicator_error_shrinks_linearly_in_alpha(self, window, model_balanced):
        xi = model_balanced.xibar - 0.05
        errs = {}
        for alpha in (1e-4, 2.5e-5):
            config = SqueezeConfig(alpha=alpha, weighting="indicator", R=50.0)
            quad = abs(squeeze_transform(model_balanced, window, config, 0.0, xi))
            lead = abs(asym_indicator(model_balanced, window, alpha, 50.0, 0.0, xi).value)
            errs[alpha] = abs(quad - lead)
        assert errs[2.5e-5] <= 0.3 * errs[1e-4]


class TestOtherWindows:
    """Guard against silent sigma = sqrt(2) assumptions."""

    @pytest.mark.parametrize("sigma", [1.0, 2.2])
    def test_core_pipeline_generalizes(self, sigma):
        from twotone import GaussianWindow, count_frequency_maxima

        window = GaussianWindow(sigma=sigma)
        delta_crit, _ = critical_gap_stft(1.0, window)
        assert delta_crit == pytest.approx(math.sqrt(2.0) / (math.pi * sigma), rel=1e-12)
        for factor, expected in ((0.97, 1), (1.03, 2)):
            model = TwoHarmonicModel(xi0=1.0, delta=factor * delta_crit, a=1.0)
            assert count_frequency_maxima(model, window, 0.0, n_samples=2048) == expected

        model = TwoHarmonicModel(xi0=1.0, delta=0.8 * delta_crit, a=1.0)
        config = SqueezeConfig(alpha=1e-5, weighting="stft")
        xi = model.xibar + 0.1 * model.delta
        quad = squeeze_transform(model, window, config, 0.0, xi)
        lead = asym_sst(model, window, 1e-5, 0.0, xi).value
        assert abs(quad - lead) <= 0.05 * abs(quad)

        t_minus = destructive_time(model, 0)
        assert erf_closed_form(model, window, 1e-5, t_minus, model.xibar) == 0.0
        assert abs(squeeze_transform(model, window, config, t_minus, model.xibar)) < 1e-8
