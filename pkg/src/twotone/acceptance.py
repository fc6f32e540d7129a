"""Acceptance criteria, each at its stated tolerance, shared by the test suite
and the `validate` CLI command. Every criterion returns a CriterionResult with
a pass flag and a measured-value detail string; nothing is tuned at run time.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import reassign, ridges, squeeze
from .gabor import TFGrid, stft_closed_form, stft_field, stft_numeric
from .model import (
    AHMComponent,
    AHMSignal,
    GaussianWindow,
    TwoHarmonicModel,
    ahm_stft_error_bound,
    ahm_stft_error_bound_dwindow,
    constructive_time,
    destructive_time,
    freeze_ahm,
)
from .oracle import plateau_aware_max_count
from .phasefield import locate_zeros, winding_number
from .squeeze import SqueezeConfig, squeeze_cross_section

SIGMA = math.sqrt(2.0)
WINDOW = GaussianWindow(sigma=SIGMA)

FAST_CRITERIA = (1, 2, 4, 5, 6, 9)


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _result(index, name, passed, detail, start) -> CriterionResult:
    return CriterionResult(index=index, name=name, passed=bool(passed),
                           detail=detail, seconds=time.perf_counter() - start)


def _count_curve_maxima(values: np.ndarray, floor_frac: float = 1e-3) -> int:
    """Maxima count with sub-floor samples flattened: tail samples whose
    magnitude is below floor_frac * max carry only quadrature noise and would
    otherwise register spurious strict maxima."""
    v = np.asarray(values, dtype=float)
    floor = floor_frac * float(v.max(initial=0.0))
    return plateau_aware_max_count(np.maximum(v, floor))


def _stft_flip_bisection(a: float, lo: float, hi: float, iters: int = 14) -> float:
    """Empirical 1 <-> 2 flip of the constructive-slice maxima count."""
    def count(delta):
        model = TwoHarmonicModel(xi0=1.0, delta=delta, a=a)
        return ridges.count_frequency_maxima(model, WINDOW, 0.0, n_samples=4096)

    c_lo, c_hi = count(lo), count(hi)
    if not (c_lo == 1 and c_hi == 2):
        raise AssertionError(f"flip bracket invalid: counts {c_lo}, {c_hi}")
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if count(mid) >= 2:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _sst_cross_section_count(delta: float, alpha: float, n_xi: int = 641) -> int:
    model = TwoHarmonicModel(xi0=1.0, delta=delta, a=1.0)
    config = SqueezeConfig(alpha=alpha, weighting="stft")
    xis = np.linspace(model.xi0 - 0.08, model.xi1 + 0.08, n_xi)
    vals = np.abs(squeeze_cross_section(model, WINDOW, config, 0.0, xis))
    return _count_curve_maxima(vals)


def criterion_1() -> CriterionResult:
    """STFT critical gap, balanced amplitudes."""
    start = time.perf_counter()
    delta_crit, s = ridges.critical_gap_stft(1.0, WINDOW)
    solver_ok = abs(delta_crit - 1.0 / math.pi) <= 1e-10 and s == 1.0
    counts = []
    for factor in (0.99, 1.01):
        model = TwoHarmonicModel(xi0=1.0, delta=factor / math.pi, a=1.0)
        counts.append(ridges.count_frequency_maxima(model, WINDOW, 0.0, n_samples=2048))
    passed = solver_ok and counts == [1, 2]
    detail = f"solver={delta_crit:.12f} (target {1/math.pi:.12f}), counts 0.99/1.01 = {counts}"
    return _result(1, "stft critical gap, a=1", passed, detail, start)


def criterion_2() -> CriterionResult:
    """STFT critical gap for unbalanced amplitudes brackets the empirical flip."""
    start = time.perf_counter()
    base, _ = ridges.critical_gap_stft(1.0, WINDOW)
    details = []
    passed = True
    for a in (0.5, 2.0):
        delta_crit, s = ridges.critical_gap_stft(a, WINDOW)
        flip = _stft_flip_bisection(a, 0.9 * delta_crit, 1.1 * delta_crit)
        rel = abs(delta_crit - flip) / delta_crit
        ok = rel <= 0.02 and delta_crit > base
        passed = passed and ok
        details.append(f"a={a}: crit={delta_crit:.6f} flip={flip:.6f} rel={rel:.4f}")
    return _result(2, "stft critical gap, a in {0.5, 2}", passed, "; ".join(details), start)


def criterion_3() -> CriterionResult:
    """Bubble geometry: detected bifurcations and residual scaling."""
    start = time.perf_counter()
    model = TwoHarmonicModel(xi0=1.0, delta=0.3, a=1.0)
    pad = 3.0 / (math.pi * SIGMA)
    grid = TFGrid(t_min=0.0, t_max=3.5, n_t=512,
                  eta_min=model.xi0 - pad, eta_max=model.xi1 + pad, n_eta=600)
    report = ridges.extract_ridges(stft_field(model, WINDOW, grid))
    t_l, t_r = ridges.bifurcation_times(model, WINDOW, 0)
    predicted = [t_l, t_r]
    tol = 2 * grid.t_step
    matched = []
    for p in predicted:
        hits = [b for b in report.bifurcation_times if abs(b - p) <= tol]
        matched.append(bool(hits))
    bif_ok = all(matched) and len(report.bifurcation_times) == len(predicted)

    res = {d: ridges.ellipse_residual(TwoHarmonicModel(xi0=1.0, delta=d, a=1.0), WINDOW, 0)
           for d in (0.2, 0.1, 0.05)}
    ratio = res[0.2] / res[0.1]
    ratio2 = res[0.1] / res[0.05]
    ratio_ok = 3.2 <= ratio <= 4.8
    passed = bif_ok and ratio_ok
    detail = (f"bif detected={tuple(round(b, 4) for b in report.bifurcation_times)} "
              f"predicted=({t_l:.4f}, {t_r:.4f}) tol={tol:.4f}; "
              f"residual ratios {ratio:.2f} (0.2/0.1), {ratio2:.2f} (0.1/0.05), window [3.2, 4.8]")
    return _result(3, "bubble geometry", passed, detail, start)


def criterion_4() -> CriterionResult:
    """Destructive-time zero location and flank bounds."""
    start = time.perf_counter()
    model = TwoHarmonicModel(xi0=1.0, delta=0.3, a=1.3)
    eta_avg, eta_minus, eta_plus = ridges.destructive_extrema(model, WINDOW, 0)
    formula = model.xibar - math.log(model.a) / (2 * WINDOW.C * model.delta)
    v_zero = abs(stft_closed_form(model, WINDOW, destructive_time(model, 0), eta_avg))
    wfac = math.exp(-WINDOW.C * model.delta ** 2)
    left_bound = model.delta * model.a * wfac / (1 + model.a * wfac)
    right_bound = model.delta * wfac / (model.a + wfac)
    checks = [
        v_zero < 1e-10,
        abs(eta_avg - formula) < 1e-12,
        eta_minus < model.xi0,
        eta_plus > model.xi1,
        model.xi0 - eta_minus <= left_bound,
        eta_plus - model.xi1 <= right_bound,
    ]
    detail = (f"|V(t0-, eta_avg)|={v_zero:.2e}; eta-={eta_minus:.6f} (dist "
              f"{model.xi0-eta_minus:.4f} <= {left_bound:.4f}); eta+={eta_plus:.6f} "
              f"(dist {eta_plus-model.xi1:.4f} <= {right_bound:.4f})")
    return _result(4, "destructive-time zero", all(checks), detail, start)


def criterion_5() -> CriterionResult:
    """Winding numbers of every zero plus a two-zero contour."""
    start = time.perf_counter()
    model = TwoHarmonicModel(xi0=1.0, delta=0.3, a=1.3)
    region = TFGrid(t_min=0.0, t_max=7.0, n_t=141, eta_min=0.5, eta_max=1.8, n_eta=101)
    zeros = locate_zeros(model, WINDOW, region)
    singles_ok = len(zeros) == 2 and all(abs(z.winding) == 1 for z in zeros)
    mid_t = 0.5 * (zeros[0].t0 + zeros[1].t0) if len(zeros) == 2 else 0.0
    mid_eta = zeros[0].eta0 if zeros else 0.0
    rho = 1.4
    pair = winding_number(model, WINDOW, (mid_t, mid_eta), rho, n_samples=512)
    passed = singles_ok and pair == 2
    detail = (f"zeros at {[(round(z.t0, 4), round(z.eta0, 5)) for z in zeros]} "
              f"windings {[z.winding for z in zeros]}; two-zero contour -> {pair}")
    return _result(5, "phase winding at zeros", passed, detail, start)


def criterion_6() -> CriterionResult:
    """Reassignment identities, arc membership, attraction bound."""
    start = time.perf_counter()
    model = TwoHarmonicModel(xi0=1.0, delta=0.3, a=1.0)
    ts = np.linspace(0.0, 2.0 / model.delta, 256)
    etas = np.linspace(model.xi0 - 1.0, model.xi1 + 1.0, 256)
    vals = reassign.eta_s_values(model, WINDOW, ts[:, None], etas[None, :])
    finite = np.isfinite(vals.real)
    # eta_p is Re(eta_s) by construction; recompute both routes and compare
    re_dev = 0.0
    for t in ts[::16]:
        for eta in etas[::16]:
            v = reassign.eta_s(model, WINDOW, float(t), float(eta))
            if reassign.is_sentinel(v):
                continue
            re_dev = max(re_dev, abs(reassign.eta_p(model, WINDOW, float(t), float(eta)) - v.real))
    imag_dev = 0.0
    for k in (0, 1, 3):
        for t in (constructive_time(model, k), destructive_time(model, k)):
            row = reassign.eta_s_values(model, WINDOW, t, etas)
            imag_dev = max(imag_dev, float(np.max(np.abs(row.imag[np.isfinite(row.real)]))))
    arc_dev = 0.0
    for theta in (0.5, 1.0, 2.0):
        center, radius = reassign.arc_circle(model, theta)
        for r in np.geomspace(0.1, 10.0, 13):
            z = reassign.mobius_apply(reassign.mobius_of(model),
                                      r * complex(math.cos(theta), math.sin(theta)))
            arc_dev = max(arc_dev, abs(abs(z - center) - radius))
    attraction_ok = True
    tested = 0
    for t in np.linspace(0.0, 1.0 / model.delta, 21):
        for eta in np.linspace(model.xi0 - 1.0, model.xibar, 21):
            w = model.a * math.exp(math.pi ** 2 * SIGMA ** 2 * model.delta * (eta - model.xibar))
            if w > 0.5:
                continue
            tested += 1
            chk = reassign.attraction_bound_check(model, WINDOW, float(t), float(eta))
            attraction_ok = attraction_ok and chk.holds
    passed = (bool(np.all(finite | np.isneginf(vals.real))) and re_dev <= 1e-12
              and imag_dev <= 1e-12 and arc_dev <= 1e-10 and attraction_ok and tested > 0)
    detail = (f"re_dev={re_dev:.2e}, imag_dev@t_k={imag_dev:.2e}, arc_dev={arc_dev:.2e}, "
              f"attraction holds at {tested} premise points: {attraction_ok}")
    return _result(6, "reassignment identities", passed, detail, start)


def criterion_7() -> CriterionResult:
    """Pushforward density match and support dichotomy."""
    start = time.perf_counter()
    model = TwoHarmonicModel(xi0=1.0, delta=0.3, a=1.0)
    alpha = 1e-5
    config = SqueezeConfig(alpha=alpha, weighting="indicator", R=50.0)
    xis = np.linspace(model.xi0 + model.delta / 4, model.xi1 - model.delta / 4, 21)
    quad = np.abs(squeeze_cross_section(model, WINDOW, config, 0.0, xis))
    theta = np.array([1.0 / (2 * WINDOW.C * abs((x - model.xi0) * (x - model.xi1)))
                      for x in xis])
    rel = float(np.max(np.abs(quad - theta) / theta))

    stft_cfg = SqueezeConfig(alpha=alpha, weighting="stft")
    band = np.linspace(model.xi0 - 0.4, model.xi1 + 0.4, 801)
    root = math.sqrt(alpha)
    inner = (band > model.xi0 - 3 * root) & (band < model.xi1 + 3 * root)
    core = (band > model.xi0 + 3 * root) & (band < model.xi1 - 3 * root)
    plus = np.abs(squeeze_cross_section(model, WINDOW, stft_cfg, constructive_time(model, 0), band))
    minus = np.abs(squeeze_cross_section(model, WINDOW, stft_cfg, destructive_time(model, 0), band))
    off_plus = float(plus[~inner].sum() / plus.sum())
    in_minus = float(minus[core].sum() / minus.sum())
    passed = rel <= 0.05 and off_plus < 1e-6 and in_minus < 1e-6
    detail = (f"max rel dev vs density = {rel:.4f} (<= 0.05); off-support mass "
              f"t0+ = {off_plus:.2e}, inner mass t0- = {in_minus:.2e} (< 1e-6)")
    return _result(7, "pushforward density + dichotomy", passed, detail, start)


def criterion_8() -> CriterionResult:
    """Squeeze weighting contrast and the critical-gap location."""
    start = time.perf_counter()
    alpha = 1e-4
    delta_ref, _, _ = squeeze.critical_gap_sst(1.0, WINDOW)
    counts = {}
    for delta in (0.15, 0.25):
        model = TwoHarmonicModel(xi0=1.0, delta=delta, a=1.0)
        ind_cfg = SqueezeConfig(alpha=alpha, weighting="indicator", R=50.0)
        xis = np.linspace(model.xi0 - 0.08, model.xi1 + 0.08, 641)
        ind_vals = np.abs(squeeze_cross_section(model, WINDOW, ind_cfg, 0.0, xis))
        counts[("ind", delta)] = _count_curve_maxima(ind_vals)
        counts[("stft", delta)] = _sst_cross_section_count(delta, alpha)
    lo, hi = 0.15, 0.25
    for _ in range(9):
        mid = 0.5 * (lo + hi)
        if _sst_cross_section_count(mid, alpha) >= 2:
            hi = mid
        else:
            lo = mid
    flip = 0.5 * (lo + hi)
    rel = abs(flip - delta_ref) / delta_ref
    structure_ok = (counts[("ind", 0.15)] == 2 and counts[("ind", 0.25)] == 2
                    and counts[("stft", 0.15)] == 1 and counts[("stft", 0.25)] == 2)
    passed = structure_ok and rel <= 0.03
    detail = (f"counts {dict((f'{k[0]}@{k[1]}', v) for k, v in counts.items())}; "
              f"empirical flip {flip:.5f} vs solver {delta_ref:.5f} (rel {rel:.4f}, tol 0.03)")
    return _result(8, "squeeze weighting contrast", passed, detail, start)


def criterion_9() -> CriterionResult:
    """Ratio of the balanced critical gaps."""
    start = time.perf_counter()
    d_sst, _, _ = squeeze.critical_gap_sst(1.0, WINDOW)
    d_stft, _ = ridges.critical_gap_stft(1.0, WINDOW)
    target = math.sqrt(math.log(3.0) / 3.0)
    dev = abs(d_sst / d_stft - target)
    detail = f"ratio {d_sst/d_stft:.12f} vs {target:.12f} (dev {dev:.2e})"
    return _result(9, "critical-gap ratio", dev <= 1e-9, detail, start)


def criterion_10() -> CriterionResult:
    """erf closed forms against quadrature."""
    start = time.perf_counter()
    model = TwoHarmonicModel(xi0=1.0, delta=0.3, a=1.0)
    alpha = 1e-4
    cap = model.delta / (4 * math.sqrt(alpha))
    tol = max(0.05, 10.0 / math.sqrt(alpha) * math.exp(-cap ** 2))
    config = SqueezeConfig(alpha=alpha, weighting="stft")
    t_plus = constructive_time(model, 0)
    t_minus = destructive_time(model, 0)
    xis = model.xibar + np.array([-0.04, -0.02, 0.0, 0.02, 0.04])
    rel_worst = 0.0
    for xi in xis:
        approx = squeeze.erf_closed_form(model, WINDOW, alpha, t_plus, float(xi))
        quad = abs(squeeze.squeeze_transform(model, WINDOW, config, t_plus, float(xi)))
        rel_worst = max(rel_worst, abs(approx - quad) / quad)
    zero_ok = True
    worst_zero = 0.0
    for xi in (model.xi0 - 0.2, model.xi1 + 0.2):
        zero_ok = zero_ok and squeeze.erf_closed_form(model, WINDOW, alpha, t_plus, xi) == 0.0
        worst_zero = max(worst_zero,
                         abs(squeeze.squeeze_transform(model, WINDOW, config, t_plus, xi)))
    for xi in np.linspace(model.xi0 + 0.08, model.xi1 - 0.08, 5):
        zero_ok = zero_ok and squeeze.erf_closed_form(model, WINDOW, alpha, t_minus, float(xi)) == 0.0
        worst_zero = max(worst_zero,
                         abs(squeeze.squeeze_transform(model, WINDOW, config, t_minus, float(xi))))
    passed = rel_worst <= tol and zero_ok and worst_zero < 1e-8
    detail = (f"interior max rel dev {rel_worst:.3f} (tol {tol:.3f}); zero-branch max |S| "
              f"{worst_zero:.2e} (< 1e-8)")
    return _result(10, "erf closed forms", passed, detail, start)


def criterion_11() -> CriterionResult:
    """Large-gap decay rate and extreme-amplitude linear convergence."""
    start = time.perf_counter()
    alpha = 1e-3
    window_c = WINDOW.C

    def sup_residual_pair(a: float, delta: float = 0.05):
        """Amplitude-limit probe at a small gap: the stated a values sit inside
        the linear regime there (the half-sided mass deficit near a component
        frequency decays like a^(1/2) e^{-ln^2(kappa/a)/(4 C delta^2)} and is
        o(a) only once |ln a| clears ~2 C delta^2)."""
        model = TwoHarmonicModel(xi0=1.0, delta=delta, a=a)
        cfg = SqueezeConfig(alpha=alpha, weighting="stft")
        worst0 = worst1 = 0.0
        for t in (0.2, destructive_time(model, 0)):
            xis = np.linspace(model.xi0 - 0.3, model.xi1 + 0.3, 121)
            vals = squeeze_cross_section(model, WINDOW, cfg, t, xis)
            s0 = np.array([squeeze.squeeze_single_component(model.xi0, 1.0, WINDOW, alpha, t, x)
                           for x in xis])
            s1 = np.array([squeeze.squeeze_single_component(model.xi1, model.a, WINDOW,
                                                            alpha, t, x) for x in xis])
            worst0 = max(worst0, float(np.max(np.abs(vals - s0))))
            worst1 = max(worst1, float(np.max(np.abs(vals - s1))))
        return worst0, worst1

    residuals = []
    for delta in (0.8, 1.0, 1.2):
        model = TwoHarmonicModel(xi0=1.0, delta=delta, a=1.0)
        cfg = SqueezeConfig(alpha=alpha, weighting="stft")
        worst = 0.0
        for t in (0.137, 0.411 / delta, destructive_time(model, 0)):
            xis = np.linspace(model.xi0 - 0.3, model.xi1 + 0.3, 61)
            vals = squeeze_cross_section(model, WINDOW, cfg, t, xis)
            s0 = np.array([squeeze.squeeze_single_component(model.xi0, 1.0, WINDOW, alpha, t, x)
                           for x in xis])
            s1 = np.array([squeeze.squeeze_single_component(model.xi1, 1.0, WINDOW, alpha, t, x)
                           for x in xis])
            worst = max(worst, float(np.max(np.abs(vals - s0 - s1))))
        residuals.append(worst)
    slope = float(np.polyfit([0.64, 1.0, 1.44], np.log(residuals), 1)[0])
    target = -window_c / 4.0
    slope_ok = abs(slope - target) <= 0.2 * abs(target)

    res_01 = sup_residual_pair(0.1)[0]
    res_005 = sup_residual_pair(0.05)[0]
    k_small = res_01 / 0.1
    small_ok = res_005 <= k_small * 0.05
    # large amplitudes: the dominant component scales with a, so the linear
    # 1/a convergence is amplitude-normalized (sup|S - S_f1|/a <= K'/a)
    rho_10 = sup_residual_pair(10.0)[1] / 10.0
    rho_20 = sup_residual_pair(20.0)[1] / 20.0
    k_large = rho_10 * 10.0
    large_ok = rho_20 <= k_large / 20.0
    passed = slope_ok and small_ok and large_ok
    detail = (f"decay slope {slope:.3f} vs {target:.3f} (20% tol); small-a: "
              f"{res_005:.3e} <= {k_small*0.05:.3e}; large-a scaled: "
              f"{rho_20:.3e} <= {k_large/20:.3e}")
    return _result(11, "limit regimes", passed, detail, start)


def _slow_chirp_signal() -> tuple[AHMSignal, float]:
    """Two components, one with an instantaneous frequency drifting 1.2 -> 1.3."""
    t_star = 10.0
    rate = 0.02
    amp = lambda t: np.ones_like(np.asarray(t, dtype=float))
    phase0 = lambda t: np.asarray(t, dtype=float) - t_star
    dphase0 = lambda t: np.ones_like(np.asarray(t, dtype=float))
    phase1 = lambda t: (1.25 * (np.asarray(t, dtype=float) - t_star)
                        + 0.05 / rate * np.log(np.cosh(rate * (np.asarray(t, dtype=float) - t_star))))
    dphase1 = lambda t: 1.25 + 0.05 * np.tanh(rate * (np.asarray(t, dtype=float) - t_star))
    eps = 0.05 * rate / 1.2
    signal = AHMSignal(
        components=(
            AHMComponent(amplitude=amp, phase=phase0, phase_derivative=dphase0,
                         phase_curvature_bound=0.0),
            AHMComponent(amplitude=amp, phase=phase1, phase_derivative=dphase1,
                         phase_curvature_bound=0.05 * rate),
        ),
        epsilon=eps,
    )
    return signal, t_star


def criterion_12() -> CriterionResult:
    """Slow-chirp signal: STFT proximity bound and reassignment proximity bound."""
    start = time.perf_counter()
    signal, t_star = _slow_chirp_signal()
    model, scale = freeze_ahm(signal, t_star)
    t_probe = t_star + np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
    eta_probe = np.array([0.8, 1.0, 1.125, 1.25, 1.45])
    worst_margin = -math.inf
    stft_ok = True
    for t in t_probe:
        bound = ahm_stft_error_bound(signal, WINDOW, float(t), t_star)
        for eta in eta_probe:
            v_f = stft_numeric(signal, WINDOW, float(t), float(eta))
            v_ref = scale * stft_closed_form(model, WINDOW, float(t) - t_star, float(eta))
            err = abs(v_f - v_ref)
            worst_margin = max(worst_margin, err - bound)
            stft_ok = stft_ok and err <= bound

    beta = 0.25
    eps = signal.epsilon
    c_h = max(ahm_stft_error_bound(signal, WINDOW, float(t), t_star) for t in t_probe) / eps
    c_dh = max(ahm_stft_error_bound_dwindow(signal, WINDOW, float(t), t_star)
               for t in t_probe) / eps
    bound_r = reassign.ahm_reassign_error_bound(signal, WINDOW, 0.0, t_star, beta, c_h, c_dh)
    floor = eps ** beta
    reassign_ok = True
    tested = 0
    worst_dev = 0.0
    for t in t_probe:
        for eta in (0.95, 1.0, 1.05, 1.2, 1.25, 1.3):
            if abs(stft_closed_form(model, WINDOW, float(t) - t_star, eta)) < floor:
                continue
            tested += 1
            num = reassign.eta_s_numeric(signal, WINDOW, float(t), float(eta))
            ref = reassign.eta_s(model, WINDOW, float(t) - t_star, float(eta))
            dev = abs(num - ref)
            worst_dev = max(worst_dev, dev)
            reassign_ok = reassign_ok and dev <= bound_r
    passed = stft_ok and reassign_ok and tested > 0
    detail = (f"stft bound margin max(err-bound) = {worst_margin:.3e}; reassignment dev "
              f"{worst_dev:.3e} <= {bound_r:.3e} at {tested} points")
    return _result(12, "slow-chirp proximity bounds", passed, detail, start)


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
    9: criterion_9, 10: criterion_10, 11: criterion_11, 12: criterion_12,
}


def run_criteria(level: str = "full") -> list[CriterionResult]:
    if level not in ("fast", "full"):
        raise ValueError("level must be 'fast' or 'full'")
    indices = FAST_CRITERIA if level == "fast" else tuple(sorted(CRITERIA))
    return [CRITERIA[i]() for i in indices]
