"""Generalized synchrosqueezing: the squeezed transform with STFT or indicator
weighting, pushforward densities along the reassignment image, small-kernel
asymptotics, preimage case analysis at distinguished times, erf closed forms,
the SST critical-gap solver, and extreme-amplitude limits.

The transform is S_G(t, xi) = integral G(t, eta) g_alpha(eta_s(t, eta) - xi) d eta
with Gaussian mollifier g_alpha(z) = e^{-|z|^2/alpha}/sqrt(pi alpha) (unit mass
on the real line).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateAmplitudeError,
    ModelValidationError,
    OutOfBranchError,
    PreconditionError,
    SingularityError,
    SolverFailureError,
)
from .gabor import ComplexField, QuadratureSpec, TFGrid, stft_closed_form
from .model import GaussianWindow, TwoHarmonicModel
from .reassign import eta_s_values

WEIGHTINGS = ("stft", "indicator")
REASSIGN_MODES = ("sync", "phase")
_LOG_CUTOFF = 60.0  # e^{-60} ~ 9e-27: negligible next to every stated tolerance


@dataclass(frozen=True)
class SqueezeConfig:
    """Mollifier scale, weighting choice, quadrature controls, and which
    reassignment rule feeds the mollifier."""

    alpha: float
    weighting: str = "stft"
    R: float | None = None
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    reassignment_mode: str = "sync"

    def __post_init__(self):
        if not self.alpha > 0:
            raise ModelValidationError("alpha must be positive")
        if self.weighting not in WEIGHTINGS:
            raise ModelValidationError(f"weighting must be one of {WEIGHTINGS}")
        if self.reassignment_mode not in REASSIGN_MODES:
            raise ModelValidationError(f"reassignment_mode must be one of {REASSIGN_MODES}")
        if self.weighting == "indicator":
            if self.R is None or not self.R > 0:
                raise ModelValidationError("indicator weighting requires a finite R > 0")


def g_alpha(z, alpha: float):
    """Gaussian mollifier on the complex plane, unit L1 mass on the real line."""
    z = np.asarray(z)
    return np.exp(-np.abs(z) ** 2 / alpha) / math.sqrt(math.pi * alpha)


def indicator_radius_floor(model: TwoHarmonicModel, window: GaussianWindow) -> float:
    return max(abs(model.xi0), abs(model.xi1)) + 3.0 / (math.pi * window.sigma)


def default_indicator_radius(model: TwoHarmonicModel, window: GaussianWindow,
                             alpha: float, xi_set) -> float:
    """R(alpha) = min(1/alpha, e^{c/(2 alpha)}) with c the squared distance of
    the requested xi set to {xi0, xi1}; diverges as alpha -> 0 while staying
    exponentially subcritical."""
    xis = np.atleast_1d(np.asarray(xi_set, dtype=float))
    c = float(np.min(np.minimum((xis - model.xi0) ** 2, (xis - model.xi1) ** 2)))
    if c <= 0:
        raise PreconditionError("xi set touches a component frequency")
    log_r = min(math.log(1.0 / alpha), c / (2.0 * alpha))
    radius = math.exp(log_r)
    floor = indicator_radius_floor(model, window)
    if radius <= floor:
        raise PreconditionError(
            f"default radius {radius:.3g} does not clear the band floor {floor:.3g}"
        )
    return radius


def _integration_window(model: TwoHarmonicModel, window: GaussianWindow,
                        config: SqueezeConfig) -> tuple[float, float]:
    if config.weighting == "indicator":
        floor = indicator_radius_floor(model, window)
        if not config.R > floor:
            raise PreconditionError(
                f"indicator radius R = {config.R} must exceed {floor:.6f}"
            )
        return -config.R, config.R
    pad = 10.0 / (math.pi * window.sigma)
    return model.xi0 - pad, model.xi1 + pad


def _eta_hat(model, window, config, t, eta):
    vals = eta_s_values(model, window, t, eta)
    sentinel = np.isneginf(vals.real)
    if config.reassignment_mode == "phase":
        vals = vals.real.astype(complex)
    vals = np.where(sentinel, 0.0, vals)
    return vals, sentinel


def _weight_values(model, window, config, t, eta):
    if config.weighting == "indicator":
        return np.ones(np.shape(eta), dtype=complex)
    return np.asarray(stft_closed_form(model, window, t, np.asarray(eta, float)), dtype=complex)


def _dist2_to_hull(etahat: np.ndarray, sentinel: np.ndarray,
                   xi_lo: float, xi_hi: float) -> np.ndarray:
    """Squared distance from reassignment values to the [xi_lo, xi_hi] hull.
    Conservative activity test: scattered xi sets only mark more cells."""
    re = etahat.real
    dx = np.maximum(np.maximum(xi_lo - re, re - xi_hi), 0.0)
    d2 = dx ** 2 + etahat.imag ** 2
    d2[sentinel] = np.inf
    return d2


def _simpson_weights(n_nodes: int, step: float) -> np.ndarray:
    w = np.full(n_nodes, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * step / 3.0


def _sync_active_hull(model, window, config, xis, lo, hi) -> tuple[float, float] | None:
    """Analytic superset of the active eta range for the sync rule.

    |M(q) - xi| <= r brackets |q| through triangle bounds (independently of
    the phase of q, hence of t); the exponential profile of |q| then converts
    the bracket to an eta interval. Guards against active features narrower
    than the base sampling step.
    """
    if model.a == 0.0:
        return None
    r = math.sqrt(_LOG_CUTOFF * config.alpha)
    xi_lo, xi_hi = float(np.min(xis)), float(np.max(xis))
    d0_max = max(abs(xi_lo - model.xi0), abs(xi_hi - model.xi0))
    d0_min = max(xi_lo - model.xi0, model.xi0 - xi_hi, 0.0)
    d1_max = max(abs(xi_lo - model.xi1), abs(xi_hi - model.xi1))
    d1_min = max(xi_lo - model.xi1, model.xi1 - xi_hi, 0.0)
    scale = 2.0 * window.C * model.delta
    log_a = math.log(model.a)
    if d1_min > r:
        q_hi = (d0_max + r) / (d1_min - r)
        eta_hi = min(hi, model.xibar + (math.log(q_hi) - log_a) / scale)
    else:
        eta_hi = hi
    q_lo = (d0_min - r) / (d1_max + r)
    if q_lo > 0:
        eta_lo = max(lo, model.xibar + (math.log(q_lo) - log_a) / scale)
    else:
        eta_lo = lo
    if eta_lo >= eta_hi:
        return None
    return eta_lo, eta_hi


def squeeze_cross_section(model: TwoHarmonicModel, window: GaussianWindow,
                          config: SqueezeConfig, t: float, xis) -> np.ndarray:
    """S_G(t, xi) for an array of xi at fixed t.

    Composite Simpson on the truncation window with deterministic refinement of
    the active region (where the mollifier is above e^-60): resolution doubles
    until the whole vector changes by <= quadrature.rtol relative (floored by a
    tiny absolute term), or max_doublings is hit. Sentinel reassignment values
    contribute zero mass.
    """
    xis = np.atleast_1d(np.asarray(xis, dtype=float))
    lo, hi = _integration_window(model, window, config)
    spec = config.quadrature
    n0 = spec.n_nodes + (spec.n_nodes % 2)
    alpha = config.alpha
    xi_lo, xi_hi = float(xis.min()), float(xis.max())

    base_eta = np.linspace(lo, hi, n0 + 1)
    base_hat, base_sent = _eta_hat(model, window, config, t, base_eta)
    base_g = _weight_values(model, window, config, t, base_eta)
    d2 = _dist2_to_hull(base_hat, base_sent, xi_lo, xi_hi)
    active_pt = d2 <= _LOG_CUTOFF * alpha

    def integrate(eta, hat, sent, gvals):
        w = _simpson_weights(len(eta), eta[1] - eta[0])
        out = np.empty(len(xis), dtype=complex)
        for i, xi in enumerate(xis):
            moll = np.exp(-np.abs(hat - xi) ** 2 / alpha)
            moll[sent] = 0.0
            out[i] = np.dot(w, gvals * moll)
        return out / math.sqrt(math.pi * alpha)

    total_base = integrate(base_eta, base_hat, base_sent, base_g)

    # active interval: union of the sampled hits and (sync mode) the analytic hull
    idx = np.nonzero(active_pt)[0]
    bounds = None
    if idx.size:
        i0 = max(int(idx[0]) - 2, 0)
        i1 = min(int(idx[-1]) + 2, n0)
        bounds = (float(base_eta[i0]), float(base_eta[i1]))
    if config.reassignment_mode == "sync":
        hull = _sync_active_hull(model, window, config, xis, lo, hi)
        if hull is not None:
            pad = (hi - lo) / n0 * 2
            hull = (max(lo, hull[0] - pad), min(hi, hull[1] + pad))
            bounds = hull if bounds is None else (
                min(bounds[0], hull[0]), max(bounds[1], hull[1])
            )
    if bounds is None:
        bounds = (lo, hi)

    # snap the refinement window to whole base cell pairs so pieces tile exactly
    i0 = int(np.searchsorted(base_eta, bounds[0], side="right")) - 1
    i1 = int(np.searchsorted(base_eta, bounds[1], side="left"))
    i0 = max(0, i0 - i0 % 2)
    i1 = min(n0, i1 + (i1 - i0) % 2)
    if i1 - i0 < 2:
        i1 = min(n0, i0 + 2)
        i0 = i1 - 2
    a_lo, a_hi = float(base_eta[i0]), float(base_eta[i1])
    base_win = integrate(base_eta[i0:i1 + 1], base_hat[i0:i1 + 1],
                         base_sent[i0:i1 + 1], base_g[i0:i1 + 1])

    def window_integral(n):
        eta = np.linspace(a_lo, a_hi, n + 1)
        hat, sent = _eta_hat(model, window, config, t, eta)
        gvals = _weight_values(model, window, config, t, eta)
        return integrate(eta, hat, sent, gvals)

    scale_floor = 1e-13 / math.sqrt(alpha)
    n_win = max(n0, i1 - i0)
    total = total_base - base_win + window_integral(n_win)
    for _ in range(spec.max_doublings):
        n_win *= 2
        new_total = total_base - base_win + window_integral(n_win)
        change = float(np.max(np.abs(new_total - total)))
        scale = max(float(np.max(np.abs(new_total))), scale_floor)
        total = new_total
        if change <= spec.rtol * scale:
            break
    return total


def squeeze_transform(model: TwoHarmonicModel, window: GaussianWindow,
                      config: SqueezeConfig, t: float, xi: float) -> complex:
    """Scalar squeezed-transform value; see squeeze_cross_section."""
    return complex(squeeze_cross_section(model, window, config, t, np.array([xi]))[0])


def squeeze_field(model: TwoHarmonicModel, window: GaussianWindow,
                  config: SqueezeConfig, grid: TFGrid) -> ComplexField:
    rows = [squeeze_cross_section(model, window, config, t, grid.eta_values())
            for t in grid.t_values()]
    return ComplexField(grid=grid, values=np.vstack(rows), tag="SQUEEZE")


# ---------------------------------------------------------------------------
# distinguished times and densities


def classify_time(model: TwoHarmonicModel, t: float, tol: float = 1e-9) -> str:
    """'constructive', 'destructive', or 'intermediate' (quarter-period) time."""
    frac = (t * model.delta) % 1.0
    for target, kind in ((0.0, "constructive"), (1.0, "constructive"),
                         (0.5, "destructive"), (0.25, "intermediate")):
        if abs(frac - target) <= tol:
            return kind
    raise PreconditionError(
        f"t = {t} is none of the distinguished times (phase fraction {frac:.3e})"
    )


def _check_standoff(model: TwoHarmonicModel, xi: float) -> None:
    standoff = 1e-3 * model.delta
    if abs(xi - model.xi0) < standoff or abs(xi - model.xi1) < standoff:
        raise SingularityError(
            f"xi = {xi} is within {standoff:.3e} of a component frequency"
        )


def _on_support(model: TwoHarmonicModel, kind: str, xi: float) -> bool:
    inside = model.xi0 < xi < model.xi1
    return inside if kind == "constructive" else not inside


def _theta_indicator(model: TwoHarmonicModel, window: GaussianWindow, xi: float) -> float:
    return 1.0 / (2.0 * window.C * abs((xi - model.xi0) * (xi - model.xi1)))


def _theta_stft(model: TwoHarmonicModel, window: GaussianWindow,
                kind: str, t: float, xi: float) -> complex:
    """V(t, eta_*) / |d eta_s/d eta| at the unique preimage of xi."""
    C = window.C
    d = model.delta
    if kind == "constructive":
        u = (xi - model.xi0) / (model.xi1 - xi)
        tail = 1.0 + u
    else:
        u = (xi - model.xi0) / (xi - model.xi1)
        tail = 1.0 - u
    if u <= 0:
        raise SolverFailureError(f"no real preimage at xi = {xi} for {kind} time")
    if model.a <= 0:
        raise DegenerateAmplitudeError("STFT-weighted density requires a > 0")
    log_u_a = math.log(u / model.a)
    amp = (
        math.exp(-C * d * d / 4.0)
        * math.sqrt(model.a / u)
        * math.exp(-log_u_a ** 2 / (4.0 * C * d * d))
        * tail
    )
    phase = complex(math.cos(2 * math.pi * model.xi0 * t), math.sin(2 * math.pi * model.xi0 * t))
    grad = 2.0 * C * abs((xi - model.xi0) * (xi - model.xi1))
    return phase * amp / grad


def pushforward_density(model: TwoHarmonicModel, window: GaussianWindow,
                        weighting: str, t: float, xi: float) -> complex:
    """Density of the reassignment-mapped weight measure at a distinguished time.

    Indicator weighting: 1/(2 pi^2 sigma^2 |xi - xi0| |xi - xi1|) on the
    support ((xi0, xi1) at constructive times, its complement at destructive
    times), 0 off support. STFT weighting: V at the preimage over the map
    gradient. Diverges at xi0/xi1; evaluation inside the 1e-3*delta standoff
    raises.
    """
    if weighting not in WEIGHTINGS:
        raise ModelValidationError(f"weighting must be one of {WEIGHTINGS}")
    kind = classify_time(model, t)
    if kind == "intermediate":
        raise PreconditionError("density closed forms exist at t_k^+ / t_k^- only")
    _check_standoff(model, xi)
    if not _on_support(model, kind, xi):
        return 0.0 + 0.0j
    if weighting == "indicator":
        return complex(_theta_indicator(model, window, xi))
    return _theta_stft(model, window, kind, t, xi)


@dataclass(frozen=True)
class AsymptoticValue:
    """Leading-order value with classification tags; off_support values carry
    an exponentially small remainder rather than a polynomial one."""

    value: complex
    off_support: bool = False
    near_singularity: bool = False


def _near_singularity(model: TwoHarmonicModel, xi: float) -> bool:
    standoff = 1e-3 * model.delta
    return abs(xi - model.xi0) < standoff or abs(xi - model.xi1) < standoff


def asym_indicator(model: TwoHarmonicModel, window: GaussianWindow, alpha: float,
                   R: float, t: float, xi: float) -> AsymptoticValue:
    """Small-alpha limit of the indicator-weighted squeeze at t_k^+/-.

    R must stay exponentially subcritical: R <= 1/alpha or
    ln R <= min((xi-xi0)^2, (xi-xi1)^2)/(2 alpha).
    """
    kind = classify_time(model, t)
    if kind == "intermediate":
        raise PreconditionError("asymptotics stated at t_k^+ / t_k^- only")
    floor = indicator_radius_floor(model, window)
    if not R > floor:
        raise PreconditionError(f"R = {R} must exceed the band floor {floor:.6f}")
    c = min((xi - model.xi0) ** 2, (xi - model.xi1) ** 2)
    if R > 1.0 / alpha and (c <= 0 or math.log(R) > c / (2.0 * alpha)):
        raise PreconditionError(f"R = {R} grows too fast for alpha = {alpha} at xi = {xi}")
    near = _near_singularity(model, xi)
    if not _on_support(model, kind, xi):
        return AsymptoticValue(value=0.0 + 0.0j, off_support=True, near_singularity=near)
    if near and (xi == model.xi0 or xi == model.xi1):
        return AsymptoticValue(value=complex(math.inf), near_singularity=True)
    return AsymptoticValue(value=complex(_theta_indicator(model, window, xi)),
                           near_singularity=near)


def asym_sst(model: TwoHarmonicModel, window: GaussianWindow, alpha: float,
             t: float, xi: float) -> AsymptoticValue:
    """Small-alpha limit of the STFT-weighted squeeze at t_k^+/- (error O(alpha))."""
    if not alpha > 0:
        raise PreconditionError("alpha must be positive")
    kind = classify_time(model, t)
    if kind == "intermediate":
        raise PreconditionError("asymptotics stated at t_k^+ / t_k^- only")
    near = _near_singularity(model, xi)
    if not _on_support(model, kind, xi):
        return AsymptoticValue(value=0.0 + 0.0j, off_support=True, near_singularity=near)
    if near and (xi == model.xi0 or xi == model.xi1):
        return AsymptoticValue(value=complex(math.inf), near_singularity=True)
    return AsymptoticValue(value=_theta_stft(model, window, kind, t, xi),
                           near_singularity=near)


# ---------------------------------------------------------------------------
# preimage case analysis


@dataclass(frozen=True)
class PreimageIntervals:
    """Solution set of |eta_s(t, eta) - xi| < C sqrt(alpha) at a distinguished
    time, as ordered disjoint eta intervals (possibly half-infinite)."""

    time_kind: str
    label: str
    intervals: tuple
    eta_avg: float
    c_left: float | None = None
    c_right: float | None = None
    c_star: float | None = None


def _segment_label(model: TwoHarmonicModel, cs: float, xi: float) -> str:
    bounds = [model.xi0 - cs, model.xi0 + cs, model.xibar - cs,
              model.xibar + cs, model.xi1 - cs, model.xi1 + cs]
    return f"I{int(np.searchsorted(np.asarray(bounds), xi, side='right')) + 1}"


def _log_or_raise(arg: float, gamma: str) -> float:
    if arg <= 0:
        raise OutOfBranchError(f"log argument {arg:.6e} <= 0 in {gamma}", gamma=gamma)
    return math.log(arg)


def preimage_intervals(model: TwoHarmonicModel, window: GaussianWindow, alpha: float,
                       C: float, t: float, xi: float) -> PreimageIntervals:
    """Exact preimage case split with closed-form endpoints, per segment label.

    Needs C <= delta/(4 sqrt alpha) at t_k^+/- and C <= delta/(2 sqrt alpha) at
    quarter-period times, so the seven segments stay disjoint.
    """
    if model.a <= 0:
        raise DegenerateAmplitudeError("preimage case split requires a > 0")
    kind = classify_time(model, t)
    sa = math.sqrt(alpha)
    cap = model.delta / (2.0 * sa) if kind == "intermediate" else model.delta / (4.0 * sa)
    if not (0.0 < C <= cap * (1 + 1e-12)):
        raise PreconditionError(f"C = {C} outside (0, {cap:.6f}] for a {kind} time")
    cs = C * sa
    d = xi - model.xi1
    two_cd = 2.0 * window.C * model.delta
    eta_avg = model.xibar - math.log(model.a) / two_cd
    label = _segment_label(model, cs, xi)
    seg = int(label[1])

    if kind == "constructive":
        if seg in (1, 7):
            return PreimageIntervals(kind, label, (), eta_avg)
        if seg == 2:
            c_r = _log_or_raise(-1.0 - model.delta / (d + cs), "c_right") / two_cd
            return PreimageIntervals(kind, label, ((-math.inf, eta_avg + c_r),),
                                     eta_avg, c_right=c_r)
        if seg == 6:
            c_l = _log_or_raise(-1.0 - model.delta / (d - cs), "c_left") / two_cd
            return PreimageIntervals(kind, label, ((eta_avg + c_l, math.inf),),
                                     eta_avg, c_left=c_l)
        c_l = _log_or_raise(-1.0 - model.delta / (d - cs), "c_left") / two_cd
        c_r = _log_or_raise(-1.0 - model.delta / (d + cs), "c_right") / two_cd
        return PreimageIntervals(kind, label, ((eta_avg + c_l, eta_avg + c_r),),
                                 eta_avg, c_left=c_l, c_right=c_r)

    if kind == "destructive":
        if seg in (3, 4, 5):
            return PreimageIntervals(kind, label, (), eta_avg)
        if seg == 2:
            c_r = _log_or_raise(1.0 + model.delta / (d - cs), "c_right") / two_cd
            return PreimageIntervals(kind, label, ((-math.inf, eta_avg + c_r),),
                                     eta_avg, c_right=c_r)
        if seg == 6:
            c_l = _log_or_raise(1.0 + model.delta / (d + cs), "c_left") / two_cd
            return PreimageIntervals(kind, label, ((eta_avg + c_l, math.inf),),
                                     eta_avg, c_left=c_l)
        c_l = _log_or_raise(1.0 + model.delta / (d + cs), "c_left") / two_cd
        c_r = _log_or_raise(1.0 + model.delta / (d - cs), "c_right") / two_cd
        return PreimageIntervals(kind, label, ((eta_avg + c_l, eta_avg + c_r),),
                                 eta_avg, c_left=c_l, c_right=c_r)

    # intermediate time: only the one-sided segments survive
    if seg in (2, 6):
        num = (xi - model.xi0) ** 2 - (C * sa) ** 2
        den = (C * sa) ** 2 - (xi - model.xi1) ** 2
        if num / den <= 0:
            raise OutOfBranchError(f"square-root argument {num/den:.6e} <= 0 in c_star",
                                   gamma="c_star")
        c_star = math.log(math.sqrt(num / den)) / two_cd
        if seg == 2:
            return PreimageIntervals(kind, label, ((-math.inf, eta_avg + c_star),),
                                     eta_avg, c_star=c_star)
        return PreimageIntervals(kind, label, ((eta_avg + c_star, math.inf),),
                                 eta_avg, c_star=c_star)
    return PreimageIntervals(kind, label, (), eta_avg)


def erf_closed_form(model: TwoHarmonicModel, window: GaussianWindow, alpha: float,
                    t: float, xi: float, C: float | None = None) -> float:
    """Piecewise erf approximation of |S_V| at t_k^+/- (all four branches),
    with the alpha^{-1/2} and 1/(2 pi sigma) normalization of the derivation.

    Default C = delta/(4 sqrt alpha). Branch selection follows the segment
    label; log arguments outside their branch raise with the offending gamma.
    """
    if model.a <= 0:
        raise DegenerateAmplitudeError("closed form requires a > 0")
    kind = classify_time(model, t)
    if kind == "intermediate":
        raise PreconditionError("closed forms stated at t_k^+ / t_k^- only")
    sa = math.sqrt(alpha)
    if C is None:
        C = model.delta / (4.0 * sa)
    if not (0.0 < C <= model.delta / (4.0 * sa) * (1 + 1e-12)):
        raise PreconditionError(f"C = {C} outside (0, delta/(4 sqrt alpha)]")
    cs = C * sa
    d = xi - model.xi1
    a = model.a
    ps = math.pi * window.sigma
    two_cd = 2.0 * window.C * model.delta
    sign = -1.0 if kind == "constructive" else 1.0

    def gamma(offset: float, name: str) -> float:
        arg = sign * (1.0 + model.delta / (d + offset)) / a
        return model.xibar + _log_or_raise(arg, name) / two_cd

    label = _segment_label(model, cs, xi)
    seg = int(label[1])
    norm = 1.0 / (2.0 * math.pi * window.sigma * sa)

    def pair(g: float) -> float:
        return math.erf(ps * (g - model.xi0)) + a * math.erf(ps * (g - model.xi1))

    if kind == "constructive":
        if seg in (1, 7):
            return 0.0
        if seg == 2:
            return norm * abs(1.0 + a + pair(gamma(cs, "gamma_1")))
        if seg == 6:
            return norm * abs(1.0 + a - pair(gamma(-cs, "gamma_2")))
        return norm * abs(pair(gamma(cs, "gamma_1")) - pair(gamma(-cs, "gamma_2")))

    if seg in (3, 4, 5):
        return 0.0
    if seg == 2:
        return norm * abs(1.0 + a + pair(gamma(-cs, "gamma_2")))
    if seg == 6:
        return norm * abs(1.0 + a - pair(gamma(cs, "gamma_1")))
    return norm * abs(pair(gamma(cs, "gamma_1")) - pair(gamma(-cs, "gamma_2")))


# ---------------------------------------------------------------------------
# critical gap


def _sst_double_root_residuals(a: float, sigma: float, delta: float, y: float):
    """Scaled residuals of (H'(xi_c), H''(xi_c)) for the erf form at
    C = delta/(4 sqrt alpha); alpha drops out. y = xi_c - xi0 in (delta/4, 3 delta/4)."""
    s1 = y - 0.75 * delta
    s2 = y - 1.25 * delta
    if not (-delta < s1 < 0.0 and -delta < s2 < 0.0):
        return None
    csq = math.pi ** 2 * sigma ** 2
    l1 = math.log(-(1.0 + delta / s1) / a)
    l2 = math.log(-(1.0 + delta / s2) / a)
    ps = math.pi * sigma
    z1 = 0.5 * ps * delta + l1 / (2.0 * ps * delta)
    z2 = 0.5 * ps * delta + l2 / (2.0 * ps * delta)
    z3 = z1 - ps * delta
    z4 = z2 - ps * delta
    g1p = -1.0 / (2.0 * csq * s1 * (s1 + delta))
    g2p = -1.0 / (2.0 * csq * s2 * (s2 + delta))
    g1pp = (2.0 * s1 + delta) / (2.0 * csq * s1 ** 2 * (s1 + delta) ** 2)
    g2pp = (2.0 * s2 + delta) / (2.0 * csq * s2 ** 2 * (s2 + delta) ** 2)
    e1, e2, e3, e4 = (math.exp(-z1 ** 2), math.exp(-z2 ** 2),
                      math.exp(-z3 ** 2), math.exp(-z4 ** 2))
    f1 = g1p * (e1 + a * e3) - g2p * (e2 + a * e4)
    s1_scale = abs(g1p) * (e1 + a * e3) + abs(g2p) * (e2 + a * e4)
    terms = (
        e1 * (ps * g1pp - 2 * z1 * (ps * g1p) ** 2),
        -e2 * (ps * g2pp - 2 * z2 * (ps * g2p) ** 2),
        a * e3 * (ps * g1pp - 2 * z3 * (ps * g1p) ** 2),
        -a * e4 * (ps * g2pp - 2 * z4 * (ps * g2p) ** 2),
    )
    f2 = sum(terms)
    s2_scale = sum(abs(x) for x in terms)
    return f1 / max(s1_scale, 1e-300), f2 / max(s2_scale, 1e-300)


def critical_gap_sst(a: float, window: GaussianWindow) -> tuple[float, float, float]:
    """Critical gap for the STFT-weighted squeezed transform to resolve two
    maxima at constructive times.

    Returns (delta_crit, r, xi_c) with xi_c relative to xi0. Balanced
    amplitudes short-circuit to the closed form delta = sqrt(2 ln 3 / 3)/(pi
    sigma), r = 1/3, xi_c = delta/2. Otherwise a damped Newton iteration
    drives the erf-form double-root conditions (first and second derivative
    both zero at an interior critical point) from the balanced seed.
    """
    if not a > 0:
        raise ModelValidationError("a must be positive")
    sigma = window.sigma
    delta_balanced = math.sqrt(2.0 * math.log(3.0) / 3.0) / (math.pi * sigma)
    if a == 1.0:
        return delta_balanced, 1.0 / 3.0, 0.5 * delta_balanced

    def residual(vec):
        res = _sst_double_root_residuals(a, sigma, vec[0], vec[1])
        if res is None:
            return None
        return np.array(res)

    vec = np.array([delta_balanced, 0.5 * delta_balanced])
    f = residual(vec)
    if f is None:
        raise SolverFailureError("seed outside the valid region", residuals=None)
    for _ in range(200):
        norm = float(np.max(np.abs(f)))
        if norm < 1e-12:
            break
        jac = np.empty((2, 2))
        for j in range(2):
            h = 1e-7 * max(abs(vec[j]), 1e-3)
            probe = vec.copy()
            probe[j] += h
            fp = residual(probe)
            if fp is None:
                probe[j] -= 2 * h
                fp = residual(probe)
                if fp is None:
                    raise SolverFailureError("Jacobian probe left the valid region",
                                             residuals=tuple(f))
                jac[:, j] = (f - fp) / h
            else:
                jac[:, j] = (fp - f) / h
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            raise SolverFailureError("singular Jacobian in the gap solver",
                                     residuals=tuple(f))
        lam = 1.0
        for _ in range(50):
            trial = vec + lam * step
            ft = residual(trial) if trial[0] > 0 else None
            if ft is not None and float(np.max(np.abs(ft))) < norm:
                vec, f = trial, ft
                break
            lam *= 0.5
        else:
            raise SolverFailureError(
                f"Newton stalled at residuals {tuple(f)}", residuals=tuple(f)
            )
    else:
        raise SolverFailureError(
            f"Newton did not converge, residuals {tuple(f)}", residuals=tuple(f)
        )
    delta_c, y = float(vec[0]), float(vec[1])
    s1 = y - 0.75 * delta_c
    r = -a * s1 / (delta_c + s1)
    return delta_c, r, y


def critical_gap_ratio_balanced() -> float:
    """Exact ratio of the balanced critical gaps (squeeze over plain STFT)."""
    return math.sqrt(math.log(3.0) / 3.0)


# ---------------------------------------------------------------------------
# extreme amplitudes


def squeeze_single_component(xi_component: float, amplitude: float,
                             window: GaussianWindow, alpha: float,
                             t: float, xi: float) -> complex:
    """Closed-form squeeze of a lone harmonic: amplitude * e^{2 pi i xi_c t}
    e^{-(xi_c - xi)^2/alpha} / (pi sigma sqrt(alpha))."""
    phase = complex(math.cos(2 * math.pi * xi_component * t),
                    math.sin(2 * math.pi * xi_component * t))
    return (amplitude / (math.pi * window.sigma * math.sqrt(alpha))
            * phase * math.exp(-(xi_component - xi) ** 2 / alpha))


def sst_extreme_amplitude(model: TwoHarmonicModel, window: GaussianWindow,
                          alpha: float, t: float, xi: float, regime: str) -> complex:
    """Leading-order squeeze for unbalanced amplitudes: the dominant single
    component (error O(a) as a -> 0, O(1/a) as a -> infinity)."""
    if regime not in ("small_a", "large_a"):
        raise ModelValidationError("regime must be 'small_a' or 'large_a'")
    if regime == "small_a":
        if model.a > 0.2:
            warnings.warn(f"small-amplitude regime questionable at a = {model.a}",
                          stacklevel=2)
        return squeeze_single_component(model.xi0, 1.0, window, alpha, t, xi)
    if model.a < 5.0:
        warnings.warn(f"large-amplitude regime questionable at a = {model.a}",
                      stacklevel=2)
    return squeeze_single_component(model.xi1, model.a, window, alpha, t, xi)
