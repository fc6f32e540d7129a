"""STFT phase: principal-branch extraction, zero localization by Newton on the
closed form, winding numbers along elliptical contours, and the
amplitude-weighted phase map used for visualization-grade export.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import ContourThroughZeroError, PhaseUndefinedError, PreconditionError, SolverFailureError
from .gabor import ComplexField, TFGrid, stft_closed_form
from .model import GaussianWindow, TwoHarmonicModel, destructive_time

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ZeroPoint:
    t0: float
    eta0: float
    winding: int
    refinement_residual: float


def _phase_threshold(a: float) -> float:
    return 1e-14 * (1.0 + a)


def phase(model: TwoHarmonicModel, window: GaussianWindow, t: float, eta: float) -> float:
    """Principal argument of V(t, eta), shifted to [0, 2 pi)."""
    v = stft_closed_form(model, window, t, eta)
    if abs(v) <= _phase_threshold(model.a):
        raise PhaseUndefinedError(f"|V| = {abs(v):.3e} at (t={t}, eta={eta})")
    return float(np.angle(v)) % TWO_PI


def _dv(model: TwoHarmonicModel, window: GaussianWindow, t, eta):
    """V and its exact partials (dV/dt, dV/deta)."""
    C = window.C
    xi0, xi1, a, d = model.xi0, model.xi1, model.a, model.delta
    rot0 = np.exp(2j * math.pi * xi0 * t)
    rot1 = np.exp(2j * math.pi * d * t)
    g0 = np.exp(-C * (eta - xi0) ** 2)
    g1 = np.exp(-C * (eta - xi1) ** 2)
    v = rot0 * (g0 + a * rot1 * g1)
    dv_dt = rot0 * (2j * math.pi) * (xi0 * g0 + a * xi1 * rot1 * g1)
    dv_de = rot0 * (-2 * C) * ((eta - xi0) * g0 + a * rot1 * (eta - xi1) * g1)
    return v, dv_dt, dv_de


def _newton_zero(model, window, t, eta, tol=1e-10, max_iter=50):
    # iterate to step collapse rather than the first tolerance crossing so
    # different seeds of one zero land within dedup distance of each other
    for _ in range(max_iter):
        v, dv_dt, dv_de = _dv(model, window, t, eta)
        jac = np.array([[dv_dt.real, dv_de.real], [dv_dt.imag, dv_de.imag]])
        rhs = -np.array([v.real, v.imag])
        try:
            step = np.linalg.solve(jac, rhs)
        except np.linalg.LinAlgError:
            return None
        t, eta = t + step[0], eta + step[1]
        if float(np.max(np.abs(step))) < 1e-13 * (1.0 + abs(t) + abs(eta)):
            break
    v, dv_dt, dv_de = _dv(model, window, t, eta)
    grad = max(abs(dv_dt), abs(dv_de))
    resid = abs(v)
    if resid <= tol and grad > 0 and resid <= 1e-8 * grad:
        return t, eta, resid, grad
    return None


def default_contour_rho(window: GaussianWindow) -> float:
    """Small relative to both contour semi-axes sigma*rho and rho/(pi sigma)."""
    return 0.05 * min(window.sigma, 1.0 / (math.pi * window.sigma))


def locate_zeros(model: TwoHarmonicModel, window: GaussianWindow, region: TFGrid,
                 winding_samples: int = 256) -> list[ZeroPoint]:
    """Zeros of V inside the region.

    Seeds at the analytic predictions (t_k^-, eta_avg) plus all grid cells
    where both Re V and Im V change sign; each candidate is refined by 2-D
    Newton with the exact Jacobian to |V| <= 1e-10 and deduplicated at 1e-8.
    Non-converged candidates are logged and dropped. Winding numbers are
    computed for every retained zero.
    """
    if model.a == 0.0:
        return []
    seeds = []
    eta_avg = model.xibar - math.log(model.a) / (2 * window.C * model.delta)
    k_lo = math.floor(region.t_min * model.delta - 0.5)
    k_hi = math.ceil(region.t_max * model.delta - 0.5)
    for k in range(k_lo, k_hi + 1):
        t_k = destructive_time(model, k)
        if region.t_min <= t_k <= region.t_max and region.eta_min <= eta_avg <= region.eta_max:
            seeds.append((t_k, eta_avg))

    tt = region.t_values()[:, None]
    ee = region.eta_values()[None, :]
    v = stft_closed_form(model, window, tt, ee)
    re_sign = np.sign(v.real)
    im_sign = np.sign(v.imag)

    def _cell_has_flip(sign):
        flip_t = sign[:-1, :-1] * sign[1:, :-1] <= 0
        flip_e = sign[:-1, :-1] * sign[:-1, 1:] <= 0
        flip_d = sign[:-1, :-1] * sign[1:, 1:] <= 0
        return flip_t | flip_e | flip_d

    cells = _cell_has_flip(re_sign) & _cell_has_flip(im_sign)
    ti, ei = np.nonzero(cells)
    t_vals, e_vals = region.t_values(), region.eta_values()
    for i, j in zip(ti, ei):
        seeds.append((0.5 * (t_vals[i] + t_vals[i + 1]), 0.5 * (e_vals[j] + e_vals[j + 1])))

    found = []
    char_len = min(window.sigma, 1.0 / (math.pi * window.sigma))
    for t0, e0 in seeds:
        res = _newton_zero(model, window, t0, e0)
        if res is None:
            logger.info("zero candidate at (%.6f, %.6f) did not converge; dropped", t0, e0)
            continue
        t_ref, e_ref, resid, grad = res
        # spurious tail candidates satisfy |V| <= tol over whole neighborhoods;
        # a simple zero is pinned by distance-to-zero ~ |V|/|grad V| collapsing
        if grad == 0.0 or resid > 1e-6 * grad * char_len:
            logger.info("candidate at (%.6f, %.6f) is not an isolated zero; dropped",
                        t_ref, e_ref)
            continue
        if not (region.t_min - region.t_step <= t_ref <= region.t_max + region.t_step):
            continue
        if not (region.eta_min - region.eta_step <= e_ref <= region.eta_max + region.eta_step):
            continue
        if any(abs(t_ref - z[0]) < 1e-8 and abs(e_ref - z[1]) < 1e-8 for z in found):
            continue
        found.append((t_ref, e_ref, resid))
    found.sort()
    rho = default_contour_rho(window)
    out = []
    for t_ref, e_ref, resid in found:
        w = winding_number(model, window, (t_ref, e_ref), rho, n_samples=winding_samples)
        out.append(ZeroPoint(t0=t_ref, eta0=e_ref, winding=w, refinement_residual=resid))
    return out


def winding_number(model: TwoHarmonicModel, window: GaussianWindow, center,
                   rho: float, n_samples: int = 256) -> int:
    """Winding of V about 0 along the ellipse
    (t - t0)^2 + pi^2 sigma^4 (eta - eta0)^2 = (sigma rho)^2.

    Phase increments are accumulated on the principal branch; any segment with
    increment magnitude >= pi/2 is bisected (branch tracking stays unambiguous
    below pi). The contour runs counterclockwise in the entire-function plane,
    so a simple zero gives +1. center may be a ZeroPoint or a (t0, eta0) pair.
    """
    if n_samples < 256:
        raise PreconditionError("n_samples must be >= 256")
    if isinstance(center, ZeroPoint):
        t0, eta0 = center.t0, center.eta0
    else:
        t0, eta0 = center
    sigma = window.sigma

    def point(theta):
        return (t0 + sigma * rho * np.cos(theta),
                eta0 - rho * np.sin(theta) / (math.pi * sigma))

    thetas = np.linspace(0.0, TWO_PI, n_samples + 1)
    tt, ee = point(thetas)
    samples = np.asarray(stft_closed_form(model, window, tt, ee))
    # through-zero floor scaled to the contour itself: unbalanced models have
    # zeros deep in a Gaussian tail where the whole contour is tiny yet clean
    floor = min(1e-12 * (1.0 + model.a), 1e-9 * float(np.max(np.abs(samples))))

    def value(theta):
        t, e = point(theta)
        v = stft_closed_form(model, window, t, e)
        if abs(v) <= floor:
            raise ContourThroughZeroError(
                f"contour sample at theta = {theta:.4f} has |V| = {abs(v):.2e}; change rho"
            )
        return v

    if np.any(np.abs(samples) <= floor):
        bad = float(thetas[int(np.argmin(np.abs(samples)))])
        raise ContourThroughZeroError(
            f"contour sample at theta = {bad:.4f} has |V| = {float(np.min(np.abs(samples))):.2e}; "
            "change rho"
        )
    values = list(samples)
    thetas = list(thetas)
    total = 0.0
    stack = [(thetas[i], thetas[i + 1], values[i], values[i + 1], 0)
             for i in range(n_samples)]
    while stack:
        th_a, th_b, va, vb, depth = stack.pop()
        inc = np.angle(vb / va)
        if abs(inc) < 0.5 * math.pi or depth >= 30:
            total += inc
            continue
        th_m = 0.5 * (th_a + th_b)
        vm = value(th_m)
        stack.append((th_a, th_m, va, vm, depth + 1))
        stack.append((th_m, th_b, vm, vb, depth + 1))
    w = total / TWO_PI
    nearest = round(w)
    if abs(w - nearest) > 0.01:
        raise SolverFailureError(
            f"winding sum {w:.6f} is not within 0.01 of an integer", residuals=(w,)
        )
    return int(nearest)


def amplitude_weighted_phase(field: ComplexField) -> np.ndarray:
    """|V| * phase with phase in [0, 2 pi), zeroed where the phase is undefined."""
    if field.tag != "STFT":
        raise PreconditionError(f"needs an STFT field, got {field.tag}")
    v = field.values
    mag = np.abs(v)
    thresh = 1e-14 * (1.0 + float(mag.max(initial=0.0)))
    phi = np.mod(np.angle(v), TWO_PI)
    phi[mag <= thresh] = 0.0
    return mag * phi
