"""Gaussian-window STFT: exact two-harmonic closed form, direct quadrature for
arbitrary signals, spectrogram cross-term decomposition, and the entire-function
(Bargmann) consistency check.

The transform is the modified STFT
    V(t, eta) = integral f(x) h(x - t) e^{-2 pi i eta (x - t)} dx,
whose two-harmonic closed form is
    V = e^{2 pi i xi0 t} (e^{-C (eta-xi0)^2} + a e^{2 pi i delta t} e^{-C (eta-xi1)^2}),
with C = pi^2 sigma^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import ModelValidationError, PropagationError
from .model import AHMSignal, GaussianWindow, TwoHarmonicModel, evaluate_two_harmonic

FIELD_TAGS = ("STFT", "REASSIGN", "SQUEEZE")


@dataclass(frozen=True)
class TFGrid:
    """Uniform rectangular time-frequency lattice, endpoints inclusive."""

    t_min: float
    t_max: float
    n_t: int
    eta_min: float
    eta_max: float
    n_eta: int

    def __post_init__(self):
        if not (self.t_min < self.t_max and self.eta_min < self.eta_max):
            raise ModelValidationError("grid ranges must be nonempty")
        if self.n_t < 2 or self.n_eta < 2:
            raise ModelValidationError("grid needs at least 2 points per axis")

    def t_values(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.n_t)

    def eta_values(self) -> np.ndarray:
        return np.linspace(self.eta_min, self.eta_max, self.n_eta)

    @property
    def t_step(self) -> float:
        return (self.t_max - self.t_min) / (self.n_t - 1)

    @property
    def eta_step(self) -> float:
        return (self.eta_max - self.eta_min) / (self.n_eta - 1)


@dataclass(frozen=True)
class ComplexField:
    """Complex values over a TFGrid, shape (n_t, n_eta), row-major in t."""

    grid: TFGrid
    values: np.ndarray
    tag: str

    def __post_init__(self):
        if self.tag not in FIELD_TAGS:
            raise ModelValidationError(f"unknown field tag {self.tag!r}")
        v = np.asarray(self.values)
        if v.shape != (self.grid.n_t, self.grid.n_eta):
            raise ModelValidationError(
                f"values shape {v.shape} != grid shape {(self.grid.n_t, self.grid.n_eta)}"
            )
        if self.tag != "REASSIGN" and not np.all(np.isfinite(v)):
            raise ModelValidationError(f"non-finite entries in {self.tag} field")


@dataclass(frozen=True)
class QuadratureSpec:
    """Controls for direct quadratures.

    half_width_sigmas: truncation half-width in units of sigma (Gaussian tail
    below 1e-27 at the default 8). n_nodes: composite-Simpson interval count
    (rounded up to even). rtol/max_doublings steer adaptive refinement where
    an operation uses it.
    """

    half_width_sigmas: float = 8.0
    n_nodes: int = 4096
    rtol: float = 1e-8
    max_doublings: int = 9

    def __post_init__(self):
        if self.half_width_sigmas <= 0 or self.n_nodes < 2:
            raise ModelValidationError("invalid quadrature spec")


def stft_closed_form(model: TwoHarmonicModel, window: GaussianWindow, t, eta):
    """Exact V(t, eta) for the two-harmonic model. Broadcasts over t and eta."""
    t_arr = np.asarray(t, dtype=float)
    eta_arr = np.asarray(eta, dtype=float)
    C = window.C
    bracket = np.exp(-C * (eta_arr - model.xi0) ** 2) + model.a * np.exp(
        2j * math.pi * model.delta * t_arr
    ) * np.exp(-C * (eta_arr - model.xi1) ** 2)
    out = np.exp(2j * math.pi * model.xi0 * t_arr) * bracket
    if np.isscalar(t) and np.isscalar(eta):
        return complex(out)
    return out


def stft_field(model: TwoHarmonicModel, window: GaussianWindow, grid: TFGrid) -> ComplexField:
    """Fill a grid with the closed form (time columns independent)."""
    tt = grid.t_values()[:, None]
    ee = grid.eta_values()[None, :]
    return ComplexField(grid=grid, values=stft_closed_form(model, window, tt, ee), tag="STFT")


def _signal_callable(signal) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(signal, TwoHarmonicModel):
        return lambda x: evaluate_two_harmonic(signal, x)
    if isinstance(signal, AHMSignal):
        return signal.evaluate
    if callable(signal):
        return lambda x: np.asarray(signal(x), dtype=complex)
    raise ModelValidationError(f"cannot evaluate signal of type {type(signal)!r}")


def stft_numeric(
    signal: Union[TwoHarmonicModel, AHMSignal, Callable],
    window: GaussianWindow,
    t: float,
    eta: float,
    quad: QuadratureSpec | None = None,
    deriv_window: bool = False,
) -> complex:
    """V(t, eta) by composite Simpson on |x - t| <= W, W = half_width_sigmas * sigma.

    With deriv_window=True the window is Dh = h' (needed by reassignment
    proximity checks). Default spec reproduces the closed form to <= 1e-8.
    """
    quad = quad or QuadratureSpec()
    f = _signal_callable(signal)
    w = quad.half_width_sigmas * window.sigma
    n = quad.n_nodes + (quad.n_nodes % 2)
    x = np.linspace(t - w, t + w, n + 1)
    fx = np.asarray(f(x), dtype=complex)
    bad = ~np.isfinite(fx)
    if np.any(bad):
        raise PropagationError(f"non-finite signal sample at x = {x[bad][0]!r}")
    if isinstance(signal, AHMSignal) and len(signal.components) >= 2:
        signal.validate_separation(x[:: max(1, n // 64)])
    win = window.dh(x - t) if deriv_window else window.h(x - t)
    integrand = fx * win * np.exp(-2j * math.pi * eta * (x - t))
    return complex(_simpson(integrand, x[1] - x[0]))


def _simpson(values: np.ndarray, step: float):
    """Composite Simpson over an odd-length uniformly spaced sample."""
    if len(values) % 2 != 1:
        raise ValueError("Simpson needs an odd number of nodes")
    acc = values[0] + values[-1] + 4.0 * values[1:-1:2].sum() + 2.0 * values[2:-2:2].sum()
    return acc * step / 3.0


def spectrogram_decomposition(model: TwoHarmonicModel, window: GaussianWindow, t, eta):
    """Three terms of |V|^2: (g0, g1, cross) with
    g0 = e^{-2C(eta-xi0)^2}, g1 = a^2 e^{-2C(eta-xi1)^2},
    cross = 2a e^{-C((eta-xi0)^2 + (eta-xi1)^2)} cos(2 pi delta t); sum = |V|^2.
    """
    t_arr = np.asarray(t, dtype=float)
    eta_arr = np.asarray(eta, dtype=float)
    C = window.C
    d0 = (eta_arr - model.xi0) ** 2
    d1 = (eta_arr - model.xi1) ** 2
    g0 = np.exp(-2 * C * d0)
    g1 = model.a ** 2 * np.exp(-2 * C * d1)
    cross = 2 * model.a * np.exp(-C * (d0 + d1)) * np.cos(2 * math.pi * model.delta * t_arr)
    if np.isscalar(t) and np.isscalar(eta):
        return float(g0), float(g1), float(cross)
    return g0, g1, cross


def separation_gap_bound(model: TwoHarmonicModel, window: GaussianWindow) -> float:
    """Uniform bound on |V| - (|V0| + |V1|): 2 a e^{-pi^2 sigma^2 (delta/2)^2}."""
    return 2 * model.a * math.exp(-window.C * (model.delta / 2) ** 2)


def bargmann_transform(model: TwoHarmonicModel, window: GaussianWindow, z):
    """Rescaled entire transform B f(z) of the two-harmonic signal, closed form:
    B f(z) = e^{(z + i pi sigma xi0)^2 - z^2/2} + a e^{(z + i pi sigma xi1)^2 - z^2/2}.
    """
    z = np.asarray(z, dtype=complex)
    s = window.sigma
    e0 = (z + 1j * math.pi * s * model.xi0) ** 2 - 0.5 * z ** 2
    e1 = (z + 1j * math.pi * s * model.xi1) ** 2 - 0.5 * z ** 2
    return np.exp(e0) + model.a * np.exp(e1)


def bargmann_consistency(model: TwoHarmonicModel, window: GaussianWindow, t, eta):
    """|V_reconstructed - V_closed_form| where V is rebuilt from the entire
    transform via V = e^{-[(t/sigma)^2 + (pi sigma eta)^2]/2} e^{i pi t eta} B f(z),
    z = t/sigma - i pi sigma eta. Exponents are combined before exp to avoid
    overflow on large grids.
    """
    t_arr = np.asarray(t, dtype=float)
    eta_arr = np.asarray(eta, dtype=float)
    s = window.sigma
    z = t_arr / s - 1j * math.pi * s * eta_arr
    pre = (
        -0.5 * ((t_arr / s) ** 2 + (math.pi * s * eta_arr) ** 2)
        + 1j * math.pi * t_arr * eta_arr
        - 0.5 * z ** 2
    )
    rec = np.exp(pre + (z + 1j * math.pi * s * model.xi0) ** 2) + model.a * np.exp(
        pre + (z + 1j * math.pi * s * model.xi1) ** 2
    )
    resid = np.abs(rec - stft_closed_form(model, window, t_arr, eta_arr))
    if np.isscalar(t) and np.isscalar(eta):
        return float(resid)
    return resid
