"""Fourier transforms of q-Gaussian kernels.

The transform convention is F(g; y) = int exp(-2 pi j x y) g(x) dx. For the
1D kernels two independent routes are provided: closed forms built from the
special-function layer (Whittaker/Bessel-K for the heavy-tail regime,
Bessel-J for the compact regime) and an adaptive-quadrature evaluation of
the defining integral that serves as the oracle for the closed forms. The
2D transform is the direct double summation over a finite sampling grid,
which is periodic with period 1/step in each frequency axis.

Closed-form sign convention: the value is fixed to agree with the defining
integral, which is positive at y -> 0 for these normalized kernels.

All transforms of the symmetric kernels here are real and even in the
frequency, and the evaluation uses |y|, so F(y) and F(-y) are bit-equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import specfun
from .errors import ConvergenceError, GridError, RegimeError, ValidityError
from .qcore import Q_ONE_TOL, Kernel1D, Kernel2D

_TWO_PI = 2.0 * math.pi

# Per-call interval budget handed to the adaptive integrator; QUADPACK
# rarely needs more than a few dozen bisections on these integrands.
_QUAD_LIMIT = 1000
_QUAD_EPSABS = 1e-12
_QUAD_EPSREL = 1e-12
# Reported-error ceiling above which a quadrature result is rejected.
_QUAD_ERR_CEILING = 1e-8


@dataclass(frozen=True)
class SpectrumSample:
    """One frequency sample of a transform: location, value, |value|."""

    freq: float | tuple[float, float]
    value: complex
    modulus: float


def _sample(freq, value) -> SpectrumSample:
    value = complex(value)
    return SpectrumSample(freq=freq, value=value, modulus=abs(value))


def ft_gaussian(sigma: float, y: float) -> SpectrumSample:
    """Transform of the classical normalized Gaussian: exp(-2 pi^2 sigma^2 y^2)."""
    if not sigma > 0.0:
        raise ValueError("sigma must be positive")
    return _sample(y, math.exp(-2.0 * math.pi**2 * sigma * sigma * y * y))


def _ft_gaussian_branch(kernel: Kernel1D, y: float) -> float:
    # Kernel norm * exp(-a x^2) transforms to exp(-pi^2 y^2 / a).
    return math.exp(-(math.pi**2) * y * y / kernel.a)


def _ft_heavy_tail(kernel: Kernel1D, y: float) -> float:
    q = kernel.q
    m = 1.0 / (q - 1.0)
    scale = math.sqrt((q - 1.0) * kernel.a)
    ln_norm = math.log(kernel.norm)
    p = _TWO_PI * abs(y) / scale
    if p < 1e-290:
        # Limit value; equals 1 up to rounding since the kernel is normalized.
        ln_f = (
            ln_norm
            + 0.5 * math.log(math.pi)
            + specfun.ln_gamma(m - 0.5)
            - specfun.ln_gamma(m)
            - math.log(scale)
        )
        return math.exp(ln_f)
    ln_w, status = specfun.whittaker_w0_ln(0.5 - m, 2.0 * p)
    if status != specfun.CONVERGED:
        raise ConvergenceError(f"Whittaker evaluation failed at y = {y}")
    ln_f = (
        ln_norm
        - math.log(scale)
        + math.log(math.pi)
        - specfun.ln_gamma(m)
        + (m - 1.0) * math.log(0.5 * p)
        + ln_w
    )
    if ln_f < -745.0:
        return 0.0
    return math.exp(ln_f)


def _ft_compact(kernel: Kernel1D, y: float) -> float:
    q = kernel.q
    r = 1.0 / (1.0 - q)
    scale = math.sqrt((1.0 - q) * kernel.a)
    if y == 0.0:
        # Zero-frequency closed form; equals 1 for the normalized kernel.
        ln_f = (
            math.log(kernel.norm)
            + (2.0 * r + 1.0) * math.log(2.0)
            - math.log(scale)
            + 2.0 * specfun.ln_gamma(r + 1.0)
            - specfun.ln_gamma(2.0 * r + 2.0)
        )
        return math.exp(ln_f)
    order = r + 0.5
    z = _TWO_PI * abs(y) / scale
    front = kernel.norm * math.sqrt(math.pi) / scale
    if z <= 11.0:
        # Scaled series for Gamma(r+1) * J_order(z) / (z/2)^order; the
        # leading factor keeps every term in range for any r.
        term = math.exp(specfun.ln_gamma(r + 1.0) - specfun.ln_gamma(r + 1.5))
        total = term
        x = -0.25 * z * z
        for k in range(1, specfun.SERIES_MAX_TERMS + 1):
            term *= x / (k * (order + k))
            total += term
            if abs(term) < specfun.SERIES_REL_STOP * abs(total):
                break
        else:
            raise ConvergenceError(f"series for the transform stalled at y = {y}")
        return front * total
    sign, ln_j, status = specfun.bessel_j_ln(order, z)
    if status != specfun.CONVERGED:
        raise ConvergenceError(f"Bessel evaluation failed at y = {y}")
    if sign == 0.0:
        return 0.0
    ln_f = specfun.ln_gamma(r + 1.0) - order * math.log(0.5 * z) + ln_j
    if ln_f < -745.0:
        return 0.0
    return sign * math.exp(ln_f)


def ft1d_closed_form(kernel: Kernel1D, y: float) -> SpectrumSample:
    """Closed-form transform of a 1D kernel at frequency y.

    Rejects parameter sets whose closed forms hit Gamma poles (see
    analysis.validity_check) and entropic indices at or beyond 3.
    """
    q = kernel.q
    if abs(q - 1.0) <= Q_ONE_TOL:
        return _sample(y, _ft_gaussian_branch(kernel, y))
    if q >= 3.0:
        raise RegimeError(f"no transform for q >= 3 (q = {q})")
    from .analysis import validity_check

    check = validity_check(kernel.params)
    if not check.valid:
        raise ValidityError("; ".join(check.violations), check.violations)
    if q > 1.0:
        return _sample(y, _ft_heavy_tail(kernel, y))
    return _sample(y, _ft_compact(kernel, y))


def _checked_quad(f, a, b, **kw):
    out = quad(f, a, b, full_output=1, **kw)
    value, abserr = out[0], out[1]
    if len(out) > 3 and abserr > _QUAD_ERR_CEILING:
        raise ConvergenceError(f"quadrature failed: {out[3]} (abserr = {abserr:.2e})")
    return value


def ft1d_quadrature(kernel: Kernel1D, y: float) -> SpectrumSample:
    """Transform by adaptive integration of the defining integral.

    Independent of the closed forms: only kernel values enter. The kernel
    is even, so the integral reduces to a cosine transform on the half
    line (the sine part vanishes identically and the imaginary part is
    returned as exactly zero); oscillation and the heavy tails are handled
    by weighted adaptive rules with extrapolation.
    """
    q = kernel.q
    w = _TWO_PI * abs(y)
    if q < 1.0 - Q_ONE_TOL:
        r = kernel.support_radius
        if w == 0.0:
            half = _checked_quad(
                kernel, 0.0, r,
                epsabs=_QUAD_EPSABS, epsrel=_QUAD_EPSREL, limit=_QUAD_LIMIT,
            )
        else:
            half = _checked_quad(
                kernel, 0.0, r,
                weight="cos", wvar=w,
                epsabs=_QUAD_EPSABS, epsrel=_QUAD_EPSREL, limit=_QUAD_LIMIT,
            )
    else:
        if w == 0.0:
            half = _checked_quad(
                kernel, 0.0, np.inf,
                epsabs=_QUAD_EPSABS, epsrel=_QUAD_EPSREL, limit=_QUAD_LIMIT,
            )
        else:
            half = _checked_quad(
                kernel, 0.0, np.inf,
                weight="cos", wvar=w,
                epsabs=_QUAD_EPSABS, limlst=200, limit=_QUAD_LIMIT,
            )
    return _sample(y, complex(2.0 * half, 0.0))


# ---------------------------------------------------------------------------
# Discrete 2D transform
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Square sampling grid: nodes m*step for -half_index <= m <= half_index."""

    step: float
    half_index: int

    def __post_init__(self):
        if not self.step > 0.0:
            raise GridError(f"step must be positive, got {self.step}")
        if self.half_index < 1:
            raise GridError(f"half_index must be >= 1, got {self.half_index}")

    @property
    def period(self) -> float:
        """Period of the discrete transform along each frequency axis."""
        return 1.0 / self.step

    @property
    def extent(self) -> float:
        return self.half_index * self.step

    def nodes(self) -> np.ndarray:
        return self.step * np.arange(-self.half_index, self.half_index + 1)


def fold_frequency(w: float, period: float) -> float:
    """Reduce a frequency by the nearest integer multiple of the period."""
    return w - math.floor(w / period + 0.5) * period


def half_width_index(kernel: Kernel2D, step: float, tail: float) -> int:
    """Smallest half index whose outermost axis node falls below tail."""
    if not step > 0.0:
        raise GridError(f"step must be positive, got {step}")
    if not tail > 0.0:
        raise ValueError("tail must be positive")
    m = 1
    while kernel(m * step, 0.0) >= tail:
        m += 1
        if m > 10**7:
            raise ConvergenceError("no grid half-width found below the tail bound")
    return m


def _phase_matrix(ws, nodes) -> np.ndarray:
    ws = np.asarray(ws, dtype=float)[:, None]
    return np.exp(-2j * math.pi * ws * nodes[None, :])


def ft2d_grid(kernel: Kernel2D, grid: GridSpec, w1s, w2s) -> np.ndarray:
    """Discrete transform on a frequency grid; shape (len(w1s), len(w2s)).

    Frequencies are folded into the principal square first, so shifting
    any input by the grid period reproduces the same summands and hence
    bit-identical values. The summation order per sample is fixed.
    """
    period = grid.period
    f1 = np.array([fold_frequency(float(w), period) for w in np.atleast_1d(w1s)])
    f2 = np.array([fold_frequency(float(w), period) for w in np.atleast_1d(w2s)])
    nodes = grid.nodes()
    values = kernel.sample_grid(nodes, nodes)
    e1 = _phase_matrix(f1, nodes)
    e2 = _phase_matrix(f2, nodes)
    return grid.step**2 * (e1 @ values @ e2.T)


def ft2d_discrete(kernel: Kernel2D, grid: GridSpec, w1: float, w2: float) -> SpectrumSample:
    """Discrete transform at a single frequency pair."""
    value = ft2d_grid(kernel, grid, [w1], [w2])[0, 0]
    return _sample((w1, w2), value)
