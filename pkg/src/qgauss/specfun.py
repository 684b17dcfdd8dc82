"""Self-contained real-argument special functions.

Gamma, Beta, Bessel J of real order (real or purely imaginary argument),
the modified Bessel function K, and the Whittaker function W(0, mu).
These are the only special functions the q-Gaussian transforms need, and
they are implemented here directly:

* Gamma by a Lanczos rational approximation (g = 7, 9 terms) plus the
  reflection formula for the negative axis.
* Bessel J by its defining power series for small argument, a normalized
  backward (Miller) recurrence for mid-range argument, and the Hankel
  large-argument expansion when the argument dominates the order.
* Bessel K by a step-halving trapezoid evaluation of the integral
  representation K(mu, z) = int_0^inf exp(-z cosh t) cosh(mu t) dt,
  carried out in log space so huge orders and tiny arguments do not
  overflow.

Every public operation returns a SpecialValue carrying a status, so
domain violations and convergence failures surface explicitly rather
than as NaNs. All functions are pure; there is no shared mutable state,
so concurrent use needs no locking.

The ``*_ln`` variants return (sign, log magnitude) and exist for callers
that must assemble products whose factors overflow or underflow the
double range even though the product itself is representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EXACT = "exact"
CONVERGED = "converged"
DIVERGED = "diverged"
DOMAIN_ERROR = "domain-error"

SERIES_MAX_TERMS = 500
SERIES_REL_STOP = 1e-16

# Bessel J dispatch thresholds: the power series keeps full accuracy up to
# here, the Hankel expansion takes over once z clearly dominates the order,
# and the Miller recurrence covers everything in between.
_J_SERIES_MAX = 11.0
_J_HANKEL_MIN = 40.0

_LN_RESCALE = 250.0 * math.log(10.0)

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_HALF_LN_2PI = 0.5 * math.log(2.0 * math.pi)
_LN_PI = math.log(math.pi)


@dataclass(frozen=True)
class SpecialValue:
    """A special-function result together with its evaluation status."""

    value: float | complex
    status: str

    @property
    def ok(self) -> bool:
        return self.status in (EXACT, CONVERGED)


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def _sinpi(x: float) -> float:
    # Reduce modulo 2 before multiplying by pi so values near integers
    # keep full relative accuracy.
    return math.sin(math.pi * math.remainder(x, 2.0))


def ln_gamma(z: float) -> float:
    """log Gamma(z) for z > 0."""
    if z <= 0.0:
        raise ValueError(f"ln_gamma requires z > 0, got {z}")
    if z < 0.5:
        return _LN_PI - math.log(_sinpi(z)) - ln_gamma(1.0 - z)
    zz = z - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (zz + i)
    t = zz + _LANCZOS_G + 0.5
    return _HALF_LN_2PI + (zz + 0.5) * math.log(t) - t + math.log(acc)


def ln_gamma_signed(z: float) -> tuple[float, float]:
    """(sign, log |Gamma(z)|) for any z that is not a pole."""
    if _is_nonpositive_int(z):
        raise ValueError(f"Gamma pole at z = {z}")
    if z > 0.0:
        return 1.0, ln_gamma(z)
    s = _sinpi(z)
    return math.copysign(1.0, s), _LN_PI - math.log(abs(s)) - ln_gamma(1.0 - z)


def _exp_guarded(ln_value: float, sign: float = 1.0) -> float:
    if ln_value > 709.0:
        return sign * math.inf
    if ln_value < -745.0:
        return sign * 0.0
    return sign * math.exp(ln_value)


def gamma(z: float) -> SpecialValue:
    """Gamma(z) for real z, excluding the poles at 0, -1, -2, ..."""
    if _is_nonpositive_int(z):
        return SpecialValue(math.nan, DOMAIN_ERROR)
    sign, ln_abs = ln_gamma_signed(z)
    return SpecialValue(_exp_guarded(ln_abs, sign), CONVERGED)


def beta(x: float, y: float) -> SpecialValue:
    """Beta(x, y) = Gamma(x) Gamma(y) / Gamma(x + y), same pole rules."""
    if _is_nonpositive_int(x) or _is_nonpositive_int(y) or _is_nonpositive_int(x + y):
        return SpecialValue(math.nan, DOMAIN_ERROR)
    sx, lx = ln_gamma_signed(x)
    sy, ly = ln_gamma_signed(y)
    sxy, lxy = ln_gamma_signed(x + y)
    return SpecialValue(_exp_guarded(lx + ly - lxy, sx * sy * sxy), CONVERGED)


def ln_beta(x: float, y: float) -> float:
    """log Beta(x, y) for x, y > 0."""
    return ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)


# ---------------------------------------------------------------------------
# Bessel J
# ---------------------------------------------------------------------------


def _ratio_series(nu: float, z2: float) -> tuple[float, str]:
    """sum_k (-z^2/4)^k / (k! Gamma(nu+k+1)), i.e. J_nu(z) / (z/2)^nu.

    Even and entire in z, so it is also the safe way to evaluate the
    series on either side of the origin. z2 is z squared; a negative z2
    corresponds to a purely imaginary argument (all terms then share one
    sign and there is no cancellation).
    """
    sign0, ln0 = ln_gamma_signed(nu + 1.0)
    term = sign0 * _exp_guarded(-ln0)
    total = term
    x = -0.25 * z2
    for k in range(1, SERIES_MAX_TERMS + 1):
        term *= x / (k * (nu + k))
        total += term
        if abs(term) < SERIES_REL_STOP * abs(total):
            return total, CONVERGED
    return total, DIVERGED


def _hankel_j(nu: float, z: float) -> float:
    """Large-argument expansion, valid once z >> nu^2."""
    mu4 = 4.0 * nu * nu
    p_sum, q_sum = 1.0, 0.0
    factor = 1.0
    for k in range(1, 18):
        factor *= (mu4 - (2.0 * k - 1.0) ** 2) / (k * 8.0 * z)
        if k % 2 == 1:
            q_sum += (-1.0) ** ((k - 1) // 2) * factor
        else:
            p_sum += (-1.0) ** (k // 2) * factor
        if abs(factor) < 1e-18:
            break
    chi = z - (0.5 * nu + 0.25) * math.pi
    amp = math.sqrt(2.0 / (math.pi * z))
    return amp * (p_sum * math.cos(chi) - q_sum * math.sin(chi))


def _miller_j_ln(nu: float, z: float) -> tuple[float, float]:
    """(sign, log |J_nu(z)|) for nu >= 0, z > 0 by backward recurrence.

    Values along the recurrence are rescaled whenever they overflow; the
    rescale count at the target order is remembered so the final answer
    is assembled in log space and never leaves the double range.
    """
    n = int(math.floor(nu))
    nu0 = nu - n
    start = int(max(n, z) + 15.0 * max(z, 1.0) ** (1.0 / 3.0) + 40.0)

    # Normalization weights: sum_m c_m J_{nu0 + 2m}(z) = (z/2)^{nu0}.
    half = start // 2 + 1
    coef = np.empty(half + 1)
    if nu0 == 0.0:
        coef[0] = 1.0
        coef[1:] = 2.0
    else:
        coef[0] = math.gamma(nu0 + 1.0)
        for m in range(1, half + 1):
            coef[m] = (
                coef[m - 1]
                * ((nu0 + 2.0 * m) / (nu0 + 2.0 * m - 2.0))
                * ((nu0 + m - 1.0) / m)
            )

    f_up = 0.0
    f = 1e-30
    norm = coef[start // 2] * f if start % 2 == 0 else 0.0
    rescales = 0
    f_target = f if start == n else None
    rescales_at_target = 0
    for k in range(start, 0, -1):
        f_down = (2.0 * (nu0 + k) / z) * f - f_up
        f_up, f = f, f_down
        idx = k - 1
        if idx == n:
            f_target = f
            rescales_at_target = rescales
        if idx % 2 == 0:
            norm += coef[idx // 2] * f
        if abs(f) > 1e250:
            f *= 1e-250
            f_up *= 1e-250
            norm *= 1e-250
            rescales += 1
    if f_target is None or f_target == 0.0 or norm == 0.0:
        return 0.0, -math.inf
    ln_abs = (
        math.log(abs(f_target))
        - (rescales - rescales_at_target) * _LN_RESCALE
        - math.log(abs(norm))
        + nu0 * math.log(0.5 * z)
    )
    return math.copysign(1.0, f_target) * math.copysign(1.0, norm), ln_abs


def bessel_j_ln(nu: float, z: float) -> tuple[float, float, str]:
    """(sign, log |J_nu(z)|, status) for nu >= 0 and z > 0."""
    if nu < 0.0 or z <= 0.0:
        raise ValueError("bessel_j_ln requires nu >= 0 and z > 0")
    if z <= _J_SERIES_MAX:
        ratio, status = _ratio_series(nu, z * z)
        if ratio == 0.0:
            return 0.0, -math.inf, status
        sign = math.copysign(1.0, ratio)
        return sign, nu * math.log(0.5 * z) + math.log(abs(ratio)), status
    if z >= max(_J_HANKEL_MIN, 2.0 * nu * nu):
        value = _hankel_j(nu, z)
        if value == 0.0:
            return 0.0, -math.inf, CONVERGED
        return math.copysign(1.0, value), math.log(abs(value)), CONVERGED
    sign, ln_abs = _miller_j_ln(nu, z)
    return sign, ln_abs, CONVERGED


def _bessel_j_negative_order(nu: float, z: float) -> float:
    # Downward recurrence in the order from two non-negative seeds; stable
    # because the magnitude grows as the order decreases through zero.
    n = int(math.floor(nu))
    nu0 = nu - n
    s1, l1, _ = bessel_j_ln(nu0 + 1.0, z)
    s0, l0, _ = bessel_j_ln(nu0, z)
    j_up = _exp_guarded(l1, s1)
    j = _exp_guarded(l0, s0)
    mu = nu0
    for _ in range(-n):
        j_down = (2.0 * mu / z) * j - j_up
        j_up, j = j, j_down
        mu -= 1.0
    return j


def bessel_j(nu: float, z: float | complex) -> SpecialValue:
    """Bessel function of the first kind, real order.

    The argument may be real (non-negative, or negative only for integer
    order) or purely imaginary. Orders that are negative integers make a
    term of the defining series land on a Gamma pole and are rejected.
    """
    if nu < 0.0 and nu == math.floor(nu):
        return SpecialValue(math.nan, DOMAIN_ERROR)

    if isinstance(z, complex):
        if z.real != 0.0:
            raise ValueError("bessel_j supports real or purely imaginary arguments")
        if z.imag == 0.0:
            z = 0.0
        else:
            ratio, status = _ratio_series(nu, -(z.imag * z.imag))
            return SpecialValue((0.5 * z) ** nu * ratio, status)

    if z == 0.0:
        if nu == 0.0:
            return SpecialValue(1.0, EXACT)
        if nu > 0.0:
            return SpecialValue(0.0, EXACT)
        return SpecialValue(math.nan, DOMAIN_ERROR)
    if z < 0.0:
        if nu != math.floor(nu):
            # Branch point: negative real arguments are outside |arg z| < pi.
            return SpecialValue(math.nan, DOMAIN_ERROR)
        inner = bessel_j(nu, -z)
        parity = -1.0 if int(nu) % 2 else 1.0
        return SpecialValue(parity * inner.value, inner.status)

    if z <= _J_SERIES_MAX:
        ratio, status = _ratio_series(nu, z * z)
        scale = _exp_guarded(nu * math.log(0.5 * z))
        return SpecialValue(scale * ratio, status)
    if nu >= 0.0:
        sign, ln_abs, status = bessel_j_ln(nu, z)
        return SpecialValue(_exp_guarded(ln_abs, sign), status)
    return SpecialValue(_bessel_j_negative_order(nu, z), CONVERGED)


def bessel_j_ratio(nu: float, z: float) -> SpecialValue:
    """J_nu(z) / (z/2)^nu, an even entire function of z."""
    if nu < 0.0 and nu == math.floor(nu):
        return SpecialValue(math.nan, DOMAIN_ERROR)
    ratio, status = _ratio_series(nu, z * z)
    return SpecialValue(ratio, status)


# ---------------------------------------------------------------------------
# Bessel K and Whittaker W(0, mu)
# ---------------------------------------------------------------------------


def _ln_cosh(x: float) -> float:
    x = abs(x)
    if x > 350.0:
        return x - math.log(2.0)
    return x - math.log(2.0) + math.log1p(math.exp(-2.0 * x))


def _ln_bessel_k(mu: float, z: float) -> tuple[float, str]:
    """log K_mu(z) for z > 0 by trapezoid sums of the cosh integral.

    The integrand exp(g(t)) with g(t) = -z cosh t + log cosh(mu t) is
    unimodal; we locate its peak, integrate a window that captures
    everything above exp(-50) of the peak, and halve the step until two
    successive sums agree to ~5e-14. Working relative to the peak value
    keeps the whole computation in range for any order.
    """
    mu = abs(mu)

    def g(t: float) -> float:
        if t > 710.0:
            return -math.inf
        return -z * math.cosh(t) + _ln_cosh(mu * t)

    if mu * mu <= z:
        t_peak = 0.0
    else:
        lo, hi = 0.0, math.asinh(mu / z) + 1.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if -z * math.sinh(mid) + mu * math.tanh(mu * mid) > 0.0:
                lo = mid
            else:
                hi = mid
        t_peak = 0.5 * (lo + hi)

    g_peak = g(t_peak)
    if mu * t_peak < 350.0:
        curvature = z * math.cosh(t_peak) - (mu / math.cosh(mu * t_peak)) ** 2
    else:
        curvature = z * math.cosh(t_peak)
    width = 1.0 / math.sqrt(max(curvature, 1e-12))
    h = min(0.20, 0.35 * width)
    step = max(width, h)

    t_hi = t_peak + step
    while g(t_hi) > g_peak - 50.0:
        t_hi += step
    t_lo = 0.0
    if t_peak > 0.0:
        t_lo = max(0.0, t_peak - step)
        while t_lo > 0.0 and g(t_lo) > g_peak - 50.0:
            t_lo = max(0.0, t_lo - step)

    previous = None
    for _ in range(16):
        n = max(8, int(math.ceil((t_hi - t_lo) / h)))
        hh = (t_hi - t_lo) / n
        values = [math.exp(g(t_lo + hh * i) - g_peak) for i in range(n + 1)]
        total = hh * (math.fsum(values) - 0.5 * (values[0] + values[-1]))
        if previous is not None and abs(total - previous) <= 5e-14 * abs(total):
            return g_peak + math.log(total), CONVERGED
        previous = total
        h = 0.5 * hh
    return g_peak + math.log(previous), DIVERGED


def bessel_k_ln(mu: float, z: float) -> tuple[float, str]:
    """(log K_mu(z), status) for z > 0; even in the order."""
    if z <= 0.0:
        raise ValueError("bessel_k_ln requires z > 0")
    return _ln_bessel_k(mu, z)


def bessel_k(mu: float, z: float) -> SpecialValue:
    """Modified Bessel function of the second kind, K_mu(z), z > 0."""
    if z <= 0.0:
        return SpecialValue(math.nan, DOMAIN_ERROR)
    ln_abs, status = _ln_bessel_k(mu, z)
    return SpecialValue(_exp_guarded(ln_abs), status)


def whittaker_w0_ln(mu: float, z: float) -> tuple[float, str]:
    """(log W(0, mu; z), status) for z > 0."""
    if z <= 0.0:
        raise ValueError("whittaker_w0_ln requires z > 0")
    ln_k, status = _ln_bessel_k(mu, 0.5 * z)
    return 0.5 * (math.log(z) - _LN_PI) + ln_k, status


def whittaker_w0(mu: float, z: float) -> SpecialValue:
    """Whittaker W with zero first index: sqrt(z/pi) K_mu(z/2), z > 0."""
    if z <= 0.0:
        return SpecialValue(math.nan, DOMAIN_ERROR)
    ln_abs, status = whittaker_w0_ln(mu, z)
    return SpecialValue(_exp_guarded(ln_abs), status)
