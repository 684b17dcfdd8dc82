"""Space and frequency localization analysis of the 1D kernels.

A kernel's space window is [center - delta, center + delta] with delta the
second-moment radius of the squared kernel; the center is 0 by evenness.
Beta-function closed forms give the L2 norm, the x-weighted norm, delta,
and the uncertainty-type lower bound on the frequency spread. The
frequency spread itself has no closed form here and is integrated
numerically from the closed-form transform when checking the inequality
4 pi |x g|_2 |y F g|_2 >= |g|_2^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from . import specfun
from .errors import ConvergenceError, CutoffNotFoundError, RegimeError
from .fourier import ft1d_closed_form
from .qcore import Q_ONE_TOL, Kernel1D, QParams

# Tolerance for deciding that a derived quantity sits exactly on an integer.
_INT_TOL = 1e-9

_Q_UPPER_DELTA = 7.0 / 3.0


def _near_int(x: float) -> bool:
    return abs(x - round(x)) <= _INT_TOL


def _near_negative_int(x: float) -> bool:
    return _near_int(x) and round(x) <= 0.0


@dataclass(frozen=True)
class ValidityCheck:
    valid: bool
    violations: tuple[str, ...]


def validity_check(params: QParams) -> ValidityCheck:
    """Check the parameter conditions under which the closed forms exist.

    Heavy-tail side: 1/(q-1) + 1/2 must not be an integer and 1/(q-1) must
    not be a non-positive integer. Compact side: none of 1/(1-q) + 1,
    1/(1-q) + 1/2, 1/(1-q) + 3/2 may be a non-positive integer. Violations
    are reported by name.
    """
    q = params.q
    violations: list[str] = []
    if abs(q - 1.0) <= Q_ONE_TOL:
        return ValidityCheck(True, ())
    if q > 1.0:
        if q >= 3.0:
            violations.append(f"q = {q} is outside the heavy-tail regime 1 < q < 3")
        else:
            m = 1.0 / (q - 1.0)
            if _near_int(m + 0.5):
                violations.append(
                    f"case (a): 1/(q-1) + 1/2 = {m + 0.5:.12g} is an integer"
                )
            if _near_negative_int(m):
                violations.append(
                    f"case (a): 1/(q-1) = {m:.12g} is a non-positive integer"
                )
    else:
        r = 1.0 / (1.0 - q)
        for shift, label in ((1.0, "1"), (0.5, "1/2"), (1.5, "3/2")):
            if _near_negative_int(r + shift):
                violations.append(
                    f"case (b): 1/(1-q) + {label} = {r + shift:.12g} "
                    "is a non-positive integer"
                )
    return ValidityCheck(not violations, tuple(violations))


@dataclass(frozen=True)
class WindowReport:
    """Space-window geometry and the frequency-spread lower bound."""

    center: float
    l2_norm: float
    x_weighted_norm: float
    delta: float
    ft_bound: float
    regime: str


def window_report(kernel: Kernel1D) -> WindowReport:
    """Closed-form window quantities for one kernel.

    The x-weighted norm, and with it delta, exists on the heavy-tail side
    only for q < 7/3; beyond that the defining moment integral diverges
    and a RegimeError is raised.
    """
    q = kernel.q
    a = kernel.a
    c = kernel.norm
    if abs(q - 1.0) <= Q_ONE_TOL:
        l2 = c * (math.pi / (2.0 * a)) ** 0.25
        xnorm = l2 / (2.0 * math.sqrt(a))
        delta = 1.0 / (2.0 * math.sqrt(a))
        ft_bound = l2 * math.sqrt(a) / (2.0 * math.pi)
        return WindowReport(0.0, l2, xnorm, delta, ft_bound, "1<q<7/3")
    if q > 1.0:
        if q >= 3.0:
            raise RegimeError(f"no window quantities for q >= 3 (q = {q})")
        if q >= _Q_UPPER_DELTA:
            raise RegimeError(
                f"window radius diverges for q >= 7/3 (q = {q}): "
                "the second-moment Beta argument hits a pole"
            )
        s = (q - 1.0) * a
        b1 = math.exp(specfun.ln_beta(0.5, 2.0 / (q - 1.0) - 0.5))
        b2 = math.exp(specfun.ln_beta(1.5, 2.0 / (q - 1.0) - 1.5))
        l2 = c / s**0.25 * math.sqrt(b1)
        xnorm = c / s**0.75 * math.sqrt(b2)
        delta = math.sqrt(b2 / (s * b1))
        ft_bound = c * s**0.25 / (4.0 * math.pi) * b1 / math.sqrt(b2)
        return WindowReport(0.0, l2, xnorm, delta, ft_bound, "1<q<7/3")
    s = (1.0 - q) * a
    b1 = math.exp(specfun.ln_beta(0.5, 2.0 / (1.0 - q) + 1.0))
    b2 = math.exp(specfun.ln_beta(1.5, 2.0 / (1.0 - q) + 1.0))
    l2 = c / s**0.25 * math.sqrt(b1)
    xnorm = c / s**0.75 * math.sqrt(b2)
    delta = math.sqrt(b2 / (s * b1))
    ft_bound = c / (4.0 * math.pi) * s**0.25 * b1 / math.sqrt(b2)
    return WindowReport(0.0, l2, xnorm, delta, ft_bound, "q<1")


@dataclass(frozen=True)
class HeisenbergResult:
    lhs: float
    rhs: float
    satisfied: bool
    freq_norm: float
    converged: bool


def heisenberg_check(kernel: Kernel1D) -> HeisenbergResult:
    """Numerically verify 4 pi |x g|_2 |y F g|_2 >= |g|_2^2.

    The frequency norm is integrated over doubling windows until the last
    window contributes below 1e-14 of the total. For strongly compact
    kernels (q <= -1) that integral diverges; the running value is then a
    certified lower bound, and the check reports satisfied as soon as the
    bound already exceeds the right-hand side, with converged False.
    """
    report = window_report(kernel)
    rhs = report.l2_norm**2
    four_pi_xnorm = 4.0 * math.pi * report.x_weighted_norm

    def integrand(y: float) -> float:
        f = ft1d_closed_form(kernel, y).modulus
        return (y * f) ** 2

    y_edge = 1.0 / (4.0 * report.delta)
    total = 0.0
    lo = 0.0
    hi = y_edge
    converged = False
    for _ in range(15):
        piece, _ = quad(integrand, lo, hi, epsabs=1e-13, epsrel=1e-10, limit=400)
        total += piece
        if total > 0.0 and piece <= 1e-14 * total:
            converged = True
            break
        lo, hi = hi, 2.0 * hi
    freq_norm = math.sqrt(2.0 * total)
    lhs = four_pi_xnorm * freq_norm
    if not converged and lhs < rhs:
        raise ConvergenceError(
            "frequency-norm integral did not converge and the running lower "
            "bound cannot decide the inequality"
        )
    return HeisenbergResult(
        lhs=lhs,
        rhs=rhs,
        satisfied=lhs >= rhs * (1.0 - 1e-9),
        freq_norm=freq_norm,
        converged=converged,
    )


def _bisect_crossing(f, lo: float, hi: float, target: float, rel: float) -> float:
    # f decreasing through target on [lo, hi].
    while hi - lo > rel * hi:
        mid = 0.5 * (lo + hi)
        if f(mid) >= target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def cutoff_frequency(
    kernel: Kernel1D, threshold: float = 0.1, horizon: float = 1000.0
) -> float:
    """Smallest frequency beyond which |F| stays below the threshold.

    Heavy-tail transforms decrease monotonically, so a doubling scan plus
    bisection suffices. Compact-support transforms oscillate through
    Bessel lobes; there the scan tracks the running maximum from the right
    (the lobe envelope) and the reported value is the final descending
    crossing of the threshold. Resolved to 1e-6 relative.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie in (0, 1)")
    q = kernel.q

    def modulus(y: float) -> float:
        return ft1d_closed_form(kernel, y).modulus

    if q > 1.0 - Q_ONE_TOL:
        if q > 1.0 + Q_ONE_TOL:
            y_scale = math.sqrt((q - 1.0) * kernel.a) / (2.0 * math.pi)
        else:
            y_scale = math.sqrt(kernel.a) / math.pi
        lo, hi = 0.0, y_scale
        while modulus(hi) >= threshold:
            lo, hi = hi, 2.0 * hi
            if hi > horizon:
                raise CutoffNotFoundError(
                    f"no crossing below {threshold} up to the horizon {horizon}"
                )
        return _bisect_crossing(modulus, lo, hi, threshold, 1e-6)

    # Compact support: scan at eight points per Bessel lobe.
    scale = math.sqrt((1.0 - q) * kernel.a)
    order = 1.0 / (1.0 - q) + 0.5
    dy = scale / 16.0
    amp_front = (
        math.log(kernel.norm)
        + 0.5 * math.log(math.pi)
        - math.log(scale)
        + specfun.ln_gamma(1.0 / (1.0 - q) + 1.0)
    )

    def lobe_amplitude(y: float) -> float:
        # Asymptotic peak height of the oscillation at frequency y; valid
        # once the Bessel argument clears the order.
        z = 2.0 * math.pi * y / scale
        ln_a = (
            amp_front
            - order * math.log(0.5 * z)
            + 0.5 * (math.log(2.0) - math.log(math.pi) - math.log(z))
        )
        return math.exp(ln_a) if ln_a < 700.0 else math.inf

    last_above = 0.0
    chunk = 512
    idx = 1
    while True:
        y_block = [idx * dy + i * dy for i in range(chunk)]
        any_above = False
        for yv in y_block:
            if modulus(yv) >= threshold:
                last_above = yv
                any_above = True
        idx += chunk
        y_end = y_block[-1]
        z_end = 2.0 * math.pi * y_end / scale
        tail_quiet = (
            not any_above
            and z_end >= 1.5 * order + 5.0
            and 1.3 * lobe_amplitude(y_end) < threshold
            and y_end >= last_above + 3.0 * chunk * dy
        )
        if tail_quiet:
            break
        if y_end > horizon:
            raise CutoffNotFoundError(
                f"lobe envelope never settles below {threshold} "
                f"within the horizon {horizon}"
            )
    lo = last_above if last_above > 0.0 else 0.0
    hi = lo + dy
    return _bisect_crossing(modulus, lo, hi, threshold, 1e-6)
