"""q-Gaussian kernels in one and two dimensions.

The kernel family is norm * q_exp(-beta * x' inv(Cov) x) with the deformed
exponential q_exp. For q < 1 the kernel has compact support; for q above 1
it is heavy-tailed and normalizable only while q < 3 (1D) or q < 2 (2D).
Entropic indices within Q_ONE_TOL of 1 are evaluated on the classical
Gaussian branch, which the family approaches continuously.

Kernel objects are immutable after construction and all evaluations are
pure functions, so they can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .errors import RegimeError

# Width of the band around q = 1 treated as exactly Gaussian; inside it the
# deformed-exponential exponent 1/(1-q) is numerically meaningless.
Q_ONE_TOL = 1e-9


@dataclass(frozen=True)
class QParams:
    """Entropic index q, shape parameter beta, and a 1D or 2D scale.

    Exactly one of ``sigma`` (1D scale, positive) or ``cov`` (2x2 symmetric
    positive-definite covariance, stored as nested tuples) is set.
    """

    q: float
    beta: float = 0.5
    sigma: float | None = None
    cov: tuple[tuple[float, float], tuple[float, float]] | None = None

    def __post_init__(self):
        if not self.beta > 0.0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if (self.sigma is None) == (self.cov is None):
            raise ValueError("set exactly one of sigma (1D) or cov (2D)")
        if self.sigma is not None and not self.sigma > 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.cov is not None:
            mat = np.asarray(self.cov, dtype=float)
            if mat.shape != (2, 2):
                raise ValueError("cov must be a 2x2 matrix")
            if not np.allclose(mat, mat.T, rtol=0.0, atol=1e-12 * abs(mat).max()):
                raise ValueError("cov must be symmetric")
            if np.linalg.eigvalsh(mat).min() <= 0.0:
                raise ValueError("cov must be positive definite")
            object.__setattr__(
                self, "cov", tuple(tuple(float(v) for v in row) for row in mat)
            )

    @property
    def is_gaussian(self) -> bool:
        return abs(self.q - 1.0) <= Q_ONE_TOL


def q_exp(x: float, q: float) -> float:
    """Deformed exponential: (1 + (1-q) x)^(1/(1-q)) above the cut-off, else 0.

    Total on all real inputs; q near 1 falls back to exp(x).
    """
    if abs(q - 1.0) <= Q_ONE_TOL:
        try:
            return math.exp(x)
        except OverflowError:
            return math.inf
    base = 1.0 + (1.0 - q) * x
    if base <= 0.0:
        return 0.0
    try:
        return math.pow(base, 1.0 / (1.0 - q))
    except OverflowError:
        return math.inf


def support_radius(q: float, beta: float) -> float:
    """Support radius in whitened coordinates: 1/sqrt(beta (1-q)) for q < 1."""
    if q < 1.0 - Q_ONE_TOL:
        return 1.0 / math.sqrt(beta * (1.0 - q))
    return math.inf


def norm_const_1d(q: float, sigma: float, beta: float) -> float:
    """Normalization constant of the 1D kernel.

    Gamma-function closed forms on either side of q = 1; the heavy-tail
    side exists only for q < 3.
    """
    a = beta / (sigma * sigma)
    if abs(q - 1.0) <= Q_ONE_TOL:
        return math.sqrt(a / math.pi)
    if q > 1.0:
        if q >= 3.0:
            raise RegimeError(f"1D normalization diverges for q >= 3 (q = {q})")
        m = 1.0 / (q - 1.0)
        ln = (
            specfun.ln_gamma(m)
            - specfun.ln_gamma(m - 0.5)
            + 0.5 * math.log((q - 1.0) * a)
            - 0.5 * math.log(math.pi)
        )
    else:
        r = 1.0 / (1.0 - q)
        ln = (
            specfun.ln_gamma(r + 1.5)
            - specfun.ln_gamma(r + 1.0)
            + 0.5 * math.log((1.0 - q) * a)
            - 0.5 * math.log(math.pi)
        )
    return math.exp(ln)


def norm_const_2d(q: float, cov, beta: float) -> float:
    """Normalization constant of the 2D kernel: beta (2-q) / (pi sqrt(det))."""
    if q >= 2.0 - Q_ONE_TOL and abs(q - 1.0) > Q_ONE_TOL:
        if q >= 2.0:
            raise RegimeError(f"2D normalization diverges for q >= 2 (q = {q})")
    mat = np.asarray(cov, dtype=float)
    det = float(np.linalg.det(mat))
    if det <= 0.0:
        raise ValueError("cov must be positive definite")
    return beta * (2.0 - q) / (math.pi * math.sqrt(det))


@dataclass(frozen=True)
class Kernel1D:
    """A validated 1D q-Gaussian: parameters, normalization, support."""

    params: QParams
    norm: float
    support_radius: float

    @property
    def q(self) -> float:
        return self.params.q

    @property
    def sigma(self) -> float:
        return self.params.sigma

    @property
    def beta(self) -> float:
        return self.params.beta

    @property
    def a(self) -> float:
        """Quadratic coefficient beta / sigma^2."""
        return self.params.beta / (self.params.sigma * self.params.sigma)

    def __call__(self, x: float) -> float:
        p = self.params
        if p.is_gaussian:
            return self.norm * math.exp(-self.a * x * x)
        return self.norm * q_exp(-self.a * x * x, p.q)

    def sample(self, xs) -> np.ndarray:
        """Vectorized evaluation on an array of abscissas."""
        xs = np.asarray(xs, dtype=float)
        arg = self.a * xs * xs
        p = self.params
        if p.is_gaussian:
            return self.norm * np.exp(-arg)
        base = 1.0 + (1.0 - p.q) * (-arg)
        out = np.zeros_like(base)
        mask = base > 0.0
        out[mask] = base[mask] ** (1.0 / (1.0 - p.q))
        return self.norm * out


def kernel_1d(q: float, sigma: float, beta: float = 0.5) -> Kernel1D:
    params = QParams(q=q, beta=beta, sigma=sigma)
    norm = norm_const_1d(q, sigma, beta)
    radius = sigma * support_radius(q, beta) if q < 1.0 - Q_ONE_TOL else math.inf
    return Kernel1D(params=params, norm=norm, support_radius=radius)


@dataclass(frozen=True, eq=False)
class Kernel2D:
    """A validated 2D q-Gaussian with its whitening factorization.

    inv_cov and whiten come from one symmetric eigendecomposition of the
    covariance done at construction; whiten maps x to coordinates where
    the kernel is isotropic, and support_radius is measured there.
    """

    params: QParams
    norm: float
    support_radius: float
    inv_cov: np.ndarray = field(repr=False)
    whiten: np.ndarray = field(repr=False)

    @property
    def q(self) -> float:
        return self.params.q

    @property
    def beta(self) -> float:
        return self.params.beta

    @property
    def cov(self) -> np.ndarray:
        return np.asarray(self.params.cov, dtype=float)

    def quad_form(self, x: float, y: float) -> float:
        m = self.inv_cov
        return m[0, 0] * x * x + 2.0 * m[0, 1] * x * y + m[1, 1] * y * y

    def __call__(self, x: float, y: float) -> float:
        p = self.params
        arg = -p.beta * self.quad_form(x, y)
        if p.is_gaussian:
            return self.norm * math.exp(arg)
        return self.norm * q_exp(arg, p.q)

    def sample_grid(self, xs, ys) -> np.ndarray:
        """Kernel values on the outer grid xs x ys, shape (len(xs), len(ys))."""
        xs = np.asarray(xs, dtype=float)[:, None]
        ys = np.asarray(ys, dtype=float)[None, :]
        m = self.inv_cov
        quad = m[0, 0] * xs * xs + 2.0 * m[0, 1] * xs * ys + m[1, 1] * ys * ys
        p = self.params
        if p.is_gaussian:
            return self.norm * np.exp(-p.beta * quad)
        base = 1.0 - (1.0 - p.q) * p.beta * quad
        out = np.zeros_like(base)
        mask = base > 0.0
        out[mask] = base[mask] ** (1.0 / (1.0 - p.q))
        return self.norm * out


def kernel_2d(q: float, cov, beta: float = 0.5) -> Kernel2D:
    mat = np.asarray(cov, dtype=float)
    params = QParams(q=q, beta=beta, cov=tuple(tuple(row) for row in mat))
    norm = norm_const_2d(q, mat, beta)
    eigvals, eigvecs = np.linalg.eigh(mat)
    inv_cov = eigvecs @ np.diag(1.0 / eigvals) @ eigvecs.T
    whiten = np.diag(1.0 / np.sqrt(eigvals)) @ eigvecs.T
    return Kernel2D(
        params=params,
        norm=norm,
        support_radius=support_radius(q, beta),
        inv_cov=inv_cov,
        whiten=whiten,
    )


def isotropic_cov(sigma: float) -> np.ndarray:
    """Covariance sigma^2 I for an isotropic kernel with scale sigma."""
    return np.diag([sigma * sigma, sigma * sigma])


def gaussian_1d(x: float, sigma: float) -> float:
    """Classical normalized Gaussian density."""
    if not sigma > 0.0:
        raise ValueError("sigma must be positive")
    return math.exp(-0.5 * (x / sigma) ** 2) / (sigma * math.sqrt(2.0 * math.pi))


def gaussian_2d(x: float, y: float, cov) -> float:
    """Classical normalized 2D Gaussian density with covariance cov."""
    mat = np.asarray(cov, dtype=float)
    det = float(np.linalg.det(mat))
    if det <= 0.0:
        raise ValueError("cov must be positive definite")
    inv = np.linalg.inv(mat)
    quad = inv[0, 0] * x * x + 2.0 * inv[0, 1] * x * y + inv[1, 1] * y * y
    return math.exp(-0.5 * quad) / (2.0 * math.pi * math.sqrt(det))
