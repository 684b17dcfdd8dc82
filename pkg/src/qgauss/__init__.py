"""q-Gaussian kernels, their Fourier transforms, and localization analysis."""

from .analysis import (
    HeisenbergResult,
    ValidityCheck,
    WindowReport,
    cutoff_frequency,
    heisenberg_check,
    validity_check,
    window_report,
)
from .errors import (
    ConvergenceError,
    CutoffNotFoundError,
    GridError,
    QGaussError,
    RegimeError,
    ValidityError,
)
from .fourier import (
    GridSpec,
    SpectrumSample,
    ft1d_closed_form,
    ft1d_quadrature,
    ft2d_discrete,
    ft2d_grid,
    ft_gaussian,
    half_width_index,
)
from .qcore import (
    Kernel1D,
    Kernel2D,
    QParams,
    gaussian_1d,
    gaussian_2d,
    isotropic_cov,
    kernel_1d,
    kernel_2d,
    norm_const_1d,
    norm_const_2d,
    q_exp,
    support_radius,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "CutoffNotFoundError",
    "GridError",
    "GridSpec",
    "HeisenbergResult",
    "Kernel1D",
    "Kernel2D",
    "QGaussError",
    "QParams",
    "RegimeError",
    "SpectrumSample",
    "ValidityCheck",
    "ValidityError",
    "WindowReport",
    "cutoff_frequency",
    "ft1d_closed_form",
    "ft1d_quadrature",
    "ft2d_discrete",
    "ft2d_grid",
    "ft_gaussian",
    "gaussian_1d",
    "gaussian_2d",
    "half_width_index",
    "heisenberg_check",
    "isotropic_cov",
    "kernel_1d",
    "kernel_2d",
    "norm_const_1d",
    "norm_const_2d",
    "q_exp",
    "support_radius",
    "validity_check",
    "window_report",
]
