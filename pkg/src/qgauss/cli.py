"""Command-line surface: kernels, spectra, window reports, cut-off curves,
filter taps, and the standard figure data files as CSV or JSON.

Every run is fully determined by its flags; repeated runs with identical
flags produce byte-identical output files. Exit codes: 0 success, 2
parameter validity or regime error, 3 convergence failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .analysis import cutoff_frequency, validity_check, window_report
from .errors import ConvergenceError, GridError, QGaussError, RegimeError, ValidityError
from .fourier import (
    GridSpec,
    ft1d_closed_form,
    ft1d_quadrature,
    ft2d_grid,
    half_width_index,
)
from .qcore import Kernel1D, Kernel2D, gaussian_1d, kernel_1d, kernel_2d

_FLOAT_FMT = "%.11e"  # 12 significant digits

FIGURE_IDS = ("1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b", "5a", "5b", "6")

# Shared parameters of the 1D figure family.
_FIG_SIGMA = 0.1
_FIG_BETA = 0.5
_FIG_Q_HEAVY = (1.41, 2.0, 2.3)
_FIG_Q_COMPACT = (0.1, 0.5, 0.99)


@dataclass(frozen=True)
class RunConfig:
    """Resolved options of one CLI invocation (embedded in output headers)."""

    command: str
    params: dict
    out: str | None
    fmt: str


def _fmt_param(v) -> str:
    if isinstance(v, float):
        return "%.12g" % v
    return str(v)


def _render_csv(params: dict, columns, rows) -> str:
    lines = ["# params: " + ", ".join(f"{k}={_fmt_param(v)}" for k, v in params.items())]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(
            ",".join(_FLOAT_FMT % v if isinstance(v, float) else str(v) for v in row)
        )
    return "\n".join(lines) + "\n"


def _render_json(params: dict, columns, rows) -> str:
    payload = {
        "params": {k: v for k, v in params.items()},
        "columns": list(columns),
        "rows": [list(r) for r in rows],
    }
    return json.dumps(payload, sort_keys=True, indent=1) + "\n"


def _emit(config: RunConfig, columns, rows) -> None:
    text = (
        _render_json(config.params, columns, rows)
        if config.fmt == "json"
        else _render_csv(config.params, columns, rows)
    )
    if config.out is None:
        sys.stdout.write(text)
    else:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _kernel_from_args(args) -> Kernel1D:
    return kernel_1d(args.q, args.sigma, args.beta)


def _kernel2_from_args(args) -> Kernel2D:
    s1 = args.sigma1 if args.sigma1 is not None else args.sigma
    s2 = args.sigma2 if args.sigma2 is not None else s1
    cov = np.diag([s1 * s1, s2 * s2])
    return kernel_2d(args.q, cov, args.beta)


# ---------------------------------------------------------------------------
# Tap sampling
# ---------------------------------------------------------------------------


def sample_taps_1d(kernel: Kernel1D, step: float, normalize: bool = False):
    """Kernel samples at integer multiples of step.

    Compact kernels are sampled out to the support radius (boundary
    included); heavy-tail kernels out to where the value drops below
    1e-8 of the peak. With normalize the taps are rescaled, center tap
    last, so that their sum is exactly 1.0.
    """
    if not step > 0.0:
        raise GridError(f"step must be positive, got {step}")
    if math.isfinite(kernel.support_radius):
        count = int(math.ceil(kernel.support_radius / step - 1e-12))
    else:
        peak = kernel(0.0)
        count = 1
        while kernel(count * step) >= 1e-8 * peak:
            count += 1
    ks = list(range(-count, count + 1))
    weights = [kernel(k * step) for k in ks]
    if normalize:
        total = math.fsum(weights)
        weights = [w / total for w in weights]
        for _ in range(3):
            residual = 1.0 - math.fsum(weights)
            if residual == 0.0:
                break
            weights[count] += residual
    return [(k, k * step, w) for k, w in zip(ks, weights)]


def sample_taps_2d(kernel: Kernel2D, step: float, normalize: bool = False):
    """2D tap table on a square grid out to the largest support extent."""
    if not step > 0.0:
        raise GridError(f"step must be positive, got {step}")
    if math.isfinite(kernel.support_radius):
        eigvals = np.linalg.eigvalsh(kernel.cov)
        extent = kernel.support_radius * math.sqrt(float(eigvals.max()))
        count = int(math.ceil(extent / step - 1e-12))
    else:
        peak = kernel(0.0, 0.0)
        count = 1
        while (
            kernel(count * step, 0.0) >= 1e-8 * peak
            or kernel(0.0, count * step) >= 1e-8 * peak
        ):
            count += 1
    axis = np.arange(-count, count + 1)
    weights = kernel.sample_grid(axis * step, axis * step)
    if normalize:
        weights = weights / weights.sum()
        for _ in range(3):
            residual = 1.0 - float(weights.sum())
            if residual == 0.0:
                break
            weights[count, count] += residual
    return [
        (int(i - count), int(j - count), (i - count) * step, (j - count) * step,
         float(weights[i, j]))
        for i in range(2 * count + 1)
        for j in range(2 * count + 1)
    ]


# ---------------------------------------------------------------------------
# Figures
# ---------------------------------------------------------------------------


def _heavy_q_grid(upper: float):
    grid = [round(1.05 + 0.05 * i, 2) for i in range(int(round((upper - 1.05) / 0.05)) + 1)]
    return [q for q in grid if q <= upper + 1e-12]


def _compact_q_grid():
    grid = [round(-2.0 + 0.05 * i, 2) for i in range(60)]
    return [q for q in grid if q <= 0.95 + 1e-12] + [0.99]


def _window_rows(qs):
    rows = []
    for q in qs:
        rep = window_report(kernel_1d(q, _FIG_SIGMA, _FIG_BETA))
        rows.append((q, rep.delta, rep.ft_bound))
    return rows


def _profile_rows(qs, xs, spectral: bool):
    kernels = [kernel_1d(q, _FIG_SIGMA, _FIG_BETA) for q in qs]
    rows = []
    for x in xs:
        if spectral:
            vals = [ft1d_closed_form(k, float(x)).modulus for k in kernels]
        else:
            vals = [k(float(x)) for k in kernels]
        rows.append((float(x), *vals))
    return rows


def _cutoff_rows(qs, threshold: float):
    rows = []
    for q in qs:
        kernel = kernel_1d(q, _FIG_SIGMA, _FIG_BETA)
        if not validity_check(kernel.params).valid:
            continue
        rows.append((q, cutoff_frequency(kernel, threshold)))
    return rows


def fig6_kernel() -> Kernel2D:
    # Isotropic compact kernel with covariance sqrt(8) * I; its support
    # radius (2*sqrt(8))**0.5 ~ 2.378 fits inside the 2.5 half-width window.
    return kernel_2d(0.5, np.diag([math.sqrt(8.0), math.sqrt(8.0)]), beta=1.0)


def figure_data(fig_id: str, half_width: float = 2.5):
    """(params, columns, rows) for one figure data file."""
    base = {"sigma": _FIG_SIGMA, "beta": _FIG_BETA}
    if fig_id == "1a":
        qs = _heavy_q_grid(2.30)
        return base | {"curve": "space-window-radius"}, ("q", "delta"), [
            (q, d) for q, d, _ in _window_rows(qs)
        ]
    if fig_id == "1b":
        qs = _heavy_q_grid(2.30)
        return base | {"curve": "frequency-spread-bound"}, ("q", "ft_bound"), [
            (q, b) for q, _, b in _window_rows(qs)
        ]
    if fig_id == "3a":
        qs = _compact_q_grid()
        return base | {"curve": "space-window-radius"}, ("q", "delta"), [
            (q, d) for q, d, _ in _window_rows(qs)
        ]
    if fig_id == "3b":
        qs = _compact_q_grid()
        return base | {"curve": "frequency-spread-bound"}, ("q", "ft_bound"), [
            (q, b) for q, _, b in _window_rows(qs)
        ]
    if fig_id in ("2a", "2b", "4a", "4b"):
        qs = _FIG_Q_HEAVY if fig_id[0] == "2" else _FIG_Q_COMPACT
        spectral = fig_id[1] == "b"
        if spectral:
            xs = np.linspace(-40.0, 40.0, 401)
            cols = ("y",) + tuple(f"absft_q{q:g}" for q in qs)
        else:
            lim = 1.0 if fig_id[0] == "2" else 1.5
            xs = np.linspace(-lim, lim, 401)
            cols = ("x",) + tuple(f"g_q{q:g}" for q in qs)
        return base | {"q_values": "/".join(f"{q:g}" for q in qs)}, cols, _profile_rows(
            qs, xs, spectral
        )
    if fig_id == "5a":
        qs = _heavy_q_grid(2.95)
        return base | {"threshold": 0.1}, ("q", "cutoff"), _cutoff_rows(qs, 0.1)
    if fig_id == "5b":
        qs = _compact_q_grid()
        return base | {"threshold": 0.1}, ("q", "cutoff"), _cutoff_rows(qs, 0.1)
    if fig_id == "6":
        kernel = fig6_kernel()
        step = 0.25
        grid = GridSpec(step=step, half_index=int(math.ceil(half_width / step)))
        ws = np.linspace(-2.0, 2.0, 129)
        surface = np.abs(ft2d_grid(kernel, grid, ws, ws))
        rows = [
            (float(w1), float(w2), float(surface[i, j]))
            for i, w1 in enumerate(ws)
            for j, w2 in enumerate(ws)
        ]
        params = {
            "q": 0.5,
            "beta": 1.0,
            "cov": "sqrt(8)*I",
            "step": step,
            "half_width": half_width,
        }
        return params, ("w1", "w2", "absft"), rows
    raise ValueError(f"unknown figure id {fig_id!r}")


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_kernel(args) -> None:
    if args.sigma1 is not None or args.sigma2 is not None:
        kernel = _kernel2_from_args(args)
        axis = np.linspace(-args.range, args.range, args.samples)
        values = kernel.sample_grid(axis, axis)
        rows = [
            (float(x), float(y), float(values[i, j]))
            for i, x in enumerate(axis)
            for j, y in enumerate(axis)
        ]
        params = {
            "q": args.q, "beta": args.beta,
            "sigma1": args.sigma1 if args.sigma1 is not None else args.sigma,
            "sigma2": args.sigma2 if args.sigma2 is not None else args.sigma1,
        }
        _emit(_config("kernel", params, args), ("x", "y", "density"), rows)
        return
    kernel = _kernel_from_args(args)
    xs = np.linspace(-args.range, args.range, args.samples)
    rows = [(float(x), kernel(float(x))) for x in xs]
    params = {"q": args.q, "sigma": args.sigma, "beta": args.beta}
    _emit(_config("kernel", params, args), ("x", "density"), rows)


def _cmd_ft1d(args) -> None:
    kernel = _kernel_from_args(args)
    ys = np.linspace(-args.range, args.range, args.samples)
    columns = ["y", "value", "modulus"]
    rows = []
    for y in ys:
        s = ft1d_closed_form(kernel, float(y))
        row = [float(y), s.value.real, s.modulus]
        if args.oracle:
            row.append(ft1d_quadrature(kernel, float(y)).value.real)
        rows.append(tuple(row))
    if args.oracle:
        columns.append("quadrature")
    params = {"q": args.q, "sigma": args.sigma, "beta": args.beta}
    _emit(_config("ft1d", params, args), tuple(columns), rows)


def _cmd_ft2d(args) -> None:
    kernel = _kernel2_from_args(args)
    if args.half_width is not None:
        half_index = int(math.ceil(args.half_width / args.step))
    elif args.tail is not None:
        half_index = half_width_index(kernel, args.step, args.tail)
    else:
        raise GridError("ft2d needs --half-width or --tail to size the grid")
    grid = GridSpec(step=args.step, half_index=half_index)
    lim = args.range if args.range is not None else 0.5 * grid.period
    ws = np.linspace(-lim, lim, args.samples)
    surface = ft2d_grid(kernel, grid, ws, ws)
    rows = [
        (float(w1), float(w2), surface[i, j].real, surface[i, j].imag,
         abs(surface[i, j]))
        for i, w1 in enumerate(ws)
        for j, w2 in enumerate(ws)
    ]
    params = {
        "q": args.q, "beta": args.beta,
        "sigma1": args.sigma1 if args.sigma1 is not None else args.sigma,
        "sigma2": args.sigma2 if args.sigma2 is not None else args.sigma1,
        "step": args.step, "half_index": half_index,
    }
    _emit(_config("ft2d", params, args), ("w1", "w2", "re", "im", "modulus"), rows)


def _cmd_window(args) -> None:
    kernel = _kernel_from_args(args)
    rep = window_report(kernel)
    params = {"q": args.q, "sigma": args.sigma, "beta": args.beta}
    columns = ("center", "l2_norm", "x_weighted_norm", "delta", "ft_bound", "regime")
    rows = [(rep.center, rep.l2_norm, rep.x_weighted_norm, rep.delta,
             rep.ft_bound, rep.regime)]
    _emit(_config("window", params, args), columns, rows)


def _cmd_cutoff(args) -> None:
    kernel = _kernel_from_args(args)
    ybar = cutoff_frequency(kernel, args.threshold)
    params = {"q": args.q, "sigma": args.sigma, "beta": args.beta,
              "threshold": args.threshold}
    _emit(_config("cutoff", params, args), ("q", "cutoff"), [(args.q, ybar)])


def _cmd_taps(args) -> None:
    if args.sigma1 is not None or args.sigma2 is not None:
        kernel = _kernel2_from_args(args)
        rows = sample_taps_2d(kernel, args.step, args.normalize)
        columns = ("i", "j", "x", "y", "weight")
        params = {
            "q": args.q, "beta": args.beta,
            "sigma1": args.sigma1 if args.sigma1 is not None else args.sigma,
            "sigma2": args.sigma2 if args.sigma2 is not None else args.sigma1,
            "step": args.step, "normalize": args.normalize,
        }
    else:
        kernel = _kernel_from_args(args)
        rows = sample_taps_1d(kernel, args.step, args.normalize)
        columns = ("k", "x", "weight")
        params = {"q": args.q, "sigma": args.sigma, "beta": args.beta,
                  "step": args.step, "normalize": args.normalize}
    _emit(_config("taps", params, args), columns, rows)


def _cmd_figure(args) -> None:
    params, columns, rows = figure_data(args.id, args.half_width)
    _emit(_config("figure", {"id": args.id} | params, args), columns, rows)


def _config(command: str, params: dict, args) -> RunConfig:
    return RunConfig(command=command, params=params, out=args.out, fmt=args.format)


def _add_common(p: argparse.ArgumentParser, *, q=True, sigma=True) -> None:
    if q:
        p.add_argument("--q", type=float, required=True, help="entropic index")
    if sigma:
        p.add_argument("--sigma", type=float, default=1.0, help="1D scale")
        p.add_argument("--sigma1", type=float, default=None, help="2D scale, first axis")
        p.add_argument("--sigma2", type=float, default=None, help="2D scale, second axis")
    p.add_argument("--beta", type=float, default=0.5, help="shape parameter")
    p.add_argument("--out", type=str, default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgauss",
        description="q-Gaussian kernels, spectra, and localization analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="sample a kernel profile")
    _add_common(p)
    p.add_argument("--range", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=201)
    p.set_defaults(handler=_cmd_kernel)

    p = sub.add_parser("ft1d", help="closed-form 1D spectrum")
    _add_common(p)
    p.add_argument("--range", type=float, default=40.0)
    p.add_argument("--samples", type=int, default=401)
    p.add_argument("--oracle", action="store_true",
                   help="add an adaptive-quadrature column")
    p.set_defaults(handler=_cmd_ft1d)

    p = sub.add_parser("ft2d", help="discrete 2D spectrum")
    _add_common(p)
    p.add_argument("--step", type=float, required=True, help="spatial sampling step")
    p.add_argument("--half-width", dest="half_width", type=float, default=None,
                   help="spatial half-width; the half index is ceil(half-width/step)")
    p.add_argument("--tail", type=float, default=None,
                   help="choose the half index from this kernel tail bound")
    p.add_argument("--range", type=float, default=None)
    p.add_argument("--samples", type=int, default=65)
    p.set_defaults(handler=_cmd_ft2d)

    p = sub.add_parser("window", help="space-window report")
    _add_common(p)
    p.set_defaults(handler=_cmd_window)

    p = sub.add_parser("cutoff", help="low-pass cut-off frequency")
    _add_common(p)
    p.add_argument("--threshold", type=float, default=0.1)
    p.set_defaults(handler=_cmd_cutoff)

    p = sub.add_parser("taps", help="sampled filter taps")
    _add_common(p)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--normalize", action="store_true")
    p.set_defaults(handler=_cmd_taps)

    p = sub.add_parser("figure", help="emit one figure data file")
    p.add_argument("--id", choices=FIGURE_IDS, required=True)
    p.add_argument("--half-width", dest="half_width", type=float, default=2.5,
                   help="spatial half-width of the figure-6 grid")
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(handler=_cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.handler(args)
    except (ValidityError, RegimeError, GridError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
