"""Grid sweep of F over a tau-rectangle and refined minimization.

The coarse stage evaluates F on a linspace mesh (endpoints included) and
takes the grid minimum; the refinement stage runs a deterministic
Nelder-Mead simplex from the grid minimizer.  Near the optimum F is nearly
flat in Re tau (variation ~5e-5 across a period), so the Re coordinate of
the minimizer carries little significance compared to Im and the value.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .specfun import (
    DEFAULT_CONFIG,
    IM_FLOOR,
    NonConvergenceError,
    SeriesConfig,
    Tau,
)
from .torus import f_ratio


@dataclass(frozen=True)
class FSurface:
    """Row-major mesh of F values: rows indexed by im_grid, columns by re_grid."""

    re_grid: np.ndarray
    im_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.values.shape != (len(self.im_grid), len(self.re_grid)):
            raise ValueError(
                f"values shape {self.values.shape} does not match grids "
                f"({len(self.im_grid)}, {len(self.re_grid)})"
            )
        for grid, name in ((self.re_grid, "re"), (self.im_grid, "im")):
            if len(grid) and np.any(np.diff(grid) <= 0):
                raise ValueError(f"{name} grid must be strictly ascending")
        if len(self.im_grid) and self.im_grid[0] < IM_FLOOR:
            raise ValueError(f"im grid must stay >= {IM_FLOOR}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("surface contains non-finite values")


@dataclass(frozen=True)
class MinimizeResult:
    """Outcome of the coarse+refined search.

    tau_star.re sits in a flat direction of F (see module docstring); only
    tau_star.im and f_min are sharply determined.  alpha = 1/exp_f_min.
    """

    tau_star: Tau
    f_min: float
    exp_f_min: float
    alpha: float
    grid_min: tuple[Tau, float]
    refined: bool
    evaluations: int


def sweep(
    re_range: tuple[float, float],
    im_range: tuple[float, float],
    rows: int,
    cols: int,
    cfg: SeriesConfig = DEFAULT_CONFIG,
) -> FSurface:
    """Evaluate F at every node of the rows x cols linspace mesh over
    re_range x im_range (endpoints included, rows indexed by im)."""
    a, b = re_range
    c, d = im_range
    if not (a < b):
        raise ValueError(f"re range must satisfy a < b, got [{a}, {b}]")
    if not (IM_FLOOR <= c < d):
        raise ValueError(
            f"im range must satisfy {IM_FLOOR} <= c < d, got [{c}, {d}]"
        )
    if rows < 2 or cols < 2:
        raise ValueError(f"mesh needs rows >= 2 and cols >= 2, got {rows}x{cols}")
    re_grid = np.linspace(a, b, cols)
    im_grid = np.linspace(c, d, rows)
    values = np.empty((rows, cols))
    for i, t in enumerate(im_grid):
        for j, r in enumerate(re_grid):
            try:
                values[i, j] = f_ratio(Tau(r, t), cfg).f
            except NonConvergenceError as exc:
                raise NonConvergenceError(
                    f"sweep failed at node re={r}, im={t}: {exc}"
                ) from exc
    return FSurface(re_grid=re_grid, im_grid=im_grid, values=values)


def grid_min(surface: FSurface) -> tuple[Tau, float]:
    """Node with the smallest value; ties broken by smallest im, then smallest re.

    Row-major argmin implements the tie-break: the first flat index scans im
    outermost, re innermost.
    """
    i, j = divmod(int(surface.values.argmin()), surface.values.shape[1])
    return (
        Tau(float(surface.re_grid[j]), float(surface.im_grid[i])),
        float(surface.values[i, j]),
    )


def _matlab_argmin(values: np.ndarray) -> tuple[int, int]:
    """MATLAB min(min(F)) semantics: first minimal row within each column,
    then first minimizing column."""
    col_rows = values.argmin(axis=0)
    col_vals = values[col_rows, np.arange(values.shape[1])]
    j = int(col_vals.argmin())
    return int(col_rows[j]), j


def matlab_grid_min(surface: FSurface) -> tuple[Tau, float]:
    """Grid minimum with MATLAB column-major first-minimum tie-breaking."""
    i, j = _matlab_argmin(surface.values)
    return (
        Tau(float(surface.re_grid[j]), float(surface.im_grid[i])),
        float(surface.values[i, j]),
    )


def _simplex_descent(fn, x0, steps, diam_tol, spread_tol, max_iter):
    """Nelder-Mead with standard coefficients (reflect 1, expand 2,
    contract 1/2, shrink 1/2).  Fully deterministic; returns
    (x_best, f_best, n_iterations)."""
    verts = [np.asarray(x0, dtype=float)]
    for k, s in enumerate(steps):
        v = np.array(x0, dtype=float)
        v[k] += s
        verts.append(v)
    vf = sorted(((fn(v), i, v) for i, v in enumerate(verts)), key=lambda t: (t[0], t[1]))
    sim = [(f, v) for f, _, v in vf]

    for it in range(max_iter):
        sim.sort(key=lambda t: t[0])
        f_best, x_best = sim[0]
        f_worst, x_worst = sim[-1]
        diam = max(
            float(np.linalg.norm(a[1] - b[1])) for a in sim for b in sim
        )
        finite = [f for f, _ in sim if math.isfinite(f)]
        spread = (max(finite) - min(finite)) if len(finite) == len(sim) else math.inf
        if diam < diam_tol and spread < spread_tol:
            return x_best, f_best, it

        centroid = sum(v for _, v in sim[:-1]) / (len(sim) - 1)
        xr = centroid + (centroid - x_worst)
        fr = fn(xr)
        if fr < f_best:
            xe = centroid + 2.0 * (centroid - x_worst)
            fe = fn(xe)
            sim[-1] = (fe, xe) if fe < fr else (fr, xr)
        elif fr < sim[-2][0]:
            sim[-1] = (fr, xr)
        else:
            if fr < f_worst:
                xc = centroid + 0.5 * (xr - centroid)
            else:
                xc = centroid - 0.5 * (centroid - x_worst)
            fc = fn(xc)
            if fc < min(fr, f_worst):
                sim[-1] = (fc, xc)
            else:
                sim = [(f_best, x_best)] + [
                    (fn(x_best + 0.5 * (v - x_best)), x_best + 0.5 * (v - x_best))
                    for _, v in sim[1:]
                ]
    sim.sort(key=lambda t: t[0])
    err = NonConvergenceError(
        f"simplex did not converge within {max_iter} iterations; "
        f"best f = {sim[0][0]} at {sim[0][1]}"
    )
    err.best = (sim[0][1], sim[0][0])
    raise err


def minimize(
    re_range: tuple[float, float],
    im_range: tuple[float, float],
    rows: int,
    cols: int,
    cfg: SeriesConfig = DEFAULT_CONFIG,
    refine: bool = True,
    max_iter: int = 2000,
) -> MinimizeResult:
    """Coarse sweep plus optional simplex refinement of F.

    The refinement starts from the grid minimizer with steps of half a grid
    cell, keeps Im tau >= IM_FLOOR via barrier, and stops when the simplex
    diameter is below 1e-6 and the value spread below 1e-10.
    """
    surface = sweep(re_range, im_range, rows, cols, cfg)
    evals = rows * cols
    g_tau, g_val = grid_min(surface)

    if not refine:
        return MinimizeResult(
            tau_star=g_tau,
            f_min=g_val,
            exp_f_min=math.exp(g_val),
            alpha=1.0 / math.exp(g_val),
            grid_min=(g_tau, g_val),
            refined=False,
            evaluations=evals,
        )

    counter = [0]

    def objective(x):
        counter[0] += 1
        re, im = float(x[0]), float(x[1])
        if im < IM_FLOOR:
            return math.inf
        return f_ratio(Tau(re, im), cfg).f

    steps = (
        0.5 * float(surface.re_grid[1] - surface.re_grid[0]),
        0.5 * float(surface.im_grid[1] - surface.im_grid[0]),
    )
    x_best, f_best, _ = _simplex_descent(
        objective,
        (g_tau.re, g_tau.im),
        steps,
        diam_tol=1e-6,
        spread_tol=1e-10,
        max_iter=max_iter,
    )
    f_min = min(f_best, g_val)
    exp_f = math.exp(f_min)
    return MinimizeResult(
        tau_star=Tau(float(x_best[0]), float(x_best[1])),
        f_min=f_min,
        exp_f_min=exp_f,
        alpha=1.0 / exp_f,
        grid_min=(g_tau, g_val),
        refined=True,
        evaluations=evals + counter[0],
    )


def parity_f(x: float, y: float, terms: int) -> float:
    """F via the fixed-term scan: K raw summands of log|1 - q^(2k)| at
    tau = x + i*y, no certified truncation."""
    q = cmath.exp(math.pi * complex(-y, x))
    s = 0.0
    for k in range(1, terms + 1):
        s += math.log(abs(1.0 - q ** (2 * k)))
    return -2.0 * math.log(y) - math.log(4.0 * math.pi) + math.pi * y / 3.0 - 4.0 * s


@dataclass(frozen=True)
class ParityResult:
    """Result of the MATLAB-style scan; mesh kept raw since clamped rows may
    repeat an im value (so this is deliberately not an FSurface)."""

    re_grid: np.ndarray
    im_grid: np.ndarray
    values: np.ndarray
    tau: Tau
    f: float
    clamped_rows: int


def parity_scan(
    x: float, y: float, terms: int, mesh_cols: int = 100, mesh_rows: int = 100
) -> ParityResult:
    """MATLAB-style myplot(x, y, K, M, N) scan: mesh linspace(-x, x, M) by
    linspace(0, y, N), K-term sums, column-major first-minimum tie-break.

    Rows with Im below IM_FLOOR are clamped up to it (the raw scan would hit
    log(0)); the count of clamped rows is reported so callers can notify.
    """
    if x <= 0 or y <= 0:
        raise ValueError(f"scan region needs x > 0 and y > 0, got x={x}, y={y}")
    if terms < 1 or mesh_cols < 2 or mesh_rows < 2:
        raise ValueError("scan needs terms >= 1 and a mesh of at least 2x2")
    re_grid = np.linspace(-x, x, mesh_cols)
    im_raw = np.linspace(0.0, y, mesh_rows)
    clamped = int(np.sum(im_raw < IM_FLOOR))
    im_grid = np.maximum(im_raw, IM_FLOOR)
    values = np.empty((mesh_rows, mesh_cols))
    for i, t in enumerate(im_grid):
        for j, r in enumerate(re_grid):
            values[i, j] = parity_f(float(r), float(t), terms)
    i, j = _matlab_argmin(values)
    return ParityResult(
        re_grid=re_grid,
        im_grid=im_grid,
        values=values,
        tau=Tau(float(re_grid[j]), float(im_grid[i])),
        f=float(values[i, j]),
        clamped_rows=clamped,
    )
