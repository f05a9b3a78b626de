"""Dependence measures for gridded curves.

Curves are rows sampled on a shared grid in [0, 1]; all inner products use
trapezoidal quadrature weights, so non-uniform grids are handled uniformly.
The pipeline is: center each set, eigendecompose the weighted covariance
operator (principal components of curves), project onto the retained
eigenfunctions, and regress outcome scores on predictor scores by least
squares. Three normalized fits come out of one fitted model:

- ``functional_r2``: share of total L2 variability explained;
- ``functional_timewise_r2``: standardized pointwise explained variability,
  averaged over the grid (low-variance points are excluded from the
  quadrature, which is renormalized over the surviving measure);
- ``functional_componentwise_r2``: explained score variability averaged over
  the retained outcome components, dividing each component's residual mean
  square by the first power of its eigenvalue (the score variance), so every
  term is a unitless per-component residual fraction.

The eigendecomposition solves the symmetric problem for
W**(1/2) C W**(1/2) and maps eigenvectors back through W**(-1/2); a plain
eigendecomposition of C would mis-scale eigenvalues on non-uniform grids.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import DepValue
from .errors import (
    DegenerateTargetError,
    GridMismatchError,
    InputError,
    LengthMismatchError,
    RankDeficientError,
    SingularDesignError,
)
from .report import MeasureReport, percent

_EIGEN_FLOOR = 1e-12
_VARIANCE_FLOOR = 1e-10
_COND_LIMIT = 1e12
_CV_FOLDS = 5


@dataclass(frozen=True)
class CurveSet:
    """n curves sampled on one strictly increasing grid inside [0, 1]."""

    grid: np.ndarray
    values: np.ndarray
    name: str = "curves"

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        if grid.ndim != 1 or grid.size < 4:
            raise InputError("grid must be a vector of at least 4 points")
        if not np.all(np.isfinite(grid)) or grid[0] < 0.0 or grid[-1] > 1.0:
            raise InputError("grid points must be finite and lie in [0, 1]")
        if np.any(np.diff(grid) <= 0):
            raise InputError("grid points must be strictly increasing")
        if values.ndim != 2 or values.shape[1] != grid.size:
            raise InputError(
                f"values must be an n x {grid.size} matrix, got shape {values.shape}"
            )
        if values.shape[0] < 3:
            raise InputError("need at least 3 curves")
        if not np.all(np.isfinite(values)):
            raise InputError("curve values must be finite")
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.grid.size


def trapezoid_weights(grid: np.ndarray) -> np.ndarray:
    """Quadrature weights w with sum(w * f) approximating the integral of f."""
    grid = np.asarray(grid, dtype=np.float64)
    w = np.empty_like(grid)
    w[0] = (grid[1] - grid[0]) / 2.0
    w[-1] = (grid[-1] - grid[-2]) / 2.0
    w[1:-1] = (grid[2:] - grid[:-2]) / 2.0
    return w


def center(curves: CurveSet) -> tuple[CurveSet, np.ndarray]:
    """Subtract the pointwise sample mean; returns (centered set, mean curve)."""
    mean = curves.values.mean(axis=0)
    return CurveSet(curves.grid, curves.values - mean, curves.name), mean


def covariance(curves: CurveSet) -> np.ndarray:
    """Pointwise sample covariance (1/n) sum_i Y_i(s) Y_i(t) of centered curves."""
    return (curves.values.T @ curves.values) / curves.n


@dataclass(frozen=True)
class EigenSystem:
    """Retained eigenstructure of a curve set's covariance operator.

    ``eigenvalues`` and ``eigenfunctions`` cover the k retained components;
    ``cum_frac`` runs over every component above the numerical floor, so
    entry k-1 is the variance fraction the retained ones capture.
    ``total_variance`` is the full operator trace (all eigenvalues).
    """

    eigenvalues: np.ndarray
    eigenfunctions: np.ndarray
    cum_frac: np.ndarray
    k: int
    grid: np.ndarray
    weights: np.ndarray
    total_variance: float

    def __post_init__(self):
        for name in ("eigenvalues", "eigenfunctions", "cum_frac", "grid", "weights"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.k < 1 or self.eigenvalues.shape != (self.k,):
            raise InputError("need one positive eigenvalue per retained component")
        if np.any(self.eigenvalues <= 0) or np.any(np.diff(self.eigenvalues) > 0):
            raise InputError("eigenvalues must be positive and nonincreasing")
        if self.eigenfunctions.shape != (self.k, self.grid.size):
            raise InputError("eigenfunction rows must match the retained count and grid")

    @property
    def captured_frac(self) -> float:
        return float(self.cum_frac[self.k - 1])


def fpca(curves: CurveSet, threshold: float = 0.85) -> EigenSystem:
    """Principal components of centered curves under quadrature weighting.

    Retains the smallest k whose cumulative eigenvalue fraction reaches
    ``threshold`` (over the components above the floor 1e-12 * largest).
    Eigenfunction signs are fixed so each row's largest-magnitude entry is
    positive, taking the lowest index on ties.
    """
    if not 0.0 < threshold <= 1.0:
        raise InputError(f"threshold must lie in (0, 1], got {threshold!r}")
    w = trapezoid_weights(curves.grid)
    sqrt_w = np.sqrt(w)
    sym = covariance(curves) * np.outer(sqrt_w, sqrt_w)
    eigvals, eigvecs = np.linalg.eigh((sym + sym.T) / 2.0)
    eigvals, eigvecs = eigvals[::-1], eigvecs[:, ::-1]
    total_variance = float(eigvals.sum())

    if eigvals[0] <= 0.0:
        raise RankDeficientError("the covariance operator has no positive eigenvalue")
    eligible = int(np.sum(eigvals > _EIGEN_FLOOR * eigvals[0]))
    running = np.cumsum(eigvals[:eligible])
    cum_frac = running / running[-1]
    # exact-equality thresholds like 0.8 on cum_frac 0.8 must retain, so
    # compare with a hair of slack
    k = int(np.searchsorted(cum_frac, threshold - 1e-12, side="left")) + 1
    if k > eligible:
        raise RankDeficientError(
            f"only {eligible} components exceed the eigenvalue floor; "
            f"threshold {threshold} is unreachable"
        )

    funcs = eigvecs[:, :k].T / sqrt_w
    for row in funcs:
        peak = int(np.argmax(np.abs(row)))
        if row[peak] < 0:
            row *= -1.0
    return EigenSystem(
        eigenvalues=eigvals[:k],
        eigenfunctions=funcs,
        cum_frac=cum_frac,
        k=k,
        grid=curves.grid,
        weights=w,
        total_variance=total_variance,
    )


def project(curves: CurveSet, basis: EigenSystem) -> np.ndarray:
    """Quadrature inner products of each curve with each retained eigenfunction."""
    if curves.grid.shape != basis.grid.shape or not np.array_equal(curves.grid, basis.grid):
        raise GridMismatchError("curves and basis are sampled on different grids")
    return (curves.values * basis.weights) @ basis.eigenfunctions.T


@dataclass(frozen=True)
class ScoreModel:
    """Least-squares fit of outcome scores on predictor scores."""

    x_scores: np.ndarray
    y_scores: np.ndarray
    beta_hat: np.ndarray
    fitted: np.ndarray
    condition_number: float

    def __post_init__(self):
        for name in ("x_scores", "y_scores", "beta_hat", "fitted"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def p(self) -> int:
        return self.x_scores.shape[1]

    @property
    def d(self) -> int:
        return self.y_scores.shape[1]


def fit_flm(x_scores: np.ndarray, y_scores: np.ndarray) -> ScoreModel:
    """Ordinary least squares per outcome column, no intercept.

    With n equal to p and a generic design this interpolates exactly; fewer
    rows than columns, or a gram-matrix condition number beyond 1e12, raise
    SingularDesign.
    """
    x = np.atleast_2d(np.asarray(x_scores, dtype=np.float64))
    y = np.atleast_2d(np.asarray(y_scores, dtype=np.float64))
    if x.shape[0] != y.shape[0]:
        raise LengthMismatchError(
            f"x scores have {x.shape[0]} rows but y scores have {y.shape[0]}"
        )
    n, p = x.shape
    if n < p:
        raise SingularDesignError(f"{n} observations cannot identify {p} coefficients")
    xtx = x.T @ x
    condition = float(np.linalg.cond(xtx))
    if not np.isfinite(condition) or condition > _COND_LIMIT:
        raise SingularDesignError(
            f"gram matrix condition number {condition:.3g} exceeds {_COND_LIMIT:.0e}"
        )
    beta = np.linalg.solve(xtx, x.T @ y)
    return ScoreModel(
        x_scores=x,
        y_scores=y,
        beta_hat=beta,
        fitted=x @ beta,
        condition_number=condition,
    )


@dataclass(frozen=True)
class FunctionalResult:
    """The three curve-dependence reports plus plot-ready pointwise fit data."""

    reports: tuple[MeasureReport, MeasureReport, MeasureReport]
    grid: np.ndarray
    r2_curve: np.ndarray
    included: np.ndarray
    x_basis: EigenSystem
    y_basis: EigenSystem
    model: ScoreModel
    cv_sse: tuple[float, ...] | None = field(default=None)


def _cv_select_p(x_scores: np.ndarray, y_scores: np.ndarray) -> tuple[int, tuple[float, ...]]:
    """Pick the component count minimizing 5-fold out-of-fold score error.

    Folds are contiguous index blocks (deterministic). Candidates that leave
    a singular design in some fold are scored infinite; ties go to the
    smaller count.
    """
    n, k = x_scores.shape
    if n < 2 * _CV_FOLDS:
        raise InputError(f"cross-validation needs at least {2 * _CV_FOLDS} curves, got {n}")
    folds = np.array_split(np.arange(n), _CV_FOLDS)
    sse = []
    for p in range(1, k + 1):
        err = 0.0
        for fold in folds:
            train = np.setdiff1d(np.arange(n), fold, assume_unique=True)
            try:
                model = fit_flm(x_scores[train, :p], y_scores[train])
            except SingularDesignError:
                err = np.inf
                break
            resid = y_scores[fold] - x_scores[fold, :p] @ model.beta_hat
            err += float((resid * resid).sum())
        sse.append(err)
    best = int(np.argmin(sse)) + 1
    return best, tuple(sse)


def functional_measures(
    x: CurveSet,
    y: CurveSet,
    threshold_x: float = 0.85,
    threshold_y: float = 0.85,
    cv_p: bool = False,
) -> FunctionalResult:
    """Fit outcome curves on predictor curves and report the three ratios.

    ``cv_p`` replaces the variance-threshold choice of predictor components
    with 5-fold cross-validation over 1..k candidates (k from the threshold).
    """
    if x.n != y.n:
        raise LengthMismatchError(f"x has {x.n} curves but y has {y.n}")
    xc, _ = center(x)
    yc, _ = center(y)
    x_basis = fpca(xc, threshold_x)
    y_basis = fpca(yc, threshold_y)
    x_scores = project(xc, x_basis)
    y_scores = project(yc, y_basis)

    cv_sse = None
    if cv_p:
        p, cv_sse = _cv_select_p(x_scores, y_scores)
        x_scores = x_scores[:, :p]
    model = fit_flm(x_scores, y_scores)
    n, d, p = y.n, y_basis.k, model.p

    w = y_basis.weights
    fitted_curves = model.fitted @ y_basis.eigenfunctions
    residuals = yc.values - fitted_curves

    # total L2 variability and its unexplained part, quadrature-weighted
    ss_total = float(np.sum((yc.values * yc.values) @ w))
    if ss_total == 0.0:
        raise DegenerateTargetError("outcome curves have zero variability")
    ss_residual = float(np.sum((residuals * residuals) @ w))
    d1 = DepValue.from_raw(1.0 - ss_residual / ss_total)

    # pointwise variance, exclusion of near-degenerate grid points, and the
    # standardized time average over the surviving measure
    pointwise_var = (yc.values * yc.values).sum(axis=0) / n
    included = pointwise_var >= _VARIANCE_FLOOR * float(pointwise_var.max())
    surviving = float(w[included].sum())
    resid_var = (residuals * residuals).sum(axis=0) / n
    standardized = resid_var[included] / pointwise_var[included]
    d2 = DepValue.from_raw(1.0 - float(standardized @ w[included]) / surviving)
    r2_curve = np.full(y.m, np.nan)
    r2_curve[included] = 1.0 - resid_var[included] / pointwise_var[included]

    # per-component residual fraction of score variance, averaged over the
    # retained outcome components; eigenvalue enters at the first power
    score_resid = y_scores - model.fitted
    component_fractions = (score_resid * score_resid).sum(axis=0) / n / y_basis.eigenvalues
    d3 = DepValue.from_raw(1.0 - float(component_fractions.mean()))

    shared = {
        "n": n,
        "p": p,
        "d": d,
        "x_captured_frac": float(x_basis.cum_frac[p - 1]),
        "y_captured_frac": y_basis.captured_frac,
        "condition_number": model.condition_number,
        "excluded_points": int(np.sum(~included)),
    }
    if cv_sse is not None:
        shared["cv_folds"] = _CV_FOLDS
    reports = (
        MeasureReport(
            measure="functional_r2",
            dep=d1,
            interpretation=(
                f"The curve-on-curve fit explains {percent(d1.value)} of the total "
                "squared variability of the outcome curves."
            ),
            diagnostics={**shared, "ss_residual": ss_residual, "ss_total": ss_total},
            provenance={"x_name": x.name, "y_name": y.name},
        ),
        MeasureReport(
            measure="functional_timewise_r2",
            dep=d2,
            interpretation=(
                f"Averaged over the grid, the fit explains {percent(d2.value)} of the "
                "standardized pointwise variability of the outcome curves."
            ),
            diagnostics={**shared, "surviving_measure": surviving},
            provenance={"x_name": x.name, "y_name": y.name},
        ),
        MeasureReport(
            measure="functional_componentwise_r2",
            dep=d3,
            interpretation=(
                f"Averaged over the {d} retained principal components, the fit explains "
                f"{percent(d3.value)} of the outcome score variability."
            ),
            diagnostics={
                **shared,
                "eigenvalue_power": 1,
                "component_residual_fractions": [float(v) for v in component_fractions],
            },
            provenance={"x_name": x.name, "y_name": y.name},
        ),
    )
    return FunctionalResult(
        reports=reports,
        grid=y.grid,
        r2_curve=r2_curve,
        included=included,
        x_basis=x_basis,
        y_basis=y_basis,
        model=model,
        cv_sse=cv_sse,
    )
