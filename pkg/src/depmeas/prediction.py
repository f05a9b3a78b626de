"""Penalty-based prediction measures on sampled data.

The dependence value is the proportional drop in empirical prediction risk
when the best X-conditional predictor replaces the best constant one:
``raw = 1 - conditional_risk / baseline_risk``. Three penalties are built in,
each with its own optimal constant:

==========  =====================  ==========================
penalty     loss on residual r     best constant
==========  =====================  ==========================
L2          r**2                   mean
L1          abs(r)                 lower median
ZeroOne     1 if r != 0 else 0     mode (smallest on ties)
==========  =====================  ==========================

With the L2 penalty the measure is the empirical correlation ratio. Numeric
predictors are grouped by equal-frequency rank bins (default count
ceil(n ** (1/3))); categorical predictors use their observed categories.
Predictors restricted to a smaller function class than "any function of the
groups" are not modeled; within each group the unconstrained optimum is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .core import DepValue
from .errors import (
    DegenerateTargetError,
    EmptyGroupError,
    EmptyInputError,
    InputError,
    LengthMismatchError,
)
from .report import MeasureReport, percent

PenaltyKind = Literal["L2", "L1", "ZeroOne"]

_INTERPRETATIONS = {
    "L2": "Conditioning on the predictor explains {pct} of the variance of the outcome.",
    "L1": "Conditioning on the predictor removes {pct} of the mean absolute prediction error.",
    "ZeroOne": (
        "Knowing the predictor cuts the misclassification rate for the outcome by {pct} "
        "relative to always predicting the most common value."
    ),
}


@dataclass(frozen=True)
class Penalty:
    """A nonnegative loss on prediction residuals with evaluate(0) = 0."""

    kind: PenaltyKind

    def __post_init__(self):
        if self.kind not in ("L2", "L1", "ZeroOne"):
            raise InputError(f"unknown penalty kind {self.kind!r}")

    def evaluate(self, residual) -> np.ndarray:
        r = np.asarray(residual, dtype=np.float64)
        if self.kind == "L2":
            return r * r
        if self.kind == "L1":
            return np.abs(r)
        return (r != 0.0).astype(np.float64)

    def best_constant(self, y: np.ndarray) -> float:
        """The constant minimizing the empirical risk, with fixed tie-breaks."""
        if len(y) == 0:
            raise EmptyInputError("cannot fit a predictor to an empty vector")
        if self.kind == "L2":
            return float(np.mean(y))
        if self.kind == "L1":
            # lower median: risk is flat between the two middle order
            # statistics on even n, so pin the smaller for reproducibility
            return float(np.sort(y)[(len(y) - 1) // 2])
        values, counts = np.unique(y, return_counts=True)
        # np.unique sorts ascending and argmax takes the first maximum,
        # which is the smallest-value mode
        return float(values[int(np.argmax(counts))])

    def risk(self, y: np.ndarray, predicted) -> float:
        return float(np.mean(self.evaluate(np.asarray(y, dtype=np.float64) - predicted)))


def default_bins(n: int) -> int:
    return max(1, min(math.ceil(n ** (1.0 / 3.0)), n))


@dataclass(frozen=True)
class Predictor:
    """A fitted constant, per-category, or rank-binned predictor.

    ``assignments`` are the fit-time group indices, so in-sample fitted values
    are exactly ``values[assignments]`` even when ties straddle bin
    boundaries. ``predict`` maps new data through category labels or bin
    edges, falling back to the global constant for unseen categories.
    """

    kind: Literal["constant", "per_group", "binned"]
    penalty: Penalty
    constant: float
    values: np.ndarray
    assignments: np.ndarray
    labels: tuple[str, ...] | None = None
    edges: np.ndarray | None = None

    def __post_init__(self):
        for name in ("values", "assignments", "edges"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.asarray(arr)
                arr.setflags(write=False)
                object.__setattr__(self, name, arr)

    def fitted(self) -> np.ndarray:
        """In-sample fitted values, aligned with the fit data."""
        return self.values[self.assignments]

    def predict(self, x: np.ndarray) -> np.ndarray:
        if self.kind == "constant":
            return np.full(len(x), self.constant)
        if self.kind == "per_group":
            index = {lab: i for i, lab in enumerate(self.labels)}
            return np.asarray(
                [self.values[index[v]] if v in index else self.constant for v in x.astype(str)]
            )
        bins = np.searchsorted(self.edges, np.asarray(x, dtype=np.float64), side="right")
        return self.values[bins]

    def unseen(self, x: np.ndarray) -> int:
        """Count of entries a per-group predictor has no fitted group for."""
        if self.kind != "per_group":
            return 0
        return int(np.sum(~np.isin(x.astype(str), self.labels)))


def fit_constant(y: np.ndarray, penalty: Penalty) -> Predictor:
    """The best constant predictor under the penalty."""
    y = np.asarray(y, dtype=np.float64)
    if y.size == 0:
        raise EmptyInputError("cannot fit a predictor to an empty vector")
    c = penalty.best_constant(y)
    return Predictor(
        kind="constant",
        penalty=penalty,
        constant=c,
        values=np.asarray([c]),
        assignments=np.zeros(y.size, dtype=np.intp),
    )


def _bin_assignments(x: np.ndarray, bins: int) -> tuple[np.ndarray, np.ndarray]:
    """Equal-frequency bin indices via stable ranks, plus out-of-sample edges."""
    n = len(x)
    order = np.argsort(x, kind="stable")
    assignments = np.empty(n, dtype=np.intp)
    assignments[order] = np.arange(n) * bins // n
    # edges[j] is the smallest fit value ranked into bin j+1; searchsorted
    # side="right" then sends new points at or above it into that bin
    boundary_ranks = [(n * (j + 1) + bins - 1) // bins for j in range(bins - 1)]
    edges = x[order][boundary_ranks] if bins > 1 else np.empty(0)
    return assignments, edges


def fit_conditional(
    y: np.ndarray, x: np.ndarray, penalty: Penalty, bins: int | None = None
) -> Predictor:
    """The best X-conditional predictor: per-category or per-rank-bin constants.

    ``bins`` only applies to numeric x and defaults to ceil(n ** (1/3)),
    capped at n so every bin is nonempty by construction.
    """
    y = np.asarray(y, dtype=np.float64)
    x = np.asarray(x)
    if y.size == 0:
        raise EmptyInputError("cannot fit a predictor to an empty vector")
    if len(x) != len(y):
        raise LengthMismatchError(f"y has {len(y)} rows but x has {len(x)}")

    constant = penalty.best_constant(y)
    if np.issubdtype(x.dtype, np.number):
        b = default_bins(len(y)) if bins is None else min(max(int(bins), 1), len(y))
        assignments, edges = _bin_assignments(np.asarray(x, dtype=np.float64), b)
        n_groups, labels = b, None
    else:
        labels, assignments = np.unique(x.astype(str), return_inverse=True)
        n_groups, edges = len(labels), None
        labels = tuple(str(v) for v in labels)

    values = np.empty(n_groups)
    for g in range(n_groups):
        members = y[assignments == g]
        if members.size == 0:
            raise EmptyGroupError(f"group {g} is empty")
        values[g] = penalty.best_constant(members)
    return Predictor(
        kind="per_group" if labels is not None else "binned",
        penalty=penalty,
        constant=constant,
        values=values,
        assignments=assignments,
        labels=labels,
        edges=edges,
    )


def prediction_measure(
    y: np.ndarray,
    x: np.ndarray,
    penalty: Penalty,
    bins: int | None = None,
    holdout_fraction: float = 0.0,
    seed: int = 0,
) -> MeasureReport:
    """Proportional risk reduction of the conditional predictor over the constant.

    By default both predictors are fit and scored on the full sample, where
    the reduction is nonnegative by construction. A positive
    ``holdout_fraction`` scores them on a held-out split instead (seeded
    shuffle); the raw value may then be negative and is clamped with a flag.
    """
    y = np.asarray(y, dtype=np.float64)
    x = np.asarray(x)
    if len(x) != len(y):
        raise LengthMismatchError(f"y has {len(y)} rows but x has {len(x)}")
    if not 0.0 <= holdout_fraction < 1.0:
        raise InputError("holdout_fraction must lie in [0, 1)")

    if holdout_fraction > 0.0:
        n_eval = math.ceil(holdout_fraction * len(y))
        if n_eval >= len(y):
            raise InputError("holdout leaves no data to fit on")
        perm = np.random.default_rng(seed).permutation(len(y))
        fit_idx, eval_idx = perm[n_eval:], perm[:n_eval]
    else:
        fit_idx = eval_idx = np.arange(len(y))

    baseline = fit_constant(y[fit_idx], penalty)
    conditional = fit_conditional(y[fit_idx], x[fit_idx], penalty, bins=bins)

    if holdout_fraction > 0.0:
        base_pred = baseline.predict(x[eval_idx])
        cond_pred = conditional.predict(x[eval_idx])
    else:
        base_pred = baseline.fitted()
        cond_pred = conditional.fitted()
    base_risk = penalty.risk(y[eval_idx], base_pred)
    cond_risk = penalty.risk(y[eval_idx], cond_pred)
    if base_risk == 0.0:
        raise DegenerateTargetError(
            "the baseline predictor already has zero risk; no reduction is defined"
        )

    dep = DepValue.from_raw(1.0 - cond_risk / base_risk)
    diagnostics = {
        "penalty": penalty.kind,
        "baseline_risk": base_risk,
        "conditional_risk": cond_risk,
        "baseline_constant": baseline.constant,
        "n_groups": len(conditional.values),
        "grouping": conditional.kind,
    }
    if conditional.kind == "binned":
        diagnostics["bins"] = len(conditional.values)
    if holdout_fraction > 0.0:
        diagnostics.update(
            n_fit=len(fit_idx),
            n_eval=len(eval_idx),
            holdout_fraction=holdout_fraction,
            unseen_categories=conditional.unseen(x[eval_idx]),
        )
    return MeasureReport(
        measure=f"prediction_{penalty.kind.lower()}",
        dep=dep,
        interpretation=_INTERPRETATIONS[penalty.kind].format(pct=percent(dep.value)),
        diagnostics=diagnostics,
        provenance={"n": len(y)},
    )
