"""Exact measures on finite joint pmfs and their plug-in estimators.

Three ways of reading "how much does knowing X help with Y" for categorical
data, each an :class:`~depmeas.core.InformationMeasure` normalized by the
corresponding self-information:

- correlation ratio: variance of the conditional mean over the variance of Y
  (needs numeric outcome codes);
- entropy ratio: mutual information over the entropy of Y, in nats;
- 0-1 ratio: reduction in misclassification error of the argmax predictor
  relative to always predicting the marginal mode.

``empirical_triplet`` is the sample version for a binary 0/1 outcome and a
categorical predictor: the correlation ratio (Efron's R-squared), the binomial
deviance ratio, and the 0-1 error ratio, all from within-category means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .core import DepValue, InfoValue, InformationMeasure, normalize
from .errors import (
    DegenerateTargetError,
    InfiniteDevianceError,
    InputError,
    MissingCodesError,
    ZeroBaselineError,
)
from .report import MeasureReport, percent
from .tables import SampleTable

_SUM_TOL = 1e-12
#: roundoff guard: exact nonnegative quantities may come out at -1e-16 in floats
_NEG_TOL = 1e-12


def _as_info(value: float) -> InfoValue:
    if -_NEG_TOL <= value < 0.0:
        value = 0.0
    return InfoValue(value)


@dataclass(frozen=True)
class JointPMF:
    """A finite joint pmf over labeled X and Y supports.

    ``probs[i, j]`` is P(X = x_labels[i], Y = y_labels[j]). ``y_codes`` gives a
    numeric value per Y label; it is required by the correlation ratio and
    optional otherwise.
    """

    x_labels: tuple[str, ...]
    y_labels: tuple[str, ...]
    probs: np.ndarray
    y_codes: np.ndarray | None = None

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.ndim != 2 or probs.shape != (len(self.x_labels), len(self.y_labels)):
            raise InputError(
                f"probability matrix shape {probs.shape} does not match "
                f"{len(self.x_labels)} x labels and {len(self.y_labels)} y labels"
            )
        if not np.all(np.isfinite(probs)):
            raise InputError("probabilities must be finite")
        if np.any(probs < 0):
            raise InputError("probabilities must be nonnegative")
        total = float(probs.sum())
        if abs(total - 1.0) > _SUM_TOL:
            raise InputError(f"probabilities sum to {total!r}, expected 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "x_labels", tuple(str(l) for l in self.x_labels))
        object.__setattr__(self, "y_labels", tuple(str(l) for l in self.y_labels))
        if self.y_codes is not None:
            codes = np.asarray(self.y_codes, dtype=np.float64)
            if codes.shape != (len(self.y_labels),) or not np.all(np.isfinite(codes)):
                raise InputError("y_codes must hold one finite number per y label")
            codes.setflags(write=False)
            object.__setattr__(self, "y_codes", codes)

    @classmethod
    def from_matrix(
        cls,
        probs,
        x_labels: Sequence[str] | None = None,
        y_labels: Sequence[str] | None = None,
        y_codes: Sequence[float] | None = None,
    ) -> "JointPMF":
        probs = np.asarray(probs, dtype=np.float64)
        if probs.ndim != 2:
            raise InputError("probability matrix must be two-dimensional")
        nx, ny = probs.shape
        x_labels = tuple(x_labels) if x_labels is not None else tuple(f"x{i}" for i in range(nx))
        y_labels = tuple(y_labels) if y_labels is not None else tuple(f"y{j}" for j in range(ny))
        return cls(x_labels=x_labels, y_labels=y_labels, probs=probs, y_codes=y_codes)

    def x_marginal(self) -> np.ndarray:
        return self.probs.sum(axis=1)

    def y_marginal(self) -> np.ndarray:
        return self.probs.sum(axis=0)

    def factorized(self) -> "JointPMF":
        """The independent joint with the same margins."""
        outer = np.outer(self.x_marginal(), self.y_marginal())
        outer /= outer.sum()
        return JointPMF(self.x_labels, self.y_labels, outer, self.y_codes)

    def coarsen_x(self, mapping: Mapping[str, str]) -> "JointPMF":
        """Merge X categories under a deterministic relabeling f(X).

        New labels are ordered by first appearance in the original support, so
        bijective mappings are plain relabelings.
        """
        targets: list[str] = []
        for lab in self.x_labels:
            t = str(mapping[lab])
            if t not in targets:
                targets.append(t)
        new_probs = np.zeros((len(targets), len(self.y_labels)))
        for i, lab in enumerate(self.x_labels):
            new_probs[targets.index(str(mapping[lab]))] += self.probs[i]
        return JointPMF(tuple(targets), self.y_labels, new_probs, self.y_codes)


# ---------------------------------------------------------------------------
# concrete information measures (exact on pmfs)
# ---------------------------------------------------------------------------


class SquaredErrorMeasure(InformationMeasure):
    """Reduction in squared prediction error: Var(E[Y|X]), normalized by Var(Y)."""

    name = "squared_error"

    def info(self, joint: JointPMF) -> InfoValue:
        if joint.y_codes is None:
            raise MissingCodesError("the correlation ratio needs numeric y codes")
        px = joint.x_marginal()
        mean_y = float(joint.y_marginal() @ joint.y_codes)
        value = 0.0
        for i in range(len(joint.x_labels)):
            if px[i] > 0:
                cond_mean = float(joint.probs[i] @ joint.y_codes) / px[i]
                value += px[i] * (cond_mean - mean_y) ** 2
        return _as_info(value)

    def self_info(self, joint: JointPMF) -> InfoValue:
        if joint.y_codes is None:
            raise MissingCodesError("the correlation ratio needs numeric y codes")
        py = joint.y_marginal()
        mean_y = float(py @ joint.y_codes)
        return _as_info(float(py @ (joint.y_codes - mean_y) ** 2))


class EntropyMeasure(InformationMeasure):
    """Reduction in Shannon entropy of Y (mutual information), in nats."""

    name = "entropy"

    @staticmethod
    def _entropy(p: np.ndarray) -> float:
        p = p[p > 0]
        return float(-(p * np.log(p)).sum())

    def info(self, joint: JointPMF) -> InfoValue:
        return _as_info(self.self_info(joint).value - self.conditional_entropy(joint))

    def self_info(self, joint: JointPMF) -> InfoValue:
        return _as_info(self._entropy(joint.y_marginal()))

    def conditional_entropy(self, joint: JointPMF) -> float:
        px = joint.x_marginal()
        h = 0.0
        for i in range(len(joint.x_labels)):
            if px[i] > 0:
                h += px[i] * self._entropy(joint.probs[i] / px[i])
        return h


class ZeroOneMeasure(InformationMeasure):
    """Reduction in misclassification error of the argmax predictor."""

    name = "zero_one"

    def info(self, joint: JointPMF) -> InfoValue:
        return _as_info(self.self_info(joint).value - self.conditional_error(joint))

    def self_info(self, joint: JointPMF) -> InfoValue:
        # predicting Y from Y itself makes no errors, so the information is the
        # whole baseline error of the marginal-mode predictor
        return _as_info(1.0 - float(joint.y_marginal().max()))

    def conditional_error(self, joint: JointPMF) -> float:
        return 1.0 - float(joint.probs.max(axis=1).sum())


PMF_MEASURES: dict[str, InformationMeasure] = {
    m.name: m for m in (SquaredErrorMeasure(), EntropyMeasure(), ZeroOneMeasure())
}


# ---------------------------------------------------------------------------
# reports on pmfs
# ---------------------------------------------------------------------------


def correlation_ratio_pmf(joint: JointPMF) -> MeasureReport:
    """Var(E[Y|X]) / Var(Y), exactly from the pmf."""
    m = SquaredErrorMeasure()
    i_xy, i_yy = m.info(joint), m.self_info(joint)
    if i_yy.value == 0.0:
        raise DegenerateTargetError("the outcome has zero variance; correlation ratio undefined")
    dep = normalize(i_xy, i_yy)
    return MeasureReport(
        measure="correlation_ratio",
        dep=dep,
        interpretation=(
            f"Conditioning on the predictor explains {percent(dep.value)} "
            "of the variance of the outcome."
        ),
        diagnostics={
            "variance_y": i_yy.value,
            "variance_conditional_means": i_xy.value,
            "mean_y": float(joint.y_marginal() @ joint.y_codes),
        },
        provenance={"pmf_shape": list(joint.probs.shape)},
    )


def entropy_ratio_pmf(joint: JointPMF) -> MeasureReport:
    """Mutual information over H(Y), in nats, exactly from the pmf."""
    m = EntropyMeasure()
    i_yy = m.self_info(joint)
    if i_yy.value == 0.0:
        raise DegenerateTargetError("the outcome has zero entropy; entropy ratio undefined")
    i_xy = m.info(joint)
    dep = normalize(i_xy, i_yy)
    return MeasureReport(
        measure="entropy_ratio",
        dep=dep,
        interpretation=(
            f"Knowing the predictor removes {percent(dep.value)} of the uncertainty "
            "(Shannon entropy) in the outcome."
        ),
        diagnostics={
            "entropy_y_nats": i_yy.value,
            "conditional_entropy_nats": m.conditional_entropy(joint),
            "mutual_information_nats": i_xy.value,
        },
        provenance={"pmf_shape": list(joint.probs.shape)},
    )


def zero_one_ratio_pmf(joint: JointPMF) -> MeasureReport:
    """Reduction in argmax misclassification error, exactly from the pmf."""
    m = ZeroOneMeasure()
    i_yy = m.self_info(joint)
    if i_yy.value == 0.0:
        raise DegenerateTargetError(
            "one outcome label has probability 1; the baseline makes no errors"
        )
    i_xy = m.info(joint)
    dep = normalize(i_xy, i_yy)
    return MeasureReport(
        measure="zero_one_ratio",
        dep=dep,
        interpretation=(
            f"Knowing the predictor cuts the misclassification rate for the outcome by "
            f"{percent(dep.value)} relative to always predicting the most common label."
        ),
        diagnostics={
            "baseline_error": i_yy.value,
            "conditional_error": m.conditional_error(joint),
        },
        provenance={"pmf_shape": list(joint.probs.shape)},
    )


# ---------------------------------------------------------------------------
# empirical estimators for binary Y / categorical X
# ---------------------------------------------------------------------------


def empirical_joint(table: SampleTable, y_col: str, x_col: str) -> JointPMF:
    """The plug-in joint pmf of two columns (cell counts over n)."""
    x = table.column(x_col).astype(str)
    y = table.column(y_col)
    numeric_y = table.kind(y_col) == "numeric"
    y_str = np.asarray([format(v, "g") for v in y]) if numeric_y else y.astype(str)
    x_labels = [str(v) for v in np.unique(x)]
    y_order = np.unique(y) if numeric_y else np.unique(y_str)
    y_labels = [format(v, "g") for v in y_order] if numeric_y else [str(v) for v in y_order]
    counts = np.zeros((len(x_labels), len(y_labels)))
    xi = {lab: i for i, lab in enumerate(x_labels)}
    yi = {lab: j for j, lab in enumerate(y_labels)}
    for a, b in zip(x, y_str):
        counts[xi[a], yi[b]] += 1.0
    return JointPMF(
        tuple(x_labels),
        tuple(y_labels),
        counts / table.n,
        y_codes=np.asarray(y_order, dtype=np.float64) if numeric_y else None,
    )


def _group_counts(y: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    labels, inverse = np.unique(x, return_inverse=True)
    n_per = np.bincount(inverse, minlength=len(labels)).astype(np.float64)
    ones_per = np.bincount(inverse, weights=y, minlength=len(labels))
    return labels, n_per, ones_per


def empirical_triplet(
    table: SampleTable, y_col: str, x_col: str
) -> tuple[MeasureReport, MeasureReport, MeasureReport]:
    """Correlation ratio, deviance ratio, and 0-1 ratio for binary Y and categorical X.

    Fitted values are the within-category means of Y. Ties at a fitted value of
    exactly 0.5 predict 1 (the comparison is >=); a tie diagnostic is recorded
    because the choice is arbitrary there.
    """
    y = table.column(y_col)
    if table.kind(y_col) != "numeric" or not np.all(np.isin(y, (0.0, 1.0))):
        raise InputError(f"column {y_col!r} must be binary 0/1")
    if table.kind(x_col) != "categorical":
        raise InputError(f"column {x_col!r} must be categorical")
    x = table.column(x_col)

    n = float(table.n)
    m = float(y.sum())
    ybar = m / n
    if ybar == 0.0 or ybar == 1.0:
        raise DegenerateTargetError("the outcome is constant; no dependence measure is defined")

    labels, n_per, ones_per = _group_counts(y, x)
    yhat = ones_per / n_per

    # correlation ratio (Efron's R-squared): 1 - residual SS / total SS,
    # using the exact identity sum (y - p)^2 = m - m^2/n for 0/1 data
    ss_res = float(np.sum(ones_per - ones_per**2 / n_per))
    ss_tot = m - m**2 / n
    d1 = DepValue.from_raw(1.0 - ss_res / ss_tot)

    # deviance ratio: groupwise binomial deviance against the null deviance,
    # with 0*log(0) terms dropped
    zeros_per = n_per - ones_per
    if np.any((ones_per > 0) & (yhat == 0.0)) or np.any((zeros_per > 0) & (yhat == 1.0)):
        raise InfiniteDevianceError(
            "a fitted probability of 0 or 1 contradicts an observed outcome"
        )
    dev_cond = 0.0
    for ones, zeros, p in zip(ones_per, zeros_per, yhat):
        if ones > 0:
            dev_cond -= ones * math.log(p)
        if zeros > 0:
            dev_cond -= zeros * math.log(1.0 - p)
    dev_null = -m * math.log(ybar) - (n - m) * math.log(1.0 - ybar)
    d2 = DepValue.from_raw(1.0 - dev_cond / dev_null)

    # 0-1 ratio: thresholded fitted values against the marginal-mode predictor
    predict_one = yhat >= 0.5
    errors_cond = float(np.sum(np.where(predict_one, zeros_per, ones_per)))
    errors_base = n - m if ybar >= 0.5 else m
    if errors_base == 0.0:
        raise ZeroBaselineError("the baseline predictor makes no errors")
    d3 = DepValue.from_raw(1.0 - errors_cond / errors_base)

    ties = int(np.sum(yhat == 0.5))
    provenance = {
        "y_column": y_col,
        "x_column": x_col,
        "n": int(n),
        "x_categories": len(labels),
    }
    shared = {"mean_y": ybar, "n_groups": len(labels)}

    r1 = MeasureReport(
        measure="correlation_ratio",
        dep=d1,
        interpretation=(
            f"Conditioning on {x_col!r} explains {percent(d1.value)} "
            f"of the variance of {y_col!r}."
        ),
        diagnostics={**shared, "ss_residual": ss_res, "ss_total": ss_tot},
        provenance=provenance,
    )
    r2 = MeasureReport(
        measure="deviance_ratio",
        dep=d2,
        interpretation=(
            f"Conditioning on {x_col!r} reduces the binomial deviance "
            f"of {y_col!r} by {percent(d2.value)}."
        ),
        diagnostics={**shared, "deviance_conditional": dev_cond, "deviance_null": dev_null},
        provenance=provenance,
    )
    d3_diag = {
        **shared,
        "errors_conditional": errors_cond,
        "errors_baseline": errors_base,
        "ties_at_half": ties,
    }
    if ties:
        d3_diag["tie_note"] = (
            f"{ties} categor{'y has' if ties == 1 else 'ies have'} a fitted value of "
            "exactly 0.5; they predict 1 by the >= convention"
        )
    r3 = MeasureReport(
        measure="zero_one_ratio",
        dep=d3,
        interpretation=(
            f"Knowing {x_col!r} cuts the misclassification rate for {y_col!r} by "
            f"{percent(d3.value)} relative to always predicting the most common label."
        ),
        diagnostics=d3_diag,
        provenance=provenance,
    )
    return r1, r2, r3
