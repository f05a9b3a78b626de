"""Fisher-information-ratio measures for statistical proxies.

A proxy X carries only redundant information about a parameter given the
full observation Y, so the ratio of Fisher informations info_x / info_y lies
in [0, 1] and reads directly as relative efficiency: inference from the proxy
needs 1 / D times the sample size for equal precision.

The worked case is the MCAR Gaussian: X reveals Y ~ N(mu, sigma2) with
probability p_obs and hides it otherwise, giving info_y = 1 / sigma2,
info_x = p_obs / sigma2, and D = p_obs exactly. ``mc_fisher_mcar`` estimates
info_x by simulation as an independent check on the closed form.
``binary_r2`` is the companion helper for a pair of binary variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DepValue
from .errors import DegenerateTargetError, InputError, NumericalError
from .report import MeasureReport, percent

_CHUNK = 1 << 17


@dataclass(frozen=True)
class MCARGaussianModel:
    """Gaussian outcome observed completely at random with probability p_obs."""

    mu: float
    sigma2: float
    p_obs: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma2) and self.sigma2 > 0):
            raise InputError("sigma2 must be a finite positive number and mu finite")
        if not 0.0 <= self.p_obs <= 1.0:
            raise InputError("p_obs must lie in [0, 1]")

    def fisher_pair(self) -> "FisherPair":
        """Closed-form information about the mean in the proxy and the outcome."""
        return FisherPair(info_x=self.p_obs / self.sigma2, info_y=1.0 / self.sigma2)


@dataclass(frozen=True)
class FisherPair:
    """Fisher informations about the same parameter, proxy first."""

    info_x: float
    info_y: float

    def __post_init__(self):
        for name in ("info_x", "info_y"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise NumericalError(f"{name} must be finite and nonnegative, got {v!r}")


def mcar_measure(model: MCARGaussianModel) -> MeasureReport:
    """The closed-form MCAR efficiency measure: exactly the observation rate."""
    pair = model.fisher_pair()
    dep = DepValue.from_raw(model.p_obs)
    diagnostics = {
        "info_y": pair.info_y,
        "info_x": pair.info_x,
        "sigma2": model.sigma2,
    }
    if model.p_obs > 0:
        diagnostics["required_sample_ratio"] = 1.0 / model.p_obs
    return MeasureReport(
        measure="mcar_efficiency",
        dep=dep,
        interpretation=_efficiency_sentence(dep.value),
        diagnostics=diagnostics,
        provenance={"model": "mcar_gaussian", "p_obs": model.p_obs},
    )


def mc_fisher_mcar(model: MCARGaussianModel, n_rep: int, seed: int) -> FisherPair:
    """Monte Carlo estimate of the proxy's Fisher information about the mean.

    Simulates n_rep proxy observations and takes the variance of the score
    (the per-observation log-likelihood derivative at the true mean, which is
    (x - mu) / sigma2 when observed and 0 when hidden). Draws run in
    fixed-size chunks with child seeds spawned from ``seed``, accumulated in
    chunk order, so the result is reproducible and chunk-count independent
    of platform.
    """
    if n_rep < 1000:
        raise InputError(f"n_rep must be at least 1000, got {n_rep}")
    sd = math.sqrt(model.sigma2)
    n_chunks = -(-n_rep // _CHUNK)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    total = 0.0
    total_sq = 0.0
    done = 0
    for child in children:
        m = min(_CHUNK, n_rep - done)
        rng = np.random.default_rng(child)
        observed = rng.random(m) < model.p_obs
        draws = rng.normal(model.mu, sd, m)
        score = np.where(observed, (draws - model.mu) / model.sigma2, 0.0)
        total += float(score.sum())
        total_sq += float((score * score).sum())
        done += m
    mean = total / n_rep
    info_x = max(total_sq / n_rep - mean * mean, 0.0)
    return FisherPair(info_x=info_x, info_y=1.0 / model.sigma2)


def efficiency_ratio(pair: FisherPair) -> MeasureReport:
    """Relative efficiency info_x / info_y with the sample-size reading."""
    if pair.info_y == 0.0:
        raise DegenerateTargetError("the full observation carries zero information")
    dep = DepValue.from_raw(pair.info_x / pair.info_y)
    diagnostics = {"info_x": pair.info_x, "info_y": pair.info_y}
    if dep.value > 0:
        diagnostics["required_sample_ratio"] = 1.0 / dep.value
    return MeasureReport(
        measure="efficiency_ratio",
        dep=dep,
        interpretation=_efficiency_sentence(dep.value),
        diagnostics=diagnostics,
        provenance={"source": "fisher_pair"},
    )


def _efficiency_sentence(value: float) -> str:
    base = (
        f"Inference about the parameter from the proxy is {percent(value)} as efficient "
        "as from the full observation"
    )
    if value > 0:
        return base + (
            f"; matching its precision needs {1.0 / value:.3g} times the sample size."
        )
    return base + "; no proxy sample size recovers it."


def binary_r2(joint) -> MeasureReport:
    """Squared correlation of two binary variables, exactly from a 2x2 pmf.

    Symmetric in the two variables, unlike the directed framework measures.
    Used as a design ratio: tagging one marker needs roughly 1 / r^2 times
    the sample size that measuring the causal one would.
    """
    probs = np.asarray(joint.probs, dtype=np.float64)
    if probs.shape != (2, 2):
        raise InputError(f"binary r2 needs a 2x2 pmf, got shape {probs.shape}")
    px1 = float(probs[1].sum())
    py1 = float(probs[:, 1].sum())
    var_x = px1 * (1.0 - px1)
    var_y = py1 * (1.0 - py1)
    if var_x == 0.0 or var_y == 0.0:
        raise DegenerateTargetError("both margins must be nondegenerate for r2")
    cov = float(probs[1, 1]) - px1 * py1
    dep = DepValue.from_raw(cov * cov / (var_x * var_y))
    return MeasureReport(
        measure="binary_r2",
        dep=dep,
        interpretation=(
            f"The two binary variables share r2 = {dep.value:.4g}; a study reading one as a "
            f"stand-in for the other needs about {_inverse_text(dep.value)} the sample size."
        ),
        diagnostics={"covariance": cov, "var_x": var_x, "var_y": var_y},
        provenance={"pmf_shape": [2, 2]},
    )


def _inverse_text(value: float) -> str:
    if value <= 0:
        return "infinitely many times"
    return f"{1.0 / value:.3g} times"
