"""Property harness: run the exact axiom checks over random joint pmfs.

Each generated joint is checked for every registered pmf measure against the
information-measure properties (nonnegativity, self-information bound, zero
under independence) plus randomized transform checks: one surjective
coarsening of the X support and one bijective relabeling per joint. A passing
suite certifies the implementations on those instances, nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AxiomReport, InformationMeasure, XTransform, axiom_check
from .datagen import gen_joint_pmf
from .discrete import PMF_MEASURES
from .errors import InputError


def random_transforms(x_labels: tuple[str, ...], rng: np.random.Generator) -> list[XTransform]:
    """One random surjective coarsening and one random bijective relabeling."""
    nx = len(x_labels)
    n_targets = int(rng.integers(1, nx))
    placement = rng.permutation(nx)
    coarsen = {}
    for pos, lab_idx in enumerate(placement):
        target = pos if pos < n_targets else int(rng.integers(0, n_targets))
        coarsen[x_labels[lab_idx]] = f"g{target}"
    relabel = {lab: f"b{j}" for lab, j in zip(x_labels, rng.permutation(nx))}
    return [coarsen, relabel]


@dataclass(frozen=True)
class SuiteResult:
    """Aggregated axiom reports for a seeded batch of random joints."""

    n_joints: int
    seed: int
    tolerance: float
    reports: tuple[AxiomReport, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_dict(self) -> dict:
        by_measure: dict[str, dict] = {}
        failures = []
        for r in self.reports:
            entry = by_measure.setdefault(r.measure, {"checked": 0, "failed": 0})
            entry["checked"] += 1
            if not r.passed:
                entry["failed"] += 1
                failures.append(r.to_dict())
        return {
            "n_joints": self.n_joints,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "measures": by_measure,
            "failures": failures,
            "passed": self.passed,
        }


def axiom_suite(
    n_joints: int = 200,
    seed: int = 0,
    tolerance: float = 1e-12,
    max_support: int = 6,
    concentration: float = 1.0,
    measures: list[InformationMeasure] | None = None,
) -> SuiteResult:
    """Check every measure on ``n_joints`` random pmfs with random supports.

    Support sizes draw uniformly from 2..max_support per axis. The whole run
    is a pure function of the arguments.
    """
    if n_joints < 1:
        raise InputError("need at least one joint to check")
    if max_support < 2:
        raise InputError("max_support must be at least 2")
    if measures is None:
        measures = list(PMF_MEASURES.values())
    master = np.random.default_rng(seed)
    reports = []
    for _ in range(n_joints):
        nx = int(master.integers(2, max_support + 1))
        ny = int(master.integers(2, max_support + 1))
        joint = gen_joint_pmf(nx, ny, concentration, int(master.integers(0, 2**63)))
        transforms = random_transforms(joint.x_labels, master)
        for measure in measures:
            reports.append(axiom_check(measure, joint, transforms, tolerance))
    return SuiteResult(
        n_joints=n_joints, seed=seed, tolerance=tolerance, reports=tuple(reports)
    )
