"""Core contracts: information values, normalized dependence values, and the
axiom-verification harness.

A dependence measure is built from a measure of information: some nonnegative
quantity I(X;Y) saying how much X tells about Y, bounded by the self-information
I(Y;Y), zero under independence, and monotone under deterministic coarsening of
X. Dividing by the self-information turns it into a number in [0, 1] whose
meaning is inherited from the information being measured (explained variance,
removed entropy, avoided prediction error, ...).

``axiom_check`` verifies those properties exactly for a concrete
:class:`InformationMeasure` on a finite joint pmf, where everything can be
computed in closed form.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable, Mapping, Sequence, Union

from .errors import DegenerateTargetError, NumericalError

if TYPE_CHECKING:  # pragma: no cover - import cycle guard, typing only
    from .discrete import JointPMF

#: A deterministic relabeling of the X support: either an explicit mapping or a
#: callable applied to each label.
XTransform = Union[Mapping[str, str], Callable[[str], str]]


@dataclass(frozen=True)
class InfoValue:
    """A nonnegative, finite amount of information (units depend on the measure)."""

    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        if not math.isfinite(self.value):
            raise NumericalError(f"information value must be finite, got {self.value}")
        if self.value < 0:
            raise NumericalError(f"information value must be nonnegative, got {self.value}")


@dataclass(frozen=True)
class DepValue:
    """A dependence value in [0, 1].

    ``raw`` keeps the unclamped estimate: population quantities live in [0, 1]
    but finite-sample plug-ins need not, and silently hiding that would make
    estimator diagnostics impossible. ``clamped`` is True exactly when ``raw``
    fell outside the interval.
    """

    value: float
    raw: float
    clamped: bool

    @classmethod
    def from_raw(cls, raw: float) -> "DepValue":
        raw = float(raw)
        if not math.isfinite(raw):
            raise NumericalError(f"dependence value is not finite: {raw}")
        clamped = raw < 0.0 or raw > 1.0
        return cls(value=min(max(raw, 0.0), 1.0), raw=raw, clamped=clamped)


def normalize(i_xy: InfoValue, i_yy: InfoValue) -> DepValue:
    """Turn information about Y into a dependence value by dividing by I(Y;Y).

    Raises :class:`DegenerateTargetError` when the self-information is zero
    (Y tells nothing about itself, e.g. a constant target); that case is
    reported, never coerced to 0 or 1.
    """
    if i_yy.value == 0.0:
        raise DegenerateTargetError(
            "self-information of the target is zero; the dependence ratio is undefined"
        )
    return DepValue.from_raw(i_xy.value / i_yy.value)


def symmetrize_arithmetic(
    i_xy: InfoValue, i_yx: InfoValue, i_xx: InfoValue, i_yy: InfoValue
) -> DepValue:
    """Symmetric dependence as total exchanged information over total self-information."""
    denom = i_xx.value + i_yy.value
    if denom == 0.0:
        raise DegenerateTargetError("both self-informations are zero; symmetrization undefined")
    return DepValue.from_raw((i_xy.value + i_yx.value) / denom)


def symmetrize_geometric(
    i_xy: InfoValue, i_yx: InfoValue, i_xx: InfoValue, i_yy: InfoValue
) -> DepValue:
    """Symmetric dependence as the geometric mean of the two directional ratios."""
    if i_xx.value == 0.0 or i_yy.value == 0.0:
        raise DegenerateTargetError("a self-information is zero; symmetrization undefined")
    return DepValue.from_raw(math.sqrt((i_xy.value * i_yx.value) / (i_xx.value * i_yy.value)))


class InformationMeasure(ABC):
    """Contract for a measure of the information X carries about Y.

    Implementations compute exactly on finite joint pmfs. Required properties
    (verifiable via :func:`axiom_check`):

    1. ``info`` is nonnegative;
    2. ``info(joint) <= self_info(joint)``, with equality to zero when the
       joint factorizes;
    3. deterministically coarsening the X support never increases ``info``.

    Property 3 implies invariance under relabelings (bijections) of X, but not
    of Y: the scale of Y legitimately sets the scale of the information.
    """

    #: short identifier used in reports and the CLI
    name: str = "abstract"

    @abstractmethod
    def info(self, joint: "JointPMF") -> InfoValue:
        """Information X carries about Y under this measure, I(X;Y)."""

    @abstractmethod
    def self_info(self, joint: "JointPMF") -> InfoValue:
        """Information Y carries about itself, I(Y;Y); computed from the Y margin."""

    def dependence(self, joint: "JointPMF") -> DepValue:
        return normalize(self.info(joint), self.self_info(joint))


@dataclass(frozen=True)
class TransformCheck:
    """Result of checking one X-support transform against monotonicity."""

    index: int
    info_original: float
    info_transformed: float
    monotone: bool
    bijection: bool
    #: only meaningful for bijections: |I(f(X);Y) - I(X;Y)| <= tol
    invariant: bool


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the exact property checks for one measure on one joint pmf."""

    measure: str
    info_xy: float
    info_yy: float
    info_factorized: float
    nonnegative: bool
    bounded_by_self_info: bool
    zero_under_independence: bool
    transforms: tuple[TransformCheck, ...] = field(default_factory=tuple)
    tolerance: float = 1e-12

    @property
    def passed(self) -> bool:
        return (
            self.nonnegative
            and self.bounded_by_self_info
            and self.zero_under_independence
            and all(t.monotone and (t.invariant or not t.bijection) for t in self.transforms)
        )

    def to_dict(self) -> dict:
        return {
            "measure": self.measure,
            "info_xy": self.info_xy,
            "info_yy": self.info_yy,
            "info_factorized": self.info_factorized,
            "nonnegative": self.nonnegative,
            "bounded_by_self_info": self.bounded_by_self_info,
            "zero_under_independence": self.zero_under_independence,
            "transforms": [
                {
                    "index": t.index,
                    "info_original": t.info_original,
                    "info_transformed": t.info_transformed,
                    "monotone": t.monotone,
                    "bijection": t.bijection,
                    "invariant": t.invariant,
                }
                for t in self.transforms
            ],
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def _as_mapping(transform: XTransform, labels: Sequence[str]) -> dict[str, str]:
    if callable(transform):
        return {lab: transform(lab) for lab in labels}
    missing = [lab for lab in labels if lab not in transform]
    if missing:
        raise KeyError(f"transform does not cover X labels {missing}")
    return {lab: transform[lab] for lab in labels}


def axiom_check(
    measure: InformationMeasure,
    joint: "JointPMF",
    transforms: Sequence[XTransform] = (),
    tolerance: float = 1e-12,
) -> AxiomReport:
    """Verify the information-measure properties exactly on a finite joint pmf.

    Checks nonnegativity, the self-information bound, zero information on the
    factorized (independent) version of the joint, and, for every supplied
    transform f of the X support, I(f(X);Y) <= I(X;Y). Transforms that are
    bijections on the support are additionally checked for invariance.

    The verdict applies to the supplied joint only; nothing is certified in
    general.
    """
    info_xy = measure.info(joint).value
    info_yy = measure.self_info(joint).value
    info_factorized = measure.info(joint.factorized()).value

    checks = []
    for idx, transform in enumerate(transforms):
        mapping = _as_mapping(transform, joint.x_labels)
        coarsened = joint.coarsen_x(mapping)
        info_t = measure.info(coarsened).value
        bijection = len(set(mapping.values())) == len(joint.x_labels)
        checks.append(
            TransformCheck(
                index=idx,
                info_original=info_xy,
                info_transformed=info_t,
                monotone=info_t <= info_xy + tolerance,
                bijection=bijection,
                invariant=bijection and abs(info_t - info_xy) <= tolerance,
            )
        )

    return AxiomReport(
        measure=measure.name,
        info_xy=info_xy,
        info_yy=info_yy,
        info_factorized=info_factorized,
        nonnegative=info_xy >= 0.0,
        bounded_by_self_info=info_xy <= info_yy + tolerance,
        zero_under_independence=abs(info_factorized) <= tolerance,
        transforms=tuple(checks),
        tolerance=tolerance,
    )
