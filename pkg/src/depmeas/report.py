"""Measure reports and canonical JSON serialization.

Interpretability is the whole point of these measures, so every report carries
a plain-language sentence instantiated with the value, next to the diagnostics
needed to audit it.

Artifacts are serialized canonically (floats rounded to 12 significant digits,
sorted keys) so that repeated seeded runs produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .core import DepValue
from .errors import NumericalError

#: bumped when the report layout changes incompatibly
SCHEMA_VERSION = 1

TOOL_NAME = "depmeas"


def _tool_version() -> str:
    from . import __version__

    return __version__


@dataclass(frozen=True)
class MeasureReport:
    """One named dependence value with its reading and supporting quantities."""

    measure: str
    dep: DepValue
    interpretation: str
    diagnostics: Mapping[str, Any] = field(default_factory=dict)
    provenance: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.interpretation:
            raise ValueError("a measure report must carry a non-empty interpretation")

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.measure,
            "value": self.dep.value,
            "raw": self.dep.raw,
            "clamped": self.dep.clamped,
            "interpretation": self.interpretation,
            "diagnostics": dict(self.diagnostics),
            "provenance": dict(self.provenance),
        }

    def with_provenance(self, provenance: Mapping[str, Any]) -> "MeasureReport":
        merged = dict(self.provenance)
        merged.update(provenance)
        return MeasureReport(self.measure, self.dep, self.interpretation, self.diagnostics, merged)


def percent(value: float, digits: int = 1) -> str:
    """Deterministic percent rendering for interpretation strings."""
    return f"{value * 100:.{digits}f}%"


def build_artifact(
    subcommand: str,
    config: Mapping[str, Any],
    reports: list[MeasureReport],
    extras: Mapping[str, Any] | None = None,
) -> dict[str, Any]:
    """Assemble the top-level report object emitted by the service and the CLI."""
    artifact: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": TOOL_NAME, "version": _tool_version()},
        "subcommand": subcommand,
        "config": dict(config),
        "measures": [r.to_dict() for r in reports],
    }
    if extras:
        artifact.update(extras)
    return artifact


def _canonicalize(obj: Any) -> Any:
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if not math.isfinite(x):
            raise NumericalError(f"non-finite value {x} cannot be serialized to JSON")
        rounded = float(format(x, ".12g"))
        return 0.0 if rounded == 0.0 else rounded
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_canonicalize(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [_canonicalize(v) for v in obj]
    if isinstance(obj, Mapping):
        return {str(k): _canonicalize(v) for k, v in obj.items()}
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


def canonical_json(obj: Any) -> str:
    """Serialize with 12-significant-digit floats and sorted keys; ends with a newline."""
    return json.dumps(_canonicalize(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"
