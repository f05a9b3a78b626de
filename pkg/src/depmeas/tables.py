"""Column-labeled tabular samples.

A :class:`SampleTable` holds named columns that are either numeric (float64,
all finite) or categorical (strings). It is the carrier for every empirical
estimator in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import InputError, LengthMismatchError

Kind = str  # "numeric" | "categorical"


def _coerce_column(name: str, values) -> tuple[np.ndarray, Kind]:
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise InputError(f"column {name!r} must be one-dimensional")
    if arr.dtype.kind in "fiub":
        out = arr.astype(np.float64)
        if not np.all(np.isfinite(out)):
            raise InputError(f"column {name!r} contains non-finite numeric values")
        return out, "numeric"
    return arr.astype(str), "categorical"


@dataclass(frozen=True)
class SampleTable:
    """Immutable named columns of equal length n >= 1."""

    columns: Mapping[str, np.ndarray]
    kinds: Mapping[str, Kind] = field(default_factory=dict)
    n: int = 0

    @classmethod
    def from_columns(cls, data: Mapping[str, Sequence]) -> "SampleTable":
        if not data:
            raise InputError("a table needs at least one column")
        cols: dict[str, np.ndarray] = {}
        kinds: dict[str, Kind] = {}
        n = None
        for name, values in data.items():
            arr, kind = _coerce_column(name, values)
            if n is None:
                n = len(arr)
            elif len(arr) != n:
                raise LengthMismatchError(
                    f"column {name!r} has length {len(arr)}, expected {n}"
                )
            arr.setflags(write=False)
            cols[name] = arr
            kinds[name] = kind
        if n is None or n < 1:
            raise InputError("a table needs at least one row")
        return cls(columns=cols, kinds=kinds, n=n)

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise InputError(f"no column named {name!r}; available: {sorted(self.columns)}")
        return self.columns[name]

    def kind(self, name: str) -> Kind:
        self.column(name)
        return self.kinds[name]

    @property
    def names(self) -> list[str]:
        return list(self.columns)
