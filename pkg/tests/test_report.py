import json

import numpy as np
import pytest

from depmeas.core import DepValue
from depmeas.errors import NumericalError
from depmeas.report import (
    SCHEMA_VERSION,
    MeasureReport,
    build_artifact,
    canonical_json,
    percent,
)


def toy_report(value: float = 0.5) -> MeasureReport:
    return MeasureReport(
        measure="toy",
        dep=DepValue.from_raw(value),
        interpretation="half explained",
        diagnostics={"k": 1},
        provenance={"n": 10},
    )


class TestMeasureReport:
    def test_to_dict_layout(self):
        d = toy_report().to_dict()
        assert d == {
            "name": "toy",
            "value": 0.5,
            "raw": 0.5,
            "clamped": False,
            "interpretation": "half explained",
            "diagnostics": {"k": 1},
            "provenance": {"n": 10},
        }

    def test_with_provenance_merges(self):
        rep = toy_report().with_provenance({"seed": 3})
        assert rep.provenance == {"n": 10, "seed": 3}

    def test_interpretation_is_mandatory(self):
        with pytest.raises(ValueError):
            MeasureReport("m", DepValue.from_raw(0.1), "")


class TestPercent:
    def test_rendering(self):
        assert percent(0.36) == "36.0%"
        assert percent(1.0) == "100.0%"
        assert percent(0.123456, digits=2) == "12.35%"


class TestArtifact:
    def test_top_level_layout(self):
        art = build_artifact("demo", {"seed": 1}, [toy_report()], extras={"note": "x"})
        assert art["schema_version"] == SCHEMA_VERSION
        assert art["tool"]["name"] == "depmeas"
        assert art["subcommand"] == "demo"
        assert art["config"] == {"seed": 1}
        assert [m["name"] for m in art["measures"]] == ["toy"]
        assert art["note"] == "x"


class TestCanonicalJSON:
    def test_is_valid_json_with_trailing_newline(self):
        text = canonical_json({"b": 1, "a": [1.5, True, None, "s"]})
        assert text.endswith("\n")
        assert json.loads(text) == {"a": [1.5, True, None, "s"], "b": 1}

    def test_keys_are_sorted(self):
        text = canonical_json({"zebra": 1, "ant": 2})
        assert text.index('"ant"') < text.index('"zebra"')

    def test_floats_rounded_to_twelve_significant_digits(self):
        a = canonical_json({"v": 0.1 + 0.2})
        b = canonical_json({"v": 0.3})
        assert a == b

    def test_negative_zero_normalized(self):
        assert canonical_json(-0.0) == canonical_json(0.0)
        assert "-0" not in canonical_json({"v": -0.0})

    def test_identical_bytes_for_identical_content(self):
        art1 = build_artifact("demo", {"seed": 1}, [toy_report(0.25)])
        art2 = build_artifact("demo", {"seed": 1}, [toy_report(0.25)])
        assert canonical_json(art1).encode() == canonical_json(art2).encode()

    def test_numpy_scalars_and_arrays_accepted(self):
        text = canonical_json(
            {
                "f": np.float64(0.5),
                "i": np.int32(3),
                "b": np.bool_(True),
                "arr": np.array([1.0, 2.0]),
            }
        )
        assert json.loads(text) == {"arr": [1.0, 2.0], "b": True, "f": 0.5, "i": 3}

    def test_non_finite_rejected(self):
        with pytest.raises(NumericalError):
            canonical_json({"v": float("inf")})

    def test_unknown_types_rejected(self):
        with pytest.raises(TypeError):
            canonical_json({"v": object()})
