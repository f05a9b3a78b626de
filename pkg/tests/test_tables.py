import numpy as np
import pytest

from depmeas.errors import InputError, LengthMismatchError
from depmeas.tables import SampleTable


class TestFromColumns:
    def test_kinds_inferred_from_dtype(self):
        table = SampleTable.from_columns(
            {
                "f": np.array([1.5, 2.5]),
                "i": np.array([1, 2]),
                "b": np.array([True, False]),
                "s": np.array(["u", "v"]),
            }
        )
        assert table.kind("f") == table.kind("i") == table.kind("b") == "numeric"
        assert table.kind("s") == "categorical"
        assert table.column("i").dtype == np.float64
        assert table.n == 2

    def test_plain_lists_accepted(self):
        table = SampleTable.from_columns({"y": [0.0, 1.0], "x": ["a", "b"]})
        assert table.names == ["y", "x"]

    def test_non_finite_numeric_rejected(self):
        with pytest.raises(InputError, match="non-finite"):
            SampleTable.from_columns({"y": [1.0, np.nan]})

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            SampleTable.from_columns({"a": [1.0, 2.0], "b": [1.0]})

    def test_no_columns(self):
        with pytest.raises(InputError):
            SampleTable.from_columns({})

    def test_two_dimensional_column_rejected(self):
        with pytest.raises(InputError, match="one-dimensional"):
            SampleTable.from_columns({"a": np.zeros((2, 2))})

    def test_columns_are_read_only(self):
        table = SampleTable.from_columns({"a": [1.0, 2.0]})
        with pytest.raises(ValueError):
            table.column("a")[0] = 9.0

    def test_unknown_column_lists_available(self):
        table = SampleTable.from_columns({"a": [1.0]})
        with pytest.raises(InputError, match="available"):
            table.column("zz")
