import numpy as np
import pytest

from depmeas.errors import (
    EmptyFileError,
    GridNotIncreasingError,
    InputError,
    ParseError,
    RaggedRowsError,
)
from depmeas.functional import CurveSet
from depmeas.ingest import (
    read_curves,
    read_table,
    resample_to_common,
    write_curves,
    write_table,
)
from depmeas.tables import SampleTable

EXACT_TOL = 1e-12


def write_text(path, text: str):
    path.write_text(text, encoding="utf-8")
    return path


class TestReadTable:
    def test_three_row_example(self, tmp_path):
        p = write_text(tmp_path / "t.csv", "y,x\n0,a\n1,b\n0.5,a\n")
        table = read_table(p)
        assert table.n == 3
        assert table.kind("y") == "numeric"
        assert table.kind("x") == "categorical"
        np.testing.assert_allclose(table.column("y"), [0.0, 1.0, 0.5])
        np.testing.assert_array_equal(table.column("x"), ["a", "b", "a"])

    def test_mixed_column_becomes_categorical(self, tmp_path):
        p = write_text(tmp_path / "t.csv", "v\n1\ntwo\n3\n")
        table = read_table(p)
        assert table.kind("v") == "categorical"
        np.testing.assert_array_equal(table.column("v"), ["1", "two", "3"])

    def test_underscored_literals_stay_categorical(self, tmp_path):
        p = write_text(tmp_path / "t.csv", "v\n1_000\n2_000\n")
        assert read_table(p).kind("v") == "categorical"

    def test_nan_token_rejected_with_location(self, tmp_path):
        p = write_text(tmp_path / "t.csv", "y,x\n0,a\nnan,b\n")
        with pytest.raises(ParseError, match=r"line 3.*'y'"):
            read_table(p)

    def test_inf_token_rejected(self, tmp_path):
        p = write_text(tmp_path / "t.csv", "y\n1\n-inf\n")
        with pytest.raises(ParseError, match="non-finite"):
            read_table(p)

    def test_blank_cell_rejected(self, tmp_path):
        p = write_text(tmp_path / "t.csv", "y,x\n1,a\n,b\n")
        with pytest.raises(ParseError, match="blank"):
            read_table(p)

    def test_ragged_data_row_rejected(self, tmp_path):
        p = write_text(tmp_path / "t.csv", "y,x\n1,a\n2\n")
        with pytest.raises(ParseError, match="line 3"):
            read_table(p)

    def test_duplicate_header_rejected(self, tmp_path):
        p = write_text(tmp_path / "t.csv", "y,y\n1,2\n")
        with pytest.raises(ParseError, match="unique"):
            read_table(p)

    def test_empty_file(self, tmp_path):
        p = write_text(tmp_path / "t.csv", "")
        with pytest.raises(EmptyFileError):
            read_table(p)

    def test_header_only_file(self, tmp_path):
        p = write_text(tmp_path / "t.csv", "y,x\n")
        with pytest.raises(EmptyFileError, match="no data"):
            read_table(p)

    def test_missing_file_is_an_input_error(self, tmp_path):
        with pytest.raises(InputError, match="cannot read"):
            read_table(tmp_path / "absent.csv")


class TestTableRoundTrip:
    def test_write_then_read_is_identity(self, tmp_path):
        rng = np.random.default_rng(0)
        table = SampleTable.from_columns(
            {
                "y": rng.normal(size=25),
                "x": rng.choice(["a", "b", "c"], size=25),
                "z": rng.random(25) * 1e-7,
            }
        )
        p = tmp_path / "sub" / "t.csv"
        write_table(table, p)
        back = read_table(p)
        assert back.names == table.names
        np.testing.assert_array_equal(back.column("y"), table.column("y"))
        np.testing.assert_array_equal(back.column("z"), table.column("z"))
        np.testing.assert_array_equal(back.column("x"), table.column("x"))


class TestReadCurves:
    def test_grid_row_then_curves(self, tmp_path):
        p = write_text(
            tmp_path / "c.csv",
            "0,0.25,0.5,0.75,1\n1,2,3,4,5\n5,4,3,2,1\n0,0,0,0,0\n",
        )
        curves = read_curves(p, name="demo")
        assert curves.name == "demo"
        np.testing.assert_allclose(curves.grid, [0, 0.25, 0.5, 0.75, 1])
        assert curves.values.shape == (3, 5)

    def test_uniform_flag_synthesizes_the_grid(self, tmp_path):
        p = write_text(tmp_path / "c.csv", "1,2,3,4\n4,3,2,1\n0,0,1,1\n")
        curves = read_curves(p, uniform=True)
        np.testing.assert_allclose(curves.grid, [0.0, 1 / 3, 2 / 3, 1.0])
        assert curves.values.shape == (3, 4)

    def test_non_increasing_grid_rejected(self, tmp_path):
        p = write_text(tmp_path / "c.csv", "0,0.5,0.5,1\n1,2,3,4\n1,2,3,4\n1,2,3,4\n")
        with pytest.raises(GridNotIncreasingError):
            read_curves(p)

    def test_ragged_rows_rejected(self, tmp_path):
        p = write_text(tmp_path / "c.csv", "0,0.5,1\n1,2\n")
        with pytest.raises(RaggedRowsError):
            read_curves(p)

    def test_text_cell_rejected_with_location(self, tmp_path):
        p = write_text(tmp_path / "c.csv", "0,0.5,0.9,1\n1,2,x,4\n1,2,3,4\n1,2,3,4\n")
        with pytest.raises(ParseError, match="line 2"):
            read_curves(p)

    def test_grid_only_file_rejected(self, tmp_path):
        p = write_text(tmp_path / "c.csv", "0,0.5,0.9,1\n")
        with pytest.raises(EmptyFileError, match="no curves"):
            read_curves(p)


class TestCurveRoundTrip:
    def test_write_then_read_is_identity(self, tmp_path, two_component_curves):
        p = tmp_path / "c.csv"
        write_curves(two_component_curves, p)
        back = read_curves(p)
        np.testing.assert_array_equal(back.grid, two_component_curves.grid)
        np.testing.assert_array_equal(back.values, two_component_curves.values)


class TestResample:
    def test_shared_grids_pass_through(self, two_component_curves):
        a, b = resample_to_common(two_component_curves, two_component_curves)
        assert a is two_component_curves and b is two_component_curves

    def test_linear_curves_resample_exactly(self):
        # piecewise-linear interpolation reproduces affine curves exactly
        g1 = np.linspace(0.0, 1.0, 9)
        g2 = np.linspace(0.1, 0.9, 5)
        slopes = np.array([[1.0], [-2.0], [0.5]])
        a = CurveSet(g1, slopes @ g1[None, :] + 1.0)
        b = CurveSet(g2, slopes @ g2[None, :] - 0.5)
        ra, rb = resample_to_common(a, b)
        assert ra.grid is rb.grid or np.array_equal(ra.grid, rb.grid)
        np.testing.assert_allclose(ra.grid[0], 0.1, atol=EXACT_TOL)
        np.testing.assert_allclose(ra.grid[-1], 0.9, atol=EXACT_TOL)
        assert ra.m == max(a.m, b.m)
        np.testing.assert_allclose(ra.values, slopes @ ra.grid[None, :] + 1.0, atol=1e-10)
        np.testing.assert_allclose(rb.values, slopes @ rb.grid[None, :] - 0.5, atol=1e-10)

    def test_disjoint_spans_rejected(self):
        a = CurveSet(np.linspace(0.0, 0.4, 5), np.zeros((3, 5)) + np.arange(5.0))
        b = CurveSet(np.linspace(0.6, 1.0, 5), np.zeros((3, 5)) + np.arange(5.0))
        with pytest.raises(InputError, match="disjoint"):
            resample_to_common(a, b)
