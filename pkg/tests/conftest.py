import numpy as np
import pytest

from depmeas.datagen import fourier_basis
from depmeas.discrete import JointPMF
from depmeas.functional import CurveSet
from depmeas.tables import SampleTable


@pytest.fixture
def example_joint() -> JointPMF:
    """The worked 2x2 joint: measures 0.36 / 0.27807... / 0.6."""
    return JointPMF.from_matrix([[0.4, 0.1], [0.1, 0.4]], y_codes=[0.0, 1.0])


@pytest.fixture
def exact_table() -> SampleTable:
    """A sample realizing that joint exactly, with counts (40, 10, 10, 40)."""
    y = np.array([0.0] * 40 + [1.0] * 10 + [0.0] * 10 + [1.0] * 40)
    x = np.array(["a"] * 50 + ["b"] * 50)
    return SampleTable.from_columns({"y": y, "x": x})


def make_two_component_curves(m: int = 64) -> CurveSet:
    """Curves spanned by 2 orthonormal components with score variances (4, 1).

    The sign-alternating score vectors have exact zero mean and exact sample
    covariance diag(4, 1), and the Fourier components are exactly orthonormal
    under trapezoid quadrature on the uniform grid, so the eigenstructure is
    known in closed form rather than approximately.
    """
    grid = np.linspace(0.0, 1.0, m)
    basis = fourier_basis(2, grid)
    s1 = 2.0 * np.tile([1.0, -1.0], 4)
    s2 = np.tile([1.0, 1.0, -1.0, -1.0], 2)
    return CurveSet(grid, np.column_stack([s1, s2]) @ basis, name="two_component")


@pytest.fixture
def two_component_curves() -> CurveSet:
    return make_two_component_curves()
