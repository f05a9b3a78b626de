"""Seeded synthetic-data generators.

Every generator is a pure function of its parameters and a 64-bit seed,
drawing from numpy's default PCG64 stream, so outputs are bit-identical
across runs and platforms. Draw order within each generator is fixed and
documented where more than one array is drawn.
"""

from __future__ import annotations

import math

import numpy as np

from .discrete import JointPMF
from .efficiency import MCARGaussianModel
from .errors import InputError
from .functional import CurveSet
from .tables import SampleTable


def _check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or not 0 <= int(seed) < 2**64:
        raise InputError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    return int(seed)


def gen_joint_pmf(nx: int, ny: int, concentration: float, seed: int) -> JointPMF:
    """A strictly positive random joint pmf with Dirichlet(concentration) cells.

    Higher concentration pulls the pmf toward uniform. Outcome labels carry
    numeric codes 0..ny-1 so every measure applies to the result.
    """
    if nx < 2 or ny < 2:
        raise InputError("need at least 2 categories per variable")
    if not concentration > 0:
        raise InputError("concentration must be positive")
    rng = np.random.default_rng(_check_seed(seed))
    cells = rng.gamma(concentration, 1.0, size=(nx, ny))
    probs = cells / cells.sum()
    if np.any(probs <= 0.0):
        # gamma draws can underflow at tiny concentration; nudge and renormalize
        probs = probs + 1e-12
        probs = probs / probs.sum()
    return JointPMF.from_matrix(probs, y_codes=np.arange(ny, dtype=np.float64))


def sample_joint_table(
    nx: int, ny: int, concentration: float, n: int, seed: int
) -> tuple[JointPMF, SampleTable]:
    """A random pmf plus n rows drawn from it, as a (y, x) table.

    Rows rather than the pmf itself keep the output in a format the table
    reader ingests; the empirical joint of the sample converges to the
    returned pmf. Two child seeds split generation from sampling.
    """
    if n < 1:
        raise InputError("need at least one sampled row")
    s_pmf, s_rows = np.random.SeedSequence(_check_seed(seed)).generate_state(
        2, dtype=np.uint64
    )
    joint = gen_joint_pmf(nx, ny, concentration, int(s_pmf))
    rng = np.random.default_rng(int(s_rows))
    flat = rng.choice(joint.probs.size, size=n, p=joint.probs.ravel())
    xi, yi = np.divmod(flat, len(joint.y_labels))
    table = SampleTable.from_columns(
        {
            "y": joint.y_codes[yi],
            "x": np.asarray(joint.x_labels)[xi].astype(str),
        }
    )
    return joint, table


def gen_mcar(model: MCARGaussianModel, n: int, seed: int) -> SampleTable:
    """Proxy observations from the MCAR Gaussian model.

    Columns: ``x_value`` (the outcome when observed, a 0.0 placeholder
    otherwise) and ``observed`` (the 0/1 flag that actually carries the
    missingness; the placeholder value is never read). Draw order: flags,
    then outcomes.
    """
    if n < 1:
        raise InputError("need at least one draw")
    rng = np.random.default_rng(_check_seed(seed))
    observed = rng.random(n) < model.p_obs
    values = rng.normal(model.mu, math.sqrt(model.sigma2), n)
    return SampleTable.from_columns(
        {
            "x_value": np.where(observed, values, 0.0),
            "observed": observed.astype(np.float64),
        }
    )


def gen_bivariate_normal(rho: float, n: int, seed: int) -> SampleTable:
    """Standard bivariate normal pairs with the given correlation."""
    if not -1.0 < rho < 1.0:
        raise InputError(f"rho must lie strictly inside (-1, 1), got {rho!r}")
    if n < 2:
        raise InputError("need at least two draws")
    rng = np.random.default_rng(_check_seed(seed))
    z1 = rng.standard_normal(n)
    z2 = rng.standard_normal(n)
    return SampleTable.from_columns(
        {"x": z1, "y": rho * z1 + math.sqrt(1.0 - rho * rho) * z2}
    )


def fourier_basis(k: int, grid: np.ndarray) -> np.ndarray:
    """k rows of sqrt(2)*sin(2*pi*t), sqrt(2)*cos(2*pi*t), sqrt(2)*sin(4*pi*t), ...

    Exactly orthonormal under trapezoid quadrature on a uniform [0, 1] grid
    (the endpoint halves merge because each function is 1-periodic), which
    keeps the analytic dependence value of ``gen_flm_pair`` honest.
    """
    grid = np.asarray(grid, dtype=np.float64)
    basis = np.empty((k, grid.size))
    for j in range(1, k + 1):
        freq = 2.0 * np.pi * ((j + 1) // 2)
        basis[j - 1] = math.sqrt(2.0) * (
            np.sin(freq * grid) if j % 2 == 1 else np.cos(freq * grid)
        )
    return basis


def population_d1(x_variances, beta_diag, noise_sd: float) -> float:
    """Analytic explained-variability share for ``gen_flm_pair``'s model.

    The outcome's total L2 energy splits into the signal passed through the
    diagonal coefficients, sum(b_j**2 * var_j), and the white-noise energy
    noise_sd**2 over the unit interval.
    """
    signal = float(np.sum(np.asarray(beta_diag) ** 2 * np.asarray(x_variances)))
    total = signal + float(noise_sd) ** 2
    if total == 0.0:
        raise InputError("the model generates identically zero outcome curves")
    return signal / total


def gen_flm_pair(
    n: int,
    grid_size: int,
    x_variances,
    beta_diag,
    noise_sd: float,
    seed: int,
) -> tuple[CurveSet, CurveSet]:
    """Predictor/outcome curve pairs from a diagonal curve-on-curve model.

    Predictors are built from k orthonormal Fourier components with
    independent Gaussian scores of the given variances; outcomes apply the
    diagonal coefficients to the same components and add pointwise white
    noise of standard deviation ``noise_sd``. Draw order: scores, then noise.
    ``population_d1`` gives the analytic explained share for the parameters.
    """
    x_variances = np.asarray(x_variances, dtype=np.float64)
    beta_diag = np.asarray(beta_diag, dtype=np.float64)
    if x_variances.ndim != 1 or x_variances.shape != beta_diag.shape:
        raise InputError("x_variances and beta_diag must be equal-length vectors")
    k = x_variances.size
    if k < 1 or np.any(x_variances <= 0):
        raise InputError("need at least one strictly positive score variance")
    if grid_size < 4 * k:
        raise InputError(f"grid_size must be at least 4 * {k} = {4 * k}")
    if n < 3:
        raise InputError("need at least 3 curve pairs")
    if noise_sd < 0:
        raise InputError("noise_sd must be nonnegative")

    grid = np.linspace(0.0, 1.0, grid_size)
    basis = fourier_basis(k, grid)
    rng = np.random.default_rng(_check_seed(seed))
    scores = rng.standard_normal((n, k)) * np.sqrt(x_variances)
    noise = rng.standard_normal((n, grid_size)) * noise_sd
    x = CurveSet(grid, scores @ basis, name="x")
    y = CurveSet(grid, (scores * beta_diag) @ basis + noise, name="y")
    return x, y
