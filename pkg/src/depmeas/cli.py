"""Command-line front end.

The CLI is a thin client of the HTTP service: it reads and writes local
files, ships parsed data to the compute endpoints, and stores the returned
report bytes verbatim. By default the service runs in-process; ``--server``
points at an external instance instead, with identical behavior.

Reports go to stdout or ``--output``. Relative output paths resolve against
``$DEPMEAS_OUTPUT_DIR`` when it is set. Any library error, local or remote,
is printed to stderr as ``{"error": {"type", "message", "exit_code"}}`` and
sets the matching exit code: 2 for input problems, 3 for degenerate
statistics, 4 for numerical failures, 1 otherwise.
"""

from __future__ import annotations

import csv
import functools
import json
import os
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__
from .errors import DepmeasError, InputError
from .functional import CurveSet
from .ingest import read_curves, read_table, write_curves, write_table
from .report import build_artifact, canonical_json
from .tables import SampleTable


def _make_client(obj):
    if obj.get("server"):
        import httpx

        return httpx.Client(base_url=obj["server"], timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        # fastapi's bundled test client warns about its own httpx pin
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import create_app

    return TestClient(create_app())


def _fail(type_name: str, message: str, exit_code: int):
    payload = {"error": {"type": type_name, "message": message, "exit_code": exit_code}}
    click.echo(json.dumps(payload, indent=2, sort_keys=True), err=True)
    sys.exit(exit_code)


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DepmeasError as exc:
            _fail(type(exc).__name__, str(exc), exc.exit_code)

    return wrapper


def _post(obj, path: str, payload: dict) -> bytes:
    with _make_client(obj) as client:
        response = client.post(path, json=payload)
    if response.status_code == 400:
        err = response.json().get("error", {})
        _fail(
            err.get("type", "DepmeasError"),
            err.get("message", "unknown service error"),
            int(err.get("exit_code", 1)),
        )
    if response.status_code != 200:
        _fail("ServiceError", f"HTTP {response.status_code}: {response.text[:300]}", 1)
    return response.content


def _resolve_output(path: str) -> Path:
    p = Path(path)
    base = os.environ.get("DEPMEAS_OUTPUT_DIR")
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(body: bytes, output: str | None) -> None:
    if output is None:
        click.echo(body.decode("utf-8"), nl=False)
    else:
        p = _resolve_output(output)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_bytes(body)


_output_option = click.option(
    "--output", "-o", default=None, help="Write the JSON report here instead of stdout."
)


@click.group()
@click.version_option(__version__)
@click.option(
    "--server",
    default=None,
    help="Base URL of a running service; omit to compute in-process.",
)
@click.pass_context
def main(ctx, server):
    """Interpretable dependence measures with machine-readable reports."""
    ctx.obj = {"server": server}


@main.command()
@click.argument("table_path")
@click.option("--y-col", default="y", show_default=True, help="Binary 0/1 outcome column.")
@click.option("--x-col", default="x", show_default=True, help="Categorical predictor column.")
@click.option(
    "--with-pmf/--no-pmf",
    default=False,
    help="Also compute the exact pmf measures of the empirical joint.",
)
@_output_option
@click.pass_obj
@_guarded
def discrete(obj, table_path, y_col, x_col, with_pmf, output):
    """Correlation, deviance, and 0-1 ratios for a binary outcome."""
    table = read_table(table_path)
    if table.kind(y_col) != "numeric":
        raise InputError(f"column {y_col!r} must be numeric 0/1")
    if table.kind(x_col) != "categorical":
        raise InputError(f"column {x_col!r} must be categorical")
    payload = {
        "y": table.column(y_col).tolist(),
        "x": table.column(x_col).tolist(),
        "y_column": y_col,
        "x_column": x_col,
        "include_pmf": with_pmf,
        "config": {
            "input": str(table_path),
            "y_column": y_col,
            "x_column": x_col,
            "with_pmf": with_pmf,
            "n": table.n,
        },
    }
    _emit(_post(obj, "/v1/discrete", payload), output)


@main.command()
@click.argument("table_path")
@click.option("--y-col", default="y", show_default=True, help="Numeric outcome column.")
@click.option("--x-col", default="x", show_default=True, help="Predictor column (any kind).")
@click.option(
    "--penalty",
    type=click.Choice(["L2", "L1", "ZeroOne"]),
    default="L2",
    show_default=True,
)
@click.option("--bins", type=int, default=None, help="Bin count for numeric predictors.")
@click.option(
    "--holdout",
    type=float,
    default=0.0,
    show_default=True,
    help="Fraction held out for risk evaluation (0 scores in sample).",
)
@click.option("--seed", type=int, default=0, show_default=True, help="Holdout shuffle seed.")
@_output_option
@click.pass_obj
@_guarded
def predict(obj, table_path, y_col, x_col, penalty, bins, holdout, seed, output):
    """Penalty-based prediction measure (L2, L1, or 0-1)."""
    table = read_table(table_path)
    if table.kind(y_col) != "numeric":
        raise InputError(f"column {y_col!r} must be numeric")
    numeric_x = table.kind(x_col) == "numeric"
    payload = {
        "y": table.column(y_col).tolist(),
        "x_numeric": table.column(x_col).tolist() if numeric_x else None,
        "x_categorical": None if numeric_x else table.column(x_col).tolist(),
        "penalty": penalty,
        "bins": bins,
        "holdout_fraction": holdout,
        "seed": seed,
        "config": {
            "input": str(table_path),
            "y_column": y_col,
            "x_column": x_col,
            "penalty": penalty,
            "bins": bins,
            "holdout_fraction": holdout,
            "seed": seed,
            "n": table.n,
        },
    }
    _emit(_post(obj, "/v1/predict", payload), output)


@main.command()
@click.option(
    "--closed-form",
    "mode",
    flag_value="closed_form",
    default=True,
    help="Exact MCAR Gaussian measure (the observation rate).",
)
@click.option(
    "--monte-carlo",
    "mode",
    flag_value="monte_carlo",
    help="Verify via simulated score variance.",
)
@click.option("--r2", "mode", flag_value="r2", help="Squared correlation of a 2x2 pmf.")
@click.option("--p", "p_obs", type=float, default=None, help="Observation probability.")
@click.option("--mu", type=float, default=0.0, show_default=True)
@click.option("--sigma2", type=float, default=1.0, show_default=True)
@click.option("--n-rep", type=int, default=100_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--pmf",
    nargs=4,
    type=float,
    default=None,
    help="Row-major 2x2 probabilities p00 p01 p10 p11 for --r2.",
)
@_output_option
@click.pass_obj
@_guarded
def efficiency(obj, mode, p_obs, mu, sigma2, n_rep, seed, pmf, output):
    """Fisher-information efficiency measures for statistical proxies."""
    payload = {
        "mode": mode,
        "mu": mu,
        "sigma2": sigma2,
        "p_obs": p_obs,
        "n_rep": n_rep,
        "seed": seed,
        "pmf": [[pmf[0], pmf[1]], [pmf[2], pmf[3]]] if pmf else None,
        "config": {
            "mode": mode,
            "p_obs": p_obs,
            "mu": mu,
            "sigma2": sigma2,
            "n_rep": n_rep,
            "seed": seed,
            "pmf": list(pmf) if pmf else None,
        },
    }
    _emit(_post(obj, "/v1/efficiency", payload), output)


@main.command()
@click.argument("x_path")
@click.argument("y_path")
@click.option("--threshold-x", type=float, default=0.85, show_default=True)
@click.option("--threshold-y", type=float, default=0.85, show_default=True)
@click.option("--cv-p", is_flag=True, help="Pick predictor components by 5-fold CV.")
@click.option(
    "--uniform",
    is_flag=True,
    help="Treat every row as a curve on a synthesized uniform grid.",
)
@click.option(
    "--resample",
    is_flag=True,
    help="Interpolate both sets onto a shared grid when grids differ.",
)
@click.option(
    "--r2-curve",
    default=None,
    help="Also write the pointwise explained-variability curve as CSV here.",
)
@_output_option
@click.pass_obj
@_guarded
def functional(
    obj, x_path, y_path, threshold_x, threshold_y, cv_p, uniform, resample, r2_curve, output
):
    """Curve-on-curve dependence measures."""
    x = read_curves(x_path, uniform=uniform, name="x")
    y = read_curves(y_path, uniform=uniform, name="y")
    payload = {
        "x_grid": x.grid.tolist(),
        "x_values": x.values.tolist(),
        "y_grid": y.grid.tolist(),
        "y_values": y.values.tolist(),
        "threshold_x": threshold_x,
        "threshold_y": threshold_y,
        "cv_p": cv_p,
        "resample": resample,
        "config": {
            "x_input": str(x_path),
            "y_input": str(y_path),
            "threshold_x": threshold_x,
            "threshold_y": threshold_y,
            "cv_p": cv_p,
            "uniform": uniform,
            "resample": resample,
            "n": x.n,
        },
    }
    body = _post(obj, "/v1/functional", payload)
    if r2_curve is not None:
        fit = json.loads(body.decode("utf-8"))["pointwise_fit"]
        path = _resolve_output(r2_curve)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["t", "r2"])
            for t, r2_value in zip(fit["grid"], fit["r2"]):
                writer.writerow([repr(float(t)), "" if r2_value is None else repr(float(r2_value))])
    _emit(body, output)


@main.command()
@click.option(
    "--kind",
    type=click.Choice(["joint", "mcar", "normal", "flm"]),
    required=True,
    help="joint: sampled categorical table; mcar: proxy table; "
    "normal: correlated pairs; flm: predictor/outcome curve files.",
)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--n", type=int, default=1000, show_default=True, help="Rows or curve pairs.")
@click.option("--nx", type=int, default=2, show_default=True)
@click.option("--ny", type=int, default=2, show_default=True)
@click.option("--concentration", type=float, default=1.0, show_default=True)
@click.option("--mu", type=float, default=0.0, show_default=True)
@click.option("--sigma2", type=float, default=1.0, show_default=True)
@click.option("--p", "p_obs", type=float, default=0.5, show_default=True)
@click.option("--rho", type=float, default=0.0, show_default=True)
@click.option("--grid-size", type=int, default=64, show_default=True)
@click.option("--variances", default="4,2,1", show_default=True, help="Comma-separated.")
@click.option("--beta", default="1,1,1", show_default=True, help="Comma-separated diagonal.")
@click.option("--noise-sd", type=float, default=1.0, show_default=True)
@click.option("--out", default=None, help="Output CSV for table kinds.")
@click.option("--out-x", default=None, help="Predictor curve CSV for --kind flm.")
@click.option("--out-y", default=None, help="Outcome curve CSV for --kind flm.")
@_output_option
@click.pass_obj
@_guarded
def simulate(
    obj, kind, seed, n, nx, ny, concentration, mu, sigma2, p_obs, rho,
    grid_size, variances, beta, noise_sd, out, out_x, out_y, output,
):
    """Write seeded synthetic datasets in the formats the readers ingest."""
    if kind == "flm":
        if not (out_x and out_y):
            raise InputError("--kind flm needs --out-x and --out-y")
    elif not out:
        raise InputError(f"--kind {kind} needs --out")
    x_variances = [float(v) for v in variances.split(",")]
    beta_diag = [float(v) for v in beta.split(",")]
    payload = {
        "kind": kind,
        "seed": seed,
        "n": n,
        "nx": nx,
        "ny": ny,
        "concentration": concentration,
        "mu": mu,
        "sigma2": sigma2,
        "p_obs": p_obs,
        "rho": rho,
        "grid_size": grid_size,
        "x_variances": x_variances,
        "beta_diag": beta_diag,
        "noise_sd": noise_sd,
    }
    data = json.loads(_post(obj, "/v1/simulate", payload).decode("utf-8"))["data"]

    files = {}
    if kind == "flm":
        for key, dest in (("curves_x", out_x), ("curves_y", out_y)):
            entry = data[key]
            curves = CurveSet(
                grid=np.asarray(entry["grid"]),
                values=np.asarray(entry["values"]),
                name=entry["name"],
            )
            path = _resolve_output(dest)
            write_curves(curves, path)
            files[key] = str(path)
    else:
        entry = data["table"]
        columns = {
            name: np.asarray(vals)
            if entry["kinds"][name] == "numeric"
            else np.asarray(vals, dtype=str)
            for name, vals in entry["columns"].items()
        }
        path = _resolve_output(out)
        write_table(SampleTable.from_columns(columns), path)
        files["table"] = str(path)

    config = dict(payload)
    config.pop("config", None)
    artifact = build_artifact("simulate", config, [], extras={"files": files})
    _emit(canonical_json(artifact).encode("utf-8"), output)


@main.command()
@click.option("--n-joints", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tolerance", type=float, default=1e-12, show_default=True)
@click.option("--max-support", type=int, default=6, show_default=True)
@click.option("--concentration", type=float, default=1.0, show_default=True)
@_output_option
@click.pass_obj
@_guarded
def check(obj, n_joints, seed, tolerance, max_support, concentration, output):
    """Verify the measure properties on random joint pmfs; exit 1 on failure."""
    config = {
        "n_joints": n_joints,
        "seed": seed,
        "tolerance": tolerance,
        "max_support": max_support,
        "concentration": concentration,
    }
    payload = dict(config)
    payload["config"] = config
    body = _post(obj, "/v1/check", payload)
    _emit(body, output)
    if not json.loads(body.decode("utf-8"))["check"]["passed"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
