"""The HTTP service wrapping the measure library.

Compute endpoints respond with the canonical report JSON bytes (12
significant digits, sorted keys), so clients can write response bodies to
disk verbatim and seeded runs stay byte-identical. The simulate endpoint is
the exception: it returns generated data at full float precision (plain JSON
round-trips shortest-repr floats exactly) for the client to write as CSV.

Library errors map to HTTP 400 with a machine-readable body
``{"error": {"type", "message", "exit_code"}}`` that the CLI translates back
into its exit-code classes.
"""

from __future__ import annotations

import numpy as np
from fastapi import APIRouter, FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .. import __version__
from ..checks import axiom_suite
from ..datagen import gen_bivariate_normal, gen_flm_pair, gen_mcar, sample_joint_table
from ..discrete import (
    correlation_ratio_pmf,
    empirical_joint,
    empirical_triplet,
    entropy_ratio_pmf,
    zero_one_ratio_pmf,
    JointPMF,
)
from ..efficiency import MCARGaussianModel, binary_r2, efficiency_ratio, mc_fisher_mcar, mcar_measure
from ..errors import DepmeasError, InputError
from ..functional import CurveSet, functional_measures
from ..ingest import resample_to_common
from ..prediction import Penalty, prediction_measure
from ..report import TOOL_NAME, build_artifact, canonical_json
from ..tables import SampleTable
from .schemas import (
    CheckRequest,
    DiscreteRequest,
    EfficiencyRequest,
    FunctionalRequest,
    PredictRequest,
    SimulateRequest,
)

router = APIRouter()


def _report_response(subcommand: str, config, reports, extras=None) -> Response:
    artifact = build_artifact(subcommand, config, reports, extras)
    return Response(content=canonical_json(artifact), media_type="application/json")


@router.get("/health")
def health() -> dict:
    return {"status": "ok", "tool": TOOL_NAME, "version": __version__}


@router.post("/v1/discrete")
def discrete(req: DiscreteRequest) -> Response:
    table = SampleTable.from_columns(
        {
            req.y_column: np.asarray(req.y, dtype=np.float64),
            req.x_column: np.asarray(req.x, dtype=str),
        }
    )
    reports = list(empirical_triplet(table, req.y_column, req.x_column))
    if req.include_pmf:
        joint = empirical_joint(table, req.y_column, req.x_column)
        reports += [
            correlation_ratio_pmf(joint),
            entropy_ratio_pmf(joint),
            zero_one_ratio_pmf(joint),
        ]
    return _report_response("discrete", req.config, reports)


@router.post("/v1/predict")
def predict(req: PredictRequest) -> Response:
    if (req.x_numeric is None) == (req.x_categorical is None):
        raise InputError("provide exactly one of x_numeric and x_categorical")
    x = (
        np.asarray(req.x_numeric, dtype=np.float64)
        if req.x_numeric is not None
        else np.asarray(req.x_categorical, dtype=str)
    )
    report = prediction_measure(
        np.asarray(req.y, dtype=np.float64),
        x,
        Penalty(req.penalty),
        bins=req.bins,
        holdout_fraction=req.holdout_fraction,
        seed=req.seed,
    )
    return _report_response("predict", req.config, [report])


@router.post("/v1/efficiency")
def efficiency(req: EfficiencyRequest) -> Response:
    if req.mode == "r2":
        if req.pmf is None:
            raise InputError("r2 mode needs a 2x2 pmf")
        return _report_response(
            "efficiency", req.config, [binary_r2(JointPMF.from_matrix(req.pmf))]
        )
    if req.p_obs is None:
        raise InputError(f"{req.mode} mode needs p_obs")
    model = MCARGaussianModel(mu=req.mu, sigma2=req.sigma2, p_obs=req.p_obs)
    if req.mode == "closed_form":
        return _report_response("efficiency", req.config, [mcar_measure(model)])
    pair = mc_fisher_mcar(model, req.n_rep, req.seed)
    report = efficiency_ratio(pair).with_provenance(
        {"estimator": "monte_carlo_score_variance", "n_rep": req.n_rep, "seed": req.seed}
    )
    return _report_response("efficiency", req.config, [report])


@router.post("/v1/functional")
def functional(req: FunctionalRequest) -> Response:
    x = CurveSet(np.asarray(req.x_grid), np.asarray(req.x_values), name=req.x_name)
    y = CurveSet(np.asarray(req.y_grid), np.asarray(req.y_values), name=req.y_name)
    if req.resample:
        x, y = resample_to_common(x, y)
    result = functional_measures(
        x, y, threshold_x=req.threshold_x, threshold_y=req.threshold_y, cv_p=req.cv_p
    )
    pointwise = {
        "grid": result.grid,
        "r2": [
            float(v) if keep else None
            for v, keep in zip(result.r2_curve, result.included)
        ],
        "included": [bool(b) for b in result.included],
    }
    return _report_response(
        "functional", req.config, list(result.reports), extras={"pointwise_fit": pointwise}
    )


def _table_payload(table: SampleTable) -> dict:
    return {
        "columns": {name: table.column(name).tolist() for name in table.names},
        "kinds": {name: table.kind(name) for name in table.names},
    }


def _curves_payload(curves: CurveSet) -> dict:
    return {
        "name": curves.name,
        "grid": curves.grid.tolist(),
        "values": curves.values.tolist(),
    }


@router.post("/v1/simulate")
def simulate(req: SimulateRequest) -> JSONResponse:
    if req.kind == "joint":
        joint, table = sample_joint_table(req.nx, req.ny, req.concentration, req.n, req.seed)
        data = {
            "table": _table_payload(table),
            "pmf": {
                "x_labels": list(joint.x_labels),
                "y_labels": list(joint.y_labels),
                "probs": joint.probs.tolist(),
            },
        }
    elif req.kind == "mcar":
        model = MCARGaussianModel(mu=req.mu, sigma2=req.sigma2, p_obs=req.p_obs)
        data = {"table": _table_payload(gen_mcar(model, req.n, req.seed))}
    elif req.kind == "normal":
        data = {"table": _table_payload(gen_bivariate_normal(req.rho, req.n, req.seed))}
    else:
        x, y = gen_flm_pair(
            req.n, req.grid_size, req.x_variances, req.beta_diag, req.noise_sd, req.seed
        )
        data = {"curves_x": _curves_payload(x), "curves_y": _curves_payload(y)}
    return JSONResponse({"kind": req.kind, "seed": req.seed, "data": data})


@router.post("/v1/check")
def check(req: CheckRequest) -> Response:
    suite = axiom_suite(
        n_joints=req.n_joints,
        seed=req.seed,
        tolerance=req.tolerance,
        max_support=req.max_support,
        concentration=req.concentration,
    )
    return _report_response("check", req.config, [], extras={"check": suite.to_dict()})


async def _depmeas_error_handler(request: Request, exc: DepmeasError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={
            "error": {
                "type": type(exc).__name__,
                "message": str(exc),
                "exit_code": exc.exit_code,
            }
        },
    )


def create_app() -> FastAPI:
    app = FastAPI(title=TOOL_NAME, version=__version__)
    app.include_router(router)
    app.add_exception_handler(DepmeasError, _depmeas_error_handler)
    return app
