import logging

from dotenv import load_dotenv
from fastapi import FastAPI, HTTPException

from cde import CdeBranch, FourMomentum, dispersion_check, plane_wave_solutions
from clifford import ChiralParams, gamma_chiral
from config import scaled_tolerance
from models import (
    CovarianceRequest,
    CovarianceResponse,
    CptRequest,
    CptResponse,
    MatrixModel,
    ProjectorRequest,
    ProjectorResponse,
    SolveRequest,
    SolveResponse,
    VerifyRequest,
)
from projectors import Direction3, ProjectorPair, Spin, eigvec2, parse_axis, projector2
from symmetries import (
    LorentzKind,
    adjoint_intertwines,
    alpha_transform,
    classify_alpha,
    covariance_check,
    lorentz_spinor_map,
)
from tensor_core import matrix_to_dict, vector_to_list
from verify import verify_all

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

app = FastAPI(title="Chiral Dirac Equation API")


# --- Endpoints ---

@app.get("/")
def read_root():
    return {"status": "online", "service": "Chiral Dirac Equation API"}


@app.get("/api/gamma")
def get_gamma():
    gs = gamma_chiral()
    mats = {f"gamma{mu}": matrix_to_dict(g) for mu, g in enumerate(gs.gammas)}
    mats["gamma5"] = matrix_to_dict(gs.gamma5)
    return {"representation": gs.representation, "matrices": mats}


@app.post("/api/projector", response_model=ProjectorResponse)
def get_projector(req: ProjectorRequest):
    try:
        axis = parse_axis(req.axis)
        s = Spin.parse(req.sign)
        return {
            "projector": MatrixModel(**matrix_to_dict(projector2(axis, s))),
            "eigenvector": vector_to_list(eigvec2(axis, s)),
            "residuals": ProjectorPair.about(axis).residuals(),
        }
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))


@app.post("/api/solve", response_model=SolveResponse)
def solve(req: SolveRequest):
    try:
        params = ChiralParams(req.m, complex(req.alpha_re, req.alpha_im))
        p = FourMomentum.of(req.E, req.p)
        branch = CdeBranch(req.branch)
        solutions = plane_wave_solutions(branch, p, params, shell_tol=req.shell_tol)
        report = dispersion_check(p, params, shell_tol=req.shell_tol)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))

    return {
        "branch": branch.value,
        "shell_gap": report.shell_gap,
        "on_shell": report.on_shell,
        "solutions": [vector_to_list(u.vector) for u in solutions],
    }


@app.post("/api/cpt", response_model=CptResponse)
def cpt(req: CptRequest):
    alpha = complex(req.alpha_re, req.alpha_im)
    try:
        alpha_out = alpha_transform(req.check)(alpha)
        cls = classify_alpha(req.check)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))

    return {
        "check": cls.kind,
        "alpha_out": [alpha_out.real, alpha_out.imag],
        "invariant": cls.test(alpha),
        "constraint": cls.constraint,
    }


@app.post("/api/covariance", response_model=CovarianceResponse)
def covariance(req: CovarianceRequest):
    try:
        params = ChiralParams(req.m, complex(req.alpha_re, req.alpha_im))
        lmap = lorentz_spinor_map(LorentzKind(req.kind), req.rapidity, Direction3.of(req.axis))
        p = FourMomentum.on_shell(req.p, params.mass)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))

    residuals = {b.value: covariance_check(lmap, p, params, b).residual for b in CdeBranch}
    tol = scaled_tolerance("symmetries.covariance")
    return {
        "kind": lmap.kind.value,
        "intertwining": lmap.intertwining_residual(),
        "metric": lmap.metric_residual(),
        "adjoint": adjoint_intertwines(lmap),
        "residuals": residuals,
        "passed": all(r <= tol for r in residuals.values()),
    }


@app.post("/api/verify-all")
def run_verify_all(req: VerifyRequest):
    report = verify_all(seed=req.seed, trials=req.trials, tol_scale=req.tol_scale)
    logger.info("verify-all over the API: %d failures", len(report.failures))
    return report.model_dump(by_alias=True)
