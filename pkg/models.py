# models.py
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from config import DEFAULT_SEED, DEFAULT_TRIALS, INPUT_SHELL_TOL

# [re, im] pairs
ComplexPair = List[float]


# --- Reports ---
class CheckResult(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    suite: str
    name: str
    residual: float
    tolerance: float
    passed: bool = Field(alias="pass")

    @classmethod
    def of(cls, suite: str, name: str, residual: float, tolerance: float) -> "CheckResult":
        residual = float(residual)
        return cls(suite=suite, name=name, residual=residual, tolerance=tolerance, passed=residual <= tolerance)


class RunReport(BaseModel):
    suite: str = "verify-all"
    seed: int
    trials: int
    checks: List[CheckResult]
    # wall-clock time varies run to run, so it stays out of the JSON
    elapsed: float = Field(default=0.0, exclude=True)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, by_alias=True)


class MatrixModel(BaseModel):
    rows: int
    cols: int
    entries: List[ComplexPair]


# --- Requests ---
class ProjectorRequest(BaseModel):
    axis: List[float] = Field(min_length=6, max_length=6, description="re1,im1,re2,im2,re3,im3")
    sign: Literal["+", "-"] = "+"


class SolveRequest(BaseModel):
    E: float
    p: List[float] = Field(min_length=3, max_length=3)
    m: float = Field(ge=0)
    alpha_re: float = 0.0
    alpha_im: float = 0.0
    branch: Literal["mixed", "equal"] = "mixed"
    shell_tol: float = Field(default=INPUT_SHELL_TOL, gt=0)


class CptRequest(BaseModel):
    alpha_re: float
    alpha_im: float = 0.0
    check: str = "CPT"


class CovarianceRequest(BaseModel):
    kind: Literal["boost", "rotation"] = "boost"
    rapidity: float = Field(ge=-10, le=10)
    axis: List[float] = Field(default=[0.0, 0.0, 1.0], min_length=3, max_length=3)
    p: List[float] = Field(default=[0.0, 0.0, 0.0], min_length=3, max_length=3)
    m: float = Field(default=1.0, ge=0)
    alpha_re: float = 0.0
    alpha_im: float = 0.0


class VerifyRequest(BaseModel):
    seed: int = DEFAULT_SEED
    trials: int = Field(default=DEFAULT_TRIALS, ge=1, le=1000)
    tol_scale: Optional[float] = Field(default=None, gt=0)


# --- Responses ---
class ProjectorResponse(BaseModel):
    projector: MatrixModel
    eigenvector: List[ComplexPair]
    residuals: dict


class SolveResponse(BaseModel):
    branch: str
    shell_gap: float
    on_shell: bool
    solutions: List[List[ComplexPair]]


class CptResponse(BaseModel):
    check: str
    alpha_out: ComplexPair
    invariant: bool
    constraint: str


class CovarianceResponse(BaseModel):
    kind: str
    intertwining: float
    metric: float
    adjoint: float
    residuals: dict
    passed: bool
