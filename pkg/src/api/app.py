"""FastAPI application per Star CLT Moments."""

import logging
from typing import Callable, List, Optional, TypeVar

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

# Handle both package and standalone import scenarios
try:
    from ..moments import report
    from ..moments.algebra import WeightVector
    from ..moments.config import get_version, load_config, setup_logging
    from ..moments.core import MomentEngine
    from ..moments.errors import ConsistencyError, InfeasibleSizeError, InputValidationError
    from ..moments.partitions import parse_partition
    from ..moments.perm import parse_cycles
    from ..moments.routes import parse_routes
except ImportError:
    import sys
    from pathlib import Path
    sys.path.insert(0, str(Path(__file__).parent.parent))
    from moments import report
    from moments.algebra import WeightVector
    from moments.config import get_version, load_config, setup_logging
    from moments.core import MomentEngine
    from moments.errors import ConsistencyError, InfeasibleSizeError, InputValidationError
    from moments.partitions import parse_partition
    from moments.perm import parse_cycles
    from moments.routes import parse_routes

_LOGGER = logging.getLogger(__name__)

T = TypeVar("T")

app = FastAPI(
    title="Star CLT Moments",
    description="Momenti esatti del limite centrale per le trasposizioni stellari",
    version=get_version(),
)

engine: Optional[MomentEngine] = None


class MomentsRequest(BaseModel):
    weights: str
    max_order: int = 8
    routes: str = "A,B,C,D"
    threads: Optional[int] = None
    timings: bool = False


class VerifyRequest(BaseModel):
    weights: str
    profile: Optional[str] = None
    gue: bool = False
    seed: int = 0


class ConvergeRequest(BaseModel):
    weights: str
    k: int
    n: List[int] = Field(default_factory=lambda: [8, 16, 32])


class CharacterRequest(BaseModel):
    weights: str
    permutation: str


class TauRequest(BaseModel):
    partition: str
    weights: Optional[str] = None


@app.on_event("startup")
async def startup_event():
    """Inizializza il motore all'avvio."""
    global engine

    _LOGGER.info("Starting Star CLT Moments API...")
    try:
        config = load_config()
        setup_logging(config.log_level)
        engine = MomentEngine(config)
        _LOGGER.info(f"Engine initialized with options {config.to_dict()}")
    except Exception as e:
        _LOGGER.error(f"Failed to initialize engine: {e}")
        engine = None


def _require_engine() -> MomentEngine:
    if engine is None:
        raise HTTPException(status_code=503, detail="Engine not initialized")
    return engine


def _run(action: Callable[[], T]) -> T:
    """Esegue un'operazione del motore traducendo gli errori in HTTPException."""
    try:
        return action()
    except InputValidationError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except InfeasibleSizeError as e:
        raise HTTPException(status_code=413, detail=str(e))
    except ConsistencyError as e:
        _LOGGER.error(f"Consistency failure: {e}")
        raise HTTPException(status_code=500, detail=f"Consistency failure: {e}")


@app.get("/api/health")
async def health_check():
    """Health check endpoint."""
    return {
        "status": "ok" if engine else "error",
        "message": "Engine initialized" if engine else "Engine not initialized",
        "cache": engine.cache.stats() if engine else None,
    }


@app.get("/api/version")
async def version():
    return {"version": get_version()}


@app.post("/api/moments", response_model=report.MomentReportModel, response_model_exclude_none=True)
def moments(request: MomentsRequest):
    """Tabella dei momenti per k = 0..max_order."""
    current = _require_engine()

    def action():
        w = WeightVector.parse(request.weights)
        result = current.compute_moments(w, request.max_order, parse_routes(request.routes), request.threads)
        if not result.agree:
            raise ConsistencyError(f"Routes disagree for w=({w})")
        return report.moment_report_model(result, request.timings)

    return _run(action)


@app.post("/api/verify", response_model=report.VerificationReportModel)
def verify(request: VerifyRequest):
    """Esegue le suite di verifica."""
    current = _require_engine()
    return _run(lambda: report.verification_report_model(
        current.verify(WeightVector.parse(request.weights), request.profile,
                       gue=request.gue, seed=request.seed)))


@app.post("/api/converge", response_model=report.ConvergenceTableModel)
def converge(request: ConvergeRequest):
    current = _require_engine()
    return _run(lambda: report.convergence_table_model(
        current.converge(WeightVector.parse(request.weights), request.k, request.n)))


@app.post("/api/character", response_model=report.CharacterModel)
def character(request: CharacterRequest):
    current = _require_engine()

    def action():
        w = WeightVector.parse(request.weights)
        return report.character_model(w, current.character(w, parse_cycles(request.permutation)))

    return _run(action)


@app.post("/api/tau", response_model=report.TauInfoModel, response_model_exclude_none=True)
def tau(request: TauRequest):
    """tau_pi, sigma_pi e corrispondenza delle orbite per una partizione."""
    current = _require_engine()

    def action():
        w = WeightVector.parse(request.weights) if request.weights else None
        return report.tau_info_model(current.tau_info(parse_partition(request.partition), w))

    return _run(action)
