"""HTTP front end exposing the core operations as a stateless JSON API.

Every endpoint is a pure request/response computation: seeds travel in the
request, so identical requests return identical bodies. Run with

    uvicorn causetsim.service:app
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .analysis import document_dict, export_dot, load_document, stats, validate_document
from .born import (
    HermitianGenerator,
    OfferWave,
    WeightDistribution,
    actualize,
    born_weights,
    evolve,
)
from .errors import CausetSimError
from .growth import GrowthConfig, SubstratumState, config_from_dict, nodes_from_dicts, run
from .schemas import (
    AnalyzeRequest,
    AnalyzeResponse,
    BornEvolveRequest,
    BornEvolveResponse,
    BornSampleRequest,
    BornSampleResponse,
    BornWeightsRequest,
    BornWeightsResponse,
    CausetDocument,
    GrowRequest,
    GrowResponse,
    HealthResponse,
    SprinkleRequest,
    SprinkleResponse,
    StatsModel,
    TransactionModel,
    ValidateRequest,
    ValidateResponse,
    ViolationModel,
)
from .sprinkling import region_from_dict, region_volume, sprinkle

app = FastAPI(title="causetsim", version=__version__)


@app.exception_handler(CausetSimError)
async def domain_error_handler(request: Request, exc: CausetSimError) -> JSONResponse:
    return JSONResponse(
        status_code=422,
        content={"detail": str(exc), "error": type(exc).__name__},
    )


@app.exception_handler(ValueError)
async def value_error_handler(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc), "error": "ValueError"})


def _causet_document(causet, coords=None, meta=None) -> CausetDocument:
    doc = document_dict(causet, coords=coords, meta=meta)
    if "coords" in doc:
        doc["coords"] = {int(k): v for k, v in doc["coords"].items()}
    return CausetDocument(**doc)


def _load_request_causet(doc: CausetDocument):
    return load_document(doc.model_dump(exclude_none=True))


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/sprinkle", response_model=SprinkleResponse)
def sprinkle_endpoint(request: SprinkleRequest) -> SprinkleResponse:
    region = region_from_dict(request.region.to_dict())
    rng = np.random.default_rng(request.seed)
    result = sprinkle(region, request.density, rng)
    return SprinkleResponse(
        causet=_causet_document(result.causet, coords=result.coords),
        element_count=len(result.causet),
        relation_count=result.causet.relation_count,
        volume=region_volume(region),
    )


@app.post("/grow", response_model=GrowResponse)
def grow_endpoint(request: GrowRequest) -> GrowResponse:
    spec = request.model_dump(exclude_none=True)
    cfg: GrowthConfig = config_from_dict(spec)
    state = SubstratumState(nodes_from_dicts(spec["nodes"]))
    state = run(cfg, state)
    coords = {e: m.coords for e, m in state.event_meta.items() if m.coords is not None}
    return GrowResponse(
        causet=_causet_document(state.causet, coords=coords or None),
        transactions=[TransactionModel(**t.to_dict()) for t in state.transactions],
        stop_reason=state.stop_reason,
        sim_time=state.sim_time,
        element_count=len(state.causet),
    )


@app.post("/validate", response_model=ValidateResponse)
def validate_endpoint(request: ValidateRequest) -> ValidateResponse:
    report = validate_document(request.causet.model_dump(exclude_none=True))
    return ValidateResponse(
        valid=report.ok,
        transitive=report.transitive,
        irreflexive=report.irreflexive,
        acyclic=report.acyclic,
        violations=[
            ViolationModel(kind=v.kind, elements=list(v.elements))
            for v in report.violations
        ],
        truncated=report.truncated,
    )


@app.post("/analyze", response_model=AnalyzeResponse)
def analyze_endpoint(request: AnalyzeRequest) -> AnalyzeResponse:
    causet, _, _ = _load_request_causet(request.causet)
    dot = export_dot(causet, labels=request.labels) if request.dot else None
    return AnalyzeResponse(stats=StatsModel(**stats(causet).to_dict()), dot=dot)


@app.post("/born/weights", response_model=BornWeightsResponse)
def born_weights_endpoint(request: BornWeightsRequest) -> BornWeightsResponse:
    offer = OfferWave([complex(re, im) for re, im in request.amplitudes])
    return BornWeightsResponse(weights=born_weights(offer).weights.tolist())


@app.post("/born/evolve", response_model=BornEvolveResponse)
def born_evolve_endpoint(request: BornEvolveRequest) -> BornEvolveResponse:
    offer = OfferWave([complex(re, im) for re, im in request.amplitudes])
    matrix = np.array(
        [[complex(re, im) for re, im in row] for row in request.hamiltonian]
    )
    evolved = evolve(offer, HermitianGenerator(matrix), request.time)
    return BornEvolveResponse(
        amplitudes=[(z.real, z.imag) for z in evolved.amplitudes.tolist()]
    )


@app.post("/born/sample", response_model=BornSampleResponse)
def born_sample_endpoint(request: BornSampleRequest) -> BornSampleResponse:
    dist = WeightDistribution(request.weights)
    rng = np.random.default_rng(request.seed)
    indices = [actualize(dist, rng) for _ in range(request.draws)]
    counts = np.bincount(indices, minlength=len(dist)).tolist()
    return BornSampleResponse(indices=indices, counts=counts)


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8000)
