"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

ComplexPair = tuple[float, float]


class RegionModel(BaseModel):
    kind: Literal["box", "diamond"]
    t: Optional[tuple[float, float]] = None
    x: Optional[list[tuple[float, float]]] = None
    p: Optional[list[float]] = None
    q: Optional[list[float]] = None

    def to_dict(self) -> dict:
        return self.model_dump(exclude_none=True)


class CausetDocument(BaseModel):
    version: int = 1
    elements: list[int]
    relations: list[tuple[int, int]]
    coords: Optional[dict[int, list[float]]] = None
    meta: Optional[dict] = None


class SprinkleRequest(BaseModel):
    region: RegionModel
    density: float = Field(gt=0)
    seed: int = Field(ge=0)


class SprinkleResponse(BaseModel):
    causet: CausetDocument
    element_count: int
    relation_count: int
    volume: float


class ElevationModel(BaseModel):
    coupling: float = Field(ge=0, le=1)
    transition_probability: float = Field(ge=0, le=1)


class NodeModel(BaseModel):
    id: int
    state: Literal["ground", "excited"] = "ground"
    decay_rate: float = Field(default=1.0, gt=0)
    mass_kind: Literal["photon-emitter", "massive-emitter"] = "photon-emitter"
    position: Optional[list[float]] = None


class ClockModel(BaseModel):
    clock_node: int
    period: float = Field(gt=0)


class GrowRequest(BaseModel):
    nodes: list[NodeModel]
    seed: int = Field(default=0, ge=0)
    elevation: ElevationModel = ElevationModel(coupling=1.0, transition_probability=1.0)
    amplitude_model: Literal["equal", "inverse-square"] = "equal"
    max_events: Optional[int] = Field(default=None, ge=0)
    max_sim_time: Optional[float] = Field(default=None, gt=0)
    massive_speed: float = Field(default=0.5, gt=0, lt=1)
    clock: Optional[ClockModel] = None


class TransactionModel(BaseModel):
    emitter_node: int
    absorber_node: int
    emission_event: int
    absorption_event: int
    interval_kind: Literal["null", "timelike"]
    emission_time: float
    absorption_time: float


class GrowResponse(BaseModel):
    causet: CausetDocument
    transactions: list[TransactionModel]
    stop_reason: Optional[str]
    sim_time: float
    element_count: int


class ValidateRequest(BaseModel):
    causet: CausetDocument


class ViolationModel(BaseModel):
    kind: str
    elements: list[int]


class ValidateResponse(BaseModel):
    valid: bool
    transitive: bool
    irreflexive: bool
    acyclic: bool
    violations: list[ViolationModel]
    truncated: bool


class StatsModel(BaseModel):
    element_count: int
    relation_count: int
    link_count: int
    longest_chain_length: int
    maximum_antichain_size: int
    ordering_fraction: float


class AnalyzeRequest(BaseModel):
    causet: CausetDocument
    dot: bool = False
    labels: Optional[dict[int, str]] = None


class AnalyzeResponse(BaseModel):
    stats: StatsModel
    dot: Optional[str] = None


class BornWeightsRequest(BaseModel):
    amplitudes: list[ComplexPair]


class BornWeightsResponse(BaseModel):
    weights: list[float]


class BornEvolveRequest(BaseModel):
    amplitudes: list[ComplexPair]
    hamiltonian: list[list[ComplexPair]]
    time: float


class BornEvolveResponse(BaseModel):
    amplitudes: list[ComplexPair]


class BornSampleRequest(BaseModel):
    weights: list[float]
    seed: int = Field(ge=0)
    draws: int = Field(default=1, ge=1)


class BornSampleResponse(BaseModel):
    indices: list[int]
    counts: list[int]


class HealthResponse(BaseModel):
    status: str
    version: str
