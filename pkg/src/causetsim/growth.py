"""Transactional growth of a causet from a substratum of emitter/absorber nodes.

Each step draws an exponential waiting time from the total decay rate of
the excited nodes, picks the decaying node, and runs a Bernoulli elevation
trial. On success an offer wave spans the ground-state absorbers, one is
actualized by Born sampling, and an emission/absorption event pair joined
by a new link enters the causet. The emitter drops to ground, the absorber
becomes excited, and a later emission from that absorber descends from its
absorption event, which is how chains form.

Scheduler time is internal bookkeeping: only the order relation and clock
tick counts are physical outputs. With node positions present, photon
transactions place the absorption exactly on the lightcone (null interval)
and massive ones inside it (timelike, speed < 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .born import ElevationParams, OfferWave, actualize, born_weights, elevation_probability
from .causet import Causet
from .errors import (
    CoincidentNodes,
    Incomparable,
    MissingPositions,
    NoCandidates,
    NoClock,
    NotExcited,
    UnknownNode,
)

GROUND = "ground"
EXCITED = "excited"
PHOTON_EMITTER = "photon-emitter"
MASSIVE_EMITTER = "massive-emitter"

EMISSION = "emission"
ABSORPTION = "absorption"

NULL = "null"
TIMELIKE = "timelike"

AMPLITUDE_MODELS = ("equal", "inverse-square")


@dataclass
class SubstratumNode:
    """One pre-spacetime node: an atom that can emit or absorb."""

    node_id: int
    state: str
    decay_rate: float
    mass_kind: str = PHOTON_EMITTER
    position: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.state not in (GROUND, EXCITED):
            raise ValueError(f"state must be '{GROUND}' or '{EXCITED}', got {self.state!r}")
        if self.mass_kind not in (PHOTON_EMITTER, MASSIVE_EMITTER):
            raise ValueError(f"unknown mass_kind {self.mass_kind!r}")
        if not self.decay_rate > 0:
            raise ValueError(f"decay_rate must be positive, got {self.decay_rate}")
        if self.position is not None:
            pos = np.atleast_1d(np.asarray(self.position, dtype=float))
            object.__setattr__(self, "position", pos)


@dataclass(frozen=True)
class ClockSpec:
    """A dedicated node ticking deterministically at a fixed period."""

    clock_node: int
    period: float

    def __post_init__(self):
        if not self.period > 0:
            raise ValueError(f"clock period must be positive, got {self.period}")


@dataclass
class GrowthConfig:
    seed: int = 0
    elevation: ElevationParams = field(
        default_factory=lambda: ElevationParams(1.0, 1.0)
    )
    amplitude_model: str = "equal"
    max_events: Optional[int] = None  # bounds actualized transactions
    max_sim_time: Optional[float] = None
    massive_speed: float = 0.5
    clock: Optional[ClockSpec] = None

    def __post_init__(self):
        if self.amplitude_model not in AMPLITUDE_MODELS:
            raise ValueError(f"amplitude_model must be one of {AMPLITUDE_MODELS}")
        if self.max_events is None and self.max_sim_time is None:
            raise ValueError("at least one of max_events / max_sim_time must be set")
        if self.max_events is not None and self.max_events < 0:
            raise ValueError("max_events must be non-negative")
        if not 0 < self.massive_speed < 1:
            raise ValueError(f"massive_speed must lie in (0, 1), got {self.massive_speed}")


@dataclass(frozen=True)
class TransactionRecord:
    """One actualized transaction and the interval it created."""

    emitter_node: int
    absorber_node: int
    emission_event: int
    absorption_event: int
    interval_kind: str
    emission_time: float
    absorption_time: float

    def to_dict(self) -> dict:
        return {
            "emitter_node": self.emitter_node,
            "absorber_node": self.absorber_node,
            "emission_event": self.emission_event,
            "absorption_event": self.absorption_event,
            "interval_kind": self.interval_kind,
            "emission_time": self.emission_time,
            "absorption_time": self.absorption_time,
        }


@dataclass
class EventMeta:
    """Provenance of one causet element."""

    node_id: int
    role: str  # EMISSION or ABSORPTION
    sim_time: float
    coords: Optional[np.ndarray] = None


class SubstratumState:
    """The substratum plus the causet grown from it so far."""

    def __init__(self, nodes: list[SubstratumNode]):
        self.nodes: dict[int, SubstratumNode] = {}
        for node in nodes:
            if node.node_id in self.nodes:
                raise ValueError(f"duplicate node id {node.node_id}")
            self.nodes[node.node_id] = node
        self._check_positions()
        self.sim_time: float = 0.0
        self.causet = Causet()
        self.event_meta: dict[int, EventMeta] = {}
        self.transactions: list[TransactionRecord] = []
        self.clock: Optional[ClockSpec] = None
        self.clock_events: list[int] = []
        self.stop_reason: Optional[str] = None
        self._last_absorption: dict[int, int] = {}
        self._next_tick: int = 1

    def _check_positions(self) -> None:
        positioned = [n for n in self.nodes.values() if n.position is not None]
        if positioned and len(positioned) != len(self.nodes):
            raise ValueError("either every node has a position or none does")
        dims = {len(n.position) for n in positioned}
        if len(dims) > 1:
            raise ValueError(f"inconsistent position dimensions {sorted(dims)}")

    @property
    def has_positions(self) -> bool:
        return bool(self.nodes) and next(iter(self.nodes.values())).position is not None

    def excited_nodes(self) -> list[int]:
        return sorted(i for i, n in self.nodes.items() if n.state == EXCITED)

    def ground_nodes(self) -> list[int]:
        return sorted(i for i, n in self.nodes.items() if n.state == GROUND)


def nodes_from_dicts(specs) -> list[SubstratumNode]:
    """Parse the node list from the JSON growth configuration."""
    if not isinstance(specs, list):
        raise ValueError("'nodes' must be a list of node objects")
    nodes = []
    for spec in specs:
        if not isinstance(spec, dict) or "id" not in spec:
            raise ValueError(f"bad node spec {spec!r}")
        nodes.append(
            SubstratumNode(
                node_id=int(spec["id"]),
                state=spec.get("state", GROUND),
                decay_rate=float(spec.get("decay_rate", 1.0)),
                mass_kind=spec.get("mass_kind", PHOTON_EMITTER),
                position=spec.get("position"),
            )
        )
    return nodes


def config_from_dict(spec: dict, seed_override: Optional[int] = None) -> GrowthConfig:
    """Parse a GrowthConfig from the JSON growth configuration."""
    elevation_spec = spec.get("elevation", {})
    elevation = ElevationParams(
        coupling=float(elevation_spec.get("coupling", 1.0)),
        transition_probability=float(elevation_spec.get("transition_probability", 1.0)),
    )
    clock_spec = spec.get("clock")
    clock = None
    if clock_spec is not None:
        clock = ClockSpec(
            clock_node=int(clock_spec["clock_node"]),
            period=float(clock_spec["period"]),
        )
    seed = seed_override if seed_override is not None else spec.get("seed", 0)
    max_events = spec.get("max_events")
    max_sim_time = spec.get("max_sim_time")
    return GrowthConfig(
        seed=int(seed),
        elevation=elevation,
        amplitude_model=spec.get("amplitude_model", "equal"),
        max_events=None if max_events is None else int(max_events),
        max_sim_time=None if max_sim_time is None else float(max_sim_time),
        massive_speed=float(spec.get("massive_speed", 0.5)),
        clock=clock,
    )


def candidate_absorbers(state: SubstratumState, emitter: int) -> list[int]:
    """All ground-state nodes other than the emitter, ascending by node id."""
    if emitter not in state.nodes:
        raise UnknownNode(f"no node {emitter}")
    if state.nodes[emitter].state != EXCITED:
        raise NotExcited(f"node {emitter} is not excited")
    return [i for i in state.ground_nodes() if i != emitter]


def offer_amplitudes(
    state: SubstratumState,
    emitter: int,
    candidates: list[int],
    model: str = "equal",
) -> OfferWave:
    """Offer wave over the candidate absorbers.

    'equal' spreads the isotropic wave evenly (a_i = 1/sqrt(n));
    'inverse-square' weights flux by 1/r^2, i.e. amplitudes by 1/r.
    """
    if not candidates:
        raise NoCandidates("offer requires at least one candidate absorber")
    n = len(candidates)
    if model == "equal":
        amps = np.full(n, 1.0 / math.sqrt(n))
    elif model == "inverse-square":
        source = state.nodes[emitter]
        if source.position is None or any(
            state.nodes[c].position is None for c in candidates
        ):
            raise MissingPositions("inverse-square amplitudes require node positions")
        dists = np.array(
            [np.linalg.norm(state.nodes[c].position - source.position) for c in candidates]
        )
        if np.any(dists == 0):
            raise CoincidentNodes("zero emitter-absorber distance")
        amps = (1.0 / dists) / np.linalg.norm(1.0 / dists)
    else:
        raise ValueError(f"unknown amplitude model {model!r}")
    return OfferWave(amps, emitter_tag=emitter)


def interval_kind_for(emitter: SubstratumNode) -> str:
    """Null for photon emitters, timelike for massive ones."""
    return NULL if emitter.mass_kind == PHOTON_EMITTER else TIMELIKE


def _advance_time(state: SubstratumState, clock: Optional[ClockSpec], t: float) -> None:
    """Move sim_time forward to t, emitting any clock ticks passed on the way."""
    if clock is not None:
        state.clock = clock
        node = state.nodes.get(clock.clock_node)
        while state._next_tick * clock.period <= t:
            tick_time = state._next_tick * clock.period
            element = state.causet.add_element()
            if state.clock_events:
                state.causet.add_relation(state.clock_events[-1], element)
            coords = None
            if node is not None and node.position is not None:
                coords = np.concatenate(([tick_time], node.position))
            state.event_meta[element] = EventMeta(
                node_id=clock.clock_node,
                role=EMISSION,
                sim_time=tick_time,
                coords=coords,
            )
            state.clock_events.append(element)
            state._next_tick += 1
    state.sim_time = t


def step(
    state: SubstratumState, cfg: GrowthConfig, rng: np.random.Generator
) -> SubstratumState:
    """Advance the substratum by one decay opportunity.

    Consumes randomness in a fixed order: waiting time, decaying-node pick,
    elevation trial, absorber pick. A failed elevation advances time and
    leaves the causet unchanged (the exchange stays virtual and the node
    stays excited). The clock node, when configured, neither decays nor
    absorbs; it ticks deterministically.
    """
    clock_id = cfg.clock.clock_node if cfg.clock is not None else None
    if clock_id is not None and clock_id not in state.nodes:
        raise UnknownNode(f"clock node {clock_id} does not exist")
    excited = [i for i in state.excited_nodes() if i != clock_id]
    ground = [i for i in state.ground_nodes() if i != clock_id]
    if not excited or not ground:
        raise NoCandidates(
            f"need an excited and a ground node ({len(excited)} excited, "
            f"{len(ground)} ground available)"
        )

    rates = np.array([state.nodes[i].decay_rate for i in excited])
    total_rate = float(rates.sum())
    wait = rng.exponential(1.0 / total_rate)
    t_decay = state.sim_time + wait
    if cfg.max_sim_time is not None and t_decay > cfg.max_sim_time:
        # the draw overshoots the horizon: stop at it, no transaction
        _advance_time(state, cfg.clock, cfg.max_sim_time)
        return state
    _advance_time(state, cfg.clock, t_decay)

    pick = rng.random() * total_rate
    emitter = excited[min(int(np.searchsorted(np.cumsum(rates), pick, side="right")),
                          len(excited) - 1)]

    if rng.random() >= elevation_probability(cfg.elevation):
        return state  # exchange stays virtual; excitation is retained

    offer = offer_amplitudes(state, emitter, ground, cfg.amplitude_model)
    absorber = ground[actualize(born_weights(offer), rng)]

    emitter_node = state.nodes[emitter]
    absorber_node = state.nodes[absorber]
    kind = interval_kind_for(emitter_node)
    t_emit = state.sim_time
    if emitter_node.position is not None and absorber_node.position is not None:
        distance = float(np.linalg.norm(absorber_node.position - emitter_node.position))
        speed = 1.0 if kind == NULL else cfg.massive_speed
        t_abs = t_emit + distance / speed
        emission_coords = np.concatenate(([t_emit], emitter_node.position))
        absorption_coords = np.concatenate(([t_abs], absorber_node.position))
    else:
        t_abs = t_emit
        emission_coords = absorption_coords = None

    emission = state.causet.add_element()
    absorption = state.causet.add_element()
    state.causet.add_relation(emission, absorption)
    previous = state._last_absorption.get(emitter)
    if previous is not None:
        state.causet.add_relation(previous, emission)

    state.event_meta[emission] = EventMeta(emitter, EMISSION, t_emit, emission_coords)
    state.event_meta[absorption] = EventMeta(absorber, ABSORPTION, t_abs, absorption_coords)
    state.transactions.append(
        TransactionRecord(
            emitter_node=emitter,
            absorber_node=absorber,
            emission_event=emission,
            absorption_event=absorption,
            interval_kind=kind,
            emission_time=t_emit,
            absorption_time=t_abs,
        )
    )

    emitter_node.state = GROUND
    absorber_node.state = EXCITED
    state._last_absorption[absorber] = absorption

    if t_abs > state.sim_time:
        # no new offer may launch before the in-flight quantum lands
        _advance_time(state, cfg.clock, t_abs)
    return state


def run(
    cfg: GrowthConfig,
    initial: SubstratumState,
    rng: Optional[np.random.Generator] = None,
) -> SubstratumState:
    """Repeat `step` until a stopping bound is reached.

    NoCandidates propagates only when raised on the very first step; later
    exhaustion ends the run with stop_reason 'no_candidates'.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    state = initial
    if cfg.clock is not None:
        if cfg.clock.clock_node not in state.nodes:
            raise UnknownNode(f"clock node {cfg.clock.clock_node} does not exist")
        state.clock = cfg.clock
    first = True
    while True:
        if cfg.max_events is not None and len(state.transactions) >= cfg.max_events:
            state.stop_reason = "max_events"
            break
        if cfg.max_sim_time is not None and state.sim_time >= cfg.max_sim_time:
            state.stop_reason = "max_sim_time"
            break
        try:
            step(state, cfg, rng)
        except NoCandidates:
            if first:
                raise
            state.stop_reason = "no_candidates"
            break
        first = False
    return state


def clock_tick_interval(state: SubstratumState, a: int, b: int) -> int:
    """Number of clock ticks falling within [time(a), time(b)].

    Only comparable pairs can be timed; asking for the interval between
    incomparable events raises Incomparable. The count is approximate by
    construction: an absorber takes part in one transaction per instant.
    """
    if state.clock is None:
        raise NoClock("no clock configured for this state")
    if a not in state.event_meta or b not in state.event_meta:
        raise UnknownNode(f"no event metadata for pair ({a}, {b})")
    if a == b:
        return 0
    if not state.causet.comparable(a, b):
        raise Incomparable(f"events {a} and {b} are not causally related")
    ta = state.event_meta[a].sim_time
    tb = state.event_meta[b].sim_time
    lo, hi = min(ta, tb), max(ta, tb)
    return sum(
        1 for e in state.clock_events if lo <= state.event_meta[e].sim_time <= hi
    )
