"""causetsim: transactional growth, Poisson sprinkling and analysis of causal sets."""

from . import errors
from .analysis import (
    CausetStats,
    PoissonFitReport,
    export_dot,
    export_json,
    import_json,
    poisson_fit,
    spatial_separation,
    stats,
)
from .born import (
    ElevationParams,
    HermitianGenerator,
    OfferWave,
    WeightDistribution,
    actualize,
    born_weights,
    elevation_probability,
    evolve,
    project_to_mixed,
)
from .causet import Causet, ValidationReport, Violation
from .growth import (
    ClockSpec,
    GrowthConfig,
    SubstratumNode,
    SubstratumState,
    TransactionRecord,
    candidate_absorbers,
    clock_tick_interval,
    interval_kind_for,
    offer_amplitudes,
    run,
    step,
)
from .sprinkling import (
    Box,
    Diamond,
    SprinkledCauset,
    causally_precedes_coords,
    induce_order,
    poisson_sample_count,
    region_from_dict,
    region_volume,
    sprinkle,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "Causet",
    "CausetStats",
    "ClockSpec",
    "Diamond",
    "ElevationParams",
    "GrowthConfig",
    "HermitianGenerator",
    "OfferWave",
    "PoissonFitReport",
    "SprinkledCauset",
    "SubstratumNode",
    "SubstratumState",
    "TransactionRecord",
    "ValidationReport",
    "Violation",
    "WeightDistribution",
    "actualize",
    "born_weights",
    "candidate_absorbers",
    "causally_precedes_coords",
    "clock_tick_interval",
    "elevation_probability",
    "errors",
    "evolve",
    "export_dot",
    "export_json",
    "import_json",
    "induce_order",
    "interval_kind_for",
    "offer_amplitudes",
    "poisson_fit",
    "poisson_sample_count",
    "project_to_mixed",
    "region_from_dict",
    "region_volume",
    "run",
    "spatial_separation",
    "sprinkle",
    "stats",
    "step",
]
