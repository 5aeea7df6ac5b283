"""Poisson sprinkling into flat Minkowski regions (c = 1, natural units).

Points are dropped by a Poisson process at density rho, then ordered by
lightcone causality: a precedes b iff b is inside or on a's future cone.
At unit density the expected element count equals the region volume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .causet import Causet
from .errors import DegenerateRegion, DimensionMismatch

MAX_DIMENSION = 6  # rejection sampling efficiency degrades quickly beyond this


@dataclass(frozen=True)
class Box:
    """Axis-aligned box: one time range and d-1 spatial ranges."""

    t_range: tuple[float, float]
    x_ranges: tuple[tuple[float, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "t_range", tuple(float(v) for v in self.t_range))
        object.__setattr__(
            self, "x_ranges", tuple(tuple(float(v) for v in r) for r in self.x_ranges)
        )
        _check_dimension(self.dimension)
        for lo, hi in (self.t_range, *self.x_ranges):
            if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
                raise DegenerateRegion(f"empty or infinite range ({lo}, {hi})")

    @property
    def dimension(self) -> int:
        return 1 + len(self.x_ranges)


@dataclass(frozen=True)
class Diamond:
    """Causal diamond between a past tip p and a future tip q.

    The tips must be timelike separated with q to the future of p.
    """

    p: tuple[float, ...]
    q: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(float(v) for v in self.p))
        object.__setattr__(self, "q", tuple(float(v) for v in self.q))
        if len(self.p) != len(self.q):
            raise DimensionMismatch(f"tips of dimension {len(self.p)} vs {len(self.q)}")
        _check_dimension(self.dimension)
        if not all(math.isfinite(v) for v in self.p + self.q):
            raise DegenerateRegion("non-finite tip coordinates")
        dt = self.q[0] - self.p[0]
        dx2 = sum((a - b) ** 2 for a, b in zip(self.q[1:], self.p[1:]))
        if dt <= 0 or dt * dt <= dx2:
            raise DegenerateRegion("tips must be timelike separated, future-directed")

    @property
    def dimension(self) -> int:
        return len(self.p)

    @property
    def proper_time(self) -> float:
        dt = self.q[0] - self.p[0]
        dx2 = sum((a - b) ** 2 for a, b in zip(self.q[1:], self.p[1:]))
        return math.sqrt(dt * dt - dx2)


MinkowskiRegion = Union[Box, Diamond]


def _check_dimension(d: int) -> None:
    if d < 2:
        raise DegenerateRegion(f"dimension {d} < 2 (need 1 time + >=1 space)")
    if d > MAX_DIMENSION:
        raise DegenerateRegion(f"dimension {d} > {MAX_DIMENSION} not supported")


def _ball_volume(k: int, r: float) -> float:
    return math.pi ** (k / 2) / math.gamma(k / 2 + 1) * r**k


def region_volume(region: MinkowskiRegion) -> float:
    """Lebesgue volume of the region in natural units."""
    if isinstance(region, Box):
        vol = region.t_range[1] - region.t_range[0]
        for lo, hi in region.x_ranges:
            vol *= hi - lo
        return vol
    if isinstance(region, Diamond):
        # Two cones of height tau/2 over a (d-1)-ball of radius tau/2; the
        # result depends only on the invariant tip separation tau.
        d = region.dimension
        half = region.proper_time / 2.0
        return 2.0 * _ball_volume(d - 1, half) * half / d
    raise DegenerateRegion(f"unknown region type {type(region).__name__}")


def region_from_dict(spec: dict) -> MinkowskiRegion:
    """Parse the JSON region specification used by the CLI and service."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise DegenerateRegion("region spec must be an object with a 'kind'")
    kind = spec["kind"]
    try:
        if kind == "box":
            return Box(t_range=tuple(spec["t"]), x_ranges=tuple(map(tuple, spec["x"])))
        if kind == "diamond":
            return Diamond(p=tuple(spec["p"]), q=tuple(spec["q"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise DegenerateRegion(f"bad region spec: {exc}") from exc
    raise DegenerateRegion(f"unknown region kind {kind!r}")


def region_to_dict(region: MinkowskiRegion) -> dict:
    if isinstance(region, Box):
        return {
            "kind": "box",
            "t": list(region.t_range),
            "x": [list(r) for r in region.x_ranges],
        }
    return {"kind": "diamond", "p": list(region.p), "q": list(region.q)}


def causally_precedes_coords(a: Sequence[float], b: Sequence[float]) -> bool:
    """True iff b lies in or on the future lightcone of a.

    The null boundary is included; equal-time points are incomparable.
    """
    av = np.asarray(a, dtype=float)
    bv = np.asarray(b, dtype=float)
    if av.shape != bv.shape or av.ndim != 1:
        raise DimensionMismatch(f"coordinate shapes {av.shape} vs {bv.shape}")
    dt = bv[0] - av[0]
    if dt <= 0:
        return False
    dx2 = float(np.sum((bv[1:] - av[1:]) ** 2))
    return dt * dt >= dx2


def _causal_matrix(points: np.ndarray) -> np.ndarray:
    """Boolean matrix m[i, j] = point i causally precedes point j."""
    t = points[:, 0]
    x = points[:, 1:]
    dt = t[None, :] - t[:, None]
    dx2 = np.sum((x[None, :, :] - x[:, None, :]) ** 2, axis=2)
    return (dt > 0) & (dt * dt >= dx2)


def induce_order(points: Sequence[Sequence[float]]) -> Causet:
    """Causet over the given points with the lightcone-induced order.

    Minkowski causality is transitive, so the pairwise relation is already
    a closure; the axioms are still verified before returning.
    """
    try:
        pts = np.asarray(list(points), dtype=float)
    except ValueError as exc:
        raise DimensionMismatch(f"points must share a common dimension: {exc}") from exc
    if pts.size == 0:
        return Causet()
    if pts.ndim != 2:
        raise DimensionMismatch("points must share a common dimension")
    rel = _causal_matrix(pts)
    anc = [
        int.from_bytes(np.packbits(rel[:, j], bitorder="little").tobytes(), "little")
        for j in range(rel.shape[1])
    ]
    causet = Causet._from_bitrows(anc)
    report = causet.validate()
    if not report.ok:
        raise AssertionError(f"induced order failed validation: {report}")
    return causet


@dataclass
class SprinkledCauset:
    """A causet whose elements carry Minkowski coordinates."""

    causet: Causet
    coords: dict[int, np.ndarray]
    region: MinkowskiRegion
    density: float

    def coordinates_of(self, element: int) -> np.ndarray:
        return self.coords[element]


def poisson_sample_count(rho: float, volume: float, rng: np.random.Generator) -> int:
    """Draw N ~ Poisson(rho * volume)."""
    if rho <= 0:
        raise DegenerateRegion(f"density must be positive, got {rho}")
    if volume <= 0:
        raise DegenerateRegion(f"volume must be positive, got {volume}")
    return int(rng.poisson(rho * volume))


def _diamond_bounds(region: Diamond) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(region.p)
    q = np.asarray(region.q)
    dt = q[0] - p[0]
    center = (p[1:] + q[1:]) / 2.0
    lo = np.concatenate(([p[0]], center - dt / 2.0))
    hi = np.concatenate(([q[0]], center + dt / 2.0))
    return lo, hi


def _inside_diamond(pts: np.ndarray, region: Diamond) -> np.ndarray:
    p = np.asarray(region.p)
    q = np.asarray(region.q)
    dt_p = pts[:, 0] - p[0]
    dt_q = q[0] - pts[:, 0]
    dx2_p = np.sum((pts[:, 1:] - p[1:]) ** 2, axis=1)
    dx2_q = np.sum((q[1:] - pts[:, 1:]) ** 2, axis=1)
    return (dt_p > 0) & (dt_p * dt_p >= dx2_p) & (dt_q > 0) & (dt_q * dt_q >= dx2_q)


def _sample_uniform(region: MinkowskiRegion, n: int, rng: np.random.Generator) -> np.ndarray:
    d = region.dimension
    if n == 0:
        return np.empty((0, d))
    if isinstance(region, Box):
        lo = np.array([region.t_range[0]] + [r[0] for r in region.x_ranges])
        hi = np.array([region.t_range[1]] + [r[1] for r in region.x_ranges])
        return rng.uniform(lo, hi, size=(n, d))
    lo, hi = _diamond_bounds(region)
    rows: list[np.ndarray] = []
    need = n
    while need > 0:
        # fixed batch policy keeps the draw sequence reproducible per seed
        batch = rng.uniform(lo, hi, size=(max(4 * need, 64), d))
        accepted = batch[_inside_diamond(batch, region)]
        rows.append(accepted[:need])
        need -= len(accepted[:need])
    return np.vstack(rows)


def sprinkle(
    region: MinkowskiRegion, rho: float, rng: np.random.Generator
) -> SprinkledCauset:
    """Poisson-sprinkle the region at density rho and induce the causal order."""
    volume = region_volume(region)
    n = poisson_sample_count(rho, volume, rng)
    pts = _sample_uniform(region, n, rng)
    causet = induce_order(pts)
    coords = {i: pts[i].copy() for i in range(n)}
    return SprinkledCauset(causet=causet, coords=coords, region=region, density=rho)
