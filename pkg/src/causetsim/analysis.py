"""Causet statistics, the comparability-gated spatial query, and JSON/DOT export.

Spatial distance is only defined across a temporal relation: querying an
incomparable pair raises Incomparable rather than returning a number. The
JSON document stores links only (the transitive reduction) and re-closes
on import; DOT output is the Hasse diagram with past-to-future edges.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .causet import Causet, ValidationReport, transitive_closure_of
from .errors import (
    CausetSimError,
    Incomparable,
    InsufficientSamples,
    MissingCoordinates,
    ParseError,
    UnknownElement,
    ValidationFailed,
)
from .growth import SubstratumState
from .sprinkling import SprinkledCauset

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CausetStats:
    element_count: int
    relation_count: int
    link_count: int
    longest_chain_length: int
    maximum_antichain_size: int
    ordering_fraction: float

    def to_dict(self) -> dict:
        return {
            "element_count": self.element_count,
            "relation_count": self.relation_count,
            "link_count": self.link_count,
            "longest_chain_length": self.longest_chain_length,
            "maximum_antichain_size": self.maximum_antichain_size,
            "ordering_fraction": self.ordering_fraction,
        }


def stats(c: Causet) -> CausetStats:
    """Summary statistics; ordering_fraction is 2R/(N(N-1)), 0 for N <= 1."""
    n = len(c)
    r = c.relation_count
    fraction = 0.0 if n <= 1 else 2.0 * r / (n * (n - 1))
    return CausetStats(
        element_count=n,
        relation_count=r,
        link_count=len(c.links()),
        longest_chain_length=len(c.longest_chain()),
        maximum_antichain_size=len(c.maximum_antichain()),
        ordering_fraction=fraction,
    )


def _coords_of(obj, element: int) -> np.ndarray:
    if isinstance(obj, SprinkledCauset):
        coords = obj.coords.get(element)
    elif isinstance(obj, SubstratumState):
        meta = obj.event_meta.get(element)
        coords = meta.coords if meta is not None else None
    elif hasattr(obj, "coords"):
        coords = obj.coords.get(element)
    else:
        raise TypeError(f"no coordinate source on {type(obj).__name__}")
    if coords is None:
        raise MissingCoordinates(f"element {element} carries no coordinates")
    return np.asarray(coords, dtype=float)


def spatial_separation(obj, x: int, y: int) -> float:
    """Euclidean spatial distance between two *comparable* elements.

    The value is frame-dependent (measured in the stored embedding frame).
    Incomparable pairs have no temporal relationship and therefore no
    spatial one either; they raise Incomparable.
    """
    causet: Causet = obj.causet
    if x not in causet or y not in causet:
        raise UnknownElement(f"pair ({x}, {y}) not in causet")
    if not causet.comparable(x, y):
        raise Incomparable(f"elements {x} and {y} are not causally related")
    a = _coords_of(obj, x)
    b = _coords_of(obj, y)
    return float(np.linalg.norm(a[1:] - b[1:]))


def export_dot(c: Causet, labels: Optional[dict[int, str]] = None) -> str:
    """Hasse diagram in DOT: exactly the links, directed past -> future.

    Output is canonical (ascending node ids, sorted edges) and therefore
    byte-identical for equal causets.
    """
    labels = labels or {}
    lines = ["digraph causet {", "  rankdir=BT;"]
    for e in c.elements():
        if e in labels:
            text = str(labels[e]).replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  {e} [label="{text}"];')
        else:
            lines.append(f"  {e};")
    for x, y in c.links():
        lines.append(f"  {x} -> {y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def document_dict(
    c: Causet,
    coords: Optional[dict[int, np.ndarray]] = None,
    meta: Optional[dict] = None,
) -> dict:
    """The JSON-ready document for a causet (links only; closure derivable)."""
    doc: dict = {
        "version": SCHEMA_VERSION,
        "elements": list(c.elements()),
        "relations": [list(pair) for pair in c.links()],
    }
    if coords is not None:
        doc["coords"] = {
            str(i): [float(v) for v in np.asarray(coords[i]).ravel()]
            for i in sorted(coords)
        }
    if meta is not None:
        doc["meta"] = meta
    return doc


def export_json(
    c: Causet,
    coords: Optional[dict[int, np.ndarray]] = None,
    meta: Optional[dict] = None,
) -> str:
    """Canonical JSON text (sorted keys, compact separators, one newline)."""
    return json.dumps(document_dict(c, coords, meta), sort_keys=True,
                      separators=(",", ":")) + "\n"


def _document_shape(doc) -> tuple[int, list[tuple[int, int]]]:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("version") != SCHEMA_VERSION:
        raise ParseError(f"unsupported document version {doc.get('version')!r}")
    elements = doc.get("elements")
    relations = doc.get("relations")
    if not isinstance(elements, list) or not all(
        isinstance(e, int) and not isinstance(e, bool) for e in elements
    ):
        raise ParseError("'elements' must be a list of integers")
    if not isinstance(relations, list):
        raise ParseError("'relations' must be a list of [x, y] pairs")
    pairs = []
    for entry in relations:
        if (
            not isinstance(entry, (list, tuple))
            or len(entry) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in entry)
        ):
            raise ParseError(f"bad relation entry {entry!r}")
        pairs.append((entry[0], entry[1]))
    if elements != list(range(len(elements))):
        raise ValidationFailed("'elements' must be dense ids 0..n-1 in order")
    return len(elements), pairs


def _parse_coords(doc, n: int) -> Optional[dict[int, np.ndarray]]:
    raw = doc.get("coords")
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise ParseError("'coords' must map element ids to coordinate lists")
    coords: dict[int, np.ndarray] = {}
    dims = set()
    for key, value in raw.items():
        try:
            element = int(key)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad coords key {key!r}") from exc
        if not 0 <= element < n:
            raise ValidationFailed(f"coords for unknown element {element}")
        vec = np.asarray(value, dtype=float)
        if vec.ndim != 1 or vec.size < 2 or not np.all(np.isfinite(vec)):
            raise ValidationFailed(f"bad coordinates for element {element}")
        dims.add(vec.size)
        coords[element] = vec
    if len(dims) > 1:
        raise ValidationFailed(f"inconsistent coordinate dimensions {sorted(dims)}")
    return coords


def load_document(doc: dict) -> tuple[Causet, Optional[dict[int, np.ndarray]], Optional[dict]]:
    """Strict load: re-close the stored links and enforce the order axioms."""
    n, pairs = _document_shape(doc)
    causet = Causet()
    for _ in range(n):
        causet.add_element()
    for x, y in pairs:
        try:
            causet.add_relation(x, y)
        except CausetSimError as exc:
            raise ValidationFailed(f"relation ({x}, {y}): {exc}") from exc
    report = causet.validate()
    if not report.ok:
        raise ValidationFailed(f"document violates order axioms: {report}")
    return causet, _parse_coords(doc, n), doc.get("meta")


def load_document_unchecked(doc: dict) -> Causet:
    """Lenient load for validation tooling: close the stored relation set
    without enforcing the axioms, so `validate` can report what is wrong."""
    n, pairs = _document_shape(doc)
    return Causet.from_pairs(n, transitive_closure_of(n, pairs))


def import_json(text: str) -> tuple[Causet, Optional[dict[int, np.ndarray]], Optional[dict]]:
    """Inverse of export_json; round-trips (elements, closure, coords)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return load_document(doc)


@dataclass(frozen=True)
class PoissonFitReport:
    n_samples: int
    expected_mean: float
    sample_mean: float
    sample_variance: float
    variance_mean_ratio: float
    z_score: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "expected_mean": self.expected_mean,
            "sample_mean": self.sample_mean,
            "sample_variance": self.sample_variance,
            "variance_mean_ratio": self.variance_mean_ratio,
            "z_score": self.z_score,
            "passed": self.passed,
        }


def poisson_fit(counts, expected_mean: float, ratio_band=(0.8, 1.2)) -> PoissonFitReport:
    """Check count samples against Poisson(expected_mean).

    Passes when the sample mean sits within 3 sigma of the expectation and
    the variance/mean ratio lies inside ratio_band (Poisson: mean equals
    variance). Requires at least 30 samples.
    """
    values = np.asarray(list(counts), dtype=float)
    n = len(values)
    if n < 30:
        raise InsufficientSamples(f"need at least 30 samples, got {n}")
    mean = float(values.mean())
    variance = float(values.var(ddof=1))
    ratio = variance / mean if mean > 0 else math.inf
    sigma = math.sqrt(expected_mean / n)
    z = (mean - expected_mean) / sigma
    passed = abs(z) <= 3.0 and ratio_band[0] <= ratio <= ratio_band[1]
    return PoissonFitReport(
        n_samples=n,
        expected_mean=float(expected_mean),
        sample_mean=mean,
        sample_variance=variance,
        variance_mean_ratio=ratio,
        z_score=z,
        passed=passed,
    )


def validate_document(doc: dict) -> ValidationReport:
    """Validation report for a document, tolerating axiom violations."""
    return load_document_unchecked(doc).validate()
