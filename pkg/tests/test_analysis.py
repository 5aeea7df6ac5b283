"""Tests for statistics, the spatial query gate, and JSON/DOT round trips."""

import json

import numpy as np
import pytest

from causetsim import (
    Box,
    Causet,
    Diamond,
    SprinkledCauset,
    SubstratumNode,
    SubstratumState,
    export_dot,
    export_json,
    import_json,
    poisson_fit,
    spatial_separation,
    sprinkle,
    stats,
)
from causetsim.analysis import validate_document
from causetsim.errors import (
    Incomparable,
    InsufficientSamples,
    MissingCoordinates,
    ParseError,
    UnknownElement,
    ValidationFailed,
)
from causetsim.growth import EventMeta

from conftest import REFERENCE_LABELS, brute_closure, random_causet


class TestStats:
    def test_reference_causet(self, reference_causet):
        s = stats(reference_causet)
        assert s.element_count == 5
        assert s.longest_chain_length == 3
        assert s.maximum_antichain_size == 3
        assert s.link_count == 2
        assert s.relation_count == 3

    def test_empty_causet(self):
        s = stats(Causet())
        assert s.element_count == 0
        assert s.relation_count == 0
        assert s.link_count == 0
        assert s.longest_chain_length == 0
        assert s.maximum_antichain_size == 0
        assert s.ordering_fraction == 0.0

    def test_total_order_fraction(self):
        c = Causet()
        ids = [c.add_element() for _ in range(6)]
        for x, y in zip(ids, ids[1:]):
            c.add_relation(x, y)
        assert stats(c).ordering_fraction == pytest.approx(1.0)

    def test_single_element_fraction(self):
        c = Causet()
        c.add_element()
        assert stats(c).ordering_fraction == 0.0


def two_point_sprinkled(comparable: bool) -> SprinkledCauset:
    if comparable:
        points = [(0.0, 0.0), (4.0, 3.0)]
    else:
        points = [(0.0, 0.0), (1.0, 3.0)]
    from causetsim import induce_order

    causet = induce_order(points)
    coords = {i: np.asarray(p) for i, p in enumerate(points)}
    region = Box(t_range=(0, 5), x_ranges=((0, 5),))
    return SprinkledCauset(causet=causet, coords=coords, region=region, density=1.0)


class TestSpatialSeparation:
    def test_comparable_pair_distance(self):
        sc = two_point_sprinkled(comparable=True)
        assert spatial_separation(sc, 0, 1) == pytest.approx(3.0)

    def test_incomparable_pair_rejected(self):
        sc = two_point_sprinkled(comparable=False)
        with pytest.raises(Incomparable):
            spatial_separation(sc, 0, 1)

    def test_self_pair_rejected(self):
        sc = two_point_sprinkled(comparable=True)
        with pytest.raises(Incomparable):
            spatial_separation(sc, 0, 0)

    def test_unknown_element(self):
        sc = two_point_sprinkled(comparable=True)
        with pytest.raises(UnknownElement):
            spatial_separation(sc, 0, 5)

    def test_random_incomparable_pairs_always_error(self):
        rng = np.random.default_rng(61)
        sc = sprinkle(Box(t_range=(0, 2), x_ranges=((0, 2),)), 30.0, rng)
        n = len(sc.causet)
        checked = 0
        for x in range(n):
            for y in range(n):
                if x == y or sc.causet.comparable(x, y):
                    continue
                with pytest.raises(Incomparable):
                    spatial_separation(sc, x, y)
                checked += 1
        assert checked > 0

    def test_grown_state_with_coordinates(self):
        from causetsim import ElevationParams, GrowthConfig, run

        state = SubstratumState(
            [
                SubstratumNode(0, "excited", 1.0, position=[0.0]),
                SubstratumNode(1, "ground", 1.0, position=[3.0]),
            ]
        )
        cfg = GrowthConfig(seed=2, elevation=ElevationParams(1.0, 1.0), max_events=1)
        state = run(cfg, state)
        tx = state.transactions[0]
        d = spatial_separation(state, tx.emission_event, tx.absorption_event)
        assert d == pytest.approx(3.0)

    def test_grown_state_without_coordinates(self):
        from causetsim import ElevationParams, GrowthConfig, run

        state = SubstratumState(
            [SubstratumNode(0, "excited", 1.0), SubstratumNode(1, "ground", 1.0)]
        )
        cfg = GrowthConfig(seed=3, elevation=ElevationParams(1.0, 1.0), max_events=1)
        state = run(cfg, state)
        tx = state.transactions[0]
        with pytest.raises(MissingCoordinates):
            spatial_separation(state, tx.emission_event, tx.absorption_event)


class TestDotExport:
    def test_two_chain(self):
        c = Causet()
        a, b = c.add_element(), c.add_element()
        c.add_relation(a, b)
        text = export_dot(c)
        assert "0 -> 1;" in text
        assert text.count("->") == 1

    def test_reference_has_no_transitive_edges(self, reference_causet):
        text = export_dot(reference_causet, labels=REFERENCE_LABELS)
        assert '0 [label="A"];' in text
        assert "0 -> 1;" in text and "1 -> 2;" in text
        assert "0 -> 2" not in text  # the closed pair is not a link
        assert text.count("->") == 2

    def test_byte_identical_across_runs(self, reference_causet):
        assert export_dot(reference_causet) == export_dot(reference_causet)

    def test_empty_causet(self):
        assert export_dot(Causet()) == "digraph causet {\n  rankdir=BT;\n}\n"

    @pytest.mark.parametrize("seed", [71, 72, 73])
    def test_reclosing_exported_edges_reproduces_closure(self, seed):
        c = random_causet(np.random.default_rng(seed), 20, p=0.2)
        text = export_dot(c)
        edges = set()
        for line in text.splitlines():
            line = line.strip()
            if "->" in line:
                left, right = line.rstrip(";").split("->")
                edges.add((int(left), int(right)))
        assert brute_closure(edges) == set(c.relations())


class TestJsonRoundTrip:
    def test_sprinkled_round_trip(self):
        rng = np.random.default_rng(81)
        sc = sprinkle(Diamond(p=(0, 0), q=(6, 0)), 2.0, rng)
        assert len(sc.causet) >= 20
        text = export_json(sc.causet, coords=sc.coords)
        causet, coords, meta = import_json(text)
        assert causet == sc.causet
        assert meta is None
        assert set(coords) == set(sc.coords)
        for i, vec in coords.items():
            assert np.allclose(vec, sc.coords[i])

    def test_round_trip_preserves_closure_not_just_links(self):
        c = Causet()
        for _ in range(4):
            c.add_element()
        c.add_relation(0, 1)
        c.add_relation(1, 2)
        c.add_relation(2, 3)
        causet, _, _ = import_json(export_json(c))
        assert set(causet.relations()) == set(c.relations())

    def test_empty_causet_document(self):
        text = export_json(Causet())
        assert json.loads(text) == {"version": 1, "elements": [], "relations": []}

    def test_meta_round_trip(self):
        c = Causet()
        c.add_element()
        _, _, meta = import_json(export_json(c, meta={"note": "x"}))
        assert meta == {"note": "x"}

    def test_reflexive_relation_rejected(self):
        doc = {"version": 1, "elements": [0], "relations": [[0, 0]]}
        with pytest.raises(ValidationFailed):
            import_json(json.dumps(doc))

    def test_cycle_rejected(self):
        doc = {"version": 1, "elements": [0, 1], "relations": [[0, 1], [1, 0]]}
        with pytest.raises(ValidationFailed):
            import_json(json.dumps(doc))

    def test_unknown_relation_ids_rejected(self):
        doc = {"version": 1, "elements": [0, 1], "relations": [[0, 5]]}
        with pytest.raises(ValidationFailed):
            import_json(json.dumps(doc))

    def test_non_dense_elements_rejected(self):
        doc = {"version": 1, "elements": [0, 2], "relations": []}
        with pytest.raises(ValidationFailed):
            import_json(json.dumps(doc))

    def test_malformed_json(self):
        with pytest.raises(ParseError):
            import_json("{not json")

    def test_bad_schema(self):
        with pytest.raises(ParseError):
            import_json(json.dumps({"version": 2, "elements": [], "relations": []}))
        with pytest.raises(ParseError):
            import_json(json.dumps({"version": 1, "elements": "nope", "relations": []}))

    def test_lenient_validation_reports_reflexive_pair(self):
        doc = {"version": 1, "elements": [0, 1], "relations": [[0, 1], [1, 1]]}
        report = validate_document(doc)
        assert not report.irreflexive
        assert any(v.kind == "irreflexivity" for v in report.violations)

    def test_lenient_validation_reports_cycle(self):
        doc = {"version": 1, "elements": [0, 1], "relations": [[0, 1], [1, 0]]}
        report = validate_document(doc)
        assert not report.acyclic


class TestPoissonFit:
    def test_generator_self_test(self):
        rng = np.random.default_rng(91)
        counts = rng.poisson(50.0, size=10_000)
        report = poisson_fit(counts, expected_mean=50.0)
        assert report.passed
        assert report.variance_mean_ratio == pytest.approx(1.0, abs=0.1)

    def test_constant_counts_fail(self):
        report = poisson_fit([50] * 100, expected_mean=50.0)
        assert not report.passed
        assert report.variance_mean_ratio == pytest.approx(0.0)

    def test_biased_mean_fails(self):
        rng = np.random.default_rng(92)
        counts = rng.poisson(60.0, size=1000)
        report = poisson_fit(counts, expected_mean=50.0)
        assert not report.passed
        assert abs(report.z_score) > 3

    def test_insufficient_samples(self):
        with pytest.raises(InsufficientSamples):
            poisson_fit([5] * 29, expected_mean=5.0)

    def test_sprinkle_campaign_passes(self):
        rng = np.random.default_rng(93)
        region = Diamond(p=(0, 0), q=(8, 0))  # volume 32
        counts = [len(sprinkle(region, 2.0, rng).causet) for _ in range(100)]
        report = poisson_fit(counts, expected_mean=64.0)
        assert report.passed
