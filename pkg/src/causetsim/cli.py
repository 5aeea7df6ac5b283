"""Batch command-line front end.

Every command reads JSON, runs the corresponding core operation, and writes
canonical outputs plus a run manifest, so identical inputs and seeds yield
byte-identical files. Exit codes: 0 success, 1 validation failure, 2 bad
input, 3 I/O failure, 4 no growth candidates.
"""

from __future__ import annotations

import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import click
import numpy as np

from . import __version__
from .analysis import (
    document_dict,
    export_dot,
    export_json,
    load_document,
    stats,
    validate_document,
)
from .born import HermitianGenerator, OfferWave, WeightDistribution, actualize, born_weights, evolve
from .errors import CausetSimError, NoCandidates, ParseError, ValidationFailed
from .growth import GrowthConfig, SubstratumState, config_from_dict, nodes_from_dicts, run
from .sprinkling import region_from_dict, sprinkle

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BAD_INPUT = 2
EXIT_IO = 3
EXIT_NO_CANDIDATES = 4


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_IO, f"cannot read {path}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(EXIT_BAD_INPUT, f"{path} is not valid JSON: {exc}")


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_IO, f"cannot write {path}: {exc}")


def _write_manifest(
    command: str, config_path: str, seed, output_paths: list[str], started: str
) -> None:
    manifest = {
        "command": command,
        "config_path": config_path,
        "seed": seed,
        "output_paths": output_paths,
        "tool_version": __version__,
        "started": started,
        "finished": _now(),
    }
    if output_paths:
        path = output_paths[0] + ".manifest.json"
        _write_text(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


@click.group()
@click.version_option(version=__version__)
def main() -> None:
    """Grow, sprinkle, validate and analyze causal sets."""


@main.command("sprinkle")
@click.argument("region_json", type=click.Path())
@click.option("--density", type=float, required=True, help="Sprinkling density rho > 0.")
@click.option("--seed", type=int, required=True, help="64-bit RNG seed.")
@click.option("--out", "out_path", type=click.Path(), required=True,
              help="Output causet JSON path.")
def cmd_sprinkle(region_json: str, density: float, seed: int, out_path: str) -> None:
    """Poisson-sprinkle a Minkowski region described by REGION_JSON."""
    started = _now()
    spec = _read_json(region_json)
    try:
        region = region_from_dict(spec)
        if density <= 0:
            raise ValueError(f"density must be positive, got {density}")
        rng = np.random.default_rng(seed)
        result = sprinkle(region, density, rng)
    except (CausetSimError, ValueError) as exc:
        _fail(EXIT_BAD_INPUT, str(exc))
    _write_text(out_path, export_json(result.causet, coords=result.coords))
    _write_manifest("sprinkle", region_json, seed, [out_path], started)
    click.echo(f"sprinkled {len(result.causet)} elements into {out_path}")


@main.command("grow")
@click.argument("config_json", type=click.Path())
@click.option("--seed", type=int, default=None, help="Override the config seed.")
@click.option("--out", "out_path", type=click.Path(), required=True,
              help="Output causet JSON path.")
@click.option("--log", "log_path", type=click.Path(), default=None,
              help="Transaction log (JSON lines); defaults to OUT.log.jsonl.")
def cmd_grow(config_json: str, seed, out_path: str, log_path) -> None:
    """Grow a causet from the substratum described by CONFIG_JSON."""
    started = _now()
    spec = _read_json(config_json)
    try:
        if not isinstance(spec, dict):
            raise ValueError("growth config must be a JSON object")
        cfg = config_from_dict(spec, seed_override=seed)
        state = SubstratumState(nodes_from_dicts(spec.get("nodes", [])))
    except (CausetSimError, ValueError, TypeError, KeyError) as exc:
        _fail(EXIT_BAD_INPUT, f"bad growth config: {exc}")
    try:
        state = run(cfg, state)
    except NoCandidates as exc:
        _fail(EXIT_NO_CANDIDATES, str(exc))
    except CausetSimError as exc:
        _fail(EXIT_BAD_INPUT, str(exc))

    coords = {
        e: m.coords for e, m in state.event_meta.items() if m.coords is not None
    }
    meta = {"stop_reason": state.stop_reason, "transactions": len(state.transactions)}
    _write_text(out_path, export_json(state.causet, coords=coords or None, meta=meta))
    if log_path is None:
        log_path = out_path + ".log.jsonl"
    log_lines = "".join(
        json.dumps(t.to_dict(), sort_keys=True) + "\n" for t in state.transactions
    )
    _write_text(log_path, log_lines)
    _write_manifest("grow", config_json, cfg.seed, [out_path, log_path], started)
    click.echo(
        f"grew {len(state.causet)} events over {len(state.transactions)} "
        f"transactions (stop: {state.stop_reason}) into {out_path}"
    )


@main.command("validate")
@click.argument("causet_json", type=click.Path())
def cmd_validate(causet_json: str) -> None:
    """Check the order axioms of a causet document."""
    doc = _read_json(causet_json)
    try:
        report = validate_document(doc)
    except (ParseError, ValidationFailed, CausetSimError) as exc:
        _fail(EXIT_BAD_INPUT, str(exc))
    click.echo(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    sys.exit(EXIT_OK if report.ok else EXIT_INVALID)


@main.command("analyze")
@click.argument("causet_json", type=click.Path())
@click.option("--dot", "dot_path", type=click.Path(), default=None,
              help="Also write the Hasse diagram as DOT.")
@click.option("--stats/--no-stats", "want_stats", default=True,
              help="Print summary statistics as JSON (default on).")
def cmd_analyze(causet_json: str, dot_path, want_stats: bool) -> None:
    """Compute statistics and optionally export a Hasse diagram."""
    started = _now()
    doc = _read_json(causet_json)
    try:
        causet, _, _ = load_document(doc)
    except CausetSimError as exc:
        _fail(EXIT_BAD_INPUT, str(exc))
    if want_stats:
        click.echo(json.dumps(stats(causet).to_dict(), indent=2, sort_keys=True))
    if dot_path is not None:
        _write_text(dot_path, export_dot(causet))
        _write_manifest("analyze", causet_json, None, [dot_path], started)


def _parse_complex_vector(raw) -> np.ndarray:
    values = []
    for entry in raw:
        if isinstance(entry, (list, tuple)) and len(entry) == 2:
            values.append(complex(entry[0], entry[1]))
        else:
            values.append(complex(entry))
    return np.asarray(values)


@main.group("born")
def born_group() -> None:
    """Offer-wave utilities (weights, evolution, sampling)."""


@born_group.command("weights")
@click.argument("amplitudes_json", type=click.Path())
def cmd_born_weights(amplitudes_json: str) -> None:
    """Born weights of the amplitude vector in AMPLITUDES_JSON.

    Amplitudes are numbers or [re, im] pairs.
    """
    raw = _read_json(amplitudes_json)
    try:
        offer = OfferWave(_parse_complex_vector(raw))
        weights = born_weights(offer)
    except (CausetSimError, ValueError, TypeError) as exc:
        _fail(EXIT_BAD_INPUT, str(exc))
    click.echo(json.dumps({"weights": weights.weights.tolist()}))


@born_group.command("evolve")
@click.argument("amplitudes_json", type=click.Path())
@click.argument("hamiltonian_json", type=click.Path())
@click.option("--time", "t", type=float, required=True, help="Evolution time (hbar = 1).")
def cmd_born_evolve(amplitudes_json: str, hamiltonian_json: str, t: float) -> None:
    """Apply exp(-iHt) to the amplitudes; prints [re, im] pairs."""
    raw_a = _read_json(amplitudes_json)
    raw_h = _read_json(hamiltonian_json)
    try:
        offer = OfferWave(_parse_complex_vector(raw_a))
        h = HermitianGenerator(np.array([_parse_complex_vector(row) for row in raw_h]))
        evolved = evolve(offer, h, t)
    except (CausetSimError, ValueError, TypeError) as exc:
        _fail(EXIT_BAD_INPUT, str(exc))
    pairs = [[z.real, z.imag] for z in evolved.amplitudes.tolist()]
    click.echo(json.dumps({"amplitudes": pairs}))


@born_group.command("sample")
@click.argument("weights_json", type=click.Path())
@click.option("--seed", type=int, required=True, help="64-bit RNG seed.")
@click.option("--draws", type=int, default=1, show_default=True, help="Number of draws.")
def cmd_born_sample(weights_json: str, seed: int, draws: int) -> None:
    """Actualize indices from a weight vector by seeded inverse-CDF sampling."""
    raw = _read_json(weights_json)
    try:
        dist = WeightDistribution(np.asarray(raw, dtype=float))
    except (CausetSimError, ValueError, TypeError) as exc:
        _fail(EXIT_BAD_INPUT, str(exc))
    rng = np.random.default_rng(seed)
    indices = [actualize(dist, rng) for _ in range(draws)]
    counts = np.bincount(indices, minlength=len(dist)).tolist()
    click.echo(json.dumps({"indices": indices, "counts": counts}))


if __name__ == "__main__":
    main()
