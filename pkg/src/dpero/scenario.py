"""Scenario description and the JSON scenario file format."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import ConfigurationError, InvalidNetworkError
from .graph import RiskNetwork, build_network


@dataclass(frozen=True)
class GenerationParams:
    rows: int
    cols: int
    extra_edges: int
    defender_count: int
    prob_low: float
    prob_high: float
    exit_count: int = 5

    def __post_init__(self):
        if not (0.0 <= self.prob_low <= self.prob_high < 1.0):
            raise ConfigurationError(
                f"need 0 <= prob_low <= prob_high < 1, got [{self.prob_low}, {self.prob_high}]"
            )

    def to_dict(self) -> dict[str, Any]:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "extra_edges": self.extra_edges,
            "defender_count": self.defender_count,
            "prob_low": self.prob_low,
            "prob_high": self.prob_high,
            "exit_count": self.exit_count,
        }


@dataclass(frozen=True)
class ScenarioSpec:
    start: int
    exits: tuple[int, ...]
    seed: int | None = None
    params: GenerationParams | None = None
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        exits = tuple(sorted({int(d) for d in self.exits}))
        object.__setattr__(self, "exits", exits)
        if not exits:
            raise ConfigurationError("exit set must be non-empty")
        if self.start in exits:
            raise ConfigurationError(f"start node {self.start} is also an exit")
        if self.seed is not None and not (0 <= self.seed < 2**64):
            raise ConfigurationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def validate(self, network: RiskNetwork) -> None:
        for v in (self.start, *self.exits):
            if not 0 <= v < network.node_count:
                raise ConfigurationError(f"node {v} is not in the network")


def scenario_to_dict(network: RiskNetwork, spec: ScenarioSpec) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "node_count": network.node_count,
        "edges": [[s, t, c] for s, t, c in network.edges()],
        "capture_prob": [float(p) for p in network.capture_prob],
        "start": spec.start,
        "exits": list(spec.exits),
    }
    if spec.seed is not None:
        doc["seed"] = spec.seed
    meta = dict(spec.meta)
    if spec.params is not None:
        meta.update(spec.params.to_dict())
    if meta:
        doc["meta"] = meta
    return doc


_PARAM_KEYS = ("rows", "cols", "extra_edges", "defender_count", "prob_low", "prob_high")


def scenario_from_dict(doc: dict[str, Any]) -> tuple[RiskNetwork, ScenarioSpec]:
    try:
        network = build_network(doc["node_count"], doc["edges"], doc["capture_prob"])
        meta = doc.get("meta") or {}
        params = None
        if all(k in meta for k in _PARAM_KEYS):
            params = GenerationParams(
                **{k: meta[k] for k in _PARAM_KEYS}, exit_count=meta.get("exit_count", len(doc["exits"]))
            )
        spec = ScenarioSpec(
            start=int(doc["start"]),
            exits=tuple(doc["exits"]),
            seed=doc.get("seed"),
            params=params,
            meta=meta,
        )
    except KeyError as exc:
        raise InvalidNetworkError(f"scenario is missing field {exc.args[0]!r}") from None
    spec.validate(network)
    return network, spec


def save_scenario(path: str | Path, network: RiskNetwork, spec: ScenarioSpec) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(network, spec), indent=1) + "\n")


def load_scenario(path: str | Path) -> tuple[RiskNetwork, ScenarioSpec]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidNetworkError(f"{path}: not valid JSON ({exc})") from None
    return scenario_from_dict(doc)
