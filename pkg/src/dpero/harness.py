"""Head-to-head runs of the risk-aware solver against the shortest-time baseline."""
from __future__ import annotations

import csv
import dataclasses
import hashlib
import io
import json
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .baselines import dijkstra_risk_oracle, shortest_time_path
from .errors import ConfigurationError, DperoError, NoEscapeRouteError, SweepError, VerificationError
from .generate import make_scenario
from .graph import RiskNetwork
from .oracles import enumerate_best_path
from .scenario import GenerationParams, ScenarioSpec, scenario_to_dict
from .solver import DEFAULT_EPSILON, extract_path, value_iteration

CSV_HEADER = (
    "scenario_id",
    "defender_count",
    "dpero_survival",
    "baseline_survival",
    "dpero_time",
    "baseline_time",
    "dpero_cost",
    "sweeps",
    "wall_clock_ms",
    "status",
)

DEFAULT_DEFENDER_COUNTS = (5, 10, 15, 20, 25)
DEFAULT_REPLICATIONS = 100
SELF_CHECK_ENUMERATION_LIMIT = 12
ORACLE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ComparisonRecord:
    scenario_id: str
    defender_count: int
    dpero_survival: float
    baseline_survival: float
    dpero_time: float
    baseline_time: float
    dpero_cost: float
    sweeps: int
    wall_clock_ms: float
    status: str = "ok"
    dpero_path: tuple[int, ...] = ()
    baseline_path: tuple[int, ...] = ()

    @property
    def strictly_better(self) -> bool:
        return self.dpero_survival > self.baseline_survival

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["dpero_path"] = list(self.dpero_path)
        d["baseline_path"] = list(self.baseline_path)
        return {k: (None if isinstance(v, float) and not math.isfinite(v) else v) for k, v in d.items()}


def scenario_id(network: RiskNetwork, spec: ScenarioSpec) -> str:
    """Seed in hex plus a short digest of the generation parameters (or the whole scenario)."""
    if spec.params is not None:
        payload = json.dumps(spec.params.to_dict(), sort_keys=True)
    else:
        payload = json.dumps(scenario_to_dict(network, spec), sort_keys=True)
    digest = hashlib.blake2b(payload.encode(), digest_size=5).hexdigest()
    seed = "none" if spec.seed is None else f"{spec.seed:016x}"
    return f"{seed}-{digest}"


def _defender_count(network: RiskNetwork, spec: ScenarioSpec) -> int:
    if spec.params is not None:
        return spec.params.defender_count
    return int((network.capture_prob > 0).sum())


def run_comparison(
    network: RiskNetwork,
    spec: ScenarioSpec,
    epsilon: float = DEFAULT_EPSILON,
    self_check: bool = False,
) -> ComparisonRecord:
    """Solve one scenario with value iteration and with the baseline.

    A solver that finds no route scores survival 0 with infinite time, and the
    ``status`` field says which one failed.
    """
    spec.validate(network)
    t0 = time.perf_counter()
    table = value_iteration(network, spec.exits, epsilon)
    elapsed_ms = (time.perf_counter() - t0) * 1e3
    cost = float(table.cost_to_go[spec.start])

    failed = []
    try:
        ours = extract_path(table, network, spec.start)
    except NoEscapeRouteError:
        ours = None
        failed.append("dpero")
    try:
        base = shortest_time_path(network, spec.start, spec.exits)
    except NoEscapeRouteError:
        base = None
        failed.append("baseline")

    if self_check:
        verify_instance(network, spec, table.cost_to_go[spec.start])

    status = "ok" if not failed else ("no_route" if len(failed) == 2 else f"{failed[0]}_no_route")
    return ComparisonRecord(
        scenario_id=scenario_id(network, spec),
        defender_count=_defender_count(network, spec),
        dpero_survival=ours.survival_prob if ours else 0.0,
        baseline_survival=base.survival_prob if base else 0.0,
        dpero_time=ours.travel_time if ours else math.inf,
        baseline_time=base.travel_time if base else math.inf,
        dpero_cost=cost,
        sweeps=table.sweeps,
        wall_clock_ms=elapsed_ms,
        status=status,
        dpero_path=ours.nodes if ours else (),
        baseline_path=base.nodes if base else (),
    )


def verify_instance(network: RiskNetwork, spec: ScenarioSpec, cost: float) -> None:
    """Cross-check a solved cost-to-go against the label-setting and (small graphs) brute-force oracles."""
    oracle_cost, _ = dijkstra_risk_oracle(network, spec.start, spec.exits)
    if not (oracle_cost == cost or abs(oracle_cost - cost) <= ORACLE_TOLERANCE):
        raise VerificationError(f"label-setting oracle cost {oracle_cost!r} != value iteration {cost!r}")
    if network.node_count <= SELF_CHECK_ENUMERATION_LIMIT:
        try:
            best = enumerate_best_path(network, spec.start, spec.exits).survival_prob
        except NoEscapeRouteError:
            best = 0.0
        if abs(best - math.exp(-cost)) > ORACLE_TOLERANCE:
            raise VerificationError(f"enumerated survival {best!r} != exp(-J) {math.exp(-cost)!r}")


def derive_seed(base_seed: int, defender_count: int, replication: int) -> int:
    """Stable 64-bit instance seed: BLAKE2b-64 of ``"base:count:replication"``, little-endian."""
    key = f"{int(base_seed)}:{int(defender_count)}:{int(replication)}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "little")


def _run_instance(args) -> ComparisonRecord:
    params, count, seed, epsilon, self_check = args
    try:
        network, spec = make_scenario(
            params.rows, params.cols, params.extra_edges, count,
            params.prob_low, params.prob_high, seed, params.exit_count,
        )
        return run_comparison(network, spec, epsilon, self_check)
    except DperoError as exc:
        raise SweepError(f"instance with seed {seed} (defenders={count}) failed: {exc}", seed) from exc


def sweep(
    base_params: GenerationParams,
    defender_counts: Sequence[int] = DEFAULT_DEFENDER_COUNTS,
    replications: int = DEFAULT_REPLICATIONS,
    base_seed: int = 0,
    epsilon: float = DEFAULT_EPSILON,
    self_check: bool = False,
    workers: int = 1,
) -> list[ComparisonRecord]:
    """Generate and solve ``replications`` scenarios per defender count.

    ``base_params.defender_count`` is ignored. Records come back ordered by
    (count, replication) whatever the number of workers.
    """
    if replications < 1:
        raise ConfigurationError(f"replications must be at least 1, got {replications}")
    jobs = [
        (base_params, count, derive_seed(base_seed, count, r), epsilon, self_check)
        for count in sorted(defender_counts)
        for r in range(replications)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_instance, jobs, chunksize=8))
    return [_run_instance(job) for job in jobs]


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def records_csv(records: Sequence[ComparisonRecord], include_timing: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        row = [_fmt(getattr(rec, name)) for name in CSV_HEADER]
        if not include_timing:
            row[CSV_HEADER.index("wall_clock_ms")] = ""
        writer.writerow(row)
    return buf.getvalue()


def _mean_std(values: list[float]) -> tuple[float | None, float | None]:
    values = [v for v in values if math.isfinite(v)]
    if not values:
        return None, None
    std = statistics.stdev(values) if len(values) > 1 else 0.0
    return statistics.fmean(values), std


def summarize(records: Sequence[ComparisonRecord]) -> dict:
    """Per-defender-count means and sample standard deviations."""
    groups: dict[int, list[ComparisonRecord]] = {}
    for rec in records:
        groups.setdefault(rec.defender_count, []).append(rec)
    entries = []
    for count in sorted(groups):
        recs = groups[count]
        entry = {"defender_count": count, "instances": len(recs)}
        for field in ("dpero_survival", "baseline_survival", "dpero_time", "baseline_time", "dpero_cost"):
            mean, std = _mean_std([getattr(r, field) for r in recs])
            entry[f"{field}_mean"] = mean
            entry[f"{field}_std"] = std
        entry["strict_improvement_fraction"] = sum(r.strictly_better for r in recs) / len(recs)
        entry["dominance_violations"] = sum(r.dpero_survival < r.baseline_survival for r in recs)
        entries.append(entry)
    return {"total_instances": len(records), "groups": entries}


def plot_series(summary: dict) -> str:
    lines = ["defender_count,dpero_mean_survival,baseline_mean_survival"]
    for g in summary["groups"]:
        lines.append(f"{g['defender_count']},{g['dpero_survival_mean']!r},{g['baseline_survival_mean']!r}")
    return "\n".join(lines) + "\n"


def emit_report(
    records: Sequence[ComparisonRecord],
    output_path: str | Path,
    include_timing: bool = False,
) -> list[Path]:
    """Write ``records.csv``, ``summary.json`` and ``plot_data.csv`` into ``output_path``.

    Wall-clock times vary run to run, so the CSV leaves that column empty
    unless ``include_timing`` is set; everything else is byte-reproducible.
    """
    if not records:
        raise ConfigurationError("no records to report")
    out = Path(output_path)
    try:
        out.mkdir(parents=True, exist_ok=True)
        summary = summarize(records)
        files = {
            out / "records.csv": records_csv(records, include_timing),
            out / "summary.json": json.dumps(summary, indent=2, sort_keys=True) + "\n",
            out / "plot_data.csv": plot_series(summary),
        }
        for path, text in files.items():
            path.write_text(text)
    except OSError as exc:
        raise ConfigurationError(f"cannot write report to {out}: {exc}") from exc
    return list(files)
