"""Command-line interface: ``dpero {generate,solve,baseline,compare,sweep,verify}``."""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import kernels
from .baselines import dijkstra_risk_oracle, shortest_time_path
from .errors import DperoError, NoEscapeRouteError
from .generate import make_scenario
from .harness import (
    DEFAULT_DEFENDER_COUNTS,
    DEFAULT_REPLICATIONS,
    SELF_CHECK_ENUMERATION_LIMIT,
    emit_report,
    run_comparison,
    summarize,
    sweep,
)
from .oracles import enumerate_best_path, monte_carlo_survival
from .scenario import GenerationParams, load_scenario, save_scenario, scenario_to_dict
from .solver import DEFAULT_EPSILON, extract_path, value_iteration


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def _emit(doc, out: str | None) -> None:
    text = json.dumps(_json_safe(doc), indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _counts(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_grid_flags(p: argparse.ArgumentParser, defenders_default) -> None:
    p.add_argument("--rows", type=int, default=15)
    p.add_argument("--cols", type=int, default=15)
    p.add_argument("--extra-edges", type=int, default=0)
    p.add_argument("--prob-low", type=float, default=0.2)
    p.add_argument("--prob-high", type=float, default=0.5)
    p.add_argument("--exits", type=int, default=5, help="number of exits on the far row")
    p.add_argument("--seed", type=int, default=0)
    if isinstance(defenders_default, int):
        p.add_argument("--defenders", type=int, default=defenders_default)
    else:
        p.add_argument("--defenders", type=_counts, default=list(defenders_default),
                       help="comma-separated defender counts")


def cmd_generate(args) -> int:
    network, spec = make_scenario(
        args.rows, args.cols, args.extra_edges, args.defenders,
        args.prob_low, args.prob_high, args.seed, args.exits,
    )
    if args.out:
        save_scenario(args.out, network, spec)
    else:
        _emit(scenario_to_dict(network, spec), None)
    return 0


def cmd_solve(args) -> int:
    network, spec = load_scenario(args.scenario)
    table = value_iteration(network, spec.exits, args.epsilon)
    doc = {
        "start": spec.start,
        "cost": float(table.cost_to_go[spec.start]),
        "sweeps": table.sweeps,
        "converged": table.converged,
        "epsilon": table.epsilon,
        "path": extract_path(table, network, spec.start).to_dict(),
        "value_table": table.to_records(),
    }
    _emit(doc, args.out)
    return 0


def cmd_baseline(args) -> int:
    network, spec = load_scenario(args.scenario)
    _emit({"path": shortest_time_path(network, spec.start, spec.exits).to_dict()}, args.out)
    return 0


def cmd_compare(args) -> int:
    network, spec = load_scenario(args.scenario)
    _emit(run_comparison(network, spec, args.epsilon).to_dict(), args.out)
    return 0


def cmd_sweep(args) -> int:
    params = GenerationParams(
        args.rows, args.cols, args.extra_edges, 0, args.prob_low, args.prob_high, args.exits
    )
    records = sweep(
        params, args.defenders, args.replications, args.seed, args.epsilon,
        self_check=args.self_check, workers=args.workers,
    )
    written = emit_report(records, args.out, include_timing=args.timing)
    summary = summarize(records)
    for g in summary["groups"]:
        print(
            f"defenders={g['defender_count']:>3} n={g['instances']} "
            f"dpero={g['dpero_survival_mean']:.4f} baseline={g['baseline_survival_mean']:.4f} "
            f"strictly_better={g['strict_improvement_fraction']:.2f}"
        )
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_verify(args) -> int:
    network, spec = load_scenario(args.scenario)
    checks = []

    def record(name, ok, **detail):
        checks.append({"check": name, "passed": bool(ok), **detail})

    table = value_iteration(network, spec.exits, args.epsilon)
    cost = float(table.cost_to_go[spec.start])
    record("converged", table.converged, sweeps=table.sweeps)
    record("sweep_bound", table.sweeps <= network.node_count + 1, sweeps=table.sweeps,
           bound=network.node_count + 1)

    oracle_cost, _ = dijkstra_risk_oracle(network, spec.start, spec.exits)
    record("label_setting_oracle", oracle_cost == cost or abs(oracle_cost - cost) <= 1e-12,
           value_iteration=cost, oracle=oracle_cost)

    if network.node_count <= SELF_CHECK_ENUMERATION_LIMIT:
        try:
            best = enumerate_best_path(network, spec.start, spec.exits).survival_prob
        except NoEscapeRouteError:
            best = 0.0
        record("enumeration_oracle", abs(best - math.exp(-cost)) <= 1e-12,
               enumerated=best, value_iteration=math.exp(-cost))

    if math.isfinite(cost):
        path = extract_path(table, network, spec.start)
        record("policy_soundness",
               len(path.nodes) <= network.node_count and abs(path.risk_cost - cost) <= 1e-9,
               path=list(path.nodes), path_cost=path.risk_cost)
        est, se = monte_carlo_survival(network, path.nodes, args.trials, args.seed)
        record("monte_carlo", abs(est - path.survival_prob) <= 4 * se,
               estimate=est, std_error=se, analytic=path.survival_prob, trials=args.trials)
        base = shortest_time_path(network, spec.start, spec.exits)
        record("dominance", path.survival_prob >= base.survival_prob,
               dpero=path.survival_prob, baseline=base.survival_prob)

    ok = all(c["passed"] for c in checks)
    _emit({"passed": ok, "checks": checks}, args.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dpero", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s (kernel: {kernels.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated grid scenario")
    _add_grid_flags(p, 5)
    p.add_argument("--out", help="scenario file (stdout if omitted)")
    p.set_defaults(func=cmd_generate)

    for name, func, helptext in (
        ("solve", cmd_solve, "risk-optimal path and value table"),
        ("baseline", cmd_baseline, "shortest travel-time path"),
        ("compare", cmd_compare, "one comparison record"),
        ("verify", cmd_verify, "run every applicable oracle"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("scenario", help="scenario JSON file")
        p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
        p.add_argument("--out", help="output file (stdout if omitted)")
        if name == "verify":
            p.add_argument("--trials", type=int, default=100_000)
            p.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
        p.set_defaults(func=func)

    p = sub.add_parser("sweep", help="comparison sweep over defender counts")
    _add_grid_flags(p, DEFAULT_DEFENDER_COUNTS)
    p.add_argument("--replications", type=int, default=DEFAULT_REPLICATIONS)
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--out", default="sweep_out", help="report directory")
    p.add_argument("--timing", action="store_true", help="fill the wall_clock_ms column")
    p.add_argument("--self-check", action="store_true", help="cross-check every instance with oracles")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DperoError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return 2
    except OSError as exc:
        print(json.dumps({"error": "io_error", "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
