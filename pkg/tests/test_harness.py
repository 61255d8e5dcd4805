import csv
import dataclasses
import io
import json
import math

import numpy as np
import pytest
from conftest import D, S

from dpero import (
    ConfigurationError,
    GenerationParams,
    ScenarioSpec,
    build_network,
    emit_report,
    enumerate_best_path,
    generate_gre,
    make_scenario,
    run_comparison,
    sweep,
)
from dpero.harness import CSV_HEADER, derive_seed, records_csv, summarize, verify_instance


def test_risk_free_scenario():
    net, spec = make_scenario(8, 8, defender_count=0, seed=2)
    rec = run_comparison(net, spec)
    assert rec.dpero_survival == rec.baseline_survival == 1.0
    assert rec.status == "ok"


def test_diamond(diamond):
    rec = run_comparison(diamond, ScenarioSpec(start=S, exits=(D,)), self_check=True)
    assert rec.dpero_survival == 1.0
    assert rec.baseline_survival == pytest.approx(0.7, abs=1e-15)
    assert rec.baseline_time == 2.0 and rec.dpero_time == 3.0
    assert rec.defender_count == 1


def test_unavoidable_defender_row():
    grid = generate_gre(3, 3)
    net = grid.with_capture_probs([0.0, 0.0, 0.0, 0.3, 0.3, 0.3, 0.0, 0.0, 0.0])
    spec = ScenarioSpec(start=0, exits=(6, 7, 8))
    rec = run_comparison(net, spec, self_check=True)
    brute = enumerate_best_path(net, 0, spec.exits).survival_prob
    assert 0.0 < rec.dpero_survival < 1.0
    assert rec.dpero_survival == pytest.approx(brute, abs=1e-12)
    assert brute == pytest.approx(0.7, abs=1e-15)


def test_no_route_is_flagged_not_raised():
    net = build_network(3, [(0, 1), (1, 2)], [0.0, 1.0, 0.0])
    rec = run_comparison(net, ScenarioSpec(start=0, exits=(2,)))
    assert rec.status == "dpero_no_route"
    assert rec.dpero_survival == rec.baseline_survival == 0.0
    assert rec.dpero_time == math.inf and rec.baseline_time == 2.0

    disconnected = build_network(2, [], [0.0, 0.0])
    rec = run_comparison(disconnected, ScenarioSpec(start=0, exits=(1,)))
    assert rec.status == "no_route"


def test_derive_seed_stable():
    assert derive_seed(0, 5, 0) == derive_seed(0, 5, 0)
    assert len({derive_seed(0, c, r) for c in (5, 10) for r in range(50)}) == 100
    assert 0 <= derive_seed(2**63, 25, 99) < 2**64


PARAMS = GenerationParams(15, 15, 0, 0, 0.2, 0.5)


def test_sweep_order_and_size():
    recs = sweep(PARAMS, [10, 5], replications=3, base_seed=1)
    assert [r.defender_count for r in recs] == [5, 5, 5, 10, 10, 10]
    again = sweep(PARAMS, [5], replications=1, base_seed=1)
    assert dataclasses.replace(again[0], wall_clock_ms=0.0) == dataclasses.replace(recs[0], wall_clock_ms=0.0)


def test_sweep_with_workers_matches_serial():
    serial = sweep(PARAMS, [5, 15], replications=4, base_seed=9)
    parallel = sweep(PARAMS, [5, 15], replications=4, base_seed=9, workers=2)
    assert records_csv(serial) == records_csv(parallel)


def test_sweep_rejects_zero_replications():
    with pytest.raises(ConfigurationError):
        sweep(PARAMS, [5], replications=0)


def test_sweep_self_check_small_grids():
    small = GenerationParams(2, 5, 2, 0, 0.2, 0.5)
    recs = sweep(small, [1, 2, 3], replications=20, base_seed=4, self_check=True)
    assert all(r.dpero_survival >= r.baseline_survival for r in recs)


def test_verify_instance_detects_mismatch(line):
    from dpero import VerificationError

    with pytest.raises(VerificationError):
        verify_instance(line, ScenarioSpec(start=0, exits=(2,)), 0.0)


class TestReport:
    @pytest.fixture
    def records(self):
        return sweep(PARAMS, [5, 10, 15, 20, 25], replications=3, base_seed=0)

    def test_single_record_csv(self, records, tmp_path):
        emit_report(records[:1], tmp_path)
        rows = list(csv.reader(io.StringIO((tmp_path / "records.csv").read_text())))
        assert tuple(rows[0]) == CSV_HEADER
        assert len(rows) == 2
        assert rows[1][CSV_HEADER.index("wall_clock_ms")] == ""

    def test_summary_groups(self, records, tmp_path):
        emit_report(records, tmp_path)
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert [g["defender_count"] for g in summary["groups"]] == [5, 10, 15, 20, 25]
        g = summary["groups"][0]
        vals = [r.dpero_survival for r in records if r.defender_count == 5]
        assert g["dpero_survival_mean"] == pytest.approx(np.mean(vals))
        assert g["dpero_survival_std"] == pytest.approx(np.std(vals, ddof=1))
        plot = (tmp_path / "plot_data.csv").read_text().splitlines()
        assert plot[0] == "defender_count,dpero_mean_survival,baseline_mean_survival"
        assert len(plot) == 6

    def test_byte_identical(self, records, tmp_path):
        emit_report(records, tmp_path / "a")
        emit_report(list(records), tmp_path / "b")
        for name in ("records.csv", "summary.json", "plot_data.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_timing_column(self, records, tmp_path):
        emit_report(records, tmp_path, include_timing=True)
        rows = list(csv.DictReader(io.StringIO((tmp_path / "records.csv").read_text())))
        assert all(float(r["wall_clock_ms"]) >= 0 for r in rows)

    def test_empty(self, tmp_path):
        with pytest.raises(ConfigurationError):
            emit_report([], tmp_path)

    def test_unwritable(self, records, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        with pytest.raises(ConfigurationError):
            emit_report(records, blocker / "sub")

    def test_summary_handles_missing_routes(self):
        net = build_network(2, [], [0.0, 0.0])
        rec = run_comparison(net, ScenarioSpec(start=0, exits=(1,)))
        s = summarize([rec])
        assert s["groups"][0]["dpero_time_mean"] is None
