import math

import numpy as np
import pytest
from conftest import A, D, S, random_instance

from dpero import (
    ConfigurationError,
    NoEscapeRouteError,
    build_network,
    dijkstra_risk_oracle,
    extract_path,
    make_scenario,
    shortest_time_path,
    value_iteration,
)

NEG_LN_0_7 = 0.356674943938732378912638711241


class TestShortestTime:
    def test_diamond_takes_short_risky_branch(self, diamond):
        path = shortest_time_path(diamond, S, [D])
        assert path.nodes == (S, A, D)
        assert path.travel_time == 2.0
        assert path.survival_prob == pytest.approx(0.7, abs=1e-15)

    def test_risk_free_network_matches_dpero(self):
        net, spec = make_scenario(6, 6, defender_count=0, seed=1)
        base = shortest_time_path(net, spec.start, spec.exits)
        ours = extract_path(value_iteration(net, spec.exits), net, spec.start)
        assert base.survival_prob == ours.survival_prob == 1.0

    def test_adjacent_exit(self):
        net = build_network(4, [(0, 1), (0, 2), (2, 3), (3, 1)], [0.0, 0.9, 0.0, 0.0])
        assert shortest_time_path(net, 0, [1]).nodes == (0, 1)

    def test_exit_ties_go_to_smaller_id(self):
        net = build_network(3, [(0, 2), (0, 1)], [0.0] * 3)
        assert shortest_time_path(net, 0, [2, 1]).nodes == (0, 1)

    def test_uses_travel_times(self):
        net = build_network(4, [(0, 1, 5.0), (1, 3, 5.0), (0, 2, 1.0), (2, 3, 1.0)], [0.0] * 4)
        path = shortest_time_path(net, 0, [3])
        assert path.nodes == (0, 2, 3) and path.travel_time == 2.0

    def test_unreachable(self):
        with pytest.raises(NoEscapeRouteError):
            shortest_time_path(build_network(2, [], [0.0, 0.0]), 0, [1])

    def test_empty_exits(self, line):
        with pytest.raises(ConfigurationError):
            shortest_time_path(line, 0, [])


class TestRiskOracle:
    def test_line(self, line):
        cost, path = dijkstra_risk_oracle(line, 0, [2])
        assert cost == pytest.approx(NEG_LN_0_7, rel=1e-15)
        assert path == [0, 1, 2]

    def test_zero_risk(self):
        net = build_network(3, [(0, 1), (1, 2)], [0.0] * 3)
        assert dijkstra_risk_oracle(net, 0, [2]) == (0.0, [0, 1, 2])

    def test_unreachable(self):
        assert dijkstra_risk_oracle(build_network(2, [], [0.0, 0.0]), 0, [1]) == (math.inf, [])

    def test_empty_exits(self, line):
        with pytest.raises(ConfigurationError):
            dijkstra_risk_oracle(line, 0, [])


def test_cross_properties_on_random_networks():
    rng = np.random.default_rng(17)
    for _ in range(200):
        net, start, exits = random_instance(rng, 5, 25)
        table = value_iteration(net, exits)
        cost, _ = dijkstra_risk_oracle(net, start, exits)
        J = table.cost_to_go[start]
        assert cost == J or abs(cost - J) <= 1e-12
        try:
            base = shortest_time_path(net, start, exits)
        except NoEscapeRouteError:
            assert J == math.inf
            continue
        if math.isfinite(J):
            ours = extract_path(table, net, start)
            assert base.travel_time <= ours.travel_time
            assert ours.survival_prob >= base.survival_prob
        else:
            assert base.survival_prob == 0.0
