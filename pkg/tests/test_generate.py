import numpy as np
import pytest

from dpero import ConfigurationError, generate_gre, make_scenario, place_defenders, value_iteration
from dpero.generate import exit_columns, lattice_arc_count, node_id


@pytest.mark.parametrize("rows, cols, arcs", [(2, 2, 8), (15, 15, 840), (3, 4, 34)])
def test_lattice_arc_count(rows, cols, arcs):
    net = generate_gre(rows, cols, 0, seed=0)
    assert net.node_count == rows * cols
    assert net.edge_count == arcs == lattice_arc_count(rows, cols)
    assert np.all(net.capture_prob == 0.0)
    assert np.all(net.travel_times == 1.0)


def test_lattice_is_bidirectional_four_connected():
    net = generate_gre(3, 3)
    assert sorted(int(u) for u in net.successors(4)) == [1, 3, 5, 7]
    for s, t, _ in net.edges():
        assert net.has_edge(t, s)


@pytest.mark.parametrize("rows, cols", [(1, 5), (5, 1), (0, 0)])
def test_too_small(rows, cols):
    with pytest.raises(ConfigurationError):
        generate_gre(rows, cols)


def test_extra_edges():
    net = generate_gre(5, 5, extra_edges=30, seed=4)
    lattice = generate_gre(5, 5)
    extra = set(net._edge_index) - set(lattice._edge_index)
    assert len(extra) == 30 and net.edge_count == lattice.edge_count + 30
    for s, t in extra:
        assert s != t
        rs, cs = divmod(s, 5)
        rt, ct = divmod(t, 5)
        assert abs(rs - rt) + abs(cs - ct) != 1


def test_extra_edges_bounded():
    with pytest.raises(ConfigurationError):
        generate_gre(2, 2, extra_edges=5)
    assert generate_gre(2, 2, extra_edges=4).edge_count == 12


def test_determinism():
    a = generate_gre(8, 8, extra_edges=20, seed=99)
    b = generate_gre(8, 8, extra_edges=20, seed=99)
    assert a.edges() == b.edges()
    assert generate_gre(8, 8, extra_edges=20, seed=100).edges() != a.edges()


class TestPlaceDefenders:
    def test_zero_count_unchanged(self):
        net = generate_gre(4, 4)
        assert place_defenders(net, 0, seed=1) == net

    def test_counts_and_bounds(self):
        net, spec = make_scenario(15, 15, defender_count=0, seed=0)
        forbidden = (spec.start, *spec.exits)
        placed = place_defenders(net, 5, 0.2, 0.5, forbidden, seed=3)
        p = placed.capture_prob
        assert np.count_nonzero(p) == 5
        assert np.count_nonzero(p == 0.0) == 220
        assert np.all((p[p > 0] >= 0.2) & (p[p > 0] <= 0.5))
        assert np.all(p[list(forbidden)] == 0.0)

    def test_degenerate_interval(self):
        placed = place_defenders(generate_gre(5, 5), 7, 0.3, 0.3, seed=2)
        assert sorted(set(placed.capture_prob.tolist())) == [0.0, 0.3]

    def test_too_many(self):
        with pytest.raises(ConfigurationError):
            place_defenders(generate_gre(2, 2), 3, forbidden=[0, 1], seed=0)

    @pytest.mark.parametrize("lo, hi", [(0.5, 0.2), (-0.1, 0.2), (0.2, 1.0)])
    def test_bad_interval(self, lo, hi):
        with pytest.raises(ConfigurationError):
            place_defenders(generate_gre(2, 2), 1, lo, hi)

    def test_topology_independent_of_defenders(self):
        a, _ = make_scenario(10, 10, extra_edges=15, defender_count=5, seed=8)
        b, _ = make_scenario(10, 10, extra_edges=15, defender_count=20, seed=8)
        assert a.edges() == b.edges()


class TestMakeScenario:
    def test_paper_layout(self):
        net, spec = make_scenario(15, 15, defender_count=5, seed=0)
        assert spec.start == 0
        assert spec.exits == tuple(node_id(14, c, 15) for c in (0, 3, 7, 10, 14))
        assert np.count_nonzero(net.capture_prob) == 5

    def test_narrow_grid(self):
        _, spec = make_scenario(2, 5, defender_count=0, seed=0)
        assert spec.exits == (5, 6, 7, 8, 9)

    def test_max_paper_density(self):
        net, spec = make_scenario(15, 15, defender_count=25, seed=0)
        assert np.count_nonzero(net.capture_prob) == 25

    def test_determinism(self):
        a = make_scenario(15, 15, 10, 25, 0.2, 0.5, seed=42)
        b = make_scenario(15, 15, 10, 25, 0.2, 0.5, seed=42)
        assert a[0] == b[0] and a[1] == b[1]

    def test_always_solvable(self):
        for seed in range(30):
            net, spec = make_scenario(15, 15, defender_count=25, seed=seed)
            assert np.isfinite(value_iteration(net, spec.exits).cost_to_go).all()

    def test_too_few_columns(self):
        with pytest.raises(ConfigurationError):
            make_scenario(3, 3, defender_count=0)

    def test_exit_columns(self):
        assert exit_columns(15, 5) == [0, 3, 7, 10, 14]
        assert exit_columns(9, 1) == [8]
