import numpy as np
import pytest

from dpero import build_network
from dpero.kernels import BACKENDS

S, A, B, C, D = range(5)


@pytest.fixture
def line():
    """s -> a -> d with p(a) = 0.3."""
    return build_network(3, [(0, 1, 1.0), (1, 2, 1.0)], [0.0, 0.3, 0.0])


@pytest.fixture
def diamond():
    """s -> a -> d (short, risky) and s -> b -> c -> d (long, safe)."""
    edges = [(S, A, 1.0), (A, D, 1.0), (S, B, 1.0), (B, C, 1.0), (C, D, 1.0)]
    return build_network(5, edges, [0.0, 0.3, 0.0, 0.0, 0.0])


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return request.param


def random_instance(rng: np.random.Generator, n_min=6, n_max=12, density=(1.5, 3.0), p_max=0.6, zero_frac=0.3):
    """Random digraph with start 0 and 1-3 exits; used by property tests and acceptance."""
    n = int(rng.integers(n_min, n_max + 1))
    m = int(round(rng.uniform(*density) * n))
    m = min(m, n * (n - 1))
    pairs = [(s, t) for s in range(n) for t in range(n) if s != t]
    idx = rng.choice(len(pairs), size=m, replace=False)
    edges = [(*pairs[i], 1.0) for i in sorted(idx)]
    probs = rng.uniform(0.0, p_max, size=n)
    probs[rng.random(n) < zero_frac] = 0.0
    exits = rng.choice(np.arange(1, n), size=int(rng.integers(1, min(4, n))), replace=False)
    return build_network(n, edges, probs.tolist()), 0, sorted(int(e) for e in exits)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
