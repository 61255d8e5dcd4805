"""Maximum-survival escape routes on networks with static capture risk.

Capture probabilities become additive risk costs ``-ln(1 - p)``, and value
iteration over the resulting Bellman equation yields the safest route to any
exit. A shortest-travel-time baseline, brute-force and label-setting oracles,
and Monte Carlo simulation are included for comparison and verification.
"""
from .baselines import dijkstra_risk_oracle, shortest_time_path
from .errors import (
    ConfigurationError,
    DomainError,
    DperoError,
    InvalidNetworkError,
    InvalidPathError,
    NoEscapeRouteError,
    OracleLimitError,
    PolicyCycleError,
    SweepError,
    VerificationError,
)
from .generate import generate_gre, make_scenario, place_defenders
from .graph import INFINITE_COST, EscapePath, RiskNetwork, build_network, risk_cost, score_path
from .harness import ComparisonRecord, emit_report, run_comparison, sweep
from .kernels import BACKEND as KERNEL_BACKEND
from .oracles import enumerate_best_path, monte_carlo_survival
from .scenario import GenerationParams, ScenarioSpec, load_scenario, save_scenario
from .solver import DEFAULT_EPSILON, ValueTable, extract_path, value_iteration

__version__ = "0.1.0"
