"""Exception hierarchy. Every error raised by the package derives from DperoError."""


class DperoError(Exception):
    """Base class; ``code`` is the short machine-readable tag used by the CLI."""

    code = "error"


class DomainError(DperoError, ValueError):
    code = "domain_error"


class InvalidNetworkError(DperoError, ValueError):
    code = "invalid_network"


class InvalidPathError(DperoError, ValueError):
    code = "invalid_path"


class ConfigurationError(DperoError, ValueError):
    code = "configuration_error"


class NoEscapeRouteError(DperoError):
    code = "no_escape_route"


class PolicyCycleError(DperoError, RuntimeError):
    """Following the policy revisited a node. Indicates a solver bug."""

    code = "policy_cycle"


class OracleLimitError(DperoError):
    code = "oracle_limit"


class VerificationError(DperoError):
    """An independent oracle disagreed with the solver."""

    code = "verification_failed"


class SweepError(DperoError):
    code = "sweep_failed"

    def __init__(self, message: str, seed: int | None = None):
        super().__init__(message)
        self.seed = seed
