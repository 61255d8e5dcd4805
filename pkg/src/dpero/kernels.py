"""Kernel selection: the compiled sweep when it imports, the pure-Python one otherwise.

Set ``DPERO_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _vi_fallback

BACKENDS = {"python": _vi_fallback.sweep_until_converged}

try:
    from . import _vi_core
except ImportError:
    _vi_core = None
else:
    BACKENDS["compiled"] = _vi_core.sweep_until_converged

if _vi_core is not None and not os.environ.get("DPERO_PURE_PYTHON"):
    BACKEND = "compiled"
else:
    BACKEND = "python"

sweep_until_converged = BACKENDS[BACKEND]


def get_kernel(name: str | None = None):
    if name is None:
        return sweep_until_converged
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown kernel backend {name!r}; available: {sorted(BACKENDS)}") from None
