"""Backend selection for the filter-bank kernels.

Prefers the compiled extension and falls back to pure NumPy when it is not
built.  ``PHWAVE_PURE_PYTHON=1`` in the environment forces the fallback.
Both backends accumulate in the same order, so results are bit-identical.
"""

import os

from . import _kernels_py

try:
    from . import _fbkernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_active = _kernels_py if (_compiled is None or os.environ.get("PHWAVE_PURE_PYTHON")) else _compiled


def backend_name() -> str:
    return "python" if _active is _kernels_py else "compiled"


def available_backends() -> dict:
    out = {"python": _kernels_py}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


def set_backend(name: str) -> None:
    """Switch kernel backend; meant for benchmarks and tests."""
    global _active
    try:
        _active = available_backends()[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}") from None


def analyze_periodic(x, h, g):
    return _active.analyze_periodic(x, h, g)


def synthesize_periodic(a, d, h, g):
    return _active.synthesize_periodic(a, d, h, g)


def analyze_valid(x_ext, h, g):
    return _active.analyze_valid(x_ext, h, g)


def synthesize_valid(a, d, h, g, n_ext):
    return _active.synthesize_valid(a, d, h, g, n_ext)
