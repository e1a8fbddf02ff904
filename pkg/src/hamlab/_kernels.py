"""Kernel backend selection.

The compiled extension is used when importable; HAMLAB_KERNELS=python forces
the pure fallback and HAMLAB_KERNELS=c fails loudly if the extension is
missing. Both backends implement identical contracts, see _speedups_py.
"""

import os

from .errors import ParameterError
from . import _speedups_py

_requested = os.environ.get("HAMLAB_KERNELS", "auto").lower()

if _requested in ("auto", "", "c"):
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _requested == "c":
            raise
        _impl = _speedups_py
elif _requested == "python":
    _impl = _speedups_py
else:
    raise ParameterError(
        f"HAMLAB_KERNELS={_requested!r}, expected auto, c or python")

dp_ham_cycle = _impl.dp_ham_cycle
bt_ham_cycle = _impl.bt_ham_cycle


def backend() -> str:
    """Name of the active kernel backend, 'c' or 'python'."""
    return _impl.BACKEND


def backends():
    """All importable kernel modules keyed by name, for benchmarks and tests."""
    out = {"python": _speedups_py}
    try:
        from . import _speedups  # type: ignore[attr-defined]
        out["c"] = _speedups
    except ImportError:
        pass
    return out
