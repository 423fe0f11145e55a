"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
twin is loaded. Setting ``NMU_PURE_PYTHON=1`` forces the fallback.
"""
import os
from importlib import import_module

_NAMES = {"cython": "nmusort._ckernels", "python": "nmusort._pykernels"}


def load_backend(name):
    """Import a backend module by name (``"cython"`` or ``"python"``)."""
    try:
        return import_module(_NAMES[name])
    except KeyError:
        raise ValueError(f"unknown kernel backend {name!r}") from None


def available_backends():
    found = []
    for name in _NAMES:
        try:
            load_backend(name)
        except ImportError:
            continue
        found.append(name)
    return found


if os.environ.get("NMU_PURE_PYTHON", "") not in ("", "0"):
    _impl = load_backend("python")
else:
    try:
        _impl = load_backend("cython")
    except ImportError:
        _impl = load_backend("python")

Plan = _impl.Plan
BACKEND = _impl.BACKEND

FOUR = 0
THIRD_ABOVE = 1
THIRD_BELOW = 2
