"""Kernel backend selection.

At import time the compiled kernels are preferred when present; setting
MVSUM_PURE=1 in the environment forces the pure-Python ones. Callers go
through `_dispatch.kernels` so the backend can also be swapped at runtime
(used by the parity tests and the backend benchmark).
"""

from __future__ import annotations

import os

from mvsum import _kernels_py


def _load(name: str):
    if name == "python":
        return _kernels_py
    if name == "cython":
        from mvsum import _kernels

        return _kernels
    raise ValueError(f"unknown kernel backend {name!r} (expected 'python' or 'cython')")


def available_backends() -> list[str]:
    names = ["python"]
    try:
        _load("cython")
    except ImportError:
        pass
    else:
        names.append("cython")
    return names


def use_backend(name: str):
    """Switch the active kernel backend; returns the previous module."""
    global kernels
    previous = kernels
    kernels = _load(name)
    return previous


if os.environ.get("MVSUM_PURE"):
    kernels = _kernels_py
else:
    try:
        kernels = _load("cython")
    except ImportError:
        kernels = _kernels_py
