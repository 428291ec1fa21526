"""Kernel backend selection.

The search kernel has two interchangeable executions:

* ``numba``  -- JIT-compiled (nogil, cached); the default when numba imports.
* ``python`` -- the same function run by the interpreter on numpy scalars.

Selection order: an explicit ``use(...)`` override, else the environment
variable ``NO3LINE_BACKEND``, else numba when available.
"""

from __future__ import annotations

import os
from typing import Callable, Optional

from . import kernels
from .errors import InvalidInputError

ENV_VAR = "NO3LINE_BACKEND"
BACKENDS = ("numba", "python")

_override: Optional[str] = None
_compiled: Optional[Callable] = None


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def available() -> tuple[str, ...]:
    return BACKENDS if _numba_available() else ("python",)


def use(name: Optional[str]) -> None:
    """Force a backend for this process (None restores the default)."""
    if name is not None and name not in BACKENDS:
        raise InvalidInputError(f"unknown backend {name!r}; expected one of {BACKENDS}")
    global _override
    _override = name


def current() -> str:
    if _override is not None:
        return _override
    env = os.environ.get(ENV_VAR)
    if env:
        if env not in BACKENDS:
            raise InvalidInputError(
                f"{ENV_VAR}={env!r} is not a backend; expected one of {BACKENDS}"
            )
        return env
    return "numba" if _numba_available() else "python"


def _compile() -> Callable:
    global _compiled
    if _compiled is None:
        from numba import njit

        _compiled = njit(cache=True, nogil=True)(kernels.dfs_task)
    return _compiled


def dfs_task() -> Callable:
    """The search kernel for the current backend."""
    name = current()
    if name == "numba":
        if not _numba_available():
            raise InvalidInputError("numba backend requested but numba is not installed")
        return _compile()
    return kernels.dfs_task
