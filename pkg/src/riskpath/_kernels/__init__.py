"""Backend selection for the computational kernels.

The kernels in ``_impl.py`` are single-source: the module is loaded once
with every function compiled by numba (``@njit``) and/or once as plain
Python over numpy arrays.  Selection:

* environment variable ``RISKPATH_BACKEND=numba`` (default) or ``numpy``;
* if numba is unavailable or fails to import, the numpy path is used.

``impl`` is the module the rest of the package calls into.  Tests and the
benchmark load both backends explicitly via :func:`load_backend`.
"""

import importlib.util
import os
import sys

_IMPL_PATH = os.path.join(os.path.dirname(__file__), "_impl.py")
_cache: dict[str, object] = {}


def load_backend(name: str):
    """Load (and memoize) one backend module: 'numba' or 'numpy'."""
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel backend {name!r}")
    if name in _cache:
        return _cache[name]
    modname = f"riskpath._kernels._impl_{name}"
    prev = os.environ.get("_RISKPATH_JIT_INTERNAL")
    os.environ["_RISKPATH_JIT_INTERNAL"] = "1" if name == "numba" else "0"
    try:
        spec = importlib.util.spec_from_file_location(modname, _IMPL_PATH)
        module = importlib.util.module_from_spec(spec)
        sys.modules[modname] = module
        spec.loader.exec_module(module)
    finally:
        if prev is None:
            os.environ.pop("_RISKPATH_JIT_INTERNAL", None)
        else:
            os.environ["_RISKPATH_JIT_INTERNAL"] = prev
    _cache[name] = module
    return module


def _select() -> object:
    requested = os.environ.get("RISKPATH_BACKEND", "numba").lower()
    if requested not in ("numba", "numpy"):
        raise ValueError(
            f"RISKPATH_BACKEND must be 'numba' or 'numpy', got {requested!r}"
        )
    if requested == "numba":
        try:
            return load_backend("numba")
        except ImportError:
            return load_backend("numpy")
    return load_backend("numpy")


impl = _select()


def backend_name() -> str:
    """Name of the active backend ('numba' or 'numpy')."""
    return "numba" if getattr(impl, "IS_JIT", False) else "numpy"
