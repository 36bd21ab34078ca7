"""Kernel selection: compiled extension when present, pure Python otherwise.

The environment variable ``DFALAB_ENGINE`` (``auto`` / ``compiled`` /
``python``) overrides the default for callers that don't pass an explicit
engine name.
"""

import os

from . import _search_py

try:
    from . import _search as _search_c
except ImportError:  # extension not built; fall back silently
    _search_c = None

ENGINE_NAMES = ("auto", "compiled", "python")


def compiled_available():
    return _search_c is not None


def default_engine():
    name = os.environ.get("DFALAB_ENGINE", "auto")
    return name if name in ENGINE_NAMES else "auto"


def get_kernel(engine=None):
    """Resolve an engine name to a kernel module exposing breadth_first_witness."""
    name = engine if engine is not None else default_engine()
    if name == "python":
        return _search_py
    if name == "compiled":
        if _search_c is None:
            raise ValueError("compiled search kernel is not available")
        return _search_c
    if name == "auto":
        return _search_c if _search_c is not None else _search_py
    raise ValueError(f"unknown engine {name!r} (expected one of {ENGINE_NAMES})")
