"""Kernel backend selection.

The compiled ``_ckernels`` module is used when it was built; otherwise, or
when ``RIVERVOTE_PURE_PYTHON`` is set to a non-empty value, the pure-Python
``_pykernels`` are used. Both expose ``margin_matrix``, ``widest_paths`` and
``greedy_diagram`` with identical contracts.
"""
import os

from . import _pykernels

BACKENDS = {"python": _pykernels}

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels

if _ckernels is not None and not os.environ.get("RIVERVOTE_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

_active = BACKENDS[BACKEND]
margin_matrix = _active.margin_matrix
widest_paths = _active.widest_paths
greedy_diagram = _active.greedy_diagram
