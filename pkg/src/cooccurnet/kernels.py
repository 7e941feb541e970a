"""Kernel backend selection: compiled extension when present, pure Python otherwise.

The compiled module is optional. Set ``COOCCURNET_PURE=1`` to force the
pure backend regardless of what is installed; ``use_backend()`` switches
at runtime (used by the benchmark and equivalence tests).
"""

import os

from cooccurnet import _pykernels

try:
    from cooccurnet import _ckernels
except ImportError:
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["c"] = _ckernels

BACKEND = None
intersect_sorted = None
offset_intersect = None


def available_backends():
    return sorted(_BACKENDS)


def use_backend(name):
    """Route the kernel functions through the named backend ('c' or 'python')."""
    global BACKEND, intersect_sorted, offset_intersect
    if name not in _BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; have {available_backends()}")
    impl = _BACKENDS[name]
    BACKEND = name
    intersect_sorted = impl.intersect_sorted
    offset_intersect = impl.offset_intersect
    return name


if os.environ.get("COOCCURNET_PURE"):
    use_backend("python")
else:
    use_backend("c" if _ckernels is not None else "python")
