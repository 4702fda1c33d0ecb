"""Kernel selection: compiled extension when available, pure Python otherwise.

The two backends are algorithmically identical (including the random
generator), so every result is bit-for-bit the same; the compiled kernel
is just orders of magnitude faster on the enumeration and sampling loops.
Set TREECROSS_PURE=1 to force the pure kernel, e.g. for benchmarking.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernel

if os.environ.get("TREECROSS_PURE") == "1":
    _impl = _pykernel
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernel

BACKEND: str = _impl.BACKEND

tally_shard = _impl.tally_shard
sample_stream_convex = _impl.sample_stream_convex
sample_stream_coords = _impl.sample_stream_coords


def _coord_arrays(points) -> tuple[np.ndarray, np.ndarray]:
    xs = np.array([p[0] for p in points], dtype=np.int64)
    ys = np.array([p[1] for p in points], dtype=np.int64)
    return xs, ys


def convex_quadruple_count(points) -> int:
    xs, ys = _coord_arrays(points)
    return _impl.convex_quadruple_count(xs, ys)


def find_collinear_triple(points):
    xs, ys = _coord_arrays(points)
    return _impl.find_collinear_triple(xs, ys)


def get_backend(name: str):
    """Fetch a kernel module by name ('compiled' or 'pure'); used by the
    benchmark and the backend-equivalence tests."""
    if name == "pure":
        return _pykernel
    if name == "compiled":
        from . import _native  # raises ImportError if the extension is absent

        return _native
    raise ValueError(f"unknown backend {name!r}")
