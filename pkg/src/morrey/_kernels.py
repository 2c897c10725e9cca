"""Ball-sum profile kernels.

For every center ``c`` and every integer radius ``k`` the kernels accumulate
``S(c, k) = sum_{|o|^2 < k^2} a[c + o]`` (or the running max when ``p = inf``)
by walking a list of lattice offsets sorted by ``|o|^2``, so ring ``k`` only adds
the offsets with ``(k-1)^2 <= |o|^2 < k^2``.  The reduction keeps, for each
``k``, the largest ``S(c, k)`` over centers and the first center attaining it.

Each center is summed sequentially in the same offset order by both backends,
so results do not depend on thread scheduling and the two backends agree bit
for bit.  ``MORREY_BACKEND=numpy`` selects the fallback; ``MORREY_THREADS``
caps numba's thread count.
"""
from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

# the image's TBB is too old for numba; skip straight to OpenMP unless overridden
os.environ.setdefault("NUMBA_THREADING_LAYER", "omp")

try:  # pragma: no cover - exercised implicitly
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

__all__ = ["ball_profile", "sorted_offsets", "active_backend", "HAVE_NUMBA"]

_CHUNK = 4096


def active_backend() -> str:
    choice = os.environ.get("MORREY_BACKEND", "numba").strip().lower()
    if choice not in ("numba", "numpy"):
        raise ValueError(f"MORREY_BACKEND must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numba" and not HAVE_NUMBA:
        return "numpy"
    return choice


@lru_cache(maxsize=32)
def sorted_offsets(n: int, kmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Offsets with ``|o|^2 < kmax^2`` sorted by (``|o|^2``, lexicographic).

    Returns ``(offsets, ring_end)`` where ``ring_end[k]`` counts offsets with
    ``|o|^2 < k^2`` for ``k = 0..kmax``.
    """
    r = np.arange(-(kmax - 1), kmax) if kmax > 0 else np.zeros(0, dtype=np.int64)
    grids = np.meshgrid(*([r] * n), indexing="ij")
    offs = np.stack([g.reshape(-1) for g in grids], axis=1).astype(np.int64)
    d2 = (offs * offs).sum(axis=1)
    keep = d2 < kmax * kmax
    offs, d2 = offs[keep], d2[keep]
    order = np.lexsort(tuple(offs[:, i] for i in range(n - 1, -1, -1)) + (d2,))
    offs, d2 = offs[order], d2[order]
    ks = np.arange(kmax + 1, dtype=np.int64)
    ring_end = np.searchsorted(d2, ks * ks, side="left").astype(np.int64)
    offs.setflags(write=False)
    ring_end.setflags(write=False)
    return offs, ring_end


def _set_threads():
    cap = os.environ.get("MORREY_THREADS")
    if cap:
        numba.set_num_threads(max(1, min(int(cap), numba.config.NUMBA_NUM_THREADS)))


if HAVE_NUMBA:

    @njit(cache=True, parallel=True)
    def _chunk_sum(apad, centers, deltas, ring_end, kmax):
        m = centers.shape[0]
        prof = np.empty((m, kmax))
        for i in prange(m):
            c = centers[i]
            s = 0.0
            j = 0
            for k in range(1, kmax + 1):
                end = ring_end[k]
                while j < end:
                    s += apad[c + deltas[j]]
                    j += 1
                prof[i, k - 1] = s
        return prof

    @njit(cache=True, parallel=True)
    def _chunk_max(apad, centers, deltas, ring_end, kmax):
        m = centers.shape[0]
        prof = np.empty((m, kmax))
        for i in prange(m):
            c = centers[i]
            s = 0.0
            j = 0
            for k in range(1, kmax + 1):
                end = ring_end[k]
                while j < end:
                    v = apad[c + deltas[j]]
                    if v > s:
                        s = v
                    j += 1
                prof[i, k - 1] = s
        return prof


def _chunk_numpy(apad, centers, deltas, ring_end, kmax, use_max):
    prof = np.empty((centers.size, kmax))
    s = np.zeros(centers.size)
    j = 0
    for k in range(1, kmax + 1):
        for j in range(j, int(ring_end[k])):
            v = apad[centers + deltas[j]]
            if use_max:
                np.maximum(s, v, out=s)
            else:
                s += v
        j = int(ring_end[k])
        prof[:, k - 1] = s
    return prof


def ball_profile(a: np.ndarray, centers: np.ndarray, kmax: int, use_max: bool,
                 backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Per-radius maximum over centers of the ball sum (or ball max) of ``a``.

    ``a`` is a dense nonnegative array on the box, zero off the domain;
    ``centers`` is ``(m, n)`` integer box indices.  Returns ``(smax, arg)`` of
    length ``kmax`` where ``smax[k-1] = max_c S(c, k)`` and ``arg[k-1]`` is the
    row of ``centers`` attaining it (first one on ties).
    """
    backend = backend or active_backend()
    a = np.asarray(a, dtype=np.float64)
    centers = np.asarray(centers, dtype=np.int64).reshape(-1, a.ndim)
    smax = np.zeros(kmax)
    arg = np.zeros(kmax, dtype=np.int64)
    if kmax <= 0 or centers.shape[0] == 0:
        return smax, arg
    n = a.ndim
    pad = kmax - 1
    apad = np.pad(a, pad).reshape(-1)
    pshape = tuple(s + 2 * pad for s in a.shape)
    strides = np.array([int(np.prod(pshape[i + 1:])) for i in range(n)], dtype=np.int64)
    offs, ring_end = sorted_offsets(n, kmax)
    deltas = offs @ strides
    flat = (centers + pad) @ strides
    if backend == "numba":
        _set_threads()
        kern = _chunk_max if use_max else _chunk_sum
    smax[:] = -1.0
    for start in range(0, flat.size, _CHUNK):
        cs = flat[start:start + _CHUNK]
        if backend == "numba":
            prof = kern(apad, cs, deltas, ring_end, kmax)
        else:
            prof = _chunk_numpy(apad, cs, deltas, ring_end, kmax, use_max)
        best = prof.argmax(axis=0)
        vals = prof[best, np.arange(kmax)]
        better = vals > smax
        smax[better] = vals[better]
        arg[better] = best[better] + start
    return smax, arg
