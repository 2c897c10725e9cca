"""Brute-force reference for the discrete Morrey functional.

Shares nothing with the fast path beyond the grid types: every (center,
radius) pair is evaluated from scratch with integer squared distances, and the
radius range is enumerated explicitly instead of being cut at a covering
radius.  Cost is ``O(N^2)`` per exponent so it is meant for small grids.
"""
from __future__ import annotations

import math

import numpy as np

from .grid import GridFunction
from .norm import MorreyParams, NormResult, center_indices

__all__ = ["oracle_norm", "oracle_ball_sums"]


def _last_radius(params: MorreyParams, h: float, k_cover: int) -> int:
    """Largest ``k`` worth enumerating: all of ``k h < rho`` when ``rho`` is finite,
    otherwise past both the covering radius and every weight breakpoint (beyond
    which all supported weights are nonincreasing)."""
    if math.isfinite(params.rho):
        k = 0
        while (k + 1) * h < params.rho and not math.isclose((k + 1) * h, params.rho,
                                                           rel_tol=1e-9, abs_tol=0.0):
            k += 1
        return k
    far = max([k_cover] + [math.ceil(b / h) + 1 for b in params.weight.breakpoints()])
    return far + 1


def _isqrt(v: np.ndarray) -> np.ndarray:
    """Exact integer square root of a nonnegative int64 array."""
    r = np.floor(np.sqrt(v.astype(float))).astype(np.int64)
    r[r * r > v] -= 1
    r[(r + 1) * (r + 1) <= v] += 1
    return r


def oracle_ball_sums(f: GridFunction, p: float, centers: np.ndarray, kmax: int) -> np.ndarray:
    """``S[c, k-1]``: sum of ``|f|^p`` (max for ``p = inf``) over ``|y - c|^2 < k^2``.

    A point at squared distance ``d2`` lies in every ball with ``k > sqrt(d2)``,
    that is ``k >= isqrt(d2) + 1``; bucketing points by that smallest ``k`` and
    accumulating over buckets gives all radii at once.
    """
    idx = f.domain.indices().astype(np.int64)
    a = np.abs(f.values)
    if math.isfinite(p):
        a = a ** p
    out = np.zeros((len(centers), kmax))
    for i, c in enumerate(np.asarray(centers, dtype=np.int64)):
        d2 = ((idx - c) ** 2).sum(axis=1)
        kmin = _isqrt(d2) + 1
        keep = kmin <= kmax
        if math.isinf(p):
            bucket = np.zeros(kmax + 1)
            np.maximum.at(bucket, kmin[keep], a[keep])
            out[i] = np.maximum.accumulate(bucket)[1:]
        else:
            bucket = np.bincount(kmin[keep], weights=a[keep], minlength=kmax + 1)
            out[i] = np.cumsum(bucket)[1:]
    return out


def oracle_norm(f: GridFunction, params: MorreyParams, center_policy: str = "mask") -> NormResult:
    d = f.domain
    h, n, p, w = d.spacing, d.dim, params.p, params.weight
    centers = center_indices(d, center_policy)
    idx = d.indices()
    far = 0
    for c in centers:
        far = max(far, int(((idx - c) ** 2).sum(axis=1).max()))
    k_cover = math.isqrt(far) + 1
    kmax = _last_radius(params, h, k_cover)
    kb = min(kmax, k_cover)
    sums = oracle_ball_sums(f, p, centers, kb)
    full = sums[:, -1].max() if kb else 0.0
    best, best_c, best_k = 0.0, 0, 1
    for k in range(1, kmax + 1):
        wk = w(k * h)
        if k <= kb:
            col = sums[:, k - 1]
            ci = int(np.argmax(col))
            s = col[ci]
        else:
            ci, s = 0, full
        val = wk * s if math.isinf(p) else wk * (h ** n * s) ** (1.0 / p)
        if val > best:
            best, best_c, best_k = float(val), ci, k
    center = tuple(int(v) for v in centers[best_c])
    return NormResult(best, center, best_k * h, kmax, center_policy)
