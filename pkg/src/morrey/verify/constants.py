"""Embedding constants and discrete ball measures."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .._kernels import sorted_offsets
from ..grid import unit_ball_volume
from ..weights import Weight, dim_over_p, ratio_sup

__all__ = [
    "IotaUndefined",
    "EmbeddingConstants",
    "iota_constant",
    "jay_constant",
    "embedding_constants",
    "lattice_counts",
    "discrete_measure",
]

INF = math.inf


class IotaUndefined(ArithmeticError):
    """The ratio form needs a weight ``v1`` without zeros."""


def _exponent(p: float, q: float, n: int) -> float:
    if p < q:
        raise ValueError(f"embedding constants need p >= q, got p={p}, q={q}")
    return dim_over_p(n, q) - dim_over_p(n, p)


def _need_positive(v1: Weight):
    if not v1.strictly_positive:
        raise IotaUndefined(f"{v1.spec} vanishes somewhere")


def iota_constant(v1: Weight, v2: Weight, p: float, q: float, rho: float, n: int) -> float:
    """``sup_{0<r<rho} v2(r) r^(n/q) / (v1(r) r^(n/p))``."""
    _need_positive(v1)
    return ratio_sup(v2, v1, _exponent(p, q, n), 0.0, float(rho))


def jay_constant(v1: Weight, v2: Weight, p: float, q: float, rho: float, n: int) -> float:
    """Smallest ``c`` with the power-corrected bound below ``min(1, rho)`` and the
    plain bound ``v2 <= c v1`` on ``[1, rho)``."""
    _need_positive(v1)
    e = _exponent(p, q, n)
    rho = float(rho)
    small = ratio_sup(v2, v1, e, 0.0, min(1.0, rho))
    large = ratio_sup(v2, v1, 0.0, 1.0, rho) if rho > 1 else 0.0
    return max(small, large)


@dataclass(frozen=True)
class EmbeddingConstants:
    p: float
    q: float
    rho: float
    iota: float
    jay: float
    omega_factor: float


def embedding_constants(v1, v2, p, q, rho, n) -> EmbeddingConstants:
    e = _exponent(p, q, n) / n
    return EmbeddingConstants(
        float(p), float(q), float(rho),
        iota_constant(v1, v2, p, q, rho, n),
        jay_constant(v1, v2, p, q, rho, n),
        unit_ball_volume(n) ** e,
    )


def lattice_counts(n: int, kmax: int) -> np.ndarray:
    """``counts[k]`` = number of lattice offsets with ``|o|^2 < k^2``, ``k = 0..kmax``."""
    _, ring_end = sorted_offsets(n, kmax)
    return np.asarray(ring_end, dtype=np.int64)


def discrete_measure(n: int, h: float, kmax: int, npoints: int) -> np.ndarray:
    """Upper bound ``h^n min(count_k, N)`` on the measure of a grid ball of radius ``k h``
    intersected with a domain of ``N`` points, for ``k = 1..kmax``."""
    counts = lattice_counts(n, kmax)[1:]
    return h ** n * np.minimum(counts, npoints).astype(float)
