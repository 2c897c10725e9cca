"""Uniform grids, sampled functions and ball queries.

A :class:`GridDomain` is a box of lattice points ``origin + i*h`` together with
a boolean mask marking the points that belong to the domain.  A
:class:`GridFunction` carries one real value per masked point, stored in
row-major order of the masked indices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
import numpy as np

__all__ = [
    "GridError",
    "GridDomain",
    "GridFunction",
    "Ball",
    "unit_ball_volume",
    "points_in_ball",
    "lattice_ball_count",
]

# tolerance (in units of h) used to snap near-lattice centers and radii
_SNAP = 1e-9


class GridError(ValueError):
    """Raised for invalid grids, functions or incompatible operands."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GridDomain:
    shape: tuple[int, ...]
    spacing: float
    origin: tuple[float, ...]
    mask: np.ndarray = field(repr=False)

    def __init__(self, shape, spacing, origin=None, mask=None, allow_empty=False):
        shape = tuple(int(s) for s in np.atleast_1d(shape))
        if not shape or any(s < 1 for s in shape):
            raise GridError(f"shape entries must be >= 1, got {shape}")
        h = float(spacing)
        if not (math.isfinite(h) and h > 0):
            raise GridError(f"spacing must be finite and > 0, got {spacing}")
        if origin is None:
            origin = (0.0,) * len(shape)
        origin = tuple(float(o) for o in np.atleast_1d(origin))
        if len(origin) != len(shape):
            raise GridError("origin and shape have different dimensions")
        if not all(math.isfinite(o) for o in origin):
            raise GridError("origin must be finite")
        if mask is None:
            mask = np.ones(shape, dtype=bool)
        else:
            mask = np.asarray(mask, dtype=bool)
            if mask.shape != shape:
                raise GridError(f"mask shape {mask.shape} != grid shape {shape}")
        if not allow_empty and not mask.any():
            raise GridError("mask selects no points")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "spacing", h)
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "mask", _readonly(mask.copy()))

    @classmethod
    def unit_cube(cls, n: int, size: int) -> "GridDomain":
        """Cell-centred grid of ``size**n`` points filling ``(0, 1)^n``."""
        h = 1.0 / size
        return cls((size,) * n, h, (h / 2,) * n)

    @property
    def dim(self) -> int:
        return len(self.shape)

    @property
    def npoints(self) -> int:
        return int(self.mask.sum())

    @property
    def full(self) -> bool:
        return bool(self.mask.all())

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.dim

    def indices(self) -> np.ndarray:
        """Masked indices, shape ``(npoints, dim)``, row-major order."""
        return np.argwhere(self.mask)

    def coords(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=float)
        return np.asarray(self.origin) + idx * self.spacing

    def to_index(self, x) -> np.ndarray:
        """Nearest lattice index of physical coordinates ``x``."""
        t = (np.asarray(x, dtype=float) - np.asarray(self.origin)) / self.spacing
        return np.rint(t).astype(np.int64)

    def lattice_coords(self, x) -> np.ndarray:
        """Physical ``x`` in index units, snapped to integers when within 1e-9."""
        t = (np.asarray(x, dtype=float) - np.asarray(self.origin)) / self.spacing
        r = np.rint(t)
        return np.where(np.abs(t - r) < _SNAP, r, t)

    def with_mask(self, mask, allow_empty=False) -> "GridDomain":
        return GridDomain(self.shape, self.spacing, self.origin, mask, allow_empty)

    def same_grid(self, other: "GridDomain") -> bool:
        return (
            self.shape == other.shape
            and self.spacing == other.spacing
            and self.origin == other.origin
        )

    def __eq__(self, other):
        if not isinstance(other, GridDomain):
            return NotImplemented
        return self.same_grid(other) and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash((self.shape, self.spacing, self.origin, self.mask.tobytes()))

    def diameter(self) -> float:
        """Largest distance between two masked points."""
        idx = self.indices()
        if len(idx) < 2:
            return 0.0
        # the diameter of a finite set is attained between points of its convex hull;
        # the bounding box extremes per axis are enough for small sets, otherwise scan
        if len(idx) <= 4096:
            d2 = ((idx[:, None, :] - idx[None, :, :]) ** 2).sum(-1).max()
        else:
            d2 = 0
            for row in idx:
                d2 = max(d2, int(((idx - row) ** 2).sum(1).max()))
        return math.sqrt(float(d2)) * self.spacing

    def measure(self) -> float:
        """Discrete Lebesgue measure ``h**n * npoints``."""
        return self.cell_volume * self.npoints


@dataclass(frozen=True, eq=False)
class GridFunction:
    domain: GridDomain
    values: np.ndarray = field(repr=False)

    def __init__(self, domain: GridDomain, values):
        values = np.array(values, dtype=np.float64).reshape(-1)
        if values.size != domain.npoints:
            raise GridError(
                f"{values.size} values for {domain.npoints} masked points"
            )
        if not np.all(np.isfinite(values)):
            raise GridError("function values must be finite")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "values", _readonly(values))

    @classmethod
    def from_dense(cls, domain: GridDomain, dense) -> "GridFunction":
        dense = np.asarray(dense, dtype=np.float64)
        if dense.shape != domain.shape:
            raise GridError(f"dense array shape {dense.shape} != {domain.shape}")
        return cls(domain, dense[domain.mask])

    @classmethod
    def from_callable(cls, domain: GridDomain, fn) -> "GridFunction":
        """Sample ``fn`` at the physical coordinates of the masked points."""
        x = domain.coords(domain.indices())
        return cls(domain, fn(x))

    @classmethod
    def constant(cls, domain: GridDomain, c: float = 1.0) -> "GridFunction":
        return cls(domain, np.full(domain.npoints, float(c)))

    def dense(self) -> np.ndarray:
        """Values on the full box, zero at unmasked points."""
        out = np.zeros(self.domain.shape)
        out[self.domain.mask] = self.values
        return out

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.domain, values)

    def __mul__(self, c):
        if isinstance(c, GridFunction):
            return NotImplemented
        return self.with_values(self.values * float(c))

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_values(-self.values)

    def _check_same(self, other: "GridFunction"):
        if not isinstance(other, GridFunction) or other.domain != self.domain:
            raise GridError("functions live on different domains")

    def __add__(self, other):
        self._check_same(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other):
        self._check_same(other)
        return self.with_values(self.values - other.values)

    def __abs__(self):
        return self.with_values(np.abs(self.values))

    def sup(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def __eq__(self, other):
        if not isinstance(other, GridFunction):
            return NotImplemented
        return self.domain == other.domain and np.array_equal(self.values, other.values)

    __hash__ = None


@dataclass(frozen=True)
class Ball:
    center: tuple[float, ...]
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in np.atleast_1d(self.center)))
        if not self.radius > 0:
            raise GridError(f"ball radius must be > 0, got {self.radius}")


def unit_ball_volume(n: int) -> float:
    """Volume of the unit ball of R^n, ``pi**(n/2) / Gamma(n/2 + 1)``."""
    if int(n) != n or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n}")
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


def _ball_mask_index_space(domain: GridDomain, ball: Ball) -> np.ndarray:
    """Boolean over masked points (row-major) selecting ``|y - x| < r``."""
    if len(ball.center) != domain.dim:
        raise GridError("ball center dimension does not match the grid")
    c = domain.lattice_coords(ball.center)
    k = ball.radius / domain.spacing
    kr = round(k)
    if abs(k - kr) < _SNAP:
        k = float(kr)
    d2 = ((domain.indices() - c) ** 2).sum(axis=1)
    return d2 < k * k


def points_in_ball(domain: GridDomain, ball: Ball) -> list[tuple[int, ...]]:
    """Masked indices strictly inside ``ball`` (open ball, ties excluded)."""
    sel = _ball_mask_index_space(domain, ball)
    return [tuple(int(v) for v in row) for row in domain.indices()[sel]]


def lattice_ball_count(n: int, k: int) -> int:
    """Number of lattice offsets ``o`` in Z^n with ``|o|^2 < k^2``."""
    if k <= 0:
        return 0
    r = np.arange(-(k - 1), k)
    sq = r * r
    acc = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        acc = (acc[:, None] + sq[None, :]).reshape(-1)
        acc = acc[acc < k * k]
    return int(acc.size)

