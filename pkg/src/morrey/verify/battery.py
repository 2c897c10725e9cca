"""Seeded test functions on the unit cube."""
from __future__ import annotations

import numpy as np

from ..grid import GridDomain, GridFunction
from ..mollifier import bump_profile

__all__ = ["KINDS", "generate", "make_battery"]

KINDS = ("constant", "box", "ball", "bump", "piecewise", "singular", "zero")


def _radius(x: np.ndarray, c) -> np.ndarray:
    return np.sqrt(((x - np.asarray(c)) ** 2).sum(axis=1))


def generate(kind: str, n: int, size: int, seed: int = 0) -> GridFunction:
    """One battery function on the cell-centred grid of ``size**n`` points in ``(0,1)^n``."""
    dom = GridDomain.unit_cube(n, size)
    rng = np.random.default_rng([seed, KINDS.index(kind) if kind in KINDS else 99])
    x = dom.coords(dom.indices())
    if kind == "constant":
        return GridFunction.constant(dom, 1.0)
    if kind == "zero":
        return GridFunction.constant(dom, 0.0)
    if kind == "box":
        lo = rng.uniform(0.1, 0.4, size=n)
        hi = lo + rng.uniform(0.2, 0.5, size=n)
        return GridFunction(dom, np.all((x >= lo) & (x < hi), axis=1).astype(float))
    if kind == "ball":
        c = rng.uniform(0.3, 0.7, size=n)
        return GridFunction(dom, (_radius(x, c) < rng.uniform(0.15, 0.3)).astype(float))
    if kind == "bump":
        return GridFunction(dom, bump_profile(_radius(x, 0.5) / 0.3))
    if kind == "piecewise":
        cells = 8
        table = rng.normal(size=(cells,) * n)
        cell = np.minimum((x * cells).astype(int), cells - 1)
        return GridFunction(dom, table[tuple(cell.T)])
    if kind == "singular":
        # |x - c|^-gamma with gamma < n/2, clipped at the grid scale
        gamma = 0.4 * n
        r = np.maximum(_radius(x, 0.5 + 0.25 / size), 0.5 / size)
        return GridFunction(dom, r ** (-gamma))
    raise ValueError(f"unknown battery kind {kind!r}; choose from {', '.join(KINDS)}")


def make_battery(seed: int, n: int, size: int) -> list[tuple[str, GridFunction]]:
    """The nonzero battery functions, in a fixed order."""
    return [(k, generate(k, n, size, seed)) for k in KINDS if k != "zero"]
