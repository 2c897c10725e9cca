"""Sampled bump kernels, discrete convolution and approximation curves."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import GridError, GridFunction
from .norm import MorreyParams, lp_norm_omega, morrey_norm
from .transforms import lattice_vectors, translation_modulus

__all__ = ["BumpKernel", "scale_kernel", "convolve", "approximation_curve", "bump_profile"]


def bump_profile(s: np.ndarray) -> np.ndarray:
    """``exp(-1/(1 - s^2))`` for ``|s| < 1`` and 0 elsewhere."""
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1
    out[inside] = np.exp(-1.0 / (1.0 - s[inside] ** 2))
    return out


@dataclass(frozen=True, eq=False)
class BumpKernel:
    """Standard bump of support radius ``t`` sampled on the lattice of spacing ``h``.

    ``offsets`` are integer lattice offsets with ``|o| h < t`` and ``weights``
    their sample values, rescaled so ``h**n * sum(weights) == 1``.
    """

    dim: int
    spacing: float
    radius: float
    offsets: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @classmethod
    def sample(cls, dim: int, spacing: float, radius: float) -> "BumpKernel":
        steps = radius / spacing
        k = round(steps)
        if abs(steps - k) > 1e-9 * max(1.0, steps):
            raise GridError(f"kernel radius {radius} is not a multiple of the spacing {spacing}")
        if k < 1:
            raise GridError("kernel radius must be at least one grid spacing")
        offs = lattice_vectors(dim, k, strict=True)
        s = np.sqrt((offs ** 2).sum(axis=1)) / k
        vals = bump_profile(s)
        if vals.sum() == 0:  # only the origin survives when k == 1
            vals = (offs ** 2).sum(axis=1) == 0
            vals = vals.astype(float)
        vals = vals / (vals.sum() * spacing ** dim)
        offs.setflags(write=False)
        vals.setflags(write=False)
        return cls(dim, float(spacing), k * float(spacing), offs, vals)

    def mass(self) -> float:
        """``h**n * sum |phi|``."""
        return float(self.spacing ** self.dim * np.abs(self.weights).sum())


def scale_kernel(phi: BumpKernel, t: float) -> BumpKernel:
    """The kernel ``t**-n phi(x/t)`` resampled on the same lattice and renormalized."""
    if t < phi.spacing * (1 - 1e-9):
        raise GridError("scaled kernel radius is below the grid spacing")
    return BumpKernel.sample(phi.dim, phi.spacing, t)


def _shift_zero(a: np.ndarray, s) -> np.ndarray:
    out = np.zeros_like(a)
    src, dst = [], []
    for k, n in zip(s, a.shape):
        lo, hi = max(0, -k), min(n, n - k)
        src.append(slice(lo, max(lo, hi)))
        dst.append(slice(lo + k, max(lo, hi) + k))
    out[tuple(dst)] = a[tuple(src)]
    return out


def convolve(f: GridFunction, phi: BumpKernel) -> GridFunction:
    """``g(x) = h^n sum_o f(x - o h) phi(o)`` with zero fill outside the box."""
    d = f.domain
    if not d.full:
        raise GridError("convolution needs a full-mask grid")
    if phi.dim != d.dim or not math.isclose(phi.spacing, d.spacing, rel_tol=1e-12):
        raise GridError("kernel and function live on different lattices")
    a = f.dense()
    out = np.zeros_like(a)
    cell = d.cell_volume
    for o, wgt in zip(phi.offsets, phi.weights):
        out += (cell * wgt) * _shift_zero(a, tuple(int(v) for v in o))
    return GridFunction(d, out.reshape(-1))


def approximation_curve(f: GridFunction, params: MorreyParams, eps_samples,
                        with_modulus: bool = False):
    """Rows ``(eps, morrey_err, lp_err)`` for ``f - f * phi_eps``.

    With ``with_modulus`` each row gains the translation modulus
    ``max_{|y| <= eps}`` of the norm of ``f - tau_y f``, which bounds the
    Morrey error column.
    """
    eps = [float(e) for e in eps_samples]
    if any(b > a for a, b in zip(eps[:-1], eps[1:])):
        raise ValueError("eps samples must be descending")
    base = BumpKernel.sample(f.domain.dim, f.domain.spacing, f.domain.spacing)
    rows = []
    for e in eps:
        phi = scale_kernel(base, e)
        err = f - convolve(f, phi)
        row = (e, morrey_norm(err, params).value, lp_norm_omega(err, params.p))
        if with_modulus:
            row += (translation_modulus(f, params, phi.radius) * phi.mass(),)
        rows.append(row)
    return rows
