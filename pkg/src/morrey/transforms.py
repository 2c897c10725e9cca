"""Function-to-function operators: zero extension, restriction, products,
dilation and lattice translation."""
from __future__ import annotations

import math

import numpy as np

from .grid import GridDomain, GridError, GridFunction
from .norm import MorreyParams, morrey_norm

__all__ = [
    "extend_by_zero",
    "restrict",
    "pointwise_product",
    "dilate",
    "translate",
    "lattice_vectors",
    "translation_modulus",
]

_SNAP = 1e-9


def _as_int(x: float, what: str) -> int:
    r = round(x)
    if abs(x - r) > _SNAP * max(1.0, abs(x)):
        raise GridError(f"{what} is not an integer multiple of the spacing ({x})")
    return int(r)


def extend_by_zero(f: GridFunction, target: GridDomain) -> GridFunction:
    """Copy ``f`` into the larger full box ``target`` and fill the rest with 0."""
    d = f.domain
    if not target.full:
        raise GridError("extension target must have a full mask")
    if target.dim != d.dim or target.spacing != d.spacing:
        raise GridError("extension target must share dimension and spacing")
    shift = [
        _as_int((o - t) / d.spacing, "origin offset") for o, t in zip(d.origin, target.origin)
    ]
    if any(s < 0 or s + n > m for s, n, m in zip(shift, d.shape, target.shape)):
        raise GridError("extension target does not contain the source grid")
    dense = np.zeros(target.shape)
    idx = d.indices() + np.asarray(shift)
    dense[tuple(idx.T)] = f.values
    return GridFunction(target, dense.reshape(-1))


def restrict(f: GridFunction, submask) -> GridFunction:
    """Restriction of ``f`` to the points of ``submask`` (an array or a domain)."""
    if isinstance(submask, GridDomain):
        if not submask.same_grid(f.domain):
            raise GridError("submask lives on a different grid")
        submask = submask.mask
    sub = np.asarray(submask, dtype=bool)
    if sub.shape != f.domain.shape:
        raise GridError("submask shape does not match the grid")
    if np.any(sub & ~f.domain.mask):
        raise GridError("submask is not contained in the domain mask")
    dom = f.domain.with_mask(sub)
    return GridFunction(dom, f.dense()[sub])


def pointwise_product(f: GridFunction, g: GridFunction) -> GridFunction:
    if f.domain != g.domain:
        raise GridError("pointwise product needs identical domains")
    return GridFunction(f.domain, f.values * g.values)


def dilate(f: GridFunction, alpha: float) -> GridFunction:
    """``g(y) = f(alpha * y)`` by relabelling the lattice.

    The samples are kept and the grid is rescaled to spacing ``h/alpha`` and
    origin ``origin/alpha``, so no interpolation happens.  ``alpha`` must be an
    integer or the reciprocal of one.
    """
    alpha = float(alpha)
    if not (alpha > 0 and math.isfinite(alpha)):
        raise GridError("dilation factor must be positive")
    ok = abs(alpha - round(alpha)) < 1e-12 or abs(1 / alpha - round(1 / alpha)) < 1e-12
    if not ok:
        raise GridError(f"dilation factor {alpha} is neither an integer nor 1/integer")
    d = f.domain
    dom = GridDomain(d.shape, d.spacing / alpha, tuple(o / alpha for o in d.origin), d.mask)
    return GridFunction(dom, f.values)


def _steps(f: GridFunction, y, in_steps: bool) -> tuple[int, ...]:
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if y.size != f.domain.dim:
        raise GridError("translation vector has the wrong dimension")
    if in_steps:
        return tuple(_as_int(v, "translation step") for v in y)
    return tuple(_as_int(v / f.domain.spacing, "translation vector") for v in y)


def translate(f: GridFunction, y, boundary: str = "zero", in_steps: bool = False) -> GridFunction:
    """``(tau_y f)(x) = f(x - y)`` for a lattice vector ``y``.

    ``boundary`` is ``"periodic"`` (wrap around the box) or ``"zero"`` (values
    shifted out are dropped, vacated points become 0).  ``y`` is physical
    unless ``in_steps`` is set.
    """
    if not f.domain.full:
        raise GridError("translation needs a full-mask grid")
    s = _steps(f, y, in_steps)
    a = f.dense()
    if boundary == "periodic":
        out = np.roll(a, s, axis=tuple(range(a.ndim)))
    elif boundary == "zero":
        out = np.zeros_like(a)
        src, dst = [], []
        for k, n in zip(s, a.shape):
            lo, hi = max(0, -k), min(n, n - k)
            src.append(slice(lo, max(lo, hi)))
            dst.append(slice(lo + k, max(lo, hi) + k))
        out[tuple(dst)] = a[tuple(src)]
    else:
        raise ValueError(f"boundary must be 'periodic' or 'zero', got {boundary!r}")
    return GridFunction(f.domain, out.reshape(-1))


def lattice_vectors(n: int, radius_steps: float, strict: bool = False) -> np.ndarray:
    """Integer vectors ``s`` with ``|s| <= radius_steps`` (``<`` when ``strict``)."""
    m = int(math.floor(radius_steps))
    r = np.arange(-m, m + 1)
    grid = np.stack([g.reshape(-1) for g in np.meshgrid(*([r] * n), indexing="ij")], axis=1)
    d2 = (grid ** 2).sum(axis=1)
    lim = radius_steps * radius_steps
    keep = d2 < lim - 1e-9 if strict else d2 <= lim + 1e-9
    return grid[keep]


def translation_modulus(f: GridFunction, params: MorreyParams, delta: float) -> float:
    """``max_{|y| <= delta}`` of the Morrey norm of ``f - tau_y f`` (zero fill)."""
    best = 0.0
    for s in lattice_vectors(f.domain.dim, delta / f.domain.spacing):
        if not s.any():
            continue
        g = f - translate(f, s, "zero", in_steps=True)
        best = max(best, morrey_norm(g, params).value)
    return best
