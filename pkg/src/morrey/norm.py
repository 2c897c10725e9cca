"""Discrete generalized Morrey functional.

For a grid function ``f`` on a masked domain with spacing ``h`` the engine
evaluates

    sup_{x, k}  w(k h) * ( h^n * sum_{|y - x| < k h} |f(y)|^p )^(1/p)

over centers ``x`` and integer ``k >= 1`` with ``k h < rho``.  Radii are
sampled at multiples of ``h`` and the weight is read at those radii only.
Once ``k`` exceeds the diameter of the bounding box of centers and masked
points every ball holds all of the domain, so the remaining radii contribute
``sup_k w(k h)`` times the plain ``L^p`` norm.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .grid import Ball, GridDomain, GridError, GridFunction, _ball_mask_index_space
from .weights import CappedPower, Weight

__all__ = [
    "MorreyParams",
    "NormResult",
    "CENTER_POLICIES",
    "lp_ball_norm",
    "lp_norm_omega",
    "morrey_norm",
    "vanishing_modulus",
    "capped_norm",
    "center_indices",
    "radius_count",
    "covering_radius_index",
    "grid_tail_sup",
    "use_oracle",
]

INF = math.inf
CENTER_POLICIES = ("mask", "closure")
_SNAP = 1e-9
_ORACLE = {"on": os.environ.get("MORREY_ORACLE", "") not in ("", "0")}


def use_oracle(flag: bool) -> None:
    """Route :func:`morrey_norm` through the brute-force implementation."""
    _ORACLE["on"] = bool(flag)


def _check_p(p) -> float:
    p = float(p)
    if not (p >= 1):
        raise ValueError(f"p must be in [1, inf], got {p}")
    return p


@dataclass(frozen=True)
class MorreyParams:
    p: float
    weight: Weight
    rho: float = INF

    def __post_init__(self):
        object.__setattr__(self, "p", _check_p(self.p))
        rho = float(self.rho)
        if not rho > 0:
            raise ValueError(f"rho must be > 0, got {self.rho}")
        object.__setattr__(self, "rho", rho)

    def with_rho(self, rho: float) -> "MorreyParams":
        return MorreyParams(self.p, self.weight, rho)


@dataclass(frozen=True)
class NormResult:
    value: float
    argmax_center: tuple[int, ...]
    argmax_radius: float
    radii_evaluated: int
    center_policy: str
    witness: str | None = field(default=None)

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "argmax_center": list(self.argmax_center),
            "argmax_radius": self.argmax_radius,
            "radii_evaluated": self.radii_evaluated,
            "center_policy": self.center_policy,
            "witness": self.witness,
        }


def _powered(values: np.ndarray, p: float) -> np.ndarray:
    a = np.abs(values)
    return a if (p == 1 or math.isinf(p)) else a ** p


def _finish(total: float, h: float, n: int, p: float) -> float:
    """``(h^n * total)^(1/p)``; for ``p = inf`` the total is already a max."""
    if math.isinf(p):
        return float(total)
    return float((h ** n * total) ** (1.0 / p))


def lp_norm_omega(f: GridFunction, p) -> float:
    """Discrete ``L^p`` norm over all masked points."""
    p = _check_p(p)
    if f.values.size == 0:
        return 0.0
    if math.isinf(p):
        return float(np.max(np.abs(f.values)))
    return _finish(math.fsum(_powered(f.values, p)), f.domain.spacing, f.domain.dim, p)


def lp_ball_norm(f: GridFunction, ball: Ball, p) -> float:
    """``L^p`` norm of ``f`` over the masked points strictly inside ``ball``."""
    p = _check_p(p)
    sel = _ball_mask_index_space(f.domain, ball)
    vals = f.values[sel]
    if vals.size == 0:
        return 0.0
    if math.isinf(p):
        return float(np.max(np.abs(vals)))
    return _finish(math.fsum(_powered(vals, p)), f.domain.spacing, f.domain.dim, p)


def center_indices(domain: GridDomain, policy: str = "mask") -> np.ndarray:
    """Box indices used as ball centers, row-major.

    ``mask`` uses the masked points; ``closure`` adds unmasked box points having
    a masked point among their ``3^n - 1`` lattice neighbours.
    """
    if policy == "mask":
        return domain.indices()
    if policy != "closure":
        raise ValueError(f"center policy must be one of {CENTER_POLICIES}, got {policy!r}")
    m = domain.mask
    padded = np.pad(m, 1)
    grown = np.zeros_like(m)
    for shift in np.ndindex(*([3] * m.ndim)):
        sl = tuple(slice(s, s + n) for s, n in zip(shift, m.shape))
        grown |= padded[sl]
    return np.argwhere(grown)


def radius_count(rho: float, h: float) -> float:
    """Number of ``k >= 1`` with ``k h < rho`` (``inf`` for unbounded ``rho``)."""
    if math.isinf(rho):
        return INF
    t = rho / h
    tr = round(t)
    if abs(t - tr) < _SNAP:
        return max(int(tr) - 1, 0)
    return max(math.ceil(t) - 1, 0)


def covering_radius_index(domain: GridDomain, centers: np.ndarray) -> int:
    """Smallest ``k`` such that every ball of radius ``k h`` around a center holds all masked points."""
    pts = np.concatenate([domain.indices(), centers]) if len(centers) else domain.indices()
    ext = pts.max(axis=0) - pts.min(axis=0)
    d2 = int((ext.astype(np.int64) ** 2).sum())
    return math.isqrt(d2) + 1


def grid_tail_sup(w: Weight, h: float, k0: int, kcount: float) -> tuple[float, int]:
    """``max w(k h)`` over ``k0 <= k <= kcount`` and the first ``k`` attaining it.

    Every weight is nonincreasing between breakpoints, so only the first grid
    radius of each piece can be the maximum.
    """
    if k0 > kcount:
        return 0.0, k0
    cand = {k0}
    for b in w.breakpoints():
        kb = math.ceil(b / h)
        cand.update({kb - 1, kb, kb + 1})
    best, best_k = -1.0, k0
    for k in sorted(cand):
        if k0 <= k <= kcount:
            v = w(k * h)
            if v > best:
                best, best_k = v, k
    return best, best_k


def _profile(f: GridFunction, p: float, centers: np.ndarray, kmax: int, backend=None):
    a = f.dense()
    a = _powered(a, p)
    smax, arg = _kernels.ball_profile(a, centers, kmax, math.isinf(p), backend)
    return smax, arg


def _assemble(f, params, centers, smax, arg, kfull, policy, kcount) -> NormResult:
    """Combine a ball-max profile with weights, truncation and the covering tail."""
    d = f.domain
    h, n, p, w = d.spacing, d.dim, params.p, params.weight
    if math.isinf(p):
        total = float(np.max(np.abs(f.values))) if f.values.size else 0.0
    else:
        total = math.fsum(_powered(f.values, p))
    kin = int(min(kcount, kfull - 1))
    best, best_k, best_c = 0.0, 1, 0
    if kin > 0:
        ks = np.arange(1, kin + 1)
        wk = w(ks * h)
        s = np.minimum(smax[:kin], total)
        if math.isinf(p):
            vals = wk * s
        else:
            vals = wk * (h ** n * s) ** (1.0 / p)
        i = int(np.argmax(vals))
        best, best_k, best_c = float(vals[i]), i + 1, int(arg[i])
    evaluated = kin
    if kcount >= kfull:
        wt, kt = grid_tail_sup(w, h, kfull, kcount)
        tail = wt * _finish(total, h, n, p) if total > 0 else 0.0
        if tail > best:
            best, best_k, best_c = tail, kt, 0
        evaluated += 1 if math.isinf(kcount) else int(kcount) - kfull + 1
    center = tuple(int(v) for v in centers[best_c]) if len(centers) else ()
    return NormResult(best, center, best_k * h, evaluated, policy)


def morrey_norm(f: GridFunction, params: MorreyParams, center_policy: str = "mask",
                backend: str | None = None) -> NormResult:
    """Discrete Morrey functional of ``f``; see the module docstring."""
    if _ORACLE["on"] and backend is None:
        from .oracle import oracle_norm

        return oracle_norm(f, params, center_policy)
    centers = center_indices(f.domain, center_policy)
    h = f.domain.spacing
    kcount = radius_count(params.rho, h)
    kfull = covering_radius_index(f.domain, centers)
    kmax = int(min(kcount, kfull - 1))
    smax, arg = _profile(f, params.p, centers, kmax, backend)
    return _assemble(f, params, centers, smax, arg, kfull, center_policy, kcount)


def vanishing_modulus(f: GridFunction, params: MorreyParams, rho_samples: Sequence[float],
                      center_policy: str = "mask", backend: str | None = None):
    """``[(rho, |f|_rho)]`` for ascending ``rho_samples``; one profile serves all."""
    rhos = [float(r) for r in rho_samples]
    if any(not r > 0 for r in rhos):
        raise ValueError("rho samples must be positive")
    if any(b < a for a, b in zip(rhos[:-1], rhos[1:])):
        raise ValueError("rho samples must be ascending")
    if rhos and rhos[-1] > params.rho:
        raise ValueError("rho samples must not exceed params.rho")
    if not rhos:
        return []
    if _ORACLE["on"] and backend is None:
        return [(r, morrey_norm(f, params.with_rho(r), center_policy).value) for r in rhos]
    centers = center_indices(f.domain, center_policy)
    h = f.domain.spacing
    kfull = covering_radius_index(f.domain, centers)
    kmax = int(min(radius_count(rhos[-1], h), kfull - 1))
    smax, arg = _profile(f, params.p, centers, kmax, backend)
    out = []
    for r in rhos:
        res = _assemble(f, params.with_rho(r), centers, smax, arg, kfull, center_policy,
                        radius_count(r, h))
        out.append((r, res.value))
    return out


def capped_norm(f: GridFunction, lam: float, p, center_policy: str = "mask") -> float:
    """Norm for the weight ``max(r^-lam, 1)`` without truncation."""
    return morrey_norm(f, MorreyParams(p, CappedPower(lam), INF), center_policy).value
