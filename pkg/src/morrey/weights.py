"""Radial weights ``w: (0, inf) -> [0, inf)`` and the scalar constants built on them.

Every weight is piecewise of the form ``c * r**(-lam)`` between finitely many
breakpoints and right-continuous at each breakpoint.  That shared shape lets
suprema of ratios of weights times powers of ``r`` be evaluated in closed form,
piece by piece, instead of by sampling.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "Weight",
    "Power",
    "TruncatedPower",
    "CappedPower",
    "Table",
    "DoublingUndefined",
    "WeightError",
    "parse_weight",
    "dim_over_p",
    "ratio_sup",
]

INF = math.inf
_EXP_SNAP = 1e-12


class WeightError(ValueError):
    """Invalid weight parameters or weight spec string."""


class DoublingUndefined(ArithmeticError):
    """The doubling constant needs a weight without zeros."""


def dim_over_p(n: int, p: float) -> float:
    """``n/p`` with the convention ``n/inf = 0``."""
    return 0.0 if math.isinf(p) else n / p


def _snap_exp(e: float) -> float:
    return 0.0 if abs(e) < _EXP_SNAP else e


def _check_r(r):
    arr = np.asarray(r, dtype=float)
    if np.any(~(arr > 0)):
        raise WeightError("weights are evaluated at r > 0 only")
    return arr


class Weight:
    """Base class.  Subclasses describe themselves through :meth:`local_form`."""

    spec: str

    # -- piecewise description -------------------------------------------------
    def breakpoints(self) -> tuple[float, ...]:
        """Sorted points in ``(0, inf)`` where the local form may change."""
        return ()

    def local_form(self, r: float) -> tuple[float, float]:
        """``(c, lam)`` with ``w(s) = c * s**(-lam)`` on the piece containing ``r``."""
        raise NotImplementedError

    # -- evaluation --------------------------------------------------------------
    def __call__(self, r):
        arr = _check_r(r)
        out = self._eval(arr)
        return float(out) if np.ndim(r) == 0 else out

    eval = __call__

    def _eval(self, r: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def eval_left(self, r: float) -> float:
        """Left limit ``lim_{s -> r-} w(s)``."""
        c, lam = self._form_left(r)
        return c * r ** (-lam)

    def _form_left(self, r: float) -> tuple[float, float]:
        bps = [b for b in self.breakpoints() if b < r]
        lo = bps[-1] if bps else 0.0
        return self.local_form(_interior(lo, r))

    @property
    def strictly_positive(self) -> bool:
        return self.infimum_on_pieces() > 0

    def infimum_on_pieces(self) -> float:
        return min(c for c, _ in self._pieces_forms())

    def _pieces_forms(self):
        pts = (0.0,) + self.breakpoints() + (INF,)
        return [self.local_form(_interior(a, b)) for a, b in zip(pts[:-1], pts[1:])]

    # -- scalar constants ----------------------------------------------------------
    def infimum(self) -> float:
        """``inf_{r>0} w(r)``."""
        return ratio_inf(self, 0.0, INF)

    def supremum(self) -> float:
        """``sup_{r>0} w(r)``, possibly ``inf``."""
        return ratio_sup(self, None, 0.0, 0.0, INF)

    def tail_sup(self, a: float) -> float:
        """``sup_{r >= a} w(r)``."""
        if not a > 0:
            raise WeightError("tail_sup needs a > 0")
        return ratio_sup(self, None, 0.0, a, INF, include_left=True)

    def sup_between(self, a: float, b: float) -> float:
        """``sup`` of ``w`` over ``[a, b)`` (0 when empty)."""
        if not a < b:
            return 0.0
        return ratio_sup(self, None, 0.0, a, b, include_left=True)

    def doubling_constant(self) -> float:
        """``sup_r w(r) / w(2r)``."""
        if not self.strictly_positive:
            raise DoublingUndefined(f"{self.spec} vanishes somewhere")
        pts = sorted({b for b in self.breakpoints()} | {b / 2 for b in self.breakpoints()})
        edges = [0.0] + pts + [INF]
        best = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            m = _interior(a, b)
            c1, l1 = self.local_form(m)
            c2, l2 = self.local_form(2 * m)
            # w(r)/w(2r) = (c1/c2) * 2**l2 * r**(l2 - l1) on this piece
            e = _snap_exp(l2 - l1)
            k = c1 / c2 * 2.0 ** l2
            best = max(best, _monomial_sup(k, e, a, b))
        return best

    def small_r_form(self) -> tuple[float, float]:
        first = self.breakpoints()[0] if self.breakpoints() else INF
        return self.local_form(_interior(0.0, first))

    def small_r_limsup(self, p: float, n: int) -> float:
        """``limsup_{r->0} w(r) r**(n/p)``."""
        c, lam = self.small_r_form()
        e = _snap_exp(dim_over_p(n, p) - lam)
        if c == 0 or e > 0:
            return 0.0
        return c if e == 0 else INF

    def small_r_sup_vanishes(self, p: float, n: int) -> bool:
        """Whether ``sup_{0<r<=rho} w(r) r**(n/p)`` tends to 0 with ``rho``."""
        return self.small_r_limsup(p, n) == 0.0

    def is_W_p_infinity(self, p: float, n: int) -> bool:
        tail_ok = math.isfinite(self.tail_sup(1.0 + max(self.breakpoints(), default=0.0)))
        return tail_ok and math.isfinite(self.small_r_limsup(p, n))

    def __repr__(self):
        return f"Weight({self.spec})"


def _interior(a: float, b: float) -> float:
    """A point strictly inside ``(a, b)``; ``b`` may be ``inf``."""
    if math.isinf(b):
        return a + 1.0 if a > 0 else 1.0
    if a == 0:
        return b / 2
    return math.sqrt(a * b)


def _monomial_sup(k: float, e: float, a: float, b: float) -> float:
    """``sup`` of ``k * r**e`` over the open interval ``(a, b)``."""
    if k == 0:
        return 0.0
    if e == 0:
        return k
    if e > 0:
        return INF if math.isinf(b) else k * b ** e
    return INF if a == 0 else k * a ** e


def _monomial_inf(k: float, e: float, a: float, b: float) -> float:
    if k == 0:
        return 0.0
    if e == 0:
        return k
    if e > 0:
        return 0.0 if a == 0 else k * a ** e
    return 0.0 if math.isinf(b) else k * b ** e


def _pieces(ws, a: float, b: float):
    pts = sorted({t for w in ws if w is not None for t in w.breakpoints() if a < t < b})
    edges = [a] + pts + [b]
    return list(zip(edges[:-1], edges[1:]))


def ratio_sup(num: Weight, den: Weight | None, e: float, a: float, b: float,
              include_left: bool = False) -> float:
    """``sup`` over ``r`` in ``(a, b)`` of ``num(r) * r**e / den(r)``.

    ``den=None`` stands for the constant 1.  With ``include_left`` the point
    ``a`` itself is included; because weights are right-continuous this does not
    change the value, so the flag only documents intent.  Pieces where ``den``
    vanishes while ``num`` does not yield ``inf``.
    """
    del include_left
    if not a < b:
        return 0.0
    best = 0.0
    for s, t in _pieces((num, den), a, b):
        m = _interior(s, t)
        c2, l2 = num.local_form(m)
        c1, l1 = (1.0, 0.0) if den is None else den.local_form(m)
        if c2 == 0:
            continue
        if c1 == 0:
            return INF
        best = max(best, _monomial_sup(c2 / c1, _snap_exp(e - l2 + l1), s, t))
        if math.isinf(best):
            return INF
    return best


def ratio_inf(w: Weight, a: float, b: float) -> float:
    best = INF
    for s, t in _pieces((w,), a, b):
        c, lam = w.local_form(_interior(s, t))
        best = min(best, _monomial_inf(c, _snap_exp(-lam), s, t))
    return best


def _check_lambda(lam) -> float:
    lam = float(lam)
    if not (math.isfinite(lam) and lam >= 0):
        raise WeightError(f"lambda must be finite and >= 0, got {lam}")
    return lam


@dataclass(frozen=True, repr=False)
class Power(Weight):
    """``r**(-lam)``."""

    lam: float

    def __post_init__(self):
        object.__setattr__(self, "lam", _check_lambda(self.lam))

    @property
    def spec(self):
        return f"power:{self.lam!r}"

    def local_form(self, r):
        return 1.0, self.lam

    def _eval(self, r):
        return r ** (-self.lam)

    def doubling_constant(self):
        return 2.0 ** self.lam


@dataclass(frozen=True, repr=False)
class TruncatedPower(Weight):
    """``r**(-lam)`` below ``rho_bar`` and 0 from ``rho_bar`` on."""

    lam: float
    rho_bar: float

    def __post_init__(self):
        object.__setattr__(self, "lam", _check_lambda(self.lam))
        rb = float(self.rho_bar)
        if not (math.isfinite(rb) and rb > 0):
            raise WeightError(f"truncation radius must be finite and > 0, got {rb}")
        object.__setattr__(self, "rho_bar", rb)

    @property
    def spec(self):
        return f"trunc:{self.lam!r}:{self.rho_bar!r}"

    def breakpoints(self):
        return (self.rho_bar,)

    def local_form(self, r):
        return (1.0, self.lam) if r < self.rho_bar else (0.0, 0.0)

    def _eval(self, r):
        return np.where(r < self.rho_bar, r ** (-self.lam), 0.0)

    def doubling_constant(self):
        raise DoublingUndefined("a truncated weight vanishes beyond its radius")


@dataclass(frozen=True, repr=False)
class CappedPower(Weight):
    """``r**(-lam)`` on ``(0, 1]`` and 1 beyond."""

    lam: float

    def __post_init__(self):
        object.__setattr__(self, "lam", _check_lambda(self.lam))

    @property
    def spec(self):
        return f"capped:{self.lam!r}"

    def breakpoints(self):
        return (1.0,)

    def local_form(self, r):
        return (1.0, self.lam) if r < 1 else (1.0, 0.0)

    def _eval(self, r):
        return np.where(r <= 1, r ** (-self.lam), 1.0)

    def doubling_constant(self):
        return 2.0 ** self.lam


@dataclass(frozen=True, repr=False)
class Table(Weight):
    """Piecewise constant: ``values[i]`` on ``[starts[i], starts[i+1])``.

    ``values[0]`` also covers ``(0, starts[0])`` and the last value extends to
    infinity.  ``source`` is only used to rebuild the spec string.
    """

    starts: tuple[float, ...]
    values: tuple[float, ...]
    source: str = ""

    def __post_init__(self):
        s = tuple(float(x) for x in self.starts)
        v = tuple(float(x) for x in self.values)
        if not s or len(s) != len(v):
            raise WeightError("table needs matching, nonempty breakpoints and values")
        if any(not math.isfinite(x) or x < 0 for x in s + v):
            raise WeightError("table entries must be finite and >= 0")
        if any(b <= a for a, b in zip(s[:-1], s[1:])):
            raise WeightError("table breakpoints must be strictly increasing")
        if max(v) <= 0:
            raise WeightError("table weight must be positive somewhere")
        object.__setattr__(self, "starts", s)
        object.__setattr__(self, "values", v)

    @property
    def spec(self):
        if self.source:
            return f"table:{self.source}"
        return "table:" + ";".join(f"{a!r},{b!r}" for a, b in zip(self.starts, self.values))

    def breakpoints(self):
        return self.starts[1:]

    def local_form(self, r):
        i = int(np.searchsorted(self.starts, r, side="right")) - 1
        return self.values[max(i, 0)], 0.0

    def _eval(self, r):
        i = np.searchsorted(self.starts, r, side="right") - 1
        return np.asarray(self.values)[np.maximum(i, 0)]

    @classmethod
    def from_csv(cls, path) -> "Table":
        path = Path(path)
        rows = []
        with path.open(newline="", encoding="utf-8") as fh:
            for row in csv.reader(fh):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                try:
                    rows.append((float(row[0]), float(row[1])))
                except (ValueError, IndexError):
                    if rows:
                        raise WeightError(f"bad table row {row!r}") from None
                    continue  # header line
        if not rows:
            raise WeightError(f"no rows in table {path}")
        return cls(tuple(r for r, _ in rows), tuple(v for _, v in rows), str(path))


def parse_weight(spec: str) -> Weight:
    """Build a weight from ``power:L``, ``trunc:L:RHO``, ``capped:L`` or ``table:path.csv``."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "power":
            return Power(float(rest))
        if kind == "capped":
            return CappedPower(float(rest))
        if kind == "trunc":
            lam, rho = rest.split(":")
            return TruncatedPower(float(lam), float(rho))
    except ValueError as exc:
        raise WeightError(f"bad weight spec {spec!r}: {exc}") from exc
    if kind == "table":
        if not rest:
            raise WeightError("table spec needs a CSV path")
        return Table.from_csv(rest)
    raise WeightError(f"unknown weight kind in {spec!r}")
