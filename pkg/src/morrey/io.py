"""Reading and writing grid functions.

Binary layout (``MGF1``, all little endian)::

    b"MGF1" | u32 n | n*u64 shape | f64 h | n*f64 origin | u8 has_mask
    [ prod(shape) bytes of 0/1 mask, row-major ]  if has_mask == 1
    f64 value per masked point, row-major order of the masked indices

The CSV flavour lists masked points only, after a ``#`` metadata line that
carries shape, spacing and origin::

    # MGF1-CSV shape=4 spacing=0.25 origin=0.125
    index0,value
    0,1.0
"""
from __future__ import annotations

import csv
import io
import struct
from pathlib import Path

import numpy as np

from .grid import GridDomain, GridError, GridFunction

__all__ = ["ParseError", "ValidationError", "read_function", "write_function", "to_bytes", "from_bytes"]

MAGIC = b"MGF1"


class ParseError(GridError):
    """Malformed file contents."""


class ValidationError(ParseError):
    """Well-formed file whose payload violates a function invariant."""


def to_bytes(f: GridFunction) -> bytes:
    d = f.domain
    n = d.dim
    parts = [MAGIC, struct.pack("<I", n), struct.pack(f"<{n}Q", *d.shape)]
    parts.append(struct.pack("<d", d.spacing))
    parts.append(struct.pack(f"<{n}d", *d.origin))
    if d.full:
        parts.append(b"\x00")
    else:
        parts.append(b"\x01")
        parts.append(d.mask.astype(np.uint8).tobytes(order="C"))
    parts.append(f.values.astype("<f8").tobytes())
    return b"".join(parts)


def from_bytes(buf: bytes) -> GridFunction:
    view = memoryview(buf)
    pos = 0

    def take(nbytes):
        nonlocal pos
        if pos + nbytes > len(view):
            raise ParseError("truncated MGF1 data")
        chunk = view[pos : pos + nbytes]
        pos += nbytes
        return chunk

    if bytes(take(4)) != MAGIC:
        raise ParseError("bad magic, expected MGF1")
    (n,) = struct.unpack("<I", take(4))
    if n == 0 or n > 32:
        raise ParseError(f"unsupported dimension {n}")
    shape = struct.unpack(f"<{n}Q", take(8 * n))
    (h,) = struct.unpack("<d", take(8))
    origin = struct.unpack(f"<{n}d", take(8 * n))
    (flag,) = struct.unpack("<B", take(1))
    total = int(np.prod(shape, dtype=np.int64))
    if flag == 1:
        raw = np.frombuffer(take(total), dtype=np.uint8)
        if np.any(raw > 1):
            raise ParseError("mask bytes must be 0 or 1")
        mask = raw.astype(bool).reshape(shape)
    elif flag == 0:
        mask = None
    else:
        raise ParseError(f"bad mask flag {flag}")
    try:
        domain = GridDomain(shape, h, origin, mask)
    except GridError as exc:
        raise ParseError(str(exc)) from exc
    values = np.frombuffer(take(8 * domain.npoints), dtype="<f8")
    if pos != len(view):
        raise ParseError(f"{len(view) - pos} trailing bytes")
    if not np.all(np.isfinite(values)):
        raise ValidationError("payload contains non-finite values")
    return GridFunction(domain, values)


def _csv_text(f: GridFunction) -> str:
    d = f.domain
    out = io.StringIO()
    fmt = lambda seq: ",".join(repr(float(v)) for v in seq)  # noqa: E731
    out.write(
        f"# MGF1-CSV shape={','.join(map(str, d.shape))} "
        f"spacing={d.spacing!r} origin={fmt(d.origin)}\n"
    )
    w = csv.writer(out, lineterminator="\n")
    w.writerow([f"index{i}" for i in range(d.dim)] + ["value"])
    for idx, v in zip(d.indices(), f.values):
        w.writerow([int(i) for i in idx] + [repr(float(v))])
    return out.getvalue()


def _parse_csv(text: str, domain: GridDomain | None) -> GridFunction:
    lines = text.splitlines()
    meta = {}
    while lines and lines[0].startswith("#"):
        for tok in lines.pop(0)[1:].split():
            if "=" in tok:
                key, val = tok.split("=", 1)
                meta[key] = val
    if domain is None:
        try:
            shape = tuple(int(s) for s in meta["shape"].split(","))
            h = float(meta["spacing"])
            origin = tuple(float(s) for s in meta["origin"].split(","))
        except (KeyError, ValueError) as exc:
            raise ParseError("CSV lacks shape/spacing/origin metadata") from exc
    else:
        shape, h, origin = domain.shape, domain.spacing, domain.origin
    n = len(shape)
    rows = list(csv.reader(lines))
    if not rows:
        raise ParseError("empty CSV")
    header = [c.strip() for c in rows[0]]
    if header != [f"index{i}" for i in range(n)] + ["value"]:
        raise ParseError(f"bad CSV header {header}")
    mask = np.zeros(shape, dtype=bool)
    dense = np.zeros(shape)
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != n + 1:
            raise ParseError(f"line {lineno}: expected {n + 1} fields")
        try:
            idx = tuple(int(c) for c in row[:n])
            val = float(row[n])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        if any(i < 0 or i >= s for i, s in zip(idx, shape)):
            raise ParseError(f"line {lineno}: index {idx} outside grid {shape}")
        if not np.isfinite(val):
            raise ValidationError(f"line {lineno}: non-finite value")
        if mask[idx]:
            raise ParseError(f"line {lineno}: duplicate index {idx}")
        mask[idx] = True
        dense[idx] = val
    try:
        dom = GridDomain(shape, h, origin, mask)
    except GridError as exc:
        raise ParseError(str(exc)) from exc
    if domain is not None and not np.array_equal(domain.mask, mask) and not domain.full:
        raise ParseError("CSV points do not match the supplied domain mask")
    return GridFunction.from_dense(dom, dense)


def write_function(f: GridFunction, path, format: str = "binary") -> None:
    path = Path(path)
    if format == "binary":
        path.write_bytes(to_bytes(f))
    elif format == "csv":
        path.write_text(_csv_text(f), encoding="utf-8")
    else:
        raise ValueError(f"unknown format {format!r}")


def read_function(path, format: str | None = None, domain: GridDomain | None = None) -> GridFunction:
    """Read a function; ``format`` defaults from the suffix (``.csv`` or binary)."""
    path = Path(path)
    if format is None:
        format = "csv" if path.suffix.lower() == ".csv" else "binary"
    if format == "binary":
        return from_bytes(path.read_bytes())
    if format == "csv":
        return _parse_csv(path.read_text(encoding="utf-8"), domain)
    raise ValueError(f"unknown format {format!r}")
