"""Deterministic raster (PGM P5) and vector (SVG subset) renderings of point clouds.

1-D sets are drawn as full-height tick marks on a strip; 2-D sets as pixels or
small circles.  Angular charts are drawn in chart coordinates.
"""
from __future__ import annotations

import math
import warnings
from pathlib import Path

import numpy as np

from .sets import CompactSetApprox


class RenderError(ValueError):
    pass


def _coords(S: CompactSetApprox):
    P = np.asarray(S.points, dtype=float)
    if S.space.dim not in (1, 2):
        raise RenderError(f"cannot render dimension {S.space.dim}")
    if S.space.kind == "CompactifiedLine":
        P = S.space.embed(P)
        P = np.mod(np.arctan2(P[:, 1], P[:, 0]), 2 * math.pi).reshape(-1, 1)
    return P


def default_viewport(S: CompactSetApprox):
    P = _coords(S)
    if S.space.angular:
        lo = [0.0] * S.space.dim
        hi = [2 * math.pi] * S.space.dim
    elif len(P):
        lo, hi = P.min(axis=0), P.max(axis=0)
        pad = np.maximum((hi - lo) * 0.02, 1e-9)
        lo, hi = lo - pad, hi + pad
    else:
        lo, hi = [0.0] * S.space.dim, [1.0] * S.space.dim
    vp = []
    for a, b in zip(lo, hi):
        vp += [float(a), float(b)]
    return tuple(vp)


def _pixels(S, width, height, viewport):
    P = _coords(S)
    vp = default_viewport(S) if viewport is None else tuple(float(v) for v in viewport)
    x0, x1 = vp[0], vp[1]
    # points on the far edge belong to the last pixel
    cols = np.floor((P[:, 0] - x0) / (x1 - x0) * width).astype(np.int64)
    cols[P[:, 0] == x1] = width - 1
    ok = (cols >= 0) & (cols < width)
    if S.space.dim == 2:
        y0, y1 = vp[2], vp[3]
        r = np.floor((P[:, 1] - y0) / (y1 - y0) * height).astype(np.int64)
        r[P[:, 1] == y1] = height - 1
        rows = height - 1 - r
        ok &= (rows >= 0) & (rows < height)
    else:
        rows = np.zeros(len(P), dtype=np.int64)
    if len(P) and not ok.any():
        warnings.warn("viewport does not overlap the set; rendering a blank image")
    return cols[ok], rows[ok], vp


def render_pgm(S: CompactSetApprox, path=None, width: int = 1024, height: int = None, viewport=None) -> bytes:
    """White marks on black, binary P5.  ``viewport`` is (xmin, xmax[, ymin, ymax])."""
    if height is None:
        height = 32 if S.space.dim == 1 else width
    cols, rows, _ = _pixels(S, width, height, viewport)
    img = np.zeros((height, width), dtype=np.uint8)
    if S.space.dim == 1:
        img[:, cols] = 255
    else:
        img[rows, cols] = 255
    data = f"P5\n{width} {height}\n255\n".encode("ascii") + img.tobytes()
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_bytes(data)
    return data


def read_pgm(data: bytes) -> np.ndarray:
    parts = data.split(b"\n", 3)
    if parts[0] != b"P5":
        raise RenderError("not a P5 image")
    w, h = (int(v) for v in parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w)


def render_svg(S: CompactSetApprox, path=None, width: int = 512, height: int = None, viewport=None,
               radius: float = 0.5) -> str:
    """SVG 1.1 using only rect, circle and line; points are emitted in sorted order."""
    P = _coords(S)
    if height is None:
        height = 32 if S.space.dim == 1 else width
    vp = default_viewport(S) if viewport is None else tuple(float(v) for v in viewport)
    x0, x1 = vp[0], vp[1]
    X = (P[:, 0] - x0) / (x1 - x0) * width
    if S.space.dim == 2:
        y0, y1 = vp[2], vp[3]
        Y = height - (P[:, 1] - y0) / (y1 - y0) * height
        ok = (X >= 0) & (X <= width) & (Y >= 0) & (Y <= height)
        X, Y = X[ok], Y[ok]
        order = np.lexsort((Y, X))
        marks = [f'<circle cx="{X[i]:.4f}" cy="{Y[i]:.4f}" r="{radius:g}" fill="white"/>' for i in order]
    else:
        ok = (X >= 0) & (X <= width)
        X = np.sort(X[ok])
        marks = [f'<line x1="{x:.4f}" y1="0" x2="{x:.4f}" y2="{height}" stroke="white" stroke-width="1"/>'
                 for x in X]
    if len(P) and not marks:
        warnings.warn("viewport does not overlap the set; rendering a blank image")
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">')
    body = "\n".join([head, f'<rect x="0" y="0" width="{width}" height="{height}" fill="black"/>', *marks, "</svg>"])
    text = body + "\n"
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding="utf-8")
    return text


def render_set(S: CompactSetApprox, fmt: str, path=None, **kw):
    if fmt == "pgm":
        return render_pgm(S, path, **kw)
    if fmt == "svg":
        return render_svg(S, path, **kw)
    raise RenderError(f"unknown render format {fmt!r}")
