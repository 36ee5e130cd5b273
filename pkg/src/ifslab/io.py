"""CSV / JSON serialisation: point clouds, orbit tables, systems and reports.

Numbers are written with 17 significant digits so doubles round-trip exactly.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from . import regions as rg
from .hutchinson import IfsSystem
from .maps import map_from_descriptor
from .sets import CompactSetApprox
from .spaces import Space, space_from_name

FLAG_FINITE, FLAG_INFINITE = 0, 1


def fmt(x) -> str:
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _open_w(path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", newline="", encoding="utf-8")


def write_point_cloud(path, S: CompactSetApprox) -> Path:
    """CSV with header ``x[,y],flag`` and a ``# epsilon=`` comment line.

    flag is 1 for the point at infinity of the compactified line, else 0.
    """
    cols = ["x", "y"][: S.space.dim]
    with _open_w(path) as fh:
        fh.write(f"# epsilon={fmt(S.resolution)}\n")
        fh.write(f"# space={S.space.kind}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols + ["flag"])
        for p in S.points:
            flag = FLAG_INFINITE if not np.all(np.isfinite(p)) else FLAG_FINITE
            w.writerow([fmt(v) for v in p] + [flag])
    return Path(path)


def read_point_cloud(path, space: Space = None) -> CompactSetApprox:
    eps = None
    kind = None
    rows = []
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    body = []
    for line in lines:
        if line.startswith("#"):
            key, _, val = line[1:].strip().partition("=")
            if key == "epsilon":
                eps = float(val)
            elif key == "space":
                kind = val
        elif line.strip():
            body.append(line)
    reader = csv.reader(body)
    header = next(reader)
    if header[-1] != "flag" or header[0] != "x":
        raise ValueError(f"bad point-cloud header {header}")
    dim = len(header) - 1
    for r in reader:
        rows.append([float(v) for v in r[:dim]])
    if eps is None:
        raise ValueError("missing '# epsilon=' line")
    if space is None:
        space = space_from_name(kind) if kind else space_from_name("line" if dim == 1 else "plane")
    return CompactSetApprox(space, np.array(rows, dtype=float).reshape(-1, dim), eps, allow_empty=True)


def write_orbit_csv(path, distances, point_counts) -> Path:
    """One row per step: step, point_count, distance_to_target."""
    with _open_w(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["step", "point_count", "distance_to_target"])
        for i, (c, d) in enumerate(zip(point_counts, distances)):
            w.writerow([i, int(c), fmt(d)])
    return Path(path)


def write_orbit_record(path, record) -> Path:
    counts = [len(s) for s in record.steps]
    dists = record.distances_to_target or [float("nan")] * len(counts)
    return write_orbit_csv(path, dists, counts)


def read_orbit_csv(path):
    with open(path, encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    return ([int(r["point_count"]) for r in rows], [float(r["distance_to_target"]) for r in rows])


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else fmt(x)
    return obj


def write_json(path, obj) -> Path:
    with _open_w(path) as fh:
        json.dump(_jsonable(obj), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return Path(path)


def system_to_dict(F: IfsSystem) -> dict:
    out = {"space": F.space.kind, "maps": []}
    for m in F.maps:
        if m.descriptor is None:
            raise ValueError(f"map {m.label} has no descriptor")
        out["maps"].append(m.descriptor)
    if F.target is not None:
        out["target"] = {"points": F.target.points.tolist(), "epsilon": F.target.resolution}
    return _jsonable(out)


def system_from_dict(d: dict, eps: float = 1e-3) -> IfsSystem:
    """Inverse of ``system_to_dict``; a target may also be ``{"region": {...}}``."""
    space = space_from_name(d["space"])
    maps = [map_from_descriptor(m) for m in d["maps"]]
    target = None
    t = d.get("target")
    if t is not None:
        if "region" in t:
            region = rg.region_from_dict(t["region"])
            target = CompactSetApprox(space, region.net(t.get("epsilon", eps)), t.get("epsilon", eps))
        else:
            pts = np.array([[float(v) for v in np.atleast_1d(p)] for p in t["points"]], dtype=float)
            target = CompactSetApprox(space, pts, float(t.get("epsilon", eps)))
    return IfsSystem(space, maps, target)
