"""Command-line runner: ``ifslab <subcommand>``.

Exit codes: 0 expected verdict, 2 contrary verdict, 3 inconclusive,
64 bad usage / unparsable config, 70 runtime failure.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import os
import sys
from pathlib import Path

import jsonschema
import numpy as np

from . import analysis as an
from . import gallery, render
from . import io as fio
from . import maps as mp
from . import regions as rg
from .hutchinson import iterate_orbit
from .sets import CompactSetApprox
from .spaces import UNIT_DISC

EXIT_OK, EXIT_CONTRARY, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_RUNTIME = 0, 2, 3, 64, 70


class UsageError(Exception):
    pass


# per-preset numerical defaults (epsilon, tol, n_max, witness length)
PRESET_DEFAULTS = {
    "cantor": (1e-4, 0.02, 30, 40),
    "cantor-simplified": (1e-4, 0.02, 30, 40),
    "sierpinski-carpet": (1e-2, 0.05, 20, 40),
    "sierpinski-triangle": (1e-2, 0.05, 20, 40),
    "kwietniak": (1e-2, 1e-2, 1000, 100),
    "line": (1e-3, 1e-2, 200, 60),
    "circle": (1e-3, 1e-2, 200, 60),
}


def _defaults(preset_name):
    key = preset_name.split(":")[0]
    return PRESET_DEFAULTS.get(key, (1e-3, 1e-2, 200, 60))


def _out_dir(args) -> Path:
    d = args.out_dir or os.environ.get("IFSLAB_OUT_DIR") or "ifslab-out"
    return Path(d)


def _load_preset(name, eps):
    try:
        return gallery.preset(name, eps)
    except (KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"unknown or malformed preset {name!r}: {exc}") from exc


def _parse_point(text, dim):
    try:
        vals = [float(v) for v in str(text).split(",")]
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}") from exc
    if len(vals) != dim:
        raise UsageError(f"point {text!r} should have {dim} coordinate(s)")
    return vals


def _random_seeds(region, k, rng_seed, dim):
    rng = np.random.default_rng(rng_seed)
    if isinstance(region, rg.Interval):
        return rng.uniform(region.lo, region.hi, size=(k, 1))
    if isinstance(region, rg.Arc):
        return rng.uniform(0.0, 2 * np.pi, size=(k, 1))
    if isinstance(region, rg.Box):
        return np.column_stack([rng.uniform(region.xlo, region.xhi, k), rng.uniform(region.ylo, region.yhi, k)])
    P = np.empty((0, dim))
    while len(P) < k:
        lo = np.array(region.vertices).min(axis=0)
        hi = np.array(region.vertices).max(axis=0)
        Q = rng.uniform(lo, hi, size=(4 * k, dim))
        P = np.vstack([P, Q[region.contains(Q)]])
    return P[:k]


def _resolve(args, preset_name):
    eps0, tol0, n0, w0 = _defaults(preset_name)
    eps = args.epsilon if args.epsilon is not None else eps0
    tol = args.tol if args.tol is not None else tol0
    n_max = args.n_max if args.n_max is not None else n0
    if not (eps > 0 and tol > 0 and n_max >= 1):
        raise UsageError("epsilon and tol must be positive and n-max >= 1")
    return eps, tol, n_max, w0


def _seeds(args, P):
    dim = P.F.space.dim
    if args.seed:
        return np.array([_parse_point(s, dim) for s in args.seed])
    return _random_seeds(P.seed_region, args.random, args.rng_seed, dim)


def _emit(args, payload, rows=None, header=None):
    if args.format == "csv" and rows is not None:
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(json.dumps(fio._jsonable(payload), indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# verify-alr
# ---------------------------------------------------------------------------

def _named_map(name):
    """Map, sample cloud and (tol, n_max) defaults for the named ALR maps."""
    if name == "interval-square":
        return mp.make_interval_alr(0.0, 1.0, "square"), np.linspace(-0.5, 1.5, 201), (1e-10, 10_000)
    if name == "interval-sqrt":
        return mp.make_interval_alr(0.0, 1.0, "sqrt"), np.linspace(-0.5, 1.5, 201), (1e-10, 10_000)
    if name == "arc":
        return mp.make_arc_alr(0.0, np.pi), np.linspace(0.0, 2 * np.pi, 200, endpoint=False), (1e-10, 10_000)
    if name == "disc":
        return mp.make_disc_alr(), UNIT_DISC.sample(400, np.random.default_rng(0)), (1e-10, 10_000)
    if name == "kwietniak":
        return mp.make_kwietniak_map(), np.linspace(-50.0, 50.0, 101), (1e-8, 100_000)
    raise UsageError(f"unknown map {name!r}; choose interval-square, interval-sqrt, arc, disc or kwietniak")


def cmd_verify_alr(args):
    if args.descriptor:
        try:
            phi = mp.map_from_descriptor(json.loads(Path(args.descriptor).read_text()))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot load descriptor: {exc}") from exc
        samples, (tol, n_max) = phi.space.sample(400, np.random.default_rng(0)), (1e-10, 10_000)
        label = args.descriptor
    elif args.preset:
        P = _load_preset(args.preset, args.epsilon or 1e-3)
        phi, label = P.phi, args.preset
        samples = _random_seeds(P.seed_region, 200, 0, phi.space.dim)
        tol, n_max = 1e-10, 10_000
    else:
        phi, samples, (tol, n_max) = _named_map(args.map)
        label = args.map
    tol = args.tol if args.tol is not None else tol
    n_max = args.n_max if args.n_max is not None else n_max
    S = CompactSetApprox(phi.space, samples, 1e-9)
    rep = an.alr_verify(phi, S, n_max=n_max, tol=tol, witness_length=args.witness_length)
    payload = {"subject": label, "passed": rep.passed, "attracting": rep.attracting,
               "has_repellor": rep.has_repellor, "iterations": rep.iterations, "unconverged": rep.unconverged}
    if rep.witness is not None:
        w = rep.witness
        d = w.distances_to_repellor()
        payload["witness"] = {"points": w.points.tolist(), "repellor": w.repellor.tolist(),
                              "max_residual": float(w.residuals.max()) if w.residuals.size else 0.0,
                              "terminal_distance": float(d[-1])}
    out = _out_dir(args)
    fio.write_json(out / "verify_alr.json", payload)
    rows = [[i, *map(fio.fmt, p)] for i, p in enumerate(rep.witness.points)] if rep.witness else []
    _emit(args, payload, rows, ["n"] + ["x", "y"][: phi.space.dim])
    expected = args.expect == "pass"
    return EXIT_OK if rep.passed == expected else EXIT_CONTRARY


# ---------------------------------------------------------------------------
# orbit / pointwise / refute-strict
# ---------------------------------------------------------------------------

def cmd_orbit(args):
    P = _load_preset(args.preset, 1e-3)
    eps, _, n_max, _ = _resolve(args, args.preset)
    n = args.n if args.n is not None else n_max
    seeds = _seeds(args, P)
    S0 = CompactSetApprox(P.F.space, seeds, eps)
    rec = iterate_orbit(P.F, S0, n, eps, threads=args.threads)
    out = _out_dir(args)
    path = Path(args.output) if args.output else out / "orbit.csv"
    fio.write_orbit_record(path, rec)
    if args.clouds:
        for i, S in enumerate(rec.steps):
            fio.write_point_cloud(out / "clouds" / f"step_{i:03d}.csv", S)
    rows = [[i, c, fio.fmt(d)] for i, (c, d) in enumerate(zip(rec.point_counts, rec.distances_to_target))]
    payload = {"preset": args.preset, "epsilon": eps, "truncated": rec.truncated, "orbit_csv": str(path),
               "point_counts": rec.point_counts, "distances_to_target": rec.distances_to_target}
    _emit(args, payload, rows, ["step", "point_count", "distance_to_target"])
    return EXIT_OK


def _pointwise_exit(verdicts, expect):
    vs = [v.verdict for v in verdicts]
    if "inconclusive" in vs:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if all(v == expect for v in vs) else EXIT_CONTRARY


def cmd_pointwise(args):
    P = _load_preset(args.preset, 1e-3)
    eps, tol, n_max, _ = _resolve(args, args.preset)
    seeds = _seeds(args, P)
    out = _out_dir(args)
    verdicts = []
    rows = []
    for i, x in enumerate(seeds):
        v = an.pointwise_test(P.F, x[None, :], P.A, n_max, tol, eps, threads=args.threads)
        verdicts.append(v)
        fio.write_orbit_csv(out / "seeds" / f"seed_{i:03d}.csv", v.distances, v.point_counts)
        rows.append([i, *map(fio.fmt, x), v.verdict, "" if v.converged_at is None else v.converged_at])
    payload = {"preset": args.preset, "epsilon": eps, "tol": tol, "n_max": n_max,
               "seeds": seeds.tolist(), "verdicts": [v.verdict for v in verdicts],
               "converged_at": [v.converged_at for v in verdicts]}
    fio.write_json(out / "pointwise.json", payload)
    _emit(args, payload, rows, ["seed", *["x", "y"][: P.F.space.dim], "verdict", "converged_at"])
    return _pointwise_exit(verdicts, args.expect)


def _witness(P, x0, length):
    if P.repellor is None:
        raise UsageError(f"preset {P.name!r} has no local repellor to witness")
    return an.witnessing_sequence(P.phi, x0, P.repellor, length)


def _write_report(out, report, seeds_dir="seeds"):
    refs = []
    for i, v in enumerate(report.runs):
        path = out / seeds_dir / f"seed_{i:03d}.csv"
        fio.write_orbit_csv(path, v.distances, v.point_counts)
        refs.append(str(Path(seeds_dir) / path.name))
    d = report.to_dict()
    d["files"] = {"seed_orbits": refs}
    if report.strict is not None:
        path = out / "strict_orbit.csv"
        with fio._open_w(path) as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["step", "distance_to_target", "margin", "persistence"])
            for n, (a, b, c) in enumerate(zip(report.strict.distances, report.strict.margins,
                                               report.strict.persistence), start=1):
                w.writerow([n, fio.fmt(a), fio.fmt(b), fio.fmt(c)])
        d["files"]["strict_orbit"] = "strict_orbit.csv"
    fio.write_json(out / "report.json", d)
    return d


def cmd_refute_strict(args):
    P = _load_preset(args.preset, 1e-3)
    eps, tol, n_max, wlen = _resolve(args, args.preset)
    wlen = args.witness_length or wlen
    x0 = np.array(_parse_point(args.x0, P.F.space.dim)) if args.x0 else P.x0
    seeds = _seeds(args, P)
    w = _witness(P, x0, wlen)
    report = an.classify(args.preset, P.F, P.A, [s[None, :] for s in seeds], w, n_max, tol, eps,
                         threads=args.threads)
    out = _out_dir(args)
    d = _write_report(out, report)
    rows = [[k, json.dumps(v)] for k, v in sorted(fio._jsonable(d["verdicts"]).items())]
    _emit(args, d, rows, ["verdict", "value"])
    if report.pointwise == "inconclusive":
        return EXIT_INCONCLUSIVE
    ok = report.strict_refuted and report.pointwise == "converged"
    return EXIT_OK if ok else EXIT_CONTRARY


# ---------------------------------------------------------------------------
# gallery
# ---------------------------------------------------------------------------

def cmd_gallery_list(args):
    rows = [[n] for n in gallery.PRESET_NAMES]
    _emit(args, {"presets": list(gallery.PRESET_NAMES)}, rows, ["preset"])
    return EXIT_OK


def cmd_gallery_render(args):
    P = _load_preset(args.preset, args.epsilon or 1e-3)
    if P.gap_system is not None:
        S = gallery.cell_centers(P.gap_system, args.depth)
    else:
        S = P.A
    out = _out_dir(args)
    suffix = Path(args.output).suffix.lstrip(".") if args.output else ""
    kind = args.image or (suffix if suffix in ("pgm", "svg") else "pgm")
    path = Path(args.output) if args.output else out / f"{args.preset.split(':')[0]}.{kind}"
    viewport = tuple(args.viewport) if args.viewport else None
    kw = {"width": args.width, "viewport": viewport}
    render.render_set(S, kind, path, **kw)
    payload = {"preset": args.preset, "points": len(S), "file": str(path), "format": kind}
    _emit(args, payload, [[str(path), len(S)]], ["file", "points"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# experiment run
# ---------------------------------------------------------------------------

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["system"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "system": {
            "oneOf": [
                {"type": "object", "required": ["preset"], "additionalProperties": False,
                 "properties": {"preset": {"type": "string"}}},
                {"type": "object", "required": ["space", "maps", "target"], "additionalProperties": False,
                 "properties": {"space": {"type": "string"}, "maps": {"type": "array", "minItems": 1},
                                "target": {"type": "object"}, "phi_index": {"type": "integer"}}},
            ]
        },
        "seeds": {
            "oneOf": [
                {"type": "array", "items": {"type": ["number", "array"]}, "minItems": 1},
                {"type": "object", "required": ["random"], "additionalProperties": False,
                 "properties": {"random": {"type": "integer", "minimum": 1}, "rng_seed": {"type": "integer"},
                                "region": {"type": "object"}}},
            ]
        },
        "n_max": {"type": "integer", "minimum": 1},
        "epsilon": {"type": "number", "exclusiveMinimum": 0},
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "strict": {
            "oneOf": [
                {"type": "boolean"},
                {"type": "object", "additionalProperties": False,
                 "properties": {"x0": {"type": ["number", "array"]}, "repellor": {"type": ["number", "array", "string"]},
                                "witness_length": {"type": "integer", "minimum": 2}}},
            ]
        },
        "outputs": {
            "type": "object", "additionalProperties": False,
            "properties": {"report": {"type": "string"}, "orbit_csv": {"type": "string"},
                           "final_cloud": {"type": "string"}, "render": {"type": "string"},
                           "render_width": {"type": "integer", "minimum": 1}},
        },
        "expected": {
            "type": "object", "additionalProperties": False,
            "properties": {"pointwise": {"enum": ["converged", "diverged", "inconclusive"]},
                           "strict_refuted": {"type": "boolean"}},
        },
    },
}


def load_config(path):
    try:
        cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON config: {exc}") from exc
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise UsageError(f"invalid config: {exc.message}") from exc
    return cfg


def _system_from_config(cfg, eps):
    sysd = cfg["system"]
    if "preset" in sysd:
        P = _load_preset(sysd["preset"], eps)
        return P, sysd["preset"]
    try:
        F = fio.system_from_dict(sysd, eps)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"invalid inline system: {exc}") from exc
    phi = F.maps[sysd.get("phi_index", len(F.maps) - 1)]
    region = rg.Interval(-2.0, 2.0) if F.space.dim == 1 else rg.Box(-2.0, 2.0, -2.0, 2.0)
    if F.space.angular:
        region = rg.Arc(0.0, 0.0)
    P = gallery.Preset("inline", F, F.target, phi, F.target.points[0], region)
    return P, "inline"


def run_experiment(path, out_dir=None, threads=1, overrides=None) -> int:
    cfg = load_config(path)
    overrides = overrides or {}
    preset_name = cfg["system"].get("preset", "inline")
    eps0, tol0, n0, w0 = _defaults(preset_name)
    eps = overrides.get("epsilon") or cfg.get("epsilon", eps0)
    tol = overrides.get("tol") or cfg.get("tol", tol0)
    n_max = overrides.get("n_max") or cfg.get("n_max", n0)
    P, label = _system_from_config(cfg, eps)
    dim = P.F.space.dim
    seeds_cfg = cfg.get("seeds", {"random": 10, "rng_seed": 0})
    if isinstance(seeds_cfg, list):
        seeds = np.array([np.atleast_1d(np.asarray(s, dtype=float)) for s in seeds_cfg])
        if seeds.shape[1] != dim:
            raise UsageError(f"seeds must have {dim} coordinate(s)")
    else:
        region = rg.region_from_dict(seeds_cfg["region"]) if "region" in seeds_cfg else P.seed_region
        seeds = _random_seeds(region, seeds_cfg["random"], seeds_cfg.get("rng_seed", 0), dim)
    witness = None
    strict = cfg.get("strict", False)
    if strict:
        opts = strict if isinstance(strict, dict) else {}
        x0 = np.atleast_1d(np.asarray(opts.get("x0", P.x0), dtype=float))
        rep = opts.get("repellor", P.repellor)
        if rep is None:
            raise UsageError("strict check needs a repellor")
        rep = np.atleast_1d(np.asarray(rep, dtype=float))
        witness = an.witnessing_sequence(P.phi, x0, rep, opts.get("witness_length", w0))
    out = Path(out_dir) if out_dir else Path(os.environ.get("IFSLAB_OUT_DIR") or "ifslab-out")
    outputs = cfg.get("outputs", {})
    report = an.classify(cfg.get("name", label), P.F, P.A, [s[None, :] for s in seeds], witness,
                         n_max, tol, eps, threads=threads)
    d = _write_report(out, report)
    d["config"] = {"epsilon": eps, "tol": tol, "n_max": n_max}
    if "orbit_csv" in outputs or "final_cloud" in outputs or "render" in outputs:
        S0 = CompactSetApprox(P.F.space, seeds, eps)
        rec = iterate_orbit(P.F, S0, n_max, eps, threads=threads)
        if "orbit_csv" in outputs:
            fio.write_orbit_record(out / outputs["orbit_csv"], rec)
            d["files"]["orbit"] = outputs["orbit_csv"]
        if "final_cloud" in outputs:
            fio.write_point_cloud(out / outputs["final_cloud"], rec.final)
            d["files"]["final_cloud"] = outputs["final_cloud"]
        if "render" in outputs:
            target = out / outputs["render"]
            kind = target.suffix.lstrip(".")
            render.render_set(rec.final, kind, target, width=outputs.get("render_width", 512))
            d["files"]["render"] = outputs["render"]
    expected = cfg.get("expected", {})
    status = EXIT_OK
    mismatches = []
    if "pointwise" in expected and report.pointwise != expected["pointwise"]:
        mismatches.append("pointwise")
    if "strict_refuted" in expected and report.strict_refuted != expected["strict_refuted"]:
        mismatches.append("strict_refuted")
    if mismatches:
        status = EXIT_INCONCLUSIVE if report.pointwise == "inconclusive" else EXIT_CONTRARY
    d["expected"] = expected
    d["mismatches"] = mismatches
    d["exit_code"] = status
    fio.write_json(out / outputs.get("report", "report.json"), d)
    return status


def cmd_experiment_run(args):
    overrides = {"epsilon": args.epsilon, "tol": args.tol, "n_max": args.n_max}
    code = run_experiment(args.config, args.out_dir, args.threads, overrides)
    out = _out_dir(args)
    sys.stdout.write(json.dumps({"config": args.config, "out_dir": str(out), "exit_code": code}) + "\n")
    return code


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(p, suppress):
    dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--epsilon", type=float, default=dflt(None), help="set resolution")
    p.add_argument("--tol", type=float, default=dflt(None), help="convergence tolerance")
    p.add_argument("--n-max", type=int, default=dflt(None), help="maximum number of operator steps")
    p.add_argument("--threads", type=int, default=dflt(1), help="worker threads for map evaluation")
    p.add_argument("--out-dir", default=dflt(None), help="output directory (default $IFSLAB_OUT_DIR or ./ifslab-out)")
    p.add_argument("--format", choices=["csv", "json"], default=dflt("json"), help="stdout format")


def _seed_flags(p, n_random):
    p.add_argument("--seed", action="append", help="seed point, 'x' or 'x,y'; repeatable")
    p.add_argument("--random", type=int, default=n_random, help="number of random seeds when --seed is absent")
    p.add_argument("--rng-seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ifslab", description=__doc__.splitlines()[0])
    _global_flags(parser, False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    _global_flags(common, True)

    p = sub.add_parser("verify-alr", parents=[common], help="check that a map is an ALR-map")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--map", help="interval-square, interval-sqrt, arc, disc or kwietniak")
    g.add_argument("--preset", help="use the phi of a gallery preset")
    g.add_argument("--descriptor", help="JSON map descriptor file")
    p.add_argument("--witness-length", type=int, default=20)
    p.add_argument("--expect", choices=["pass", "fail"], default="pass")
    p.set_defaults(func=cmd_verify_alr)

    p = sub.add_parser("orbit", parents=[common], help="iterate the operator and dump the orbit CSV")
    p.add_argument("--preset", required=True)
    p.add_argument("-n", type=int, default=None, help="number of steps")
    p.add_argument("--output", help="orbit CSV path")
    p.add_argument("--clouds", action="store_true", help="also dump per-step point clouds")
    _seed_flags(p, 1)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("pointwise", parents=[common], help="per-seed pointwise convergence test")
    p.add_argument("--preset", required=True)
    p.add_argument("--expect", choices=["converged", "diverged"], default="converged")
    _seed_flags(p, 20)
    p.set_defaults(func=cmd_pointwise)

    p = sub.add_parser("refute-strict", parents=[common], help="pointwise test plus strict-attractor refutation")
    p.add_argument("--preset", required=True)
    p.add_argument("--x0", help="witness start point")
    p.add_argument("--witness-length", type=int, default=None)
    _seed_flags(p, 20)
    p.set_defaults(func=cmd_refute_strict)

    p = sub.add_parser("gallery", help="gallery presets")
    gsub = p.add_subparsers(dest="gallery_command", required=True, parser_class=_Parser)
    q = gsub.add_parser("render", parents=[common], help="render a preset to PGM or SVG")
    q.add_argument("--preset", required=True)
    q.add_argument("--depth", type=int, default=6)
    q.add_argument("--image", choices=["pgm", "svg"], help="image format (default from --output suffix, else pgm)")
    q.add_argument("--width", type=int, default=1024)
    q.add_argument("--viewport", type=float, nargs="+", help="xmin xmax [ymin ymax]")
    q.add_argument("--output")
    q.set_defaults(func=cmd_gallery_render)
    q = gsub.add_parser("list", parents=[common], help="list preset names")
    q.set_defaults(func=cmd_gallery_list)

    p = sub.add_parser("experiment", help="config-driven experiments")
    esub = p.add_subparsers(dest="experiment_command", required=True, parser_class=_Parser)
    q = esub.add_parser("run", parents=[common], help="run a JSON experiment config")
    q.add_argument("config")
    q.set_defaults(func=cmd_experiment_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"ifslab: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - mapped to the runtime exit code
        sys.stderr.write(f"ifslab: runtime error: {type(exc).__name__}: {exc}\n")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
