"""Command line: solve, verify, refute, check-config, discharge, fixtures.

Exit status: 0 for a positive answer, 1 for a negative answer (with a
witness), 2 when an input cannot be read or is malformed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from importlib import resources
from pathlib import Path

from . import discharging
from .config import ConfigError, ConfigParseError, format_config, parse_config_bytes
from .graph import Graph, GraphError, format_edge_list, parse_edge_list
from .named import GADGET_V1, UnknownNameError, build_named, cycle_rotation, drawn_graph, search_rotation
from .packing import (
    ColorableError,
    ColoringError,
    InvalidPartialError,
    PackingSpec,
    check_coloring,
    extend,
    prove_uncolorable,
    verify,
)
from .reducibility import ENGINES, check_reducible

SAMPLE_RESOURCE = "C6C5C6_typeII_extra_edge.txt"


class InputError(Exception):
    """Anything that should end the run with status 2."""


def sample_config_bytes() -> bytes:
    return resources.files("subcubic_packing").joinpath("data", SAMPLE_RESOURCE).read_bytes()


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _text(data: bytes, path: str) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        raise InputError(f"{path} is not UTF-8 text") from None


def _graph(path: str, inputs: dict) -> Graph:
    data = _read(path)
    inputs[path] = _digest(data)
    try:
        return parse_edge_list(_text(data, path))
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def _coloring(path: str, inputs: dict) -> list[int]:
    data = _read(path)
    inputs[path] = _digest(data)
    try:
        return [int(t) for t in _text(data, path).split()]
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _spec(text: str) -> PackingSpec:
    try:
        return PackingSpec.parse(text)
    except ColoringError as exc:
        raise InputError(str(exc)) from None


def format_coloring(c) -> str:
    return " ".join(map(str, c)) + "\n"


class Run:
    """Collects what a command read and what it concluded."""

    def __init__(self, args):
        self.args = args
        self.inputs: dict[str, str] = {}
        self.t0 = time.perf_counter()

    def finish(self, code: int, payload: dict, text: str) -> int:
        if getattr(self.args, "json", False):
            report = {
                "command": self.args.command,
                "inputs": [{"path": p, "sha256": d} for p, d in self.inputs.items()],
                "result": payload,
                "exit_code": code,
            }
            if getattr(self.args, "timing", False):
                report["wall_seconds"] = round(time.perf_counter() - self.t0, 6)
            print(json.dumps(report, indent=2, sort_keys=True))
        elif text:
            print(text)
        return code


def cmd_solve(args) -> int:
    run = Run(args)
    g = _graph(args.graph, run.inputs)
    spec = _spec(args.spec)
    partial = None
    if args.partial:
        partial = _coloring(args.partial, run.inputs)
        try:
            partial = check_coloring(g, spec, partial)
        except ColoringError as exc:
            raise InputError(str(exc)) from None
    try:
        found = extend(g, spec, partial)
    except InvalidPartialError as exc:
        raise InputError(str(exc)) from None
    if found is None:
        return run.finish(1, {"colorable": False}, "no coloring")
    if args.out:
        Path(args.out).write_text(format_coloring(found))
    return run.finish(0, {"colorable": True, "coloring": list(found)}, format_coloring(found).rstrip())


def cmd_verify(args) -> int:
    run = Run(args)
    g = _graph(args.graph, run.inputs)
    spec = _spec(args.spec)
    c = _coloring(args.coloring, run.inputs)
    try:
        report = verify(g, spec, c)
    except ColoringError as exc:
        raise InputError(str(exc)) from None
    rows = [[v.color, v.u, v.v, v.dist] for v in report.violations]
    text = "valid" if report.valid else "\n".join(
        f"violation color {a} vertices {u} {v} distance {d}" for a, u, v, d in rows)
    return run.finish(0 if report.valid else 1, {"valid": report.valid, "violations": rows}, text)


def cmd_refute(args) -> int:
    run = Run(args)
    g = _graph(args.graph, run.inputs)
    spec = _spec(args.spec)
    try:
        cert = prove_uncolorable(g, spec, break_symmetry=args.break_symmetry)
    except ColorableError as exc:
        return run.finish(1, {"uncolorable": False, "coloring": list(exc.coloring)},
                          "colorable: " + format_coloring(exc.coloring).rstrip())
    return run.finish(0, {"uncolorable": True, "node_count": cert.node_count, "exhaustive": cert.exhaustive},
                      f"uncolorable ({cert.node_count} search nodes, exhaustive)")


def _parse_cursor(text: str | None):
    if text is None:
        return None
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"bad resume cursor {text!r}") from None


def cmd_check_config(args) -> int:
    run = Run(args)
    data = _read(args.file)
    run.inputs[args.file] = _digest(data)
    try:
        cfgs = parse_config_bytes(data)
    except ConfigParseError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    cursor = _parse_cursor(args.resume)
    every = max(1, args.progress_every)
    mark = {"next": every}

    def progress(cur, covered):
        if covered >= mark["next"] or not cur:
            print(f"progress: {covered} precolorings covered; resume cursor: {' '.join(map(str, cur))}",
                  file=sys.stderr, flush=True)
            while mark["next"] <= covered:
                mark["next"] += every

    records, lines = [], []
    code = 0
    for cfg in cfgs:
        t0 = time.perf_counter()
        try:
            result = check_reducible(cfg, exhaustive_first=args.exhaustive_first_triple,
                                     witness_limit=args.witness_limit, workers=args.workers,
                                     engine=args.engine, resume=cursor, progress=progress)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        row = result.to_json()
        row["diagnostics"] = cfg.diagnostics()
        if args.timing:
            row["seconds"] = round(time.perf_counter() - t0, 6)
        records.append(row)
        lines.append(result.text())
        if not result.reducible:
            code = 1
    return run.finish(code, {"records": records}, "\n".join(lines))


def cmd_discharge(args) -> int:
    run = Run(args)
    g = _graph(args.graph, run.inputs)
    data = _read(args.rotation)
    run.inputs[args.rotation] = _digest(data)
    try:
        rot = discharging.parse_rotation(_text(data, args.rotation), g)
        faces = discharging.trace_faces(g, rot)
        discharging.verify_euler_identity(g, faces)
    except (GraphError, discharging.EulerError) as exc:
        raise InputError(str(exc)) from None
    report = discharging.audit(g, rot)
    payload = report.to_json()
    payload["arithmetic_ok"] = report.arithmetic_ok
    if not report.arithmetic_ok:
        code = 1
    else:
        code = 1 if report.unhappy_faces else 0
    text = (f"euler total {payload['euler_total']}; {len(report.faces)} faces; "
            f"{len(report.transfers)} transfers; unhappy faces {list(report.unhappy_faces)}; "
            f"arithmetic {'ok' if report.arithmetic_ok else 'BROKEN'}")
    return run.finish(code, payload, text)


FIXTURES = ["petersen", "k4", "cube", "dodecahedron", "truncated_tetrahedron", "sharpness",
            "sample-config", "cfg_3_7_4", "cfg_5_5_5_I", "cfg_3_5_3", "cycle14", "all"]


def _write(out: Path, name: str, text: str, written: list) -> None:
    path = out / name
    path.write_text(text)
    written.append(str(path))


def write_fixture(name: str, out: Path) -> list[str]:
    out.mkdir(parents=True, exist_ok=True)
    written: list[str] = []
    if name == "all":
        for other in FIXTURES[:-1]:
            written += write_fixture(other, out)
        return written
    if name == "petersen":
        _write(out, "petersen.txt", format_edge_list(build_named("petersen")), written)
    elif name in ("k4", "cube", "dodecahedron", "truncated_tetrahedron"):
        g, rot = drawn_graph(name)
        _write(out, f"{name}.txt", format_edge_list(g), written)
        _write(out, f"{name}.rot", discharging.format_rotation(discharging.RotationSystem(g, rot)), written)
    elif name == "cycle14":
        g = build_named("cycle(14)")
        _write(out, "cycle14.txt", format_edge_list(g), written)
        _write(out, "cycle14.rot", discharging.format_rotation(discharging.RotationSystem(g, cycle_rotation(14))),
               written)
    elif name == "sharpness":
        gadget = build_named("sharpness_gadget")
        doubled = build_named("sharpness_doubled")
        _write(out, "sharpness_gadget.txt", format_edge_list(gadget), written)
        _write(out, "sharpness_doubled.txt", format_edge_list(doubled), written)
        for g, stem in ((gadget, "sharpness_gadget"), (doubled, "sharpness_doubled")):
            rot = search_rotation(g)
            if rot is not None:
                _write(out, f"{stem}.rot", discharging.format_rotation(discharging.RotationSystem(g, rot)), written)
        _write(out, "sharpness_v1.txt", f"{GADGET_V1}\n", written)
    elif name == "sample-config":
        path = out / SAMPLE_RESOURCE
        path.write_bytes(sample_config_bytes())
        written.append(str(path))
    elif name in ("cfg_3_7_4", "cfg_5_5_5_I", "cfg_3_5_3"):
        _write(out, f"{name}.cfg", format_config(build_named(name)), written)
    else:
        raise InputError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return written


def cmd_fixtures(args) -> int:
    run = Run(args)
    try:
        written = write_fixture(args.name, Path(args.out_dir))
    except (UnknownNameError, ConfigError) as exc:
        raise InputError(str(exc)) from None
    return run.finish(0, {"written": written}, "\n".join(written))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subcubic-packing", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable report on stdout")
        sp.add_argument("--timing", action="store_true", help="include wall-clock seconds in --json output")

    s = sub.add_parser("solve", help="find a packing coloring by ordered extension")
    s.add_argument("graph")
    s.add_argument("--spec", required=True, help="radii as a comma list, e.g. 1,2,2,2,2,2")
    s.add_argument("--partial", help="file with a partial coloring (0 = free)")
    s.add_argument("--out", help="write the coloring here")
    common(s)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="list the violations of a coloring")
    s.add_argument("graph")
    s.add_argument("coloring")
    s.add_argument("--spec", required=True)
    common(s)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("refute", help="prove that no packing coloring exists")
    s.add_argument("graph")
    s.add_argument("--spec", required=True)
    s.add_argument("--break-symmetry", action="store_true",
                   help="try only one colour per radius class at vertex 0")
    common(s)
    s.set_defaults(func=cmd_refute)

    s = sub.add_parser("check-config", help="check configuration records for reducibility")
    s.add_argument("file")
    s.add_argument("--exhaustive-first-triple", action="store_true",
                   help="let the first triple take all 30 patterns")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--resume", help="index vector to start from, e.g. '0 3 0 0'")
    s.add_argument("--witness-limit", type=int, default=1)
    s.add_argument("--engine", choices=sorted(ENGINES), default="frontier")
    s.add_argument("--progress-every", type=int, default=10**6,
                   help="print a resume cursor after about this many precolorings")
    common(s)
    s.set_defaults(func=cmd_check_config)

    s = sub.add_parser("discharge", help="trace faces and run the discharging rules")
    s.add_argument("graph")
    s.add_argument("rotation")
    common(s)
    s.set_defaults(func=cmd_discharge)

    s = sub.add_parser("fixtures", help="write named graphs and configurations to files")
    s.add_argument("name", choices=FIXTURES)
    s.add_argument("out_dir")
    common(s)
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
