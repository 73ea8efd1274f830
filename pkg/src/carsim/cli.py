"""Command-line entry point: ``carsim {extract,validate,plan,render,simulate}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, replace
from pathlib import Path
from typing import Optional, Sequence

from .errors import CarsimError, ConfigError, LexiconError
from .extract import extract
from .fd import parse_fd, serialize_fd, validate_fd
from .lexicon import Lexicon, builtin_lexicon, load_lexicon
from .plan import PlannerConfig, dump_plan, load_plan, plan
from .render import FrameSpec, render_animation

log = logging.getLogger("carsim")

LEXICON_ENV = "CARSIM_LEXICON"


def resolve_lexicon(arg: Optional[str]) -> Lexicon:
    """``--lexicon`` beats ``$CARSIM_LEXICON``; bare names pick a bundled lexicon."""
    spec = arg or os.environ.get(LEXICON_ENV) or "english"
    if os.path.exists(spec):
        return load_lexicon(spec)
    if os.sep not in spec and not spec.endswith(".lex"):
        return builtin_lexicon(spec)
    raise LexiconError(f"lexicon file not found: {spec}")


def default_config() -> dict:
    return {"planner": PlannerConfig().to_dict(), "frames": asdict(FrameSpec())}


def load_settings(args: argparse.Namespace) -> tuple[PlannerConfig, FrameSpec]:
    """Built-in defaults, overridden by ``--config``, overridden by flags."""
    planner, frames = PlannerConfig(), FrameSpec()
    try:
        if getattr(args, "config", None):
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
            unknown = set(data) - {"planner", "frames"}
            if unknown:
                raise ConfigError(f"unknown config section(s): {', '.join(sorted(unknown))}")
            planner = PlannerConfig.from_dict({**planner.to_dict(), **data.get("planner", {})})
            frames = FrameSpec(**{**asdict(frames), **data.get("frames", {})})
        if getattr(args, "collision_radius", None) is not None:
            planner = replace(planner, collision_radius=args.collision_radius)
        if getattr(args, "frames", None) is not None:
            frames = replace(frames, frame_count=args.frames)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    return planner, frames


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CarsimError(f"cannot read {path}: {exc}", "io") from exc


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CarsimError(f"cannot write {path}: {exc}", "io") from exc


def _warn_all(messages) -> None:
    for m in messages:
        log.warning(m)


def cmd_extract(args) -> int:
    result = extract(_read(args.input), resolve_lexicon(args.lexicon))
    _warn_all(result.diagnostics)
    _write(args.out, serialize_fd(result.fd))
    return 0


def cmd_validate(args) -> int:
    fd = parse_fd(_read(args.input), check=False)
    violations = validate_fd(fd)
    for v in violations:
        print(f"{v.code}: {v.message}")
    return 1 if violations else 0


def cmd_plan(args) -> int:
    planner, _ = load_settings(args)
    result = plan(parse_fd(_read(args.input)), planner)
    _warn_all(result.scene.diagnostics)
    _write(args.out, dump_plan(result))
    return 0


def _frames(result, spec: FrameSpec, out: Optional[str]) -> int:
    if not out:
        raise CarsimError("--out DIR is required for frames", "usage")
    paths = render_animation(result, spec, out)
    print(f"wrote {len(paths)} frame(s) to {out}")
    return 0


def cmd_render(args) -> int:
    _, frames = load_settings(args)
    return _frames(load_plan(_read(args.input)), frames, args.out)


def cmd_simulate(args) -> int:
    planner, frames = load_settings(args)
    extraction = extract(_read(args.input), resolve_lexicon(args.lexicon))
    _warn_all(extraction.diagnostics)
    result = plan(extraction.fd, planner)
    _warn_all(result.scene.diagnostics)
    return _frames(result, frames, args.out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="carsim", description="Accident reports to FD, plans and SVG frames.")
    p.add_argument("--seed-defaults", metavar="PATH",
                   help="write the built-in planner and frame settings as a JSON config file and exit")
    p.add_argument("-q", "--quiet", action="store_true", help="suppress warnings")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, func, help_, input_help, lexicon=False, planner=False, frames=False):
        s = sub.add_parser(name, help=help_, description=help_)
        s.add_argument("input", help=input_help)
        s.add_argument("--out", "-o", help="output path (directory for frames; stdout when omitted)")
        if lexicon:
            s.add_argument("--lexicon", help=f"lexicon file or bundled name (default: ${LEXICON_ENV}, else english)")
        if planner or frames:
            s.add_argument("--config", help="JSON settings file (see --seed-defaults)")
        if planner:
            s.add_argument("--collision-radius", type=float, help="accident-planner circle radius in meters")
        if frames:
            s.add_argument("--frames", type=int, help="number of frames to render")
        s.set_defaults(func=func)

    add("extract", cmd_extract, "extract an FD from a report", "report text file ('-' for stdin)", lexicon=True)
    add("validate", cmd_validate, "check an FD file; exit 0 iff it has no violations", "FD file")
    add("plan", cmd_plan, "plan an FD into timed trajectories (JSON)", "FD file", planner=True)
    add("render", cmd_render, "render a plan into SVG frames", "plan JSON file", frames=True)
    add("simulate", cmd_simulate, "report text straight to SVG frames", "report text file",
        lexicon=True, planner=True, frames=True)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING,
                        format="warning: %(message)s", stream=sys.stderr, force=True)
    try:
        if args.seed_defaults:
            _write(args.seed_defaults, json.dumps(default_config(), indent=2) + "\n")
            if args.command is None:
                return 0
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 2
        return args.func(args)
    except CarsimError as exc:
        print(f"error[{exc.code}]: {' '.join(exc.message.split())}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
