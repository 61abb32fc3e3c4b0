"""``sofa-window`` command-line entry point."""

from __future__ import annotations

import argparse
import json
import sys

from ..errors import SofaWindowError
from .commands import COMMANDS, artifact_svg, execute
from .records import ResultRecord
from .scene import load_scene, parse_scene


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sofa-window",
        description="Decide whether a convex polytope passes through a planar window.",
    )
    p.add_argument("command", choices=sorted(COMMANDS), help="procedure to run")
    p.add_argument("--scene", required=True, help="JSON scene file")
    p.add_argument("--out", help="write the result record here instead of stdout")
    p.add_argument("--svg", help="also write an SVG snapshot here")
    p.add_argument("--samples", type=int, help="validation samples per stage")
    p.add_argument("--grid", type=int, help="grid resolution for search commands")
    p.add_argument("--tol", type=float, help="geometric tolerance")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scene = load_scene(args.scene)
        overrides = {k: getattr(args, k) for k in ("samples", "grid", "tol") if getattr(args, k) is not None}
        if overrides:
            # re-validate so command-line values obey the same rules as the file
            raw = scene.model_dump()
            raw["params"].update(overrides)
            scene = parse_scene(json.dumps(raw))
    except SofaWindowError as e:
        record = ResultRecord(args.command, "error", error={"code": e.code, "message": str(e)})
    except OSError as e:
        record = ResultRecord(args.command, "error", error={"code": "io_error", "message": str(e)})
    else:
        record, outcome = execute(args.command, scene)
        if args.svg and outcome is not None:
            try:
                svg = artifact_svg(scene, outcome)
                with open(args.svg, "w", encoding="utf-8") as fh:
                    fh.write(svg)
            except SofaWindowError as e:
                record = ResultRecord(args.command, "error", error={"code": e.code, "message": str(e)})
    text = record.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return record.exit_code


if __name__ == "__main__":
    sys.exit(main())
