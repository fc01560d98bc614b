"""Command-line interface.

    geomint solve TARGET CHOICE_A CHOICE_B [--features four]
    geomint generate --concept chirality_z --seed 7 --out DIR
    geomint trials PROBLEM.json [...] --out TRIALS.json
    geomint evaluate TRIALS.json [...] --features four --report csv
    geomint inspect IMAGE

Exit status: 0 success, 1 domain error (bad image, empty figure,
malformed manifest), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import evalkit
from .errors import GeomintError
from .features import PRESETS, FeatureSelection
from .raster import DEFAULT_THRESHOLD, load_image
from .solver import ModelConfig, solve_trial, target_figure
from .stimuli import GENERATORS
from .trials import (
    generate_trials,
    read_problem,
    read_trials,
    synthesize_problem,
    trial_to_dict,
    write_problem,
    write_trials,
)

SEED_ENV = "GEOMINT_SEED"


def _threshold(s: str) -> int:
    v = int(s)
    if not 0 <= v <= 255:
        raise argparse.ArgumentTypeError("threshold must be in [0, 255]")
    return v


def _add_model_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--features", choices=sorted(PRESETS), default="four",
                   help="feature preset (default: four)")
    g.add_argument("--features-list", metavar="LIST",
                   help="comma-separated features, e.g. center_shift:base,spread:self")
    p.add_argument("--threshold", type=_threshold, default=DEFAULT_THRESHOLD,
                   help="binarization level; pixels darker than this are figure (default: 128)")


def _config(args, parser) -> ModelConfig:
    if args.features_list:
        try:
            sel = FeatureSelection.parse(args.features_list)
        except ValueError as exc:
            parser.error(str(exc))
        return ModelConfig(sel, args.threshold, None)
    return ModelConfig.preset(args.features, args.threshold)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geomint", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("solve", help="solve one trial and print the decision as JSON")
    p.add_argument("target")
    p.add_argument("choice_a")
    p.add_argument("choice_b")
    _add_model_args(p)

    p = sub.add_parser("generate", help="render a synthetic six-image problem")
    p.add_argument("--concept", required=True, choices=sorted(GENERATORS) + ["all"])
    p.add_argument("--seed", type=int, default=None, help=f"RNG seed (fallback: ${SEED_ENV}, then 0)")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--size", type=int, default=128)
    p.add_argument("--position", type=float, help="position jitter, px")
    p.add_argument("--rotation", type=float, help="rotation jitter, radians")
    p.add_argument("--scale", type=float, help="relative size jitter")

    p = sub.add_parser("trials", help="expand problem manifests into the 20-trial manifest")
    p.add_argument("problems", nargs="+", type=Path)
    p.add_argument("--out", type=Path, help="trial manifest path (default: stdout)")

    p = sub.add_parser("evaluate", help="evaluate trial manifests and write an accuracy report")
    p.add_argument("trials", nargs="+", type=Path)
    _add_model_args(p)
    p.add_argument("--report", choices=("table", "csv", "json"), default="table")
    p.add_argument("--out", type=Path, help="report path (default: stdout)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--lenient", action="store_true",
                   help="record failing trials and exclude them instead of aborting")
    p.add_argument("--no-reference", action="store_true", help="omit published reference columns")
    p.add_argument("--compare-presets", action="store_true",
                   help="evaluate all three presets side by side with the published values")

    p = sub.add_parser("inspect", help="dump the aligned figure's profiles as CSV")
    p.add_argument("image", type=Path)
    p.add_argument("--threshold", type=_threshold, default=DEFAULT_THRESHOLD)
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise GeomintError(f"${SEED_ENV} is not an integer: {env!r}") from None
    return 0


def cmd_solve(args, parser) -> int:
    cfg = _config(args, parser)
    imgs = [load_image(p) for p in (args.target, args.choice_a, args.choice_b)]
    d = solve_trial(*imgs, cfg=cfg)
    out = d.to_dict()
    out["config"] = cfg.to_dict()
    print(json.dumps(out))
    return 0


def cmd_generate(args, parser) -> int:
    jitter = {k: v for k, v in (("position", args.position), ("rotation", args.rotation),
                                ("size", args.scale)) if v is not None}
    seed = _seed(args)
    try:
        if args.concept == "all":
            for i, gen_id in enumerate(sorted(GENERATORS)):
                p = synthesize_problem(gen_id, jitter, seed * 1_000_003 + i * 1009, args.size)
                print(write_problem(p, args.out / gen_id))
        else:
            print(write_problem(synthesize_problem(args.concept, jitter, seed, args.size), args.out))
    except ValueError as exc:
        raise GeomintError(str(exc)) from exc
    return 0


def cmd_trials(args, parser) -> int:
    trials = []
    for path in args.problems:
        trials.extend(generate_trials(read_problem(path)))
    if args.out is None:
        print(json.dumps([trial_to_dict(t, Path.cwd()) for t in trials], indent=2))
    else:
        write_trials(trials, args.out)
    return 0


def cmd_evaluate(args, parser) -> int:
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    cfg = _config(args, parser)
    trials = []
    for path in args.trials:
        trials.extend(read_trials(path))
    if args.compare_presets:
        _, text = evalkit.compare_presets(trials, args.threshold, strict=not args.lenient, jobs=args.jobs)
        _emit(text, args.out)
        return 0
    report = evalkit.evaluate(trials, cfg, strict=not args.lenient, jobs=args.jobs,
                              with_reference=not args.no_reference)
    _emit(evalkit.render_report(report, args.report), args.out)
    return 0


def cmd_inspect(args, parser) -> int:
    from .features import extract_features
    from .raster import image_points

    fig = target_figure(image_points(load_image(args.image), args.threshold))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("feature", "axis", "bin", "value"))
    for feature, axis, prof in extract_features(fig).items():
        for b, v in prof.as_dict().items():
            w.writerow((feature, axis, b, repr(v)))
    sys.stdout.write(buf.getvalue())
    return 0


COMMANDS = {
    "solve": cmd_solve,
    "generate": cmd_generate,
    "trials": cmd_trials,
    "evaluate": cmd_evaluate,
    "inspect": cmd_inspect,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, parser)
    except GeomintError as exc:
        print(f"geomint: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
