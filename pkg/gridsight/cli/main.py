# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""``gridsight`` command-line entry point."""

import argparse
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from .. import set_log_level
from ..common.errors import GridSightError, UsageError
from ..version import __version__
from .config import load_config
from .pipeline import REPORT_NAME, run_pipeline
from .stages import EXIT_OK, EXIT_USAGE, exit_code_for, run_stage

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """Reports usage problems as ``UsageError`` instead of exiting with status 2."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _floats(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


# command-line destination -> configuration key
FLAG_KEYS = {
    "seed": "seed",
    "jobs": "jobs",
    "out": "paths.out",
    "center_included": "thermal.center_included",
    "edge_threshold": "thermal.edge_threshold",
    "canny_sigma": "canny.sigma",
    "canny_low": "canny.t_low",
    "canny_high": "canny.t_high",
    "hough_votes": "hough.min_votes",
    "gabor_orients": "gabor.n_orient",
    "gabor_waves": "gabor.wavelengths",
    "meter_per_pixel": "facade.meter_per_pixel",
    "n_points": "facade.n_points",
    "wavelet": "proposal.wavelet",
    "emax": "proposal.e_max",
    "max_regions": "proposal.max_regions",
    "max_radius": "proposal.max_radius",
    "epochs": "train.epochs",
    "lr": "train.lr",
    "input": "paths.input",
    "thermal_input": "paths.thermal",
    "model": "paths.model",
}


def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", default=None, help="Configuration file of section.key = value lines")
    common.add_argument("--out", default=None, help="Output directory")
    common.add_argument("--seed", type=int, default=None, help="Seed for every random stream")
    common.add_argument("--jobs", type=int, default=None, help="Worker count")
    common.add_argument("--log-level", default=None, help="Logging level, e.g. INFO or DEBUG")
    return common


def _structure_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--canny-sigma", type=float, default=None)
    p.add_argument("--canny-low", type=float, default=None)
    p.add_argument("--canny-high", type=float, default=None)
    p.add_argument("--hough-votes", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="gridsight", description="Power-grid inspection imagery toolkit")
    parser.add_argument("--version", action="version", version=f"gridsight {__version__}")
    sub = parser.add_subparsers(dest="stage", metavar="stage", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("thermal", parents=[common], help="Hotspot mask and neighbor edges")
    p.add_argument("image")
    p.add_argument("--center-included", type=_bool, default=None)
    p.add_argument("--edge-threshold", type=float, default=None)

    p = sub.add_parser("structures", parents=[common], help="Edges, Hough lines, tower mask")
    p.add_argument("image")
    _structure_flags(p)
    p.add_argument("--gabor-orients", type=int, default=None)
    p.add_argument("--gabor-waves", type=_floats, default=None)

    p = sub.add_parser("clearance", parents=[common], help="Tree-to-tower clearance report")
    p.add_argument("image")
    _structure_flags(p)
    p.add_argument("--meter-per-pixel", type=float, default=None)
    p.add_argument("--n-points", type=int, default=None)

    p = sub.add_parser("propose", parents=[common], help="DWT region proposals")
    p.add_argument("image")
    p.add_argument("--wavelet", choices=("haar", "db2"), default=None)
    p.add_argument("--emax", type=float, default=None)
    p.add_argument("--max-regions", type=int, default=None)
    p.add_argument("--max-radius", type=int, default=None)

    p = sub.add_parser("classify", parents=[common], help="Filter proposals with a trained model")
    p.add_argument("image")
    p.add_argument("--model", required=True)
    p.add_argument("--regions", required=True)

    p = sub.add_parser("train", parents=[common], help="Train the region classifier")
    p.add_argument("--data", default=None, help="Dataset directory; the toy dataset when omitted")
    p.add_argument("--epochs", type=int, default=None)
    p.add_argument("--lr", type=float, default=None)
    p.add_argument("--model-out", default=None)

    p = sub.add_parser("platform", help="Platform sizing arithmetic")
    actions = p.add_subparsers(dest="action", metavar="action", parser_class=_Parser)
    actions.required = True
    a = actions.add_parser("thrust", parents=[common], help="Thrust per motor in grams")
    a.add_argument("--weight", type=float, required=True)
    a.add_argument("--alpha", type=float, default=None)
    a.add_argument("--motors", type=int, default=None)
    a = actions.add_parser("mass", parents=[common], help="Total mass of a budget in grams")
    a.add_argument("--budget", default=None, help="CSV with name,unit_weight_g,pieces")
    a = actions.add_parser("align", parents=[common], help="Alignment angle in radians")
    for name in ("--d0", "--d1", "--d2"):
        a.add_argument(name, type=float, required=True)
    a.add_argument("--spacing", type=float, required=True)

    p = sub.add_parser("pipeline", parents=[common], help="Full inspection over a directory")
    p.add_argument("input", nargs="?", default=None)
    p.add_argument("--thermal-input", default=None)
    p.add_argument("--model", default=None)
    return parser


def _overrides(args: Dict[str, Any]) -> Dict[str, Any]:
    values = {key: args.get(dest) for dest, key in FLAG_KEYS.items()}
    # stage inputs are not configuration
    if args.get("stage") not in ("pipeline",):
        for dest in ("input", "thermal_input", "model"):
            values.pop(FLAG_KEYS[dest])
    return values


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line and return the exit status."""
    try:
        args = vars(build_parser().parse_args(argv))
    except UsageError as err:
        sys.stderr.write(f"{err}\n")
        return EXIT_USAGE
    if args.get("log_level"):
        set_log_level(args["log_level"].upper())
    try:
        config = load_config(args.get("config"), _overrides(args))
    except GridSightError as err:
        logger.error(f"{err}")
        return exit_code_for(err)

    stage = args.pop("stage")
    if stage != "pipeline":
        return run_stage(stage, config, args)
    try:
        report = run_pipeline(config)
    except GridSightError as err:
        logger.error(f"pipeline: {err}")
        return exit_code_for(err)
    print(os.path.join(config.out_dir, REPORT_NAME))
    return EXIT_OK


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
