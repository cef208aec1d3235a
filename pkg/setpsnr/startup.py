# -*- coding: utf-8 -*-
"""
Command line interface of setpsnr.

Subcommands:

* ``setpsnr image-set MANIFEST``: mean-of-PSNR and PSNR-of-mean-MSE of an image set.
* ``setpsnr video MANIFEST``: both PSNR variants of a single video.
* ``setpsnr video-set MANIFEST``: PSNR-1, PSNR-2 and PSNR-3 of a set of videos.
* ``setpsnr simulate``: Monte Carlo check of the estimator gap for exponential MSEs.
* ``setpsnr analyze MSE_LIST``: estimates and audit of a plain text list of MSEs.

Exit codes: 0 on success, 1 on errors, 2 on usage errors and 3 if warnings were
raised and ``--strict`` is given.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import os
import sys
import time
import logging
import argparse
from typing import List, Optional

from setpsnr import __version__
from setpsnr.config import CONF
from setpsnr.config.base import get_conf_path
from setpsnr.config.main import SUBFOLDER
from setpsnr.media import read_manifest, read_mse_list, ManifestError
from setpsnr.media.manifest import IMAGE_SET, SINGLE_VIDEO, VIDEO_SET, SIMULATE
from setpsnr.estimators import MEAN_FRAME_PSNR, PSNR_OF_MEAN_FRAME_MSE, WEIGHTINGS
from setpsnr.distribution import SimConfig, save_histogram_csv
from setpsnr.main import Evaluator, peak_for
from setpsnr.report import emit, FORMATS

logger = logging.getLogger(__name__)
root_logger = logging.getLogger("setpsnr")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_STRICT = 3

CHANNEL_MODES = {"rgb": "rgb", "y601": "y_bt601_studio", "yfull": "y_full_range"}
VIDEO_PSNR = {"mean-psnr": MEAN_FRAME_PSNR, "mean-mse": PSNR_OF_MEAN_FRAME_MSE}
MANIFEST_MODES = {"image-set": IMAGE_SET, "video": SINGLE_VIDEO, "video-set": VIDEO_SET}


# ======================================================================================
# logging facilities
# ======================================================================================


def setup_root_logger(log_file: bool = True, verbose: bool = False) -> None:
    """
    Configures the 'setpsnr' root logger with a stderr handler and, optionally, a
    per-run log file in '~/.setpsnr/LOG_FILES'. Log files older than the
    'days_to_keep' option are deleted.
    """
    root_logger.setLevel(logging.DEBUG)
    root_logger.handlers.clear()

    # define standard format of logging messages
    f = logging.Formatter(
        fmt="%(asctime)s %(name)s %(levelname)s: " + "%(message)s", datefmt="%H:%M:%S"
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(f)
    console_handler.setLevel(
        logging.DEBUG if verbose else CONF.get("Logging", "console_level")
    )
    root_logger.addHandler(console_handler)

    if not log_file:
        return

    logging_path = get_conf_path(SUBFOLDER, "LOG_FILES")
    os.makedirs(logging_path, exist_ok=True)

    log_file_path = os.path.join(
        logging_path, "setpsnr " + time.strftime("%Y-%m-%d_%H-%M-%S") + ".txt"
    )
    file_handler = logging.FileHandler(log_file_path)
    file_handler.setFormatter(f)
    file_handler.setLevel(CONF.get("Logging", "file_level"))
    root_logger.addHandler(file_handler)

    # delete old log files
    now = time.time()
    days_to_keep = CONF.get("Logging", "days_to_keep")

    for name in os.listdir(logging_path):
        path = os.path.join(logging_path, name)
        if os.path.isfile(path) and os.stat(path).st_mtime < now - days_to_keep * 86400:
            os.remove(path)


# ======================================================================================
# argument parsing
# ======================================================================================


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _sizes(text: str) -> List[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated integers")
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("expected positive set sizes")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    """Returns the argument parser of the ``setpsnr`` command."""

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--channel-mode", choices=sorted(CHANNEL_MODES), help="channels the MSE uses"
    )
    common.add_argument(
        "--quantization", choices=("float01", "uint8"), help="sample domain"
    )
    common.add_argument(
        "--clamp",
        action="store_true",
        default=None,
        help="clamp float samples to [0, 1]",
    )
    common.add_argument(
        "--zero-mse",
        choices=("error", "floor"),
        help="treatment of zero MSE in mean-of-PSNR",
    )
    common.add_argument(
        "--video-psnr",
        choices=sorted(VIDEO_PSNR),
        help="single video PSNR: mean of frame PSNRs or PSNR of mean frame MSE",
    )
    common.add_argument("--psnr1-weighting", choices=WEIGHTINGS)
    common.add_argument("--psnr3-weighting", choices=WEIGHTINGS)
    common.add_argument("--format", choices=FORMATS, help="report format")
    common.add_argument(
        "--strict", action="store_true", help="exit with code 3 on warnings"
    )
    common.add_argument(
        "--hist-bins",
        type=int,
        help="histogram bins, 0 for the Freedman-Diaconis rule",
    )
    common.add_argument(
        "--hist-csv", metavar="PATH", help="write the MSE histogram as CSV"
    )
    common.add_argument("-o", "--output", metavar="PATH", help="report file")
    common.add_argument("--workers", type=_positive_int, help="worker threads")
    common.add_argument(
        "--no-log-file", action="store_true", help="do not write a log file"
    )
    common.add_argument(
        "-v", "--verbose", action="store_true", help="print debug messages"
    )

    parser = argparse.ArgumentParser(
        prog="setpsnr",
        description="PSNR aggregation for image sets, videos and video sets.",
    )
    parser.add_argument(
        "--version", action="version", version="%(prog)s {}".format(__version__)
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    for command, help_text in (
        ("image-set", "evaluate an image set manifest"),
        ("video", "evaluate a single video manifest"),
        ("video-set", "evaluate a video set manifest"),
    ):
        p = sub.add_parser(command, parents=[common], help=help_text)
        p.add_argument("manifest", help="manifest JSON file")

    p = sub.add_parser(
        "simulate", parents=[common], help="simulate the gap for exponential MSEs"
    )
    p.add_argument("manifest", nargs="?", help="optional 'simulate' manifest")
    p.add_argument("--n", type=_positive_int, help="samples per trial")
    p.add_argument("--lambda", dest="lam", type=float, help="exponential rate")
    p.add_argument("--trials", type=_positive_int, help="number of trials")
    p.add_argument("--seed", type=int, help="64-bit seed")

    p = sub.add_parser("analyze", parents=[common], help="evaluate a list of MSEs")
    p.add_argument("mse_list", help="text file with one MSE per line")
    p.add_argument(
        "--sizes", type=_sizes, help="set sizes for a gap table, e.g. 30,50,100"
    )
    p.add_argument(
        "--peak",
        type=float,
        help="peak sample value, defaults to 255 for uint8 and 1 for float01",
    )

    return parser


# ======================================================================================
# commands
# ======================================================================================


def _sim_config(args) -> SimConfig:
    settings = {}
    if args.manifest:
        manifest = read_manifest(args.manifest)
        if manifest.mode != SIMULATE:
            raise ManifestError(
                "Manifest mode is '{}', expected 'simulate'.".format(manifest.mode)
            )
        settings = manifest.simulation or {}

    def pick(arg, key, option):
        if arg is not None:
            return arg
        return settings.get(key, CONF.get("Simulation", option))

    return SimConfig(
        n_samples=pick(args.n, "n_samples", "n_samples"),
        lam=pick(args.lam, "lambda", "lambda"),
        seed=pick(args.seed, "seed", "seed"),
        n_trials=pick(args.trials, "n_trials", "n_trials"),
    )


def _manifest_defaults():
    return {
        "channel_mode": CONF.get("Evaluation", "channel_mode"),
        "quantization": CONF.get("Evaluation", "quantization"),
        "clamp": CONF.get("Evaluation", "clamp"),
    }


def _evaluate(args, evaluator: Evaluator):

    if args.command == "simulate":
        return evaluator.simulate(_sim_config(args))

    if args.command == "analyze":
        quantization = args.quantization or CONF.get("Evaluation", "quantization")
        peak = args.peak if args.peak is not None else peak_for(quantization)
        if not peak > 0:
            raise ValueError("Peak must be positive.")
        return evaluator.analyze(read_mse_list(args.mse_list), peak, args.sizes)

    manifest = read_manifest(args.manifest, defaults=_manifest_defaults())
    expected = MANIFEST_MODES[args.command]

    if manifest.mode != expected:
        raise ManifestError(
            "Manifest mode is '{0}' but '{1}' expects '{2}'.".format(
                manifest.mode, args.command, expected
            )
        )

    manifest = manifest.override(
        channel_mode=CHANNEL_MODES.get(args.channel_mode),
        quantization=args.quantization,
        clamp=args.clamp,
    )

    return evaluator.run(manifest)


def run_cli(argv: Optional[List[str]] = None) -> int:
    """
    Runs the ``setpsnr`` command.

    :param argv: Command line arguments without the program name.
    :returns: Exit code.
    """
    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    setup_root_logger(log_file=not args.no_log_file, verbose=args.verbose)

    fmt = args.format or CONF.get("Report", "format")

    try:
        with Evaluator(
            workers=args.workers,
            zero_mse=args.zero_mse,
            video_psnr=VIDEO_PSNR.get(args.video_psnr),
            psnr1_weighting=args.psnr1_weighting,
            psnr3_weighting=args.psnr3_weighting,
            hist_bins=args.hist_bins,
        ) as evaluator:
            report = _evaluate(args, evaluator)
    except Exception as exc:
        logger.error(str(exc))
        logger.debug("Traceback:", exc_info=True)
        return EXIT_ERROR

    if args.hist_csv:
        if report.audit is not None:
            save_histogram_csv(report.audit.histogram, args.hist_csv)
        else:
            report.warn("no histogram written: the run has no distribution audit")

    text = emit(report, fmt)

    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)

    if not report.ok:
        return EXIT_ERROR
    if args.strict and report.warnings:
        logger.error("%s warning(s) raised in strict mode.", len(report.warnings))
        return EXIT_STRICT

    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
