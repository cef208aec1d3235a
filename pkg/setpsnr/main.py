# -*- coding: utf-8 -*-
"""
Evaluation pipeline: decodes the pairs of a manifest, computes their MSEs in manifest
order and produces every applicable set estimate together with a distribution audit.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import logging
from collections import OrderedDict
from typing import List, Optional, Sequence, Tuple

from setpsnr import __version__
from setpsnr.config import CONF
from setpsnr.manager import Manager
from setpsnr.media import load_pnm, load_yuv_frame
from setpsnr.media.manifest import (
    Manifest,
    ManifestItem,
    IMAGE_SET,
    SINGLE_VIDEO,
    VIDEO_SET,
    SIMULATE,
)
from setpsnr.pixel_ops import canonicalize, UINT8
from setpsnr.mse import mse, MseRecord, group_videos
from setpsnr.estimators import (
    SetEstimate,
    UndefinedEstimateError,
    video_psnr,
    video_set_psnrs,
    ZERO_MSE_POLICIES,
    ZERO_FLOOR,
    zero_floor,
    VIDEO_PSNR_OPTIONS,
    WEIGHTINGS,
)
from setpsnr.distribution import (
    audit,
    AuditError,
    gap_vs_set_size,
    simulate_gap,
    SimConfig,
)
from setpsnr.report import Report

logger = logging.getLogger(__name__)

ANALYZE = "analyze"

SETTINGS = (
    "zero_mse",
    "video_psnr",
    "psnr1_weighting",
    "psnr3_weighting",
    "chunk_rows",
    "hist_bins",
    "fit_histogram",
)

_ALLOWED = {
    "zero_mse": ZERO_MSE_POLICIES,
    "video_psnr": VIDEO_PSNR_OPTIONS,
    "psnr1_weighting": WEIGHTINGS,
    "psnr3_weighting": WEIGHTINGS,
}

_SECTIONS = {"hist_bins": "Distribution", "fit_histogram": "Distribution"}


class ItemError(Exception):
    """
    Failure while measuring one manifest item.

    :ivar item_id: Identifier of the failing item.
    :ivar cause: The original exception.
    """

    def __init__(self, item_id: str, cause: Exception) -> None:
        super().__init__("Item '{0}': {1}".format(item_id, cause))
        self.item_id = item_id
        self.cause = cause


def warn_mixed_resolution(records: Sequence[MseRecord], mode: str) -> Optional[str]:
    """
    Checks whether the items of a run differ in sample count.

    :param records: Measured items.
    :param mode: Manifest mode. In video modes, frames within a video always share
        one geometry and the warning concerns pooling across videos.
    :returns: Warning message or ``None``.
    """
    if len({r.pixel_count for r in records}) < 2:
        return None

    counts = OrderedDict()
    for r in records:
        counts[r.geometry] = counts.get(r.geometry, 0) + 1

    listing = ", ".join("{0} ({1})".format(g, n) for g, n in counts.items())

    if mode in (SINGLE_VIDEO, VIDEO_SET):
        return (
            "videos differ in resolution: {}; PSNR-1 and PSNR-3 pool items of "
            "different sizes".format(listing)
        )
    return (
        "items have mixed resolutions: {}; set-level PSNR mixes images of different "
        "sizes".format(listing)
    )


class Evaluator:
    """
    Runs evaluations with settings taken from the user configuration. Any setting can
    be overridden per instance with keyword arguments::

        >>> from setpsnr.main import Evaluator
        >>> from setpsnr.media import read_manifest
        >>> evaluator = Evaluator(zero_mse="floor")
        >>> report = evaluator.run(read_manifest("kodak.json"))
        >>> report.set_estimate.gap_db
        1.24...

    Items are measured in parallel on a :class:`setpsnr.manager.Manager`; reports list
    them in manifest order.

    :param workers: Number of worker threads.
    :param settings: Overrides for 'zero_mse', 'video_psnr', 'psnr1_weighting',
        'psnr3_weighting', 'chunk_rows', 'hist_bins' and 'fit_histogram'.
    """

    def __init__(self, workers: Optional[int] = None, **settings) -> None:

        self.settings = OrderedDict()

        stored = OrderedDict(
            (key, CONF.get(_SECTIONS.get(key, "Evaluation"), key)) for key in SETTINGS
        )
        try:
            self.configure(**stored)
        except ValueError as exc:
            raise ValueError("Invalid setting in {0}: {1}".format(CONF.filename(), exc))

        self.configure(**settings)
        self.manager = Manager(workers)

    def configure(self, **settings) -> None:
        """
        Updates settings for subsequent runs. ``None`` values are ignored.

        :raises: :class:`ValueError` for unknown settings or invalid values.
        """
        for key, value in settings.items():
            if value is None:
                continue
            if key not in SETTINGS:
                raise ValueError("Unknown setting '{}'.".format(key))
            if key in _ALLOWED and value not in _ALLOWED[key]:
                raise ValueError(
                    "Invalid value {0!r} for '{1}', expected one of {2}.".format(
                        value, key, _ALLOWED[key]
                    )
                )
            if key == "chunk_rows" and value < 1:
                raise ValueError("'chunk_rows' must be at least 1.")
            self.settings[key] = value

    def close(self) -> None:
        """Stops the worker threads."""
        self.manager.shutdown()

    def __enter__(self) -> "Evaluator":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    def _config(self, **extra) -> "OrderedDict":
        config = OrderedDict()
        config["version"] = __version__
        config.update(extra)
        config.update(self.settings)
        return config

    # ==================================================================================
    # measurement
    # ==================================================================================

    @staticmethod
    def _load(manifest: Manifest, item: ManifestItem, path: str):
        path = manifest.resolve(path)
        if item.is_raw:
            return load_yuv_frame(
                path, item.width, item.height, item.frame, item.subsampling
            )
        return load_pnm(path)

    def measure_item(self, manifest: Manifest, item: ManifestItem) -> MseRecord:
        """
        Decodes, canonicalises and measures one item.

        :raises: :class:`ItemError` wrapping any failure.
        """
        try:
            ref = self._load(manifest, item, item.ref)
            dist = self._load(manifest, item, item.dist)
            pair = canonicalize(
                ref, dist, manifest.channel_mode, manifest.quantization, manifest.clamp
            )
            return mse(
                pair,
                item.item_id,
                manifest.video_id(item),
                self.settings["chunk_rows"],
                self.manager,
            )
        except ItemError:
            raise
        except Exception as exc:
            raise ItemError(item.item_id, exc) from exc

    def measure(self, manifest: Manifest) -> List[MseRecord]:
        """
        Measures all items of a manifest. Raw video entries without a frame index are
        expanded into their frames first.

        :returns: :class:`setpsnr.mse.MseRecord` list in manifest order.
        """
        manifest = manifest.expand_raw_items()
        logger.info("Measuring %s items.", len(manifest))
        return self.manager.map(
            self.measure_item, [(manifest, item) for item in manifest.items]
        )

    # ==================================================================================
    # evaluation
    # ==================================================================================

    def run(self, manifest: Manifest) -> Report:
        """
        Evaluates a manifest.

        :param manifest: :class:`setpsnr.media.Manifest` in 'image_set',
            'single_video', 'video_set' or 'simulate' mode.
        :returns: :class:`setpsnr.report.Report`. Estimates which are undefined,
            e.g. mean-of-PSNR with zero MSEs under the 'error' policy, are listed in
            :attr:`Report.errors`.
        :raises: :class:`ItemError` if an item cannot be measured.
        """
        if manifest.mode == SIMULATE:
            return self.simulate(_sim_config(manifest.simulation))

        records = self.measure(manifest)
        if not records:
            raise ValueError("Manifest expands to no items.")

        config = self._config(
            mode=manifest.mode,
            channel_mode=manifest.channel_mode,
            quantization=manifest.quantization,
            clamp=manifest.clamp,
            peak=records[0].peak,
        )

        report = Report(manifest.mode, config)
        report.items = records

        for record in records:
            for message in record.warnings:
                report.warn("{0}: {1}".format(record.item_id, message))

        message = warn_mixed_resolution(records, manifest.mode)
        if message:
            logger.warning(message)
            report.warn(message)

        if manifest.mode == IMAGE_SET:
            self._aggregate_items(report, records)
        else:
            self._aggregate_videos(report, records, manifest.mode)

        return report

    def _aggregate_items(self, report: Report, records: List[MseRecord]) -> None:
        mses = [r.mse for r in records]
        ids = [r.item_id for r in records]
        self._set_and_audit(report, mses, ids, records[0].peak)

    def _aggregate_videos(
        self, report: Report, records: List[MseRecord], mode: str
    ) -> None:

        zero_mse = self.settings["zero_mse"]
        videos = group_videos(records, zero_mse)
        report.videos = videos

        for v in videos:
            try:
                value = video_psnr(v, self.settings["video_psnr"], zero_mse=zero_mse)
            except UndefinedEstimateError as exc:
                report.errors.append(str(exc))
                value = None
            report.video_psnr[v.video_id] = value

            try:
                report.video_audits[v.video_id] = audit(
                    v.frame_mses, self.settings["hist_bins"]
                )
            except AuditError as exc:
                logger.debug("No audit for video '%s': %s", v.video_id, exc)

        if mode == SINGLE_VIDEO:
            self._set_and_audit(
                report,
                videos[0].frame_mses,
                videos[0].item_ids,
                videos[0].peak,
            )
            return

        try:
            report.video_set = video_set_psnrs(
                videos,
                zero_mse=zero_mse,
                psnr1_weighting=self.settings["psnr1_weighting"],
                psnr3_weighting=self.settings["psnr3_weighting"],
            )
        except UndefinedEstimateError as exc:
            logger.error(str(exc))
            report.errors.append(str(exc))
        else:
            for message in report.video_set.warnings:
                report.warn(message)

        self._set_and_audit(
            report,
            [v.video_mse for v in videos],
            [v.video_id for v in videos],
            videos[0].peak,
        )

    def _set_and_audit(
        self, report: Report, mses, item_ids, peak: float, sizes=None
    ) -> None:

        try:
            estimate = SetEstimate(mses, peak, self.settings["zero_mse"], item_ids)
        except UndefinedEstimateError as exc:
            logger.error(str(exc))
            report.errors.append(str(exc))
            return

        report.set_estimate = estimate
        for message in estimate.warnings:
            report.warn(message)

        floored = mses
        if self.settings["zero_mse"] == ZERO_FLOOR:
            floored = [m if m > 0 else zero_floor(peak) for m in mses]

        try:
            report.audit = audit(
                floored, self.settings["hist_bins"], self.settings["fit_histogram"]
            )
        except AuditError as exc:
            message = "distribution audit skipped: {}".format(exc)
            logger.warning(message)
            report.warn(message)

        if sizes:
            report.gap_table = gap_vs_set_size(
                floored, sizes, peak, self.settings["zero_mse"]
            )

    # ==================================================================================
    # MSE lists and simulation
    # ==================================================================================

    def analyze(
        self,
        entries: Sequence[Tuple[float, Optional[str]]],
        peak: float = 255.0,
        sizes: Optional[Sequence[int]] = None,
    ) -> Report:
        """
        Evaluates a list of published MSE values without media.

        :param entries: ``(mse, video_id)`` tuples as returned by
            :func:`setpsnr.media.parse_mse_list`. If video ids are given, every entry
            needs one and the list is evaluated as a video set.
        :param peak: Peak sample value of the domain the MSEs were measured in.
        :param sizes: Optional set sizes for a gap-versus-set-size table.
        :returns: :class:`setpsnr.report.Report`.
        """
        video_ids = [v for _, v in entries]
        with_video = sum(v is not None for v in video_ids)

        if 0 < with_video < len(entries):
            raise ValueError("Either all or no MSE list entries need a video id.")

        records = [
            MseRecord("item-{}".format(i + 1), m, 0, "", "", peak, v)
            for i, (m, v) in enumerate(entries)
        ]

        report = Report(ANALYZE, self._config(mode=ANALYZE, peak=peak))
        report.items = records

        if with_video:
            report.config["sizes"] = None
            self._aggregate_videos(report, records, VIDEO_SET)
        else:
            report.config["sizes"] = ",".join(str(n) for n in sizes) if sizes else None
            self._set_and_audit(
                report,
                [r.mse for r in records],
                [r.item_id for r in records],
                peak,
                sizes,
            )

        return report

    def simulate(self, cfg: SimConfig) -> Report:
        """
        Runs a Monte Carlo simulation of the estimator gap.

        :param cfg: :class:`setpsnr.distribution.SimConfig`.
        :returns: :class:`setpsnr.report.Report` with its simulation block set.
        """
        config = self._config(mode=SIMULATE)
        config.update(cfg.to_dict())

        report = Report(SIMULATE, config)
        report.simulation = simulate_gap(cfg, self.manager)

        return report


def _sim_config(simulation) -> SimConfig:
    simulation = simulation or {}
    return SimConfig(
        n_samples=simulation.get("n_samples", CONF.get("Simulation", "n_samples")),
        lam=simulation.get("lambda", CONF.get("Simulation", "lambda")),
        seed=simulation.get("seed", CONF.get("Simulation", "seed")),
        n_trials=simulation.get("n_trials", CONF.get("Simulation", "n_trials")),
    )


def peak_for(quantization: str) -> float:
    """PSNR peak of a quantization mode."""
    return 255.0 if quantization == UINT8 else 1.0
