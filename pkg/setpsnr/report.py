# -*- coding: utf-8 -*-
"""
Evaluation reports and their JSON / CSV renderings.

Every report names the estimators it contains and the units of its numbers. Output is
deterministic: the same :class:`Report` always renders to the same bytes.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import io
import csv
import json
import math
from collections import OrderedDict
from typing import Optional

from setpsnr.estimators import ESTIMATOR_NAMES

JSON = "json"
CSV = "csv"
FORMATS = (JSON, CSV)

UNITS = OrderedDict(
    [
        ("mse", "squared sample units of the canonical domain (see config.peak)"),
        ("psnr", "dB"),
        ("gap", "dB"),
        ("cv", "dimensionless"),
        ("lambda", "1 / squared sample units"),
        ("ks_statistic", "dimensionless"),
    ]
)


class Report:
    """
    Results of one evaluation run.

    :param mode: 'image_set', 'single_video', 'video_set', 'simulate' or 'analyze'.
    :param config: Settings the run was made with.
    :ivar items: Per-item :class:`setpsnr.mse.MseRecord` in manifest order.
    :ivar videos: Per-video :class:`setpsnr.mse.VideoMse` in order of appearance.
    :ivar video_psnr: PSNR of each video under the configured single-video option.
    :ivar set_estimate: :class:`setpsnr.estimators.SetEstimate` of the aggregated
        list: item MSEs for image sets and single videos, video MSEs for video sets.
    :ivar video_set: :class:`setpsnr.estimators.VideoSetEstimate` in video modes.
    :ivar audit: :class:`setpsnr.distribution.DistributionAudit` of the aggregated
        list.
    :ivar video_audits: Per-video audits of frame MSEs.
    :ivar gap_table: Rows ``(n, psnr_bar, psnr_of_mean_mse, gap)``.
    :ivar simulation: :class:`setpsnr.distribution.SimulationResult`.
    :ivar warnings: Warning messages.
    :ivar errors: Error messages of estimates which could not be computed.
    """

    def __init__(self, mode: str, config: "OrderedDict") -> None:
        self.mode = mode
        self.config = config
        self.items = []
        self.videos = []
        self.video_psnr = OrderedDict()
        self.set_estimate = None
        self.video_set = None
        self.audit = None
        self.video_audits = OrderedDict()
        self.gap_table = None
        self.simulation = None
        self.warnings = []
        self.errors = []

    def warn(self, message: str) -> None:
        """Adds a warning unless the same message is already present."""
        if message not in self.warnings:
            self.warnings.append(message)

    @property
    def ok(self) -> bool:
        return len(self.errors) == 0

    def to_dict(self) -> "OrderedDict":
        d = OrderedDict()
        d["mode"] = self.mode
        d["config"] = self.config
        d["estimators"] = ESTIMATOR_NAMES
        d["units"] = UNITS
        d["items"] = [record.to_dict() for record in self.items]
        d["videos"] = [self._video_dict(v) for v in self.videos]
        d["set"] = _set_dict(self.set_estimate)
        d["video_set"] = _video_set_dict(self.video_set)
        d["audit"] = None if self.audit is None else self.audit.to_dict()
        d["gap_vs_set_size"] = _gap_table_list(self.gap_table)
        d["simulation"] = None if self.simulation is None else self.simulation.to_dict()
        d["warnings"] = list(self.warnings)
        d["errors"] = list(self.errors)
        return d

    def _video_dict(self, v) -> "OrderedDict":
        d = v.to_dict()
        d["psnr_db"] = self.video_psnr.get(v.video_id)
        a = self.video_audits.get(v.video_id)
        d["audit"] = None if a is None else a.to_dict()
        return d

    def __repr__(self) -> str:
        return "<{0}(mode={1}, {2} items, {3} warnings)>".format(
            self.__class__.__name__, self.mode, len(self.items), len(self.warnings)
        )


def _set_dict(s) -> Optional["OrderedDict"]:
    if s is None:
        return None
    d = OrderedDict()
    d["n"] = s.n_items
    d["psnr_bar_db"] = s.psnr_bar
    d["psnr_of_mean_mse_db"] = s.psnr_of_mean_mse
    d["gap_db"] = s.gap_db
    d["psnr_std_db"] = s.psnr_std
    d["mse_mean"] = s.mse_mean
    d["mse_std"] = s.mse_std
    d["mse_cv"] = s.mse_cv
    return d


def _video_set_dict(vs) -> Optional["OrderedDict"]:
    if vs is None:
        return None
    d = OrderedDict()
    d["psnr1_db"] = vs.psnr1
    d["psnr2_db"] = vs.psnr2
    d["psnr3_db"] = vs.psnr3
    d["frame_counts"] = vs.frame_counts
    return d


def _gap_table_list(rows) -> Optional[list]:
    if rows is None:
        return None
    keys = ("n", "psnr_bar_db", "psnr_of_mean_mse_db", "gap_db")
    return [OrderedDict(zip(keys, row)) for row in rows]


# ======================================================================================
# rendering
# ======================================================================================


def _jsonable(obj):
    """Replaces non-finite floats by strings and tuples by lists."""
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return OrderedDict((k, _jsonable(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def to_json(report: Report) -> str:
    """
    Renders a report as a JSON document. Floats are written with the shortest
    representation that round-trips exactly, infinite PSNRs as the string "inf".
    """
    return json.dumps(_jsonable(report.to_dict()), indent=2, allow_nan=False) + "\n"


def format_db(value) -> str:
    """dB value with 6 decimals; 'inf' for infinite values, empty for ``None``."""
    if value is None:
        return ""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return "{:.6f}".format(value)


def _format_number(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _summary_rows(report: Report):
    rows = [("mode", report.mode)]
    for key, value in report.config.items():
        rows.append(("config.{}".format(key), _format_number(value)))

    s = _set_dict(report.set_estimate)
    if s is not None:
        for key, value in s.items():
            fmt = format_db if key.endswith("_db") else _format_number
            rows.append(("set.{}".format(key), fmt(value)))

    vs = _video_set_dict(report.video_set)
    if vs is not None:
        for key in ("psnr1_db", "psnr2_db", "psnr3_db"):
            rows.append(("video_set.{}".format(key), format_db(vs[key])))

    for video_id, value in report.video_psnr.items():
        rows.append(("video.{}.psnr_db".format(video_id), format_db(value)))

    if report.audit is not None:
        a = report.audit
        rows += [
            ("audit.n", str(a.n)),
            ("audit.cv", _format_number(a.cv)),
            ("audit.lambda_hat", _format_number(a.lambda_hat)),
            ("audit.ks_statistic", _format_number(a.ks_statistic)),
            ("audit.observed_gap_db", format_db(a.observed_gap_db)),
            ("audit.predicted_gap_db", format_db(a.predicted_gap_db)),
        ]

    for row in report.gap_table or []:
        n = row[0]
        rows += [
            ("gap_vs_set_size.{}.psnr_bar_db".format(n), format_db(row[1])),
            ("gap_vs_set_size.{}.psnr_of_mean_mse_db".format(n), format_db(row[2])),
            ("gap_vs_set_size.{}.gap_db".format(n), format_db(row[3])),
        ]

    if report.simulation is not None:
        sim = report.simulation
        rows += [
            ("simulation.n_trials", str(sim.config.n_trials)),
            ("simulation.mean_gap_db", format_db(sim.mean_gap)),
            ("simulation.std_gap_db", format_db(sim.std_gap)),
            ("simulation.predicted_gap_db", format_db(sim.predicted_gap_db)),
        ]

    rows += [("warning", w) for w in report.warnings]
    rows += [("error", e) for e in report.errors]

    return rows


def to_csv(report: Report) -> str:
    """
    Renders a report as CSV: one row per item, an empty line, then a ``key,value``
    summary block. dB values carry 6 decimals, MSE values full precision.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")

    writer.writerow(("id", "video", "mse", "psnr_db", "pixel_count"))
    for r in report.items:
        writer.writerow(
            (r.item_id, r.video_id or "", repr(r.mse), format_db(r.psnr), r.pixel_count)
        )

    writer.writerow(())
    writer.writerow(("key", "value"))
    for row in _summary_rows(report):
        writer.writerow(row)

    return out.getvalue()


def emit(report: Report, fmt: str = JSON) -> str:
    """
    Renders ``report`` as 'json' or 'csv'.
    """
    if fmt == JSON:
        return to_json(report)
    elif fmt == CSV:
        return to_csv(report)
    else:
        raise ValueError("Unknown report format '{}'.".format(fmt))
