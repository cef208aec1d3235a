# -*- coding: utf-8 -*-
"""
Audit of MSE distributions against the exponential model and Monte Carlo check of
the estimator gap it predicts.

If item MSEs are exponentially distributed with rate ``lambda``, their geometric mean
is ``exp(-gamma) / lambda`` and their arithmetic mean ``1 / lambda``, so the gap
between mean-of-PSNR and PSNR-of-mean-MSE approaches ``10 log10(exp(gamma))``, about
2.506817 dB, independently of ``lambda``. ``gamma`` is the Euler-Mascheroni constant.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import io
import csv
import math
import logging
from collections import OrderedDict
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats
from lmfit.models import ExponentialModel

from setpsnr.estimators import (
    fmean,
    sample_std,
    mean_log10,
    estimator_gap,
    SetEstimate,
    ZERO_ERROR,
)
from setpsnr.utils.prng import SplitMix64

logger = logging.getLogger(__name__)

EULER_GAMMA = 0.57721566490153286

# upper limit for Freedman-Diaconis bin counts of heavy tailed samples
MAX_BINS = 10000

# minimum number of non-empty bins for a histogram fit
MIN_FIT_BINS = 3


class AuditError(ValueError):
    pass


def predicted_gap() -> float:
    """Gap in dB between the two set estimators for exponentially distributed MSEs."""
    return 10.0 * EULER_GAMMA / math.log(10.0)


# ======================================================================================
# histogram
# ======================================================================================


def histogram_edges(values: np.ndarray, bins: int = 0) -> np.ndarray:
    """
    Bin edges covering ``[min(values), max(values)]``.

    :param values: Sample.
    :param bins: Number of bins. 0 selects the Freedman-Diaconis rule, bin width
        ``2 IQR / n**(1/3)``, with a single bin if the IQR is zero.
    :returns: Increasing array of edges.
    """
    lo, hi = float(np.min(values)), float(np.max(values))

    if lo == hi:
        return np.array([lo, hi])

    if bins <= 0:
        iqr = stats.iqr(values)
        if iqr == 0:
            bins = 1
        else:
            width = 2.0 * iqr / values.size ** (1.0 / 3.0)
            bins = int(math.ceil((hi - lo) / width))
            if bins > MAX_BINS:
                logger.debug("Limiting histogram from %s to %s bins.", bins, MAX_BINS)
                bins = MAX_BINS

    return np.linspace(lo, hi, max(bins, 1) + 1)


def histogram(values, bins: int = 0) -> List[Tuple[float, float, int]]:
    """
    Histogram of ``values`` as a list of ``(bin_lower, bin_upper, count)``. Bins are
    contiguous, the last bin includes its upper edge.
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    edges = histogram_edges(values, bins)

    if edges[0] == edges[-1]:
        return [(float(edges[0]), float(edges[-1]), int(values.size))]

    counts, edges = np.histogram(values, bins=edges)
    return [
        (float(edges[i]), float(edges[i + 1]), int(counts[i]))
        for i in range(counts.size)
    ]


def histogram_csv(hist: Sequence[Tuple[float, float, int]]) -> str:
    """
    Renders a histogram as CSV with the header ``bin_lower,bin_upper,count``.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("bin_lower", "bin_upper", "count"))
    for lower, upper, count in hist:
        writer.writerow((repr(lower), repr(upper), count))
    return out.getvalue()


def save_histogram_csv(hist: Sequence[Tuple[float, float, int]], path: str) -> None:
    """Writes :func:`histogram_csv` output to ``path``."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(histogram_csv(hist))


class HistogramFit:
    """
    Least squares fit of the exponential density to a normalised histogram.

    :ivar lambda_fit: Fitted rate.
    :ivar lambda_stderr: Standard error of the fitted rate, if available.
    :ivar amplitude: Fitted amplitude. Equals ``lambda_fit`` for a perfect
        exponential density.
    :ivar redchi: Reduced chi-square of the fit.
    """

    def __init__(self, lambda_fit, lambda_stderr, amplitude, redchi) -> None:
        self.lambda_fit = lambda_fit
        self.lambda_stderr = lambda_stderr
        self.amplitude = amplitude
        self.redchi = redchi

    def to_dict(self) -> "OrderedDict":
        d = OrderedDict()
        d["lambda_fit"] = self.lambda_fit
        d["lambda_stderr"] = self.lambda_stderr
        d["amplitude"] = self.amplitude
        d["redchi"] = self.redchi
        return d

    def __repr__(self) -> str:
        return "<{0}(lambda_fit={1!r})>".format(
            self.__class__.__name__, self.lambda_fit
        )


def fit_histogram(
    hist: Sequence[Tuple[float, float, int]], lambda_hat: float
) -> Optional[HistogramFit]:
    """
    Fits ``a * exp(-x / decay)`` to the histogram density at the bin centres.

    :param hist: Histogram as returned by :func:`histogram`.
    :param lambda_hat: Starting value for the rate.
    :returns: :class:`HistogramFit` or ``None`` if fewer than three bins are
        populated.
    """
    if sum(1 for b in hist if b[2] > 0) < MIN_FIT_BINS:
        return None

    lower = np.array([b[0] for b in hist])
    upper = np.array([b[1] for b in hist])
    counts = np.array([b[2] for b in hist], dtype=np.float64)

    x = 0.5 * (lower + upper)
    y = counts / (counts.sum() * (upper - lower))

    model = ExponentialModel()
    pars = model.make_params(amplitude=lambda_hat, decay=1.0 / lambda_hat)
    pars["decay"].set(min=0)

    fit_result = model.fit(y, pars, x=x)

    decay = fit_result.params["decay"].value
    decay_stderr = fit_result.params["decay"].stderr

    lambda_stderr = None if decay_stderr is None else decay_stderr / decay ** 2

    return HistogramFit(
        1.0 / decay,
        lambda_stderr,
        fit_result.params["amplitude"].value,
        fit_result.redchi,
    )


# ======================================================================================
# audit
# ======================================================================================


class DistributionAudit:
    """
    Summary statistics of an MSE sample and its distance to the exponential model.

    :ivar n: Sample size.
    :ivar mean: Sample mean.
    :ivar std: Sample standard deviation (``n - 1`` divisor).
    :ivar variance: Sample variance.
    :ivar cv: Coefficient of variation ``std / mean``, close to 1 for exponential
        samples.
    :ivar lambda_hat: Maximum likelihood rate ``1 / mean``.
    :ivar geometric_mean: Geometric mean.
    :ivar observed_gap_db: ``10 log10(mean / geometric_mean)``.
    :ivar predicted_gap_db: Gap predicted by the exponential model.
    :ivar ks_statistic: Kolmogorov-Smirnov distance between the sample and the
        exponential distribution with rate :attr:`lambda_hat`. The rate is estimated
        from the same sample, so no p-value is given.
    :ivar histogram: List of ``(bin_lower, bin_upper, count)``.
    :ivar fit: :class:`HistogramFit` or ``None``.
    """

    def __init__(self, mses, bins: int = 0, fit: bool = False) -> None:

        values = np.asarray(mses, dtype=np.float64).ravel()

        if values.size < 2:
            raise AuditError(
                "The standard deviation is undefined for {} MSE value(s).".format(
                    values.size
                )
            )
        if np.any(values <= 0) or not np.all(np.isfinite(values)):
            raise AuditError("MSE values must be positive and finite for an audit.")

        self.n = int(values.size)
        self.mean = fmean(values)
        self.std = sample_std(values)
        self.variance = self.std ** 2
        self.cv = self.std / self.mean
        self.lambda_hat = 1.0 / self.mean
        self.geometric_mean = 10.0 ** mean_log10(values)
        self.observed_gap_db = estimator_gap(values)
        self.predicted_gap_db = predicted_gap()
        self.ks_statistic = float(
            stats.kstest(values, "expon", args=(0.0, self.mean)).statistic
        )
        self.histogram = histogram(values, bins)
        self.fit = fit_histogram(self.histogram, self.lambda_hat) if fit else None

    def to_dict(self) -> "OrderedDict":
        d = OrderedDict()
        d["n"] = self.n
        d["mean"] = self.mean
        d["std"] = self.std
        d["variance"] = self.variance
        d["cv"] = self.cv
        d["lambda_hat"] = self.lambda_hat
        d["geometric_mean"] = self.geometric_mean
        d["observed_gap_db"] = self.observed_gap_db
        d["predicted_gap_db"] = self.predicted_gap_db
        d["ks_statistic"] = self.ks_statistic
        d["histogram"] = [list(b) for b in self.histogram]
        if self.fit is not None:
            d["histogram_fit"] = self.fit.to_dict()
        return d

    def __repr__(self) -> str:
        return "<{0}(n={1}, cv={2:.4f}, ks={3:.4f})>".format(
            self.__class__.__name__, self.n, self.cv, self.ks_statistic
        )


def audit(mses, bins: int = 0, fit: bool = False) -> DistributionAudit:
    """
    Audits an MSE sample against the exponential model.

    :param mses: At least two positive MSE values.
    :param bins: Histogram bin count, 0 for the Freedman-Diaconis rule.
    :param fit: Fit the exponential density to the histogram.
    :raises: :class:`AuditError` for fewer than two values or non-positive values.
    """
    return DistributionAudit(mses, bins, fit)


def gap_vs_set_size(
    mses,
    sizes: Sequence[int],
    peak: float = 1.0,
    zero_mse: str = ZERO_ERROR,
) -> List[Tuple[int, float, float, float]]:
    """
    Both set estimators and their gap for the first ``n`` items, for every ``n`` in
    ``sizes``.

    :returns: List of ``(n, psnr_bar, psnr_of_mean_mse, gap_db)``.
    """
    mses = np.asarray(mses, dtype=np.float64).ravel()
    rows = []

    for n in sizes:
        if not 1 <= n <= mses.size:
            raise ValueError(
                "Set size {0} is outside 1..{1}.".format(n, mses.size)
            )
        est = SetEstimate(mses[:n], peak, zero_mse)
        rows.append((int(n), est.psnr_bar, est.psnr_of_mean_mse, est.gap_db))

    return rows


# ======================================================================================
# simulation
# ======================================================================================


class SimConfig:
    """
    Settings of a Monte Carlo gap simulation.

    :param n_samples: Exponential draws per trial.
    :param lam: Rate of the exponential distribution.
    :param seed: 64-bit seed.
    :param n_trials: Number of trials.
    """

    def __init__(
        self, n_samples: int, lam: float = 1.0, seed: int = 7, n_trials: int = 1
    ) -> None:

        if n_samples < 1:
            raise ValueError("'n_samples' must be at least 1.")
        if not lam > 0:
            raise ValueError("'lambda' must be positive.")
        if n_trials < 1:
            raise ValueError("'n_trials' must be at least 1.")

        self.n_samples = int(n_samples)
        self.lam = float(lam)
        self.seed = int(seed)
        self.n_trials = int(n_trials)

    def to_dict(self) -> "OrderedDict":
        d = OrderedDict()
        d["n_samples"] = self.n_samples
        d["lambda"] = self.lam
        d["seed"] = self.seed
        d["n_trials"] = self.n_trials
        return d

    def __repr__(self) -> str:
        return "<{0}(n={1}, lambda={2}, seed={3}, trials={4})>".format(
            self.__class__.__name__, self.n_samples, self.lam, self.seed, self.n_trials
        )


class SimulationResult:
    """
    Per-trial gaps of a simulation and their summary.

    :ivar config: The :class:`SimConfig`.
    :ivar gaps: Observed gap of every trial in dB, in trial order.
    :ivar mean_gap: Mean of :attr:`gaps`.
    :ivar std_gap: Sample standard deviation of :attr:`gaps`, ``None`` for one trial.
    :ivar predicted_gap_db: Gap predicted by the exponential model.
    """

    def __init__(self, config: SimConfig, gaps: Sequence[float]) -> None:
        self.config = config
        self.gaps = list(gaps)
        self.mean_gap = fmean(self.gaps)
        self.std_gap = sample_std(self.gaps)
        self.predicted_gap_db = predicted_gap()

    def to_dict(self) -> "OrderedDict":
        d = OrderedDict()
        d["config"] = self.config.to_dict()
        d["gaps_db"] = self.gaps
        d["mean_gap_db"] = self.mean_gap
        d["std_gap_db"] = self.std_gap
        d["predicted_gap_db"] = self.predicted_gap_db
        return d

    def __repr__(self) -> str:
        return "<{0}(mean_gap={1:.6f} dB, {2} trials)>".format(
            self.__class__.__name__, self.mean_gap, len(self.gaps)
        )


def simulate_trial(cfg: SimConfig, trial: int) -> float:
    """Observed gap of trial number ``trial``, drawn from its own stream."""
    samples = SplitMix64(cfg.seed).spawn(trial).exponential(cfg.n_samples, cfg.lam)
    return estimator_gap(samples)


def simulate_gap(cfg: SimConfig, manager=None) -> SimulationResult:
    """
    Draws ``n_trials`` exponential samples and computes their estimator gaps.

    :param cfg: :class:`SimConfig`.
    :param manager: Optional :class:`setpsnr.manager.Manager` to run trials in
        parallel. Results do not depend on it.
    :returns: :class:`SimulationResult`.
    """
    args = [(cfg, trial) for trial in range(cfg.n_trials)]

    if manager is None:
        gaps = [simulate_trial(*a) for a in args]
    else:
        gaps = manager.map(simulate_trial, args)

    result = SimulationResult(cfg, gaps)
    logger.info(
        "Simulated %s trials of %s samples: mean gap %.6f dB (predicted %.6f dB).",
        cfg.n_trials,
        cfg.n_samples,
        result.mean_gap,
        result.predicted_gap_db,
    )
    return result
