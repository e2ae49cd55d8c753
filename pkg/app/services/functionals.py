"""
Scalar functionals of a brightness image.

Per-pixel path: mean, population variance, the split sub-means of the pixels
at/below and at/above the mean, and the fringe-visibility analogue built from
them. LUT path: the same values computed from a histogram and a tone curve with
histogram-weighted sums, exact for images whose samples are integer tones.

Both paths take the mean from a correctly rounded total, so a pixel that sits
exactly on the mean is classified the same way on either path.

Pixels equal to the mean belong to both subsets. An all-black image has
visibility 0.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Tuple

import numpy as np

from app.core.exceptions import DomainError, RangeRejectionError, ValidationError
from app.schemas.reports import VisibilityReport
from app.services.curves import RangeMode, ToneCurve, apply_curve, validate_range
from app.services.image_model import BrightnessImage, Histogram, compute_histogram

logger = logging.getLogger(__name__)


class SubMeans(NamedTuple):
    sub_mean_low: float
    count_low: int
    sub_mean_high: float
    count_high: int


def _flat(image: BrightnessImage) -> np.ndarray:
    return image.samples.ravel()


def _mean_of(samples: np.ndarray) -> float:
    mean = math.fsum(samples.tolist()) / samples.size
    # rounding may not push the mean outside the sample range
    return float(min(max(mean, samples.min()), samples.max()))


def _variance_about(samples: np.ndarray, mean: float) -> float:
    return float(np.square(samples - mean).sum() / samples.size)


def _split_about(samples: np.ndarray, mean: float) -> SubMeans:
    low = samples <= mean
    high = samples >= mean
    count_low = int(np.count_nonzero(low))
    count_high = int(np.count_nonzero(high))
    return SubMeans(
        sub_mean_low=float(samples[low].sum() / count_low),
        count_low=count_low,
        sub_mean_high=float(samples[high].sum() / count_high),
        count_high=count_high,
    )


def _ratio(sub_mean_high: float, sub_mean_low: float) -> float:
    denominator = sub_mean_high + sub_mean_low
    if denominator <= 0:
        return 0.0
    return float((sub_mean_high - sub_mean_low) / denominator)


def brightness_mean(image: BrightnessImage) -> float:
    """Average brightness over all pixels"""
    return _mean_of(_flat(image))


def brightness_variance(image: BrightnessImage) -> float:
    """Population variance of the brightness (divides by the pixel count)"""
    samples = _flat(image)
    return _variance_about(samples, _mean_of(samples))


def split_sub_means(image: BrightnessImage) -> SubMeans:
    """Means and sizes of the at-or-below-mean and at-or-above-mean pixel sets"""
    samples = _flat(image)
    return _split_about(samples, _mean_of(samples))


def visibility(image: BrightnessImage) -> float:
    """Fringe-visibility analogue (high - low) / (high + low) of the sub-means"""
    split = split_sub_means(image)
    return _ratio(split.sub_mean_high, split.sub_mean_low)


def fringe_visibility(i_max: float, i_min: float) -> float:
    """Visibility of interference fringes with bright intensity i_max and dark i_min"""
    if not (np.isfinite(i_max) and np.isfinite(i_min)):
        raise DomainError("Intensities must be finite", arguments={"i_max": i_max, "i_min": i_min})
    if i_min < 0 or i_max < i_min:
        raise DomainError(
            f"Require i_max >= i_min >= 0, got i_max={i_max:g}, i_min={i_min:g}",
            arguments={"i_max": i_max, "i_min": i_min}
        )
    if i_max + i_min <= 0:
        raise DomainError("Require i_max + i_min > 0", arguments={"i_max": i_max, "i_min": i_min})
    return (i_max - i_min) / (i_max + i_min)


def report(image: BrightnessImage) -> VisibilityReport:
    """All functional values of an image in one pass"""
    samples = _flat(image)
    mean = _mean_of(samples)
    split = _split_about(samples, mean)
    return VisibilityReport(
        mean=mean,
        variance=_variance_about(samples, mean),
        sub_mean_low=split.sub_mean_low,
        sub_mean_high=split.sub_mean_high,
        count_low=split.count_low,
        count_high=split.count_high,
        visibility=_ratio(split.sub_mean_high, split.sub_mean_low),
    )


# ---------------------------------------------------------------------------
# Histogram-weighted (LUT) path
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LutSummary:
    """Functional values for K candidate curves over the same occupied tones"""
    mean: np.ndarray
    variance: np.ndarray
    sub_mean_low: np.ndarray
    sub_mean_high: np.ndarray
    count_low: np.ndarray
    count_high: np.ndarray
    visibility: np.ndarray

    def row(self, index: int) -> VisibilityReport:
        return VisibilityReport(
            mean=float(self.mean[index]),
            variance=float(self.variance[index]),
            sub_mean_low=float(self.sub_mean_low[index]),
            sub_mean_high=float(self.sub_mean_high[index]),
            count_low=int(self.count_low[index]),
            count_high=int(self.count_high[index]),
            visibility=float(self.visibility[index]),
        )


_SPLITTER = 134217729.0  # 2**27 + 1
# Rows with a value this close (relative) to the pairwise mean get the exact mean
_NEAR_MEAN = 1e-9
_EXACT_LIMIT = 2.0 ** 500


def _split(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    scaled = _SPLITTER * a
    high = scaled - (scaled - a)
    return high, a - high


def _exact_products(values: np.ndarray, weights: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """values * weights as product + error with no rounding loss (Dekker)"""
    product = values * weights
    value_high, value_low = _split(values)
    weight_high, weight_low = _split(weights)
    error = value_low * weight_low - (
        ((product - value_high * weight_high) - value_low * weight_high) - value_high * weight_low
    )
    return product, error


def _exact_means(values: np.ndarray, weights: np.ndarray, total: int, rows: np.ndarray) -> np.ndarray:
    """Correctly rounded weighted total over total, for the selected rows"""
    product, error = _exact_products(values[rows], weights)
    return np.array([
        math.fsum(np.concatenate((p, e)).tolist()) / total for p, e in zip(product, error)
    ])


def summarize_luts(counts: np.ndarray, values: np.ndarray) -> LutSummary:
    """Evaluate the functionals for each row of values (K x T) weighted by counts (T)

    Every row is reduced independently, so a row's result does not depend on
    how many other rows are evaluated with it. Rows where some value lies next
    to the mean are re-summed exactly, matching the per-pixel mean bit for bit.
    """
    counts = np.asarray(counts, dtype=np.int64)
    values = np.ascontiguousarray(values, dtype=np.float64)
    total = int(counts.sum())
    weights = counts.astype(np.float64)

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        weighted = values * weights
        lowest = values.min(axis=1)
        highest = values.max(axis=1)
        mean = weighted.sum(axis=1) / total

        scale = np.maximum(np.abs(values).max(axis=1), 1.0)
        near = np.any(np.abs(values - mean[:, np.newaxis]) <= _NEAR_MEAN * scale[:, np.newaxis], axis=1)
        near |= (mean <= lowest) | (mean >= highest)
        exact = np.flatnonzero(near & np.all(np.isfinite(values), axis=1) & (scale < _EXACT_LIMIT))
        if exact.size:
            mean[exact] = _exact_means(values, weights, total, exact)

        mean = np.minimum(np.maximum(mean, lowest), highest)
        column = mean[:, np.newaxis]

        variance = (np.square(values - column) * weights).sum(axis=1) / total

        low = values <= column
        high = values >= column
        count_low = np.where(low, counts, 0).sum(axis=1)
        count_high = np.where(high, counts, 0).sum(axis=1)
        sub_mean_low = np.where(low, weighted, 0.0).sum(axis=1) / count_low
        sub_mean_high = np.where(high, weighted, 0.0).sum(axis=1) / count_high

        denominator = sub_mean_high + sub_mean_low
        ratio = (sub_mean_high - sub_mean_low) / denominator
        visibility = np.where(denominator > 0, ratio, 0.0)

    return LutSummary(
        mean=mean,
        variance=variance,
        sub_mean_low=sub_mean_low,
        sub_mean_high=sub_mean_high,
        count_low=count_low,
        count_high=count_high,
        visibility=visibility,
    )


def report_from_lut(histogram: Histogram, curve: ToneCurve) -> VisibilityReport:
    """Report of the curve-transformed image, computed from its histogram in O(256)"""
    if histogram.total <= 0:
        raise ValidationError("Histogram is empty", field="histogram")
    tones = histogram.occupied_tones()
    values = curve.lut[tones][np.newaxis, :]
    return summarize_luts(histogram.counts[tones], values).row(0)


# ---------------------------------------------------------------------------
# Curve comparison
# ---------------------------------------------------------------------------

class CurveComparison(NamedTuple):
    label: str
    report: VisibilityReport
    accepted: bool


def compare_curves(
    image: BrightnessImage,
    curves: Iterable[ToneCurve],
    mode: RangeMode = RangeMode.REJECT,
) -> List[CurveComparison]:
    """Variance and visibility of several variations of one image

    Curves rejected by the range rule are listed with accepted=False and the
    report of the clamped curve.
    """
    histogram = compute_histogram(image)
    comparisons = []
    for curve in curves:
        accepted = True
        try:
            checked = validate_range(curve, histogram, mode)
        except RangeRejectionError as e:
            logger.info(f"Curve {curve.label!r} rejected at tone {e.tone}")
            accepted = False
            checked = validate_range(curve, histogram, RangeMode.CLAMP)
        comparisons.append(CurveComparison(curve.label, report(apply_curve(image, checked)), accepted))
    return comparisons
