"""
Tone curves: image variations compiled to 256-entry lookup tables.

Two sources of curves:
- freehand control points, interpolated piecewise-linearly;
- the two-branch parametric family around the source image's mean (pivot):
    b <= pivot:  b - a1 * |b * (b - pivot)| ** alpha
    b >  pivot:  b + a2 * |(b - 255) * (b - pivot)| ** beta

Tones 0 and 255 are fixed points of every parametric curve, and at b = pivot
both branches give b.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple, Union

import numpy as np

from app.core.exceptions import CurveDefinitionError, RangeRejectionError, ValidationError
from app.schemas.params import ControlPointCurve, TransformParams
from app.services.image_model import (
    TONE_LEVELS,
    MAX_TONE,
    BrightnessImage,
    Histogram,
    compute_histogram,
)

logger = logging.getLogger(__name__)

TONES = np.arange(TONE_LEVELS, dtype=np.float64)
TONES.setflags(write=False)

_FLOAT_MAX = np.finfo(np.float64).max


class RangeMode(Enum):
    """Handling of transformed brightness outside [0, 255]"""
    REJECT = "reject"
    CLAMP = "clamp"


@dataclass(frozen=True, eq=False)
class ToneCurve:
    """Lookup table lut[t] = transformed brightness of input tone t"""
    lut: np.ndarray
    label: str = ""

    def __post_init__(self):
        lut = np.array(self.lut, dtype=np.float64)
        if lut.shape != (TONE_LEVELS,):
            raise ValidationError(f"A tone curve needs {TONE_LEVELS} entries, got shape {lut.shape}", field="lut")
        if not np.all(np.isfinite(lut)):
            raise ValidationError("Tone curve entries must be finite", field="lut")
        lut.setflags(write=False)
        object.__setattr__(self, "lut", lut)

    @classmethod
    def identity(cls) -> "ToneCurve":
        return cls(TONES.copy(), label="identity")


# ---------------------------------------------------------------------------
# Parametric family
# ---------------------------------------------------------------------------

def branch_terms(pivot: float, alpha: float, beta: float) -> Tuple[np.ndarray, np.ndarray]:
    """Correction terms |b (b - pivot)|^alpha and |(b - 255)(b - pivot)|^beta for all tones

    Large exponents overflow to inf.
    """
    with np.errstate(over="ignore"):
        low_term = np.power(np.abs(TONES * (TONES - pivot)), alpha)
        high_term = np.power(np.abs((TONES - MAX_TONE) * (TONES - pivot)), beta)
    return low_term, high_term


def low_branch(a1: float, low_term: np.ndarray, tones: np.ndarray = TONES) -> np.ndarray:
    # zero amplitude is the identity even where the term overflowed
    if a1 == 0:
        return np.array(tones, dtype=np.float64)
    return tones - a1 * low_term


def high_branch(a2: float, high_term: np.ndarray, tones: np.ndarray = TONES) -> np.ndarray:
    if a2 == 0:
        return np.array(tones, dtype=np.float64)
    return tones + a2 * high_term


def eq7_curve(params: TransformParams) -> ToneCurve:
    """Two-branch variation; tones equal to the pivot take the low branch"""
    low_term, high_term = branch_terms(params.pivot, params.alpha, params.beta)
    lut = np.where(
        TONES <= params.pivot,
        low_branch(params.a1, low_term),
        high_branch(params.a2, high_term),
    )
    # overflowed tones saturate; they are out of range either way
    return ToneCurve(np.clip(lut, -_FLOAT_MAX, _FLOAT_MAX), label=params.label)


# ---------------------------------------------------------------------------
# Freehand curves
# ---------------------------------------------------------------------------

def curve_from_points(curve: ControlPointCurve) -> ToneCurve:
    """Piecewise-linear interpolation of the control points, clamped to [0, 255]"""
    tones = np.array([tone for tone, _ in curve.points], dtype=np.float64)
    values = np.array([value for _, value in curve.points], dtype=np.float64)
    lut = np.clip(np.interp(TONES, tones, values), 0.0, MAX_TONE)
    return ToneCurve(lut, label=curve.label)


CURVE_PRESETS: Dict[str, str] = {
    "identity": "0,0;255,255",
    # linear over the mid-tones, above the diagonal
    "brighten": "0,0;64,160;255,255",
    # linear over the mid-tones, below the diagonal
    "darken": "0,0;192,96;255,255",
    # inflection between the two inner points: darker shadows, brighter highlights
    "flexural": "0,0;96,48;160,208;255,255",
    "invert": "0,255;255,0",
}


def preset_curve(name: str) -> ToneCurve:
    """Tone curve of a named control-point preset"""
    try:
        points = CURVE_PRESETS[name]
    except KeyError:
        raise CurveDefinitionError(
            f"Unknown preset {name!r}",
            suggestions=[f"Available presets: {', '.join(CURVE_PRESETS)}"]
        )
    curve = curve_from_points(ControlPointCurve.parse(points))
    return ToneCurve(curve.lut, label=name)


# ---------------------------------------------------------------------------
# Range handling and application
# ---------------------------------------------------------------------------

def find_range_violation(curve: ToneCurve, histogram: Optional[Histogram]) -> Optional[Tuple[int, float]]:
    """First occupied tone whose transformed value leaves [0, 255], if any

    Without a histogram every tone counts as occupied.
    """
    tones = histogram.occupied_tones() if histogram is not None else np.arange(TONE_LEVELS)
    values = curve.lut[tones]
    outside = np.flatnonzero(~((values >= 0) & (values <= MAX_TONE)))
    if outside.size == 0:
        return None
    first = outside[0]
    return int(tones[first]), float(values[first])


def validate_range(
    curve: ToneCurve,
    histogram: Optional[Histogram],
    mode: Union[RangeMode, str] = RangeMode.REJECT,
) -> ToneCurve:
    """Reject curves sending an occupied tone outside [0, 255], or clamp them

    Tones absent from the image are ignored in reject mode.
    """
    mode = RangeMode(mode)
    if mode is RangeMode.CLAMP:
        return ToneCurve(np.clip(curve.lut, 0.0, MAX_TONE), label=curve.label)

    violation = find_range_violation(curve, histogram)
    if violation is not None:
        tone, value = violation
        raise RangeRejectionError(tone=tone, value=value)
    return curve


def apply_curve(image: BrightnessImage, curve: ToneCurve) -> BrightnessImage:
    """Replace each sample by lut[quantized sample]; dimensions are preserved"""
    violation = find_range_violation(curve, compute_histogram(image))
    if violation is not None:
        tone, value = violation
        raise RangeRejectionError(tone=tone, value=value)
    return BrightnessImage(curve.lut[image.tones()])
