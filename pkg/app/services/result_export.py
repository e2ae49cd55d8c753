"""
CSV export of histograms, tone curves and search traces.
"""

import logging
from typing import Optional

import numpy as np
import pandas as pd

from app.core.config import settings
from app.core.exceptions import ValidationError
from app.services.curves import ToneCurve
from app.services.image_model import TONE_LEVELS, Histogram
from app.services.optimizer import SearchResult

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ["a1", "a2", "alpha", "beta", "visibility", "variance", "accepted"]


def histogram_to_csv(histogram: Histogram) -> str:
    """256 lines "tone,count" """
    frame = pd.DataFrame({"tone": np.arange(TONE_LEVELS), "count": histogram.counts})
    return frame.to_csv(header=False, index=False, lineterminator="\n")


def curve_to_csv(curve: ToneCurve, float_format: Optional[str] = None) -> str:
    """256 lines "tone,value" """
    frame = pd.DataFrame({"tone": np.arange(TONE_LEVELS), "value": curve.lut})
    return frame.to_csv(
        header=False,
        index=False,
        lineterminator="\n",
        float_format=float_format or settings.CSV_FLOAT_FORMAT,
    )


def trace_to_frame(result: SearchResult) -> pd.DataFrame:
    """Trace as a table, one row per candidate in lattice order"""
    if result.trace is None:
        raise ValidationError("Search was run without recording a trace", field="trace")
    frame = pd.DataFrame(
        [(e.a1, e.a2, e.alpha, e.beta, e.visibility, e.variance, e.accepted) for e in result.trace],
        columns=TRACE_COLUMNS,
    )
    frame["accepted"] = frame["accepted"].map({True: "true", False: "false"})
    return frame


def trace_to_csv(result: SearchResult, float_format: Optional[str] = None) -> str:
    """Header "a1,a2,alpha,beta,visibility,variance,accepted" then one row per candidate;
    rejected candidates have empty visibility and variance"""
    frame = trace_to_frame(result)
    logger.debug(f"Exporting trace with {len(frame)} rows")
    return frame.to_csv(
        index=False,
        lineterminator="\n",
        na_rep="",
        float_format=float_format or settings.CSV_FLOAT_FORMAT,
    )
