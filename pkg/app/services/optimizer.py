"""
Exhaustive lattice search for the tone-curve parameters maximizing visibility.

Candidates are evaluated on the histogram of the source image (O(256) each),
one chunk per a1 value, optionally on a thread pool. Chunks are reduced in a1
order and rows inside a chunk are in (a2, alpha, beta) order, so taking the
first maximum gives the lexicographically smallest winner whatever the worker
count.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import structlog

from app.core.exceptions import InfeasibleSearchError, ValidationError
from app.schemas.params import TransformParams
from app.schemas.reports import VisibilityReport
from app.schemas.search import SearchGrid
from app.services.curves import (
    MAX_TONE,
    TONES,
    RangeMode,
    branch_terms,
    eq7_curve,
    high_branch,
    low_branch,
    validate_range,
)
from app.services.functionals import LutSummary, brightness_mean, report_from_lut, summarize_luts
from app.services.image_model import BrightnessImage, Histogram, compute_histogram

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class TraceEntry:
    """One grid candidate; visibility and variance are NaN when rejected"""
    a1: float
    a2: float
    alpha: float
    beta: float
    visibility: float
    variance: float
    accepted: bool


@dataclass
class SearchResult:
    """Outcome of an exhaustive search"""
    best_params: TransformParams
    best_report: VisibilityReport
    candidates_total: int
    candidates_rejected: int
    trace: Optional[List[TraceEntry]] = None
    elapsed_seconds: float = 0.0

    @property
    def candidates_accepted(self) -> int:
        return self.candidates_total - self.candidates_rejected


@dataclass
class _ChunkOutcome:
    a1_index: int
    rejected: int
    best_row: Optional[int] = None
    best_visibility: float = -np.inf
    best_report: Optional[VisibilityReport] = None
    trace: List[TraceEntry] = field(default_factory=list)


def evaluate_candidate(histogram: Histogram, pivot: float, params: TransformParams) -> VisibilityReport:
    """Report of one parametric variation; raises RangeRejectionError when out of range"""
    if histogram.total <= 0:
        raise ValidationError("Histogram is empty", field="histogram")
    if params.pivot != pivot:
        params = TransformParams(a1=params.a1, a2=params.a2, alpha=params.alpha, beta=params.beta, pivot=pivot)
    curve = validate_range(eq7_curve(params), histogram, RangeMode.REJECT)
    return report_from_lut(histogram, curve)


class _LatticeEvaluator:
    """Evaluates every candidate sharing one a1 value"""

    def __init__(self, histogram: Histogram, pivot: float, grid: SearchGrid, record_trace: bool):
        self.pivot = pivot
        self.record_trace = record_trace
        self.a1_values, self.a2_values, self.alpha_values, self.beta_values = grid.axis_values()

        self.tones = histogram.occupied_tones()
        self.counts = histogram.counts[self.tones]
        self.tone_values = TONES[self.tones]
        self.is_low = self.tone_values <= pivot

        # correction terms per exponent, restricted to the occupied tones
        self.low_terms = np.stack([branch_terms(pivot, alpha, 1.0)[0][self.tones] for alpha in self.alpha_values])
        self.high_terms = np.stack([branch_terms(pivot, 1.0, beta)[1][self.tones] for beta in self.beta_values])

        # high branch values do not depend on a1: (n_a2, n_beta, T)
        self.high_values = np.stack([
            np.stack([high_branch(a2, term, self.tone_values) for term in self.high_terms])
            for a2 in self.a2_values
        ])

        ia2, ialpha, ibeta = np.meshgrid(
            np.arange(len(self.a2_values)),
            np.arange(len(self.alpha_values)),
            np.arange(len(self.beta_values)),
            indexing="ij",
        )
        self.row_a2 = ia2.ravel()
        self.row_alpha = ialpha.ravel()
        self.row_beta = ibeta.ravel()

    def __call__(self, a1_index: int) -> _ChunkOutcome:
        a1 = self.a1_values[a1_index]
        low_values = np.stack([low_branch(a1, term, self.tone_values) for term in self.low_terms])
        values = np.where(
            self.is_low,
            low_values[self.row_alpha],
            self.high_values[self.row_a2, self.row_beta],
        )

        rejected = ~np.all((values >= 0) & (values <= MAX_TONE), axis=1)
        summary = summarize_luts(self.counts, values)
        scores = np.where(rejected, -np.inf, summary.visibility)

        outcome = _ChunkOutcome(a1_index=a1_index, rejected=int(rejected.sum()))
        if outcome.rejected < len(scores):
            best_row = int(np.argmax(scores))
            outcome.best_row = best_row
            outcome.best_visibility = float(scores[best_row])
            outcome.best_report = summary.row(best_row)

        if self.record_trace:
            outcome.trace = self._trace(a1, rejected, summary)
        return outcome

    def _trace(self, a1: float, rejected: np.ndarray, summary: LutSummary) -> List[TraceEntry]:
        visibility = np.where(rejected, np.nan, summary.visibility)
        variance = np.where(rejected, np.nan, summary.variance)
        return [
            TraceEntry(float(a1), a2, alpha, beta, vis, var, not rej)
            for a2, alpha, beta, vis, var, rej in zip(
                self.a2_values[self.row_a2].tolist(),
                self.alpha_values[self.row_alpha].tolist(),
                self.beta_values[self.row_beta].tolist(),
                visibility.tolist(),
                variance.tolist(),
                rejected.tolist(),
            )
        ]

    def params_of(self, a1_index: int, row: int) -> TransformParams:
        return TransformParams(
            a1=float(self.a1_values[a1_index]),
            a2=float(self.a2_values[self.row_a2[row]]),
            alpha=float(self.alpha_values[self.row_alpha[row]]),
            beta=float(self.beta_values[self.row_beta[row]]),
            pivot=self.pivot,
        )


def optimize(
    image: BrightnessImage,
    grid: SearchGrid,
    workers: int = 1,
    record_trace: bool = False,
) -> SearchResult:
    """Maximize visibility over the grid, rejecting curves that leave [0, 255]

    Ties are broken by the smallest (a1, a2, alpha, beta).
    """
    if workers < 1:
        raise ValidationError("workers must be at least 1", field="workers")

    start_time = time.perf_counter()
    histogram = compute_histogram(image)
    pivot = brightness_mean(image)
    evaluator = _LatticeEvaluator(histogram, pivot, grid, record_trace)
    chunks = range(len(evaluator.a1_values))

    logger.info(
        "optimization_started",
        candidates=grid.size,
        grid_shape=grid.shape,
        pivot=pivot,
        occupied_tones=len(evaluator.tones),
        workers=workers,
    )

    if workers == 1:
        outcomes = [evaluator(index) for index in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            outcomes = list(executor.map(evaluator, chunks))

    best: Optional[_ChunkOutcome] = None
    rejected = 0
    trace: Optional[List[TraceEntry]] = [] if record_trace else None
    for outcome in outcomes:
        rejected += outcome.rejected
        if trace is not None:
            trace.extend(outcome.trace)
        if outcome.best_row is not None and (best is None or outcome.best_visibility > best.best_visibility):
            best = outcome

    elapsed = time.perf_counter() - start_time

    if best is None:
        logger.warning("optimization_infeasible", candidates=grid.size)
        raise InfeasibleSearchError(candidates_total=grid.size)

    best_params = evaluator.params_of(best.a1_index, best.best_row)
    logger.info(
        "optimization_finished",
        best=best_params.label,
        visibility=best.best_visibility,
        candidates=grid.size,
        rejected=rejected,
        elapsed_seconds=round(elapsed, 4),
        candidates_per_second=round(grid.size / elapsed) if elapsed > 0 else None,
    )

    return SearchResult(
        best_params=best_params,
        best_report=best.best_report,
        candidates_total=grid.size,
        candidates_rejected=rejected,
        trace=trace,
        elapsed_seconds=elapsed,
    )
