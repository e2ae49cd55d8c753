"""
Tests for the search grid and the exhaustive visibility optimizer
"""
import time

import numpy as np
import pytest
from pydantic import ValidationError as PydanticValidationError

from app.core.exceptions import (
    GridSpecificationError,
    InfeasibleSearchError,
    RangeRejectionError,
    ValidationError,
)
from app.schemas.params import TransformParams
from app.schemas.search import AxisRange, SearchGrid
from app.services.curves import eq7_curve
from app.services.functionals import brightness_mean, report, visibility
from app.services.image_model import BrightnessImage, compute_histogram
from app.services.optimizer import evaluate_candidate, optimize
from app.services.result_export import trace_to_frame
from scripts.generate_synthetic_images import SyntheticImageGenerator

SMALL_GRID = dict(a1="0:2:0.5", a2="0:1.5:0.5", alpha="0.2:1:0.2", beta="0.3:0.9:0.3")


def brute_force_search(image: BrightnessImage, grid: SearchGrid):
    """Sequential reference: first strictly better candidate in lattice order wins"""
    histogram = compute_histogram(image)
    pivot = brightness_mean(image)
    best = None
    rejected = 0
    a1_values, a2_values, alpha_values, beta_values = grid.axis_values()
    for a1 in a1_values:
        for a2 in a2_values:
            for alpha in alpha_values:
                for beta in beta_values:
                    params = TransformParams(
                        a1=float(a1), a2=float(a2), alpha=float(alpha), beta=float(beta), pivot=pivot
                    )
                    try:
                        result = evaluate_candidate(histogram, pivot, params)
                    except RangeRejectionError:
                        rejected += 1
                        continue
                    if best is None or result.visibility > best[1].visibility:
                        best = (params, result)
    return best, rejected


class TestAxisRange:

    @pytest.mark.parametrize("text,count,last", [
        ("0:5:0.1", 51, 5.0),
        ("0:3:0.1", 31, 3.0),
        ("0.1:1.0:0.1", 10, 1.0),
        ("0:1:0.3", 4, 0.9),
        ("2:2:0.5", 1, 2.0),
    ])
    def test_counts(self, text, count, last):
        axis = AxisRange.parse(text)
        assert axis.count == count
        values = axis.values()
        assert len(values) == count
        assert values[-1] == last

    def test_values_are_not_accumulated(self):
        values = AxisRange.parse("0.1:1.0:0.1").values()
        assert values.tolist() == [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]

    @pytest.mark.parametrize("text", ["1:0:0.1", "0:1:0", "0:1:-0.1", "0:1", "a:b:c", "0:inf:1", ""])
    def test_malformed(self, text):
        with pytest.raises(GridSpecificationError):
            AxisRange.parse(text, axis="a1")

    def test_direct_construction_checks_step(self):
        with pytest.raises(PydanticValidationError):
            AxisRange(start=0, stop=1, step=0)

    def test_str(self):
        assert str(AxisRange.parse("0.1:1.0:0.1")) == "0.1:1:0.1"


class TestSearchGrid:

    def test_default_grid(self):
        grid = SearchGrid.default()
        assert grid.shape == (51, 31, 10, 10)
        assert grid.size == 158100

    def test_default_grid_contains_reference_optimum(self):
        grid = SearchGrid.default()
        reference = TransformParams(a1=4.5, a2=1.2, alpha=0.3, beta=0.5, pivot=128)
        assert grid.contains(reference)
        assert not grid.contains(TransformParams(a1=4.55, a2=1.2, alpha=0.3, beta=0.5, pivot=128))

    @pytest.mark.parametrize("axes", [
        dict(a1="-1:1:0.5"),
        dict(a2="-0.2:1:0.1"),
        dict(alpha="0:1:0.1"),
        dict(beta="-1:1:0.1"),
    ])
    def test_domains(self, axes):
        with pytest.raises(GridSpecificationError):
            SearchGrid.from_strings(**axes)

    def test_single_point(self):
        grid = SearchGrid.single_point(0, 0, 1, 1)
        assert grid.size == 1
        assert [values.tolist() for values in grid.axis_values()] == [[0.0], [0.0], [1.0], [1.0]]


class TestEvaluateCandidate:

    def test_identity_candidate(self, make_image):
        histogram = compute_histogram(make_image([100, 100, 200, 200], width=2))
        result = evaluate_candidate(histogram, 150.0, TransformParams(a1=0, a2=0, alpha=1, beta=1, pivot=150))
        assert result.visibility == pytest.approx(1 / 3, abs=1e-15)

    def test_rejection(self, make_image):
        histogram = compute_histogram(make_image([64, 192]))
        with pytest.raises(RangeRejectionError) as exc_info:
            evaluate_candidate(histogram, 128.0, TransformParams(a1=1, a2=0, alpha=1, beta=1, pivot=128))
        assert exc_info.value.tone == 64

    def test_high_branch_lift(self, make_image):
        histogram = compute_histogram(make_image([100, 100, 200, 200], width=2))
        result = evaluate_candidate(histogram, 150.0, TransformParams(a1=0, a2=0.001, alpha=1, beta=1, pivot=150))
        assert result.sub_mean_high == pytest.approx(202.75, abs=1e-12)
        assert result.visibility == pytest.approx((202.75 - 100) / (202.75 + 100), abs=1e-12)

    def test_zero_amplitude_with_overflowing_exponent(self, make_image):
        histogram = compute_histogram(make_image([100, 100, 200, 200], width=2))
        result = evaluate_candidate(histogram, 150.0, TransformParams(a1=0, a2=0, alpha=200, beta=1, pivot=150))
        assert result.visibility == pytest.approx(1 / 3, abs=1e-15)

    def test_overflowing_branch_is_rejected(self, make_image):
        histogram = compute_histogram(make_image([100, 100, 200, 200], width=2))
        with pytest.raises(RangeRejectionError) as exc_info:
            evaluate_candidate(histogram, 150.0, TransformParams(a1=1, a2=0, alpha=200, beta=1, pivot=150))
        assert exc_info.value.tone == 100

    def test_pivot_argument_wins(self, make_image):
        histogram = compute_histogram(make_image([100, 100, 200, 200], width=2))
        stale = TransformParams(a1=0, a2=0.001, alpha=1, beta=1, pivot=10)
        fresh = TransformParams(a1=0, a2=0.001, alpha=1, beta=1, pivot=150)
        assert evaluate_candidate(histogram, 150.0, stale) == evaluate_candidate(histogram, 150.0, fresh)


class TestOptimize:

    def test_constant_image_picks_first_lattice_point(self):
        image = BrightnessImage(np.full((5, 7), 42.0))
        result = optimize(image, SearchGrid.default())
        assert result.best_params.key == (0.0, 0.0, 0.1, 0.1)
        assert result.best_report.visibility == 0.0
        assert result.candidates_total == 158100
        assert result.candidates_rejected == 0

    def test_two_tone_image(self):
        image = SyntheticImageGenerator(size=32).two_tone()
        result = optimize(image, SearchGrid.default())
        assert result.best_report.visibility >= 1 / 3 - 1e-15
        assert result.candidates_rejected <= result.candidates_total

    def test_single_point_identity(self, rng):
        image = BrightnessImage(rng.integers(0, 256, size=(12, 10)))
        result = optimize(image, SearchGrid.single_point(0, 0, 1, 1))
        expected = report(image)
        assert result.candidates_total == 1
        for key in ("mean", "variance", "sub_mean_low", "sub_mean_high", "visibility"):
            assert getattr(result.best_report, key) == pytest.approx(getattr(expected, key), abs=1e-9)
        assert (result.best_report.count_low, result.best_report.count_high) == (
            expected.count_low, expected.count_high
        )

    def test_matches_brute_force(self, rng):
        grid = SearchGrid.from_strings(**SMALL_GRID)
        assert grid.size <= 1000
        for _ in range(8):
            image = BrightnessImage(rng.integers(0, 256, size=(8, 8)))
            (best_params, best_report), rejected = brute_force_search(image, grid)
            for workers in (1, 4):
                result = optimize(image, grid, workers=workers)
                assert result.best_params == best_params
                assert result.best_report == best_report
                assert result.candidates_rejected == rejected
                assert result.best_report.visibility >= visibility(image) - 1e-12

    def test_worker_count_does_not_change_result(self, rng):
        image = BrightnessImage(rng.integers(60, 200, size=(16, 16)))
        grid = SearchGrid.from_strings(**SMALL_GRID)
        sequential = optimize(image, grid, workers=1, record_trace=True)
        parallel = optimize(image, grid, workers=3, record_trace=True)
        assert sequential.best_params == parallel.best_params
        assert sequential.best_report == parallel.best_report
        assert sequential.candidates_rejected == parallel.candidates_rejected
        assert trace_to_frame(sequential).equals(trace_to_frame(parallel))

    def test_trace(self, rng):
        image = BrightnessImage(rng.integers(0, 256, size=(8, 8)))
        grid = SearchGrid.from_strings(**SMALL_GRID)
        result = optimize(image, grid, record_trace=True)
        trace = result.trace
        assert len(trace) == grid.size
        first = trace[0]
        assert (first.a1, first.a2, first.alpha, first.beta) == (0.0, 0.0, 0.2, 0.3)
        assert (trace[-1].a1, trace[-1].a2, trace[-1].alpha, trace[-1].beta) == (2.0, 1.5, 1.0, 0.9)
        accepted = [entry for entry in trace if entry.accepted]
        assert len(accepted) == result.candidates_accepted
        assert max(entry.visibility for entry in accepted) == result.best_report.visibility
        assert all(np.isnan(entry.visibility) for entry in trace if not entry.accepted)

    def test_no_trace_by_default(self, rng):
        image = BrightnessImage(rng.integers(0, 256, size=(4, 4)))
        assert optimize(image, SearchGrid.single_point(0, 0, 1, 1)).trace is None

    def test_infeasible(self, make_image):
        grid = SearchGrid.from_strings(a1="5:5:1", a2="3:3:1", alpha="1:1:1", beta="1:1:1")
        with pytest.raises(InfeasibleSearchError) as exc_info:
            optimize(make_image([64, 192]), grid)
        assert exc_info.value.exit_code == 5
        assert exc_info.value.details["candidates_total"] == 1

    def test_overflowing_exponent_keeps_zero_amplitude(self, make_image):
        grid = SearchGrid.from_strings(a1="0:0:1", a2="0:0:1", alpha="200:200:1", beta="1:1:1")
        result = optimize(make_image([100, 100, 200, 200], width=2), grid)
        assert result.best_params.alpha == 200.0
        assert result.best_report.visibility == pytest.approx(1 / 3, abs=1e-15)
        assert result.candidates_rejected == 0

    def test_overflowing_candidates_in_trace(self, make_image):
        image = make_image([100, 100, 200, 200], width=2)
        grid = SearchGrid.from_strings(a1="0:1:1", a2="0:0:1", alpha="1:200:199", beta="1:1:1")
        result = optimize(image, grid, record_trace=True)
        by_key = {(entry.a1, entry.alpha): entry for entry in result.trace}
        assert by_key[(0.0, 200.0)].accepted
        assert by_key[(0.0, 200.0)].visibility == pytest.approx(1 / 3, abs=1e-15)
        assert not by_key[(1.0, 200.0)].accepted
        assert np.isnan(by_key[(1.0, 200.0)].visibility)
        assert result.candidates_rejected == 2

        (best_params, best_report), rejected = brute_force_search(image, grid)
        assert result.best_params == best_params
        assert result.best_report == best_report
        assert rejected == 2

    def test_invalid_workers(self, make_image):
        with pytest.raises(ValidationError):
            optimize(make_image([1, 2]), SearchGrid.single_point(0, 0, 1, 1), workers=0)

    def test_winner_lies_on_lattice(self, rng):
        image = BrightnessImage(rng.integers(90, 161, size=(16, 16)))
        grid = SearchGrid.default()
        result = optimize(image, grid)
        assert grid.contains(result.best_params)

    def test_full_grid_throughput(self, rng):
        image = BrightnessImage(rng.integers(0, 256, size=(256, 256)))
        start = time.perf_counter()
        result = optimize(image, SearchGrid.default(), workers=1)
        assert time.perf_counter() - start < 10.0
        assert result.candidates_total == 158100


class TestEnhancement:

    def test_low_contrast_image_winner(self):
        image = SyntheticImageGenerator(size=64).low_contrast()
        assert image.samples.min() >= 90 and image.samples.max() <= 160
        assert visibility(image) == pytest.approx(0.12572606062826172, abs=1e-12)

        result = optimize(image, SearchGrid.default())
        params = result.best_params
        assert params.key == (3.7, 1.5, 0.4, 0.5)
        assert result.best_report.visibility == pytest.approx(0.65942452696091725, abs=1e-12)
        assert result.best_report.variance == pytest.approx(6853.6891159326178, rel=1e-9)
        assert (result.best_report.count_low, result.best_report.count_high) == (2064, 2032)
        assert result.candidates_rejected == 123380

        # darker below the mean, brighter above it
        lut = eq7_curve(params).lut
        tones = compute_histogram(image).occupied_tones()
        low = tones[(tones > 0) & (tones < params.pivot)]
        high = tones[(tones > params.pivot) & (tones < 255)]
        assert np.all(lut[low] < low)
        assert np.all(lut[high] > high)
        assert lut[tones].min() >= 0 and lut[tones].max() <= 255
