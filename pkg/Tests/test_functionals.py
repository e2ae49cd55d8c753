"""
Tests for the mean, variance, split sub-means and visibility functionals
"""
import math

import numpy as np
import pytest

from conftest import random_integer_image

from app.core.exceptions import DomainError, ValidationError
from app.services.curves import RangeMode, ToneCurve, apply_curve, preset_curve
from app.services.functionals import (
    brightness_mean,
    brightness_variance,
    compare_curves,
    fringe_visibility,
    report,
    report_from_lut,
    split_sub_means,
    summarize_luts,
    visibility,
)
from app.services.image_model import BrightnessImage, Histogram, compute_histogram


def brute_force_report(samples):
    """Per-pixel reference with exactly rounded sums"""
    values = [float(v) for v in np.asarray(samples).ravel()]
    n = len(values)
    mean = math.fsum(values) / n
    variance = math.fsum((v - mean) ** 2 for v in values) / n
    low = [v for v in values if v <= mean]
    high = [v for v in values if v >= mean]
    sub_low = math.fsum(low) / len(low)
    sub_high = math.fsum(high) / len(high)
    vis = 0.0 if sub_low + sub_high == 0 else (sub_high - sub_low) / (sub_high + sub_low)
    return {
        "mean": mean,
        "variance": variance,
        "sub_mean_low": sub_low,
        "sub_mean_high": sub_high,
        "count_low": len(low),
        "count_high": len(high),
        "visibility": vis,
    }


def assert_report_matches(actual, expected, tol=1e-9):
    for key in ("mean", "variance", "sub_mean_low", "sub_mean_high", "visibility"):
        assert getattr(actual, key) == pytest.approx(expected[key], abs=tol), key
    assert actual.count_low == expected["count_low"]
    assert actual.count_high == expected["count_high"]


class TestExamples:

    def test_symmetric_pair(self, make_image):
        image = make_image([0, 255, 255, 0], width=2)
        assert brightness_mean(image) == 127.5
        assert brightness_variance(image) == 16256.25
        assert tuple(split_sub_means(image)) == (0.0, 2, 255.0, 2)
        assert visibility(image) == 1.0

    def test_two_levels(self, make_image):
        image = make_image([100, 100, 200, 200], width=2)
        assert brightness_mean(image) == 150.0
        assert tuple(split_sub_means(image)) == (100.0, 2, 200.0, 2)
        assert visibility(image) == pytest.approx(1 / 3, abs=1e-15)

    def test_constant_image(self, make_image):
        image = make_image([42] * 6, width=3)
        assert brightness_mean(image) == 42.0
        assert brightness_variance(image) == 0.0
        assert tuple(split_sub_means(image)) == (42.0, 6, 42.0, 6)
        assert visibility(image) == 0.0

    def test_all_black_image(self, make_image):
        result = report(make_image([0, 0, 0, 0], width=2))
        assert (result.mean, result.variance, result.visibility) == (0.0, 0.0, 0.0)

    def test_report_composition(self, make_image):
        result = report(make_image([0, 255, 255, 0], width=2))
        assert result.mean == 127.5
        assert result.variance == 16256.25
        assert result.visibility == 1.0
        assert (result.count_low, result.count_high) == (2, 2)

    def test_pixels_equal_to_mean_counted_twice(self, make_image):
        result = report(make_image([10, 20, 30]))
        assert (result.count_low, result.count_high) == (2, 2)
        assert result.sub_mean_low == 15.0
        assert result.sub_mean_high == 25.0

    def test_single_tone_near_rounding(self):
        # a sum that does not divide back exactly must not empty either subset
        image = BrightnessImage(np.full((7, 13), 0.1))
        result = report(image)
        assert result.count_low == result.count_high == 91
        assert result.visibility == 0.0


class TestFringeVisibility:

    @pytest.mark.parametrize("i_max,i_min,expected", [(1, 0, 1.0), (3, 1, 0.5), (7.5, 7.5, 0.0)])
    def test_values(self, i_max, i_min, expected):
        assert fringe_visibility(i_max, i_min) == expected

    @pytest.mark.parametrize("i_max,i_min", [(1, 2), (1, -1), (0, 0), (float("inf"), 1)])
    def test_domain_errors(self, i_max, i_min):
        with pytest.raises(DomainError):
            fringe_visibility(i_max, i_min)

    def test_two_tone_closed_form(self, rng):
        for _ in range(100):
            p, q = sorted(rng.choice(256, size=2, replace=False))
            mask = rng.random((6, 9)) < 0.5
            mask[0, 0], mask[0, 1] = True, False
            image = BrightnessImage(np.where(mask, p, q))
            expected = (q - p) / (q + p)
            assert visibility(image) == pytest.approx(expected, abs=1e-12)
            assert visibility(image) == pytest.approx(fringe_visibility(q, p), abs=1e-12)


class TestOracleEquivalence:

    def test_random_images(self, rng):
        for _ in range(100):
            image = random_integer_image(rng)
            expected = brute_force_report(image.samples)
            assert_report_matches(report(image), expected)
            identity = ToneCurve.identity()
            assert_report_matches(report_from_lut(compute_histogram(image), identity), expected)

    def test_random_curves_on_lut_path(self, rng):
        for _ in range(50):
            image = BrightnessImage(rng.integers(0, 256, size=(16, 16)))
            curve = ToneCurve(rng.uniform(0, 255, size=256))
            transformed = curve.lut[image.tones()]
            expected = brute_force_report(transformed)
            assert_report_matches(report_from_lut(compute_histogram(image), curve), expected)

    def test_single_tone_histogram(self, rng):
        curve = ToneCurve(rng.uniform(0, 255, size=256))
        for tone in (0, 17, 255):
            counts = np.zeros(256, dtype=np.int64)
            counts[tone] = 9
            assert report_from_lut(Histogram(counts), curve).visibility == 0.0

    def test_empty_histogram(self):
        with pytest.raises(ValidationError):
            report_from_lut(Histogram(np.zeros(256)), ToneCurve.identity())

    def test_rows_are_independent(self, rng):
        counts = rng.integers(1, 20, size=40)
        values = rng.uniform(0, 255, size=(25, 40))
        together = summarize_luts(counts, values)
        for index in range(len(values)):
            alone = summarize_luts(counts, values[index:index + 1])
            assert together.visibility[index] == alone.visibility[0]
            assert together.variance[index] == alone.variance[0]

    def test_tone_on_the_mean_is_split_alike(self, rng):
        """A plateau tone sitting on the mean lands in the same subsets on both paths"""
        for _ in range(500):
            middle = rng.uniform(20, 230)
            spread = rng.uniform(0.5, 20)
            lut = np.arange(256, dtype=np.float64)
            lut[:3] = (middle - spread, middle, middle + spread)
            curve = ToneCurve(lut, label="plateau")

            outer = int(rng.integers(1, 50))
            tones = [0] * outer + [1] * int(rng.integers(1, 50)) + [2] * outer
            image = BrightnessImage.from_samples(len(tones), 1, rng.permutation(tones))

            per_pixel = report(apply_curve(image, curve))
            from_lut = report_from_lut(compute_histogram(image), curve)
            assert from_lut.mean == per_pixel.mean
            assert (from_lut.count_low, from_lut.count_high) == (per_pixel.count_low, per_pixel.count_high)
            assert from_lut.visibility == pytest.approx(per_pixel.visibility, abs=1e-12)
            assert_report_matches(from_lut, brute_force_report(lut[image.tones()]))


class TestProperties:

    def test_bounds(self, rng):
        for _ in range(100):
            image = BrightnessImage(rng.uniform(0, 255, size=rng.integers(1, 20, size=2)))
            result = report(image)
            assert result.sub_mean_low <= result.mean <= result.sub_mean_high
            assert result.count_low + result.count_high >= image.pixel_count
            assert 0.0 <= result.visibility <= 1.0
            assert result.variance >= 0.0

    def test_scale_invariance(self, rng):
        checked = 0
        while checked < 100:
            image = BrightnessImage(rng.uniform(1, 200, size=(8, 8)))
            mean = brightness_mean(image)
            # keep every sample clearly on one side of the mean
            if np.min(np.abs(image.samples - mean)) < 1e-6:
                continue
            factor = rng.uniform(0.05, 254.9 / image.samples.max())
            assert visibility(image.scaled(factor)) == pytest.approx(visibility(image), abs=1e-9)
            checked += 1

    def test_variance_scaling(self, rng):
        for _ in range(100):
            image = BrightnessImage(rng.uniform(0, 200, size=rng.integers(1, 16, size=2)))
            factor = rng.uniform(0.05, 254.9 / max(image.samples.max(), 1.0))
            expected = factor ** 2 * brightness_variance(image)
            assert brightness_variance(image.scaled(factor)) == pytest.approx(expected, rel=1e-9)

    def test_variance_upper_bound(self, rng, make_image):
        assert brightness_variance(make_image([0, 255] * 8, width=4)) == 16256.25
        for _ in range(100):
            shape = rng.integers(1, 16, size=2)
            extremes = rng.choice([0.0, 255.0], size=shape)
            mixed = np.where(rng.random(size=shape) < 0.2, rng.uniform(0, 255, size=shape), extremes)
            assert brightness_variance(BrightnessImage(mixed)) <= 16256.25 * (1 + 1e-12)

    def test_scale_invariance_with_ties(self, make_image):
        image = make_image([16, 32, 32, 48, 64, 32], width=3)
        for factor in (0.25, 0.5, 2.0, 3.984375):
            assert visibility(image.scaled(factor)) == visibility(image)

    def test_offset_never_increases_visibility(self, rng):
        for _ in range(100):
            image = BrightnessImage(rng.integers(0, 200, size=rng.integers(1, 16, size=2)))
            before = visibility(image)
            headroom = int(255 - image.samples.max())
            for delta in sorted(rng.integers(0, headroom + 1, size=3)):
                after = visibility(image.offset(float(delta)))
                assert after <= before + 1e-12
                before = after


class TestCompareCurves:

    @pytest.fixture
    def dull_image(self, rng):
        return BrightnessImage(rng.integers(100, 151, size=(32, 32)))

    def test_brighten_and_darken_lower_variance(self, dull_image):
        original = report(dull_image)
        results = {c.label: c for c in compare_curves(
            dull_image, [preset_curve("identity"), preset_curve("brighten"), preset_curve("darken")]
        )}
        assert results["identity"].report.variance == pytest.approx(original.variance, rel=1e-12)
        assert results["brighten"].report.variance == pytest.approx(
            original.variance * (95 / 191) ** 2, rel=1e-9
        )
        assert results["darken"].report.variance == pytest.approx(original.variance / 4, rel=1e-9)
        assert results["brighten"].report.visibility < original.visibility
        assert results["darken"].report.visibility == pytest.approx(original.visibility, abs=1e-12)

    def test_flexural_raises_variance_and_visibility(self, dull_image):
        original = report(dull_image)
        (flexural,) = compare_curves(dull_image, [preset_curve("flexural")])
        assert flexural.accepted
        assert flexural.report.variance == pytest.approx(original.variance * 2.5 ** 2, rel=1e-9)
        assert flexural.report.visibility > original.visibility

    def test_rejected_curve_is_reported_clamped(self, make_image):
        image = make_image([64, 192])
        curve = ToneCurve(np.arange(256) * 2.0 - 100.0, label="steep")
        (result,) = compare_curves(image, [curve], RangeMode.REJECT)
        assert not result.accepted
        assert result.report.mean == pytest.approx((28.0 + 255.0) / 2)
