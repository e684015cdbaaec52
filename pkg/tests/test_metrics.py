"""Quality metric tests with hand-computed expected values."""

import math

import numpy as np
import pytest

from hybridgi import (
    ParameterError,
    RangeTag,
    SceneImage,
    ShapeError,
    count_significant,
    mse,
    psnr,
    quality_report,
    ssim,
)


class TestMse:
    def test_identical(self):
        a = np.arange(12.0).reshape(3, 4)
        assert mse(a, a) == 0.0

    def test_unit_offset(self):
        assert mse(np.zeros((4, 4)), np.ones((4, 4))) == 1.0

    def test_sparse_difference(self):
        # (0 + 0 + 0 + 4) / 4 = 1
        assert mse(np.array([[0.0, 0.0], [0.0, 2.0]]), np.zeros((2, 2))) == 1.0

    def test_roi(self):
        a = np.zeros((4, 4))
        b = np.zeros((4, 4))
        b[0, 0] = 2.0
        assert mse(a, b, roi=(0, 0, 1, 1)) == 4.0
        assert mse(a, b, roi=(1, 1, 3, 3)) == 0.0

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            mse(np.zeros((2, 2)), np.zeros((2, 3)))

    def test_roi_out_of_bounds(self):
        with pytest.raises(ShapeError):
            mse(np.zeros((4, 4)), np.zeros((4, 4)), roi=(2, 2, 3, 3))


class TestPsnr:
    def test_identical_is_infinite(self):
        a = np.random.default_rng(0).normal(size=(5, 5))
        assert psnr(a, a, peak=1.0) == math.inf

    def test_zero_db(self):
        # mse 1 at peak 1: 10*log10(1) = 0.
        assert psnr(np.zeros((4, 4)), np.ones((4, 4)), peak=1.0) == pytest.approx(0.0)

    def test_twenty_db(self):
        # mse 0.01 at peak 1: 10*log10(100) = 20.
        test = np.full((4, 4), 0.1)
        assert psnr(np.zeros((4, 4)), test, peak=1.0) == pytest.approx(20.0)

    def test_monotone_in_mse(self):
        reference = np.zeros((8, 8))
        values = [
            psnr(reference, np.full((8, 8), eps), peak=1.0)
            for eps in (0.001, 0.01, 0.1, 0.5)
        ]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_peak_validation(self):
        with pytest.raises(ParameterError):
            psnr(np.zeros((2, 2)), np.zeros((2, 2)), peak=0.0)


class TestSsim:
    def test_identical_images(self):
        a = np.random.default_rng(1).uniform(size=(16, 16))
        assert ssim(a, a, peak=1.0) == pytest.approx(1.0)

    def test_symmetry(self):
        rng = np.random.default_rng(2)
        a = rng.uniform(size=(12, 12))
        b = rng.uniform(size=(12, 12))
        assert ssim(a, b, peak=1.0) == pytest.approx(ssim(b, a, peak=1.0))

    def test_zero_variance_closed_form(self):
        # Constant images: all variances vanish, so per-window ssim reduces
        # to (2*mu_a*mu_b + c1) / (mu_a^2 + mu_b^2 + c1).
        peak = 1.0
        c = 0.25
        a = np.full((12, 12), c)
        b = np.full((12, 12), c + peak)
        c1 = (0.01 * peak) ** 2
        expected = (2 * c * (c + peak) + c1) / (c**2 + (c + peak) ** 2 + c1)
        assert ssim(a, b, peak=peak) == pytest.approx(expected, abs=1e-12)

    def test_independent_noise_near_zero(self):
        values = []
        for seed in range(100):
            rng = np.random.default_rng(seed)
            a = rng.uniform(size=(16, 16))
            b = rng.uniform(size=(16, 16))
            values.append(ssim(a, b, peak=1.0))
        assert abs(np.mean(values)) < 0.2

    def test_region_too_small(self):
        with pytest.raises(ShapeError):
            ssim(np.zeros((7, 9)), np.zeros((7, 9)), peak=1.0)
        with pytest.raises(ShapeError):
            ssim(np.zeros((16, 16)), np.zeros((16, 16)), peak=1.0, roi=(0, 0, 4, 16))


class TestCountSignificant:
    def test_single_peak(self):
        y = np.zeros((4, 6))
        y[2, 3] = 5.0
        count, positions = count_significant(y, 1e-6)
        assert count == 1
        assert positions == [(2, 3)]

    def test_all_zero(self):
        count, positions = count_significant(np.zeros((3, 3)), 1e-6)
        assert count == 0 and positions == []

    def test_scale_invariance(self):
        rng = np.random.default_rng(3)
        y = rng.normal(size=(6, 6))
        base = count_significant(y, 0.25)
        assert count_significant(y * 1e6, 0.25) == base
        assert count_significant(y * 1e-6, 0.25) == base

    def test_positions_sorted_by_magnitude(self):
        y = np.array([[0.1, -3.0], [2.0, 0.0]])
        count, positions = count_significant(y, 0.01)
        assert count == 3
        assert positions == [(0, 1), (1, 0), (0, 0)]

    def test_rel_tol_validation(self):
        with pytest.raises(ParameterError):
            count_significant(np.ones((2, 2)), 0.0)


class TestQualityReport:
    def test_peak_defaults_from_range(self):
        scene = SceneImage(np.zeros((16, 16)), RangeTag.SIGNED)
        test = np.full((16, 16), 0.2)
        report = quality_report(scene, test)
        assert report.psnr_db == pytest.approx(10 * math.log10(4.0 / 0.04))

    def test_bare_array_requires_peak(self):
        with pytest.raises(ParameterError):
            quality_report(np.zeros((16, 16)), np.zeros((16, 16)))

    def test_includes_bucket_count(self):
        scene = SceneImage(np.zeros((16, 16)), RangeTag.REFLECTANCE)
        buckets = np.zeros((4, 4))
        buckets[1, 2] = 3.0
        report = quality_report(scene, scene.values, buckets=buckets)
        assert report.significant_count == 1
        assert report.psnr_db == math.inf
        assert report.ssim == pytest.approx(1.0)

    def test_to_dict(self):
        scene = SceneImage(np.zeros((16, 16)), RangeTag.SIGNED)
        report = quality_report(scene, scene.values, roi=(0, 0, 16, 16))
        payload = report.to_dict()
        assert payload["roi"] == [0, 0, 16, 16]
        assert payload["mse"] == 0.0
