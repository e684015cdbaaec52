"""Acquisition simulator tests: splitting, projection, noise, determinism."""

import numpy as np
import pytest

from hybridgi import (
    DegeneratePatternError,
    HybridSpec,
    NoiseModel,
    ParameterError,
    PatternRangeError,
    RangeTag,
    SceneImage,
    ShapeError,
    UnsupportedPatternError,
    acquire,
    acquire_ideal,
    compose_chain,
    measure_bucket,
    normalize_pattern,
    project,
    separable_object,
    split_pattern,
)

KINDS = ("hadamard", "dct", "haar")


class TestSplitPattern:
    def test_all_ones(self):
        plus, minus = split_pattern(np.ones((3, 3)))
        assert np.array_equal(plus, np.ones((3, 3)))
        assert np.array_equal(minus, np.zeros((3, 3)))

    def test_all_zeros(self):
        plus, minus = split_pattern(np.zeros((2, 5)))
        assert np.all(plus == 0.5) and np.all(minus == 0.5)

    def test_difference_recovers_input(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            values = rng.uniform(-1.0, 1.0, (7, 5))
            plus, minus = split_pattern(values)
            assert np.all(plus >= 0) and np.all(minus >= 0)
            assert np.max(np.abs((plus - minus) - values)) < 1e-15

    def test_out_of_range_rejected(self):
        with pytest.raises(PatternRangeError):
            split_pattern(np.array([[0.2, -1.3]]))

    def test_complex_rejected(self):
        with pytest.raises(UnsupportedPatternError):
            split_pattern(np.array([[1j, 0.0]]))


class TestNormalizePattern:
    def test_scale_factor(self):
        scaled, scale = normalize_pattern(np.array([[0.5, -0.25]]))
        assert scale == 0.5
        assert np.max(np.abs(scaled)) == 1.0

    def test_already_normalized(self):
        values = np.array([[1.0, -0.5]])
        scaled, scale = normalize_pattern(values)
        assert scale == 1.0
        assert np.array_equal(scaled, values)

    def test_rescaled_bucket_matches_raw_dot(self):
        rng = np.random.default_rng(2)
        noise = NoiseModel(0.0, 0)
        for _ in range(50):
            raw = rng.normal(scale=3.0, size=(6, 6))
            x = rng.uniform(-1.0, 1.0, (6, 6))
            scene = SceneImage(x, RangeTag.SIGNED)
            scaled, scale = normalize_pattern(raw)
            bucket = scale * measure_bucket(scaled, scene, noise)
            assert abs(bucket - np.sum(raw * x)) < 1e-12

    def test_zero_pattern_degenerate(self):
        with pytest.raises(DegeneratePatternError):
            normalize_pattern(np.zeros((4, 4)))


class TestProject:
    def test_ones_times_ones(self):
        assert project(np.ones((2, 2)), np.ones((2, 2)), NoiseModel(), 0) == 4.0

    def test_zero_object(self):
        assert project(np.ones((2, 2)), np.zeros((2, 2)), NoiseModel(), 0) == 0.0

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            project(np.ones((2, 2)), np.ones((2, 3)), NoiseModel(), 0)

    def test_negative_rejected(self):
        with pytest.raises(PatternRangeError):
            project(np.array([[-0.1]]), np.ones((1, 1)), NoiseModel(), 0)

    def test_noise_deterministic_per_index(self):
        noise = NoiseModel(0.3, seed=99)
        p = np.full((4, 4), 0.5)
        x = np.full((4, 4), 0.25)
        first = project(p, x, noise, 17)
        assert project(p, x, noise, 17) == first  # bitwise repeatable
        assert project(p, x, noise, 18) != first

    def test_distinct_seeds_distinct_noise(self):
        p = np.full((2, 2), 0.5)
        x = np.ones((2, 2))
        a = project(p, x, NoiseModel(0.5, seed=1), 0)
        b = project(p, x, NoiseModel(0.5, seed=2), 0)
        assert a != b


class TestMeasureBucket:
    def test_all_ones_signed(self):
        scene = SceneImage(np.ones((4, 8)), RangeTag.SIGNED)
        value = measure_bucket(np.ones((4, 8)), scene, NoiseModel())
        assert abs(value - 32.0) < 1e-12

    def test_four_projection_oracle(self):
        rng = np.random.default_rng(4)
        noise = NoiseModel(0.0, 0)
        for _ in range(200):
            pattern = rng.uniform(-1.0, 1.0, (8, 8))
            x = rng.uniform(-1.0, 1.0, (8, 8))
            scene = SceneImage(x, RangeTag.SIGNED)
            assert abs(measure_bucket(pattern, scene, noise) - np.sum(pattern * x)) < 1e-12

    def test_two_projection_oracle(self):
        rng = np.random.default_rng(5)
        noise = NoiseModel(0.0, 0)
        for _ in range(200):
            pattern = rng.uniform(-1.0, 1.0, (8, 8))
            x = rng.uniform(0.0, 1.0, (8, 8))
            scene = SceneImage(x, RangeTag.REFLECTANCE)
            assert abs(measure_bucket(pattern, scene, noise) - np.sum(pattern * x)) < 1e-12

    def test_complex_pattern_rejected(self):
        scene = SceneImage(np.ones((2, 2)), RangeTag.SIGNED)
        with pytest.raises(UnsupportedPatternError):
            measure_bucket(np.ones((2, 2)) * (1 + 0j), scene, NoiseModel())

    def test_four_projection_noise_variance(self):
        # Each of the four projections adds N(0, sigma^2), so the combined
        # variance is 4 sigma^2.
        sigma = 0.1
        scene = SceneImage(np.zeros((4, 4)), RangeTag.SIGNED)
        pattern = np.zeros((4, 4))
        trials = 10_000
        samples = [
            measure_bucket(pattern, scene, NoiseModel(sigma, seed=6), base_index=i)
            for i in range(trials)
        ]
        assert abs(np.var(samples) / (4 * sigma**2) - 1.0) < 0.10

    def test_two_projection_noise_variance(self):
        sigma = 0.1
        scene = SceneImage(np.zeros((4, 4)), RangeTag.REFLECTANCE)
        pattern = np.zeros((4, 4))
        trials = 10_000
        samples = [
            measure_bucket(pattern, scene, NoiseModel(sigma, seed=7), base_index=i)
            for i in range(trials)
        ]
        assert abs(np.var(samples) / (2 * sigma**2) - 1.0) < 0.10


class TestAcquire:
    @pytest.mark.parametrize("left_kind", KINDS)
    @pytest.mark.parametrize("right_kind", KINDS)
    def test_matches_forward_model(self, left_kind, right_kind):
        spec = HybridSpec.pair(left_kind, 8, right_kind, 4)
        rng = np.random.default_rng(8)
        x = rng.uniform(-1.0, 1.0, (8, 4))
        scene = SceneImage(x, RangeTag.SIGNED)
        buckets = acquire(spec, scene, NoiseModel(0.0, 0))
        left, right = compose_chain(spec)
        oracle = left.entries @ x @ right.entries.T
        assert np.max(np.abs(buckets.values - oracle)) < 1e-10

    def test_truncated_matches_forward_model(self):
        spec = HybridSpec.pair("haar", 16, "dct", 8, left_kept=11, right_kept=5)
        rng = np.random.default_rng(9)
        x = rng.uniform(0.0, 1.0, (16, 8))
        scene = SceneImage(x, RangeTag.REFLECTANCE)
        buckets = acquire(spec, scene, NoiseModel(0.0, 0))
        assert buckets.values.shape == (11, 5)
        left, right = compose_chain(spec)
        oracle = left.entries @ x @ right.entries.T
        assert np.max(np.abs(buckets.values - oracle)) < 1e-10

    def test_zero_scene(self):
        spec = HybridSpec.pair("hadamard", 4, "hadamard", 4)
        scene = SceneImage(np.zeros((4, 4)), RangeTag.SIGNED)
        buckets = acquire(spec, scene, NoiseModel(0.0, 0))
        assert np.array_equal(buckets.values, np.zeros((4, 4)))

    def test_separable_scene_single_unit_peak(self):
        # Unscaled outer product of factor rows lights up exactly one bucket
        # with value 1.
        from hybridgi import build_hadamard, pattern as make_pattern

        left = build_hadamard(3)
        scene = SceneImage(make_pattern(left, left, 3, 5), RangeTag.SIGNED)
        spec = HybridSpec.pair("hadamard", 8, "hadamard", 8)
        buckets = acquire(spec, scene, NoiseModel(0.0, 0)).values
        assert abs(buckets[3, 5] - 1.0) < 1e-12
        masked = buckets.copy()
        masked[3, 5] = 0.0
        assert np.max(np.abs(masked)) < 1e-12

    def test_dimension_mismatch(self):
        spec = HybridSpec.pair("hadamard", 8, "dct", 4)
        scene = SceneImage(np.zeros((4, 8)), RangeTag.SIGNED)
        with pytest.raises(ShapeError):
            acquire(spec, scene, NoiseModel())

    def test_out_of_range_scene(self):
        spec = HybridSpec.pair("hadamard", 2, "hadamard", 2)
        scene = SceneImage(np.full((2, 2), 1.5), RangeTag.SIGNED)
        with pytest.raises(PatternRangeError):
            acquire(spec, scene, NoiseModel())

    def test_dft_rejected_by_physical_path(self):
        spec = HybridSpec.pair("dft", 4, "dct", 4)
        scene = SceneImage(np.zeros((4, 4)), RangeTag.SIGNED)
        with pytest.raises(UnsupportedPatternError):
            acquire(spec, scene, NoiseModel())

    def test_noisy_acquisition_bit_identical(self):
        spec = HybridSpec.pair("haar", 8, "hadamard", 8)
        rng = np.random.default_rng(10)
        scene = SceneImage(rng.uniform(0, 1, (8, 8)), RangeTag.REFLECTANCE)
        noise = NoiseModel(0.05, seed=1234)
        first = acquire(spec, scene, noise)
        second = acquire(spec, scene, noise)
        assert np.array_equal(first.values, second.values)

    def test_metadata_carried(self):
        spec = HybridSpec.pair("hadamard", 4, "haar", 4)
        scene = separable_object(
            compose_chain(spec)[0], compose_chain(spec)[1], 0, 0
        )
        buckets = acquire(spec, scene, NoiseModel(0.02, seed=5))
        assert buckets.spec == spec
        assert buckets.noise_sigma == 0.02
        assert buckets.seed == 5


class TestAcquireIdeal:
    def test_matches_physical_at_zero_sigma(self):
        spec = HybridSpec.pair("dct", 8, "haar", 8)
        rng = np.random.default_rng(12)
        scene = SceneImage(rng.uniform(-1, 1, (8, 8)), RangeTag.SIGNED)
        physical = acquire(spec, scene, NoiseModel(0.0, 0))
        ideal = acquire_ideal(spec, scene)
        assert np.max(np.abs(physical.values - ideal.values)) < 1e-10

    def test_supports_dft(self):
        spec = HybridSpec.pair("dft", 4, "dft", 4)
        rng = np.random.default_rng(13)
        scene = SceneImage(rng.uniform(-1, 1, (4, 4)), RangeTag.SIGNED)
        buckets = acquire_ideal(spec, scene)
        assert np.iscomplexobj(buckets.values)


class TestModels:
    def test_noise_model_validation(self):
        with pytest.raises(ParameterError):
            NoiseModel(-0.1, 0)
        with pytest.raises(ParameterError):
            NoiseModel(0.0, -1)

    def test_scene_validation(self):
        with pytest.raises(ShapeError):
            SceneImage(np.zeros(4), RangeTag.SIGNED)
        scene = SceneImage(np.full((2, 3), 2.0), RangeTag.SIGNED)
        with pytest.raises(PatternRangeError):
            scene.assert_in_range()

    def test_range_tags(self):
        assert RangeTag.REFLECTANCE.bounds == (0.0, 1.0)
        assert RangeTag.SIGNED.bounds == (-1.0, 1.0)
        assert RangeTag.SIGNED.width == 2.0
