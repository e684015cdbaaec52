"""File format tests: PGM parsing, CSV precision, bucket sidecars."""

import numpy as np
import pytest

from hybridgi import (
    BucketSignals,
    HybridSpec,
    ImageParseError,
    ResourceLimitError,
)
from hybridgi import fileio


class TestPgm:
    def test_header_format(self, tmp_path):
        path = tmp_path / "out.pgm"
        fileio.write_pgm(path, np.arange(6, dtype=np.uint8).reshape(2, 3))
        data = path.read_bytes()
        assert data.startswith(b"P5\n3 2\n255\n")
        assert data[len(b"P5\n3 2\n255\n") :] == bytes(range(6))

    def test_roundtrip(self, tmp_path):
        path = tmp_path / "out.pgm"
        raw = np.random.default_rng(0).integers(0, 256, (5, 7), dtype=np.uint8)
        fileio.write_pgm(path, raw)
        assert np.array_equal(fileio.read_pgm(path), raw)

    def test_comments_in_header(self, tmp_path):
        path = tmp_path / "commented.pgm"
        path.write_bytes(b"P5\n# a comment\n2 2\n# another\n255\n\x00\x01\x02\x03")
        assert np.array_equal(fileio.read_pgm(path), [[0, 1], [2, 3]])

    def test_bad_magic_offset(self, tmp_path):
        path = tmp_path / "bad.pgm"
        path.write_bytes(b"P2\n2 2\n255\n....")
        with pytest.raises(ImageParseError) as err:
            fileio.read_pgm(path)
        assert err.value.offset == 0

    def test_truncated_raster(self, tmp_path):
        path = tmp_path / "short.pgm"
        path.write_bytes(b"P5\n4 4\n255\n\x00\x01")
        with pytest.raises(ImageParseError) as err:
            fileio.read_pgm(path)
        assert err.value.offset is not None

    def test_unsupported_maxval(self, tmp_path):
        path = tmp_path / "deep.pgm"
        path.write_bytes(b"P5\n1 1\n65535\n\x00\x00")
        with pytest.raises(ImageParseError):
            fileio.read_pgm(path)

    def test_nonnumeric_dimension(self, tmp_path):
        path = tmp_path / "dims.pgm"
        path.write_bytes(b"P5\nx 2\n255\n\x00\x00")
        with pytest.raises(ImageParseError):
            fileio.read_pgm(path)

    def test_pixel_cap(self, tmp_path):
        path = tmp_path / "huge.pgm"
        path.write_bytes(b"P5\n100000 100000\n255\n")
        with pytest.raises(ResourceLimitError):
            fileio.read_pgm(path)


class TestCsvMatrix:
    def test_full_precision_roundtrip(self, tmp_path):
        path = tmp_path / "m.csv"
        rng = np.random.default_rng(1)
        matrix = rng.normal(scale=1e-7, size=(4, 6)) + rng.normal(size=(4, 6))
        fileio.write_csv_matrix(path, matrix)
        assert np.array_equal(fileio.read_csv_matrix(path), matrix)

    def test_complex_roundtrip(self, tmp_path):
        path = tmp_path / "c.csv"
        rng = np.random.default_rng(2)
        matrix = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        fileio.write_csv_matrix(path, matrix)
        assert np.array_equal(fileio.read_csv_matrix(path), matrix)

    def test_one_row_per_line(self, tmp_path):
        path = tmp_path / "m.csv"
        fileio.write_csv_matrix(path, np.eye(3))
        lines = path.read_text().strip().split("\n")
        assert len(lines) == 3
        assert lines[0].split(",")[0] == "1"

    def test_bad_token_offset(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1.0,2.0\n3.0,oops\n")
        with pytest.raises(ImageParseError) as err:
            fileio.read_csv_matrix(path)
        assert err.value.offset == len("1.0,2.0\n3.0,")

    def test_ragged_rows(self, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("1.0,2.0\n3.0\n")
        with pytest.raises(ImageParseError):
            fileio.read_csv_matrix(path)

    def test_empty(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("\n")
        with pytest.raises(ImageParseError):
            fileio.read_csv_matrix(path)


class TestBuckets:
    def test_roundtrip_with_sidecar(self, tmp_path):
        spec = HybridSpec.pair("hadamard", 8, "dct", 4, left_kept=5)
        values = np.random.default_rng(3).normal(size=(5, 4))
        buckets = BucketSignals(values, 0.25, 42, spec)
        path = tmp_path / "buckets.csv"
        fileio.write_buckets(path, buckets)
        assert fileio.sidecar_path(path).exists()
        loaded = fileio.read_buckets(path)
        assert np.array_equal(loaded.values, values)
        assert loaded.noise_sigma == 0.25
        assert loaded.seed == 42
        assert loaded.spec == spec
