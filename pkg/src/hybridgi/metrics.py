"""Reconstruction quality metrics and bucket-signal sparsity counting."""

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import ParameterError, ShapeError
from .simulator import RangeTag, SceneImage

SSIM_WINDOW = 8

Roi = tuple[int, int, int, int]  # (top, left, height, width)


def _as_array(x) -> np.ndarray:
    return np.asarray(getattr(x, "values", x), dtype=np.float64)


def _apply_roi(a: np.ndarray, roi: Roi | None) -> np.ndarray:
    if roi is None:
        return a
    top, left, height, width = roi
    if height < 1 or width < 1:
        raise ShapeError(f"roi {roi} has empty extent")
    if top < 0 or left < 0 or top + height > a.shape[0] or left + width > a.shape[1]:
        raise ShapeError(f"roi {roi} out of bounds for shape {a.shape}")
    return a[top : top + height, left : left + width]


def _pair(a, b, roi: Roi | None) -> tuple[np.ndarray, np.ndarray]:
    a, b = _as_array(a), _as_array(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    return _apply_roi(a, roi), _apply_roi(b, roi)


def mse(a, b, roi: Roi | None = None) -> float:
    """Mean squared difference over the roi (whole image when absent)."""
    a, b = _pair(a, b, roi)
    return float(np.mean((a - b) ** 2))


def psnr(reference, test, peak: float, roi: Roi | None = None) -> float:
    """10 * log10(peak^2 / mse) in dB; +inf when the images match exactly."""
    if peak <= 0:
        raise ParameterError(f"peak must be positive, got {peak}")
    err = mse(reference, test, roi)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(peak * peak / err)


def ssim(reference, test, peak: float, roi: Roi | None = None) -> float:
    """Mean structural similarity over all interior 8x8 windows, stride 1.

    Uniform windows with the usual stabilizers c1 = (0.01 * peak)^2 and
    c2 = (0.03 * peak)^2; window statistics use the unbiased (n - 1)
    normalization. The compared region must be at least 8x8.
    """
    if peak <= 0:
        raise ParameterError(f"peak must be positive, got {peak}")
    a, b = _pair(reference, test, roi)
    if a.shape[0] < SSIM_WINDOW or a.shape[1] < SSIM_WINDOW:
        raise ShapeError(
            f"region {a.shape} smaller than the {SSIM_WINDOW}x{SSIM_WINDOW} ssim window"
        )
    win_a = sliding_window_view(a, (SSIM_WINDOW, SSIM_WINDOW))
    win_b = sliding_window_view(b, (SSIM_WINDOW, SSIM_WINDOW))
    n = SSIM_WINDOW * SSIM_WINDOW
    mu_a = win_a.mean(axis=(-2, -1))
    mu_b = win_b.mean(axis=(-2, -1))
    dev_a = win_a - mu_a[..., None, None]
    dev_b = win_b - mu_b[..., None, None]
    var_a = np.sum(dev_a**2, axis=(-2, -1)) / (n - 1)
    var_b = np.sum(dev_b**2, axis=(-2, -1)) / (n - 1)
    cov = np.sum(dev_a * dev_b, axis=(-2, -1)) / (n - 1)
    c1 = (0.01 * peak) ** 2
    c2 = (0.03 * peak) ** 2
    per_window = ((2 * mu_a * mu_b + c1) * (2 * cov + c2)) / (
        (mu_a**2 + mu_b**2 + c1) * (var_a + var_b + c2)
    )
    return float(per_window.mean())


def count_significant(y, rel_tol: float) -> tuple[int, list[tuple[int, int]]]:
    """Count bucket entries above rel_tol times the max magnitude.

    Returns (count, positions) with positions sorted by descending
    magnitude. An all-zero matrix counts zero entries. The count is
    invariant under global rescaling of the signal.
    """
    if rel_tol <= 0:
        raise ParameterError(f"rel_tol must be positive, got {rel_tol}")
    values = np.abs(np.asarray(getattr(y, "values", y)))
    if values.size == 0:
        raise ShapeError("empty bucket matrix")
    peak = values.max()
    if peak == 0.0:
        return 0, []
    rows, cols = np.nonzero(values > rel_tol * peak)
    magnitudes = values[rows, cols]
    order = np.argsort(-magnitudes, kind="stable")
    positions = [(int(rows[i]), int(cols[i])) for i in order]
    return len(positions), positions


@dataclass(frozen=True)
class QualityReport:
    """PSNR / SSIM / MSE summary, optionally with a sparsity count and roi."""

    psnr_db: float
    ssim: float
    mse: float
    significant_count: int | None = None
    roi: Roi | None = None

    def to_dict(self) -> dict:
        return {
            "psnr_db": self.psnr_db,
            "ssim": self.ssim,
            "mse": self.mse,
            "significant_count": self.significant_count,
            "roi": list(self.roi) if self.roi is not None else None,
        }


def quality_report(
    reference,
    test,
    peak: float | None = None,
    roi: Roi | None = None,
    buckets=None,
    rel_tol: float = 1e-6,
) -> QualityReport:
    """Bundle psnr/ssim/mse (and bucket sparsity when buckets are given).

    When peak is omitted it defaults to the declared range width of the
    reference scene (1.0 for reflectance, 2.0 for signed).
    """
    if peak is None:
        if isinstance(reference, SceneImage):
            peak = RangeTag(reference.range_tag).width
        else:
            raise ParameterError("peak is required when reference is a bare array")
    count = None
    if buckets is not None:
        count, _ = count_significant(buckets, rel_tol)
    return QualityReport(
        psnr_db=psnr(reference, test, peak, roi),
        ssim=ssim(reference, test, peak, roi),
        mse=mse(reference, test, roi),
        significant_count=count,
        roi=roi,
    )
