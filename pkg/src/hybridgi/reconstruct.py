"""Image recovery by inverse orthogonal transforms.

All recovery here is plain transform inversion: conjugate-transposed left
factors, untransposed right factors. Under truncation the result is the
orthogonal projection of the true image onto the kept row subspaces.
Reconstructed values are not clipped to the object's declared range;
clipping only happens at display export.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError
from .measurement import (
    HybridSpec,
    MeasurementMatrix,
    TruncatedTransform,
    compose_chain,
)
from .simulator import BucketSignals, RangeTag, SceneImage
from .transforms import TransformMatrix


@dataclass(frozen=True)
class ReconstructionResult:
    """Recovered image plus a forward-model residual diagnostic.

    residual_norm is the Frobenius norm of Y - L @ X' @ R^H over the kept
    rows, so it stays well-defined under truncation; at sigma = 0 and full
    sampling it is zero to rounding.
    """

    image: SceneImage
    spec: HybridSpec | None
    residual_norm: float


def _bucket_values(y) -> np.ndarray:
    return np.asarray(getattr(y, "values", y))


def _finish(
    x: np.ndarray,
    y: np.ndarray,
    left_entries: np.ndarray,
    right_entries: np.ndarray,
    spec: HybridSpec | None,
    range_tag: RangeTag,
) -> ReconstructionResult:
    residual = float(
        np.linalg.norm(y - left_entries @ x @ right_entries.conj().T)
    )
    image = SceneImage(np.real(x) if np.iscomplexobj(x) else x, range_tag)
    return ReconstructionResult(image, spec, residual)


def reconstruct_1d(a, y) -> np.ndarray:
    """One-dimensional recovery x' = A^H @ y."""
    entries = a.entries if isinstance(a, MeasurementMatrix) else np.asarray(a)
    y = np.asarray(y)
    if y.ndim != 1 or y.size != entries.shape[0]:
        raise ShapeError(
            f"bucket vector of length {y.size} does not match "
            f"{entries.shape[0]} measurement rows"
        )
    return entries.conj().T @ y


def reconstruct_2d(
    left: TransformMatrix,
    right: TransformMatrix,
    y,
    range_tag: RangeTag = RangeTag.SIGNED,
) -> ReconstructionResult:
    """Full-sampling recovery X' = L^H @ Y @ R.

    With noiseless buckets from orthonormal factors this reproduces the
    object exactly. Complex factors yield a real image (the real part);
    any complex residue shows up in residual_norm.
    """
    values = _bucket_values(y)
    if values.shape != (left.order, right.order):
        raise ShapeError(
            f"bucket shape {values.shape} does not match orders "
            f"{left.order}x{right.order}"
        )
    x = left.entries.conj().T @ values @ right.entries
    spec = y.spec if isinstance(y, BucketSignals) else None
    return _finish(x, values, left.entries, right.entries, spec, range_tag)


def reconstruct_sub(
    left_t: TruncatedTransform,
    right_t: TruncatedTransform,
    y,
    range_tag: RangeTag = RangeTag.SIGNED,
) -> ReconstructionResult:
    """Sub-Nyquist recovery X' = L_t^H @ Y @ R_t from truncated factors.

    The output has the full image dimensions. For noiseless buckets it
    equals the projection L_t^T @ L_t @ X @ R_t^T @ R_t of the true image.
    """
    values = _bucket_values(y)
    if values.shape != (left_t.kept_rows, right_t.kept_rows):
        raise ShapeError(
            f"bucket shape {values.shape} does not match kept rows "
            f"{left_t.kept_rows}x{right_t.kept_rows}"
        )
    x = left_t.entries.conj().T @ values @ right_t.entries
    spec = y.spec if isinstance(y, BucketSignals) else None
    return _finish(x, values, left_t.entries, right_t.entries, spec, range_tag)


def reconstruct_chain(
    spec: HybridSpec, y, range_tag: RangeTag = RangeTag.SIGNED
) -> ReconstructionResult:
    """Invert a chained forward model via the composed effective factors."""
    left, right = compose_chain(spec)
    values = _bucket_values(y)
    if values.shape != (left.kept_rows, right.kept_rows):
        raise ShapeError(
            f"bucket shape {values.shape} does not match spec kept rows "
            f"{left.kept_rows}x{right.kept_rows}"
        )
    x = left.entries.conj().T @ values @ right.entries
    return _finish(x, values, left.entries, right.entries, spec, range_tag)
