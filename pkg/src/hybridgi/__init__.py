"""Desk-scale computational ghost imaging with hybrid orthonormal transforms.

Measurement matrices are Kronecker products of per-axis transform factors
(Hadamard, DCT-II, Haar, DFT, or chains thereof). The package simulates the
projector / bucket-detector acquisition, reconstructs images by inverse
transforms under full and sub-Nyquist sampling, and scores the results.
"""

from .errors import (
    ChainCompositionError,
    ConfigError,
    DegenerateBinarizationError,
    DegeneratePatternError,
    HybridGIError,
    ImageParseError,
    InvalidOrderError,
    ParameterError,
    PatternRangeError,
    ResourceLimitError,
    ShapeError,
    UnsupportedPatternError,
)
from .measurement import (
    ChainEntry,
    FootprintReport,
    HybridSpec,
    MeasurementMatrix,
    TruncatedTransform,
    compose_chain,
    footprint_report,
    kron,
    pattern,
    truncate,
    unvec,
    vec_rows,
)
from .metrics import (
    QualityReport,
    count_significant,
    mse,
    psnr,
    quality_report,
    ssim,
)
from .reconstruct import (
    ReconstructionResult,
    reconstruct_1d,
    reconstruct_2d,
    reconstruct_chain,
    reconstruct_sub,
)
from .scenes import (
    Orientation,
    StripeSpec,
    load_image,
    save_image,
    separable_object,
    single_peak_stripe_search,
    staggered_stripes,
    windmill,
)
from .simulator import (
    BucketSignals,
    NoiseModel,
    RangeTag,
    SceneImage,
    acquire,
    acquire_ideal,
    measure_bucket,
    normalize_pattern,
    project,
    split_pattern,
)
from .transforms import (
    TransformKind,
    TransformMatrix,
    build_dct,
    build_dft,
    build_hadamard,
    build_haar,
    build_identity,
    build_transform,
    haar_raw_rows,
    orthonormality_defect,
)

__version__ = "0.1.0"

__all__ = [
    "BucketSignals",
    "ChainCompositionError",
    "ChainEntry",
    "ConfigError",
    "DegenerateBinarizationError",
    "DegeneratePatternError",
    "FootprintReport",
    "HybridGIError",
    "HybridSpec",
    "ImageParseError",
    "InvalidOrderError",
    "MeasurementMatrix",
    "NoiseModel",
    "Orientation",
    "ParameterError",
    "PatternRangeError",
    "QualityReport",
    "RangeTag",
    "ReconstructionResult",
    "ResourceLimitError",
    "SceneImage",
    "ShapeError",
    "StripeSpec",
    "TransformKind",
    "TransformMatrix",
    "TruncatedTransform",
    "UnsupportedPatternError",
    "acquire",
    "acquire_ideal",
    "build_dct",
    "build_dft",
    "build_hadamard",
    "build_haar",
    "build_identity",
    "build_transform",
    "compose_chain",
    "count_significant",
    "footprint_report",
    "haar_raw_rows",
    "kron",
    "load_image",
    "measure_bucket",
    "mse",
    "normalize_pattern",
    "orthonormality_defect",
    "pattern",
    "project",
    "psnr",
    "quality_report",
    "reconstruct_1d",
    "reconstruct_2d",
    "reconstruct_chain",
    "reconstruct_sub",
    "save_image",
    "separable_object",
    "single_peak_stripe_search",
    "split_pattern",
    "ssim",
    "staggered_stripes",
    "truncate",
    "unvec",
    "vec_rows",
    "windmill",
]
