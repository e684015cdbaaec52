"""Orthonormal transform matrix constructors.

Four dense transform families are supported: Walsh-Hadamard (Sylvester
recursion, scaled orthonormal), DCT-II, Haar (constant row plus localized
step-function rows, each row unit-normalized), and the unitary DFT. All
builders emit row-orthonormal matrices: M @ M^H = I to better than 1e-10,
where ^H is the conjugate transpose (plain transpose for the real kinds).

Orders are capped at 4096 (2**12). Dense storage above that is rejected
rather than silently slow.

Indexing is 0-based everywhere in this package.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidOrderError

MAX_EXPONENT = 12
MAX_ORDER = 1 << MAX_EXPONENT


class TransformKind(str, Enum):
    HADAMARD = "hadamard"
    DCT = "dct"
    HAAR = "haar"
    DFT = "dft"
    IDENTITY = "identity"
    # Product of a multi-factor chain; see measurement.compose_chain.
    COMPOSITE = "composite"


@dataclass(frozen=True)
class TransformMatrix:
    """A square orthonormal matrix with provenance metadata.

    Attributes
    ----------
    kind : TransformKind
        Which construction produced the matrix.
    order : int
        Side length (the matrix is order x order).
    entries : np.ndarray
        Dense float64 (complex128 for DFT) array, marked read-only.
    normalized : bool
        Always True for matrices emitted by the builders here.
    """

    kind: TransformKind
    order: int
    entries: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.entries)


def _check_exponent(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_EXPONENT:
        raise InvalidOrderError(
            f"exponent must be an integer in [1, {MAX_EXPONENT}], got {n!r}"
        )


def _check_order(order: int) -> None:
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise InvalidOrderError(f"order must be a positive integer, got {order!r}")
    if order > MAX_ORDER:
        raise InvalidOrderError(f"order {order} exceeds the dense cap {MAX_ORDER}")


def build_hadamard(n: int) -> TransformMatrix:
    """Sylvester-recursive Walsh-Hadamard matrix of order 2**n.

    Each recursion level doubles the order and applies a 1/sqrt(2)
    prefactor, so every entry of the result is +-2**(-n/2) and the rows
    are orthonormal by construction.
    """
    _check_exponent(n)
    h = np.array([[1.0]])
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    for _ in range(n):
        h = np.block([[h, h], [h, -h]]) * inv_sqrt2
    return TransformMatrix(TransformKind.HADAMARD, 1 << n, h)


def build_dct(order: int) -> TransformMatrix:
    """Orthonormal DCT-II matrix of the given order.

    Entry (r, c) is coeff(r) * cos(r * pi * (c + 0.5) / order) with
    coeff(0) = sqrt(1/order) and coeff(r>0) = sqrt(2/order). Row 0 is the
    constant vector; every later row is zero-mean.
    """
    _check_order(order)
    r = np.arange(order, dtype=np.float64)
    coeff = np.full(order, math.sqrt(2.0 / order))
    coeff[0] = math.sqrt(1.0 / order)
    entries = coeff[:, None] * np.cos(np.outer(r, r + 0.5) * (np.pi / order))
    return TransformMatrix(TransformKind.DCT, order, entries)


def haar_raw_rows(n: int) -> np.ndarray:
    """Unnormalized Haar basis rows for order 2**n, values in {-1, 0, 1}.

    Row 0 is the all-ones constant row. The remaining rows are the
    localized step functions, ordered by increasing level j (support
    width 2**(n-j)) and, within a level, by increasing translation k.
    Level j contributes exactly 2**j rows, for a total of 2**n.
    """
    _check_exponent(n)
    order = 1 << n
    rows = np.zeros((order, order))
    rows[0] = 1.0
    r = 1
    for level in range(n):
        support = order >> level
        half = support >> 1
        for k in range(1 << level):
            start = k * support
            rows[r, start : start + half] = 1.0
            rows[r, start + half : start + support] = -1.0
            r += 1
    return rows


def build_haar(n: int) -> TransformMatrix:
    """Orthonormal Haar matrix of order 2**n.

    Each raw row from :func:`haar_raw_rows` is divided by its Euclidean
    norm; the raw rows have unequal norms (sqrt of the support width), so
    this per-row scaling is what makes H @ H.T = I hold exactly.
    """
    rows = haar_raw_rows(n)
    norms = np.linalg.norm(rows, axis=1, keepdims=True)
    return TransformMatrix(TransformKind.HAAR, 1 << n, rows / norms)


def build_dft(order: int) -> TransformMatrix:
    """Unitary DFT matrix: entry (r, c) = exp(2j*pi*r*c/order) / sqrt(order).

    Complex valued for order >= 3. The acquisition simulator rejects
    complex patterns, so DFT factors are restricted to the ideal math path.
    """
    _check_order(order)
    idx = np.arange(order)
    entries = np.exp((2j * np.pi / order) * np.outer(idx, idx)) / math.sqrt(order)
    return TransformMatrix(TransformKind.DFT, order, entries)


def build_identity(order: int) -> TransformMatrix:
    """Identity matrix, used to pad unequal-length transform chains."""
    _check_order(order)
    return TransformMatrix(TransformKind.IDENTITY, order, np.eye(order))


def build_transform(kind: TransformKind | str, order: int) -> TransformMatrix:
    """Build a transform of the given kind from its order.

    Hadamard and Haar orders must be powers of two in [2, 4096]; the other
    kinds accept any order in [1, 4096].
    """
    try:
        kind = TransformKind(kind)
    except ValueError:
        raise InvalidOrderError(f"unknown transform kind {kind!r}") from None
    if kind in (TransformKind.HADAMARD, TransformKind.HAAR):
        _check_order(order)
        n = int(order).bit_length() - 1
        if (1 << n) != order or n < 1:
            raise InvalidOrderError(
                f"{kind.value} order must be a power of two >= 2, got {order}"
            )
        return build_hadamard(n) if kind is TransformKind.HADAMARD else build_haar(n)
    if kind is TransformKind.DCT:
        return build_dct(order)
    if kind is TransformKind.DFT:
        return build_dft(order)
    if kind is TransformKind.IDENTITY:
        return build_identity(order)
    raise InvalidOrderError(f"cannot build a transform of kind {kind.value!r}")


def _as_entries(t) -> np.ndarray:
    entries = getattr(t, "entries", t)
    return np.asarray(entries)


def orthonormality_defect(t) -> float:
    """Max elementwise |T @ T^H - I| over the rows of ``t``.

    Accepts a TransformMatrix, a TruncatedTransform, a MeasurementMatrix,
    or a plain 2-D array. Zero (to rounding) means the rows form an
    orthonormal set.
    """
    entries = _as_entries(t)
    gram = entries @ entries.conj().T
    return float(np.max(np.abs(gram - np.eye(entries.shape[0]))))
