"""Kronecker-structured measurement matrices and hybrid transform chains.

A measurement is described by a left factor L (kept_rows_L x M) acting on
image rows and a right factor R (kept_rows_R x N) acting on image columns.
The equivalent one-dimensional measurement matrix is A = kron(L, R): with
row-major vectorization, A @ vec_rows(X) == vec_rows(L @ X @ R.T).

Index maps (0-based): measurement k = m * kept_rows_R + n pairs left row m
with right row n; image column l = i * N + j addresses pixel (i, j).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ChainCompositionError, ResourceLimitError, ShapeError
from .transforms import TransformKind, TransformMatrix, build_transform

KRON_ENTRY_CAP = 1 << 28

_KIND_SHORT = {
    TransformKind.HADAMARD: "had",
    TransformKind.DCT: "dct",
    TransformKind.HAAR: "haar",
    TransformKind.DFT: "dft",
    TransformKind.IDENTITY: "id",
    TransformKind.COMPOSITE: "mix",
}


@dataclass(frozen=True)
class TruncatedTransform:
    """The first ``kept_rows`` rows of a transform matrix, in natural order.

    With kept_rows == order this is the full matrix. The kept rows stay
    orthonormal among themselves, which is what makes sub-Nyquist recovery
    an orthogonal projection.
    """

    source: TransformMatrix
    kept_rows: int
    entries: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not 1 <= self.kept_rows <= self.source.order:
            raise ShapeError(
                f"kept_rows must be in [1, {self.source.order}], got {self.kept_rows}"
            )
        object.__setattr__(self, "entries", self.source.entries[: self.kept_rows])

    @property
    def order(self) -> int:
        return self.source.order

    @property
    def is_complex(self) -> bool:
        return self.source.is_complex

    @property
    def label(self) -> str:
        return f"{_KIND_SHORT[self.source.kind]}{self.kept_rows}/{self.order}"

    @classmethod
    def full(cls, source: TransformMatrix) -> "TruncatedTransform":
        return cls(source, source.order)


def truncate(source: TransformMatrix, kept_rows: int) -> TruncatedTransform:
    """Keep the first ``kept_rows`` rows of ``source``."""
    return TruncatedTransform(source, kept_rows)


def _as_factor(t) -> TruncatedTransform:
    if isinstance(t, TruncatedTransform):
        return t
    if isinstance(t, TransformMatrix):
        return TruncatedTransform.full(t)
    raise ShapeError(f"expected a transform factor, got {type(t).__name__}")


@dataclass(frozen=True)
class MeasurementMatrix:
    """Dense Kronecker product of a left and a right factor."""

    entries: np.ndarray
    left_spec: str
    right_spec: str

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def row_count(self) -> int:
        return self.entries.shape[0]

    @property
    def col_count(self) -> int:
        return self.entries.shape[1]


@dataclass(frozen=True)
class ChainEntry:
    """One factor of a transform chain: kind, order, and optional truncation.

    ``kept_rows=None`` normalizes to the full order. Only the outermost
    factor of a chain (the last entry) may be truncated.
    """

    kind: TransformKind
    order: int
    kept_rows: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", TransformKind(self.kind))
        if self.kept_rows is None:
            object.__setattr__(self, "kept_rows", self.order)

    @property
    def kept(self) -> int:
        return self.kept_rows


@dataclass(frozen=True)
class HybridSpec:
    """One hybridization set: a left chain and a right chain of transforms.

    Entries are listed in application order: the first entry acts directly
    on the image, later entries act on the previous result. A single-entry
    chain on each side is the plain two-matrix measurement. When the two
    chains have different lengths the shorter side behaves as if padded
    with identity factors.
    """

    left_chain: tuple[ChainEntry, ...]
    right_chain: tuple[ChainEntry, ...]

    def __post_init__(self):
        object.__setattr__(self, "left_chain", tuple(self.left_chain))
        object.__setattr__(self, "right_chain", tuple(self.right_chain))
        for side, chain in (("left", self.left_chain), ("right", self.right_chain)):
            if not chain:
                raise ChainCompositionError(f"{side} chain must have at least one entry")
            orders = {entry.order for entry in chain}
            if len(orders) != 1:
                raise ChainCompositionError(
                    f"{side} chain factors must share one order, got {sorted(orders)}"
                )
            for entry in chain[:-1]:
                if entry.kept != entry.order:
                    raise ChainCompositionError(
                        f"{side} chain: only the outermost factor may be truncated"
                    )
            last = chain[-1]
            if not 1 <= last.kept <= last.order:
                raise ChainCompositionError(
                    f"{side} chain kept_rows must be in [1, {last.order}], got {last.kept}"
                )

    @classmethod
    def pair(
        cls,
        left_kind: TransformKind | str,
        left_order: int,
        right_kind: TransformKind | str,
        right_order: int,
        left_kept: int | None = None,
        right_kept: int | None = None,
    ) -> "HybridSpec":
        """The common two-matrix case: one factor per side."""
        return cls(
            (ChainEntry(TransformKind(left_kind), left_order, left_kept),),
            (ChainEntry(TransformKind(right_kind), right_order, right_kept),),
        )

    @property
    def left_order(self) -> int:
        return self.left_chain[0].order

    @property
    def right_order(self) -> int:
        return self.right_chain[0].order

    @property
    def left_kept(self) -> int:
        return self.left_chain[-1].kept

    @property
    def right_kept(self) -> int:
        return self.right_chain[-1].kept

    @property
    def sampling_rate(self) -> float:
        return (self.left_kept * self.right_kept) / (self.left_order * self.right_order)

    @property
    def label(self) -> str:
        def side(chain: tuple[ChainEntry, ...]) -> str:
            return "*".join(f"{_KIND_SHORT[e.kind]}{e.order}" for e in chain)

        return f"{side(self.left_chain)}-{side(self.right_chain)}"

    def to_dict(self) -> dict:
        def side(chain: tuple[ChainEntry, ...]) -> list[dict]:
            return [
                {"kind": e.kind.value, "order": e.order, "kept_rows": e.kept}
                for e in chain
            ]

        return {"left": side(self.left_chain), "right": side(self.right_chain)}

    @classmethod
    def from_dict(cls, data: dict) -> "HybridSpec":
        def side(entries: list[dict]) -> tuple[ChainEntry, ...]:
            return tuple(
                ChainEntry(
                    TransformKind(e["kind"]), int(e["order"]), e.get("kept_rows")
                )
                for e in entries
            )

        return cls(side(data["left"]), side(data["right"]))


def vec_rows(x) -> np.ndarray:
    """Stack the rows of a 2-D array into one vector (row-major order)."""
    values = np.asarray(getattr(x, "values", x))
    if values.ndim != 2:
        raise ShapeError(f"expected a 2-D array, got shape {values.shape}")
    return values.reshape(-1)


def unvec(v, height: int, width: int) -> np.ndarray:
    """Inverse of vec_rows: reshape a length height*width vector to 2-D."""
    v = np.asarray(v)
    if v.ndim != 1 or v.size != height * width:
        raise ShapeError(
            f"vector of length {v.size} cannot be reshaped to {height}x{width}"
        )
    return v.reshape(height, width)


def kron(left, right) -> MeasurementMatrix:
    """Dense measurement matrix A = kron(L, R).

    A[k, l] = L[m, i] * R[n, j] with k = m * rows(R) + n and l = i * N + j.
    For any X: A @ vec_rows(X) == vec_rows(L @ X @ R.T). Untruncated
    orthonormal factors give an orthonormal A.
    """
    left = _as_factor(left)
    right = _as_factor(right)
    n_entries = (
        left.kept_rows * right.kept_rows * left.order * right.order
    )
    if n_entries > KRON_ENTRY_CAP:
        raise ResourceLimitError(
            f"kron would materialize {n_entries} entries (cap {KRON_ENTRY_CAP})"
        )
    return MeasurementMatrix(
        np.kron(left.entries, right.entries), left.label, right.label
    )


def pattern(left, right, m: int, n: int) -> np.ndarray:
    """Projection pattern for measurement (m, n): outer(L row m, R row n).

    Equals row m * rows(R) + n of kron(L, R) reshaped to the image grid.
    """
    left = _as_factor(left)
    right = _as_factor(right)
    if not 0 <= m < left.kept_rows:
        raise IndexError(f"left row {m} out of range [0, {left.kept_rows})")
    if not 0 <= n < right.kept_rows:
        raise IndexError(f"right row {n} out of range [0, {right.kept_rows})")
    return np.outer(left.entries[m], right.entries[n])


def compose_chain(spec: HybridSpec) -> tuple[TruncatedTransform, TruncatedTransform]:
    """Collapse each side's chain into one effective truncated factor.

    The first chain entry is applied first, so the effective matrix is the
    reversed product of the factors. Truncation keeps the first kept_rows
    rows of that product, which is the same as truncating the outermost
    factor. Single-entry chains come back unchanged.
    """

    def side(chain: tuple[ChainEntry, ...]) -> TruncatedTransform:
        factors = [build_transform(e.kind, e.order) for e in chain]
        if len(factors) == 1:
            return truncate(factors[0], chain[-1].kept)
        product = factors[0].entries
        for factor in factors[1:]:
            product = factor.entries @ product
        composite = TransformMatrix(
            TransformKind.COMPOSITE, chain[0].order, np.asarray(product)
        )
        return truncate(composite, chain[-1].kept)

    return side(spec.left_chain), side(spec.right_chain)


@dataclass(frozen=True)
class FootprintReport:
    """Element counts for the 1-D matrix route vs the two 2-D factors."""

    one_d_matrix_entries: int
    two_d_left_entries: int
    two_d_right_entries: int


def footprint_report(height: int, width: int) -> FootprintReport:
    """RAM footprint comparison for a height x width image.

    The 1-D route stores an (M*N)^2 measurement matrix; the factored route
    stores one width^2 and one height^2 matrix. Reported with the larger
    (width-side) factor first.
    """
    if height < 1 or width < 1:
        raise ShapeError(f"image dimensions must be positive, got {height}x{width}")
    return FootprintReport(
        one_d_matrix_entries=(height * width) ** 2,
        two_d_left_entries=width**2,
        two_d_right_entries=height**2,
    )
