"""Low-level file formats: binary PGM (P5), full-precision CSV, JSON sidecars.

CSV matrices are row-major, one matrix row per line, 17 significant digits
per value so float64 round-trips exactly. Complex values (ideal DFT bucket
signals) are written as Python complex literals like ``1.5+0.25j``.
"""

import json
from pathlib import Path

import numpy as np

from .errors import ImageParseError, ResourceLimitError

MAX_PIXELS = 1 << 26

_WHITESPACE = b" \t\r\n\v\f"


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # PNM tokens are separated by whitespace; '#' starts a comment to EOL.
    while pos < len(data):
        byte = data[pos : pos + 1]
        if byte == b"#":
            eol = data.find(b"\n", pos)
            pos = len(data) if eol < 0 else eol + 1
        elif byte in _WHITESPACE:
            pos += 1
        else:
            break
    if pos >= len(data):
        raise ImageParseError("unexpected end of PGM header", offset=pos)
    start = pos
    while pos < len(data) and data[pos : pos + 1] not in _WHITESPACE:
        pos += 1
    return data[start:pos], pos


def _int_token(data: bytes, pos: int, what: str) -> tuple[int, int]:
    token, end = _next_token(data, pos)
    if not token.isdigit():
        raise ImageParseError(f"bad {what} token {token!r}", offset=pos)
    return int(token), end


def read_pgm(path) -> np.ndarray:
    """Read a binary 8-bit PGM (P5, maxval 255) into a uint8 array."""
    data = Path(path).read_bytes()
    magic, pos = _next_token(data, 0)
    if magic != b"P5":
        raise ImageParseError(f"not a binary PGM (magic {magic!r})", offset=0)
    width, pos = _int_token(data, pos, "width")
    height, pos = _int_token(data, pos, "height")
    maxval, pos = _int_token(data, pos, "maxval")
    if width < 1 or height < 1:
        raise ImageParseError(f"bad dimensions {width}x{height}", offset=pos)
    if height * width > MAX_PIXELS:
        raise ResourceLimitError(
            f"{width}x{height} exceeds the {MAX_PIXELS}-pixel cap"
        )
    if maxval != 255:
        raise ImageParseError(f"only maxval 255 supported, got {maxval}", offset=pos)
    if pos >= len(data):
        raise ImageParseError("missing raster separator", offset=pos)
    pos += 1  # exactly one whitespace byte after maxval
    expected = height * width
    raster = data[pos : pos + expected]
    if len(raster) != expected:
        raise ImageParseError(
            f"raster holds {len(raster)} of {expected} bytes", offset=pos + len(raster)
        )
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width)


def write_pgm(path, values: np.ndarray) -> None:
    """Write a uint8 array as a binary PGM (P5, maxval 255)."""
    values = np.asarray(values, dtype=np.uint8)
    height, width = values.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + values.tobytes())


def _format_value(v) -> str:
    if isinstance(v, complex):
        return f"{v.real:.17g}{v.imag:+.17g}j"
    return f"{v:.17g}"


def write_csv_matrix(path, matrix: np.ndarray) -> None:
    """Write a 2-D matrix as CSV, one row per line, full precision."""
    matrix = np.asarray(matrix)
    lines = [
        ",".join(_format_value(v) for v in row.tolist()) for row in matrix
    ]
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv_matrix(path) -> np.ndarray:
    """Read a CSV matrix written by write_csv_matrix (real or complex)."""
    text = Path(path).read_text()
    rows = []
    offset = 0
    is_complex = False
    for line in text.split("\n"):
        stripped = line.strip()
        if stripped:
            row = []
            for token in stripped.split(","):
                token = token.strip()
                try:
                    if "j" in token:
                        row.append(complex(token))
                        is_complex = True
                    else:
                        row.append(float(token))
                except ValueError:
                    raise ImageParseError(
                        f"bad CSV value {token!r}", offset=offset + line.find(token)
                    ) from None
            rows.append(row)
        offset += len(line) + 1
    if not rows:
        raise ImageParseError("empty CSV matrix", offset=0)
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ImageParseError(f"ragged CSV rows (widths {sorted(widths)})", offset=0)
    return np.array(rows, dtype=np.complex128 if is_complex else np.float64)


def write_json(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_json(path) -> dict:
    return json.loads(Path(path).read_text())


def sidecar_path(buckets_path) -> Path:
    return Path(str(buckets_path) + ".json")


def write_buckets(path, buckets) -> None:
    """Write bucket signals as CSV plus a JSON sidecar with the metadata."""
    write_csv_matrix(path, buckets.values)
    write_json(
        sidecar_path(path),
        {
            "spec": buckets.spec.to_dict(),
            "noise_sigma": buckets.noise_sigma,
            "seed": buckets.seed,
        },
    )


def read_buckets(path):
    """Read bucket signals and their sidecar back into a BucketSignals."""
    from .measurement import HybridSpec
    from .simulator import BucketSignals

    values = read_csv_matrix(path)
    meta = read_json(sidecar_path(path))
    return BucketSignals(
        values,
        float(meta["noise_sigma"]),
        int(meta["seed"]),
        HybridSpec.from_dict(meta["spec"]),
    )
