"""Stimulus loading, binarization and figure point extraction.

Coordinates follow raster storage: ``x`` is the column, ``y`` the row,
``y`` grows downward and the origin is the top-left pixel.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegenerateFigure, EmptyFigure, ImageFormatError

DEFAULT_THRESHOLD = 128

# Rec. 601 luma weights, integer form (same as PIL's "L" conversion).
_LUMA = (299, 587, 114)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit luminance grid, 0 = black, 255 = white."""

    intensities: np.ndarray  # (height, width) uint8

    def __post_init__(self):
        a = np.ascontiguousarray(self.intensities, dtype=np.uint8)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ImageFormatError(f"image must be a non-empty 2-D grid, got shape {a.shape}")
        object.__setattr__(self, "intensities", _frozen(a))

    @property
    def width(self) -> int:
        return self.intensities.shape[1]

    @property
    def height(self) -> int:
        return self.intensities.shape[0]

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.intensities, other.intensities)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class BinaryImage:
    foreground: np.ndarray  # (height, width) bool, True = figure pixel

    def __post_init__(self):
        a = np.ascontiguousarray(self.foreground, dtype=bool)
        if a.ndim != 2:
            raise ValueError("mask must be 2-D")
        object.__setattr__(self, "foreground", _frozen(a))

    @property
    def width(self) -> int:
        return self.foreground.shape[1]

    @property
    def height(self) -> int:
        return self.foreground.shape[0]

    @property
    def count(self) -> int:
        return int(self.foreground.sum())

    def to_gray(self) -> GrayImage:
        """Render as black ink (0) on white (255)."""
        return GrayImage(np.where(self.foreground, 0, 255).astype(np.uint8))

    def __eq__(self, other):
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return np.array_equal(self.foreground, other.foreground)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class PointSet:
    """Figure points as an ``(n, 2)`` array of ``(x, y)``.

    Integer dtype straight after extraction, float after any transform.
    Integer point sets are centered with exact arithmetic downstream,
    which is what makes alignment bit-for-bit translation invariant.
    """

    points: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.points)
        if a.dtype.kind not in "iuf":
            a = a.astype(np.float64)
        elif a.dtype.kind == "u":
            a = a.astype(np.int64)
        elif a.dtype.kind == "i":
            a = a.astype(np.int64, copy=False)
        else:
            a = a.astype(np.float64, copy=False)
        a = np.ascontiguousarray(a.reshape(-1, 2))
        object.__setattr__(self, "points", _frozen(a))

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def xs(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def ys(self) -> np.ndarray:
        return self.points[:, 1]

    @property
    def is_integral(self) -> bool:
        return self.points.dtype.kind == "i"

    def translated(self, dx, dy) -> "PointSet":
        return PointSet(self.points + np.array([dx, dy], dtype=self.points.dtype))

    def rotated(self, phi: float) -> "PointSet":
        """Rotate about the origin by ``phi`` radians (continuous coordinates)."""
        c, s = np.cos(phi), np.sin(phi)
        p = self.points.astype(np.float64)
        return PointSet(np.column_stack((c * p[:, 0] - s * p[:, 1], s * p[:, 0] + c * p[:, 1])))

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return np.array_equal(self.points, other.points)

    __hash__ = None


# ---------------------------------------------------------------------------
# Decoding
# ---------------------------------------------------------------------------

_WS = b" \t\r\n\v\f"


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping comments.

    Returns the tokens and the index just past the single whitespace byte
    that terminates the last token.
    """
    tokens = []
    i, n = 0, len(data)
    while len(tokens) < count:
        while i < n and data[i] in _WS:
            i += 1
        if i < n and data[i] == ord("#"):
            while i < n and data[i] not in b"\r\n":
                i += 1
            continue
        if i >= n:
            raise ImageFormatError("truncated header")
        start = i
        while i < n and data[i] not in _WS and data[i] != ord("#"):
            i += 1
        tokens.append(data[start:i])
    if i >= n or data[i] not in _WS:
        raise ImageFormatError("truncated header")
    return tokens, i + 1


def _to_int(tok: bytes, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ImageFormatError(f"bad {what}: {tok!r}") from None


def _scale(values: np.ndarray, maxval: int) -> np.ndarray:
    if maxval == 255:
        return values.astype(np.uint8)
    v = values.astype(np.int64)
    if (v > maxval).any():
        raise ImageFormatError("sample exceeds maxval")
    return ((v * 255 + maxval // 2) // maxval).astype(np.uint8)


def _luma(rgb: np.ndarray) -> np.ndarray:
    r, g, b = (rgb[..., k].astype(np.int64) for k in range(3))
    return ((r * _LUMA[0] + g * _LUMA[1] + b * _LUMA[2] + 500) // 1000).astype(np.uint8)


def decode_pnm(data: bytes) -> GrayImage:
    """Decode P2/P5 graymaps (and P3/P6 pixmaps via luma)."""
    magic = data[:2]
    if magic not in (b"P2", b"P5", b"P3", b"P6"):
        raise ImageFormatError(f"not a PGM/PPM file (magic {magic!r})")
    tokens, pos = _header_tokens(data[2:], 3)
    pos += 2
    width, height, maxval = (_to_int(t, w) for t, w in zip(tokens, ("width", "height", "maxval")))
    if width < 1 or height < 1:
        raise ImageFormatError(f"zero-dimension image ({width}x{height})")
    if not 0 < maxval < 65536:
        raise ImageFormatError(f"maxval out of range: {maxval}")
    channels = 3 if magic in (b"P3", b"P6") else 1
    n = width * height * channels

    if magic in (b"P5", b"P6"):
        dtype = np.dtype(np.uint8) if maxval < 256 else np.dtype(">u2")
        need = n * dtype.itemsize
        if len(data) - pos < need:
            raise ImageFormatError(f"truncated raster: need {need} bytes, have {len(data) - pos}")
        values = np.frombuffer(data, dtype=dtype, count=n, offset=pos)
    else:
        body = data[pos:]
        parts = [ln.split(b"#", 1)[0] for ln in body.splitlines()]
        toks = b" ".join(parts).split()
        if len(toks) < n:
            raise ImageFormatError(f"truncated raster: need {n} samples, have {len(toks)}")
        values = np.array([_to_int(t, "sample") for t in toks[:n]], dtype=np.int64)

    values = _scale(values, maxval)
    if channels == 3:
        return GrayImage(_luma(values.reshape(height, width, 3)))
    return GrayImage(values.reshape(height, width))


def load_image(path: str | os.PathLike) -> GrayImage:
    """Load a grayscale stimulus.

    PGM (P2/P5) is decoded natively; PNG and other raster formats go
    through Pillow and are reduced to luminance.
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ImageFormatError(f"cannot read {path}: {exc}") from exc
    if data[:2] in (b"P2", b"P5", b"P3", b"P6"):
        return decode_pnm(data)
    try:
        from PIL import Image
    except ImportError:  # pragma: no cover
        raise ImageFormatError(f"{path}: only PGM is supported without Pillow") from None
    import io

    try:
        with Image.open(io.BytesIO(data)) as im:
            im.load()
            if im.mode in ("RGBA", "LA", "P"):
                im = im.convert("RGB")
            if im.mode == "I;16" or im.mode == "I":
                arr = np.asarray(im, dtype=np.int64)
                hi = 65535 if arr.max(initial=0) > 255 else 255
                return GrayImage(_scale(arr, hi))
            arr = np.asarray(im.convert("L"))
    except (OSError, ValueError, Image.DecompressionBombError) as exc:
        raise ImageFormatError(f"{path}: {exc}") from exc
    return GrayImage(arr)


def encode_pgm(img: GrayImage) -> bytes:
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.intensities.tobytes()


def save_pgm(img: GrayImage, path: str | os.PathLike) -> None:
    Path(path).write_bytes(encode_pgm(img))


# ---------------------------------------------------------------------------
# Binarization and extraction
# ---------------------------------------------------------------------------


def binarize(img: GrayImage, threshold: int = DEFAULT_THRESHOLD) -> BinaryImage:
    """Foreground iff intensity < threshold (dark ink on light ground)."""
    if not 0 <= threshold <= 255:
        raise ValueError(f"threshold must be in [0, 255], got {threshold}")
    return BinaryImage(img.intensities < threshold)


def extract_points(mask: BinaryImage) -> PointSet:
    """One integer ``(x, y)`` point per foreground cell, in row-major order."""
    rows, cols = np.nonzero(mask.foreground)
    if rows.size == 0:
        raise EmptyFigure("no foreground pixels")
    if rows.size < 2:
        raise DegenerateFigure("a single foreground pixel has no principal axis")
    return PointSet(np.column_stack((cols, rows)).astype(np.int64))


def image_points(img: GrayImage, threshold: int = DEFAULT_THRESHOLD) -> PointSet:
    return extract_points(binarize(img, threshold))
