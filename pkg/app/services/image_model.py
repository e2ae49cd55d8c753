"""
Brightness image model: PGM/PNM ingestion and output, grey conversion, histograms.

Samples are stored as real values in [0, 255]. Quantization to integer tones
(round-half-up, then clamp) happens only when saving and when histogramming.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from app.core.exceptions import ImageFormatError, ValidationError

logger = logging.getLogger(__name__)

TONE_LEVELS = 256
MAX_TONE = 255.0

_WHITESPACE = b" \t\n\r\v\f"
_HEADER_FIELDS = ("width", "height", "maxval")
_ASCII_TOKEN = re.compile(rb"\S+")


class GreyConversion(Enum):
    """Colour to brightness conversion rules"""
    LUMA = "luma"
    AVERAGE = "average"


LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def quantize(samples: Union[np.ndarray, float]) -> np.ndarray:
    """Round half up to the nearest integer tone and clamp to [0, 255]"""
    tones = np.floor(np.asarray(samples, dtype=np.float64) + 0.5)
    return np.clip(tones, 0, MAX_TONE).astype(np.int64)


@dataclass(frozen=True, eq=False)
class BrightnessImage:
    """Rectangular grid of brightness samples, shape (height, width)"""
    samples: np.ndarray

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64)
        if samples.ndim != 2:
            raise ValidationError(f"Samples must be a 2-D grid, got {samples.ndim} dimensions", field="samples")
        if samples.shape[0] < 1 or samples.shape[1] < 1:
            raise ValidationError("Image must have at least one row and one column", field="samples")
        if not np.all(np.isfinite(samples)):
            raise ValidationError("Samples must be finite", field="samples")
        if samples.min() < 0 or samples.max() > MAX_TONE:
            raise ValidationError(
                f"Samples must lie in [0, 255], got [{samples.min():g}, {samples.max():g}]",
                field="samples"
            )
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @classmethod
    def from_samples(cls, width: int, height: int, samples: Iterable[float]) -> "BrightnessImage":
        """Build from a row-major sequence of width*height samples"""
        if width < 1 or height < 1:
            raise ValidationError(f"Invalid dimensions {width}x{height}", field="dimensions")
        flat = np.asarray(list(samples), dtype=np.float64).ravel()
        if flat.size != width * height:
            raise ValidationError(
                f"Expected {width * height} samples for {width}x{height}, got {flat.size}",
                field="samples"
            )
        return cls(flat.reshape(height, width))

    @property
    def width(self) -> int:
        return int(self.samples.shape[1])

    @property
    def height(self) -> int:
        return int(self.samples.shape[0])

    @property
    def pixel_count(self) -> int:
        return int(self.samples.size)

    def tones(self) -> np.ndarray:
        """Quantized integer tones, same shape as samples"""
        return quantize(self.samples)

    def scaled(self, factor: float) -> "BrightnessImage":
        return BrightnessImage(self.samples * factor)

    def offset(self, delta: float) -> "BrightnessImage":
        return BrightnessImage(self.samples + delta)


@dataclass(frozen=True, eq=False)
class Histogram:
    """Pixel counts per integer tone 0..255"""
    counts: np.ndarray

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.shape != (TONE_LEVELS,):
            raise ValidationError(f"Histogram needs {TONE_LEVELS} counts, got shape {counts.shape}", field="counts")
        if np.any(counts < 0):
            raise ValidationError("Histogram counts must be non-negative", field="counts")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def occupied_tones(self) -> np.ndarray:
        """Tones with a non-zero count, ascending"""
        return np.flatnonzero(self.counts)


def compute_histogram(image: BrightnessImage) -> Histogram:
    """Count pixels per quantized tone"""
    return Histogram(np.bincount(image.tones().ravel(), minlength=TONE_LEVELS))


# ---------------------------------------------------------------------------
# Grey conversion
# ---------------------------------------------------------------------------

def _rgb_grid_to_brightness(rgb: np.ndarray, conversion: GreyConversion) -> np.ndarray:
    """Convert an (h, w, 3) array of real R, G, B values in [0, 255]"""
    if conversion is GreyConversion.LUMA:
        r_weight, g_weight, b_weight = LUMA_WEIGHTS
        grey = r_weight * rgb[..., 0] + g_weight * rgb[..., 1] + b_weight * rgb[..., 2]
    else:
        grey = (rgb[..., 0] + rgb[..., 1] + rgb[..., 2]) / 3.0
    # convex weights; clip only absorbs rounding at the ends
    return np.clip(grey, 0.0, MAX_TONE)


def rgb_to_brightness(
    rgb: Union[bytes, Sequence[int], np.ndarray],
    width: int,
    height: int,
    conversion: Union[GreyConversion, str] = GreyConversion.LUMA,
) -> BrightnessImage:
    """Convert interleaved 8-bit R, G, B triples to a brightness image"""
    conversion = GreyConversion(conversion)
    if isinstance(rgb, (bytes, bytearray)):
        values = np.frombuffer(bytes(rgb), dtype=np.uint8)
    else:
        values = np.asarray(rgb)
    values = values.astype(np.float64).ravel()

    if width < 1 or height < 1:
        raise ValidationError(f"Invalid dimensions {width}x{height}", field="dimensions")
    if values.size != 3 * width * height:
        raise ValidationError(
            f"Expected {width * height} RGB triples for {width}x{height}, got {values.size / 3:g}",
            field="rgb"
        )
    if values.min() < 0 or values.max() > MAX_TONE:
        raise ValidationError("RGB components must be 8-bit values", field="rgb")

    grey = _rgb_grid_to_brightness(values.reshape(height, width, 3), conversion)
    return BrightnessImage(grey)


# ---------------------------------------------------------------------------
# PGM / PNM files
# ---------------------------------------------------------------------------

def _read_header(data: bytes) -> Tuple[bytes, List[int], int]:
    """Parse magic, width, height and maxval; return them and the raster offset"""
    if len(data) < 2:
        raise ImageFormatError("File too short to hold a magic number", field="magic", offset=0)
    magic = data[:2]
    if magic not in (b"P2", b"P3", b"P5", b"P6"):
        raise ImageFormatError(f"Unsupported magic number {magic!r}", field="magic", offset=0)

    if len(data) < 3 or (data[2:3] not in _WHITESPACE and data[2:3] != b"#"):
        raise ImageFormatError("Magic number must be followed by whitespace", field="magic", offset=2)

    pos = 2
    values = []
    for field in _HEADER_FIELDS:
        # skip whitespace and comment lines
        while pos < len(data):
            byte = data[pos:pos + 1]
            if byte == b"#":
                while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                    pos += 1
            elif byte in _WHITESPACE:
                pos += 1
            else:
                break
        if pos >= len(data):
            raise ImageFormatError(f"Header ends before {field}", field=field, offset=pos)

        start = pos
        while pos < len(data) and data[pos:pos + 1] not in _WHITESPACE and data[pos:pos + 1] != b"#":
            pos += 1
        token = data[start:pos]
        if not token.isdigit():
            raise ImageFormatError(f"Invalid {field} {token!r}", field=field, offset=start)
        values.append(int(token))

    width, height, maxval = values
    if width == 0:
        raise ImageFormatError("Width must be positive", field="width")
    if height == 0:
        raise ImageFormatError("Height must be positive", field="height")
    if maxval == 0 or maxval > 255:
        raise ImageFormatError(f"maxval {maxval} not supported (1..255)", field="maxval")

    # exactly one whitespace byte separates maxval from the raster
    if pos >= len(data) or data[pos:pos + 1] not in _WHITESPACE:
        raise ImageFormatError("Missing whitespace after maxval", field="maxval", offset=pos)
    return magic, values, pos + 1


def _read_raster(data: bytes, magic: bytes, count: int, maxval: int, offset: int) -> np.ndarray:
    """Read count raw tone values starting at offset"""
    if magic in (b"P5", b"P6"):
        end = offset + count
        if len(data) < end:
            raise ImageFormatError(
                f"Pixel data truncated: expected {count} bytes, found {len(data) - offset}",
                offset=len(data)
            )
        raw = np.frombuffer(data, dtype=np.uint8, count=count, offset=offset).astype(np.int64)
    else:
        tokens = []
        for match in _ASCII_TOKEN.finditer(data, offset):
            if len(tokens) == count:
                break
            tokens.append(match)
        if len(tokens) < count:
            raise ImageFormatError(
                f"Pixel data truncated: expected {count} values, found {len(tokens)}",
                offset=len(data)
            )
        for match in tokens:
            # plain decimal digits only; signs and letters are not tone values
            if not match.group().isdigit():
                raise ImageFormatError(
                    f"Invalid pixel value {match.group()!r} in ASCII pixel data",
                    offset=match.start()
                )
        raw = np.array([int(match.group()) for match in tokens], dtype=np.int64)

    over = np.flatnonzero(raw > maxval)
    if over.size:
        first = int(over[0])
        raise ImageFormatError(
            f"Pixel value {raw[first]} exceeds maxval {maxval}",
            offset=offset + first if magic in (b"P5", b"P6") else tokens[first].start()
        )
    return raw


def _rescale(raw: np.ndarray, maxval: int) -> np.ndarray:
    values = raw.astype(np.float64)
    if maxval != 255:
        values = values * MAX_TONE / maxval
    return values


def load_pnm(data: bytes, conversion: Union[GreyConversion, str] = GreyConversion.LUMA) -> BrightnessImage:
    """Load PGM (P2/P5) or PPM (P3/P6) content; colour is converted to brightness"""
    magic, (width, height, maxval), offset = _read_header(data)
    channels = 3 if magic in (b"P3", b"P6") else 1
    raw = _read_raster(data, magic, width * height * channels, maxval, offset)
    values = _rescale(raw, maxval)

    logger.debug(f"Loaded {magic.decode()} image {width}x{height}, maxval {maxval}")

    if channels == 1:
        return BrightnessImage(values.reshape(height, width))
    grey = _rgb_grid_to_brightness(values.reshape(height, width, 3), GreyConversion(conversion))
    return BrightnessImage(grey)


def load_pgm(data: bytes) -> BrightnessImage:
    """Load PGM content, P2 (ASCII) or P5 (binary), maxval <= 255"""
    if data[:2] not in (b"P2", b"P5"):
        raise ImageFormatError(f"Not a PGM file (magic {data[:2]!r})", field="magic", offset=0)
    return load_pnm(data)


def save_pgm(image: BrightnessImage) -> bytes:
    """Encode as binary P5 with maxval 255"""
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.tones().astype(np.uint8).tobytes()
