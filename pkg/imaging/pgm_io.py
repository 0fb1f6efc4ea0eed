"""
PGM (portable graymap) reading and writing.
Supports the ASCII "P2" and binary "P5" variants with maxval <= 255. The P5
payload is width x height bytes, row-major, top-left origin.
"""
import logging
import re
from pathlib import Path

import numpy as np

import config
from errors import (
    InvalidPixelValue, MalformedHeader, MaxvalTooLarge, TruncatedData, UnsupportedFormat,
)
from .gray_image import GrayImage

logger = logging.getLogger(__name__)

_TOKEN = re.compile(rb'#[^\n]*|\S+')
_WHITESPACE = b' \t\n\r\x0b\x0c'


def _header_fields(data):
    """
    Read width, height and maxval after the magic number.

    Returns:
        tuple: (width, height, maxval, end, (height_offset, maxval_offset))
               where end is the offset just past the maxval token
    """
    values = []
    pos = 2
    for match in _TOKEN.finditer(data, pos):
        token = match.group()
        if token.startswith(b'#'):
            continue
        if match.start() == pos and pos == 2:
            # The magic number must be followed by whitespace
            raise MalformedHeader("Missing whitespace after magic number", pos)
        if not token.isdigit():
            raise MalformedHeader(f"Expected a decimal header field, got {token[:16]!r}", match.start())
        values.append((int(token), match.start()))
        if len(values) == 3:
            (width, _), (height, height_at), (maxval, maxval_at) = values
            return width, height, maxval, match.end(), (height_at, maxval_at)
    raise MalformedHeader("Header ended before width, height and maxval", len(data))


def load_pgm(data):
    """
    Decode a PGM file.

    Args:
        data: Raw file bytes

    Returns:
        GrayImage with levels = maxval + 1

    Raises:
        UnsupportedFormat: magic number other than P2/P5
        MalformedHeader: unreadable or out-of-range header fields
        MaxvalTooLarge: maxval above 255
        TruncatedData: fewer than width x height samples
        InvalidPixelValue: a sample above maxval
    """
    data = bytes(data)
    magic = data[:2]
    if magic not in (b'P2', b'P5'):
        raise UnsupportedFormat(f"Unsupported magic number {magic!r}, expected P2 or P5", 0)

    width, height, maxval, end, (height_at, maxval_at) = _header_fields(data)
    if width < 1 or height < 1:
        raise MalformedHeader(f"Image size must be positive, got {width}x{height}", height_at)
    if maxval > config.PGM_MAX_MAXVAL:
        raise MaxvalTooLarge(f"maxval {maxval} exceeds {config.PGM_MAX_MAXVAL}", maxval_at)
    if maxval < 1:
        raise MalformedHeader("maxval must be at least 1", maxval_at)

    count = width * height
    if magic == b'P5':
        if end >= len(data) or data[end] not in _WHITESPACE:
            raise MalformedHeader("Missing whitespace between maxval and raster", end)
        start = end + 1
        if len(data) - start < count:
            raise TruncatedData(
                f"Expected {count} raster bytes, found {len(data) - start}", len(data)
            )
        samples = np.frombuffer(data, dtype=np.uint8, count=count, offset=start).astype(np.int64)
        too_large = np.flatnonzero(samples > maxval)
        if too_large.size:
            raise InvalidPixelValue(
                f"Sample {samples[too_large[0]]} exceeds maxval {maxval}", start + int(too_large[0])
            )
    else:
        samples = np.empty(count, dtype=np.int64)
        filled = 0
        for match in _TOKEN.finditer(data, end):
            token = match.group()
            if token.startswith(b'#'):
                continue
            if not token.isdigit():
                raise InvalidPixelValue(f"Non-numeric sample {token[:16]!r}", match.start())
            value = int(token)
            if value > maxval:
                raise InvalidPixelValue(f"Sample {value} exceeds maxval {maxval}", match.start())
            samples[filled] = value
            filled += 1
            if filled == count:
                break
        if filled < count:
            raise TruncatedData(f"Expected {count} samples, found {filled}", len(data))

    return GrayImage(samples.reshape(height, width), levels=maxval + 1)


def emit_pgm(img, binary=config.PGM_DEFAULT_BINARY):
    """
    Encode a GrayImage (or a BinaryImage via to_gray()) as PGM bytes.
    maxval is written as levels - 1.
    """
    maxval = img.levels - 1
    magic = b'P5' if binary else b'P2'
    header = magic + f"\n{img.width} {img.height}\n{maxval}\n".encode('ascii')
    if binary:
        return header + img.pixels.astype(np.uint8).tobytes()
    rows = [" ".join(str(v) for v in row) for row in img.pixels.tolist()]
    return header + ("\n".join(rows) + "\n").encode('ascii')


def read_pgm(path):
    """Load a PGM file from disk."""
    path = Path(path)
    logger.debug("Reading %s", path)
    return load_pgm(path.read_bytes())


def write_pgm(path, img, binary=config.PGM_DEFAULT_BINARY):
    """Write a PGM file to disk."""
    path = Path(path)
    path.write_bytes(emit_pgm(img, binary=binary))
    logger.debug("Wrote %s (%dx%d, %d levels)", path, img.width, img.height, img.levels)
