"""Grayscale PGM I/O and two-cluster intensity segmentation."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .fcm import FitConfig, FitResult, fcm_fit
from .seeding import init_centers_scatter
from .vfc import vfc_fit

__all__ = [
    "BadMagicError",
    "DegenerateImageError",
    "GrayImage",
    "HeaderTokenError",
    "MaxvalError",
    "PGMError",
    "TruncatedPayloadError",
    "read_pgm",
    "segment_binary",
    "write_pgm",
]


class PGMError(ValueError):
    pass


class BadMagicError(PGMError):
    pass


class TruncatedPayloadError(PGMError):
    pass


class MaxvalError(PGMError):
    pass


class HeaderTokenError(PGMError):
    pass


class DegenerateImageError(ValueError):
    pass


@dataclass(frozen=True)
class GrayImage:
    """8-bit grayscale image; ``pixels`` has shape ``(height, width)``."""

    pixels: np.ndarray
    maxval: int = 255

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError(f"pixels must be a non-empty 2-D array, got shape {px.shape}")
        if not 1 <= self.maxval <= 255:
            raise ValueError(f"maxval must be in [1, 255], got {self.maxval}")
        if px.min() < 0 or px.max() > self.maxval:
            raise ValueError(f"pixel values must lie in [0, {self.maxval}]")
        object.__setattr__(self, "pixels", px.astype(np.uint8))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.maxval == other.maxval and np.array_equal(self.pixels, other.pixels)


_WHITESPACE = b" \t\n\r\v\f"


def _header_tokens(buf: bytes, count: int, pos: int):
    """Read ``count`` whitespace-separated header tokens, skipping ``#`` comments.

    Returns the integer values and the offset just past the last token.
    """
    values = []
    n = len(buf)
    while len(values) < count:
        while pos < n and buf[pos] in _WHITESPACE:
            pos += 1
        if pos < n and buf[pos] == ord("#"):
            while pos < n and buf[pos] not in b"\r\n":
                pos += 1
            continue
        if pos >= n:
            raise TruncatedPayloadError("file ends inside the header")
        start = pos
        while pos < n and buf[pos] not in _WHITESPACE and buf[pos] != ord("#"):
            pos += 1
        token = buf[start:pos]
        if not token.isdigit():
            raise HeaderTokenError(f"non-numeric header token {token!r}")
        values.append(int(token))
    return values, pos


def read_pgm(data: bytes) -> GrayImage:
    """Decode a binary (``P5``) or ASCII (``P2``) PGM with maxval <= 255."""
    magic = bytes(data[:2])
    if magic not in (b"P5", b"P2"):
        raise BadMagicError(f"expected P5 or P2 magic, got {magic!r}")
    (width, height, maxval), pos = _header_tokens(data, 3, 2)
    if width < 1 or height < 1:
        raise HeaderTokenError(f"invalid image size {width}x{height}")
    if not 1 <= maxval <= 255:
        raise MaxvalError(f"maxval {maxval} not supported (must be 1..255)")
    npix = width * height

    if magic == b"P5":
        if pos >= len(data) or data[pos] not in _WHITESPACE:
            raise TruncatedPayloadError("missing separator before pixel data")
        payload = data[pos + 1 : pos + 1 + npix]
        if len(payload) < npix:
            raise TruncatedPayloadError(f"expected {npix} pixel bytes, found {len(payload)}")
        pixels = np.frombuffer(payload, dtype=np.uint8)
    else:
        body = re.sub(rb"#[^\r\n]*", b" ", bytes(data[pos:]))
        tokens = body.split()
        if len(tokens) < npix:
            raise TruncatedPayloadError(f"expected {npix} pixel values, found {len(tokens)}")
        if not all(t.isdigit() for t in tokens[:npix]):
            raise HeaderTokenError("non-numeric pixel value in ASCII payload")
        pixels = np.array([int(t) for t in tokens[:npix]], dtype=np.int64)
    if pixels.max() > maxval:
        raise MaxvalError(f"pixel value {int(pixels.max())} exceeds maxval {maxval}")
    return GrayImage(pixels.reshape(height, width), maxval=maxval)


def write_pgm(image: GrayImage) -> bytes:
    header = f"P5\n{image.width} {image.height}\n{image.maxval}\n".encode("ascii")
    return header + image.pixels.astype(np.uint8).tobytes()


def _seed_centers(x, n_clusters, delta):
    centers, _ = init_centers_scatter(x, n_clusters)
    if np.ptp(centers[:, 0]) >= delta:
        return centers
    # Equal-sized intensity groups symmetric about the mean tie on weighted
    # distance and can average to one shared center, a fixed point the fit
    # never leaves. Seed from the intensity-sorted halves instead.
    ordered = np.sort(x[:, 0])
    half = (ordered.size + 1) // 2
    return np.array([[ordered[:half].mean()], [ordered[half:].mean()]])


def segment_binary(
    image: GrayImage,
    config: FitConfig,
    algorithm: str = "vfc",
    raw01: bool = False,
    initial_centers=None,
    return_fit: bool = False,
):
    """Two-cluster segmentation of pixel intensities.

    Intensities are clustered as a one-dimensional dataset. Pixels whose
    membership in the darker cluster is at least 0.5 become 0, all others
    ``maxval`` (255, or 1 when ``raw01`` is set, which also sets maxval 1).

    Raises
    ------
    DegenerateImageError
        When every pixel has the same intensity.
    """
    if config.n_clusters != 2:
        raise ValueError(f"segmentation uses exactly 2 clusters, got {config.n_clusters}")
    fit = {"fcm": fcm_fit, "vfc": vfc_fit}.get(algorithm)
    if fit is None:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    x = image.pixels.reshape(-1, 1).astype(float)
    if x.min() == x.max():
        raise DegenerateImageError("degenerate: constant intensities")
    if initial_centers is None:
        initial_centers = _seed_centers(x, 2, config.singularity_delta)

    result: FitResult = fit(x, config, initial_centers=initial_centers)
    dark = int(np.argmin(result.centers[:, 0]))
    u = result.memberships
    u_dark = u[:, dark, 0] if u.ndim == 3 else u[:, dark]
    high = 1 if raw01 else 255
    out = np.where(u_dark >= 0.5, 0, high).astype(np.uint8).reshape(image.pixels.shape)
    segmented = GrayImage(out, maxval=high)
    if return_fit:
        return segmented, result
    return segmented
