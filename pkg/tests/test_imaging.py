import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from vfcm.fcm import FitConfig
from vfcm.imaging import (
    BadMagicError,
    DegenerateImageError,
    GrayImage,
    HeaderTokenError,
    MaxvalError,
    TruncatedPayloadError,
    read_pgm,
    segment_binary,
    write_pgm,
)

images = arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12)))


def test_read_minimal_p5():
    img = read_pgm(b"P5\n1 1\n255\n\x00")
    assert (img.width, img.height, img.maxval) == (1, 1, 255)
    assert img.pixels.tolist() == [[0]]


def test_read_p2():
    img = read_pgm(b"P2\n2 1\n255\n0 255\n")
    assert (img.width, img.height) == (2, 1)
    assert img.pixels.tolist() == [[0, 255]]


def test_read_header_comments():
    img = read_pgm(b"P5\n# made by hand\n2 # width\n1\n# max\n255\n\x07\x09")
    assert img.pixels.tolist() == [[7, 9]]
    img = read_pgm(b"P2 #c\n2 2 15\n1 2\n# row two\n3 15\n")
    assert img.maxval == 15 and img.pixels.tolist() == [[1, 2], [3, 15]]


def test_write_minimal():
    assert write_pgm(GrayImage(np.zeros((1, 1), np.uint8))) == b"P5\n1 1\n255\n\x00"


def test_write_payload_length():
    out = write_pgm(GrayImage(np.array([[0, 255], [255, 0]], np.uint8)))
    assert out == b"P5\n2 2\n255\n\x00\xff\xff\x00"


@pytest.mark.parametrize(
    "blob, err",
    [
        (b"P6\n1 1\n255\n\x00\x00\x00", BadMagicError),
        (b"\x89PNG", BadMagicError),
        (b"P5\n2 2\n255\n\x00\x00", TruncatedPayloadError),
        (b"P2\n2 2\n255\n1 2 3", TruncatedPayloadError),
        (b"P5\n2 2", TruncatedPayloadError),
        (b"P5\n1 1\n65535\n\x00\x00", MaxvalError),
        (b"P2\n1 1\n10\n11\n", MaxvalError),
        (b"P5\n1 x\n255\n\x00", HeaderTokenError),
        (b"P2\n1 1\n255\nab\n", HeaderTokenError),
    ],
)
def test_read_errors(blob, err):
    with pytest.raises(err):
        read_pgm(blob)


@given(images)
def test_round_trip(px):
    img = GrayImage(px)
    blob = write_pgm(img)
    again = read_pgm(blob)
    assert again == img
    assert write_pgm(again) == blob


@given(images)
def test_p2_to_p5_round_trip(px):
    h, w = px.shape
    text = f"P2\n# ascii\n{w} {h}\n255\n" + "\n".join(" ".join(str(v) for v in row) for row in px) + "\n"
    img = read_pgm(text.encode())
    assert np.array_equal(img.pixels, px)
    assert read_pgm(write_pgm(img)) == img


def two_block(vertical: bool, lo=40, hi=200, size=32):
    px = np.full((size, size), lo, np.uint8)
    if vertical:
        px[:, size // 2 :] = hi
    else:
        px[size // 2 :, :] = hi
    return GrayImage(px)


@pytest.mark.parametrize("algorithm", ["fcm", "vfc"])
@pytest.mark.parametrize("vertical", [False, True])
def test_two_block_matches_midpoint_threshold(algorithm, vertical):
    img = two_block(vertical)
    seg = segment_binary(img, FitConfig(2, m=2.0, max_iters=50), algorithm=algorithm)
    expected = np.where(img.pixels <= 120, 0, 255)
    np.testing.assert_array_equal(seg.pixels, expected)


def test_raw01_output():
    seg = segment_binary(two_block(True), FitConfig(2), algorithm="fcm", raw01=True)
    assert seg.maxval == 1 and set(np.unique(seg.pixels)) == {0, 1}
    assert write_pgm(seg).startswith(b"P5\n32 32\n1\n")


def test_constant_image_rejected():
    with pytest.raises(DegenerateImageError, match="degenerate: constant intensities"):
        segment_binary(GrayImage(np.full((4, 4), 9, np.uint8)), FitConfig(2))


def test_needs_two_clusters():
    with pytest.raises(ValueError):
        segment_binary(two_block(True), FitConfig(3))


@given(arrays(np.uint8, st.tuples(st.integers(2, 10), st.integers(2, 10))), st.sampled_from(["fcm", "vfc"]))
def test_segment_output_binary_and_intensity_consistent(px, algorithm):
    if px.min() == px.max():
        px = px.copy()
        px[0, 0] = 255 - px[0, 0]
    seg = segment_binary(GrayImage(px), FitConfig(2, m=2.0, max_iters=20), algorithm=algorithm)
    assert set(np.unique(seg.pixels)) <= {0, 255}
    for v in np.unique(px):
        assert len(np.unique(seg.pixels[px == v])) == 1
