import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from geomint.errors import DegenerateFigure, EmptyFigure, ImageFormatError
from geomint.raster import (
    BinaryImage,
    GrayImage,
    binarize,
    decode_pnm,
    encode_pgm,
    extract_points,
    load_image,
    save_pgm,
)


def test_load_white_p5(tmp_path):
    path = tmp_path / "white.pgm"
    path.write_bytes(b"P5\n4 4\n255\n" + bytes([255] * 16))
    img = load_image(path)
    assert (img.width, img.height) == (4, 4)
    assert (img.intensities == 255).all()


def test_load_single_black_p2(tmp_path):
    path = tmp_path / "one.pgm"
    path.write_text("P2\n# a comment\n1 1\n255\n0\n")
    img = load_image(path)
    assert (img.width, img.height) == (1, 1)
    assert img.intensities.tolist() == [[0]]


def test_truncated_file_is_format_error(tmp_path):
    path = tmp_path / "short.pgm"
    path.write_bytes(b"P5\n4 4\n255\n" + bytes(10))
    with pytest.raises(ImageFormatError):
        load_image(path)


@pytest.mark.parametrize("data", [b"P5\n4", b"P5\n0 4\n255\n", b"XX\n1 1\n255\n\x00", b"P2\n2 1\n255\n7\n"])
def test_malformed_headers(data):
    with pytest.raises(ImageFormatError):
        decode_pnm(data)


def test_unreadable_file(tmp_path):
    with pytest.raises(ImageFormatError):
        load_image(tmp_path / "missing.pgm")
    (tmp_path / "junk.png").write_bytes(b"not an image")
    with pytest.raises(ImageFormatError):
        load_image(tmp_path / "junk.png")


def test_p5_is_bit_exact_row_major():
    raw = bytes(range(6))
    img = decode_pnm(b"P5 3 2 255\n" + raw)
    assert img.intensities.tolist() == [[0, 1, 2], [3, 4, 5]]


def test_p2_and_p5_agree(rng):
    a = rng.integers(0, 256, size=(5, 7), dtype=np.uint8)
    ascii_ = "P2\n7 5\n255\n" + "\n".join(" ".join(map(str, row)) for row in a) + "\n"
    assert decode_pnm(ascii_.encode()) == decode_pnm(encode_pgm(GrayImage(a)))


def test_low_maxval_rescaled():
    img = decode_pnm(b"P2 2 1 1\n0 1\n")
    assert img.intensities.tolist() == [[0, 255]]


def test_ppm_uses_rec601_luma():
    img = decode_pnm(b"P6 2 1 255\n" + bytes([255, 0, 0, 0, 0, 255]))
    assert img.intensities.tolist() == [[76, 29]]


def test_png_roundtrip(tmp_path, rng):
    from PIL import Image

    a = rng.integers(0, 256, size=(6, 9), dtype=np.uint8)
    Image.fromarray(a, mode="L").save(tmp_path / "g.png")
    assert np.array_equal(load_image(tmp_path / "g.png").intensities, a)
    rgb = np.zeros((2, 2, 3), dtype=np.uint8)
    rgb[..., 1] = 255
    Image.fromarray(rgb, mode="RGB").save(tmp_path / "c.png")
    assert (load_image(tmp_path / "c.png").intensities == 150).all()


def test_save_load_roundtrip(tmp_path, rng):
    img = GrayImage(rng.integers(0, 256, size=(8, 3), dtype=np.uint8))
    save_pgm(img, tmp_path / "x.pgm")
    assert load_image(tmp_path / "x.pgm") == img


def test_binarize_examples():
    assert binarize(GrayImage(np.full((3, 3), 255)), 128).count == 0
    m = binarize(GrayImage(np.array([[0, 255], [255, 0]])), 128)
    assert m.foreground.tolist() == [[True, False], [False, True]]
    row = binarize(GrayImage(np.array([[0, 64, 128, 192]])), 128)
    assert row.foreground.tolist() == [[True, True, False, False]]


def test_binarize_rejects_bad_threshold():
    with pytest.raises(ValueError):
        binarize(GrayImage(np.zeros((1, 1))), 256)


def test_extract_points_examples():
    ps = extract_points(BinaryImage(np.array([[True, False], [False, True]])))
    assert ps.points.tolist() == [[0, 0], [1, 1]]
    assert len(extract_points(BinaryImage(np.ones((2, 2), dtype=bool)))) == 4
    with pytest.raises(EmptyFigure):
        extract_points(BinaryImage(np.zeros((3, 3), dtype=bool)))
    with pytest.raises(DegenerateFigure):
        extract_points(BinaryImage(np.eye(3, dtype=bool)[:1]))


masks = arrays(np.bool_, st.tuples(st.integers(1, 12), st.integers(1, 12)))


@given(masks, st.integers(0, 255))
def test_binarize_idempotent(mask, threshold):
    img = GrayImage(np.where(mask, 17, 230).astype(np.uint8))
    once = binarize(img, threshold)
    assert binarize(once.to_gray(), threshold) == once


@given(masks)
def test_point_count_equals_foreground(mask):
    b = BinaryImage(mask)
    if b.count >= 2:
        assert len(extract_points(b)) == b.count


@settings(max_examples=60)
@given(masks, st.integers(0, 5), st.integers(0, 5))
def test_translation_moves_points_exactly(mask, dx, dy):
    b = BinaryImage(mask)
    if b.count < 2:
        return
    big = np.zeros((mask.shape[0] + 5, mask.shape[1] + 5), dtype=bool)
    big[dy:dy + mask.shape[0], dx:dx + mask.shape[1]] = mask
    moved = extract_points(BinaryImage(big)).points
    assert np.array_equal(moved, extract_points(b).points + [dx, dy])
