import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mpcs.bitplane import (
    arrange,
    bitmatrix_to_image,
    check_image,
    image_to_bitmatrix,
    inverse_arrange,
    popcount_delta,
    transient_counts,
)
from mpcs.errors import DimensionError


def bits(s):
    return [int(c) for c in s.replace(" ", "")]


def test_bitmatrix_examples():
    red = np.array([[[255, 0, 0]]], dtype=np.uint8)
    assert image_to_bitmatrix(red).tolist() == [bits("11111111 00000000 00000000")]
    px = np.array([[[1, 2, 3]]], dtype=np.uint8)
    assert image_to_bitmatrix(px).tolist() == [bits("00000001 00000010 00000011")]


def test_bitmatrix_raster_order():
    img = np.arange(2 * 3 * 3, dtype=np.uint8).reshape(2, 3, 3)
    bm = image_to_bitmatrix(img)
    # [DERIVED] row mu is pixel (mu // n, mu % n), bit i of channel c at column 8c + i
    for mu in range(6):
        pix = img[mu // 3, mu % 3]
        expected = [(int(pix[c]) >> (7 - i)) & 1 for c in range(3) for i in range(8)]
        assert bm[mu].tolist() == expected


def test_bitmatrix_to_image_examples():
    assert bitmatrix_to_image([bits("11111111 00000000 00000000")], 1, 1).tolist() == [[[255, 0, 0]]]
    assert not bitmatrix_to_image(np.zeros((6, 24)), 2, 3).any()
    with pytest.raises(DimensionError):
        bitmatrix_to_image(np.zeros((5, 24)), 2, 3)


@settings(max_examples=50)
@given(arrays(np.uint8, st.tuples(st.integers(1, 6), st.integers(1, 6), st.just(3))))
def test_bitmatrix_round_trip(img):
    assert np.array_equal(bitmatrix_to_image(image_to_bitmatrix(img), *img.shape[:2]), img)


def test_popcount_examples():
    assert popcount_delta(image_to_bitmatrix(np.zeros((256, 256, 3), np.uint8))) == 0
    assert popcount_delta(image_to_bitmatrix(np.full((2, 2, 3), 255, np.uint8))) == 96
    assert popcount_delta(image_to_bitmatrix(np.array([[[1, 2, 3]]], np.uint8))) == 4


@settings(max_examples=50)
@given(arrays(np.uint8, st.tuples(st.integers(1, 5), st.integers(1, 5), st.just(3))))
def test_popcount_matches_bin_count(img):
    assert popcount_delta(image_to_bitmatrix(img)) == sum(bin(int(v)).count("1") for v in img.ravel())


def test_transient_counts_examples():
    assert tuple(transient_counts(0)) == (829, 529, 719, 1123)
    assert tuple(transient_counts(997)) == (829, 589, 1716, 1326)


@settings(max_examples=200)
@given(st.integers(0, 24 * 2**32))
def test_transient_counts_ranges_and_increment(delta):
    c = transient_counts(delta)
    assert 829 <= c.henon <= 1825 and 529 <= c.lorenz <= 1465
    assert 719 <= c.chua <= 1815 and 1123 <= c.rossler <= 1519
    assert c != transient_counts(delta + 1)


def test_transient_counts_rejects_negative():
    with pytest.raises(ValueError):
        transient_counts(-1)


def test_arrange_examples():
    row = np.array([bits("11111111 00000000 00000000")])
    assert arrange(row).tolist() == [bits("100 100 100 100 100 100 100 100")]
    assert inverse_arrange(arrange(row)).tolist() == row.tolist()
    assert arrange(np.ones((1, 24), np.uint8)).all()
    assert not inverse_arrange(np.zeros((1, 24), np.uint8)).any()


def test_arrange_interleave_oracle():
    # [DERIVED] output bit 3k + ch is the k-th bit of channel ch
    row = np.arange(24).reshape(1, 24)
    expected = [8 * ch + k for k in range(8) for ch in range(3)]
    assert arrange(row)[0].tolist() == expected


@settings(max_examples=50)
@given(arrays(np.uint8, st.tuples(st.integers(1, 30), st.just(24)), elements=st.integers(0, 1)))
def test_arrange_round_trip(bm):
    assert np.array_equal(inverse_arrange(arrange(bm)), bm)
    assert np.array_equal(arrange(inverse_arrange(bm)), bm)


def test_check_image_rejects_bad_shapes():
    for bad in (np.zeros((2, 2)), np.zeros((2, 2, 4)), np.zeros((0, 2, 3))):
        with pytest.raises(DimensionError):
            check_image(bad)
    with pytest.raises(ValueError):
        check_image(np.full((1, 1, 3), 256))
    assert check_image(np.full((1, 1, 3), 7, dtype=np.int64)).dtype == np.uint8
