import numpy as np
import pytest
from hypothesis import given, strategies as st

from pansharp.errors import DimensionError, ParameterError, RangeError
from pansharp.raster import (
    OLI_BANDS,
    ImageGrid,
    MultibandImage,
    denormalize,
    extend_border,
    normalize,
    oli_band,
)


class TestImageGrid:
    def test_dimensions_and_immutability(self):
        g = ImageGrid(np.zeros((3, 5)))
        assert (g.height, g.width) == (3, 5)
        assert g.data.size == g.height * g.width
        with pytest.raises(ValueError):
            g.data[0, 0] = 1.0

    def test_copy_does_not_alias_input(self):
        src = np.zeros((2, 2))
        g = ImageGrid(src)
        src[0, 0] = 1.0
        assert g.data[0, 0] == 0.0

    @pytest.mark.parametrize("bad", [1.5, -0.1, np.nan, np.inf])
    def test_rejects_out_of_range(self, bad):
        arr = np.zeros((2, 2))
        arr[1, 0] = bad
        with pytest.raises(RangeError):
            ImageGrid(arr)

    def test_rejects_non_2d(self):
        with pytest.raises(DimensionError):
            ImageGrid(np.zeros(4))


class TestBandSpecs:
    @pytest.mark.parametrize(
        "name, number, lo, hi, res",
        [
            ("Blue", 2, 0.450, 0.515, 30.0),
            ("Green", 3, 0.525, 0.600, 30.0),
            ("Red", 4, 0.630, 0.680, 30.0),
            ("Panchromatic", 8, 0.500, 0.680, 15.0),
        ],
    )
    def test_oli_table(self, name, number, lo, hi, res):
        spec = OLI_BANDS[name]
        assert (spec.band_number, spec.wavelength_lo, spec.wavelength_hi, spec.native_resolution) == (
            number,
            lo,
            hi,
            res,
        )
        assert oli_band(number) is spec
        assert oli_band(name.lower()) is spec

    def test_unknown_band(self):
        with pytest.raises(ParameterError):
            oli_band("nir")


class TestMultiband:
    def test_mismatched_sizes(self):
        with pytest.raises(DimensionError, match="Red=2x2"):
            MultibandImage.rgb(np.zeros((2, 2)), np.zeros((2, 3)), np.zeros((2, 2)))

    def test_rgb_arrays_follow_names_not_order(self):
        r, g, b = (np.full((2, 2), v) for v in (0.1, 0.2, 0.3))
        img = MultibandImage.from_grids((b, g, r), (OLI_BANDS["Blue"], OLI_BANDS["Green"], OLI_BANDS["Red"]))
        assert [a[0, 0] for a in img.rgb_arrays()] == [0.1, 0.2, 0.3]


class TestNormalize:
    @pytest.mark.parametrize("raw, depth, expected", [(65535, 16, 1.0), (0, 16, 0.0), (0, 8, 0.0), (4095, 12, 1.0), (255, 8, 1.0)])
    def test_spot_values(self, raw, depth, expected):
        assert normalize(np.array([[raw, raw]]), depth).data[0, 0] == expected

    def test_range_error_names_coordinate(self):
        raw = np.zeros((3, 4), dtype=np.uint16)
        raw[2, 1] = 4096
        with pytest.raises(RangeError, match=r"row=2, col=1"):
            normalize(raw, 12)

    def test_bad_depth(self):
        with pytest.raises(ParameterError):
            normalize(np.zeros((2, 2)), 10)

    @given(st.sampled_from([8, 12, 16]), st.data())
    def test_monotone_and_invertible(self, depth, data):
        top = (1 << depth) - 1
        codes = np.array(data.draw(st.lists(st.integers(0, top), min_size=2, max_size=64, unique=True)))
        codes.sort()
        g = normalize(codes[None, :], depth)
        assert np.all(np.diff(g.data[0]) > 0)
        assert np.array_equal(denormalize(g, depth)[0], codes)


class TestExtendBorder:
    def test_single_pixel(self):
        out = extend_border(np.array([[0.7]]), 1)
        assert out.shape == (3, 3) and np.all(out.data == 0.7)

    def test_corners_replicate(self):
        out = extend_border(np.array([[0.0, 1.0], [1.0, 0.0]]), 1).data
        assert out[0, 0] == 0.0 and out[0, 3] == 1.0 and out[3, 0] == 1.0 and out[3, 3] == 0.0

    @given(st.integers(1, 4), st.integers(1, 6), st.integers(1, 6))
    def test_interior_identical(self, m, h, w):
        g = np.random.default_rng(h * 7 + w).random((h, w))
        out = extend_border(g, m)
        assert out.shape == (h + 2 * m, w + 2 * m)
        assert np.array_equal(out.data[m:-m, m:-m], g)

    def test_constant_stays_constant(self):
        assert np.all(extend_border(ImageGrid.constant(3, 4, 0.25), 3).data == 0.25)

    def test_margin_must_be_positive(self):
        with pytest.raises(ParameterError):
            extend_border(np.zeros((2, 2)), 0)
