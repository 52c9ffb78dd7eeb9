import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import keys, lmmse_pair, naive_classical, naive_lmmse_2x
from pansharp.errors import DimensionError, ParameterError
from pansharp.interpolation import (
    InterpolatorKind,
    available_backends,
    cc_kernel,
    diagonal_variances,
    lmmse_weights,
    upscale,
    upscale2x_lmmse,
    upscale_classical,
)

BACKENDS = available_backends()
unit = st.floats(0.0, 1.0, allow_nan=False)


class TestWeights:
    def test_equal_variances(self):
        assert lmmse_weights(0.02, 0.02) == (0.5, 0.5)

    def test_zero_45_variance_takes_all_weight(self):
        assert lmmse_weights(0.0, 0.04) == (1.0, 0.0)

    def test_hand_value(self):
        w45, w135 = lmmse_weights(20.25, 20.9167)
        assert w45 == pytest.approx(0.50810, abs=1e-4)
        assert w135 == pytest.approx(0.49190, abs=1e-4)

    def test_degenerate_pair(self):
        assert lmmse_weights(0.0, 0.0) == (0.5, 0.5)
        assert lmmse_weights(3e-13, 4e-13) == (0.5, 0.5)

    def test_negative_rejected(self):
        with pytest.raises(ParameterError):
            lmmse_weights(-1.0, 0.0)

    @given(st.floats(0, 10), st.floats(0, 10))
    def test_sum_to_one(self, a, b):
        w45, w135 = lmmse_weights(a, b)
        assert abs(w45 + w135 - 1.0) <= 1e-12
        assert 0.0 <= w45 <= 1.0


class TestDiagonalEstimate:
    def test_symmetric_block_gives_midpoint(self):
        est = diagonal_variances(0.0, 1.0, 1.0, 0.0)
        assert (est.x45, est.x135, est.u) == (1.0, 0.0, 0.5)
        assert est.var45 == est.var135 == 0.25
        assert est.value == 0.5

    def test_hand_example(self):
        est = diagonal_variances(0.0, 1.0, 1.0, 0.2)
        assert est.x45 == 1.0
        assert est.x135 == pytest.approx(0.1, abs=1e-15)
        assert est.u == pytest.approx(0.55, abs=1e-15)
        assert est.var45 == pytest.approx(0.2025, abs=1e-12)
        assert est.var135 == pytest.approx(0.209167, abs=1e-6)
        assert est.w45 == pytest.approx(0.50810, abs=1e-5)
        assert est.value == pytest.approx(0.55729, abs=1e-5)
        # independent scalar oracle
        assert est.value == pytest.approx(lmmse_pair(1.0, 1.0, 0.0, 0.2)[-1], abs=1e-15)

    def test_constant_block(self):
        est = diagonal_variances(0.4, 0.4, 0.4, 0.4)
        assert est.value == 0.4
        assert (est.w45, est.w135) == (0.5, 0.5)

    @given(unit, unit, unit, unit)
    def test_invariants(self, a, b, c, d):
        est = diagonal_variances(a, b, c, d)
        assert est.w45 + est.w135 == 1.0
        assert est.var45 >= 0 and est.var135 >= 0
        lo, hi = min(est.x45, est.x135), max(est.x45, est.x135)
        assert lo - 1e-15 <= est.value <= hi + 1e-15
        assert min(a, b, c, d) - 1e-15 <= est.value <= max(a, b, c, d) + 1e-15

    @pytest.mark.parametrize("delta", [1e-3, 0.05, 0.2, 0.5])
    def test_edge_selectivity(self, delta):
        est = diagonal_variances(0.0, 1.0, 1.0, delta)
        assert est.w45 > est.w135


@pytest.mark.parametrize("backend", BACKENDS)
class TestUpscale2x:
    def test_constant(self, backend):
        out = upscale2x_lmmse(np.full((4, 4), 0.3), backend=backend)
        assert out.shape == (8, 8)
        assert np.max(np.abs(out.data - 0.3)) <= 1e-12

    def test_ramp_matches_oracle_exactly(self, backend):
        g = [[(i + j) / 4 for j in range(3)] for i in range(3)]
        out = upscale2x_lmmse(g, backend=backend).data
        assert np.array_equal(out, np.array(naive_lmmse_2x(g)))

    def test_sample_preservation(self, backend):
        g = np.random.default_rng(3).random((5, 9))
        out = upscale2x_lmmse(g, backend=backend).data
        assert np.array_equal(out[0::2, 0::2], g)

    def test_too_small(self, backend):
        with pytest.raises(DimensionError):
            upscale2x_lmmse(np.zeros((1, 5)), backend=backend)

    def test_random_grids_match_oracle(self, backend):
        rng = np.random.default_rng(2024)
        for _ in range(20):
            h, w = rng.integers(2, 12, size=2)
            g = rng.random((h, w))
            out = upscale2x_lmmse(g, backend=backend).data
            assert np.max(np.abs(out - np.array(naive_lmmse_2x(g.tolist())))) <= 1e-12

    def test_local_convexity(self, backend):
        g = np.random.default_rng(11).random((7, 6))
        out = upscale2x_lmmse(g, backend=backend).data
        ext = np.pad(g, 1, mode="edge")
        for i in range(g.shape[0]):
            for j in range(g.shape[1]):
                block = ext[i + 1 : i + 3, j + 1 : j + 3]
                v = out[2 * i + 1, 2 * j + 1]
                assert block.min() - 1e-15 <= v <= block.max() + 1e-15
        # pass-2 sites within their four orthogonal neighbours (interior only)
        for i in range(1, 2 * g.shape[0] - 1):
            for j in range(1, 2 * g.shape[1] - 1):
                if (i + j) % 2 == 1:
                    nb = [out[i - 1, j], out[i + 1, j], out[i, j - 1], out[i, j + 1]]
                    assert min(nb) - 1e-15 <= out[i, j] <= max(nb) + 1e-15


def test_backends_agree_bitwise():
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    g = np.random.default_rng(5).random((33, 47))
    results = [upscale2x_lmmse(g, backend=b).data for b in BACKENDS]
    assert np.array_equal(results[0], results[1])


def test_unknown_backend():
    with pytest.raises(ParameterError):
        upscale2x_lmmse(np.zeros((2, 2)), backend="fortran")


class TestCcKernel:
    def test_spot_values(self):
        assert cc_kernel(0.0) == 1.0
        assert cc_kernel(1.0) == 0.0
        assert cc_kernel(0.5, -0.5) == 0.5625
        assert cc_kernel(2.0) == 0.0
        assert cc_kernel(-1.5) == -0.0625

    @given(st.floats(-3, 3), st.floats(-1, 0))
    def test_matches_scalar_oracle(self, t, a):
        assert cc_kernel(t, a) == pytest.approx(keys(t, a), abs=1e-12)

    @given(st.floats(0, 1), st.floats(-1, 0))
    def test_partition_of_unity(self, frac, a):
        taps = cc_kernel(np.array([frac + 1, frac, frac - 1, frac - 2]), a)
        assert taps.sum() == pytest.approx(1.0, abs=1e-12)


class TestClassical:
    def test_bilinear_midpoint(self):
        out = upscale_classical([[0.0, 1.0], [0.0, 1.0]], 2, InterpolatorKind.BILINEAR).data
        assert out[0, 1] == 0.5

    def test_cc_midpoint_overshoot_is_clamped(self):
        row = [0.0, 1.0, 1.0, 0.0]
        out = upscale_classical([row, row], 2, InterpolatorKind.CUBIC_CONVOLUTION).data
        # unclamped value at the middle interval is 9/16 + 9/16 = 1.125
        assert out[0, 3] == 1.0

    def test_nearest_blocks(self):
        g = np.random.default_rng(0).random((3, 4))
        out = upscale_classical(g, 2, InterpolatorKind.NEAREST).data
        assert np.array_equal(out, np.kron(g, np.ones((2, 2))))

    def test_lmmse_rejected(self):
        with pytest.raises(ParameterError):
            upscale_classical(np.zeros((2, 2)), 2, InterpolatorKind.LMMSE)

    def test_bad_factor(self):
        with pytest.raises(ParameterError):
            upscale_classical(np.zeros((2, 2)), 1, InterpolatorKind.BILINEAR)

    @pytest.mark.parametrize("kind", ["nearest", "bilinear", "cc"])
    @pytest.mark.parametrize("factor", [2, 3])
    def test_matches_per_pixel_oracle(self, kind, factor):
        g = np.random.default_rng(factor).random((4, 5))
        out = upscale_classical(g, factor, InterpolatorKind.parse(kind)).data
        ref = np.array(naive_classical(g.tolist(), factor, kind))
        assert np.max(np.abs(out - ref)) <= 1e-12

    @pytest.mark.parametrize("kind", list(InterpolatorKind))
    def test_alignment_preserves_samples(self, kind):
        g = np.random.default_rng(1).random((4, 6))
        out = upscale(g, kind).data
        assert np.max(np.abs(out[0::2, 0::2] - g)) <= 1e-15


@pytest.mark.parametrize("kind", list(InterpolatorKind))
@settings(max_examples=25)
@given(value=unit, h=st.integers(2, 6), w=st.integers(2, 6))
def test_constant_preservation(kind, value, h, w):
    out = upscale(np.full((h, w), value), kind).data
    assert out.shape == (2 * h, 2 * w)
    assert np.max(np.abs(out - value)) <= 1e-12


def test_kind_parsing():
    assert InterpolatorKind.parse("CC") is InterpolatorKind.CUBIC_CONVOLUTION
    assert InterpolatorKind.CUBIC_CONVOLUTION.kernel_param == -0.5
    assert InterpolatorKind.LMMSE.kernel_param is None
    with pytest.raises(ParameterError, match="nearest, bilinear, cc, lmmse"):
        InterpolatorKind.parse("bogus")
