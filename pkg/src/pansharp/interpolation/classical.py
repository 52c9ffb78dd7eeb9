"""Nearest, bilinear and Keys cubic-convolution resampling.

All three share the LMMSE alignment: input pixel (i, j) lands on output
(factor*i, factor*j), so every method reproduces the input samples exactly
on that lattice. Out-of-grid taps replicate the nearest edge pixel. The 2-D
filters are separable.
"""

from __future__ import annotations

import numpy as np

from pansharp.errors import ParameterError

DEFAULT_CC_A = -0.5


def cc_kernel(t, a: float = DEFAULT_CC_A):
    """Keys cubic-convolution kernel; accepts scalars or arrays."""
    at = np.abs(np.asarray(t, dtype=np.float64))
    at2 = at * at
    at3 = at2 * at
    inner = (a + 2.0) * at3 - (a + 3.0) * at2 + 1.0
    outer = a * at3 - 5.0 * a * at2 + 8.0 * a * at - 4.0 * a
    w = np.where(at <= 1.0, inner, np.where(at < 2.0, outer, 0.0))
    return float(w) if w.ndim == 0 else w


def _taps(kind: str, factor: int, a: float) -> tuple[np.ndarray, np.ndarray]:
    """Per-phase tap offsets and weights, shapes ``(n_taps,)`` and ``(factor, n_taps)``."""
    frac = np.arange(factor, dtype=np.float64) / factor
    if kind == "nearest":
        return np.array([0]), np.ones((factor, 1))
    if kind == "bilinear":
        return np.array([0, 1]), np.stack([1.0 - frac, frac], axis=1)
    if kind == "cc":
        offsets = np.array([-1, 0, 1, 2])
        return offsets, cc_kernel(frac[:, None] - offsets[None, :], a)
    raise ParameterError(f"unsupported classical kernel {kind!r}")


def _resample_axis(arr: np.ndarray, factor: int, offsets: np.ndarray, weights: np.ndarray, axis: int) -> np.ndarray:
    arr = np.moveaxis(arr, axis, 0)
    n = arr.shape[0]
    base = np.arange(n)
    out = np.zeros((n, factor) + arr.shape[1:], dtype=np.float64)
    for k, off in enumerate(offsets):
        src = arr[np.clip(base + off, 0, n - 1)]
        out += weights[None, :, k].reshape((1, factor) + (1,) * (arr.ndim - 1)) * src[:, None]
    out = out.reshape((n * factor,) + arr.shape[1:])
    return np.moveaxis(out, 0, axis)


def resample_array(g: np.ndarray, factor: int, kind: str, a: float = DEFAULT_CC_A) -> np.ndarray:
    """Separable upsampling by an integer ``factor``; results are not clamped."""
    if factor < 2 or int(factor) != factor:
        raise ParameterError(f"factor must be an integer >= 2, got {factor}")
    offsets, weights = _taps(kind, int(factor), a)
    rows = _resample_axis(np.asarray(g, dtype=np.float64), int(factor), offsets, weights, 0)
    return _resample_axis(rows, int(factor), offsets, weights, 1)
