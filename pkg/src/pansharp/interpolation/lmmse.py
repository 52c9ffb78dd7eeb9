"""Edge-guided LMMSE doubling.

Each missing pixel is estimated from two directional means (45/135 degrees
in the first pass, 0/90 degrees in the second). The means are blended with
weights inversely proportional to the spread of each direction's samples
about their common centre, which is the minimum-variance convex combination
of two unbiased estimates with independent errors.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from pansharp.errors import DimensionError, ParameterError
from pansharp.interpolation import _lmmse_py
from pansharp.raster import GridLike, ImageGrid, as_array

VAR_EPS = _lmmse_py.VAR_EPS

_BACKENDS = {"python": _lmmse_py.upscale2x}
try:
    from pansharp.interpolation import _lmmse_ext

    _BACKENDS["cython"] = _lmmse_ext.upscale2x
except ImportError:  # pragma: no cover - depends on the build
    _lmmse_ext = None

#: Backend used when none is requested; ``PANSHARP_BACKEND`` overrides it.
DEFAULT_BACKEND = os.environ.get("PANSHARP_BACKEND") or ("cython" if "cython" in _BACKENDS else "python")
if DEFAULT_BACKEND not in _BACKENDS:
    raise ImportError(
        f"PANSHARP_BACKEND={DEFAULT_BACKEND!r} is not available; choose from {sorted(_BACKENDS)}"
    )


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


@dataclass(frozen=True)
class DirectionalEstimate:
    """Intermediate quantities of one LMMSE estimate."""

    x45: float
    x135: float
    u: float
    var45: float
    var135: float
    w45: float
    w135: float
    value: float


def lmmse_weights(var45: float, var135: float) -> tuple[float, float]:
    """Minimum-MSE weights for the 45 and 135 degree estimates.

    The direction with the smaller error variance gets the larger weight.
    Both weights fall back to 0.5 when the variance sum is below ``VAR_EPS``.
    """
    if var45 < 0 or var135 < 0:
        raise ParameterError(f"variances must be non-negative, got {var45}, {var135}")
    total = var135 + var45
    if total < VAR_EPS:
        return 0.5, 0.5
    w45 = var135 / total
    return w45, 1.0 - w45


def directional_estimate(p1: float, p2: float, q1: float, q2: float) -> DirectionalEstimate:
    """LMMSE blend of direction p (samples p1, p2) and direction q (q1, q2).

    Fields are named for the first pass: p maps to 45 degrees, q to 135.
    """
    xp = (p1 + p2) * 0.5
    xq = (q1 + q2) * 0.5
    u = (xp + xq) * 0.5
    var_p = ((p1 - u) ** 2 + (xp - u) ** 2 + (p2 - u) ** 2) / 3.0
    var_q = ((q1 - u) ** 2 + (xq - u) ** 2 + (q2 - u) ** 2) / 3.0
    w_p, w_q = lmmse_weights(var_p, var_q)
    return DirectionalEstimate(xp, xq, u, var_p, var_q, w_p, w_q, w_p * xp + w_q * xq)


def diagonal_variances(a: float, b: float, c: float, d: float) -> DirectionalEstimate:
    """First-pass estimate at the centre of a 2x2 block.

    ``a`` = x(i, j), ``b`` = x(i, j+1), ``c`` = x(i+1, j), ``d`` = x(i+1, j+1).
    The 45 degree pair is (b, c) and the 135 degree pair is (a, d).
    """
    return directional_estimate(b, c, a, d)


def upscale2x_lmmse_array(g: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Array-level doubling with no range checks on the values."""
    arr = np.ascontiguousarray(g, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 2 or arr.shape[1] < 2:
        raise DimensionError(f"LMMSE upscaling needs a grid of at least 2x2, got {arr.shape}")
    name = backend or DEFAULT_BACKEND
    try:
        kernel = _BACKENDS[name]
    except KeyError:
        raise ParameterError(f"unknown backend {name!r}; available: {available_backends()}") from None
    return np.asarray(kernel(arr))


def upscale2x_lmmse(g: GridLike, backend: str | None = None) -> ImageGrid:
    """Double both dimensions of ``g`` with the two-pass LMMSE scheme.

    Input pixel (i, j) is copied to output (2i, 2j). Pass 1 fills the
    odd/odd sites from diagonal neighbours; pass 2 fills the remaining half
    from horizontal and vertical neighbours, mixing originals and pass-1
    values. Neighbours beyond the grid replicate the nearest edge sample.

    Args:
        g: Grid of at least 2x2 pixels.
        backend: ``"cython"`` or ``"python"``; defaults to :data:`DEFAULT_BACKEND`.

    Raises:
        DimensionError: ``g`` is smaller than 2x2.
    """
    return ImageGrid(upscale2x_lmmse_array(as_array(g), backend))
