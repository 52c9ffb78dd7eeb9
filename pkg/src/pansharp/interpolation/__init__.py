"""Upsampling kernels.

The LMMSE doubler has two interchangeable backends: a compiled Cython
kernel (``_lmmse_ext``) and a vectorised numpy fallback (``_lmmse_py``).
The compiled one is used when it imports; set ``PANSHARP_BACKEND=python``
to force the fallback.
"""

from __future__ import annotations

import enum

import numpy as np

from pansharp.errors import DimensionError, ParameterError
from pansharp.interpolation.classical import DEFAULT_CC_A, cc_kernel, resample_array
from pansharp.interpolation.lmmse import (
    DEFAULT_BACKEND,
    VAR_EPS,
    DirectionalEstimate,
    available_backends,
    diagonal_variances,
    directional_estimate,
    lmmse_weights,
    upscale2x_lmmse,
    upscale2x_lmmse_array,
)
from pansharp.raster import GridLike, ImageGrid, as_array


class InterpolatorKind(enum.Enum):
    NEAREST = "nearest"
    BILINEAR = "bilinear"
    CUBIC_CONVOLUTION = "cc"
    LMMSE = "lmmse"

    @property
    def kernel_param(self) -> float | None:
        """Default Keys parameter for cubic convolution, ``None`` otherwise."""
        return DEFAULT_CC_A if self is InterpolatorKind.CUBIC_CONVOLUTION else None

    @classmethod
    def parse(cls, name: "str | InterpolatorKind") -> "InterpolatorKind":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        aliases = {"cubic": cls.CUBIC_CONVOLUTION, "bicubic": cls.CUBIC_CONVOLUTION, "bl": cls.BILINEAR, "nn": cls.NEAREST}
        if key in aliases:
            return aliases[key]
        for kind in cls:
            if key in (kind.value, kind.name.lower()):
                return kind
        choices = ", ".join(k.value for k in cls)
        raise ParameterError(f"unknown interpolator {name!r}; valid kinds: {choices}")


def upscale_array(
    g: np.ndarray,
    kind: InterpolatorKind,
    factor: int = 2,
    a: float = DEFAULT_CC_A,
    clip: tuple[float, float] | None = (0.0, 1.0),
) -> np.ndarray:
    """Upsample a raw float array; ``clip`` bounds cubic-convolution overshoot."""
    kind = InterpolatorKind.parse(kind)
    if kind is InterpolatorKind.LMMSE:
        if factor != 2:
            raise ParameterError(f"LMMSE upscaling supports factor 2 only, got {factor}")
        return upscale2x_lmmse_array(g)
    arr = np.asarray(g, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 2 or arr.shape[1] < 2:
        raise DimensionError(f"upscaling needs a grid of at least 2x2, got {arr.shape}")
    out = resample_array(arr, factor, kind.value, a)
    if kind is InterpolatorKind.CUBIC_CONVOLUTION and clip is not None:
        out = np.clip(out, clip[0], clip[1])
    return out


def upscale_classical(g: GridLike, factor: int, kind: InterpolatorKind, a: float = DEFAULT_CC_A) -> ImageGrid:
    """Nearest, bilinear or cubic-convolution upsampling by an integer factor.

    Output is ``(factor*h, factor*w)`` with input (i, j) at output
    (factor*i, factor*j). Cubic-convolution results are clamped to [0, 1].

    Raises:
        ParameterError: ``kind`` is LMMSE or unknown, or ``factor`` < 2.
    """
    kind = InterpolatorKind.parse(kind)
    if kind is InterpolatorKind.LMMSE:
        raise ParameterError("upscale_classical does not handle LMMSE; use upscale2x_lmmse")
    return ImageGrid(upscale_array(as_array(g), kind, factor, a))


def upscale(g: GridLike, kind: InterpolatorKind | str = InterpolatorKind.LMMSE, factor: int = 2, a: float = DEFAULT_CC_A) -> ImageGrid:
    """Dispatch to the interpolator selected by ``kind``."""
    return ImageGrid(upscale_array(as_array(g), InterpolatorKind.parse(kind), factor, a))


__all__ = [
    "DEFAULT_BACKEND",
    "DEFAULT_CC_A",
    "VAR_EPS",
    "DirectionalEstimate",
    "InterpolatorKind",
    "available_backends",
    "cc_kernel",
    "diagonal_variances",
    "directional_estimate",
    "lmmse_weights",
    "upscale",
    "upscale2x_lmmse",
    "upscale_array",
    "upscale_classical",
]
