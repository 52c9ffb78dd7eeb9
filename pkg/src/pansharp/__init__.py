"""Pan-sharpening with an edge-guided LMMSE interpolator.

The pipeline upsamples the hue and saturation of a 30 m multispectral
triplet to the 15 m panchromatic grid, substitutes the panchromatic band as
intensity (IHS fusion) and scores the result with a global SSIM.

Subpackages and modules
-----------------------
raster
    Grid and band containers, normalization, border extension.
interpolation
    LMMSE 2x upscaler (compiled kernel with numpy fallback) and classical
    nearest / bilinear / cubic-convolution resamplers.
colorspace
    Hexcone RGB <-> HSV.
fusion
    IHS substitution pipeline.
qa
    SSIM, decimation, Table-style quality reports.
synth
    Seeded GMRF textures, edge scenes and Wald degradation.
io
    TIFF / PNG reading and writing.
cli
    ``pansharp`` command-line front end.
"""

from pansharp.errors import (
    DimensionError,
    PansharpError,
    ParameterError,
    RangeError,
    RasterFormatError,
)
from pansharp.raster import OLI_BANDS, BandSpec, ImageGrid, MultibandImage
from pansharp.interpolation import InterpolatorKind, upscale, upscale2x_lmmse
from pansharp.fusion import FusedImage, FusionJob, ihs_fuse
from pansharp.qa import SsimConfig, SsimReport, global_ssim, reduced_reference_qa

__version__ = "0.1.0"

__all__ = [
    "BandSpec",
    "DimensionError",
    "FusedImage",
    "FusionJob",
    "ImageGrid",
    "InterpolatorKind",
    "MultibandImage",
    "OLI_BANDS",
    "PansharpError",
    "ParameterError",
    "RangeError",
    "RasterFormatError",
    "SsimConfig",
    "SsimReport",
    "global_ssim",
    "ihs_fuse",
    "reduced_reference_qa",
    "upscale",
    "upscale2x_lmmse",
]
