"""IHS pan-sharpening.

The multispectral triplet is split into hue, saturation and value; hue and
saturation are upsampled to the panchromatic grid, the panchromatic band
replaces value, and the result is converted back to RGB. No spectral
weighting of the intensity is applied.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from pansharp.colorspace import hsv_to_rgb_planes, rgb_to_hsv_planes
from pansharp.errors import DimensionError
from pansharp.interpolation import DEFAULT_CC_A, InterpolatorKind, upscale_array
from pansharp.raster import OLI_BLUE, OLI_GREEN, OLI_RED, GridLike, ImageGrid, MultibandImage, as_array, as_grid


@dataclass(frozen=True)
class FusionJob:
    ms: MultibandImage
    pan: ImageGrid
    interpolator: InterpolatorKind = InterpolatorKind.LMMSE
    pan_match: bool = False
    cc_a: float = DEFAULT_CC_A

    def __post_init__(self) -> None:
        object.__setattr__(self, "pan", as_grid(self.pan))
        object.__setattr__(self, "interpolator", InterpolatorKind.parse(self.interpolator))
        self.validate()

    def validate(self) -> None:
        missing = {"Red", "Green", "Blue"} - set(self.ms.names)
        if missing or len(self.ms) != 3:
            raise DimensionError(f"MS image must hold exactly Red, Green and Blue; has {self.ms.names}")
        mh, mw = self.ms.shape
        if self.pan.shape != (2 * mh, 2 * mw):
            raise DimensionError(
                f"PAN must be exactly twice the MS size: MS {mh}x{mw} needs PAN "
                f"{2 * mh}x{2 * mw}, got {self.pan.height}x{self.pan.width}"
            )
        if mh < 2 or mw < 2:
            raise DimensionError(f"MS bands must be at least 2x2, got {mh}x{mw}")


@dataclass(frozen=True)
class FusedImage:
    r: ImageGrid
    g: ImageGrid
    b: ImageGrid
    provenance: dict = field(default_factory=dict)

    @property
    def shape(self) -> tuple[int, int]:
        return self.r.shape

    def as_multiband(self) -> MultibandImage:
        return MultibandImage(((OLI_RED, self.r), (OLI_GREEN, self.g), (OLI_BLUE, self.b)))


def match_pan(pan: GridLike, intensity: GridLike) -> ImageGrid:
    """Affinely rescale ``pan`` to the mean and standard deviation of ``intensity``.

    A constant ``pan`` maps to the constant mean of ``intensity``. The result
    is clamped to [0, 1].
    """
    p = as_array(pan)
    ref = as_array(intensity)
    if p.shape != ref.shape:
        raise DimensionError(f"pan {p.shape} and intensity {ref.shape} differ in size")
    mean_p, std_p = p.mean(), p.std()
    mean_i, std_i = ref.mean(), ref.std()
    if std_p == 0.0:
        out = np.full_like(p, mean_i)
    else:
        out = (p - mean_p) * (std_i / std_p) + mean_i
    return ImageGrid(np.clip(out, 0.0, 1.0))


def ihs_fuse(job: FusionJob) -> FusedImage:
    """Run the IHS substitution for ``job`` and return the fused RGB grids.

    Hue is carried through the upsampling as its cosine and sine so that
    the 0/360 degree wrap does not produce spurious colours.
    """
    job.validate()
    kind = job.interpolator
    r, g, b = job.ms.rgb_arrays()
    hue, sat, val = rgb_to_hsv_planes(r, g, b)
    rad = np.deg2rad(hue)

    def up(plane, lo, hi):
        return np.clip(upscale_array(plane, kind, 2, job.cc_a, clip=(lo, hi)), lo, hi)

    hue_cos = up(np.cos(rad), -1.0, 1.0)
    hue_sin = up(np.sin(rad), -1.0, 1.0)
    sat_up = up(sat, 0.0, 1.0)
    hue_up = np.mod(np.rad2deg(np.arctan2(hue_sin, hue_cos)), 360.0)

    if job.pan_match:
        intensity = match_pan(job.pan, up(val, 0.0, 1.0)).data
    else:
        intensity = job.pan.data

    out_r, out_g, out_b = hsv_to_rgb_planes(hue_up, sat_up, intensity)
    provenance = {
        "interpolator": kind.value,
        "pan_match": job.pan_match,
        "ms_shape": job.ms.shape,
        "pan_shape": job.pan.shape,
    }
    if kind is InterpolatorKind.CUBIC_CONVOLUTION:
        provenance["cc_a"] = job.cc_a
    return FusedImage(ImageGrid(out_r), ImageGrid(out_g), ImageGrid(out_b), provenance)
