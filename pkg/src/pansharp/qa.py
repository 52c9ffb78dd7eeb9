"""Global SSIM and reduced-reference fusion quality reports.

SSIM is evaluated once per band over the whole grid (population statistics)
in its three-factor luminance / contrast / structure form. The reduced
reference protocol decimates the fused image back onto the MS lattice and
scores it against the original MS bands.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from pansharp.errors import DimensionError, ParameterError
from pansharp.raster import RGB_NAMES, GridLike, ImageGrid, MultibandImage, as_array


def _fused_rgb(fused) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if isinstance(fused, MultibandImage):
        return fused.rgb_arrays()
    return fused.r.data, fused.g.data, fused.b.data


@dataclass(frozen=True)
class SsimConfig:
    """Stabilisation constants for unit dynamic range."""

    c1: float = 0.01**2
    c2: float = 0.03**2
    c3: float = 0.03**2 / 2

    def __post_init__(self) -> None:
        if min(self.c1, self.c2, self.c3) <= 0:
            raise ParameterError(f"SSIM constants must be positive, got {self}")


@dataclass(frozen=True)
class SsimStats:
    mean_x: float
    mean_y: float
    std_x: float
    std_y: float
    cov_xy: float


def ssim_stats(x: GridLike, y: GridLike) -> SsimStats:
    xa, ya = as_array(x), as_array(y)
    if xa.shape != ya.shape:
        raise DimensionError(f"SSIM inputs differ in size: {xa.shape} vs {ya.shape}")
    if xa.size < 2:
        raise DimensionError("SSIM needs at least 2 pixels")
    mx, my = xa.mean(), ya.mean()
    dx, dy = xa - mx, ya - my
    return SsimStats(
        mean_x=float(mx),
        mean_y=float(my),
        std_x=float(np.sqrt(np.mean(dx * dx))),
        std_y=float(np.sqrt(np.mean(dy * dy))),
        cov_xy=float(np.mean(dx * dy)),
    )


def ssim_from_stats(st: SsimStats, cfg: SsimConfig = SsimConfig()) -> float:
    sxy = st.std_x * st.std_y
    luminance = (2.0 * st.mean_x * st.mean_y + cfg.c1) / (st.mean_x**2 + st.mean_y**2 + cfg.c1)
    contrast = (2.0 * sxy + cfg.c2) / (st.std_x**2 + st.std_y**2 + cfg.c2)
    structure = (st.cov_xy + cfg.c3) / (sxy + cfg.c3)
    # bounded analytically; clip rounding excursions
    return float(np.clip(luminance * contrast * structure, -1.0, 1.0))


def global_ssim(x: GridLike, y: GridLike, cfg: SsimConfig = SsimConfig()) -> float:
    """Single SSIM value over the whole of two equally sized grids.

    Raises:
        DimensionError: shapes differ or the grids hold fewer than 2 pixels.
    """
    return ssim_from_stats(ssim_stats(x, y), cfg)


def downsample_phase(g: GridLike, factor: int, phase: tuple[int, int] = (0, 0)) -> ImageGrid:
    """Pure decimation: keep pixels at ``(factor*i + phase[0], factor*j + phase[1])``."""
    if factor < 2:
        raise ParameterError(f"factor must be >= 2, got {factor}")
    pr, pc = phase
    if not (0 <= pr < factor and 0 <= pc < factor):
        raise ParameterError(f"phase {phase} out of range for factor {factor}")
    arr = as_array(g)
    if arr.shape[0] <= pr or arr.shape[1] <= pc:
        raise DimensionError(f"grid {arr.shape} too small for phase {phase}")
    return ImageGrid(arr[pr::factor, pc::factor])


def similarity_percent(average: float) -> float:
    """Map an SSIM value on [-1, 1] to a similarity percentage on [0, 100]."""
    return (average + 1.0) / 2.0 * 100.0


@dataclass(frozen=True)
class SsimReport:
    per_band: dict[str, float]
    average: float
    similarity_percent: float

    @classmethod
    def from_bands(cls, per_band: dict[str, float]) -> "SsimReport":
        avg = float(np.mean(list(per_band.values())))
        return cls(dict(per_band), avg, similarity_percent(avg))

    def to_table(self, label: str = "SSIM") -> str:
        """Plain-text table: one row per band, then Average and Similarity (%)."""
        width = max(len("Similarity (%)"), *(len(k) for k in self.per_band))
        lines = [f"{'Color Band':<{width}}  {label}"]
        for name, value in self.per_band.items():
            lines.append(f"{name:<{width}}  {value:.4f}")
        lines.append(f"{'Average':<{width}}  {self.average:.4f}")
        lines.append(f"{'Similarity (%)':<{width}}  {self.similarity_percent:.2f}")
        return "\n".join(lines)

    def to_kv(self) -> str:
        """``key=value`` lines for scripts."""
        lines = [f"ssim.{name.lower()}={value:.10f}" for name, value in self.per_band.items()]
        lines.append(f"ssim.average={self.average:.10f}")
        lines.append(f"similarity_percent={self.similarity_percent:.6f}")
        return "\n".join(lines)

    @classmethod
    def from_kv(cls, text: str) -> "SsimReport":
        values: dict[str, float] = {}
        for line in text.splitlines():
            if "=" in line:
                key, _, raw = line.partition("=")
                values[key.strip()] = float(raw)
        per_band = {
            k[len("ssim."):].capitalize(): v
            for k, v in values.items()
            if k.startswith("ssim.") and k != "ssim.average"
        }
        return cls(per_band, values["ssim.average"], values["similarity_percent"])


def reduced_reference_qa(fused, ms: MultibandImage, cfg: SsimConfig = SsimConfig()) -> SsimReport:
    """Decimate ``fused`` at factor 2, phase (0, 0) and score each band against ``ms``.

    ``fused`` may be a :class:`~pansharp.fusion.FusedImage` or an RGB
    :class:`MultibandImage` at twice the MS size.
    """
    planes = _fused_rgb(fused)
    ms_planes = ms.rgb_arrays()
    mh, mw = ms.shape
    if planes[0].shape != (2 * mh, 2 * mw):
        raise DimensionError(
            f"fused image {planes[0].shape[0]}x{planes[0].shape[1]} is not twice the MS size {mh}x{mw}"
        )
    per_band = {
        name: global_ssim(downsample_phase(plane, 2, (0, 0)), ref, cfg)
        for name, plane, ref in zip(RGB_NAMES, planes, ms_planes)
    }
    return SsimReport.from_bands(per_band)


def full_reference_qa(fused, reference: MultibandImage, cfg: SsimConfig = SsimConfig()) -> SsimReport:
    """Score ``fused`` against a reference RGB image of the same size (Wald protocol)."""
    planes = _fused_rgb(fused)
    ref_planes = reference.rgb_arrays()
    if planes[0].shape != ref_planes[0].shape:
        raise DimensionError(f"fused {planes[0].shape} and reference {ref_planes[0].shape} differ in size")
    per_band = {name: global_ssim(p, q, cfg) for name, p, q in zip(RGB_NAMES, planes, ref_planes)}
    return SsimReport.from_bands(per_band)
