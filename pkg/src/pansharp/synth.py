"""Seeded synthetic scenes for interpolator comparisons.

Textures are separable AR(1) Gaussian fields (a simple Gauss-Markov random
field). Edge scenes overlay piecewise-constant colour regions bounded by
straight lines at 0, 45, 90 and 135 degrees. :func:`wald_degrade` turns a
full-resolution RGB reference into an aligned MS/PAN pair.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields

import numpy as np
from scipy.signal import lfilter

from pansharp.errors import DimensionError, ParameterError
from pansharp.raster import GridLike, ImageGrid, as_array

FIELD_LO, FIELD_HI = 0.05, 0.95
PAN_WEIGHTS = (0.299, 0.587, 0.114)
EDGE_ANGLES = (0.0, 45.0, 90.0, 135.0)


@dataclass(frozen=True)
class GmrfParams:
    height: int
    width: int
    rho: float = 0.9
    sigma: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.height < 1 or self.width < 1:
            raise ParameterError(f"field size must be positive, got {self.height}x{self.width}")
        if not 0.0 <= self.rho < 1.0:
            raise ParameterError(f"rho must lie in [0, 1), got {self.rho}")
        if self.sigma < 0:
            raise ParameterError(f"sigma must be >= 0, got {self.sigma}")


def _ar1(x: np.ndarray, rho: float, axis: int) -> np.ndarray:
    # stationary start: scale the first sample by the AR(1) marginal std
    x = np.moveaxis(x.copy(), axis, 0)
    x[0] /= np.sqrt(1.0 - rho * rho)
    y = lfilter([1.0], [1.0, -rho], x, axis=0)
    return np.moveaxis(y, 0, axis)


def _map_range(x: np.ndarray) -> np.ndarray:
    lo, hi = x.min(), x.max()
    if hi - lo <= 0:
        return np.full_like(x, 0.5 * (FIELD_LO + FIELD_HI))
    out = FIELD_LO + (x - lo) * ((FIELD_HI - FIELD_LO) / (hi - lo))
    return np.clip(out, FIELD_LO, FIELD_HI)


def gmrf_field(p: GmrfParams, rng: np.random.Generator | None = None) -> np.ndarray:
    rng = np.random.default_rng(p.seed) if rng is None else rng
    noise = rng.standard_normal((p.height, p.width)) * p.sigma
    if p.sigma == 0:
        return np.full((p.height, p.width), 0.5 * (FIELD_LO + FIELD_HI))
    field = _ar1(_ar1(noise, p.rho, 1), p.rho, 0)
    return _map_range(field)


def gen_gmrf(p: GmrfParams) -> ImageGrid:
    """AR(1) field along rows then columns, mapped affinely onto [0.05, 0.95]."""
    return ImageGrid(gmrf_field(p))


@dataclass(frozen=True)
class SceneParams:
    """Recipe for one synthetic colour scene; serialisable as ``key=value`` text."""

    height: int = 128
    width: int = 128
    rho: float = 0.9
    sigma: float = 1.0
    edge_mix: float = 0.5
    n_edges: int = 8
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.edge_mix <= 1.0:
            raise ParameterError(f"edge_mix must lie in [0, 1], got {self.edge_mix}")
        if self.n_edges < 0:
            raise ParameterError(f"n_edges must be >= 0, got {self.n_edges}")
        GmrfParams(self.height, self.width, self.rho, self.sigma, self.seed)

    def to_text(self) -> str:
        return "".join(f"{k}={v}\n" for k, v in asdict(self).items())

    @classmethod
    def from_text(cls, text: str) -> "SceneParams":
        types = {f.name: f.type for f in fields(cls)}
        values = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, raw = line.partition("=")
            key = key.strip()
            if not sep or key not in types:
                raise ParameterError(f"line {lineno}: unrecognised entry {line!r}")
            values[key] = int(raw) if types[key] in (int, "int") else float(raw)
        return cls(**values)


def edge_pattern(height: int, width: int, n_edges: int, rng: np.random.Generator) -> np.ndarray:
    """Piecewise-constant RGB regions cut by straight lines, shape ``(3, h, w)``.

    Each line passes through a random interior point at one of
    :data:`EDGE_ANGLES`; region membership is the bit pattern of which side
    of every line a pixel falls on, and each pattern gets its own colour.
    """
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    code = np.zeros((height, width), dtype=np.int64)
    for k in range(n_edges):
        theta = np.deg2rad(EDGE_ANGLES[rng.integers(len(EDGE_ANGLES))])
        cy, cx = rng.uniform(0.2, 0.8) * height, rng.uniform(0.2, 0.8) * width
        # offset by 0.37 px so no line hits pixel centres exactly
        side = (xx - cx) * np.sin(theta) - (yy - cy) * np.cos(theta) + 0.37 > 0
        code |= side.astype(np.int64) << k
    palette = rng.uniform(FIELD_LO, FIELD_HI, size=(1 << n_edges, 3))
    return np.moveaxis(palette[code], -1, 0)


def gen_scene(p: SceneParams) -> tuple[ImageGrid, ImageGrid, ImageGrid]:
    """Full-resolution reference RGB: GMRF texture blended with an edge pattern.

    Each band is ``(1 - edge_mix) * texture + edge_mix * region_colour``.
    """
    rng = np.random.default_rng(p.seed)
    # one brightness texture shared by all bands: colour follows the regions
    texture = gmrf_field(GmrfParams(p.height, p.width, p.rho, p.sigma, p.seed), rng)[None]
    texture = np.repeat(texture, 3, axis=0)
    if p.edge_mix > 0 and p.n_edges > 0:
        edges = edge_pattern(p.height, p.width, p.n_edges, rng)
        rgb = (1.0 - p.edge_mix) * texture + p.edge_mix * edges
    else:
        rgb = texture
    return tuple(ImageGrid(np.clip(band, 0.0, 1.0)) for band in rgb)  # type: ignore[return-value]


@dataclass(frozen=True)
class ScenePair:
    reference_rgb: tuple[ImageGrid, ImageGrid, ImageGrid]
    ms_rgb: tuple[ImageGrid, ImageGrid, ImageGrid]
    pan: ImageGrid
    seed: int | None = None


def block_mean(g: GridLike, factor: int = 2) -> np.ndarray:
    arr = as_array(g)
    h, w = arr.shape
    if h % factor or w % factor:
        raise DimensionError(f"grid {h}x{w} is not divisible by {factor}")
    return arr.reshape(h // factor, factor, w // factor, factor).mean(axis=(1, 3))


def wald_degrade(reference_rgb, factor: int = 2, seed: int | None = None) -> ScenePair:
    """Degrade a full-resolution reference into an MS/PAN pair.

    MS bands are 2x2 block means of the reference; PAN is the fixed
    luminance combination of the full-resolution reference bands.

    Raises:
        DimensionError: the reference has odd dimensions or mismatched bands.
    """
    if factor != 2:
        raise ParameterError(f"only factor 2 is supported, got {factor}")
    bands = tuple(as_array(b) for b in reference_rgb)
    if len(bands) != 3:
        raise DimensionError(f"reference must have three bands, got {len(bands)}")
    shapes = {b.shape for b in bands}
    if len(shapes) != 1:
        raise DimensionError(f"reference bands differ in size: {[b.shape for b in bands]}")
    h, w = bands[0].shape
    if h % 2 or w % 2:
        raise DimensionError(f"reference dimensions must be even, got {h}x{w}")
    ms = tuple(ImageGrid(block_mean(b, factor)) for b in bands)
    pan = PAN_WEIGHTS[0] * bands[0] + PAN_WEIGHTS[1] * bands[1] + PAN_WEIGHTS[2] * bands[2]
    return ScenePair(
        reference_rgb=tuple(ImageGrid(b) for b in bands),  # type: ignore[arg-type]
        ms_rgb=ms,  # type: ignore[arg-type]
        pan=ImageGrid(np.clip(pan, 0.0, 1.0)),
        seed=seed,
    )


def make_scene_pair(p: SceneParams) -> ScenePair:
    if p.height % 2 or p.width % 2:
        raise DimensionError(f"scene dimensions must be even, got {p.height}x{p.width}")
    return wald_degrade(gen_scene(p), 2, p.seed)
