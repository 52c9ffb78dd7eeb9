"""Raster data model: single-band grids, band metadata and multiband stacks.

All arithmetic in the package runs on normalized float64 intensities in
[0, 1]. Integer-coded samples (8, 12 or 16 bit) enter through
:func:`normalize` and leave through :func:`denormalize`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from pansharp.errors import DimensionError, ParameterError, RangeError

SUPPORTED_BIT_DEPTHS = (8, 12, 16)


@dataclass(frozen=True, eq=False)
class ImageGrid:
    """Immutable single-band raster of normalized intensities.

    ``data`` is stored as a read-only C-contiguous float64 array of shape
    ``(height, width)``. Values must be finite and lie in [0, 1].
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=np.float64, order="C", copy=True)
        if arr.ndim != 2:
            raise DimensionError(f"ImageGrid needs a 2-D array, got shape {arr.shape}")
        if arr.size == 0:
            raise DimensionError("ImageGrid cannot be empty")
        if not np.all(np.isfinite(arr)):
            raise RangeError("ImageGrid values must be finite")
        if arr.min() < 0.0 or arr.max() > 1.0:
            idx = np.unravel_index(np.argmax((arr < 0.0) | (arr > 1.0)), arr.shape)
            raise RangeError(
                f"ImageGrid value {arr[idx]!r} at (row={idx[0]}, col={idx[1]}) is outside [0, 1]"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.data
        return self.data.astype(dtype)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImageGrid):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"ImageGrid({self.height}x{self.width})"

    @classmethod
    def constant(cls, height: int, width: int, value: float) -> "ImageGrid":
        return cls(np.full((height, width), value, dtype=np.float64))


GridLike = Union[ImageGrid, np.ndarray, Sequence[Sequence[float]]]


def as_grid(g: GridLike) -> ImageGrid:
    """Return ``g`` unchanged if it is an ImageGrid, else wrap it."""
    return g if isinstance(g, ImageGrid) else ImageGrid(np.asarray(g, dtype=np.float64))


def as_array(g: GridLike) -> np.ndarray:
    """Float64 2-D view of a grid-like object (no range validation)."""
    if isinstance(g, ImageGrid):
        return g.data
    arr = np.asarray(g, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-D raster, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class BandSpec:
    """Spectral band description (wavelengths in micrometers, resolution in meters)."""

    band_number: int
    name: str
    wavelength_lo: float
    wavelength_hi: float
    native_resolution: float


# Landsat-8 OLI bands used for natural-colour pan-sharpening.
OLI_BLUE = BandSpec(2, "Blue", 0.450, 0.515, 30.0)
OLI_GREEN = BandSpec(3, "Green", 0.525, 0.600, 30.0)
OLI_RED = BandSpec(4, "Red", 0.630, 0.680, 30.0)
OLI_PAN = BandSpec(8, "Panchromatic", 0.500, 0.680, 15.0)

OLI_BANDS: dict[str, BandSpec] = {
    "Blue": OLI_BLUE,
    "Green": OLI_GREEN,
    "Red": OLI_RED,
    "Panchromatic": OLI_PAN,
}

RGB_NAMES = ("Red", "Green", "Blue")


def oli_band(key: str | int) -> BandSpec:
    """Look up an OLI band by name, single-letter alias or band number."""
    if isinstance(key, int):
        for spec in OLI_BANDS.values():
            if spec.band_number == key:
                return spec
        raise ParameterError(f"no OLI band number {key}; known: 2, 3, 4, 8")
    lookup = {name.lower(): spec for name, spec in OLI_BANDS.items()}
    lookup.update(r=OLI_RED, g=OLI_GREEN, b=OLI_BLUE, pan=OLI_PAN)
    try:
        return lookup[key.lower()]
    except KeyError:
        raise ParameterError(f"unknown OLI band {key!r}") from None


@dataclass(frozen=True)
class MultibandImage:
    """Ordered, equally sized set of bands."""

    bands: tuple[tuple[BandSpec, ImageGrid], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        bands = tuple((spec, as_grid(grid)) for spec, grid in self.bands)
        if not bands:
            raise DimensionError("MultibandImage needs at least one band")
        shapes = {grid.shape for _, grid in bands}
        if len(shapes) != 1:
            listing = ", ".join(f"{s.name}={g.height}x{g.width}" for s, g in bands)
            raise DimensionError(f"band dimensions differ: {listing}")
        object.__setattr__(self, "bands", bands)

    @classmethod
    def from_grids(cls, grids: Iterable[GridLike], specs: Iterable[BandSpec]) -> "MultibandImage":
        return cls(tuple(zip(specs, (as_grid(g) for g in grids), strict=True)))

    @classmethod
    def rgb(cls, r: GridLike, g: GridLike, b: GridLike) -> "MultibandImage":
        return cls.from_grids((r, g, b), (OLI_RED, OLI_GREEN, OLI_BLUE))

    @property
    def shape(self) -> tuple[int, int]:
        return self.bands[0][1].shape

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(spec.name for spec, _ in self.bands)

    def __len__(self) -> int:
        return len(self.bands)

    def __iter__(self) -> Iterator[tuple[BandSpec, ImageGrid]]:
        return iter(self.bands)

    def band(self, name: str) -> ImageGrid:
        for spec, grid in self.bands:
            if spec.name.lower() == name.lower():
                return grid
        raise KeyError(name)

    def rgb_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Red, green and blue planes regardless of storage order."""
        try:
            return tuple(self.band(n).data for n in RGB_NAMES)  # type: ignore[return-value]
        except KeyError as exc:
            raise DimensionError(f"image lacks band {exc.args[0]}; has {self.names}") from None

    def stack(self) -> np.ndarray:
        """Bands as a ``(n_bands, height, width)`` array, in storage order."""
        return np.stack([grid.data for _, grid in self.bands])


def normalize(raw, bit_depth: int) -> ImageGrid:
    """Map integer codes to [0, 1] by dividing by ``2**bit_depth - 1``.

    Raises:
        ParameterError: unsupported bit depth.
        RangeError: a code is negative or above the maximum for ``bit_depth``;
            the message names the first offending (row, col).
    """
    if bit_depth not in SUPPORTED_BIT_DEPTHS:
        raise ParameterError(f"bit_depth must be one of {SUPPORTED_BIT_DEPTHS}, got {bit_depth}")
    arr = np.asarray(raw)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-D raster, got shape {arr.shape}")
    if arr.dtype.kind not in "iub":
        if not np.all(np.isfinite(arr)) or not np.array_equal(arr, np.round(arr)):
            raise RangeError("raw samples must be integer codes")
    max_code = (1 << bit_depth) - 1
    bad = (arr < 0) | (arr > max_code)
    if np.any(bad):
        row, col = np.unravel_index(np.argmax(bad), arr.shape)
        raise RangeError(
            f"code {arr[row, col]} at (row={row}, col={col}) exceeds the {bit_depth}-bit range 0..{max_code}"
        )
    return ImageGrid(arr.astype(np.float64) / max_code)


def denormalize(g: GridLike, bit_depth: int) -> np.ndarray:
    """Inverse of :func:`normalize` with round-half-up to integer codes."""
    if bit_depth not in SUPPORTED_BIT_DEPTHS:
        raise ParameterError(f"bit_depth must be one of {SUPPORTED_BIT_DEPTHS}, got {bit_depth}")
    max_code = (1 << bit_depth) - 1
    codes = np.floor(np.clip(as_array(g), 0.0, 1.0) * max_code + 0.5)
    return codes.astype(np.uint8 if bit_depth == 8 else np.uint16)


def extend_border(g: GridLike, margin: int) -> ImageGrid:
    """Pad by ``margin`` pixels on every side, replicating the nearest edge pixel."""
    if margin < 1:
        raise ParameterError(f"margin must be >= 1, got {margin}")
    return ImageGrid(np.pad(as_array(g), margin, mode="edge"))
