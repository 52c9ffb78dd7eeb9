"""Raster file input/output.

TIFF goes through :mod:`tifffile` restricted to a baseline subset: strips or
tiles, uncompressed or deflate, unsigned 8/16-bit, one or three samples per
pixel. GeoTIFF tags are carried as an opaque byte block and written back
verbatim. PNG (8/16-bit grey or truecolour) goes through :mod:`png`.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence, Union

import numpy as np
import png
import tifffile

from pansharp.errors import DimensionError, ParameterError, RasterFormatError
from pansharp.raster import (
    BandSpec,
    ImageGrid,
    MultibandImage,
    denormalize,
    normalize,
    oli_band,
)

# ModelPixelScale, ModelTiepoint, ModelTransformation, GeoKeyDirectory,
# GeoDoubleParams, GeoAsciiParams, GDAL_METADATA, GDAL_NODATA
GEO_TAGS = (33550, 33922, 34264, 34735, 34736, 34737, 42112, 42113)
SUPPORTED_COMPRESSION = {1: "none", 8: "deflate", 32946: "deflate"}

_GEO_MAGIC = b"PSGEO1"
_ENTRY = struct.Struct("<HHII")
# TIFF field type -> numpy scalar code
_TIFF_TYPES = {1: "u1", 3: "u2", 4: "u4", 6: "i1", 7: "u1", 8: "i2", 9: "i4", 11: "f4", 12: "f8", 16: "u8", 17: "i8"}


@dataclass(frozen=True)
class RasterFile:
    """Where and how a raster is (or will be) stored."""

    path: Path
    format: str = "TIFF"
    bit_depth: int = 16
    bands: int = 1
    opaque_geo_metadata: bytes = b""
    byteorder: str = "<"

    def __post_init__(self) -> None:
        object.__setattr__(self, "path", Path(self.path))
        fmt = self.format.upper()
        if fmt not in ("TIFF", "PNG"):
            raise ParameterError(f"format must be TIFF or PNG, got {self.format!r}")
        object.__setattr__(self, "format", fmt)
        if self.bit_depth not in (8, 16):
            raise ParameterError(f"stored bit depth must be 8 or 16, got {self.bit_depth}")
        if self.bands not in (1, 3):
            raise ParameterError(f"bands must be 1 or 3, got {self.bands}")

    @classmethod
    def for_path(cls, path, **kwargs) -> "RasterFile":
        """Pick the format from the file suffix."""
        suffix = Path(path).suffix.lower()
        fmt = "PNG" if suffix == ".png" else "TIFF"
        return cls(Path(path), fmt, **kwargs)


Image = Union[ImageGrid, MultibandImage]


def _pack_geo(entries: list[tuple[int, int, int, bytes]], byteorder: str) -> bytes:
    if not entries:
        return b""
    out = [_GEO_MAGIC, byteorder.encode("ascii")]
    for code, dtype, count, raw in entries:
        out.append(_ENTRY.pack(code, dtype, count, len(raw)))
        out.append(raw)
    return b"".join(out)


def _unpack_geo(blob: bytes) -> tuple[str, list[tuple[int, int, int, bytes]]]:
    if not blob:
        return "<", []
    if not blob.startswith(_GEO_MAGIC):
        raise RasterFormatError("geo metadata block has an unknown layout")
    byteorder = blob[len(_GEO_MAGIC) : len(_GEO_MAGIC) + 1].decode("ascii")
    pos = len(_GEO_MAGIC) + 1
    entries = []
    while pos < len(blob):
        code, dtype, count, nbytes = _ENTRY.unpack_from(blob, pos)
        pos += _ENTRY.size
        entries.append((code, dtype, count, blob[pos : pos + nbytes]))
        pos += nbytes
    return byteorder, entries


def geo_tag_bytes(blob: bytes) -> dict[int, bytes]:
    """Raw on-disk value bytes of each geo tag in an opaque block."""
    return {code: raw for code, _, _, raw in _unpack_geo(blob)[1]}


def _extratag(code: int, dtype: int, count: int, raw: bytes, byteorder: str):
    if dtype == 2:
        return (code, 2, count, raw.rstrip(b"\0").decode("latin-1"), True)
    if dtype in (5, 10):  # RATIONAL / SRATIONAL: numerator, denominator pairs
        base = "u4" if dtype == 5 else "i4"
        values = np.frombuffer(raw, dtype=byteorder + base)
        return (code, dtype, count, tuple(int(v) for v in values), True)
    if dtype not in _TIFF_TYPES:
        raise RasterFormatError(f"geo tag {code} has unsupported field type {dtype}")
    if dtype in (1, 7):
        return (code, dtype, count, bytes(raw), True)
    values = np.frombuffer(raw, dtype=byteorder + _TIFF_TYPES[dtype])
    return (code, dtype, count, tuple(values.tolist()), True)


def _read_tiff(path: Path) -> tuple[np.ndarray, RasterFile]:
    try:
        tf = tifffile.TiffFile(path)
    except Exception as exc:  # tifffile raises a mix of ValueError/TiffFileError
        raise RasterFormatError(f"{path}: not a readable TIFF ({exc})") from exc
    with tf:
        if not tf.pages:
            raise RasterFormatError(f"{path}: TIFF holds no images")
        page = tf.pages[0]
        comp = int(page.compression)
        if comp not in SUPPORTED_COMPRESSION:
            raise RasterFormatError(
                f"{path}: unsupported TIFF compression (tag 259 = {comp}); "
                "only 1 (none) and 8/32946 (deflate) are supported"
            )
        if page.dtype not in (np.dtype(np.uint8), np.dtype(np.uint16)):
            raise RasterFormatError(f"{path}: unsupported sample type {page.dtype}; need uint8 or uint16")
        if page.samplesperpixel not in (1, 3):
            raise RasterFormatError(f"{path}: {page.samplesperpixel} samples per pixel; need 1 or 3")
        try:
            data = page.asarray()
        except Exception as exc:
            raise RasterFormatError(f"{path}: truncated or corrupt image data ({exc})") from exc
        entries = []
        fh = tf.filehandle
        for tag in page.tags:
            if tag.code in GEO_TAGS:
                fh.seek(tag.valueoffset)
                raw = fh.read(tag.valuebytecount)
                if len(raw) != tag.valuebytecount:
                    raise RasterFormatError(f"{path}: geo tag {tag.code} is truncated")
                entries.append((tag.code, int(tag.dtype), tag.count, raw))
        byteorder = tf.byteorder
    bands = 1
    if page.samplesperpixel == 3:
        if data.ndim == 3 and data.shape[0] == 3 and data.shape[-1] != 3:
            data = np.moveaxis(data, 0, -1)  # planar-separate storage
        bands = 3
    spec = RasterFile(
        path,
        "TIFF",
        bit_depth=8 if data.dtype == np.uint8 else 16,
        bands=bands,
        opaque_geo_metadata=_pack_geo(entries, byteorder),
        byteorder=byteorder,
    )
    return data, spec


def _read_png(path: Path) -> tuple[np.ndarray, RasterFile]:
    try:
        width, height, rows, info = png.Reader(filename=str(path)).asDirect()
        flat = np.vstack([np.asarray(row) for row in rows])
    except Exception as exc:
        raise RasterFormatError(f"{path}: not a readable PNG ({exc})") from exc
    if info.get("alpha"):
        raise RasterFormatError(f"{path}: PNG with alpha channel is not supported")
    planes = info["planes"]
    depth = info["bitdepth"]
    if depth not in (8, 16):
        raise RasterFormatError(f"{path}: PNG bit depth {depth} is not supported; need 8 or 16")
    data = flat.reshape(height, width, planes) if planes == 3 else flat.reshape(height, width)
    data = data.astype(np.uint8 if depth == 8 else np.uint16)
    return data, RasterFile(path, "PNG", bit_depth=depth, bands=planes)


def read_codes(path) -> tuple[np.ndarray, RasterFile]:
    """Raw integer samples, ``(h, w)`` or ``(h, w, 3)``, with the file description."""
    path = Path(path)
    with open(path, "rb") as fh:
        magic = fh.read(8)
    if magic.startswith(b"\x89PNG"):
        return _read_png(path)
    if magic[:4] in (b"II*\x00", b"MM\x00*"):
        return _read_tiff(path)
    if magic[:4] in (b"II+\x00", b"MM\x00+"):
        raise RasterFormatError(f"{path}: BigTIFF is not supported")
    raise RasterFormatError(f"{path}: unrecognised raster format")


def read_raster(path, bit_depth: int | None = None, band_names: Sequence[str] = ("Red", "Green", "Blue")) -> tuple[Image, RasterFile]:
    """Read and normalise a raster.

    Args:
        path: TIFF or PNG file.
        bit_depth: Radiometric depth used for normalisation; defaults to the
            container depth. Pass 12 for Landsat 12-bit data in 16-bit files.
        band_names: Names attached to the samples of a 3-band file.

    Returns:
        An :class:`ImageGrid` for single-band files, otherwise a
        :class:`MultibandImage`, together with the :class:`RasterFile`.
    """
    data, spec = read_codes(path)
    depth = bit_depth or spec.bit_depth
    if data.ndim == 2:
        return normalize(data, depth), spec
    specs = [oli_band(n) for n in band_names]
    grids = [normalize(data[..., k], depth) for k in range(3)]
    return MultibandImage.from_grids(grids, specs), spec


def _planes(image) -> list[np.ndarray]:
    if isinstance(image, ImageGrid):
        return [image.data]
    if isinstance(image, MultibandImage):
        return list(image.rgb_arrays()) if len(image) == 3 else [g.data for _, g in image]
    if hasattr(image, "as_multiband"):
        return list(image.as_multiband().rgb_arrays())
    if isinstance(image, (tuple, list)):
        return [np.asarray(getattr(g, "data", g), dtype=np.float64) for g in image]
    return [np.asarray(image, dtype=np.float64)]


def write_raster(image, spec: RasterFile) -> Path:
    """Denormalise ``image`` to ``spec.bit_depth`` (round half up) and write it.

    ``image`` may be an ImageGrid, an RGB MultibandImage, a FusedImage or a
    sequence of three grids. Geo metadata in ``spec`` is written back
    byte-for-byte, using the byte order it was read with.
    """
    planes = _planes(image)
    if len(planes) not in (1, 3):
        raise DimensionError(f"can only write 1 or 3 bands, got {len(planes)}")
    if len({p.shape for p in planes}) != 1:
        raise DimensionError(f"bands differ in size: {[p.shape for p in planes]}")
    for p in planes:
        if not np.all(np.isfinite(p)) or p.min() < 0.0 or p.max() > 1.0:
            raise DimensionError("image values must be finite and within [0, 1]")
    codes = [denormalize(p, spec.bit_depth) for p in planes]
    data = codes[0] if len(codes) == 1 else np.stack(codes, axis=-1)
    spec = replace(spec, bands=len(codes))
    path = spec.path
    if path.parent and not path.parent.exists():
        raise FileNotFoundError(f"output directory {path.parent} does not exist")

    if spec.format == "PNG":
        h, w = data.shape[:2]
        writer = png.Writer(w, h, greyscale=data.ndim == 2, bitdepth=spec.bit_depth)
        rows = data.reshape(h, -1)
        with open(path, "wb") as fh:
            writer.write(fh, rows.tolist())
        return path

    byteorder, entries = _unpack_geo(spec.opaque_geo_metadata)
    if not entries:
        byteorder = spec.byteorder
    extratags = [_extratag(code, dtype, count, raw, byteorder) for code, dtype, count, raw in entries]
    tifffile.imwrite(
        path,
        data,
        byteorder=byteorder,
        photometric="rgb" if data.ndim == 3 else "minisblack",
        planarconfig="contig" if data.ndim == 3 else None,
        extratags=extratags,
        metadata=None,
    )
    return path


def stack_bands(paths: Sequence, names: Sequence[str] = ("Red", "Green", "Blue"), bit_depth: int | None = None) -> MultibandImage:
    """Load three single-band files as one MultibandImage.

    ``names`` declares which band each file holds (in file order); the
    OLI band descriptions are attached accordingly. Landsat's B4, B3, B2
    files map to ``("Red", "Green", "Blue")``.
    """
    if len(paths) != 3 or len(names) != 3:
        raise DimensionError(f"need exactly three files and three names, got {len(paths)} and {len(names)}")
    grids: list[ImageGrid] = []
    for path in paths:
        img, _ = read_raster(path, bit_depth)
        if not isinstance(img, ImageGrid):
            raise DimensionError(f"{path} has more than one band")
        grids.append(img)
    if len({g.shape for g in grids}) != 1:
        dims = ", ".join(f"{Path(p).name}: {g.height}x{g.width}" for p, g in zip(paths, grids))
        raise DimensionError(f"band files differ in size ({dims})")
    specs: list[BandSpec] = [oli_band(n) for n in names]
    return MultibandImage.from_grids(grids, specs)


__all__ = [
    "GEO_TAGS",
    "RasterFile",
    "geo_tag_bytes",
    "read_codes",
    "read_raster",
    "stack_bands",
    "write_raster",
]
