"""Exception hierarchy shared by all pansharp modules."""


class PansharpError(Exception):
    """Base class for every error raised by pansharp."""


class DimensionError(PansharpError, ValueError):
    """Grid shapes violate a size or alignment requirement."""


class RangeError(PansharpError, ValueError):
    """A sample value falls outside its declared range."""


class ParameterError(PansharpError, ValueError):
    """An argument is outside the supported set of values."""


class RasterFormatError(PansharpError, OSError):
    """A raster file is malformed, truncated, or uses an unsupported feature."""
