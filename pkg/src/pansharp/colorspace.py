"""Hexcone RGB <-> HSV transforms.

Hue is in degrees on [0, 360), saturation and value on [0, 1]. Achromatic
pixels (max == min) get hue 0 and saturation 0. The plane functions work on
arrays of any matching shape; the pixel functions wrap them for scalars.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np


class RgbPixel(NamedTuple):
    r: float
    g: float
    b: float


class HsvPixel(NamedTuple):
    h: float
    s: float
    v: float


def rgb_to_hsv_planes(r, g, b) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    r = np.asarray(r, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    v = np.maximum(np.maximum(r, g), b)
    mn = np.minimum(np.minimum(r, g), b)
    delta = v - mn
    chromatic = delta > 0
    safe_delta = np.where(chromatic, delta, 1.0)
    s = np.where(v > 0, delta / np.where(v > 0, v, 1.0), 0.0)

    # sector priority on ties: red, then green, then blue
    h = np.where(
        v == r,
        np.mod((g - b) / safe_delta, 6.0),
        np.where(v == g, (b - r) / safe_delta + 2.0, (r - g) / safe_delta + 4.0),
    )
    h = np.where(chromatic, h * 60.0, 0.0)
    h = np.where(h >= 360.0, h - 360.0, h)
    return h, s, v


def hsv_to_rgb_planes(h, s, v) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    h = np.mod(np.asarray(h, dtype=np.float64), 360.0)
    s = np.asarray(s, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    hp = h / 60.0
    sector = np.floor(hp).astype(np.int64) % 6
    f = hp - np.floor(hp)
    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))
    r = np.choose(sector, [v, q, p, p, t, v])
    g = np.choose(sector, [t, v, v, q, p, p])
    b = np.choose(sector, [p, p, t, v, v, q])
    return np.clip(r, 0.0, 1.0), np.clip(g, 0.0, 1.0), np.clip(b, 0.0, 1.0)


def rgb_to_hsv(p: RgbPixel | tuple[float, float, float]) -> HsvPixel:
    h, s, v = rgb_to_hsv_planes(*p)
    return HsvPixel(float(h), float(s), float(v))


def hsv_to_rgb(p: HsvPixel | tuple[float, float, float]) -> RgbPixel:
    r, g, b = hsv_to_rgb_planes(*p)
    return RgbPixel(float(r), float(g), float(b))
