"""CIELAB / CIE xyY / CIELCh / sRGB conversions and perceptual distance.

All conversions are relative to a configurable white point (default CIE
Illuminant D65, x = 0.3127, y = 0.3290, Y = 100).  Perceptual distance is
plain Euclidean distance in CIELAB (CIE76).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegenerateChromaticityError, WhitePointMismatchError

# CIELAB companding constants
_EPS = (6.0 / 29.0) ** 3
_KAPPA_SLOPE = 3.0 * (6.0 / 29.0) ** 2

# sRGB primary chromaticities (IEC 61966-2-1)
_PRIMARIES = ((0.64, 0.33), (0.30, 0.60), (0.15, 0.06))


@dataclass(frozen=True)
class WhitePoint:
    """Reference white as chromaticity (x, y) plus luminance Y (white = 100)."""

    x: float = 0.3127
    y: float = 0.3290
    Y: float = 100.0

    @property
    def xyz(self):
        """Tristimulus (X, Y, Z) of the white, on the Y = 100 scale."""
        return (self.x / self.y * self.Y, self.Y, (1.0 - self.x - self.y) / self.y * self.Y)


D65 = WhitePoint()


def _f(t):
    return t ** (1.0 / 3.0) if t > _EPS else t / _KAPPA_SLOPE + 4.0 / 29.0


def _finv(u):
    return u ** 3 if u > 6.0 / 29.0 else _KAPPA_SLOPE * (u - 4.0 / 29.0)


def lab_to_xyz(lab, wp: WhitePoint = D65):
    L, a, b = lab
    xn, yn, zn = wp.xyz
    fy = (L + 16.0) / 116.0
    fx = fy + a / 500.0
    fz = fy - b / 200.0
    return (xn * _finv(fx), yn * _finv(fy), zn * _finv(fz))


def xyz_to_lab(xyz, wp: WhitePoint = D65):
    x, y, z = xyz
    xn, yn, zn = wp.xyz
    fx, fy, fz = _f(x / xn), _f(y / yn), _f(z / zn)
    return (116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz))


def lab_to_xyY(lab, wp: WhitePoint = D65):
    """CIELAB to CIE 1931 xyY.  Zero luminance maps to the white chromaticity."""
    X, Y, Z = lab_to_xyz(lab, wp)
    total = X + Y + Z
    if total == 0.0:
        return (wp.x, wp.y, 0.0)
    return (X / total, Y / total, Y)


def xyY_to_lab(xyY, wp: WhitePoint = D65):
    """CIE 1931 xyY to CIELAB.  Raises for degenerate chromaticity (y = 0)."""
    x, y, Y = xyY
    if y <= 0.0:
        raise DegenerateChromaticityError(f"cannot convert xyY with y = {y}")
    X = x / y * Y
    Z = (1.0 - x - y) / y * Y
    return xyz_to_lab((X, Y, Z), wp)


def lab_to_lch(lab):
    """CIELAB to CIELCh with hue in degrees in [0, 360)."""
    L, a, b = lab
    c = math.hypot(a, b)
    h = math.degrees(math.atan2(b, a)) % 360.0
    return (L, c, h)


@lru_cache(maxsize=8)
def _rgb_matrices(wp: WhitePoint):
    # RGB->XYZ matrix derived from the sRGB primaries and the given white,
    # so the white point maps to linear (1, 1, 1) exactly.
    cols = []
    for (px, py) in _PRIMARIES:
        cols.append([px / py, 1.0, (1.0 - px - py) / py])
    p = np.array(cols).T
    wx, wy, wz = wp.xyz
    s = np.linalg.solve(p, np.array([wx, wy, wz]) / wp.Y)
    m = p * s
    return m, np.linalg.inv(m)


def srgb_of(lab, wp: WhitePoint = D65):
    """LAB to gamma-encoded sRGB in [0, 1]^3 plus an in-gamut flag.

    The flag is false when any linear channel falls outside [0, 1] before
    clamping; the returned channels are always clamped.
    """
    xyz = np.array(lab_to_xyz(lab, wp)) / wp.Y
    _, inv = _rgb_matrices(wp)
    linear = inv @ xyz
    in_gamut = bool(np.all(linear >= -1e-9) and np.all(linear <= 1.0 + 1e-9))
    linear = np.clip(linear, 0.0, 1.0)
    encoded = np.where(
        linear <= 0.0031308, 12.92 * linear, 1.055 * linear ** (1.0 / 2.4) - 0.055
    )
    return tuple(float(c) for c in np.clip(encoded, 0.0, 1.0)), in_gamut


def srgb_hex(rgb):
    return "#" + "".join(f"{round(c * 255):02x}" for c in rgb)


@dataclass(frozen=True)
class ColorSpec:
    """A single color with coordinates in every supported space.

    `lab` is authoritative; the other representations are derived under
    the color's white point.
    """

    lab: tuple
    id: int | None = None
    white: WhitePoint = D65

    @classmethod
    def from_lab(cls, lab, id=None, wp: WhitePoint = D65):
        return cls(lab=tuple(float(v) for v in lab), id=id, white=wp)

    @classmethod
    def from_xyY(cls, xyY, id=None, wp: WhitePoint = D65):
        return cls(lab=xyY_to_lab(xyY, wp), id=id, white=wp)

    @property
    def xyY(self):
        return lab_to_xyY(self.lab, self.white)

    @property
    def lch(self):
        return lab_to_lch(self.lab)

    @property
    def srgb(self):
        rgb, _ = srgb_of(self.lab, self.white)
        return rgb

    @property
    def in_gamut(self):
        _, flag = srgb_of(self.lab, self.white)
        return flag

    @property
    def hex(self):
        return srgb_hex(self.srgb)

    def to_json_dict(self):
        L, a, b = self.lab
        x, y, Y = self.xyY
        _, c, h = self.lch
        return {
            "id": self.id,
            "lab": [L, a, b],
            "xyY": [x, y, Y],
            "lch": [L, c, h],
            "hex": self.hex,
            "in_gamut": self.in_gamut,
        }


def delta_e(a: ColorSpec, b: ColorSpec) -> float:
    """CIE76 perceptual distance between two colors under one white point."""
    if a.white != b.white:
        raise WhitePointMismatchError(
            f"colors use different white points: {a.white} vs {b.white}"
        )
    return math.dist(a.lab, b.lab)


def delta_e_lab(lab_a, lab_b) -> float:
    """CIE76 distance between raw LAB triples."""
    return math.dist(lab_a, lab_b)
