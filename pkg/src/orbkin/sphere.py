"""Ecliptic coordinates of the planet on the inclined orb.

theta_ell is the angle, in the inclined plane, from the node direction u
(the image of i under the apsidal rotation) to the planet.  Tilting that
plane by a small angle about u shifts the longitude by the displacement
equation ``arctan(cos i * tan theta) - theta`` and lifts the planet to
latitude ``arcsin(sin i * sin theta)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .planar import VENUS, PlanarGeometry, equation_of_center, second_equation, wrap180, wrap360

LUNAR_MAX_LATITUDE = 5.0


@dataclass(frozen=True)
class EclipticCoord:
    longitude: float
    latitude: float
    radius: float | None = None


def to_ecliptic(p) -> EclipticCoord:
    """Longitude from j toward -i (counterclockwise about k), latitude from the ecliptic."""
    x, y, z = (float(v) for v in p)
    r = math.sqrt(x * x + y * y + z * z)
    lon = wrap360(math.degrees(math.atan2(-x, y)))
    lat = math.degrees(math.asin(max(-1.0, min(1.0, z / r)))) if r > 0 else 0.0
    return EclipticCoord(lon, lat, r)


def theta_ell(theta_c: float, theta_p: float, geom: PlanarGeometry = VENUS) -> float:
    e_c, _ = equation_of_center(theta_c, geom)
    e, _ = second_equation(theta_c, theta_p, geom)
    return wrap360(theta_c + e_c + e + 90.0)


def _projected(theta: float, inclination: float) -> float:
    """Angle of the foot of the perpendicular, same quadrant as ``theta``."""
    t = math.radians(theta)
    return math.degrees(math.atan2(math.cos(math.radians(inclination)) * math.sin(t), math.cos(t)))


def displacement_equation(theta: float, inclination: float) -> float:
    """Signed ``arctan(cos i tan theta) - theta`` in degrees."""
    if not 0.0 <= inclination < 90.0:
        raise ValueError("inclination must lie in [0, 90)")
    return wrap180(_projected(theta, inclination) - theta)


def incline_coords(theta_l: float, theta_a: float, tilt: float) -> EclipticCoord:
    if not abs(tilt) < 90.0:
        raise ValueError("tilt must lie in (-90, 90)")
    lon = wrap360(_projected(theta_l, tilt) - 90.0 + theta_a)
    lat = math.degrees(math.asin(math.sin(math.radians(tilt)) * math.sin(math.radians(theta_l))))
    return EclipticCoord(lon, lat)


def max_displacement(inclination: float) -> float:
    """Largest |displacement| over theta: arcsin((1 - cos i) / (1 + cos i))."""
    c = math.cos(math.radians(inclination))
    return math.degrees(math.asin((1.0 - c) / (1.0 + c)))


def displacement_correction(elongation_from_node: float, latitude: float,
                            max_latitude: float = LUNAR_MAX_LATITUDE) -> float:
    """Longitude correction for a body off the ecliptic, scaled from the lunar table.

    The lunar displacement for the elongation from the ascending node is
    multiplied by ``latitude / max_latitude``; it is added when the
    elongation falls in (90, 180) or (270, 360) and subtracted otherwise.
    """
    if max_latitude <= 0:
        raise ValueError("max_latitude must be positive")
    magnitude = abs(displacement_equation(elongation_from_node, LUNAR_MAX_LATITUDE))
    q = wrap360(elongation_from_node)
    sign = 1.0 if (90.0 < q < 180.0 or 270.0 < q < 360.0) else -1.0
    return sign * magnitude * latitude / max_latitude


def unit_ecliptic(lon: float, lat: float) -> np.ndarray:
    lo, la = math.radians(lon), math.radians(lat)
    return np.array([-math.sin(lo) * math.cos(la), math.cos(lo) * math.cos(la), math.sin(la)])
