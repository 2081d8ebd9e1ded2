"""Closed-form planar theory of Venus.

With every tilt dropped the planet lives in the ecliptic plane and its
place follows from three right triangles: the equation of center
``e_c(theta_c)`` (angle from OP3' to OP5'), the second equation
``e(theta_c, theta_p)`` (angle from OP5' to OP'), and the longitude
``theta_a + theta_c + e_c + e`` counted from j (the vernal point),
counterclockwise seen from +k.

``planar_oracle`` reaches the same point by composing the five k-axis
rotations directly in the complex plane, without using any of the
formulas; the two are meant to check each other.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .sexa import sex


@dataclass(frozen=True)
class PlanarGeometry:
    """Leg lengths of the initial figure, as positive distances."""

    op3: float = 60.0
    p3p4: float = sex("1;41")
    p4p5: float = sex("0;26")
    p5p: float = sex("43;33")

    @classmethod
    def from_model(cls, model) -> PlanarGeometry:
        y = {n: float(off) for n, off in model.anchors}
        return cls(
            op3=abs(y["P3"] - y["P2"]),
            p3p4=abs(y["P4"] - y["P3"]),
            p4p5=abs(y["P5"] - y["P4"]),
            p5p=abs(y["P"] - y["P5"]),
        )

    @property
    def op5_range(self) -> tuple[float, float]:
        return self.op3 - self.p3p4 + self.p4p5, self.op3 + self.p3p4 - self.p4p5


VENUS = PlanarGeometry()


@dataclass(frozen=True)
class PlanarSolution:
    e_c: float
    e: float
    op5: float
    op: float
    longitude: float


def wrap360(x: float) -> float:
    x = math.fmod(x, 360.0)
    if x < 0.0:
        x += 360.0
    return 0.0 if x >= 360.0 else x


def wrap180(x: float) -> float:
    """Wrap to [-180, 180)."""
    return wrap360(x + 180.0) - 180.0


def equation_of_center(theta_c: float, geom: PlanarGeometry = VENUS) -> tuple[float, float]:
    """Return ``(e_c, OP5')``; ``e_c`` in degrees, negative for 0 < theta_c < 180."""
    t = math.radians(theta_c)
    s, c = math.sin(t), math.cos(t)
    across = geom.p3p4 * s + geom.p4p5 * s
    along = geom.op3 + geom.p3p4 * c - geom.p4p5 * c
    op5 = math.hypot(across, along)
    # "0.0 -" rather than unary minus keeps e_c(0) a positive zero
    return 0.0 - math.degrees(math.asin(across / op5)), op5


def second_equation(theta_c: float, theta_p: float, geom: PlanarGeometry = VENUS) -> tuple[float, float]:
    """Return ``(e, OP')`` for the planet on its epicycle."""
    e_c, op5 = equation_of_center(theta_c, geom)
    # the arcsin branch below is only right while the epicycle excludes O
    assert geom.p5p < op5, "epicycle radius must stay below OP5'"
    a = math.radians(theta_p - e_c)
    across = geom.p5p * math.sin(a)
    op = math.hypot(across, op5 + geom.p5p * math.cos(a))
    return math.degrees(math.asin(across / op)), op


def planar_longitude(theta_a: float, theta_c: float, theta_p: float,
                     geom: PlanarGeometry = VENUS) -> PlanarSolution:
    e_c, op5 = equation_of_center(theta_c, geom)
    e, op = second_equation(theta_c, theta_p, geom)
    return PlanarSolution(e_c, e, op5, op, wrap360(theta_a + theta_c + e_c + e))


@dataclass(frozen=True)
class OraclePoints:
    """Images P3', P4', P5', P' as complex numbers ``x + iy`` in the ecliptic plane."""

    p3: complex
    p4: complex
    p5: complex
    p: complex
    longitude: float


def _turn(z: complex, center: complex, angle: float) -> complex:
    return center + (z - center) * cmath.exp(1j * math.radians(angle))


def _longitude(z: complex) -> float:
    # j is the zero direction; +90° from j lies toward -i
    return wrap360(math.degrees(cmath.phase(z)) - 90.0)


def planar_oracle(theta_a: float, theta_c: float, theta_p: float,
                  geom: PlanarGeometry = VENUS) -> OraclePoints:
    """Compose the k-rotations of the model in the plane."""
    y3 = geom.op3
    y4 = y3 + geom.p3p4
    y5 = y4 - geom.p4p5
    yp = y5 + geom.p5p
    P3, P4, P5, P = 1j * y3, 1j * y4, 1j * y5, 1j * yp
    chain = [(0j, theta_a), (0j, theta_c), (P3, -theta_c), (P4, 2 * theta_c), (P5, theta_p - theta_c)]

    def image(z: complex, depth: int) -> complex:
        for center, angle in reversed(chain[:depth]):
            z = _turn(z, center, angle)
        return z

    p = image(P, 5)
    return OraclePoints(image(P3, 2), image(P4, 3), image(P5, 4), p, _longitude(p))
