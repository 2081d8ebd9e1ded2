"""Ptolemaic interpolation of the second equation, and zij-style tables.

The second equation depends on two arguments.  Instead of one table per
theta_c, the astronomer keeps e(0, theta_p) and e(180, theta_p) and a
one-argument coefficient chi(theta_c), then interpolates::

    e(theta_c, theta_p) ~ e(0, theta_p) + chi(theta_c) * (e(180, theta_p) - e(0, theta_p))

chi is built from the maximum of |e| over theta_p, which is reached when
the line of sight grazes the epicycle: max|e| = arcsin(P5P / OP5').
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .planar import VENUS, PlanarGeometry, equation_of_center, second_equation
from .sexa import format_sex


def max_abs_e(theta_c: float, geom: PlanarGeometry = VENUS) -> float:
    _, op5 = equation_of_center(theta_c, geom)
    return math.degrees(math.asin(geom.p5p / op5))


def chi(theta_c: float, geom: PlanarGeometry = VENUS) -> float:
    m0 = max_abs_e(0.0, geom)
    return (max_abs_e(theta_c, geom) - m0) / (max_abs_e(180.0, geom) - m0)


def interp_e(theta_c: float, theta_p: float, geom: PlanarGeometry = VENUS) -> float:
    e0, _ = second_equation(0.0, theta_p, geom)
    e180, _ = second_equation(180.0, theta_p, geom)
    return e0 + chi(theta_c, geom) * (e180 - e0)


def interp_error(theta_c: float, theta_p: float, geom: PlanarGeometry = VENUS) -> float:
    """Interpolated minus exact second equation (degrees)."""
    return interp_e(theta_c, theta_p, geom) - second_equation(theta_c, theta_p, geom)[0]


@dataclass(frozen=True)
class ZijRow:
    theta: float
    e_c: float
    chi: float
    e0: float
    de: float


ZIJ_HEADER = ["theta", "e_c", "chi", "e0", "de", "theta_sex", "e_c_sex", "e0_sex", "de_sex"]
SEX_PLACES = 2


def _node_count(step: float) -> int:
    if step <= 0 or abs(360.0 / step - round(360.0 / step)) > 1e-9:
        raise ValueError(f"step {step} does not divide 360")
    return int(round(360.0 / step))


def generate_zij(step: float = 1.0, geom: PlanarGeometry = VENUS) -> list[ZijRow]:
    """One row per node 0, step, ..., 360 - step; the theta column serves both arguments."""
    rows = []
    for k in range(_node_count(step)):
        theta = k * step
        e_c, _ = equation_of_center(theta, geom)
        e0, _ = second_equation(0.0, theta, geom)
        e180, _ = second_equation(180.0, theta, geom)
        rows.append(ZijRow(theta, e_c, chi(theta, geom), e0, e180 - e0))
    return rows


def write_zij_csv(rows: Iterable[ZijRow], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(ZIJ_HEADER)
    for r in rows:
        w.writerow([
            repr(r.theta), repr(r.e_c), repr(r.chi), repr(r.e0), repr(r.de),
            format_sex(r.theta, SEX_PLACES), format_sex(r.e_c, SEX_PLACES),
            format_sex(r.e0, SEX_PLACES), format_sex(r.de, SEX_PLACES),
        ])


def zij_csv(step: float = 1.0, geom: PlanarGeometry = VENUS) -> str:
    buf = io.StringIO()
    write_zij_csv(generate_zij(step, geom), buf)
    return buf.getvalue()


# -- (theta_c, theta_p) surfaces ---------------------------------------------

GRID_HEADER = ["theta_c", "theta_p", "value"]


def grid_nodes(step: float) -> np.ndarray:
    return np.arange(_node_count(step)) * step


def surface(func: Callable[[float, float], float], step: float) -> list[tuple[float, float, float]]:
    """Evaluate ``func(theta_c, theta_p)`` on the full grid, theta_c outer."""
    nodes = grid_nodes(step)
    return [(float(c), float(p), func(float(c), float(p))) for c in nodes for p in nodes]


def e_surface(step: float, geom: PlanarGeometry = VENUS):
    return surface(lambda c, p: second_equation(c, p, geom)[0], step)


def error_surface(step: float, geom: PlanarGeometry = VENUS):
    """Interpolated minus exact e over the grid."""
    return surface(lambda c, p: interp_error(c, p, geom), step)


def write_grid_csv(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(GRID_HEADER)
    for c, p, v in rows:
        w.writerow([repr(c), repr(p), repr(v)])
