"""Full 3D evaluation of an orb model, and its planar reduction.

Moving every k-axis rotation to the right end of the composition (using
``R ∘ S = T ∘ R`` with ``T = conjugate(R, S)``) splits the motion into

    M ∘ R(O, u, incline) ∘ (k-rotations)

where the k-rotations keep the planet in the ecliptic plane, the incline
rotation tilts that plane about the node line u, and M gathers the small
tilts of the deferent, rotator and epicycle, now about axes lying in the
inclined plane.  Dropping M gives the planar-plus-incline approximation;
``delta_lambda`` measures what that costs in longitude.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geom3 import BACKENDS, K, Rotation, apply_sequence, conjugate
from .model import OrbModel, ParamSet, params_at
from .planar import wrap180
from .sphere import EclipticCoord, to_ecliptic
from .tables import surface


def position_at(m: OrbModel, params: ParamSet, backend: str = "matrix") -> np.ndarray:
    return BACKENDS[backend](m.rotations_at(params), m.planet)


def position3d(m: OrbModel, t: float, backend: str = "matrix") -> np.ndarray:
    """Planet position ``t`` Persian years after the epoch, in model lengths."""
    return position_at(m, params_at(m, t), backend)


def ecliptic_at(m: OrbModel, params: ParamSet, backend: str = "matrix") -> EclipticCoord:
    return to_ecliptic(position_at(m, params, backend))


@dataclass(frozen=True)
class SplitMotion:
    m_rotations: tuple[Rotation, ...]
    incline_rotation: Rotation | None
    planar_rotations: tuple[Rotation, ...]

    def sequence(self, with_m: bool = True) -> list[Rotation]:
        """Outermost-first list; the planar rotations act first."""
        out = list(self.m_rotations) if with_m else []
        if self.incline_rotation is not None:
            out.append(self.incline_rotation)
        return out + list(self.planar_rotations)

    def apply(self, p, with_m: bool = True) -> np.ndarray:
        return apply_sequence(self.sequence(with_m), p)


def split_rotations(rs: Sequence[Rotation]) -> SplitMotion:
    rs = list(rs)
    planar = [r.is_about(K) for r in rs]
    swapped = True
    while swapped:
        swapped = False
        for n in range(len(rs) - 1):
            if planar[n] and not planar[n + 1]:
                rs[n], rs[n + 1] = conjugate(rs[n], rs[n + 1]), rs[n]
                planar[n], planar[n + 1] = False, True
                swapped = True
    tilted = [r for r, flat in zip(rs, planar) if not flat]
    flat = tuple(r for r, f in zip(rs, planar) if f)
    if not tilted:
        return SplitMotion((), None, flat)
    incline, rest = tilted[0], tilted[1:]
    return SplitMotion(tuple(conjugate(incline, s) for s in rest), incline, flat)


def split_at(m: OrbModel, params: ParamSet) -> SplitMotion:
    return split_rotations(m.rotations_at(params))


def split(m: OrbModel, t: float) -> SplitMotion:
    return split_at(m, params_at(m, t))


def incline_tilt(m: OrbModel) -> float:
    """Angle of the incline rotation (0 if the model has none)."""
    s = split_at(m, ParamSet(0.0, 0.0, 0.0))
    return 0.0 if s.incline_rotation is None else s.incline_rotation.angle


def delta_lambda(m: OrbModel, theta_c: float, theta_p: float, theta_a: float = 0.0,
                 backend: str = "matrix") -> float:
    """Longitude of the full model minus the longitude with M dropped (degrees)."""
    params = ParamSet(theta_a, theta_c, theta_p)
    s = split_at(m, params)
    full = BACKENDS[backend](m.rotations_at(params), m.planet)
    approx = BACKENDS[backend](s.sequence(with_m=False), m.planet)
    return wrap180(to_ecliptic(full).longitude - to_ecliptic(approx).longitude)


def delta_lambda_surface(m: OrbModel, step: float):
    return surface(lambda c, p: delta_lambda(m, c, p), step)


def latitude_surface(m: OrbModel, step: float):
    """Latitude over (theta_c, theta_p); it does not depend on theta_a."""
    return surface(lambda c, p: ecliptic_at(m, ParamSet(0.0, c, p)).latitude, step)
