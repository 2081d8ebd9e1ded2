"""Rotations about arbitrary anchor points.

Every motion in the orb model is a rotation ``R(center, axis, angle)``:
translate the center to the origin, rotate about ``axis`` by ``angle``
degrees with the right-hand rule, translate back.  Sequences are written
outermost first, as in ``R1 ∘ R2 ∘ ... ∘ Rn (P)``, so the last rotation
in a list acts first.

Two independent back-ends are provided.  The matrix one (Rodrigues
formula) is the default; the quaternion one exists so the two can check
each other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

ORIGIN = np.zeros(3)
I = np.array([1.0, 0.0, 0.0])
J = np.array([0.0, 1.0, 0.0])
K = np.array([0.0, 0.0, 1.0])
AXES = {"i": I, "j": J, "k": K}


def vec3(x) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(3)
    if not (math.isfinite(v[0]) and math.isfinite(v[1]) and math.isfinite(v[2])):
        raise ValueError(f"non-finite vector {v!r}")
    return v


def _norm(v) -> float:
    return math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Rodrigues matrix for a right-handed turn of ``angle`` degrees about unit ``axis``."""
    x, y, z = axis
    t = math.radians(angle)
    c, s = math.cos(t), math.sin(t)
    C = 1.0 - c
    return np.array([
        [c + x * x * C, x * y * C - z * s, x * z * C + y * s],
        [y * x * C + z * s, c + y * y * C, y * z * C - x * s],
        [z * x * C - y * s, z * y * C + x * s, c + z * z * C],
    ])


@dataclass(frozen=True, eq=False)
class Rotation:
    center: np.ndarray
    axis: np.ndarray
    angle: float
    matrix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        axis = vec3(self.axis)
        n = _norm(axis)
        if n == 0.0:
            raise ValueError("rotation axis must be nonzero")
        object.__setattr__(self, "center", vec3(self.center))
        object.__setattr__(self, "axis", axis / n)
        object.__setattr__(self, "angle", float(self.angle))
        object.__setattr__(self, "matrix", rotation_matrix(self.axis, self.angle))

    def __call__(self, p) -> np.ndarray:
        return apply(self, p)

    def inverse(self) -> Rotation:
        return Rotation(self.center, self.axis, -self.angle)

    def is_about(self, direction, tol: float = 1e-12) -> bool:
        """True if the axis is parallel (either sense) to ``direction``."""
        d = vec3(direction)
        a = self.axis
        cross = (a[1] * d[2] - a[2] * d[1], a[2] * d[0] - a[0] * d[2], a[0] * d[1] - a[1] * d[0])
        return _norm(cross) <= tol * _norm(d)

    def __repr__(self) -> str:
        c = ", ".join(f"{v:.6g}" for v in self.center)
        a = ", ".join(f"{v:.6g}" for v in self.axis)
        return f"R(({c}), ({a}), {self.angle:.9g}°)"


def R(center, axis, angle: float) -> Rotation:
    """``R(P5, 'k', 30.0)``; axis may be a tag in {'i', 'j', 'k'} or a vector."""
    if isinstance(axis, str):
        axis = AXES[axis]
    return Rotation(center, axis, angle)


def apply(r: Rotation, p) -> np.ndarray:
    """Image of ``p`` (shape (3,) or (n, 3)) under ``r``."""
    p = np.asarray(p, dtype=float)
    return (p - r.center) @ r.matrix.T + r.center


def apply_sequence(rs: Sequence[Rotation], p) -> np.ndarray:
    """Apply ``rs[0] ∘ rs[1] ∘ ... ∘ rs[-1]`` to ``p``; the last one acts first."""
    out = np.asarray(p, dtype=float)
    for r in reversed(rs):
        out = apply(r, out)
    return out


def conjugate(r: Rotation, s: Rotation) -> Rotation:
    """The rotation ``T`` with ``r ∘ s == T ∘ r``.

    ``T`` turns by the same angle as ``s`` about the image of its axis
    line under ``r``.
    """
    return Rotation(apply(r, s.center), r.matrix @ s.axis, s.angle)


def compose_affine(rs: Iterable[Rotation]) -> tuple[np.ndarray, np.ndarray]:
    """Collapse an outermost-first list into ``(A, b)`` with image ``A @ p + b``."""
    A = np.eye(3)
    b = np.zeros(3)
    for r in reversed(list(rs)):
        # r ∘ (A p + b) = M (A p + b - c) + c
        A, b = r.matrix @ A, r.matrix @ (b - r.center) + r.center
    return A, b


# -- quaternion back-end ---------------------------------------------------

def quat_from_axis_angle(axis, angle: float) -> np.ndarray:
    """Unit quaternion ``(w, x, y, z)``."""
    a = vec3(axis)
    a = a / _norm(a)
    h = math.radians(angle) / 2.0
    return np.concatenate(([math.cos(h)], math.sin(h) * a))


def quat_mul(q, r) -> np.ndarray:
    w1, x1, y1, z1 = q
    w2, x2, y2, z2 = r
    return np.array([
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    ])


def quat_rotate(q, v) -> np.ndarray:
    qv = np.concatenate(([0.0], v))
    conj = q * np.array([1.0, -1.0, -1.0, -1.0])
    return quat_mul(quat_mul(q, qv), conj)[1:]


def apply_quat(r: Rotation, p) -> np.ndarray:
    q = quat_from_axis_angle(r.axis, r.angle)
    return quat_rotate(q, vec3(p) - r.center) + r.center


def apply_sequence_quat(rs: Sequence[Rotation], p) -> np.ndarray:
    out = vec3(p)
    for r in reversed(rs):
        out = apply_quat(r, out)
    return out


BACKENDS = {"matrix": apply_sequence, "quaternion": apply_sequence_quat}
