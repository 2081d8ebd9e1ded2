"""Orb systems: anchor points, ordered rotation specs and motion laws.

A model file is line oriented, ``#`` starts a comment::

    model venus_1
    param theta_a = 0;1 /year + 77;52,10
    point P3 60;0
    rot P1 k theta_a
    rot P4 k 2*theta_c
    rot P5 k theta_p - theta_c

``point`` gives an anchor's offset along j from the world center O in the
initial figure.  ``rot`` lines are listed outermost first, the order in
which the composition is written; the last one acts first on the planet.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Mapping

import numpy as np

from .geom3 import AXES, R, Rotation
from .sexa import SexagesimalError, SexNum, parse_sex

ALLOWED_COEFFICIENTS = (-1, 1, 2)
PLANET = "P"
_ZERO = SexNum(1, 0, ())


class ModelError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)
        self.lineno = lineno


def _wrap(x: float) -> float:
    x = math.fmod(x, 360.0)
    if x < 0.0:
        x += 360.0
    # fmod of a tiny negative can land exactly on 360.0 after the add
    return 0.0 if x >= 360.0 else x


@dataclass(frozen=True)
class MotionLaw:
    """``phase + rate * t`` with ``t`` in Persian years, wrapped to [0, 360)."""

    phase: SexNum
    rate: SexNum = _ZERO

    def at(self, t: float) -> float:
        return _wrap(math.fmod(float(self.rate) * t, 360.0) + float(self.phase))

    def __str__(self) -> str:
        if self.rate == _ZERO:
            return str(self.phase)
        op, mag = ("-", replace(self.phase, sign=1)) if self.phase.sign < 0 else ("+", self.phase)
        return f"{self.rate} /year {op} {mag}"


# Sun's mean longitude; theta_a + theta_c follows it, which couples Venus to the Sun.
SOLAR_MEAN_LONGITUDE = MotionLaw(parse_sex("280;9,0"), parse_sex("359;45,40"))


@dataclass(frozen=True)
class ParamSet:
    theta_a: float
    theta_c: float
    theta_p: float

    def as_dict(self) -> dict[str, float]:
        return {"theta_a": self.theta_a, "theta_c": self.theta_c, "theta_p": self.theta_p}


@dataclass(frozen=True)
class AngleExpr:
    """Integer combination of parameters plus a literal constant (degrees)."""

    terms: tuple[tuple[int, str], ...] = ()
    constant: SexNum = _ZERO

    @property
    def is_constant(self) -> bool:
        return not self.terms

    def evaluate(self, params: Mapping[str, float] | ParamSet) -> float:
        if isinstance(params, ParamSet):
            params = params.as_dict()
        return sum(c * params[name] for c, name in self.terms) + float(self.constant)

    def __str__(self) -> str:
        parts: list[str] = []
        for c, name in self.terms:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            if not parts:
                parts.append(("-" if c < 0 else "") + mag + name)
            else:
                parts.append(("- " if c < 0 else "+ ") + mag + name)
        if self.constant != _ZERO or not parts:
            if not parts:
                parts.append(str(self.constant))
            else:
                op = "- " if self.constant.sign < 0 else "+ "
                parts.append(op + str(replace(self.constant, sign=1)))
        return " ".join(parts)


@dataclass(frozen=True)
class RotationSpec:
    anchor: str
    axis: str
    angle: AngleExpr


@dataclass(frozen=True)
class OrbModel:
    name: str
    anchors: tuple[tuple[str, SexNum], ...]
    rotations: tuple[RotationSpec, ...] = ()
    laws: tuple[tuple[str, MotionLaw], ...] = ()
    _offsets: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        offsets = {}
        for name, off in self.anchors:
            if name in offsets:
                raise ModelError(f"duplicate point {name!r}")
            offsets[name] = float(off)
        for spec in self.rotations:
            if spec.anchor not in offsets:
                raise ModelError(f"rotation references undeclared anchor {spec.anchor!r}")
            if spec.axis not in AXES:
                raise ModelError(f"unknown axis {spec.axis!r}")
        object.__setattr__(self, "_offsets", offsets)

    def point(self, name: str) -> np.ndarray:
        """Anchor position in the initial figure."""
        return np.array([0.0, self._offsets[name], 0.0])

    @property
    def planet(self) -> np.ndarray:
        return self.point(PLANET)

    @property
    def law_map(self) -> dict[str, MotionLaw]:
        return dict(self.laws)

    def rotations_at(self, params: Mapping[str, float] | ParamSet) -> list[Rotation]:
        """Concrete rotations, outermost first."""
        return [R(self.point(s.anchor), s.axis, s.angle.evaluate(params)) for s in self.rotations]

    def zero_tilts(self, keep: tuple[str, ...] = ()) -> OrbModel:
        """Copy with every constant rotation angle set to 0, except on anchors in ``keep``."""
        rots = tuple(
            replace(s, angle=AngleExpr()) if s.angle.is_constant and s.anchor not in keep else s
            for s in self.rotations
        )
        return replace(self, rotations=rots)


def params_at(laws: OrbModel | Mapping[str, MotionLaw], t: float) -> ParamSet:
    """Evaluate the motion laws ``t`` Persian years after the epoch."""
    if isinstance(laws, OrbModel):
        laws = laws.law_map
    return ParamSet(**{name: laws[name].at(t) for name in ("theta_a", "theta_c", "theta_p")})


# -- text format -------------------------------------------------------------

_NAME = r"[A-Za-z_][A-Za-z_0-9]*"
_EXPR_TOKEN = re.compile(rf"\s*(?:(?P<num>\d[\d;,]*)|(?P<name>{_NAME})|(?P<op>[-+*]))")
_PARAM = re.compile(
    rf"^(?P<name>{_NAME})\s*=\s*(?:(?P<rate>-?[\d;,]+)\s*/\s*year\s*(?:(?P<op>[-+])\s*(?P<phase>[\d;,]+))?|(?P<const>-?[\d;,]+))$"
)


def _sex_at(text: str, lineno: int) -> SexNum:
    try:
        return parse_sex(text)
    except SexagesimalError as exc:
        raise ModelError(f"malformed sexagesimal literal: {exc}", lineno) from None


def parse_angle_expr(text: str, lineno: int | None = None) -> AngleExpr:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _EXPR_TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ModelError(f"cannot parse expression {text!r} at position {pos}", lineno)
        tokens.append((m.lastgroup, m.group(m.lastgroup)))
        pos = m.end()
    if not tokens:
        raise ModelError("empty angle expression", lineno)

    coefs: dict[str, int] = {}
    constant = None
    i = 0
    sign = 1
    expect_term = True
    while i < len(tokens):
        kind, val = tokens[i]
        if expect_term:
            if kind == "op" and val in "+-":
                if val == "-":
                    sign = -sign
                i += 1
                continue
            if kind == "num" and i + 1 < len(tokens) and tokens[i + 1] == ("op", "*"):
                if not val.isdigit() or i + 2 >= len(tokens) or tokens[i + 2][0] != "name":
                    raise ModelError(f"unsupported expression {text!r}", lineno)
                name = tokens[i + 2][1]
                coefs[name] = coefs.get(name, 0) + sign * int(val)
                i += 3
            elif kind == "num":
                if constant is not None:
                    raise ModelError(f"more than one constant in {text!r}", lineno)
                lit = _sex_at(val, lineno)
                constant = SexNum(sign, lit.integer_part, lit.fraction_digits)
                i += 1
            elif kind == "name":
                coefs[val] = coefs.get(val, 0) + sign
                i += 1
            else:
                raise ModelError(f"unsupported expression {text!r}", lineno)
            sign = 1
            expect_term = False
        else:
            if kind != "op" or val not in "+-":
                raise ModelError(f"unsupported expression {text!r}", lineno)
            sign = -1 if val == "-" else 1
            i += 1
            expect_term = True
    if expect_term:
        raise ModelError(f"dangling operator in {text!r}", lineno)

    terms = []
    for name, c in coefs.items():
        if c == 0:
            continue
        if c not in ALLOWED_COEFFICIENTS:
            raise ModelError(f"coefficient {c} on {name!r} is not supported (allowed: -1, 1, 2)", lineno)
        terms.append((c, name))
    return AngleExpr(tuple(terms), constant if constant is not None else _ZERO)


def load_model(text: str) -> OrbModel:
    """Parse a model file; errors carry the offending line number."""
    name = None
    anchors: list[tuple[str, SexNum]] = []
    anchor_lines: dict[str, int] = {}
    rotations: list[tuple[RotationSpec, int]] = []
    laws: list[tuple[str, MotionLaw]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "model":
            if not re.fullmatch(r"\S+", rest):
                raise ModelError("model needs a single name", lineno)
            name = rest
        elif keyword == "param":
            m = _PARAM.match(rest)
            if m is None:
                raise ModelError(f"malformed param line {rest!r}", lineno)
            if m["const"] is not None:
                law = MotionLaw(_sex_at(m["const"], lineno))
            else:
                phase = _sex_at(m["phase"], lineno) if m["phase"] else _ZERO
                if m["op"] == "-":
                    phase = replace(phase, sign=-phase.sign)
                law = MotionLaw(phase, _sex_at(m["rate"], lineno))
            laws.append((m["name"], law))
        elif keyword == "point":
            parts = rest.split()
            if len(parts) != 2:
                raise ModelError("point needs a name and an offset", lineno)
            if parts[0] in anchor_lines:
                raise ModelError(f"duplicate point {parts[0]!r}", lineno)
            anchors.append((parts[0], _sex_at(parts[1], lineno)))
            anchor_lines[parts[0]] = lineno
        elif keyword == "rot":
            parts = rest.split(None, 2)
            if len(parts) != 3:
                raise ModelError("rot needs anchor, axis and angle", lineno)
            anchor, axis, expr = parts
            if axis not in AXES:
                raise ModelError(f"unknown axis {axis!r} (expected i, j or k)", lineno)
            rotations.append((RotationSpec(anchor, axis, parse_angle_expr(expr, lineno)), lineno))
        else:
            raise ModelError(f"unknown keyword {keyword!r}", lineno)

    if name is None:
        raise ModelError("missing 'model' line")
    params = {n for n, _ in laws}
    for spec, lineno in rotations:
        if spec.anchor not in anchor_lines:
            raise ModelError(f"rotation references undeclared anchor {spec.anchor!r}", lineno)
        for _, pname in spec.angle.terms:
            if pname not in params:
                raise ModelError(f"unknown parameter {pname!r}", lineno)
    return OrbModel(name, tuple(anchors), tuple(s for s, _ in rotations), tuple(laws))


def save_model(m: OrbModel) -> str:
    lines = [f"model {m.name}"]
    lines += [f"param {n} = {law}" for n, law in m.laws]
    lines += [f"point {n} {off}" for n, off in m.anchors]
    lines += [f"rot {s.anchor} {s.axis} {s.angle}" for s in m.rotations]
    return "\n".join(lines) + "\n"


BUILTIN_MODELS = ("venus_1", "venus_2")


def builtin_text(name: str) -> str:
    if name not in BUILTIN_MODELS:
        raise KeyError(f"no built-in model {name!r}; choose from {', '.join(BUILTIN_MODELS)}")
    return resources.files("orbkin").joinpath("data", f"{name}.orb").read_text(encoding="utf-8")


def load_builtin(name: str) -> OrbModel:
    return load_model(builtin_text(name))


def _venus(name: str, rotator_half_tilt: str, epicycle_tilt: bool) -> OrbModel:
    s = parse_sex
    laws = (
        ("theta_a", MotionLaw(s("77;52,10"), s("0;1"))),
        ("theta_c", MotionLaw(s("202;16,50"), s("359;44,40"))),
        ("theta_p", MotionLaw(s("320;50,19"), s("225;1,48,41"))),
    )
    anchors = tuple((n, s(v)) for n, v in [
        ("P1", "0;0"), ("P2", "0;0"), ("P3", "60;0"),
        ("P4", "61;41"), ("P5", "61;15"), ("P", "104;48"),
    ])

    def var(*terms):
        return AngleExpr(tuple(terms))

    def tilt(text):
        return AngleExpr((), s(text))

    rots = [
        RotationSpec("P1", "k", var((1, "theta_a"))),
        RotationSpec("P2", "i", tilt("0;10")),
        RotationSpec("P2", "k", var((1, "theta_c"))),
        RotationSpec("P3", "k", var((-1, "theta_c"))),
        RotationSpec("P4", "i", tilt("-0;5")),
        RotationSpec("P4", "j", tilt(rotator_half_tilt)),
        RotationSpec("P4", "k", var((2, "theta_c"))),
        RotationSpec("P5", "i", tilt("0;5")),
    ]
    if epicycle_tilt:
        rots.append(RotationSpec("P5", "j", tilt("0;30")))
    rots.append(RotationSpec("P5", "k", var((1, "theta_p"), (-1, "theta_c"))))
    return OrbModel(name, anchors, tuple(rots), laws)


VENUS_1 = _venus("venus_1", "3;0", epicycle_tilt=True)
VENUS_2 = _venus("venus_2", "3;30", epicycle_tilt=False)
