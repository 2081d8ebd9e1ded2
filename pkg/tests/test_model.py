
import numpy as np
import pytest
from hypothesis import given, strategies as st

from orbkin.model import (
    SOLAR_MEAN_LONGITUDE, VENUS_1, VENUS_2, ModelError, MotionLaw, OrbModel, ParamSet,
    builtin_text, load_builtin, load_model, params_at, parse_angle_expr, save_model,
)
from orbkin.sexa import parse_sex, sex


def test_params_at_epoch():
    p = params_at(VENUS_1, 0.0)
    assert p.theta_a == pytest.approx(sex("77;52,10"), abs=1e-12)
    assert p.theta_c == pytest.approx(sex("202;16,50"), abs=1e-12)
    assert p.theta_p == pytest.approx(sex("320;50,19"), abs=1e-12)


def test_theta_c_phase_is_sun_minus_apogee():
    assert sex("280;9,0") - sex("77;52,10") == pytest.approx(sex("202;16,50"), abs=1e-12)
    assert sex("359;45,40") - sex("0;1") == pytest.approx(sex("359;44,40"), abs=1e-12)


def test_params_after_one_year():
    p = params_at(VENUS_1, 1.0)
    # 320;50,19 + 225;1,48,41 = 545;52,7,41 -> 185;52,7,41
    assert p.theta_p == pytest.approx(sex("185;52,7,41"), abs=1e-10)
    assert p.theta_a == pytest.approx(sex("77;53,10"), abs=1e-12)


@given(st.floats(-50, 50, allow_nan=False))
def test_params_normalised(t):
    p = params_at(VENUS_1, t)
    for v in (p.theta_a, p.theta_c, p.theta_p):
        assert 0.0 <= v < 360.0


@given(st.floats(-10, 10, allow_nan=False))
def test_apogee_plus_center_follows_sun(t):
    p = params_at(VENUS_1, t)
    diff = (p.theta_a + p.theta_c - SOLAR_MEAN_LONGITUDE.at(t) + 180.0) % 360.0 - 180.0
    assert abs(diff) <= 1e-12


def test_motion_law_wraps_negative():
    law = MotionLaw(parse_sex("10"), parse_sex("20"))
    assert law.at(-1.0) == pytest.approx(350.0)


def test_builtin_files_match_constants():
    assert load_builtin("venus_1") == VENUS_1
    assert load_builtin("venus_2") == VENUS_2


def test_venus_1_rotation_list_order():
    got = [(s.anchor, s.axis, str(s.angle)) for s in VENUS_1.rotations]
    assert got == [
        ("P1", "k", "theta_a"), ("P2", "i", "0;10"), ("P2", "k", "theta_c"),
        ("P3", "k", "-theta_c"), ("P4", "i", "-0;5"), ("P4", "j", "3;0"),
        ("P4", "k", "2*theta_c"), ("P5", "i", "0;5"), ("P5", "j", "0;30"),
        ("P5", "k", "theta_p - theta_c"),
    ]


def test_venus_anchor_offsets_are_cumulative_legs():
    legs = [sex("60"), sex("1;41"), -sex("0;26"), sex("43;33")]
    cum = np.cumsum(legs)
    y = {n: float(o) for n, o in VENUS_1.anchors}
    assert y["P1"] == y["P2"] == 0.0
    assert [y["P3"], y["P4"], y["P5"], y["P"]] == pytest.approx(list(cum), abs=1e-12)


def test_venus_2_differences():
    assert len(VENUS_2.rotations) == 9
    tilts = {(s.anchor, s.axis): str(s.angle) for s in VENUS_2.rotations if s.angle.is_constant}
    assert tilts == {("P2", "i"): "0;10", ("P4", "i"): "-0;5", ("P4", "j"): "3;30", ("P5", "i"): "0;5"}


@pytest.mark.parametrize("m", [VENUS_1, VENUS_2])
def test_round_trip(m):
    assert load_model(save_model(m)) == m


def test_save_venus_2_has_nine_rotations():
    assert sum(line.startswith("rot ") for line in save_model(VENUS_2).splitlines()) == 9


def test_save_empty_model():
    m = OrbModel("bare", (("P", parse_sex("1")),))
    text = save_model(m)
    assert text == "model bare\npoint P 1\n"
    assert load_model(text) == m


def test_undeclared_anchor_named_with_line():
    text = "model x\npoint P 1\nrot Q k 0;5\n"
    with pytest.raises(ModelError, match="Q") as info:
        load_model(text)
    assert info.value.lineno == 3


def test_bad_literal_reported_with_line():
    with pytest.raises(ModelError) as info:
        load_model("model x\npoint P 1;75\n")
    assert info.value.lineno == 2


@pytest.mark.parametrize("expr", ["3*theta_c", "theta_c * 2", "theta_c theta_p", "1;0 + 2;0", "theta_c +", "sin(theta_c)"])
def test_unsupported_expressions(expr):
    with pytest.raises(ModelError):
        parse_angle_expr(expr, 7)


def test_unknown_parameter():
    with pytest.raises(ModelError, match="theta_x"):
        load_model("model x\npoint P 1\nrot P k theta_x\n")


def test_unknown_keyword_and_axis():
    with pytest.raises(ModelError):
        load_model("model x\nplanet P 1\n")
    with pytest.raises(ModelError):
        load_model("model x\npoint P 1\nrot P z 0;5\n")


@pytest.mark.parametrize("text, value", [
    ("theta_a", 10.0), ("-theta_c", -20.0), ("2*theta_c", 40.0),
    ("theta_p - theta_c", 10.0), ("-0;5", -5 / 60), ("theta_c + 0;30", 20.5), ("theta_c - 1", 19.0),
])
def test_expression_evaluation(text, value):
    e = parse_angle_expr(text)
    assert e.evaluate(ParamSet(10.0, 20.0, 30.0)) == pytest.approx(value)
    assert parse_angle_expr(str(e)) == e


def test_comments_and_blank_lines_ignored():
    text = "# header\n\nmodel x   # name\npoint P 2;30\n"
    assert load_model(text).point("P")[1] == 2.5


def test_zero_tilts_keeps_variable_rotations():
    z = VENUS_1.zero_tilts()
    assert all(float(s.angle.constant) == 0.0 for s in z.rotations)
    assert [s.angle.terms for s in z.rotations] == [s.angle.terms for s in VENUS_1.rotations]
    inc = VENUS_1.zero_tilts(keep=("P2",))
    assert [str(s.angle) for s in inc.rotations if s.angle.is_constant] == ["0;10", "0", "0", "0", "0"]


def test_builtin_text_unknown():
    with pytest.raises(KeyError):
        builtin_text("mercury")
