import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import OP3, P3P4, P4P5, e_brute, max_abs_e_brute
from orbkin.planar import equation_of_center, second_equation
from orbkin.sexa import parse_sex, sex
from orbkin.tables import (
    GRID_HEADER, ZIJ_HEADER, chi, e_surface, error_surface, generate_zij, grid_nodes, interp_e,
    interp_error, max_abs_e, write_grid_csv, zij_csv,
)

TC0, TP0 = sex("202;16,50"), sex("320;50,19")


def test_max_abs_e_apsides():
    assert max_abs_e(0.0) == pytest.approx(math.degrees(math.asin(43.55 / 61.25)), abs=1e-12)
    assert max_abs_e(180.0) == pytest.approx(math.degrees(math.asin(43.55 / 58.75)), abs=1e-12)
    assert max_abs_e(0.0) == pytest.approx(45.3179993, abs=1e-6)
    assert max_abs_e(180.0) == pytest.approx(47.8402758, abs=1e-6)


@pytest.mark.parametrize("tc", range(0, 360, 45))
def test_max_abs_e_matches_brute_force(tc):
    assert abs(max_abs_e(tc) - max_abs_e_brute(tc)) <= 0.1 / 60


def test_second_equation_matches_brute_force_on_grid():
    tc, tp = np.meshgrid(np.arange(0, 360, 7.5), np.arange(0, 360, 7.5))
    exact = np.vectorize(lambda c, p: second_equation(c, p)[0])(tc, tp)
    assert np.abs(exact - e_brute(tc, tp)).max() <= 1e-9


def test_chi_endpoints_exact():
    assert chi(0.0) == 0.0
    assert chi(180.0) == 1.0


def test_chi_at_epoch():
    m0, m180 = max_abs_e_brute(0.0, 0.001), max_abs_e_brute(180.0, 0.001)
    brute = (max_abs_e_brute(TC0, 0.001) - m0) / (m180 - m0)
    assert chi(TC0) == pytest.approx(brute, abs=1e-3)
    assert chi(TC0) == pytest.approx(0.9579243975, abs=1e-9)


@pytest.mark.parametrize("tc", [0.0, 180.0])
def test_interp_exact_at_nodes(tc):
    worst = max(abs(interp_e(tc, tp) - second_equation(tc, tp)[0]) for tp in range(360))
    assert worst <= 1e-12


def test_chi_decreases_with_op5():
    grid = np.arange(0, 360, 1.0)
    c = np.array([chi(t) for t in grid])
    op5 = np.array([equation_of_center(t)[1] for t in grid])
    half = slice(0, 181)
    assert np.all(np.diff(op5[half]) < 0)
    assert np.all(np.diff(c[half]) > 0)


@given(st.floats(-720, 720, allow_nan=False))
def test_max_abs_e_even(tc):
    assert max_abs_e(360.0 - tc) == pytest.approx(max_abs_e(tc), abs=1e-12)


def test_zij_rows():
    rows = generate_zij(1.0)
    assert len(rows) == 360
    assert rows[0].e_c == 0.0 and rows[0].chi == 0.0
    across = P3P4 + P4P5
    hand = -math.degrees(math.asin(across / math.hypot(across, OP3)))
    assert rows[90].e_c == pytest.approx(hand, abs=1e-12)
    assert rows[90].e_c == pytest.approx(-2.0204299, abs=1e-6)
    assert rows[180].chi == 1.0


def test_zij_rejects_bad_step():
    with pytest.raises(ValueError):
        generate_zij(7.0)
    with pytest.raises(ValueError):
        grid_nodes(0.0)


def test_zij_csv_round_trip():
    rows = list(csv.DictReader(io.StringIO(zij_csv(5.0))))
    assert list(rows[0]) == ZIJ_HEADER
    assert len(rows) == 72
    for r in rows:
        for col in ("theta", "e_c", "e0", "de"):
            assert abs(float(parse_sex(r[col + "_sex"])) - float(r[col])) <= 0.5 / 3600 + 1e-12
    assert float(rows[36]["theta"]) == 180.0


def test_error_surface_shape_and_max():
    rows = error_surface(5.0)
    assert len(rows) == 72 * 72
    vals = np.array([v for _, _, v in rows])
    assert np.all(np.isfinite(vals))
    # zero on the two node rows
    assert np.abs(vals[[i for i, (c, _, _) in enumerate(rows) if c in (0.0, 180.0)]]).max() <= 1e-12
    # regression pin of the recorded interpolation error bound
    assert np.abs(vals).max() == pytest.approx(5.33627961, abs=1e-6)


def test_interp_error_at_epoch():
    # the interpolated value is ~19' off the exact one at the epoch
    assert interp_error(TC0, TP0) * 60 == pytest.approx(19.5, abs=0.1)


def test_grid_csv():
    buf = io.StringIO()
    write_grid_csv(e_surface(30.0), buf)
    rows = list(csv.reader(io.StringIO(buf.getvalue())))
    assert rows[0] == GRID_HEADER
    assert len(rows) == 1 + 12 * 12
