"""``orbkin`` command line: positions, series, tables and comparisons.

Exit codes: 0 success, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

from . import kinematics, tables
from .model import BUILTIN_MODELS, ModelError, OrbModel, load_builtin, load_model, params_at
from .planar import PlanarGeometry, planar_longitude, wrap180
from .sexa import SexagesimalError, format_sex, sex
from .sphere import incline_coords, to_ecliptic
from .timescale import (
    EPOCH_JD_GMT, DateError, days_to_years, jd_to_years, julian_day, parse_date, years_to_jd,
)

log = logging.getLogger("orbkin")

METHODS = ("full3d", "planar_exact", "planar_interp")
EPHEMERIS_HEADER = ["jd", "t_years", "method", "longitude_deg", "latitude_deg", "radius"]
REFERENCE_HEADER = ["jd", "longitude_deg", "latitude_deg"]
COMPARE_HEADER = ["jd", "t_years", "longitude_ref", "latitude_ref", "longitude_deg", "latitude_deg",
                  "dlon_arcmin", "dlat_arcmin"]

# Venus at the epoch: Ibn al-Shatir's method with interpolation, and IMCCE (mean of date)
PUBLISHED_EPOCH_LONGITUDE = sex("264;23")
IMCCE_EPOCH_LONGITUDE = sex("264;21")
REFERENCE_WINDOW_YEARS = 10.0


class DataError(ValueError):
    """Bad input data: exit code 2."""


@dataclass(frozen=True)
class EphemerisRecord:
    jd: float
    t_years: float
    method: str
    longitude: float
    latitude: float
    radius: float

    def row(self) -> list[str]:
        return [repr(self.jd), repr(self.t_years), self.method,
                repr(self.longitude), repr(self.latitude), repr(self.radius)]


@dataclass(frozen=True)
class ReferenceRecord:
    jd: float
    longitude: float
    latitude: float


# -- computation --------------------------------------------------------------

def resolve_model(spec: str) -> OrbModel:
    """A built-in name (venus_1, venus_2) or a path to a model file."""
    if spec in BUILTIN_MODELS:
        return load_builtin(spec)
    path = Path(spec)
    if not path.exists():
        raise DataError(f"no model file {spec!r} (built-ins: {', '.join(BUILTIN_MODELS)})")
    return load_model(path.read_text(encoding="utf-8"))


def compute_record(model: OrbModel, t: float, method: str = "full3d") -> EphemerisRecord:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    params = params_at(model, t)
    if method == "full3d":
        c = to_ecliptic(kinematics.position_at(model, params))
        lon, lat, radius = c.longitude, c.latitude, c.radius
    else:
        geom = PlanarGeometry.from_model(model)
        sol = planar_longitude(params.theta_a, params.theta_c, params.theta_p, geom)
        e = sol.e
        if method == "planar_interp":
            e = tables.interp_e(params.theta_c, params.theta_p, geom)
        theta_l = params.theta_c + sol.e_c + e + 90.0
        c = incline_coords(theta_l, params.theta_a, kinematics.incline_tilt(model))
        # the tables carry no radius; OP' is always the exact one
        lon, lat, radius = c.longitude, c.latitude, sol.op
    return EphemerisRecord(years_to_jd(t), t, method, lon, lat, radius)


def series(model: OrbModel, start: float, span: float, step_days: float,
           method: str = "full3d") -> list[EphemerisRecord]:
    """Records from ``start`` (years) over ``span`` years every ``step_days``, both ends included."""
    if span <= 0 or step_days <= 0:
        raise ValueError("span and step must be positive")
    n = int(math.floor(span * 365.0 / step_days + 1e-9))
    return [compute_record(model, start + days_to_years(k * step_days), method) for k in range(n + 1)]


def read_reference(fh) -> list[ReferenceRecord]:
    reader = csv.DictReader(fh)
    if reader.fieldnames is None:
        raise DataError("reference file is empty")
    missing = [c for c in REFERENCE_HEADER if c not in reader.fieldnames]
    if missing:
        raise DataError(f"reference file lacks columns {missing}")
    out: list[ReferenceRecord] = []
    for n, row in enumerate(reader, start=2):
        try:
            rec = ReferenceRecord(float(row["jd"]), float(row["longitude_deg"]), float(row["latitude_deg"]))
        except (TypeError, ValueError):
            raise DataError(f"line {n}: malformed reference row {row!r}") from None
        if out and rec.jd <= out[-1].jd:
            raise DataError(f"line {n}: jd values must be strictly increasing")
        out.append(rec)
    if not out:
        raise DataError("reference file has no rows")
    return out


@dataclass(frozen=True)
class ComparisonRow:
    reference: ReferenceRecord
    computed: EphemerisRecord
    dlon_arcmin: float
    dlat_arcmin: float

    def row(self) -> list[str]:
        return [repr(self.reference.jd), repr(self.computed.t_years),
                repr(self.reference.longitude), repr(self.reference.latitude),
                repr(self.computed.longitude), repr(self.computed.latitude),
                repr(self.dlon_arcmin), repr(self.dlat_arcmin)]


def _stats(values: Sequence[float]) -> dict[str, float]:
    n = len(values)
    return {
        "max_abs": max(abs(v) for v in values),
        "mean": sum(values) / n,
        "rms": math.sqrt(sum(v * v for v in values) / n),
    }


def compare(model: OrbModel, reference: Sequence[ReferenceRecord],
            method: str = "full3d") -> tuple[list[ComparisonRow], dict]:
    """Evaluate at every reference instant; deltas are computed minus reference, in arcminutes."""
    rows = []
    for ref in reference:
        t = jd_to_years(ref.jd)
        if abs(t) > REFERENCE_WINDOW_YEARS:
            log.warning("jd %s lies %.1f years from the epoch", ref.jd, t)
        rec = compute_record(model, t, method)
        rows.append(ComparisonRow(ref, rec,
                                  60.0 * wrap180(rec.longitude - ref.longitude),
                                  60.0 * (rec.latitude - ref.latitude)))
    summary = {
        "rows": len(rows),
        "method": method,
        "dlon_arcmin": _stats([r.dlon_arcmin for r in rows]),
        "dlat_arcmin": _stats([r.dlat_arcmin for r in rows]),
    }
    return rows, summary


# -- output -------------------------------------------------------------------

def write_records(records: Iterable[EphemerisRecord], fh, fmt: str = "csv") -> None:
    if fmt == "json":
        json.dump([asdict(r) for r in records], fh, indent=1)
        fh.write("\n")
        return
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(EPHEMERIS_HEADER)
    for r in records:
        w.writerow(r.row())


def read_records(fh) -> list[EphemerisRecord]:
    reader = csv.DictReader(fh)
    if reader.fieldnames != EPHEMERIS_HEADER:
        raise DataError(f"unexpected ephemeris header {reader.fieldnames}")
    return [EphemerisRecord(float(r["jd"]), float(r["t_years"]), r["method"], float(r["longitude_deg"]),
                            float(r["latitude_deg"]), float(r["radius"])) for r in reader]


def _dms(x: float) -> str:
    return format_sex(x, 2).replace(";", "°", 1).replace(",", "′", 1) + "″"


def epoch_report(rec: EphemerisRecord) -> str:
    lines = [
        f"Venus longitude at the epoch ({rec.method}):",
        f"  computed  {rec.longitude:11.6f}°  {_dms(rec.longitude)}",
        f"  published {PUBLISHED_EPOCH_LONGITUDE:11.6f}°  {_dms(PUBLISHED_EPOCH_LONGITUDE)}",
        f"  IMCCE     {IMCCE_EPOCH_LONGITUDE:11.6f}°  {_dms(IMCCE_EPOCH_LONGITUDE)}",
        f"  computed - published = {60 * wrap180(rec.longitude - PUBLISHED_EPOCH_LONGITUDE):+.2f}′, "
        f"computed - IMCCE = {60 * wrap180(rec.longitude - IMCCE_EPOCH_LONGITUDE):+.2f}′",
        "  note: the 264;23 figure comes from the interpolated second equation with M neglected;",
        "        the exact second equation gives about 264;4, so the two planar methods differ",
        "        here by the interpolation error at this (theta_c, theta_p).",
    ]
    return "\n".join(lines)


def record_report(rec: EphemerisRecord) -> str:
    return (f"jd {rec.jd:.5f}  t {rec.t_years:.6f} y  [{rec.method}]\n"
            f"  longitude {rec.longitude:11.6f}°  {_dms(rec.longitude)}\n"
            f"  latitude  {rec.latitude:+11.6f}°  {_dms(rec.latitude)}\n"
            f"  radius    {rec.radius:11.6f}")


# -- argparse -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _when(args) -> float:
    if args.date is not None:
        return jd_to_years(julian_day(parse_date(args.date, args.calendar)))
    return args.t if args.t is not None else 0.0


def _cmd_compute(args) -> int:
    model = resolve_model(args.model)
    rec = compute_record(model, _when(args), args.method)
    if args.out:
        fh, close = _open_out(args.out)
        write_records([rec], fh, args.format if args.format != "text" else "csv")
        if close:
            fh.close()
    if args.format == "text":
        print(record_report(rec))
        if abs(rec.jd - EPOCH_JD_GMT) < 1e-6:
            print(epoch_report(rec))
    elif not args.out:
        write_records([rec], sys.stdout, args.format)
    return 0


def _cmd_series(args) -> int:
    model = resolve_model(args.model)
    fh, close = _open_out(args.out)
    try:
        if args.grid is not None:
            tables.write_grid_csv(kinematics.latitude_surface(model, args.grid), fh)
        else:
            write_records(series(model, _when(args), args.span, args.step, args.method), fh, args.format)
    finally:
        if close:
            fh.close()
    return 0


def _cmd_tables(args) -> int:
    model = resolve_model(args.model)
    geom = PlanarGeometry.from_model(model)
    fh, close = _open_out(args.out)
    try:
        if args.error_surface is not None:
            tables.write_grid_csv(tables.error_surface(args.error_surface, geom), fh)
        elif args.delta_lambda is not None:
            tables.write_grid_csv(kinematics.delta_lambda_surface(model, args.delta_lambda), fh)
        elif args.e_surface is not None:
            tables.write_grid_csv(tables.e_surface(args.e_surface, geom), fh)
        else:
            tables.write_zij_csv(tables.generate_zij(args.step, geom), fh)
    finally:
        if close:
            fh.close()
    return 0


def _cmd_compare(args) -> int:
    model = resolve_model(args.model)
    try:
        with open(args.reference, encoding="utf-8", newline="") as f:
            reference = read_reference(f)
    except OSError as exc:
        raise DataError(str(exc)) from None
    rows, summary = compare(model, reference, args.method)
    if args.format == "json":
        payload = {"summary": summary, "rows": [dict(zip(COMPARE_HEADER, map(float, [
            r.reference.jd, r.computed.t_years, r.reference.longitude, r.reference.latitude,
            r.computed.longitude, r.computed.latitude, r.dlon_arcmin, r.dlat_arcmin]))) for r in rows]}
        fh, close = _open_out(args.out)
        json.dump(payload, fh, indent=1)
        fh.write("\n")
        if close:
            fh.close()
        return 0
    fh, close = _open_out(args.out)
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(COMPARE_HEADER)
    for r in rows:
        w.writerow(r.row())
    if close:
        fh.close()
    out = sys.stdout if close else sys.stderr
    for key in ("dlon_arcmin", "dlat_arcmin"):
        s = summary[key]
        print(f"{key}: max {s['max_abs']:.3f}  mean {s['mean']:+.3f}  rms {s['rms']:.3f}  "
              f"({summary['rows']} rows, {summary['method']})", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orbkin", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt_choices=("csv", "json")):
        sp.add_argument("--model", default="venus_1", help="built-in name or model file path")
        sp.add_argument("--method", choices=METHODS, default="full3d")
        sp.add_argument("--out", help="output path (default stdout)")
        sp.add_argument("--format", choices=fmt_choices, default=fmt_choices[0])

    def when(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--t", type=float, help="Persian years since the epoch")
        g.add_argument("--date", help="ISO date-time, GMT, e.g. 1331-12-24T09:42")
        sp.add_argument("--calendar", choices=("julian", "gregorian"), default="julian")

    c = sub.add_parser("compute", help="one position")
    c.add_argument("model_pos", nargs="?", metavar="MODEL", help="same as --model")
    common(c, ("text", "csv", "json"))
    when(c)
    c.set_defaults(func=_cmd_compute)

    s = sub.add_parser("series", help="ephemeris series, or a latitude grid with --grid")
    s.add_argument("model_pos", nargs="?", metavar="MODEL", help="same as --model")
    common(s)
    when(s)
    s.add_argument("--span", type=float, default=5.0, help="years")
    s.add_argument("--step", type=float, default=1.0, help="days")
    s.add_argument("--grid", type=float, metavar="DEG", help="latitude over (theta_c, theta_p) instead")
    s.set_defaults(func=_cmd_series)

    tb = sub.add_parser("tables", help="zij table or error surfaces")
    tb.add_argument("model_pos", nargs="?", metavar="MODEL", help="same as --model")
    tb.add_argument("--model", default="venus_1")
    tb.add_argument("--step", type=float, default=1.0, help="table step, degrees")
    tb.add_argument("--out")
    g = tb.add_mutually_exclusive_group()
    g.add_argument("--error-surface", type=float, metavar="DEG", help="interpolated minus exact e")
    g.add_argument("--delta-lambda", type=float, metavar="DEG", help="longitude error from dropping M")
    g.add_argument("--e-surface", type=float, metavar="DEG", help="exact second equation")
    tb.set_defaults(func=_cmd_tables)

    cp = sub.add_parser("compare", help="compare with a reference ephemeris CSV")
    cp.add_argument("model_pos", nargs="?", metavar="MODEL", help="same as --model")
    common(cp)
    cp.add_argument("--reference", required=True, help="CSV with jd,longitude_deg,latitude_deg")
    cp.set_defaults(func=_cmd_compare)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    if args.model_pos:
        args.model = args.model_pos
    try:
        return args.func(args)
    except (DataError, ModelError, DateError, SexagesimalError) as exc:
        print(f"orbkin: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"orbkin: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
