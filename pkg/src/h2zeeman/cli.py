"""Command-line interface.

    h2zeeman gfactor --v 0 --L 1
    h2zeeman zeeman --L 1 --F 3/2 --J 5/2 --B 5e-5 --pol sigma+
    h2zeeman reproduce 2 --diff

Exit status: 0 success, 1 usage or data error, 2 diff failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import data as _data
from .angular import format_half_int, twice
from .constants import FILE_KEYS, PhysicalConstants, load_constants
from .errors import (
    ConfigurationError,
    DataMissingError,
    DomainError,
    ForbiddenTransitionError,
    InversionError,
    ValidationError,
)
from .gfactor import OrbitalData, g1_over_ge, g2_scaled, g_rot, g_total, load_orbital_data
from .hfs import HyperfineLevel, MixingTable, enumerate_levels, load_mixing_table
from .reproduce import TABLE_V_FIELD_T, TABLES, Context, TableReport, fmt_rational, reproduce
from .zeeman import (
    MagneticField,
    Polarization,
    TwoPhotonTransition,
    components,
    pi_splitting,
    sigma_line_center_shift,
)

EXIT_OK, EXIT_ERROR, EXIT_DIFF = 0, 1, 2
FORMATS = ("text", "csv", "json")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2, which we reserve for diffs
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    constants_file: Optional[Path] = None
    orbital_data: Optional[Path] = None
    mixing_table: Optional[Path] = None
    output_format: str = "text"
    allow_extended: bool = False

    def load(self) -> Context:
        """Load every referenced file up front so errors surface before any computation."""
        for path in (self.constants_file, self.orbital_data, self.mixing_table):
            if path is not None and not path.exists():
                raise UsageError(f"file not found: {path}")
        constants = load_constants(self.constants_file)
        data = load_orbital_data(self.orbital_data or _data.orbital_data_path(), allow_extended=self.allow_extended)
        mixing = load_mixing_table(self.mixing_table or _data.mixing_table_path())
        return Context(constants, data, mixing)


# ------------------------------------------------------------------ rendering


def render(
    columns: Sequence[str],
    rows: Sequence[Sequence[Any]],
    fmt: str,
    *,
    title: str = "",
    notes: Sequence[str] = (),
    extra: Optional[dict] = None,
) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows([[_plain(x) for x in row] for row in rows])
        return buf.getvalue()
    if fmt == "json":
        doc: dict[str, Any] = {"title": title, "rows": [dict(zip(columns, map(_plain, row))) for row in rows]}
        if notes:
            doc["notes"] = list(notes)
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=2) + "\n"
    cells = [[str(_plain(x)) for x in row] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = [title] if title else []
    lines.append("  ".join(c.rjust(w) for c, w in zip(columns, widths)))
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(x.rjust(w) for x, w in zip(r, widths)) for r in cells]
    lines += [f"note: {n}" for n in notes]
    return "\n".join(lines) + "\n"


def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if isinstance(x, float):
        return repr(x)
    return x


# ------------------------------------------------------------------ commands


def _level_rows(levels: Sequence[HyperfineLevel], ctx: Context) -> list[list[Any]]:
    c = ctx.constants
    rows = []
    for level in levels:
        b = g_total(level, c, ctx.data, ctx.mixing)
        if level.is_pure:
            r1: Any = g1_over_ge(level.L, level.F, level.J)
            r2: Any = g2_scaled(level.L, level.F, level.J)
        else:
            r1, r2 = f"{b.g1 / c.g_e:+.7f}", f"{b.g2 / c.nuclear_scale:+.7f}"
        rows.append([
            level.v, level.L, format_half_int(level.twice_F), format_half_int(level.twice_J),
            "pure" if level.is_pure else "mixed", r1, r2,
            f"{b.g1:+.7f}", f"{b.g2:+.3e}", f"{b.g3:+.3e}", f"{b.total:+.7f}",
        ])
    return rows


def cmd_gfactor(args: argparse.Namespace, ctx: Context) -> int:
    ctx.data[(args.v, args.L)]  # fail early on a missing (v, L)
    levels = enumerate_levels((args.v, args.L))
    if args.F is not None or args.J is not None:
        tf = twice(args.F) if args.F is not None else None
        tj = twice(args.J) if args.J is not None else None
        levels = [lv for lv in levels if (tf is None or lv.twice_F == tf) and (tj is None or lv.twice_J == tj)]
        if not levels:
            valid = ", ".join(f"(F={format_half_int(lv.twice_F)}, J={format_half_int(lv.twice_J)})"
                              for lv in enumerate_levels((args.v, args.L)))
            raise UsageError(f"no such level for L={args.L}; valid levels: {valid}")
    columns = ["v", "L", "F", "J", "state", "g1/g_e", "(mp/me)g2/g_p", "g1", "g2", "g3", "g_J"]
    out = render(columns, _level_rows(levels, ctx), args.format,
                 title=f"g-factors of (v={args.v}, L={args.L}); F is F~ for mixed levels")
    sys.stdout.write(out)
    return EXIT_OK


def cmd_grot(args: argparse.Namespace, ctx: Context) -> int:
    keys = [(args.v, args.L)] if args.v is not None else sorted(k for k in ctx.data if k[1] == args.L)
    if not keys:
        raise DataMissingError(f"no orbital data for L={args.L}")
    rows = [[v, L, f"{g_rot(v, L, ctx.data, ctx.constants):.4f}"] for v, L in keys]
    sys.stdout.write(render(["v", "L", "g_rot"], rows, args.format, title="rotational g-factors"))
    return EXIT_OK


def _parse_level(spec: str, v: int) -> HyperfineLevel:
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"level must be given as L:F:J, got {spec!r}")
    return HyperfineLevel(v, int(parts[0]), twice(parts[1]), twice(parts[2]))


def cmd_ratio(args: argparse.Namespace, ctx: Context) -> int:
    a = _parse_level(args.num, args.v)
    b = _parse_level(args.den, args.v if args.v_den is None else args.v_den)
    ga = g_total(a, ctx.constants, ctx.data, ctx.mixing).total
    gb = g_total(b, ctx.constants, ctx.data, ctx.mixing).total
    if gb == 0:
        raise DomainError(f"g-factor of {b.label()} is zero")
    rows = [[a.label(), b.label(), f"{ga:+.7f}", f"{gb:+.7f}", f"{ga / gb:+.5f}"]]
    sys.stdout.write(render(["numerator", "denominator", "g_num", "g_den", "ratio"], rows, args.format,
                            title="g-factor ratio"))
    return EXIT_OK


def cmd_zeeman(args: argparse.Namespace, ctx: Context) -> int:
    if args.F is None and args.L % 2:
        raise UsageError("--F is required for odd L")
    F = args.F if args.F is not None else "1/2"
    lower = HyperfineLevel(args.v_lower, args.L, twice(F), twice(args.J))
    upper = HyperfineLevel(
        args.v_upper, args.L,
        twice(args.F_upper) if args.F_upper is not None else lower.twice_F,
        twice(args.J_upper) if args.J_upper is not None else lower.twice_J,
    )
    trans = TwoPhotonTransition(lower, upper, permissive=args.permissive)
    field = MagneticField(args.B)
    pol = Polarization.parse(args.pol)
    c = ctx.constants
    comps = components(trans, field, pol, c, ctx.data, ctx.mixing)
    g_lo = g_total(lower, c, ctx.data, ctx.mixing).total
    g_up = g_total(upper, c, ctx.data, ctx.mixing).total

    summary: dict[str, Any] = {
        "lower": lower.label(), "upper": upper.label(), "g_lower": g_lo, "g_upper": g_up,
        "B_tesla": args.B, "polarization": pol.value,
    }
    notes = []
    if pol is Polarization.PI:
        if lower.twice_J == upper.twice_J:
            summary["splitting_hz"] = abs(pi_splitting(trans, field, c, ctx.data, ctx.mixing))
    else:
        try:
            summary["center_shift_hz"] = sigma_line_center_shift(trans, field, c, ctx.data, ctx.mixing,
                                                                 polarization=pol)
        except ForbiddenTransitionError:
            summary["center_shift_hz"] = "*"
            notes.append(f"* forbidden in {pol.value}: no M_J with |M_J| <= J and |M_J {'+' if pol is Polarization.SIGMA_PLUS else '-'} 2| <= J'")

    rows = [[format_half_int(twice(x.m_lower)), format_half_int(twice(x.m_upper)), f"{x.delta_nu_hz:+.1f}"]
            for x in comps]
    if args.format == "json":
        sys.stdout.write(render(["M_J", "M_J'", "delta_nu_hz"], rows, "json", title="Zeeman components",
                                notes=notes, extra={"line": summary}))
        return EXIT_OK
    head = [[k, _fmt_summary(k, v)] for k, v in summary.items()]
    sys.stdout.write(render(["quantity", "value"], head, args.format, title="two-photon line (Hz, tesla)"))
    if args.format == "text":
        sys.stdout.write("\n")
    sys.stdout.write(render(["M_J", "M_J'", "delta_nu_hz"], rows, args.format, title="components", notes=notes))
    return EXIT_OK


def _fmt_summary(key: str, v: Any) -> Any:
    if not isinstance(v, float):
        return v
    if key.startswith("g_"):
        return f"{v:+.7f}"
    return f"{v:g}" if key == "B_tesla" else f"{v:+.2f}"


def cmd_constants(args: argparse.Namespace, ctx: Context) -> int:
    c: PhysicalConstants = ctx.constants
    inverse = {v: k for k, v in FILE_KEYS.items()}
    rows = [[inverse[k], getattr(c, k)] for k in FILE_KEYS.values()]
    sys.stdout.write(render(["key", "value"], rows, args.format, title="physical constants"))
    return EXIT_OK


def _diff_rows(report: TableReport) -> list[list[Any]]:
    return [[c.row, c.column, _plain(c.computed), c.printed, repr(c.delta),
             "exact" if c.tolerance is None else repr(c.tolerance), "rel" if c.relative else "abs",
             "ok" if c.ok else "FAIL"] for c in report.cells]


DIFF_COLUMNS = ["row", "column", "computed", "printed", "delta", "tolerance", "mode", "status"]


def cmd_reproduce(args: argparse.Namespace, ctx: Context) -> int:
    report = reproduce(args.table, ctx)
    fmt = args.format
    if not args.diff:
        sys.stdout.write(render(report.columns, report.rows, fmt, title=f"Table {report.number}: {report.title}",
                                notes=report.notes))
        return EXIT_OK

    if fmt == "csv":
        sys.stdout.write(render(DIFF_COLUMNS, _diff_rows(report), "csv"))
    elif fmt == "json":
        sys.stdout.write(render(report.columns, report.rows, "json", title=report.title, notes=report.notes,
                                extra={"table": report.number, "ok": report.ok,
                                       "diff": [dict(zip(DIFF_COLUMNS, r)) for r in _diff_rows(report)]}))
    else:
        sys.stdout.write(render(report.columns, report.rows, "text",
                                title=f"Table {report.number}: {report.title}", notes=report.notes))
        worst: dict[str, float] = {}
        for c in report.cells:
            worst[c.column] = max(worst.get(c.column, 0.0), c.delta)
        print()
        for col, d in worst.items():
            print(f"max |delta| {col:>18}: {d:.3e}")
        for c in report.failures:
            tol = "exact" if c.tolerance is None else f"{c.tolerance:g}{' rel' if c.relative else ''}"
            print(f"FAIL {c.row} [{c.column}]: computed {_plain(c.computed)} vs printed {c.printed} "
                  f"(|delta| {c.delta:.3g} > {tol})")
        print(f"{len(report.cells) - len(report.failures)}/{len(report.cells)} cells within tolerance")
    return EXIT_OK if report.ok else EXIT_DIFF


# ------------------------------------------------------------------ wiring


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--constants", type=Path, help="JSON file overriding g_e, g_p, mass_ratio_me_mp, "
                                                       "bohr_magneton_hz_per_tesla")
    common.add_argument("--orbital-data", type=Path, help="orbital matrix-element CSV (default: bundled)")
    common.add_argument("--mixing-table", type=Path, help="mixing-coefficient CSV (default: bundled)")
    common.add_argument("--allow-extended", action="store_true", help="accept orbital data beyond v, L <= 4")
    common.add_argument("--format", choices=FORMATS, default="text")

    parser = _Parser(prog="h2zeeman", description="g-factors of H2+ hyperfine levels and Zeeman shifts of "
                                                   "two-photon lines",
                     epilog=f"default data directory: ${_data.DATA_DIR_ENV} or the bundled files")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("constants", parents=[common], help="show the physical constants in use")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("gfactor", parents=[common], help="g-factor breakdown of hyperfine levels")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--F", help="F (or F~ for mixed levels), e.g. 3/2")
    p.add_argument("--J", help="J, e.g. 5/2 or 2.5")
    p.set_defaults(func=cmd_gfactor)

    p = sub.add_parser("grot", parents=[common], help="rotational g-factor")
    p.add_argument("--v", type=int)
    p.add_argument("--L", type=int, required=True)
    p.set_defaults(func=cmd_grot)

    p = sub.add_parser("ratio", parents=[common], help="ratio of two hyperfine g-factors")
    p.add_argument("--v", type=int, default=4)
    p.add_argument("--v-den", type=int, help="vibrational level of the denominator (default: --v)")
    p.add_argument("--num", required=True, help="numerator level as L:F:J, e.g. 1:1/2:3/2")
    p.add_argument("--den", required=True, help="denominator level as L:F:J")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("zeeman", parents=[common], help="Zeeman shift/splitting of a two-photon line")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--F", help="F or F~ (required for odd L)")
    p.add_argument("--J", required=True)
    p.add_argument("--B", type=float, default=TABLE_V_FIELD_T, help="field in tesla")
    p.add_argument("--pol", default="sigma+", choices=[x.value for x in Polarization])
    p.add_argument("--v-lower", type=int, default=0)
    p.add_argument("--v-upper", type=int, default=1)
    p.add_argument("--F-upper", help="upper-level F (needs --permissive if different)")
    p.add_argument("--J-upper", help="upper-level J (needs --permissive if different)")
    p.add_argument("--permissive", action="store_true", help="allow non-homologous components")
    p.set_defaults(func=cmd_zeeman)

    p = sub.add_parser("reproduce", parents=[common], help="regenerate a published table")
    p.add_argument("table", type=int, choices=TABLES)
    p.add_argument("--diff", action="store_true", help="compare with printed values; exit 2 on any miss")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(args.constants, args.orbital_data, args.mixing_table, args.format, args.allow_extended)
    try:
        ctx = config.load()
        return args.func(args, ctx)
    except (UsageError, DomainError, ValidationError, DataMissingError, ConfigurationError,
            InversionError, ValueError, OSError) as exc:
        print(f"h2zeeman: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
