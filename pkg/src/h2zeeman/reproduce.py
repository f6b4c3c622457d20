"""Regenerate the published tables and diff them cell by cell against the printed values."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from . import reference
from .angular import twice
from .constants import PhysicalConstants, default_constants
from .gfactor import (
    OrbitalData,
    g1_over_ge,
    g2_scaled,
    g_rot,
    g_total,
    l_tot,
    load_orbital_data,
    pure_breakdown,
)
from .hfs import HyperfineLevel, MixingTable, load_mixing_table
from .zeeman import FORBIDDEN, MagneticField, table_v
from . import data as _data

TOL_PURE_G = 1e-7
TOL_MIXED_G = 2e-6
TOL_GROT_REL = 2e-4
TOL_SHIFT_HZ = 2.0
TOL_SPLITTING_HZ = 0.3
TOL_RATIO_REL = 0.01
TABLE_V_FIELD_T = 5e-5
RATIO_V = 4

TABLES = (1, 2, 3, 4, 5)


@dataclass(frozen=True)
class Cell:
    """One compared cell. ``tolerance`` None means exact rational equality."""

    row: str
    column: str
    computed: Union[float, Fraction, str]
    printed: str
    expected: Union[float, Fraction, str]
    tolerance: Optional[float]
    relative: bool = False

    @property
    def delta(self) -> float:
        if isinstance(self.computed, str) or isinstance(self.expected, str):
            return 0.0 if self.computed == self.expected else math.inf
        d = abs(float(self.computed) - float(self.expected))
        if self.relative:
            d /= abs(float(self.expected))
        return d

    @property
    def ok(self) -> bool:
        if self.tolerance is None:
            return self.computed == self.expected
        return self.delta <= self.tolerance


@dataclass
class TableReport:
    number: int
    title: str
    columns: list[str]
    rows: list[list[str]]
    cells: list[Cell]
    notes: list[str] = field(default_factory=list)

    @property
    def failures(self) -> list[Cell]:
        return [c for c in self.cells if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class Context:
    constants: PhysicalConstants
    data: OrbitalData
    mixing: MixingTable

    @classmethod
    def default(cls) -> "Context":
        return cls(default_constants(), load_orbital_data(), load_mixing_table(_data.mixing_table_path()))


def fmt_rational(x: Fraction) -> str:
    if x == 0:
        return "0"
    sign = "+" if x > 0 else "-"
    x = abs(x)
    return f"{sign}{x.numerator}" if x.denominator == 1 else f"{sign}{x.numerator}/{x.denominator}"


def fmt_half(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _table1(ctx: Context) -> TableReport:
    rows, cells = [], []
    for ref in reference.table1():
        tag = f"L={ref.L} v={ref.v}"
        lt = l_tot(ref.v, ref.L, ctx.data, ctx.constants)
        gr = g_rot(ref.v, ref.L, ctx.data, ctx.constants)
        cells.append(Cell(tag, "l_tot", lt, ref.l_tot.text, ref.l_tot.value, ref.l_tot.ulp))
        cells.append(Cell(tag, "g_rot", gr, ref.g_rot.text, ref.g_rot.value, TOL_GROT_REL, relative=True))
        el = ctx.data[(ref.v, ref.L)]
        rows.append([str(ref.L), str(ref.v), f"{el.le_red:.3e}", f"{el.l1_red:.5f}", f"{lt:.4e}", f"{gr:.4f}"])
    return TableReport(
        1,
        "Orbital reduced matrix elements, <||L_tot||> and rotational g-factors",
        ["L", "v", "le_red", "l1_red", "l_tot", "g_rot"],
        rows,
        cells,
    )


def _table2(ctx: Context) -> TableReport:
    rows, cells = [], []
    for ref in reference.table2():
        level = HyperfineLevel.make(ref.v, ref.L, ref.J)
        b = g_total(level, ctx.constants, ctx.data, ctx.mixing)
        ratio = g1_over_ge(ref.L, Fraction(1, 2), ref.J)
        tag = f"L={ref.L} v={ref.v} J={fmt_half(ref.J)}"
        cells.append(Cell(tag, "g1/g_e", ratio, fmt_rational(ref.g1_over_ge), ref.g1_over_ge, None))
        cells.append(Cell(tag, "g3", b.g3, ref.g3.text, ref.g3.value, TOL_PURE_G))
        cells.append(Cell(tag, "g_J", b.total, ref.g_J.text, ref.g_J.value, TOL_PURE_G))
        rows.append([str(ref.L), str(ref.v), fmt_half(ref.J), fmt_rational(ratio), f"{b.g3:.3e}", f"{b.total:.7f}"])
    return TableReport(
        2,
        "g-factors of the even-L hyperfine levels",
        ["L", "v", "J", "g1/g_e", "g3", "g_J"],
        rows,
        cells,
    )


def _table3(ctx: Context) -> TableReport:
    rows, cells = [], []
    c = ctx.constants
    for ref in reference.table3():
        tag = f"L={ref.L} v={ref.v} F={fmt_half(ref.F)} J={fmt_half(ref.J)}"
        r1 = g1_over_ge(ref.L, ref.F, ref.J)
        r2 = g2_scaled(ref.L, ref.F, ref.J)
        pure = pure_breakdown(ref.v, ref.L, ref.F, ref.J, ctx.data, c)
        level = HyperfineLevel(ref.v, ref.L, twice(ref.F), twice(ref.J))
        final = g_total(level, c, ctx.data, ctx.mixing)
        cells += [
            Cell(tag, "g1/g_e", r1, fmt_rational(ref.g1_over_ge), ref.g1_over_ge, None),
            Cell(tag, "(mp/me) g2/g_p", r2, fmt_rational(ref.g2_scaled), ref.g2_scaled, None),
            Cell(tag, "g3", pure.g3, ref.g3.text, ref.g3.value, TOL_PURE_G),
            Cell(tag, "g_J", pure.total, ref.g_J.text, ref.g_J.value, TOL_PURE_G),
        ]
        row = [str(ref.L), str(ref.v), fmt_half(ref.F), fmt_half(ref.J), fmt_rational(r1), fmt_rational(r2),
               f"{pure.g3:.3e}", f"{pure.total:+.7f}"]
        if ref.mixed:
            t1, t2 = final.g1 / c.g_e, final.g2 / c.nuclear_scale
            cells += [
                Cell(tag, "g~1/g_e", t1, ref.gt1_over_ge.text, ref.gt1_over_ge.value, TOL_MIXED_G),
                Cell(tag, "(mp/me) g~2/g_p", t2, ref.gt2_scaled.text, ref.gt2_scaled.value, TOL_MIXED_G),
                Cell(tag, "g~3", final.g3, ref.gt3.text, ref.gt3.value, TOL_MIXED_G),
            ]
            row += [f"{t1:+.7f}", f"{t2:+.7f}", f"{final.g3:.3e}"]
        else:
            row += ["", "", ""]
        cells.append(Cell(tag, "g~_J", final.total, ref.gt_J.text, ref.gt_J.value, TOL_MIXED_G))
        row.append(f"{final.total:+.7f}")
        rows.append(row)
    return TableReport(
        3,
        "g-factors of the odd-L (L=1, 3) hyperfine levels, without and with state mixing",
        ["L", "v", "F", "J", "g1/g_e", "(mp/me)g2/g_p", "g3", "g_J",
         "g~1/g_e", "(mp/me)g~2/g_p", "g~3", "g~_J"],
        rows,
        cells,
        notes=["mixing coefficients recovered from the printed g~1/g_e column (F~=1/2 rows)"],
    )


def _table4(ctx: Context, v: int = RATIO_V) -> TableReport:
    rows, cells = [], []
    for ref in reference.table4():
        (l1, f1, j1), (l2, f2, j2) = ref.numerator, ref.denominator
        num = g_total(HyperfineLevel(v, l1, twice(f1), twice(j1)), ctx.constants, ctx.data, ctx.mixing).total
        den = g_total(HyperfineLevel(v, l2, twice(f2), twice(j2)), ctx.constants, ctx.data, ctx.mixing).total
        ratio = abs(num / den)
        cells.append(Cell(ref.label(), "ratio", ratio, ref.calculated.text, ref.calculated.value,
                          TOL_RATIO_REL, relative=True))
        rows.append([ref.label(), f"{ratio:.4f}", ref.calculated.text, ref.measured.text])
    return TableReport(
        4,
        f"g-factor ratios (magnitudes) evaluated at v={v}",
        ["ratio", f"computed (v={v})", "published (v=5-8 average)", "measured"],
        rows,
        cells,
        notes=[
            "published values average v=5-8 with population weights that are not tabulated here; "
            f"the single-v comparison uses a {TOL_RATIO_REL:.0%} tolerance",
        ],
    )


def _table5(ctx: Context, b_tesla: float = TABLE_V_FIELD_T) -> TableReport:
    lines = table_v(MagneticField(b_tesla), ctx.constants, ctx.data, ctx.mixing)
    refs = {(r.L, r.F, r.J): r for r in reference.table5()}
    rows, cells = [], []
    for line in lines:
        ref = refs[(line.L, line.F, line.J)]
        tag = f"L={line.L} F={fmt_half(line.F)} J={fmt_half(line.J)}"
        if ref.forbidden:
            computed = "*" if line.forbidden else f"{line.shift_hz:+.0f}"
            cells.append(Cell(tag, "shift", computed, "*", "*", None))
        else:
            computed = "*" if line.forbidden else line.shift_hz
            cells.append(Cell(tag, "shift", computed, ref.shift_hz.text, ref.shift_hz.value, TOL_SHIFT_HZ))
        if line.forbidden:
            shift_txt = "*"
        else:
            shift_txt = f"{line.shift_hz:+.0f}({line.shift_uncertainty_hz:.0f})"
        cells.append(Cell(tag, "splitting", line.splitting_hz, ref.splitting_hz.text,
                          ref.splitting_hz.value, TOL_SPLITTING_HZ))
        rows.append([str(line.L), fmt_half(line.F), fmt_half(line.J), shift_txt,
                     f"{line.splitting_hz:.1f}({line.splitting_uncertainty_hz:.1f})"])
    return TableReport(
        5,
        f"Zeeman shift (sigma+) and splitting (pi) of (v=0,L) -> (v'=1,L) lines at B = {b_tesla:g} T, in Hz",
        ["L", "F", "J", "shift", "splitting"],
        rows,
        cells,
        notes=["* = forbidden in circular polarization"],
    )


_BUILDERS: dict[int, Callable[[Context], TableReport]] = {
    1: _table1,
    2: _table2,
    3: _table3,
    4: _table4,
    5: _table5,
}


def reproduce(number: int, ctx: Optional[Context] = None) -> TableReport:
    if number not in _BUILDERS:
        raise ValueError(f"no table {number}; choose from {TABLES}")
    return _BUILDERS[number](ctx or Context.default())
