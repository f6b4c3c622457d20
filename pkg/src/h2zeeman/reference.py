"""Published tables bundled as CSV, parsed into typed rows.

Cells keep their printed precision: ``"+4/9"`` becomes a ``Fraction``,
``"-165314(9)"`` a :class:`Printed` value with its uncertainty, ``"*"`` marks a
forbidden transition and an empty cell means "not tabulated".
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Optional

from .data import REFERENCE_DIR

FORBIDDEN = "*"

_PRINTED = re.compile(r"^\s*([+-]?\s*[0-9.]+(?:[eE][+-]?[0-9]+)?)\s*(?:\((\d+)\))?\s*$")


@dataclass(frozen=True)
class Printed:
    """A printed decimal, its last-digit unit, and an optional quoted uncertainty."""

    value: float
    ulp: float
    uncertainty: Optional[float] = None
    text: str = ""


def parse_printed(text: str) -> Printed:
    m = _PRINTED.match(text)
    if not m:
        raise ValueError(f"cannot parse printed value {text!r}")
    number = m.group(1).replace(" ", "")
    mantissa, _, exponent = number.lower().partition("e")
    decimals = len(mantissa.partition(".")[2])
    ulp = 10.0 ** (-decimals + (int(exponent) if exponent else 0))
    unc = int(m.group(2)) * ulp if m.group(2) else None
    return Printed(float(number), ulp, unc, text.strip())


def _read(name: str, directory: Optional[Path] = None) -> list[dict[str, str]]:
    path = (directory or REFERENCE_DIR) / name
    with path.open(newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


@dataclass(frozen=True)
class OrbitalRow:
    L: int
    v: int
    le_red: Printed
    l1_red: Printed
    l_tot: Printed
    g_rot: Printed


@dataclass(frozen=True)
class EvenRow:
    L: int
    v: int
    J: Fraction
    g1_over_ge: Fraction
    g3: Printed
    g_J: Printed


@dataclass(frozen=True)
class OddRow:
    L: int
    v: int
    F: Fraction
    J: Fraction
    g1_over_ge: Fraction
    g2_scaled: Fraction
    g3: Printed
    g_J: Printed
    gt1_over_ge: Optional[Printed]
    gt2_scaled: Optional[Printed]
    gt3: Optional[Printed]
    gt_J: Printed

    @property
    def mixed(self) -> bool:
        return self.gt1_over_ge is not None


@dataclass(frozen=True)
class RatioRow:
    numerator: tuple[int, Fraction, Fraction]
    denominator: tuple[int, Fraction, Fraction]
    calculated: Printed
    measured: Printed

    def label(self) -> str:
        (l1, f1, j1), (l2, f2, j2) = self.numerator, self.denominator
        return f"g(L={l1},F={f1},J={j1}) / g(L={l2},F={f2},J={j2})"


@dataclass(frozen=True)
class ZeemanRow:
    L: int
    F: Fraction
    J: Fraction
    shift_hz: Optional[Printed]  # None: forbidden in circular polarization
    splitting_hz: Printed

    @property
    def forbidden(self) -> bool:
        return self.shift_hz is None


@lru_cache(maxsize=None)
def table1() -> tuple[OrbitalRow, ...]:
    return tuple(
        OrbitalRow(
            int(r["L"]),
            int(r["v"]),
            parse_printed(r["le_red"]),
            parse_printed(r["l1_red"]),
            parse_printed(r["l_tot"]),
            parse_printed(r["g_rot"]),
        )
        for r in _read("table1.csv")
    )


@lru_cache(maxsize=None)
def table2() -> tuple[EvenRow, ...]:
    return tuple(
        EvenRow(
            int(r["L"]),
            int(r["v"]),
            Fraction(r["J"]),
            Fraction(r["g1_over_ge"].replace("+", "")),
            parse_printed(r["g3"]),
            parse_printed(r["g_J"]),
        )
        for r in _read("table2.csv")
    )


@lru_cache(maxsize=None)
def table3() -> tuple[OddRow, ...]:
    """Both odd-L tables (L=1 and L=3)."""
    rows = []
    for r in _read("table3.csv"):
        opt = {k: (parse_printed(r[k]) if r[k].strip() else None) for k in ("gt1_over_ge", "gt2_scaled", "gt3")}
        rows.append(
            OddRow(
                int(r["L"]),
                int(r["v"]),
                Fraction(r["Ftilde"]),
                Fraction(r["J"]),
                Fraction(r["g1_over_ge"].replace("+", "")),
                Fraction(r["g2_scaled"].replace("+", "")),
                parse_printed(r["g3"]),
                parse_printed(r["g_J"]),
                gt_J=parse_printed(r["gt_J"]),
                **opt,
            )
        )
    return tuple(rows)


@lru_cache(maxsize=None)
def table4() -> tuple[RatioRow, ...]:
    return tuple(
        RatioRow(
            (int(r["num_L"]), Fraction(r["num_F"]), Fraction(r["num_J"])),
            (int(r["den_L"]), Fraction(r["den_F"]), Fraction(r["den_J"])),
            parse_printed(r["calculated"]),
            parse_printed(r["measured"]),
        )
        for r in _read("table4.csv")
    )


@lru_cache(maxsize=None)
def table5() -> tuple[ZeemanRow, ...]:
    rows = []
    for r in _read("table5.csv"):
        shift = None if r["shift_hz"].strip() == FORBIDDEN else parse_printed(r["shift_hz"])
        rows.append(
            ZeemanRow(int(r["L"]), Fraction(r["F"]), Fraction(r["J"]), shift, parse_printed(r["splitting_hz"]))
        )
    return tuple(rows)


def mixed_g1_inputs() -> dict[tuple[int, int, int], float]:
    """Printed g~1/g_e of every F~=1/2 mixed level, keyed by (v, L, 2J)."""
    return {
        (r.v, r.L, int(2 * r.J)): r.gt1_over_ge.value
        for r in table3()
        if r.mixed and r.F == Fraction(1, 2)
    }
