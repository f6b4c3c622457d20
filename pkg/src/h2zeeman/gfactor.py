"""Landé g-factors of the H2+ hyperfine levels.

The g-factor of a pure level splits into

    g_J = g1 + g2 + g3

with g1 from the electron spin, g2 from the nuclear spin (odd L only) and g3
from the electron and proton orbital motion. Each spin part is available both
as a closed-form rational and through the generic 6j reduction chain; tests
hold the two to 1e-12.

Mixed levels (odd L, J = L +/- 1/2) combine the F=1/2 and F=3/2 values with the
coefficients of a :class:`~h2zeeman.hfs.MixingEntry`, adding crossed terms for
the spin parts.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Literal, Mapping, Optional, Sequence, Union

from . import data as _data
from .angular import HalfInt, format_half_int, spin_reduced_element, twice, wigner_6j
from .constants import PhysicalConstants, default_constants
from .errors import DataMissingError, DomainError, ValidationError
from .hfs import HyperfineLevel, MixingEntry, MixingTable, _allowed_spin_states

__all__ = [
    "OrbitalElements",
    "OrbitalData",
    "load_orbital_data",
    "GFactorBreakdown",
    "g1_over_ge",
    "g2_scaled",
    "g3_coefficient",
    "g1_pure",
    "g2_pure",
    "g3_pure",
    "l_tot",
    "crossed_reduced",
    "crossed_term_over_ge",
    "g1_via_wigner",
    "g2_via_wigner",
    "g3_coefficient_via_wigner",
    "crossed_reduced_via_wigner",
    "mixed_breakdown",
    "g_total",
    "g_rot",
    "g_ratio",
    "v_average",
]

ORBITAL_HEADER = ("L", "v", "le_red", "l1_red")
STANDARD_MAX_QN = 4
S_E = Fraction(1, 2)

Operator = Literal["electron-spin", "nuclear-spin"]


# ---------------------------------------------------------------- orbital data


@dataclass(frozen=True)
class OrbitalElements:
    """<v,L||L_e||v,L> and <v,L||L_1||v,L>, both divided by sqrt(2L+1)."""

    le_red: float
    l1_red: float


class OrbitalData(Mapping[tuple[int, int], OrbitalElements]):
    """Orbital reduced matrix elements keyed by (v, L)."""

    def __init__(self, entries: Mapping[tuple[int, int], OrbitalElements]) -> None:
        for (v, L), el in entries.items():
            _check_orbital(v, L, el)
        self._entries = dict(entries)

    def __getitem__(self, key: tuple[int, int]) -> OrbitalElements:
        try:
            return self._entries[key]
        except KeyError:
            v, L = key
            raise DataMissingError(f"no orbital matrix elements for (v={v}, L={L})") from None

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)


def _check_orbital(v: int, L: int, el: OrbitalElements) -> None:
    if v < 0 or L < 0:
        raise ValidationError(f"negative quantum number in orbital data: v={v}, L={L}")
    if L == 0:
        if el.le_red != 0 or el.l1_red != 0:
            raise ValidationError(f"(v={v}, L=0) orbital elements must be exactly zero")
        return
    if not (el.le_red > 0 and el.l1_red > 0):
        raise ValidationError(f"(v={v}, L={L}) orbital elements must be positive")
    # each proton carries about half of the rotational angular momentum
    expected = math.sqrt(L * (L + 1)) / 2
    if abs(el.l1_red / expected - 1) > 0.01:
        raise ValidationError(
            f"(v={v}, L={L}) l1_red={el.l1_red} is not within 1% of sqrt(L(L+1))/2={expected:.5f}"
        )


def load_orbital_data(
    source: Union[str, Path, None] = None, *, allow_extended: bool = False
) -> OrbitalData:
    """Read the orbital-element CSV (header ``L,v,le_red,l1_red``).

    Rows with v or L outside 0..4 are rejected unless ``allow_extended``.
    """
    path = Path(source) if source is not None else _data.orbital_data_path()
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(row for row in fh if row.strip() and not row.lstrip().startswith("#"))
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != ORBITAL_HEADER:
            raise ValidationError(f"{path}: header must be {','.join(ORBITAL_HEADER)}")
        entries: dict[tuple[int, int], OrbitalElements] = {}
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 4:
                raise ValidationError(f"{path}:{lineno}: expected 4 fields")
            try:
                L, v = int(row[0]), int(row[1])
                el = OrbitalElements(float(row[2]), float(row[3]))
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: {exc}") from None
            if not allow_extended and not (0 <= L <= STANDARD_MAX_QN and 0 <= v <= STANDARD_MAX_QN):
                raise ValidationError(
                    f"{path}:{lineno}: (v={v}, L={L}) outside 0..{STANDARD_MAX_QN}; "
                    "pass allow_extended=True to accept it"
                )
            if (v, L) in entries:
                raise ValidationError(f"{path}:{lineno}: duplicate entry (v={v}, L={L})")
            entries[(v, L)] = el
    return OrbitalData(entries)


# ------------------------------------------------------- closed-form spin parts


def _spin_state(L: int, F: HalfInt, J: HalfInt) -> tuple[int, int]:
    if L < 0:
        raise DomainError(f"L must be non-negative, got {L}")
    tf, tj = twice(F), twice(J)
    if (tf, tj) not in _allowed_spin_states(L):
        raise DomainError(f"(L={L}, F={format_half_int(tf)}, J={format_half_int(tj)}) is not a hyperfine state")
    return tf, tj


def g1_over_ge(L: int, F: HalfInt, J: HalfInt) -> Fraction:
    """Electron-spin contribution g1 in units of g_e, as an exact rational."""
    tf, tj = _spin_state(L, F, J)
    d = tj - 2 * L  # 2(J - L)
    if L % 2 == 0:
        return Fraction(1 if d > 0 else -1, 2 * L + 1)
    if tf == 1:
        return Fraction(-1 if d > 0 else 1, 3 * (2 * L + 1))
    if d == 3:
        return Fraction(1, 2 * L + 3)
    if d == 1:
        return Fraction(2 * L + 9, 3 * (2 * L + 1) * (2 * L + 3))
    if d == -1:
        return Fraction(-(2 * L - 7), 3 * (2 * L - 1) * (2 * L + 1))
    return Fraction(-1, 2 * L - 1)


def g2_scaled(L: int, F: HalfInt, J: HalfInt) -> Fraction:
    """Nuclear-spin contribution as (m_p/m_e) g2 / g_p, exact; zero for even L."""
    tf, tj = _spin_state(L, F, J)
    if L % 2 == 0:
        return Fraction(0)
    d = tj - 2 * L
    if tf == 1:
        return Fraction(-4 if d > 0 else 4, 3 * (2 * L + 1))
    if d == 3:
        return Fraction(-2, 2 * L + 3)
    if d == 1:
        return Fraction(-2 * (2 * L + 9), 3 * (2 * L + 1) * (2 * L + 3))
    if d == -1:
        return Fraction(2 * (2 * L - 7), 3 * (2 * L - 1) * (2 * L + 1))
    return Fraction(2, 2 * L - 1)


def g3_coefficient(L: int, F: HalfInt, J: HalfInt) -> float:
    """Geometric factor multiplying <||L_tot||> in g3."""
    tf, tj = _spin_state(L, F, J)
    if L == 0:
        return 0.0
    d = tj - 2 * L
    rt = math.sqrt(L * (L + 1))
    if tf == 1:
        if d > 0:
            return 2 * math.sqrt(L) / (math.sqrt(L + 1) * (2 * L + 1))
        return 2 * math.sqrt(L + 1) / (math.sqrt(L) * (2 * L + 1))
    if d == 3:
        return 2 * math.sqrt(L) / (math.sqrt(L + 1) * (2 * L + 3))
    if d == 1:
        return 2 * (2 * L * L + 3 * L - 3) / (rt * (2 * L + 1) * (2 * L + 3))
    if d == -1:
        return 2 * (2 * L * L + L - 4) / (rt * (2 * L - 1) * (2 * L + 1))
    return 2 * math.sqrt(L + 1) / (math.sqrt(L) * (2 * L - 1))


def g1_pure(L: int, F: HalfInt, J: HalfInt, constants: Optional[PhysicalConstants] = None) -> float:
    c = constants or default_constants()
    return c.g_e * float(g1_over_ge(L, F, J))


def g2_pure(L: int, F: HalfInt, J: HalfInt, constants: Optional[PhysicalConstants] = None) -> float:
    c = constants or default_constants()
    return c.nuclear_scale * float(g2_scaled(L, F, J))


def l_tot(v: int, L: int, data: OrbitalData, constants: Optional[PhysicalConstants] = None) -> float:
    """<||L_tot||> = le_red - 2 (m_e/m_p) l1_red."""
    c = constants or default_constants()
    el = data[(v, L)]
    return el.le_red - 2 * c.mass_ratio * el.l1_red


def g3_pure(
    v: int, L: int, F: HalfInt, J: HalfInt, data: OrbitalData, constants: Optional[PhysicalConstants] = None
) -> float:
    coeff = g3_coefficient(L, F, J)
    return coeff * l_tot(v, L, data, constants)


def crossed_reduced(L: int, operator: Operator = "electron-spin") -> float:
    """Off-diagonal <F=1/2, J || S_e or I || F=3/2, J>, identical for J = L +/- 1/2."""
    if L % 2 == 0:
        raise DomainError(f"crossed elements only exist for odd L, got L={L}")
    value = math.sqrt(8) / 3 * math.sqrt(L * (L + 1)) / math.sqrt(2 * L + 1)
    if operator == "electron-spin":
        return value
    if operator == "nuclear-spin":
        return -value
    raise ValueError(f"unknown operator {operator!r}")


def _norm(tj: int) -> float:
    # sqrt(J(J+1)(2J+1))
    return math.sqrt(Fraction(tj * (tj + 2) * (tj + 1), 4))


def crossed_term_over_ge(L: int, J: HalfInt) -> float:
    """Crossed electron-spin matrix element over sqrt(J(J+1)(2J+1))."""
    tj = twice(J)
    if abs(tj - 2 * L) != 1:
        raise DomainError(f"J={format_half_int(tj)} is not a mixed level of L={L}")
    return crossed_reduced(L, "electron-spin") / _norm(tj)


# -------------------------------------------------------- 6j reduction chain


def _phase(twice_exponent: int) -> int:
    if twice_exponent % 2:
        raise ValueError("phase exponent must be an integer")
    return -1 if (twice_exponent // 2) % 2 else 1


def _spin_reduced_chain(L: int, tf: int, tj: int, operator: Operator) -> float:
    """<L, S_e, I, F, J || S_e or I || L, S_e, I, F, J> through 6j recoupling."""
    ts, ti = 1, 2 * (L % 2)
    if L % 2 == 0:
        if operator == "nuclear-spin":
            return 0.0
        return (
            spin_reduced_element(S_E)
            * _phase(tj + 2 * L + ts + 2)
            * (tj + 1)
            * wigner_6j(S_E, 1, S_E, Fraction(tj, 2), L, Fraction(tj, 2))
        )
    F, J = Fraction(tf, 2), Fraction(tj, 2)
    I = Fraction(ti, 2)
    if operator == "electron-spin":
        # S_e is the first member of F = S_e + I
        spin_part = (
            spin_reduced_element(S_E) * _phase(tf + ts + ti + 2) * (tf + 1) * wigner_6j(S_E, 1, S_E, F, I, F)
        )
    else:
        spin_part = (
            spin_reduced_element(I) * _phase(ts + ti + tf + 2) * (tf + 1) * wigner_6j(I, 1, I, F, S_E, F)
        )
    # F is the second member of J = L + F
    return spin_part * _phase(tj + 2 * L + tf + 2) * (tj + 1) * wigner_6j(F, 1, F, J, L, J)


def g1_via_wigner(L: int, F: HalfInt, J: HalfInt, constants: Optional[PhysicalConstants] = None) -> float:
    c = constants or default_constants()
    tf, tj = _spin_state(L, F, J)
    return c.g_e * _spin_reduced_chain(L, tf, tj, "electron-spin") / _norm(tj)


def g2_via_wigner(L: int, F: HalfInt, J: HalfInt, constants: Optional[PhysicalConstants] = None) -> float:
    c = constants or default_constants()
    tf, tj = _spin_state(L, F, J)
    return -c.nuclear_scale * _spin_reduced_chain(L, tf, tj, "nuclear-spin") / _norm(tj)


def g3_coefficient_via_wigner(L: int, F: HalfInt, J: HalfInt) -> float:
    """g3 / <||L_tot||> from the reduction of an orbital vector operator."""
    tf, tj = _spin_state(L, F, J)
    if L == 0:
        return 0.0
    Fq, Jq = Fraction(tf, 2), Fraction(tj, 2)
    reduced = _phase(tj + 2 * L + tf + 2) * (tj + 1) * wigner_6j(L, 1, L, Jq, Fq, Jq)
    return reduced * math.sqrt(2 * L + 1) / _norm(tj)


def crossed_reduced_via_wigner(L: int, J: HalfInt, operator: Operator = "electron-spin") -> float:
    """<F=1/2, J || op || F'=3/2, J> from the general recoupling expression."""
    tj = twice(J)
    if L % 2 == 0 or abs(tj - 2 * L) != 1:
        raise DomainError(f"no crossed element for L={L}, J={format_half_int(tj)}")
    F, Fp, Jq = S_E, Fraction(3, 2), Fraction(tj, 2)
    I = 1
    alpha = math.sqrt(2 * 4) * (tj + 1) * wigner_6j(F, 1, Fp, Jq, L, Jq)
    if operator == "electron-spin":
        # (-1)^(J + L + 2F' + 3/2)
        return alpha * _phase(tj + 2 * L + 6 + 3) * wigner_6j(S_E, 1, S_E, Fp, I, F) * spin_reduced_element(S_E)
    if operator == "nuclear-spin":
        # (-1)^(J + L + 3/2)
        return alpha * _phase(tj + 2 * L + 3) * wigner_6j(I, 1, I, Fp, S_E, F) * spin_reduced_element(I)
    raise ValueError(f"unknown operator {operator!r}")


# ---------------------------------------------------------------- assembly


@dataclass(frozen=True)
class GFactorBreakdown:
    g1: float
    g2: float
    g3: float
    mixed: bool = False
    total: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "total", self.g1 + self.g2 + self.g3)


def pure_breakdown(
    v: int, L: int, F: HalfInt, J: HalfInt, data: OrbitalData, constants: Optional[PhysicalConstants] = None
) -> GFactorBreakdown:
    """Contributions computed as if (F, J) were an unmixed basis state."""
    c = constants or default_constants()
    return GFactorBreakdown(
        g1_pure(L, F, J, c),
        g2_pure(L, F, J, c),
        g3_pure(v, L, F, J, data, c),
    )


def mixed_breakdown(
    entry: MixingEntry,
    data: OrbitalData,
    constants: Optional[PhysicalConstants] = None,
    *,
    crossed: bool = True,
) -> GFactorBreakdown:
    """g~1, g~2, g~3 of a mixed level; ``crossed=False`` drops the F=1/2 - F=3/2 interference."""
    c = constants or default_constants()
    v, L, tj = entry.v, entry.L, entry.twice_J
    J = Fraction(tj, 2)
    w1, w3 = entry.C1 ** 2, entry.C3 ** 2
    cross = 2 * entry.C1 * entry.C3 if crossed else 0.0
    half, three_half = Fraction(1, 2), Fraction(3, 2)
    norm = _norm(tj)

    g1 = w1 * g1_pure(L, half, J, c) + w3 * g1_pure(L, three_half, J, c)
    g1 += cross * c.g_e * crossed_reduced(L, "electron-spin") / norm
    g2 = w1 * g2_pure(L, half, J, c) + w3 * g2_pure(L, three_half, J, c)
    g2 -= cross * c.nuclear_scale * crossed_reduced(L, "nuclear-spin") / norm
    # orbital operators cannot connect F=1/2 with F=3/2
    g3 = w1 * g3_pure(v, L, half, J, data, c) + w3 * g3_pure(v, L, three_half, J, data, c)
    return GFactorBreakdown(g1, g2, g3, mixed=True)


def g_total(
    level: HyperfineLevel,
    constants: Optional[PhysicalConstants] = None,
    data: Optional[OrbitalData] = None,
    mixing: Optional[MixingTable] = None,
) -> GFactorBreakdown:
    """Final g-factor of a hyperfine level, including state mixing for odd-L J = L +/- 1/2."""
    if data is None:
        data = load_orbital_data()
    if level.is_pure:
        return pure_breakdown(level.v, level.L, level.F, level.J, data, constants)
    if mixing is None:
        from .hfs import load_mixing_table

        mixing = load_mixing_table(_data.mixing_table_path())
    return mixed_breakdown(mixing.entry_for(level), data, constants)


def g_rot(v: int, L: int, data: OrbitalData, constants: Optional[PhysicalConstants] = None) -> float:
    """Rotational g-factor of the decoupled (strong-field) regime."""
    if L < 1:
        raise DomainError("g_rot is undefined for L=0")
    c = constants or default_constants()
    return -c.proton_mass_ratio * l_tot(v, L, data, c) / math.sqrt(L * (L + 1))


def g_ratio(
    a: HyperfineLevel,
    b: HyperfineLevel,
    constants: Optional[PhysicalConstants] = None,
    data: Optional[OrbitalData] = None,
    mixing: Optional[MixingTable] = None,
) -> float:
    """g_J(a) / g_J(b), signed."""
    ga = g_total(a, constants, data, mixing).total
    gb = g_total(b, constants, data, mixing).total
    if gb == 0:
        raise DomainError(f"g-factor of {b.label()} is zero")
    return ga / gb


def v_average(values: Sequence[float], weights: Sequence[float]) -> float:
    """Weight-normalized mean, e.g. over a vibrational population distribution."""
    if len(values) != len(weights):
        raise DomainError(f"{len(values)} values but {len(weights)} weights")
    if any(w < 0 for w in weights):
        raise DomainError("weights must be non-negative")
    total = math.fsum(weights)
    if total == 0:
        raise DomainError("weights sum to zero")
    return math.fsum(x * w for x, w in zip(values, weights)) / total
