"""Linear Zeeman shifts of two-photon ro-vibrational lines.

For a two-photon transition (v, L, F, J, M) -> (v', L, F', J', M') in a field B,

    2 h dnu = (M' g' - M g) mu_B B

with M' - M = +2 (sigma+), -2 (sigma-) or 0 (pi).
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .constants import PhysicalConstants, default_constants
from .errors import DomainError, ForbiddenTransitionError
from .gfactor import OrbitalData, g_total, load_orbital_data
from .hfs import HyperfineLevel, MixingTable, enumerate_levels, load_mixing_table
from . import data as _data

__all__ = [
    "MagneticField",
    "Polarization",
    "TwoPhotonTransition",
    "ZeemanComponent",
    "ZeemanLine",
    "FORBIDDEN",
    "WeakFieldWarning",
    "state_shift",
    "components",
    "sigma_line_center_shift",
    "pi_splitting",
    "table_v",
]

WEAK_FIELD_LIMIT_T = 1e-2
RELATIVE_THEORY_UNCERTAINTY = 5e-5
CANCELLATION = 0.01


class WeakFieldWarning(UserWarning):
    """Field strong enough that the hyperfine-coupled linear model degrades."""


class _Forbidden:
    _instance: Optional["_Forbidden"] = None

    def __new__(cls) -> "_Forbidden":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "FORBIDDEN"

    def __str__(self) -> str:
        return "*"

    def __bool__(self) -> bool:
        return False


FORBIDDEN = _Forbidden()


@dataclass(frozen=True)
class MagneticField:
    b_tesla: float

    def __post_init__(self) -> None:
        if not self.b_tesla >= 0:
            raise DomainError(f"field strength must be non-negative, got {self.b_tesla}")
        if self.b_tesla > WEAK_FIELD_LIMIT_T:
            warnings.warn(
                f"B = {self.b_tesla} T exceeds {WEAK_FIELD_LIMIT_T} T; the linear hyperfine g_J model degrades",
                WeakFieldWarning,
                stacklevel=3,
            )

    def scale_hz(self, constants: PhysicalConstants) -> float:
        """mu_B B / h."""
        return constants.bohr_magneton_hz_per_tesla * self.b_tesla


class Polarization(enum.Enum):
    SIGMA_PLUS = "sigma+"
    SIGMA_MINUS = "sigma-"
    PI = "pi"

    @property
    def twice_delta_m(self) -> int:
        return {"sigma+": 4, "sigma-": -4, "pi": 0}[self.value]

    @classmethod
    def parse(cls, text: Union[str, "Polarization"]) -> "Polarization":
        if isinstance(text, Polarization):
            return text
        aliases = {"s+": "sigma+", "s-": "sigma-", "linear": "pi", "sigma_plus": "sigma+", "sigma_minus": "sigma-"}
        return cls(aliases.get(text.lower(), text.lower()))


@dataclass(frozen=True)
class TwoPhotonTransition:
    lower: HyperfineLevel
    upper: HyperfineLevel
    permissive: bool = False

    def __post_init__(self) -> None:
        if self.lower.L != self.upper.L:
            raise DomainError(f"lines connect equal L, got L={self.lower.L} -> L'={self.upper.L}")
        homologous = (self.lower.twice_F, self.lower.twice_J) == (self.upper.twice_F, self.upper.twice_J)
        if not homologous and not self.permissive:
            raise DomainError(
                "only homologous (F,J) -> (F,J) components are considered; set permissive=True to override"
            )

    @classmethod
    def homologous(cls, L: int, J, F=None, *, v_lower: int = 0, v_upper: int = 1) -> "TwoPhotonTransition":
        return cls(HyperfineLevel.make(v_lower, L, J, F), HyperfineLevel.make(v_upper, L, J, F))


@dataclass(frozen=True)
class ZeemanComponent:
    m_lower: Fraction
    m_upper: Fraction
    delta_nu_hz: float


@dataclass(frozen=True)
class _Inputs:
    g_lower: float
    g_upper: float
    scale_hz: float


def _inputs(
    trans: TwoPhotonTransition,
    field: MagneticField,
    constants: Optional[PhysicalConstants],
    data: Optional[OrbitalData],
    mixing: Optional[MixingTable],
) -> _Inputs:
    c = constants or default_constants()
    if data is None:
        data = load_orbital_data()
    if mixing is None and not (trans.lower.is_pure and trans.upper.is_pure):
        mixing = load_mixing_table(_data.mixing_table_path())
    return _Inputs(
        g_total(trans.lower, c, data, mixing).total,
        g_total(trans.upper, c, data, mixing).total,
        field.scale_hz(c),
    )


def state_shift(g: float, m, field: MagneticField, constants: Optional[PhysicalConstants] = None) -> float:
    """Linear Zeeman shift g m mu_B B / h of one sublevel, in Hz."""
    c = constants or default_constants()
    return g * float(Fraction(m)) * field.scale_hz(c)


def _component_list(trans: TwoPhotonTransition, pol: Polarization, inp: _Inputs) -> list[ZeemanComponent]:
    tj, tjp = trans.lower.twice_J, trans.upper.twice_J
    out = []
    for tm in range(-tj, tj + 1, 2):
        tmp = tm + pol.twice_delta_m
        if abs(tmp) > tjp:
            continue
        m, mp = Fraction(tm, 2), Fraction(tmp, 2)
        if tmp == tm:  # factor out M to avoid cancelling two large terms
            dnu = float(m) * (inp.g_upper - inp.g_lower) * inp.scale_hz / 2
        else:
            dnu = (float(mp) * inp.g_upper - float(m) * inp.g_lower) * inp.scale_hz / 2
        out.append(ZeemanComponent(m, mp, dnu))
    return out


def components(
    trans: TwoPhotonTransition,
    field: MagneticField,
    polarization: Union[str, Polarization],
    constants: Optional[PhysicalConstants] = None,
    data: Optional[OrbitalData] = None,
    mixing: Optional[MixingTable] = None,
) -> list[ZeemanComponent]:
    """All Zeeman components allowed by the polarization; empty when forbidden."""
    pol = Polarization.parse(polarization)
    return _component_list(trans, pol, _inputs(trans, field, constants, data, mixing))


def sigma_line_center_shift(
    trans: TwoPhotonTransition,
    field: MagneticField,
    constants: Optional[PhysicalConstants] = None,
    data: Optional[OrbitalData] = None,
    mixing: Optional[MixingTable] = None,
    *,
    polarization: Union[str, Polarization] = Polarization.SIGMA_PLUS,
) -> float:
    """Centre of the circular-polarization component comb, in Hz.

    For homologous lines this is (g + g') mu_B B / 2h for sigma+ (the M = -1
    point of the comb) and its negative for sigma-.
    """
    pol = Polarization.parse(polarization)
    if pol is Polarization.PI:
        raise DomainError("line-centre shift is defined for circular polarization; use pi_splitting")
    inp = _inputs(trans, field, constants, data, mixing)
    comps = _component_list(trans, pol, inp)
    if not comps:
        raise ForbiddenTransitionError(
            f"{trans.lower.label()} -> {trans.upper.label()} is forbidden in {pol.value} polarization"
        )
    if trans.lower.twice_J == trans.upper.twice_J:
        sign = 1 if pol is Polarization.SIGMA_PLUS else -1
        return sign * (inp.g_lower + inp.g_upper) * inp.scale_hz / 2
    return sum(c.delta_nu_hz for c in comps) / len(comps)


def pi_splitting(
    trans: TwoPhotonTransition,
    field: MagneticField,
    constants: Optional[PhysicalConstants] = None,
    data: Optional[OrbitalData] = None,
    mixing: Optional[MixingTable] = None,
) -> float:
    """dnu(M=J) - dnu(M=-J) in linear polarization: (g' - g) J mu_B B / h. Signed."""
    if trans.lower.twice_J != trans.upper.twice_J:
        raise DomainError("pi splitting needs J = J'; use components() for other lines")
    inp = _inputs(trans, field, constants, data, mixing)
    return float(trans.lower.J) * (inp.g_upper - inp.g_lower) * inp.scale_hz


@dataclass(frozen=True)
class ZeemanLine:
    """One row of the two-photon Zeeman table."""

    L: int
    F: Fraction
    J: Fraction
    g_lower: float
    g_upper: float
    shift_hz: Union[float, _Forbidden]
    shift_uncertainty_hz: Optional[float]
    splitting_hz: float  # magnitude
    splitting_uncertainty_hz: float

    @property
    def forbidden(self) -> bool:
        return self.shift_hz is FORBIDDEN

    @property
    def cancellation(self) -> float:
        """|g' - g| / |g' + g|."""
        return abs(self.g_upper - self.g_lower) / abs(self.g_upper + self.g_lower)


def table_v(
    field: MagneticField,
    constants: Optional[PhysicalConstants] = None,
    data: Optional[OrbitalData] = None,
    mixing: Optional[MixingTable] = None,
    *,
    rotational_levels: tuple[int, ...] = (0, 1, 2, 3),
    v_lower: int = 0,
    v_upper: int = 1,
) -> list[ZeemanLine]:
    """Shift (sigma+) and splitting (pi) of every homologous (v_lower, L) -> (v_upper, L) line."""
    c = constants or default_constants()
    if data is None:
        data = load_orbital_data()
    if mixing is None:
        mixing = load_mixing_table(_data.mixing_table_path())
    rows = []
    for L in rotational_levels:
        for lower in enumerate_levels((v_lower, L)):
            upper = HyperfineLevel(v_upper, L, lower.twice_F, lower.twice_J)
            trans = TwoPhotonTransition(lower, upper)
            inp = _inputs(trans, field, c, data, mixing)
            J = float(lower.J)
            try:
                shift: Union[float, _Forbidden] = sigma_line_center_shift(trans, field, c, data, mixing)
                shift_unc: Optional[float] = RELATIVE_THEORY_UNCERTAINTY * abs(shift)
            except ForbiddenTransitionError:
                shift, shift_unc = FORBIDDEN, None
            splitting = abs(pi_splitting(trans, field, c, data, mixing))
            g_mean = (abs(inp.g_lower) + abs(inp.g_upper)) / 2
            split_unc = CANCELLATION * RELATIVE_THEORY_UNCERTAINTY * g_mean * J * inp.scale_hz
            rows.append(
                ZeemanLine(L, lower.F, lower.J, inp.g_lower, inp.g_upper, shift, shift_unc, splitting, split_unc)
            )
    return rows
