"""Hyperfine levels of H2+ and the F=1/2 / F=3/2 mixing coefficients.

For even L the nuclear spin is I=0 and J = L +/- 1/2 (the spin "F" is just the
electron spin, 1/2). For odd L, I=1, F = S_e + I is 1/2 or 3/2 and J = L + F.
Levels with J = L +/- 3/2 are pure F=3/2; levels with J = L +/- 1/2 are mixtures

    |F~, J> = C1 |F=1/2, J> + C3 |F=3/2, J>

labelled by their dominant component F~.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Optional, Union

from .angular import HalfInt, format_half_int, twice
from .errors import ConfigurationError, DomainError, InversionError, ValidationError

__all__ = [
    "RovibLevel",
    "HyperfineLevel",
    "MixingEntry",
    "MixingTable",
    "enumerate_levels",
    "is_pure",
    "recover_mixing",
    "build_mixing_table",
    "load_mixing_table",
    "MIXING_HEADER",
]

MIXING_HEADER = ("v", "L", "twice_J", "twice_Ftilde", "C1", "C3")

NORM_TOL = 1e-10
INVERSION_TOL = 1e-6


@dataclass(frozen=True, order=True)
class RovibLevel:
    v: int
    L: int

    def __post_init__(self) -> None:
        if self.v < 0 or self.L < 0:
            raise DomainError(f"v and L must be non-negative, got v={self.v}, L={self.L}")


@dataclass(frozen=True)
class HyperfineLevel:
    """A hyperfine level (v, L, F or F~, J), quantum numbers F and J stored doubled."""

    v: int
    L: int
    twice_F: int
    twice_J: int

    def __post_init__(self) -> None:
        RovibLevel(self.v, self.L)
        if (self.twice_F, self.twice_J) not in _allowed_spin_states(self.L):
            raise DomainError(
                f"no hyperfine level F={format_half_int(self.twice_F)}, "
                f"J={format_half_int(self.twice_J)} for L={self.L}"
            )

    @classmethod
    def make(cls, v: int, L: int, J: HalfInt, F: Optional[HalfInt] = None) -> "HyperfineLevel":
        """Convenience constructor; F defaults to 1/2 for even L."""
        if F is None:
            if L % 2:
                raise DomainError("F must be given for odd L")
            F = Fraction(1, 2)
        return cls(v, L, twice(F), twice(J))

    @property
    def rovib(self) -> RovibLevel:
        return RovibLevel(self.v, self.L)

    @property
    def I(self) -> int:  # noqa: E743
        return self.L % 2

    @property
    def F(self) -> Fraction:
        return Fraction(self.twice_F, 2)

    @property
    def J(self) -> Fraction:
        return Fraction(self.twice_J, 2)

    @property
    def is_pure(self) -> bool:
        return self.L % 2 == 0 or abs(self.twice_J - 2 * self.L) == 3

    @property
    def branch(self) -> Optional[str]:
        """'+' or '-' for mixed levels (J = L +/- 1/2), None for pure ones."""
        if self.is_pure:
            return None
        return "+" if self.twice_J > 2 * self.L else "-"

    def label(self) -> str:
        spin = "F~" if not self.is_pure else "F"
        return f"v={self.v} L={self.L} {spin}={format_half_int(self.twice_F)} J={format_half_int(self.twice_J)}"


def _allowed_spin_states(L: int) -> list[tuple[int, int]]:
    """(2F, 2J) pairs for rotational level L, sorted by F then J."""
    if L % 2 == 0:
        return [(1, tj) for tj in (2 * L - 1, 2 * L + 1) if tj >= 1]
    states = [(1, tj) for tj in (2 * L - 1, 2 * L + 1)]
    states += [(3, tj) for tj in (2 * L - 3, 2 * L - 1, 2 * L + 1, 2 * L + 3) if tj >= 1]
    return states


def enumerate_levels(rovib: Union[RovibLevel, tuple[int, int]]) -> list[HyperfineLevel]:
    """All hyperfine levels of (v, L), ordered by increasing F then J."""
    if not isinstance(rovib, RovibLevel):
        rovib = RovibLevel(*rovib)
    return [HyperfineLevel(rovib.v, rovib.L, tf, tj) for tf, tj in _allowed_spin_states(rovib.L)]


def is_pure(level: HyperfineLevel) -> bool:
    return level.is_pure


@dataclass(frozen=True)
class MixingEntry:
    """Coefficients of one mixed level on the |F=1/2> and |F=3/2> basis states."""

    v: int
    L: int
    twice_J: int
    twice_Ftilde: int
    C1: float
    C3: float

    def __post_init__(self) -> None:
        if self.L % 2 == 0:
            raise ValidationError(f"mixing entries only exist for odd L, got L={self.L}")
        if abs(self.twice_J - 2 * self.L) != 1:
            raise ValidationError(f"mixed levels have J = L +/- 1/2, got 2J={self.twice_J} for L={self.L}")
        if self.twice_Ftilde not in (1, 3):
            raise ValidationError(f"F~ must be 1/2 or 3/2, got 2F~={self.twice_Ftilde}")
        norm = self.C1 * self.C1 + self.C3 * self.C3
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(f"C1^2 + C3^2 = {norm!r} for {self.key}, expected 1")

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.v, self.L, self.twice_J, self.twice_Ftilde)

    @property
    def branch(self) -> str:
        return "+" if self.twice_J > 2 * self.L else "-"

    def complement(self) -> "MixingEntry":
        """The orthogonal partner level (other F~ label), with C1 >= 0."""
        c1, c3 = -self.C3, self.C1
        if c1 < 0 or (c1 == 0 and c3 < 0):
            c1, c3 = -c1, -c3
        return MixingEntry(self.v, self.L, self.twice_J, 4 - self.twice_Ftilde, c1, c3)


class MixingTable(Mapping[tuple[int, int, int, int], MixingEntry]):
    """Validated, immutable collection of mixing entries keyed by (v, L, 2J, 2F~)."""

    def __init__(self, entries: Iterable[MixingEntry] = ()) -> None:
        table: dict[tuple[int, int, int, int], MixingEntry] = {}
        for entry in entries:
            if entry.key in table:
                raise ValidationError(f"duplicate mixing entry {entry.key}")
            table[entry.key] = entry
        for (v, L, tj, tf), entry in table.items():
            partner = table.get((v, L, tj, 4 - tf))
            if partner is not None and tf == 1:
                overlap = entry.C1 * partner.C1 + entry.C3 * partner.C3
                if abs(overlap) > NORM_TOL:
                    raise ValidationError(
                        f"entries for v={v} L={L} 2J={tj} are not orthogonal (overlap {overlap:.3e})"
                    )
        self._table = table

    def __getitem__(self, key: tuple[int, int, int, int]) -> MixingEntry:
        return self._table[key]

    def __iter__(self) -> Iterator[tuple[int, int, int, int]]:
        return iter(self._table)

    def __len__(self) -> int:
        return len(self._table)

    def entry_for(self, level: HyperfineLevel) -> MixingEntry:
        if level.is_pure:
            raise DomainError(f"{level.label()} is a pure state and has no mixing entry")
        try:
            return self._table[(level.v, level.L, level.twice_J, level.twice_F)]
        except KeyError:
            raise ConfigurationError(f"no mixing coefficients for {level.label()}") from None

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(MIXING_HEADER)
        for key in sorted(self._table):
            e = self._table[key]
            writer.writerow([e.v, e.L, e.twice_J, e.twice_Ftilde, repr(e.C1), repr(e.C3)])
        return buf.getvalue()


def load_mixing_table(source: Union[str, Path, Iterable[str]]) -> MixingTable:
    """Read a mixing table from a CSV path, CSV text, or iterable of lines."""
    if isinstance(source, Path) or (isinstance(source, str) and source.strip() and "\n" not in source and "," not in source):
        lines: Iterable[str] = Path(source).read_text(encoding="utf-8").splitlines()
    elif isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source
    reader = csv.reader(line for line in lines if line.strip() and not line.lstrip().startswith("#"))
    header = next(reader, None)
    if header is None:
        return MixingTable()
    if tuple(h.strip() for h in header) != MIXING_HEADER:
        raise ValidationError(f"mixing table header must be {','.join(MIXING_HEADER)}, got {header}")
    entries = []
    for lineno, row in enumerate(reader, start=2):
        if len(row) != len(MIXING_HEADER):
            raise ValidationError(f"row {lineno}: expected {len(MIXING_HEADER)} fields, got {len(row)}")
        try:
            v, L, tj, tf = (int(x) for x in row[:4])
            c1, c3 = float(row[4]), float(row[5])
        except ValueError as exc:
            raise ValidationError(f"row {lineno}: {exc}") from None
        entries.append(MixingEntry(v, L, tj, tf, c1, c3))
    return MixingTable(entries)


def build_mixing_table(g1_tilde: Mapping[tuple[int, int, int], float]) -> MixingTable:
    """Recover a full table from the g~1/g_e of each F~=1/2 level, keyed by (v, L, 2J).

    The F~=3/2 partner of each level is its orthogonal complement.
    """
    entries = []
    for (v, L, tj), value in sorted(g1_tilde.items()):
        entry = recover_mixing(value, L, Fraction(tj, 2), v=v)
        entries += [entry, entry.complement()]
    return MixingTable(entries)


def recover_mixing(
    g1_tilde_over_ge: float,
    L: int,
    J: HalfInt,
    *,
    ftilde: HalfInt = Fraction(1, 2),
    v: int = 0,
) -> MixingEntry:
    """Find (C1, C3) reproducing a mixed level's electron-spin g-factor g~1/g_e.

    Solves C1^2 a + C3^2 b + 2 C1 C3 x = target on the unit circle, where a, b are
    the pure F=1/2 and F=3/2 values and x the crossed term. The two roots are
    distinguished by their dominant component; the one matching ``ftilde`` is
    returned, with the global phase fixed by C1 >= 0.
    """
    from .gfactor import crossed_term_over_ge, g1_over_ge

    tj = twice(J)
    tf = twice(ftilde)
    if L % 2 == 0 or abs(tj - 2 * L) != 1:
        raise DomainError(f"J={format_half_int(tj)} is not a mixed level of L={L}")
    if tf not in (1, 3):
        raise DomainError("ftilde must be 1/2 or 3/2")

    a = float(g1_over_ge(L, Fraction(1, 2), Fraction(tj, 2)))
    b = float(g1_over_ge(L, Fraction(3, 2), Fraction(tj, 2)))
    x = crossed_term_over_ge(L, Fraction(tj, 2))
    # target = mid + half*cos(2t) + x*sin(2t) = mid + R*cos(2t - phi)
    mid, half = (a + b) / 2, (a - b) / 2
    radius = math.hypot(half, x)
    phi = math.atan2(x, half)
    offset = g1_tilde_over_ge - mid
    if abs(offset) > radius + INVERSION_TOL:
        raise InversionError(
            f"g~1/g_e={g1_tilde_over_ge} unreachable for L={L}, J={format_half_int(tj)}: "
            f"attainable range [{mid - radius:.7f}, {mid + radius:.7f}]"
        )
    delta = math.acos(max(-1.0, min(1.0, offset / radius)))

    candidates = []
    for theta in ((phi + delta) / 2, (phi - delta) / 2):
        c1, c3 = math.cos(theta), math.sin(theta)
        if c1 < 0 or (c1 == 0 and c3 < 0):
            c1, c3 = -c1, -c3
        dominant = 1 if abs(c1) >= abs(c3) else 3
        if dominant == tf:
            candidates.append((c1, c3))
    if not candidates:
        raise InversionError(
            f"no root dominated by F={format_half_int(tf)} reproduces g~1/g_e={g1_tilde_over_ge}"
        )
    # both roots on the same side: prefer the weaker mixing
    idx = 0 if tf == 1 else 1
    c1, c3 = max(candidates, key=lambda c: abs(c[idx]))
    return MixingEntry(v, L, tj, tf, c1, c3)
