"""Wigner 3j/6j symbols and Clebsch-Gordan coefficients.

Every quantum number is handled internally as twice its value, so half-integers
are exact. Symbols are evaluated with the Racah single-sum formulas over exact
integers/rationals; the only floating-point step is the final square root.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "AngularMomentum",
    "HalfInt",
    "twice",
    "is_triangle",
    "wigner_3j",
    "wigner_6j",
    "clebsch_gordan",
    "spin_reduced_element",
]


@dataclass(frozen=True, order=True)
class AngularMomentum:
    """Angular momentum quantum number stored as ``twice_j = 2j``."""

    twice_j: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice_j, int) or isinstance(self.twice_j, bool):
            raise TypeError(f"twice_j must be an int, got {self.twice_j!r}")
        if self.twice_j < 0:
            raise ValueError(f"angular momentum must be non-negative, got 2j={self.twice_j}")

    @classmethod
    def parse(cls, value: "HalfInt") -> "AngularMomentum":
        return cls(twice(value))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_j, 2)

    @property
    def is_half_integer(self) -> bool:
        return self.twice_j % 2 == 1

    def projections(self) -> list[Fraction]:
        """Allowed m values, ascending."""
        return [Fraction(tm, 2) for tm in range(-self.twice_j, self.twice_j + 1, 2)]

    def __float__(self) -> float:
        return self.twice_j / 2

    def __str__(self) -> str:
        return format_half_int(self.twice_j)


HalfInt = Union[AngularMomentum, int, Fraction, float, str]


def twice(x: HalfInt) -> int:
    """Return ``2*x`` as an int, rejecting anything that is not a half-integer.

    Accepts ``AngularMomentum``, ints, ``Fraction``, floats such as ``2.5`` and
    strings such as ``"5/2"``, ``"-3/2"`` or ``"2.5"``.
    """
    if isinstance(x, AngularMomentum):
        return x.twice_j
    if isinstance(x, bool):
        raise TypeError("booleans are not angular momenta")
    if isinstance(x, int):
        return 2 * x
    if isinstance(x, str):
        s = x.strip()
        try:
            frac = Fraction(s)
        except ValueError:
            raise ValueError(f"cannot parse angular momentum {x!r}") from None
        return twice(frac)
    if isinstance(x, Rational):
        doubled = Fraction(x) * 2
        if doubled.denominator != 1:
            raise ValueError(f"{x} is not a multiple of 1/2")
        return int(doubled)
    if isinstance(x, float):
        doubled = 2 * x
        if not doubled.is_integer():
            raise ValueError(f"{x} is not a multiple of 1/2")
        return int(doubled)
    raise TypeError(f"unsupported angular momentum value {x!r}")


def format_half_int(twice_value: int) -> str:
    if twice_value % 2 == 0:
        return str(twice_value // 2)
    return f"{twice_value}/2"


# factorial table, grown on demand; readers never see a partially built list
_fact: list[int] = [1]
_fact_lock = threading.Lock()


def _factorial(n: int) -> int:
    table = _fact
    if n < len(table):
        return table[n]
    with _fact_lock:
        table = list(_fact)
        while len(table) <= n:
            table.append(table[-1] * len(table))
        globals()["_fact"] = table
    return table[n]


def _triangle2(ta: int, tb: int, tc: int) -> bool:
    return abs(ta - tb) <= tc <= ta + tb and (ta + tb + tc) % 2 == 0


def is_triangle(a: HalfInt, b: HalfInt, c: HalfInt) -> bool:
    """True iff |a-b| <= c <= a+b and a+b+c is an integer."""
    return _triangle2(twice(a), twice(b), twice(c))


def _delta_sq(ta: int, tb: int, tc: int) -> Fraction:
    # triangle coefficient squared; arguments doubled and already triangle-valid
    return Fraction(
        _factorial((ta + tb - tc) // 2)
        * _factorial((ta - tb + tc) // 2)
        * _factorial((-ta + tb + tc) // 2),
        _factorial((ta + tb + tc) // 2 + 1),
    )


def _signed_sqrt(sign: int, square: Fraction) -> float:
    if sign == 0 or square == 0:
        return 0.0
    return math.copysign(math.sqrt(square), sign)


def _wigner_3j_exact(tj1: int, tj2: int, tj3: int, tm1: int, tm2: int, tm3: int) -> tuple[int, Fraction]:
    """(sign, value**2) of a 3j symbol with doubled arguments."""
    if tm1 + tm2 + tm3 != 0:
        return 0, Fraction(0)
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tj3, tm3)):
        if tj < 0 or abs(tm) > tj or (tj - tm) % 2:
            return 0, Fraction(0)
    if not _triangle2(tj1, tj2, tj3):
        return 0, Fraction(0)

    j1pm1, j1mm1 = (tj1 + tm1) // 2, (tj1 - tm1) // 2
    j2pm2, j2mm2 = (tj2 + tm2) // 2, (tj2 - tm2) // 2
    j3pm3, j3mm3 = (tj3 + tm3) // 2, (tj3 - tm3) // 2
    a = (tj1 + tj2 - tj3) // 2  # j1+j2-j3
    b = (tj3 - tj2 + tm1) // 2  # j3-j2+m1
    c = (tj3 - tj1 - tm2) // 2  # j3-j1-m2

    k_min = max(0, -b, -c)
    k_max = min(a, j1mm1, j2pm2)
    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        denom = (
            _factorial(k)
            * _factorial(b + k)
            * _factorial(c + k)
            * _factorial(a - k)
            * _factorial(j1mm1 - k)
            * _factorial(j2pm2 - k)
        )
        total += Fraction(-1 if k % 2 else 1, denom)
    if total == 0:
        return 0, Fraction(0)

    pre = _delta_sq(tj1, tj2, tj3) * (
        _factorial(j1pm1)
        * _factorial(j1mm1)
        * _factorial(j2pm2)
        * _factorial(j2mm2)
        * _factorial(j3pm3)
        * _factorial(j3mm3)
    )
    phase = -1 if ((tj1 - tj2 - tm3) // 2) % 2 else 1
    sign = phase * (1 if total > 0 else -1)
    return sign, pre * total * total


def wigner_3j(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> float:
    """Wigner 3j symbol (j1 j2 j3; m1 m2 m3). Zero when selection rules fail."""
    sign, sq = _wigner_3j_exact(twice(j1), twice(j2), twice(j3), twice(m1), twice(m2), twice(m3))
    return _signed_sqrt(sign, sq)


def _wigner_6j_exact(t1: int, t2: int, t3: int, t4: int, t5: int, t6: int) -> tuple[int, Fraction]:
    """(sign, value**2) of {j1 j2 j3; j4 j5 j6} with doubled arguments."""
    if min(t1, t2, t3, t4, t5, t6) < 0:
        return 0, Fraction(0)
    triads = ((t1, t2, t3), (t1, t5, t6), (t4, t2, t6), (t4, t5, t3))
    if not all(_triangle2(*tr) for tr in triads):
        return 0, Fraction(0)

    alphas = [sum(tr) // 2 for tr in triads]
    betas = [(t1 + t2 + t4 + t5) // 2, (t1 + t3 + t4 + t6) // 2, (t2 + t3 + t5 + t6) // 2]
    total = 0
    for t in range(max(alphas), min(betas) + 1):
        denom = 1
        for a in alphas:
            denom *= _factorial(t - a)
        for b in betas:
            denom *= _factorial(b - t)
        term = Fraction(_factorial(t + 1), denom)
        total += -term if t % 2 else term
    if total == 0:
        return 0, Fraction(0)

    pre = Fraction(1)
    for tr in triads:
        pre *= _delta_sq(*tr)
    return (1 if total > 0 else -1), pre * total * total


def wigner_6j(j1: HalfInt, j2: HalfInt, j3: HalfInt, j4: HalfInt, j5: HalfInt, j6: HalfInt) -> float:
    """Wigner 6j symbol {j1 j2 j3; j4 j5 j6}. Returns exact 0 for invalid triads."""
    sign, sq = _wigner_6j_exact(twice(j1), twice(j2), twice(j3), twice(j4), twice(j5), twice(j6))
    return _signed_sqrt(sign, sq)


def clebsch_gordan(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, J: HalfInt, M: HalfInt) -> float:
    """<j1 m1 j2 m2 | J M> in the Condon-Shortley convention."""
    tj1, tm1, tj2, tm2, tJ, tM = (twice(x) for x in (j1, m1, j2, m2, J, M))
    if tm1 + tm2 != tM:
        return 0.0
    sign, sq = _wigner_3j_exact(tj1, tj2, tJ, tm1, tm2, -tM)
    if sign == 0:
        return 0.0
    # <j1 m1 j2 m2|J M> = (-1)^(j1-j2+M) sqrt(2J+1) (j1 j2 J; m1 m2 -M)
    if ((tj1 - tj2 + tM) // 2) % 2:
        sign = -sign
    return _signed_sqrt(sign, sq * (tJ + 1))


def spin_reduced_element(s: HalfInt) -> float:
    """<s||s||s> = sqrt(s(s+1)(2s+1))."""
    ts = twice(s)
    if ts < 0:
        raise ValueError("spin must be non-negative")
    return math.sqrt(Fraction(ts * (ts + 2) * (ts + 1), 4))
