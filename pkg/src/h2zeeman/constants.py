"""Physical constants used by the g-factor and Zeeman calculations.

Defaults are CODATA 2010 values (mu_B/h truncated to 8 digits). They reproduce
the printed digits of the reference tables bundled in ``data/reference``.

Overrides come from a flat JSON object, e.g.::

    {"g_e": 2.0023193043622, "bohr_magneton_hz_per_tesla": 13996245042.0}
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Mapping, Union

from .errors import ValidationError

__all__ = [
    "PhysicalConstants",
    "default_constants",
    "load_constants",
    "dump_constants",
    "FILE_KEYS",
]

# file key -> dataclass field
FILE_KEYS = {
    "g_e": "g_e",
    "g_p": "g_p",
    "mass_ratio_me_mp": "mass_ratio",
    "bohr_magneton_hz_per_tesla": "bohr_magneton_hz_per_tesla",
}

_RANGES = {
    "g_e": (1.9, 2.1),
    "g_p": (5.0, 6.0),
    "mass_ratio": (5e-4, 6e-4),
    "bohr_magneton_hz_per_tesla": (0.0, math.inf),
}


@dataclass(frozen=True)
class PhysicalConstants:
    """Electron g-factor (positive convention), proton g-factor, m_e/m_p and mu_B/h in Hz/T."""

    g_e: float = 2.00231930436
    g_p: float = 5.5856946893
    mass_ratio: float = 5.446170218e-4
    bohr_magneton_hz_per_tesla: float = 1.3996245e10

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValidationError(f"{f.name}: expected a number, got {value!r}")
            lo, hi = _RANGES[f.name]
            if not (math.isfinite(value) and value > 0 and lo < value < hi):
                raise ValidationError(f"{f.name}={value!r} outside allowed range ({lo}, {hi})")

    @property
    def proton_mass_ratio(self) -> float:
        """m_p/m_e."""
        return 1.0 / self.mass_ratio

    @property
    def nuclear_scale(self) -> float:
        """g_p * m_e/m_p, the natural unit of the nuclear-spin contribution."""
        return self.g_p * self.mass_ratio


def default_constants() -> PhysicalConstants:
    return PhysicalConstants()


def load_constants(source: Union[str, Path, Mapping[str, Any], None] = None) -> PhysicalConstants:
    """Build constants from defaults overridden by a flat key/value document.

    ``source`` may be a path to a JSON file, a JSON string, an already parsed
    mapping, or None (defaults).
    """
    if source is None:
        return default_constants()
    if isinstance(source, Mapping):
        doc = dict(source)
    else:
        text = _read_source(source)
        if not text.strip():
            return default_constants()
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed constants document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("constants document must be a flat key/value object")

    unknown = set(doc) - set(FILE_KEYS)
    if unknown:
        raise ValidationError(f"unknown constant key(s): {', '.join(sorted(unknown))}")
    values = asdict(default_constants())
    for key, value in doc.items():
        values[FILE_KEYS[key]] = value
    return PhysicalConstants(**values)


def _read_source(source: Union[str, Path]) -> str:
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    stripped = source.lstrip()
    if stripped.startswith("{") or not stripped:
        return source
    return Path(source).read_text(encoding="utf-8")


def dump_constants(constants: PhysicalConstants) -> str:
    """Serialize to the override-file format (floats round-trip exactly)."""
    inverse = {v: k for k, v in FILE_KEYS.items()}
    return json.dumps({inverse[k]: v for k, v in asdict(constants).items()}, indent=2) + "\n"
