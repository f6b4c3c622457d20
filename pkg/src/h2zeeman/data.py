"""Locations of the bundled data files.

Setting ``H2ZEEMAN_DATA_DIR`` points the defaults at another directory holding
``orbital_elements.csv`` and ``mixing_table.csv``.
"""

from __future__ import annotations

import os
from pathlib import Path

DATA_DIR_ENV = "H2ZEEMAN_DATA_DIR"
PACKAGE_DATA = Path(__file__).resolve().parent / "data"
REFERENCE_DIR = PACKAGE_DATA / "reference"

ORBITAL_FILE = "orbital_elements.csv"
MIXING_FILE = "mixing_table.csv"


def data_dir() -> Path:
    override = os.environ.get(DATA_DIR_ENV)
    return Path(override) if override else PACKAGE_DATA


def orbital_data_path() -> Path:
    return data_dir() / ORBITAL_FILE


def mixing_table_path() -> Path:
    return data_dir() / MIXING_FILE
