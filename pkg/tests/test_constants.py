import json

import pytest
from hypothesis import given, strategies as st

from h2zeeman.constants import PhysicalConstants, default_constants, dump_constants, load_constants
from h2zeeman.errors import ValidationError


def test_defaults_are_valid_and_match_printed_digits():
    c = default_constants()
    assert round(c.g_e, 7) == 2.0023193
    assert c.proton_mass_ratio == pytest.approx(1836.15267, rel=1e-8)


def test_empty_document_gives_defaults(tmp_path):
    assert load_constants("") == default_constants()
    assert load_constants({}) == default_constants()
    empty = tmp_path / "c.json"
    empty.write_text("")
    assert load_constants(empty) == default_constants()


def test_override_single_key(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"g_e": 2.0}))
    c = load_constants(path)
    assert c.g_e == 2.0
    assert c.g_p == default_constants().g_p


@pytest.mark.parametrize("doc", [{"g_e": -1}, {"g_p": 0}, {"mass_ratio_me_mp": 1.0}, {"g_e": "two"}, {"hbar": 1.0}])
def test_invalid_documents(doc):
    with pytest.raises(ValidationError):
        load_constants(doc)


def test_malformed_json():
    with pytest.raises(ValueError):
        load_constants("{not json")


def test_negative_bohr_magneton_rejected():
    with pytest.raises(ValidationError, match="bohr_magneton"):
        PhysicalConstants(bohr_magneton_hz_per_tesla=-1.0)


@given(
    st.floats(1.95, 2.05), st.floats(5.1, 5.9), st.floats(5.1e-4, 5.9e-4), st.floats(1e9, 1e11),
)
def test_round_trip_is_bit_exact(ge, gp, mr, mub):
    c = PhysicalConstants(ge, gp, mr, mub)
    assert load_constants(dump_constants(c)) == c


def test_round_trip_through_file(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(dump_constants(default_constants()))
    assert load_constants(str(path)) == default_constants()
