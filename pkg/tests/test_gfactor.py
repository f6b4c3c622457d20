import math
from fractions import Fraction

import pytest

from h2zeeman.constants import default_constants
from h2zeeman.errors import DataMissingError, DomainError, ValidationError
from h2zeeman.gfactor import (
    crossed_reduced,
    crossed_reduced_via_wigner,
    g1_over_ge,
    g1_pure,
    g1_via_wigner,
    g2_pure,
    g2_scaled,
    g2_via_wigner,
    g3_coefficient,
    g3_coefficient_via_wigner,
    g3_pure,
    g_ratio,
    g_rot,
    g_total,
    l_tot,
    load_orbital_data,
    mixed_breakdown,
    v_average,
)
from h2zeeman.hfs import HyperfineLevel, enumerate_levels
from h2zeeman.reference import table2, table3
from h2zeeman.reproduce import reproduce

H, T = Fraction(1, 2), Fraction(3, 2)
C = default_constants()


def _basis_states(L):
    """Every (F, J) of the uncoupled basis, including both F at the mixed J."""
    if L % 2 == 0:
        return [(H, J) for J in (L - H, L + H) if J > 0]
    out = [(H, J) for J in (L - H, L + H) if J > 0]
    out += [(T, J) for J in (L - T, L - H, L + H, L + T) if J > 0]
    return out


@pytest.fixture(scope="module")
def data():
    return load_orbital_data()


@pytest.mark.parametrize("L", range(0, 11))
def test_closed_forms_match_wigner_pipeline(L):
    for F, J in _basis_states(L):
        assert g1_via_wigner(L, F, J, C) == pytest.approx(g1_pure(L, F, J, C), abs=1e-12)
        assert g2_via_wigner(L, F, J, C) == pytest.approx(g2_pure(L, F, J, C), abs=1e-12)
        if L:
            assert g3_coefficient_via_wigner(L, F, J) == pytest.approx(g3_coefficient(L, F, J), abs=1e-12)


@pytest.mark.parametrize("L", [1, 3, 5, 7, 9])
def test_crossed_elements_match_pipeline(L):
    for op in ("electron-spin", "nuclear-spin"):
        for J in (L - H, L + H):
            assert crossed_reduced_via_wigner(L, J, op) == pytest.approx(crossed_reduced(L, op), abs=1e-12)
    assert crossed_reduced(L, "nuclear-spin") == -crossed_reduced(L, "electron-spin")


def test_crossed_l1_value():
    # sqrt(8)/3 * sqrt(L(L+1))/sqrt(2L+1) at L=1, i.e. 4/(3 sqrt 3)
    want = math.sqrt(8) / 3 * math.sqrt(2) / math.sqrt(3)
    assert crossed_reduced(1, "electron-spin") == pytest.approx(want, abs=1e-14)
    assert want == pytest.approx(4 / (3 * math.sqrt(3)), abs=1e-15)


def test_rational_examples():
    assert g1_over_ge(2, H, "5/2") == Fraction(1, 5)
    assert g1_over_ge(2, H, "3/2") == Fraction(-1, 5)
    assert g1_over_ge(1, T, "5/2") == Fraction(1, 5)
    assert g1_over_ge(3, T, "5/2") == Fraction(1, 105)
    assert g2_scaled(1, H, H) == Fraction(4, 9)
    assert g2_scaled(3, T, "9/2") == Fraction(-2, 9)
    assert g2_scaled(2, H, "5/2") == 0
    assert g1_via_wigner(1, T, "5/2", C) == pytest.approx(C.g_e / 5, abs=1e-14)
    assert g1_via_wigner(2, H, "3/2", C) == pytest.approx(-C.g_e / 5, abs=1e-14)


@pytest.mark.parametrize("L", range(1, 11))
def test_sign_antisymmetry(L):
    assert g1_over_ge(L, H, L + H) == -g1_over_ge(L, H, L - H)


def test_rational_columns_reproduce_exactly():
    for row in table2():
        assert g1_over_ge(row.L, H, row.J) == row.g1_over_ge
    for row in table3():
        assert g1_over_ge(row.L, row.F, row.J) == row.g1_over_ge
        assert g2_scaled(row.L, row.F, row.J) == row.g2_scaled


def test_orbital_examples(data):
    assert l_tot(0, 1, data, C) == pytest.approx(-0.7087e-3, abs=1e-7)
    assert l_tot(4, 4, data, C) == pytest.approx(-2.1339e-3, abs=1e-7)
    assert l_tot(2, 0, data, C) == 0
    assert g3_pure(0, 2, H, "5/2", data, C) == pytest.approx(-4.008e-4, abs=1e-7)
    assert g3_pure(0, 1, T, "5/2", data, C) == pytest.approx(-2.005e-4, abs=1e-7)
    assert g3_pure(3, 0, H, H, data, C) == 0


@pytest.mark.parametrize("v,L,expected", [(0, 1, 0.9201), (4, 4, 0.8761), (2, 3, 0.8998)])
def test_g_rot(data, v, L, expected):
    assert g_rot(v, L, data, C) == pytest.approx(expected, abs=2e-4)


def test_g_rot_undefined_for_l0(data):
    with pytest.raises(DomainError):
        g_rot(0, 0, data, C)


def test_g_total_examples(data):
    assert g_total(HyperfineLevel.make(0, 0, H), C, data).total == pytest.approx(2.0023193, abs=1e-7)
    assert g_total(HyperfineLevel(0, 1, 1, 1), C, data).total == pytest.approx(0.1265381, abs=2e-6)
    b = g_total(HyperfineLevel.make(4, 3, "9/2", T), C, data)
    assert not b.mixed and b.total == pytest.approx(0.2214855, abs=1e-7)


def test_breakdown_sums_exactly(data):
    for v in range(5):
        for L in range(5):
            for level in enumerate_levels((v, L)):
                b = g_total(level, C, data)
                assert b.total - (b.g1 + b.g2 + b.g3) == 0


def test_mixed_g3_has_no_crossed_term(data):
    from h2zeeman.data import mixing_table_path
    from h2zeeman.hfs import load_mixing_table

    for entry in load_mixing_table(mixing_table_path()).values():
        assert mixed_breakdown(entry, data, C, crossed=False).g3 == mixed_breakdown(entry, data, C).g3


def test_table_rows_within_tolerance():
    # pure columns at 1e-7, mixed columns at 2e-6
    for n in (2, 3):
        report = reproduce(n)
        assert report.ok, [f"{c.row} {c.column}" for c in report.failures]


def test_ratios(data):
    a = HyperfineLevel(4, 1, 1, 3)
    b = HyperfineLevel(4, 1, 3, 5)
    assert g_ratio(a, a, C, data) == 1
    assert abs(g_ratio(a, b, C, data)) == pytest.approx(0.5855, rel=0.01)
    assert g_ratio(HyperfineLevel(4, 1, 3, 3), b, C, data) == pytest.approx(1.2463, rel=0.01)


def test_v_average():
    assert v_average([3.5], [1]) == 3.5
    assert v_average([1, 3], [1, 1]) == 2
    assert v_average([1, 2], [0.2, 0.8]) == pytest.approx(1.8, abs=1e-15)
    with pytest.raises(DomainError):
        v_average([1, 2], [1])
    with pytest.raises(DomainError):
        v_average([1], [0])


def test_orbital_loader(tmp_path):
    assert len(load_orbital_data()) == 25
    with pytest.raises(DataMissingError):
        load_orbital_data()[(9, 1)]
    p = tmp_path / "o.csv"
    p.write_text("L,v,le_red,l1_red\n1,5,0.6e-4,0.7068\n")
    with pytest.raises(ValidationError):
        load_orbital_data(p)
    assert load_orbital_data(p, allow_extended=True)[(5, 1)].l1_red == 0.7068
    p.write_text("L,v,le_red,l1_red\n1,0,0.6e-4,0.9\n")
    with pytest.raises(ValidationError):
        load_orbital_data(p)
    p.write_text("L,v,le,l1\n")
    with pytest.raises(ValidationError):
        load_orbital_data(p)
