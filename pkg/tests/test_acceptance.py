"""Acceptance criteria, each at its stated tolerance.

Every test records a PASS/FAIL line (printed in the pytest terminal summary).
Criteria the published tables cannot meet are marked strict xfail with the reason;
they still run in full and are reported as FAIL.
"""

import itertools
import math
import time
from fractions import Fraction

import pytest

from h2zeeman.angular import is_triangle, wigner_6j
from h2zeeman.gfactor import (
    g1_pure,
    g1_via_wigner,
    g2_pure,
    g2_via_wigner,
    g_total,
)
from h2zeeman.hfs import HyperfineLevel
from h2zeeman.reference import table5
from h2zeeman.reproduce import Context, reproduce
from h2zeeman.zeeman import MagneticField, Polarization, TwoPhotonTransition, components, table_v

H = Fraction(1, 2)
B = MagneticField(5e-5)


def _worst(cells):
    return max((c.delta for c in cells), default=0.0)


def test_c1_even_l_table(verdict):
    t0 = time.perf_counter()
    report = reproduce(2, Context.default())
    elapsed = time.perf_counter() - t0
    gj = [c for c in report.cells if c.column == "g_J"]
    ok = len(gj) == 21 and all(c.ok for c in gj) and elapsed < 1.0
    verdict("1 even-L g_J (21 values, 1e-7, <1 s)", ok,
            f"{sum(c.ok for c in gj)}/{len(gj)} within 1e-7, max |d| {_worst(gj):.1e}, {elapsed:.2f} s")


def test_c2a_grot(ctx, verdict):
    cells = [c for c in reproduce(1, ctx).cells if c.column == "g_rot"]
    # one unit in the fourth decimal, the printed precision of g_rot
    bad = [c for c in cells if abs(c.computed - c.expected) > 1e-4 + 1e-12]
    worst = max(abs(c.computed - c.expected) for c in cells)
    verdict("2a orbital table g_rot (1 last digit)", not bad, f"{len(cells) - len(bad)}/{len(cells)}, max |d| {worst:.1e}")


@pytest.mark.xfail(strict=True, reason="printed <||L_tot||> at L=3, v=3 (-1.6776e-3) disagrees with its own inputs, "
                                       "g_rot and g3 columns, which all give -1.6770e-3")
def test_c2b_l_tot(ctx, verdict):
    cells = [c for c in reproduce(1, ctx).cells if c.column == "l_tot"]
    bad = [f"{c.row} ({c.computed:.4e} vs {c.printed})" for c in cells if not c.ok]
    verdict("2b orbital table <||L_tot||> (1 last digit)", not bad,
            f"{len(cells) - len(bad)}/{len(cells)}" + (f"; off: {', '.join(bad)}" if bad else ""))


def test_c3_pure_columns(ctx, verdict):
    cells = [c for c in reproduce(3, ctx).cells if c.column in ("g1/g_e", "(mp/me) g2/g_p", "g3", "g_J")]
    exact = [c for c in cells if c.tolerance is None]
    ok = all(c.ok for c in cells) and all(isinstance(c.computed, Fraction) for c in exact)
    verdict("3 odd-L pure columns (exact rationals, 1e-7)", ok,
            f"{len(exact)} rationals exact, g3/g_J max |d| {_worst([c for c in cells if c.tolerance]):.1e}")


def test_c4_mixed_columns(ctx, verdict):
    cells = [c for c in reproduce(3, ctx).cells if c.column in ("(mp/me) g~2/g_p", "g~3", "g~_J")]
    example = g_total(HyperfineLevel(0, 1, 1, 1), ctx.constants, ctx.data, ctx.mixing).total
    ok = all(c.ok for c in cells) and abs(example - 0.1265381) <= 2e-6
    verdict("4 odd-L mixed columns from recovered (C1,C3) (2e-6)", ok,
            f"{sum(c.ok for c in cells)}/{len(cells)}, max |d| {_worst(cells):.1e}; g~_J(0,1,1/2,1/2)={example:.7f}")


def test_c5a_shifts_and_stars(ctx, verdict):
    cells = [c for c in reproduce(5, ctx).cells if c.column == "shift"]
    numeric = [c for c in cells if c.printed != "*"]
    starred = [c for c in cells if c.printed == "*"]
    ok = all(c.ok for c in cells) and len(starred) == 3
    verdict("5a sigma+ shifts (2 Hz) and starred rows", ok,
            f"{sum(c.ok for c in numeric)}/{len(numeric)} shifts (the table has 14 rows, 3 starred), "
            f"max |d| {_worst(numeric):.2f} Hz; {sum(c.ok for c in starred)}/3 stars flagged")


@pytest.mark.xfail(strict=True, reason="0.3 Hz is finer than the integer-Hz printing of the 1327, 1325 and 1508 Hz "
                                       "splittings; the 8.2(2) Hz row is inconsistent with the printed g-factors")
def test_c5b_splittings(ctx, verdict):
    cells = [c for c in reproduce(5, ctx).cells if c.column == "splitting"]
    bad = [f"{c.row} ({c.computed:.2f} vs {c.printed})" for c in cells if not c.ok]
    verdict("5b pi splittings (0.3 Hz)", not bad,
            f"{len(cells) - len(bad)}/{len(cells)}" + (f"; off: {', '.join(bad)}" if bad else ""))


def test_c6_ratios(ctx, verdict):
    cells = reproduce(4, ctx).cells
    verdict("6 g-factor ratios at v=4 (1%)", all(c.ok for c in cells),
            ", ".join(f"{c.computed:.4f} vs {c.printed} ({c.delta:.2%})" for c in cells))


def test_c7a_6j_orthogonality(verdict):
    worst, count = 0.0, 0
    for t1, t2, t3, t4 in itertools.product(range(9), repeat=4):
        if max(t1 + t2, t3 + t4) > 8:
            continue
        h = [Fraction(t, 2) for t in (t1, t2, t3, t4)]
        inner = [Fraction(t, 2) for t in range(9) if is_triangle(h[0], h[1], Fraction(t, 2)) and is_triangle(h[2], h[3], Fraction(t, 2))]
        outer = [Fraction(t, 2) for t in range(9) if is_triangle(h[0], h[3], Fraction(t, 2)) and is_triangle(h[2], h[1], Fraction(t, 2))]
        for a, b in itertools.product(outer, repeat=2):
            s = sum((2 * j + 1) * (2 * a + 1) * wigner_6j(h[0], h[1], j, h[2], h[3], a) * wigner_6j(h[0], h[1], j, h[2], h[3], b)
                    for j in inner)
            worst = max(worst, abs(s - (1.0 if a == b else 0.0)))
            count += 1
    verdict("7a 6j orthogonality (twice-j <= 8, 1e-12)", worst <= 1e-12, f"{count} sums, max |d| {worst:.1e}")


def test_c7b_6j_symmetries(verdict):
    checked, bad = 0, 0
    for t in itertools.product(range(7), repeat=6):
        j = [Fraction(x, 2) for x in t]
        if not all(is_triangle(*tri) for tri in ((j[0], j[1], j[2]), (j[0], j[4], j[5]), (j[3], j[1], j[5]), (j[3], j[4], j[2]))):
            continue
        ref = wigner_6j(*j)
        cols = [(j[0], j[3]), (j[1], j[4]), (j[2], j[5])]
        for perm in itertools.permutations(cols):
            for flips in ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)):
                c = [(lo, hi) if f else (hi, lo) for (hi, lo), f in zip(perm, flips)]
                bad += wigner_6j(c[0][0], c[1][0], c[2][0], c[0][1], c[1][1], c[2][1]) != ref
                checked += 1
    verdict("7b 6j 24-element symmetry group (exact)", bad == 0, f"{checked} images, {bad} mismatches")


def test_c7c_closed_form_vs_pipeline(ctx, verdict):
    worst, n = 0.0, 0
    for L in range(11):
        states = [(H, J) for J in (L - H, L + H) if J > 0]
        if L % 2:
            states += [(Fraction(3, 2), J) for J in (L - Fraction(3, 2), L - H, L + H, L + Fraction(3, 2)) if J > 0]
        for F, J in states:
            worst = max(worst, abs(g1_pure(L, F, J, ctx.constants) - g1_via_wigner(L, F, J, ctx.constants)),
                        abs(g2_pure(L, F, J, ctx.constants) - g2_via_wigner(L, F, J, ctx.constants)))
            n += 1
    verdict("7c closed form vs 6j pipeline (L <= 10, 1e-12)", worst <= 1e-12, f"{n} (L,F,J), max |d| {worst:.1e}")


def test_c7d_linearity(ctx, verdict):
    worst = 0.0
    for L in range(4):
        for row in table_v(B, ctx.constants, ctx.data, ctx.mixing, rotational_levels=(L,)):
            lower = HyperfineLevel(0, L, int(2 * row.F), int(2 * row.J))
            trans = TwoPhotonTransition(lower, HyperfineLevel(1, L, lower.twice_F, lower.twice_J))
            for pol in Polarization:
                for b in (1e-6, 3.7e-4, 1e-2):
                    base = components(trans, B, pol, ctx.constants, ctx.data, ctx.mixing)
                    scaled = components(trans, MagneticField(b), pol, ctx.constants, ctx.data, ctx.mixing)
                    for x, y in zip(base, scaled):
                        if x.delta_nu_hz:
                            worst = max(worst, abs(y.delta_nu_hz / x.delta_nu_hz - b / B.b_tesla) / (b / B.b_tesla))
    verdict("7d Zeeman shifts linear in B", worst <= 1e-12, f"max relative deviation {worst:.1e}")


@pytest.mark.xfail(strict=True, reason="the published g-factors themselves give 1.48%, 1.53% and 1.35% on three "
                                       "homologous lines")
def test_c7e_near_cancellation(ctx, verdict):
    rows = table_v(B, ctx.constants, ctx.data, ctx.mixing)
    bad = [f"L={r.L} F={r.F} J={r.J}: {r.cancellation:.2%}" for r in rows if not r.cancellation < 0.01]
    verdict("7e near-cancellation |g'-g|/|g'+g| < 1%", not bad,
            f"{len(rows) - len(bad)}/{len(rows)}" + (f"; off: {', '.join(bad)}" if bad else ""))
