"""Valued-field arithmetic, torus evaluation, classical Newton polygons."""

import random

import pytest

from newtonstrata.chamber import retract
from newtonstrata.rationals import NEG_INF, Q
from newtonstrata.rootdata import build_group
from newtonstrata.toruseval import (
    LaurentPoly,
    check_thm_rnu,
    classical_newton_slopes,
    coords_to_slopes,
    eval_c,
    eval_char,
    nu_a,
    parse_torus_point,
    random_torus_point,
    slopes_to_coords,
)


def mono(c, v):
    return LaurentPoly.monomial(Q(c), Q(v))


def test_val_leading_term():
    p = mono(1, -1) + mono(1, 0)
    assert p.val() == 1


def test_val_cancellation():
    p = mono(2, -3) + mono(1, 5)
    assert (p + (-p)).val() is NEG_INF


def test_val_convention():
    assert mono(2, Q(1, 2)).val() == Q(-1, 2)


def test_ultrametric():
    rng = random.Random(19)
    for _ in range(100):
        a = mono(rng.choice((1, -1, 2)), Q(rng.randint(-4, 4), 2))
        b = mono(rng.choice((1, -1, -2)), Q(rng.randint(-4, 4), 2))
        va, vb, vs = a.val(), b.val(), (a + b).val()
        assert vs <= max(va, vb)
        if va != vb:
            assert vs == max(va, vb)


def test_invert_monomial():
    p = mono(2, -3)
    assert (p * p.invert()).terms == LaurentPoly.one().terms
    with pytest.raises(ValueError):
        (mono(1, 0) + mono(1, 1)).invert()


def test_parse_torus_point():
    a = parse_torus_point("1*pi^(-1),-1*pi^(-2)")
    assert len(a.values) == 2
    assert a.values[1].val() == 2
    with pytest.raises(ValueError):
        parse_torus_point("pi^2")


def test_eval_char_basis():
    g = build_group("GL2")
    a = parse_torus_point("1*pi^(-1),3*pi^(0)")
    assert eval_char(g, (1, 0), a).terms == a.values[0].terms
    assert eval_char(g, (0, 0), a).terms == LaurentPoly.one().terms


def test_eval_char_gl2_root():
    g = build_group("GL2")
    a = parse_torus_point("1*pi^(-1),1*pi^(-1)")
    out = eval_char(g, g.root_coords(0), a)
    assert out.terms == mono(1, -1).terms


def test_nu_a():
    g = build_group("GL2")
    a = parse_torus_point("1*pi^(0),1*pi^(0)")
    assert nu_a(g, a) == (0, 0)
    a = parse_torus_point("1*pi^(-1),1*pi^(-1)")
    assert nu_a(g, a) == (1, 1)
    # unit coefficients never matter
    b = parse_torus_point("-2*pi^(-1),7*pi^(-1)")
    assert nu_a(g, b) == nu_a(g, a)


def test_nu_a_defining_identity():
    g = build_group("B2")
    rng = random.Random(6)
    for _ in range(20):
        a = random_torus_point(g, rng, denominator=2)
        nu = nu_a(g, a)
        for lam in [(1, 0), (0, 1), (2, -1), (-1, 3)]:
            assert eval_char(g, lam, a).val() == g.pair(lam, nu)


def test_eval_c_gl2():
    g = build_group("GL2")
    a = parse_torus_point("1*pi^(-1),1*pi^(-1)")
    values, d_c = eval_c(g, a)
    assert values[0].terms == (mono(1, -1) + mono(1, 0)).terms
    assert d_c == (1, 1)


def test_eval_c_cancellation():
    g = build_group("GL2")
    a = parse_torus_point("1*pi^(-1),-1*pi^(-2)")
    values, d_c = eval_c(g, a)
    assert values[0].is_zero()
    assert d_c == (NEG_INF, 2)


def test_eval_c_a1():
    g = build_group("A1")
    a = parse_torus_point("1*pi^(-1)")
    values, d_c = eval_c(g, a)
    assert values[0].terms == (mono(1, -1) + mono(1, 1)).terms
    assert d_c == (1,)


def test_check_thm_rnu_trivial():
    g = build_group("GL2")
    a = parse_torus_point("1*pi^(0),1*pi^(0)")
    assert check_thm_rnu(g, a)["pass"]


def test_check_thm_rnu_cancellation():
    g = build_group("GL2")
    a = parse_torus_point("1*pi^(-1),-1*pi^(-2)")
    rep = check_thm_rnu(g, a)
    assert rep["pass"]
    assert rep["retract"] == (1, 2)


def test_classical_slopes():
    assert classical_newton_slopes((Q(0), Q(1))) == (Q(1, 2), Q(1, 2))
    assert classical_newton_slopes((Q(1), Q(0), Q(0))) == (
        1, Q(-1, 2), Q(-1, 2))
    assert classical_newton_slopes((NEG_INF, Q(2))) == (1, 1)
    with pytest.raises(ValueError):
        classical_newton_slopes((Q(0), NEG_INF))


def test_slopes_coords_roundtrip():
    s = (Q(3, 2), Q(1, 2), Q(0))
    assert coords_to_slopes(slopes_to_coords(s)) == s


def test_classical_matches_retract_spot():
    g = build_group("GL3")
    rng = random.Random(12)
    for _ in range(60):
        d = tuple(Q(rng.randint(-3, 3)) for _ in range(3))
        y, _ = retract(g, d)
        assert slopes_to_coords(classical_newton_slopes(d)) == y


def test_classical_inequalities():
    rng = random.Random(14)
    for _ in range(60):
        n = rng.randint(2, 5)
        d = [Q(rng.randint(-3, 3)) for _ in range(n)]
        nu = classical_newton_slopes(tuple(d))
        partial = Q(0)
        for i in range(n):
            partial += nu[i]
            assert d[i] <= partial
            if i == n - 1 or nu[i] > nu[i + 1]:
                assert d[i] == partial


def test_nu_a_homomorphism():
    g = build_group("GL3")
    rng = random.Random(27)
    for _ in range(20):
        a = random_torus_point(g, rng, denominator=2)
        b = random_torus_point(g, rng, denominator=2)
        ab_vals = tuple(x * y for x, y in zip(a.values, b.values))
        from newtonstrata.toruseval import TorusPoint

        ab = TorusPoint(ab_vals)
        assert nu_a(g, ab) == tuple(
            x + y for x, y in zip(nu_a(g, a), nu_a(g, b))
        )


def test_random_suites_small():
    from newtonstrata.verify import suite_rnu

    for spec in ("GL2", "A2", "G2"):
        g = build_group(spec)
        rep = suite_rnu(g, seed=42, count=50)
        assert rep["pass"], rep["failures"][:1]
