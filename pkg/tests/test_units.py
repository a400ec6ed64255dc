from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from logalb.field import QQ, cyclotomic_field
from logalb.units import (
    LevelMismatchError,
    TruncUnit,
    UnitTuple,
    fil_level,
    filtration_length,
    gen,
    gen_r,
    gen_r_factorization,
    graded_piece,
    identity,
    pic_gen,
    unit_exp,
    unit_inv,
    unit_log,
    unit_mul,
    unit_pow,
)

z = sympy.Symbol("z")
fracs = st.fractions(min_value=-9, max_value=9, max_denominator=5)


def units(m):
    return st.lists(fracs, min_size=m - 1, max_size=m - 1).map(lambda cs: TruncUnit(m, cs))


def sympy_truncate(expr, m):
    """Coefficients c_1..c_{m-1} of a power series in z, via sympy."""
    s = sympy.series(expr, z, 0, m).removeO()
    return [Fraction(str(s.coeff(z, k))) for k in range(1, m)]


def as_expr(u):
    return 1 + sum(sympy.Rational(str(c)) * z ** k for k, c in enumerate(u.coeffs, start=1))


# --- worked examples ---

def test_mul_examples():
    a, b = sympy.symbols("a b")
    assert unit_mul(gen(2, 3), gen(3, 3)) == TruncUnit(3, [-5, 6])
    assert unit_mul(gen(2, 2), gen(7, 2)) == gen(9, 2)  # [a]+[b]=[a+b] in W_2
    u = TruncUnit(4, [1, 2, 3])
    assert u * identity(4) == u


def test_inverse_examples():
    assert unit_inv(gen(3, 3)) == TruncUnit(3, [3, 9])
    assert unit_inv(TruncUnit(2, [5])) == TruncUnit(2, [-5])
    assert unit_inv(identity(5)).is_identity()


def test_generator_examples():
    assert gen(0, 4).is_identity()
    assert gen(1, 3) == TruncUnit(3, [-1])
    assert gen(2, 2) == TruncUnit(2, [-2])
    assert pic_gen(1, 5).is_identity()
    assert pic_gen(0, 2) == TruncUnit(2, [1])
    assert pic_gen(2, 3) == TruncUnit(3, [-1, -1])
    assert str(gen(2, 3) * gen(3, 3)) == "1 - 5*z + 6*z^2 (mod z^3)"


def test_filtration_examples():
    assert fil_level(identity(6)) == 6
    assert fil_level(TruncUnit(4, [0, 3])) == 2
    assert fil_level(gen(Fraction(-2, 3), 5)) == 1
    assert graded_piece(TruncUnit(4, [0, 0, -7]), 3) == QQ(7)
    assert all(graded_piece(identity(6), r) == 0 for r in range(1, 6))
    u = unit_mul(gen_r(2, 2, 4), gen_r(5, 2, 4))
    assert graded_piece(u, 2) == QQ(7)


def test_graded_piece_requires_filtration():
    with pytest.raises(ValueError):
        graded_piece(gen(1, 4), 2)


def test_factorization_examples():
    a = Fraction(5, 3)
    assert gen_r_factorization(a, 2, 3) == TruncUnit(3, [0, -a * a])
    assert gen_r_factorization(a, 1, 4) == gen(a, 4)
    for r in range(1, 5):
        assert gen_r_factorization(0, r, 6).is_identity()


@pytest.mark.parametrize("r", range(1, 7))
def test_factorization_over_cyclotomic(r):
    K = cyclotomic_field(r)
    a = K([Fraction(k + 2, 3) for k in range(K.degree)])
    assert gen_r_factorization(a, r, 8, K) == gen_r(a ** r, r, 8)


def test_levels_do_not_mix():
    with pytest.raises(LevelMismatchError):
        gen(1, 3) * gen(1, 4)


# --- against sympy series ---

@pytest.mark.parametrize("m", range(2, 7))
def test_inverse_and_power_match_sympy(m):
    u = TruncUnit(m, [Fraction(k, 2) - 1 for k in range(1, m)])
    assert list(u.inverse().coeffs) == sympy_truncate(1 / as_expr(u), m)
    assert list((u ** 3).coeffs) == sympy_truncate(as_expr(u) ** 3, m)
    half = sympy_truncate(sympy.sqrt(as_expr(u)), m)
    assert list((u ** Fraction(1, 2)).coeffs) == half
    assert list(pic_gen(Fraction(3, 2), m).coeffs) == sympy_truncate((1 - sympy.Rational(3, 2) * z) / (1 - z), m)


@pytest.mark.parametrize("m", range(2, 7))
def test_log_exp_match_sympy(m):
    u = TruncUnit(m, [Fraction(2 - k, 3) for k in range(1, m)])
    assert [c.to_fraction() for c in unit_log(u)] == sympy_truncate(sympy.log(as_expr(u)), m)
    assert unit_exp(unit_log(u), m, QQ) == u


def test_log_of_pic_gen_closed_form():
    a = Fraction(7, 4)
    logs = unit_log(pic_gen(a, 6))
    assert [c.to_fraction() for c in logs] == [(1 - a ** k) / k for k in range(1, 6)]


# --- group and filtration properties ---

@pytest.mark.parametrize("m", range(1, 7))
def test_group_axioms(m):
    @settings(max_examples=20, deadline=None)
    @given(units(m), units(m), units(m))
    def check(u, v, w):
        assert (u * v) * w == u * (v * w)
        assert u * v == v * u
        assert (u * u.inverse()).is_identity()
        assert unit_pow(u, 2) == u * u

    check()


@pytest.mark.parametrize("m", range(2, 7))
def test_filtration_is_subgroup_and_graded_is_additive(m):
    @settings(max_examples=15, deadline=None)
    @given(st.integers(1, m - 1), st.lists(fracs, min_size=m - 1, max_size=m - 1), st.lists(fracs, min_size=m - 1, max_size=m - 1))
    def check(r, cu, cv):
        cu[: r - 1] = [0] * (r - 1)
        cv[: r - 1] = [0] * (r - 1)
        u, v = TruncUnit(m, cu), TruncUnit(m, cv)
        assert fil_level(u * v) >= r and fil_level(u.inverse()) >= r
        assert graded_piece(u * v, r) == graded_piece(u, r) + graded_piece(v, r)

    check()


@pytest.mark.parametrize("m", range(2, 8))
def test_neg_generator_congruence_at_r1(m):
    # -[b]_1 = [-b]_1 mod Fil_2
    b = Fraction(5, 2)
    u = gen(b, m).inverse() / gen(-b, m)
    assert fil_level(u) >= 2


def test_filtration_length():
    assert [filtration_length(m) for m in range(1, 11)] == list(range(0, 10))


# --- tuples ---

def test_tuple_equality_ignores_chain_and_json_roundtrip():
    t = UnitTuple(3, [gen(2, 3), pic_gen(Fraction(1, 2), 3)])
    assert t.with_chain(None) == t
    assert UnitTuple.from_json(t.to_json()) == t
    assert (t * t.inverse()).is_identity()


def test_unit_json_roundtrip_over_cyclotomic():
    K = cyclotomic_field(3)
    u = gen(K.gen() + 1, 4) * gen_r(K.gen(), 2, 4)
    assert TruncUnit.from_json(u.to_json(), K) == u
