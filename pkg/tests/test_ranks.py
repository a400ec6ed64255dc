import pytest
import sympy
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

from logalb.ranks import (
    AlbInput,
    CohTable,
    CurveData,
    InconsistentTableError,
    cech_p1_cohomology,
    curve_cohomology,
    format_table,
    jacobian_ranks,
    lalb_table,
    p1_cohomology,
    table_from_input,
)
from logalb.units import filtration_length

GM = {"mode": "p1", "modulus": {"points": [{"at": "0", "mult": 1}, {"at": "inf", "mult": 1}]}, "ns_rank": 0}


def sympy_cech(d):
    """Cech cohomology of O(d) on P^1, built from scratch with sympy matrices.

    Monomials x^j: U_0 gives j >= 0, U_1 gives j <= d, U_01 gives all j.
    """
    w = abs(d) + 3
    degs = list(range(-w, w + 1))
    c0 = [("a", j) for j in range(0, w + 1)] + [("b", j) for j in range(-w, d + 1)]
    M = sympy.zeros(len(degs), len(c0))
    for col, (chart, j) in enumerate(c0):
        M[degs.index(j), col] = 1 if chart == "a" else -1
    rk = M.rank()
    return len(c0) - rk, len(degs) - rk


# --- P^1 ---

def test_p1_examples():
    assert p1_cohomology(3) == (4, 0)
    assert p1_cohomology(-2) == (0, 1)
    assert p1_cohomology(-1) == (0, 0)


@pytest.mark.parametrize("d", range(-6, 7))
def test_p1_against_cech(d):
    assert cech_p1_cohomology(d) == p1_cohomology(d) == sympy_cech(d)


# --- Jacobians of curves with modulus ---

def test_jacobian_examples():
    for m in range(2, 11):
        assert jacobian_ranks(CurveData(0, m, 1), 1) == (0, 0, m - 1)
        assert jacobian_ranks(CurveData(0, m, 1), 1)[2] == filtration_length(m)
    for n in range(1, 7):
        assert jacobian_ranks(CurveData(1, 1, 1), n) == (1, 0, n - 1)
        assert jacobian_ranks(CurveData(0, 2, 2), n) == (0, 1, 2 * n - 2)


@pytest.mark.parametrize("d,s", [(1, 1), (2, 1), (2, 2), (3, 2), (4, 3)])
def test_genus0_unipotent_from_cech(d, s):
    # h^0(Omega^1(nD)) = h^0(O(nd - 2)) on P^1, computed by the Cech oracle
    for n in range(1, 6):
        h0 = sympy_cech(n * d - 2)[0]
        assert jacobian_ranks(CurveData(0, d, s), n) == (0, s - 1, h0 - (s - 1))


def test_jacobian_invariants():
    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 6), st.integers(1, 4), st.integers(0, 5), st.integers(1, 8))
    def check(g, s, extra, n):
        c = CurveData(g, s + extra, s)
        a, t, u = jacobian_ranks(c, n)
        assert min(a, t, u) >= 0
        assert a + t + u == g + n * c.degree - 1
        assert jacobian_ranks(c, n + 1)[2] >= u

    check()


def test_curve_data_validation():
    with pytest.raises(ValueError):
        CurveData(0, 1, 2)
    with pytest.raises(ValueError):
        CurveData(-1, 0, 0)
    with pytest.raises(ValueError):
        jacobian_ranks(CurveData(2, 0, 0), 1)


def test_curve_cohomology():
    assert curve_cohomology(2, 0) == (1, 2)
    assert curve_cohomology(2, 5) == (4, 0)
    assert curve_cohomology(1, -3) == (0, 3)
    with pytest.raises(ValueError):
        curve_cohomology(3, 2)


# --- tables ---

def test_gm_table():
    tab = table_from_input(GM)
    r0 = tab.row(0)
    assert (r0.abelian, r0.torus) == (0, 1)
    assert list(r0.unipotent) == [2 * n - 2 for n in range(1, tab.horizon + 1)]
    assert tab.row(1).ns_rank == 0 and not any(tab.row(1).unipotent)
    assert not any(tab.row(2).unipotent)


def test_proper_genus2_table():
    tab = table_from_input({"mode": "curve", "genus": 2, "ns_rank": 1})
    assert tab.is_constant()
    assert (tab.row(0).abelian, tab.row(0).torus) == (2, 0)
    assert tab.row(1).ns_rank == 1 and not any(tab.row(1).unipotent)


def test_curves_have_no_higher_rows():
    tab = table_from_input({"mode": "curve", "genus": 3, "modulus": {"points": [{"at": "p", "mult": 2}]}})
    assert all(not any(tab.row(i).unipotent) for i in range(2, 5))
    assert list(tab.row(0).unipotent[:3]) == [1, 3, 5]


def test_proper_table_is_constant():
    inp = {"mode": "table", "dim": 3, "coh": [[1, 2, 1, 4]], "alb": {"abelian": 2, "torus": 0}, "proper": True, "ns_rank": 1}
    tab = table_from_input(inp)
    assert tab.is_constant()
    assert tab.row(2).unipotent[0] == 1 and tab.row(3).unipotent[0] == 4
    assert not any(tab.row(4).unipotent)


def test_affine_table_rows_constant_above_zero():
    rows = [[1 + 2 * n, 0, 0] for n in range(4)]
    inp = {"mode": "table", "dim": 2, "coh": rows, "tail": [[1, 2], [0], [0]], "alb": {"abelian": 0, "torus": 1}}
    tab = table_from_input(inp)
    assert all(r.kind == "constant" for r in tab.rows if r.i >= 1)
    assert tab.row(0).unipotent is None


def test_l1_from_h1_growth():
    t = CohTable(2, ((1, 1, 0), (3, 2, 0), (6, 4, 1)))
    tab = lalb_table(t, 2, {"abelian": 1, "torus": 0})
    assert list(tab.row(1).unipotent[:3]) == [1, 3, 3]
    assert tab.row(1).kind == "pro"
    assert list(tab.row(2).unipotent[:3]) == [0, 1, 1]


def test_negative_l1_is_inconsistent():
    t = CohTable(2, ((1, 3, 0), (2, 1, 0)))
    with pytest.raises(InconsistentTableError):
        lalb_table(t, 0, {"abelian": 0, "torus": 0})
    tab = lalb_table(t, 0, {"abelian": 0, "torus": 0}, h1_map_rank=lambda n: 1)
    assert tab.row(1).unipotent[0] == 0


def test_schema_errors_name_the_field():
    with pytest.raises(ValidationError) as err:
        AlbInput.model_validate({"modulus": {"points": []}})
    assert err.value.errors()[0]["loc"] == ("mode",)
    with pytest.raises(ValidationError) as err:
        AlbInput.model_validate({"mode": "p1", "modulus": {"points": [{"at": "0", "mult": 0}]}})
    assert err.value.errors()[0]["loc"] == ("modulus", "points", 0, "mult")
    with pytest.raises(ValidationError):
        AlbInput.model_validate({"mode": "table", "coh": [[1, 0]]})
    with pytest.raises(ValidationError):
        AlbInput.model_validate({"mode": "curve", "colour": "red"})


def test_format_and_json():
    tab = table_from_input(GM)
    text = format_table(tab)
    assert text.splitlines()[0].split()[:5] == ["i", "kind", "abelian", "torus", "NS*"]
    assert "0 2 4 6 8 10 ..." in text
    js = tab.to_json()
    assert js["horizon"] == 12 and js["rows"][0]["unipotent"][:3] == [0, 2, 4]
