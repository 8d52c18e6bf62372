import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import polys_st, random_poly
from relmark.coordinates import (
    LowerTriangularChange,
    PositionNotFound,
    SingularChange,
    apply_change,
    autoreduce,
    high_degree_heads_coincide,
    is_U_marked_set,
    lower_block_size,
    quasi_stable_position,
    reduce_mod_monomial,
)
from relmark.linalg import rank
from relmark.monomial import MonomialIdeal, is_quasi_stable, regularity
from relmark.poly import Poly, RingContext, terms_of_degree

R = RingContext.standard(3)
I7 = MonomialIdeal.parse("x2^7", R)


def test_lower_block_size():
    assert lower_block_size(I7) == 1
    assert lower_block_size(MonomialIdeal.parse("x3^2, x2^5", RingContext.standard(4))) == 1
    assert lower_block_size(MonomialIdeal.parse("x3^2", RingContext.standard(4))) == 2


def test_singular_matrix_rejected():
    with pytest.raises(SingularChange):
        LowerTriangularChange.from_rows(3, [[1, 2], [2, 4]])


def test_swap_of_lowest_variables():
    g = LowerTriangularChange.from_rows(3, [[0, 1], [1, 0]])
    assert apply_change(g, Poly.parse("x0x1 + x1^2", R)) == Poly.parse("x1x0 + x0^2", R)


invertible = st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=2, max_size=2).filter(
    lambda m: m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0)


@settings(max_examples=80, deadline=None)
@given(invertible, polys_st(R, homogeneous_degree=7, max_terms=6))
def test_inverse_change_undoes_change(rows, p):
    g = LowerTriangularChange.from_rows(3, rows)
    back = apply_change(g.inverse(), apply_change(g, p, I7), I7)
    assert back == reduce_mod_monomial(p, I7)


@settings(max_examples=60, deadline=None)
@given(st.lists(polys_st(R, homogeneous_degree=3, max_terms=5), min_size=1, max_size=5))
def test_autoreduce_is_echelon_and_keeps_span(F):
    F = [f for f in F if f]
    if not F:
        return
    out = autoreduce(F)
    for f, h in zip(out.polys, out.heads):
        assert f.coefficient(h) == 1
        for other in out.heads:
            if other != h:
                assert f.coefficient(other) == 0
    cols = sorted({t for f in F for t in f.coeffs})

    def mat(polys):
        return [[f.coefficient(t) for t in cols] for f in polys]
    assert rank(mat(F)) == len(out.polys) == rank(mat(F) + mat(out.polys))


def test_autoreduce_drops_dependent_rows():
    f = Poly.parse("x2^2 + x1x0", R)
    assert len(autoreduce([f, f.scale(2)])) == 1


def test_quasi_stable_position_finds_a_change():
    pos = quasi_stable_position([Poly.parse("x0x2^6", R)], I7, seed=0)
    assert not pos.change.is_identity()
    assert [R.format_term(h) for h in pos.heads] == ["x2^6*x1"]
    assert is_quasi_stable(pos.ideal) and is_U_marked_set(pos.heads, I7)


def test_search_is_reproducible():
    F = [Poly.parse("x0x2^6 + x1^2x2^5", R)]
    a = quasi_stable_position(F, I7, seed=4)
    b = quasi_stable_position(F, I7, seed=4)
    assert a.change == b.change and a.tries == b.tries


def test_every_success_is_quasi_stable():
    rng = random.Random(9)
    pool = list(terms_of_degree(3, 7))
    for seed in range(15):
        F = [random_poly(rng, R, pool, 0.2, 3) for _ in range(rng.randint(1, 2))]
        F = [f for f in F if f]
        if not F:
            continue
        try:
            pos = quasi_stable_position(F, I7, seed=seed, max_tries=60)
        except PositionNotFound:
            continue
        assert is_quasi_stable(pos.ideal)


def test_search_gives_up():
    F = [Poly.parse("x2^7", R)]
    with pytest.raises(PositionNotFound):
        quasi_stable_position(F, I7, max_tries=3)


def test_non_u_marked_heads():
    assert not is_U_marked_set([R.parse_term("x1^2")], I7)
    assert not is_U_marked_set([R.parse_term("x1^7")], I7)
    assert is_U_marked_set([R.parse_term("x1x2^6")], I7)
    J = MonomialIdeal.parse("x1^7, x2^7", R)
    assert regularity(J) == 13


def test_high_degree_heads_agree_past_regularity():
    J = MonomialIdeal.parse("x1x2^6, x2^7", R)
    q0 = max(regularity(J), regularity(I7))
    for q in range(q0, q0 + 3):
        assert high_degree_heads_coincide(J, I7, q)
    J2 = MonomialIdeal.parse("x1^2, x2^7", R)
    assert not high_degree_heads_coincide(J2, I7, 2)
    assert high_degree_heads_coincide(J2, I7, max(regularity(J2), 7))


def test_matrix_round_trip_json():
    g = LowerTriangularChange.from_rows(3, [[Fraction(1, 2), 1], [0, 1]])
    assert g.as_json() == [["1/2", "1"], ["0", "1"]]
    assert LowerTriangularChange.from_rows(3, [[Fraction(x) for x in r] for r in g.as_json()]) == g
