import random
from fractions import Fraction

import pytest

from conftest import quasi_stable_ideals
from relmark.marked import MarkedSet, is_marked_basis, is_relative_marked_basis, reduce
from relmark.monomial import MonomialIdeal, is_saturated, rho, truncation
from relmark.poly import Poly, RingContext, times_var
from relmark.schemes import (
    PreconditionError,
    comparison_route,
    containment_ideal,
    full_scheme_ideal,
    generic_marked_set,
    relative_scheme_ideal,
    relative_scheme_ideal_truncated,
)

R = RingContext.standard(4)
I35 = MonomialIdeal.parse("x3^2, x2^3", R)
J35 = MonomialIdeal.parse("x3^2, x3x2, x2^3", R)


def _points(rng, m, count, support=2, bound=3):
    for _ in range(count):
        pt = [Fraction(0)] * m
        for k in rng.sample(range(m), min(support, m)):
            pt[k] = Fraction(rng.randint(-bound, bound))
        yield pt


def test_parameter_numbering_follows_heads_then_lex_tails():
    S = relative_scheme_ideal(I35, J35)
    assert S.params.labels(R)[:3] == ["c1: x3*x2, x0^2", "c2: x3*x2, x1*x0", "c3: x3*x2, x1^2"]
    assert S.num_parameters == 8


def test_relative_scheme_sound_on_the_loop_family():
    S = relative_scheme_ideal(I35, J35)
    gen = S.generic.marked
    k6 = next(k for k, (_, e) in enumerate(S.params.index) if e == R.parse_term("x2^2"))
    rng = random.Random(5)
    pts = []
    for v in range(-12, 13):
        pt = [Fraction(0)] * S.num_parameters
        pt[k6] = Fraction(v)
        pts.append(pt)
    pts.extend(_points(rng, S.num_parameters, 25))
    hits = 0
    for pt in pts:
        H = MarkedSet([f.specialize(pt) for f in gen], J35, relative_to=I35)
        rel = is_relative_marked_basis(I35, H)
        assert S.vanishes_at(pt) == rel
        hits += rel
    assert len(pts) == 50 and hits >= 25


def _pairs(nvars=3, maxdeg=3):
    pool = list(quasi_stable_ideals(nvars, maxdeg, 2))
    out = []
    for I in pool:
        for J in pool:
            if I != J and J.contains_ideal(I) and set(J.pommaret().terms) - set(I.pommaret().terms):
                out.append((I, J))
    return out


PAIRS = _pairs()


def test_relative_scheme_sound_on_random_pairs():
    rng = random.Random(11)
    checked = 0
    for I, J in rng.sample(PAIRS, 40):
        S = relative_scheme_ideal(I, J)
        m = S.num_parameters
        if m == 0:
            continue
        assert S.vanishes_at([0] * m)
        for pt in _points(rng, m, 6, support=rng.randint(1, 2), bound=2):
            H = MarkedSet([f.specialize(pt) for f in S.generic.marked], J, relative_to=I)
            assert S.vanishes_at(pt) == is_relative_marked_basis(I, H)
            checked += 1
    assert checked > 100


def test_full_scheme_sound_on_random_ideals():
    rng = random.Random(3)
    pool = list(quasi_stable_ideals(3, 3, 2))
    checked = 0
    for J in rng.sample(pool, min(30, len(pool))):
        U = full_scheme_ideal(J)
        m = U.num_parameters
        if m == 0:
            continue
        assert U.vanishes_at([0] * m)
        for pt in _points(rng, m, 5, support=rng.randint(1, 2), bound=2):
            G = MarkedSet([f.specialize(pt) for f in U.generic.marked], J)
            assert U.vanishes_at(pt) == is_marked_basis(G)
            checked += 1
    assert checked > 60


def test_truncated_scheme_matches_relative_bases_of_truncations():
    rng = random.Random(17)
    saturated = [(I, J) for I, J in PAIRS if is_saturated(I) and is_saturated(J)]
    checked = 0
    for I, J in rng.sample(saturated, min(25, len(saturated))):
        t = max(0, rho(J) - 1) + rng.randint(0, 1)
        S = relative_scheme_ideal_truncated(I, J, t)
        It, Jt = truncation(I, t), truncation(J, t)
        m = S.num_parameters
        if m == 0:
            continue
        assert S.vanishes_at([0] * m)
        for pt in _points(rng, m, 5, support=rng.randint(1, 2), bound=2):
            H = MarkedSet([f.specialize(pt) for f in S.generic.marked], Jt, relative_to=It)
            assert S.vanishes_at(pt) == is_relative_marked_basis(It, H)
            checked += 1
    assert checked > 40


def _replay(S, gen):
    marked = S.generic.marked
    prov = gen.provenance
    ring = marked.ring
    cring = S.params.ring
    if prov.family == "nonmultiplicative":
        p = marked[prov.source].mul_term(ring.var(prov.var))
    elif prov.family == "common":
        p = Poly.monomial(ring, times_var(prov.source, prov.var), 1, cring)
    else:
        p = Poly.monomial(ring, times_var(prov.source, 0, prov.shift), 1, cring)
    return reduce(marked, p).coefficient(prov.xterm).content_normalized()


REPLAY_CASES = [
    ("x3^2, x2^5", "x3^2, x3x2, x3x1^2, x2^5", 2),
    ("x3^2, x2^3", "x3^2, x3x2, x2^3", None),
    ("x3^2, x2^3", "x3, x2^3", 0),
    ("x3^3, x3^2x2", "x3^2, x3x2, x3x1", 1),
]


@pytest.mark.parametrize("itext,jtext,t", REPLAY_CASES)
@pytest.mark.parametrize("truncated", [False, True])
def test_every_generator_can_be_replayed(itext, jtext, t, truncated):
    I, J = MonomialIdeal.parse(itext, R), MonomialIdeal.parse(jtext, R)
    S = relative_scheme_ideal_truncated(I, J, t) if truncated else relative_scheme_ideal(I, J)
    for g in S.generators:
        assert _replay(S, g) == g.poly


def test_containment_generators_appear_when_needed():
    I, J = MonomialIdeal.parse("x3^2, x2^3", R), MonomialIdeal.parse("x3, x2^3", R)
    for S in (relative_scheme_ideal(I, J), relative_scheme_ideal_truncated(I, J, 0)):
        assert "containment" in {g.provenance.family for g in S.generators}


def test_truncated_default_and_preconditions():
    I = MonomialIdeal.parse("x3^2, x2^5", R)
    J = MonomialIdeal.parse("x3^2, x3x2, x3x1^2, x2^5", R)
    assert relative_scheme_ideal_truncated(I, J).num_parameters == 20
    with pytest.raises(PreconditionError):
        relative_scheme_ideal_truncated(I, J, 1)
    with pytest.raises(PreconditionError):
        relative_scheme_ideal_truncated(J, I, 2)
    with pytest.raises(PreconditionError):
        relative_scheme_ideal_truncated(MonomialIdeal.parse("x3^2, x2^5x0", R), J, 2)
    with pytest.raises(PreconditionError):
        relative_scheme_ideal(MonomialIdeal.parse("x1", R), J)


def test_containment_ideal_and_comparison_counts():
    I = MonomialIdeal.parse("x3^2, x2^5", R)
    J = MonomialIdeal.parse("x3^2, x3x2, x3x1^2, x2^5", R)
    route = comparison_route(I, J, 2)
    assert route.num_parameters == 50
    assert route.full.vanishes_at([0] * 50) and route.containment.vanishes_at([0] * 50)
    Jt = truncation(J, 2)
    V = containment_ideal(Jt, 2, [Poly.parse("x3^2", R)], route.full.generic)
    assert V.vanishes_at([0] * 50)
    with pytest.raises(PreconditionError):
        containment_ideal(Jt, 2, [Poly.parse("x3^2 + x0", R)], route.full.generic)


def test_generic_marked_set_has_one_parameter_per_tail_term():
    G = generic_marked_set(J35)
    for f in G.marked:
        head = next(t for t in f.coeffs if J35.contains(t))
        assert len(f) - 1 == len(J35.free_terms(sum(head)))
    assert G.params.size == sum(len(f) - 1 for f in G.marked)
