import itertools
import random
from fractions import Fraction

import pytest

from conftest import quasi_stable_ideals, random_poly
from relmark.linalg import rank
from relmark.marked import (
    MarkedSet,
    MarkedSetError,
    ReductionTrace,
    interleaved_reduce,
    is_marked_basis,
    is_relative_marked_basis,
    normal_form,
    reduce,
)
from relmark.monomial import MonomialIdeal, regularity
from relmark.poly import Poly, RingContext, degrevlex_key, div_terms, terms_of_degree

R = RingContext.standard(4)
P = lambda s: Poly.parse(s, R)  # noqa: E731
I35 = MonomialIdeal.parse("x3^2, x2^3", R)
J35 = MonomialIdeal.parse("x3^2, x3x2, x2^3", R)
H_POLY = P("x3x2 - 4x2^2")


def f_set():
    return MarkedSet([P("x3^2"), P("x3x2^3"), P("x2^3 - 3x3x2^2")], I35)


def g_set():
    return MarkedSet([P("x3^2"), H_POLY, P("x2^3")], J35)


def h_set(h=H_POLY):
    return MarkedSet([h], J35, relative_to=I35)


def test_heads_are_detected_and_validated():
    F = f_set()
    assert {R.format_term(h) for h in F.heads} == {"x3^2", "x3*x2^3", "x2^3"}
    with pytest.raises(MarkedSetError):
        MarkedSet([P("x3^2"), P("x2^3")], I35)  # x3*x2^3 missing
    with pytest.raises(MarkedSetError):
        MarkedSet([P("x3^2 + x2^3")], I35, strict=False)  # two support terms in the ideal
    with pytest.raises(MarkedSetError):
        MarkedSet([P("2x3^2")], I35, strict=False)


def test_reductions_of_a_relative_marked_set():
    xh = H_POLY.mul_term(R.var(3))
    assert reduce(h_set(), xh) == P("x3^2x2 - 16x2^3")
    assert reduce(f_set(), xh) == P("-4x2^2x3")


def test_alternating_reductions_loop():
    a = interleaved_reduce(f_set(), h_set(), P("x2^3"))
    assert (a.kind, a.value, a.match) == ("loop", P("12x2^3"), "proportional")
    b = interleaved_reduce(h_set(), f_set(), P("x2^2x3"))
    assert (b.kind, b.value) == ("loop", P("12x2^2x3"))


def test_alternating_reductions_exact_mode_runs_out():
    a = interleaved_reduce(f_set(), h_set(), P("x2^3"), max_rounds=4, proportional=False)
    assert a.kind == "max_rounds"
    assert a.value == P("x2^3").scale(12 ** 4)


def test_bases():
    assert is_marked_basis(f_set())
    assert is_marked_basis(g_set())
    assert is_relative_marked_basis(I35, h_set())
    assert normal_form(f_set(), P("x2^3")) == P("3x3x2^2")
    ring = RingContext.standard(3)
    bad = MarkedSet([Poly.parse("x2x1 + x1x0", ring), Poly.parse("x2^2", ring)],
                    MonomialIdeal.parse("x2^2, x2x1", ring))
    assert not is_marked_basis(bad)
    with pytest.raises(MarkedSetError):
        normal_form(bad, Poly.parse("x2^3", ring))


def _random_marked_set(rng, J, density=0.5, bound=3):
    ring = J.ring
    polys = [Poly.monomial(ring, h) + random_poly(rng, ring, J.free_terms(sum(h)), density, bound)
             for h in J.pommaret().terms]
    return MarkedSet(polys, J)


def _reduce_randomly(marked: MarkedSet, p: Poly, rng: random.Random, cap: int = 100000) -> Poly:
    """One reduction step at a time on a randomly chosen reducible term."""
    for _ in range(cap):
        reducible = [t for t in p.coeffs if marked.index.find(t) is not None]
        if not reducible:
            return p
        t = rng.choice(sorted(reducible))
        head = marked.index.find(t)
        p = p - marked[head].mul_term(div_terms(t, head), p.coeffs[t])
    raise AssertionError("reduction did not terminate")


def test_reduction_is_confluent_on_random_instances():
    rng = random.Random(20240)
    pool = list(quasi_stable_ideals(3, 3, 3))
    done = 0
    while done < 200:
        J = rng.choice(pool)
        F = _random_marked_set(rng, J)
        p = random_poly(rng, J.ring, list(terms_of_degree(3, rng.randint(1, 5))), 0.5)
        expected = reduce(F, p)
        for order_seed in range(3):
            assert _reduce_randomly(F, p, random.Random(order_seed)) == expected
        assert all(F.index.find(t) is None for t in expected.coeffs)
        done += 1


def test_reduction_terminates_but_steps_need_not_decrease():
    ring = RingContext.standard(3)
    J = MonomialIdeal.parse("x2^2, x1", ring)
    F = MarkedSet([Poly.parse("x1 - 2x2", ring), Poly.parse("x2x1", ring), Poly.parse("x2^2", ring)], J)
    trace = ReductionTrace()
    assert reduce(F, Poly.parse("x1^2", ring), trace) == 0
    steps = [t for t, _ in trace.steps]
    assert [ring.format_term(t) for t in steps] == ["x1^2", "x2*x1"]
    assert degrevlex_key(steps[1]) > degrevlex_key(steps[0])


def _decomposition_holds(marked: MarkedSet, degree: int) -> bool:
    """R_degree is the direct sum of (F)_degree and the span of the free terms."""
    ring = marked.ring
    terms = list(terms_of_degree(ring.nvars, degree))
    col = {t: k for k, t in enumerate(terms)}

    def row_of(g: Poly) -> list:
        row = [Fraction(0)] * len(terms)
        for t, c in g.coeffs.items():
            row[col[t]] = c
        return row

    ideal_rows = [row_of(f.mul_term(eta)) for head, f in marked.polys.items() if sum(head) <= degree
                  for eta in terms_of_degree(ring.nvars, degree - sum(head))]
    free_rows = [row_of(Poly.monomial(ring, t)) for t in marked.target.free_terms(degree)]
    r_ideal = rank(ideal_rows) if ideal_rows else 0
    return r_ideal + len(free_rows) == len(terms) and rank(ideal_rows + free_rows) == len(terms)


@pytest.mark.parametrize("make", [f_set, g_set])
def test_marked_bases_give_direct_sums(make):
    M = make()
    for s in range(0, regularity(M.target) + 3):
        assert _decomposition_holds(M, s)


def test_direct_sum_fails_for_a_non_basis():
    ring = RingContext.standard(3)
    J = MonomialIdeal.parse("x2^2, x2x1", ring)
    bad = MarkedSet([Poly.parse("x2x1 + x1x0", ring), Poly.parse("x2^2", ring)], J)
    assert not is_marked_basis(bad)
    assert not all(_decomposition_holds(bad, s) for s in range(0, 5))


def _completed_criterion(h: Poly) -> bool:
    """H together with the monomials of the shared Pommaret terms is a marked basis whose ideal contains I."""
    shared = set(I35.pommaret().terms) & set(J35.pommaret().terms)
    G = MarkedSet([h] + [Poly.monomial(R, a) for a in shared], J35)
    return is_marked_basis(G) and all(reduce(G, Poly.monomial(R, g)) == 0 for g in I35.basis)


def test_relative_basis_iff_completion_is_basis():
    tails = J35.free_terms(2)
    seen = {True: 0, False: 0}
    for eta in tails:
        for c in (-4, -1, 1, 3):
            h = P("x3x2") + Poly.monomial(R, eta, c)
            rel = is_relative_marked_basis(I35, h_set(h))
            assert rel == _completed_criterion(h)
            seen[rel] += 1
    for (e1, e2) in itertools.combinations(tails, 2):
        h = P("x3x2") + Poly.monomial(R, e1, 2) + Poly.monomial(R, e2, -1)
        rel = is_relative_marked_basis(I35, h_set(h))
        assert rel == _completed_criterion(h)
        seen[rel] += 1
    assert seen[True] and seen[False]


def test_relative_basis_on_perturbed_ideals():
    rng = random.Random(7)
    ring = RingContext.standard(3)
    pairs = []
    pool = list(quasi_stable_ideals(3, 3, 3))
    for I in pool:
        for J in pool:
            if I != J and J.contains_ideal(I) and set(J.pommaret().terms) - set(I.pommaret().terms):
                pairs.append((I, J))
    rng.shuffle(pairs)
    for I, J in pairs[:60]:
        heads = set(J.pommaret().terms) - set(I.pommaret().terms)
        shared = set(J.pommaret().terms) & set(I.pommaret().terms)
        H = [Poly.monomial(ring, h) + random_poly(rng, ring, J.free_terms(sum(h)), 0.4, 2) for h in heads]
        rel = is_relative_marked_basis(I, MarkedSet(H, J, relative_to=I))
        G = MarkedSet(H + [Poly.monomial(ring, a) for a in shared], J)
        assert rel == (is_marked_basis(G) and all(reduce(G, Poly.monomial(ring, g)) == 0 for g in I.basis))
