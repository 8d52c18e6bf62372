import itertools
import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import all_terms, quasi_stable_ideals, quasi_stable_st
from relmark.monomial import (
    HilbertPolynomial,
    MonomialIdeal,
    NotQuasiStable,
    free_module_decomposition,
    gotzmann_number,
    gotzmann_representation,
    hilbert_data,
    hilbert_polynomial,
    is_cohen_macaulay,
    is_quasi_stable,
    is_saturated,
    regularity,
    rho,
    saturation,
    truncation,
)
from relmark.poly import RingContext, in_cone, terms_of_degree

R4 = RingContext.standard(4)


def names(ring, terms):
    return {ring.format_term(t) for t in terms}


def test_pommaret_basis_of_small_ideal():
    I = MonomialIdeal.parse("x3^2, x2^5", R4)
    assert names(R4, I.pommaret().terms) == {"x3^2", "x3*x2^5", "x2^5"}
    assert regularity(I) == 6
    assert rho(I) == 1


def test_pommaret_basis_with_x1():
    J = MonomialIdeal.parse("x3^2, x3x2, x3x1^2, x2^5", R4)
    assert names(R4, J.pommaret().terms) == {"x3^2", "x3*x2", "x3*x1^2", "x2^5"}
    assert rho(J) == 3


def test_not_quasi_stable():
    I = MonomialIdeal.parse("x1^2", RingContext.standard(3))
    assert not is_quasi_stable(I)
    with pytest.raises(NotQuasiStable):
        I.pommaret()
    with pytest.raises(NotQuasiStable):
        saturation(I)


def test_quasi_stable_matches_definition_on_all_small_ideals():
    ring = RingContext.standard(3)
    for gens in [("x1",), ("x2x1",), ("x2^2", "x1^3"), ("x2", "x1^2"), ("x2^2", "x2x1", "x1^2")]:
        I = MonomialIdeal.parse(", ".join(gens), ring)
        ok = True
        for t in I.basis:
            m = next(i for i, e in enumerate(t) if e)
            for j in range(m + 1, ring.nvars):
                if not any(I.contains(tuple(e if i != m else 0 for i, e in enumerate(t))[:j] + (t[j] + s,) +
                                      tuple(e if i != m else 0 for i, e in enumerate(t))[j + 1:])
                           for s in range(0, 12)):
                    ok = False
        assert is_quasi_stable(I) == ok


def _check_cones(I: MonomialIdeal, top: int) -> None:
    P = I.pommaret()
    assert set(I.basis) <= set(P.terms)
    for t in all_terms(I.ring.nvars, top):
        owners = [h for h in P.terms if in_cone(t, h)]
        assert len(owners) == (1 if I.contains(t) else 0), (I, t, owners)
        assert P.divisor(t) == (owners[0] if owners else None)


def test_pommaret_cones_partition_every_small_quasi_stable_ideal():
    count = 0
    for nv in (2, 3, 4):
        for I in quasi_stable_ideals(nv, 4, 3):
            _check_cones(I, min(regularity(I) + 3, 8) if nv == 4 else regularity(I) + 3)
            count += 1
    assert count > 700


@settings(max_examples=40, deadline=None)
@given(quasi_stable_st(nvars=4, maxdeg=4, max_gens=3))
def test_pommaret_cones_partition_random_closures(I):
    _check_cones(I, regularity(I) + 2)


@settings(max_examples=60, deadline=None)
@given(quasi_stable_st(nvars=4, maxdeg=4, max_gens=3))
def test_hilbert_function_counts_free_terms(I):
    hd = hilbert_data(I)
    for d in range(0, regularity(I) + 3):
        assert hd.function(d) == len([t for t in terms_of_degree(4, d) if not I.contains(t)])
    for d in range(hd.exact_from, hd.exact_from + 4):
        assert hd.polynomial(d) == hd.function(d)


@settings(max_examples=60, deadline=None)
@given(quasi_stable_st(nvars=4, maxdeg=4, max_gens=3), st.integers(0, 6))
def test_saturation_undoes_truncation(I, t):
    S = saturation(I)
    assert is_saturated(S)
    assert saturation(truncation(S, t)) == S
    assert hilbert_polynomial(truncation(S, t)) == hilbert_polynomial(S)


def test_truncation_keeps_high_degree_terms():
    I = MonomialIdeal.parse("x3^2, x2^5", R4)
    T = truncation(I, 3)
    for t in all_terms(4, 7):
        assert T.contains(t) == (I.contains(t) and sum(t) >= 3)


@pytest.mark.parametrize("text,hp", [("x3^2, x2^5", "10z - 15"), ("x3^2, x3x2, x3x1^2, x2^5", "5z - 3"),
                                     ("x3^2, x2^2", "4z"), ("x3, x2^3", "3z")])
def test_hilbert_polynomials(text, hp):
    assert hilbert_polynomial(MonomialIdeal.parse(text, R4)) == HilbertPolynomial.parse(hp)


def _gotzmann_sum(exps):
    z = sympy.Symbol("z")
    return sympy.expand(sum(sympy.binomial(z + a - i + 1, a).expand(func=True)
                            for i, a in enumerate(exps, start=1)))


@pytest.mark.parametrize("hp", ["5z - 3", "4z", "3z", "7", "1", "10z - 15", "z^2/2 + 3z/2 + 1", "2z + 1"])
def test_gotzmann_representation_sums_back(hp):
    p = HilbertPolynomial.parse(hp)
    exps = gotzmann_representation(p)
    assert list(exps) == sorted(exps, reverse=True)
    z = sympy.Symbol("z")
    target = sum(sympy.Rational(c.numerator, c.denominator) * z ** k for k, c in enumerate(p.coeffs))
    assert sympy.expand(_gotzmann_sum(exps) - target) == 0
    assert gotzmann_number(p) == len(exps)


def test_gotzmann_numbers_of_small_polynomials():
    assert gotzmann_number(HilbertPolynomial.parse("7")) == 7
    assert gotzmann_number(HilbertPolynomial.parse("5z - 3")) == 7
    assert gotzmann_number(HilbertPolynomial.parse("z + 1")) == 1


def test_inadmissible_polynomial_rejected():
    with pytest.raises(ValueError):
        gotzmann_number(HilbertPolynomial.parse("-z"))


def _depth_oracle(I: MonomialIdeal) -> bool:
    """CM iff x0..x_{d-1} is regular, checked by comparing Hilbert functions with the specialization."""
    nv = I.ring.nvars
    # dimension of R/I from a brute-force search over coordinate subspaces
    best = 0
    for k in range(nv + 1):
        for free in itertools.combinations(range(nv), k):
            if all(any(g[i] for i in range(nv) if i not in free) for g in I.basis):
                best = max(best, k)
    d = best
    low = [g for g in I.basis if not any(g[:d])]
    J = MonomialIdeal(I.ring, low)
    for s in range(0, regularity(I) + 3):
        lhs = len([t for t in terms_of_degree(nv, s) if not I.contains(t)])
        rhs = sum(math.comb(s - j + d - 1, d - 1) if d else int(s == j)
                  for j in range(s + 1)
                  for t in terms_of_degree(nv, j) if not any(t[:d]) and not J.contains(t))
        if lhs != rhs:
            return False
    return True


@settings(max_examples=80, deadline=None)
@given(quasi_stable_st(nvars=4, maxdeg=4, max_gens=3))
def test_cohen_macaulay_criterion_matches_regular_sequence_oracle(I):
    assert is_cohen_macaulay(I) == _depth_oracle(I)


@given(st.lists(st.integers(1, 5), min_size=1, max_size=3))
def test_clements_lindstrom_quotients_are_cohen_macaulay(exps):
    ring = RingContext.standard(4)
    gens = []
    for k, e in enumerate(exps):
        t = [0] * 4
        t[3 - k] = e
        gens.append(tuple(t))
    I = MonomialIdeal(ring, gens)
    assert is_cohen_macaulay(I)
    dec = free_module_decomposition(I)
    assert sum(dec.multiplicities) == math.prod(exps)


def test_non_cohen_macaulay_example():
    I = MonomialIdeal.parse("x3^2, x3x2", R4)
    assert not is_cohen_macaulay(I)
    with pytest.raises(ValueError):
        free_module_decomposition(I)
