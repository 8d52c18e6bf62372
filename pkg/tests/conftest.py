"""Shared helpers and hypothesis strategies."""

from __future__ import annotations

import itertools
import random
import sys
from fractions import Fraction

from hypothesis import settings, strategies as st

from relmark.monomial import MonomialIdeal, is_quasi_stable, minimalize
from relmark.poly import Poly, RingContext, terms_of_degree

# exact arithmetic has uneven timings; examples are bounded by size instead
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")


def all_terms(nvars: int, maxdeg: int, mindeg: int = 0) -> list:
    return [t for d in range(mindeg, maxdeg + 1) for t in terms_of_degree(nvars, d)]


def quasi_stable_ideals(nvars: int, maxdeg: int, max_gens: int):
    """Every quasi-stable ideal minimally generated by at most ``max_gens`` terms of degree 1..maxdeg."""
    ring = RingContext.standard(nvars)
    pool = all_terms(nvars, maxdeg, 1)
    seen = set()
    for k in range(1, max_gens + 1):
        for gens in itertools.combinations(pool, k):
            if len(minimalize(gens)) != k:
                continue
            key = frozenset(gens)
            if key in seen:
                continue
            seen.add(key)
            I = MonomialIdeal(ring, gens)
            if is_quasi_stable(I):
                yield I


def random_poly(rng: random.Random, ring: RingContext, terms, density: float = 0.5, bound: int = 5) -> Poly:
    coeffs = {}
    for t in terms:
        if rng.random() < density:
            c = rng.randint(-bound, bound)
            if c:
                coeffs[t] = Fraction(c)
    return Poly(ring, coeffs)


small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def terms_st(draw, nvars: int, maxdeg: int = 4):
    return tuple(draw(st.lists(st.integers(0, maxdeg), min_size=nvars, max_size=nvars)))


@st.composite
def polys_st(draw, ring: RingContext, maxdeg: int = 3, homogeneous_degree: int | None = None, max_terms: int = 5):
    if homogeneous_degree is None:
        pool = all_terms(ring.nvars, maxdeg)
    else:
        pool = list(terms_of_degree(ring.nvars, homogeneous_degree))
    chosen = draw(st.lists(st.sampled_from(pool), max_size=max_terms, unique=True))
    return Poly(ring, {t: draw(small_fractions) for t in chosen})


@st.composite
def quasi_stable_st(draw, nvars: int = 3, maxdeg: int = 3, max_gens: int = 3):
    """A random term set closed up to quasi-stability by adding the required terms."""
    ring = RingContext.standard(nvars)
    pool = all_terms(nvars, maxdeg, 1)
    gens = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=max_gens, unique=True))
    I = MonomialIdeal(ring, gens)
    return quasi_stable_closure(I)


def quasi_stable_closure(I: MonomialIdeal) -> MonomialIdeal:
    """Smallest quasi-stable ideal containing I: add x_j^s t/x_i^k moves until stable.

    Uses the characterization: for t in B and x_j > x_i = min(t), some power
    x_j^s * t / x_i^{t_i} must lie in the ideal.  Adding x_j^{t_i} * t / x_i^{t_i}
    is always enough.
    """
    ring = I.ring
    gens = set(I.basis)
    while True:
        J = MonomialIdeal(ring, list(gens))
        if is_quasi_stable(J):
            return J
        added = False
        for t in J.basis:
            m = next(i for i, e in enumerate(t) if e)
            for j in range(m + 1, ring.nvars):
                u = list(t)
                u[j] += u[m]
                u[m] = 0
                u = tuple(u)
                if not J.contains(u):
                    gens.add(u)
                    added = True
        if not added:
            return J


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
