"""Buchberger's algorithm over Q and dimension data of the resulting schemes."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .linalg import sparse_rank
from .poly import DEGREVLEX, Poly, RingContext, divides, lcm_terms, order_key


class BudgetExceeded(RuntimeError):
    """The Groebner computation hit its pair or coefficient-size limit."""


class NotZeroDimensional(ValueError):
    pass


class OriginNotOnScheme(ValueError):
    pass


@dataclass
class Budget:
    max_pairs: int | None = None
    max_coefficient_bits: int | None = None


@dataclass
class GBStats:
    pairs_considered: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0


def _neg(key: tuple) -> tuple:
    return tuple(-k for k in key)


class _Engine:
    def __init__(self, nvars: int, order: str, budget: Budget):
        self.nvars = nvars
        self.order = order
        self._key = order_key(order)
        self._cache: dict = {}
        self.budget = budget

    def key(self, t):
        k = self._cache.get(t)
        if k is None:
            k = self._key(t)
            self._cache[t] = k
        return k

    def lt(self, f: dict):
        return max(f, key=self.key)

    def monic(self, f: dict) -> dict:
        lc = f[self.lt(f)]
        if lc == 1:
            return f
        inv = 1 / lc
        return {t: c * inv for t, c in f.items()}

    def check_bits(self, f: dict) -> None:
        cap = self.budget.max_coefficient_bits
        if cap is None:
            return
        for c in f.values():
            if c.numerator.bit_length() > cap or c.denominator.bit_length() > cap:
                raise BudgetExceeded(f"coefficient exceeds {cap} bits")

    def reduce(self, f: dict, basis: list, full: bool = True) -> dict:
        """Remainder of ``f`` by monic ``basis`` given as (lt, poly) pairs."""
        f = dict(f)
        heap = [(_neg(self.key(t)), t) for t in f]
        heapq.heapify(heap)
        rem = {}
        while heap:
            t = heapq.heappop(heap)[1]
            c = f.pop(t, None)
            if c is None:
                continue
            g = None
            for lt, gp in basis:
                if divides(lt, t):
                    g = (lt, gp)
                    break
            if g is None:
                rem[t] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            lt, gp = g
            m = tuple(a - b for a, b in zip(t, lt))
            for u, d in gp.items():
                if u == lt:
                    continue
                v = tuple(a + b for a, b in zip(u, m))
                old = f.get(v)
                if old is None:
                    f[v] = -c * d
                    heapq.heappush(heap, (_neg(self.key(v)), v))
                else:
                    new = old - c * d
                    if new:
                        f[v] = new
                    else:
                        del f[v]
        return rem

    def spoly(self, f: dict, ltf, g: dict, ltg) -> dict:
        lcm = lcm_terms(ltf, ltg)
        mf = tuple(a - b for a, b in zip(lcm, ltf))
        mg = tuple(a - b for a, b in zip(lcm, ltg))
        out: dict = {}
        for u, c in f.items():
            if u != ltf:
                out[tuple(a + b for a, b in zip(u, mf))] = c
        for u, c in g.items():
            if u == ltg:
                continue
            v = tuple(a + b for a, b in zip(u, mg))
            w = out.get(v, 0) - c
            if w:
                out[v] = w
            else:
                out.pop(v, None)
        return out


def _coprime(a, b) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis with monic generators."""

    ring: RingContext
    order: str
    generators: list
    stats: GBStats = field(default_factory=GBStats)

    @property
    def leading_terms(self) -> list:
        key = order_key(self.order)
        return [max(g.coeffs, key=key) for g in self.generators]

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.generators)

    def reduce(self, p: Poly) -> Poly:
        eng = _Engine(self.ring.nvars, self.order, Budget())
        basis = [(max(g.coeffs, key=eng.key), g.coeffs) for g in self.generators]
        return Poly(self.ring, eng.reduce(p.coeffs, basis))

    def contains(self, p: Poly) -> bool:
        return not self.reduce(p)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def formatted(self) -> list:
        return sorted(g.format(self.order) for g in self.generators)


def buchberger(gens: Iterable[Poly], order: str = DEGREVLEX, ring: RingContext | None = None,
               max_pairs: int | None = None, max_coefficient_bits: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm.

    Pairs are processed by the normal strategy (smallest lcm first) and
    filtered with the Gebauer-Moeller criteria.  ``max_pairs`` bounds the
    number of S-polynomials reduced; exceeding it raises BudgetExceeded.
    """
    gens = [g for g in gens if g]
    if ring is None:
        if not gens:
            raise ValueError("ring is required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring or g.coeff_ring is not None:
            raise ValueError("generators must be rational polynomials in one ring")
    eng = _Engine(ring.nvars, order, Budget(max_pairs, max_coefficient_bits))
    stats = GBStats()

    polys: list = []  # monic dicts
    lts: list = []
    active: list = []  # indices currently in G
    pairs: list = []  # heap of (key of lcm, i, j)

    def update(h: int) -> None:
        nonlocal active, pairs
        lth = lts[h]
        cands = [(g, lcm_terms(lth, lts[g])) for g in active]
        kept = []
        for idx, (g, l) in enumerate(cands):
            if _coprime(lth, lts[g]):
                kept.append((g, l))
                continue
            others = [l2 for g2, l2 in cands[idx + 1:]] + [l2 for _, l2 in kept]
            if any(divides(l2, l) for l2 in others):
                continue
            kept.append((g, l))
        new_pairs = []
        seen_lcm = set()
        for g, l in kept:
            if _coprime(lth, lts[g]):
                continue
            if l in seen_lcm:
                continue
            seen_lcm.add(l)
            new_pairs.append((eng.key(l), g, h))
        old = []
        for entry in pairs:
            _, i, j = entry
            l = lcm_terms(lts[i], lts[j])
            if divides(lth, l) and lcm_terms(lts[i], lth) != l and lcm_terms(lth, lts[j]) != l:
                continue
            old.append(entry)
        pairs = old + new_pairs
        heapq.heapify(pairs)
        active = [g for g in active if not divides(lth, lts[g])] + [h]

    def add(f: dict) -> None:
        f = eng.monic(f)
        eng.check_bits(f)
        polys.append(f)
        lts.append(eng.lt(f))
        update(len(polys) - 1)

    # initial interreduction keeps the start of the run small
    start = sorted((dict(g.coeffs) for g in gens), key=lambda f: eng.key(eng.lt(f)))
    for f in start:
        basis = [(lts[i], polys[i]) for i in active]
        r = eng.reduce(f, basis)
        if r:
            add(r)
            if not any(lts[-1]):
                return GroebnerBasis(ring, order, [Poly.constant(ring, 1)], stats)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        stats.pairs_considered += 1
        if max_pairs is not None and stats.pairs_reduced >= max_pairs:
            raise BudgetExceeded(f"more than {max_pairs} S-polynomial reductions")
        stats.pairs_reduced += 1
        s = eng.spoly(polys[i], lts[i], polys[j], lts[j])
        basis = [(lts[k], polys[k]) for k in active]
        r = eng.reduce(s, basis)
        if not r:
            stats.zero_reductions += 1
            continue
        add(r)
        if not any(lts[-1]):
            return GroebnerBasis(ring, order, [Poly.constant(ring, 1)], stats)

    return GroebnerBasis(ring, order, _interreduce(eng, [polys[k] for k in active], ring), stats)


def _interreduce(eng: _Engine, polys: list, ring: RingContext) -> list:
    items = sorted(((eng.lt(f), f) for f in polys), key=lambda x: eng.key(x[0]))
    minimal = []
    for lt, f in items:
        if not any(divides(l2, lt) for l2, _ in minimal):
            minimal.append((lt, f))
    out = []
    for k, (lt, f) in enumerate(minimal):
        others = [m for idx, m in enumerate(minimal) if idx != k]
        tail = {t: c for t, c in f.items() if t != lt}
        r = eng.reduce(tail, others)
        r[lt] = f[lt]
        out.append((lt, eng.monic(r)))
    out.sort(key=lambda x: eng.key(x[0]), reverse=True)
    return [Poly(ring, f) for _, f in out]


# ---------- dimension data ----------

def _minimal_supports(lts: Sequence) -> list:
    supports = {frozenset(i for i, e in enumerate(t) if e) for t in lts}
    return [s for s in supports if not any(o < s for o in supports)]


def min_hitting_set(sets: Sequence[frozenset]) -> frozenset:
    """A smallest set of variables meeting every support set (branch and bound)."""
    sets = sorted(sets, key=len)
    best = [frozenset().union(*sets) if sets else frozenset()]

    def search(chosen: frozenset, remaining: list) -> None:
        if len(chosen) >= len(best[0]):
            return
        pending = [s for s in remaining if not (s & chosen)]
        if not pending:
            best[0] = chosen
            return
        # lower bound from pairwise disjoint pending sets
        disjoint = []
        used: set = set()
        for s in pending:
            if not (s & used):
                disjoint.append(s)
                used |= s
        if len(chosen) + len(disjoint) >= len(best[0]):
            return
        first = pending[0]
        for v in sorted(first):
            search(chosen | {v}, pending)

    search(frozenset(), sets)
    return best[0]


def krull_dimension_of_leading_terms(nvars: int, lts: Sequence) -> int:
    if any(not any(t) for t in lts):
        return -1
    sets = _minimal_supports(lts)
    return nvars - len(min_hitting_set(sets))


def krull_dimension(gb_or_gens, order: str = DEGREVLEX, ring: RingContext | None = None,
                    max_pairs: int | None = None) -> int:
    """Krull dimension of the quotient ring (-1 for the unit ideal)."""
    gb = gb_or_gens if isinstance(gb_or_gens, GroebnerBasis) else buchberger(gb_or_gens, order, ring, max_pairs)
    return krull_dimension_of_leading_terms(gb.ring.nvars, gb.leading_terms)


def tangent_dimension_at_origin(gens: Sequence[Poly], nparams: int | None = None) -> int:
    """Number of parameters minus the rank of the linear parts of the generators."""
    gens = list(gens)
    if nparams is None:
        if not gens:
            raise ValueError("nparams is required for an empty generator list")
        nparams = gens[0].ring.nvars
    for g in gens:
        if g.constant_term():
            raise OriginNotOnScheme(f"{g} does not vanish at the origin")
    rows = [g.linear_part() for g in gens]
    return nparams - sparse_rank([r for r in rows if r])


def standard_monomials(gb: GroebnerBasis) -> list:
    """Terms outside the leading-term ideal of a zero-dimensional ideal."""
    lts = gb.leading_terms
    nv = gb.ring.nvars
    if krull_dimension_of_leading_terms(nv, lts) != 0:
        raise NotZeroDimensional("quotient is not finite dimensional")
    out = []
    frontier = [gb.ring.one()]
    seen = {gb.ring.one()}
    while frontier:
        t = frontier.pop()
        if any(divides(l, t) for l in lts):
            continue
        out.append(t)
        for i in range(nv):
            u = t[:i] + (t[i] + 1,) + t[i + 1:]
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    return out


def multiplicity_zero_dim(gb_or_gens, order: str = DEGREVLEX, ring: RingContext | None = None) -> int:
    gb = gb_or_gens if isinstance(gb_or_gens, GroebnerBasis) else buchberger(gb_or_gens, order, ring)
    return len(standard_monomials(gb))


@dataclass
class CoordinateSubspace:
    is_coordinate_subspace: bool
    fixed: list  # parameter indices set to zero
    free: list  # parameter indices left free


def detect_coordinate_subspace(gb_or_gens, ring: RingContext | None = None) -> CoordinateSubspace:
    """Whether the ideal is generated by a set of parameters."""
    gb = gb_or_gens if isinstance(gb_or_gens, GroebnerBasis) else buchberger(gb_or_gens, DEGREVLEX, ring)
    nv = gb.ring.nvars
    fixed = []
    ok = True
    for g in gb.generators:
        if len(g.coeffs) == 1:
            (t,) = g.coeffs
            if sum(t) == 1:
                fixed.append(t.index(1))
                continue
        ok = False
    free = [i for i in range(nv) if i not in fixed]
    return CoordinateSubspace(ok, sorted(fixed), free)


@dataclass
class SchemeAnalysis:
    nparams: int
    krull_dimension: int
    tangent_dimension_at_origin: int | None
    multiplicity: int | None
    is_coordinate_subspace: bool
    free_parameters: list
    groebner_size: int
    pairs_reduced: int

    @property
    def singular_at_origin(self) -> bool | None:
        if self.tangent_dimension_at_origin is None:
            return None
        return self.tangent_dimension_at_origin > self.krull_dimension

    def as_json(self, ring: RingContext) -> dict:
        return {
            "parameters": self.nparams,
            "krull_dimension": self.krull_dimension,
            "tangent_dimension_at_origin": self.tangent_dimension_at_origin,
            "multiplicity": self.multiplicity,
            "is_coordinate_subspace": self.is_coordinate_subspace,
            "free_parameters": [ring.names[i] for i in self.free_parameters] if self.is_coordinate_subspace else None,
            "singular_at_origin": self.singular_at_origin,
            "groebner_basis_size": self.groebner_size,
            "pairs_reduced": self.pairs_reduced,
        }


def analyze(gens: Sequence[Poly], ring: RingContext, order: str = DEGREVLEX,
            max_pairs: int | None = None) -> SchemeAnalysis:
    gens = [g for g in gens if g]
    gb = buchberger(gens, order, ring, max_pairs)
    dim = krull_dimension(gb)
    try:
        tangent = tangent_dimension_at_origin(gens, ring.nvars)
    except OriginNotOnScheme:
        tangent = None
    mult = multiplicity_zero_dim(gb) if dim == 0 else None
    cs = detect_coordinate_subspace(gb)
    return SchemeAnalysis(ring.nvars, dim, tangent, mult, cs.is_coordinate_subspace, cs.free,
                          len(gb), gb.stats.pairs_reduced)
