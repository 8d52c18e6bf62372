"""Marked sets over quasi-stable ideals and their reduction relation."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .monomial import ConeIndex, MonomialIdeal, PommaretBasis
from .poly import Poly, Term, degrevlex_key, div_terms, non_multiplicative_variables, times_var


class MarkedSetError(ValueError):
    pass


class MarkedSet:
    """Marked polynomials indexed by their head terms.

    With ``relative_to=None`` the heads must be exactly the Pommaret basis of
    ``target``; otherwise they must be the Pommaret terms of ``target`` that
    are not Pommaret terms of ``relative_to``.  Tails are supported outside
    ``target``.  Set ``strict=False`` to allow an arbitrary subset of the
    Pommaret basis as heads.
    """

    def __init__(self, polys: Iterable[Poly], target: MonomialIdeal,
                 relative_to: MonomialIdeal | None = None, strict: bool = True):
        self.target = target
        self.relative_to = relative_to
        self.pommaret: PommaretBasis = target.pommaret()
        pset = set(self.pommaret.terms)
        by_head: dict = {}
        for f in polys:
            head = self._find_head(f)
            if head not in pset:
                raise MarkedSetError(f"head {target.ring.format_term(head)} is not in the Pommaret basis of {target}")
            if head in by_head:
                raise MarkedSetError(f"two polynomials marked on {target.ring.format_term(head)}")
            if f.homogeneous_degree != sum(head):
                raise MarkedSetError(f"{f} is not homogeneous")
            by_head[head] = f
        if relative_to is not None:
            if not target.contains_ideal(relative_to):
                raise MarkedSetError(f"{relative_to} is not contained in {target}")
            expected = pset - set(relative_to.pommaret().terms)
        else:
            expected = pset
        if strict and set(by_head) != expected:
            raise MarkedSetError("heads do not match the required Pommaret terms")
        self.polys = dict(sorted(by_head.items(), key=lambda kv: degrevlex_key(kv[0])))
        self.index = ConeIndex(self.polys)

    def _find_head(self, f: Poly) -> Term:
        inside = [t for t in f.coeffs if self.target.contains(t)]
        if len(inside) != 1:
            raise MarkedSetError(f"{f} must have exactly one support term in {self.target}")
        head = inside[0]
        if f.coeffs[head] != 1:
            raise MarkedSetError(f"head coefficient of {f} is not 1")
        return head

    @classmethod
    def monomial(cls, target: MonomialIdeal, relative_to: MonomialIdeal | None = None) -> "MarkedSet":
        """The marked set with zero tails."""
        ring = target.ring
        heads = set(target.pommaret().terms)
        if relative_to is not None:
            heads -= set(relative_to.pommaret().terms)
        return cls([Poly.monomial(ring, h) for h in heads], target, relative_to)

    @property
    def ring(self):
        return self.target.ring

    @property
    def heads(self) -> tuple:
        return tuple(self.polys)

    def __iter__(self):
        return iter(self.polys.values())

    def __len__(self) -> int:
        return len(self.polys)

    def __getitem__(self, head: Term) -> Poly:
        return self.polys[head]

    def specialize(self, point) -> "MarkedSet":
        return MarkedSet([f.specialize(point) for f in self], self.target, self.relative_to, strict=False)

    def reduce(self, p: Poly) -> Poly:
        return reduce(self, p)

    def __str__(self) -> str:
        return "{" + ", ".join(str(f) for f in self) + "}"


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)  # (reduced term, head) pairs


def reduce(marked: MarkedSet, p: Poly, trace: ReductionTrace | None = None) -> Poly:
    """Complete reduction of ``p`` by the multiples of ``marked`` inside Pommaret cones.

    The degrevlex-largest reducible term is rewritten first; the result has
    no support term in any cone of a head.
    """
    index = marked.index
    polys = marked.polys
    coeffs = dict(p.coeffs)
    heap = []
    for t in coeffs:
        if index.find(t) is not None:
            heap.append(tuple(-k for k in degrevlex_key(t)) + (t,))
    heapq.heapify(heap)
    while heap:
        t = heapq.heappop(heap)[-1]
        lam = coeffs.get(t)
        if lam is None:
            continue
        head = index.find(t)
        eta = div_terms(t, head)
        if trace is not None:
            trace.steps.append((t, head))
        for u, c in polys[head].coeffs.items():
            v = tuple(a + b for a, b in zip(u, eta))
            old = coeffs.get(v)
            new = -(lam * c) if old is None else old - lam * c
            if new:
                coeffs[v] = new
                if old is None and index.find(v) is not None:
                    heapq.heappush(heap, tuple(-k for k in degrevlex_key(v)) + (v,))
            elif old is not None:
                del coeffs[v]
    return Poly._raw(p.ring, coeffs, p.coeff_ring)


def is_marked_basis(marked: MarkedSet) -> bool:
    """Every x_i * f with x_i non-multiplicative for Ht(f) reduces to zero."""
    if marked.relative_to is not None:
        raise MarkedSetError("use is_relative_marked_basis for relative marked sets")
    for head, f in marked.polys.items():
        for i in non_multiplicative_variables(head):
            if reduce(marked, f.mul_term(marked.ring.var(i))):
                return False
    return True


def _lands_in(ideal: MonomialIdeal, p: Poly) -> bool:
    pb = ideal.pommaret()
    return all(pb.divisor(t) is not None for t in p.coeffs)


def relative_checks(ideal: MonomialIdeal, marked: MarkedSet):
    """Yield (family, source, variable, polynomial to reduce) for the three relative conditions."""
    ring = marked.ring
    for head, f in marked.polys.items():
        for i in non_multiplicative_variables(head):
            yield "nonmultiplicative", head, i, f.mul_term(ring.var(i))
    common = set(ideal.pommaret().terms) & set(marked.pommaret.terms)
    for a in sorted(common, key=degrevlex_key):
        for i in non_multiplicative_variables(a):
            yield "common", a, i, _term_poly(ring, times_var(a, i), marked)
    pset = set(marked.pommaret.terms)
    for g in ideal.basis:
        if g not in pset:
            yield "containment", g, None, _term_poly(ring, g, marked)


def _term_poly(ring, t, marked: MarkedSet) -> Poly:
    sample = next(iter(marked.polys.values()), None)
    coeff_ring = sample.coeff_ring if sample is not None else None
    return Poly.monomial(ring, t, 1, coeff_ring)


def is_relative_marked_basis(ideal: MonomialIdeal, marked: MarkedSet) -> bool:
    """The three reduction conditions characterising a marked basis relative to a monomial ideal."""
    if marked.relative_to is not None and marked.relative_to != ideal:
        raise MarkedSetError("marked set is relative to a different ideal")
    if not marked.target.contains_ideal(ideal):
        raise MarkedSetError(f"{ideal} is not contained in {marked.target}")
    for _, _, _, p in relative_checks(ideal, marked):
        if not _lands_in(ideal, reduce(marked, p)):
            return False
    return True


def normal_form(marked: MarkedSet, p: Poly) -> Poly:
    """Normal form modulo the ideal generated by a marked basis."""
    if not is_marked_basis(marked):
        raise MarkedSetError("not a marked basis")
    return reduce(marked, p)


@dataclass
class InterleaveResult:
    kind: str  # "fixed_point", "loop" or "max_rounds"
    value: Poly
    rounds: int
    match: str | None = None  # "exact" or "proportional"
    factor: Fraction | None = None
    recurs_at: int | None = None  # history index of the matching earlier value
    history: list = field(default_factory=list)


def _ratio(p: Poly, q: Poly):
    """Rational c with p == c*q, or None."""
    if p.coeff_ring is not None or set(p.coeffs) != set(q.coeffs) or not q:
        return None
    t = next(iter(q.coeffs))
    c = p.coeffs[t] / q.coeffs[t]
    return c if p == q.scale(c) else None


def interleaved_reduce(first: MarkedSet, second: MarkedSet, p: Poly, max_rounds: int = 20,
                       proportional: bool = True) -> InterleaveResult:
    """Alternate complete reductions by ``first`` then ``second`` until a value recurs.

    A recurrence up to a nonzero rational factor counts as a loop when
    ``proportional`` is set; exact recurrence of the previous value is a fixed point.
    """
    history = [p]
    cur = p
    for r in range(1, max_rounds + 1):
        cur = reduce(second, reduce(first, cur))
        if cur == history[-1]:
            return InterleaveResult("fixed_point", cur, r, "exact", Fraction(1), len(history) - 1, history)
        for k, old in enumerate(history):
            if cur == old:
                return InterleaveResult("loop", cur, r, "exact", Fraction(1), k, history + [cur])
            if proportional:
                c = _ratio(cur, old)
                if c is not None:
                    return InterleaveResult("loop", cur, r, "proportional", c, k, history + [cur])
        history.append(cur)
    return InterleaveResult("max_rounds", cur, max_rounds, history=history)
