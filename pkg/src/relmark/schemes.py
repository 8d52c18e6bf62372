"""Generic marked sets over parameter rings and the ideals cutting out marked schemes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .marked import MarkedSet, reduce, relative_checks
from .monomial import MonomialIdeal, is_saturated, rho, truncation
from .poly import (
    Poly,
    RingContext,
    Term,
    degrevlex_key,
    lex_key,
    non_multiplicative_variables,
    times_var,
)


class PreconditionError(ValueError):
    """Input ideals or parameters violate a requirement of the construction."""


@dataclass(frozen=True)
class ParameterRing:
    """Parameters C_{beta,eta}, one per head beta and tail term eta, numbered c1, c2, ...

    Heads are taken by increasing degrevlex order and, within a head, tail
    terms by increasing lex order.
    """

    ring: RingContext
    index: tuple  # ((head, eta), ...) in numbering order

    @classmethod
    def build(cls, heads: Iterable[Term], target: MonomialIdeal) -> "ParameterRing":
        pairs = []
        for b in sorted(heads, key=degrevlex_key):
            for eta in sorted(target.free_terms(sum(b)), key=lex_key):
                pairs.append((b, eta))
        return cls(RingContext.parameters(len(pairs)), tuple(pairs))

    @property
    def size(self) -> int:
        return len(self.index)

    def __len__(self) -> int:
        return len(self.index)

    def names(self) -> list:
        return list(self.ring.names)

    def variable(self, k: int) -> Poly:
        return Poly.variable(self.ring, k)

    def labels(self, xring: RingContext) -> list:
        """Human-readable ``name: head, tail term`` lines."""
        return [f"{self.ring.names[k]}: {xring.format_term(b)}, {xring.format_term(e)}"
                for k, (b, e) in enumerate(self.index)]


@dataclass
class GenericMarkedSet:
    params: ParameterRing
    marked: MarkedSet

    @property
    def polys(self) -> list:
        return list(self.marked)


def generic_marked_set(target: MonomialIdeal, relative_to: MonomialIdeal | None = None) -> GenericMarkedSet:
    """Marked set whose tails carry one fresh parameter per tail term.

    Each polynomial is ``x^beta + sum_k c_k x^eta_k`` with eta_k running over
    the terms outside ``target`` of degree ``|beta|``.
    """
    heads = set(target.pommaret().terms)
    if relative_to is not None:
        heads -= set(relative_to.pommaret().terms)
    params = ParameterRing.build(heads, target)
    cring = params.ring
    xring = target.ring
    coeffs: dict = {b: {b: Poly.constant(cring, 1)} for b in heads}
    for k, (b, eta) in enumerate(params.index):
        coeffs[b][eta] = Poly.variable(cring, k)
    polys = [Poly._raw(xring, coeffs[b], cring) for b in heads]
    return GenericMarkedSet(params, MarkedSet(polys, target, relative_to))


@dataclass(frozen=True)
class Provenance:
    family: str  # "nonmultiplicative", "common", "containment", "full", "membership"
    source: Term  # head or term multiplied
    var: int | None  # variable index multiplied by, if any
    xterm: Term  # term whose coefficient gave the generator
    shift: int = 0  # power of x0 applied before reducing

    def describe(self, ring: RingContext) -> dict:
        out = {"family": self.family, "source": ring.format_term(self.source),
               "term": ring.format_term(self.xterm)}
        if self.var is not None:
            out["variable"] = ring.names[self.var]
        if self.shift:
            out["x0_power"] = self.shift
        return out


@dataclass
class Generator:
    poly: Poly
    provenance: Provenance


@dataclass
class SchemeIdeal:
    """Generators in a parameter ring together with where each came from."""

    params: ParameterRing
    generic: GenericMarkedSet | None
    generators: list = field(default_factory=list)

    @property
    def ring(self) -> RingContext:
        return self.params.ring

    @property
    def polys(self) -> list:
        return [g.poly for g in self.generators]

    @property
    def num_parameters(self) -> int:
        return self.params.size

    def __len__(self) -> int:
        return len(self.generators)

    def vanishes_at(self, point) -> bool:
        return all(g.poly.evaluate(point) == 0 for g in self.generators)

    def sorted_polys(self) -> list:
        return sorted((p.format() for p in self.polys))

    def as_json(self, xring: RingContext) -> dict:
        out = {
            "parameters": self.params.labels(xring),
            "generators": [{"poly": g.poly.format(), "provenance": g.provenance.describe(xring)}
                           for g in self.generators],
        }
        if self.generic is not None:
            out["marked_set"] = [f.format() for f in self.generic.marked]
        return out


class _Collector:
    def __init__(self, params: ParameterRing, generic: GenericMarkedSet | None):
        self.ideal = SchemeIdeal(params, generic)
        self._seen: set = set()

    def add(self, p: Poly, keep, prov_for) -> None:
        for t, c in sorted(p.coeffs.items(), key=lambda kv: degrevlex_key(kv[0]), reverse=True):
            if not keep(t):
                continue
            g = c.content_normalized()
            if g in self._seen:
                continue
            self._seen.add(g)
            self.ideal.generators.append(Generator(g, prov_for(t)))


def _everything(t: Term) -> bool:
    return True


def full_scheme_ideal(target: MonomialIdeal, generic: GenericMarkedSet | None = None) -> SchemeIdeal:
    """Ideal of the marked scheme over ``target``.

    Collects the coefficients of the complete reductions of x_i*g for every
    generic g and every non-multiplicative x_i of its head.
    """
    generic = generic or generic_marked_set(target)
    col = _Collector(generic.params, generic)
    ring = target.ring
    for head, g in generic.marked.polys.items():
        for i in non_multiplicative_variables(head):
            r = reduce(generic.marked, g.mul_term(ring.var(i)))
            col.add(r, _everything, lambda t, h=head, i=i: Provenance("full", h, i, t))
    return col.ideal


def _shift_x0(ring: RingContext, p: Poly, d: int) -> Poly:
    return p.mul_term(times_var(ring.one(), 0, d)) if d else p


def containment_ideal(target: MonomialIdeal, t: int, Z: Sequence, generic: GenericMarkedSet | None = None,
                      check_t: bool = True) -> SchemeIdeal:
    """Conditions for the ideal generated by the generic marked set to contain ``Z``.

    Each f in Z is multiplied by x0^max(0, t - deg f) and completely reduced;
    all coefficients of the result are collected.  ``Z`` holds terms or
    homogeneous rational polynomials.
    """
    if check_t and t < rho(target) - 1:
        raise PreconditionError(f"t = {t} is below rho - 1 = {rho(target) - 1}")
    generic = generic or generic_marked_set(target)
    col = _Collector(generic.params, generic)
    ring = target.ring
    cring = generic.params.ring
    for f in Z:
        if not isinstance(f, Poly):
            f = Poly.monomial(ring, tuple(f))
        if not f.is_homogeneous():
            raise PreconditionError(f"{f} is not homogeneous")
        lifted = Poly(ring, {s: Poly.constant(cring, c) for s, c in f.coeffs.items()}, cring)
        d = max(0, t - f.degree())
        r = reduce(generic.marked, _shift_x0(ring, lifted, d))
        source = f.leading_term() if f else ring.one()
        col.add(r, _everything, lambda u, s=source, d=d: Provenance("membership", s, None, u, d))
    return col.ideal


@dataclass
class ComparisonRoute:
    """Parameters and generators of the non-relative presentation over J_{>=t}."""

    full: SchemeIdeal
    containment: SchemeIdeal

    @property
    def num_parameters(self) -> int:
        return self.full.num_parameters

    @property
    def polys(self) -> list:
        seen = []
        for p in self.full.polys + self.containment.polys:
            if p not in seen:
                seen.append(p)
        return seen


def comparison_route(I: MonomialIdeal, J: MonomialIdeal, t: int, Z: Sequence | None = None) -> ComparisonRoute:
    """Marked scheme ideal over J_{>=t} plus containment of Z (default: minimal generators of I)."""
    Jt = truncation(J, t)
    if t < rho(Jt) - 1:
        raise PreconditionError(f"t = {t} is below rho - 1 = {rho(Jt) - 1}")
    generic = generic_marked_set(Jt)
    Z = list(I.basis) if Z is None else Z
    return ComparisonRoute(full_scheme_ideal(Jt, generic), containment_ideal(Jt, t, Z, generic, check_t=False))


def _check_pair(I: MonomialIdeal, J: MonomialIdeal) -> None:
    if I.ring != J.ring:
        raise PreconditionError("ideals live in different rings")
    if not J.contains_ideal(I):
        raise PreconditionError(f"{I} is not contained in {J}")
    for X in (I, J):
        if not X.quasi_stable:
            raise PreconditionError(f"{X} is not quasi-stable")


def relative_scheme_ideal(I: MonomialIdeal, J: MonomialIdeal) -> SchemeIdeal:
    """Ideal of the relative marked scheme of the pair I inside J.

    Reduces the three families of products by the generic relative marked
    set and keeps the coefficients of terms outside I.
    """
    _check_pair(I, J)
    generic = generic_marked_set(J, I)
    col = _Collector(generic.params, generic)
    keep = lambda u: not I.contains(u)  # noqa: E731
    for family, source, var, p in relative_checks(I, generic.marked):
        r = reduce(generic.marked, p)
        col.add(r, keep, lambda u, f=family, s=source, v=var: Provenance(f, s, v, u))
    return col.ideal


def relative_scheme_ideal_truncated(I: MonomialIdeal, J: MonomialIdeal, t: int | None = None) -> SchemeIdeal:
    """Relative marked scheme ideal of the truncations I_{>=t} inside J_{>=t}, for saturated I, J.

    Products by non-multiplicative variables are handled on the truncations;
    containment is tested on the minimal generators x^g of I outside the
    Pommaret basis of J, after multiplying by x0^max(0, t - deg g).
    With ``t=None`` the smallest admissible value max(0, rho(J) - 1) is used.
    """
    _check_pair(I, J)
    if not (is_saturated(I) and is_saturated(J)):
        raise PreconditionError("both ideals must be saturated")
    if t is None:
        t = max(0, rho(J) - 1)
    if t < rho(J) - 1:
        raise PreconditionError(f"t = {t} is below rho - 1 = {rho(J) - 1}")
    It, Jt = truncation(I, t), truncation(J, t)
    generic = generic_marked_set(Jt, It)
    marked = generic.marked
    col = _Collector(generic.params, generic)
    keep = lambda u: not I.contains(u)  # noqa: E731
    for family, source, var, p in relative_checks(It, marked):
        if family == "containment":
            continue
        r = reduce(marked, p)
        col.add(r, keep, lambda u, f=family, s=source, v=var: Provenance(f, s, v, u))
    ring = I.ring
    pj = set(J.pommaret().terms)
    for g in I.basis:
        if g in pj:
            continue
        d = max(0, t - sum(g))
        p = Poly.monomial(ring, times_var(g, 0, d), 1, generic.params.ring)
        r = reduce(marked, p)
        col.add(r, keep, lambda u, s=g, d=d: Provenance("containment", s, None, u, d))
    return col.ideal
