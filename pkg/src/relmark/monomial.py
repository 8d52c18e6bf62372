"""Monomial ideals: quasi-stability, Pommaret bases, Hilbert data."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .poly import (
    RingContext,
    Term,
    degrevlex_key,
    divides,
    lex_key,
    min_var,
    non_multiplicative_variables,
    terms_of_degree,
    times_var,
)


class NotQuasiStable(ValueError):
    """The monomial ideal has no finite Pommaret basis."""


def minimalize(gens: Iterable[Term]) -> list:
    """Divisibility-minimal subset, sorted by increasing degree then degrevlex."""
    out: list = []
    for g in sorted(set(map(tuple, gens)), key=degrevlex_key):
        if not any(divides(h, g) for h in out):
            out.append(g)
    return out


class MonomialIdeal:
    """A monomial ideal given by its minimal generators (its monomial basis)."""

    def __init__(self, ring: RingContext, gens: Iterable[Term] = ()):
        self.ring = ring
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != ring.nvars:
                raise ValueError(f"term {g} does not fit ring {ring.names}")
        self.basis = tuple(minimalize(gens))
        self._pommaret = None

    @classmethod
    def parse(cls, text: str, ring: RingContext) -> "MonomialIdeal":
        from .poly import parse_poly_list

        terms = []
        for p in parse_poly_list(text, ring):
            if len(p) != 1:
                raise ValueError(f"not a term: {p}")
            terms.append(next(iter(p.coeffs)))
        return cls(ring, terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialIdeal) and self.ring == other.ring and set(self.basis) == set(other.basis)

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.basis)))

    def __repr__(self) -> str:
        return f"MonomialIdeal({self})"

    def __str__(self) -> str:
        return "(" + ", ".join(self.ring.format_term(g) for g in self.display_basis()) + ")"

    def display_basis(self) -> list:
        return sorted(self.basis, key=lambda t: (-sum(t), tuple(-e for e in reversed(t))))

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_unit(self) -> bool:
        return any(not any(g) for g in self.basis)

    def contains(self, t: Term) -> bool:
        return any(divides(g, t) for g in self.basis)

    __contains__ = contains

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.basis)

    def max_degree(self) -> int:
        return max((sum(g) for g in self.basis), default=0)

    def free_terms(self, d: int) -> list:
        """Terms of degree ``d`` outside the ideal, in decreasing degrevlex order."""
        return sorted((t for t in terms_of_degree(self.ring.nvars, d) if not self.contains(t)),
                      key=degrevlex_key, reverse=True)

    def terms(self, d: int) -> list:
        return [t for t in terms_of_degree(self.ring.nvars, d) if self.contains(t)]

    def sum(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.ring, self.basis + other.basis)

    def pommaret(self, degree_cap: int | None = None) -> "PommaretBasis":
        if self._pommaret is None:
            self._pommaret = pommaret_basis(self, degree_cap)
        return self._pommaret

    @property
    def quasi_stable(self) -> bool:
        return is_quasi_stable(self)


def is_quasi_stable(ideal: MonomialIdeal) -> bool:
    """Generator-wise power criterion.

    For each generator u with smallest variable x_i and each j > i, some
    x_j^s * u / x_i^{deg_i u} must lie in the ideal.
    """
    gens = ideal.basis
    for u in gens:
        if not any(u):
            continue
        i = min_var(u)
        v = list(u)
        v[i] = 0
        for j in range(i + 1, len(u)):
            if not any(all(g[k] <= v[k] for k in range(len(u)) if k != j) for g in gens):
                return False
    return True


class ConeIndex:
    """Lookup of the Pommaret cone containing a term, for a set of heads with disjoint cones."""

    def __init__(self, heads: Iterable[Term]):
        self.heads = tuple(heads)
        self._table: dict = {}
        self._unit = None  # the term 1 owns every term
        for h in self.heads:
            if not any(h):
                self._unit = h
                continue
            m = min_var(h)
            self._table.setdefault((m, h[m + 1:]), []).append(h)

    def find(self, t: Term):
        """The head whose cone contains ``t``, or None."""
        if self._unit is not None:
            return self._unit
        table = self._table
        for m, e in enumerate(t):
            if e:
                hs = table.get((m, t[m + 1:]))
                if hs:
                    for h in hs:
                        if e >= h[m]:
                            return h
        return None

    def __contains__(self, t: Term) -> bool:
        return self.find(t) is not None


@dataclass(frozen=True)
class PommaretBasis:
    ideal: MonomialIdeal
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "_index", ConeIndex(self.terms))

    @property
    def ring(self) -> RingContext:
        return self.ideal.ring

    @property
    def regularity(self) -> int:
        return max((sum(t) for t in self.terms), default=0)

    def multiplicative(self, t: Term) -> tuple:
        if not any(t):
            return tuple(range(len(t)))
        return tuple(range(min_var(t) + 1))

    def divisor(self, t: Term):
        """The unique basis term whose cone contains ``t``; None if ``t`` is outside the ideal."""
        return self._index.find(t)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, t) -> bool:
        return t in set(self.terms)

    def as_json(self) -> list:
        ring = self.ring
        return [{"term": ring.format_term(t),
                 "multiplicative": [ring.names[i] for i in self.multiplicative(t)]}
                for t in self.display_order()]

    def display_order(self) -> list:
        return sorted(self.terms, key=lambda t: (sum(t), tuple(-e for e in reversed(t))))


def default_degree_cap(ideal: MonomialIdeal) -> int:
    return 2 * max(ideal.max_degree(), 1) * ideal.ring.nvars


def pommaret_basis(ideal: MonomialIdeal, degree_cap: int | None = None) -> PommaretBasis:
    """Involutive completion of the monomial basis.

    Raises NotQuasiStable when the ideal fails the quasi-stability test.
    """
    if not is_quasi_stable(ideal):
        raise NotQuasiStable(f"{ideal} is not quasi-stable")
    if degree_cap is None:
        degree_cap = default_degree_cap(ideal)
    if ideal.is_unit:
        return PommaretBasis(ideal, (ideal.ring.one(),))
    basis = list(ideal.basis)
    index = ConeIndex(basis)
    # candidates are processed degree by degree so cones stay disjoint
    pending = sorted({times_var(u, j) for u in basis for j in non_multiplicative_variables(u)}, key=degrevlex_key)
    while pending:
        d = sum(pending[0])
        if d > degree_cap:
            raise RuntimeError(f"Pommaret completion of {ideal} passed degree cap {degree_cap}")
        current = [t for t in pending if sum(t) == d]
        rest = [t for t in pending if sum(t) != d]
        new = []
        for t in current:
            if index.find(t) is None and t not in new:
                new.append(t)
        if new:
            basis.extend(new)
            index = ConeIndex(basis)
            rest.extend(times_var(u, j) for u in new for j in non_multiplicative_variables(u))
        pending = sorted(set(rest), key=degrevlex_key)
    return PommaretBasis(ideal, tuple(sorted(basis, key=degrevlex_key)))


def saturation(ideal: MonomialIdeal) -> MonomialIdeal:
    """Saturation of a quasi-stable ideal: set x0 to 1 in each generator."""
    if not is_quasi_stable(ideal):
        raise NotQuasiStable(f"{ideal} is not quasi-stable")
    return MonomialIdeal(ideal.ring, [(0,) + g[1:] for g in ideal.basis])


def is_saturated(ideal: MonomialIdeal) -> bool:
    return all(g[0] == 0 for g in ideal.basis)


def truncation(ideal: MonomialIdeal, t: int) -> MonomialIdeal:
    """Minimal basis of the degree-``>= t`` part of the ideal."""
    if t < 0:
        raise ValueError("truncation degree must be non-negative")
    nv = ideal.ring.nvars
    gens = []
    for g in ideal.basis:
        d = sum(g)
        if d >= t:
            gens.append(g)
        else:
            gens.extend(tuple(a + b for a, b in zip(g, m)) for m in terms_of_degree(nv, t - d))
    return MonomialIdeal(ideal.ring, gens)


def regularity(ideal: MonomialIdeal) -> int:
    return ideal.pommaret().regularity


def rho(ideal: MonomialIdeal) -> int:
    """Max degree of a Pommaret basis term divisible by x1; 1 if there is none."""
    degs = [sum(t) for t in ideal.pommaret().terms if len(t) > 1 and t[1] > 0]
    return max(degs) if degs else 1


# ---------- Hilbert data ----------

class HilbertPolynomial:
    """Integer-valued polynomial in z, stored as rational coefficients by ascending power."""

    def __init__(self, coeffs: Sequence = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def parse(cls, text: str) -> "HilbertPolynomial":
        from .poly import Poly

        p = Poly.parse(text, RingContext(("z",)))
        d = max((t[0] for t in p.coeffs), default=-1)
        return cls([p.coefficient((k,)) for k in range(d + 1)])

    @classmethod
    def binomial(cls, shift: int, k: int) -> "HilbertPolynomial":
        """binom(z + shift, k) as a polynomial in z."""
        out = cls([1])
        for j in range(k):
            out = out * cls([shift - j, 1])
        return out.scale(Fraction(1, math.factorial(k)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z) -> Fraction:
        v = Fraction(0)
        for c in reversed(self.coeffs):
            v = v * z + c
        return v

    def __eq__(self, other) -> bool:
        if isinstance(other, HilbertPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == HilbertPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "HilbertPolynomial") -> "HilbertPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return HilbertPolynomial([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "HilbertPolynomial") -> "HilbertPolynomial":
        return self + other.scale(-1)

    def __mul__(self, other: "HilbertPolynomial") -> "HilbertPolynomial":
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return HilbertPolynomial(out)

    def scale(self, c) -> "HilbertPolynomial":
        return HilbertPolynomial([x * c for x in self.coeffs])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            a = abs(c)
            num = str(a) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            if k == 0:
                body = num
            else:
                zp = "z" if k == 1 else f"z^{k}"
                body = zp if a == 1 else f"{num}*{zp}" if a.denominator != 1 else f"{num}{zp}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    __repr__ = __str__


@dataclass(frozen=True)
class HilbertData:
    nvars: int
    numerator: tuple  # K-polynomial coefficients: HS = numerator / (1 - z)^nvars
    polynomial: HilbertPolynomial
    exact_from: int  # HF(t) == polynomial(t) for every t >= exact_from

    def function(self, t: int) -> int:
        if t < 0:
            return 0
        n = self.nvars - 1
        return sum(c * math.comb(t - k + n, n) for k, c in enumerate(self.numerator) if t - k >= 0)

    def values(self, upto: int) -> list:
        return [self.function(t) for t in range(upto + 1)]


def _poly_mul(a: tuple, b: tuple) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _poly_add(a: tuple, b: tuple) -> tuple:
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    out = [x + y for x, y in zip(a, b)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


@lru_cache(maxsize=None)
def _numerator(gens: frozenset) -> tuple:
    """K-polynomial of R/I, by splitting on the largest variable present."""
    if not gens:
        return (1,)
    if any(not any(g) for g in gens):
        return (0,)
    nontrivial = [g for g in gens if sum(1 for e in g if e) > 1]
    if not nontrivial:
        out = (1,)
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, (1,) + (0,) * (d - 1) + (-1,))
        return out
    nv = len(next(iter(gens)))
    i = max(k for g in nontrivial for k in range(nv) if g[k])
    var = tuple(1 if k == i else 0 for k in range(nv))
    with_var = frozenset(minimalize(list(gens) + [var]))
    colon = frozenset(minimalize(tuple(e - 1 if k == i and e else e for k, e in enumerate(g)) for g in gens))
    # HS(R/I) = HS(R/(I + x_i)) + z * HS(R/(I : x_i))
    return _poly_add(_numerator(with_var), (0,) + _numerator(colon))


def hilbert_data(ideal: MonomialIdeal) -> HilbertData:
    """Hilbert function and polynomial of R/I."""
    nv = ideal.ring.nvars
    num = _numerator(frozenset(ideal.basis))
    start = max(0, len(num) - 1 - (nv - 1))
    if ideal.quasi_stable and not ideal.is_zero:
        start = max(start, regularity(ideal))
    partial = HilbertData(nv, num, HilbertPolynomial(), start)
    # Lagrange interpolation on nv + 1 points (degree of p is at most nv - 1)
    xs = list(range(start, start + nv + 1))
    ys = [partial.function(x) for x in xs]
    poly = HilbertPolynomial()
    for i, xi in enumerate(xs):
        basis = HilbertPolynomial([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * HilbertPolynomial([-xj, 1])
                denom *= xi - xj
        poly = poly + basis.scale(Fraction(ys[i]) / denom)
    return HilbertData(nv, num, poly, start)


def hilbert_polynomial(ideal: MonomialIdeal) -> HilbertPolynomial:
    return hilbert_data(ideal).polynomial


def gotzmann_representation(p: HilbertPolynomial) -> list:
    """Exponents a_1 >= ... >= a_r of p(z) = sum_i binom(z + a_i - i + 1, a_i)."""
    rest = p
    out: list = []
    while rest.coeffs:
        a = rest.degree
        lead = rest.coeffs[-1] * math.factorial(a)
        if lead <= 0 or lead.denominator != 1 or (out and a > out[-1]):
            raise ValueError(f"{p} is not an admissible Hilbert polynomial")
        i = len(out) + 1
        rest = rest - HilbertPolynomial.binomial(a - i + 1, a)
        out.append(a)
    return out


def gotzmann_number(p: HilbertPolynomial) -> int:
    return len(gotzmann_representation(p))


# ---------- Cohen-Macaulay data ----------

def is_cohen_macaulay(ideal: MonomialIdeal) -> bool:
    """R/I is CM iff a pure power of the minimal variable over the Pommaret basis lies in I."""
    terms = ideal.pommaret().terms
    nonunit = [t for t in terms if any(t)]
    if not nonunit:
        return True
    m = min(min_var(t) for t in nonunit)
    return any(g[m] > 0 and sum(g) == g[m] for g in ideal.basis)


@dataclass(frozen=True)
class FreeModuleDecomposition:
    k: int
    d: int
    multiplicities: tuple
    basis_terms: tuple


def free_module_decomposition(ideal: MonomialIdeal) -> FreeModuleDecomposition:
    """R/I as a free K[x0..xk]-module, k+1 the smallest variable dividing a minimal generator."""
    if not is_cohen_macaulay(ideal):
        raise ValueError(f"R/{ideal} is not Cohen-Macaulay")
    nv = ideal.ring.nvars
    used = [i for i in range(nv) if any(g[i] for g in ideal.basis)]
    if not used:
        raise ValueError("the zero ideal has no such decomposition")
    k = min(used) - 1
    upper = nv - (k + 1)
    found = []
    e = 0
    while True:
        layer = [(0,) * (k + 1) + u for u in terms_of_degree(upper, e)]
        layer = [t for t in layer if not ideal.contains(t)]
        if not layer:
            break
        found.append(layer)
        e += 1
    mult = tuple(len(x) for x in found)
    terms = tuple(t for layer in found for t in sorted(layer, key=lex_key, reverse=True))
    return FreeModuleDecomposition(k, len(found) - 1, mult, terms)
