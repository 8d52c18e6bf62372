"""Lex-segments and lex-ideals in quotients R/I by quasi-stable monomial ideals."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .monomial import (
    HilbertPolynomial,
    MonomialIdeal,
    gotzmann_number,
    hilbert_polynomial,
    is_quasi_stable,
    is_saturated,
    saturation,
)
from .poly import Term, lex_key, min_var, terms_of_degree, times_var


class QuotientContext:
    """The quotient S = R/I for a quasi-stable monomial ideal I."""

    def __init__(self, ideal: MonomialIdeal):
        if not is_quasi_stable(ideal):
            raise ValueError(f"{ideal} is not quasi-stable")
        self.ideal = ideal
        self.ring = ideal.ring
        self._hp = None

    @property
    def pommaret(self):
        return self.ideal.pommaret()

    @property
    def regularity(self) -> int:
        return self.pommaret.regularity if self.ideal.basis else 0

    @property
    def hilbert_polynomial(self) -> HilbertPolynomial:
        if self._hp is None:
            self._hp = hilbert_polynomial(self.ideal)
        return self._hp

    def free_terms_lex(self, d: int) -> list:
        """Terms of degree d outside I, lex-largest first."""
        return sorted(self.ideal.free_terms(d), key=lex_key, reverse=True)

    def is_free(self, t: Term) -> bool:
        return not self.ideal.contains(t)


def lex_segment(S: QuotientContext, d: int, count: int) -> list:
    """The ``count`` lex-largest terms of degree ``d`` outside I."""
    free = S.free_terms_lex(d)
    if count < 0 or count > len(free):
        raise ValueError(f"asked for {count} terms but degree {d} has {len(free)} free terms")
    return free[:count]


def is_lex_segment(S: QuotientContext, W: Iterable[Term]) -> bool:
    W = set(W)
    if not W:
        return True
    degs = {sum(t) for t in W}
    if len(degs) != 1:
        return False
    d = degs.pop()
    if any(not S.is_free(t) for t in W):
        return False
    return set(S.free_terms_lex(d)[:len(W)]) == W


def growth_count(S: QuotientContext, W: Iterable[Term]) -> int:
    """Number of terms outside I among the products x_i * w, w in W."""
    out = set()
    for w in W:
        for i in range(len(w)):
            u = times_var(w, i)
            if S.is_free(u):
                out.add(u)
    return len(out)


def multiply_segment(S: QuotientContext, W: Iterable[Term]) -> set:
    return {u for w in W for i in range(len(w)) if S.is_free(u := times_var(w, i))}


@dataclass
class LexIdealInS:
    """A lex-ideal of S given by the ideal J = (B_U + B_I) of R."""

    quotient: QuotientContext
    ideal: MonomialIdeal

    @property
    def generators(self) -> list:
        """Minimal generators of J that are not in I."""
        return [g for g in self.ideal.display_basis() if self.quotient.is_free(g)]

    def __str__(self) -> str:
        return str(self.ideal)


def _check_degree(S: QuotientContext, J: MonomialIdeal) -> int:
    bound = max(J.max_degree(), S.ideal.max_degree(), S.regularity)
    if is_quasi_stable(J):
        bound = max(bound, J.pommaret().regularity)
    return bound + 1


def lex_violation(S: QuotientContext, U: MonomialIdeal):
    """First (degree, missing term, present term) breaking the lex-segment property, or None."""
    J = U.sum(S.ideal)
    for d in range(0, _check_degree(S, J) + 1):
        seen_out = None
        for t in S.free_terms_lex(d):
            if J.contains(t):
                if seen_out is not None:
                    return d, seen_out, t
            elif seen_out is None:
                seen_out = t
    return None


def is_lex_ideal(S: QuotientContext, U: MonomialIdeal) -> bool:
    """Whether the terms of U outside I form a lex-segment in every degree.

    Degrees are checked up to one past the largest generator degree and the
    regularities involved; above that, multiplying a lex-segment by the
    variables gives again a lex-segment.
    """
    return lex_violation(S, U) is None


def lex_point(S: QuotientContext, p: HilbertPolynomial) -> LexIdealInS | None:
    """Lex-ideal of S with Hilbert polynomial ``p``, or None when the construction fails.

    Takes r = max(Gotzmann number of p, reg I), the p~(r) - p(r) lex-largest
    free terms W of degree r, and saturates (W + B_I).  The Hilbert
    polynomial of the result is verified.
    """
    if not is_saturated(S.ideal):
        raise ValueError("lex_point needs a saturated ideal")
    try:
        r = max(gotzmann_number(p), S.regularity)
    except ValueError:
        return None
    free = S.free_terms_lex(r)
    count = len(free) - p(r)
    if count < 0 or count > len(free) or count.denominator != 1:
        return None
    W = free[:int(count)]
    J = MonomialIdeal(S.ring, list(W) + list(S.ideal.basis))
    if not is_quasi_stable(J):
        return None
    J = saturation(J)
    if hilbert_polynomial(J) != p:
        return None
    return LexIdealInS(S, J)


# ---------- Macaulay-Lex families ----------

CLEMENTS_LINDSTROM = "ClementsLindstrom"
ABEDELFATAH_A = "AbedelfatahA"
ABEDELFATAH_B = "AbedelfatahB"
MERMIN = "MerminRegularSequence"
EXTENSION = "ExtensionOfKnown"
UNKNOWN = "Unknown"


@dataclass
class MLRecognition:
    family: str
    inner: str | None = None  # family matched in the subring, for extensions
    lowest_variable: int = 0
    data: dict = field(default_factory=dict)

    def as_json(self) -> dict:
        out = {"family": self.family}
        if self.inner:
            out["inner_family"] = self.inner
            out["subring_lowest_variable"] = self.lowest_variable
        if self.data:
            out["exponents"] = self.data
        return out


def _pure_power(t: Term):
    nz = [(i, e) for i, e in enumerate(t) if e]
    return nz[0] if len(nz) == 1 else None


def _named(data: dict, names: tuple) -> dict:
    """Replace variable indices in exponent labels by variable names."""
    out = {}
    for k, v in data.items():
        if k[1:].isdigit():
            out[f"{k[0]}[{names[int(k[1:])]}]"] = v
        else:
            out[k] = v
    return out


def _match_clements_lindstrom(gens: list, n: int):
    powers = [_pure_power(g) for g in gens]
    if any(p is None for p in powers):
        return None
    d = dict(powers)
    k = len(d)
    if sorted(d) != list(range(n - k + 1, n + 1)):
        return None
    seq = [d[i] for i in range(n, n - k, -1)]
    if any(a > b for a, b in zip(seq, seq[1:])):
        return None
    return {f"d{i}": d[i] for i in range(n, n - k, -1)}


def _by_min_var(gens: list, n: int, m: int):
    """Generators indexed by their smallest variable, one for each of x_m..x_n."""
    table = {}
    for g in gens:
        j = min_var(g)
        if j in table:
            return None
        table[j] = g
    if sorted(table) != list(range(m, n + 1)):
        return None
    return table


def _match_abedelfatah_a(gens: list, n: int, m: int):
    table = _by_min_var(gens, n, m)
    if table is None:
        return None
    top = _pure_power(table[n])
    if top is None or top[0] != n:
        return None
    e = {n: top[1]}
    t_n = None
    for j in range(n - 1, m - 1, -1):
        g = table[j]
        if any(g[i] for i in range(len(g)) if i not in (n, j)):
            return None
        if t_n is None:
            t_n = g[n]
        elif g[n] != t_n:
            return None
        e[j] = g[j]
    if t_n is None or not (t_n < e[n]) or e[n] < 2:
        return None
    seq = [e[j] for j in range(n, m - 1, -1)]
    if any(a > b for a, b in zip(seq, seq[1:])):
        return None
    return {"t": t_n, **{f"e{j}": e[j] for j in range(n, m - 1, -1)}}


def _match_abedelfatah_b(gens: list, n: int, m: int):
    if n - m < 1:
        return None
    table = _by_min_var(gens, n, m)
    if table is None:
        return None
    top = _pure_power(table[n])
    if top is None or top[0] != n:
        return None
    e = {n: top[1]}
    t: dict = {}
    for j in range(n - 1, m - 1, -1):
        g = table[j]
        if g[n] != e[n] - 1:
            return None
        e[j] = g[j]
        for i in range(j + 1, n):
            if i in t:
                if g[i] != t[i]:
                    return None
            else:
                t[i] = g[i]
        if any(g[i] for i in range(j)):
            return None
    if e[n] < 2 or any(t[i] >= e[i] for i in t):
        return None
    seq = [e[j] for j in range(n, m - 1, -1)]
    if any(a > b for a, b in zip(seq, seq[1:])):
        return None
    return {**{f"e{j}": e[j] for j in range(n, m - 1, -1)}, **{f"t{i}": t[i] for i in sorted(t, reverse=True)}}


def _match_mermin(gens: list, n: int):
    pure = []
    other = []
    for g in gens:
        p = _pure_power(g)
        (pure if p else other).append(p or g)
    if len(other) != 1:
        return None
    g = other[0]
    nz = [(i, e) for i, e in enumerate(g) if e]
    if len(nz) != 2:
        return None
    (i, ei), (r, er) = nz
    if ei != 1:
        return None
    d = dict(pure)
    k = len(d)
    if sorted(d) != list(range(r + 1, n + 1)) or k != n - r:
        return None
    seq = [d[j] for j in range(n, r, -1)] + [er + 1]
    if any(a > b for a, b in zip(seq, seq[1:])):
        return None
    return {**{f"e{j}": d[j] for j in range(n, r, -1)}, f"e{r}": er + 1, "i": i}


def macaulay_lex_recognizer(I: MonomialIdeal) -> MLRecognition:
    """Match I against known Macaulay-Lex families.

    A negative answer is ``Unknown``, never a proof that I is not
    Macaulay-Lex.  Families whose pattern runs down to a variable above x0,
    with the lower variables unused, are reported as extensions of the
    family matched in the smaller ring.
    """
    gens = list(I.basis)
    n = I.ring.nvars - 1
    names = I.ring.names
    if not gens:
        return MLRecognition(CLEMENTS_LINDSTROM, data={})
    if any(not any(g) for g in gens):
        return MLRecognition(UNKNOWN)
    d = _match_clements_lindstrom(gens, n)
    if d is not None:
        return MLRecognition(CLEMENTS_LINDSTROM, data=_named(d, names))
    m = min(min_var(g) for g in gens)
    for name, fn in ((ABEDELFATAH_A, _match_abedelfatah_a), (ABEDELFATAH_B, _match_abedelfatah_b)):
        d = fn(gens, n, m)
        if d is not None:
            if m == 0:
                return MLRecognition(name, data=_named(d, names))
            return MLRecognition(EXTENSION, inner=name, lowest_variable=m, data=_named(d, names))
    d = _match_mermin(gens, n)
    if d is not None:
        d["i"] = names[d["i"]]
        return MLRecognition(MERMIN, data=_named(d, names))
    return MLRecognition(UNKNOWN)


# ---------- piecewise lexsegment ----------

@dataclass
class PiecewiseLexResult:
    holds: bool
    witness: tuple | None = None  # (a in I, b not in I)
    degree: int | None = None


def _elementary_moves(a: Term):
    """Terms x_j * a / x_i with i < j that keep the smallest variable of a."""
    m = min_var(a)
    for i in range(m, len(a)):
        if not a[i] or (i == m and a[i] == 1):
            continue
        for j in range(i + 1, len(a)):
            b = list(a)
            b[i] -= 1
            b[j] += 1
            yield tuple(b)


def is_piecewise_lexsegment(I: MonomialIdeal, upto: int | None = None) -> PiecewiseLexResult:
    """Check that in each degree the terms of I with a given smallest variable form a lex-segment.

    That is: for a in I and b of the same degree with min(b) = min(a) and b
    lex-larger than a, b must lie in I.  Degrees run from the initial degree
    to ``upto`` (default: one past the largest generator degree).  Terms a
    are scanned by smallest variable from the top variable down and, within
    that, by increasing lex order; for each a the elementary moves
    x_j * a / x_i are tried before the remaining candidates b.
    """
    if not I.basis:
        return PiecewiseLexResult(True)
    top = I.max_degree() + 1 if upto is None else upto
    nv = I.ring.nvars
    for d in range(min(sum(g) for g in I.basis), top + 1):
        slice_terms = sorted(terms_of_degree(nv, d), key=lex_key)
        inside = [t for t in slice_terms if I.contains(t)]
        for m in range(nv - 1, -1, -1):
            for a in inside:
                if min_var(a) != m:
                    continue
                for b in _elementary_moves(a):
                    if not I.contains(b):
                        return PiecewiseLexResult(False, (a, b), d)
                ka = lex_key(a)
                for b in slice_terms:
                    if lex_key(b) > ka and min_var(b) == m and not I.contains(b):
                        return PiecewiseLexResult(False, (a, b), d)
    return PiecewiseLexResult(True)


@dataclass
class GrowthViolation:
    term: Term
    term_growth: int
    segment: list
    segment_growth: int


def singleton_growth_violation(S: QuotientContext, max_degree: int | None = None) -> GrowthViolation | None:
    """A free term whose multiples are fewer than those of the lex-largest free term of its degree.

    Such a term shows that no lex-ideal of S has the Hilbert function of the
    ideal it generates, so S is not Macaulay-Lex.  Degrees 1..max_degree are
    searched (default: one past the regularity of I).
    """
    top = S.regularity + 1 if max_degree is None else max_degree
    for d in range(1, top + 1):
        free = S.free_terms_lex(d)
        if not free:
            continue
        seg = free[:1]
        g_seg = growth_count(S, seg)
        for u in reversed(free):
            g = growth_count(S, [u])
            if g < g_seg:
                return GrowthViolation(u, g, seg, g_seg)
    return None
