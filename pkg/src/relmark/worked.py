"""Worked examples with known answers, runnable from the command line.

Each runner recomputes its quantities from scratch and compares them with
the published values.  Keys are the identifiers accepted by the
``paper-example`` subcommand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .coordinates import is_U_marked_set, quasi_stable_position
from .groebner import (
    buchberger,
    detect_coordinate_subspace,
    krull_dimension,
    multiplicity_zero_dim,
    tangent_dimension_at_origin,
)
from .lex import (
    QuotientContext,
    growth_count,
    is_lex_ideal,
    is_piecewise_lexsegment,
    lex_point,
    lex_segment,
    macaulay_lex_recognizer,
)
from .marked import MarkedSet, interleaved_reduce, is_marked_basis, is_relative_marked_basis, normal_form, reduce
from .monomial import HilbertPolynomial, MonomialIdeal, hilbert_polynomial, regularity, saturation, truncation
from .poly import Poly, RingContext, times_var
from .schemes import comparison_route, relative_scheme_ideal, relative_scheme_ideal_truncated


@dataclass
class Check:
    label: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def as_json(self) -> dict:
        return {"check": self.label, "expected": _jsonable(self.expected), "actual": _jsonable(self.actual),
                "ok": self.ok}


def _jsonable(x):
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    return str(x)


@dataclass
class WorkedReport:
    key: str
    title: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, label: str, expected, actual) -> None:
        self.checks.append(Check(label, expected, actual))

    def as_json(self) -> dict:
        return {"example": self.key, "title": self.title, "ok": self.ok,
                "checks": [c.as_json() for c in self.checks], "data": self.data}


def _fmt_terms(ring: RingContext, terms) -> list:
    return [ring.format_term(t) for t in terms]


def _xpow(ring: RingContext, i: int, e: int = 1):
    return times_var(ring.one(), i, e)


def _mul(*terms):
    return tuple(map(sum, zip(*terms)))


def _gen_strings(polys) -> set:
    return {p.format() for p in polys}


# ---------- individual examples ----------

def loops_between_marked_sets() -> WorkedReport:
    rep = WorkedReport("3.5", "interleaving two marked reductions loops")
    R = RingContext.standard(4)
    P = lambda s: Poly.parse(s, R)  # noqa: E731
    I = MonomialIdeal.parse("x3^2, x2^3", R)
    J = MonomialIdeal.parse("x3^2, x3x2, x2^3", R)
    rep.check("Pommaret basis of I", {"x3^2", "x3*x2^3", "x2^3"}, set(_fmt_terms(R, I.pommaret().terms)))
    rep.check("Pommaret basis of J", {"x3^2", "x3*x2", "x2^3"}, set(_fmt_terms(R, J.pommaret().terms)))
    F = MarkedSet([P("x3^2"), P("x3x2^3"), P("x2^3 - 3x3x2^2")], I)
    h = P("x3x2 - 4x2^2")
    H = MarkedSet([h], J, relative_to=I)
    G = MarkedSet([P("x3^2"), h, P("x2^3")], J)
    xh = h.mul_term(R.var(3))
    rep.check("x3*h reduced by H", P("x3^2x2 - 16x2^3"), reduce(H, xh))
    rep.check("x3*h reduced by F", P("-4x2^2x3"), reduce(F, xh))
    a = interleaved_reduce(F, H, P("x2^3"))
    rep.check("F then H on x2^3: outcome", "loop", a.kind)
    rep.check("F then H on x2^3: recurring value", P("12x2^3"), a.value)
    b = interleaved_reduce(H, F, P("x2^2x3"))
    rep.check("H then F on x2^2*x3: outcome", "loop", b.kind)
    rep.check("H then F on x2^2*x3: recurring value", P("12x2^2x3"), b.value)
    rep.check("F is a marked basis", True, is_marked_basis(F))
    rep.check("G is a marked basis", True, is_marked_basis(G))
    rep.check("H is a relative marked basis over I", True, is_relative_marked_basis(I, H))
    rep.check("normal form of x2^3 modulo (F)", P("3x3x2^2"), normal_form(F, P("x2^3")))
    S = relative_scheme_ideal(I, J)
    point = {k: (-4 if S.params.index[k][1] == R.parse_term("x2^2") else 0) for k in range(S.num_parameters)}
    rep.check("relative scheme ideal vanishes at H", True, S.vanishes_at(point))
    rep.data = {"relative_scheme_generators": [p.format() for p in S.polys]}
    return rep


def singular_point_two_components() -> WorkedReport:
    rep = WorkedReport("4.6", "relative marked scheme of dimension 2 with a singular lex-point")
    R = RingContext.standard(4)
    I = MonomialIdeal.parse("x3^2, x2^5", R)
    J = MonomialIdeal.parse("x3^2, x3x2, x3x1^2, x2^5", R)
    rep.check("Pommaret basis of J", {"x3^2", "x3*x2", "x3*x1^2", "x2^5"}, set(_fmt_terms(R, J.pommaret().terms)))
    rep.check("Pommaret basis of I", {"x3^2", "x3*x2^5", "x2^5"}, set(_fmt_terms(R, I.pommaret().terms)))
    S = relative_scheme_ideal_truncated(I, J, 2)
    rep.check("number of parameters", 20, S.num_parameters)
    C = S.params.ring
    printed = [
        "c1*x0^2 + c2*x0*x1 + c3*x1^2 + c4*x0*x2 + c5*x1*x2 + c6*x2^2 + c7*x0*x3 + c8*x1*x3 + x2*x3",
        "c9*x0^3 + c10*x0^2*x1 + c11*x0*x1^2 + c12*x1^3 + c13*x0^2*x2 + c14*x0*x1*x2 + c15*x1^2*x2"
        " + c16*x0*x2^2 + c17*x1*x2^2 + c18*x2^3 + c19*x0^2*x3 + c20*x0*x1*x3 + x1^2*x3",
    ]
    expected = [Poly.parse(s, R, C) for s in printed]
    got = list(S.generic.marked)
    rep.check("generic marked set", expected, got)
    rep.check("tail sizes", [8, 12], [len(f) - 1 for f in got])
    rep.check("tangent dimension at the origin", 7, tangent_dimension_at_origin(S.polys, S.num_parameters))
    gb = buchberger(S.polys, ring=C)
    rep.check("Krull dimension", 2, krull_dimension(gb))
    rep.check("parameters of the non-relative presentation", 50, comparison_route(I, J, 2).num_parameters)
    rep.check("Hilbert polynomial of R/J", HilbertPolynomial.parse("5z - 3"), hilbert_polynomial(J))
    Sq = QuotientContext(I)
    rep.check("J is a lex-ideal modulo I", True, is_lex_ideal(Sq, J))
    rep.check("J is not a lex-ideal in R", False, is_lex_ideal(QuotientContext(MonomialIdeal(R)), J))
    lp = lex_point(Sq, HilbertPolynomial.parse("5z - 3"))
    rep.check("lex-point for 5z - 3", J, lp.ideal if lp else None)
    rep.data = {"generators": len(S), "groebner_basis_size": len(gb)}
    return rep


def fat_point(n: int = 3, p: int = 3) -> WorkedReport:
    if n < 2 or p < 3:
        raise ValueError("needs n >= 2 and p >= 3")
    rep = WorkedReport("4.7", f"fat point of multiplicity n+1 (n={n}, p={p})")
    R = RingContext.standard(n + 1)
    I = MonomialIdeal(R, [_xpow(R, n, 2), _xpow(R, n - 1, p)])
    J = MonomialIdeal(R, [R.var(n), _xpow(R, n - 1, p)])
    S = relative_scheme_ideal_truncated(I, J, 0)
    rep.check("number of parameters", n, S.num_parameters)
    C = S.params.ring
    h = Poly.parse(" + ".join([f"c{i + 1}*x{i}" for i in range(n)] + [f"x{n}"]), R, C)
    rep.check("generic marked set", [h], list(S.generic.marked))
    square = _gen_strings(Poly.monomial(C, _mul(C.var(i), C.var(j))) for i in range(n) for j in range(i, n))
    rep.check("scheme ideal is the square of the maximal ideal", square, _gen_strings(S.polys))
    rep.check("tangent dimension at the origin", n, tangent_dimension_at_origin(S.polys, n))
    gb = buchberger(S.polys, ring=C)
    rep.check("Krull dimension", 0, krull_dimension(gb))
    rep.check("multiplicity", n + 1, multiplicity_zero_dim(gb))
    rep.check("parameters of the non-relative presentation", comb(n - 1 + p, p) + n - 1,
              comparison_route(I, J, 0).num_parameters)
    lp = lex_point(QuotientContext(I), hilbert_polynomial(J))
    rep.check("J is the lex-point", J, lp.ideal if lp else None)
    return rep


def marked_sets_in_quotients() -> WorkedReport:
    rep = WorkedReport("5.6/5.10", "marked sets modulo a quasi-stable ideal")
    R = RingContext.standard(3)
    I = MonomialIdeal.parse("x2^7", R)
    J = MonomialIdeal.parse("x1^2, x2^7", R)
    pj = ["x1^2"] + [f"x2^{a}*x1^2" if a > 1 else "x2*x1^2" for a in range(1, 7)] + ["x2^7"]
    rep.check("Pommaret basis of (x1^2, x2^7)", set(pj), set(_fmt_terms(R, J.pommaret().terms)))
    rep.check("{x0*x1 + x1^2} is U-marked", False, is_U_marked_set([R.parse_term("x1^2")], I))
    J7 = MonomialIdeal.parse("x1^7, x2^7", R)
    extra = {R.format_term(_mul(_xpow(R, 1, 7), _xpow(R, 2, a))) for a in range(1, 7)}
    rep.check("Pommaret basis of (x1^7, x2^7) contains x1^7*x2^a", True,
              extra <= set(_fmt_terms(R, J7.pommaret().terms)))
    rep.check("regularity of (x1^7, x2^7)", 13, regularity(J7))
    rep.check("{x0*x1^6 + x1^7} is U-marked", False, is_U_marked_set([R.parse_term("x1^7")], I))
    gb = buchberger([Poly.parse("x0x1^6 + x1^7", R), Poly.parse("x2^7", R)], ring=R)
    rep.check("degrevlex leading terms of (x0*x1^6 + x1^7, x2^7)", {"x1^7", "x2^7"},
              set(_fmt_terms(R, gb.leading_terms)))
    F = [Poly.parse("x1x2^6", R)]
    pos = quasi_stable_position(F, I, seed=0)
    rep.check("{x1*x2^6} needs no change of coordinates", True, pos.change.is_identity())
    rep.check("heads of {x1*x2^6}", ["x2^6*x1"], _fmt_terms(R, pos.heads))
    rep.check("{x1*x2^6} is U-marked", True, is_U_marked_set(pos.heads, I))
    Jt = MonomialIdeal.parse("x1x2^6, x2^7", R)
    rep.check("Pommaret basis of (x1*x2^6, x2^7)", {"x2^6*x1", "x2^7"}, set(_fmt_terms(R, Jt.pommaret().terms)))
    rep.check("regularity of (x1*x2^6, x2^7)", 7, regularity(Jt))
    return rep


def macaulay_lex_counterexamples() -> WorkedReport:
    rep = WorkedReport("6.5", "saturation and truncation do not preserve the Macaulay-Lex property")
    R = RingContext.standard(4)
    I = MonomialIdeal.parse("x3^2, x3x2^7, x3x2x1^7, x3x2x1^2x0^7", R)
    rep.check("family of I", "AbedelfatahB", macaulay_lex_recognizer(I).family)
    Isat = saturation(I)
    rep.check("saturation", MonomialIdeal.parse("x3^2, x3x2x1^2, x3x2^7", R), Isat)
    S = QuotientContext(Isat)
    rep.check("lex-segment of size 1 in degree 4", ["x3*x2^3"], _fmt_terms(R, lex_segment(S, 4, 1)))
    rep.check("growth of {x3*x1^3}", 2, growth_count(S, [R.parse_term("x3x1^3")]))
    rep.check("growth of {x3*x2^3}", 3, growth_count(S, [R.parse_term("x3x2^3")]))
    Rw = RingContext.standard(5, with_w=True)
    K = MonomialIdeal.parse("x3^2, x3x2^3, x3x2x1^3, x3x2x1^2x0^3", Rw)
    rep.check("family of the second ideal with an extra lowest variable", ("ExtensionOfKnown", "AbedelfatahB"),
              (macaulay_lex_recognizer(K).family, macaulay_lex_recognizer(K).inner))
    rep.check("regularity", 8, regularity(K))
    rep.check("x3*x2^2*x1^2*x0^3 is in the Pommaret basis", True,
              Rw.parse_term("x3x2^2x1^2x0^3") in K.pommaret().terms)
    res = is_piecewise_lexsegment(truncation(K, 8))
    rep.check("truncation at 8 is piecewise lexsegment", False, res.holds)
    rep.check("witness", ("x3*x2*x1^2*x0^4", "x3*x2^2*x1*x0^4"),
              tuple(_fmt_terms(Rw, res.witness)) if res.witness else None)
    return rep


def smooth_linear_family_i(n: int = 3, k: int = 2) -> WorkedReport:
    if n < 3 or k < 2:
        raise ValueError("needs n >= 3 and k >= 2")
    rep = WorkedReport("6.8i", f"smooth lex-point, linear scheme (n={n}, k={k})")
    R = RingContext.standard(n + 1)
    I = MonomialIdeal(R, [_xpow(R, n, k), _mul(_xpow(R, n, k - 1), R.var(n - 1))])
    J = MonomialIdeal(R, list(I.basis) + [_mul(_xpow(R, n, k - 1), R.var(n - 2))])
    S = relative_scheme_ideal_truncated(I, J)
    r = comb(n + k, n) - 3
    rep.check("number of parameters", r, S.num_parameters)
    cs = detect_coordinate_subspace(buchberger(S.polys, ring=S.ring))
    rep.check("coordinate subspace", True, cs.is_coordinate_subspace)
    rep.check("parameters set to zero", r - (n - 2), len(cs.fixed))
    rep.check("free parameters", n - 2, len(cs.free))
    rep.check("tangent dimension at the origin", n - 2, tangent_dimension_at_origin(S.polys, r))
    lp = lex_point(QuotientContext(I), hilbert_polynomial(J))
    rep.check("J is the lex-point", J, lp.ideal if lp else None)
    return rep


def smooth_linear_family_ii(n: int = 3) -> WorkedReport:
    if n < 3:
        raise ValueError("needs n >= 3")
    rep = WorkedReport("6.8ii", f"smooth lex-point modulo a square of a prime (n={n})")
    R = RingContext.standard(n + 1)
    xn, xm, xl = R.var(n), R.var(n - 1), R.var(n - 2)
    I = MonomialIdeal(R, [_mul(xn, xn), _mul(xn, xm), _mul(xm, xm)])
    J = MonomialIdeal(R, list(I.basis) + [_mul(xn, xl)])
    S = relative_scheme_ideal_truncated(I, J)
    cs = detect_coordinate_subspace(buchberger(S.polys, ring=S.ring))
    rep.check("coordinate subspace", True, cs.is_coordinate_subspace)
    rep.check("free parameters", 2 * n - 3, len(cs.free))
    rep.check("J is not a lex-ideal in R", False, is_lex_ideal(QuotientContext(MonomialIdeal(R)), J))
    lp = lex_point(QuotientContext(I), hilbert_polynomial(J))
    rep.check("J is the lex-point modulo I", J, lp.ideal if lp else None)
    rep.data = {"parameters": S.num_parameters}
    return rep


def singular_lex_point() -> WorkedReport:
    rep = WorkedReport("6.9", "singular lex-point with no common Pommaret terms")
    R = RingContext.standard(4)
    I = MonomialIdeal.parse("x3^3, x3^2x2", R)
    J = MonomialIdeal.parse("x3^2, x3x2, x3x1", R)
    rep.check("no common Pommaret terms", set(), set(I.pommaret().terms) & set(J.pommaret().terms))
    S = relative_scheme_ideal_truncated(I, J, 1)
    rep.check("number of parameters", 21, S.num_parameters)
    rep.check("Krull dimension", 2, krull_dimension(buchberger(S.polys, ring=S.ring)))
    rep.check("tangent dimension at the origin", 6, tangent_dimension_at_origin(S.polys, S.num_parameters))
    lp = lex_point(QuotientContext(I), hilbert_polynomial(J))
    rep.check("J is the lex-point", J, lp.ideal if lp else None)
    return rep


def smooth_non_lex_point() -> WorkedReport:
    rep = WorkedReport("6.10", "smooth point that is not the lex-point")
    R = RingContext.standard(4)
    I = MonomialIdeal.parse("x3^2", R)
    J = MonomialIdeal.parse("x3^2, x2^2", R)
    S = relative_scheme_ideal_truncated(I, J, 1)
    rep.check("number of parameters", 20, S.num_parameters)
    dim = krull_dimension(buchberger(S.polys, ring=S.ring))
    rep.check("Krull dimension", 8, dim)
    rep.check("tangent dimension at the origin", 8, tangent_dimension_at_origin(S.polys, S.num_parameters))
    rep.check("Hilbert polynomial of R/J", HilbertPolynomial.parse("4z"), hilbert_polynomial(J))
    rep.check("J is a lex-ideal modulo I", False, is_lex_ideal(QuotientContext(I), J))
    return rep


EXAMPLES = {
    "3.5": loops_between_marked_sets,
    "4.6": singular_point_two_components,
    "4.7": fat_point,
    "5.6": marked_sets_in_quotients,
    "5.10": marked_sets_in_quotients,
    "6.5": macaulay_lex_counterexamples,
    "6.8i": smooth_linear_family_i,
    "6.8ii": smooth_linear_family_ii,
    "6.9": singular_lex_point,
    "6.10": smooth_non_lex_point,
}


def run_example(key: str, n: int | None = None, p: int | None = None, k: int | None = None) -> WorkedReport:
    key = key.replace("(", "").replace(")", "")
    if key not in EXAMPLES:
        raise KeyError(f"unknown example {key!r}; choose from {', '.join(EXAMPLES)}")
    fn = EXAMPLES[key]
    kwargs = {}
    if key == "4.7":
        kwargs = {"n": n or 3, "p": p or 3}
    elif key == "6.8i":
        kwargs = {"n": n or 3, "k": k or 2}
    elif key == "6.8ii":
        kwargs = {"n": n or 3}
    return fn(**kwargs)
