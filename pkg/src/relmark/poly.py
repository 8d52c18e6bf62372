"""Exact sparse polynomials over Q or over a parameter polynomial ring.

Variables are ordered ``x0 < x1 < ... < xn``.  A term is a plain tuple of
exponents indexed by variable, so ``(0, 0, 1, 2)`` is ``x3^2*x2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

Term = tuple  # tuple[int, ...]

LEX = "lex"
DEGREVLEX = "degrevlex"
ORDERS = (LEX, DEGREVLEX)


class RingMismatch(ValueError):
    """Operands live in different rings or over different coefficient rings."""


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class RingContext:
    """Variable names of a polynomial ring, smallest variable first."""

    names: tuple
    descending_display: bool = True

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"variable names must be distinct: {self.names}")

    @classmethod
    def standard(cls, nvars: int, with_w: bool = False) -> "RingContext":
        """``x0..x{nvars-1}``, optionally with an extra lowest variable ``w``."""
        if nvars < 2:
            raise ValueError("need at least two variables")
        names = tuple(f"x{i}" for i in range(nvars - (1 if with_w else 0)))
        if with_w:
            names = ("w",) + names
        return cls(names)

    @classmethod
    def parameters(cls, count: int, prefix: str = "c") -> "RingContext":
        return cls(tuple(f"{prefix}{i}" for i in range(1, count + 1)), descending_display=False)

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def n(self) -> int:
        return len(self.names) - 1

    def one(self) -> Term:
        return (0,) * len(self.names)

    def var(self, i: int) -> Term:
        t = [0] * len(self.names)
        t[i] = 1
        return tuple(t)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ParseError(f"unknown variable {name!r}; ring has {', '.join(self.names)}") from None

    def format_term(self, t: Term) -> str:
        idx = range(len(t) - 1, -1, -1) if self.descending_display else range(len(t))
        parts = []
        for i in idx:
            e = t[i]
            if e == 1:
                parts.append(self.names[i])
            elif e > 1:
                parts.append(f"{self.names[i]}^{e}")
        return "*".join(parts) if parts else "1"

    def parse_term(self, text: str) -> Term:
        p = Poly.parse(text, self)
        if len(p.coeffs) != 1 or p.lc_any() != 1:
            raise ParseError(f"not a term: {text!r}")
        return next(iter(p.coeffs))


# ---------- term helpers ----------

def degree(t: Term) -> int:
    return sum(t)


def min_var(t: Term) -> int:
    """Index of the smallest variable dividing ``t``."""
    for i, e in enumerate(t):
        if e:
            return i
    raise ValueError("the term 1 has no minimal variable")


def multiplicative_variables(t: Term) -> range:
    return range(min_var(t) + 1)


def non_multiplicative_variables(t: Term) -> range:
    return range(min_var(t) + 1, len(t))


def divides(a: Term, b: Term) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mul_terms(a: Term, b: Term) -> Term:
    return tuple(x + y for x, y in zip(a, b))


def div_terms(a: Term, b: Term) -> Term:
    q = tuple(x - y for x, y in zip(a, b))
    if min(q, default=0) < 0:
        raise ValueError(f"{b} does not divide {a}")
    return q


def lcm_terms(a: Term, b: Term) -> Term:
    return tuple(max(x, y) for x, y in zip(a, b))


def times_var(t: Term, i: int, e: int = 1) -> Term:
    t = list(t)
    t[i] += e
    return tuple(t)


def in_cone(t: Term, head: Term) -> bool:
    """Whether ``t`` lies in the Pommaret cone of ``head``."""
    if not any(head):
        return True
    m = min_var(head)
    return t[m + 1:] == head[m + 1:] and t[m] >= head[m]


def lex_key(t: Term) -> tuple:
    return tuple(reversed(t))


def degrevlex_key(t: Term) -> tuple:
    return (sum(t),) + tuple(-e for e in t)


def order_key(order: str) -> Callable[[Term], tuple]:
    if order == LEX:
        return lex_key
    if order == DEGREVLEX:
        return degrevlex_key
    raise ValueError(f"unknown term order {order!r}")


def compare_terms(order: str, s: Term, t: Term) -> int:
    """-1, 0 or 1 as ``s`` is smaller than, equal to or larger than ``t``."""
    if len(s) != len(t):
        raise RingMismatch("terms from different rings")
    key = order_key(order)
    ks, kt = key(s), key(t)
    return (ks > kt) - (ks < kt)


def terms_of_degree(nvars: int, d: int) -> Iterator[Term]:
    """All terms of degree ``d`` in ``nvars`` variables."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in terms_of_degree(nvars - 1, d - e):
            yield rest + (e,)


# ---------- polynomials ----------

Coefficient = Union[Fraction, "Poly"]


def _is_number(x) -> bool:
    return isinstance(x, (int, Rational)) and not isinstance(x, bool)


class Poly:
    """Sparse polynomial: a map from terms to nonzero coefficients.

    Coefficients are ``Fraction`` when ``coeff_ring`` is None, otherwise they
    are ``Poly`` instances over ``coeff_ring`` with rational coefficients.
    Instances are treated as immutable.
    """

    __slots__ = ("ring", "coeff_ring", "coeffs", "_hash")

    def __init__(self, ring: RingContext, coeffs: Mapping | None = None, coeff_ring: RingContext | None = None):
        self.ring = ring
        self.coeff_ring = coeff_ring
        clean = {}
        if coeffs:
            for t, c in coeffs.items():
                t = tuple(t)
                if len(t) != ring.nvars:
                    raise RingMismatch(f"term {t} does not fit ring {ring.names}")
                c = self._coerce(c)
                if c:
                    clean[t] = c
        self.coeffs = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, coeffs, coeff_ring=None) -> "Poly":
        p = cls.__new__(cls)
        p.ring = ring
        p.coeff_ring = coeff_ring
        p.coeffs = coeffs
        p._hash = None
        return p

    def _coerce(self, c):
        if self.coeff_ring is None:
            if isinstance(c, Poly):
                raise RingMismatch("parameter coefficient in a rational polynomial")
            return c if isinstance(c, Fraction) else Fraction(c)
        if isinstance(c, Poly):
            if c.ring != self.coeff_ring or c.coeff_ring is not None:
                raise RingMismatch("coefficient from a different parameter ring")
            return c
        return Poly.constant(self.coeff_ring, c)

    # --- constructors ---

    @classmethod
    def zero(cls, ring, coeff_ring=None) -> "Poly":
        return cls._raw(ring, {}, coeff_ring)

    @classmethod
    def constant(cls, ring, c, coeff_ring=None) -> "Poly":
        return cls(ring, {ring.one(): c}, coeff_ring)

    @classmethod
    def monomial(cls, ring, t: Term, c=1, coeff_ring=None) -> "Poly":
        return cls(ring, {t: c}, coeff_ring)

    @classmethod
    def variable(cls, ring, i: int, coeff_ring=None) -> "Poly":
        return cls(ring, {ring.var(i): 1}, coeff_ring)

    def _one_coeff(self):
        return Fraction(1) if self.coeff_ring is None else Poly.constant(self.coeff_ring, 1)

    # --- basic queries ---

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list:
        return sorted(self.coeffs, key=degrevlex_key, reverse=True)

    def items(self, order: str = DEGREVLEX) -> list:
        key = order_key(order)
        return sorted(self.coeffs.items(), key=lambda kv: key(kv[0]), reverse=True)

    def coefficient(self, t: Term):
        c = self.coeffs.get(tuple(t))
        if c is None:
            return Fraction(0) if self.coeff_ring is None else Poly.zero(self.coeff_ring)
        return c

    def degree(self) -> int:
        return max((sum(t) for t in self.coeffs), default=-1)

    @property
    def homogeneous_degree(self) -> int | None:
        degs = {sum(t) for t in self.coeffs}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return len({sum(t) for t in self.coeffs}) <= 1

    def leading_term(self, order: str = DEGREVLEX) -> Term:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading term")
        return max(self.coeffs, key=order_key(order))

    def leading_coefficient(self, order: str = DEGREVLEX):
        return self.coeffs[self.leading_term(order)]

    def lc_any(self):
        return next(iter(self.coeffs.values()))

    def monic(self, order: str = DEGREVLEX) -> "Poly":
        if not self.coeffs:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def is_constant(self) -> bool:
        return all(not any(t) for t in self.coeffs)

    def constant_term(self):
        return self.coefficient(self.ring.one())

    def variables(self) -> set:
        return {i for t in self.coeffs for i, e in enumerate(t) if e}

    # --- arithmetic ---

    def _check(self, other: "Poly"):
        if other.ring != self.ring or other.coeff_ring != self.coeff_ring:
            raise RingMismatch("polynomials from different rings")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring == self.ring and other.coeff_ring == self.coeff_ring:
                return other
            if self.coeff_ring is not None and other.ring == self.coeff_ring and other.coeff_ring is None:
                return Poly.constant(self.ring, other, self.coeff_ring)
            raise RingMismatch("polynomials from different rings")
        if _is_number(other):
            return Poly.constant(self.ring, other, self.coeff_ring)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if len(other.coeffs) > len(self.coeffs):
            a, b = other.coeffs, self.coeffs
        else:
            a, b = self.coeffs, other.coeffs
        out = dict(a)
        for t, c in b.items():
            v = out.get(t)
            if v is None:
                out[t] = c
            else:
                v = v + c
                if v:
                    out[t] = v
                else:
                    del out[t]
        return Poly._raw(self.ring, out, self.coeff_ring)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.ring, {t: -c for t, c in self.coeffs.items()}, self.coeff_ring)

    def __sub__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for t, c in other.coeffs.items():
            v = out.get(t)
            if v is None:
                out[t] = -c
            else:
                v = v - c
                if v:
                    out[t] = v
                else:
                    del out[t]
        return Poly._raw(self.ring, out, self.coeff_ring)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        """Multiply every coefficient by ``c`` (a number or a coefficient-ring element)."""
        if self.coeff_ring is None:
            if isinstance(c, Poly):
                raise RingMismatch("cannot scale a rational polynomial by a parameter polynomial")
            c = Fraction(c)
        elif _is_number(c):
            c = Fraction(c)
        elif not (isinstance(c, Poly) and c.ring == self.coeff_ring and c.coeff_ring is None):
            raise RingMismatch("scalar from a different coefficient ring")
        if not c:
            return Poly.zero(self.ring, self.coeff_ring)
        out = {}
        for t, v in self.coeffs.items():
            w = v * c
            if w:
                out[t] = w
        return Poly._raw(self.ring, out, self.coeff_ring)

    def mul_term(self, t: Term, c=1) -> "Poly":
        """Multiply by the monomial ``c * x^t``."""
        p = self if c == 1 else self.scale(c)
        return Poly._raw(self.ring, {mul_terms(s, t): v for s, v in p.coeffs.items()}, self.coeff_ring)

    def __mul__(self, other) -> "Poly":
        if _is_number(other):
            return self.scale(other)
        if isinstance(other, Poly) and self.coeff_ring is not None and other.ring == self.coeff_ring \
                and other.coeff_ring is None:
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out = {}
        for s, a in self.coeffs.items():
            for t, b in other.coeffs.items():
                u = tuple(x + y for x, y in zip(s, t))
                v = out.get(u)
                w = a * b if v is None else v + a * b
                if w:
                    out[u] = w
                elif v is not None:
                    del out[u]
        return Poly._raw(self.ring, out, self.coeff_ring)

    def __rmul__(self, other) -> "Poly":
        if _is_number(other):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "Poly":
        result = Poly.constant(self.ring, 1, self.coeff_ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, c) -> "Poly":
        return self.scale(1 / Fraction(c))

    # --- equality / hashing ---

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.coeff_ring == other.coeff_ring and self.coeffs == other.coeffs
        if _is_number(other):
            if not other:
                return not self.coeffs
            return self.coeffs == {self.ring.one(): self._coerce(other)}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.coeffs.items())))
        return self._hash

    # --- transformations ---

    def map_coefficients(self, fn) -> "Poly":
        """Apply ``fn`` to every coefficient; the result has rational coefficients."""
        out = {}
        for t, c in self.coeffs.items():
            v = fn(c)
            if v:
                out[t] = Fraction(v)
        return Poly._raw(self.ring, out, None)

    def evaluate(self, point: Sequence | Mapping) -> Fraction:
        """Value at a rational point (for polynomials with rational coefficients)."""
        if self.coeff_ring is not None:
            raise RingMismatch("evaluate() needs rational coefficients; use specialize()")
        if isinstance(point, Mapping):
            vals = [Fraction(point.get(i, 0)) for i in range(self.ring.nvars)]
        else:
            vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for t, c in self.coeffs.items():
            v = c
            for x, e in zip(vals, t):
                if e:
                    v *= x ** e
                    if not v:
                        break
            total += v
        return total

    def specialize(self, point) -> "Poly":
        """Substitute rational values for the parameters of the coefficients."""
        if self.coeff_ring is None:
            return self
        return self.map_coefficients(lambda c: c.evaluate(point))

    def linear_part(self) -> dict:
        """Coefficients of the degree-one terms, keyed by variable index."""
        out = {}
        for t, c in self.coeffs.items():
            if sum(t) == 1:
                out[t.index(1)] = c
        return out

    def content_normalized(self, order: str = DEGREVLEX) -> "Poly":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if self.coeff_ring is not None:
            raise RingMismatch("content is defined for rational coefficients only")
        if not self.coeffs:
            return self
        from math import gcd, lcm

        den = 1
        for c in self.coeffs.values():
            den = lcm(den, c.denominator)
        g = 0
        for c in self.coeffs.values():
            g = gcd(g, (c * den).numerator)
        factor = Fraction(den, g)
        if self.leading_coefficient(order) < 0:
            factor = -factor
        return self.scale(factor)

    # --- text ---

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Poly({self.format()!r})"

    def format(self, order: str = DEGREVLEX) -> str:
        if not self.coeffs:
            return "0"
        out = []
        for t, c in self.items(order):
            sign, body = _format_monomial(self.ring, t, c)
            if not out:
                out.append(("-" if sign < 0 else "") + body)
            else:
                out.append((" - " if sign < 0 else " + ") + body)
        return "".join(out)

    @classmethod
    def parse(cls, text: str, ring: RingContext, coeff_ring: RingContext | None = None) -> "Poly":
        if coeff_ring is None:
            return _Parser(text, ring).parse()
        both = RingContext(ring.names + coeff_ring.names)
        flat = _Parser(text, both).parse()
        k = ring.nvars
        grouped: dict = {}
        for t, c in flat.coeffs.items():
            x, cpart = t[:k], t[k:]
            grouped.setdefault(x, {})[cpart] = c
        return cls(ring, {x: Poly(coeff_ring, d) for x, d in grouped.items()}, coeff_ring)


def _format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(ring: RingContext, t: Term, c) -> tuple:
    """Sign and body of ``c * x^t``."""
    tstr = ring.format_term(t)
    is_one = not any(t)
    if isinstance(c, Poly):
        if len(c.coeffs) == 1:
            (ct, cc), = c.coeffs.items()
            sign = -1 if cc < 0 else 1
            inner = _format_monomial(c.ring, ct, abs(cc))[1]
            if is_one:
                return sign, inner
            return sign, tstr if inner == "1" else f"{inner}*{tstr}"
        inner = c.format()
        return 1, f"({inner})" if is_one else f"({inner})*{tstr}"
    sign = -1 if c < 0 else 1
    a = abs(c)
    if is_one:
        return sign, _format_fraction(a)
    if a == 1:
        return sign, tstr
    return sign, f"{_format_fraction(a)}*{tstr}"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+\d*)|(\S))")


class _Parser:
    """Recursive-descent parser; ``*`` between factors is optional."""

    def __init__(self, text: str, ring: RingContext):
        self.ring = ring
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            num, name, sym = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("var", name))
            else:
                self.tokens.append(("sym", sym))
            pos = m.end()
        self.i = 0
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, sym):
        kind, val = self.take()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r} in {self.text!r}")

    def parse(self) -> Poly:
        if not self.tokens:
            return Poly.zero(self.ring)
        p = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"unexpected token {self.peek()[1]!r} in {self.text!r}")
        return p

    def expr(self) -> Poly:
        kind, val = self.peek()
        sign = 1
        if kind == "sym" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        p = self.product().scale(sign)
        while True:
            kind, val = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                q = self.product()
                p = p + q if val == "+" else p - q
            else:
                return p

    def product(self) -> Poly:
        p = self.power()
        while True:
            kind, val = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                p = p * self.power()
            elif kind == "sym" and val == "/":
                self.take()
                k, v = self.take()
                if k != "num" or v == 0:
                    raise ParseError(f"division only by nonzero integers in {self.text!r}")
                p = p.scale(Fraction(1, v))
            elif kind in ("num", "var") or (kind == "sym" and val == "("):
                p = p * self.power()
            else:
                return p

    def power(self) -> Poly:
        base = self.atom()
        kind, val = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            k, e = self.take()
            if k != "num":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            base = base ** e
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.constant(self.ring, val)
        if kind == "var":
            return Poly.variable(self.ring, self.ring.index(val))
        if kind == "sym" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        what = "end of input" if val is None else repr(val)
        raise ParseError(f"unexpected {what} in {self.text!r}")


def parse_poly_list(text: str, ring: RingContext) -> list:
    """Split on commas, semicolons or newlines outside parentheses and parse each piece."""
    pieces, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in ",;\n":
            pieces.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    pieces.append("".join(cur))
    return [Poly.parse(s, ring) for s in pieces if s.strip()]


def infer_nvars(text: str, minimum: int = 2) -> int:
    """Smallest standard ring ``x0..xn`` containing every ``x<i>`` mentioned in ``text``."""
    idx = [int(m) for m in re.findall(r"x(\d+)", text)]
    return max([minimum] + [i + 1 for i in idx])


def from_terms(ring: RingContext, terms: Iterable[Term]) -> Poly:
    return Poly(ring, {t: 1 for t in terms})
