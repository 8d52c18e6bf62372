"""Changes of the lower variables, autoreduction, and search for quasi-stable position."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import rref
from .monomial import MonomialIdeal, is_quasi_stable, truncation
from .poly import Poly, Term, degrevlex_key, times_var


class SingularChange(ValueError):
    pass


class PositionNotFound(RuntimeError):
    """No tried change of coordinates put the set in quasi-stable position."""


def lower_block_size(ideal: MonomialIdeal) -> int:
    """k such that x_{k+1}..x_n are the variables dividing minimal generators of the ideal."""
    used = [i for g in ideal.basis for i, e in enumerate(g) if e]
    if not used:
        return ideal.ring.nvars - 1
    return min(used) - 1


@dataclass(frozen=True)
class LowerTriangularChange:
    """x_j -> sum_{t<=k} g[j][t] x_t for j <= k; x_{k+1}..x_n fixed.

    The name follows the block shape of the full (n+1)x(n+1) matrix: only
    the upper-left (k+1)x(k+1) block differs from the identity.
    """

    nvars: int
    matrix: tuple  # (k+1) rows of k+1 Fractions

    def __post_init__(self):
        k1 = len(self.matrix)
        if k1 > self.nvars or any(len(r) != k1 for r in self.matrix):
            raise ValueError("matrix must be square and fit the ring")
        if k1 and len(rref([list(r) for r in self.matrix])[1]) < k1:
            raise SingularChange("matrix is not invertible")

    @classmethod
    def identity(cls, nvars: int, k: int) -> "LowerTriangularChange":
        return cls(nvars, tuple(tuple(Fraction(int(i == j)) for j in range(k + 1)) for i in range(k + 1)))

    @classmethod
    def from_rows(cls, nvars: int, rows: Sequence[Sequence]) -> "LowerTriangularChange":
        return cls(nvars, tuple(tuple(Fraction(x) for x in r) for r in rows))

    @property
    def k(self) -> int:
        return len(self.matrix) - 1

    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == (i == j) for i in range(self.k + 1) for j in range(self.k + 1))

    def inverse(self) -> "LowerTriangularChange":
        k1 = self.k + 1
        aug = [list(self.matrix[i]) + [Fraction(int(i == j)) for j in range(k1)] for i in range(k1)]
        rows, piv = rref(aug)
        return LowerTriangularChange(self.nvars, tuple(tuple(r[k1:]) for r in rows))

    def image_of_variable(self, ring, j: int) -> Poly:
        if j > self.k:
            return Poly.variable(ring, j)
        return Poly(ring, {ring.var(t): self.matrix[j][t] for t in range(self.k + 1)})

    def as_json(self) -> list:
        return [[str(x) for x in r] for r in self.matrix]


def apply_change(g: LowerTriangularChange, p: Poly, ideal: MonomialIdeal | None = None) -> Poly:
    """Substitute the change into ``p`` and drop the terms lying in ``ideal``."""
    ring = p.ring
    images = [g.image_of_variable(ring, j) for j in range(ring.nvars)]
    powers: dict = {}

    def power(j: int, e: int) -> Poly:
        key = (j, e)
        if key not in powers:
            powers[key] = images[j] ** e
        return powers[key]

    out = Poly.zero(ring)
    for t, c in p.coeffs.items():
        term = Poly.constant(ring, c)
        for j, e in enumerate(t):
            if e:
                if j > g.k:
                    term = term.mul_term(times_var(ring.one(), j, e))
                else:
                    term = term * power(j, e)
        out = out + term
    if ideal is not None:
        out = Poly(ring, {t: c for t, c in out.coeffs.items() if not ideal.contains(t)})
    return out


def reduce_mod_monomial(p: Poly, ideal: MonomialIdeal) -> Poly:
    return Poly(p.ring, {t: c for t, c in p.coeffs.items() if not ideal.contains(t)})


@dataclass
class Autoreduced:
    polys: list  # monic on their heads, tails avoid every head
    heads: list

    def __len__(self) -> int:
        return len(self.polys)


def autoreduce(F: Sequence[Poly], ideal: MonomialIdeal | None = None) -> Autoreduced:
    """Row-reduce a set of degree-q polynomials with columns in decreasing degrevlex order.

    Terms lying in ``ideal`` are dropped first.  Pivot terms become heads with
    coefficient 1; zero rows disappear.
    """
    F = [reduce_mod_monomial(f, ideal) if ideal is not None else f for f in F]
    F = [f for f in F if f]
    if not F:
        return Autoreduced([], [])
    ring = F[0].ring
    degs = {f.homogeneous_degree for f in F}
    if len(degs) != 1 or None in degs:
        raise ValueError("autoreduce needs homogeneous polynomials of a single degree")
    cols = sorted({t for f in F for t in f.coeffs}, key=degrevlex_key, reverse=True)
    rows = [[f.coefficient(t) for t in cols] for f in F]
    red, piv = rref(rows)
    polys = [Poly(ring, {cols[j]: v for j, v in enumerate(r) if v}) for r in red]
    return Autoreduced(polys, [cols[j] for j in piv])


def heads_ideal(heads: Sequence[Term], ideal: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(ideal.ring, list(heads) + list(ideal.basis))


def is_quasi_stable_in_quotient(heads: Sequence[Term], ideal: MonomialIdeal) -> bool:
    """The ideal generated by ``heads`` in R/I is quasi-stable: (heads + B_I) is quasi-stable in R."""
    return is_quasi_stable(heads_ideal(heads, ideal))


def is_U_marked_set(heads: Sequence[Term], ideal: MonomialIdeal) -> bool:
    """Heads are exactly the Pommaret terms of J = (heads + B_I) outside the Pommaret basis of I."""
    J = heads_ideal(heads, ideal)
    if not is_quasi_stable(J):
        return False
    expected = set(J.pommaret().terms) - set(ideal.pommaret().terms)
    return set(heads) == expected


def high_degree_heads_coincide(J: MonomialIdeal, I: MonomialIdeal, q: int) -> bool:
    """For q >= max(reg J, reg I): minimal generators of J_{>=q} outside I_{>=q} equal P(J_{>=q}) minus P(I_{>=q})."""
    Jq, Iq = truncation(J, q), truncation(I, q)
    lhs = set(Jq.basis) - set(Iq.basis)
    rhs = set(Jq.pommaret().terms) - set(Iq.pommaret().terms)
    return lhs == rhs


@dataclass
class QSPosition:
    change: LowerTriangularChange
    marked: Autoreduced
    ideal: MonomialIdeal  # (heads + B_I)
    tries: int
    bound: int

    @property
    def heads(self) -> list:
        return self.marked.heads


def _random_change(nvars: int, k: int, rng: random.Random, bound: int) -> LowerTriangularChange | None:
    rows = [[rng.randint(-bound, bound) for _ in range(k + 1)] for _ in range(k + 1)]
    try:
        return LowerTriangularChange.from_rows(nvars, rows)
    except SingularChange:
        return None


def quasi_stable_position(F: Sequence[Poly], ideal: MonomialIdeal, seed: int = 0, max_tries: int = 200,
                          double_every: int = 20, start_bound: int = 3) -> QSPosition:
    """Search for a change of x0..xk after which the autoreduced heads are quasi-stable modulo ``ideal``.

    The identity is tried first.  Later tries draw integer entries uniformly
    from [-B, B], starting at B = ``start_bound`` and doubling every
    ``double_every`` failures; try i uses its own generator seeded from
    (seed, i), so results are reproducible.
    """
    F = list(F)
    if not F:
        raise ValueError("empty input set")
    ring = F[0].ring
    k = lower_block_size(ideal)
    bound = start_bound
    for attempt in range(max_tries):
        if attempt == 0:
            g = LowerTriangularChange.identity(ring.nvars, k)
        else:
            if attempt % double_every == 0:
                bound *= 2
            g = _random_change(ring.nvars, k, random.Random(f"{seed}:{attempt}"), bound)
            if g is None:
                continue
        moved = [apply_change(g, f, ideal) for f in F]
        auto = autoreduce(moved, ideal)
        if auto.heads and is_quasi_stable_in_quotient(auto.heads, ideal):
            return QSPosition(g, auto, heads_ideal(auto.heads, ideal), attempt + 1, bound)
    raise PositionNotFound(f"no quasi-stable position after {max_tries} tries (seed {seed}, last bound {bound})")
