"""Twisted correlators from the quantized Riemann-Roch operator.

This path never builds a graph.  The operator

    O = sum_{m>=1} (a_m z^m)^,    a_m = sum_i (-1)^m / (m(m+1)) w_i^(-m) A^i_{m+1}

is applied to the BG potential as the time-1 flow of dF/ds = e^(-F) O e^F,
where F = log D.  Writing F^(j) for the j-th s-derivative at s = 0,

    F^(j+1) = V F^(j) + (hbar/2) sum P (d d F^(j) + sum_i C(j,i) dF^(i) dF^(j-i)),

and F^tw = sum_j F^(j) / j!.  Here V is the first-order part (variable shift
a -> a + m and the dilaton-shift constant term) and P the second-order
coefficients.  Everything is kept in correlator form: the value at a key is
the derivative of F at the origin, so no exponentials are ever expanded.

Grading: with W(g, K) = sum a - |K| - 3g + 3, every BG correlator has W = 0
and every application of the m-component lowers W by m.  Hence F^(j) vanishes
at keys with W > -j, which both prunes the recursion and makes the Taylor
series in s finite at each key.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import product
from math import comb, factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from orbigw.bgpotential import TruncatedPotential, bg_log_potential, multiset_automorphisms
from orbigw.exactalg import CycRational, PuiseuxPoly, bernoulli_eval
from orbigw.groupchar import OrbifoldData

Variable = Tuple[int, int]  # (character index, descendant a)
Key = Tuple[Variable, ...]


class OracleError(RuntimeError):
    """The oracle could not produce a trustworthy value (bounds too tight or no stabilization)."""


def e_matrix(orb: OrbifoldData, i: int, m: int) -> List[List[object]]:
    """(E^i_m)^alpha_beta = (1/|G|) sum_h chi_alpha(h^-1) B_m(c_i(h)) chi_beta(h), as CycRationals."""
    n = orb.exponent
    inv = mpq(1, orb.order)
    rows = []
    for ga in orb.characters:
        row = []
        for gb in orb.characters:
            acc = None
            for h in orb.elements:
                b = bernoulli_eval(m, orb.c(i, h))
                if not b:
                    continue
                t = (orb.pairing(ga, orb.inverse(h)) + orb.pairing(gb, h)) % n
                term = CycRational.root_of_unity(n, t) * (b * inv)
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else orb.cyc(0))
        rows.append(row)
    return rows


def _transpose(mat):
    return [list(col) for col in zip(*mat)]


@dataclass
class QuantizedOperator:
    """The operator sum_{m=1}^{m_max} (a_m z^m)^ for one orbifold.

    ``e_matrices[(i, m)]`` is E^i_m for 2 <= m <= m_max + 1.  ``a[m][alpha][beta]``
    is the Lie-algebra matrix in the same row/column convention as R(z), so
    R(z) = exp(sum_m a_m z^m); it is the transpose of sum_i s-weight * E^i_{m+1}.
    """

    orb: OrbifoldData
    m_max: int
    depth: int
    e_matrices: Dict[Tuple[int, int], List[List[object]]]
    a: Dict[int, List[List[PuiseuxPoly]]]
    dilaton: Dict[int, List[PuiseuxPoly]] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return all(not x for mat in self.a.values() for row in mat for x in row)


def s_weight(orb: OrbifoldData, i: int, m: int) -> PuiseuxPoly:
    """s^i_m / (m+1)! = (-1)^m w_i^(-m) / (m(m+1))."""
    return PuiseuxPoly.variable(orb.r, orb.exponent, i, -m) * mpq((-1) ** m, m * (m + 1))


def check_adjointness(orb: OrbifoldData, mat, m: int) -> bool:
    """E_m is self-adjoint for even m and anti-self-adjoint for odd m >= 3 under the
    BG pairing, which is a multiple of the identity in the canonical basis."""
    sign = 1 if m % 2 == 0 else -1
    size = len(mat)
    return all(mat[b][a] == mat[a][b] * sign for a in range(size) for b in range(size))


def build_operator(orb: OrbifoldData, m_max: int, depth: Optional[int] = None) -> QuantizedOperator:
    """Materialize all E-matrices and s-weights for m = 1..m_max and verify the
    adjointness pattern.  ``depth`` is the number of Taylor terms J (defaults to m_max)."""
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    depth = m_max if depth is None else depth
    size = len(orb.characters)
    e_mats = {}
    a: Dict[int, List[List[PuiseuxPoly]]] = {}
    for m in range(1, m_max + 1):
        acc = [[PuiseuxPoly.zero(orb.r, orb.exponent) for _ in range(size)] for _ in range(size)]
        for i in range(orb.r):
            mat = e_matrix(orb, i, m + 1)
            if not check_adjointness(orb, mat, m + 1):
                raise AssertionError(f"adjointness fails for E^{i}_{m + 1}")
            e_mats[(i, m + 1)] = mat
            weight = s_weight(orb, i, m)
            t = _transpose(mat)
            for al in range(size):
                for be in range(size):
                    if not t[al][be].is_zero():
                        acc[al][be] = acc[al][be] + weight * t[al][be]
        a[m] = acc
    op = QuantizedOperator(orb=orb, m_max=m_max, depth=depth, e_matrices=e_mats, a=a)
    for m, mat in a.items():
        zero = PuiseuxPoly.zero(orb.r, orb.exponent)
        cols = []
        for al in range(size):
            s = zero
            for be in range(size):
                s = s + mat[al][be]
            cols.append(s)
        op.dilaton[m] = cols
    return op


def zero_operator(orb: OrbifoldData) -> QuantizedOperator:
    return build_operator(orb, 0, 0)


def weight_grading(g: int, key: Key) -> int:
    return sum(a for _, a in key) - len(key) - 3 * g + 3


def required_bounds(g: int, n: int) -> Tuple[int, int, int]:
    """Input BG bounds that suffice for every key of genus <= g with <= n variables."""
    depth = max(3 * g - 3 + n, 0)
    n_in = n + 2 * depth
    a_in = max(3 * g - 3 + n_in, 0)
    return (g, n_in, a_in)


def _insert(key: Key, *variables: Variable) -> Key:
    return tuple(sorted(key + variables))


class TwistedPotential(TruncatedPotential):
    """log D^tw, evaluated lazily key by key.

    ``coefficients`` fills in as keys are requested.  Values are computed with
    the Taylor series truncated at J = operator.depth, and each extraction also
    checks that the terms J+1 and J+2 vanish at the key.
    """

    def __init__(self, operator: QuantizedOperator, source: TruncatedPotential, bounds):
        super().__init__(bounds=tuple(bounds), coefficients={})
        self.operator = operator
        self.source = source
        self.orb = operator.orb
        self._memo: Dict[Tuple[int, int, Key], PuiseuxPoly] = {}
        self._lock = threading.RLock()
        self._zero = PuiseuxPoly.zero(self.orb.r, self.orb.exponent)
        self._sq = mpq(self.orb.order) ** 2

    # -- input ------------------------------------------------------------
    def _base(self, g: int, key: Key) -> PuiseuxPoly:
        if g < 0:
            return self._zero
        if not self.source.in_bounds(g, key):
            raise OracleError(f"input potential lacks (g={g}, {key}); bounds {self.source.bounds} too tight")
        value = self.source.correlator(g, key)
        if not value:
            return self._zero
        return PuiseuxPoly.constant(self.orb.r, self.orb.exponent, value)

    # -- recursion ----------------------------------------------------------
    def term(self, j: int, g: int, key: Key) -> PuiseuxPoly:
        """Correlator of F^(j) at (g, key)."""
        if g < 0 or j < 0 or weight_grading(g, key) > -j:
            return self._zero
        mk = (j, g, key)
        hit = self._memo.get(mk)
        if hit is not None:
            return hit
        value = self._base(g, key) if j == 0 else self._step(j - 1, g, key)
        with self._lock:
            self._memo.setdefault(mk, value)
        return value

    def _step(self, j: int, g: int, key: Key) -> PuiseuxPoly:
        """Correlator of F^(j+1) at (g, key)."""
        op = self.operator
        size = len(self.orb.characters)
        acc = self._zero
        budget = -weight_grading(g, key) - j  # the m-component needs m <= budget
        m_top = min(op.m_max, budget)
        if m_top < 1:
            return acc
        splits = list(_splits(key))
        for m in range(1, m_top + 1):
            a = op.a[m]
            # first-order part: -u^beta_l d/du^alpha_{l+m}
            for p, (beta, ell) in enumerate(key):
                if p and key[p - 1] == key[p]:
                    continue
                mult = key.count((beta, ell))
                rest = key[:p] + key[p + 1 :]
                for alpha in range(size):
                    c = a[alpha][beta]
                    if c.is_zero():
                        continue
                    t = self.term(j, g, _insert(rest, (alpha, ell + m)))
                    if t:
                        acc = acc - c * t * mult
            # dilaton-shift constant: + sum_beta a[alpha][beta] d/du^alpha_{m+1}
            for alpha in range(size):
                c = op.dilaton[m][alpha]
                if c.is_zero():
                    continue
                t = self.term(j, g, _insert(key, (alpha, m + 1)))
                if t:
                    acc = acc + c * t
            # second-order part: the hbar d d F^(j) term, then the products
            quad = self._zero
            for ell in range(m):
                sign = -1 if (m - 1 - ell) % 2 else 1
                for alpha in range(size):
                    for beta in range(size):
                        c = a[alpha][beta]
                        if c.is_zero():
                            continue
                        t = self.term(j, g - 1, _insert(key, (alpha, ell), (beta, m - 1 - ell)))
                        if t:
                            quad = quad + c * t * sign
            for split_mult, k1, k2, w1, w2 in splits:
                for g1 in range(g + 1):
                    g2 = g - g1
                    for i in range(j + 1):
                        # grading: the left factor needs ell <= 1 - i - W1, the right
                        # factor needs m - 1 - ell <= 1 - (j - i) - W2
                        lo = max(0, m - 2 + (j - i) + w2 - 3 * g2)
                        hi = min(m - 1, 1 - i - w1 + 3 * g1)
                        if lo > hi:
                            continue
                        weight = comb(j, i) * split_mult
                        for ell in range(lo, hi + 1):
                            left = [self.term(i, g1, _insert(k1, (alpha, ell))) for alpha in range(size)]
                            if not any(left):
                                continue
                            right = [
                                self.term(j - i, g2, _insert(k2, (beta, m - 1 - ell)))
                                for beta in range(size)
                            ]
                            sign = -weight if (m - 1 - ell) % 2 else weight
                            for alpha, lv in enumerate(left):
                                if not lv:
                                    continue
                                for beta, rv in enumerate(right):
                                    if not rv:
                                        continue
                                    c = a[alpha][beta]
                                    if not c.is_zero():
                                        quad = quad + c * lv * rv * sign
            if quad:
                acc = acc + quad * (self._sq / 2)
        return acc

    # -- extraction -----------------------------------------------------------
    def correlator(self, g: int, key: Iterable[Variable]) -> PuiseuxPoly:
        key = tuple(sorted(key))
        if not self.in_bounds(g, key):
            raise KeyError(f"(g={g}, {key}) lies outside bounds {self.bounds}")
        depth = self.operator.depth
        total = self._zero
        for j in range(depth + 1):
            t = self.term(j, g, key)
            if t:
                total = total + t * mpq(1, factorial(j))
        for j in (depth + 1, depth + 2):
            if self.term(j, g, key):
                raise OracleError(
                    f"Taylor series not stable at J={depth} for (g={g}, {key}); raise the depth"
                )
        return total

    def coefficient(self, g: int, key: Iterable[Variable]) -> PuiseuxPoly:
        key = tuple(sorted(key))
        value = self.correlator(g, key) * mpq(1, multiset_automorphisms(key))
        self.coefficients[(g, key)] = value
        return value


def _splits(key: Key):
    """Sub-multisets K1 of K with complements, the number of positional splits
    realizing them, and the genus-0 grading of each part."""
    distinct: List[Variable] = []
    counts: List[int] = []
    for v in key:
        if distinct and distinct[-1] == v:
            counts[-1] += 1
        else:
            distinct.append(v)
            counts.append(1)
    for choice in product(*(range(c + 1) for c in counts)):
        mult = 1
        k1: List[Variable] = []
        k2: List[Variable] = []
        for v, c, k in zip(distinct, counts, choice):
            mult *= comb(c, k)
            k1.extend([v] * k)
            k2.extend([v] * (c - k))
        yield mult, tuple(k1), tuple(k2), weight_grading(0, tuple(k1)), weight_grading(0, tuple(k2))


def apply(operator: QuantizedOperator, potential: TruncatedPotential, bounds=None) -> TwistedPotential:
    """exp(O) applied to exp(potential); returns the lazily evaluated log."""
    if bounds is None:
        bounds = potential.bounds
    return TwistedPotential(operator, potential, bounds)


def extract(potential: TruncatedPotential, g: int, insertions: Iterable[Tuple[int, int]]) -> PuiseuxPoly:
    """<prod tau_{a_j}(phi_{gamma_j})>^tw_g for insertions given as (a_j, gamma_index_j)."""
    key = tuple(sorted((gamma, a) for a, gamma in insertions))
    return potential.correlator(g, key)


def twisted_potential(orb: OrbifoldData, g: int, n: int, depth: Optional[int] = None) -> TwistedPotential:
    """A twisted potential ready to answer every key of genus <= g with <= n variables."""
    m_max = max(3 * g - 3 + n, 0)
    depth = m_max + 2 * g if depth is None else depth
    op = build_operator(orb, m_max, depth)
    source = bg_log_potential(orb, required_bounds(g, n))
    return apply(op, source, bounds=(g, n, max(3 * g - 3 + n, 0)))
