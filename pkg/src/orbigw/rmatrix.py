"""The R-matrix of the quantum Riemann-Roch twist.

In the sector basis {1_h} the operator is diagonal,

    R(z)|_h = exp( sum_{m>=1} (-1)^m / (m(m+1)) sum_i B_{m+1}(c_i(h)) (z/w_i)^m ),

and canonical-basis entries follow by the character transform
R(z)^alpha_beta = (1/|G|) sum_h chi_alpha(h) chi_beta(h^-1) R(z)|_h.
"""

from __future__ import annotations

import threading
from math import factorial
from typing import Dict, Tuple

from gmpy2 import mpq

from orbigw.exactalg import (
    PuiseuxPoly,
    TruncSeries,
    bernoulli_eval,
    series_exp,
)
from orbigw.groupchar import Element, OrbifoldData


def s_coefficient(orb: OrbifoldData, i: int, k: int) -> PuiseuxPoly:
    """s^i_k = (k-1)! (-w_i)^(-k), the Taylor data of 1/(1 + x/w_i)."""
    if k < 1:
        raise ValueError("s-coefficients are indexed by k >= 1")
    return PuiseuxPoly.variable(orb.r, orb.exponent, i, -k) * (factorial(k - 1) * (-1) ** k)


def log_diagonal_entry(orb: OrbifoldData, h: Element, order: int) -> TruncSeries:
    """The exponent sum_m (-1)^m/(m(m+1)) sum_i B_{m+1}(c_i(h)) (z/w_i)^m up to z^order."""
    r, n = orb.r, orb.exponent
    coeffs = {}
    for m in range(1, order + 1):
        term = PuiseuxPoly.zero(r, n)
        for i in range(r):
            b = bernoulli_eval(m + 1, orb.c(i, h))
            if b:
                term = term + PuiseuxPoly.variable(r, n, i, -m) * b
        coeffs[(m,)] = term * mpq((-1) ** m, m * (m + 1))
    return TruncSeries(("z",), order, r, n, coeffs)


def diagonal_entry(orb: OrbifoldData, h: Element, order: int) -> TruncSeries:
    """R(z) restricted to the sector 1_h, truncated at z^order."""
    return series_exp(log_diagonal_entry(orb, orb.reduce(h), order))


class RMatrix:
    """R(z) for one orbifold at truncation order K.

    The sector-diagonal form is computed eagerly; canonical-basis entries are
    materialized on first request and cached.
    """

    def __init__(self, orb: OrbifoldData, order: int):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        self.orb = orb
        self.order = order
        self.diagonal: Dict[Element, TruncSeries] = {
            h: diagonal_entry(orb, h, order) for h in orb.elements
        }
        self._entries: Dict[Tuple[int, int], TruncSeries] = {}
        self._neg_entries: Dict[Tuple[int, int], TruncSeries] = {}
        self._lock = threading.Lock()

    def entry(self, alpha: int, beta: int) -> TruncSeries:
        """R(z)^alpha_beta for character positions alpha, beta."""
        hit = self._entries.get((alpha, beta))
        if hit is not None:
            return hit
        orb = self.orb
        ga, gb = orb.characters[alpha], orb.characters[beta]
        inv = mpq(1, orb.order)
        acc = TruncSeries(("z",), self.order, orb.r, orb.exponent)
        for h in orb.elements:
            chi = orb.char_value(ga, h) * orb.char_value(gb, orb.inverse(h)) * inv
            acc = acc + self.diagonal[h] * PuiseuxPoly.constant(orb.r, orb.exponent, chi)
        with self._lock:
            return self._entries.setdefault((alpha, beta), acc)

    def entry_neg(self, alpha: int, beta: int) -> TruncSeries:
        """R(-z)^alpha_beta."""
        hit = self._neg_entries.get((alpha, beta))
        if hit is not None:
            return hit
        value = self.entry(alpha, beta).substitute_negative()
        with self._lock:
            return self._neg_entries.setdefault((alpha, beta), value)

    def coefficient_neg(self, alpha: int, beta: int, k: int) -> PuiseuxPoly:
        """[z^k] R(-z)^alpha_beta."""
        if k > self.order:
            raise ValueError(f"coefficient z^{k} beyond truncation order {self.order}")
        return self.entry_neg(alpha, beta)[k]

    def matrix(self):
        m = len(self.orb.characters)
        return [[self.entry(a, b) for b in range(m)] for a in range(m)]

    def symplectic_defect(self):
        """Entries of sum_gamma R(z)^gamma_alpha R(-z)^gamma_beta - delta_{alpha beta}
        that fail to vanish, as a dict (alpha, beta) -> series."""
        m = len(self.orb.characters)
        bad = {}
        for a in range(m):
            for b in range(m):
                acc = TruncSeries(("z",), self.order, self.orb.r, self.orb.exponent)
                for c in range(m):
                    acc = acc + self.entry(c, a) * self.entry_neg(c, b)
                if a == b:
                    acc = acc - TruncSeries.one(("z",), self.order, self.orb.r, self.orb.exponent)
                if not acc.is_zero():
                    bad[(a, b)] = acc
        return bad


def r_matrix(orb: OrbifoldData, order: int) -> RMatrix:
    return RMatrix(orb, order)


def query_order(g: int, n: int) -> int:
    """Truncation order sufficient for a correlator of genus g with n leaves."""
    return max(3 * g - 3 + n + 1, 1)
