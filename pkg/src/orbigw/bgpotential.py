"""Descendant correlators of the classifying stack BG (G abelian) and the
truncated logarithm of its total descendant potential.

Potential variables are pairs ``(gamma_index, a)``: the coefficient u^gamma_a
of z^a phi_gamma.  A monomial prod u is keyed by the sorted tuple of its
variables, so a multiset appears once; its coefficient is the correlator
divided by the multiset's automorphism factor prod(multiplicity!).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import factorial
from typing import Dict, Iterable, Sequence, Tuple

from gmpy2 import mpq

from orbigw.exactalg import CycRational
from orbigw.groupchar import OrbifoldData
from orbigw.psiint import psi_integral

Variable = Tuple[int, int]
Key = Tuple[Variable, ...]

CLASS_TAGS = ("unit_h", "unit_bar_h", "phi", "phi_bar")


@dataclass(frozen=True)
class Insertion:
    """tau_a(class), where ``tag`` is one of ``unit_h``, ``unit_bar_h``, ``phi``,
    ``phi_bar`` and ``label`` the residue vector of the element or character."""

    a: int
    tag: str
    label: Tuple[int, ...]

    def __post_init__(self):
        if self.a < 0:
            raise ValueError("descendant index must be nonnegative")
        if self.tag not in CLASS_TAGS:
            raise ValueError(f"unknown class tag {self.tag!r}; expected one of {CLASS_TAGS}")


def multiset_automorphisms(key: Iterable) -> int:
    out = 1
    for mult in Counter(key).values():
        out *= factorial(mult)
    return out


def bg_correlator_units(orb: OrbifoldData, g: int, insertions: Sequence[Tuple[int, Sequence[int]]]):
    """<tau_{a_1}(1_{h_1}) ... tau_{a_n}(1_{h_n})>_g of BG."""
    hs = [orb.reduce(h) for _, h in insertions]
    prod = orb.identity
    for h in hs:
        prod = orb.multiply(prod, h)
    if prod != orb.identity:
        return mpq(0)
    return mpq(orb.order) ** (2 * g - 1) * psi_integral(g, [a for a, _ in insertions])


def bg_correlator_canonical(orb: OrbifoldData, g: int, insertions: Sequence[Tuple[int, Sequence[int]]]):
    """<tau_{a_1}(phi_{gamma_1}) ... tau_{a_n}(phi_{gamma_n})>_g of BG."""
    gammas = {orb.reduce(gamma) for _, gamma in insertions}
    if len(gammas) > 1:
        return mpq(0)
    return mpq(orb.order) ** (2 * g - 2) * psi_integral(g, [a for a, _ in insertions])


@dataclass
class TruncatedPotential:
    """A truncated log-potential sum_g hbar^(g-1) F_g.

    ``coefficients[(g, key)]`` holds the coefficient of hbar^(g-1) prod u over
    the sorted variable tuple ``key``.  Only keys within ``bounds`` =
    (g_max, n_max, a_max) are meaningful; absent keys inside the bounds are zero.
    """

    bounds: Tuple[int, int, int]
    coefficients: Dict[Tuple[int, Key], object] = field(default_factory=dict)

    def in_bounds(self, g: int, key: Key) -> bool:
        g_max, n_max, a_max = self.bounds
        return 0 <= g <= g_max and len(key) <= n_max and all(a <= a_max for _, a in key)

    def coefficient(self, g: int, key: Iterable[Variable]):
        key = tuple(sorted(key))
        if not self.in_bounds(g, key):
            raise KeyError(f"(g={g}, {key}) lies outside bounds {self.bounds}")
        return self.coefficients.get((g, key), 0)

    def correlator(self, g: int, key: Iterable[Variable]):
        key = tuple(sorted(key))
        return self.coefficient(g, key) * multiset_automorphisms(key)

    def items(self):
        return self.coefficients.items()


def bg_log_potential(orb: OrbifoldData, bounds: Tuple[int, int, int]) -> TruncatedPotential:
    """log D^BG truncated to genus <= g_max, n <= n_max variables, descendants <= a_max.

    Coefficients are :class:`CycRational` (all rational for BG).
    """
    g_max, n_max, a_max = bounds
    pot = TruncatedPotential(bounds=(g_max, n_max, a_max))
    n_chars = len(orb.characters)
    for g in range(g_max + 1):
        for n in range(1, n_max + 1):
            if 2 * g - 2 + n <= 0:
                continue
            dim = 3 * g - 3 + n
            for parts in _partitions_bounded(dim, n, a_max):
                value = mpq(orb.order) ** (2 * g - 2) * psi_integral(g, parts)
                if not value:
                    continue
                for gamma in range(n_chars):
                    key = tuple(sorted((gamma, a) for a in parts))
                    coeff = value / multiset_automorphisms(key)
                    pot.coefficients[(g, key)] = CycRational.from_rational(orb.exponent, coeff)
    return pot


def _partitions_bounded(total: int, n: int, a_max: int):
    """Nonincreasing n-tuples of integers in [0, a_max] summing to ``total``."""
    if total < 0:
        return
    for combo in combinations_with_replacement(range(min(total, a_max) + 1), n):
        if sum(combo) == total:
            yield combo
