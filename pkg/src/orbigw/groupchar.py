"""Finite abelian groups G = Z/n_1 x ... x Z/n_k acting diagonally on C^r.

Group elements and characters are both residue vectors (plain tuples).  The
pairing is chi_gamma(h) = zeta_N^t with t = N * sum_k gamma_k h_k / n_k mod N,
N the exponent of G.  No complex floating point is used anywhere: character
values exist only as exact exponents in [0, 1) or as :class:`CycRational`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Sequence, Tuple

from gmpy2 import mpq

from orbigw.exactalg import CycRational, PuiseuxPoly, Rational, ZERO

Element = Tuple[int, ...]
Character = Tuple[int, ...]


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


@dataclass(frozen=True)
class OrbifoldData:
    """The input geometry [C^r/G] together with its derived tables.

    ``orders`` gives G = prod Z/orders[k]; ``action[i]`` is the exponent vector
    of the character chi_i by which G acts on the i-th coordinate of C^r.
    Use :func:`build_orbifold` rather than the constructor.
    """

    orders: Tuple[int, ...]
    action: Tuple[Tuple[int, ...], ...]
    exponent: int
    elements: Tuple[Element, ...]
    characters: Tuple[Character, ...]
    rotation: Dict[Element, Tuple[Rational, ...]] = field(repr=False, compare=False)
    ages: Dict[Element, Rational] = field(repr=False, compare=False)
    levels: Tuple[int, ...] = field(compare=False)

    # -- basic data ------------------------------------------------------
    @property
    def r(self) -> int:
        return len(self.action)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Element:
        return self.elements[0]

    @property
    def trivial_character(self) -> Character:
        return self.characters[0]

    def element_index(self, h: Sequence[int]) -> int:
        return self._element_pos[self.reduce(h)]

    def character_index(self, gamma: Sequence[int]) -> int:
        return self._element_pos[self.reduce(gamma)]

    @property
    def _element_pos(self) -> Dict[Element, int]:
        pos = self.__dict__.get("_pos")
        if pos is None:
            pos = {h: i for i, h in enumerate(self.elements)}
            object.__setattr__(self, "_pos", pos)
        return pos

    def reduce(self, h: Sequence[int]) -> Element:
        if len(h) != len(self.orders):
            raise ValueError(f"expected {len(self.orders)} residues, got {len(h)}")
        return tuple(x % n for x, n in zip(h, self.orders))

    def inverse(self, h: Element) -> Element:
        return tuple((-x) % n for x, n in zip(h, self.orders))

    def multiply(self, h: Element, k: Element) -> Element:
        return tuple((x + y) % n for x, y, n in zip(h, k, self.orders))

    # -- characters -------------------------------------------------------
    def pairing(self, gamma: Character, h: Element) -> int:
        """t with chi_gamma(h) = zeta_N^t, 0 <= t < N."""
        n_exp = self.exponent
        return sum(n_exp // n * g * x for g, x, n in zip(gamma, h, self.orders)) % n_exp

    def char_value(self, gamma: Character, h: Element) -> CycRational:
        return CycRational.root_of_unity(self.exponent, self.pairing(gamma, h))

    # -- equivariant data -------------------------------------------------
    def c(self, i: int, h: Element) -> Rational:
        return self.rotation[h][i]

    def age(self, h: Element) -> Rational:
        return self.ages[h]

    def fixed_dimension(self, h: Element) -> int:
        return sum(1 for x in self.rotation[h] if x == 0)

    def euler_monomial(self, h: Element) -> Tuple[Rational, ...]:
        """Exponent vector of e_h = prod_i w_i^{delta(c_i(h), 0)}."""
        return tuple(mpq(1) if x == 0 else ZERO for x in self.rotation[h])

    @property
    def e1(self) -> Tuple[Rational, ...]:
        return (mpq(1),) * self.r

    @property
    def sqrt_e1(self) -> Tuple[Rational, ...]:
        return (mpq(1, 2),) * self.r

    def poly(self, c=1, exponents=None) -> PuiseuxPoly:
        """Convenience constructor in this orbifold's coefficient ring."""
        if exponents is None:
            return PuiseuxPoly.constant(self.r, self.exponent, c)
        return PuiseuxPoly.mono(self.r, self.exponent, exponents, c)

    def cyc(self, q) -> CycRational:
        return CycRational.from_rational(self.exponent, q)


def char_exponent(orb: OrbifoldData, gamma: Character, h: Element) -> Rational:
    """The c in [0, 1) with chi_gamma(h) = exp(2 pi i c)."""
    return mpq(orb.pairing(orb.reduce(gamma), orb.reduce(h)), orb.exponent)


def build_orbifold(orders: Sequence[int], action: Sequence[Sequence[int]]) -> OrbifoldData:
    """Build [C^r/G] from group orders and the r action characters.

    >>> orb = build_orbifold([3], [[1], [1], [1]])
    >>> orb.levels, orb.age((1,))
    ((3, 3, 3), mpq(1,1))
    """
    orders = tuple(int(n) for n in orders)
    if any(n < 1 for n in orders):
        raise ValueError(f"group orders must be positive, got {orders}")
    action = tuple(tuple(int(e) for e in chi) for chi in action)
    if not action:
        raise ValueError("need at least one coordinate (r >= 1)")
    for i, chi in enumerate(action):
        if len(chi) != len(orders):
            raise ValueError(
                f"action character {i} has {len(chi)} exponents, group has {len(orders)} factors"
            )
    action = tuple(tuple(e % n for e, n in zip(chi, orders)) for chi in action)
    exponent = _lcm(orders)
    elements = tuple(itertools.product(*(range(n) for n in orders)))

    def pair(gamma, h):
        return sum(exponent // n * g * x for g, x, n in zip(gamma, h, orders)) % exponent

    rotation = {h: tuple(mpq(pair(chi, h), exponent) for chi in action) for h in elements}
    ages = {h: sum(rot, ZERO) for h, rot in rotation.items()}
    levels = tuple(_lcm(rotation[h][i].denominator for h in elements) for i in range(len(action)))
    orb = OrbifoldData(
        orders=orders,
        action=action,
        exponent=exponent,
        elements=elements,
        characters=elements,
        rotation=rotation,
        ages=ages,
        levels=levels,
    )
    _validate(orb)
    return orb


def _validate(orb: OrbifoldData) -> None:
    for h, rot in orb.rotation.items():
        for i, c in enumerate(rot):
            if not (0 <= c < 1) or (c * orb.levels[i]).denominator != 1:
                raise ValueError(f"bad rotation number c_{i}({h}) = {c}")
    if any(orb.rotation[orb.identity]):
        raise ValueError("identity must act trivially")
    if any(orb.exponent % level for level in orb.levels):
        raise ValueError("every l_i must divide the exponent of G")


def basis_matrices(orb: OrbifoldData):
    """Change of basis between {1_h} and the canonical basis {phi_gamma}.

    Returns ``(M, M_inv)`` as nested lists indexed by position in
    ``orb.characters`` / ``orb.elements``: phi_gamma = sum_h M[gamma][h] 1_h and
    1_h = sum_gamma M_inv[h][gamma] phi_gamma.
    """
    inv_order = mpq(1, orb.order)
    m = [
        [orb.char_value(gamma, orb.inverse(h)) * inv_order for h in orb.elements]
        for gamma in orb.characters
    ]
    m_inv = [[orb.char_value(gamma, h) for gamma in orb.characters] for h in orb.elements]
    return m, m_inv


def normalizer_monomial(orb: OrbifoldData, h: Element) -> Tuple[Rational, ...]:
    """Exponents of prod_i w_i^{c_i(h)}, the divisor turning 1_h into the normalized class."""
    return orb.rotation[orb.reduce(h)]


def cup_product_monomial(orb: OrbifoldData, h: Element, k: Element) -> Tuple[Rational, ...]:
    """Exponents of prod_i w_i^{c_i(h)+c_i(k)-c_i(hk)} in 1_h * 1_k of the equivariant theory."""
    hk = orb.multiply(h, k)
    return tuple(a + b - c for a, b, c in zip(orb.rotation[h], orb.rotation[k], orb.rotation[hk]))


def abelian_groups(max_order: int) -> List[Tuple[int, ...]]:
    """Invariant-factor decompositions of every abelian group of order <= max_order
    (the trivial group is ``()``)."""
    out = [()]
    for n in range(2, max_order + 1):
        out.extend(_invariant_factors(n))
    return out


def _invariant_factors(n: int, smallest: int = 2) -> List[Tuple[int, ...]]:
    # factor lists d_1 | d_2 | ... | d_k with product n
    result = []

    def rec(remaining, prev, acc):
        if remaining == 1:
            result.append(tuple(acc))
            return
        for d in range(prev, remaining + 1):
            if remaining % d == 0 and (not acc or d % acc[-1] == 0):
                rec(remaining // d, d, acc + [d])

    rec(n, smallest, [])
    # keep only genuine divisor chains
    return [t for t in result if all(t[i + 1] % t[i] == 0 for i in range(len(t) - 1))]
