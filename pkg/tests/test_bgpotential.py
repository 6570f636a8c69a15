from gmpy2 import mpq

import pytest

from orbigw.bgpotential import (
    Insertion,
    bg_correlator_canonical,
    bg_correlator_units,
    bg_log_potential,
    multiset_automorphisms,
)
from orbigw.exactalg import CycRational
from orbigw.groupchar import basis_matrices, build_orbifold


def test_units_examples(point, z2_line):
    assert bg_correlator_units(z2_line, 0, [(0, (1,)), (0, (1,)), (0, (0,))]) == mpq(1, 2)
    assert bg_correlator_units(z2_line, 0, [(0, (1,)), (0, (0,)), (0, (0,))]) == 0
    assert bg_correlator_units(point, 1, [(1, ())]) == mpq(1, 24)


def test_canonical_examples():
    z3 = build_orbifold([3], [[1]])
    assert bg_correlator_canonical(z3, 0, [(0, (1,))] * 3) == mpq(1, 9)
    assert bg_correlator_canonical(z3, 0, [(0, (1,)), (0, (1,)), (0, (2,))]) == 0


@pytest.mark.parametrize("orders", [(2,), (3,), (2, 2)])
def test_units_transport_to_canonical(orders):
    """Expanding 1_h = sum_gamma chi_gamma(h) phi_gamma turns canonical correlators into unit ones."""
    orb = build_orbifold(orders, [[1] * len(orders)])
    _, m_inv = basis_matrices(orb)
    elements = orb.elements
    for g, a in ((0, (0, 0, 0)), (1, (1, 0, 0, 0))):
        for hs in [(elements[1], elements[1], elements[0]), (elements[-1], elements[-1], elements[-1])]:
            hs = hs + (elements[0],) * (len(a) - 3)
            expected = bg_correlator_units(orb, g, list(zip(a, hs)))
            total = CycRational.zero(orb.exponent)
            for gamma, _ in enumerate(orb.characters):
                term = CycRational.one(orb.exponent)
                for h in hs:
                    term = term * m_inv[elements.index(h)][gamma]
                total = total + term * bg_correlator_canonical(
                    orb, g, [(x, orb.characters[gamma]) for x in a]
                )
            assert total == expected


def test_log_potential_coefficients_are_correlators_over_symmetry():
    z2 = build_orbifold([2], [[1]])
    pot = bg_log_potential(z2, (1, 4, 4))
    key = ((1, 0), (1, 0), (1, 0))
    assert pot.coefficient(0, key) == mpq(1, 4) / 6
    assert pot.correlator(0, key) == mpq(1, 4)
    assert pot.correlator(1, ((0, 1),)) == mpq(1, 24)
    assert pot.coefficient(0, ((0, 0), (1, 0), (1, 0))) == 0
    with pytest.raises(KeyError):
        pot.coefficient(2, ((0, 4),))


def test_multiset_automorphisms():
    assert multiset_automorphisms([(0, 1), (0, 1), (1, 0), (0, 1)]) == 6


def test_insertion_validation():
    with pytest.raises(ValueError):
        Insertion(-1, "phi", (0,))
    with pytest.raises(ValueError):
        Insertion(0, "psi", (0,))
