from gmpy2 import mpq

import pytest

from orbigw.bgpotential import bg_log_potential
from orbigw.exactalg import PuiseuxPoly
from orbigw.graphsum import CorrelatorRequest, GraphSum, monomial_series
from orbigw.groupchar import build_orbifold
from orbigw.qrroracle import (
    OracleError,
    apply,
    build_operator,
    check_adjointness,
    e_matrix,
    extract,
    twisted_potential,
    zero_operator,
)
from orbigw.selfcheck import oracle_keys


def test_e_matrix_trivial_group(point):
    assert e_matrix(point, 0, 2) == [[mpq(1, 6)]]
    assert e_matrix(point, 0, 4) == [[mpq(-1, 30)]]


def test_e_matrix_z2(z2_line):
    # (1/2)[[B2(0)+B2(1/2), B2(0)-B2(1/2)], [B2(0)-B2(1/2), B2(0)+B2(1/2)]]
    assert e_matrix(z2_line, 0, 2) == [[mpq(1, 24), mpq(1, 8)], [mpq(1, 8), mpq(1, 24)]]


def test_adjointness_pattern(z3_cy3):
    for m in (2, 3, 4, 5):
        assert check_adjointness(z3_cy3, e_matrix(z3_cy3, 0, m), m)
    odd = e_matrix(z3_cy3, 0, 3)
    assert any(odd[a][b] for a in range(3) for b in range(3))


def test_zero_operator_is_the_identity(z2_line):
    op = zero_operator(z2_line)
    assert op.is_zero()
    source = bg_log_potential(z2_line, (1, 4, 4))
    tw = apply(op, source)
    for g, n in ((0, 3), (0, 4), (1, 1), (1, 2)):
        for key in oracle_keys(2, g, n):
            expected = source.correlator(g, key)
            assert tw.correlator(g, key) == PuiseuxPoly.constant(1, 2, expected)


def test_trivial_group_genus1_values(point):
    pot = twisted_potential(point, 1, 1)
    w = PuiseuxPoly.variable(1, 1, 0, -1)
    assert extract(pot, 1, [(0, 0)]) == w * mpq(-1, 24)
    assert extract(pot, 1, [(1, 0)]) == PuiseuxPoly.constant(1, 1, mpq(1, 24))


def test_genus0_three_point_has_no_room(z3_cy3):
    pot = twisted_potential(z3_cy3, 0, 3)
    assert extract(pot, 0, [(0, 1)] * 3) == PuiseuxPoly.constant(3, 3, mpq(1, 9))


def test_insufficient_depth_is_detected(point):
    pot = twisted_potential(point, 1, 1, depth=0)
    with pytest.raises(OracleError):
        pot.correlator(1, ((0, 0),))


def test_out_of_bounds_key(point):
    pot = twisted_potential(point, 1, 1)
    with pytest.raises(KeyError):
        pot.correlator(2, ((0, 4),))


def test_results_stable_in_depth(z2_line):
    shallow = twisted_potential(z2_line, 1, 2)
    deep = twisted_potential(z2_line, 1, 2, depth=shallow.operator.depth + 3)
    for key in oracle_keys(2, 1, 2):
        assert shallow.correlator(1, key) == deep.correlator(1, key)


def test_operator_matches_r_matrix_exponent(point):
    """a_1 = -B_2/2 / w, the first Taylor coefficient of log R."""
    op = build_operator(point, 2)
    assert op.a[1][0][0] == PuiseuxPoly.variable(1, 1, 0, -1) * mpq(-1, 12)


@pytest.mark.parametrize("orders, action", [([2], [[1]]), ([3], [[1], [2]])])
def test_oracle_agrees_with_graph_sum(orders, action):
    orb = build_orbifold(orders, action)
    for g, n in ((0, 4), (1, 2)):
        pot = twisted_potential(orb, g, n)
        gs = GraphSum(orb, 3 * g - 2 + n)
        for key in oracle_keys(len(orb.characters), g, n):
            req = CorrelatorRequest(orb, g, [monomial_series(orb, c, a) for c, a in key], normalization="twisted")
            assert gs.correlator(req) == pot.correlator(g, key)
