from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

import pytest

from orbigw.exactalg import PuiseuxPoly
from orbigw.groupchar import build_orbifold
from orbigw.rmatrix import RMatrix, log_diagonal_entry, query_order, s_coefficient


def test_trivial_group_first_coefficients(point):
    R = RMatrix(point, 3)
    w = lambda p, c: PuiseuxPoly.variable(1, 1, 0, p) * c  # noqa: E731
    entry = R.entry(0, 0)
    assert entry[(0,)] == w(0, 1)
    # exp(-B_2/2 z/w + B_4/12 z^3/w^3 ...): first coefficient -1/12, second 1/288
    assert entry[(1,)] == w(-1, mpq(-1, 12))
    assert entry[(2,)] == w(-2, mpq(1, 288))


def test_log_entry_uses_bernoulli_values(z2_line):
    log = log_diagonal_entry(z2_line, (1,), 2)
    # m = 1: -B_2(1/2)/2 = 1/24 ; m = 2: B_3(1/2)/6 = 0
    assert log[(1,)] == PuiseuxPoly.variable(1, 2, 0, -1) * mpq(1, 24)
    assert not log[(2,)]


def test_s_coefficients(point):
    assert s_coefficient(point, 0, 1) == PuiseuxPoly.variable(1, 1, 0, -1) * -1
    assert s_coefficient(point, 0, 3) == PuiseuxPoly.variable(1, 1, 0, -3) * -2
    with pytest.raises(ValueError):
        s_coefficient(point, 0, 0)


def test_query_order():
    assert query_order(0, 3) == 1
    assert query_order(2, 1) == 5


@given(st.sampled_from([(2,), (3,), (4,), (2, 2)]), st.data())
def test_symplectic_identity(orders, data):
    r = data.draw(st.integers(1, 3))
    action = [[data.draw(st.integers(0, n - 1)) for n in orders] for _ in range(r)]
    R = RMatrix(build_orbifold(orders, action), 4)
    assert R.symplectic_defect() == {}


def test_canonical_entries_are_real_class_functions(z3_cy3):
    """R^alpha_beta depends only on alpha - beta and R(0) is the identity."""
    R = RMatrix(z3_cy3, 3)
    size = len(z3_cy3.characters)
    for a in range(size):
        for b in range(size):
            assert R.entry(a, b) == R.entry((a + 1) % size, (b + 1) % size)
            assert R.entry(a, b)[(0,)] == PuiseuxPoly.constant(3, 3, 1 if a == b else 0)
