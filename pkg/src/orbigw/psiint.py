"""Intersection numbers of psi classes on the moduli spaces of stable curves.

``psi_integral(g, (a_1, ..., a_n))`` returns the integral over M_{g,n} of
psi_1^{a_1} ... psi_n^{a_n}.  Values come from the Dijkgraaf-Verlinde-Verlinde
form of the Virasoro constraints, with the string and dilaton equations used to
strip tau_0 and tau_1 insertions first.  Results are memoized on
(g, sorted exponents).
"""

from __future__ import annotations

import threading
from itertools import combinations
from typing import Dict, Iterable, Tuple

from gmpy2 import mpq

_memo: Dict[Tuple[int, Tuple[int, ...]], object] = {}
_lock = threading.Lock()


def double_factorial(n: int) -> int:
    """n!! with (-1)!! = 1."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def psi_integral(g: int, exponents: Iterable[int]):
    """Exact value of <tau_{a_1} ... tau_{a_n}>_g.

    Unstable (g, n) and dimension-violating exponent lists give 0.

    >>> psi_integral(1, [1])
    mpq(1,24)
    >>> psi_integral(2, [4])
    mpq(1,1152)
    """
    key = tuple(sorted((int(a) for a in exponents), reverse=True))
    if g < 0 or any(a < 0 for a in key):
        return mpq(0)
    return _psi(g, key)


def _psi(g: int, key: Tuple[int, ...]):
    n = len(key)
    if 2 * g - 2 + n <= 0 or sum(key) != 3 * g - 3 + n:
        return mpq(0)
    hit = _memo.get((g, key))
    if hit is not None:
        return hit
    value = _compute(g, key)
    with _lock:
        _memo.setdefault((g, key), value)
    return value


def _sorted_key(values) -> Tuple[int, ...]:
    return tuple(sorted(values, reverse=True))


def _compute(g: int, key: Tuple[int, ...]):
    n = len(key)
    if g == 0 and n == 3:
        return mpq(1)
    if g == 1 and n == 1:
        return mpq(1, 24)
    rest = list(key)
    if 0 in rest:
        # string equation
        rest.remove(0)
        total = mpq(0)
        for j, a in enumerate(rest):
            if a > 0:
                total += _psi(g, _sorted_key(rest[:j] + [a - 1] + rest[j + 1 :]))
        return total
    if 1 in rest:
        # dilaton equation
        rest.remove(1)
        return (2 * g - 2 + len(rest)) * _psi(g, _sorted_key(rest))
    # DVV recursion on the largest exponent, tau_{k+1}
    k = rest[0] - 1
    others = rest[1:]
    total = mpq(0)
    for j, d in enumerate(others):
        coef = mpq(double_factorial(2 * k + 2 * d + 1), double_factorial(2 * d - 1))
        total += coef * _psi(g, _sorted_key(others[:j] + [d + k] + others[j + 1 :]))
    half = mpq(1, 2)
    m = len(others)
    for r in range(k):
        s = k - 1 - r
        coef = double_factorial(2 * r + 1) * double_factorial(2 * s + 1) * half
        if g >= 1:
            total += coef * _psi(g - 1, _sorted_key([r, s] + others))
        for size in range(m + 1):
            for subset in combinations(range(m), size):
                left = [others[i] for i in subset]
                right = [others[i] for i in range(m) if i not in subset]
                for g1 in range(g + 1):
                    a = _psi(g1, _sorted_key([r] + left))
                    if a:
                        total += coef * a * _psi(g - g1, _sorted_key([s] + right))
    return total / double_factorial(2 * k + 3)


def genus0_closed_form(exponents: Iterable[int]):
    """(n-3)! / prod a_i! for genus 0 (zero off dimension)."""
    a = list(exponents)
    n = len(a)
    if n < 3 or sum(a) != n - 3:
        return mpq(0)
    from math import factorial

    den = 1
    for x in a:
        den *= factorial(x)
    return mpq(factorial(n - 3), den)


def clear_cache() -> None:
    with _lock:
        _memo.clear()
