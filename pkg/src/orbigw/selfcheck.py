"""Invariant suites run by ``orbigw selfcheck``.

Each check returns a list of :class:`Failure` records (empty on success), so
a failing invariant names its module, the instance, and both sides.
"""

from __future__ import annotations

import itertools
import time
from math import factorial
from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence, Tuple

from gmpy2 import mpq

from orbigw.exactalg import CycRational, DivisibilityError, bernoulli_eval, divide_by_zplus_zeta
from orbigw.bgpotential import Insertion
from orbigw.graphsum import (
    EQUIVARIANT,
    TWISTED,
    CorrelatorRequest,
    EdgeTable,
    GraphSum,
    enumerate_graphs,
    insertion_series,
    monomial_series,
)
from orbigw.groupchar import OrbifoldData, abelian_groups, build_orbifold
from orbigw.psiint import genus0_closed_form, psi_integral
from orbigw.qrroracle import twisted_potential
from orbigw.rmatrix import RMatrix, query_order

ORACLE_CASES = ((0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (2, 1))


@dataclass
class Failure:
    module: str
    instance: str
    left: str
    right: str

    def to_dict(self) -> dict:
        return {"module": self.module, "instance": self.instance, "left": self.left, "right": self.right}


def describe(orb: OrbifoldData) -> str:
    return f"G={list(orb.orders)} action={[list(c) for c in orb.action]}"


DESK_GROUPS = ((), (2,), (3,), (2, 2))


def desk_orbifolds(
    max_r: int = 3, groups: Sequence[Tuple[int, ...]] = DESK_GROUPS, ordered: bool = False
) -> List[OrbifoldData]:
    """The desk-scale test set: each group with every action on C^r, r <= max_r.

    By default actions are taken up to reordering of the coordinates, which
    only relabels the equivariant parameters; ``ordered=True`` lists every
    assignment of characters to coordinates.
    """
    choose = itertools.product if ordered else itertools.combinations_with_replacement
    out = []
    for orders in groups:
        chars = list(itertools.product(*(range(n) for n in orders)))
        for r in range(1, max_r + 1):
            for action in (choose(chars, repeat=r) if ordered else choose(chars, r)):
                out.append(build_orbifold(orders, [list(c) for c in action]))
    return out


# -- groupchar --------------------------------------------------------------


def check_orthogonality(max_order: int = 12) -> List[Failure]:
    """Row and column orthogonality of the character table of every abelian group
    of order <= max_order."""
    fails = []
    for orders in abelian_groups(max_order):
        orb = build_orbifold(orders, [[0] * len(orders)])
        size = orb.order
        for x in orb.characters:
            for y in orb.characters:
                s = CycRational.zero(orb.exponent)
                for h in orb.elements:
                    s = s + orb.char_value(x, h) * orb.char_value(y, orb.inverse(h))
                expected = size if x == y else 0
                if s != expected:
                    fails.append(Failure("groupchar", f"G={list(orders)} rows {x},{y}", repr(s), str(expected)))
        for h in orb.elements:
            for k in orb.elements:
                s = CycRational.zero(orb.exponent)
                for x in orb.characters:
                    s = s + orb.char_value(x, h) * orb.char_value(x, orb.inverse(k))
                expected = size if h == k else 0
                if s != expected:
                    fails.append(Failure("groupchar", f"G={list(orders)} columns {h},{k}", repr(s), str(expected)))
    return fails


# -- exactalg ---------------------------------------------------------------


def check_bernoulli_reflection(max_degree: int = 12, denominators: Iterable[int] = range(1, 13)) -> List[Failure]:
    """B_m(1 - x) = (-1)^m B_m(x) at every x = k/d in [0, 1)."""
    fails = []
    for m in range(max_degree + 1):
        for d in denominators:
            for k in range(d):
                x = mpq(k, d)
                left = bernoulli_eval(m, 1 - x)
                right = (-1) ** m * bernoulli_eval(m, x)
                if left != right:
                    fails.append(Failure("exactalg", f"B_{m} at x={k}/{d}", str(left), str(right)))
    return fails


def check_symplectic(orbs: Iterable[OrbifoldData], order: int = 6) -> List[Failure]:
    fails = []
    for orb in orbs:
        for (a, b), s in RMatrix(orb, order).symplectic_defect().items():
            fails.append(Failure("rmatrix", f"{describe(orb)} entry ({a},{b})", repr(s), "0"))
    return fails


def check_edge_divisibility(orbs: Iterable[OrbifoldData], order: int = 6) -> List[Failure]:
    fails = []
    for orb in orbs:
        table = EdgeTable(RMatrix(orb, order))
        for a in range(len(orb.characters)):
            for b in range(len(orb.characters)):
                try:
                    divide_by_zplus_zeta(table.numerator(a, b))
                except DivisibilityError as exc:
                    fails.append(Failure("graphsum", f"{describe(orb)} edge ({a},{b})", str(exc), "divisible"))
    return fails


# -- psiint -----------------------------------------------------------------


def check_psi(max_n0: int = 7) -> List[Failure]:
    fails = []
    for n in range(3, max_n0 + 1):
        for parts in _compositions(n - 3, n):
            left = psi_integral(0, parts)
            right = genus0_closed_form(parts)
            if left != right:
                fails.append(Failure("psiint", f"g=0 {list(parts)}", str(left), str(right)))
    for g, parts, value in ((1, (1,), mpq(1, 24)), (2, (4,), mpq(1, 1152))):
        if psi_integral(g, parts) != value:
            fails.append(Failure("psiint", f"g={g} {list(parts)}", str(psi_integral(g, parts)), str(value)))
    return fails


def _compositions(total, parts):
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cut + (total + parts - 1,):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


# -- oracle -------------------------------------------------------------------


def oracle_keys(n_chars: int, g: int, n: int):
    """All insertion multisets of n variables (character, a) with sum a <= 3g - 3 + n."""
    dim = 3 * g - 3 + n
    variables = [(c, a) for c in range(n_chars) for a in range(dim + 1)]
    for key in itertools.combinations_with_replacement(variables, n):
        if sum(a for _, a in key) <= dim:
            yield key


def check_oracle(orbs: Iterable[OrbifoldData], cases=ORACLE_CASES) -> List[Failure]:
    """Graph-sum twisted correlators equal oracle extractions on every key."""
    fails = []
    for orb in orbs:
        for g, n in cases:
            pot = twisted_potential(orb, g, n)
            gs = GraphSum(orb, query_order(g, n))
            for key in oracle_keys(len(orb.characters), g, n):
                req = CorrelatorRequest(
                    orb, g, [monomial_series(orb, c, a) for c, a in key], normalization=TWISTED
                )
                left = gs.correlator(req)
                right = pot.correlator(g, key)
                if left != right:
                    fails.append(Failure("qrroracle", f"{describe(orb)} g={g} key={list(key)}", repr(left), repr(right)))
    return fails


# -- normalizations ------------------------------------------------------------

BRIDGE_CASES = ((0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 1))


def generic_series(orb: OrbifoldData, max_a: int, seed: int = 0):
    """A series touching every (character, a <= max_a) slot with distinct rational coefficients."""
    size = len(orb.characters)
    return {
        (c, a): mpq(1 + seed + c + size * a, 2 + 3 * seed + a)
        for c in range(size)
        for a in range(max_a + 1)
    }


def e1_power(orb: OrbifoldData, power: int):
    return orb.poly(1, [power * x for x in orb.e1])


def check_bridge(orbs: Iterable[OrbifoldData], cases=BRIDGE_CASES) -> List[Failure]:
    """Every graph weighs e_1^(g-1) times more in the equivariant normalization
    (phi-bar insertions) than in the twisted one (phi insertions, same coefficients)."""
    fails = []
    for orb in orbs:
        for g, n in cases:
            gs = GraphSum(orb, query_order(g, n))
            dim = 3 * g - 3 + n
            series = [generic_series(orb, dim, j) for j in range(n)]
            twisted = CorrelatorRequest(orb, g, series, normalization=TWISTED)
            equivariant = CorrelatorRequest(orb, g, series, normalization=EQUIVARIANT)
            factor = e1_power(orb, g - 1)
            pairs = zip(gs.graph_weights(equivariant), gs.graph_weights(twisted))
            for (graph, left), (_, plain) in pairs:
                right = factor * plain
                if left != right:
                    fails.append(Failure("graphsum", f"{describe(orb)} graph {graph.to_dict()}", repr(left), repr(right)))
    return fails


def unit_bar_keys(orb: OrbifoldData, g: int, n: int):
    """Multisets of n insertions tau_a(1-bar_h) with sum a = 3g - 3 + n."""
    dim = 3 * g - 3 + n
    variables = [(h, a) for h in orb.elements for a in range(dim + 1)]
    for key in itertools.combinations_with_replacement(variables, n):
        if sum(a for _, a in key) == dim:
            yield key


def check_rationality(orbs: Iterable[OrbifoldData], cases=((0, 3), (0, 4), (1, 1), (1, 2), (2, 1))) -> List[Failure]:
    """Equivariant correlators of 1-bar_h insertions have rational coefficients."""
    fails = []
    for orb in orbs:
        for g, n in cases:
            gs = GraphSum(orb, query_order(g, n))
            for key in unit_bar_keys(orb, g, n):
                series = [insertion_series(orb, Insertion(a, "unit_bar_h", h), EQUIVARIANT) for h, a in key]
                value = gs.correlator(CorrelatorRequest(orb, g, series, normalization=EQUIVARIANT))
                if not value.is_rational():
                    fails.append(Failure("graphsum", f"{describe(orb)} g={g} key={list(key)}", repr(value), "rational"))
    return fails


def check_ordered_unordered(orbs: Iterable[OrbifoldData], cases=((0, 3), (0, 4), (1, 1), (1, 2), (2, 1))) -> List[Failure]:
    """n ordered copies of u, divided by n!, equal n unordered copies of u."""
    fails = []
    for orb in orbs:
        for g, n in cases:
            gs = GraphSum(orb, query_order(g, n))
            u = generic_series(orb, 3 * g - 3 + n)
            for norm in (TWISTED, EQUIVARIANT):
                ordered = gs.correlator(CorrelatorRequest(orb, g, [u] * n, normalization=norm))
                unordered = gs.correlator(CorrelatorRequest(orb, g, (), u, n, normalization=norm))
                left = ordered * mpq(1, factorial(n))
                if left != unordered:
                    fails.append(Failure("graphsum", f"{describe(orb)} g={g} n={n} {norm}", repr(left), repr(unordered)))
    return fails


# -- driver -------------------------------------------------------------------


def suites(level: str) -> List[Tuple[str, Callable[[], List[Failure]]]]:
    if level == "quick":
        small = desk_orbifolds(max_r=2, groups=((), (2,), (3,)))
        return [
            ("character orthogonality", lambda: check_orthogonality(12)),
            ("Bernoulli reflection", check_bernoulli_reflection),
            ("psi closed forms", check_psi),
            ("R symplecticity", lambda: check_symplectic(small, 6)),
            ("edge divisibility", lambda: check_edge_divisibility(small, 6)),
            ("oracle equality", lambda: check_oracle(small, ((0, 3), (0, 4), (1, 1), (1, 2)))),
        ]
    if level == "full":
        full = desk_orbifolds()
        every = desk_orbifolds(ordered=True)
        return [
            ("character orthogonality", lambda: check_orthogonality(12)),
            ("Bernoulli reflection", check_bernoulli_reflection),
            ("psi closed forms", check_psi),
            ("R symplecticity", lambda: check_symplectic(every, 6)),
            ("edge divisibility", lambda: check_edge_divisibility(every, 6)),
            ("oracle equality", lambda: check_oracle(full)),
        ]
    raise ValueError(f"unknown level {level!r}")


def run_selfcheck(level: str = "quick") -> dict:
    report = {"level": level, "checks": [], "passed": True}
    for name, fn in suites(level):
        start = time.perf_counter()
        try:
            fails = fn()
        except Exception as exc:  # a crash inside a suite is a failed check, not a selfcheck crash
            fails = [Failure(type(exc).__module__.rsplit(".", 1)[-1], name, f"{type(exc).__name__}: {exc}", "no exception")]
        report["checks"].append(
            {
                "name": name,
                "passed": not fails,
                "seconds": round(time.perf_counter() - start, 3),
                "failures": [f.to_dict() for f in fails[:20]],
                "failure_count": len(fails),
            }
        )
        report["passed"] = report["passed"] and not fails
    return report
