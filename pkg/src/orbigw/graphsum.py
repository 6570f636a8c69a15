"""Stable labeled graphs and their weights.

A labeled graph has vertices carrying a genus and a marking (a character of
G), edges whose two half-edges carry heights, and three kinds of leaves:
ordered ordinary leaves (numbered, each with its own insertion series),
unordered ordinary leaves (sharing one series) and dilaton leaves (height at
least 2).  Every vertex satisfies 2g(v) - 2 + val(v) > 0 and the heights at a
vertex add up to 3g(v) - 3 + val(v), the dimension of its moduli space.

The sum over isomorphism classes of such graphs, weighted by
``graph_weight / aut_order``, is the correlator ``<u_1, ..., u_n, u, ..., u>_g / n'!``.
"""

from __future__ import annotations

import itertools
import threading
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from gmpy2 import mpq

from orbigw.exactalg import (
    CycRational,
    PuiseuxPoly,
    TruncSeries,
    divide_by_zplus_zeta,
    rational,
)
from orbigw.groupchar import OrbifoldData
from orbigw.psiint import psi_integral
from orbigw.rmatrix import RMatrix, query_order

HalfEdge = Tuple[int, int]  # (vertex, height)
Series = Mapping[Tuple[int, int], object]  # (character index, descendant) -> coefficient

TWISTED = "twisted"
EQUIVARIANT = "equivariant"
NORMALIZATIONS = (TWISTED, EQUIVARIANT)


@dataclass(frozen=True)
class LabeledGraph:
    genera: Tuple[int, ...]
    markings: Tuple[int, ...]
    edges: Tuple[Tuple[HalfEdge, HalfEdge], ...]
    ordered: Tuple[HalfEdge, ...] = ()
    unordered: Tuple[HalfEdge, ...] = ()
    dilaton: Tuple[HalfEdge, ...] = ()

    @property
    def num_vertices(self) -> int:
        return len(self.genera)

    def genus(self) -> int:
        return sum(self.genera) + len(self.edges) - len(self.genera) + 1

    def heights_at(self, v: int) -> List[int]:
        out = []
        for a, b in self.edges:
            if a[0] == v:
                out.append(a[1])
            if b[0] == v:
                out.append(b[1])
        for group in (self.ordered, self.unordered, self.dilaton):
            out.extend(k for u, k in group if u == v)
        return out

    def valence(self, v: int) -> int:
        return len(self.heights_at(v))

    def is_stable(self) -> bool:
        return all(2 * g - 2 + self.valence(v) > 0 for v, g in enumerate(self.genera))

    def is_balanced(self) -> bool:
        return all(
            sum(self.heights_at(v)) == 3 * g - 3 + self.valence(v)
            for v, g in enumerate(self.genera)
        )

    def is_connected(self) -> bool:
        return _connected(len(self.genera), [(a[0], b[0]) for a, b in self.edges])

    def num_leaves(self) -> int:
        return len(self.ordered) + len(self.unordered) + len(self.dilaton)

    def to_dict(self) -> dict:
        return {
            "genera": list(self.genera),
            "markings": list(self.markings),
            "edges": [[list(a), list(b)] for a, b in self.edges],
            "ordered_leaves": [list(x) for x in self.ordered],
            "unordered_leaves": [list(x) for x in self.unordered],
            "dilaton_leaves": [list(x) for x in self.dilaton],
        }


def _connected(nv: int, pairs) -> bool:
    if nv == 0:
        return False
    adj = {v: set() for v in range(nv)}
    for a, b in pairs:
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == nv


# ---------------------------------------------------------------------------
# canonical forms and automorphisms
# ---------------------------------------------------------------------------


def _vertex_colors(graph: LabeledGraph) -> List[tuple]:
    colors = []
    for v in range(graph.num_vertices):
        colors.append(
            (
                graph.genera[v],
                graph.markings[v],
                tuple(sorted((j, k) for j, (u, k) in enumerate(graph.ordered) if u == v)),
                tuple(sorted(k for u, k in graph.unordered if u == v)),
                tuple(sorted(k for u, k in graph.dilaton if u == v)),
            )
        )
    # one round of refinement by the labeled neighbourhood
    refined = []
    for v in range(graph.num_vertices):
        nbhd = []
        for a, b in graph.edges:
            if a[0] == v:
                nbhd.append((a[1], colors[b[0]], b[1], b[0] == v))
            if b[0] == v:
                nbhd.append((b[1], colors[a[0]], a[1], a[0] == v))
        refined.append((colors[v], tuple(sorted(nbhd))))
    return refined


def _edge_code(graph: LabeledGraph, perm: Sequence[int]) -> tuple:
    out = []
    for a, b in graph.edges:
        x = (perm[a[0]], a[1])
        y = (perm[b[0]], b[1])
        out.append((x, y) if x <= y else (y, x))
    return tuple(sorted(out))


def _class_permutations(colors: List[tuple]) -> Tuple[List[int], Iterator[List[int]]]:
    """Vertices sorted by color, and an iterator over all color-preserving
    assignments of new positions (as old->new maps)."""
    order = sorted(range(len(colors)), key=lambda v: colors[v])
    classes: List[List[int]] = []
    for v in order:
        if classes and colors[classes[-1][0]] == colors[v]:
            classes[-1].append(v)
        else:
            classes.append([v])

    def gen():
        slots = []
        pos = 0
        for cls in classes:
            slots.append(list(range(pos, pos + len(cls))))
            pos += len(cls)
        for choice in itertools.product(*(itertools.permutations(s) for s in slots)):
            perm = [0] * len(colors)
            for cls, targets in zip(classes, choice):
                for v, t in zip(cls, targets):
                    perm[v] = t
            yield perm

    return order, gen()


def canonical_form(graph: LabeledGraph) -> tuple:
    """An isomorphism invariant that determines the labeled graph up to isomorphism."""
    colors = _vertex_colors(graph)
    order, perms = _class_permutations(colors)
    best = min(_edge_code(graph, p) for p in perms)
    return (tuple(colors[v] for v in order), best)


def canonicalize(graph: LabeledGraph) -> LabeledGraph:
    """The representative of ``graph``'s isomorphism class with vertices in canonical order."""
    colors = _vertex_colors(graph)
    _, perms = _class_permutations(colors)
    best_perm = min(perms, key=lambda p: _edge_code(graph, p))
    return _relabel(graph, best_perm)


def _relabel(graph: LabeledGraph, perm: Sequence[int]) -> LabeledGraph:
    nv = graph.num_vertices
    genera = [0] * nv
    markings = [0] * nv
    for v in range(nv):
        genera[perm[v]] = graph.genera[v]
        markings[perm[v]] = graph.markings[v]
    edges = _edge_code(graph, perm)
    return LabeledGraph(
        genera=tuple(genera),
        markings=tuple(markings),
        edges=edges,
        ordered=tuple((perm[v], k) for v, k in graph.ordered),
        unordered=tuple(sorted((perm[v], k) for v, k in graph.unordered)),
        dilaton=tuple(sorted((perm[v], k) for v, k in graph.dilaton)),
    )


def aut_order(graph: LabeledGraph) -> int:
    """Order of the group of label-preserving automorphisms.

    Vertex permutations are brute-forced inside the color classes; each one
    that preserves the edge multiset lifts to the same number of half-edge
    permutations, namely the product of multiplicity factorials of parallel
    edges, unordered leaves and dilaton leaves, times 2 for every self-loop
    whose two half-edges carry equal heights.
    """
    colors = _vertex_colors(graph)
    _, perms = _class_permutations(colors)
    # two placements give the same edge code exactly when they differ by an
    # automorphism, so count the placements that reproduce the first one
    codes = [_edge_code(graph, p) for p in perms]
    reference = codes[0]
    vertex_auts = codes.count(reference)
    lifts = 1
    for mult in Counter(reference).values():
        lifts *= factorial(mult)
    for a, b in reference:
        if a == b:
            lifts *= 2
    for group in (graph.unordered, graph.dilaton):
        for mult in Counter(group).values():
            lifts *= factorial(mult)
    return vertex_auts * lifts


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Core:
    genera: Tuple[int, ...]
    pairs: Tuple[Tuple[int, int], ...]
    ordered: Tuple[int, ...]  # vertex of each ordered leaf
    unordered: Tuple[int, ...]  # number of unordered leaves per vertex


def _core_valence(core: _Core, v: int) -> int:
    val = core.unordered[v] + sum(1 for u in core.ordered if u == v)
    for a, b in core.pairs:
        val += (a == v) + (b == v)
    return val


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _cores(g: int, n_ordered: int, n_unordered: int) -> List[_Core]:
    """Stable connected graphs of genus g with the given leaves (no heights,
    markings or dilaton leaves), one per isomorphism class."""
    n_leaves = n_ordered + n_unordered
    v_max = 2 * g - 2 + n_leaves
    if v_max < 1:
        return []
    seen = set()
    out = []
    for nv in range(1, v_max + 1):
        all_pairs = [(i, j) for i in range(nv) for j in range(i, nv)]
        for genera in itertools.combinations_with_replacement(range(g, -1, -1), nv):
            n_edges = g - 1 - sum(genera) + nv
            if n_edges < nv - 1:
                continue
            for pairs in itertools.combinations_with_replacement(all_pairs, n_edges):
                if not _connected(nv, pairs):
                    continue
                for ordered in itertools.product(range(nv), repeat=n_ordered):
                    for unordered in _compositions(n_unordered, nv):
                        core = _Core(tuple(genera), pairs, ordered, unordered)
                        if any(
                            2 * genera[v] - 2 + _core_valence(core, v) <= 0 for v in range(nv)
                        ):
                            continue
                        skeleton = LabeledGraph(
                            genera=core.genera,
                            markings=tuple(core.unordered),
                            edges=tuple(((a, 0), (b, 0)) for a, b in pairs),
                            ordered=tuple((v, 0) for v in ordered),
                        )
                        key = canonical_form(skeleton)
                        if key in seen:
                            continue
                        seen.add(key)
                        out.append(core)
    return out


def _vertex_decorations(genus: int, edge_slots: int, n_ordered_here: int, n_unordered_here: int):
    """Per-vertex choices: heights of edge-ends and ordered leaves (in slot order),
    a sorted tuple of unordered-leaf heights, and a sorted tuple of dilaton heights."""
    core_val = edge_slots + n_ordered_here + n_unordered_here
    m_max = 3 * genus - 3 + core_val
    for m in range(0, max(m_max, 0) + 1):
        dim = 3 * genus - 3 + core_val + m
        if dim < 2 * m:
            continue
        for dil_total in range(2 * m, dim + 1):
            for dil in _nonincreasing(dil_total, m, 2):
                rest = dim - dil_total
                for unord_total in range(rest + 1):
                    for unord in _nonincreasing(unord_total, n_unordered_here, 0):
                        for slots in _compositions(rest - unord_total, edge_slots + n_ordered_here):
                            yield slots, tuple(sorted(unord)), tuple(sorted(dil))


def _nonincreasing(total: int, parts: int, minimum: int, cap: Optional[int] = None):
    """Nonincreasing tuples of ``parts`` integers >= minimum summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    hi = total - minimum * (parts - 1)
    if cap is not None:
        hi = min(hi, cap)
    for first in range(hi, minimum - 1, -1):
        for rest in _nonincreasing(total - first, parts - 1, minimum, first):
            yield (first,) + rest


def _decorate(core: _Core, n_markings: int) -> Iterator[LabeledGraph]:
    nv = len(core.genera)
    # slot lists per vertex: edge-ends first (edge index, side), then ordered leaves
    slots: List[List[tuple]] = [[] for _ in range(nv)]
    for e, (a, b) in enumerate(core.pairs):
        slots[a].append(("e", e, 0))
        slots[b].append(("e", e, 1))
    for j, v in enumerate(core.ordered):
        slots[v].append(("o", j))
    per_vertex = []
    for v in range(nv):
        n_ord_here = sum(1 for s in slots[v] if s[0] == "o")
        n_edge_here = len(slots[v]) - n_ord_here
        per_vertex.append(
            list(_vertex_decorations(core.genera[v], n_edge_here, n_ord_here, core.unordered[v]))
        )
    for choice in itertools.product(*per_vertex):
        edge_heights = [[0, 0] for _ in core.pairs]
        ordered = [None] * len(core.ordered)
        unordered = []
        dilaton = []
        for v, (heights, unord, dil) in enumerate(choice):
            for slot, k in zip(slots[v], heights):
                if slot[0] == "e":
                    edge_heights[slot[1]][slot[2]] = k
                else:
                    ordered[slot[1]] = (v, k)
            unordered.extend((v, k) for k in unord)
            dilaton.extend((v, k) for k in dil)
        edges = tuple(
            ((a, edge_heights[e][0]), (b, edge_heights[e][1])) for e, (a, b) in enumerate(core.pairs)
        )
        for markings in itertools.product(range(n_markings), repeat=nv):
            yield LabeledGraph(
                genera=core.genera,
                markings=markings,
                edges=edges,
                ordered=tuple(ordered),
                unordered=tuple(sorted(unordered)),
                dilaton=tuple(sorted(dilaton)),
            )


_enum_cache: Dict[tuple, Tuple[LabeledGraph, ...]] = {}
_enum_lock = threading.Lock()


def enumerate_graphs(
    n_markings: int, g: int, n_ordered: int, n_unordered: int = 0
) -> Tuple[LabeledGraph, ...]:
    """All stable labeled graphs of genus g with ``n_ordered`` ordered and
    ``n_unordered`` unordered ordinary leaves, markings drawn from
    ``n_markings`` characters, one canonical representative per isomorphism class.

    ``n_markings`` may also be an :class:`OrbifoldData` (its character count is used).
    """
    if isinstance(n_markings, OrbifoldData):
        n_markings = len(n_markings.characters)
    key = (n_markings, g, n_ordered, n_unordered)
    hit = _enum_cache.get(key)
    if hit is not None:
        return hit
    seen = set()
    graphs = []
    for core in _cores(g, n_ordered, n_unordered):
        for graph in _decorate(core, n_markings):
            canon = canonicalize(graph)
            if canon in seen:
                continue
            seen.add(canon)
            graphs.append(canon)
    result = tuple(graphs)
    with _enum_lock:
        _enum_cache.setdefault(key, result)
    return result


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------


class EdgeTable:
    """Edge weights [z^k zeta^l] (delta - sum_gamma R(-z)^gamma_alpha R(-zeta)^gamma_beta)/(z+zeta),
    without the |G|^2 factor, cached per marking pair."""

    def __init__(self, R: RMatrix):
        self.R = R
        self._cache: Dict[Tuple[int, int], TruncSeries] = {}
        self._lock = threading.Lock()

    def numerator(self, alpha: int, beta: int) -> TruncSeries:
        R = self.R
        orb = R.orb
        order = R.order
        m = len(orb.characters)
        coeffs: Dict[Tuple[int, int], PuiseuxPoly] = {}
        for gamma in range(m):
            left = R.entry_neg(gamma, alpha)
            right = R.entry_neg(gamma, beta)
            for (i,), a in left.coeffs.items():
                for (j,), b in right.coeffs.items():
                    if i + j > order:
                        continue
                    p = a * b
                    coeffs[(i, j)] = coeffs[(i, j)] + p if (i, j) in coeffs else p
        numer = {k: -v for k, v in coeffs.items()}
        if alpha == beta:
            one = PuiseuxPoly.constant(orb.r, orb.exponent, 1)
            numer[(0, 0)] = numer[(0, 0)] + one if (0, 0) in numer else one
        return TruncSeries(("z", "zeta"), order, orb.r, orb.exponent, numer)

    def series(self, alpha: int, beta: int) -> TruncSeries:
        hit = self._cache.get((alpha, beta))
        if hit is None:
            hit = divide_by_zplus_zeta(self.numerator(alpha, beta))
            with self._lock:
                hit = self._cache.setdefault((alpha, beta), hit)
        return hit

    def weight(self, alpha: int, beta: int, k: int, l: int) -> PuiseuxPoly:
        if k + l > self.R.order - 1:
            raise ValueError(
                f"edge heights ({k}, {l}) need R truncated at order >= {k + l + 1}, have {self.R.order}"
            )
        return self.series(alpha, beta)[(k, l)]


def _check_normalization(normalization: str) -> None:
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}")


def _leaf_normalizer(orb: OrbifoldData) -> PuiseuxPoly:
    """1/(|G| sqrt(e_1))."""
    return PuiseuxPoly.mono(orb.r, orb.exponent, [mpq(-1, 2)] * orb.r, mpq(1, orb.order))


def _as_poly(orb: OrbifoldData, c) -> PuiseuxPoly:
    if isinstance(c, PuiseuxPoly):
        return c
    return PuiseuxPoly.constant(orb.r, orb.exponent, c)


def leaf_weight_ordinary(
    orb: OrbifoldData, R: RMatrix, alpha: int, k: int, u: Series, normalization: str = TWISTED
) -> PuiseuxPoly:
    """[z^k] sum_beta R(-z)^beta_alpha u^beta(z), divided by |G| sqrt(e_1) when equivariant."""
    _check_normalization(normalization)
    if k > R.order:
        raise ValueError(f"leaf height {k} beyond R truncation order {R.order}")
    acc = PuiseuxPoly.zero(orb.r, orb.exponent)
    for (beta, a), c in u.items():
        if a <= k:
            coef = R.coefficient_neg(beta, alpha, k - a)
            if coef:
                acc = acc + coef * _as_poly(orb, c)
    if normalization == EQUIVARIANT:
        acc = acc * _leaf_normalizer(orb)
    return acc


def leaf_weight_dilaton(
    orb: OrbifoldData, R: RMatrix, alpha: int, k: int, normalization: str = TWISTED
) -> PuiseuxPoly:
    """[z^(k-1)] (-sum_beta R(-z)^beta_alpha), divided by |G| sqrt(e_1) when equivariant."""
    _check_normalization(normalization)
    if k < 2:
        raise ValueError("dilaton leaves have height >= 2")
    if k - 1 > R.order:
        raise ValueError(f"dilaton height {k} beyond R truncation order {R.order}")
    acc = PuiseuxPoly.zero(orb.r, orb.exponent)
    for beta in range(len(orb.characters)):
        acc = acc - R.coefficient_neg(beta, alpha, k - 1)
    if normalization == EQUIVARIANT:
        acc = acc * _leaf_normalizer(orb)
    return acc


def edge_weight(
    orb: OrbifoldData,
    R: RMatrix,
    alpha: int,
    beta: int,
    k: int,
    l: int,
    normalization: str = TWISTED,
    table: Optional[EdgeTable] = None,
) -> PuiseuxPoly:
    """Edge weight; includes the |G|^2 factor in the twisted normalization only."""
    _check_normalization(normalization)
    table = table or EdgeTable(R)
    value = table.weight(alpha, beta, k, l)
    if normalization == TWISTED:
        value = value * (orb.order**2)
    return value


def vertex_weight(orb: OrbifoldData, genus: int, heights: Sequence[int], normalization: str = TWISTED) -> PuiseuxPoly:
    psi = psi_integral(genus, heights)
    if not psi:
        return PuiseuxPoly.zero(orb.r, orb.exponent)
    if normalization == TWISTED:
        return PuiseuxPoly.constant(orb.r, orb.exponent, mpq(orb.order) ** (2 * genus - 2) * psi)
    power = 2 * genus - 2 + len(heights)
    return PuiseuxPoly.mono(
        orb.r, orb.exponent, [mpq(power, 2)] * orb.r, mpq(orb.order) ** power * psi
    )


@dataclass
class CorrelatorRequest:
    """Correlator <u_1, ..., u_n, u, ..., u>_g with n' copies of the shared series u.

    Series map (character index, descendant a) to coefficients (rational,
    :class:`CycRational` or :class:`PuiseuxPoly`), in the phi basis for the
    twisted normalization and in the normalized phi-bar basis for the
    equivariant one.
    """

    orb: OrbifoldData
    g: int
    ordered: Sequence[Series] = ()
    unordered: Optional[Series] = None
    n_unordered: int = 0
    normalization: str = EQUIVARIANT

    def __post_init__(self):
        _check_normalization(self.normalization)
        if self.n_unordered < 0:
            raise ValueError("n' must be nonnegative")
        if self.n_unordered and self.unordered is None:
            raise ValueError("unordered leaves need a shared series")

    @property
    def n_leaves(self) -> int:
        return len(self.ordered) + self.n_unordered


class GraphSum:
    """Weights and graph-sum assembly for one orbifold at one truncation order."""

    def __init__(self, orb: OrbifoldData, order: int, R: Optional[RMatrix] = None):
        self.orb = orb
        self.R = R if R is not None else RMatrix(orb, order)
        self._prepared: Dict[tuple, list] = {}
        self.edges = EdgeTable(self.R)
        self._dilaton: Dict[tuple, PuiseuxPoly] = {}
        self._vertex: Dict[tuple, PuiseuxPoly] = {}
        self._edge: Dict[tuple, PuiseuxPoly] = {}

    def dilaton(self, alpha: int, k: int, normalization: str) -> PuiseuxPoly:
        key = (alpha, k, normalization)
        hit = self._dilaton.get(key)
        if hit is None:
            hit = self._dilaton[key] = leaf_weight_dilaton(self.orb, self.R, alpha, k, normalization)
        return hit

    def vertex(self, genus: int, heights: Sequence[int], normalization: str) -> PuiseuxPoly:
        key = (genus, tuple(sorted(heights)), normalization)
        hit = self._vertex.get(key)
        if hit is None:
            hit = self._vertex[key] = vertex_weight(self.orb, genus, heights, normalization)
        return hit

    def edge(self, alpha: int, beta: int, k: int, l: int, normalization: str) -> PuiseuxPoly:
        key = (alpha, beta, k, l, normalization)
        hit = self._edge.get(key)
        if hit is None:
            hit = self._edge[key] = edge_weight(self.orb, self.R, alpha, beta, k, l, normalization, self.edges)
        return hit

    def inner_weight(self, graph: LabeledGraph, normalization: str) -> PuiseuxPoly:
        """Vertex, edge and dilaton-leaf factors (everything except ordinary leaves)."""
        orb = self.orb
        acc = PuiseuxPoly.constant(orb.r, orb.exponent, 1)
        for v, genus in enumerate(graph.genera):
            acc = acc * self.vertex(genus, graph.heights_at(v), normalization)
            if not acc:
                return acc
        for (a, k), (b, l) in graph.edges:
            acc = acc * self.edge(graph.markings[a], graph.markings[b], k, l, normalization)
            if not acc:
                return acc
        for v, k in graph.dilaton:
            acc = acc * self.dilaton(graph.markings[v], k, normalization)
            if not acc:
                return acc
        return acc

    def _leaf_function(self, request: CorrelatorRequest):
        """Memoized ordinary-leaf factor for (slot, marking, height); slot -1 is the shared series."""
        norm = request.normalization
        leaves: Dict[tuple, PuiseuxPoly] = {}

        def leaf(slot, alpha, k):
            hit = leaves.get((slot, alpha, k))
            if hit is None:
                u = request.unordered if slot < 0 else request.ordered[slot]
                hit = leaves[(slot, alpha, k)] = leaf_weight_ordinary(self.orb, self.R, alpha, k, u, norm)
            return hit

        return leaf

    def graph_weight(self, graph: LabeledGraph, request: CorrelatorRequest, leaf=None) -> PuiseuxPoly:
        if len(graph.ordered) != len(request.ordered) or len(graph.unordered) != request.n_unordered:
            raise ValueError("graph leaves do not match the request")
        if leaf is None:
            leaf = self._leaf_function(request)
        acc = self.inner_weight(graph, request.normalization)
        slots = [(j, v, k) for j, (v, k) in enumerate(graph.ordered)] + [(-1, v, k) for v, k in graph.unordered]
        for slot, v, k in slots:
            if not acc:
                return acc
            acc = acc * leaf(slot, graph.markings[v], k)
        return acc

    def graph_weights(self, request: CorrelatorRequest, graphs=None):
        """(graph, weight) for every graph of the request, sharing leaf factors."""
        if graphs is None:
            graphs = enumerate_graphs(self.orb, request.g, len(request.ordered), request.n_unordered)
        leaf = self._leaf_function(request)
        for graph in graphs:
            yield graph, self.graph_weight(graph, request, leaf)

    def prepared(self, g: int, n_ordered: int, n_unordered: int, normalization: str):
        """(graph, inner_weight / |Aut|) for every graph whose inner weight is nonzero."""
        key = (g, n_ordered, n_unordered, normalization)
        hit = self._prepared.get(key)
        if hit is None:
            hit = []
            for graph in enumerate_graphs(len(self.orb.characters), g, n_ordered, n_unordered):
                inner = self.inner_weight(graph, normalization)
                if inner:
                    hit.append((graph, inner * mpq(1, aut_order(graph))))
            self._prepared[key] = hit
        return hit

    def correlator(self, request: CorrelatorRequest, graphs=None) -> PuiseuxPoly:
        """sum over graphs of graph_weight / |Aut|, i.e. <u_1..u_n, u..u>_g / n'!."""
        norm = request.normalization
        if graphs is None:
            items = self.prepared(request.g, len(request.ordered), request.n_unordered, norm)
        else:
            items = [(gr, self.inner_weight(gr, norm) * mpq(1, aut_order(gr))) for gr in graphs]
        leaf = self._leaf_function(request)
        one = PuiseuxPoly.constant(self.orb.r, self.orb.exponent, 1)
        acc = PuiseuxPoly.zero(self.orb.r, self.orb.exponent)
        for graph, w in items:
            factors = [leaf(j, graph.markings[v], k) for j, (v, k) in enumerate(graph.ordered)]
            factors += [leaf(-1, graph.markings[v], k) for v, k in graph.unordered]
            if not all(factors):
                continue
            for f in factors:
                if f != one:
                    w = w * f
            acc = acc + w
        return acc


def graph_weight(orb: OrbifoldData, R: RMatrix, graph: LabeledGraph, request: CorrelatorRequest) -> PuiseuxPoly:
    return GraphSum(orb, R.order, R=R).graph_weight(graph, request)


def correlator(request: CorrelatorRequest, order: Optional[int] = None) -> PuiseuxPoly:
    """Graph-sum value of <u_1, ..., u_n, u, ..., u>_g / n'! (Puiseux polynomial in w)."""
    if order is None:
        order = query_order(request.g, request.n_leaves)
    return GraphSum(request.orb, order).correlator(request)


def monomial_series(orb: OrbifoldData, gamma: int, a: int) -> Dict[Tuple[int, int], CycRational]:
    """The series z^a phi_gamma (or z^a phi-bar_gamma)."""
    return {(gamma, a): CycRational.one(orb.exponent)}


def _class_vector(orb: OrbifoldData, tag: str, label: Sequence[int], normalization: str) -> List[PuiseuxPoly]:
    """Coordinates of a class in the phi basis (twisted) or the phi-bar basis (equivariant).

    1_h = sum_gamma chi_gamma(h) phi_gamma, and the same relation holds between
    the normalized classes 1-bar_h = 1_h / prod_i w_i^{c_i(h)} and phi-bar_gamma.
    """
    r, n = orb.r, orb.exponent
    size = len(orb.characters)
    twisted = normalization == TWISTED

    def unit(h, power):
        # power * c(h) exponents times chi_gamma(h) in every coordinate
        mono = [power * c for c in orb.rotation[h]]
        return [PuiseuxPoly.mono(r, n, mono, orb.char_value(gamma, h)) for gamma in orb.characters]

    if tag in ("unit_h", "unit_bar_h"):
        h = orb.reduce(label)
        native = (tag == "unit_h") == twisted
        return unit(h, 0 if native else (-1 if twisted else 1))
    gamma = orb.reduce(label)
    if (tag == "phi") == twisted:
        return [
            PuiseuxPoly.constant(r, n, 1 if d == orb.character_index(gamma) else 0) for d in range(size)
        ]
    # phi in the phi-bar basis or vice versa: go through the sector basis
    power = -1 if twisted else 1
    acc = [PuiseuxPoly.zero(r, n) for _ in range(size)]
    inv = mpq(1, orb.order)
    for h in orb.elements:
        weight = orb.char_value(gamma, orb.inverse(h)) * inv
        for d, term in enumerate(unit(h, power)):
            acc[d] = acc[d] + term * weight
    return acc


def insertion_series(orb: OrbifoldData, insertion, normalization: str) -> Dict[Tuple[int, int], PuiseuxPoly]:
    """The series z^a (class) of an :class:`~orbigw.bgpotential.Insertion` in the basis
    matching ``normalization``."""
    _check_normalization(normalization)
    vec = _class_vector(orb, insertion.tag, insertion.label, normalization)
    return {(d, insertion.a): c for d, c in enumerate(vec) if c}


def add_series(*series: Series) -> Dict[Tuple[int, int], object]:
    out: Dict[Tuple[int, int], object] = {}
    for s in series:
        for k, v in s.items():
            out[k] = out[k] + v if k in out else v
    return out
