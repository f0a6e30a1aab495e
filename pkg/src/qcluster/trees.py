"""Quivers, induced trees and chains, and closed forms for their F-polynomials.

A skew-symmetric matrix ``B`` gives the quiver with ``|b_ij|`` arrows
``i -> j`` whenever ``b_ij < 0``.  For a vertex set ``T`` inducing a tree,
the quantum F-polynomial of the cluster variable ``x_T`` is a sum over the
subsets of ``T`` closed under outgoing arrows, and its g-vector comes from a
bipartite matching count.  In type A every induced tree is a chain and the
chains index all non-initial cluster variables.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .classical import Matrix, as_matrix, mutate_matrix
from .errors import EntriesOutOfRange, NotSkewSymmetric, NotTypeA
from .fpoly import QFPoly
from .qscalar import QLaurent

__all__ = [
    "Quiver",
    "TreeSubset",
    "GammaData",
    "quiver_from_matrix",
    "closed_subsets",
    "tree_qfpoly",
    "gamma_data",
    "gamma_rank",
    "tree_gvector",
    "leaf_order",
    "check_type_a",
    "typeA_chains",
    "typeA_gvector",
    "linear_a_matrix",
    "random_type_a_matrix",
]


@dataclass(frozen=True)
class Quiver:
    """Vertices ``1..n`` and a sorted multiset of arcs ``(i, j)`` meaning ``i -> j``."""

    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for i, j in self.arcs:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"arc {i}->{j} leaves the vertex set [1, {self.n}]")
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if (j, i) in seen:
                raise ValueError(f"2-cycle between {i} and {j}")
            seen.add((i, j))
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))

    @property
    def matrix(self) -> Matrix:
        b = [[0] * self.n for _ in range(self.n)]
        for i, j in self.arcs:
            b[i - 1][j - 1] -= 1
            b[j - 1][i - 1] += 1
        return as_matrix(b)

    def digraph(self, vertices: Iterable[int] | None = None) -> nx.DiGraph:
        """Simple directed graph on ``vertices`` (all by default), multiplicities dropped."""
        keep = set(range(1, self.n + 1)) if vertices is None else set(vertices)
        g = nx.DiGraph()
        g.add_nodes_from(sorted(keep))
        g.add_edges_from((i, j) for i, j in self.arcs if i in keep and j in keep)
        return g

    def graph(self, vertices: Iterable[int] | None = None) -> nx.Graph:
        return self.digraph(vertices).to_undirected()

    def successors(self, k: int) -> set[int]:
        return {j for i, j in self.arcs if i == k}

    def predecessors(self, k: int) -> set[int]:
        return {i for i, j in self.arcs if j == k}

    def to_json(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs]}


def quiver_from_matrix(b) -> Quiver:
    b = as_matrix(b)
    n = len(b)
    for i in range(n):
        if len(b[i]) != n:
            raise ValueError("matrix must be square")
        for j in range(i, n):
            if b[i][j] != -b[j][i]:
                raise NotSkewSymmetric(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are {b[i][j]} and {b[j][i]}")
    arcs = [(i + 1, j + 1) for i in range(n) for j in range(n) for _ in range(max(0, -b[i][j]))]
    return Quiver(n, tuple(arcs))


def _require_unit_entries(q: Quiver) -> None:
    if len(set(q.arcs)) != len(q.arcs):
        i, j = next(a for a in q.arcs if q.arcs.count(a) > 1)
        raise EntriesOutOfRange(f"multiple arrows {i}->{j}; entries must lie in {{0, 1, -1}}")


@dataclass(frozen=True)
class TreeSubset:
    """Vertices ``p_1, ..., p_l`` in an order where every prefix induces a tree with ``p_i`` a leaf."""

    vertices: tuple[int, ...]

    @classmethod
    def checked(cls, vertices: Sequence[int], q: Quiver) -> "TreeSubset":
        vs = tuple(int(v) for v in vertices)
        if len(set(vs)) != len(vs):
            raise ValueError(f"repeated vertex in {list(vs)}")
        for i in range(1, len(vs) + 1):
            g = q.graph(vs[:i])
            if not nx.is_tree(g):
                raise ValueError(f"prefix {list(vs[:i])} does not induce a tree")
            if i > 1 and g.degree(vs[i - 1]) != 1:
                raise ValueError(f"vertex {vs[i - 1]} is not a leaf of the tree induced by {list(vs[:i])}")
        return cls(vs)

    @property
    def word(self) -> tuple[int, ...]:
        """Mutation word whose last mutated slot holds ``x_T``."""
        return self.vertices

    @property
    def as_set(self) -> frozenset[int]:
        return frozenset(self.vertices)


def leaf_order(vertices: Iterable[int], q: Quiver) -> TreeSubset:
    """Admissible ordering of a vertex set inducing a tree: peel leaves, then reverse."""
    vs = sorted(set(vertices))
    g = q.graph(vs)
    if vs and not nx.is_tree(g):
        raise ValueError(f"{vs} does not induce a tree")
    peeled = []
    g = g.copy()
    while g.number_of_nodes() > 1:
        leaf = min(v for v in g if g.degree(v) == 1)
        peeled.append(leaf)
        g.remove_node(leaf)
    peeled.extend(g.nodes)
    return TreeSubset(tuple(reversed(peeled)))


def _is_closed(s: frozenset[int], t: frozenset[int], q: Quiver) -> bool:
    return all(i in s for j, i in q.arcs if j in s and i in t)


def closed_subsets(t: TreeSubset | Iterable[int], q: Quiver) -> list[tuple[frozenset[int], int]]:
    """All ``S`` in ``T`` closed under arrows into ``T``, each with its component count."""
    tv = frozenset(t.vertices if isinstance(t, TreeSubset) else t)
    out = []
    members = sorted(tv)
    for r in range(len(members) + 1):
        for combo in itertools.combinations(members, r):
            s = frozenset(combo)
            if _is_closed(s, tv, q):
                out.append((s, nx.number_connected_components(q.graph(s)) if s else 0))
    return out


def tree_qfpoly(t: TreeSubset | Iterable[int], q: Quiver, d_scalar: int) -> QFPoly:
    """``sum_S q^(d phi(S)/2) Z^(e_S)`` over closed subsets ``S``; requires ``D = d I``."""
    if d_scalar <= 0:
        raise ValueError("d must be positive")
    terms = {}
    for s, phi in closed_subsets(t, q):
        a = tuple(int(i + 1 in s) for i in range(q.n))
        terms[a] = QLaurent.q_power(d_scalar * phi)
    return QFPoly(q.matrix, (d_scalar,) * q.n, terms)


@dataclass(frozen=True)
class GammaData:
    k: int
    i_in: frozenset[int]
    i_out: frozenset[int]
    path_pairs: frozenset[tuple[int, int]]


def gamma_data(t: TreeSubset | Iterable[int], q: Quiver, k: int) -> GammaData:
    """In/out neighbours of ``k`` inside ``T`` and the pairs ``(j, i)`` joined by a path ``j ~> i`` in ``T``."""
    _require_unit_entries(q)
    tv = frozenset(t.vertices if isinstance(t, TreeSubset) else t)
    i_in = frozenset(q.predecessors(k) & tv)
    i_out = frozenset(q.successors(k) & tv)
    dg = q.digraph(tv)
    pairs = frozenset((j, i) for j in i_out for i in i_in if nx.has_path(dg, j, i))
    return GammaData(k, i_in, i_out, pairs)


def gamma_rank(g: GammaData) -> int:
    """Maximum matching between ``I_out`` and ``I_in`` along ``path_pairs``."""
    if not g.path_pairs:
        return 0
    bg = nx.Graph()
    top = {("out", j) for j, _ in g.path_pairs}
    bg.add_edges_from((("out", j), ("in", i)) for j, i in g.path_pairs)
    matching = nx.bipartite.hopcroft_karp_matching(bg, top_nodes=top)
    return len(matching) // 2


def tree_gvector(t: TreeSubset | Iterable[int], q: Quiver) -> tuple[int, ...]:
    """``g_k = |I_out(k)| - rank(gamma_k) - [k in T]`` for every vertex ``k``."""
    tv = frozenset(t.vertices if isinstance(t, TreeSubset) else t)
    g = []
    for k in range(1, q.n + 1):
        data = gamma_data(tv, q, k)
        value = len(data.i_out) - gamma_rank(data) - int(k in tv)
        if k in tv and value != len(data.i_out) - 1:
            raise AssertionError(f"matching formula and leaf formula disagree at vertex {k}")
        g.append(value)
    return tuple(g)


def check_type_a(q: Quiver) -> None:
    """Raise :class:`NotTypeA` naming the first violated condition of the type-A characterization.

    Conditions are checked per component, so disjoint unions of type-A
    quivers are accepted.
    """
    if len(set(q.arcs)) != len(q.arcs):
        i, j = next(a for a in q.arcs if q.arcs.count(a) > 1)
        raise NotTypeA(f"condition (1): multiple arrows {i}->{j}")
    ug = q.graph()
    dg = q.digraph()
    for cyc in nx.chordless_cycles(ug):
        if len(cyc) > 3:
            raise NotTypeA(f"condition (1): induced cycle {cyc} of length {len(cyc)}")
        a, b, c = cyc
        if not ((dg.has_edge(a, b) and dg.has_edge(b, c) and dg.has_edge(c, a))
                or (dg.has_edge(b, a) and dg.has_edge(c, b) and dg.has_edge(a, c))):
            raise NotTypeA(f"condition (1): 3-cycle on {sorted(cyc)} is not oriented")
    for v in range(1, q.n + 1):
        nb = set(ug[v])
        deg = len(nb)
        if deg > 4:
            raise NotTypeA(f"condition (2): vertex {v} has degree {deg}")
        tri_pairs = [frozenset(p) for p in itertools.combinations(sorted(nb), 2) if ug.has_edge(*p)]
        if deg == 4:
            if not any(not (p & r) for p, r in itertools.combinations(tri_pairs, 2)):
                raise NotTypeA(f"condition (3): edges at vertex {v} do not split into two 3-cycles")
        elif deg == 3:
            ok = any(
                not any(x in p for p in tri_pairs for x in nb - pair)
                for pair in tri_pairs
            )
            if not ok:
                raise NotTypeA(f"condition (4): edges at vertex {v} violate the degree-3 rule")


def typeA_chains(q: Quiver) -> list[TreeSubset]:
    """Every vertex set inducing a chain, listed in path order from its smaller end."""
    check_type_a(q)
    ug = q.graph()
    found: dict[frozenset[int], tuple[int, ...]] = {}

    def grow(path: list[int]) -> None:
        key = frozenset(path)
        if key not in found:
            order = tuple(path) if path[0] <= path[-1] else tuple(reversed(path))
            found[key] = order
        end = path[-1]
        inside = set(path)
        for v in ug[end]:
            if v in inside:
                continue
            # v may touch only the current end of the path
            if any(ug.has_edge(v, u) for u in path[:-1]):
                continue
            path.append(v)
            grow(path)
            path.pop()

    for v in range(1, q.n + 1):
        grow([v])
    chains = sorted(found.values(), key=lambda c: (len(c), sorted(c)))
    return [TreeSubset(c) for c in chains]


def typeA_gvector(c: TreeSubset | Iterable[int], q: Quiver) -> tuple[int, ...]:
    """g-vector of the chain ``C`` from the type-A rule."""
    cv = frozenset(c.vertices if isinstance(c, TreeSubset) else c)
    g = []
    for k in range(1, q.n + 1):
        if k in cv:
            g.append(len(q.successors(k) & cv) - 1)
            continue
        ext = cv | {k}
        sub = q.graph(ext)
        is_chain = nx.is_tree(sub) and max(dict(sub.degree).values(), default=0) <= 2
        g.append(int(is_chain and bool(q.successors(k) & cv)))
    return tuple(g)


def linear_a_matrix(n: int) -> Matrix:
    """``b_{i,i+1} = 1``, ``b_{i+1,i} = -1``, zero elsewhere."""
    return as_matrix([[1 if j == i + 1 else -1 if j == i - 1 else 0 for j in range(n)] for i in range(n)])


def random_type_a_matrix(n: int, rng: random.Random, steps: int | None = None) -> Matrix:
    """Type-A exchange matrix reached from the linear orientation by random mutations."""
    b = linear_a_matrix(n)
    for _ in range(steps if steps is not None else 3 * n):
        b = mutate_matrix(b, rng.randint(1, n))
    return b
