"""Extremal constructions and structural checks.

The blow-up construction replaces the vertices of a monochromatic-triangle-
free (k-1)-colouring of a small complete graph by balanced vertex classes,
fills the classes with the remaining colour, and inherits the base colouring
across classes.  For the default 3-colour case the base is the unique
triangle-free 2-colouring of K_5 (green 5-cycle plus blue complement) and the
class-filling colour is red.

Membership in the wider extremal family additionally allows recolouring a
matching between any two classes with the clique colour, as long as no new
monochromatic triangle appears.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import networkx as nx

from .graphs import (ColouredGraph, SizeLimitError, canonical_key,
                     corollary_value, mono_triangles)

EXACT_PARTITION_MAX_N = 25
MAX_CLIQUE_N = 40


@dataclass(frozen=True)
class ClassPartition:
    """Five disjoint monochromatic cliques of one colour covering V."""

    classes: tuple          # tuple of frozenset
    colour: int

    def validate(self, G: ColouredGraph) -> bool:
        seen = set()
        for cls in self.classes:
            if seen & cls:
                return False
            seen |= cls
            for u, v in combinations(sorted(cls), 2):
                if G.colour(u, v) != self.colour:
                    return False
        return seen == set(range(G.n)) and len(self.classes) == 5


@dataclass(frozen=True)
class MembershipWitness:
    partition: ClassPartition
    base_colours: dict      # (i, j) class pair -> cross colour
    matchings: dict         # (i, j) class pair -> frozenset of recoloured edges


def pentagon_base() -> ColouredGraph:
    """The unique monochromatic-triangle-free 2-colouring of K_5:
    green cycle 1-2-3-4-5-1, blue complement."""
    rows = [[0] * 5 for _ in range(5)]
    for i in range(5):
        for j in range(i + 1, 5):
            green = (j - i) % 5 in (1, 4)
            rows[i][j] = rows[j][i] = 3 if green else 2
    return ColouredGraph.from_matrix(rows)


def _fill_colour(base: ColouredGraph, k: int) -> int:
    used = set(base.entries)
    free = [c for c in range(1, k + 1) if c not in used]
    if not free:
        raise ValueError("base colouring leaves no colour for the classes")
    return free[0]


def class_sizes(n: int, m: int) -> list[int]:
    """Balanced class sizes, larger classes first."""
    q, r = divmod(n, m)
    return [q + 1] * r + [q] * (m - r)


def build_gex(n: int, k: int = 3, base: ColouredGraph | None = None) -> ColouredGraph:
    """Balanced blow-up of a triangle-free base colouring.

    Classes take the sizes from class_sizes (deterministic layout, larger
    classes on the lower base vertices), intra-class edges take the colour
    the base does not use, and cross edges inherit the base colouring.
    """
    if base is None:
        base = pentagon_base()
    m = base.n
    if n < m:
        raise ValueError("n must be at least |base| = %d" % m)
    if mono_triangles(base)["total"] != 0:
        raise ValueError("base colouring has a monochromatic triangle")
    fill = _fill_colour(base, k)
    sizes = class_sizes(n, m)
    owner = []
    for ci, size in enumerate(sizes):
        owner.extend([ci] * size)
    rows = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if owner[u] == owner[v]:
                c = fill
            else:
                c = base.colour(owner[u], owner[v])
            rows[u][v] = rows[v][u] = c
    return ColouredGraph.from_matrix(rows, k)


def _sizes_feasible(classes, size_pool, remaining) -> bool:
    """Can the current class sizes still grow into the target multiset?

    With both lists sorted in decreasing order, an embedding of classes into
    distinct targets exists iff the i-th largest class fits under the i-th
    largest target.
    """
    if len(classes) > len(size_pool):
        return False
    current = sorted((len(c) for c in classes), reverse=True)
    return all(c <= p for c, p in zip(current, size_pool))


def _partitions_into_cliques(G: ColouredGraph, colour: int, sizes=None,
                             num_classes: int = 5):
    """Yield partitions of V(G) into `num_classes` cliques of `colour`
    (backtracking over vertices in order).  When `sizes` is given the class
    size multiset must match it exactly."""
    n = G.n
    mat = G.matrix()
    size_pool = sorted(sizes, reverse=True) if sizes is not None else None
    if size_pool is not None:
        num_classes = len(size_pool)
    classes: list[list[int]] = []

    def feasible(remaining):
        if size_pool is None:
            return len(classes) <= num_classes and \
                len(classes) + remaining >= num_classes
        return _sizes_feasible(classes, size_pool, remaining)

    def place(v: int):
        if v == n:
            if len(classes) == num_classes and (
                    size_pool is None or
                    sorted((len(c) for c in classes), reverse=True) == size_pool):
                yield tuple(frozenset(c) for c in classes)
            return
        for cls in classes:
            if all(mat[v][u] == colour for u in cls):
                cls.append(v)
                if feasible(n - v - 1):
                    yield from place(v + 1)
                cls.pop()
        if len(classes) < num_classes:
            classes.append([v])
            if feasible(n - v - 1):
                yield from place(v + 1)
            classes.pop()

    yield from place(0)


def clique_partition_5(G: ColouredGraph) -> ClassPartition | None:
    """A partition of V(G) into 5 monochromatic cliques of one colour, or
    None.  Exact search up to EXACT_PARTITION_MAX_N vertices; above that a
    greedy maximal-clique heuristic that may miss existing partitions."""
    if G.n < 5:
        return None
    if G.n <= EXACT_PARTITION_MAX_N:
        for colour in range(1, G.k + 1):
            for classes in _partitions_into_cliques(G, colour):
                part = ClassPartition(classes, colour)
                if part.validate(G):
                    return part
        return None
    return _greedy_partition(G)


def _greedy_partition(G: ColouredGraph) -> ClassPartition | None:
    for colour in range(1, G.k + 1):
        remaining = set(range(G.n))
        classes = []
        graph = _colour_graph(G, colour)
        while remaining and len(classes) < 5:
            sub = graph.subgraph(remaining)
            best = max(nx.find_cliques(sub), key=len, default=None)
            if best is None:
                best = [min(remaining)]
            classes.append(frozenset(best))
            remaining -= set(best)
        if not remaining and len(classes) == 5:
            part = ClassPartition(tuple(classes), colour)
            if part.validate(G):
                return part
    return None


def _colour_graph(G: ColouredGraph, colour: int) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    for u in range(G.n):
        for v in range(u + 1, G.n):
            if G.colour(u, v) == colour:
                g.add_edge(u, v)
    return g


def maximal_mono_cliques(G: ColouredGraph, min_size: int = 4) -> list[tuple]:
    """All inclusion-maximal monochromatic cliques of size >= min_size,
    as (frozenset, colour) pairs.  Cliques of different colours may
    intersect."""
    if G.n > MAX_CLIQUE_N:
        raise SizeLimitError("maximal clique search limited to n <= %d"
                             % MAX_CLIQUE_N)
    out = []
    for colour in range(1, G.k + 1):
        for clique in nx.find_cliques(_colour_graph(G, colour)):
            if len(clique) >= min_size:
                out.append((frozenset(clique), colour))
    out.sort(key=lambda t: (t[1], sorted(t[0])))
    return out


def is_member_gn(G: ColouredGraph):
    """Membership in the extremal family: a balanced 5-class clique
    partition in some colour c, cross pairs coloured in a single base colour
    except for a c-matching, base pattern isomorphic to the pentagon
    colouring, and no monochromatic triangles beyond the c-triangles inside
    classes.  Returns (bool, witness or None)."""
    n = G.n
    if n < 5:
        return False, None
    if G.k != 3:
        raise ValueError("membership test is defined for k = 3")
    if n > EXACT_PARTITION_MAX_N:
        raise SizeLimitError("membership test limited to n <= %d"
                             % EXACT_PARTITION_MAX_N)
    target_sizes = tuple(sorted(class_sizes(n, 5), reverse=True))
    per = mono_triangles(G)
    if per["total"] != corollary_value(n):
        return False, None
    for colour in range(1, 4):
        # all monochromatic triangles must be in the clique colour
        if any(per[c] for c in range(1, 4) if c != colour):
            continue
        for classes in _partitions_into_cliques(G, colour, target_sizes):
            witness = _check_cross_structure(G, classes, colour)
            if witness is not None:
                return True, witness
    return False, None


def _check_cross_structure(G: ColouredGraph, classes, colour):
    """Validate cross-pair colours for a candidate partition; returns a
    MembershipWitness or None."""
    mat = G.matrix()
    npairs = list(combinations(range(5), 2))
    base_colour: dict = {}
    matchings: dict = {}
    ambiguous = []
    for i, j in npairs:
        edges = [(u, v) for u in sorted(classes[i]) for v in sorted(classes[j])]
        non_c = {mat[u][v] for u, v in edges if mat[u][v] != colour}
        c_edges = [(u, v) for u, v in edges if mat[u][v] == colour]
        if len(non_c) > 1:
            return None
        # recoloured cross edges must form a matching
        touched = [x for e in c_edges for x in e]
        if len(touched) != len(set(touched)):
            return None
        matchings[i, j] = frozenset(c_edges)
        if non_c:
            base_colour[i, j] = non_c.pop()
        else:
            ambiguous.append((i, j))
    others = [c for c in range(1, 4) if c != colour]
    for choice in product(others, repeat=len(ambiguous)):
        assignment = dict(base_colour)
        assignment.update(dict(zip(ambiguous, choice)))
        rows = [[0] * 5 for _ in range(5)]
        for (i, j), c in assignment.items():
            rows[i][j] = rows[j][i] = c
        base = ColouredGraph.from_matrix(rows)
        # a triangle-free 2-colouring of K_5 is automatically the pentagon
        # pattern (unique up to isomorphism), in whatever colour pair
        if mono_triangles(base)["total"] == 0:
            part = ClassPartition(tuple(classes), colour)
            return MembershipWitness(part, assignment, matchings)
    return None


def brute_min_mono(n: int, k: int):
    """Exact minimum number of monochromatic triangles over all
    k-colourings of K_n, with the complete list of minimiser canonical
    keys.  Exhaustive up to isomorphism; limited to (k=2, n<=7) and
    (k=3, n<=6)."""
    from .graphs import enumerate_models
    if not ((k == 2 and n <= 7) or (k == 3 and n <= 6) or (k == 1 and n <= 7)):
        raise SizeLimitError("brute force limited to k=2 n<=7 / k=3 n<=6")
    best = None
    minimisers = []
    for M in enumerate_models(n, k):
        t = mono_triangles(M)["total"]
        if best is None or t < best:
            best = t
            minimisers = [M]
        elif t == best:
            minimisers.append(M)
    return best, [canonical_key(M) for M in minimisers]
