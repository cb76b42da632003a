"""Edge-coloured complete graphs.

A `ColouredGraph` is a complete graph on n vertices whose edges carry colours
from {1..k} (k = 3 by default; 1 = red, 2 = blue, 3 = green).  This module
provides canonical forms and isomorphism testing, enumeration of colourings up
to isomorphism, an independent Burnside/cycle-index count as a cross-check,
exact subgraph densities, monochromatic-triangle counting, the closed-form
triangle-minimum formulas, and the "bad" family of 4-vertex colourings whose
density must vanish in near-extremal colourings.

Canonicalization is exhaustive over vertex permutations, vectorized with
numpy: the upper-triangle colour listing is evaluated under every relabelling
and the lexicographically smallest listing is the canonical key.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product

import numpy as np

CANON_MAX_N = 10       # exhaustive canonicalization limit
_PACK_BASE = 5         # digit base for packed keys; supports colours 0..4
_PACK_GROUP = 27       # 5**27 < 2**63


class SizeLimitError(ValueError):
    """Input exceeds the size supported by an exhaustive operation."""


class ColouredGraph:
    """Complete graph with an edge colouring over {1..k}.

    Stored as the row-major upper-triangle colour listing; the diagonal is 0.
    Immutable.
    """

    __slots__ = ("n", "k", "entries")

    def __init__(self, n: int, k: int = 3, entries=()):
        m = n * (n - 1) // 2
        entries = tuple(int(c) for c in entries)
        if len(entries) != m:
            raise ValueError("expected %d edge colours, got %d" % (m, len(entries)))
        if any(c < 1 or c > k for c in entries):
            raise ValueError("edge colour out of range 1..%d" % k)
        self.n = n
        self.k = k
        self.entries = entries

    @classmethod
    def from_matrix(cls, rows, k: int = 3) -> "ColouredGraph":
        n = len(rows)
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("colour matrix is not square")
            if rows[i][i] != 0:
                raise ValueError("diagonal entry must be 0")
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("colour matrix is not symmetric")
        ent = [rows[i][j] for i in range(n) for j in range(i + 1, n)]
        return cls(n, k, ent)

    @classmethod
    def from_edge_colours(cls, n: int, colouring, k: int = 3) -> "ColouredGraph":
        """Build from a mapping {(i, j): colour} over all pairs i < j."""
        ent = [colouring[i, j] for i in range(n) for j in range(i + 1, n)]
        return cls(n, k, ent)

    def colour(self, i: int, j: int) -> int:
        if i == j:
            return 0
        if i > j:
            i, j = j, i
        return self.entries[_pair_index(self.n, i, j)]

    def matrix(self):
        n = self.n
        rows = [[0] * n for _ in range(n)]
        t = 0
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] = rows[j][i] = self.entries[t]
                t += 1
        return rows

    def relabel(self, perm) -> "ColouredGraph":
        """Graph H with H[a][b] = self[perm[a]][perm[b]]."""
        n = self.n
        ent = [self.colour(perm[i], perm[j])
               for i in range(n) for j in range(i + 1, n)]
        return ColouredGraph(n, self.k, ent)

    def induced(self, vertices) -> "ColouredGraph":
        vs = list(vertices)
        ent = [self.colour(vs[i], vs[j])
               for i in range(len(vs)) for j in range(i + 1, len(vs))]
        return ColouredGraph(len(vs), self.k, ent)

    def edge_colour_counts(self) -> dict:
        counts = dict.fromkeys(range(1, self.k + 1), 0)
        for c in self.entries:
            counts[c] += 1
        return counts

    def __eq__(self, other):
        return (isinstance(other, ColouredGraph) and self.n == other.n
                and self.k == other.k and self.entries == other.entries)

    def __hash__(self):
        return hash((self.n, self.k, self.entries))

    def __repr__(self):
        return "ColouredGraph(n=%d, k=%d, %r)" % (self.n, self.k, self.entries)


def _pair_index(n: int, i: int, j: int) -> int:
    # row-major upper-triangle position of pair (i, j), i < j
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


@lru_cache(maxsize=32)
def _perm_array(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int8)


def _perm_index_matrix(n: int, perms: np.ndarray) -> np.ndarray:
    """Index matrix I with key(G, q) = entries[I[q]] for each relabelling q."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    idx = np.empty((len(perms), len(pairs)), dtype=np.int32)
    for t, (i, j) in enumerate(pairs):
        a = perms[:, i].astype(np.int32)
        b = perms[:, j].astype(np.int32)
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        idx[:, t] = lo * (2 * n - lo - 1) // 2 + (hi - lo - 1)
    return idx


@lru_cache(maxsize=16)
def _full_perm_index(n: int) -> np.ndarray:
    if n > 8:
        raise SizeLimitError("full permutation index only cached for n <= 8")
    return _perm_index_matrix(n, _perm_array(n))


def _pack_groups(rows: np.ndarray):
    """Pack digit rows (..., m) into a list of uint64 arrays, 27 digits each,
    preserving lexicographic order group by group."""
    m = rows.shape[-1]
    out = []
    for start in range(0, m, _PACK_GROUP):
        chunk = rows[..., start:start + _PACK_GROUP].astype(np.uint64)
        width = chunk.shape[-1]
        weights = np.array(
            [_PACK_BASE ** (width - 1 - t) for t in range(width)],
            dtype=np.uint64)
        out.append(chunk @ weights)
    return out


def _unpack_key(packed, m: int) -> bytes:
    digits = []
    remaining = m
    for value in packed:
        width = min(_PACK_GROUP, remaining)
        group = []
        v = int(value)
        for _ in range(width):
            group.append(v % _PACK_BASE)
            v //= _PACK_BASE
        digits.extend(reversed(group))
        remaining -= width
    return bytes(digits)


def canonical_keys_batch(flats: np.ndarray, n: int) -> list[bytes]:
    """Canonical keys for a batch of graphs given as a (g, m) uint8 array."""
    if n <= 1:
        return [bytes(row) for row in flats]
    idx = _full_perm_index(n) if n <= 8 else _perm_index_matrix(n, _perm_array(n))
    m = flats.shape[1]
    nperm = idx.shape[0]
    keys: list[bytes] = []
    budget = 60_000_000
    chunk = max(1, budget // (nperm * m))
    for start in range(0, flats.shape[0], chunk):
        block = flats[start:start + chunk]
        rows = block[:, idx.reshape(-1)].reshape(block.shape[0], nperm, m)
        groups = _pack_groups(rows)          # list of (g, nperm) uint64
        mins = []
        mask = np.ones_like(groups[0], dtype=bool)
        for g in groups:
            masked = np.where(mask, g, np.uint64(0xFFFFFFFFFFFFFFFF))
            gmin = masked.min(axis=1)
            mins.append(gmin)
            mask &= g == gmin[:, None]
        for row_i in range(block.shape[0]):
            keys.append(_unpack_key([mn[row_i] for mn in mins], m))
    return keys


def canonical_form(G: ColouredGraph):
    """Canonical key and the relabelling permutation achieving it.

    Returns (key, perm) where perm maps canonical positions to original
    vertices: G.relabel(perm).entries == key (as a byte sequence).
    Exhaustive over all n! relabellings; limited to n <= CANON_MAX_N.
    """
    n = G.n
    if n > CANON_MAX_N:
        raise SizeLimitError("canonical_form limited to n <= %d" % CANON_MAX_N)
    if n <= 1:
        return bytes(G.entries), tuple(range(n))
    flat = np.array(G.entries, dtype=np.uint8)
    m = flat.shape[0]
    best_key = None
    best_perm = None
    all_perms = _perm_array(n)
    chunk = 200_000
    for start in range(0, len(all_perms), chunk):
        perms = all_perms[start:start + chunk]
        idx = (_full_perm_index(n) if n <= 8 and len(perms) == len(all_perms)
               else _perm_index_matrix(n, perms))
        rows = flat[idx]
        groups = _pack_groups(rows)
        cand = np.arange(rows.shape[0])
        for g in groups:
            vals = g[cand]
            cand = cand[vals == vals.min()]
        pick = int(cand[0])
        key = bytes(int(x) for x in rows[pick])
        if best_key is None or key < best_key:
            best_key = key
            best_perm = tuple(int(x) for x in perms[pick])
    return best_key, best_perm


def canonical_key(G: ColouredGraph) -> bytes:
    return canonical_form(G)[0]


def key_hex(key: bytes) -> str:
    return key.hex()


def is_isomorphic(G: ColouredGraph, H: ColouredGraph) -> bool:
    """Colour-respecting isomorphism test.

    Key equality for n <= CANON_MAX_N; a pruned backtracking search above
    that (needed e.g. for 11-vertex extremal graphs).
    """
    if G.n != H.n or G.k != H.k:
        return False
    if sorted(G.entries) != sorted(H.entries):
        return False
    if G.n <= CANON_MAX_N:
        return canonical_key(G) == canonical_key(H)
    return _backtrack_isomorphic(G, H)


def _colour_profile(G: ColouredGraph, v: int):
    counts = [0] * (G.k + 1)
    for u in range(G.n):
        if u != v:
            counts[G.colour(u, v)] += 1
    return tuple(counts)


def _backtrack_isomorphic(G: ColouredGraph, H: ColouredGraph) -> bool:
    n = G.n
    gp = [_colour_profile(G, v) for v in range(n)]
    hp = [_colour_profile(H, v) for v in range(n)]
    if sorted(gp) != sorted(hp):
        return False
    gm = G.matrix()
    hm = H.matrix()
    assignment = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for w in range(n):
            if used[w] or gp[i] != hp[w]:
                continue
            ok = all(gm[i][j] == hm[w][assignment[j]] for j in range(i))
            if ok:
                assignment[i] = w
                used[w] = True
                if extend(i + 1):
                    return True
                used[w] = False
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# enumeration


def _check_enumeration_limit(l: int, k: int):
    if k == 1:
        if l > 12:
            raise SizeLimitError("enumeration limited to l <= 12 for k = 1")
    elif k == 2:
        if l > 8:
            raise SizeLimitError("enumeration limited to l <= 8 for k = 2")
    else:
        if l > 6:
            raise SizeLimitError("enumeration limited to l <= 6 for k >= 3")


@lru_cache(maxsize=64)
def _model_keys(l: int, k: int) -> tuple:
    """Canonical keys (sorted) of all k-colourings of K_l up to isomorphism."""
    if l <= 1:
        return (b"",)
    prev = _model_keys(l - 1, k)
    m_prev = (l - 1) * (l - 2) // 2
    vectors = list(product(range(1, k + 1), repeat=l - 1))
    cands = np.empty((len(prev) * len(vectors), l * (l - 1) // 2),
                     dtype=np.uint8)
    # positions of the old upper triangle and of the new vertex's edges in
    # the extended row-major listing
    old_pos = [_pair_index(l, i, j)
               for i in range(l - 1) for j in range(i + 1, l - 1)]
    new_pos = [_pair_index(l, i, l - 1) for i in range(l - 1)]
    row = 0
    for key in prev:
        base = np.frombuffer(key, dtype=np.uint8) if m_prev else np.empty(0, np.uint8)
        for vec in vectors:
            cands[row, old_pos] = base
            cands[row, new_pos] = vec
            row += 1
    cands = np.unique(cands, axis=0)
    keys = canonical_keys_batch(cands, l)
    return tuple(sorted(set(keys)))


def enumerate_models(l: int, k: int = 3) -> list[ColouredGraph]:
    """Representatives of all k-edge-colourings of K_l up to isomorphism,
    in canonical form, sorted by canonical key."""
    if l < 0:
        raise ValueError("l must be >= 0")
    _check_enumeration_limit(l, k)
    if l == 0:
        return [ColouredGraph(0, k)]
    return [ColouredGraph(l, k, key) for key in _model_keys(l, k)]


def _partitions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in _partitions(n - first):
            if not rest or rest[0] <= first:
                yield (first,) + rest


def count_models_polya(l: int, k: int) -> int:
    """Number of k-edge-colourings of K_l up to isomorphism, by Burnside's
    lemma over the pair action of the symmetric group (cycle-index oracle,
    independent of the extension-based enumeration)."""
    if l < 0:
        raise ValueError("l must be >= 0")
    if l > 12:
        raise SizeLimitError("cycle-index count limited to l <= 12")
    if l <= 1:
        return 1
    total = 0
    for part in _partitions(l):
        # number of permutations with this cycle type
        size = math.factorial(l)
        for length in set(part):
            c = part.count(length)
            size //= (length ** c) * math.factorial(c)
        # orbits of the induced action on unordered pairs
        orbits = 0
        for a in part:
            orbits += a // 2  # pairs within one cycle
        for x, y in combinations(range(len(part)), 2):
            orbits += math.gcd(part[x], part[y])
        total += size * (k ** orbits)
    return total // math.factorial(l)


# ---------------------------------------------------------------------------
# densities and triangle counts


def subgraph_class_counts(G: ColouredGraph, l: int) -> dict:
    """Map canonical key -> number of l-subsets of V(G) inducing that class."""
    n = G.n
    if l > n:
        raise ValueError("subgraph size exceeds |G|")
    if l == 0:
        return {b"": 1}
    subsets = list(combinations(range(n), l))
    flats = np.empty((len(subsets), l * (l - 1) // 2), dtype=np.uint8)
    for r, vs in enumerate(subsets):
        t = 0
        for a in range(l):
            for b in range(a + 1, l):
                flats[r, t] = G.colour(vs[a], vs[b])
                t += 1
    # canonicalize distinct raw listings once, then tally
    raw_counts: dict[bytes, int] = {}
    for r in range(len(subsets)):
        raw = flats[r].tobytes()
        raw_counts[raw] = raw_counts.get(raw, 0) + 1
    uniq = sorted(raw_counts)
    uniq_arr = np.frombuffer(b"".join(uniq), dtype=np.uint8)
    uniq_arr = uniq_arr.reshape(len(uniq), l * (l - 1) // 2) if uniq else \
        np.empty((0, 0), dtype=np.uint8)
    keys = canonical_keys_batch(uniq_arr, l)
    out: dict[bytes, int] = {}
    for raw, key in zip(uniq, keys):
        out[key] = out.get(key, 0) + raw_counts[raw]
    return out


def density(H: ColouredGraph, G: ColouredGraph) -> Fraction:
    """Probability that a uniformly random |H|-subset of V(G) induces H."""
    if H.n > G.n:
        raise ValueError("|H| > |G|")
    counts = subgraph_class_counts(G, H.n)
    hk = canonical_key(H)
    return Fraction(counts.get(hk, 0), math.comb(G.n, H.n))


def family_density(family, G: ColouredGraph) -> Fraction:
    """Sum of densities of a family of same-size, pairwise non-isomorphic
    coloured graphs."""
    family = list(family)
    if not family:
        return Fraction(0)
    size = family[0].n
    keys = []
    for H in family:
        if H.n != size:
            raise ValueError("family members must share one size")
        keys.append(canonical_key(H))
    if len(set(keys)) != len(keys):
        raise ValueError("family contains isomorphic duplicates")
    counts = subgraph_class_counts(G, size)
    total = sum(counts.get(key, 0) for key in keys)
    return Fraction(total, math.comb(G.n, size))


def mono_triangles(G: ColouredGraph) -> dict:
    """Exact monochromatic-triangle counts, per colour and total."""
    per = dict.fromkeys(range(1, G.k + 1), 0)
    mat = G.matrix()
    for a, b, c in combinations(range(G.n), 3):
        if mat[a][b] == mat[a][c] == mat[b][c]:
            per[mat[a][b]] += 1
    per["total"] = sum(per[c] for c in range(1, G.k + 1))
    return per


def mono_k3_family(k: int = 3) -> list[ColouredGraph]:
    """The monochromatic triangles, one per colour."""
    return [ColouredGraph(3, k, (c, c, c)) for c in range(1, k + 1)]


def goodman(n: int) -> int:
    """Minimum number of monochromatic triangles over all 2-colourings of
    K_n (the classical three-case closed form)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n % 2 == 0:
        return n * (n - 2) * (n - 4) // 24
    if n % 4 == 1:
        return n * (n - 1) * (n - 5) // 24
    return (n + 1) * (n - 3) * (n - 4) // 24


def corollary_value(n: int) -> int:
    """r*C(m+1,3) + (5-r)*C(m,3) with n = 5m + r: the number of
    monochromatic triangles in the balanced 5-class construction.  This
    equals the true 3-colour minimum only for sufficiently large n; e.g. at
    n = 17 the formula gives 11 while the known minimum is 5."""
    if n < 5:
        raise ValueError("n must be >= 5")
    m, r = divmod(n, 5)
    return r * math.comb(m + 1, 3) + (5 - r) * math.comb(m, 3)


def bad_family() -> list[ColouredGraph]:
    """All 4-vertex colourings with a monochromatic triangle whose extra
    edge-colour pattern (i, j, k) is (2,1,0), (1,1,1) or (0,2,1): i extra
    edges of the triangle colour, j >= k of the other two colours.
    Materialized by filtering the 66 4-vertex models."""
    members = []
    for M in enumerate_models(4, 3):
        per = mono_triangles(M)
        counts = M.edge_colour_counts()
        for c in range(1, 4):
            if per[c] == 0:
                continue
            i = counts[c] - 3
            others = sorted((counts[d] for d in range(1, 4) if d != c),
                            reverse=True)
            if (i, others[0], others[1]) in {(2, 1, 0), (1, 1, 1), (0, 2, 1)}:
                members.append(M)
                break
    return members


def neighbourhood(G: ColouredGraph, v: int, c: int) -> set:
    """Vertices joined to v by an edge of colour c."""
    if not 0 <= v < G.n:
        raise ValueError("vertex out of range")
    if not 1 <= c <= G.k:
        raise ValueError("colour out of range")
    return {u for u in range(G.n) if u != v and G.colour(u, v) == c}


# ---------------------------------------------------------------------------
# text format


def format_graph(G: ColouredGraph) -> str:
    """Graph text format: "n k" then the n x n colour matrix."""
    lines = ["%d %d" % (G.n, G.k)]
    for row in G.matrix():
        lines.append(" ".join(str(c) for c in row))
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> ColouredGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("header must be 'n k'")
    n, k = int(head[0]), int(head[1])
    if len(lines) != n + 1:
        raise ValueError("expected %d matrix rows, got %d" % (n, len(lines) - 1))
    rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    return ColouredGraph.from_matrix(rows, k)
