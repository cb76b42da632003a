"""Types, labelled flags and their exact densities.

A type is a fully labelled coloured complete graph on {1..s}; a flag is a
coloured complete graph together with an injective, colour-respecting
embedding of a type.  Flag isomorphisms fix the labels pointwise.  The
operations here are the finite, exactly-computable quantities behind the
certificate check: flag densities, joint densities, the unlabelling
coefficient, and the probabilistic product coefficient over a larger model.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations, product

from .graphs import ColouredGraph, SizeLimitError, enumerate_models

# A type is just a ColouredGraph whose vertices are read as labels 1..s.
TypeSigma = ColouredGraph

# upper-triangle colour listings of the ten 3-vertex types, in the order
# used by the shipped certificate
TEN_TYPE_ENTRIES = (
    (1, 1, 1),
    (1, 1, 2),
    (1, 1, 3),
    (1, 2, 2),
    (1, 2, 3),
    (1, 3, 3),
    (2, 2, 2),
    (2, 2, 3),
    (2, 3, 3),
    (3, 3, 3),
)


def ten_types() -> list[TypeSigma]:
    """The ten 3-vertex types, one per isomorphism class of coloured
    triangles, in certificate order."""
    return [ColouredGraph(3, 3, ent) for ent in TEN_TYPE_ENTRIES]


class Flag:
    """A coloured complete graph with a labelled embedding of a type.

    `theta[i]` is the model vertex carrying label i+1.
    """

    __slots__ = ("model", "theta")

    def __init__(self, model: ColouredGraph, theta=()):
        theta = tuple(int(v) for v in theta)
        if len(set(theta)) != len(theta):
            raise ValueError("theta must be injective")
        if any(v < 0 or v >= model.n for v in theta):
            raise ValueError("theta image out of range")
        self.model = model
        self.theta = theta

    @property
    def type_size(self) -> int:
        return len(self.theta)

    def flag_type(self) -> TypeSigma:
        """The labelled type induced on the theta image."""
        return self.model.induced(self.theta)

    def key(self) -> bytes:
        """Canonical key under label-fixing isomorphism: the minimal colour
        listing over reorderings of the unlabelled vertices only."""
        model, theta = self.model, self.theta
        rest = [v for v in range(model.n) if v not in theta]
        mat = model.matrix()
        best = None
        for perm in permutations(rest):
            order = theta + perm
            ent = tuple(mat[order[a]][order[b]]
                        for a in range(model.n)
                        for b in range(a + 1, model.n))
            if best is None or ent < best:
                best = ent
        return bytes(best) if best is not None else b""

    def __eq__(self, other):
        return (isinstance(other, Flag) and self.model == other.model
                and self.theta == other.theta)

    def __hash__(self):
        return hash((self.model, self.theta))

    def __repr__(self):
        return "Flag(%r, theta=%r)" % (self.model, self.theta)


def identity_flag(sigma: TypeSigma) -> Flag:
    return Flag(sigma, tuple(range(sigma.n)))


def flag_from_vector(sigma: TypeSigma, v) -> Flag:
    """The 4-vertex flag over a 3-vertex type whose fourth vertex sends the
    colours v = (c1, c2, c3) to labels 1, 2, 3."""
    if sigma.n != 3:
        raise ValueError("type must have 3 vertices")
    v = tuple(int(c) for c in v)
    if len(v) != 3 or any(c < 1 or c > 3 for c in v):
        raise ValueError("vector must be three colours in 1..3")
    s = sigma.entries
    model = ColouredGraph(4, 3, (s[0], s[1], v[0], s[2], v[1], v[2]))
    return Flag(model, (0, 1, 2))


def vector_of_flag(F: Flag):
    """Inverse of flag_from_vector for 4-vertex flags over 3-vertex types."""
    if F.model.n != 4 or F.type_size != 3:
        raise ValueError("not a 4-vertex flag over a 3-vertex type")
    (x,) = [u for u in range(4) if u not in F.theta]
    return tuple(F.model.colour(x, F.theta[i]) for i in range(3))


def _induced_flag(model: ColouredGraph, theta, vertices) -> Flag:
    """Flag induced on `vertices` (which must contain the theta image)."""
    vs = sorted(vertices)
    pos = {v: i for i, v in enumerate(vs)}
    return Flag(model.induced(vs), tuple(pos[v] for v in theta))


def _respects(model_mat, sigma: TypeSigma, theta) -> bool:
    s = sigma.n
    for a in range(s):
        for b in range(a + 1, s):
            if model_mat[theta[a]][theta[b]] != sigma.colour(a, b):
                return False
    return True


def enumerate_flags(sigma: TypeSigma, l: int) -> list[Flag]:
    """One representative per flag-isomorphism class of sigma-flags on l
    vertices, in deterministic (key-sorted; colour-vector for the 3/4 case)
    order."""
    s = sigma.n
    if l < s:
        raise ValueError("l must be >= |sigma|")
    if s == 3 and l > 5:
        raise SizeLimitError("flags over 3-vertex types limited to l <= 5")
    if l == s:
        return [identity_flag(sigma)]
    if s == 3 and l == 4:
        return [flag_from_vector(sigma, v)
                for v in product((1, 2, 3), repeat=3)]
    out: dict[bytes, Flag] = {}
    for M in enumerate_models(l, sigma.k):
        mat = M.matrix()
        for theta in permutations(range(l), s):
            if not _respects(mat, sigma, theta):
                continue
            F = Flag(M, theta)
            key = F.key()
            if key not in out:
                out[key] = F
    return [out[key] for key in sorted(out)]


def _check_same_type(F: Flag, G: Flag):
    if F.type_size != G.type_size or F.flag_type() != G.flag_type():
        raise ValueError("flags must share the same labelled type")


def flag_density(F: Flag, G: Flag) -> Fraction:
    """Probability that a random |F|-superset of the labelled vertices of G
    induces a flag isomorphic to F.  Zero when |G| < |F|."""
    _check_same_type(F, G)
    l, m = F.model.n, G.model.n
    if m < l:
        return Fraction(0)
    fk = F.key()
    rest = [v for v in range(m) if v not in G.theta]
    need = l - F.type_size
    hits = 0
    total = 0
    for extra in combinations(rest, need):
        total += 1
        sub = _induced_flag(G.model, G.theta, list(G.theta) + list(extra))
        if sub.key() == fk:
            hits += 1
    return Fraction(hits, total)


def joint_density(F1: Flag, F2: Flag, G: Flag) -> Fraction:
    """Probability that two random subsets, overlapping exactly in the
    labelled vertices and of sizes |F1| and |F2|, induce F1 and F2."""
    _check_same_type(F1, F2)
    _check_same_type(F1, G)
    s = F1.type_size
    l1, l2, m = F1.model.n, F2.model.n, G.model.n
    if m < l1 + l2 - s:
        raise ValueError("|G| too small for the joint experiment")
    k1, k2 = F1.key(), F2.key()
    rest = [v for v in range(m) if v not in G.theta]
    hits = 0
    total = 0
    for A in combinations(rest, l1 - s):
        remaining = [v for v in rest if v not in A]
        for B in combinations(remaining, l2 - s):
            total += 1
            fa = _induced_flag(G.model, G.theta, list(G.theta) + list(A))
            if fa.key() != k1:
                continue
            fb = _induced_flag(G.model, G.theta, list(G.theta) + list(B))
            if fb.key() == k2:
                hits += 1
    return Fraction(hits, total)


def avg_coefficient(tau: TypeSigma, K1: Flag, K2: Flag,
                    L: ColouredGraph) -> Fraction:
    """Coefficient of L in the unlabelled flag product of K1 and K2.

    The probability that a uniformly random injection of the type into V(L),
    followed by a uniformly random split of the remaining vertices into two
    sides of the right sizes, induces flags isomorphic to K1 and K2.
    Injections that do not induce the type count as failures.
    """
    s = tau.n
    if K1.type_size != s or K2.type_size != s:
        raise ValueError("flag type size mismatch")
    if K1.flag_type() != tau or K2.flag_type() != tau:
        raise ValueError("flags are not over the given type")
    l1, l2 = K1.model.n, K2.model.n
    if L.n != l1 + l2 - s:
        raise ValueError("|L| must equal |K1| + |K2| - |tau|")
    k1, k2 = K1.key(), K2.key()
    mat = L.matrix()
    hits = 0
    total = 0
    for theta in permutations(range(L.n), s):
        rest = [v for v in range(L.n) if v not in theta]
        nsplit = math.comb(len(rest), l1 - s)
        if not _respects(mat, tau, theta):
            total += nsplit
            continue
        for A in combinations(rest, l1 - s):
            total += 1
            B = [v for v in rest if v not in A]
            fa = _induced_flag(L, theta, list(theta) + list(A))
            if fa.key() != k1:
                continue
            fb = _induced_flag(L, theta, list(theta) + list(B))
            if fb.key() == k2:
                hits += 1
    return Fraction(hits, total)


def triangle_pair_counts(tau: TypeSigma, L: ColouredGraph):
    """Fast path for 3-vertex types and 4-vertex flags over a 5-vertex model.

    Returns (counts, valid) where counts maps colour-vector pairs
    (v1, v2) -> number of (injection, split) outcomes inducing those flags,
    and valid is the number of injections inducing tau.  Each outcome has
    probability 1/120; counts is symmetric by construction.
    """
    if tau.n != 3 or L.n != 5:
        raise ValueError("fast path needs |tau| = 3 and |L| = 5")
    t01, t02, t12 = tau.entries
    mat = L.matrix()
    counts: Counter = Counter()
    valid = 0
    for theta in permutations(range(5), 3):
        a, b, c = theta
        if mat[a][b] != t01 or mat[a][c] != t02 or mat[b][c] != t12:
            continue
        valid += 1
        x, y = (v for v in range(5) if v not in theta)
        vx = (mat[x][a], mat[x][b], mat[x][c])
        vy = (mat[y][a], mat[y][b], mat[y][c])
        counts[vx, vy] += 1
        counts[vy, vx] += 1
    return counts, valid


def unlabel_coefficient(F: Flag) -> Fraction:
    """Probability that a random injective labelling of F's model induces
    F's type and gives a flag isomorphic to F."""
    s = F.type_size
    n = F.model.n
    sigma = F.flag_type()
    fk = F.key()
    mat = F.model.matrix()
    hits = 0
    total = 0
    for theta in permutations(range(n), s):
        total += 1
        if not _respects(mat, sigma, theta):
            continue
        if Flag(F.model, theta).key() == fk:
            hits += 1
    return Fraction(hits, total) if total else Fraction(1)


def verify_chain_rule(F: Flag, m: int, H: Flag) -> bool:
    """Check p(F, H) = sum over l=m flags G of p(F, G) p(G, H), exactly.

    The m-subset classes of H are tallied once, so each subset key is
    computed a single time rather than once per flag G.
    """
    if not F.model.n <= m <= H.model.n:
        raise ValueError("need |F| <= m <= |H|")
    sigma = F.flag_type()
    lhs = flag_density(F, H)
    rest = [v for v in range(H.model.n) if v not in H.theta]
    tallies: Counter = Counter()
    for extra in combinations(rest, m - sigma.n):
        sub = _induced_flag(H.model, H.theta, list(H.theta) + list(extra))
        tallies[sub.key()] += 1
    total = sum(tallies.values())
    rhs = Fraction(0)
    for G in enumerate_flags(sigma, m):
        hits = tallies.get(G.key(), 0)
        if hits:
            rhs += flag_density(F, G) * Fraction(hits, total)
    return lhs == rhs


def format_flag(F: Flag) -> str:
    """Flag text format: the model in graph text format, then a "theta" line
    with the 1-based labelled vertices."""
    from .graphs import format_graph
    theta = " ".join(str(v + 1) for v in F.theta)
    return format_graph(F.model) + "theta " + theta + "\n"


def parse_flag(text: str) -> Flag:
    from .graphs import parse_graph
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[-1].startswith("theta"):
        raise ValueError("missing theta line")
    theta = tuple(int(tok) - 1 for tok in lines[-1].split()[1:])
    model = parse_graph("\n".join(lines[:-1]))
    return Flag(model, theta)
