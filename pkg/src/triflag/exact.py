"""Exact rational arithmetic helpers: symmetric matrices, LDL^T factorization,
positive-semidefiniteness certificates and bounded-denominator rounding.

All arithmetic is done with `fractions.Fraction`; no floating point value ever
enters a verdict.  The PSD test is a symmetric LDL^T elimination without
pivoting: a symmetric matrix is PSD iff elimination runs to completion with
every pivot >= 0, where a zero pivot is only legal when its entire remaining
row is zero.  When the test fails we return an explicit rational witness v
with v^T M v < 0 that can be re-checked by direct evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

DEFAULT_MAX_DEN = 10**7


def parse_rational(token: str) -> Fraction:
    """Parse "p/q" or "p" (ASCII, no internal whitespace) into a Fraction."""
    token = token.strip()
    if any(ch.isspace() for ch in token):
        raise ValueError("whitespace inside rational token: %r" % token)
    if "/" in token:
        num, den = token.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(token))


def format_rational(x: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


class SymMatrix:
    """Dense symmetric matrix of Fractions."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows: Sequence[Sequence]):
        n = len(rows)
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        for row in data:
            if len(row) != n:
                raise ValueError("matrix is not square")
        for i in range(n):
            for j in range(i):
                if data[i][j] != data[j][i]:
                    raise ValueError(
                        "matrix is not symmetric at (%d, %d)" % (i, j))
        self.dim = n
        self.rows = data

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag: Sequence) -> "SymMatrix":
        n = len(diag)
        return cls([[Fraction(diag[i]) if i == j else Fraction(0)
                     for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, SymMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "SymMatrix(%d x %d)" % (self.dim, self.dim)

    def quadratic_form(self, v: Sequence) -> Fraction:
        """v^T M v, exactly."""
        v = [Fraction(x) for x in v]
        if len(v) != self.dim:
            raise ValueError("vector length mismatch")
        total = Fraction(0)
        for i, row in enumerate(self.rows):
            if v[i] == 0:
                continue
            total += v[i] * sum(row[j] * v[j] for j in range(self.dim) if v[j])
        return total


@dataclass(frozen=True)
class LdlFactorization:
    """M = L diag(d) L^T with L unit lower-triangular."""

    lower: tuple  # tuple of tuple of Fraction
    diag: tuple   # tuple of Fraction

    def reconstruct(self) -> SymMatrix:
        n = len(self.diag)
        L, d = self.lower, self.diag
        rows = [[sum(L[i][k] * d[k] * L[j][k] for k in range(min(i, j) + 1))
                 for j in range(n)] for i in range(n)]
        return SymMatrix(rows)


@dataclass(frozen=True)
class PsdVerdict:
    is_psd: bool
    witness: tuple | None = None        # rational v with v^T M v < 0
    failed_pivot: int | None = None     # elimination step where PSD failed
    factorization: LdlFactorization | None = None

    def __bool__(self):
        return self.is_psd


def _eliminate(M: SymMatrix):
    """Run pivot-free symmetric elimination.

    Returns (L_cols, diag, fail) where fail is None on success, otherwise
    (step, kind, row) with kind in {"negative", "zero_pivot"}; for a zero
    pivot, row is an index below the pivot with a nonzero residual entry.
    """
    n = M.dim
    A = [list(row) for row in M.rows]
    L = [[Fraction(0)] * n for _ in range(n)]
    diag = [Fraction(0)] * n
    for j in range(n):
        L[j][j] = Fraction(1)
        piv = A[j][j]
        diag[j] = piv
        if piv < 0:
            return L, diag, (j, "negative", j)
        if piv == 0:
            for i in range(j + 1, n):
                if A[i][j] != 0:
                    return L, diag, (j, "zero_pivot", i)
            continue  # zero pivot with zero residual row: skip elimination
        for i in range(j + 1, n):
            L[i][j] = A[i][j] / piv
        Aj = A[j]
        for i in range(j + 1, n):
            lij = L[i][j]
            if lij == 0:
                continue
            Ai = A[i]
            for k in range(j + 1, n):
                if Aj[k]:
                    Ai[k] -= lij * Aj[k]
    return L, diag, None


def ldl_factor(M: SymMatrix) -> LdlFactorization | None:
    """Exact LDL^T factorization of a PSD matrix, or None if M is not PSD.

    A zero pivot is accepted only when its whole remaining column is zero
    (which holds for every PSD matrix); the corresponding L column is a
    standard basis vector.
    """
    L, diag, fail = _eliminate(M)
    if fail is not None:
        return None
    return LdlFactorization(tuple(tuple(r) for r in L), tuple(diag))


def psd_check(M: SymMatrix) -> PsdVerdict:
    """Exact PSD test.  NotPSD verdicts carry a rational witness vector."""
    L, diag, fail = _eliminate(M)
    if fail is None:
        fact = LdlFactorization(tuple(tuple(r) for r in L), tuple(diag))
        return PsdVerdict(is_psd=True, factorization=fact)
    step, kind, row = fail
    n = M.dim

    def pullback(w):
        v = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            v[i] = w[i] - sum(L[m][i] * v[m]
                              for m in range(i + 1, n) if L[m][i])
        return v

    if kind == "negative":
        w = [Fraction(0)] * n
        w[step] = Fraction(1)
        v = pullback(w)
    else:
        # zero pivot at `step`, nonzero residual in row `row`.  In the Schur
        # complement the 2x2 block [[0, r], [r, s]] is indefinite; choose the
        # mixing that makes the form evaluate to exactly -1.
        e_j = pullback([Fraction(int(i == step)) for i in range(n)])
        e_i = pullback([Fraction(int(i == row)) for i in range(n)])
        r = sum(e_i[a] * sum(M.rows[a][b] * e_j[b] for b in range(n))
                for a in range(n))
        s = M.quadratic_form(e_i)
        x = -(s + 1) / (2 * r)
        v = [x * a + b for a, b in zip(e_j, e_i)]
    value = M.quadratic_form(v)
    assert value < 0, "internal error: witness is not negative"
    return PsdVerdict(is_psd=False, witness=tuple(v), failed_pivot=step)


def rational_reconstruct(x, max_den: int = DEFAULT_MAX_DEN) -> Fraction:
    """Best rational approximation of x with denominator <= max_den.

    `x` may be a Fraction, int, Decimal, or a decimal string; strings and
    Decimals are converted exactly, with no binary floating intermediate.
    A float is accepted for convenience and goes through its shortest decimal
    repr, which keeps the operation deterministic.
    """
    if max_den < 1:
        raise ValueError("max_den must be >= 1")
    if isinstance(x, float):
        x = repr(x)
    exact = Fraction(x)
    return exact.limit_denominator(max_den)
