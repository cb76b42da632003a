"""Bridge to external semidefinite-programming solvers.

The exact verification problem "find PSD matrices Q^1..Q^10 with
lambda_k >= 0 for all 792 five-vertex models" is exported as a sparse
problem file in the widely used SDP interchange format, at the fixed
target bound of 1/25.  The file encodes the feasibility problem

    <F_k, X> = p(mono K3, M_k) - 1/25   for every model M_k,
    X = diag(Q^1, ..., Q^10, lambda) PSD,

with F_k = diag(A[1][k], ..., A[10][k], E_kk), so a solver's matrix
solution reads off the ten blocks plus the slack vector directly.  No
solver is embedded; solutions come back through a text file, are rounded
entrywise to bounded-denominator rationals, and re-enter the ordinary
certificate verification path with no shortcut.

Coefficients are emitted as decimal expansions of the exact rationals to
40 significant digits.  Model order is the canonical enumeration order,
identical to the coefficient table's.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from fractions import Fraction

from .certificate import (NUM_FLAGS, Certificate, CertificateBlock,
                          CoefficientTable, load_shipped_certificate)
from .exact import DEFAULT_MAX_DEN, SymMatrix, rational_reconstruct
from .graphs import ColouredGraph, mono_triangles

NUM_MODELS = 792
NUM_BLOCKS = 11          # ten flag blocks + one diagonal slack block
SIG_DIGITS = 40

TARGET_BOUND = Fraction(1, 25)


class SdpFormatError(ValueError):
    """Malformed problem or solution file."""


@dataclass
class SdpProblem:
    """Structural view of an exported problem file."""

    m: int
    block_sizes: tuple
    rhs: tuple                 # exact Fractions of the written decimals
    entries: dict              # (matno, blkno, i, j) -> Fraction


@dataclass
class SolverSolution:
    blocks: list               # ten 27x27 float matrices, symmetrized
    slack: list                # 792 floats
    y: list
    bound: float = float(TARGET_BOUND)


def _decimal_str(x: Fraction) -> str:
    ctx = decimal.Context(prec=SIG_DIGITS)
    d = ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))
    return format(d, "f")


def export_sdp(table: CoefficientTable, path) -> None:
    """Write the sparse problem file for the fixed-bound feasibility SDP.

    Deterministic: models in table order, blocks 1..10, upper-triangle
    entries in index order, slack entries last.
    """
    if len(table.model_keys) != NUM_MODELS:
        raise ValueError("coefficient table must cover all %d models"
                         % NUM_MODELS)
    lines = ['"feasibility SDP: ten 27-blocks plus diagonal slack, bound 1/25']
    lines.append(str(NUM_MODELS))
    lines.append(str(NUM_BLOCKS))
    lines.append(" ".join([str(NUM_FLAGS)] * 10 + [str(-NUM_MODELS)]))
    rhs = []
    for key in table.model_keys:
        M = ColouredGraph(5, 3, tuple(key))
        p = Fraction(mono_triangles(M)["total"], 10)
        rhs.append(_decimal_str(p - TARGET_BOUND))
    lines.append(" ".join(rhs))
    for k, key in enumerate(table.model_keys, start=1):
        for r in range(10):
            cells = table.counts[r][key]
            for (i, j) in sorted(cells):
                if i > j:
                    continue
                val = Fraction(cells[i, j], 120)
                lines.append("%d %d %d %d %s"
                             % (k, r + 1, i + 1, j + 1, _decimal_str(val)))
        lines.append("%d %d %d %d 1" % (k, NUM_BLOCKS, k, k))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def parse_sdp(path) -> SdpProblem:
    """Re-read an exported problem file; used for round-trip checks."""
    with open(path) as fh:
        raw = fh.read().splitlines()
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(raw)
             if ln.strip() and not ln.lstrip().startswith(('"', "*"))]
    if len(lines) < 4:
        raise SdpFormatError("problem file too short")
    try:
        m = int(lines[0][1])
        nblocks = int(lines[1][1])
        sizes = tuple(int(t) for t in lines[2][1].split())
        rhs = tuple(Fraction(decimal.Decimal(t))
                    for t in lines[3][1].split())
    except (ValueError, decimal.InvalidOperation) as exc:
        raise SdpFormatError("bad problem header: %s" % exc) from exc
    if len(sizes) != nblocks:
        raise SdpFormatError("block size count does not match nblocks")
    if len(rhs) != m:
        raise SdpFormatError("right-hand side has %d entries, expected %d"
                             % (len(rhs), m))
    entries = {}
    for ln, text in lines[4:]:
        toks = text.split()
        if len(toks) != 5:
            raise SdpFormatError("line %d: expected 5 fields" % ln)
        try:
            matno, blkno, i, j = (int(t) for t in toks[:4])
            val = Fraction(decimal.Decimal(toks[4]))
        except (ValueError, decimal.InvalidOperation) as exc:
            raise SdpFormatError("line %d: %s" % (ln, exc)) from exc
        entries[matno, blkno, i, j] = val
    return SdpProblem(m, sizes, rhs, entries)


def parse_solution(path) -> SolverSolution:
    """Parse a solver solution file.

    Expected layout: one line with the m dual values, then entry lines
    "matno blkno i j value" where matno 2 carries the matrix solution
    (matno 1, the slack matrix, is ignored).  Off-diagonal entries are
    symmetrized by averaging.
    """
    with open(path) as fh:
        raw = fh.read().splitlines()
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(raw) if ln.strip()]
    if not lines:
        raise SdpFormatError("empty solution file")
    ln, first = lines[0]
    try:
        y = [float(t) for t in first.split()]
    except ValueError as exc:
        raise SdpFormatError("line %d: bad value in dual vector: %s"
                             % (ln, exc)) from exc
    if len(y) != NUM_MODELS:
        raise SdpFormatError("line %d: dual vector has %d entries, expected %d"
                             % (ln, len(y), NUM_MODELS))
    cells: dict = {}
    slack = [0.0] * NUM_MODELS
    seen_matrix = False
    for ln, text in lines[1:]:
        toks = text.split()
        if len(toks) != 5:
            raise SdpFormatError("line %d: expected 'matno blkno i j value'"
                                 % ln)
        try:
            matno, blkno, i, j = (int(t) for t in toks[:4])
            val = float(toks[4])
        except ValueError as exc:
            raise SdpFormatError("line %d: %s" % (ln, exc)) from exc
        if matno == 1:
            continue
        if matno != 2:
            raise SdpFormatError("line %d: unknown matrix number %d"
                                 % (ln, matno))
        seen_matrix = True
        if 1 <= blkno <= 10:
            if not (1 <= i <= NUM_FLAGS and 1 <= j <= NUM_FLAGS):
                raise SdpFormatError("line %d: index out of range for a %dx%d "
                                     "block" % (ln, NUM_FLAGS, NUM_FLAGS))
            cells[blkno - 1, i - 1, j - 1] = val
        elif blkno == NUM_BLOCKS:
            if i != j or not 1 <= i <= NUM_MODELS:
                raise SdpFormatError("line %d: slack block is diagonal of "
                                     "size %d" % (ln, NUM_MODELS))
            slack[i - 1] = val
        else:
            raise SdpFormatError("line %d: block number %d out of range"
                                 % (ln, blkno))
    if not seen_matrix:
        raise SdpFormatError("no matrix entries (matno 2) in solution file")
    # a single-triangle entry is mirrored; when both triangles are present
    # they are averaged, so asymmetric input symmetrizes deterministically
    blocks = [[[0.0] * NUM_FLAGS for _ in range(NUM_FLAGS)]
              for _ in range(10)]
    for b in range(10):
        for i in range(NUM_FLAGS):
            for j in range(i, NUM_FLAGS):
                upper = (b, i, j) in cells
                lower = (b, j, i) in cells
                if upper and lower and i != j:
                    val = (cells[b, i, j] + cells[b, j, i]) / 2.0
                elif upper:
                    val = cells[b, i, j]
                elif lower:
                    val = cells[b, j, i]
                else:
                    continue
                blocks[b][i][j] = blocks[b][j][i] = val
    return SolverSolution(blocks=blocks, slack=slack, y=y)


def round_solution(blocks, max_den: int = DEFAULT_MAX_DEN,
                   template: Certificate | None = None) -> Certificate:
    """Round ten numeric blocks to a rational certificate at bound 1/25.

    `blocks` is a SolverSolution or a list of ten 27x27 numeric matrices.
    Entries are symmetrized, then each is replaced by its best rational
    approximation with denominator <= max_den.  The type and flag layout is
    taken from `template` (default: the shipped certificate).  The result
    is only structurally valid; it earns a verdict through the ordinary
    verification path.
    """
    if isinstance(blocks, SolverSolution):
        blocks = blocks.blocks
    if len(blocks) != 10:
        raise ValueError("expected ten blocks")
    if template is None:
        template = load_shipped_certificate()
    out = []
    for tb, numeric in zip(template.blocks, blocks):
        if len(numeric) != NUM_FLAGS or any(len(r) != NUM_FLAGS
                                            for r in numeric):
            raise ValueError("blocks must be %dx%d" % (NUM_FLAGS, NUM_FLAGS))
        rows = [[Fraction(0)] * NUM_FLAGS for _ in range(NUM_FLAGS)]
        for i in range(NUM_FLAGS):
            rows[i][i] = rational_reconstruct(numeric[i][i], max_den)
            for j in range(i + 1, NUM_FLAGS):
                avg = (Fraction(numeric[i][j]) + Fraction(numeric[j][i])) / 2
                rows[i][j] = rows[j][i] = rational_reconstruct(avg, max_den)
        out.append(CertificateBlock(tb.type_sigma, tb.vectors, tb.flags,
                                    SymMatrix(rows)))
    return Certificate(TARGET_BOUND, tuple(out))
