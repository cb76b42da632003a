"""Certificate loading and exact verification.

A certificate consists of a rational bound, ten 3-vertex types, an ordered
list of 27 four-vertex flags per type (given by colour vectors), and a
symmetric rational 27x27 matrix per type.  Verification checks, entirely in
rational arithmetic:

  * every matrix is positive semidefinite;
  * for every 5-vertex model M_k the coefficient
      lambda_k = p(mono K3, M_k) - bound - sum_r <Q^r, A[r][k]>
    is >= 0, where A[r][k][i][j] is the probability that a random labelled
    triangle plus split of M_k induces flags i and j of block r;
  * every "bad" 4-vertex colouring H forces lambda_k > 0 on each model that
    contains it.

Models are always keyed by canonical key; no ordinal model numbering is
used anywhere.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product

from .exact import SymMatrix, format_rational, parse_rational, psd_check
from .flags import Flag, TypeSigma, flag_from_vector, triangle_pair_counts
from .graphs import (ColouredGraph, bad_family, canonical_key,
                     enumerate_models, mono_triangles,
                     subgraph_class_counts)

NUM_FLAGS = 27


class CertificateError(ValueError):
    """Malformed or structurally invalid certificate file."""


@dataclass(frozen=True)
class CertificateBlock:
    type_sigma: TypeSigma
    vectors: tuple           # 27 colour vectors, file order
    flags: tuple             # 27 Flags matching `vectors`
    Q: SymMatrix


@dataclass(frozen=True)
class Certificate:
    bound: Fraction
    blocks: tuple


@dataclass
class CoefficientTable:
    """Sparse exact table of product coefficients.

    counts[r][model_key][(i, j)] holds 120 * A[r][model_key][i][j] as an
    integer; valid_injections[r][model_key] is the number of labelled-
    triangle injections inducing the block's type.
    """

    model_keys: tuple
    counts: list            # per block: dict key -> dict (i, j) -> int
    valid_injections: list  # per block: dict key -> int

    def entry(self, r: int, key: bytes, i: int, j: int) -> Fraction:
        return Fraction(self.counts[r][key].get((i, j), 0), 120)

    def matrix(self, r: int, key: bytes) -> SymMatrix:
        rows = [[self.entry(r, key, i, j) for j in range(NUM_FLAGS)]
                for i in range(NUM_FLAGS)]
        return SymMatrix(rows)


@dataclass
class VerificationReport:
    psd_ok: list                       # per block
    psd_failed_blocks: list
    lambdas: dict                      # model key -> Fraction
    min_lambda: Fraction | None
    negative_lambda_keys: list
    bad_family_ok: bool
    bad_family_violations: list        # (H key, model key, lambda)
    verified: bool
    seconds: float = 0.0

    @property
    def verdict(self) -> str:
        return "VERIFIED" if self.verified else "FAILED"


def load_certificate(text: str) -> Certificate:
    """Parse and structurally validate a certificate in the line-oriented
    FLAGCERT format."""
    lines = text.splitlines()
    pos = 0

    def next_line():
        nonlocal pos
        while pos < len(lines) and not lines[pos].strip():
            pos += 1
        if pos >= len(lines):
            raise CertificateError("unexpected end of file at line %d" % (pos + 1))
        pos += 1
        return lines[pos - 1].strip(), pos

    header, ln = next_line()
    if header != "FLAGCERT 1":
        raise CertificateError("line %d: expected 'FLAGCERT 1'" % ln)
    bound_line, ln = next_line()
    if not bound_line.startswith("BOUND "):
        raise CertificateError("line %d: expected 'BOUND p/q'" % ln)
    try:
        bound = parse_rational(bound_line.split(None, 1)[1])
    except (ValueError, IndexError) as exc:
        raise CertificateError("line %d: bad bound: %s" % (ln, exc)) from exc

    blocks = []
    for r in range(1, 11):
        tag, ln = next_line()
        if tag != "TYPE %d" % r:
            raise CertificateError("line %d: expected 'TYPE %d'" % (ln, r))
        rows = []
        for _ in range(3):
            row_line, ln = next_line()
            row = [int(t) for t in row_line.split()]
            if len(row) != 3:
                raise CertificateError("line %d: type row needs 3 entries" % ln)
            rows.append(row)
        try:
            sigma = ColouredGraph.from_matrix(rows)
        except ValueError as exc:
            raise CertificateError("block %d: bad type matrix: %s" % (r, exc))
        tag, ln = next_line()
        if tag != "FLAGS %d" % NUM_FLAGS:
            raise CertificateError("line %d: expected 'FLAGS %d'" % (ln, NUM_FLAGS))
        vectors = []
        for fi in range(NUM_FLAGS):
            vec_line, ln = next_line()
            vec = tuple(int(t) for t in vec_line.split())
            if len(vec) != 3 or any(c < 1 or c > 3 for c in vec):
                raise CertificateError(
                    "line %d: block %d flag %d: colours must be in 1..3"
                    % (ln, r, fi + 1))
            vectors.append(vec)
        if len(set(vectors)) != NUM_FLAGS:
            raise CertificateError("block %d: duplicate flag vectors" % r)
        flags = tuple(flag_from_vector(sigma, v) for v in vectors)
        tag, ln = next_line()
        if tag != "Q %d" % NUM_FLAGS:
            raise CertificateError("line %d: expected 'Q %d'" % (ln, NUM_FLAGS))
        qrows = []
        for qi in range(NUM_FLAGS):
            row_line, ln = next_line()
            toks = row_line.split()
            if len(toks) != NUM_FLAGS:
                raise CertificateError(
                    "line %d: Q row %d needs %d entries, got %d"
                    % (ln, qi + 1, NUM_FLAGS, len(toks)))
            try:
                qrows.append([parse_rational(t) for t in toks])
            except ValueError as exc:
                raise CertificateError("line %d: bad rational: %s" % (ln, exc))
        for i in range(NUM_FLAGS):
            for j in range(i):
                if qrows[i][j] != qrows[j][i]:
                    raise CertificateError(
                        "block %d: Q not symmetric at (%d, %d)" % (r, j + 1, i + 1))
        blocks.append(CertificateBlock(sigma, tuple(vectors), flags,
                                       SymMatrix(qrows)))
    types_seen = {canonical_key(b.type_sigma) for b in blocks}
    if len(types_seen) != 10:
        raise CertificateError("the ten types are not pairwise non-isomorphic")
    return Certificate(bound, tuple(blocks))


def serialize_certificate(cert: Certificate) -> str:
    lines = ["FLAGCERT 1", "BOUND " + format_rational(cert.bound)]
    for r, block in enumerate(cert.blocks, start=1):
        lines.append("TYPE %d" % r)
        for row in block.type_sigma.matrix():
            lines.append(" ".join(str(c) for c in row))
        lines.append("FLAGS %d" % NUM_FLAGS)
        for vec in block.vectors:
            lines.append(" ".join(str(c) for c in vec))
        lines.append("Q %d" % NUM_FLAGS)
        for row in block.Q.rows:
            lines.append(" ".join(format_rational(x) for x in row))
    return "\n".join(lines) + "\n"


def shipped_certificate_text() -> str:
    return resources.files("triflag.data").joinpath("certificate.txt").read_text()


def load_shipped_certificate() -> Certificate:
    return load_certificate(shipped_certificate_text())


def _block_coefficients(block: CertificateBlock, chunk):
    index = {vec: i for i, vec in enumerate(block.vectors)}
    block_counts = {}
    block_valid = {}
    for M, key in chunk:
        pair_counts, valid = triangle_pair_counts(block.type_sigma, M)
        entry: dict = {}
        for (v1, v2), c in pair_counts.items():
            entry[index[v1], index[v2]] = c
        block_counts[key] = entry
        block_valid[key] = valid
    return block_counts, block_valid


def coefficient_table(cert: Certificate, models=None,
                      threads: int = 1) -> CoefficientTable:
    """Exact product-coefficient table over all 5-vertex models.

    Deterministic for every thread count; the per-(block, model) chunks are
    independent and their results are keyed, so evaluation order cannot
    affect the result.
    """
    if models is None:
        models = enumerate_models(5, 3)
    model_keys = tuple(bytes(M.entries) for M in models)
    pairs = list(zip(models, model_keys))
    counts = []
    valids = []
    if threads > 1 and len(pairs) > 1:
        from concurrent.futures import ThreadPoolExecutor
        step = (len(pairs) + threads - 1) // threads
        chunks = [pairs[i:i + step] for i in range(0, len(pairs), step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for block in cert.blocks:
                block_counts = {}
                block_valid = {}
                for bc, bv in pool.map(
                        lambda ch, b=block: _block_coefficients(b, ch),
                        chunks):
                    block_counts.update(bc)
                    block_valid.update(bv)
                counts.append(block_counts)
                valids.append(block_valid)
    else:
        for block in cert.blocks:
            block_counts, block_valid = _block_coefficients(block, pairs)
            counts.append(block_counts)
            valids.append(block_valid)
    return CoefficientTable(model_keys, counts, valids)


def lambda_vector(cert: Certificate, table: CoefficientTable) -> dict:
    """lambda_k for every model, exactly."""
    models = {bytes(M.entries): M for M in enumerate_models(5, 3)}
    out = {}
    for key in table.model_keys:
        M = models[key]
        tri = mono_triangles(M)
        lam = Fraction(tri["total"], 10) - cert.bound
        for r, block in enumerate(cert.blocks):
            q = block.Q.rows
            total = 0
            for (i, j), c in table.counts[r][key].items():
                if q[i][j]:
                    total += q[i][j] * c
            lam -= Fraction(total, 120)
        out[key] = lam
    return out


def verify(cert: Certificate, table: CoefficientTable | None = None) -> VerificationReport:
    """Full exact verification; failures are report content, never raised."""
    start = time.monotonic()
    psd_ok = []
    psd_failed = []
    for r, block in enumerate(cert.blocks, start=1):
        verdict = psd_check(block.Q)
        psd_ok.append(verdict.is_psd)
        if not verdict.is_psd:
            psd_failed.append(r)
    if table is None:
        table = coefficient_table(cert)
    lambdas = lambda_vector(cert, table)
    negative = sorted(key for key, lam in lambdas.items() if lam < 0)
    min_lambda = min(lambdas.values()) if lambdas else None

    violations = []
    models = enumerate_models(5, 3)
    bad_keys = [canonical_key(H) for H in bad_family()]
    for M in models:
        key = bytes(M.entries)
        four_counts = subgraph_class_counts(M, 4)
        for hk in bad_keys:
            if four_counts.get(hk, 0) > 0 and lambdas[key] <= 0:
                violations.append((hk, key, lambdas[key]))
    verified = all(psd_ok) and not negative and not violations
    return VerificationReport(
        psd_ok=psd_ok,
        psd_failed_blocks=psd_failed,
        lambdas=lambdas,
        min_lambda=min_lambda,
        negative_lambda_keys=negative,
        bad_family_ok=not violations,
        bad_family_violations=violations,
        verified=verified,
        seconds=time.monotonic() - start,
    )


def report_text(report: VerificationReport) -> str:
    """Machine-readable key-value rendering of a verification report."""
    lines = []
    for r, ok in enumerate(report.psd_ok, start=1):
        lines.append("PSD block=%d %s" % (r, "ok" if ok else "FAILED"))
    if report.min_lambda is not None:
        lines.append("MIN_LAMBDA " + format_rational(report.min_lambda))
    lines.append("NEGATIVE_LAMBDAS %d" % len(report.negative_lambda_keys))
    for key in report.negative_lambda_keys:
        lines.append("NEGATIVE_LAMBDA model=%s %s"
                     % (key.hex(), format_rational(report.lambdas[key])))
    lines.append("BAD_FAMILY_CONDITION %s"
                 % ("ok" if report.bad_family_ok else "FAILED"))
    for hk, mk, lam in report.bad_family_violations:
        lines.append("BAD_FAMILY_VIOLATION bad=%s model=%s lambda=%s"
                     % (hk.hex(), mk.hex(), format_rational(lam)))
    lines.append("SECONDS %.3f" % report.seconds)
    lines.append("VERDICT " + report.verdict)
    return "\n".join(lines) + "\n"


def extremal_zero_report(cert: Certificate,
                         table: CoefficientTable | None = None,
                         lambdas: dict | None = None) -> list:
    """For each 5-vertex model: its lambda and whether it occurs as an
    induced 5-subset of the 25-vertex extremal construction.  Models that
    occur must have lambda exactly 0."""
    from .extremal import build_gex
    if lambdas is None:
        if table is None:
            table = coefficient_table(cert)
        lambdas = lambda_vector(cert, table)
    gex = build_gex(25)
    occurring = set(subgraph_class_counts(gex, 5))
    out = []
    bad = []
    for key in sorted(lambdas):
        occurs = key in occurring
        if occurs and lambdas[key] != 0:
            bad.append(key)
        out.append((key, lambdas[key], occurs))
    if bad:
        raise ValueError(
            "lambda nonzero on %d models induced in the extremal "
            "construction: %s" % (len(bad), ", ".join(k.hex() for k in bad)))
    return out
