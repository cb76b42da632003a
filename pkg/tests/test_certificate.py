import hashlib
import random
from fractions import Fraction

import pytest

from triflag import certificate as cert_mod
from triflag.certificate import (Certificate, CertificateBlock,
                                 CertificateError, coefficient_table,
                                 lambda_vector, load_certificate,
                                 report_text, serialize_certificate, verify)
from triflag.exact import SymMatrix
from triflag.flags import avg_coefficient, flag_from_vector
from triflag.graphs import (ColouredGraph, canonical_key, enumerate_models,
                            mono_triangles)

SHIPPED_SHA256 = \
    "42987518138734882c68c1e1df5badfb8ca8f2f4017c5ee026861d4c075ca71a"


def all_red_k5():
    return ColouredGraph(5, 3, (1,) * 10)


def test_shipped_file_checksum_is_pinned():
    digest = hashlib.sha256(
        cert_mod.shipped_certificate_text().encode()).hexdigest()
    assert digest == SHIPPED_SHA256


def test_shipped_structure(shipped_cert):
    assert shipped_cert.bound == Fraction(1, 25)
    assert len(shipped_cert.blocks) == 10
    for block in shipped_cert.blocks:
        assert len(block.vectors) == 27
        assert len(set(block.vectors)) == 27
        assert block.Q.dim == 27
    type_keys = {canonical_key(b.type_sigma) for b in shipped_cert.blocks}
    assert type_keys == {canonical_key(M) for M in enumerate_models(3, 3)}


def test_serialize_round_trip(shipped_cert):
    assert load_certificate(serialize_certificate(shipped_cert)) \
        == shipped_cert


def _mutate_line(text, predicate, edit):
    lines = text.splitlines()
    for i, ln in enumerate(lines):
        if predicate(i, ln):
            lines[i] = edit(ln)
            break
    return "\n".join(lines) + "\n"


def test_loader_rejects_asymmetric_q(shipped_cert):
    text = serialize_certificate(shipped_cert)
    lines = text.splitlines()
    q_start = lines.index("Q 27") + 1
    row = lines[q_start].split()
    row[1] = "99999/7"
    lines[q_start] = " ".join(row)
    with pytest.raises(CertificateError, match="symmetric"):
        load_certificate("\n".join(lines) + "\n")


def test_loader_rejects_colour_out_of_range(shipped_cert):
    text = serialize_certificate(shipped_cert)
    lines = text.splitlines()
    f_start = lines.index("FLAGS 27") + 1
    lines[f_start] = "1 1 4"
    with pytest.raises(CertificateError, match="1..3"):
        load_certificate("\n".join(lines) + "\n")


def test_loader_rejects_truncation(shipped_cert):
    text = serialize_certificate(shipped_cert)
    head = "\n".join(text.splitlines()[:50]) + "\n"
    with pytest.raises(CertificateError, match="line|end of file"):
        load_certificate(head)


def test_loader_rejects_bad_header():
    with pytest.raises(CertificateError, match="FLAGCERT"):
        load_certificate("FLAGCERT 2\nBOUND 1/25\n")


def test_table_identity_entries(shipped_cert, shipped_table):
    key = bytes(all_red_k5().entries)
    block0 = shipped_cert.blocks[0]
    i = block0.vectors.index((1, 1, 1))
    assert shipped_table.entry(0, key, i, i) == 1
    assert shipped_table.valid_injections[0][key] == 60


def test_table_matches_avg_coefficient_spot_checks(shipped_cert,
                                                   shipped_table):
    rng = random.Random(1)
    models = enumerate_models(5, 3)
    for _ in range(6):
        r = rng.randrange(10)
        M = rng.choice(models)
        i = rng.randrange(27)
        j = rng.randrange(27)
        block = shipped_cert.blocks[r]
        want = avg_coefficient(block.type_sigma,
                               flag_from_vector(block.type_sigma,
                                                block.vectors[i]),
                               flag_from_vector(block.type_sigma,
                                                block.vectors[j]), M)
        assert shipped_table.entry(r, bytes(M.entries), i, j) == want


def test_table_symmetry_and_sum_rule(shipped_table):
    for r in range(10):
        for key, cells in shipped_table.counts[r].items():
            for (i, j), c in cells.items():
                assert cells[j, i] == c
            assert sum(cells.values()) == \
                2 * shipped_table.valid_injections[r][key]


def test_lambda_vector_shipped(shipped_cert, shipped_table):
    lams = lambda_vector(shipped_cert, shipped_table)
    assert len(lams) == 792
    assert all(lam >= 0 for lam in lams.values())
    assert lams[bytes(all_red_k5().entries)] == 0
    from triflag.extremal import pentagon_base
    pent_key = canonical_key(pentagon_base())
    assert lams[pent_key] == 0


def test_verify_shipped(shipped_report):
    assert shipped_report.verified
    assert shipped_report.verdict == "VERIFIED"
    assert shipped_report.min_lambda == 0
    assert shipped_report.psd_failed_blocks == []
    assert shipped_report.bad_family_ok
    text = report_text(shipped_report)
    assert "VERDICT VERIFIED" in text


def test_verify_reports_are_deterministic(shipped_cert, shipped_table):
    a = verify(shipped_cert, shipped_table)
    b = verify(shipped_cert, shipped_table)
    assert a.lambdas == b.lambdas
    assert a.psd_ok == b.psd_ok
    assert a.verified == b.verified


def test_tightened_bound_fails(shipped_cert, shipped_table):
    bad = Certificate(Fraction(1, 24), shipped_cert.blocks)
    report = verify(bad, shipped_table)
    assert not report.verified
    assert report.negative_lambda_keys
    assert "VERDICT FAILED" in report_text(report)


def test_negated_block_fails_psd(shipped_cert, shipped_table):
    blocks = list(shipped_cert.blocks)
    b = blocks[0]
    blocks[0] = CertificateBlock(
        b.type_sigma, b.vectors, b.flags,
        SymMatrix([[-x for x in row] for row in b.Q.rows]))
    report = verify(Certificate(shipped_cert.bound, tuple(blocks)),
                    shipped_table)
    assert not report.verified
    assert report.psd_failed_blocks == [1]


def test_single_entry_mutations_name_the_failing_check(shipped_cert,
                                                       shipped_table):
    rng = random.Random(2026)
    eps = Fraction(1, 10**6)
    for _ in range(20):
        r = rng.randrange(10)
        i = rng.randrange(27)
        j = rng.randrange(27)
        sign = rng.choice((1, -1))
        rows = [list(row) for row in shipped_cert.blocks[r].Q.rows]
        rows[i][j] += sign * eps
        rows[j][i] = rows[i][j]
        blocks = list(shipped_cert.blocks)
        b = blocks[r]
        blocks[r] = CertificateBlock(b.type_sigma, b.vectors, b.flags,
                                     SymMatrix(rows))
        report = verify(Certificate(shipped_cert.bound, tuple(blocks)),
                        shipped_table)
        if report.verified:
            continue
        assert (report.psd_failed_blocks or report.negative_lambda_keys
                or report.bad_family_violations)


def test_extremal_zero_report(shipped_cert, shipped_report):
    rows = cert_mod.extremal_zero_report(shipped_cert,
                                         lambdas=shipped_report.lambdas)
    assert len(rows) == 792
    occurring = {key for key, _, occ in rows if occ}
    assert bytes(all_red_k5().entries) in occurring
    from triflag.extremal import pentagon_base
    assert canonical_key(pentagon_base()) in occurring
    for key, lam, occ in rows:
        if occ:
            assert lam == 0
            M = ColouredGraph(5, 3, tuple(key))
            per = mono_triangles(M)
            assert per[2] == 0 and per[3] == 0


def test_threaded_table_is_identical(shipped_cert, shipped_table):
    threaded = coefficient_table(shipped_cert, threads=3)
    assert threaded.counts == shipped_table.counts
    assert threaded.valid_injections == shipped_table.valid_injections
    assert threaded.model_keys == shipped_table.model_keys
