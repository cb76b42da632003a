from fractions import Fraction

import pytest

from triflag.certificate import serialize_certificate, Certificate
from triflag.cli import main
from triflag.extremal import build_gex
from triflag.graphs import format_graph, parse_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate(tmp_path, capsys):
    out = tmp_path / "models.txt"
    code, stdout, _ = run(capsys, "enumerate", "--n", "4", "--k", "3",
                          "--out", str(out))
    assert code == 0
    assert "models=66 polya=66 OK" in stdout
    text = out.read_text()
    assert text.count("4 3\n") == 66
    assert text.rstrip().endswith("count 66")


def test_verify_shipped(tmp_path, capsys):
    report = tmp_path / "report.txt"
    code, stdout, _ = run(capsys, "verify", "--out", str(report))
    assert code == 0
    assert "VERDICT VERIFIED" in stdout
    text = report.read_text()
    assert "triflag" in text
    assert "sha256" in text


def test_verify_missing_file(capsys):
    code, _, err = run(capsys, "verify", "--cert", "/no/such/file")
    assert code == 2
    assert "error" in err


def test_verify_corrupted_bound(tmp_path, capsys, shipped_cert):
    bad = Certificate(Fraction(1, 24), shipped_cert.blocks)
    path = tmp_path / "bad.cert"
    path.write_text(serialize_certificate(bad))
    code, stdout, _ = run(capsys, "verify", "--cert", str(path))
    assert code == 1
    assert "VERDICT FAILED" in stdout


def test_verify_unparsable_certificate(tmp_path, capsys):
    path = tmp_path / "garbage.cert"
    path.write_text("FLAGCERT 1\nBOUND nonsense\n")
    code, _, err = run(capsys, "verify", "--cert", str(path))
    assert code == 2


def test_extremal_and_count_and_check(tmp_path, capsys):
    graph = tmp_path / "gex11.txt"
    code, stdout, _ = run(capsys, "extremal", "--n", "11",
                          "--out", str(graph))
    assert code == 0
    assert "triangles=1 formula=1 OK" in stdout
    assert parse_graph(graph.read_text()) == build_gex(11)

    code, stdout, _ = run(capsys, "count", str(graph))
    assert code == 0
    assert "triangles=1" in stdout

    code, stdout, _ = run(capsys, "check-gn", str(graph))
    assert code == 0
    assert "member" in stdout


def test_check_gn_rejects_non_member(tmp_path, capsys):
    path = tmp_path / "red6.txt"
    from triflag.graphs import ColouredGraph
    path.write_text(format_graph(ColouredGraph(6, 3, (1,) * 15)))
    code, stdout, _ = run(capsys, "check-gn", str(path))
    assert code == 1
    assert "not a member" in stdout


def test_goodman(capsys):
    code, stdout, _ = run(capsys, "goodman", "--n", "6")
    assert code == 0
    assert "formula=2 brute=2 OK" in stdout
    code, stdout, _ = run(capsys, "goodman", "--n", "100")
    assert code == 0
    assert "formula=39200" in stdout


def test_brute(capsys):
    code, stdout, _ = run(capsys, "brute", "--n", "5", "--k", "3")
    assert code == 0
    assert "minimum=0" in stdout


def test_brute_size_limit(capsys):
    code, _, err = run(capsys, "brute", "--n", "9", "--k", "3")
    assert code == 2


def test_sdp_export_and_round(tmp_path, capsys, shipped_cert,
                              shipped_table):
    prob = tmp_path / "problem.dat-s"
    code, stdout, _ = run(capsys, "sdp-export", "--out", str(prob))
    assert code == 0
    assert prob.exists()

    # build a solution file from the shipped certificate and round-trip it
    from triflag.certificate import lambda_vector
    lams = lambda_vector(shipped_cert, shipped_table)
    lines = [" ".join(["0.0"] * 792)]
    for b, blk in enumerate(shipped_cert.blocks, start=1):
        for i in range(27):
            for j in range(i, 27):
                v = blk.Q.rows[i][j]
                if v:
                    lines.append("2 %d %d %d %.17g" % (b, i + 1, j + 1,
                                                       float(v)))
    for k, key in enumerate(shipped_table.model_keys, start=1):
        lines.append("2 11 %d %d %.17g" % (k, k, float(lams[key])))
    sol = tmp_path / "solution.txt"
    sol.write_text("\n".join(lines) + "\n")

    out_cert = tmp_path / "rounded.cert"
    code, stdout, _ = run(capsys, "sdp-round", str(sol),
                          "--max-den", "4000000", "--out", str(out_cert))
    assert code == 0
    assert "VERDICT VERIFIED" in stdout
    from triflag.certificate import load_certificate
    assert load_certificate(out_cert.read_text()) == shipped_cert


def test_sdp_round_bad_solution(tmp_path, capsys):
    sol = tmp_path / "bad.txt"
    sol.write_text("1.0 2.0\n")
    code, _, err = run(capsys, "sdp-round", str(sol))
    assert code == 2


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
