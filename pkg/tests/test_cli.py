"""Command-line behavior: verdicts, exit codes, certificates, tracing."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from bipartite_rigidity import docio
from bipartite_rigidity.cli import main
from bipartite_rigidity.fixtures import emit_fixtures


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    out = tmp_path_factory.mktemp("fixtures")
    emit_fixtures(out)
    return out


def test_check_universally_rigid(corpus, capsys):
    code = main(["check", str(corpus / "k22_line.json")])
    out = capsys.readouterr().out.strip()
    assert code == 0
    assert out == "universally-rigid"


def test_check_not_dimensionally_rigid(corpus, capsys):
    code = main(["check", str(corpus / "separated_line.json")])
    assert code == 0
    assert capsys.readouterr().out.strip() == "not-dimensionally-rigid"


def test_check_dimensionally_rigid(corpus, capsys):
    code = main(["check", str(corpus / "triangle_k21.json")])
    assert code == 0
    assert capsys.readouterr().out.strip() == "dimensionally-rigid"


def test_check_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"d": 1, "P": [["1/0"]], "Q": []}')
    code = main(["check", str(bad)])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_check_missing_file(capsys):
    assert main(["check", "/nonexistent/path.json"]) == 2


def test_trace_line_count_matches_chain(corpus, capsys, tmp_path):
    cert_path = tmp_path / "cert.json"
    code = main(
        ["check", str(corpus / "projection_k44.json"), "--trace",
         "--certificate", str(cert_path)]
    )
    assert code == 0
    out_lines = capsys.readouterr().out.strip().splitlines()
    trace_lines = [l for l in out_lines if l.startswith("iteration ")]
    chain = docio.parse_chain(cert_path.read_text())
    assert len(trace_lines) == len(chain.records)
    assert out_lines[-1] == "universally-rigid"


def test_certificate_verifies(corpus, tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    assert main(["check", str(corpus / "cube_k44.json"),
                 "--certificate", str(cert_path)]) == 0
    capsys.readouterr()
    assert main(["verify", str(corpus / "cube_k44.json"), str(cert_path)]) == 0
    assert capsys.readouterr().out.strip() == "valid"
    # wrong framework: rejected with exit 1
    assert main(["verify", str(corpus / "k22_line.json"), str(cert_path)]) == 1
    assert capsys.readouterr().out.strip() == "invalid"


def test_certificate_rejects_edited_field(corpus, tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    main(["check", str(corpus / "k22_line.json"), "--certificate", str(cert_path)])
    capsys.readouterr()
    doc = json.loads(cert_path.read_text())
    doc["iterations"][0]["balance"]["lambdas"][0] = "-1/4"
    cert_path.write_text(json.dumps(doc))
    assert main(["verify", str(corpus / "k22_line.json"), str(cert_path)]) == 1


def test_check_many_files(corpus, capsys):
    code = main([
        "check",
        str(corpus / "k11.json"),
        str(corpus / "separated_line.json"),
        str(corpus / "k22_line.json"),
    ])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].endswith("universally-rigid")
    assert lines[1].endswith("not-dimensionally-rigid")
    assert lines[2].endswith("universally-rigid")


def test_certificate_flag_needs_single_file(corpus, capsys):
    code = main([
        "check", str(corpus / "k11.json"), str(corpus / "k22_line.json"),
        "--certificate", "/tmp/nope.json",
    ])
    assert code == 2


def test_separate_subcommand(corpus, capsys):
    assert main(["separate", str(corpus / "k22_line.json")]) == 0
    out = capsys.readouterr().out
    assert "lambda[0] = 1/4" in out
    assert main(["separate", str(corpus / "separated_line.json")]) == 0
    assert "margin" in capsys.readouterr().out


def test_stress_subcommand(corpus, capsys):
    assert main(["stress", str(corpus / "k22_line.json")]) == 0
    out = capsys.readouterr().out
    assert "rank 2" in out
    assert main(["stress", str(corpus / "separated_line.json")]) == 0
    assert "no positive stress" in capsys.readouterr().out


def test_dump_coords(corpus, capsys):
    assert main(["check", str(corpus / "k11.json"), "--dump-coords"]) == 0
    out = capsys.readouterr().out
    assert "# vertex class x..." in out
    assert "0 P 0" in out and "0 Q 1" in out


def test_fixtures_subcommand(tmp_path, capsys):
    assert main(["fixtures", str(tmp_path / "out")]) == 0
    assert (tmp_path / "out" / "manifest.json").exists()


def test_module_invocation_smoke(corpus):
    proc = subprocess.run(
        [sys.executable, "-m", "bipartite_rigidity", "check", str(corpus / "k11.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "universally-rigid"
