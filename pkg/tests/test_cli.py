import csv
import io
import json
import subprocess
import sys

import pytest

from kspp import cli, ledger
from kspp.graph import build_graph, write_edge_list
from kspp.graph6 import parse_graph6


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_c4(capsys):
    code, out, _ = run(capsys, "check", "Cl", "-k", "2")
    report = json.loads(out)
    assert code == 1
    assert report["kspp"] == "violated"
    assert report["condition"]["witness_S"] == [0, 2]
    assert report["definition"]["witness_X"] == [0, 2]
    assert report["oracles_agree"] is True


def test_check_k3(capsys):
    code, out, _ = run(capsys, "check", "Bw")
    report = json.loads(out)
    assert code == 0
    assert report["condition"]["outcome"] == report["definition"]["outcome"] == "satisfied"
    assert report["q"]["value"] == 4.0


def test_check_truncated(capsys):
    code, _, err = run(capsys, "check", "B")
    assert code == 3
    assert "byte" in err


def test_check_usage_errors(capsys):
    assert run(capsys, "check", "Bw", "-k", "3")[0] == 3
    assert run(capsys, "frobnicate")[0] == 3


def test_check_edge_list_file(tmp_path, capsys):
    path = tmp_path / "c4.txt"
    path.write_text(write_edge_list(build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])))
    code, out, _ = run(capsys, "check", str(path))
    assert code == 1
    assert json.loads(out)["n"] == 4


def test_check_budget_exit(capsys):
    code, out, _ = run(capsys, "check", "Bw", "--max-n-condition", "2", "--max-m-definition", "2")
    assert code == 2
    assert json.loads(out)["kspp"] == "budget"


def test_check_deterministic(capsys):
    first = run(capsys, "check", "Es\\o")[1]
    second = run(capsys, "check", "Es\\o")[1]
    assert first == second


def test_enumerate(tmp_path, capsys):
    code, out, _ = run(capsys, "enumerate", "4")
    lines = out.split()
    assert code == 0 and len(lines) == 38
    assert all(parse_graph6(x).is_connected() for x in lines)
    assert run(capsys, "enumerate", "9")[0] == 3


def test_scan_small_corpus(tmp_path, capsys):
    corpus = tmp_path / "c.g6"
    corpus.write_text("Bw\nCl\nE??w\n")  # K3, C4, disconnected
    out_csv = tmp_path / "out.csv"
    summary = tmp_path / "summary.json"
    code = cli.main(["scan", str(corpus), "-o", str(out_csv), "--summary", str(summary)])
    rows = list(csv.reader(io.StringIO(out_csv.read_text())))
    assert rows[0] == cli.CSV_HEADER
    assert [r[0] for r in rows[1:]] == ["0", "1", "2"]
    assert rows[2][5:7] == ["violated", "S=[0 2]"]
    assert "out-of-scope" in rows[3][6]
    assert rows[3][6].startswith("X=")
    data = json.loads(summary.read_text())
    assert data["records"] == 3 and data["counterexamples"] == []
    assert code == 0


def test_scan_empty(tmp_path, capsys):
    corpus = tmp_path / "empty.g6"
    corpus.write_text("")
    code, out, _ = run(capsys, "scan", str(corpus))
    assert code == 0 and out == ""


def test_scan_parse_error_elevates(tmp_path, capsys):
    corpus = tmp_path / "bad.g6"
    corpus.write_text("Bw\nB\nCl\n")
    code, out, err = run(capsys, "scan", str(corpus))
    assert code == 2
    assert len(out.strip().splitlines()) == 3  # header + two graphs
    assert json.loads(err)["parse_errors"][0]["line"] == 2


def test_scan_unreadable(capsys):
    assert run(capsys, "scan", "/nonexistent/corpus.g6")[0] == 3


def test_scan_workers_preserve_order(tmp_path, capsys):
    corpus = tmp_path / "n5.g6"
    cli.main(["enumerate", "5", "-o", str(corpus)])
    serial = tmp_path / "a.csv"
    parallel = tmp_path / "b.csv"
    cli.main(["scan", str(corpus), "-o", str(serial), "--summary", str(tmp_path / "s1.json")])
    cli.main(["scan", str(corpus), "-o", str(parallel), "--workers", "2",
              "--summary", str(tmp_path / "s2.json")])
    assert serial.read_bytes() == parallel.read_bytes()


def test_scan_definition_oracle(tmp_path, capsys):
    corpus = tmp_path / "c.g6"
    corpus.write_text("Cl\n")
    code, out, _ = run(capsys, "scan", str(corpus), "--oracle", "definition")
    assert "X=[0 2]" in out


def test_extremal(capsys, tmp_path):
    out_path = tmp_path / "g.g6"
    code, out, _ = run(capsys, "extremal", "23", "3", "2", "--graph-out", str(out_path))
    report = json.loads(out)
    assert code == 0
    assert report["e_formula"] == report["e_constructed"] == 183
    assert report["targeted_S"] == {"S": [0, 1, 2], "components": 5, "bound": 61, "violated": False}
    assert report["size_premise"] is True
    assert report["condition"]["outcome"] in ("satisfied", "violated")
    assert parse_graph6(out_path.read_text().strip()).edge_count == 183


def test_extremal_small_and_large(capsys):
    report = json.loads(run(capsys, "extremal", "12", "3", "2")[1])
    assert report["e_constructed"] == 40 and report["size_premise"] is False
    code, out, err = run(capsys, "extremal", "70", "3", "2")
    report = json.loads(out)
    assert "edge_list" in report and "notice" in err
    assert report["condition"]["outcome"] == "budget"
    assert run(capsys, "extremal", "23", "2", "2")[0] == 3


def test_verify_proofs_tuple(capsys):
    code, out, _ = run(capsys, "verify-proofs", "--tuple", "23", "3", "2", "1")
    report = json.loads(out)
    assert code == 0
    ident = report["checks"]["balanced_identity"]
    assert ident["lhs"] == ident["rhs"] == "35"


def test_verify_proofs_defaults(capsys, tmp_path):
    code, out, _ = run(capsys, "verify-proofs", "--random-graphs", "100", "-o", str(tmp_path / "l.json"))
    report = json.loads(out)
    assert code == 0 and report["fails"] == 0
    assert report["ks"] == [2, 4]
    assert json.loads((tmp_path / "l.json").read_text()) == report


def test_verify_proofs_corrupted(monkeypatch, capsys):
    real = ledger.gap_cubic
    monkeypatch.setattr(ledger, "gap_cubic", lambda s, n, d, k: real(s, n, d, k) + 1)
    code, out, _ = run(capsys, "verify-proofs", "--random-graphs", "5")
    assert code == 1
    assert json.loads(out)["checks"]["balanced_identity"]["fails"] >= 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kspp", "check", "Cl"], capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["kspp"] == "violated"
