import csv
import io
import json

import pytest

from sumprod.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stats_ap(capsys):
    code, out, _ = run(capsys, "stats", "--set", "ap:1:1:5")
    body = json.loads(out)
    assert code == 0
    assert (body["sumset"], body["diffset"], body["energy"]) == (9, 9, 85)


def test_verify_file(tmp_path, capsys):
    f = tmp_path / "demo.txt"
    f.write_text("1\n2\n3\n")
    code, out, _ = run(capsys, "verify", "--set", f"file:{f}")
    assert code == 0
    assert all(c["verdict"] != "fail" for c in json.loads(out)["checks"])


def test_verify_zero_is_input_error(tmp_path, capsys):
    f = tmp_path / "z.txt"
    f.write_text("0\n1\n2\n")
    code, _, err = run(capsys, "verify", "--set", f"file:{f}")
    assert code == 2 and "0 not in A" in err
    code, _, _ = run(capsys, "verify", "--set", f"file:{f}", "--no-multiplicative")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["stats", "--set", "bogus:1"],
    ["stats", "--set", "file:/nonexistent/file"],
    ["chain", "--set", "ap:1:1:1"],
    ["stats", "--set", "ap:1:1:3", "--precision", "10"],
    ["scan", "--set", "ap:1:1:{n}"],
])
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_parse_error_reports_line(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("1\n2\nfoo\n")
    code, _, err = run(capsys, "stats", "--set", f"file:{f}")
    assert code == 2 and "line 3" in err


def test_chain_json(capsys):
    code, out, _ = run(capsys, "chain", "--set", "ap:1:1:8", "--case", "product",
                       "--sign", "sum")
    doc = json.loads(out)
    assert code == 0 and doc["meta"]["case"] == "product"
    assert doc["checks"][-1]["checkId"] == "exponent-product-sum"


def test_chain_csv(capsys):
    code, out, _ = run(capsys, "chain", "--set", "gp:1:2:6", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0][0] == "checkId" and len(rows) > 10


def test_incidence(tmp_path, capsys):
    pts = tmp_path / "p.txt"
    lines = tmp_path / "l.txt"
    pts.write_text("".join(f"{x};{y}\n" for x in range(3) for y in range(3)))
    lines.write_text("0;1;0\n0;1;1\n0;1;2\n1;0;0\n1;0;1\n1;0;2\n1;-1;0\n1;1;2\n")
    code, out, _ = run(capsys, "incidence", "--points", str(pts), "--lines", str(lines),
                       "--t", "4")
    body = json.loads(out)
    assert code == 0 and body["incidences"] == 24
    assert body["richPoints"][0]["points"] == ["1;1"]


def test_scan_and_output_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SUMPROD_OUTPUT_DIR", str(tmp_path))
    code, _, _ = run(capsys, "scan", "--set", "gp:1:2:{n}", "--values", "4..16..x2",
                     "-o", "scan.csv")
    rows = list(csv.DictReader((tmp_path / "scan.csv").open()))
    assert code == 0 and [r["n"] for r in rows] == ["4", "8", "16"]
    assert [r["prodset"] for r in rows] == ["7", "15", "31"]


def test_scan_blank_cells_with_zero(capsys):
    code, out, _ = run(capsys, "scan", "--set", "ap:0:1:4")
    row = list(csv.DictReader(io.StringIO(out)))[0]
    assert code == 0 and row["ratioset"] == "" and row["multEnergy"] == ""
    assert row["expProductDiff"] != ""


def test_precision_env(monkeypatch, capsys):
    monkeypatch.setenv("SUMPROD_PRECISION", "35")
    _, out, _ = run(capsys, "scan", "--set", "ap:1:1:4")
    cell = list(csv.DictReader(io.StringIO(out)))[0]["expRatioDiff"]
    assert len(cell.replace(".", "")) == 35
