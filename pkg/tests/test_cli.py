import json
import subprocess
import sys

import pytest

from nilbound.cli import dumps, run


def call(argv, capsys):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, expected", [
    (["collect", "--rank", "2", "--class", "2", "b a"], {"class": 2, "exponents": [1, 1, -1], "rank": 2}),
    (["collect", "--rank", "2", "--class", "2", "a^9007199254740993"],
     {"class": 2, "exponents": ["9007199254740993", 0, 0], "rank": 2}),
    (["witt", "--rank", "2", "--class", "5"], [2, 1, 2, 3, 6]),
    (["sympdec", "[0,0]"], {"terms": [], "v": [0, 0]}),
    (["christoffel", "2", "1"], {"slope": [2, 1], "word": "a^2 b"}),
    (["section", "--genus", "1", "[4,6]"], {"curves": [
        {"handle": 1, "slope": [3, 1], "word": "a^3 b"},
        {"handle": 1, "slope": [1, 5], "word": "a b^5"}], "h": [4, 6]}),
])
def test_golden_outputs(argv, expected, capsys):
    code, out, _ = call(argv, capsys)
    assert code == 0
    assert json.loads(out) == expected
    assert out == dumps(expected) + "\n"


def test_collect_basis_listing(capsys):
    code, out, _ = call(["collect", "--rank", "2", "--class", "3", "--basis", "a b"], capsys)
    assert code == 0
    assert json.loads(out)["basis"] == ["a", "b", "[a,b]", "[[a,b],a]", "[[a,b],b]"]


def test_powershift(capsys):
    code, out, _ = call(["powershift", "--rank", "2", "-k", "3", "a", "b"], capsys)
    data = json.loads(out)
    assert code == 0 and data["holds"] is True
    assert data["class_m"]["exponents"] == [0, 0, 0]
    assert data["class_m_plus_1"]["exponents"][:3] == [0, 0, 0]


def test_sympdec_reconstructs(capsys):
    code, out, _ = call(["sympdec", "[4,7,0,5]"], capsys)
    data = json.loads(out)
    assert code == 0 and len(data["terms"]) == 2
    total = [0, 0, 0, 0]
    for term in data["terms"]:
        m = term["matrix"]
        total = [t + m[i][0] + m[i][2] for i, t in enumerate(total)]
    assert total == [4, 7, 0, 5]


def test_rewrite_certificate(capsys):
    code, out, _ = call(["rewrite", "--class", "2", "a^7 b a^-1 b^-1"], capsys)
    data = json.loads(out)
    assert code == 0 and data["verified"] is True
    assert data["s_length"] <= data["bound"] == 8


def test_diameter_json_and_csv(capsys):
    base = ["diameter", "--class", "1", "--height", "6", "--box", "10", "--max-radius", "10"]
    code, out, _ = call(base, capsys)
    assert code == 0 and json.loads(out)["covering_radius"] == 2
    code, out, _ = call(base + ["--output", "csv"], capsys)
    assert out.splitlines() == ["radius,newly_covered,cumulative", "0,1,1", "1,96,97", "2,344,441"]
    code, out, _ = call(base + ["--timing"], capsys)
    assert "elapsed_seconds" in json.loads(out)


@pytest.mark.parametrize("argv", [
    ["christoffel", "2", "2"],
    ["sympdec", "[1,2,3]"],
    ["sympdec", "{\"a\": 1}"],
    ["rewrite", "--class", "1", "--section", "standard", "--rank", "2", "--n0", "2", "a^3"],
    ["rewrite", "--class", "1", "--section", "standard", "a"],
    ["collect", "--rank", "2", "--class", "2", "a^x"],
    ["powershift", "--rank", "2", "-k", "2", "a"],
])
def test_domain_errors_exit_one(argv, capsys):
    code, out, err = call(argv, capsys)
    assert code == 1 and out == ""
    assert set(json.loads(err)) == {"error", "message"}


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["collect", "a"], ["witt", "--rank", "x", "--class", "2"]])
def test_usage_errors_exit_two(argv, capsys):
    assert call(argv, capsys)[0] == 2


def test_out_file_and_at_file(tmp_path, capsys):
    src = tmp_path / "word.txt"
    src.write_text("b a\n")
    dest = tmp_path / "nf.json"
    code, out, _ = call(["--out", str(dest), "collect", "--rank", "2", "--class", "2", f"@{src}"], capsys)
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["exponents"] == [1, 1, -1]
    assert call(["collect", "--rank", "2", "--class", "2", f"@{tmp_path / 'missing'}"], capsys)[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nilbound", "witt", "--rank", "3", "--class", "3"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout) == [3, 3, 8]
