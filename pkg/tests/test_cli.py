import json

import pytest

from iteralg.cli import main
from iteralg.config import AnalysisConfig
from iteralg.errors import ContractError
from iteralg import report
from test_words import mk

UNKNOWN_UR_SOURCE = """letters: a b
start: a
map a -> a a b
map b -> b
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# analyze


def test_analyze_paper12_text(capsys):
    code, out, err = run(capsys, "analyze", "gallery/paper12.morph")
    assert code == 0
    assert out.startswith("morphism:")
    assert "prime" in out


def test_analyze_paper12_json(capsys):
    code, out, _ = run(capsys, "analyze", "gallery/paper12.morph", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert list(doc.keys()) == [
        "morphism",
        "shape",
        "matrix",
        "word",
        "complexity",
        "properties",
        "graded",
        "diagnostics",
    ]
    assert doc["properties"]["prime"]["value"] == "Yes"
    assert doc["properties"]["gk_dimension"] == 2
    assert doc["graded"]["rotation_audit"]["pass"] is True
    assert doc["diagnostics"]["weights"]["convention_mismatch"] is True


def test_analyze_missing_file(capsys):
    code, out, err = run(capsys, "analyze", "nonexistent.morph")
    assert code == 2
    assert "no such file" in err


def test_analyze_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.morph"
    bad.write_text("letters: a\nstart: a\nmap a -> q\n")
    code, out, err = run(capsys, "analyze", str(bad))
    assert code == 2
    assert "line 3" in err and "undeclared" in err


def test_analyze_strict_unknown(tmp_path, capsys):
    src = tmp_path / "u.morph"
    src.write_text(UNKNOWN_UR_SOURCE)
    budget = ("--max-len", "16", "--mh-bound", "16", "--prefix-letters", "4096")
    code, out, _ = run(capsys, "analyze", str(src), "--strict", *budget)
    assert code == 3
    code2, _, _ = run(capsys, "analyze", str(src), *budget)
    assert code2 == 0


def test_analyze_reads_local_file_over_gallery(tmp_path, capsys):
    local = tmp_path / "fibonacci.morph"
    local.write_text("letters: z\nstart: z\nmap z -> z z\n")
    code, out, _ = run(capsys, "analyze", str(local))
    assert code == 0
    assert "z" in out.splitlines()[2]


# ---------------------------------------------------------------------------
# decide


@pytest.mark.parametrize(
    "path, prop, expected_code, fragment",
    [
        ("gallery/ba-example.morph", "prime", 1, "exactly once"),
        ("gallery/thue-morse.morph", "primitive", 0, "support-closure"),
        ("gallery/fibonacci.morph", "periodic", 1, "conditional"),
        ("gallery/periodic-ab.morph", "periodic", 0, "period"),
        ("gallery/paper12.morph", "ur", 0, "block-cover"),
        ("gallery/paper12.morph", "pi", 1, "complexity-exceeds-n"),
        ("gallery/ba-example.morph", "noetherian", 0, "period"),
    ],
)
def test_decide_matrix(capsys, path, prop, expected_code, fragment):
    code, out, err = run(capsys, "decide", path, prop)
    assert code == expected_code
    assert fragment in out
    assert err == ""


def test_decide_unknown_exit(tmp_path, capsys):
    src = tmp_path / "u.morph"
    src.write_text(UNKNOWN_UR_SOURCE)
    code, out, _ = run(capsys, "decide", str(src), "ur", "--max-len", "16")
    assert code == 3
    assert out.startswith("ur: Unknown")


def test_decide_parse_error(capsys, tmp_path):
    src = tmp_path / "broken.morph"
    src.write_text("letters: a\n")
    code, _, err = run(capsys, "decide", str(src), "prime")
    assert code == 2


# ---------------------------------------------------------------------------
# audit


def test_audit_paper12(capsys):
    code, out, _ = run(capsys, "audit", "gallery/paper12.morph", "--max-len", "12")
    assert code == 0
    assert "pass: True" in out
    assert "counterexample: rotation" not in out


def test_audit_periodic_fails(capsys):
    code, out, _ = run(capsys, "audit", "gallery/periodic-ab.morph", "--max-len", "8")
    assert code == 1
    assert "rotation audit" in out


def test_audit_fibonacci_default_grading(capsys):
    code, out, _ = run(capsys, "audit", "gallery/fibonacci.morph", "--max-len", "8")
    assert code == 1  # ab and ba are both factors


def test_audit_needs_grading_programmatically():
    m = mk(["a", "b"], ["a b", "a"], "a")
    with pytest.raises(ContractError):
        report.audit(m, AnalysisConfig(), "inline")


# ---------------------------------------------------------------------------
# gallery


def test_gallery_list(capsys):
    code, out, _ = run(capsys, "gallery", "list")
    assert code == 0
    assert out.split() == [
        "ba-example",
        "fibonacci",
        "paper12",
        "periodic-ab",
        "thue-morse",
    ]


def test_gallery_show_paper12(capsys):
    code, out, _ = run(capsys, "gallery", "show", "paper12")
    assert code == 0
    assert out.count("map ") == 12
    assert "degree x1 = 1" in out
    assert "degree default = 2" in out


def test_gallery_show_unknown(capsys):
    code, _, err = run(capsys, "gallery", "show", "zeta")
    assert code == 2
    assert "zeta" in err


# ---------------------------------------------------------------------------
# determinism (in-process; cross-process covered by the acceptance suite)


def test_json_output_repeatable(capsys):
    _, out1, _ = run(capsys, "analyze", "gallery/fibonacci.morph", "--format", "json")
    _, out2, _ = run(capsys, "analyze", "gallery/fibonacci.morph", "--format", "json")
    assert out1 == out2
