import json
import subprocess
import sys
from pathlib import Path

import pytest

from nodal_sextics.cli import main
from nodal_sextics.verify import catalog_models

ROOT = Path(__file__).resolve().parents[1]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_exists(capsys):
    code, out, _ = run(capsys, "check", "--scheme", "⟨9⟩", "--type", "I", "--m", "1", "--r", "0")
    assert code == 0
    assert "EXISTS" in out.splitlines()[-1] and "-> True" in out.splitlines()[1]
    assert "arithmetic: (a, t, delta, r) = (2, 1, 0, 0)" in out


def test_check_does_not_exist(capsys):
    code, out, _ = run(capsys, "--ascii", "check", "--scheme", "<9>", "--type", "I", "--m", "1", "--r", "1")
    assert code == 0 and out.splitlines()[-1] == "DOES NOT EXIST"
    assert "class: <9>" in out


def test_check_usage_errors(capsys):
    assert run(capsys, "check", "--scheme", "⟨9⟩", "--type", "I", "--m", "1")[0] == 2
    assert run(capsys, "check", "--scheme", "⟨9⟩", "--type", "II", "--m", "1", "--r", "0")[0] == 2
    assert run(capsys, "check", "--scheme", "⟨9⟩", "--type", "I", "--m", "1", "--r", "3")[0] == 2
    assert run(capsys, "check", "--scheme", "⟨9", "--type", "I", "--m", "1", "--r", "0")[0] == 2


def test_scheme_parse(capsys):
    assert run(capsys, "scheme", "parse", "<1<8> u 1>")[1] == "⟨1 ⊔ 1⟨8⟩⟩\n"
    assert run(capsys, "--ascii", "scheme", "parse", "⟨1 ⊔ 1⟨8⟩⟩")[1] == "<1 u 1<8>>\n"
    code, _, err = run(capsys, "scheme", "parse", "⟨1⟨⟩")
    assert code == 2 and "position 3" in err


def test_scheme_invariants(capsys):
    code, out, _ = run(capsys, "scheme", "invariants", "⟨1⟨1⟨1⟩⟩⟩", "--type", "I", "--r", "0")
    obj = json.loads(out)
    assert code == 0 and (obj["a"], obj["t"], obj["delta"], obj["r"]) == (8, 9, 0, 0)
    assert obj["injective_pairs"] == 3
    obj = json.loads(run(capsys, "scheme", "invariants", "∅", "--type", "II")[1])
    assert (obj["a"], obj["t"]) == (10, 9)


def test_lattice_commands(capsys, tmp_path):
    p = tmp_path / "l.json"
    p.write_text(json.dumps({"gram": [[-4, 0], [0, -4]], "label": "m4"}))
    obj = json.loads(run(capsys, "lattice", "disc", str(p))[1])
    assert obj["group"] == [4, 4] and obj["form"]["q"] == ["7/4", "7/4"]
    obj = json.loads(run(capsys, "lattice", "signature", str(p))[1])
    assert obj["signature"] == [0, 2] and obj["determinant"] == 16
    assert run(capsys, "lattice", "disc", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "lattice", "disc", str(bad))[0] == 2


def test_form_commands(capsys, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    g = tmp_path / "g.json"
    a.write_text(json.dumps({"orders": [2], "q": ["1/2"], "b": [["1/2"]]}))
    b.write_text(json.dumps({"orders": [2], "q": ["3/2"], "b": [["1/2"]]}))
    g.write_text(json.dumps({"domain": [[1]], "image": [[1]]}))
    obj = json.loads(run(capsys, "form", "glue", str(a), str(b), str(g))[1])
    assert obj["orders"] == []
    obj = json.loads(run(capsys, "form", "glue", str(a), str(b))[1])
    assert obj["orders"] == [2, 2]
    assert json.loads(run(capsys, "form", "gauss", str(a))[1])["gauss_signature"] == 1
    assert run(capsys, "form", "gauss", str(a), str(b))[0] == 2
    assert run(capsys, "form", "glue", str(a), str(a), str(g))[0] == 2


def test_involution_command(capsys, tmp_path):
    hm1 = next(m for m in catalog_models() if m["label"] == "HM1")
    p = tmp_path / "hm1.json"
    p.write_text(json.dumps(hm1))
    code, out, _ = run(capsys, "involution", "invariants", str(p))
    assert code == 0 and json.loads(out) == {"valid": True, "m": 1, "a": 8, "t": 9, "delta": 0, "r": 0}
    bad = next(m for m in catalog_models() if m["label"] == "HM1-two-positive")
    p.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "involution", "invariants", str(p))
    assert code == 1 and "one_positive_square" in json.loads(out)["violations"]


def test_enumerate_compare(capsys, tmp_path):
    code, out, err = run(capsys, "enumerate", "--compare", str(ROOT / "figures.json"))
    assert code == 0 and "compare: match" in err
    assert "Totals: 78 dividing classes, 125 non-dividing classes" in out
    golden = json.loads((ROOT / "figures.json").read_text(encoding="utf-8"))
    golden["figure1"][0]["r_set"] = [1]
    p = tmp_path / "f.json"
    p.write_text(json.dumps(golden, ensure_ascii=False))
    code, _, err = run(capsys, "enumerate", "--compare", str(p))
    assert code == 1 and "1 differences" in err


def test_enumerate_formats_are_byte_stable(capsys):
    first = run(capsys, "enumerate", "--json")[1]
    second = run(capsys, "enumerate", "--json")[1]
    assert first == second and len(json.loads(first)) == 203
    csv_out = run(capsys, "--ascii", "enumerate", "--csv")[1]
    assert csv_out.startswith("m,scheme,divtype,r,l,a,t,delta\n")
    assert "⟨" not in csv_out and "empty" in csv_out
    assert "⟨" not in run(capsys, "--ascii", "enumerate", "--json")[1]


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "enumerate", "--json", "--csv")[0] == 2
    assert run(capsys, "check", "--scheme", "⟨9⟩", "--type", "I", "--m", "-1", "--r", "0")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nodal_sextics", "scheme", "parse", "<9>"],
                          capture_output=True, text=True, encoding="utf-8")
    assert proc.returncode == 0 and proc.stdout == "⟨9⟩\n"


@pytest.mark.slow
def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("checks passed")
    assert "FAIL" not in out
