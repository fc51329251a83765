import io
import json
import subprocess
import sys

import pytest

from lambdagenus.cli import main
from lambdagenus.genus import GenusPoint, bs3


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_universal():
    code, text = run("universal", "product", "2")
    assert code == 0
    assert text == "P_2 = 1*Lr1^2*Ls2 + 1*Lr2*Ls1^2 - 2*Lr2*Ls2\n"
    assert run("universal", "compose", "1", "4") == (0, "P_1,4 = 1*Lr4\n")


def test_universal_cap(capsys):
    code, _ = run("universal", "product", "99")
    assert code == 2
    assert "n_max" in capsys.readouterr().err
    assert run("universal", "compose", "3", "3")[0] == 2
    assert run("universal", "compose", "3", "3", "--nm-max", "9")[0] == 0


def test_adams():
    assert run("adams", "2") == (0, "psi^2 = 1*Lr1^2 - 2*Lr2\n")
    assert run("adams", "1") == (0, "psi^1 = 1*Lr1\n")
    assert run("adams", "0")[0] == 2


def test_json_is_byte_identical():
    a = run("universal", "product", "3", "--format", "json")[1]
    b = run("universal", "product", "3", "--format", "json")[1]
    assert a == b
    doc = json.loads(a)
    assert doc["schema"] == 1 and doc["kind"] == "product"


def test_verify_suites():
    assert run("verify", "genus")[0] == 0
    code, text = run("verify", "theorem")
    assert code == 0
    assert "64 residue pairs, 16 intertwinable" in text
    code, text = run("verify", "axioms", "--samples", "5")
    assert code == 0
    code, text = run("verify", "adams", "--samples", "5", "--format", "json")
    assert code == 0 and json.loads(text)["seed"] == 0
    assert run("verify", "bogus")[0] == 2


def test_verify_json_deterministic():
    a = run("verify", "theorem", "--format", "json")[1]
    assert a == run("verify", "theorem", "--format", "json")[1]
    assert "runtime_seconds" not in a
    assert "runtime_seconds" in run("verify", "theorem", "--format", "json", "--timing")[1]


def write(tmp_path, name, point):
    path = tmp_path / name
    path.write_text(point.dumps())
    return str(path)


def test_compare(tmp_path):
    base = bs3()
    fx = write(tmp_path, "x.json", base)
    code, text = run("compare", fx, fx)
    assert code == 0 and text.startswith("equivalent") and "eps=+1, sigma2'=0" in text
    fy = write(tmp_path, "y.json", GenusPoint(7, base.signs))
    assert "(X/2)" in run("compare", fx, fy)[1]
    fz = write(tmp_path, "z.json", base.with_sign(11, -1))
    code, text = run("compare", fx, fz, "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["equivalent"] is False
    assert doc["distinguished_by"]["prime"] == 11


def test_compare_errors(tmp_path):
    fx = write(tmp_path, "x.json", bs3())
    fy = write(tmp_path, "y.json", bs3(13))
    assert run("compare", fx, fy)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"a_class": 4, "signs": {}}')
    assert run("compare", fx, str(bad))[0] == 2
    assert run("compare", fx, str(tmp_path / "missing.json"))[0] == 2


def test_genus_command():
    code, text = run("genus", "--a", "23", "--flip", "11", "--p-max", "13")
    assert code == 0
    pt = GenusPoint.from_json(text)
    assert pt.a_class == 1 and pt.sign_map == {5: 1, 7: 1, 11: -1, 13: 1}
    assert run("genus", "--a", "2")[0] == 2
    assert run("genus", "--flip", "4")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lambdagenus", "adams", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "psi^3 = 1*Lr1^3 - 3*Lr1*Lr2 + 3*Lr3\n"
