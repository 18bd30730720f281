import json
import subprocess
import sys

import pytest

from leonard.cli import dump_document, main
from leonard.families import krawtchouk, racah_example


def _write(tmp_path, doc, name="in.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_certify_racah(tmp_path, capsys):
    code, doc, _ = _run(capsys, "certify", "--input", _write(tmp_path, dump_document(racah_example())))
    assert code == 0
    assert doc["constants"]["beta"] == "2"
    assert doc["constants"]["a0_star"] == "0"
    assert doc["constants"]["gamma"] == "-12/35"
    assert len(doc["constants"]) == 12


def test_certify_racah_verify(tmp_path, capsys):
    code, doc, _ = _run(capsys, "certify", "--verify", "--input", _write(tmp_path, dump_document(racah_example())))
    assert code == 0
    assert all(doc["verification"].values())


def test_certify_c5_mutation(tmp_path, capsys):
    doc = dump_document(racah_example())
    doc["c"][4] = "4/7"
    code, out, _ = _run(capsys, "certify", "--input", _write(tmp_path, doc))
    assert code == 1
    assert out["passed"] is False
    assert "(vii)" in {v["condition"] for v in out["violations"]}
    assert all(isinstance(v["residual"], (str, type(None))) for v in out["violations"])


def test_truncated_arrays(tmp_path, capsys):
    doc = dump_document(racah_example())
    doc["b"] = doc["b"][:-1]
    assert _run(capsys, "certify", "--input", _write(tmp_path, doc))[0] == 2


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(a=[0] * 6),
    lambda d: d.update(field={"kind": "prime", "p": 9}),
    lambda d: d.update(d="5"),
    lambda d: d.update(theta_star=[3, 2, 1, 0, -1, -2]),
    lambda d: d.pop("c"),
    lambda d: d["theta_star"].__setitem__(1, "1/0"),
])
def test_malformed_input(tmp_path, capsys, mutate):
    doc = dump_document(racah_example())
    mutate(doc)
    assert _run(capsys, "certify", "--input", _write(tmp_path, doc))[0] == 2


def test_unreadable_input(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert _run(capsys, "certify", "--input", str(path))[0] == 2
    assert _run(capsys, "certify", "--input", str(tmp_path / "missing.json"))[0] == 2


def test_certify_without_theta(tmp_path, capsys):
    doc = dump_document(racah_example(with_theta=False))
    assert _run(capsys, "certify", "--input", _write(tmp_path, doc))[0] == 2


def test_infer_racah(tmp_path, capsys):
    code, doc, _ = _run(capsys, "infer", "--input", _write(tmp_path, dump_document(racah_example(with_theta=False))))
    assert code == 0
    assert doc["theta"] == ["3", "93/35", "69/35", "33/35", "-3/7", "-15/7"]


def test_infer_krawtchouk_4(tmp_path, capsys):
    code, doc, _ = _run(capsys, "infer", "--input", _write(tmp_path, dump_document(krawtchouk(4).with_theta(None))))
    assert code == 0
    assert doc["theta"] == ["4", "2", "0", "-2", "-4"]


def test_infer_inconsistent_row_sums(tmp_path, capsys):
    doc = dump_document(krawtchouk(4).with_theta(None))
    doc["a"][2] = "1"
    code, out, _ = _run(capsys, "infer", "--input", _write(tmp_path, doc))
    assert code == 1
    assert out["stage"] == "condition (v)"


def test_generate_to_certify(capsys, tmp_path):
    code, doc, _ = _run(capsys, "generate", "krawtchouk", "--d", "5", "--field", "rational")
    assert code == 0
    code, cert, _ = _run(capsys, "certify", "--input", _write(tmp_path, doc))
    assert code == 0 and cert["constants"]["theta_m1"] == "7"


@pytest.mark.parametrize("argv", [
    ["krawtchouk", "--d", "3"],
    ["krawtchouk", "--d", "8", "--field", "prime:11"],
    ["krawtchouk", "--d", "1"],
    ["q-racah", "--d", "2", "--q", "2", "--a", "3", "--b", "5", "--c", "7"],
    ["q-racah", "--d", "3", "--q", "2", "--a", "3", "--b", "3", "--c", "2", "--field", "prime:29"],
    ["racah-example"],
])
def test_generate_certify_matrix(capsys, tmp_path, argv):
    code, doc, _ = _run(capsys, "generate", *argv)
    assert code == 0
    code, cert, _ = _run(capsys, "certify", "--verify", "--input", _write(tmp_path, doc))
    assert code == 0 and all(cert["verification"].values())


def test_generate_rejects_bad_q_racah(capsys):
    code, _, err = _run(capsys, "generate", "q-racah", "--d", "2", "--q", "2", "--a", "2", "--b", "5", "--c", "7")
    assert code == 2
    assert "a^2 is among" in err


@pytest.mark.parametrize("argv", [
    ["generate", "krawtchouk", "--d", "5", "--field", "prime:5"],
    ["generate", "krawtchouk"],
    ["generate", "q-racah", "--d", "2"],
    ["generate", "krawtchouk", "--d", "2", "--field", "complex"],
    ["generate", "racah-example", "--field", "prime:11"],
    ["generate", "hahn"],
    ["certify", "--bogus"],
    [],
])
def test_usage_errors(capsys, argv):
    assert _run(capsys, *argv)[0] == 2


def test_split_via_cli(capsys, tmp_path):
    _, doc, _ = _run(capsys, "generate", "racah-example")
    code, cert, _ = _run(capsys, "certify", "--split", "--input", _write(tmp_path, doc))
    assert code == 0
    assert cert["split"]["varphi"][0] == "-36/35"
    assert cert["split"]["phi"][-1] == "36/49"


@pytest.mark.parametrize("d", [2, 3])
def test_dualize_krawtchouk(capsys, tmp_path, d):
    code, out, _ = _run(capsys, "dualize", "--input", _write(tmp_path, dump_document(krawtchouk(d))))
    assert code == 0
    assert out["row_sums"] == [str(d)] * (d + 1)
    assert out["irreducible_tridiagonal"]


def test_dualize_racah(capsys, tmp_path):
    code, out, _ = _run(capsys, "dualize", "--input", _write(tmp_path, dump_document(racah_example())))
    assert code == 0 and set(out["row_sums"]) == {"3"}


def test_dualize_non_leonard(capsys, tmp_path):
    doc = dump_document(krawtchouk(3))
    doc["c"][1] = "-2"
    assert _run(capsys, "dualize", "--input", _write(tmp_path, doc))[0] == 1


def test_certificate_round_trip(capsys, tmp_path):
    code, cert, _ = _run(capsys, "infer", "--input", _write(tmp_path, dump_document(racah_example(with_theta=False))))
    assert code == 0
    code, again, _ = _run(capsys, "certify", "--input", _write(tmp_path, cert, "cert.json"))
    assert code == 0
    assert again["constants"] == cert["constants"]


def test_d1_requires_gamma_star(capsys, tmp_path):
    doc = dump_document(krawtchouk(1))
    del doc["gamma_star"]
    assert _run(capsys, "certify", "--input", _write(tmp_path, doc))[0] == 2


def test_small_d_beta_default_warns(capsys, tmp_path):
    doc = dump_document(krawtchouk(2))
    del doc["beta"]
    code, out, err = _run(capsys, "certify", "--input", _write(tmp_path, doc))
    assert code == 0 and "beta" in err
    assert out["constants"]["beta"] == "2"


def test_prime_field_output_is_residues(capsys, tmp_path):
    _, doc, _ = _run(capsys, "generate", "krawtchouk", "--d", "3", "--field", "prime:11")
    assert doc["field"] == {"kind": "prime", "p": 11}
    assert doc["theta"] == ["3", "1", "10", "8"]


def test_shell_pipeline():
    gen = subprocess.run([sys.executable, "-m", "leonard", "generate", "racah-example"],
                         capture_output=True, text=True, check=True)
    cert = subprocess.run([sys.executable, "-m", "leonard", "certify", "--split", "--verify"],
                          input=gen.stdout, capture_output=True, text=True)
    assert cert.returncode == 0
    assert json.loads(cert.stdout)["split"]["varphi"][0] == "-36/35"
