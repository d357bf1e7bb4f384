import json
import subprocess
import sys

import pytest

from tensoraxiom import serialize as S
from tensoraxiom.cli import main
from tensoraxiom.exact import QQ, LinearMap, VectorSpace


def run(argv, capsys):
    status = main([str(a) for a in argv])
    return status, json.loads(capsys.readouterr().out)


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def test_check_axioms_random_probes(tmp_path, capsys):
    path = write(tmp_path, "dims.json", {"field": "GF(7)", "X_dim": 2, "Y_dim": 3,
                                         "random_probes": 4})
    status, out = run(["check-axioms", path], capsys)
    assert status == 0 and out["passed"] and len(out["reports"]) == 2


def test_check_axioms_explicit_probe(tmp_path, capsys):
    probe = {"field": "Q", "Z_dim": 1, "X_dim": 1, "Y_dim": 1, "coeffs": [[["1"]]]}
    path = write(tmp_path, "p.json", {"X_dim": 1, "Y_dim": 1, "probes": [probe]})
    status, out = run(["check-axioms", "--realization", "dual", path], capsys)
    assert status == 0 and len(out["reports"]) == 1


def test_member_of_relation_span(tmp_path, capsys):
    # x (x) (y1 + y2) - x (x) y1 - x (x) y2 with x = (1, 2), y1 = (1, 0), y2 = (0, 3)
    terms = [{"x": ["1", "2"], "y": ["1", "3"], "coeff": "1"},
             {"x": ["1", "2"], "y": ["1", "0"], "coeff": "-1"},
             {"x": ["1", "2"], "y": ["0", "3"], "coeff": "-1"}]
    status, out = run(["member-M", write(tmp_path, "g.json", terms)], capsys)
    assert (status, out) == (0, {"member": True})
    status, out = run(["member-M", write(tmp_path, "e.json", terms[:1])], capsys)
    assert (status, out) == (0, {"member": False})


def test_normal_form(tmp_path, capsys):
    terms = [{"x": ["1", "1"], "y": ["1", "1"]}]
    status, out = run(["normal-form", write(tmp_path, "f.json", terms)], capsys)
    assert status == 0 and out["coeffs"] == [["1", "1"], ["1", "1"]]


def test_norm_identity(tmp_path, capsys):
    path = write(tmp_path, "t.json", {"coeffs": [[1, 0], [0, 1]]})
    status, out = run(["norm", "--kind", "projective", "--px", "2", "--py", "2", path], capsys)
    assert status == 0 and out == {"lo": 2.0, "hi": 2.0, "method": "closed-form"}
    status, out = run(["norm", "--kind", "injective", "--px", "1", "--py", "1", path], capsys)
    assert out["hi"] == 2.0
    status, out = run(["norm", "--kind", "hilbert", path], capsys)
    assert out["hi"] == pytest.approx(2 ** 0.5)


def test_certify(tmp_path, capsys):
    path = write(tmp_path, "t.json", {"coeffs": [[1, 2], [3, 4]], "px": "inf", "py": 1})
    status, out = run(["certify", path], capsys)
    assert status == 0 and out["passed"] and out["px"] == "inf"


def test_kron_adjoint_shuffle_round_trip(tmp_path, capsys):
    Q2 = VectorSpace(QQ, 2)
    A = LinearMap.from_rows(Q2, Q2, [[1, 2], [3, 4]])
    B = LinearMap.from_rows(Q2, Q2, [[0, 1], [1, 0]])
    a, b = write(tmp_path, "a.json", S.dump_map(A)), write(tmp_path, "b.json", S.dump_map(B))
    status, out = run(["kron", a, b], capsys)
    assert status == 0 and out["matrix"][0] == ["0", "1", "0", "2"]
    assert S.load_map(out).domain.dim == 4
    status, out = run(["adjoint", a], capsys)
    assert S.load_map(out).matrix == ((1, 3), (2, 4))
    status, out = run(["shuffle", "--m", 2, "--n", 3, "--field", "GF(5)"], capsys)
    assert status == 0 and out["field"] == "GF(5)" and len(out["matrix"]) == 6


def test_factorize_and_iso(tmp_path, capsys):
    phi = {"field": "Q", "Z_dim": 1, "X_dim": 2, "Y_dim": 1, "coeffs": [[["1"], ["-1"]]]}
    status, out = run(["factorize", "--realization", "dual", write(tmp_path, "phi.json", phi)],
                      capsys)
    assert status == 0 and out["map"]["matrix"] == [["1", "-1"]]
    status, out = run(["iso", write(tmp_path, "d.json", {"X_dim": 2, "Y_dim": 2})], capsys)
    assert out["map"]["matrix"] == [[str(int(i == j)) for j in range(4)] for i in range(4)]


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "out.json"
    assert main(["shuffle", "--m", "1", "--n", "1", "-o", str(dest)]) == 0
    assert capsys.readouterr().out == ""
    assert S.load_map(S.loads(dest.read_text())).matrix == ((1,),)


def test_parse_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    status, out = run(["adjoint", bad], capsys)
    assert status == 2 and out["error"]["type"] == "ParseError"
    status, out = run(["adjoint", tmp_path / "missing.json"], capsys)
    assert status == 2
    path = write(tmp_path, "t.json", {"coeffs": [[1]]})
    status, out = run(["norm", "--px", "3", path], capsys)
    assert status == 2


def test_kernel_error_exits_1(tmp_path, capsys):
    a = write(tmp_path, "a.json", {"field": "Q", "matrix": [["1"]]})
    b = write(tmp_path, "b.json", {"field": "GF(7)", "matrix": [["1"]]})
    status, out = run(["kron", a, b], capsys)
    assert status == 1 and out["error"]["type"] == "MixedFields"


def test_unknown_verb_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "tensoraxiom", "shuffle", "--m", "2", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["matrix"][1] == ["0", "0", "1", "0"]
