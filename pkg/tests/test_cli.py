import json

import pytest

from qcluster.cli import main

A4 = "[[0,1,-1,0],[-1,0,1,0],[1,-1,0,-1],[0,0,1,0]]"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table_a2(capsys):
    code, out, _ = run(capsys, "table", "a2")
    assert code == 0
    assert out.splitlines()[0] == "table a2: PASS with 6/6 rows matched"


def test_table_a4_json(capsys):
    code, out, _ = run(capsys, "table", "a4", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["matched"] == 10 and data["status"] == "PASS"


def test_qfpoly_a4_last_row(capsys):
    code, out, _ = run(capsys, "qfpoly", "--matrix", A4, "--word", "2,3,4", "--j", "4", "--d", "2")
    assert code == 0
    assert out.startswith("F_4 = qZ^{(0,1,1,1)} + q^{2}Z^{(0,1,0,1)} + qZ^{(0,1,0,0)} + qZ^{(0,0,0,1)} + 1")


def test_qfpoly_methods_agree(capsys):
    outs = []
    for method in ("extract", "recurrence", "both"):
        code, out, _ = run(capsys, "qfpoly", "--matrix", A4, "--word", "2,3,4,1", "--method", method, "--format", "json")
        assert code == 0
        outs.append(json.loads(out)["qfpolys"])
    assert outs[0] == outs[1] == outs[2]


def test_mutate_twice_echoes_input(capsys, tmp_path):
    path = tmp_path / "b.json"
    b = [[0, 2, -1], [-1, 0, 1], [1, -2, 0], [1, 0, 3]]
    path.write_text(json.dumps({"btilde": b, "d": [1, 2, 1]}))
    for k in (1, 2, 3):
        code, out, _ = run(capsys, "mutate", "--matrix", str(path), "--word", f"{k},{k}", "--format", "json")
        assert code == 0 and json.loads(out)["btilde"] == b


def test_mutate_with_lambda(capsys):
    from qcluster import principal_pair

    pair = principal_pair([[0, 1], [-1, 0]], 2)
    lam = json.dumps([list(r) for r in pair.lam.matrix])
    bt = json.dumps([list(r) for r in pair.exchange.btilde])
    code, out, _ = run(capsys, "mutate", "--matrix", bt, "--lambda", lam, "--word", "1,1", "--format", "json")
    assert code == 0 and json.loads(out)["lambda"] == json.loads(lam)


def test_stdin_matrix(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("[[0,1],[-1,0]]"))
    code, out, _ = run(capsys, "gvec", "--matrix", "-", "--word", "2,1,2", "--format", "json")
    assert code == 0 and json.loads(out)["g"] == {"1": [-1, 0], "2": [-1, 1]}


def test_vectors_and_fpoly(capsys):
    code, out, _ = run(capsys, "dvec", "--matrix", A4, "--word", "2,3,4", "--j", "4")
    assert code == 0 and out.strip() == "d_4 = [0, 1, 1, 1]"
    code, out, _ = run(capsys, "fpoly", "--matrix", "[[0,1],[-1,0]]", "--word", "2,1", "--j", "1")
    assert code == 0 and out.strip() == "F_1 = u1*u2 + u1 + 1"


def test_chains(capsys):
    code, out, _ = run(capsys, "chains", "--matrix", A4, "--d", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["chains"]) == 10
    assert set(data["chains"][0]) == {"chain", "gvector", "qfpoly", "denominator"}


def test_verify_small_budget(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "5", "--route-trials", "5", "--seed", "3")
    assert code == 0 and out.count("PASS") == 5


@pytest.mark.parametrize(
    "argv, field",
    [
        (["gvec", "--matrix", "[[0,1],[-1,0]]", "--word", "3"], "--word"),
        (["gvec", "--matrix", "[[0,1],[-1,0]]", "--word", "x"], "--word"),
        (["gvec", "--matrix", "[[0,1],[1,0]]"], "--matrix"),
        (["gvec", "--matrix", "[[0,1],[-1]]"], "--matrix"),
        (["gvec", "--matrix", "/no/such/file.json"], "--matrix"),
        (["gvec", "--matrix", "{\"btilde\": [[0,1],[-1,0]"], "--matrix"),
        (["gvec"], "--matrix"),
        (["qfpoly", "--matrix", "[[0,1],[-1,0]]", "--j", "7"], "--j"),
        (["qfpoly", "--matrix", "[[0,1],[-1,0]]", "--d", "1,2"], "--d"),
        (["qfpoly", "--matrix", "[[0,1],[-1,0]]", "--lambda", "[[0,1],[1,0]]"], "--lambda"),
        (["chains", "--matrix", "[[0,-2],[2,0]]"], "--matrix"),
        (["table", "a9"], "table"),
    ],
)
def test_bad_input_names_the_field(capsys, argv, field):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert field in err


def test_unknown_command_is_bad_input(capsys):
    assert main(["frobnicate"]) == 2
