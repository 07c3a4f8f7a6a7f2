import json

import pytest

from gradedaf.cli import main

OMEGA = json.dumps({"universe": ["a", "b"], "sets": [[], ["a"], ["b"]]})


@pytest.fixture
def chain_file(tmp_path):
    p = tmp_path / "chain.apx"
    p.write_text("arg(a). arg(b).\natt(a,b).\n")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_solve_enumerate(capsys, chain_file):
    assert run(capsys, "solve", chain_file, "--spec", "co") == (0, '[["a"]]', "")


def test_solve_json(capsys, chain_file):
    code, out, _ = run(capsys, "solve", chain_file, "--spec", "stb", "--out", "json")
    assert code == 0 and json.loads(out)["families"]["stb"] == [["a"]]


def test_solve_tasks(capsys, chain_file):
    assert run(capsys, "solve", "F_3CYC", "--spec", "stb", "--task", "SE")[:2] == (1, "NO")
    assert run(capsys, "solve", chain_file, "--spec", "co", "--task", "DC", "--arg", "b")[:2] == (1, "NO")
    assert run(capsys, "solve", chain_file, "--spec", "co", "--task", "DS", "--arg", "a")[:2] == (0, "YES")


def test_solve_ds_on_empty_family_warns(capsys):
    code, out, err = run(capsys, "solve", "F_3CYC", "--spec", "stb", "--task", "DS", "--arg", "a")
    assert out == "YES" and code == 0 and err


def test_solve_grades_and_tgf(capsys, tmp_path):
    p = tmp_path / "f.tgf"
    p.write_text("a\nb\nc\n#\na b\nb c\nc a\n")
    code, out, _ = run(capsys, "solve", str(p), "--spec", "gr-dunne", "--grades", "1", "2", "2", "1")
    assert code == 0 and json.loads(out) == [["a", "b", "c"]]


def test_solve_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("arg(a).\n"))
    assert run(capsys, "solve", "-", "--spec", "cf")[:2] == (0, '[[],["a"]]')


def test_solve_dot(capsys):
    code, out, _ = run(capsys, "solve", "F_CHAIN", "--spec", "gr", "--out", "dot")
    assert code == 0 and out.startswith("digraph") and '"a" -> "b"' in out


def test_errors(capsys, tmp_path):
    assert run(capsys, "solve", str(tmp_path / "nope.apx"), "--spec", "co")[0] == 2
    assert run(capsys, "solve", "F_CHAIN", "--spec", "bogus")[0] == 2
    bad = tmp_path / "bad.apx"
    bad.write_text("arg(a). att(a,z).")
    assert run(capsys, "solve", str(bad), "--spec", "co")[0] == 2
    assert run(capsys, "solve", "F_CHAIN", "--spec", "co", "--l", "0")[0] == 2


def test_cap_exit_code(capsys, tmp_path):
    big = tmp_path / "big.apx"
    big.write_text("".join(f"arg(x{i})." for i in range(12)))
    assert run(capsys, "solve", str(big), "--spec", "cf", "--cap", "10")[0] == 3


def test_analyze(capsys):
    assert run(capsys, "analyze", "F_3CYC", "--what", "anti", "--spec", "cf")[:2] == (0, '[["a","b"],["a","c"],["b","c"]]')
    code, out, _ = run(capsys, "analyze", "F_WF", "--what", "wf", "--set", "a,b")
    assert json.loads(out) == {"wf": True, "wf_plus": False}
    code, out, _ = run(capsys, "analyze", "F_CHAIN", "--what", "safe-op", "--l", "2")
    assert code == 0 and "att" not in out
    code, out, _ = run(capsys, "analyze", "F_3CYC", "--what", "order", "--spec", "cf")
    assert code == 0 and json.loads(out)["down_closed"] is True


def test_repr(capsys):
    assert run(capsys, "repr", OMEGA, "--l", "1")[:2] == (0, "YES\narg(a). arg(b). att(b,a).")
    assert run(capsys, "repr", OMEGA, "--rho")[:2] == (0, "{1, 2}")
    code, out, _ = run(capsys, "repr", OMEGA, "--l", "3")
    assert code == 1 and out.startswith("NO")


def test_fol(capsys):
    assert run(capsys, "fol", "F_CHAIN", "--formula", "(att x y)", "--assign", "x=a,y=b", "--set", "a")[:2] == (0, "SAT")
    assert run(capsys, "fol", "F_3CYC", "--sigma", "co", "--definability")[:2] == (0, "DEFINED")
    assert run(capsys, "fol", "F_CHAIN", "--formula", "(att x")[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "necessity-witness", "--seed", "7")
    assert code == 0 and json.loads(out)


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
