import pytest

from hyperpf.cli import invariance_trials, main, parse_matrix
from hyperpf.kernel import ParseError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def records(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line and " " not in line)


@pytest.fixture
def tensor_file(tmp_path):
    def write(body, name="t.hpft"):
        path = tmp_path / name
        path.write_text(body)
        return str(path)
    return write


@pytest.mark.parametrize("body,k,expected", [
    ("hpft 1\nn 2 m 2\n1 2 2/3\n2 1 -7/5\n", "1", "31/15"),
    ("hpft 1\nn 4 m 4\n1 2 3 4 1\n", "2", "1"),
    ("hpft 1\nn 4 m 2\n1 2 1\n3 4 1\n", "1", "2"),
    ("hpft 1\nn 4 m 2\n", "1", "0"),
])
def test_eval_files(capsys, tensor_file, body, k, expected):
    path = tensor_file(body)
    for cmd in ("eval", "expand"):
        code, out, _ = run(capsys, cmd, "--input", path, "--k", k)
        assert code == 0 and out.strip() == expected


def test_eval_infers_k(capsys, tensor_file):
    code, out, _ = run(capsys, "eval", "--input", tensor_file("hpft 1\nn 2 m 2\n1 2 1\n"))
    assert (code, out) == (0, "1\n")


@pytest.mark.parametrize("body", [
    "hpft 1\nn 2 m 2\n1 2\n",
    "hpft 1\nn 2 m 2\n1 3 1\n",
    "hpft 2\nn 2 m 2\n",
    "hpft 1\nn 3 m 3\n1 2 3 1\n",
])
def test_eval_rejects_bad_input(capsys, tensor_file, body):
    code, out, err = run(capsys, "eval", "--input", tensor_file(body))
    assert code == 2 and out == "" and "error" in err


def test_malformed_line_number_reported(capsys, tensor_file):
    _, _, err = run(capsys, "eval", "--input", tensor_file("hpft 1\nn 2 m 2\n1 2 1\n2 x 1\n"))
    assert "line 4" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "eval", "--input", str(tmp_path / "nope.hpft"))
    assert code == 2 and err


def test_matrix_commands(capsys):
    assert run(capsys, "permanent", "--matrix", "1,2;2,1")[:2] == (0, "5\n")
    assert run(capsys, "permanent", "--matrix", "1,2;2,1", "--method", "naive")[:2] == (0, "5\n")
    assert run(capsys, "determinant", "--matrix", "1,2;3,4")[:2] == (0, "-2\n")
    assert run(capsys, "determinant", "--matrix", "1,2;3,4", "--method", "leibniz")[:2] == (0, "-2\n")
    assert run(capsys, "pfaffian", "--matrix", "0,1/2;-1/2,0")[:2] == (0, "1/2\n")
    assert run(capsys, "pfaffian", "--matrix", "0,1;1,0")[0] == 2
    assert run(capsys, "permanent", "--matrix", "1,2;3")[0] == 2


def test_parse_matrix():
    assert parse_matrix("1 2\n3 4").rows == parse_matrix("1,2;3,4").rows
    with pytest.raises(ParseError):
        parse_matrix(" ; ")


def test_verify_projection(capsys):
    code, out, _ = run(capsys, "verify-projection", "--k", "2", "--d", "2", "--format", "records")
    assert code == 0
    rec = records(out)
    assert rec["equal"] == "true" and rec["target"] == "permanent" and rec["seed"] == "42"
    code, out, _ = run(capsys, "verify-projection", "--k", "1", "--d", "2")
    assert code == 0 and "det_2" in out and "==" in out
    code, out, err = run(capsys, "verify-projection", "--k", "2", "--d", "5")
    assert code == 2 and "refused" in err


def test_invariant_dim_table(capsys):
    code, out, _ = run(capsys, "invariant-dim", "--n", "2", "--m", "1:4", "--format", "records")
    assert code == 0
    lines = out.splitlines()
    assert lines[:2] == ["command=invariant-dim", "seed=42"]
    assert lines[2:] == [
        "n=2 m=1 b=- predicted=0 brute_force=0 match=true",
        "n=2 m=2 b=- predicted=1 brute_force=1 match=true",
        "n=2 m=3 b=- predicted=0 brute_force=0 match=true",
        "n=2 m=4 b=- predicted=2 brute_force=2 match=true",
    ]
    code, out, _ = run(capsys, "invariant-dim", "--n", "2", "--m", "4", "--b", "2")
    assert code == 0 and out.splitlines()[1].split() == ["2", "4", "2", "-", "2", "-"]
    assert run(capsys, "invariant-dim", "--n", "2", "--m", "3", "--b", "2")[0] == 2
    assert run(capsys, "invariant-dim", "--n", "2", "--m", "x")[0] == 2
    code, out, _ = run(capsys, "invariant-dim", "--n", "3", "--m", "12", "--budget", "100")
    assert code == 0 and out.splitlines()[1].split()[-2:] == ["-", "-"]


def test_verify_proposition(capsys):
    code, out, _ = run(capsys, "verify-proposition", "--k", "1", "--n", "4")
    assert code == 0 and "overall: pass" in out
    assert run(capsys, "verify-proposition", "--k", "2", "--n", "6")[0] == 2


def test_check_invariance(capsys):
    code, out, _ = run(capsys, "check-invariance", "--k", "1", "--n", "4", "--trials", "100",
                       "--seed", "42", "--format", "records")
    rec = records(out)
    assert code == 0 and rec["passed"] == "100" and rec["failed"] == "0"
    code, out, _ = run(capsys, "check-invariance", "--k", "1", "--n", "4", "--trials", "0")
    assert code == 0 and "0/0 pass" in out


def test_check_invariance_negative_control(capsys):
    code, out, _ = run(capsys, "check-invariance", "--k", "1", "--n", "4", "--trials", "20", "--perturb")
    assert code == 1
    result = invariance_trials(1, 4, 20, 42, perturb=True)
    assert result["failed"] > 0


def test_check_invariance_validates_parameters(capsys):
    assert run(capsys, "check-invariance", "--k", "2", "--n", "6")[0] == 2
    assert run(capsys, "check-invariance", "--k", "1", "--n", "4", "--trials", "-1")[0] == 2
    assert run(capsys, "check-invariance", "--k", "1", "--n", "4", "--seed", "-3")[0] == 2


@pytest.mark.parametrize("argv", [
    ["check-invariance", "--k", "1", "--n", "4", "--trials", "10", "--seed", "7"],
    ["bench", "--k", "1", "--n", "6", "--trials", "5", "--seed", "3"],
    ["invariant-dim", "--n", "3", "--m", "1:3"],
    ["verify-projection", "--k", "3", "--d", "2"],
])
def test_records_are_byte_identical(capsys, argv):
    first = run(capsys, *argv, "--format", "records")[1]
    second = run(capsys, *argv, "--format", "records")[1]
    assert first == second and "seed=" in first


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--k", "1", "--n", "6", "--trials", "3", "--format", "records",
                       "--timing")
    rec = records(out)
    assert code == 0 and float(rec["wall_seconds"]) >= 0 and int(rec["leaves"]) > 0
    code, out, _ = run(capsys, "bench", "--k", "1", "--n", "6", "--trials", "3")
    assert code == 0 and "search nodes" in out


CIRCUIT = "0 input x_{1,1}\n1 input x_{1,2}\n2 input x_{2,1}\n3 input x_{2,2}\n" \
          "4 mul 0 3\n5 mul 1 2\n6 add 4 5\noutput 6\n"


def test_circuit_actions(capsys, tensor_file):
    path = tensor_file(CIRCUIT, "per2.hpfc")
    code, out, _ = run(capsys, "circuit", "--input", path, "--format", "records")
    assert code == 0 and records(out)["size"] == "7"
    code, out, _ = run(capsys, "circuit", "--input", path, "--action", "eval",
                       "--assign", "x_{1,1}=1", "--assign", "x_{1,2}=2",
                       "--assign", "x_{2,1}=2", "--assign", "x_{2,2}=1")
    assert (code, out) == (0, "5\n")
    code, out, _ = run(capsys, "circuit", "--input", path, "--action", "poly")
    assert out.strip() == "x_{1,1}*x_{2,2} + x_{1,2}*x_{2,1}"
    code, out, _ = run(capsys, "circuit", "--input", path, "--action", "project", "--format", "records",
                       "--subst", "x_{1,1}=x", "--subst", "x_{1,2}=y + 1",
                       "--subst", "x_{2,1}=x + 1", "--subst", "x_{2,2}=z")
    rec = records(out)
    assert code == 0 and rec["terms"] == "5"
    assert "x*y + x*z + x + y + 1" in out
    assert run(capsys, "circuit", "--input", path, "--action", "eval", "--assign", "x_{1,1}=1")[0] == 2
    assert run(capsys, "circuit", "--input", path, "--action", "project", "--subst", "x_{1,1}=x*y")[0] == 2
    assert run(capsys, "circuit", "--input", tensor_file("0 input x\n", "bad.hpfc"))[0] == 2
