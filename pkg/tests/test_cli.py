import json

import pytest

from fracfam.cli import main
from fracfam.fileio import read_family


@pytest.fixture
def famfile(tmp_path):
    def write(text, name="f.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def test_construct_then_verify(tmp_path, capsys):
    out = tmp_path / "c.txt"
    assert main(["construct", "--type", "all-s-subsets", "--n", "5", "--s", "2", "--out", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "L=0/1,1/2"
    assert read_family(out).m == 10
    assert main(["verify", "--family", str(out), "--r", "3", "--l", "0/1,1/2"]) == 0


def test_construct_stdout_is_family(capsys):
    assert main(["construct", "--type", "all-s-subsets", "--n", "3", "--s", "2"]) == 0
    captured = capsys.readouterr()
    assert captured.out == "n=3\n1,2\n1,3\n2,3\n"
    assert "L=0/1,1/2" in captured.err


def test_construct_sunflower(capsys):
    assert main(["construct", "--type", "sunflower", "--n", "4", "--core", "1", "--petals", "3",
                 "--petal-size", "1"]) == 0
    assert capsys.readouterr().out == "n=4\n1,2\n1,3\n1,4\n"


def test_verify_invalid(famfile, capsys):
    path = famfile("n=4\n1,2\n3,4\n1,3\n")
    assert main(["verify", "--family", path, "--r", "3", "--l", "1/2"]) == 1
    assert "[0, 1, 2]" in capsys.readouterr().out


def test_verify_json(famfile, capsys):
    path = famfile("n=4\n1,2\n3,4\n1,3\n")
    assert main(["verify", "--family", path, "--r", "3", "--l", "1/2", "--json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["valid"] is False
    assert data["witness"]["indices"] == [0, 1, 2]
    assert data["witness"]["sets"] == [[1, 2], [3, 4], [1, 3]]


def test_verify_duplicate_line(famfile, capsys):
    path = famfile("n=4\n1,2\n3\n1,2\n")
    assert main(["verify", "--family", path, "--r", "3", "--l", "1/2"]) == 2
    assert "line 4" in capsys.readouterr().err


def test_fraction_error_verbatim(famfile, capsys):
    path = famfile("n=2\n1\n")
    assert main(["verify", "--family", path, "--r", "3", "--l", "2/4"]) == 2
    assert "not irreducible" in capsys.readouterr().err


def test_unknown_flag():
    assert main(["verify", "--bogus"]) == 2


def test_bound_text(capsys):
    assert main(["bound", "--n", "100", "--r", "3", "--s", "1"]) == 0
    assert "exact_improved: 4800" in capsys.readouterr().out


def test_bound_json(capsys):
    assert main(["bound", "--n", "100", "--r", "3", "--s", "1", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["exact_improved"] == 4800
    assert data["t"] == 4 and data["p_t"] == 7
    assert data["t_estimate"] is not None


def test_bound_rejects_r2(capsys):
    assert main(["bound", "--n", "10", "--r", "2", "--s", "1"]) == 2


def test_certify(famfile, tmp_path):
    path = famfile("n=4\n1,2\n3,4\n")
    out = tmp_path / "cert.json"
    assert main(["certify", "--family", path, "--r", "3", "--l", "1/2", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    cell = next(c for c in data["cells"] if c["p"] == 3 and c["j"] == 2)
    assert cell["groups"][0]["members"] == [0, 1]
    assert cell["groups"][0]["y"] == []


def test_certify_invalid(famfile):
    path = famfile("n=4\n1,2\n3,4\n1,3\n")
    assert main(["certify", "--family", path, "--r", "3", "--l", "1/2"]) == 1


def test_certify_dim_cap(famfile, capsys):
    path = famfile("n=8\n1,2\n")
    assert main(["certify", "--family", path, "--r", "3", "--l", "1/2", "--dim-cap", "2"]) == 2
    assert "dimension 9" in capsys.readouterr().err


def test_search(tmp_path, capsys):
    wit = tmp_path / "w.txt"
    assert main(["search", "--n", "3", "--r", "3", "--l", "1/2", "--deterministic",
                 "--witness-out", str(wit)]) == 0
    assert "max_size=4" in capsys.readouterr().out
    assert read_family(wit).m == 4


def test_search_naive_json(capsys):
    assert main(["search", "--n", "3", "--r", "3", "--l", "1/2", "--naive", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["max_size"] == 4
    assert data["status"] == "proven-optimal"


def test_search_csv(capsys):
    assert main(["search", "--n", "5", "--n-min", "3", "--r", "3", "--l", "1/2", "--csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,max_size,status,exact_bound,ratio"
    assert [int(x.split(",")[0]) for x in lines[1:]] == [3, 4, 5]


def test_search_seed_echo(capsys):
    assert main(["search", "--n", "3", "--r", "3", "--l", "1/2", "--seed", "17", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 17
