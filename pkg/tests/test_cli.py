import json
from math import gcd

import pytest

from cyclotile import ZmSet, save_set
from cyclotile.cli import run

MULT30 = ZmSet.of(range(0, 900, 30), 900)


@pytest.fixture
def files(tmp_path, canon_a, canon_b):
    paths = {}
    wrong = ZmSet.of(list(canon_b.elements[:-1]) + [canon_b.elements[-1] + 1], 900)
    for name, E in (("a", canon_a), ("b", canon_b), ("sub", MULT30), ("wrong", wrong),
                    ("z4a", ZmSet(4, (0, 1))), ("z4b", ZmSet(4, (0, 2)))):
        paths[name] = str(tmp_path / f"{name}.json")
        save_set(E, paths[name])
    return paths


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestVerify:
    def test_ok(self, capsys, files):
        code, out, _ = call(capsys, "verify", "--primes", "2,3,5", "--a", files["a"],
                            "--b", files["b"], "--method", "both")
        rep = json.loads(out)
        assert code == 0 and rep["brute"] and rep["sands"] and rep["agree"]

    def test_refuted(self, capsys, files):
        code, out, _ = call(capsys, "verify", "--a", files["a"], "--b", files["wrong"])
        assert code == 1 and not json.loads(out)["factorization"]

    def test_nonprime(self, capsys, files):
        code, out, err = call(capsys, "verify", "--primes", "2,3,4", "--a", files["a"],
                              "--b", files["b"])
        assert code == 2 and "NonPrime" in err and out == ""

    def test_any_modulus(self, capsys, files):
        code, out, _ = call(capsys, "verify", "--a", files["z4a"], "--b", files["z4b"],
                            "--method", "brute")
        assert code == 0 and "sands" not in json.loads(out)

    def test_modulus_errors(self, capsys, files):
        assert call(capsys, "verify", "--primes", "2,3,7", "--a", files["a"],
                    "--b", files["b"])[0] == 2
        assert call(capsys, "verify", "--a", files["a"], "--b", files["z4b"])[0] == 2

    def test_missing_file(self, capsys, files):
        code, _, err = call(capsys, "verify", "--a", files["a"], "--b", "/nonexistent.json")
        assert code == 2 and "no such file" in err

    def test_text_format(self, capsys, files):
        code, out, _ = call(capsys, "verify", "--a", files["a"], "--b", files["b"],
                            "--format", "text")
        assert code == 0 and "factorization: True" in out


class TestUsage:
    @pytest.mark.parametrize("argv", [[], ["bogus"], ["verify", "--a", "x"],
                                      ["verify", "--a", "x", "--b", "y", "--frob"],
                                      ["szabo"], ["props", "average"],
                                      ["divset", "--a", "x", "--primes", "2,3"],
                                      ["divset", "--a", "x", "--primes", "a,b,c"]])
    def test_exit_2(self, capsys, argv):
        assert call(capsys, *argv)[0] == 2

    def test_help(self, capsys):
        assert call(capsys, "--help")[0] == 0


def test_divset(capsys, files, canon_a):
    code, out, _ = call(capsys, "divset", "--a", files["a"])
    assert code == 0 and json.loads(out)["divisors"] == [1, 4, 9, 25, 36, 100, 225, 900]
    code, out, _ = call(capsys, "divset", "--a", files["a"], "--b", files["sub"])
    expected = sorted({gcd(a - b, 900) for a in canon_a for b in MULT30})
    assert code == 0 and json.loads(out)["divisors"] == expected


def test_cyclotomic(capsys, files):
    code, out, _ = call(capsys, "cyclotomic", "--s", "6")
    assert code == 0 and json.loads(out)["coefficients"] == [1, -1, 1]
    code, out, _ = call(capsys, "cyclotomic", "--s", "5", "--divides", files["a"],
                        "--format", "text")
    assert code == 0 and out.strip() == "true"
    code, out, _ = call(capsys, "cyclotomic", "--s", "4", "--divides", files["a"])
    assert code == 1 and json.loads(out) is False
    assert call(capsys, "cyclotomic", "--s", "0")[0] == 2


class TestSzabo:
    def test_check(self, capsys, files):
        code, out, _ = call(capsys, "szabo", "check", "--primes", "2,3,5", "--a", files["a"],
                            "--b", files["b"])
        w = json.loads(out)
        assert code == 0 and w["offset"] == 0 and w["parts"]["B_qr"] == [255, 705]

    def test_not_szabo(self, capsys, files):
        code, out, _ = call(capsys, "szabo", "check", "--primes", "2,3,5", "--a", files["a"],
                            "--b", files["sub"])
        assert code == 1 and out.strip() == "NOT-SZABO"

    def test_needs_primes(self, capsys, files):
        code, _, err = call(capsys, "szabo", "check", "--a", files["a"], "--b", files["b"])
        assert code == 2 and "--primes" in err

    def test_build(self, capsys, tmp_path, files, canon_a, canon_b):
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({
            "U": [0, 1], "V": [0, 1, 2], "W": [0, 1, 2, 3, 4],
            "H_p": [1, 16], "H_q": [2, 12, 22], "H_r": [3, 9, 15, 21, 27],
            "assign_p": 1, "assign_q": {"2": 1}}))
        out_a, out_b = tmp_path / "A.json", tmp_path / "B.json"
        code, _, _ = call(capsys, "szabo", "build", "--primes", "2,3,5", "--spec", str(spec),
                          "--out-a", str(out_a), "--out-b", str(out_b))
        assert code == 0
        assert json.loads(out_a.read_text())["elements"] == list(canon_a.elements)
        assert json.loads(out_b.read_text())["elements"] == list(canon_b.elements)

    def test_build_errors(self, capsys, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({"U": [0, 1], "V": [0, 1, 2], "W": [0, 1, 2, 3, 4],
                                    "H_p": [1], "H_q": [2, 12, 22], "H_r": [3, 9, 15, 21, 27]}))
        code, _, err = call(capsys, "szabo", "build", "--primes", "2,3,5", "--spec", str(spec))
        assert code == 2 and "NotInvariant" in err
        spec.write_text(json.dumps({"U": [0, 1]}))
        assert call(capsys, "szabo", "build", "--primes", "2,3,5", "--spec", str(spec))[0] == 2

    def test_random(self, capsys):
        code, out, _ = call(capsys, "szabo", "random", "--primes", "2,3,7", "--seed", "3")
        rep = json.loads(out)
        assert code == 0 and rep["A"]["modulus"] == 1764 and len(rep["B"]["elements"]) == 42


class TestSearch:
    def test_complement_lines(self, capsys, files):
        code, out, _ = call(capsys, "search", "complement", "--a", files["a"], "--limit", "3")
        lines = out.strip().splitlines()
        assert code == 0 and len(lines) == 3
        assert all(len(json.loads(ln)["elements"]) == 30 for ln in lines)

    def test_complement_z4(self, capsys, files):
        code, out, _ = call(capsys, "search", "complement", "--a", files["z4a"], "--stable")
        assert code == 0 and [json.loads(ln) for ln in out.splitlines()] == [
            {"modulus": 4, "elements": [0, 2]}]

    def test_theorem(self, capsys, files):
        code, out, _ = call(capsys, "search", "theorem", "--primes", "2,3,5", "--a", files["a"],
                            "--limit", "10", "--require-nonsubgroup")
        rep = json.loads(out)
        assert code == 0 and rep["violations"] == [] and rep["szabo_confirmed"] == 10

    def test_theorem_bad_tile(self, capsys, files):
        code, _, err = call(capsys, "search", "theorem", "--primes", "2,3,5",
                            "--a", files["sub"])
        assert code == 2 and "PreconditionViolated" in err


class TestProps:
    def test_structural_predicates(self, capsys, files):
        code, out, _ = call(capsys, "props", "check210", "--primes", "2,3,5",
                            "--a", files["a"], "--b", files["b"])
        assert code == 0 and json.loads(out) == {"i": True, "ii": True, "iii": True, "ok": True}
        code, _, err = call(capsys, "props", "check210", "--primes", "2,3,5",
                            "--a", files["a"], "--b", files["sub"])
        assert code == 2 and "PreconditionViolated" in err

    def test_average(self, capsys, files):
        code, out, _ = call(capsys, "props", "average", "--primes", "2,3,5",
                            "--a", files["a"], "--b", files["b"])
        assert code == 0 and [r["ell"] for r in json.loads(out)] == [2, 3, 5]

    def test_divstructure(self, capsys, files):
        assert call(capsys, "props", "divstructure", "--primes", "2,3,5", "--a", files["a"])[0] == 0
        assert call(capsys, "props", "divstructure", "--primes", "2,3,5",
                    "--a", files["sub"])[0] == 1

    def test_class_forcing(self, capsys, tmp_path):
        path = tmp_path / "e.json"
        save_set(ZmSet.of([0, 60, 120, 180, 240, 300], 900), path)
        code, out, _ = call(capsys, "props", "lemma24", "--primes", "2,3,5", "--set", str(path))
        rep = json.loads(out)
        assert code == 0 and rep["hypothesis"] and rep["conclusion"]

    def test_dilate(self, capsys, files):
        code, out, _ = call(capsys, "props", "dilate", "--a", files["a"], "--b", files["b"])
        rep = json.loads(out)
        assert code == 0 and rep["ok"] and "7" in rep["checked"] and "2" not in rep["checked"]
        code, _, err = call(capsys, "props", "dilate", "--a", files["a"], "--b", files["b"],
                            "--k", "2")
        assert code == 2 and "PreconditionViolated" in err


def test_duplicate_warning_goes_to_stderr(capsys, tmp_path):
    path = tmp_path / "d.txt"
    path.write_text("900\n0 30 30\n")
    code, out, err = call(capsys, "divset", "--a", str(path))
    assert code == 0 and "duplicate" in err and json.loads(out)["divisors"] == [30, 900]
