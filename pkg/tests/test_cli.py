import json
import subprocess
import sys

import numpy as np
import pytest

from wstar import diagonal, make_element
from wstar.cli import RunConfig, UsageError, main
from wstar.io import central_from_json, element_from_json, element_to_json


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def diag_file(tmp_path, *diags, name="a.json"):
    return write(tmp_path, name, element_to_json(diagonal(*diags)))


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestIO:
    def test_roundtrip(self, rng):
        x = make_element([2, 1], [rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)),
                                  [[3.0]]])
        y = element_from_json(json.loads(json.dumps(element_to_json(x))))
        assert all(np.array_equal(a, b) for a, b in zip(x.blocks, y.blocks))

    def test_plain_reals_accepted(self):
        x = element_from_json({"shape": [2], "blocks": [[[1, 0], [0, 2]]]})
        assert x.hermitian_hint

    def test_central(self):
        c = central_from_json({"shape": [1, 1], "scalars": [[1, 0], 2]})
        assert c.scalars.tolist() == [1 + 0j, 2 + 0j]


class TestRunConfig:
    @pytest.mark.parametrize("kw", [{"tol": 0}, {"epsilon": 1.0}, {"samples": 0},
                                    {"format": "xml"}, {"command": "nope"}])
    def test_invariants(self, kw):
        args = dict(command="analyze") | kw
        with pytest.raises(UsageError):
            RunConfig(**args)


class TestAnalyze:
    def test_example_one(self, tmp_path, capsys):
        code, out, _ = run(["analyze", "--input", diag_file(tmp_path, [1, 2, 3])], capsys)
        rep = json.loads(out)
        assert code == 0 and rep["passed"]
        assert rep["results"]["c0"] == [2.0]
        assert rep["residuals"]["equality"] <= 1e-9
        assert set(rep) == {"command", "config", "results", "residuals", "passed", "version"}

    def test_not_hermitian(self, tmp_path, capsys):
        f = write(tmp_path, "nh.json", {"shape": [2], "blocks": [[[0, 1], [0, 0]]]})
        code, _, err = run(["analyze", "--input", f], capsys)
        assert code == 2 and "NotHermitian" in err

    def test_central(self, tmp_path, capsys):
        code, out, _ = run(["analyze", "--input", diag_file(tmp_path, [4, 4], [-1])], capsys)
        rep = json.loads(out)
        assert code == 0 and rep["results"]["c0"] == [4.0, -1.0]
        lhs = rep["results"]["lhs"]["blocks"]
        assert all(v == [0.0, 0.0] for b in lhs for row in b for v in row)

    def test_override_inside_interval(self, tmp_path, capsys):
        code, out, _ = run(["analyze", "--input", diag_file(tmp_path, [0, 10]),
                            "--c0-override", "3"], capsys)
        assert code == 0 and json.loads(out)["results"]["c_used"] == [3.0]

    def test_override_outside_interval(self, tmp_path, capsys):
        code, _, err = run(["analyze", "--input", diag_file(tmp_path, [1, 2, 3]),
                            "--c0-override", "2.5"], capsys)
        assert code == 2 and "CNotInMedianInterval" in err

    @pytest.mark.parametrize("content", ["{not json", '{"shape": [2]}',
                                         '{"shape": [2], "blocks": [[[1, 2, 3]]]}',
                                         '{"shape": [1], "blocks": [[["a"]]]}'])
    def test_malformed(self, tmp_path, capsys, content):
        p = tmp_path / "bad.json"
        p.write_text(content)
        code, _, _ = run(["analyze", "--input", str(p)], capsys)
        assert code == 2

    def test_missing_file(self, tmp_path, capsys):
        assert run(["analyze", "--input", str(tmp_path / "none.json")], capsys)[0] == 2

    def test_text_and_output(self, tmp_path, capsys):
        out_path = tmp_path / "r.txt"
        code, out, _ = run(["analyze", "--input", diag_file(tmp_path, [1, 2, 3]), "--format",
                            "text", "--output", str(out_path)], capsys)
        assert code == 0 and out == ""
        assert out_path.read_text().strip().endswith("PASSED")

    def test_env_tol(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("WSTAR_TOL", "1e-6")
        _, out, _ = run(["analyze", "--input", diag_file(tmp_path, [1, 2])], capsys)
        assert json.loads(out)["config"]["tol"] == 1e-6
        monkeypatch.setenv("WSTAR_TOL", "abc")
        assert run(["analyze", "--input", diag_file(tmp_path, [1, 2])], capsys)[0] == 2

    def test_deterministic(self, tmp_path, capsys):
        rng = np.random.default_rng(5)
        z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        f = write(tmp_path, "h.json", element_to_json(make_element([4], [z + z.conj().T])))
        o1, o2 = tmp_path / "1.json", tmp_path / "2.json"
        assert main(["analyze", "--input", f, "--output", str(o1)]) == 0
        assert main(["analyze", "--input", f, "--output", str(o2)]) == 0
        assert o1.read_bytes() == o2.read_bytes()


class TestPairing:
    def test_example(self, capsys):
        code, out, _ = run(["pairing", "--lambdas", "0.5,0.25,0.125,0.0625", "--epsilon", "0.6"],
                           capsys)
        rep = json.loads(out)
        assert code == 0 and rep["results"]["pairs"] == [[1, 2], [3, 4]]

    def test_infeasible(self, capsys):
        code, out, _ = run(["pairing", "--lambdas", "1,1", "--epsilon", "0.5"], capsys)
        assert code == 1 and json.loads(out)["results"]["infeasible"]

    def test_single(self, capsys):
        code, out, _ = run(["pairing", "--lambdas", "1", "--epsilon", "0.5"], capsys)
        assert code == 1 and json.loads(out)["results"]["unpaired"] == [1]

    @pytest.mark.parametrize("lam", ["1,x", "1,-2", "0.1,1"])
    def test_bad_input(self, capsys, lam):
        assert run(["pairing", "--lambdas", lam, "--epsilon", "0.5"], capsys)[0] == 2

    def test_zero_epsilon(self, capsys):
        assert run(["pairing", "--lambdas", "1,0.1", "--epsilon", "0"], capsys)[0] == 2


class TestIdeals:
    def test_example(self, capsys):
        code, out, _ = run(["ideals", "--shape", "2,2,1", "--ideal-i", "1", "--ideal-j", "1,2"],
                           capsys)
        rep = json.loads(out)
        assert code == 0 and rep["results"]["hoffman"][0]["passed"]

    def test_exhaustive(self, capsys):
        code, out, _ = run(["ideals", "--shape", "2,3", "--exhaustive"], capsys)
        rep = json.loads(out)
        assert code == 0 and rep["results"]["hoffman_pairs"] == 16

    def test_bad_index(self, capsys):
        assert run(["ideals", "--shape", "2,3", "--ideal-i", "9", "--ideal-j", "1"], capsys)[0] == 2

    def test_bad_shape(self, capsys):
        assert run(["ideals", "--shape", "2,0", "--ideal-i", "1", "--ideal-j", "1"], capsys)[0] == 2

    def test_empty_ideal(self, capsys):
        assert run(["ideals", "--shape", "2,3", "--ideal-i", "", "--ideal-j", "1,2"], capsys)[0] == 0


class TestOracle:
    def test_example_one(self, tmp_path, capsys):
        code, out, _ = run(["oracle", "--input", diag_file(tmp_path, [1, 2, 3]),
                            "--samples", "200"], capsys)
        rep = json.loads(out)
        assert code == 0 and rep["results"]["achieved"]

    def test_even_with_c(self, tmp_path, capsys):
        code, out, _ = run(["oracle", "--input", diag_file(tmp_path, [0, 10]), "--c", "3",
                            "--samples", "200"], capsys)
        assert code == 0 and json.loads(out)["results"]["achieved"]

    def test_outside_fails(self, tmp_path, capsys):
        code, _, _ = run(["oracle", "--input", diag_file(tmp_path, [0, 10, 20]), "--c", "15",
                          "--samples", "20"], capsys)
        assert code == 1

    def test_too_large(self, tmp_path, capsys):
        code, _, err = run(["oracle", "--input", diag_file(tmp_path, list(range(9)))], capsys)
        assert code == 2 and "BlockTooLarge" in err


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "wstar", "frobnicate"], capture_output=True)
    assert proc.returncode == 2


def test_module_entry_point(tmp_path):
    f = diag_file(tmp_path, [1, 2, 3])
    proc = subprocess.run([sys.executable, "-m", "wstar", "analyze", "--input", f],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["passed"]
