import json
import subprocess
import sys

import pytest

from boxtheta.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestBound:
    @pytest.mark.parametrize(
        "degree,genus,expected", [(176, 0, "true"), (177, 0, "false"), (192, 1, "true"), (193, 1, "false")]
    )
    def test_truth_table(self, capsys, degree, genus, expected):
        code, out, _ = run(capsys, "bound", "--degree", str(degree), "--genus", str(genus))
        assert code == EXIT_OK
        assert out.strip() == expected

    def test_negative_genus(self, capsys):
        code, out, err = run(capsys, "bound", "--degree", "5", "--genus", "-1")
        assert code == EXIT_USAGE and out == "" and "error" in err

    def test_zero_degree(self, capsys):
        assert run(capsys, "bound", "--degree", "0", "--genus", "1")[0] == EXIT_USAGE


class TestVerify:
    def test_relations_json(self, capsys):
        code, out, err = run(capsys, "verify", "--suite", "relations", "--samples", "100", "--seed", "42",
                             "--tol", "1e-10", "--json")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["pass"] is True
        assert report["suite"] == "relations" and report["samples"] == 100 and report["seed"] == 42
        assert report["tolerance"] == 1e-10 and report["max_residual"] < 1e-10
        assert isinstance(report["elapsed_ms"], int)
        assert err.startswith("PASS relations")

    def test_no_timing_is_reproducible(self, capsys):
        args = ("verify", "--suite", "inversion", "--samples", "30", "--json", "--no-timing")
        first = run(capsys, *args)[1]
        second = run(capsys, *args)[1]
        assert first == second
        assert "elapsed_ms" not in json.loads(first)

    def test_failure_exit_code(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "relations", "--samples", "10", "--tol", "1e-40", "--json")
        assert code == EXIT_FAIL
        assert json.loads(out)["pass"] is False

    def test_env_tolerance(self, capsys, monkeypatch):
        monkeypatch.setenv("BOX_TOL", "1e-40")
        code, out, _ = run(capsys, "verify", "--suite", "inversion", "--samples", "5", "--json")
        assert code == EXIT_FAIL and json.loads(out)["tolerance"] == 1e-40

    def test_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("BOX_TOL", "1e-40")
        code, _, _ = run(capsys, "verify", "--suite", "inversion", "--samples", "5", "--tol", "1e-10")
        assert code == EXIT_OK

    def test_count_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "gamma-prime", "--json", "--no-timing")
        report = json.loads(out)
        assert code == EXIT_OK and report["expected"] == report["actual"] == 4

    def test_text_output_goes_to_stderr(self, capsys):
        code, out, err = run(capsys, "verify", "--suite", "lemma23")
        assert code == EXIT_OK and out == "" and "lemma23" in err

    @pytest.mark.parametrize(
        "argv",
        [
            ["verify", "--suite", "nope"],
            ["verify", "--suite", "relations", "--samples", "0"],
            ["verify"],
            ["frobnicate"],
            [],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == EXIT_USAGE

    def test_help(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == EXIT_OK and "verify" in out


class TestNodes:
    def test_algebraic(self, capsys):
        code, out, _ = run(capsys, "nodes", "--json")
        data = json.loads(out)
        assert code == EXIT_OK and data["count"] == 48 and len(data["points"]) == 48

    def test_orbit_with_closure(self, capsys):
        code, out, err = run(capsys, "nodes", "--method", "orbit", "--closure", "--json")
        data = json.loads(out)
        assert code == EXIT_OK and data["count"] == 48 and data["matches_algebraic"]
        assert data["closure"]["order"] == 1536 and data["closure"]["reference_index"] == 768
        assert "1536" in err

    def test_same_points_both_ways(self, capsys):
        algebraic = json.loads(run(capsys, "nodes", "--json")[1])["points"]
        orbit = json.loads(run(capsys, "nodes", "--method", "orbit", "--json")[1])["points"]
        assert sorted(map(json.dumps, algebraic)) == sorted(map(json.dumps, orbit))

    def test_bad_method(self, capsys):
        assert run(capsys, "nodes", "--method", "sweep")[0] == EXIT_USAGE


class TestSearch:
    def test_summary_and_csv(self, capsys, tmp_path):
        path = tmp_path / "bricks.csv"
        code, out, err = run(capsys, "search", "--max-edge", "300", "--csv", str(path), "--no-timing")
        assert code == EXIT_OK
        assert json.loads(out) == {"max_edge": 300, "mode": "euler", "primitive_count": 2}
        lines = path.read_text().splitlines()
        assert lines[0] == "w1,w2,w3,d12,d13,d23,space_diag,mode"
        assert lines[1] == "44,117,240,125,244,267,,euler"
        assert "44" in err

    def test_workers_give_identical_csv(self, capsys, tmp_path):
        texts = []
        for k in (1, 4, 8):
            path = tmp_path / f"w{k}.csv"
            assert run(capsys, "search", "--max-edge", "600", "--workers", str(k), "--csv", str(path))[0] == EXIT_OK
            texts.append(path.read_bytes())
        assert texts[0] == texts[1] == texts[2]

    def test_perfect_mode(self, capsys):
        code, out, _ = run(capsys, "search", "--max-edge", "200", "--mode", "perfect")
        assert code == EXIT_OK and json.loads(out)["primitive_count"] == 0

    def test_unwritable_csv(self, capsys, tmp_path):
        code, _, err = run(capsys, "search", "--max-edge", "20", "--csv", str(tmp_path / "no" / "x.csv"))
        assert code == EXIT_FAIL and "cannot write" in err

    def test_bad_edge(self, capsys):
        assert run(capsys, "search", "--max-edge", "-3")[0] == EXIT_USAGE


class TestThetaEval:
    def test_value_at_i(self, capsys):
        code, out, _ = run(capsys, "theta-eval", "--char", "00", "--z", "0,1")
        data = json.loads(out)
        assert code == EXIT_OK
        assert abs(data["value"][0] - 1.086434811213308) < 1e-15 and data["value"][1] == 0
        assert data["error_bound"] < 1e-15

    def test_double_argument(self, capsys):
        code, out, _ = run(capsys, "theta-eval", "--char", "10", "--z", "0,0.5", "--double-arg")
        assert code == EXIT_OK
        assert abs(json.loads(out)["value"][0] - 0.9135791381561168) < 1e-15

    def test_negative_real_part(self, capsys):
        code, out, _ = run(capsys, "theta-eval", "--char", "01", "--z=-1.2,0.6")
        assert code == EXIT_OK
        assert abs(complex(*json.loads(out)["value"]) - (1.244815585554909 - 0.1791184462725391j)) < 1e-14

    def test_double_arg_rejected_for_01(self, capsys):
        assert run(capsys, "theta-eval", "--char", "01", "--z", "0,1", "--double-arg")[0] == EXIT_USAGE

    def test_lower_half_plane(self, capsys):
        code, _, err = run(capsys, "theta-eval", "--char", "00", "--z", "0,-1")
        assert code == EXIT_USAGE and "error" in err

    @pytest.mark.parametrize("bad", [["--char", "11", "--z", "0,1"], ["--char", "00", "--z", "1j"]])
    def test_bad_arguments(self, capsys, bad):
        assert run(capsys, "theta-eval", *bad)[0] == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "boxtheta", "bound", "--degree", "176", "--genus", "0"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "true"


def test_entry_point_usage_exit_code():
    proc = subprocess.run([sys.executable, "-m", "boxtheta", "verify"], capture_output=True, text=True, check=False)
    assert proc.returncode == 2
