import json

import pytest

from zfl import corpus as corpus_mod
from zfl.cli import EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPoly:
    def test_path5(self, capsys):
        code, out, _ = run(capsys, "poly", "path:5")
        assert code == EXIT_OK
        assert out.splitlines() == ["k,z", "0,0", "1,2", "2,9", "3,10", "4,5", "5,1"]

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "poly", "cycle:4", "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out) == {"n": 4, "z": ["0", "0", "4", "4", "1"]}

    def test_cap_exit_2(self, capsys):
        code, _, err = run(capsys, "poly", "path:25")
        assert code == EXIT_USAGE and "cap" in err

    def test_cap_override(self, capsys):
        code, out, _ = run(capsys, "poly", "path:25", "--max-n", "25")
        assert code == EXIT_OK and out.splitlines()[1] == "0,0"


class TestThreshold:
    def test_nk1_exact(self, capsys):
        code, out, _ = run(capsys, "threshold", "family", "nk1:2", "--method", "exact")
        assert code == EXIT_OK
        val = float(out.splitlines()[1].split(",")[0])
        assert val == pytest.approx(2 ** -0.5, abs=1e-9)

    def test_mc_requires_seed(self, capsys):
        code, _, err = run(capsys, "threshold", "path:64", "--method", "mc")
        assert code == EXIT_USAGE and "--seed" in err

    def test_mc_reproducible(self, capsys):
        args = ("threshold", "path:64", "--method", "mc", "--seed", "5",
                "--budget", "20000", "--tol", "0.02")
        code1, out1, _ = run(capsys, *args)
        code2, out2, _ = run(capsys, *args)
        assert code1 == code2 == EXIT_OK and out1 == out2


class TestZfs:
    def test_consecutive_pair_on_cycle(self, capsys):
        code, out, _ = run(capsys, "zfs", "check", "--set", "1,2", "cycle:4")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["is_zfs"] is True
        assert payload["blue"] == [0, 1, 2, 3]
        assert payload["forces"] == [[1, 0], [0, 3]]

    def test_stuck_set(self, capsys):
        code, out, _ = run(capsys, "zfs", "check", "--set", "0,2", "cycle:4")
        payload = json.loads(out)
        assert code == EXIT_OK and payload["is_zfs"] is False


class TestSimpleCommands:
    def test_gen(self, capsys):
        code, out, _ = run(capsys, "gen", "complete:3")
        assert code == EXIT_OK and out.strip() == "Bw"

    def test_gen_inline_edges(self, capsys):
        code, out, _ = run(capsys, "gen", "edges:3:0-1,1-2")
        assert code == EXIT_OK and out.strip() == "Bg"

    def test_zfnum(self, capsys):
        code, out, _ = run(capsys, "zfnum", "hypercube:3")
        assert code == EXIT_OK and out.strip() == "4"

    def test_prob(self, capsys):
        code, out, _ = run(capsys, "prob", "cycle:4", "--p", "0.5")
        assert code == EXIT_OK and float(out) == pytest.approx(0.5625)

    def test_prob_rational(self, capsys):
        code, out, _ = run(capsys, "prob", "cycle:4", "--p", "1/2", "--rational")
        assert code == EXIT_OK and out.startswith("9/16")

    def test_core2(self, capsys):
        code, out, _ = run(capsys, "core2", "rgraph:5")
        payload = json.loads(out)
        assert code == EXIT_OK
        assert payload == {"core": "Bw", "vertices": [0, 1, 2]}

    def test_pendants(self, capsys):
        code, out, _ = run(capsys, "pendants", "rgraph:5")
        payload = json.loads(out)
        assert payload["pendant_paths"] == [[4, 3, 2]]
        assert payload["pendant_trees"] == [{"anchor": 2, "vertices": [2, 3, 4]}]

    def test_unknown_family_exit_2(self, capsys):
        code, _, err = run(capsys, "gen", "dodecahedron:1")
        assert code == EXIT_USAGE and "error" in err

    def test_mc_output_shape(self, capsys):
        code, out, _ = run(capsys, "mc", "cycle:4", "--p", "0.5",
                           "--samples", "2000", "--seed", "3")
        header, row = out.splitlines()
        assert code == EXIT_OK
        assert header == "p,estimate,ci_lo,ci_hi,samples,seed,alpha,method"
        assert row.endswith("hoeffding")

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "out.csv"
        code, out, _ = run(capsys, "poly", "path:4", "--out", str(target))
        assert code == EXIT_OK and out == ""
        assert target.read_text().splitlines()[0] == "k,z"


class TestVerifyCommand:
    def test_pass_run(self, capsys, tmp_path):
        report_file = tmp_path / "report.json"
        code, out, _ = run(capsys, "verify", "path-count", "--corpus", "trees:2-6",
                           "--report", str(report_file))
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["passed"] is True and "runtime_s" not in payload
        assert "runtime_s" in json.loads(report_file.read_text())

    def test_core_projection_needs_seed(self, capsys):
        code, _, err = run(capsys, "verify", "core-projection", "--pairs", "10")
        assert code == EXIT_USAGE and "--seed" in err

    def test_counterexample_exit_3(self, capsys, monkeypatch):
        # exit-code wiring: force a counterexample into the report
        def fake(items, desc, digest, max_n=24, threads=None):
            rep = corpus_mod.VerificationReport("path-count", desc, digest)
            rep.instances = 1
            rep.counterexamples.append({"graph6": "Bw", "k": 1})
            return rep
        monkeypatch.setattr(corpus_mod, "verify_path_count", fake)
        code, out, _ = run(capsys, "verify", "path-count", "--corpus", "trees:3")
        assert code == EXIT_COUNTEREXAMPLE
        assert json.loads(out)["passed"] is False

    def test_stdout_byte_identical(self, capsys):
        args = ("verify", "degree-bounds", "--corpus", "trees:5", "--grid", "0.2,0.8")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2


class TestExperimentCommand:
    def test_orders_csv(self, capsys):
        code, out, _ = run(capsys, "experiment", "orders", "--family", "cycle",
                           "--sizes", "64", "--budget", "20000", "--seed", "9")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0].startswith("family,n,p_hat")
        assert len(lines) == 2

    def test_figure2_exact_only(self, capsys):
        code, out, _ = run(capsys, "experiment", "figure2", "--sizes", "16",
                           "--grid", "0:1:5", "--seed", "1")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0].startswith("graph,n,p")
        assert len(lines) == 1 + 4 * 5

    def test_figure2_reproducible(self, capsys):
        args = ("experiment", "figure2", "--sizes", "256", "--grid", "0.5:0.6:2",
                "--samples", "300", "--seed", "2")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2
