import json

import pytest

from chaoskit.cli import EXIT_ERROR, EXIT_HYPOTHESIS, EXIT_OK, main


class TestCheck:
    def test_positive_system(self, capsys):
        assert main(["check", "full_shift_2"]) == EXIT_OK
        assert "transitive: yes" in capsys.readouterr().out

    def test_failed_verdict(self):
        assert main(["check", "even_period_cycle"]) == EXIT_HYPOTHESIS

    def test_unknown_system(self, capsys):
        assert main(["check", "nosuch"]) == EXIT_ERROR
        assert "SystemSpecError" in capsys.readouterr().err

    def test_json_output(self, capsys):
        assert main(["check", "golden_mean", "--json", "--periodic-counts", "3"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["periodic_counts"] == {"1": 1, "2": 3, "3": 4}
        assert report["system"]["name"] == "golden_mean"

    def test_system_file(self, tmp_path):
        path = tmp_path / "loops.json"
        path.write_text(json.dumps({"kind": "matrix", "matrix": [[1, 0], [0, 1]]}), encoding="utf-8")
        assert main(["check", str(path)]) == EXIT_HYPOTHESIS


class TestTrace:
    def test_pseudo_orbit_file(self, tmp_path, capsys):
        path = tmp_path / "po.txt"
        path.write_text("delta=1/4\n0110(0)\n110(1)\n101(0)\n", encoding="utf-8")
        assert main(["trace", "full_shift_2", str(path)]) == EXIT_OK
        assert "traced: 01101(0)" in capsys.readouterr().out

    def test_missing_file(self, tmp_path):
        assert main(["trace", "full_shift_2", str(tmp_path / "missing.txt")]) == EXIT_ERROR


class TestClassifyTuple:
    def test_separated_pair(self, capsys):
        code = main(["classify-tuple", "full_shift_2", "--points", "(0)", "(1)", "--eps", "1/2", "--delta", "1/2", "--json"])
        assert code == EXIT_HYPOTHESIS
        certificate = json.loads(capsys.readouterr().out)
        names = [v["name"] for v in certificate["verdicts"]]
        assert names[:3] == ["regionally_proximal", "eps_asymptotic", "eps_distal"]

    def test_bad_threshold(self):
        assert main(["classify-tuple", "full_shift_2", "--points", "(0)", "(1)", "--eps", "0"]) == EXIT_ERROR


class TestBuilds:
    def test_asymptotic(self, capsys):
        assert main(["build-asymptotic", "full_shift_2", "--points", "(0)", "(1)"]) == EXIT_OK
        assert "111111(0)" in capsys.readouterr().out

    def test_default_points(self, capsys):
        assert main(["build-asymptotic", "full_shift_2", "--n", "2", "--eta", "2^-3"]) == EXIT_OK
        assert "111111(0)" in capsys.readouterr().out
        assert main(["build-distal", "full_shift_2", "--n", "3", "--eta", "2^-4"]) == EXIT_OK

    def test_distal_on_periodic_graph(self, capsys):
        assert main(["build-distal", "bipartite_3", "--points", "(01)", "(02)"]) == EXIT_OK
        assert "built for sigma^2" in capsys.readouterr().out
        assert main(["build-distal", "bipartite_3", "--n", "2"]) == EXIT_OK

    def test_points_outside_the_first_class(self, capsys):
        assert main(["build-distal", "bipartite_3", "--points", "(10)", "(01)"]) == EXIT_ERROR
        assert "PreconditionViolation" in capsys.readouterr().err

    def test_scrambled_on_periodic_graph(self):
        assert main(["build-scrambled", "bipartite_3", "--n", "2"]) == EXIT_OK

    def test_scrambled_replay_and_csv(self, tmp_path, capsys):
        path = tmp_path / "rows.csv"
        code = main(["build-scrambled", "full_shift_2", "--horizon", "65536", "--csv", str(path)])
        assert code == EXIT_OK
        assert "replayed 15 density rows up to 65536: 0 mismatches" in capsys.readouterr().out
        assert len(path.read_text(encoding="utf-8").splitlines()) == 16

    @pytest.mark.parametrize("argv", [[], ["build-distal"], ["check", "full_shift_2", "--nosuch"]])
    def test_usage_errors(self, argv):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == EXIT_ERROR

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["--version"])
        assert info.value.code == EXIT_OK
        assert "chaoskit" in capsys.readouterr().out
