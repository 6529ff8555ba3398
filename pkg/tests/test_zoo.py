import json
import math
from fractions import Fraction

import pytest

from chaoskit.errors import LiteralError, SystemSpecError, UnknownMap
from chaoskit.models.systems import MarkovMapSpec, OdometerProductSpec
from chaoskit.services.zoo import (
    caveat,
    catalog,
    compile_system,
    ingest_markov_map,
    lookup,
    parse_spec,
    reference_entropy,
)
from chaoskit.utils.config import load_settings
from chaoskit.utils.literals import load_pseudo_orbit, load_system, parse_pseudo_orbit, parse_threshold
from tests.strategies import ep


class TestCatalog:
    def test_names(self):
        assert list(catalog()) == [
            "full_shift_2", "full_shift_3", "golden_mean", "even_period_cycle", "bipartite_3",
            "two_loops", "odometer_product_3", "tent_slope2", "doubling_4",
        ]

    @pytest.mark.parametrize("name, size", [
        ("full_shift_2", 2),
        ("golden_mean", 2),
        ("bipartite_3", 3),
        ("odometer_product_3", 16),
        ("tent_slope2", 2),
        ("doubling_4", 4),
    ])
    def test_compiled_sizes(self, name, size):
        assert compile_system(catalog()[name]).alphabet_size == size

    def test_lookup(self):
        assert lookup("golden_mean").kind == "forbidden_words"
        with pytest.raises(SystemSpecError):
            lookup("nosuch")

    def test_caveats_and_reference_entropy(self):
        assert "period 8" in caveat(catalog()["odometer_product_3"])
        assert caveat(catalog()["full_shift_2"]) is None
        assert reference_entropy(catalog()["doubling_4"]) == pytest.approx(math.log(2))
        assert reference_entropy(catalog()["golden_mean"]) is None


class TestDefinitions:
    def test_parse_inline(self):
        spec = parse_spec({"kind": "matrix", "matrix": [[1, 1], [1, 0]], "name": "gm"})
        assert compile_system(spec).matrix == ((1, 1), (1, 0))

    @pytest.mark.parametrize("data", [
        {"kind": "full_shift", "symbols": 0},
        {"kind": "nope"},
        {"name": "no variant"},
        {"alphabet": 3, "matrix": [[1, 1], [1, 0]]},
        {"alphabet": 0, "forbidden": ["11"]},
        {"kind": "product_with_odometer", "depth": 11},
    ])
    def test_invalid_definitions(self, data):
        with pytest.raises(SystemSpecError):
            parse_spec(data)

    @pytest.mark.parametrize("matrix", [[[1, 1]], [[0, 1], [0, 0]], [[2, 0], [0, 1]]])
    def test_uncompilable_matrices(self, matrix):
        with pytest.raises(SystemSpecError):
            compile_system(parse_spec({"kind": "matrix", "matrix": matrix}))

    def test_odometer_definition(self):
        s = compile_system(OdometerProductSpec(depth=1))
        assert s.alphabet_size == 4
        assert s.labels == ("0:0", "0:1", "1:0", "1:1")


class TestMarkovMaps:
    def test_doubling_on_four_intervals(self):
        s = ingest_markov_map("doubling", 4)
        assert s.matrix == ((1, 1, 0, 0), (0, 0, 1, 1), (1, 1, 0, 0), (0, 0, 1, 1))

    def test_tent(self):
        assert ingest_markov_map("tent_slope2").matrix == ((1, 1), (1, 1))

    def test_unknown_map(self):
        with pytest.raises(UnknownMap):
            ingest_markov_map("logistic")
        with pytest.raises(UnknownMap):
            compile_system(MarkovMapSpec(map="logistic"))

    def test_grid_must_be_even(self):
        with pytest.raises(SystemSpecError):
            ingest_markov_map("doubling", 3)


class TestLiterals:
    @pytest.mark.parametrize("text, value", [("2^-3", Fraction(1, 8)), ("1/8", Fraction(1, 8)), ("0.125", Fraction(1, 8)), (1, 1)])
    def test_thresholds(self, text, value):
        assert parse_threshold(text) == value

    @pytest.mark.parametrize("text", ["0", "-1/2", "abc", "1/0"])
    def test_bad_thresholds(self, text):
        with pytest.raises(LiteralError):
            parse_threshold(text)

    def test_pseudo_orbit_file(self, full2, tmp_path):
        path = tmp_path / "po.txt"
        path.write_text("delta = 1/4\n# three entries\n0110(0)\n110(1)  # jump\n\n101(0)\n", encoding="utf-8")
        po = load_pseudo_orbit(path, full2)
        assert po.delta == Fraction(1, 4)
        assert po.entries == [ep("0110(0)"), ep("110(1)"), ep("101(0)")]

    @pytest.mark.parametrize("text", ["0(1)\n", "delta=1/4\n# nothing\n", "delta=1/4\n0(2\n"])
    def test_bad_pseudo_orbit_files(self, full2, text):
        with pytest.raises(LiteralError):
            parse_pseudo_orbit(text, full2)

    def test_load_system_file(self, tmp_path):
        path = tmp_path / "gm.json"
        path.write_text(json.dumps({"kind": "forbidden_words", "forbidden": ["11"]}), encoding="utf-8")
        name, spec, s = load_system(path)
        assert name == "gm"
        assert spec.kind == "forbidden_words"
        assert s.alphabet_size == 2

    @pytest.mark.parametrize("data, matrix", [
        ({"alphabet": 2, "forbidden": ["11"]}, ((1, 1), (1, 0))),
        ({"alphabet": 2, "matrix": [[1, 1], [1, 0]]}, ((1, 1), (1, 0))),
        ({"alphabet": 3, "forbidden": []}, ((1, 1, 1), (1, 1, 1), (1, 1, 1))),
    ])
    def test_definitions_without_kind(self, tmp_path, data, matrix):
        path = tmp_path / "system.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        name, spec, s = load_system(path)
        assert name == "system"
        assert spec.kind == ("matrix" if "matrix" in data else "forbidden_words")
        assert s.matrix == matrix

    def test_load_system_by_name(self):
        name, _, s = load_system("bipartite_3")
        assert name == "bipartite_3"
        assert s.alphabet_size == 3

    def test_load_system_errors(self, tmp_path):
        broken = tmp_path / "broken.json"
        broken.write_text("{", encoding="utf-8")
        with pytest.raises(SystemSpecError):
            load_system(broken)
        with pytest.raises(SystemSpecError):
            load_system("nosuch")


class TestSettings:
    def test_environment(self, monkeypatch):
        monkeypatch.setenv("CHAOSKIT_MAX_HORIZON", "2^20")
        monkeypatch.setenv("CHAOSKIT_WORKERS", "3")
        settings = load_settings()
        assert settings.max_horizon == 2 ** 20
        assert settings.workers == 3
        assert settings.default_checkpoints() == [2 ** k for k in (10, 12, 14, 16, 18, 20)]
