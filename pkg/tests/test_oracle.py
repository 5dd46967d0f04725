# test_oracle.py - 有限モデルのオラクルのテスト
import json

import pytest

import oracle
from cof import Cof
from errors import BoundExceeded, CheckerError

FAST_SUITES = [
    "box", "cof-completeness", "sieve", "delta-nabla", "discrete", "wprime",
    "coproduct-null", "discrete-null", "delta-preservation", "hit-beta", "transport",
]


def failures(records):
    return [f"{r.name}: {r.witness}" for r in records if not r.passed]


class TestSuites:
    @pytest.mark.parametrize("name", FAST_SUITES)
    def test_small_dimension(self, name):
        records = oracle.run_suite(name, dim=1, depth=2)
        assert records
        assert failures(records) == []

    def test_transport_covers_every_former(self):
        names = {r.name for r in oracle.run_suite("transport", dim=1)}
        formers = [
            "nat", "pi", "sigma", "path", "sum-inl", "sum-inr", "unit",
            "univ", "lift", "glue", "id", "trunc", "susp",
        ]
        assert {f"transport/{f}" for f in formers} <= names

    def test_hit_beta_covers_lfr_and_jb(self):
        names = {r.name for r in oracle.run_suite("hit-beta", dim=1)}
        rules = ["lfr-elim-inc", "lfr-hcomp-top", "lfr-elim-hcomp", "jb-isext-1", "jb-isext-0", "jb-alpha-no-paths"]
        assert {f"hit-beta/{r}" for r in rules} <= names

    def test_coproduct_null_bases(self):
        names = [r.name for r in oracle.run_suite("coproduct-null", dim=1)]
        assert any(n.startswith("coproduct-null/∇2/") for n in names)
        assert not any("/I/" in n for n in names)

    def test_failed_premise_is_a_construction_error(self, monkeypatch):
        monkeypatch.setattr(oracle, "_premise", lambda b, left, right: f"{b.name} が命題でない")
        (record,) = oracle.run_suite("coproduct-null", dim=1)
        assert record.name == "coproduct-null/error"
        assert "前提" in record.witness

    @pytest.mark.slow
    def test_interval(self):
        assert failures(oracle.run_suite("interval", dim=2, depth=2)) == []

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["box", "cof-completeness", "sieve", "discrete"])
    def test_dimension_two(self, name):
        assert failures(oracle.run_suite(name, dim=2, depth=3)) == []

    @pytest.mark.slow
    def test_kleene_against_stdlib(self, stdlib_root):
        records = oracle.run_suite("kleene", stdlib_root=stdlib_root, fuel=6)
        assert [r.name for r in records] == ["kleene/T", "kleene/U"]
        assert failures(records) == []

    def test_kleene_without_stdlib(self):
        records = oracle.run_suite("kleene")
        assert len(records) == 1 and not records[0].passed

    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            oracle.run_suite("nope")

    @pytest.mark.parametrize("dim", [-1, 4])
    def test_dimension_bound(self, dim):
        with pytest.raises(BoundExceeded):
            oracle.run_suite("box", dim=dim)

    def test_checker_error_becomes_record(self, monkeypatch):
        def broken(dim, depth, **_):
            raise CheckerError("壊れた")
        monkeypatch.setitem(oracle.SUITES, "box", broken)
        (record,) = oracle.run_suite("box", dim=1)
        assert record.name == "box/error"
        assert not record.passed
        assert "壊れた" in record.witness


class TestHelpers:
    def test_enumerate_cofs(self):
        cofs = oracle.enumerate_cofs(1)
        assert Cof.bot() in cofs and Cof.top() in cofs
        assert Cof.eq(0, 0).disj(Cof.eq(0, 1)) in cofs

    def test_cof_formula_round_trip(self):
        from cof import cof_normalize
        for c in oracle.enumerate_cofs(2):
            assert cof_normalize(oracle.cof_formula(c), 2) == c


class TestFormatting:
    def test_table(self):
        records = [oracle.Record("a/b", 3, True), oracle.Record("c", 1, False, "反例")]
        text = oracle.format_table(records)
        assert "FAIL" in text and "反例" in text
        assert text.splitlines()[-1].startswith("1/2")

    def test_json_lines(self):
        records = [oracle.Record("a", 2, True)]
        (line,) = oracle.format_json_lines(records).splitlines()
        assert json.loads(line) == {"name": "a", "size": 2, "passed": True, "witness": None}

    def test_default_stdlib_root(self):
        assert oracle.default_stdlib_root().endswith("stdlib")
