# test_stdlib.py - 標準ライブラリ全体の検査
import pytest

from evaluate import normalize
from kleene import encode_program, pair, INC, HALT
from loader import lemma_map
from parser import parse_term
from syntax import pretty

pytestmark = pytest.mark.slow


def nf(loader, source):
    core, _ty = loader.checker.infer_closed(parse_term(source))
    return pretty(normalize(loader.checker.glob, core))


class TestCorpus:
    def test_every_file_checks(self, stdlib_loader):
        broken = {path: [str(d) for d in lib.diagnostics] for path, lib in stdlib_loader.files.items() if not lib.ok}
        assert broken == {}
        assert len(stdlib_loader.files) == 11

    def test_every_definition_is_annotated(self, stdlib_loader):
        records = lemma_map(stdlib_loader.files.values())
        assert records
        assert [r["name"] for r in records if r["annotation"] is None] == []
        assert lemma_map(stdlib_loader.files.values(), strict=True) == records

    @pytest.mark.parametrize("name", [
        "CT", "CTnull", "ctIsProp", "MP", "mpFromTrunc", "truncInNull", "locBContr",
        "universeNull", "ua", "idToPath", "Continuity", "haltsInOneStep",
        "nullPi", "isoToEquiv", "kTransportExt", "suspUnitIsProp", "nullNegWellSupported", "locIsNull",
    ])
    def test_headline_names(self, stdlib_loader, name):
        assert name in stdlib_loader.checker.glob.defs


class TestComputation:
    def test_least_witness(self, stdlib_loader):
        assert nf(stdlib_loader, "leastWitness alpha2 5") == "inl 2"
        assert nf(stdlib_loader, "leastWitness alpha2 1") == "inr tt"

    def test_path_example_normalizes(self, stdlib_loader):
        glob = stdlib_loader.checker.glob
        assert "inl 2" in pretty(normalize(glob, glob.defs["mpLeastExample"].body))

    def test_only_the_code_of_the_identity_is_assumed(self, stdlib_loader):
        glob = stdlib_loader.checker.glob
        axioms = sorted(name for name, entry in glob.defs.items() if entry.is_axiom)
        assert axioms == ["idComputable"]

    def test_least_witness_from_truncation(self, stdlib_loader):
        term = "((truncWitIsoLeast alpha2).1 (Trunc.inc (2, \\i. true))).1"
        assert nf(stdlib_loader, term) == "2"

    def test_least_witness_from_a_later_witness(self, stdlib_loader):
        term = "(leastWitFromTrunc (leb 2) (Trunc.inc (5, \\i. true))).1"
        assert nf(stdlib_loader, term) == "2"

    def test_negation_is_null_without_contractibility(self, stdlib_loader):
        glob = stdlib_loader.checker.glob
        body = pretty(glob.defs["nullNegWellSupported"].body)
        assert "nullProp" in body
        assert "nullContr" not in body

    def test_poles_of_suspended_unit(self, stdlib_loader):
        assert nf(stdlib_loader, "suspUnitPoints 0") == "Susp.north"

    def test_halts_in_one_step(self, stdlib_loader):
        assert nf(stdlib_loader, "T 0 0 1") == "inl tt"
        assert nf(stdlib_loader, "U 1") == "zero"

    def test_increment_program(self, stdlib_loader):
        e = encode_program([INC, HALT])
        z = pair(2, 3)
        assert nf(stdlib_loader, f"T {e} 2 {z}") == "inl tt"
        assert nf(stdlib_loader, f"T {e} 2 {pair(2, 4)}") == "inr tt"
        assert nf(stdlib_loader, f"U {z}") == "3"
