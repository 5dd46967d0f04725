# test_modality.py - ヌル構造とヌル化の組み立てのテスト
import pytest

from checker import Checker
from errors import TypeMismatch, UniverseError
from modality import Modality, const_map, is_equiv_type
from parser import parse_term
from syntax import Lam, NatT, Pi, Sigma, Star, UnitT
from values import VHit, VPi, VSigma, VSum, VUniv


def level_of(elab):
    """型が宇宙ならその階層、そうでなければ None"""
    return elab.ty.level if isinstance(elab.ty, VUniv) else None


@pytest.fixture
def modality():
    return Modality.from_source(Checker(), "Nat", "\\_. Unit")


class TestConstruction:
    def test_family_must_be_small(self):
        with pytest.raises(UniverseError):
            Modality.from_source(Checker(), "U0", "\\_. Unit")

    def test_family_must_land_in_universe(self):
        with pytest.raises(TypeMismatch):
            Modality.from_source(Checker(), "Nat", "\\n. n")

    def test_equiv_type_shape(self):
        ty = is_equiv_type(UnitT(), NatT(), Lam("x", Star()))
        assert isinstance(ty, Pi)
        assert isinstance(ty.cod, Sigma)

    def test_const_map_is_checked(self, modality):
        e = modality.elaborate(const_map(NatT(), UnitT()))
        assert isinstance(e.ty, VPi)


class TestNullStructure:
    def test_is_null_is_small(self, modality):
        assert level_of(modality.is_null(NatT())) == 0

    def test_unit_is_null(self, modality):
        e = modality.null_unit()
        assert e.core is not None

    def test_null_universe_is_large(self, modality):
        assert level_of(modality.null_universe()) == 1

    def test_null_universe_at_higher_level(self, modality):
        assert level_of(modality.null_universe(1)) == 2

    def test_large_family(self):
        large = Modality.from_source(Checker(), "Nat", "\\_. Lift Unit", 1)
        assert level_of(large.is_null(parse_term("Lift Nat"))) == 1
        assert level_of(large.null_universe()) == 2
        with pytest.raises(UniverseError):
            large.null_universe(0)
        with pytest.raises(UniverseError):
            large.nullify(parse_term("Lift Nat"))

    def test_hat_family(self, modality):
        e = modality.elaborate(modality.hat())
        assert isinstance(e.ty, VPi)
        assert level_of(modality.elaborate_type(modality.hat_null_type(UnitT()))) == 0


class TestNullification:
    def test_carrier_and_unit(self, modality):
        n = modality.nullify(NatT())
        assert level_of(n.carrier) == 0
        assert isinstance(n.unit.ty, VPi)
        applied = modality.elaborate(n.apply_unit(parse_term("3")))
        assert isinstance(applied.ty, VHit)
        assert applied.ty.decl.name == "JB"
        assert isinstance(applied.ty.params[0], VSum)

    def test_recursion_into_null_type(self, modality):
        n = modality.nullify(NatT())
        rec = n.rec(UnitT(), Modality.unit_null_proof(), Lam("x", Star()))
        assert isinstance(rec.ty, VPi)

    def test_truncation_inside(self, modality):
        assert level_of(modality.trunc_in_null(NatT())) == 0

    def test_check_against(self, modality):
        e = modality.check_against(parse_term("(tt, 2)"), Sigma("_", UnitT(), NatT()))
        assert isinstance(e.ty, VSigma)

    def test_normal_form(self, modality):
        assert isinstance(modality.normal_form(parse_term("(\\x. x : Nat -> Nat) 2")), str)
