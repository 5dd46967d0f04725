# test_fibration.py - 宇宙・Id 型の hcomp と輸送の同値性のテスト
import fibration
from cof import Cof
from conversion import conv
from evaluate import act, do_app, do_fst, do_papp
from interval import IvElem
from loader import check_text
from values import (
    VGlue, VId, VIdPair, VNat, VPLam, VPathP, VSuc, VUniv, VZero, const_closure,
)

K = 0


def nat(k):
    v = VZero()
    for _ in range(k):
        v = VSuc(v)
    return v


def refl_id(v):
    return VIdPair(VPLam("_", const_closure(v)), Cof.top())


class TestUniverse:
    def test_glue_under_face(self):
        ty = fibration.hcomp(VUniv(0), Cof.eq(K, 0), 0, const_closure(VNat()))
        assert isinstance(ty, VGlue)
        assert isinstance(act(ty, {K: IvElem.zero()}), VNat)
        assert isinstance(act(ty, {K: IvElem.one()}), VNat)

    def test_empty_system_is_the_cap(self):
        assert isinstance(fibration.hcomp(VUniv(0), Cof.bot(), 0, const_closure(VNat())), VNat)

    def test_top_is_the_lid(self):
        ty = fibration.hcomp(VUniv(0), Cof.top(), 1, const_closure(VNat()))
        assert isinstance(ty, VNat)

    def test_equivalence_is_transport(self):
        equiv = fibration.transp_equiv(const_closure(VNat()), 0)
        assert conv(1, VNat(), do_app(do_fst(equiv), nat(3)), nat(3))
        center = do_fst(do_fst(do_app(equiv.snd, nat(3))))
        assert conv(1, VNat(), center, nat(3))

    def test_checked_hcomp_in_universe(self):
        _checker, lib = check_text("def n : Path U0 (hcomp U0 (bot) (\\j. Nat)) Nat = \\_. Nat\n")
        assert lib.ok, [str(d) for d in lib.diagnostics]


class TestIdentity:
    def test_pair_of_path_and_cof(self):
        ty = VId(VNat(), nat(2), nat(2))
        result = fibration.hcomp(ty, Cof.eq(K, 0), 0, const_closure(refl_id(nat(2))))
        assert isinstance(result, VIdPair)
        assert not result.cof.is_top()
        assert act(result, {K: IvElem.zero()}).cof.is_top()
        assert act(result, {K: IvElem.one()}).cof.is_bot()

    def test_path_component(self):
        ty = VId(VNat(), nat(2), nat(2))
        result = fibration.hcomp(ty, Cof.eq(K, 0), 0, const_closure(refl_id(nat(2))))
        i = IvElem.var(1)
        path_ty = VPathP("_", const_closure(VNat()), nat(2), nat(2))
        assert conv(2, VNat(), do_papp(result.path, i), nat(2))
        assert conv(2, path_ty, result.path, VPLam("_", const_closure(nat(2))))

    def test_empty_system_forgets_the_cof(self):
        ty = VId(VNat(), nat(0), nat(0))
        result = fibration.hcomp(ty, Cof.bot(), 0, const_closure(refl_id(nat(0))))
        assert isinstance(result, VIdPair)
        assert result.cof.is_bot()
