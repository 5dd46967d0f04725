# test_hit.py - HIT の宣言・簡約・消去のテスト
import pytest

import fibration
import hit
from checker import Checker
from cof import Cof
from conversion import conv
from errors import HitDeclError, InternalError
from interval import IvElem
from parser import parse_term, parse_text
from values import Native, VCon, VHit, VHitHComp, VLam, VNat, VSuc, VZero, const_closure


def nat(k):
    v = VZero()
    for _ in range(k):
        v = VSuc(v)
    return v


@pytest.fixture(scope="module")
def session():
    checker = Checker()
    for decl in parse_text(
        "hit Two where\n  | a\n  | b\n"
        "hit Box where\n  | c (n : Nat)\n"
        "hit Seg where\n  | l\n  | r\n  | seg (i : I) [i = 0 -> Seg.l, i = 1 -> Seg.r]\n"
    ).decls:
        checker.declare_hit(decl)
    return checker


class TestDeclarations:
    def test_polynomial_summary(self, session):
        summary = session.glob.hits["Seg"].summary()
        assert "seg × 𝕀^1" in summary
        assert "R = " in summary
        assert session.glob.hits["Trunc"].summary().startswith("A + ")

    def test_plain_w_type_has_no_reductions(self, session):
        decl = session.glob.hits["Box"]
        assert decl.constructor("c").reductions == []
        value = hit.make_con(decl, (), "c", (nat(1),))
        assert isinstance(value, VCon)

    def test_unknown_constructor(self, session):
        with pytest.raises(HitDeclError):
            session.glob.hits["Two"].constructor("z")

    def test_wrong_arity(self, session):
        with pytest.raises(InternalError):
            hit.make_con(session.glob.hits["Box"], (), "c", ())

    def test_self_shapes(self):
        assert hit.rec_shape_ok(parse_term("Self"))
        assert hit.rec_shape_ok(parse_term("Nat -> Self"))
        assert not hit.rec_shape_ok(parse_term("Self -> Nat"))
        assert hit.contains_self(parse_term("Nat * Self"))
        assert not hit.contains_self(parse_term("Nat"))

    def test_recursive_argument_must_be_strictly_positive(self):
        decl = parse_text("hit Bad where\n  | k (f : Self -> Nat)\n").decls[0]
        with pytest.raises(HitDeclError):
            Checker().declare_hit(decl)


class TestCoproduct:
    def test_constructors_side_by_side(self, session):
        glob = session.glob
        both = hit.coproduct("TwoBox", glob.hits["Two"], glob.hits["Box"])
        assert [c.name for c in both.constructors] == ["a", "b", "c"]
        assert isinstance(hit.make_con(both, (), "c", (nat(2),)), VCon)

    def test_clash(self, session):
        with pytest.raises(HitDeclError):
            hit.coproduct("TT", session.glob.hits["Two"], session.glob.hits["Two"])

    def test_parameter_mismatch(self, session):
        with pytest.raises(HitDeclError):
            hit.coproduct("X", session.glob.hits["Two"], session.glob.hits["Trunc"])

    def test_reductions_survive(self, session):
        both = hit.coproduct("SegBox", session.glob.hits["Seg"], session.glob.hits["Box"])
        # 簡約の行き先は新しい名前で大域表を引く
        session.glob.add_hit(both)
        assert both.constructor("seg").reductions
        assert hit.make_con(both, (), "seg", (IvElem.zero(),)).cname == "l"


class TestReductions:
    def test_segment_endpoints(self, session):
        seg = session.glob.hits["Seg"]
        assert hit.make_con(seg, (), "seg", (IvElem.one(),)).cname == "r"
        assert isinstance(hit.make_con(seg, (), "seg", (IvElem.var(0),)), VCon)

    def test_truncation_square(self, session):
        trunc = session.glob.hits["Trunc"]
        params = (VNat(),)
        x = hit.make_con(trunc, params, "inc", (nat(1),))
        y = hit.make_con(trunc, params, "inc", (nat(2),))
        assert hit.make_con(trunc, params, "sq", (x, y, IvElem.zero())) is x
        assert hit.make_con(trunc, params, "sq", (x, y, IvElem.one())) is y

    def test_cone_apex(self, session):
        cone = session.glob.hits["Cone"]
        value = hit.make_con(cone, (VNat(),), "inr", (nat(0), IvElem.zero()))
        assert value.cname == "inl"

    def test_lfr_hcomp(self, session):
        lfr = session.glob.hits["LFR"]
        ty = VHit(lfr, (VNat(),))
        base = hit.make_con(lfr, (VNat(),), "inc", (nat(3),))
        u = const_closure(base)
        assert conv(0, ty, fibration.hcomp(ty, Cof.top(), 0, u), base)
        stuck = fibration.hcomp(ty, Cof.bot(), 0, u)
        assert isinstance(stuck, VHitHComp)


class TestElimination:
    def test_point_beta(self, session):
        two = session.glob.hits["Two"]
        motive = VLam("_", VHit(two, ()), const_closure(VNat()))
        clauses = (nat(0), nat(1))
        result = hit.do_elim(two, (), motive, clauses, hit.make_con(two, (), "b", ()))
        assert conv(0, VNat(), result, nat(1))

    def test_path_beta(self, session):
        seg = session.glob.hits["Seg"]
        motive = VLam("_", VHit(seg, ()), const_closure(VNat()))
        clauses = (nat(0), nat(0), VLam("i", VNat(), const_closure(nat(0))))
        target = hit.make_con(seg, (), "seg", (IvElem.var(0),))
        assert conv(1, VNat(), hit.do_elim(seg, (), motive, clauses, target), nat(0))

    def test_truncation_rec_on_inc(self, session):
        trunc = session.glob.hits["Trunc"]
        ty = VHit(trunc, (VNat(),))
        motive = VLam("_", ty, const_closure(VNat()))
        clauses = (VLam("a", VNat(), Native(lambda a: VSuc(a))), VLam("x", ty, const_closure(nat(0))))
        value = hit.do_elim(trunc, (VNat(),), motive, clauses, hit.make_con(trunc, (VNat(),), "inc", (nat(4),)))
        assert conv(0, VNat(), value, nat(5))
