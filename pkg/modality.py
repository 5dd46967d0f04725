# modality.py - ヌル構造・ヌル型の宇宙・ヌル化（Loc）の組み立て
import logging
from dataclasses import dataclass

import parser as surface
from checker import check, infer, infer_type
from cof import CofEq, CofOr
from errors import UniverseError
from syntax import (
    Ann, App, Case, Fst, HComp, Ident, Lam, Pair, PathP, Pi, Sigma,
    Snd, Star, SumT, Sys, UnitT, Univ, pretty,
)
from values import VPi, VUniv, const_closure

logger = logging.getLogger(__name__)


def _apps(head, *args):
    term = head
    for arg in args:
        term = App(term, arg)
    return term


def _var(name):
    return Ident(name)


def is_equiv_type(x_ty, y_ty, fun):
    """isEquiv X Y f = Π (y : Y), isContr (Σ (x : X), Path Y y (f x))"""
    fiber = Sigma("x%", x_ty, PathP("_", y_ty, _var("y%"), App(fun, _var("x%"))))
    contr = Sigma("c%", fiber, Pi("z%", fiber, PathP("_", fiber, _var("c%"), _var("z%"))))
    return Pi("y%", y_ty, contr)


def const_map(x_ty, b_ty):
    """λ (x : X). λ (_ : B). x"""
    return Ann(Lam("x%", Lam("_", _var("x%"))), Pi("_", x_ty, Pi("_", b_ty, x_ty)))


@dataclass
class Elaborated:
    """
    精緻化済みの項

    Args:
        term: 表層の項
        core: 検査後の核の項
        ty: 型の値
    """
    term: object
    core: object
    ty: object


class Modality:
    """
    型族 B : A → U_k に関するヌル化のモダリティ

    ヌル構造の型・ヌル型の宇宙・Loc による反映を表層の項として組み立て、
    与えられた検査セッションで精緻化する。ヌル構造と U_B はどの階層でも
    作れるが、懸垂と Loc は U0 の族に限る。
    """

    def __init__(self, checker, a_ty, b_fam, level=0):
        self.checker = checker
        self.level = level
        ctx = checker.context()
        a_core, a_level = infer_type(ctx, a_ty)
        if a_level > level:
            raise UniverseError(f"A は U{level} の型でなければなりません（U{a_level}）")
        a_val = ctx.eval(a_core)
        b_core = check(ctx, b_fam, VPi("_", a_val, const_closure(VUniv(level))))
        self.a_ty = a_ty
        # 推論位置でも使えるように型注釈を付けておく
        self.b_fam = Ann(b_fam, Pi("_", a_ty, Univ(level)))
        self.a_core = a_core
        self.b_core = b_core
        logger.debug(f"モダリティを作成しました: A = {pretty(a_core)}")

    @classmethod
    def from_source(cls, checker, a_src, b_src, level=0):
        """A と B をソース文字列で与える"""
        return cls(checker, surface.parse_term(a_src), surface.parse_term(b_src), level)

    def _require_small(self, what):
        if self.level != 0:
            raise UniverseError(f"{what} は U0 の族にしか作れません（U{self.level}）")

    # -- 精緻化 --

    def elaborate(self, term):
        ctx = self.checker.context()
        core, ty = infer(ctx, term)
        return Elaborated(term, core, ty)

    def elaborate_type(self, term):
        ctx = self.checker.context()
        core, level = infer_type(ctx, term)
        return Elaborated(term, core, VUniv(level))

    def check_against(self, term, ty_term):
        """term を型 ty_term で検査する"""
        ty = self.elaborate_type(ty_term)
        ctx = self.checker.context()
        core = check(ctx, term, ctx.eval(ty.core))
        return Elaborated(term, core, ctx.eval(ty.core))

    def normal_form(self, term):
        """項の正規形を文字列で返す"""
        ctx = self.checker.context()
        e = self.elaborate(term)
        return ctx.show(ctx.eval(e.core))

    # -- ヌル構造 --

    def null_type_for(self, a_ty, b_fam, x_ty):
        """isNull_B X = Π (a : A), isEquiv (λ x b. x : X → (B a → X))"""
        b_ty = App(b_fam, _var("a%"))
        return Pi("a%", a_ty, is_equiv_type(x_ty, Pi("_", b_ty, x_ty), const_map(x_ty, b_ty)))

    def is_null_type(self, x_ty):
        return self.null_type_for(self.a_ty, self.b_fam, x_ty)

    def is_null(self, x_ty):
        """X の B-ヌル構造の型（命題）"""
        return self.elaborate_type(self.is_null_type(x_ty))

    @staticmethod
    def unit_null_proof():
        """単位型のヌル構造（どの族についても同じ項で書ける）"""
        center = Pair(Star(), Lam("i%", _var("y%")))
        contraction = Lam("z%", Lam("i%", Pair(Star(), Lam("j%", _var("y%")))))
        return Lam("a%", Lam("y%", Pair(center, contraction)))

    def null_unit(self):
        return self.check_against(self.unit_null_proof(), self.is_null_type(UnitT()))

    # -- 懸垂を加えた族 --

    def hat_sum(self):
        return SumT(self.a_ty, self.a_ty)

    def hat(self):
        """B̂ : A + A → U0（inl a ↦ B a, inr a ↦ Susp (B a)）"""
        self._require_small("B̂")
        motive = Lam("_", Univ(0))
        susp = Lam("y%", App(_var("Susp"), App(self.b_fam, _var("y%"))))
        body = Case(motive, self.b_fam, susp, _var("a%"))
        return Ann(Lam("a%", body), Pi("_", self.hat_sum(), Univ(0)))

    def hat_null_type(self, y_ty):
        """Loc の再帰に必要な、B̂ についてのヌル構造の型"""
        return self.null_type_for(self.hat_sum(), self.hat(), y_ty)

    # -- ヌル化 --

    def j_op_type(self, fam_sum, fam, x_ty):
        """J_{fam}(X)"""
        return _apps(_var("JB"), fam_sum, fam, x_ty)

    def loc_type(self, x_ty):
        """Loc_B X = J_{B̂}(X)"""
        return self.j_op_type(self.hat_sum(), self.hat(), x_ty)

    def nullify(self, x_ty):
        """
        X のヌル化

        Returns:
            Nullifier: 台・単位・再帰を持つ
        """
        self._require_small("Loc")
        carrier = self.elaborate_type(self.loc_type(x_ty))
        unit_term = Ann(Lam("x%", App(_var("JB.alpha"), _var("x%"))), Pi("_", x_ty, self.loc_type(x_ty)))
        unit = self.elaborate(unit_term)
        logger.debug(f"ヌル化を組み立てました: {pretty(carrier.core)}")
        return Nullifier(self, x_ty, carrier, unit)

    def null_universe(self, level=None):
        """
        U_B = Σ (X : U_k), isNull_B X

        Args:
            level: k（省略時は族の階層）。族より低い階層は取れない

        Returns:
            Elaborated: U_{k+1} の型
        """
        level = self.level if level is None else level
        if level < self.level:
            raise UniverseError(f"U_B の階層 {level} が族の階層 {self.level} より低い")
        return self.elaborate_type(Sigma("X%", Univ(level), self.is_null_type(_var("X%"))))

    def trunc_in_null(self, x_ty):
        """Loc_B ∥X∥"""
        self._require_small("Loc")
        return self.elaborate_type(self.loc_type(App(_var("Trunc"), x_ty)))


class Nullifier:
    """
    Loc_B X と単位 η、ヌル型への再帰

    Attributes:
        carrier: Loc A B X の精緻化
        unit: η : X → Loc A B X の精緻化
    """

    def __init__(self, modality, x_ty, carrier, unit):
        self.modality = modality
        self.x_ty = x_ty
        self.carrier = carrier
        self.unit = unit

    def rec_term(self, y_ty, null_proof, g):
        """
        ヌル型 Y への再帰 Loc A B X → Y

        延長の節では、錐の頂点を null_proof が与える中心に送り、母線を
        中心から ih b への道の逆で埋める。

        Args:
            y_ty: 行き先の型
            null_proof: Y の B̂-ヌル構造（hat_null_type(y_ty) の元）
            g: X → Y
        """
        m = self.modality
        n = Ann(null_proof, m.hat_null_type(y_ty))
        g = Ann(g, Pi("_", self.x_ty, y_ty))
        contr = _apps(n, _var("a%"), _var("ih%"))
        center = Fst(Fst(contr))
        ih_b = App(_var("ih%"), _var("b%"))
        line = App(App(Snd(Fst(contr)), _var("j%")), _var("b%"))
        i, j = _var("i%"), _var("j%")
        filler = HComp(
            y_ty, CofOr(CofEq(i, 0), CofEq(i, 1)), 0, "j%",
            Sys(((CofEq(j, 0), ih_b), (CofEq(i, 0), line), (CofEq(i, 1), ih_b))),
        )
        cone = _apps(
            _var("Cone.elim"), Lam("_", y_ty), Lam("_", center),
            Lam("b%", Lam("i%", filler)), _var("c%"),
        )
        paste = Lam("a%", Lam("c%", Lam("f%", Lam("ih%", cone))))
        eta = Lam("x%", App(g, _var("x%")))
        body = _apps(_var("JB.elim"), Lam("_", y_ty), eta, paste, _var("t%"))
        return Ann(Lam("t%", body), Pi("_", m.loc_type(self.x_ty), y_ty))

    def rec(self, y_ty, null_proof, g):
        return self.modality.elaborate(self.rec_term(y_ty, null_proof, g))

    def apply_unit(self, x):
        """η x"""
        return App(self.unit.term, x)
