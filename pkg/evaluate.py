# evaluate.py - 評価（eval）・消去規則・区間代入（act）・読み戻し（quote）
import itertools
import logging

import fibration
import hit
from cof import Cof, CofAnd, CofBot, CofEq, CofOr, CofTop, cof_atom
from errors import InternalError, ScopeError
from interval import IvElem, IvJoin, IvMeet, IvOne, IvZero
from syntax import (
    Absurd, Ann, App, At, Case, Con, Fst, Glue, GlueElem, HComp, Hit, HitElim,
    IdPair, IdPath, IdT, Inl, Inr, IntervalT, J, Lam, Lift, LiftIn, LiftOut,
    Lit, NatRec, NatT, PApp, PathP, Pair, Pi, PLam, Ref, Sigma, Snd, Star,
    Suc, SumT, Sys, Transp, Unglue, UnitT, Univ, Var, Zero, EmptyT, numeral,
)
from values import (
    Closure, Env, NAbsurd, NApp, NAxiom, NCase, NFst, NHComp, NHitElim,
    NIdPath, NJ, NLiftOut, NNatRec, NPApp, NSnd, NSys, NTransp, NUnglue, NVar,
    Native, VCon, VEmpty, VGlue, VGlueElem, VHit, VHitHComp, VId, VIdPair,
    VInl, VInr, VLam, VLift, VLiftIn, VNat, VNeutral, VPair, VPathP, VPi,
    VPLam, VSigma, VStar, VSuc, VSum, VUnit, VUniv, VZero, Value, const_closure,
)

logger = logging.getLogger(__name__)


class VIntervalT(Value):
    """区間を定義域に持つ λ（HIT の消去の節）の定義域"""

    def __repr__(self):
        return "VIntervalT()"


INTERVAL = VIntervalT()

# 型の形を調べるための一時的な区間変数（読み戻されることはない）
_GENERIC = itertools.count(1 << 40)


def generic_level():
    return next(_GENERIC)


# ---------------------------------------------------------------------------
# 大域環境
# ---------------------------------------------------------------------------

class GlobalEntry:
    """大域定義または公理。value は初回参照時に評価する"""

    def __init__(self, name, ty_term, ty_value, body=None, annotation=None, origin=None):
        self.name = name
        self.ty_term = ty_term
        self.ty_value = ty_value
        self.body = body
        self.annotation = annotation
        self.origin = origin
        self._value = None

    @property
    def is_axiom(self):
        return self.body is None


class Globals:
    """
    検査セッションの大域表（定義・公理・HIT）

    追記のみ。評価は Env.glob からこれを参照する。
    """

    def __init__(self):
        self.defs = {}
        self.hits = {}

    def add_def(self, entry):
        self.defs[entry.name] = entry

    def add_hit(self, decl):
        self.hits[decl.name] = decl

    def value_of(self, name):
        entry = self.defs.get(name)
        if entry is None:
            raise ScopeError(f"未定義の名前です: {name}")
        if entry.is_axiom:
            return VNeutral(entry.ty_value, NAxiom(name, entry.ty_value))
        if entry._value is None:
            entry._value = eval_term(Env(self, ()), entry.body)
        return entry._value


# ---------------------------------------------------------------------------
# 区間と Cof の評価
# ---------------------------------------------------------------------------

def eval_interval(env, t):
    match t:
        case IvZero():
            return IvElem.zero()
        case IvOne():
            return IvElem.one()
        case Lit(value) if value in (0, 1):
            return IvElem.const(value)
        case Var(index):
            value = env.lookup(index)
            if not isinstance(value, IvElem):
                raise InternalError(f"区間変数ではありません: {t}")
            return value
        case IvMeet(left, right):
            return eval_interval(env, left).meet(eval_interval(env, right))
        case IvJoin(left, right):
            return eval_interval(env, left).join(eval_interval(env, right))
        case At(_, inner):
            return eval_interval(env, inner)
    raise InternalError(f"区間項ではありません: {t!r}")


def eval_cof(env, c):
    match c:
        case CofTop():
            return Cof.top()
        case CofBot():
            return Cof.bot()
        case CofEq(term, eps):
            return cof_atom(eval_interval(env, term), eps)
        case CofAnd(left, right):
            return eval_cof(env, left).conj(eval_cof(env, right))
        case CofOr(left, right):
            return eval_cof(env, left).disj(eval_cof(env, right))
        case At(_, inner):
            return eval_cof(env, inner)
    raise InternalError(f"Cof の式ではありません: {c!r}")


# ---------------------------------------------------------------------------
# 評価
# ---------------------------------------------------------------------------

def eval_term(env, t):
    """
    項を環境 env の下で評価する

    Args:
        env: 評価環境
        t: コア項

    Returns:
        Value: 弱頭部正規形（区間項なら IvElem）
    """
    match t:
        case Var(index):
            return env.lookup(index)
        case Ref(name):
            return env.glob.value_of(name)
        case Univ(level):
            return VUniv(level)
        case Lift(ty):
            return VLift(eval_term(env, ty))
        case LiftIn(term):
            return VLiftIn(eval_term(env, term))
        case LiftOut(term):
            return do_lower(eval_term(env, term))
        case Pi(name, dom, cod):
            return VPi(name, eval_term(env, dom), Closure(env, cod))
        case Lam(name, body, dom):
            dom_value = None
            if isinstance(dom, IntervalT):
                dom_value = INTERVAL
            elif dom is not None:
                dom_value = eval_term(env, dom)
            return VLam(name, dom_value, Closure(env, body))
        case App(fn, arg):
            return do_app(eval_term(env, fn), eval_term(env, arg))
        case Sigma(name, dom, cod):
            return VSigma(name, eval_term(env, dom), Closure(env, cod))
        case Pair(a, b):
            return VPair(eval_term(env, a), eval_term(env, b))
        case Fst(p):
            return do_fst(eval_term(env, p))
        case Snd(p):
            return do_snd(eval_term(env, p))
        case NatT():
            return VNat()
        case Zero():
            return VZero()
        case Suc(pred):
            return VSuc(eval_term(env, pred))
        case NatRec(motive, z, s, target):
            return do_natrec(eval_term(env, motive), eval_term(env, z), eval_term(env, s), eval_term(env, target))
        case UnitT():
            return VUnit()
        case Star():
            return VStar()
        case EmptyT():
            return VEmpty()
        case Absurd(ty, target):
            return do_absurd(eval_term(env, ty), eval_term(env, target))
        case SumT(left, right):
            return VSum(eval_term(env, left), eval_term(env, right))
        case Inl(v):
            return VInl(eval_term(env, v))
        case Inr(v):
            return VInr(eval_term(env, v))
        case Case(motive, left, right, target):
            return do_case(eval_term(env, motive), eval_term(env, left), eval_term(env, right), eval_term(env, target))
        case PLam(name, body):
            return VPLam(name, Closure(env, body))
        case PApp(path, arg):
            return do_papp(eval_term(env, path), eval_interval(env, arg))
        case PathP(name, fam, left, right):
            return VPathP(name, Closure(env, fam), eval_term(env, left), eval_term(env, right))
        case IvZero() | IvOne() | IvMeet() | IvJoin():
            return eval_interval(env, t)
        case Sys(branches, ty):
            ty_value = eval_term(env, ty) if ty is not None else None
            return make_sys(ty_value, [(eval_cof(env, c), _thunk(env, b)) for c, b in branches])
        case HComp(ty, cof, eps, _, body):
            return fibration.hcomp(eval_term(env, ty), eval_cof(env, cof), eps, Closure(env, body))
        case Transp(name, fam, cof, eps, arg):
            return fibration.transp(Closure(env, fam), eval_cof(env, cof), eps, eval_term(env, arg), name)
        case Glue(base, cof, fib, equiv):
            c = eval_cof(env, cof)
            if c.is_top():
                return eval_term(env, fib)
            if c.is_bot():
                return eval_term(env, base)
            return VGlue(eval_term(env, base), c, eval_term(env, fib), eval_term(env, equiv))
        case GlueElem(cof, fib_elem, base_elem):
            c = eval_cof(env, cof)
            if c.is_top():
                return eval_term(env, fib_elem)
            if c.is_bot():
                return eval_term(env, base_elem)
            return VGlueElem(c, eval_term(env, fib_elem), eval_term(env, base_elem))
        case Unglue(target, base, cof, fib, equiv):
            c = eval_cof(env, cof)
            g = eval_term(env, target)
            if c.is_bot():
                return g
            if c.is_top():
                return do_app(do_fst(eval_term(env, equiv)), g)
            return do_unglue(g, eval_term(env, base), c, eval_term(env, fib), eval_term(env, equiv))
        case IdT(ty, left, right):
            return VId(eval_term(env, ty), eval_term(env, left), eval_term(env, right))
        case IdPair(path, cof):
            return VIdPair(eval_term(env, path), eval_cof(env, cof))
        case IdPath(term):
            return do_idpath(eval_term(env, term))
        case J(motive, base, proof, ty, left, right):
            return do_j(
                eval_term(env, ty), eval_term(env, left), eval_term(env, motive),
                eval_term(env, base), eval_term(env, right), eval_term(env, proof),
            )
        case Hit(name, params):
            decl = env.glob.hits[name]
            return VHit(decl, tuple(eval_term(env, p) for p in params))
        case Con(hit_name, cname, args, params):
            decl = env.glob.hits[hit_name]
            return hit.make_con(
                decl, tuple(eval_term(env, p) for p in params), cname,
                tuple(eval_term(env, a) for a in args),
            )
        case HitElim(hit_name, motive, clauses, target, params):
            decl = env.glob.hits[hit_name]
            return hit.do_elim(
                decl, tuple(eval_term(env, p) for p in params), eval_term(env, motive),
                tuple(eval_term(env, c) for c in clauses), eval_term(env, target),
            )
        case Ann(term, _):
            return eval_term(env, term)
        case Lit(value):
            return eval_term(env, numeral(value))
        case At(_, inner):
            return eval_term(env, inner)
    raise InternalError(f"評価できない項です: {t!r}")


def _thunk(env, body):
    return lambda: eval_term(env, body)


def make_sys(ty, branches):
    """
    部分要素を作る。⊤ の枝があればその値、なければ中立項

    Args:
        ty: 型（分からなければ None）
        branches: (Cof, 値を返す関数) の列

    Returns:
        Value: 値
    """
    live = []
    for c, thunk in branches:
        if c.is_top():
            return thunk()
        if not c.is_bot():
            live.append((c, thunk))
    return VNeutral(ty, NSys(tuple((c, thunk()) for c, thunk in live)))


def _sys_map(v, fn):
    """中立な部分要素の各枝に消去を押し込む"""
    return VNeutral(None, NSys(tuple((c, fn(b)) for c, b in v.ne.branches)))


def _is_sys(v):
    return isinstance(v, VNeutral) and isinstance(v.ne, NSys)


# ---------------------------------------------------------------------------
# 消去規則
# ---------------------------------------------------------------------------

def do_app(f, a):
    match f:
        case VLam(_, _, body):
            return body.apply(a)
        case VNeutral(ty, NSys()):
            return _sys_map(f, lambda b: do_app(b, a))
        case VNeutral(ty, ne):
            cod = ty.cod.apply(a) if isinstance(ty, VPi) else None
            return VNeutral(cod, NApp(ne, a))
    raise InternalError(f"関数ではない値への適用です: {f!r}")


def do_fst(p):
    match p:
        case VPair(a, _):
            return a
        case VNeutral(_, NSys()):
            return _sys_map(p, do_fst)
        case VNeutral(ty, ne):
            return VNeutral(ty.dom if isinstance(ty, VSigma) else None, NFst(ne))
    raise InternalError(f"対ではない値の射影です: {p!r}")


def do_snd(p):
    match p:
        case VPair(_, b):
            return b
        case VNeutral(_, NSys()):
            return _sys_map(p, do_snd)
        case VNeutral(ty, ne):
            cod = ty.cod.apply(do_fst(p)) if isinstance(ty, VSigma) else None
            return VNeutral(cod, NSnd(ne))
    raise InternalError(f"対ではない値の射影です: {p!r}")


def do_papp(p, r):
    match p:
        case VPLam(_, body):
            return body.apply(r)
        case VNeutral(_, NSys()):
            return _sys_map(p, lambda b: do_papp(b, r))
        case VNeutral(ty, ne):
            if isinstance(ty, VPathP):
                const = r.as_const()
                if const == 0:
                    return ty.left
                if const == 1:
                    return ty.right
                return VNeutral(ty.fam.apply(r), NPApp(ne, r))
            return VNeutral(None, NPApp(ne, r))
    raise InternalError(f"道ではない値の区間適用です: {p!r}")


def do_natrec(motive, z, s, n):
    # suc の連鎖は反復で処理する（深い数字で再帰しない）
    chain = []
    base = n
    while isinstance(base, VSuc):
        chain.append(base.pred)
        base = base.pred
    match base:
        case VZero():
            acc = z
        case VNeutral(_, NSys()):
            acc = _sys_map(base, lambda b: do_natrec(motive, z, s, b))
        case VNeutral(_, ne):
            acc = VNeutral(do_app(motive, base), NNatRec(motive, z, s, ne))
        case _:
            raise InternalError(f"自然数ではない値の再帰です: {base!r}")
    for pred in reversed(chain):
        acc = do_app(do_app(s, pred), acc)
    return acc


def do_case(motive, left, right, target):
    match target:
        case VInl(v):
            return do_app(left, v)
        case VInr(v):
            return do_app(right, v)
        case VNeutral(_, NSys()):
            return _sys_map(target, lambda b: do_case(motive, left, right, b))
        case VNeutral(_, ne):
            return VNeutral(do_app(motive, target), NCase(motive, left, right, ne))
    raise InternalError(f"直和ではない値の場合分けです: {target!r}")


def do_absurd(ty, target):
    match target:
        case VNeutral(_, NSys()):
            return _sys_map(target, lambda b: do_absurd(ty, b))
        case VNeutral(_, ne):
            return VNeutral(ty, NAbsurd(ty, ne))
    raise InternalError(f"空型ではない値の消去です: {target!r}")


def do_lower(v):
    match v:
        case VLiftIn(inner):
            return inner
        case VNeutral(_, NSys()):
            return _sys_map(v, do_lower)
        case VNeutral(ty, ne):
            return VNeutral(ty.ty if isinstance(ty, VLift) else None, NLiftOut(ne))
    raise InternalError(f"Lift ではない値の lower です: {v!r}")


def do_unglue(g, base, cof, fib, equiv):
    if cof.is_top():
        return do_app(do_fst(equiv), g)
    if cof.is_bot():
        return g
    match g:
        case VGlueElem(_, _, a):
            return a
        case VNeutral(_, NSys()):
            return _sys_map(g, lambda b: do_unglue(b, base, cof, fib, equiv))
        case VNeutral(_, ne):
            return VNeutral(base, NUnglue(ne, base, cof, fib, equiv))
    raise InternalError(f"Glue ではない値の unglue です: {g!r}")


def make_glue_elem(cof, fib_elem, base_elem):
    if cof.is_top():
        return fib_elem
    if cof.is_bot():
        return base_elem
    return VGlueElem(cof, fib_elem, base_elem)


def make_glue(base, cof, fib, equiv):
    if cof.is_top():
        return fib
    if cof.is_bot():
        return base
    return VGlue(base, cof, fib, equiv)


def do_idpath(x):
    match x:
        case VIdPair(path, _):
            return path
        case VNeutral(_, NSys()):
            return _sys_map(x, do_idpath)
        case VNeutral(ty, ne):
            path_ty = None
            if isinstance(ty, VId):
                path_ty = VPathP("_", const_closure(ty.ty), ty.left, ty.right)
            return VNeutral(path_ty, NIdPath(ne))
    raise InternalError(f"Id ではない値の射影です: {x!r}")


def do_j(ty, left, motive, base, right, proof):
    """
    J の計算規則。⟨p, φ⟩ に対して C に沿った輸送（φ が ⊤ なら base そのもの）

    Args:
        ty: A
        left: a
        motive: C : (b : A) → Id A a b → U
        base: d : C a refl
        right: b
        proof: Id A a b の値
    """
    match proof:
        case VIdPair(path, cof):
            if cof.is_top():
                return base

            def line(i):
                sub_path = VPLam("j", Native(lambda j: do_papp(path, i.meet(j))))
                sub = VIdPair(sub_path, cof.disj(cof_atom(i, 0)))
                return do_app(do_app(motive, do_papp(path, i)), sub)

            return fibration.transp(Native(line), cof, 0, base)
        case VNeutral(_, NSys()):
            return _sys_map(proof, lambda b: do_j(ty, left, motive, base, right, b))
        case VNeutral(_, ne):
            return VNeutral(do_app(do_app(motive, right), proof), NJ(motive, base, ne, ty, left, right))
    raise InternalError(f"Id ではない値の J です: {proof!r}")


# ---------------------------------------------------------------------------
# 区間代入（名目的な作用）
# ---------------------------------------------------------------------------

class Acted:
    """クロージャに区間代入を遅延適用するラッパー"""
    __slots__ = ("clo", "mapping")

    def __init__(self, clo, mapping):
        self.clo = clo
        self.mapping = mapping

    def apply(self, *args):
        return act(self.clo.apply(*args), self.mapping)


def act_closure(clo, mapping):
    return Acted(clo, mapping)


def act_cof(c, mapping):
    return c.subst(mapping)


def act(v, mapping):
    """
    値の中の区間変数を置換し、置換で可能になった簡約を行う

    Args:
        v: 値（IvElem、Cof、None も可）
        mapping: 区間変数のレベル -> IvElem

    Returns:
        置換後の値
    """
    if not mapping or v is None:
        return v
    match v:
        case IvElem():
            return v.subst(mapping)
        case Cof():
            return v.subst(mapping)
        case VIntervalT():
            return v
        case VUniv() | VNat() | VZero() | VUnit() | VStar() | VEmpty():
            return v
        case VLift(ty):
            return VLift(act(ty, mapping))
        case VLiftIn(inner):
            return VLiftIn(act(inner, mapping))
        case VPi(name, dom, cod):
            return VPi(name, act(dom, mapping), act_closure(cod, mapping))
        case VLam(name, dom, body):
            return VLam(name, act(dom, mapping), act_closure(body, mapping))
        case VSigma(name, dom, cod):
            return VSigma(name, act(dom, mapping), act_closure(cod, mapping))
        case VPair(a, b):
            return VPair(act(a, mapping), act(b, mapping))
        case VSuc():
            depth = 0
            base = v
            while isinstance(base, VSuc):
                depth += 1
                base = base.pred
            result = act(base, mapping)
            for _ in range(depth):
                result = VSuc(result)
            return result
        case VSum(left, right):
            return VSum(act(left, mapping), act(right, mapping))
        case VInl(inner):
            return VInl(act(inner, mapping))
        case VInr(inner):
            return VInr(act(inner, mapping))
        case VPathP(name, fam, left, right):
            return VPathP(name, act_closure(fam, mapping), act(left, mapping), act(right, mapping))
        case VPLam(name, body):
            return VPLam(name, act_closure(body, mapping))
        case VGlue(base, cof, fib, equiv):
            c = act_cof(cof, mapping)
            if c.is_top():
                return act(fib, mapping)
            if c.is_bot():
                return act(base, mapping)
            return VGlue(act(base, mapping), c, act(fib, mapping), act(equiv, mapping))
        case VGlueElem(cof, fib_elem, base_elem):
            c = act_cof(cof, mapping)
            if c.is_top():
                return act(fib_elem, mapping)
            if c.is_bot():
                return act(base_elem, mapping)
            return VGlueElem(c, act(fib_elem, mapping), act(base_elem, mapping))
        case VId(ty, left, right):
            return VId(act(ty, mapping), act(left, mapping), act(right, mapping))
        case VIdPair(path, cof):
            return VIdPair(act(path, mapping), act_cof(cof, mapping))
        case VHit(decl, params):
            return VHit(decl, tuple(act(p, mapping) for p in params))
        case VCon(decl, params, cname, args):
            return hit.make_con(decl, tuple(act(p, mapping) for p in params), cname, tuple(act(a, mapping) for a in args))
        case VHitHComp(decl, params, cof, eps, body):
            ty = VHit(decl, tuple(act(p, mapping) for p in params))
            return fibration.hcomp(ty, act_cof(cof, mapping), eps, act_closure(body, mapping))
        case VNeutral(ty, ne):
            ty = act(ty, mapping)
            result = act_neutral(ne, ty, mapping)
            if isinstance(result, VNeutral) and result.ty is None and ty is not None:
                return VNeutral(ty, result.ne)
            return result
    raise InternalError(f"区間代入できない値です: {v!r}")


def act_neutral(ne, ty, mapping):
    match ne:
        case NVar(level, vty) if vty is not None:
            vty = act(vty, mapping)
            return VNeutral(vty, NVar(level, vty))
        case NAxiom(_, aty) if aty is not None:
            return VNeutral(aty, ne)
        case NVar() | NAxiom():
            return VNeutral(ty, ne)
        case NApp(fn, arg):
            return do_app(act_neutral(fn, None, mapping), act(arg, mapping))
        case NFst(pair):
            return do_fst(act_neutral(pair, None, mapping))
        case NSnd(pair):
            return do_snd(act_neutral(pair, None, mapping))
        case NPApp(path, arg):
            return do_papp(act_neutral(path, None, mapping), arg.subst(mapping))
        case NNatRec(motive, z, s, target):
            return do_natrec(act(motive, mapping), act(z, mapping), act(s, mapping), act_neutral(target, VNat(), mapping))
        case NAbsurd(aty, target):
            return do_absurd(act(aty, mapping), act_neutral(target, VEmpty(), mapping))
        case NCase(motive, left, right, target):
            return do_case(act(motive, mapping), act(left, mapping), act(right, mapping), act_neutral(target, None, mapping))
        case NLiftOut(term):
            return do_lower(act_neutral(term, None, mapping))
        case NUnglue(target, base, cof, fib, equiv):
            return do_unglue(
                act_neutral(target, None, mapping), act(base, mapping), act_cof(cof, mapping),
                act(fib, mapping), act(equiv, mapping),
            )
        case NIdPath(term):
            return do_idpath(act_neutral(term, None, mapping))
        case NJ(motive, base, proof, jty, left, right):
            return do_j(
                act(jty, mapping), act(left, mapping), act(motive, mapping), act(base, mapping),
                act(right, mapping), act_neutral(proof, None, mapping),
            )
        case NHitElim(decl, params, motive, clauses, target):
            return hit.do_elim(
                decl, tuple(act(p, mapping) for p in params), act(motive, mapping),
                tuple(act(c, mapping) for c in clauses), act_neutral(target, None, mapping),
            )
        case NHComp(hty, cof, eps, body):
            return fibration.hcomp(act(hty, mapping), act_cof(cof, mapping), eps, act_closure(body, mapping))
        case NTransp(name, fam, cof, eps, arg):
            return fibration.transp(act_closure(fam, mapping), act_cof(cof, mapping), eps, act(arg, mapping), name)
        case NSys(branches):
            return make_sys(ty, [(act_cof(c, mapping), _const_thunk(b, mapping)) for c, b in branches])
    raise InternalError(f"区間代入できない中立項です: {ne!r}")


def _const_thunk(value, mapping):
    return lambda: act(value, mapping)


# ---------------------------------------------------------------------------
# 読み戻し
# ---------------------------------------------------------------------------

def fresh_arg(dom, depth):
    """深さ depth の新しい変数（区間なら IvElem）"""
    if isinstance(dom, VIntervalT):
        return IvElem.var(depth)
    return VNeutral(dom, NVar(depth, dom))


def quote_interval(depth, r):
    if r.is_zero():
        return IvZero()
    if r.is_one():
        return IvOne()
    result = None
    for clause in r.clauses:
        term = None
        for level in clause:
            atom = Var(depth - 1 - level)
            term = atom if term is None else IvMeet(term, atom)
        result = term if result is None else IvJoin(result, term)
    return result


def quote_cof(depth, c):
    if c.is_top():
        return CofTop()
    if c.is_bot():
        return CofBot()
    result = None
    for clause in c.clauses:
        term = None
        for level, eps in clause:
            atom = CofEq(Var(depth - 1 - level), eps)
            term = atom if term is None else CofAnd(term, atom)
        result = term if result is None else CofOr(result, term)
    return result


def quote(depth, v):
    """
    値を正規形の項に読み戻す（型を見ない。η 展開はしない）

    Args:
        depth: 文脈の長さ
        v: 値

    Returns:
        Term: 正規形
    """
    match v:
        case IvElem():
            return quote_interval(depth, v)
        case VIntervalT():
            return IntervalT()
        case VUniv(level):
            return Univ(level)
        case VLift(ty):
            return Lift(quote(depth, ty))
        case VLiftIn(inner):
            return LiftIn(quote(depth, inner))
        case VPi(name, dom, cod):
            return Pi(name, quote(depth, dom), quote(depth + 1, cod.apply(fresh_arg(dom, depth))))
        case VLam(name, dom, body):
            dom_term = quote(depth, dom) if dom is not None else None
            return Lam(name, quote(depth + 1, body.apply(fresh_arg(dom, depth))), dom_term)
        case VSigma(name, dom, cod):
            return Sigma(name, quote(depth, dom), quote(depth + 1, cod.apply(fresh_arg(dom, depth))))
        case VPair(a, b):
            return Pair(quote(depth, a), quote(depth, b))
        case VNat():
            return NatT()
        case VZero():
            return Zero()
        case VSuc():
            count = 0
            base = v
            while isinstance(base, VSuc):
                count += 1
                base = base.pred
            term = quote(depth, base)
            for _ in range(count):
                term = Suc(term)
            return term
        case VUnit():
            return UnitT()
        case VStar():
            return Star()
        case VEmpty():
            return EmptyT()
        case VSum(left, right):
            return SumT(quote(depth, left), quote(depth, right))
        case VInl(inner):
            return Inl(quote(depth, inner))
        case VInr(inner):
            return Inr(quote(depth, inner))
        case VPathP(name, fam, left, right):
            return PathP(name, quote(depth + 1, fam.apply(IvElem.var(depth))), quote(depth, left), quote(depth, right))
        case VPLam(name, body):
            return PLam(name, quote(depth + 1, body.apply(IvElem.var(depth))))
        case VGlue(base, cof, fib, equiv):
            return Glue(quote(depth, base), quote_cof(depth, cof), quote(depth, fib), quote(depth, equiv))
        case VGlueElem(cof, fib_elem, base_elem):
            return GlueElem(quote_cof(depth, cof), quote(depth, fib_elem), quote(depth, base_elem))
        case VId(ty, left, right):
            return IdT(quote(depth, ty), quote(depth, left), quote(depth, right))
        case VIdPair(path, cof):
            return IdPair(quote(depth, path), quote_cof(depth, cof))
        case VHit(decl, params):
            return Hit(decl.name, tuple(quote(depth, p) for p in params))
        case VCon(decl, params, cname, args):
            return Con(decl.name, cname, tuple(quote(depth, a) for a in args), tuple(quote(depth, p) for p in params))
        case VHitHComp(decl, params, cof, eps, body):
            ty = Hit(decl.name, tuple(quote(depth, p) for p in params))
            return HComp(ty, quote_cof(depth, cof), eps, "i", quote(depth + 1, body.apply(IvElem.var(depth))))
        case VNeutral(_, ne):
            return quote_neutral(depth, ne)
    raise InternalError(f"読み戻せない値です: {v!r}")


def quote_neutral(depth, ne):
    match ne:
        case NVar(level):
            if level >= depth:
                raise InternalError(f"文脈の外の変数です: レベル {level}, 深さ {depth}")
            return Var(depth - 1 - level)
        case NAxiom(name):
            return Ref(name)
        case NApp(fn, arg):
            return App(quote_neutral(depth, fn), quote(depth, arg))
        case NFst(pair):
            return Fst(quote_neutral(depth, pair))
        case NSnd(pair):
            return Snd(quote_neutral(depth, pair))
        case NPApp(path, arg):
            return PApp(quote_neutral(depth, path), quote_interval(depth, arg))
        case NNatRec(motive, z, s, target):
            return NatRec(quote(depth, motive), quote(depth, z), quote(depth, s), quote_neutral(depth, target))
        case NAbsurd(ty, target):
            return Absurd(quote(depth, ty), quote_neutral(depth, target))
        case NCase(motive, left, right, target):
            return Case(quote(depth, motive), quote(depth, left), quote(depth, right), quote_neutral(depth, target))
        case NLiftOut(term):
            return LiftOut(quote_neutral(depth, term))
        case NUnglue(target, base, cof, fib, equiv):
            return Unglue(
                quote_neutral(depth, target), quote(depth, base), quote_cof(depth, cof),
                quote(depth, fib), quote(depth, equiv),
            )
        case NIdPath(term):
            return IdPath(quote_neutral(depth, term))
        case NJ(motive, base, proof, ty, left, right):
            return J(
                quote(depth, motive), quote(depth, base), quote_neutral(depth, proof),
                quote(depth, ty), quote(depth, left), quote(depth, right),
            )
        case NHitElim(decl, params, motive, clauses, target):
            return HitElim(
                decl.name, quote(depth, motive), tuple(quote(depth, c) for c in clauses),
                quote_neutral(depth, target), tuple(quote(depth, p) for p in params),
            )
        case NHComp(ty, cof, eps, body):
            return HComp(quote(depth, ty), quote_cof(depth, cof), eps, "i", quote(depth + 1, body.apply(IvElem.var(depth))))
        case NTransp(name, fam, cof, eps, arg):
            return Transp(name, quote(depth + 1, fam.apply(IvElem.var(depth))), quote_cof(depth, cof), eps, quote(depth, arg))
        case NSys(branches):
            return Sys(tuple((quote_cof(depth, c), quote(depth, b)) for c, b in branches))
    raise InternalError(f"読み戻せない中立項です: {ne!r}")


def normalize(glob, term, depth=0, env_vals=()):
    """閉じた（または env_vals で閉じた）項の正規形"""
    return quote(depth, eval_term(Env(glob, tuple(env_vals)), term))
