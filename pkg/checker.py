# checker.py - 双方向型検査と精緻化（表層項 -> コア項）
import logging
from dataclasses import dataclass, replace

import hit
from cof import Cof, CofAnd, CofBot, CofEq, CofOr, CofTop, cof_atom, cof_entails
from conversion import conv_type, conv_under
from errors import (
    BoundaryMismatch, CannotInfer, CheckerError, HitDeclError, LineNotConstant,
    ScopeError, TypeMismatch, UniverseError,
)
from evaluate import (
    INTERVAL, GlobalEntry, Globals, VIntervalT, do_app, do_fst, eval_cof,
    eval_interval, eval_term, quote, quote_cof,
)
from interval import IvElem, IvJoin, IvMeet, IvOne, IvZero
from syntax import (
    Absurd, Ann, App, At, Case, Con, EmptyT, Fst, Glue, GlueElem, HComp, Hit,
    HitElim, Ident, IdPair, IdPath, IdT, Inl, Inr, IntervalT, J, Lam, Lift,
    LiftIn, LiftOut, Lit, NatRec, NatT, PApp, PathP, Pair, Pi, PLam, Ref,
    SelfT, Sigma, Snd, Star, Suc, SumT, Sys, Transp, Unglue, UnitT, Univ, Var,
    Zero, numeral, pretty,
)
from values import (
    Closure, Env, Native, VCon, VEmpty, VGlue, VHit, VId, VIdPair, VInl, VInr,
    VLift, VNat, VPathP, VPi, VPLam, VSigma, VSuc, VSum, VUnit, VUniv, VZero,
    const_closure, var,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# 文脈
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Context:
    """
    検査の文脈（望遠鏡）

    項変数と区間変数を一つの列で持ち、Cof の仮定は連言として cof に持つ。
    """
    glob: object
    names: tuple = ()
    kinds: tuple = ()
    types: tuple = ()
    vals: tuple = ()
    cof: Cof = Cof.top()

    @property
    def depth(self):
        return len(self.names)

    def env(self):
        return Env(self.glob, self.vals)

    def bind(self, name, ty):
        return replace(
            self, names=self.names + (name,), kinds=self.kinds + ("term",),
            types=self.types + (ty,), vals=self.vals + (var(ty, self.depth),),
        )

    def bind_interval(self, name):
        return replace(
            self, names=self.names + (name,), kinds=self.kinds + ("interval",),
            types=self.types + (None,), vals=self.vals + (IvElem.var(self.depth),),
        )

    def assume(self, c):
        return replace(self, cof=self.cof.conj(c))

    def lookup(self, name):
        for level in range(self.depth - 1, -1, -1):
            if self.names[level] == name:
                return level
        return None

    def eval(self, term):
        return eval_term(self.env(), term)

    def show(self, v):
        """値を正規形で表示する"""
        return pretty(quote(self.depth, v), list(reversed(self.names)))

    def show_term(self, term):
        return pretty(term, list(reversed(self.names)))


def empty_context(glob):
    return Context(glob)


# ---------------------------------------------------------------------------
# 同値の型（Glue が使う）
# ---------------------------------------------------------------------------

def is_contr_value(ty):
    """isContr A = Σ (c : A), Π (y : A), Path A c y"""
    return VSigma("c", ty, Native(
        lambda c: VPi("y", ty, Native(lambda y: VPathP("_", const_closure(ty), c, y)))
    ))


def fiber_value(fib, base, fun, point):
    """fiber f y = Σ (x : T), Path A y (f x)"""
    return VSigma("x", fib, Native(
        lambda x: VPathP("_", const_closure(base), point, do_app(fun, x))
    ))


def equiv_value(fib, base):
    """Equiv T A = Σ (f : T → A), Π (y : A), isContr (fiber f y)"""
    fun_ty = VPi("_", fib, const_closure(base))
    return VSigma("f", fun_ty, Native(
        lambda f: VPi("y", base, Native(lambda y: is_contr_value(fiber_value(fib, base, f, y))))
    ))


# ---------------------------------------------------------------------------
# 補助
# ---------------------------------------------------------------------------

def _strip(t):
    while isinstance(t, At):
        t = t.term
    return t


def _spine(t):
    """適用の列を (頭, 引数の列) に分ける"""
    args = []
    t = _strip(t)
    while isinstance(t, App):
        args.append(t.arg)
        t = _strip(t.fn)
    return t, list(reversed(args))


def _conv(ctx, ty, v, w):
    return conv_under(ctx.depth, ctx.cof, ty, v, w)


def _expect_type(ctx, expected, actual):
    if not _conv(ctx, None, expected, actual):
        raise TypeMismatch(
            f"型が一致しません: 期待 {ctx.show(expected)}, 実際 {ctx.show(actual)}",
            expected=ctx.show(expected), actual=ctx.show(actual),
        )


def _expect_boundary(ctx, ty, actual, expected, what):
    if not _conv(ctx, ty, actual, expected):
        raise BoundaryMismatch(
            f"{what}の境界が一致しません: 期待 {ctx.show(expected)}, 実際 {ctx.show(actual)}"
        )


# ---------------------------------------------------------------------------
# 区間と Cof
# ---------------------------------------------------------------------------

def check_interval(ctx, t):
    """区間項を検査してコアの区間項を返す"""
    match t:
        case At(span, inner):
            try:
                return check_interval(ctx, inner)
            except CheckerError as e:
                raise e.with_span(span)
        case Lit(value) if value in (0, 1):
            return IvZero() if value == 0 else IvOne()
        case IvZero() | IvOne():
            return t
        case Ident(name):
            level = ctx.lookup(name)
            if level is None:
                raise ScopeError(f"未定義の区間変数です: {name}")
            if ctx.kinds[level] != "interval":
                raise TypeMismatch(f"区間変数ではありません: {name}")
            return Var(ctx.depth - 1 - level)
        case Var(index):
            if ctx.kinds[ctx.depth - 1 - index] != "interval":
                raise TypeMismatch("区間変数ではありません")
            return t
        case IvMeet(left, right) | CofAnd(left, right):
            return IvMeet(check_interval(ctx, left), check_interval(ctx, right))
        case IvJoin(left, right) | CofOr(left, right):
            return IvJoin(check_interval(ctx, left), check_interval(ctx, right))
    raise TypeMismatch(f"区間項ではありません: {ctx.show_term(t)}")


def check_cof(ctx, c):
    """
    Cof の式を検査する

    Returns:
        (コアの式, 標準形)
    """
    match c:
        case At(span, inner):
            try:
                return check_cof(ctx, inner)
            except CheckerError as e:
                raise e.with_span(span)
        case CofTop():
            return c, Cof.top()
        case CofBot():
            return c, Cof.bot()
        case CofEq(term, eps):
            if eps not in (0, 1):
                raise TypeMismatch(f"端点は 0 か 1 です: {eps}")
            core = CofEq(check_interval(ctx, term), eps)
            return core, eval_cof(ctx.env(), core)
        case CofAnd(left, right):
            lc, lv = check_cof(ctx, left)
            rc, rv = check_cof(ctx, right)
            return CofAnd(lc, rc), lv.conj(rv)
        case CofOr(left, right):
            lc, lv = check_cof(ctx, left)
            rc, rv = check_cof(ctx, right)
            return CofOr(lc, rc), lv.disj(rv)
    raise TypeMismatch(f"Cof の式ではありません: {ctx.show_term(c)}")


# ---------------------------------------------------------------------------
# 検査
# ---------------------------------------------------------------------------

def infer_type(ctx, t):
    """型として検査する。(コア項, 宇宙レベル) を返す"""
    core, ty = infer(ctx, t)
    if not isinstance(ty, VUniv):
        raise UniverseError(f"型ではありません: {ctx.show_term(core)} : {ctx.show(ty)}")
    return core, ty.level


def check_motive(ctx, motive, dom):
    """
    動機 P : dom → U_l を検査する（注釈のない λ も受け付ける）

    Returns:
        (コア項, レベル)
    """
    m = _strip(motive)
    if isinstance(m, Lam):
        inner = ctx.bind(m.name, dom)
        body, level = infer_type(inner, m.body)
        return Lam(m.name, body, quote(ctx.depth, dom)), level
    core, ty = infer(ctx, motive)
    if not isinstance(ty, VPi) or not _conv(ctx, None, ty.dom, dom):
        raise TypeMismatch(f"動機の型が正しくありません: {ctx.show(ty)}")
    cod = ty.cod.apply(var(ty.dom, ctx.depth))
    if not isinstance(cod, VUniv):
        raise UniverseError(f"動機の値域が宇宙ではありません: {ctx.show(ty)}")
    return core, cod.level


def check(ctx, t, ty):
    """
    t が型 ty を持つかを検査し、精緻化したコア項を返す

    Args:
        ctx: 文脈
        t: 表層項
        ty: 期待される型（値）

    Returns:
        Term: コア項
    """
    match t:
        case At(span, inner):
            try:
                return check(ctx, inner, ty)
            except CheckerError as e:
                raise e.with_span(span)
        case Lam(name, body, dom):
            match ty:
                case VPi(_, pdom, cod):
                    if dom is not None:
                        if isinstance(pdom, VIntervalT):
                            if not isinstance(_strip(dom), IntervalT):
                                raise TypeMismatch("区間の束縛子が期待されています")
                        else:
                            dcore, _ = infer_type(ctx, dom)
                            _expect_type(ctx, pdom, ctx.eval(dcore))
                    if isinstance(pdom, VIntervalT):
                        inner = ctx.bind_interval(name)
                        body_core = check(inner, body, cod.apply(IvElem.var(ctx.depth)))
                        return Lam(name, body_core, IntervalT())
                    inner = ctx.bind(name, pdom)
                    body_core = check(inner, body, cod.apply(var(pdom, ctx.depth)))
                    return Lam(name, body_core, quote(ctx.depth, pdom))
                case VPathP(_, fam, left, right):
                    inner = ctx.bind_interval(name)
                    body_core = check(inner, body, fam.apply(IvElem.var(ctx.depth)))
                    env = ctx.env()
                    _expect_boundary(ctx, fam.apply(IvElem.zero()), eval_term(env.extend(IvElem.zero()), body_core), left, "道の左端")
                    _expect_boundary(ctx, fam.apply(IvElem.one()), eval_term(env.extend(IvElem.one()), body_core), right, "道の右端")
                    return PLam(name, body_core)
            raise TypeMismatch(f"λ に対して関数でも道でもない型が期待されています: {ctx.show(ty)}")
        case Pair(a, b) if isinstance(ty, VSigma):
            a_core = check(ctx, a, ty.dom)
            b_core = check(ctx, b, ty.cod.apply(ctx.eval(a_core)))
            return Pair(a_core, b_core)
        case Lit(value) if isinstance(ty, VNat):
            return numeral(value)
        case Inl(v) if isinstance(ty, VSum):
            return Inl(check(ctx, v, ty.left))
        case Inr(v) if isinstance(ty, VSum):
            return Inr(check(ctx, v, ty.right))
        case Absurd(None, target):
            return Absurd(quote(ctx.depth, ty), check(ctx, target, VEmpty()))
        case LiftIn(term) if isinstance(ty, VLift):
            return LiftIn(check(ctx, term, ty.ty))
        case Sys(branches, _):
            return _check_sys(ctx, branches, ty)
        case GlueElem(cof, fib_elem, base_elem):
            return _check_glue_elem(ctx, cof, fib_elem, base_elem, ty)
        case IdPair(path, cof) if isinstance(ty, VId):
            return _check_id_pair(ctx, path, cof, ty)
        case Ident("refl") if isinstance(ty, VId):
            if not _conv(ctx, ty.ty, ty.left, ty.right):
                raise TypeMismatch(f"refl の端点が一致しません: {ctx.show(ty.left)} と {ctx.show(ty.right)}")
            return IdPair(PLam("_", quote(ctx.depth + 1, ty.left)), CofTop())
        case Con(hit_name, cname, args, None):
            return _check_con(ctx, hit_name, cname, list(args), ty)
        case App() if _is_con_head(ctx, t):
            return _check_con_spine(ctx, t, ty)
        case Ident(name) if _is_con_name(ctx, name):
            return _check_con_spine(ctx, t, ty)
    core, actual = infer(ctx, t)
    _expect_type(ctx, ty, actual)
    return core


def _check_sys(ctx, branches, ty):
    cores = []
    values = []
    cover = Cof.bot()
    for c, term in branches:
        c_core, c_val = check_cof(ctx, c)
        inner = ctx.assume(c_val)
        t_core = check(inner, term, ty)
        cores.append((c_core, t_core))
        values.append((c_val, ctx.eval(t_core)))
        cover = cover.disj(c_val)
    for k, (c1, v1) in enumerate(values):
        for c2, v2 in values[k + 1:]:
            both = c1.conj(c2)
            if not conv_under(ctx.depth, ctx.cof.conj(both), ty, v1, v2):
                raise BoundaryMismatch(f"部分要素の枝が重なりで一致しません: {both}")
    if not cof_entails(ctx.cof, cover, ctx.depth):
        raise BoundaryMismatch(f"部分要素が仮定 {ctx.cof} を覆っていません（{cover}）")
    return Sys(tuple(cores), quote(ctx.depth, ty))


def _check_glue_elem(ctx, cof, fib_elem, base_elem, ty):
    if not isinstance(ty, VGlue):
        raise TypeMismatch(f"glue には Glue 型が期待されています: {ctx.show(ty)}")
    c_core, c_val = check_cof(ctx, cof)
    if not (cof_entails(c_val, ty.cof, ctx.depth) and cof_entails(ty.cof, c_val, ctx.depth)):
        raise TypeMismatch(f"glue の面 {c_val} が型の面 {ty.cof} と一致しません")
    t_core = check(ctx.assume(c_val), fib_elem, ty.fib)
    a_core = check(ctx, base_elem, ty.base)
    fun = do_fst(ty.equiv)
    inner = ctx.assume(c_val)
    _expect_boundary(inner, ty.base, ctx.eval(a_core), do_app(fun, ctx.eval(t_core)), "glue")
    return GlueElem(c_core, t_core, a_core)


def _check_id_pair(ctx, path, cof, ty):
    path_ty = VPathP("_", const_closure(ty.ty), ty.left, ty.right)
    p_core = check(ctx, path, path_ty)
    c_core, c_val = check_cof(ctx, cof)
    const = VPLam("_", const_closure(ty.left))
    inner = ctx.assume(c_val)
    if not _conv(inner, path_ty, ctx.eval(p_core), const):
        raise BoundaryMismatch(f"idpair の道が面 {c_val} の上で定数ではありません")
    return IdPair(p_core, c_core)


def infer(ctx, t):
    """
    t の型を推論する

    Returns:
        (コア項, 型の値)
    """
    match t:
        case At(span, inner):
            try:
                return infer(ctx, inner)
            except CheckerError as e:
                raise e.with_span(span)
        case Ident(name):
            return _infer_ident(ctx, name)
        case Var(index):
            level = ctx.depth - 1 - index
            return t, ctx.types[level]
        case Univ(level):
            return t, VUniv(level + 1)
        case Lift(ty):
            core, level = infer_type(ctx, ty)
            return Lift(core), VUniv(level + 1)
        case LiftIn(term):
            core, ty = infer(ctx, term)
            return LiftIn(core), VLift(ty)
        case LiftOut(term):
            core, ty = infer(ctx, term)
            if not isinstance(ty, VLift):
                raise TypeMismatch(f"lower には Lift 型が必要です: {ctx.show(ty)}")
            return LiftOut(core), ty.ty
        case Pi(name, dom, cod) | Sigma(name, dom, cod):
            if isinstance(_strip(dom), IntervalT):
                raise UniverseError("区間 I は型ではありません")
            d_core, l1 = infer_type(ctx, dom)
            inner = ctx.bind(name, ctx.eval(d_core))
            c_core, l2 = infer_type(inner, cod)
            return type(t)(name, d_core, c_core), VUniv(max(l1, l2))
        case Lam(name, body, dom) if dom is not None:
            if isinstance(_strip(dom), IntervalT):
                raise CannotInfer("区間の λ の型は推論できません")
            d_core, _ = infer_type(ctx, dom)
            d_val = ctx.eval(d_core)
            inner = ctx.bind(name, d_val)
            b_core, b_ty = infer(inner, body)
            closure_body = quote(ctx.depth + 1, b_ty)
            return Lam(name, b_core, d_core), VPi(name, d_val, Closure(ctx.env(), closure_body))
        case Lam():
            raise CannotInfer("注釈のない λ の型は推論できません")
        case App():
            return _infer_spine(ctx, t)
        case Pair(a, b):
            a_core, a_ty = infer(ctx, a)
            b_core, b_ty = infer(ctx, b)
            return Pair(a_core, b_core), VSigma("_", a_ty, const_closure(b_ty))
        case Fst(p):
            core, ty = infer(ctx, p)
            if not isinstance(ty, VSigma):
                raise TypeMismatch(f"射影には Σ 型が必要です: {ctx.show(ty)}")
            return Fst(core), ty.dom
        case Snd(p):
            core, ty = infer(ctx, p)
            if not isinstance(ty, VSigma):
                raise TypeMismatch(f"射影には Σ 型が必要です: {ctx.show(ty)}")
            return Snd(core), ty.cod.apply(do_fst(ctx.eval(core)))
        case NatT():
            return t, VUniv(0)
        case Zero():
            return t, VNat()
        case Lit(value):
            return numeral(value), VNat()
        case Suc(pred):
            return Suc(check(ctx, pred, VNat())), VNat()
        case NatRec(motive, z, s, target):
            return _infer_natrec(ctx, motive, z, s, target)
        case UnitT() | EmptyT():
            return t, VUniv(0)
        case Star():
            return t, VUnit()
        case Absurd(ty, target) if ty is not None:
            ty_core, _ = infer_type(ctx, ty)
            return Absurd(ty_core, check(ctx, target, VEmpty())), ctx.eval(ty_core)
        case SumT(left, right):
            l_core, l1 = infer_type(ctx, left)
            r_core, l2 = infer_type(ctx, right)
            return SumT(l_core, r_core), VUniv(max(l1, l2))
        case Case(motive, left, right, target):
            return _infer_case(ctx, motive, left, right, target)
        case PathP(name, fam, left, right):
            inner = ctx.bind_interval(name)
            f_core, level = infer_type(inner, fam)
            env = ctx.env()
            l_core = check(ctx, left, eval_term(env.extend(IvElem.zero()), f_core))
            r_core = check(ctx, right, eval_term(env.extend(IvElem.one()), f_core))
            return PathP(name, f_core, l_core, r_core), VUniv(level)
        case PApp(path, arg):
            p_core, p_ty = infer(ctx, path)
            return _apply(ctx, p_core, p_ty, arg)
        case HComp(ty, cof, eps, name, body):
            return _infer_hcomp(ctx, ty, cof, eps, name, body)
        case Transp(name, fam, cof, eps, arg):
            return _infer_transp(ctx, name, fam, cof, eps, arg)
        case Glue(base, cof, fib, equiv):
            b_core, level = infer_type(ctx, base)
            c_core, c_val = check_cof(ctx, cof)
            inner = ctx.assume(c_val)
            f_core = check(inner, fib, VUniv(level))
            e_core = check(inner, equiv, equiv_value(inner.eval(f_core), inner.eval(b_core)))
            return Glue(b_core, c_core, f_core, e_core), VUniv(level)
        case Unglue(target):
            core, ty = infer(ctx, target)
            if not isinstance(ty, VGlue):
                raise TypeMismatch(f"unglue には Glue 型が必要です: {ctx.show(ty)}")
            d = ctx.depth
            return Unglue(core, quote(d, ty.base), quote_cof(d, ty.cof), quote(d, ty.fib), quote(d, ty.equiv)), ty.base
        case IdT(ty, left, right):
            ty_core, level = infer_type(ctx, ty)
            ty_val = ctx.eval(ty_core)
            return IdT(ty_core, check(ctx, left, ty_val), check(ctx, right, ty_val)), VUniv(level)
        case IdPath(term):
            core, ty = infer(ctx, term)
            if not isinstance(ty, VId):
                raise TypeMismatch(f"fromId には Id 型が必要です: {ctx.show(ty)}")
            return IdPath(core), VPathP("_", const_closure(ty.ty), ty.left, ty.right)
        case J(motive, base, proof):
            return _infer_j(ctx, motive, base, proof)
        case Hit(name, params):
            return _infer_hit_type(ctx, name, list(params))
        case Con() | HitElim():
            return _infer_spine(ctx, t)
        case Ann(term, ty):
            ty_core, _ = infer_type(ctx, ty)
            ty_val = ctx.eval(ty_core)
            return check(ctx, term, ty_val), ty_val
        case IntervalT():
            raise UniverseError("区間 I は型ではありません")
        case IvZero() | IvOne() | IvMeet() | IvJoin():
            raise TypeMismatch("区間項は項の位置に置けません")
        case Sys():
            raise CannotInfer("部分要素の型は推論できません")
    raise CannotInfer(f"型を推論できません: {ctx.show_term(t)}")


def _infer_ident(ctx, name):
    level = ctx.lookup(name)
    if level is not None:
        if ctx.kinds[level] == "interval":
            raise TypeMismatch(f"区間変数 {name} は項として使えません")
        return Var(ctx.depth - 1 - level), ctx.types[level]
    glob = ctx.glob
    if name in glob.defs:
        return Ref(name), glob.defs[name].ty_value
    if name in glob.hits or "." in name or name == "Loc":
        return _infer_spine(ctx, Ident(name))
    raise ScopeError(f"未定義の名前です: {name}")


def _apply(ctx, core, ty, arg):
    match ty:
        case VPi(_, dom, cod):
            if isinstance(dom, VIntervalT):
                r = check_interval(ctx, arg)
                return App(core, r), cod.apply(eval_interval(ctx.env(), r))
            a_core = check(ctx, arg, dom)
            return App(core, a_core), cod.apply(ctx.eval(a_core))
        case VPathP(_, fam, _, _):
            r = check_interval(ctx, arg)
            return PApp(core, r), fam.apply(eval_interval(ctx.env(), r))
    raise TypeMismatch(f"関数でも道でもない値に適用しています: {ctx.show(ty)}")


def _infer_natrec(ctx, motive, z, s, target):
    m_core, _ = check_motive(ctx, motive, VNat())
    mv = ctx.eval(m_core)
    z_core = check(ctx, z, do_app(mv, VZero()))
    step_ty = VPi("n", VNat(), Native(
        lambda n: VPi("ih", do_app(mv, n), Native(lambda _: do_app(mv, VSuc(n))))
    ))
    s_core = check(ctx, s, step_ty)
    t_core = check(ctx, target, VNat())
    return NatRec(m_core, z_core, s_core, t_core), do_app(mv, ctx.eval(t_core))


def _infer_case(ctx, motive, left, right, target):
    t_core, t_ty = infer(ctx, target)
    if not isinstance(t_ty, VSum):
        raise TypeMismatch(f"case には直和型が必要です: {ctx.show(t_ty)}")
    m_core, _ = check_motive(ctx, motive, t_ty)
    mv = ctx.eval(m_core)
    l_ty = VPi("a", t_ty.left, Native(lambda a: do_app(mv, VInl(a))))
    r_ty = VPi("b", t_ty.right, Native(lambda b: do_app(mv, VInr(b))))
    l_core = check(ctx, left, l_ty)
    r_core = check(ctx, right, r_ty)
    return Case(m_core, l_core, r_core, t_core), do_app(mv, ctx.eval(t_core))


def _infer_hcomp(ctx, ty, cof, eps, name, body):
    ty_core, _ = infer_type(ctx, ty)
    ty_val = ctx.eval(ty_core)
    c_core, c_val = check_cof(ctx, cof)
    inner = ctx.bind_interval(name)
    i = IvElem.var(ctx.depth)
    inner = inner.assume(cof_atom(i, eps).disj(c_val))
    b_core = check(inner, body, ty_val)
    return HComp(ty_core, c_core, eps, name, b_core), ty_val


def _infer_transp(ctx, name, fam, cof, eps, arg):
    inner = ctx.bind_interval(name)
    f_core, level = infer_type(inner, fam)
    c_core, c_val = check_cof(ctx, cof)
    env = ctx.env()
    line_at = lambda r: eval_term(env.extend(r), f_core)  # noqa: E731
    i = IvElem.var(ctx.depth)
    if not conv_under(ctx.depth + 1, ctx.cof.conj(c_val), VUniv(level), line_at(i), line_at(IvElem.const(eps))):
        raise LineNotConstant(f"型の線が {c_val} の上で定数ではありません")
    a_core = check(ctx, arg, line_at(IvElem.const(eps)))
    return Transp(name, f_core, c_core, eps, a_core), line_at(IvElem.const(1 - eps))


def _infer_j(ctx, motive, base, proof):
    p_core, p_ty = infer(ctx, proof)
    if not isinstance(p_ty, VId):
        raise TypeMismatch(f"J には Id 型の証明が必要です: {ctx.show(p_ty)}")
    a_ty, left, right = p_ty.ty, p_ty.left, p_ty.right
    m = _strip(motive)
    if isinstance(m, Lam) and isinstance(_strip(m.body), Lam):
        inner_lam = _strip(m.body)
        c1 = ctx.bind(m.name, a_ty)
        y = c1.vals[-1]
        c2 = c1.bind(inner_lam.name, VId(a_ty, left, y))
        body_core, _ = infer_type(c2, inner_lam.body)
        m_core = Lam(m.name, Lam(inner_lam.name, body_core, quote(ctx.depth + 1, VId(a_ty, left, y))), quote(ctx.depth, a_ty))
    else:
        m_core, m_ty = infer(ctx, motive)
        if not isinstance(m_ty, VPi):
            raise TypeMismatch(f"J の動機の型が正しくありません: {ctx.show(m_ty)}")
    mv = ctx.eval(m_core)
    refl = VIdPair(VPLam("_", const_closure(left)), Cof.top())
    d_core = check(ctx, base, do_app(do_app(mv, left), refl))
    d = ctx.depth
    core = J(m_core, d_core, p_core, quote(d, a_ty), quote(d, left), quote(d, right))
    return core, do_app(do_app(mv, right), ctx.eval(p_core))


# ---------------------------------------------------------------------------
# HIT の型・コンストラクタ・消去
# ---------------------------------------------------------------------------

_PASTECONE_HITS = ("KB", "JB")
_LOC_CONSTRUCTORS = {"eta": "alpha", "ext": "ext", "isext": "isext", "pastecone": "pastecone"}


def _is_con_name(ctx, name):
    if "." not in name:
        return False
    head, _, tail = name.partition(".")
    if head == "Loc":
        return tail in _LOC_CONSTRUCTORS
    decl = ctx.glob.hits.get(head)
    if decl is None:
        return False
    if head in _PASTECONE_HITS and tail in ("ext", "isext"):
        return True
    return any(c.name == tail for c in decl.constructors)


def _is_con_head(ctx, t):
    head, _ = _spine(t)
    return isinstance(head, Ident) and _is_con_name(ctx, head.name)


def _desugar_con(name, args):
    """H.c の表層形を (HIT 名, コンストラクタ名, 引数) にする"""
    head, _, tail = name.partition(".")
    if head == "Loc":
        head, tail = "JB", _LOC_CONSTRUCTORS[tail]
    if tail == "ext":
        if len(args) != 2:
            raise TypeMismatch(f"{name} は引数を 2 つ取ります")
        return head, "pastecone", [args[0], Con("Cone", "inl", (Star(),)), args[1]]
    if tail == "isext":
        if len(args) != 4:
            raise TypeMismatch(f"{name} は引数を 4 つ取ります")
        return head, "pastecone", [args[0], Con("Cone", "inr", (args[2], args[3])), args[1]]
    return head, tail, list(args)


def _check_con_spine(ctx, t, ty):
    head, args = _spine(t)
    hit_name, cname, args = _desugar_con(head.name, args)
    return _check_con(ctx, hit_name, cname, args, ty)


def _check_con(ctx, hit_name, cname, args, ty):
    decl = ctx.glob.hits.get(hit_name)
    if decl is None:
        raise ScopeError(f"未定義の HIT です: {hit_name}")
    if not (isinstance(ty, VHit) and ty.decl.name == hit_name):
        raise TypeMismatch(f"{hit_name}.{cname} には {hit_name} 型が期待されます: 実際 {ctx.show(ty)}")
    ctor = decl.constructor(cname)
    if len(args) != len(ctor.args):
        raise TypeMismatch(f"{hit_name}.{cname} は引数を {len(ctor.args)} 個取ります（{len(args)} 個）")
    env = Env(ctx.glob, tuple(ty.params))
    cores = []
    for carg, arg in zip(ctor.args, args):
        if carg.kind == "interval":
            core = check_interval(ctx, arg)
            env = env.extend(eval_interval(ctx.env(), core))
        else:
            core = check(ctx, arg, eval_term(env, carg.ty))
            env = env.extend(ctx.eval(core))
        cores.append(core)
    params = tuple(quote(ctx.depth, p) for p in ty.params)
    return Con(hit_name, cname, tuple(cores), params)


def _infer_hit_type(ctx, name, args):
    decl = ctx.glob.hits[name]
    if len(args) != len(decl.params):
        raise TypeMismatch(f"{name} はパラメータを {len(decl.params)} 個取ります（{len(args)} 個）")
    env = Env(ctx.glob, ())
    cores = []
    for (_, pty), arg in zip(decl.params, args):
        core = check(ctx, arg, eval_term(env, pty))
        env = env.extend(ctx.eval(core))
        cores.append(core)
    return Hit(name, tuple(cores)), VUniv(decl.level)


def _loc_type(args):
    if len(args) != 3:
        raise TypeMismatch("Loc は引数を 3 つ取ります")
    return hit.loc_term(*args)


def _infer_spine(ctx, t):
    head, args = _spine(t)
    if isinstance(head, Con):
        decl = ctx.glob.hits[head.hit]
        if head.params is None and decl.params:
            raise CannotInfer(f"{head.hit}.{head.cname} のパラメータが分かりません（型注釈が必要です）")
        ty = VHit(decl, tuple(ctx.eval(p) for p in (head.params or ())))
        return _check_con(ctx, head.hit, head.cname, list(head.args) + args, ty), ty
    if isinstance(head, Ident):
        name = head.name
        glob = ctx.glob
        if ctx.lookup(name) is None and name not in glob.defs:
            if name == "Loc":
                return infer(ctx, _loc_type(args))
            if name in glob.hits:
                return _infer_hit_type(ctx, name, args)
            if "." in name:
                hit_name, _, tail = name.partition(".")
                if hit_name == "Loc":
                    hit_name = "JB"
                if tail == "elim" and hit_name in glob.hits:
                    return _infer_elim(ctx, glob.hits[hit_name], args)
                if _is_con_name(ctx, name):
                    hit_name, cname, cargs = _desugar_con(name, args)
                    decl = glob.hits[hit_name]
                    if decl.params:
                        raise CannotInfer(f"{name} のパラメータが分かりません（型注釈が必要です）")
                    ty = VHit(decl, ())
                    return _check_con(ctx, hit_name, cname, cargs, ty), ty
                raise ScopeError(f"未定義の名前です: {name}")
    core, ty = infer(ctx, head)
    for arg in args:
        core, ty = _apply(ctx, core, ty, arg)
    return core, ty


def clause_type(decl, params, motive, ctor):
    """コンストラクタ ctor の節の型: Π 引数, Π 帰納法の仮定, P (c 引数)"""
    glob = decl.glob
    recs = ctor.rec_positions()

    def ih_type(ty, value):
        if isinstance(ty, VPi):
            return VPi(ty.name, ty.dom, Native(lambda b: ih_type(ty.cod.apply(b), do_app(value, b))))
        return do_app(motive, value)

    def hyps(args, m):
        if m == len(recs):
            return do_app(motive, hit.make_con(decl, params, ctor.name, args))
        k = recs[m]
        arg_ty = eval_term(Env(glob, tuple(params) + tuple(args[:k])), ctor.args[k].ty)
        return VPi("ih", ih_type(arg_ty, args[k]), Native(lambda _: hyps(args, m + 1)))

    def telescope(k, args):
        if k == len(ctor.args):
            return hyps(args, 0)
        carg = ctor.args[k]
        if carg.kind == "interval":
            dom = INTERVAL
        else:
            dom = eval_term(Env(glob, tuple(params) + args), carg.ty)
        return VPi(carg.name, dom, Native(lambda a: telescope(k + 1, args + (a,))))

    return telescope(0, ())


def _bind_ctor_args(ctx, decl, params, ctor):
    """コンストラクタの引数を新しい変数として文脈に加える"""
    env = Env(decl.glob, tuple(params))
    for carg in ctor.args:
        if carg.kind == "interval":
            ctx = ctx.bind_interval(carg.name)
        else:
            ctx = ctx.bind(carg.name, eval_term(env, carg.ty))
        env = env.extend(ctx.vals[-1])
    return ctx, ctx.vals[len(ctx.vals) - len(ctor.args):]


def check_boundaries(ctx, decl, params, motive, clauses):
    """
    節が簡約の境界条件を満たすかを検査する

    簡約 R ↦ t を持つコンストラクタについて、R の下で節の値が t の消去と
    一致しなければならない。
    """
    for ctor in decl.constructors:
        for red in ctor.reductions:
            if isinstance(red, hit.ConeBaseReduction):
                _check_cone_boundary(ctx, decl, params, motive, clauses, ctor, red)
                continue
            inner, args = _bind_ctor_args(ctx, decl, params, ctor)
            env = Env(decl.glob, tuple(params) + tuple(args))
            r_val = eval_cof(env, red.cof)
            lhs = hit.apply_clause(decl, params, motive, clauses, ctor.name, args)
            rhs = hit.do_elim(decl, params, motive, clauses, eval_term(env, red.target))
            ty = do_app(motive, VCon(decl, tuple(params), ctor.name, tuple(args)))
            if not conv_under(inner.depth, inner.cof.conj(r_val), ty, lhs, rhs):
                raise BoundaryMismatch(
                    f"{decl.name}.{ctor.name} の節が境界 {red.describe()} で一致しません"
                )


def _check_cone_boundary(ctx, decl, params, motive, clauses, ctor, red):
    glob = decl.glob
    cone = glob.hits["Cone"]
    env = Env(glob, tuple(params))
    a_ty = eval_term(env, ctor.args[0].ty)
    c1 = ctx.bind("a", a_ty)
    a = c1.vals[-1]
    fam = eval_term(env.extend(a), ctor.args[1].ty).params[0]
    c2 = c1.bind("b", fam)
    b = c2.vals[-1]
    cone_val = VCon(cone, (fam,), "inr", (b, IvElem.one()))
    f_ty = eval_term(env.extend(a, cone_val), ctor.args[2].ty)
    c3 = c2.bind("f", f_ty)
    f = c3.vals[-1]
    lhs = hit.apply_clause(decl, params, motive, clauses, ctor.name, (a, cone_val, f))
    rhs = hit.do_elim(decl, params, motive, clauses, do_app(f, b))
    if not conv_under(c3.depth, c3.cof, do_app(motive, do_app(f, b)), lhs, rhs):
        raise BoundaryMismatch(f"{decl.name}.{ctor.name} の節が境界 {red.describe()} で一致しません")


def _infer_elim(ctx, decl, args):
    n = len(decl.constructors)
    if len(args) != n + 2:
        raise TypeMismatch(f"{decl.name}.elim は動機・{n} 個の節・対象を取ります（{len(args)} 個）")
    motive, clause_terms, target = args[0], args[1:-1], args[-1]
    t_core, t_ty = infer(ctx, target)
    if not (isinstance(t_ty, VHit) and t_ty.decl.name == decl.name):
        raise TypeMismatch(f"{decl.name}.elim の対象の型が違います: {ctx.show(t_ty)}")
    params = t_ty.params
    m_core, _ = check_motive(ctx, motive, t_ty)
    mv = ctx.eval(m_core)
    c_cores = []
    for ctor, term in zip(decl.constructors, clause_terms):
        try:
            c_cores.append(check(ctx, term, clause_type(decl, params, mv, ctor)))
        except CheckerError as e:
            e.message = f"{decl.name}.{ctor.name} の節: {e.message}"
            raise
    c_vals = tuple(ctx.eval(c) for c in c_cores)
    check_boundaries(ctx, decl, params, mv, c_vals)
    core = HitElim(decl.name, m_core, tuple(c_cores), t_core, tuple(quote(ctx.depth, p) for p in params))
    return core, do_app(mv, ctx.eval(t_core))


# ---------------------------------------------------------------------------
# 宣言
# ---------------------------------------------------------------------------

class Checker:
    """
    検査セッション。大域表を持ち、宣言を順に検査して登録する

    組み込みの HIT（Trunc, LFR, Susp, Cone, KB, Loc）は生成時に登録する。
    """

    def __init__(self, glob=None, builtins=True):
        self.glob = glob if glob is not None else Globals()
        if builtins and "Trunc" not in self.glob.hits:
            self._load_builtins()

    def _load_builtins(self):
        import parser as surface
        for decl in surface.parse_text(hit.BUILTIN_SOURCE, "<builtin>").decls:
            self.declare_hit(decl, builtin=True)
        self.glob.add_hit(hit.kb_decl(self.glob))
        self.glob.add_hit(hit.jb_decl(self.glob))
        logger.debug(f"組み込み HIT を登録しました: {sorted(self.glob.hits)}")

    def context(self):
        return empty_context(self.glob)

    def _fresh_name(self, name):
        if name in self.glob.defs or name in self.glob.hits:
            raise ScopeError(f"名前が重複しています: {name}")

    def define(self, name, ty, body, annotation=None, origin=None):
        """def name : ty = body を検査して登録する"""
        self._fresh_name(name)
        ctx = self.context()
        ty_core, _ = infer_type(ctx, ty)
        ty_val = ctx.eval(ty_core)
        body_core = check(ctx, body, ty_val)
        entry = GlobalEntry(name, ty_core, ty_val, body_core, annotation, origin)
        self.glob.add_def(entry)
        logger.debug(f"定義を登録しました: {name}")
        return entry

    def postulate(self, name, ty, annotation=None, origin=None):
        self._fresh_name(name)
        ctx = self.context()
        ty_core, _ = infer_type(ctx, ty)
        entry = GlobalEntry(name, ty_core, ctx.eval(ty_core), None, annotation, origin)
        self.glob.add_def(entry)
        return entry

    def declare_hit(self, d, builtin=False):
        """
        表層の HIT 宣言を検査して登録する

        引数の型・簡約の Cof と行き先を検査し、同じコンストラクタの簡約が
        重なる所では行き先が一致することを要求する。
        """
        self._fresh_name(d.name)
        if any(e not in (0, 1) for e in d.hcomp_dirs):
            raise HitDeclError(f"hcomp の方向は 0 か 1 です: {d.hcomp_dirs}")
        ctx = self.context()
        params = []
        level = 0
        for pname, pty in d.params:
            core, _ = infer_type(ctx, pty)
            params.append((pname, core))
            ctx = ctx.bind(pname, ctx.eval(core))
        decl = hit.HitDecl(
            d.name, params, [], frozenset(d.hcomp_dirs), 0, None,
            hit.BUILTIN_POLYNOMIALS.get(d.name) if builtin else None, self.glob, builtin,
        )
        self.glob.add_hit(decl)
        try:
            for c in d.ctors:
                if any(existing.name == c.name for existing in decl.constructors):
                    raise HitDeclError(f"コンストラクタ名が重複しています: {c.name}")
                try:
                    ctor, ctor_level = self._declare_ctor(ctx, decl, c, len(params))
                except CheckerError as e:
                    raise e.with_span(c.span)
                level = max(level, ctor_level)
                decl.constructors.append(ctor)
            decl.level = level
        except CheckerError:
            del self.glob.hits[d.name]
            raise
        logger.debug(f"HIT を登録しました: {d.name}（{decl.summary()}）")
        return decl

    def _declare_ctor(self, ctx, decl, c, nparams):
        specs = []
        level = 0
        cctx = ctx
        for k, (aname, aty) in enumerate(c.args):
            if isinstance(_strip(aty), IntervalT):
                specs.append(hit.ArgSpec(aname, "interval", IntervalT()))
                cctx = cctx.bind_interval(aname)
                continue
            if hit.contains_self(aty):
                if not hit.rec_shape_ok(aty):
                    raise HitDeclError(f"再帰的な引数 {aname} は Self か B → Self の形でなければなりません")
                core, lv = infer_type(cctx, hit.resolve_self(aty, decl.name, nparams, k))
                kind = "rec"
            else:
                core, lv = infer_type(cctx, aty)
                kind = "term"
            level = max(level, lv)
            specs.append(hit.ArgSpec(aname, kind, core))
            cctx = cctx.bind(aname, cctx.eval(core))
        self_ty = VHit(decl, tuple(cctx.vals[:nparams]))
        reductions = []
        for cof, target in c.reductions:
            c_core, c_val = check_cof(cctx, cof)
            t_core = check(cctx.assume(c_val), target, self_ty)
            reductions.append((hit.Reduction(c_core, t_core), c_val))
        for k, (r1, v1) in enumerate(reductions):
            for r2, v2 in reductions[k + 1:]:
                both = v1.conj(v2)
                if both.is_bot():
                    continue
                t1 = cctx.eval(r1.target)
                t2 = cctx.eval(r2.target)
                if not conv_under(cctx.depth, cctx.cof.conj(both), self_ty, t1, t2):
                    raise HitDeclError(f"{c.name} の簡約が {both} で重なり、行き先が一致しません")
        return hit.Constructor(c.name, specs, [r for r, _ in reductions]), level

    def infer_closed(self, term):
        return infer(self.context(), term)

    def check_closed(self, term, ty):
        return check(self.context(), term, ty)
