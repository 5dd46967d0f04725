# hit.py - 簡約付き余ファイブラント W 型としての HIT（宣言・コンストラクタ・消去・輸送）
import logging
from dataclasses import dataclass, field, fields, replace

import evaluate
import fibration
from cof import cof_atom
from errors import HitDeclError, InternalError
from interval import IvElem
from syntax import (
    App, BINDERS, Case, Con, Hit, Lam, Pi, SelfT, SumT,
    HitElim as HitElimT, Term, Univ, Var, shift, strip_spans,
)
from values import (
    Env, NHComp, NHitElim, NSys, Native, VCon, VHit, VHitHComp, VLam,
    VNeutral, VPi, VStar,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# 宣言
# ---------------------------------------------------------------------------

@dataclass
class ArgSpec:
    """
    コンストラクタの引数

    kind は "interval"（区間）、"term"（通常の型）、"rec"（Self または B → Self）。
    ty は宣言の引数までを文脈とする項で、Self は Hit 項に置き換え済み。
    """
    name: str
    kind: str
    ty: Term


@dataclass
class Reduction:
    """cof が成り立つとき target に簡約する（文脈はパラメータ + 引数）"""
    cof: object
    target: Term

    def fire(self, decl, params, args):
        env = Env(decl.glob, tuple(params) + tuple(args))
        if evaluate.eval_cof(env, self.cof).is_top():
            return evaluate.eval_term(env, self.target)
        return None

    def describe(self):
        return str(self.cof)


class ConeBaseReduction:
    """pastecone(a, inr(b, 1), f) ≡ f(b)"""

    def __init__(self, cone_pos, fun_pos):
        self.cone_pos = cone_pos
        self.fun_pos = fun_pos

    def fire(self, decl, params, args):
        c = args[self.cone_pos]
        if isinstance(c, VCon) and c.cname == "inr" and c.args[1].is_one():
            return evaluate.do_app(args[self.fun_pos], c.args[0])
        return None

    def describe(self):
        return "c = inr(b, 1)"


@dataclass
class Constructor:
    name: str
    args: list
    reductions: list = field(default_factory=list)

    def rec_positions(self):
        return [k for k, a in enumerate(self.args) if a.kind == "rec"]


@dataclass
class HitDecl:
    """
    簡約付き多項式 (Y, X, R, k) としての HIT 宣言

    Args:
        name: 型の名前
        params: (名前, 型の項) の列
        constructors: Constructor の列
        hcomp_dirs: hcomp を自由に加える方向の集合（空なら素朴な HIT）
        level: 型の宇宙レベル
        transport: 独自の輸送（None なら構造的な輸送）
        polynomial: 多項式の要約（表示用）
    """
    name: str
    params: list
    constructors: list
    hcomp_dirs: frozenset = frozenset()
    level: int = 0
    transport: object = None
    polynomial: str = None
    glob: object = None
    builtin: bool = False

    def constructor(self, cname):
        for c in self.constructors:
            if c.name == cname:
                return c
        raise HitDeclError(f"{self.name} にコンストラクタ {cname} はありません")

    def index_of(self, cname):
        for k, c in enumerate(self.constructors):
            if c.name == cname:
                return k
        raise HitDeclError(f"{self.name} にコンストラクタ {cname} はありません")

    def summary(self):
        return self.polynomial or polynomial_summary(self)


def polynomial_summary(decl):
    """宣言から Y・X・R の要約文字列を作る"""
    parts = []
    for c in decl.constructors:
        points = [a.name for a in c.args if a.kind == "term"]
        dims = [a.name for a in c.args if a.kind == "interval"]
        recs = [a.name for a in c.args if a.kind == "rec"]
        text = c.name
        if points:
            text += "(" + ", ".join(points) + ")"
        if dims:
            text += " × 𝕀^" + str(len(dims))
        if recs:
            text += " ; X = " + ", ".join(recs)
        if c.reductions:
            text += " ; R = " + " ∨ ".join(r.describe() for r in c.reductions)
        parts.append(text)
    if decl.hcomp_dirs:
        parts.append("Prop × " + str(len(decl.hcomp_dirs)))
    return " + ".join(parts)


def resolve_self(term, hit_name, nparams, offset):
    """
    Self を Hit(名前, パラメータ) に置き換える

    Args:
        term: 引数の型
        hit_name: HIT の名前
        nparams: パラメータの数
        offset: パラメータと term の間にある束縛子の数
    """
    if isinstance(term, SelfT):
        return Hit(hit_name, tuple(Var(offset + nparams - 1 - p) for p in range(nparams)))
    if not isinstance(term, Term):
        return term
    binders = BINDERS.get(type(term), {})
    changes = {}
    for f in fields(term):
        value = getattr(term, f.name)
        changes[f.name] = _resolve_value(value, hit_name, nparams, offset + binders.get(f.name, 0))
    return type(term)(**changes)


def _resolve_value(value, hit_name, nparams, offset):
    if isinstance(value, tuple):
        return tuple(_resolve_value(v, hit_name, nparams, offset) for v in value)
    if isinstance(value, Term):
        return resolve_self(value, hit_name, nparams, offset)
    return value


def contains_self(term):
    if isinstance(term, SelfT):
        return True
    if not isinstance(term, Term):
        return False
    for f in fields(term):
        value = getattr(term, f.name)
        items = value if isinstance(value, tuple) else (value,)
        if any(isinstance(v, Term) and contains_self(v) for v in items):
            return True
    return False


def rec_shape_ok(term):
    """再帰引数の型は Self か (b : B) → …Self の形だけを許す"""
    term = strip_spans(term)
    while isinstance(term, Pi):
        if contains_self(term.dom):
            return False
        term = term.cod
    return isinstance(term, SelfT)


def coproduct(name, left, right):
    """
    二つの宣言の余積（コンストラクタを並べる）。パラメータは左と同じであること

    Returns:
        HitDecl: 新しい宣言
    """
    if len(left.params) != len(right.params):
        raise HitDeclError("余積を取る宣言のパラメータが一致しません")
    names = [c.name for c in left.constructors]
    clash = [c.name for c in right.constructors if c.name in names]
    if clash:
        raise HitDeclError(f"コンストラクタ名が重複しています: {clash}")

    def rename(c, old):
        args = []
        for a in c.args:
            args.append(replace(a, ty=_rename_hit(a.ty, old, name)))
        reductions = [
            Reduction(r.cof, _rename_hit(r.target, old, name)) if isinstance(r, Reduction) else r
            for r in c.reductions
        ]
        return Constructor(c.name, args, reductions)

    ctors = [rename(c, left.name) for c in left.constructors] + [rename(c, right.name) for c in right.constructors]
    return HitDecl(
        name, list(left.params), ctors, left.hcomp_dirs | right.hcomp_dirs,
        max(left.level, right.level), None, None, left.glob,
    )


def _rename_hit(term, old, new):
    if isinstance(term, tuple):
        return tuple(_rename_hit(v, old, new) for v in term)
    if isinstance(term, Hit) and term.name == old:
        return Hit(new, tuple(_rename_hit(p, old, new) for p in term.params))
    if isinstance(term, (Con, HitElimT)) and term.hit == old:
        term = replace(term, hit=new)
    if not isinstance(term, Term):
        return term
    changes = {}
    for f in fields(term):
        value = getattr(term, f.name)
        if isinstance(value, tuple):
            changes[f.name] = tuple(_rename_hit(v, old, new) for v in value)
        else:
            changes[f.name] = _rename_hit(value, old, new)
    return type(term)(**changes)


# ---------------------------------------------------------------------------
# コンストラクタと消去
# ---------------------------------------------------------------------------

def make_con(decl, params, cname, args):
    """
    コンストラクタ適用。成り立つ簡約があれば即座に簡約する

    Returns:
        Value: 簡約後の値または VCon
    """
    ctor = decl.constructor(cname)
    if len(args) != len(ctor.args):
        raise InternalError(f"{decl.name}.{cname} の引数の数が違います")
    for red in ctor.reductions:
        result = red.fire(decl, params, args)
        if result is not None:
            return result
    return VCon(decl, tuple(params), cname, tuple(args))


def arg_types(decl, params, ctor, args):
    """各引数の型（値）。区間引数は None"""
    env = Env(decl.glob, tuple(params))
    result = []
    for carg, arg in zip(ctor.args, args):
        if carg.kind == "interval":
            result.append(None)
        else:
            result.append(evaluate.eval_term(env, carg.ty))
        env = env.extend(arg)
    return result


def _induction_hyp(decl, params, motive, clauses, ty, value):
    if isinstance(ty, VPi):
        return VLam(ty.name, ty.dom, Native(
            lambda b: _induction_hyp(decl, params, motive, clauses, ty.cod.apply(b), evaluate.do_app(value, b))
        ))
    return do_elim(decl, params, motive, clauses, value)


def apply_clause(decl, params, motive, clauses, cname, args):
    """コンストラクタ cname の節を引数と帰納法の仮定に適用する"""
    ctor = decl.constructor(cname)
    result = clauses[decl.index_of(cname)]
    for arg in args:
        result = evaluate.do_app(result, arg)
    types = arg_types(decl, params, ctor, args)
    for k in ctor.rec_positions():
        hyp = _induction_hyp(decl, params, motive, clauses, types[k], args[k])
        result = evaluate.do_app(result, hyp)
    return result


def do_elim(decl, params, motive, clauses, target):
    """
    依存消去 H.elim P clauses target

    点・道のコンストラクタでは節（引数の後に帰納法の仮定を取る）を適用し、
    hcomp ではファイブレーション構造で合成する。
    """
    match target:
        case VCon(_, _, cname, args):
            return apply_clause(decl, params, motive, clauses, cname, args)
        case VHitHComp(_, _, cof, eps, body):
            ty = VHit(decl, params)
            line = Native(lambda j: evaluate.do_app(motive, fibration.hfill(ty, cof, eps, body, j)))
            sides = Native(lambda i: do_elim(decl, params, motive, clauses, body.apply(i)))
            return fibration.comp(line, eps, cof, sides)
        case VNeutral(_, NSys(branches)):
            return VNeutral(None, NSys(tuple(
                (c, do_elim(decl, params, motive, clauses, b)) for c, b in branches
            )))
        case VNeutral(_, ne):
            return VNeutral(evaluate.do_app(motive, target), NHitElim(decl, tuple(params), motive, tuple(clauses), ne))
    raise InternalError(f"{decl.name} の元ではない値の消去です: {target!r}")


# ---------------------------------------------------------------------------
# ファイブレーション構造
# ---------------------------------------------------------------------------

def hcomp_hit(ty, cof, eps, u):
    decl = ty.decl
    if eps in decl.hcomp_dirs:
        return VHitHComp(decl, ty.params, cof, eps, u)
    return VNeutral(ty, NHComp(ty, cof, eps, u))


def transp_hit(generic, g, line, cof, eps, a):
    """HIT の線に沿った輸送。計算できなければ None"""
    decl = generic.decl
    if decl.transport is not None:
        return decl.transport(generic, g, line, cof, eps, a)
    return structural_transport(generic, g, line, cof, eps, a)


def _params_at(generic, g, r):
    return tuple(evaluate.act(p, {g: r}) for p in generic.params)


def structural_transport(generic, g, line, cof, eps, a):
    """
    引数の望遠鏡に沿って各引数を充填で運び、同じコンストラクタを作り直す。
    hcomp は運んだ系の hcomp に写す
    """
    decl = generic.decl
    end = IvElem.const(1 - eps)
    match a:
        case VCon(_, _, cname, args):
            ctor = decl.constructor(cname)
            fills = []
            moved = []
            for carg, arg in zip(ctor.args, args):
                if carg.kind == "interval":
                    fills.append(_const_fill(arg))
                    moved.append(arg)
                    continue
                ty_line = Native(_arg_line(decl, generic, g, carg, tuple(fills)))
                fill = _arg_fill(ty_line, cof, eps, arg)
                fills.append(fill)
                moved.append(fill(end))
            return make_con(decl, _params_at(generic, g, end), cname, tuple(moved))
        case VHitHComp(_, _, hcof, heps, body):
            ty_end = VHit(decl, _params_at(generic, g, end))
            return hcomp_hit(ty_end, hcof, heps, Native(lambda j: fibration.transp(line, cof, eps, body.apply(j))))
    return None


def _const_fill(value):
    return lambda r: value


def _arg_line(decl, generic, g, carg, prev):
    def at(r):
        env = Env(decl.glob, _params_at(generic, g, r) + tuple(f(r) for f in prev))
        return evaluate.eval_term(env, carg.ty)
    return at


def _arg_fill(ty_line, cof, eps, arg):
    return lambda r: fibration.transp_fill(ty_line, cof, eps, arg, r)


def k_transport(generic, g, line, cof, eps, a):
    """
    pastecone を持つ HIT の輸送（方向 0 のみ）

    ext(a, f) は素朴に運ぶ。isext(a, f, b, i) は素朴な答えと t(f(b)) との
    ずれを hcomp で補正し、簡約 pastecone(a, inr(b, 1), f) ≡ f(b) を保つ。
    """
    if eps != 0:
        return None
    decl = generic.decl
    if not (isinstance(a, VCon) and a.cname == "pastecone"):
        return structural_transport(generic, g, line, cof, eps, a)
    glob = decl.glob
    cone_decl = glob.hits["Cone"]
    ctor = decl.constructor("pastecone")
    a_arg, c, f = a.args
    zero, one = IvElem.zero(), IvElem.one()

    a_line = Native(lambda r: evaluate.eval_term(Env(glob, _params_at(generic, g, r)), ctor.args[0].ty))

    def fill_a(r):
        return fibration.transp_fill(a_line, cof, 0, a_arg, r)

    def fam_at(r):
        env = Env(glob, _params_at(generic, g, r) + (fill_a(r),))
        return evaluate.eval_term(env, ctor.args[1].ty).params[0]

    fam_line = Native(fam_at)
    k_line = Native(lambda r: VHit(decl, _params_at(generic, g, r)))
    params_end = _params_at(generic, g, one)
    a_end = fill_a(one)
    fam_end = fam_at(one)

    def move(x):
        return fibration.transp(k_line, cof, 0, x)

    g_fun = VLam("b", fam_end, Native(lambda b: move(evaluate.do_app(f, fibration.transp(fam_line, cof, 1, b)))))
    apex = make_con(cone_decl, (fam_end,), "inl", (VStar(),))

    def ext_end():
        return make_con(decl, params_end, "pastecone", (a_end, apex, g_fun))

    if isinstance(c, VCon) and c.cname == "inl":
        return ext_end()
    if not (isinstance(c, VCon) and c.cname == "inr"):
        return None

    b, r = c.args
    b_end = fibration.transp(fam_line, cof, 0, b)
    fam0 = fam_at(zero)

    def there(k):
        return fibration.transp_fill(fam_line, cof, 0, b, k)

    def back(k):
        # b から t_B⁻¹(t_B(b)) への道
        sub = Native(lambda m: fam_line.apply(m.meet(k)))
        return fibration.transp(sub, cof.disj(cof_atom(k, 0)), 1, there(k))

    def correction(j):
        # t_B⁻¹(t_B(b)) から b への道
        walls = cof_atom(j, 0).disj(cof_atom(j, 1)).disj(cof)

        def side(k):
            return evaluate.make_sys(fam0, [
                (cof_atom(j, 0), lambda: back(k)),
                (cof_atom(j, 1).disj(cof).disj(cof_atom(k, 0)), lambda: b),
            ])

        return fibration.hcomp(fam0, walls, 0, Native(side))

    k_end = VHit(decl, params_end)
    cone_end = make_con(cone_decl, (fam_end,), "inr", (b_end, r))

    def body(j):
        return evaluate.make_sys(k_end, [
            (cof_atom(j, 0), lambda: make_con(decl, params_end, "pastecone", (a_end, cone_end, g_fun))),
            (cof_atom(r, 0), ext_end),
            (cof_atom(r, 1), lambda: move(evaluate.do_app(f, correction(j)))),
            (cof, lambda: a),
        ])

    psi = cof.disj(cof_atom(r, 0)).disj(cof_atom(r, 1))
    return fibration.hcomp(k_end, psi, 0, Native(body))


# ---------------------------------------------------------------------------
# 組み込みの宣言（コア項で直接書くもの）
# ---------------------------------------------------------------------------

# 表層構文で宣言する組み込み HIT（セッション開始時に検査器が読む）
BUILTIN_SOURCE = """
hit Trunc (A : U0) where
  | inc (a : A)
  | sq (x : Self) (y : Self) (i : I) [i = 0 -> x, i = 1 -> y]
  hcomp 0 1

hit LFR (A : U0) where
  | inc (a : A)
  hcomp 0 1

hit Susp (A : U0) where
  | north
  | south
  | merid (a : A) (i : I) [i = 0 -> Susp.north, i = 1 -> Susp.south]
  hcomp 0 1

hit Cone (A : U0) where
  | inl (u : Unit)
  | inr (a : A) (i : I) [i = 0 -> Cone.inl tt]
"""

BUILTIN_POLYNOMIALS = {
    "Trunc": "A + (A × A × 𝕀) + (Prop × 2) ; R = (i = 0) ∨ (i = 1)",
    "LFR": "A + (Prop × 2)",
    "Susp": "2 + (A × 𝕀) + (Prop × 2) ; R = (i = 0) ∨ (i = 1)",
    "Cone": "1 + (A × 𝕀) ; R = (i = 0)",
    "KB": "Σ(a : A) Cone(B a) ; X = B a ; R = c = inr(b, 1) ; hcomp 0",
    "JB": "X + Σ(a : A) Cone(B a) ; X = B a ; R = c = inr(b, 1) ; hcomp 0",
}


def _cone_of(fam):
    return Hit("Cone", (fam,))


def kb_decl(glob):
    """K_B(A, B): pastecone(a, c : Cone(B a), f : B a → K_B)"""
    params = [("A", Univ(0)), ("B", Pi("a", Var(0), Univ(0)))]
    args = [
        ArgSpec("a", "term", Var(1)),
        ArgSpec("c", "term", _cone_of(App(Var(1), Var(0)))),
        ArgSpec("f", "rec", Pi("b", App(Var(2), Var(1)), Hit("KB", (Var(4), Var(3))))),
    ]
    pastecone = Constructor("pastecone", args, [ConeBaseReduction(1, 2)])
    return HitDecl(
        "KB", params, [pastecone], frozenset({0}), 0, k_transport,
        BUILTIN_POLYNOMIALS["KB"], glob, True,
    )


def jb_decl(glob):
    """
    J_B(A, B, X): alpha(x : X) と pastecone(a, c : Cone(B a), f : B a → J_B)

    A + X 上の K_{B′} で、B′(inr x) = 0 の錐を点 alpha x に潰したもの。
    """
    params = [("A", Univ(0)), ("B", Pi("a", Var(0), Univ(0))), ("X", Univ(0))]
    alpha = Constructor("alpha", [ArgSpec("x", "term", Var(0))])
    # 文脈 [A, B, X, a]
    args = [
        ArgSpec("a", "term", Var(2)),
        ArgSpec("c", "term", _cone_of(App(Var(2), Var(0)))),
        ArgSpec("f", "rec", Pi("b", App(Var(3), Var(1)), Hit("JB", (Var(5), Var(4), Var(3))))),
    ]
    pastecone = Constructor("pastecone", args, [ConeBaseReduction(1, 2)])
    return HitDecl(
        "JB", params, [alpha, pastecone], frozenset({0}), 0, k_transport,
        BUILTIN_POLYNOMIALS["JB"], glob, True,
    )


def hat_family(a_ty, b_fam):
    """B̂ : A + A → U0（B̂(inl a) = B a, B̂(inr a) = Susp(B a)）"""
    sum_ty = SumT(a_ty, a_ty)
    motive = Lam("_", Univ(0), sum_ty)
    right = Lam("y%", Hit("Susp", (App(shift(b_fam, 1), Var(0)),)), a_ty)
    return Lam("s%", Case(shift(motive, 1), shift(b_fam, 1), shift(right, 1), Var(0)), sum_ty)


def j_op_term(a_ty, b_fam, x_ty):
    return Hit("JB", (a_ty, b_fam, x_ty))


def loc_term(a_ty, b_fam, x_ty):
    """Loc_B(X) = J_{B̂}(X)"""
    return j_op_term(SumT(a_ty, a_ty), hat_family(a_ty, b_fam), x_ty)
