# fibration.py - 型に沿った hcomp / transp と、そこから導く fill・comp
import logging

import evaluate
import hit
from cof import Cof, cof_atom, cof_forall
from interval import IvElem
from values import (
    NHComp, NSys, NTransp, Native, VEmpty, VGlue, VHit, VId, VIdPair, VInl,
    VInr, VLam, VLift, VLiftIn, VNat, VNeutral, VPair, VPathP, VPi, VPLam,
    VSigma, VStar, VSuc, VSum, VUnit, VUniv, VZero, const_closure,
)

logger = logging.getLogger(__name__)


def _end(eps):
    return IvElem.const(1 - eps)


def _start(eps):
    return IvElem.const(eps)


# ---------------------------------------------------------------------------
# 導出される演算
# ---------------------------------------------------------------------------

def hfill(ty, cof, eps, u, r):
    """
    hcomp の充填。r = ε で底、r = 1-ε で hcomp の結果になる

    Args:
        ty: 型
        cof: 系の Cof
        eps: 方向
        u: 区間のクロージャ（(i=ε)∨cof の上で定義）
        r: 充填の位置（IvElem）
    """
    if eps == 0:
        body = Native(lambda k: u.apply(k.meet(r)))
    else:
        body = Native(lambda k: u.apply(k.join(r)))
    return hcomp(ty, cof.disj(cof_atom(r, eps)), eps, body)


def transp_fill(line, cof, eps, a, r):
    """輸送の充填。r = ε で a、r = 1-ε で transp の結果"""
    if eps == 0:
        sub = Native(lambda j: line.apply(r.meet(j)))
        return transp(sub, cof.disj(cof_atom(r, 0)), 0, a)
    sub = Native(lambda j: line.apply(r.join(j)))
    return transp(sub, cof.disj(cof_atom(r, 1)), 1, a)


def transport_to_end(line, eps, r, v, cof=None):
    """line(r) の元 v を line(1-ε) へ運ぶ"""
    cof = cof if cof is not None else Cof.bot()
    if eps == 0:
        sub = Native(lambda j: line.apply(r.join(j)))
        return transp(sub, cof.disj(cof_atom(r, 1)), 0, v)
    sub = Native(lambda j: line.apply(r.meet(j)))
    return transp(sub, cof.disj(cof_atom(r, 0)), 1, v)


def comp(line, eps, cof, u, const=None):
    """
    型の線に沿った合成（heterogeneous composition）

    u(i) は line(i) の元で (i=ε)∨cof の上で定義される。
    結果は line(1-ε) の元。const はその上で line が定数になる Cof。
    """
    body = Native(lambda i: transport_to_end(line, eps, i, u.apply(i), const))
    return hcomp(line.apply(_end(eps)), cof, eps, body)


# ---------------------------------------------------------------------------
# hcomp
# ---------------------------------------------------------------------------

def _head(v):
    """部分要素も含めた値の先頭コンストラクタ（揃わなければ None）"""
    match v:
        case VZero():
            return "zero"
        case VSuc():
            return "suc"
        case VInl():
            return "inl"
        case VInr():
            return "inr"
        case VNeutral(_, NSys(branches)):
            heads = {_head(b) for _, b in branches}
            if len(heads) == 1:
                return heads.pop()
    return None


def _generic_head(u):
    g = evaluate.generic_level()
    return _head(u.apply(IvElem.var(g)))


def hcomp(ty, cof, eps, u):
    """
    均質合成 hcomp^ε ty cof u

    Args:
        ty: 型（値）
        cof: 系の Cof（標準形）
        eps: 方向（0 なら 0 から 1 へ）
        u: 区間のクロージャ。u(ε) が底

    Returns:
        Value: ty(1-ε) の元
    """
    if cof.is_top():
        return u.apply(_end(eps))
    match ty:
        case VPi(name, dom, cod):
            return VLam(name, dom, Native(
                lambda x: hcomp(cod.apply(x), cof, eps, Native(lambda i: evaluate.do_app(u.apply(i), x)))
            ))
        case VSigma(_, dom, cod):
            first = Native(lambda i: evaluate.do_fst(u.apply(i)))
            line = Native(lambda j: cod.apply(hfill(dom, cof, eps, first, j)))
            second = comp(line, eps, cof, Native(lambda i: evaluate.do_snd(u.apply(i))))
            return VPair(hcomp(dom, cof, eps, first), second)
        case VPathP(name, fam, left, right):
            return VPLam(name, Native(lambda j: _hcomp_path_at(fam, left, right, cof, eps, u, j)))
        case VLift(inner):
            return VLiftIn(hcomp(inner, cof, eps, Native(lambda i: evaluate.do_lower(u.apply(i)))))
        case VUnit():
            return VStar()
        case VNat():
            return _hcomp_nat(ty, cof, eps, u)
        case VSum(left, right):
            return _hcomp_sum(ty, cof, eps, u)
        case VGlue():
            return _hcomp_glue(ty, cof, eps, u)
        case VHit():
            return hit.hcomp_hit(ty, cof, eps, u)
        case VUniv():
            return _hcomp_univ(cof, eps, u)
        case VId():
            result = _hcomp_id(ty, cof, eps, u)
            if result is not None:
                return result
    # 空型・中立な型では計算しない
    return VNeutral(ty, NHComp(ty, cof, eps, u))


def _hcomp_path_at(fam, left, right, cof, eps, u, j):
    side = cof.disj(cof_atom(j, 0)).disj(cof_atom(j, 1))

    def body(i):
        return evaluate.make_sys(fam.apply(j), [
            (cof_atom(j, 0), lambda: left),
            (cof_atom(j, 1), lambda: right),
            (cof.disj(cof_atom(i, eps)), lambda: evaluate.do_papp(u.apply(i), j)),
        ])

    return hcomp(fam.apply(j), side, eps, Native(body))


def _hcomp_nat(ty, cof, eps, u):
    head = _generic_head(u)
    if head == "zero":
        return VZero()
    if head == "suc":
        cap = u.apply(_start(eps))
        fallback = cap.pred if isinstance(cap, VSuc) else VZero()
        motive = const_closure(VNat())
        pred_case = VLam("n", VNat(), Native(lambda n: VLam("_", VNat(), Native(lambda _: n))))

        def pred(i):
            return evaluate.do_natrec(VLam("_", VNat(), motive), fallback, pred_case, u.apply(i))

        return VSuc(hcomp(VNat(), cof, eps, Native(pred)))
    return VNeutral(ty, NHComp(ty, cof, eps, u))


def _hcomp_sum(ty, cof, eps, u):
    head = _generic_head(u)
    if head not in ("inl", "inr"):
        return VNeutral(ty, NHComp(ty, cof, eps, u))
    cap = u.apply(_start(eps))
    side_ty = ty.left if head == "inl" else ty.right
    fallback = cap.value
    motive = VLam("_", ty, const_closure(side_ty))
    keep = VLam("x", side_ty, Native(lambda x: x))
    other = VLam("y", ty.right if head == "inl" else ty.left, const_closure(fallback))

    def project(i):
        if head == "inl":
            return evaluate.do_case(motive, keep, other, u.apply(i))
        return evaluate.do_case(motive, other, keep, u.apply(i))

    inner = hcomp(side_ty, cof, eps, Native(project))
    return VInl(inner) if head == "inl" else VInr(inner)


def _is_contr_type(ty):
    """isContr T = Σ (c : T), Π (z : T), Path T c z"""
    return VSigma("c", ty, Native(
        lambda c: VPi("z", ty, Native(lambda z: VPathP("_", const_closure(ty), c, z)))
    ))


def _is_equiv_type(dom, cod, fun):
    return VPi("y", cod, Native(lambda y: _is_contr_type(_fiber_type(dom, cod, y, fun))))


def _id_is_equiv(ty):
    """恒等写像の同値性。中心は (y, refl)、縮約は z.2 の接続"""
    def contr(y):
        fiber = _fiber_type(ty, ty, y, VLam("x", ty, Native(lambda x: x)))

        def to(z):
            p = evaluate.do_snd(z)
            return VPLam("i", Native(lambda i: VPair(
                evaluate.do_papp(p, i), VPLam("j", Native(lambda j: evaluate.do_papp(p, i.meet(j)))),
            )))

        return VPair(VPair(y, VPLam("_", const_closure(y))), VLam("z", fiber, Native(to)))

    return VLam("y", ty, Native(contr))


def transp_equiv(line, eps):
    """
    line(1-ε) から line(ε) への輸送と、その同値性

    同値性は恒等写像の同値性を、輸送の充填が作る型族に沿って運んで得る。

    Returns:
        Value: (f, isEquiv f) の対
    """
    start = line.apply(_end(eps))

    def fill(x, r):
        return transp_fill(line, Cof.bot(), 1 - eps, x, r)

    def family(r):
        fun = VLam("x", start, Native(lambda x: fill(x, r)))
        return _is_equiv_type(start, line.apply(r), fun)

    proof = transp(Native(family), Cof.bot(), 1 - eps, _id_is_equiv(start))
    fun = VLam("x", start, Native(lambda x: transp(line, Cof.bot(), 1 - eps, x)))
    return VPair(fun, proof)


def _hcomp_univ(cof, eps, u):
    # 底 u(ε) に、φ の上で u(1-ε) を逆向きの輸送で貼り付ける
    base = u.apply(_start(eps))
    fib = u.apply(_end(eps))
    return evaluate.make_glue(base, cof, fib, transp_equiv(u, eps))


def _id_cof(v):
    """Id の元の Cof 成分。部分要素なら枝ごとに面と組み合わせる"""
    match v:
        case VIdPair(_, c):
            return c
        case VNeutral(_, NSys(branches)):
            result = Cof.bot()
            for face, b in branches:
                c = _id_cof(b)
                if c is None:
                    return None
                result = result.disj(face.conj(c))
            return result
    return None


def _hcomp_id(ty, cof, eps, u):
    """
    Id 型の hcomp。道の成分を Path で合成し、Cof は φ と最後の面の Cof の連言

    最後の面の Cof が読めなければ None（呼び出し側で中立にする）
    """
    end_cof = _id_cof(u.apply(_end(eps)))
    if end_cof is None:
        return None
    path_ty = VPathP("_", const_closure(ty.ty), ty.left, ty.right)
    path = hcomp(path_ty, cof, eps, Native(lambda i: evaluate.do_idpath(u.apply(i))))
    return VIdPair(path, cof.conj(end_cof))


def _hcomp_glue(ty, cof, eps, u):
    base, gcof, fib, equiv = ty.base, ty.cof, ty.fib, ty.equiv
    fun = evaluate.do_fst(equiv)

    def unglued(i):
        return evaluate.do_unglue(u.apply(i), base, gcof, fib, equiv)

    fib_result = hcomp(fib, cof, eps, u)

    def base_body(i):
        return evaluate.make_sys(base, [
            (cof.disj(cof_atom(i, eps)), lambda: unglued(i)),
            (gcof, lambda: evaluate.do_app(fun, hfill(fib, cof, eps, u, i))),
        ])

    base_result = hcomp(base, cof.disj(gcof), eps, Native(base_body))
    return evaluate.make_glue_elem(gcof, fib_result, base_result)


# ---------------------------------------------------------------------------
# transp
# ---------------------------------------------------------------------------

def transp(line, cof, eps, a, name="i"):
    """
    輸送 transp^ε line cof a

    line の形は一時的な区間変数で評価して調べ、成分は区間代入で各点に戻す。

    Args:
        line: 区間のクロージャ（型の線）
        cof: その上で line が定数になる Cof
        eps: 方向
        a: line(ε) の元

    Returns:
        Value: line(1-ε) の元
    """
    if cof.is_top():
        return a
    g = evaluate.generic_level()
    generic = line.apply(IvElem.var(g))

    def at(v, r):
        return evaluate.act(v, {g: r})

    def at_clo(clo, r):
        return evaluate.act_closure(clo, {g: r})

    match generic:
        case VUniv() | VNat() | VUnit() | VEmpty():
            return a
        case VLift(inner):
            inner_line = Native(lambda i: at(inner, i))
            return VLiftIn(transp(inner_line, cof, eps, evaluate.do_lower(a)))
        case VPi(pname, dom, cod):
            dom_line = Native(lambda i: at(dom, i))

            def body(y):
                def back(i):
                    return transp_fill(dom_line, cof, 1 - eps, y, i)
                cod_line = Native(lambda i: at_clo(cod, i).apply(back(i)))
                return transp(cod_line, cof, eps, evaluate.do_app(a, back(_start(eps))))

            return VLam(pname, at(dom, _end(eps)), Native(body))
        case VSigma(_, dom, cod):
            dom_line = Native(lambda i: at(dom, i))
            first = evaluate.do_fst(a)

            def fill(i):
                return transp_fill(dom_line, cof, eps, first, i)

            cod_line = Native(lambda i: at_clo(cod, i).apply(fill(i)))
            return VPair(fill(_end(eps)), transp(cod_line, cof, eps, evaluate.do_snd(a)))
        case VSum(left, right):
            match a:
                case VInl(v):
                    return VInl(transp(Native(lambda i: at(left, i)), cof, eps, v))
                case VInr(v):
                    return VInr(transp(Native(lambda i: at(right, i)), cof, eps, v))
        case VPathP(pname, fam, left, right):
            def path_body(j):
                fam_line = Native(lambda i: at_clo(fam, i).apply(j))

                def side(i):
                    return evaluate.make_sys(None, [
                        (cof_atom(j, 0), lambda: at(left, i)),
                        (cof_atom(j, 1), lambda: at(right, i)),
                        (cof.disj(cof_atom(i, eps)), lambda: evaluate.do_papp(a, j)),
                    ])

                walls = cof.disj(cof_atom(j, 0)).disj(cof_atom(j, 1))
                return comp(fam_line, eps, walls, Native(side), cof)

            return VPLam(pname, Native(path_body))
        case VGlue():
            return _transp_glue(generic, g, cof, eps, a)
        case VId(ty, left, right):
            if isinstance(a, VIdPair):
                path_line = Native(lambda i: VPathP("_", const_closure(at(ty, i)), at(left, i), at(right, i)))
                return VIdPair(transp(path_line, cof, eps, a.path), a.cof.conj(cof))
        case VHit():
            result = hit.transp_hit(generic, g, line, cof, eps, a)
            if result is not None:
                return result
    return VNeutral(line.apply(_end(eps)), NTransp(name, line, cof, eps, a))


def _fiber_type(fib, base, point, fun):
    """fiber f y = Σ (x : T), Path A y (f x)"""
    return VSigma("x", fib, Native(
        lambda x: VPathP("_", const_closure(base), point, evaluate.do_app(fun, x))
    ))


def _transp_glue(generic, g, cof, eps, a):
    """
    Glue 型の線に沿った輸送

    底の成分を運んだ値と、全体で φ が成り立つ部分（δ）で繊維を運んだ
    値とのずれを、同値の可縮な繊維で埋め合わせる。
    """
    def at(v, r):
        return evaluate.act(v, {g: r})

    start, end = _start(eps), _end(eps)
    base_line = Native(lambda i: at(generic.base, i))
    fib_line = Native(lambda i: at(generic.fib, i))

    def gcof_at(r):
        return generic.cof.subst({g: r})

    def unglue_at(r, v):
        return evaluate.do_unglue(v, at(generic.base, r), gcof_at(r), at(generic.fib, r), at(generic.equiv, r))

    def fun_at(r):
        return evaluate.do_fst(at(generic.equiv, r))

    delta = cof_forall(generic.cof, g)
    a0 = unglue_at(start, a)
    base_end = at(generic.base, end)
    fib_end = at(generic.fib, end)
    equiv_end = at(generic.equiv, end)
    gcof_end = gcof_at(end)
    fun_end = evaluate.do_fst(equiv_end)

    a1_raw = transp(base_line, cof, eps, a0)

    def fib_moved():
        return transp(fib_line, cof, eps, a)

    def omega():
        # a1_raw から f(fib_moved) への底の道（δ の上でのみ意味を持つ）
        def at_j(j):
            def side(i):
                return evaluate.make_sys(None, [
                    (cof_atom(j, 0), lambda: transp_fill(base_line, cof, eps, a0, i)),
                    (cof_atom(j, 1), lambda: evaluate.do_app(
                        fun_at(i), transp_fill(fib_line, cof, eps, a, i))),
                    (cof.disj(cof_atom(i, eps)), lambda: a0),
                ])
            walls = cof.disj(cof_atom(j, 0)).disj(cof_atom(j, 1))
            return comp(base_line, eps, walls, Native(side), cof)
        return VPLam("j", Native(at_j))

    fiber_ty = _fiber_type(fib_end, base_end, a1_raw, fun_end)

    def contraction_to(x):
        contr = evaluate.do_app(evaluate.do_snd(equiv_end), a1_raw)
        return evaluate.do_app(evaluate.do_snd(contr), x)

    def center():
        contr = evaluate.do_app(evaluate.do_snd(equiv_end), a1_raw)
        return evaluate.do_fst(contr)

    def fiber_body(k):
        return evaluate.make_sys(fiber_ty, [
            (cof_atom(k, 0), center),
            (delta, lambda: evaluate.do_papp(contraction_to(VPair(fib_moved(), omega())), k)),
            (cof, lambda: evaluate.do_papp(
                contraction_to(VPair(a, VPLam("_", const_closure(a1_raw)))), k)),
        ])

    def fiber():
        return hcomp(fiber_ty, delta.disj(cof), 0, Native(fiber_body))

    if gcof_end.is_bot():
        return a1_raw
    chosen = fiber()
    t1 = evaluate.do_fst(chosen)
    alpha = evaluate.do_snd(chosen)

    def base_body(j):
        return evaluate.make_sys(base_end, [
            (cof_atom(j, 0), lambda: a1_raw),
            (gcof_end, lambda: evaluate.do_papp(alpha, j)),
            (cof, lambda: a1_raw),
        ])

    a1 = hcomp(base_end, gcof_end.disj(cof), 0, Native(base_body))
    return evaluate.make_glue_elem(gcof_end, t1, a1)
