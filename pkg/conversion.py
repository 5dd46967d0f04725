# conversion.py - 型付きの判定的等価性（η と Cof の節ごとの場合分け）
import logging

from cof import cof_atom
from evaluate import (
    act, do_app, do_fst, do_lower, do_papp, do_snd, do_unglue, fresh_arg,
)
from interval import IvElem
from values import (
    NAbsurd, NApp, NAxiom, NCase, NFst, NHComp, NHitElim, NIdPath, NJ,
    NLiftOut, NNatRec, NPApp, NSnd, NSys, NTransp, NUnglue, NVar, VCon,
    VEmpty, VGlue, VGlueElem, VHit, VHitHComp, VId, VIdPair, VInl, VInr,
    VLam, VLift, VLiftIn, VNat, VNeutral, VPair, VPathP, VPi, VPLam, VSigma,
    VStar, VSuc, VSum, VUnit, VUniv, VZero,
)

logger = logging.getLogger(__name__)


def conv_under(depth, cof, ty, v, w):
    """
    Cof の仮定の下での等価性。仮定の各節で面に制限して比べる

    Args:
        depth: 文脈の長さ
        cof: 仮定（標準形）
        ty: 型（分からなければ None）
        v, w: 比べる値

    Returns:
        bool: 全ての節で等しければ True（⊥ の下では常に True）
    """
    if cof.is_top():
        return conv(depth, ty, v, w)
    for assignment in cof.assignments():
        mapping = {level: IvElem.const(eps) for level, eps in assignment.items()}
        if not conv(depth, act(ty, mapping), act(v, mapping), act(w, mapping)):
            return False
    return True


def _absurd_head(v):
    """中立項の頭が空型の消去なら True（文脈が矛盾している）"""
    if not isinstance(v, VNeutral):
        return False
    ne = v.ne
    while True:
        match ne:
            case NAbsurd():
                return True
            case NApp(fn, _):
                ne = fn
            case NFst(pair) | NSnd(pair):
                ne = pair
            case NPApp(path, _):
                ne = path
            case NNatRec(target=target) | NCase(target=target) | NUnglue(target=target) | NHitElim(target=target):
                ne = target
            case NLiftOut(term) | NIdPath(term):
                ne = term
            case NJ(proof=proof):
                ne = proof
            case _:
                return False


def _is_sys(v):
    return isinstance(v, VNeutral) and isinstance(v.ne, NSys)


def conv(depth, ty, v, w):
    """
    型 ty における v と w の判定的等価性

    Π・Σ・⊤・Path・Lift・Glue では η で比べ、それ以外は構造で比べる。
    """
    if v is w:
        return True
    if isinstance(v, IvElem) or isinstance(w, IvElem):
        return v == w
    if _absurd_head(v) or _absurd_head(w):
        return True
    if _is_sys(v):
        return all(conv_under(depth, c, ty, b, w) for c, b in v.ne.branches)
    if _is_sys(w):
        return all(conv_under(depth, c, ty, v, b) for c, b in w.ne.branches)
    if ty is None:
        if isinstance(v, VNeutral) and v.ty is not None:
            ty = v.ty
        elif isinstance(w, VNeutral) and w.ty is not None:
            ty = w.ty
    match ty:
        case VPi(_, dom, cod):
            x = fresh_arg(dom, depth)
            return conv(depth + 1, cod.apply(x), do_app(v, x), do_app(w, x))
        case VSigma(_, dom, cod):
            a, b = do_fst(v), do_fst(w)
            if not conv(depth, dom, a, b):
                return False
            return conv(depth, cod.apply(a), do_snd(v), do_snd(w))
        case VUnit():
            return True
        case VPathP(_, fam, _, _):
            i = IvElem.var(depth)
            return conv(depth + 1, fam.apply(i), do_papp(v, i), do_papp(w, i))
        case VLift(inner):
            return conv(depth, inner, do_lower(v), do_lower(w))
        case VGlue(base, cof, fib, equiv):
            if not conv(depth, base, do_unglue(v, base, cof, fib, equiv), do_unglue(w, base, cof, fib, equiv)):
                return False
            return conv_under(depth, cof, fib, v, w)
    return conv_struct(depth, v, w)


def conv_type(depth, a, b):
    return conv(depth, None, a, b)


def _conv_args(depth, xs, ys):
    return len(xs) == len(ys) and all(conv(depth, None, x, y) for x, y in zip(xs, ys))


def _conv_body(depth, cof, eps, ty, f, g):
    i = IvElem.var(depth)
    return conv_under(depth + 1, cof.disj(cof_atom(i, eps)), ty, f.apply(i), g.apply(i))


def conv_struct(depth, v, w):
    # 片側だけが λ・道・対なら η 展開して比べる
    if isinstance(v, VLam) or isinstance(w, VLam):
        dom = v.dom if isinstance(v, VLam) else w.dom
        x = fresh_arg(dom, depth)
        return conv(depth + 1, None, do_app(v, x), do_app(w, x))
    if isinstance(v, VPLam) or isinstance(w, VPLam):
        i = IvElem.var(depth)
        return conv(depth + 1, None, do_papp(v, i), do_papp(w, i))
    if isinstance(v, VPair) or isinstance(w, VPair):
        return conv(depth, None, do_fst(v), do_fst(w)) and conv(depth, None, do_snd(v), do_snd(w))
    match v, w:
        case VUniv(a), VUniv(b):
            return a == b
        case VLift(a), VLift(b):
            return conv_type(depth, a, b)
        case VLiftIn(a), VLiftIn(b):
            return conv(depth, None, a, b)
        case (VPi(_, d1, c1), VPi(_, d2, c2)) | (VSigma(_, d1, c1), VSigma(_, d2, c2)):
            if type(v) is not type(w) or not conv_type(depth, d1, d2):
                return False
            x = fresh_arg(d1, depth)
            return conv_type(depth + 1, c1.apply(x), c2.apply(x))
        case (VNat(), VNat()) | (VZero(), VZero()) | (VUnit(), VUnit()) | (VStar(), VStar()) | (VEmpty(), VEmpty()):
            return True
        case VSuc(), VSuc():
            while isinstance(v, VSuc) and isinstance(w, VSuc):
                v, w = v.pred, w.pred
            return conv(depth, VNat(), v, w)
        case VSum(l1, r1), VSum(l2, r2):
            return conv_type(depth, l1, l2) and conv_type(depth, r1, r2)
        case (VInl(a), VInl(b)) | (VInr(a), VInr(b)):
            return type(v) is type(w) and conv(depth, None, a, b)
        case VPathP(_, f1, a1, b1), VPathP(_, f2, a2, b2):
            i = IvElem.var(depth)
            if not conv_type(depth + 1, f1.apply(i), f2.apply(i)):
                return False
            return conv(depth, f1.apply(IvElem.zero()), a1, a2) and conv(depth, f1.apply(IvElem.one()), b1, b2)
        case VGlue(a1, c1, t1, e1), VGlue(a2, c2, t2, e2):
            return (
                c1 == c2 and conv_type(depth, a1, a2)
                and conv_under(depth, c1, None, t1, t2)
                and conv_under(depth, c1, None, e1, e2)
            )
        case VGlueElem(c1, t1, a1), VGlueElem(c2, t2, a2):
            return c1 == c2 and conv(depth, None, a1, a2) and conv_under(depth, c1, None, t1, t2)
        case VId(t1, a1, b1), VId(t2, a2, b2):
            return conv_type(depth, t1, t2) and conv(depth, t1, a1, a2) and conv(depth, t1, b1, b2)
        case VIdPair(p1, c1), VIdPair(p2, c2):
            return c1 == c2 and conv(depth, None, p1, p2)
        case VHit(d1, p1), VHit(d2, p2):
            return d1.name == d2.name and _conv_args(depth, p1, p2)
        case VCon(d1, p1, n1, a1), VCon(d2, p2, n2, a2):
            return d1.name == d2.name and n1 == n2 and _conv_args(depth, p1, p2) and _conv_args(depth, a1, a2)
        case VHitHComp(d1, p1, c1, e1, b1), VHitHComp(d2, p2, c2, e2, b2):
            if d1.name != d2.name or c1 != c2 or e1 != e2 or not _conv_args(depth, p1, p2):
                return False
            return _conv_body(depth, c1, e1, VHit(d1, p1), b1, b2)
        case VNeutral(_, n1), VNeutral(_, n2):
            return conv_ne(depth, n1, n2)
    return False


def conv_ne(depth, a, b):
    match a, b:
        case NVar(l1), NVar(l2):
            return l1 == l2
        case NAxiom(n1), NAxiom(n2):
            return n1 == n2
        case NApp(f1, x1), NApp(f2, x2):
            return conv_ne(depth, f1, f2) and conv(depth, None, x1, x2)
        case (NFst(p1), NFst(p2)) | (NSnd(p1), NSnd(p2)):
            return type(a) is type(b) and conv_ne(depth, p1, p2)
        case NPApp(p1, r1), NPApp(p2, r2):
            return r1 == r2 and conv_ne(depth, p1, p2)
        case NNatRec(m1, z1, s1, t1), NNatRec(m2, z2, s2, t2):
            return (
                conv_ne(depth, t1, t2) and conv(depth, None, m1, m2)
                and conv(depth, None, z1, z2) and conv(depth, None, s1, s2)
            )
        case NCase(m1, l1, r1, t1), NCase(m2, l2, r2, t2):
            return (
                conv_ne(depth, t1, t2) and conv(depth, None, m1, m2)
                and conv(depth, None, l1, l2) and conv(depth, None, r1, r2)
            )
        case NLiftOut(t1), NLiftOut(t2):
            return conv_ne(depth, t1, t2)
        case NUnglue(t1, _, c1, _, _), NUnglue(t2, _, c2, _, _):
            return c1 == c2 and conv_ne(depth, t1, t2)
        case NIdPath(t1), NIdPath(t2):
            return conv_ne(depth, t1, t2)
        case NJ(m1, d1, p1, _, _, _), NJ(m2, d2, p2, _, _, _):
            return conv_ne(depth, p1, p2) and conv(depth, None, m1, m2) and conv(depth, None, d1, d2)
        case NHitElim(h1, _, m1, c1, t1), NHitElim(h2, _, m2, c2, t2):
            return (
                h1.name == h2.name and conv_ne(depth, t1, t2)
                and conv(depth, None, m1, m2) and _conv_args(depth, c1, c2)
            )
        case NHComp(t1, c1, e1, b1), NHComp(t2, c2, e2, b2):
            return c1 == c2 and e1 == e2 and conv_type(depth, t1, t2) and _conv_body(depth, c1, e1, t1, b1, b2)
        case NTransp(_, f1, c1, e1, x1), NTransp(_, f2, c2, e2, x2):
            if c1 != c2 or e1 != e2:
                return False
            i = IvElem.var(depth)
            if not conv_type(depth + 1, f1.apply(i), f2.apply(i)):
                return False
            return conv(depth, f1.apply(IvElem.const(e1)), x1, x2)
    return False
