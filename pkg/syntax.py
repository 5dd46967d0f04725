# syntax.py - コア構文木（de Bruijn 添字）と表示
from dataclasses import dataclass, fields

from cof import CofAnd, CofBot, CofEq, CofOr, CofTop
from interval import IvJoin, IvMeet, IvOne, IvZero


class Term:
    """コア項の基底クラス。変数は de Bruijn 添字（0 が最も内側）"""

    def __str__(self):
        return pretty(self)


@dataclass(frozen=True)
class Var(Term):
    index: int


@dataclass(frozen=True)
class Ref(Term):
    """大域定義・公理・HIT 名への参照"""
    name: str


@dataclass(frozen=True)
class Univ(Term):
    level: int


@dataclass(frozen=True)
class Lift(Term):
    ty: Term


@dataclass(frozen=True)
class LiftIn(Term):
    term: Term


@dataclass(frozen=True)
class LiftOut(Term):
    term: Term


@dataclass(frozen=True)
class Pi(Term):
    name: str
    dom: Term
    cod: Term


@dataclass(frozen=True)
class Lam(Term):
    name: str
    body: Term
    dom: Term = None


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Sigma(Term):
    name: str
    dom: Term
    cod: Term


@dataclass(frozen=True)
class Pair(Term):
    fst: Term
    snd: Term


@dataclass(frozen=True)
class Fst(Term):
    pair: Term


@dataclass(frozen=True)
class Snd(Term):
    pair: Term


@dataclass(frozen=True)
class NatT(Term):
    pass


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class Suc(Term):
    pred: Term


@dataclass(frozen=True)
class NatRec(Term):
    """natrec P z s n（P は λn.型、s は λn.λih.項）"""
    motive: Term
    zero_case: Term
    suc_case: Term
    target: Term


@dataclass(frozen=True)
class UnitT(Term):
    pass


@dataclass(frozen=True)
class Star(Term):
    pass


@dataclass(frozen=True)
class EmptyT(Term):
    pass


@dataclass(frozen=True)
class Absurd(Term):
    ty: Term
    target: Term


@dataclass(frozen=True)
class SumT(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Inl(Term):
    value: Term


@dataclass(frozen=True)
class Inr(Term):
    value: Term


@dataclass(frozen=True)
class Case(Term):
    """case P l r s（P は λs.型）"""
    motive: Term
    left_case: Term
    right_case: Term
    target: Term


@dataclass(frozen=True)
class IntervalT(Term):
    """区間 I。コンストラクタの引数の型としてのみ現れる"""
    pass


@dataclass(frozen=True)
class PLam(Term):
    name: str
    body: Term


@dataclass(frozen=True)
class PApp(Term):
    path: Term
    arg: Term


@dataclass(frozen=True)
class PathP(Term):
    """PathP (λname. fam) left right"""
    name: str
    fam: Term
    left: Term
    right: Term


@dataclass(frozen=True)
class Sys(Term):
    """部分要素 [φ₁ ↦ t₁, …]。branches は (Cof の式, 項) の tuple"""
    branches: tuple
    ty: Term = None


@dataclass(frozen=True)
class HComp(Term):
    """hcomp^ε A φ (λname. body)。body は (name = ε) ∨ φ の下で型付く"""
    ty: Term
    cof: object
    eps: int
    name: str
    body: Term


@dataclass(frozen=True)
class Transp(Term):
    """transp^ε (λname. fam) φ arg"""
    name: str
    fam: Term
    cof: object
    eps: int
    arg: Term


@dataclass(frozen=True)
class Glue(Term):
    """Glue A [φ ↦ (T, e)]。fib と equiv は φ の下で型付く"""
    base: Term
    cof: object
    fib: Term
    equiv: Term


@dataclass(frozen=True)
class GlueElem(Term):
    cof: object
    fib_elem: Term
    base_elem: Term


@dataclass(frozen=True)
class Unglue(Term):
    target: Term
    base: Term = None
    cof: object = None
    fib: Term = None
    equiv: Term = None


@dataclass(frozen=True)
class IdT(Term):
    ty: Term
    left: Term
    right: Term


@dataclass(frozen=True)
class IdPair(Term):
    """Id の標準形 ⟨p, φ⟩（p は φ の上で定数な道）"""
    path: Term
    cof: object


@dataclass(frozen=True)
class IdPath(Term):
    term: Term


@dataclass(frozen=True)
class J(Term):
    motive: Term
    base: Term
    proof: Term
    ty: Term = None
    left: Term = None
    right: Term = None


@dataclass(frozen=True)
class Hit(Term):
    name: str
    params: tuple = ()


@dataclass(frozen=True)
class Con(Term):
    hit: str
    cname: str
    args: tuple = ()
    params: tuple = None


@dataclass(frozen=True)
class HitElim(Term):
    hit: str
    motive: Term
    clauses: tuple
    target: Term
    params: tuple = None


@dataclass(frozen=True)
class SelfT(Term):
    """HIT 宣言中の再帰的な出現"""
    pass


# 表層のみの節点（精緻化で消える）

@dataclass(frozen=True)
class Ann(Term):
    term: Term
    ty: Term


@dataclass(frozen=True)
class Lit(Term):
    """数字リテラル。0/1 は期待される型で区間か ℕ かを決める"""
    value: int


@dataclass(frozen=True)
class At(Term):
    span: object
    term: Term


# ---------------------------------------------------------------------------
# 束縛構造
# ---------------------------------------------------------------------------

# 各クラスについて、そのフィールドの下にある束縛子の数
BINDERS = {
    Pi: {"cod": 1},
    Lam: {"body": 1},
    Sigma: {"cod": 1},
    PLam: {"body": 1},
    PathP: {"fam": 1},
    HComp: {"body": 1},
    Transp: {"fam": 1},
}


def children(term):
    """
    部分項を (部分項, 束縛子の数) の組で列挙する

    tuple のフィールド（Sys の枝や HIT の引数）も展開する。
    """
    if not isinstance(term, Term) and not isinstance(term, (IvMeet, IvJoin, CofEq, CofAnd, CofOr)):
        return
    binders = BINDERS.get(type(term), {})
    for f in fields(term):
        value = getattr(term, f.name)
        under = binders.get(f.name, 0)
        yield from _flatten(value, under)


def _flatten(value, under):
    if isinstance(value, tuple):
        for item in value:
            yield from _flatten(item, under)
    elif isinstance(value, (Term, IvMeet, IvJoin, CofEq, CofAnd, CofOr)):
        yield value, under


def mentions(term, index):
    """項が添字 index の変数を自由に含むかどうか"""
    if isinstance(term, Var):
        return term.index == index
    return any(mentions(sub, index + under) for sub, under in children(term))


def shift(term, amount, cutoff=0):
    """cutoff 以上の自由変数の添字を amount だけずらす"""
    if isinstance(term, Var):
        return Var(term.index + amount) if term.index >= cutoff else term
    if not isinstance(term, (Term, IvMeet, IvJoin, CofEq, CofAnd, CofOr)):
        return term
    binders = BINDERS.get(type(term), {})
    changes = {}
    for f in fields(term):
        value = getattr(term, f.name)
        changes[f.name] = _shift_value(value, amount, cutoff + binders.get(f.name, 0))
    return type(term)(**changes)


def _shift_value(value, amount, cutoff):
    if isinstance(value, tuple):
        return tuple(_shift_value(v, amount, cutoff) for v in value)
    if isinstance(value, (Term, IvMeet, IvJoin, CofEq, CofAnd, CofOr)):
        return shift(value, amount, cutoff)
    return value


def numeral(n):
    term = Zero()
    for _ in range(n):
        term = Suc(term)
    return term


def as_numeral(term):
    """suc^n zero なら n、そうでなければ None"""
    count = 0
    while isinstance(term, Suc):
        term = term.pred
        count += 1
    return count if isinstance(term, Zero) else None


# ---------------------------------------------------------------------------
# 表示
# ---------------------------------------------------------------------------

def _fresh(name, names):
    base = name if name and name != "_" else "x"
    candidate = base
    while candidate in names:
        candidate += "'"
    return candidate


def _paren(text, needed):
    return f"({text})" if needed else text


# 優先順位: 0 = λ・矢印, 1 = 和, 2 = 積, 3 = 束演算, 4 = 適用, 5 = 原子
def pretty(term, names=(), prec=0):
    """
    項を再解析可能な表層構文で表示する

    Args:
        term: コア項
        names: 束縛変数名（先頭が最も内側）
        prec: 周囲の優先順位

    Returns:
        str: 表示文字列
    """
    names = list(names)
    match term:
        case Var(index):
            return names[index] if index < len(names) else f"#{index}"
        case Ref(name):
            return name
        case Univ(level):
            return f"U{level}"
        case Lift(ty):
            return _paren(f"Lift {pretty(ty, names, 5)}", prec > 4)
        case LiftIn(t):
            return _paren(f"lift {pretty(t, names, 5)}", prec > 4)
        case LiftOut(t):
            return _paren(f"lower {pretty(t, names, 5)}", prec > 4)
        case Pi(name, dom, cod):
            if not mentions(cod, 0):
                text = f"{pretty(dom, names, 1)} -> {pretty(cod, ['_'] + names, 0)}"
            else:
                x = _fresh(name, names)
                text = f"({x} : {pretty(dom, names, 0)}) -> {pretty(cod, [x] + names, 0)}"
            return _paren(text, prec > 0)
        case Lam(name, body, _) | PLam(name, body):
            x = _fresh(name, names)
            return _paren(f"\\{x}. {pretty(body, [x] + names, 0)}", prec > 0)
        case App(fn, arg) | PApp(fn, arg):
            return _paren(f"{pretty(fn, names, 4)} {pretty(arg, names, 5)}", prec > 4)
        case Sigma(name, dom, cod):
            if not mentions(cod, 0):
                text = f"{pretty(dom, names, 3)} * {pretty(cod, ['_'] + names, 2)}"
                return _paren(text, prec > 2)
            x = _fresh(name, names)
            text = f"({x} : {pretty(dom, names, 0)}) * {pretty(cod, [x] + names, 2)}"
            return _paren(text, prec > 0)
        case Pair(a, b):
            return f"({pretty(a, names, 0)}, {pretty(b, names, 0)})"
        case Fst(p):
            return f"{pretty(p, names, 5)}.1"
        case Snd(p):
            return f"{pretty(p, names, 5)}.2"
        case NatT():
            return "Nat"
        case Zero():
            return "zero"
        case Suc(pred):
            n = as_numeral(term)
            if n is not None and n >= 2:
                return str(n)
            return _paren(f"suc {pretty(pred, names, 5)}", prec > 4)
        case NatRec(motive, z, s, target):
            args = " ".join(pretty(t, names, 5) for t in (motive, z, s, target))
            return _paren(f"natrec {args}", prec > 4)
        case UnitT():
            return "Unit"
        case Star():
            return "tt"
        case EmptyT():
            return "Empty"
        case Absurd(ty, target):
            return _paren(f"absurd {pretty(ty, names, 5)} {pretty(target, names, 5)}", prec > 4)
        case SumT(left, right):
            return _paren(f"{pretty(left, names, 2)} + {pretty(right, names, 1)}", prec > 1)
        case Inl(v):
            return _paren(f"inl {pretty(v, names, 5)}", prec > 4)
        case Inr(v):
            return _paren(f"inr {pretty(v, names, 5)}", prec > 4)
        case Case(motive, left, right, target):
            args = " ".join(pretty(t, names, 5) for t in (motive, left, right, target))
            return _paren(f"case {args}", prec > 4)
        case IntervalT():
            return "I"
        case PathP(name, fam, left, right):
            if not mentions(fam, 0):
                head = f"Path {pretty(fam, ['_'] + names, 5)}"
            else:
                x = _fresh(name, names)
                head = f"PathP (\\{x}. {pretty(fam, [x] + names, 0)})"
            return _paren(f"{head} {pretty(left, names, 5)} {pretty(right, names, 5)}", prec > 4)
        case IvZero():
            return "0"
        case IvOne():
            return "1"
        case IvMeet(a, b):
            return _paren(f"{pretty(a, names, 4)} /\\ {pretty(b, names, 4)}", prec > 3)
        case IvJoin(a, b):
            return _paren(f"{pretty(a, names, 4)} \\/ {pretty(b, names, 4)}", prec > 3)
        case CofTop():
            return "top"
        case CofBot():
            return "bot"
        case CofEq(r, eps):
            return _paren(f"{pretty(r, names, 3)} = {eps}", prec > 3)
        case CofAnd(a, b):
            return _paren(f"{pretty(a, names, 4)} /\\ {pretty(b, names, 4)}", prec > 3)
        case CofOr(a, b):
            return _paren(f"{pretty(a, names, 4)} \\/ {pretty(b, names, 4)}", prec > 3)
        case Sys(branches, _):
            inner = ", ".join(f"{pretty(c, names, 0)} -> {pretty(t, names, 0)}" for c, t in branches)
            return f"[{inner}]"
        case HComp(ty, cof, eps, name, body):
            x = _fresh(name, names)
            kw = "hcomp" if eps == 0 else "hcomp1"
            text = f"{kw} {pretty(ty, names, 5)} ({pretty(cof, names, 0)}) (\\{x}. {pretty(body, [x] + names, 0)})"
            return _paren(text, prec > 4)
        case Transp(name, fam, cof, eps, arg):
            x = _fresh(name, names)
            kw = "transp" if eps == 0 else "transp1"
            text = f"{kw} (\\{x}. {pretty(fam, [x] + names, 0)}) ({pretty(cof, names, 0)}) {pretty(arg, names, 5)}"
            return _paren(text, prec > 4)
        case Glue(base, cof, fib, equiv):
            text = f"Glue {pretty(base, names, 5)} [{pretty(cof, names, 0)} -> ({pretty(fib, names, 0)}, {pretty(equiv, names, 0)})]"
            return _paren(text, prec > 4)
        case GlueElem(cof, t, a):
            text = f"glue [{pretty(cof, names, 0)} -> {pretty(t, names, 0)}] {pretty(a, names, 5)}"
            return _paren(text, prec > 4)
        case Unglue(target=target):
            return _paren(f"unglue {pretty(target, names, 5)}", prec > 4)
        case IdT(ty, left, right):
            args = " ".join(pretty(t, names, 5) for t in (ty, left, right))
            return _paren(f"Id {args}", prec > 4)
        case IdPair(path, cof):
            return _paren(f"idpair {pretty(path, names, 5)} ({pretty(cof, names, 0)})", prec > 4)
        case IdPath(t):
            return _paren(f"fromId {pretty(t, names, 5)}", prec > 4)
        case J(motive=motive, base=base, proof=proof):
            args = " ".join(pretty(t, names, 5) for t in (motive, base, proof))
            return _paren(f"J {args}", prec > 4)
        case Hit(name, params):
            if not params:
                return name
            args = " ".join(pretty(p, names, 5) for p in params)
            return _paren(f"{name} {args}", prec > 4)
        case Con(hit, cname, args, _):
            if not args:
                return f"{hit}.{cname}"
            rendered = " ".join(pretty(a, names, 5) for a in args)
            return _paren(f"{hit}.{cname} {rendered}", prec > 4)
        case HitElim(hit, motive, clauses, target, _):
            rendered = " ".join(pretty(t, names, 5) for t in (motive, *clauses, target))
            return _paren(f"{hit}.elim {rendered}", prec > 4)
        case Ident(name):
            return name
        case SelfT():
            return "Self"
        case Ann(t, ty):
            return f"({pretty(t, names, 0)} : {pretty(ty, names, 0)})"
        case Lit(value):
            return str(value)
        case At(_, t):
            return pretty(t, names, prec)
    return repr(term)


# ---------------------------------------------------------------------------
# 表層の名前と宣言
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ident(Term):
    """名前による参照（H.c のような修飾名も含む）。精緻化で添字か大域参照になる"""
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class CtorDecl:
    """HIT のコンストラクタ宣言。args は (名前, 型)、reductions は (Cof の式, 項)"""
    name: str
    args: tuple = ()
    reductions: tuple = ()
    span: object = None


@dataclass(frozen=True)
class HitDeclSyntax:
    name: str
    params: tuple
    ctors: tuple
    hcomp_dirs: tuple = ()
    span: object = None


@dataclass(frozen=True)
class DefDecl:
    name: str
    ty: Term
    body: Term
    annotation: str = None
    span: object = None


@dataclass(frozen=True)
class AxiomDecl:
    name: str
    ty: Term
    annotation: str = None
    span: object = None


@dataclass(frozen=True)
class ImportDecl:
    path: str
    span: object = None


def strip_spans(term):
    """At を取り除いた項（比較・テスト用）"""
    if isinstance(term, At):
        return strip_spans(term.term)
    if isinstance(term, tuple):
        return tuple(strip_spans(t) for t in term)
    if not isinstance(term, (Term, IvMeet, IvJoin, CofEq, CofAnd, CofOr)):
        return term
    changes = {f.name: strip_spans(getattr(term, f.name)) for f in fields(term)}
    return type(term)(**changes)
