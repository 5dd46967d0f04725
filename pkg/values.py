# values.py - NbE の意味領域（値・クロージャ・中立項）
from dataclasses import dataclass


class Value:
    """弱頭部正規形の値"""
    pass


# ---------------------------------------------------------------------------
# 環境とクロージャ
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Env:
    """
    評価環境

    Args:
        glob: 大域定義の表（Globals）
        vals: 局所変数の値（末尾が最も内側、添字 0）
    """
    glob: object
    vals: tuple = ()

    def extend(self, *values):
        return Env(self.glob, self.vals + tuple(values))

    def lookup(self, index):
        return self.vals[len(self.vals) - 1 - index]

    def __len__(self):
        return len(self.vals)


class Closure:
    """項のクロージャ（環境 + 本体）"""
    __slots__ = ("env", "body")

    def __init__(self, env, body):
        self.env = env
        self.body = body

    def apply(self, *args):
        import evaluate
        return evaluate.eval_term(self.env.extend(*args), self.body)


class Native:
    """Python 関数によるクロージャ。カーネルの計算規則が作る"""
    __slots__ = ("fn",)

    def __init__(self, fn):
        self.fn = fn

    def apply(self, *args):
        return self.fn(*args)


def const_closure(value):
    return Native(lambda *_: value)


# ---------------------------------------------------------------------------
# 標準形の値
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class VUniv(Value):
    level: int


@dataclass(frozen=True, eq=False)
class VLift(Value):
    ty: Value


@dataclass(frozen=True, eq=False)
class VLiftIn(Value):
    value: Value


@dataclass(frozen=True, eq=False)
class VPi(Value):
    name: str
    dom: Value
    cod: object


@dataclass(frozen=True, eq=False)
class VLam(Value):
    name: str
    dom: Value
    body: object


@dataclass(frozen=True, eq=False)
class VSigma(Value):
    name: str
    dom: Value
    cod: object


@dataclass(frozen=True, eq=False)
class VPair(Value):
    fst: Value
    snd: Value


@dataclass(frozen=True, eq=False)
class VNat(Value):
    pass


@dataclass(frozen=True, eq=False)
class VZero(Value):
    pass


@dataclass(frozen=True, eq=False)
class VSuc(Value):
    pred: Value


@dataclass(frozen=True, eq=False)
class VUnit(Value):
    pass


@dataclass(frozen=True, eq=False)
class VStar(Value):
    pass


@dataclass(frozen=True, eq=False)
class VEmpty(Value):
    pass


@dataclass(frozen=True, eq=False)
class VSum(Value):
    left: Value
    right: Value


@dataclass(frozen=True, eq=False)
class VInl(Value):
    value: Value


@dataclass(frozen=True, eq=False)
class VInr(Value):
    value: Value


@dataclass(frozen=True, eq=False)
class VPathP(Value):
    """道の型。fam は区間のクロージャ"""
    name: str
    fam: object
    left: Value
    right: Value


@dataclass(frozen=True, eq=False)
class VPLam(Value):
    name: str
    body: object


@dataclass(frozen=True, eq=False)
class VGlue(Value):
    """Glue 型。fib と equiv は cof の下でのみ意味を持つ"""
    base: Value
    cof: object
    fib: Value
    equiv: Value


@dataclass(frozen=True, eq=False)
class VGlueElem(Value):
    cof: object
    fib_elem: Value
    base_elem: Value


@dataclass(frozen=True, eq=False)
class VId(Value):
    ty: Value
    left: Value
    right: Value


@dataclass(frozen=True, eq=False)
class VIdPair(Value):
    path: Value
    cof: object


@dataclass(frozen=True, eq=False)
class VHit(Value):
    decl: object
    params: tuple


@dataclass(frozen=True, eq=False)
class VCon(Value):
    """簡約できない HIT のコンストラクタ適用"""
    decl: object
    params: tuple
    cname: str
    args: tuple


@dataclass(frozen=True, eq=False)
class VHitHComp(Value):
    """HIT の hcomp コンストラクタ（φ が成り立たない間の標準形）"""
    decl: object
    params: tuple
    cof: object
    eps: int
    body: object


@dataclass(frozen=True, eq=False)
class VNeutral(Value):
    """中立項。型が分かる場合は ty に持つ（道の端点の計算に使う）"""
    ty: Value
    ne: object


# ---------------------------------------------------------------------------
# 中立項
# ---------------------------------------------------------------------------

class Neutral:
    pass


@dataclass(frozen=True, eq=False)
class NVar(Neutral):
    """変数。ty は変数自身の型（区間代入で消去の列を組み直すのに使う）"""
    level: int
    ty: object = None


@dataclass(frozen=True, eq=False)
class NAxiom(Neutral):
    name: str
    ty: object = None


@dataclass(frozen=True, eq=False)
class NApp(Neutral):
    fn: Neutral
    arg: Value


@dataclass(frozen=True, eq=False)
class NFst(Neutral):
    pair: Neutral


@dataclass(frozen=True, eq=False)
class NSnd(Neutral):
    pair: Neutral


@dataclass(frozen=True, eq=False)
class NPApp(Neutral):
    path: Neutral
    arg: object


@dataclass(frozen=True, eq=False)
class NNatRec(Neutral):
    motive: Value
    zero_case: Value
    suc_case: Value
    target: Neutral


@dataclass(frozen=True, eq=False)
class NAbsurd(Neutral):
    ty: Value
    target: Neutral


@dataclass(frozen=True, eq=False)
class NCase(Neutral):
    motive: Value
    left_case: Value
    right_case: Value
    target: Neutral


@dataclass(frozen=True, eq=False)
class NLiftOut(Neutral):
    term: Neutral


@dataclass(frozen=True, eq=False)
class NUnglue(Neutral):
    target: Neutral
    base: Value
    cof: object
    fib: Value
    equiv: Value


@dataclass(frozen=True, eq=False)
class NIdPath(Neutral):
    term: Neutral


@dataclass(frozen=True, eq=False)
class NJ(Neutral):
    motive: Value
    base: Value
    proof: Neutral
    ty: Value
    left: Value
    right: Value


@dataclass(frozen=True, eq=False)
class NHitElim(Neutral):
    decl: object
    params: tuple
    motive: Value
    clauses: tuple
    target: Neutral


@dataclass(frozen=True, eq=False)
class NHComp(Neutral):
    """計算の進まない hcomp（型または底が中立）"""
    ty: Value
    cof: object
    eps: int
    body: object


@dataclass(frozen=True, eq=False)
class NTransp(Neutral):
    name: str
    fam: object
    cof: object
    eps: int
    arg: Value


@dataclass(frozen=True, eq=False)
class NSys(Neutral):
    """どの枝の面も成り立たない部分要素。branches は (Cof, 値)"""
    branches: tuple


def var(ty, level):
    return VNeutral(ty, NVar(level, ty))
