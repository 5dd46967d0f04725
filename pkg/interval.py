# interval.py - 区間 𝕀 の束演算（0, 1, ⊓, ⊔、反転なし）と標準形
import itertools
import logging
from dataclasses import dataclass
from functools import reduce

from errors import ScopeError

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# 区間項（構文）
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IvZero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class IvOne:
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class IvVar:
    index: int

    def __str__(self):
        return f"i{self.index}"


@dataclass(frozen=True)
class IvMeet:
    left: object
    right: object

    def __str__(self):
        return f"({self.left} /\\ {self.right})"


@dataclass(frozen=True)
class IvJoin:
    left: object
    right: object

    def __str__(self):
        return f"({self.left} \\/ {self.right})"


IvTerm = IvZero | IvOne | IvVar | IvMeet | IvJoin


# ---------------------------------------------------------------------------
# 標準形
# ---------------------------------------------------------------------------

def _reduce_antichain(clauses):
    """
    節集合から包含される節を取り除き、辞書順に並べた反鎖を返す

    Args:
        clauses: 変数集合（frozenset）の反復可能オブジェクト

    Returns:
        tuple: ソート済みの節（各節はソート済み tuple）
    """
    unique = {frozenset(c) for c in clauses}
    minimal = [c for c in unique if not any(o < c for o in unique)]
    return tuple(sorted(tuple(sorted(c)) for c in minimal))


@dataclass(frozen=True)
class IvElem:
    """
    区間の標準形。変数集合（⊓節）の反鎖で、それらの ⊔ を表す。

    空の反鎖は 0、空節を含む反鎖は 1。変数は文脈の番号（カーネルでは
    de Bruijn レベル）で、n 変数の IvElem はちょうど単調関数 Bool^n → Bool。
    """
    clauses: tuple = ()

    @staticmethod
    def zero():
        return IvElem(())

    @staticmethod
    def one():
        return IvElem(((),))

    @staticmethod
    def var(v):
        return IvElem(((v,),))

    @staticmethod
    def const(eps):
        return IvElem.one() if eps else IvElem.zero()

    @staticmethod
    def from_clauses(clauses):
        return IvElem(_reduce_antichain(clauses))

    def is_zero(self):
        return self.clauses == ()

    def is_one(self):
        return self.clauses == ((),)

    def as_const(self):
        """定数なら 0/1、そうでなければ None"""
        if self.is_zero():
            return 0
        if self.is_one():
            return 1
        return None

    def as_var(self):
        """単一変数ならその番号、そうでなければ None"""
        if len(self.clauses) == 1 and len(self.clauses[0]) == 1:
            return self.clauses[0][0]
        return None

    def variables(self):
        return sorted({v for c in self.clauses for v in c})

    def meet(self, other):
        return IvElem.from_clauses(
            set(a) | set(b) for a in self.clauses for b in other.clauses
        )

    def join(self, other):
        return IvElem.from_clauses(
            [set(c) for c in self.clauses] + [set(c) for c in other.clauses]
        )

    def subst(self, mapping):
        """
        変数を置換する

        Args:
            mapping: 変数番号 -> IvElem または 0/1 の辞書（無い変数はそのまま）

        Returns:
            IvElem: 置換後の標準形
        """
        result = IvElem.zero()
        for clause in self.clauses:
            term = IvElem.one()
            for v in clause:
                image = mapping.get(v, IvElem.var(v))
                if isinstance(image, int):
                    image = IvElem.const(image)
                term = term.meet(image)
            result = result.join(term)
        return result

    def rename(self, renaming):
        """変数番号を関数 renaming で付け替える"""
        return IvElem.from_clauses({renaming(v) for v in c} for c in self.clauses)

    def evaluate(self, point):
        """点 point（変数番号 -> bool の列）での真理値"""
        return any(all(point[v] for v in c) for c in self.clauses)

    def truth_table(self, n):
        """Bool^n 上の真理値表（辞書順の点に対する bool の tuple）"""
        return tuple(self.evaluate(p) for p in itertools.product((False, True), repeat=n))

    @staticmethod
    def from_truth_table(n, table):
        """
        単調な真理値表から標準形を作る（最小の真点が節になる）

        Args:
            n: 変数の数
            table: 点の辞書順に並んだ bool の列

        Returns:
            IvElem: 標準形
        """
        points = list(itertools.product((False, True), repeat=n))
        true_sets = [frozenset(v for v in range(n) if p[v]) for p, t in zip(points, table) if t]
        return IvElem.from_clauses(true_sets)

    def __str__(self):
        if self.is_zero():
            return "0"
        if self.is_one():
            return "1"
        return " \\/ ".join(
            " /\\ ".join(f"i{v}" for v in c) if len(c) > 0 else "1" for c in self.clauses
        )


def iv_normalize(t, n):
    """
    区間項を標準形に正規化する

    Args:
        t: 区間項（IvZero, IvOne, IvVar, IvMeet, IvJoin）
        n: 文脈の大きさ（変数番号は n 未満）

    Returns:
        IvElem: 一意な標準形
    """
    match t:
        case IvZero():
            return IvElem.zero()
        case IvOne():
            return IvElem.one()
        case IvVar(index):
            if not 0 <= index < n:
                raise ScopeError(f"区間変数 {index} が文脈の範囲外です（n={n}）")
            return IvElem.var(index)
        case IvMeet(left, right):
            return iv_normalize(left, n).meet(iv_normalize(right, n))
        case IvJoin(left, right):
            return iv_normalize(left, n).join(iv_normalize(right, n))
        case IvElem():
            bad = [v for v in t.variables() if not 0 <= v < n]
            if bad:
                raise ScopeError(f"区間変数 {bad} が文脈の範囲外です（n={n}）")
            return t
    raise TypeError(f"区間項ではありません: {t!r}")


def iv_eq(s, t, n):
    """二つの区間項が同じ単調関数 Bool^n → Bool を表すかどうか"""
    return iv_normalize(s, n) == iv_normalize(t, n)


def monotone_functions(n):
    """
    n 変数の単調ブール関数を全て列挙する（個数はデデキント数 M(n)）

    Args:
        n: 変数の数（実用上 4 以下）

    Returns:
        list: IvElem のリスト（標準形の辞書順）
    """
    points = list(itertools.product((False, True), repeat=n))
    below = [
        [q for q in range(len(points)) if all(a <= b for a, b in zip(points[q], points[p]))]
        for p in range(len(points))
    ]
    found = []
    for table in itertools.product((False, True), repeat=len(points)):
        if all(not table[q] or table[p] for p in range(len(points)) for q in below[p]):
            found.append(IvElem.from_truth_table(n, table))
    logger.debug(f"{n} 変数の単調関数を {len(found)} 個列挙しました")
    return sorted(found, key=lambda e: e.clauses)


def random_terms(n, depth):
    """
    深さ depth 以下の区間項を全て生成する（網羅テスト用）

    Args:
        n: 変数の数
        depth: 項の深さの上限

    Returns:
        list: 区間項のリスト
    """
    level = [IvZero(), IvOne()] + [IvVar(v) for v in range(n)]
    terms = list(level)
    for _ in range(depth):
        new = [IvMeet(a, b) for a in level for b in level] + [IvJoin(a, b) for a in level for b in level]
        terms.extend(new)
        level = new
    return terms


def meet_all(elems):
    return reduce(IvElem.meet, elems, IvElem.one())


def join_all(elems):
    return reduce(IvElem.join, elems, IvElem.zero())
