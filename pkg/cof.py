# cof.py - 余ファイブレーション命題（Cof）の標準 DNF と含意判定
import logging
from dataclasses import dataclass

from errors import ScopeError
from interval import IvElem, iv_normalize

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# 命題の構文
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CofTop:
    def __str__(self):
        return "T"


@dataclass(frozen=True)
class CofBot:
    def __str__(self):
        return "F"


@dataclass(frozen=True)
class CofEq:
    """原子命題 (r = ε)。r は区間項、ε は 0 か 1"""
    term: object
    eps: int

    def __str__(self):
        return f"({self.term} = {self.eps})"


@dataclass(frozen=True)
class CofAnd:
    left: object
    right: object

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class CofOr:
    left: object
    right: object

    def __str__(self):
        return f"({self.left} | {self.right})"


# ---------------------------------------------------------------------------
# 標準 DNF
# ---------------------------------------------------------------------------

def _clause_key(clause):
    return tuple(sorted(clause))


@dataclass(frozen=True)
class Cof:
    """
    Cof の標準形。無矛盾な部分割当（(変数, 0/1) の組の tuple）の反鎖。

    節は割当の拡張に関して反鎖で、辞書順に整列する。節が無ければ ⊥、
    空の割当を含めば ⊤。
    """
    clauses: tuple = ()

    @staticmethod
    def top():
        return Cof(((),))

    @staticmethod
    def bot():
        return Cof(())

    @staticmethod
    def eq(v, eps):
        return Cof((((v, eps),),))

    @staticmethod
    def from_clauses(clauses):
        """
        部分割当の集まりから標準形を作る（矛盾節の除去と吸収）

        Args:
            clauses: (変数, 0/1) の組の反復可能オブジェクトの列

        Returns:
            Cof: 標準形
        """
        consistent = set()
        for clause in clauses:
            pairs = frozenset(clause)
            vs = [v for v, _ in pairs]
            if len(vs) != len(set(vs)):
                continue
            consistent.add(pairs)
        minimal = [c for c in consistent if not any(o < c for o in consistent)]
        return Cof(tuple(sorted(_clause_key(c) for c in minimal)))

    def is_top(self):
        return self.clauses == ((),)

    def is_bot(self):
        return self.clauses == ()

    def variables(self):
        return sorted({v for c in self.clauses for v, _ in c})

    def conj(self, other):
        return Cof.from_clauses(set(a) | set(b) for a in self.clauses for b in other.clauses)

    def disj(self, other):
        return Cof.from_clauses([set(c) for c in self.clauses] + [set(c) for c in other.clauses])

    def assignments(self):
        """各節を辞書（変数 -> 0/1）として返す"""
        return [dict(c) for c in self.clauses]

    def subst(self, mapping):
        """
        区間変数を置換して正規化する

        Args:
            mapping: 変数番号 -> IvElem または 0/1（無い変数はそのまま）

        Returns:
            Cof: 置換後の標準形
        """
        result = Cof.bot()
        for clause in self.clauses:
            part = Cof.top()
            for v, eps in clause:
                image = mapping.get(v, IvElem.var(v))
                if isinstance(image, int):
                    image = IvElem.const(image)
                part = part.conj(cof_atom(image, eps))
            result = result.disj(part)
        return result

    def rename(self, renaming):
        return Cof.from_clauses({(renaming(v), e) for v, e in c} for c in self.clauses)

    def holds_at(self, point):
        """全変数への割当 point（変数番号 -> 0/1）で真かどうか"""
        return any(all(point[v] == e for v, e in c) for c in self.clauses)

    def __str__(self):
        if self.is_bot():
            return "F"
        if self.is_top():
            return "T"
        parts = []
        for c in self.clauses:
            atoms = [f"i{v} = {e}" for v, e in c]
            parts.append(" & ".join(atoms) if len(atoms) == 1 else "(" + " & ".join(atoms) + ")")
        return " | ".join(parts)


def cof_atom(elem, eps):
    """
    区間の標準形 elem に対する原子 (elem = ε) を DNF にする

    (r⊓s = 1) は (r = 1) ∧ (s = 1)、(r⊓s = 0) は (r = 0) ∨ (s = 0)。
    ⊔ はその双対。

    Args:
        elem: IvElem
        eps: 0 か 1

    Returns:
        Cof: 標準形
    """
    if eps == 1:
        return Cof.from_clauses({(v, 1) for v in c} for c in elem.clauses)
    # 各節のどれかの変数が 0 になる、を全節について
    result = Cof.top()
    for c in elem.clauses:
        result = result.conj(Cof.from_clauses([{(v, 0)} for v in c]))
    return result


def cof_normalize(phi, n):
    """
    Cof の式を標準 DNF に正規化する

    Args:
        phi: Cof の式（CofTop, CofBot, CofEq, CofAnd, CofOr）または標準形
        n: 文脈の大きさ

    Returns:
        Cof: 標準形
    """
    match phi:
        case Cof():
            bad = [v for v in phi.variables() if not 0 <= v < n]
            if bad:
                raise ScopeError(f"区間変数 {bad} が文脈の範囲外です（n={n}）")
            return phi
        case CofTop():
            return Cof.top()
        case CofBot():
            return Cof.bot()
        case CofEq(term, eps):
            if eps not in (0, 1):
                raise ValueError(f"端点は 0 か 1 です: {eps}")
            return cof_atom(iv_normalize(term, n), eps)
        case CofAnd(left, right):
            return cof_normalize(left, n).conj(cof_normalize(right, n))
        case CofOr(left, right):
            return cof_normalize(left, n).disj(cof_normalize(right, n))
    raise TypeError(f"Cof の式ではありません: {phi!r}")


def clause_satisfies(assignment, psi):
    """部分割当 assignment の下で psi が ⊤ に正規化されるか"""
    return psi.subst(assignment).is_top()


def cof_entails(phi, psi, n):
    """
    phi ⊢ psi を判定する

    phi の各節（部分割当）で psi を具体化し、⊤ になるかを調べる。
    ⊤ は (i=0)∨(i=1) を含意しない。

    Args:
        phi: 前提
        psi: 結論
        n: 文脈の大きさ

    Returns:
        bool: 含意するなら True
    """
    phi = cof_normalize(phi, n)
    psi = cof_normalize(psi, n)
    return all(clause_satisfies(a, psi) for a in phi.assignments())


def cof_equiv(phi, psi, n):
    return cof_entails(phi, psi, n) and cof_entails(psi, phi, n)


def cof_forall(phi, bound):
    """
    変数 bound について ∀ を取る

    ψ ⊢ φ[bound/r] が全ての区間項 r（新しい変数を含む）で成り立つ最大の ψ。
    bound を含む節は新しい変数を代入すると ⊤ にならないので、bound を
    含まない節だけが残る。(i=0) の節と (i=1) の節の剰余の合併は
    φ[i/k]（k は新しい変数）を含意しないので残さない。変数番号は詰めない。

    Args:
        phi: 標準形
        bound: 束縛する変数番号

    Returns:
        Cof: bound を含まない標準形
    """
    return Cof.from_clauses(set(c) for c in phi.clauses if bound not in dict(c))


def cof_forall_last(phi, n):
    """
    n+1 変数の式について最後の変数（番号 n）で ∀ を取る

    Args:
        phi: n+1 変数の Cof の式
        n: 結果の文脈の大きさ

    Returns:
        Cof: n 変数の標準形
    """
    return cof_forall(cof_normalize(phi, n + 1), n)
