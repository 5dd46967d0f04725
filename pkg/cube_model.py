# cube_model.py - 立方体圏 Box 上の有限前層（次元を打ち切った意味論オラクル）
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Callable

from cof import Cof, CofAnd, CofBot, CofEq, CofOr, CofTop
from errors import BoundExceeded, DepthExhausted
from interval import IvElem, IvVar, iv_normalize, monotone_functions

logger = logging.getLogger(__name__)

MAX_DIM = 3
MAX_DEPTH = 4
# 合成則を総当たりで調べる組の上限。超える段は等間隔に間引く
MAX_LAW_CHECKS = 200_000
# 自然変換の列挙を打ち切る個数
MAX_NAT_TRANS = 100_000

_MISSING = object()


# ---------------------------------------------------------------------------
# 立方体圏
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mor:
    """Box の射 dom → cod。cod 個の成分はそれぞれ dom 変数の単調関数"""
    dom: int
    cod: int
    comps: tuple

    def pattern(self):
        """各成分が定数なら 0/1、そうでなければ None"""
        return tuple(c.as_const() for c in self.comps)

    def __str__(self):
        return f"<{', '.join(str(c) for c in self.comps)}>:{self.dom}->{self.cod}"


def _strided(iterable, total, limit):
    if total <= limit:
        return iterable
    return itertools.islice(iterable, 0, None, math.ceil(total / limit))


class BoxCat:
    """
    次元 d までの立方体圏

    対象は 0..d、射 n → m は単調関数 Bool^n → Bool^m。射 f: n → m と
    g: m → k の合成 g ∘ f は g の成分に f の成分を代入して作る。
    """

    def __init__(self, d):
        if not 0 <= d <= MAX_DIM:
            raise BoundExceeded(f"次元の上限は {MAX_DIM} です: d={d}")
        self.d = d
        self.levels = range(d + 1)
        functions = {n: monotone_functions(n) for n in self.levels}
        self.homs = {
            (n, m): [Mor(n, m, comps) for comps in itertools.product(functions[n], repeat=m)]
            for n in self.levels for m in self.levels
        }
        self._compose = {}
        logger.debug(f"Box(d={d}) を構成しました: " + ", ".join(
            f"|Box({n},1)|={len(self.homs[(n, 1)])}" for n in self.levels if d >= 1))

    def hom(self, n, m):
        return self.homs[(n, m)]

    def identity(self, n):
        return Mor(n, n, tuple(IvElem.var(v) for v in range(n)))

    def compose(self, g, f):
        """g ∘ f（f: n → m, g: m → k）"""
        if f.cod != g.dom:
            raise ValueError(f"合成できません: {g} ∘ {f}")
        key = (g, f)
        result = self._compose.get(key)
        if result is None:
            mapping = dict(enumerate(f.comps))
            result = Mor(f.dom, g.cod, tuple(c.subst(mapping) for c in g.comps))
            self._compose[key] = result
        return result

    def into(self, n):
        """n への全ての射（定義域は d 以下）"""
        return [f for e in self.levels for f in self.hom(e, n)]

    def points(self, n):
        return self.hom(0, n)

    def projection(self, n):
        """最後の変数を捨てる射 n+1 → n"""
        return Mor(n + 1, n, tuple(IvElem.var(v) for v in range(n)))

    def face(self, n, eps):
        """最後の変数を ε に固定する射 n → n+1"""
        return Mor(n, n + 1, tuple(IvElem.var(v) for v in range(n)) + (IvElem.const(eps),))

    def dedekind(self, n):
        return len(self.hom(n, 1))

    def check_laws(self, limit=MAX_LAW_CHECKS):
        """
        単位律と結合律を調べる

        組の数が limit を超える段は等間隔に間引いて調べる。

        Returns:
            (int, list): 調べた組の数と反例の説明
        """
        failures = []
        checked = 0
        for (n, m), arrows in self.homs.items():
            for f in arrows:
                checked += 1
                if self.compose(self.identity(m), f) != f or self.compose(f, self.identity(n)) != f:
                    failures.append(f"単位律: {f}")
        for n, m, k, l in itertools.product(self.levels, repeat=4):
            hs, gs, fs = self.hom(k, l), self.hom(m, k), self.hom(n, m)
            total = len(hs) * len(gs) * len(fs)
            for h, g, f in _strided(itertools.product(hs, gs, fs), total, limit):
                checked += 1
                if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                    failures.append(f"結合律: {h} {g} {f}")
        return checked, failures


# ---------------------------------------------------------------------------
# 有限前層
# ---------------------------------------------------------------------------

@dataclass
class FinPresheaf:
    """
    次元を打ち切った反変前層

    Args:
        name: 表示名
        box: 立方体圏
        carriers: 段 n -> 要素のリスト
        action: (f: n → m, P(m) の要素) -> P(n) の要素
    """
    name: str
    box: BoxCat
    carriers: dict
    action: Callable

    def carrier(self, n):
        return self.carriers[n]

    def restrict(self, f, x):
        return self.action(f, x)

    def sizes(self):
        return [len(self.carriers[n]) for n in self.box.levels]

    def check_functorial(self, limit=MAX_LAW_CHECKS):
        """
        関手性（恒等射・合成・段への閉包）を調べる

        Returns:
            (int, list): 調べた個数と反例の説明
        """
        box = self.box
        failures = []
        checked = 0
        members = {n: set(self.carriers[n]) for n in box.levels}
        for n in box.levels:
            for x in self.carriers[n]:
                checked += 1
                if self.restrict(box.identity(n), x) != x:
                    failures.append(f"{self.name}: 恒等射で動く要素 {x}")
        for n, m, k in itertools.product(box.levels, repeat=3):
            fs, gs, xs = box.hom(n, m), box.hom(m, k), self.carriers[k]
            total = len(fs) * len(gs) * len(xs)
            for f, g, x in _strided(itertools.product(fs, gs, xs), total, limit):
                checked += 1
                y = self.restrict(f, self.restrict(g, x))
                if y not in members[n]:
                    failures.append(f"{self.name}: 段 {n} に無い制限 {y}")
                elif self.restrict(box.compose(g, f), x) != y:
                    failures.append(f"{self.name}: 合成 {g} ∘ {f} で {x} の制限が食い違う")
        return checked, failures


def representable(box, m):
    return FinPresheaf(f"y({m})", box, {n: box.hom(n, m) for n in box.levels},
                       lambda f, x: box.compose(x, f))


def interval_psh(box):
    """区間 𝕀 = y(1)。𝕀(n) = Box(n, 1)"""
    psh = representable(box, 1)
    psh.name = "I"
    return psh


def interval_ops(box, n):
    """𝕀(n) 上の ⊓ と ⊔（各点ごと）"""
    def meet(a, b):
        return Mor(n, 1, (a.comps[0].meet(b.comps[0]),))

    def join(a, b):
        return Mor(n, 1, (a.comps[0].join(b.comps[0]),))
    return meet, join


def delta_const(box, elements, name=None):
    """定数前層 ΔS（制限は全て恒等）"""
    elements = list(elements)
    return FinPresheaf(name or f"Δ{elements}", box, {n: elements for n in box.levels}, lambda f, x: x)


def eval_at0(psh):
    """段 0 での値 P₀"""
    return list(psh.carrier(0))


def nabla(box, elements, name=None):
    """
    余離散前層 ∇S。∇S(n) は Box(0, n) から S への関数全体

    要素は Box(0, n) の点の順に並べた tuple。f: n → m による制限は
    点 p を f ∘ p に送って読む。
    """
    elements = list(elements)
    points = {n: box.points(n) for n in box.levels}
    index = {n: {p: i for i, p in enumerate(points[n])} for n in box.levels}

    def action(f, x):
        return tuple(x[index[f.cod][box.compose(f, p)]] for p in points[f.dom])
    carriers = {n: list(itertools.product(elements, repeat=len(points[n]))) for n in box.levels}
    return FinPresheaf(name or f"∇{elements}", box, carriers, action)


def product(left, right):
    box = left.box
    return FinPresheaf(
        f"{left.name}×{right.name}", box,
        {n: [(x, y) for x in left.carrier(n) for y in right.carrier(n)] for n in box.levels},
        lambda f, p: (left.restrict(f, p[0]), right.restrict(f, p[1])),
    )


def coproduct(left, right):
    box = left.box

    def action(f, p):
        tag, x = p
        return (tag, (left if tag == "inl" else right).restrict(f, x))
    return FinPresheaf(
        f"{left.name}+{right.name}", box,
        {n: [("inl", x) for x in left.carrier(n)] + [("inr", y) for y in right.carrier(n)]
         for n in box.levels},
        action,
    )


# ---------------------------------------------------------------------------
# 自然変換と指数
# ---------------------------------------------------------------------------

def _propagate(assign, source, target, key, value):
    """(段, 要素) に値を置き、制限で決まる値を伝播する。矛盾すれば False"""
    box = source.box
    stack = [(key, value)]
    while stack:
        (m, x), y = stack.pop()
        current = assign.get((m, x), _MISSING)
        if current is not _MISSING:
            if current != y:
                return False
            continue
        assign[(m, x)] = y
        for n in box.levels:
            for f in box.hom(n, m):
                stack.append(((n, source.restrict(f, x)), target.restrict(f, y)))
    return True


def nat_transformations(source, target, limit=MAX_NAT_TRANS):
    """
    自然変換 source → target を全て列挙する

    上の段から値を選び、制限で下の段へ伝播させながら探索する。

    Args:
        source, target: 同じ Box 上の有限前層
        limit: 個数の上限（超えたら BoundExceeded）

    Returns:
        list: (段, 要素) -> 値 の辞書のリスト
    """
    box = source.box
    order = [(n, x) for n in reversed(box.levels) for x in source.carrier(n)]
    found = []

    def search(i, assign):
        while i < len(order) and order[i] in assign:
            i += 1
        if i == len(order):
            found.append(assign)
            if len(found) > limit:
                raise BoundExceeded(f"自然変換 {source.name} → {target.name} が {limit} 個を超えました")
            return
        n, _x = order[i]
        for y in target.carrier(n):
            trial = dict(assign)
            if _propagate(trial, source, target, order[i], y):
                search(i + 1, trial)

    search(0, {})
    logger.debug(f"自然変換 {source.name} → {target.name}: {len(found)} 個")
    return found


def count_nat_transformations(source, target):
    return len(nat_transformations(source, target))


class _Levels(dict):
    """要求された段だけを計算する台"""

    def __init__(self, compute):
        super().__init__()
        self.compute = compute

    def __missing__(self, n):
        value = self.compute(n)
        self[n] = value
        return value


@dataclass
class Exponential:
    """指数前層 X^B と、各段の要素を読むための添字"""
    presheaf: FinPresheaf
    keys: dict
    index: dict

    def const(self, target, n, x):
        """定数写像 λb.x（x ∈ X(n)）を X^B(n) の要素にする"""
        return tuple(target.restrict(f, x) for _k, (f, _b) in self.keys[n])


def exponential(base, target):
    """
    指数 target^base を段ごとに計算する

    段 n の要素は自然変換 y(n) × base → target（打ち切られた Box 上）。
    h: m → n による制限は y(n) 側を h で前合成する。段は要求されたときに
    計算する。

    Returns:
        Exponential
    """
    box = base.box
    domains = {n: product(representable(box, n), base) for n in box.levels}
    keys = {n: [(k, x) for k in box.levels for x in domains[n].carrier(k)] for n in box.levels}
    index = {n: {key: i for i, key in enumerate(keys[n])} for n in box.levels}

    def compute(n):
        return [tuple(t[key] for key in keys[n]) for t in nat_transformations(domains[n], target)]
    carriers = _Levels(compute)

    def action(h, t):
        n = h.cod
        return tuple(t[index[n][(k, (box.compose(h, f), b))]] for k, (f, b) in keys[h.dom])
    psh = FinPresheaf(f"{target.name}^{base.name}", box, carriers, action)
    return Exponential(psh, keys, index)


def _bijection_witness(mapping, domain, codomain):
    """写像が全単射でなければ理由を返す"""
    images = [mapping(x) for x in domain]
    if len(set(images)) != len(images):
        return "単射でない"
    missing = set(codomain) - set(images)
    if missing:
        return f"全射でない（像に無い要素 {len(missing)} 個）"
    return None


def const_map_witness(base, target):
    """
    定数写像 X → X^B が各段で全単射かを調べる

    Returns:
        str | None: 全単射でない最初の段の説明（全単射なら None）
    """
    expo = exponential(base, target)
    for n in base.box.levels:
        reason = _bijection_witness(lambda x: expo.const(target, n, x),
                                    target.carrier(n), expo.presheaf.carrier(n))
        if reason is not None:
            return f"段 {n}: {reason}（|X|={len(target.carrier(n))}, |X^B|={len(expo.presheaf.carrier(n))}）"
    return None


def is_discrete(psh):
    """X → X^𝕀 が各段で同型か"""
    return const_map_witness(interval_psh(psh.box), psh) is None


def is_null(base, target):
    """一点上の族 B について X → X^B が各段で同型か"""
    return const_map_witness(base, target) is None


def is_well_supported(psh):
    return all(len(psh.carrier(n)) > 0 for n in psh.box.levels)


def is_cubical_prop(psh):
    """同じ段の任意の二要素が一つ上の段の要素（道）で結ばれるか"""
    box = psh.box
    for n in range(box.d):
        d0, d1 = box.face(n, 0), box.face(n, 1)
        ends = {(psh.restrict(d0, p), psh.restrict(d1, p)) for p in psh.carrier(n + 1)}
        for b, c in itertools.product(psh.carrier(n), repeat=2):
            if (b, c) not in ends:
                return False
    return True


def coproduct_null_witness(base, left, right):
    """
    Φ : (B → X) + (B → Y) → (B → X + Y) が各段で全単射かを調べる

    Returns:
        str | None: 全単射でない段の説明
    """
    ex_l, ex_r = exponential(base, left), exponential(base, right)
    ex_sum = exponential(base, coproduct(left, right))
    for n in base.box.levels:
        domain = [("inl", t) for t in ex_l.presheaf.carrier(n)] + [("inr", t) for t in ex_r.presheaf.carrier(n)]

        def phi(p):
            tag, t = p
            return tuple((tag, v) for v in t)
        reason = _bijection_witness(phi, domain, ex_sum.presheaf.carrier(n))
        if reason is not None:
            return f"段 {n}: {reason}"
    return None


# ---------------------------------------------------------------------------
# 篩
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sieve:
    """n への射の集合で前合成で閉じたもの"""
    n: int
    members: frozenset

    def leq(self, other):
        return self.members <= other.members


def maximal_sieve(box, n):
    return Sieve(n, frozenset(box.into(n)))


def is_sieve(box, sieve):
    for f in sieve.members:
        for e in box.levels:
            for g in box.hom(e, f.dom):
                if box.compose(f, g) not in sieve.members:
                    return False
    return True


def holds_under(phi, f, n):
    """
    射 f で引き戻した φ が ⊤ になるか（篩への所属）

    原子 (r = ε) は r を f で制限した結果が端点 ε に等しいときに成り立つ。
    ∧ と ∨ は篩の共通部分と合併。
    """
    match phi:
        case CofTop():
            return True
        case CofBot():
            return False
        case CofEq(IvVar(index), eps):
            return f.comps[index].as_const() == eps
        case CofEq(term, eps):
            return iv_normalize(term, n).subst(dict(enumerate(f.comps))).as_const() == eps
        case CofAnd(left, right):
            return holds_under(left, f, n) and holds_under(right, f, n)
        case CofOr(left, right):
            return holds_under(left, f, n) or holds_under(right, f, n)
        case Cof():
            consts = f.pattern()
            return any(all(consts[v] == e for v, e in c) for c in phi.clauses)
    raise TypeError(f"Cof の式ではありません: {phi!r}")


def cof_sieve(phi, n, box):
    if n > box.d:
        raise BoundExceeded(f"変数の数 {n} が次元 {box.d} を超えています")
    return Sieve(n, frozenset(f for f in box.into(n) if holds_under(phi, f, n)))


def sieve_leq(s, t):
    return s.leq(t)


# ---------------------------------------------------------------------------
# 簡約付き W 型の正規形（W′）
# ---------------------------------------------------------------------------

@dataclass
class Polynomial:
    """
    有限の簡約付き多項式 (Y, X, R, k)

    Args:
        name: 表示名
        ctors: 構成子の前層 Y
        arity: (段 n, y ∈ Y(n)) -> X(n, y) のリスト
        arity_restrict: (g: e → n, y ∈ Y(n), x ∈ X(n, y)) -> X(e, Y(g)(y)) の要素
        reducible: (段 n, y) -> y ∈ R(n) か
        reduction: (段 n, y ∈ R(n)) -> k(y) ∈ X(n, y)
    """
    name: str
    ctors: FinPresheaf
    arity: Callable
    arity_restrict: Callable
    reducible: Callable = lambda n, y: False
    reduction: Callable = None


@dataclass(frozen=True)
class Sup:
    """正規形 sup(y, α)。children は全ての枠 (g, x) とその子の組"""
    level: int
    head: object
    children: tuple
    depth: int = field(compare=False)

    def child(self, g, x):
        for (h, y), t in self.children:
            if h == g and y == x:
                return t
        raise KeyError((g, x))


def slots(poly, level, head):
    """sup(head, α) の α の定義域: g: e → level と x ∈ X(e, Y(g)(head)) の組"""
    box = poly.ctors.box
    return [(g, x) for e in reversed(box.levels) for g in box.hom(e, level)
            for x in poly.arity(e, poly.ctors.restrict(g, head))]


def restrict_nf(poly, g, t):
    """
    正規形の制限 N₀(g)

    Y(g)(y) が簡約可能なら α(g, k(Y(g)(y)))、そうでなければ
    sup(Y(g)(y), α′)、α′(h, x) = α(g ∘ h, x)。
    """
    box = poly.ctors.box
    head = poly.ctors.restrict(g, t.head)
    if poly.reducible(g.dom, head):
        return t.child(g, poly.reduction(g.dom, head))
    children = tuple(((h, x), t.child(box.compose(g, h), x)) for h, x in slots(poly, g.dom, head))
    return Sup(g.dom, head, children, t.depth)


def is_hereditarily_natural(poly, t):
    """α が自然（α(g∘h, X(h)x) = N₀(h)(α(g, x))）で、子も同様か"""
    box = poly.ctors.box
    for (g, x), child in t.children:
        if not is_hereditarily_natural(poly, child):
            return False
        head = poly.ctors.restrict(g, t.head)
        for e in box.levels:
            for h in box.hom(e, g.dom):
                x2 = poly.arity_restrict(h, head, x)
                if t.child(box.compose(g, h), x2) != restrict_nf(poly, h, child):
                    return False
    return True


@dataclass
class WPrime:
    """深さ depth までの W′ の要素（段ごと）"""
    poly: Polynomial
    depth: int
    elements: dict
    exhausted: bool

    def presheaf(self):
        return FinPresheaf(f"W'({self.poly.name})", self.poly.ctors.box, self.elements,
                           lambda g, t: restrict_nf(self.poly, g, t))


def _natural_families(poly, level, head, previous):
    """
    子が previous に属する自然な α を全て列挙する

    上の段の枠から子を選び、制限で決まる枠へ伝播する。
    """
    box = poly.ctors.box
    identity = box.identity(level)
    # 恒等射の枠を先に選ぶと残りの多くが伝播で決まる
    canonical = slots(poly, level, head)
    order = sorted(canonical, key=lambda s: (-s[0].dom, s[0] != identity))
    members = {e: set(previous[e]) for e in box.levels}
    found = []

    def place(assign, slot, child):
        stack = [(slot, child)]
        while stack:
            (g, x), t = stack.pop()
            if t not in members[g.dom]:
                return False
            current = assign.get((g, x), _MISSING)
            if current is not _MISSING:
                if current != t:
                    return False
                continue
            assign[(g, x)] = t
            y = poly.ctors.restrict(g, head)
            for e in box.levels:
                for h in box.hom(e, g.dom):
                    stack.append(((box.compose(g, h), poly.arity_restrict(h, y, x)), restrict_nf(poly, h, t)))
        return True

    def search(i, assign):
        while i < len(order) and order[i] in assign:
            i += 1
        if i == len(order):
            found.append(tuple((slot, assign[slot]) for slot in canonical))
            return
        for t in previous[order[i][0].dom]:
            trial = dict(assign)
            if place(trial, order[i], t):
                search(i + 1, trial)

    search(0, {})
    return found


def w_prime(poly, depth, strict=False):
    """
    深さ depth までの正規形を段ごとに列挙する

    頭は簡約可能でない構成子に限り、α は自然なものだけを残す
    （遺伝的に自然な元の部分対象）。

    Args:
        poly: Polynomial
        depth: 木の深さの上限（MAX_DEPTH 以下）
        strict: True なら深さが足りないとき DepthExhausted を送出する

    Returns:
        WPrime
    """
    if not 1 <= depth <= MAX_DEPTH:
        raise BoundExceeded(f"深さの上限は {MAX_DEPTH} です: depth={depth}")
    box = poly.ctors.box
    layers = [{n: [] for n in box.levels}]
    for d in range(1, depth + 1):
        previous = layers[-1]
        current = {}
        for n in box.levels:
            elems = []
            for y in poly.ctors.carrier(n):
                if poly.reducible(n, y):
                    continue
                for alpha in _natural_families(poly, n, y, previous):
                    elems.append(Sup(n, y, alpha, 1 + max((t.depth for _s, t in alpha), default=0)))
            current[n] = elems
        layers.append(current)
    exhausted = any(len(layers[-1][n]) != len(layers[-2][n]) for n in box.levels)
    if exhausted:
        message = f"W'({poly.name}) は深さ {depth} で閉じていません"
        if strict:
            raise DepthExhausted(message)
        logger.warning(message)
    logger.debug(f"W'({poly.name}) 深さ {depth}: 段ごとの個数 {[len(layers[-1][n]) for n in box.levels]}")
    return WPrime(poly, depth, layers[-1], exhausted)


def check_case_split(w):
    """
    制限が場合分けの等式をそのまま満たし、結果が W′ に属するかを調べる

    Returns:
        (int, list): 調べた個数と反例の説明
    """
    poly, box = w.poly, w.poly.ctors.box
    members = {n: set(w.elements[n]) for n in box.levels}
    failures = []
    checked = 0
    for d in box.levels:
        for t in w.elements[d]:
            for e in box.levels:
                for g in box.hom(e, d):
                    checked += 1
                    r = restrict_nf(poly, g, t)
                    head = poly.ctors.restrict(g, t.head)
                    if poly.reducible(e, head):
                        ok = r == t.child(g, poly.reduction(e, head))
                    else:
                        ok = r.head == head and all(
                            r.child(h, x) == t.child(box.compose(g, h), x) for h, x in slots(poly, e, head))
                    if not ok:
                        failures.append(f"{g} による {t.head} の制限が場合分けと食い違う")
                    elif r not in members[e]:
                        failures.append(f"{g} による {t.head} の制限が W' に無い")
    return checked, failures


def reducible_heads(w):
    return [t for n in w.poly.ctors.box.levels for t in w.elements[n]
            if w.poly.reducible(n, t.head)]


@dataclass
class Algebra:
    """
    小さな代数: 台の前層と構造写像

    structure(段, 頭, β) の β は枠 (g, x) -> 台の要素 の辞書。
    """
    carrier: FinPresheaf
    structure: Callable


def fold(w, algebra):
    """構造的再帰による代数写像（要素 -> 台の要素 の辞書）"""
    memo = {}

    def go(t):
        value = memo.get(t)
        if value is None:
            value = algebra.structure(t.level, t.head, {slot: go(c) for slot, c in t.children})
            memo[t] = value
        return value
    for n in w.poly.ctors.box.levels:
        for t in w.elements[n]:
            go(t)
    return memo


def brute_force_algebra_maps(w, algebra):
    """
    自然で構造写像と可換な写像を総当たりで全て列挙する

    Returns:
        list: 要素 -> 台の要素 の辞書のリスト
    """
    box = w.poly.ctors.box
    order = sorted(((n, t) for n in box.levels for t in w.elements[n]), key=lambda p: p[1].depth)
    found = []

    def consistent(assign, n, t, a):
        if algebra.structure(n, t.head, {slot: assign[c] for slot, c in t.children}) != a:
            return False
        for e in box.levels:
            for g in box.hom(e, n):
                r = restrict_nf(w.poly, g, t)
                if r in assign and assign[r] != algebra.carrier.restrict(g, a):
                    return False
        return True

    def search(i, assign):
        if i == len(order):
            found.append(dict(assign))
            return
        n, t = order[i]
        for a in algebra.carrier.carrier(n):
            if consistent(assign, n, t, a):
                assign[t] = a
                search(i + 1, assign)
                del assign[t]

    search(0, {})
    return found


# ---------------------------------------------------------------------------
# 具体的な多項式と代数
# ---------------------------------------------------------------------------

def constant_poly(box, labels):
    """引数も簡約も無い構成子だけの多項式"""
    return Polynomial(f"const{list(labels)}", delta_const(box, labels), lambda n, y: [], lambda g, y, x: x)


def nat_poly(box):
    """zero と suc（引数一つ）の多項式。簡約は無い"""
    return Polynomial("nat", delta_const(box, ["zero", "suc"]),
                      lambda n, y: ["*"] if y == "suc" else [], lambda g, y, x: x)


def hcomp_poly(box):
    """
    点 pt と、区間の元 r で添字づけた一引数の構成子 h_r の多項式

    r = 1 の h_r は簡約可能で、唯一の引数に簡約する。
    """
    def carriers(n):
        return ["pt"] + [("h", r) for r in box.hom(n, 1)]

    def action(g, y):
        return y if y == "pt" else ("h", box.compose(y[1], g))
    ctors = FinPresheaf("hcomp", box, {n: carriers(n) for n in box.levels}, action)
    return Polynomial(
        "hcomp", ctors,
        lambda n, y: [] if y == "pt" else ["*"],
        lambda g, y, x: x,
        lambda n, y: y != "pt" and y[1].comps[0].is_one(),
        lambda n, y: "*",
    )


def nat_algebra(box, bound):
    """{0..bound} 上の後者関数（bound で飽和）"""
    def structure(n, head, beta):
        if head == "zero":
            return 0
        return min(beta[(box.identity(n), "*")] + 1, bound)
    return Algebra(delta_const(box, range(bound + 1)), structure)


def hcomp_algebra(box):
    """pt を 1 に送り、h_r は引数の値をそのまま返す代数"""
    def structure(n, head, beta):
        if head == "pt":
            return 1
        return beta[(box.identity(n), "*")]
    return Algebra(delta_const(box, [0, 1]), structure)
