# oracle.py - 有限モデルとカーネルの照合（スイートごとの記録を作る）
import itertools
import json
import logging
import os
from dataclasses import asdict, dataclass
from functools import reduce

import cube_model as cm
import fibration
import hit
import kleene
from checker import Checker
from cof import Cof, CofAnd, CofBot, CofEq, CofOr, CofTop, cof_entails, cof_forall
from conversion import conv
from errors import BoundExceeded, CheckerError, ConstructionError
from evaluate import act, do_app, eval_term, generic_level
from interval import IvElem, IvJoin, IvMeet, IvOne, IvVar, IvZero, iv_normalize, monotone_functions, random_terms
from syntax import Lam, NatT
from values import (
    Env, NVar, Native, VCon, VGlue, VGlueElem, VHit, VId, VIdPair, VInl, VInr, VLam,
    VLift, VLiftIn, VNat, VNeutral, VPair, VPathP, VPi, VPLam, VSigma, VStar, VSuc, VSum, VUnit,
    VUniv, VZero, const_closure,
)

logger = logging.getLogger(__name__)

DEDEKIND = {0: 2, 1: 3, 2: 6, 3: 20, 4: 168}


@dataclass
class Record:
    """
    照合一件の結果

    Args:
        name: スイート名/項目名
        size: 調べた事例の数
        passed: 全て一致したか
        witness: 失敗したときの反例の説明
    """
    name: str
    size: int
    passed: bool
    witness: str = None

    def to_dict(self):
        return asdict(self)


def _record(name, size, failures):
    failures = list(failures)
    return Record(name, size, not failures, failures[0] if failures else None)


def _check(name, ok, witness=None):
    return Record(name, 1, bool(ok), None if ok else witness)


# ---------------------------------------------------------------------------
# Box と区間
# ---------------------------------------------------------------------------

def suite_box(dim, depth, **_):
    records = []
    for n in range(min(dim, 3) + 1):
        count = len(monotone_functions(n))
        records.append(_check(f"box/dedekind({n})", count == DEDEKIND[n], f"M({n}) = {count}"))
    box = cm.BoxCat(dim)
    for n in box.levels:
        for m in box.levels:
            expected = DEDEKIND[n] ** m
            size = len(box.hom(n, m))
            records.append(_check(f"box/hom({n},{m})", size == expected, f"|Box({n},{m})| = {size}, 期待 {expected}"))
    checked, failures = box.check_laws()
    records.append(_record(f"box/laws(d={dim})", checked, failures))
    return records


def _iv_value(t, point):
    """区間項を点で直接評価する"""
    match t:
        case IvZero():
            return False
        case IvOne():
            return True
        case IvVar(index):
            return point[index]
        case IvMeet(left, right):
            return _iv_value(left, point) and _iv_value(right, point)
        case IvJoin(left, right):
            return _iv_value(left, point) or _iv_value(right, point)
    raise TypeError(f"区間項ではありません: {t!r}")


def suite_interval(dim, depth, **_):
    records = []
    for n in range(5):
        terms = random_terms(n, 2 if n <= 2 else 1)
        points = list(itertools.product((False, True), repeat=n))
        failures = []
        for t in terms:
            table = tuple(_iv_value(t, p) for p in points)
            nf = iv_normalize(t, n)
            if nf != IvElem.from_truth_table(n, table) or nf.truth_table(n) != table:
                failures.append(f"{t} の標準形 {nf} が真理値表と合わない")
        records.append(_record(f"interval/normal-form(n={n})", len(terms), failures))
    records.append(_check("interval/dedekind(4)", len(monotone_functions(4)) == 168))

    box = cm.BoxCat(min(dim, 2))
    psh = cm.interval_psh(box)
    failures = []
    checked = 0
    for n in box.levels:
        meet, join = cm.interval_ops(box, n)
        for a, b, c in itertools.product(psh.carrier(n), repeat=3):
            checked += 1
            if meet(a, join(b, c)) != join(meet(a, b), meet(a, c)):
                failures.append(f"段 {n}: ⊓ が ⊔ に分配しない ({a}, {b}, {c})")
            if join(a, meet(b, c)) != meet(join(a, b), join(a, c)):
                failures.append(f"段 {n}: ⊔ が ⊓ に分配しない ({a}, {b}, {c})")
        for e in box.levels:
            emeet, _ = cm.interval_ops(box, e)
            for f in box.hom(e, n):
                for a, b in itertools.product(psh.carrier(n), repeat=2):
                    checked += 1
                    if psh.restrict(f, meet(a, b)) != emeet(psh.restrict(f, a), psh.restrict(f, b)):
                        failures.append(f"{f} による制限が ⊓ と可換でない")
    records.append(_record("interval/lattice", checked, failures))
    checked, failures = psh.check_functorial()
    records.append(_record("interval/functorial", checked, failures))
    return records


# ---------------------------------------------------------------------------
# Cof と篩
# ---------------------------------------------------------------------------

def enumerate_cofs(n, max_clauses=2):
    """n 変数で節が max_clauses 個以下の標準形を全て列挙する"""
    partial = [
        tuple((v, e) for v, e in enumerate(choice) if e is not None)
        for choice in itertools.product((None, 0, 1), repeat=n)
    ]
    found = {Cof.bot()}
    for k in range(1, max_clauses + 1):
        for combo in itertools.combinations(partial, k):
            found.add(Cof.from_clauses(combo))
    return sorted(found, key=lambda c: (len(c.clauses), c.clauses))


def cof_formula(c):
    """標準形を式（CofEq の ∧ と ∨）に戻す"""
    if c.is_bot():
        return CofBot()
    disjuncts = []
    for clause in c.clauses:
        atoms = [CofEq(IvVar(v), e) for v, e in clause]
        disjuncts.append(reduce(CofAnd, atoms) if atoms else CofTop())
    return reduce(CofOr, disjuncts)


def _sieve_bits(phi, n, morphisms):
    bits = 0
    for k, f in enumerate(morphisms):
        if cm.holds_under(phi, f, n):
            bits |= 1 << k
    return bits


def suite_cof_completeness(dim, depth, max_clauses=2, **_):
    records = []
    box = cm.BoxCat(dim)
    for n in range(min(dim, 3) + 1):
        cofs = enumerate_cofs(n, max_clauses)
        formulas = [cof_formula(c) for c in cofs]
        morphisms = box.into(n)
        bits = [_sieve_bits(phi, n, morphisms) for phi in formulas]
        failures = []
        checked = 0
        for i, j in itertools.product(range(len(cofs)), repeat=2):
            checked += 1
            syntactic = cof_entails(formulas[i], formulas[j], n)
            semantic = bits[i] & ~bits[j] == 0
            if syntactic != semantic:
                failures.append(f"{cofs[i]} ⊢ {cofs[j]}: 構文 {syntactic}, 篩 {semantic}")
        records.append(_record(f"cof-completeness/entails(n={n})", checked, failures))
    if dim >= 1:
        both = CofOr(CofEq(IvVar(0), 0), CofEq(IvVar(0), 1))
        top = cm.cof_sieve(CofTop(), 1, box)
        ends = cm.cof_sieve(both, 1, box)
        strict = ends.leq(top) and not top.leq(ends) and not cof_entails(CofTop(), both, 1)
        records.append(_check("cof-completeness/endpoints-strict", strict,
                              "⊤ と (i=0)∨(i=1) の篩が一致してしまう"))
    return records


def suite_sieve(dim, depth, **_):
    records = []
    box = cm.BoxCat(min(dim, 2))
    for n in box.levels:
        bot = cm.cof_sieve(CofBot(), n, box)
        top = cm.cof_sieve(CofTop(), n, box)
        records.append(_check(f"sieve/bot(n={n})", not bot.members, f"{len(bot.members)} 個の射を含む"))
        records.append(_check(f"sieve/top(n={n})", top == cm.maximal_sieve(box, n), "最大の篩でない"))
        cofs = enumerate_cofs(n)
        failures = [f"{c} の篩が前合成で閉じていない" for c in cofs
                    if not cm.is_sieve(box, cm.cof_sieve(cof_formula(c), n, box))]
        records.append(_record(f"sieve/closed(n={n})", len(cofs), failures))

    for n in range(min(dim, 2) + 1):
        failures = []
        cofs = enumerate_cofs(n + 1)
        for phi in cofs:
            psi = cof_forall(phi, n)
            for label, image, ctx in (
                ("0", IvElem.zero(), n),
                ("1", IvElem.one(), n),
                ("fresh", IvElem.var(n + 1), n + 2),
            ):
                if not cof_entails(psi, phi.subst({n: image}), ctx):
                    failures.append(f"∀ {phi} = {psi} が φ[{label}] を含意しない")
        records.append(_record(f"sieve/forall(n={n})", len(cofs), failures))
    return records


# ---------------------------------------------------------------------------
# Δ, ∇ と離散性
# ---------------------------------------------------------------------------

def _sets():
    return [list(range(k)) for k in range(1, 4)]


def suite_delta_nabla(dim, depth, **_):
    records = []
    box = cm.BoxCat(min(dim, 2))
    for s in _sets():
        delta = cm.delta_const(box, s)
        nab = cm.nabla(box, s)
        records.append(_check(f"delta-nabla/eval-delta(|S|={len(s)})", cm.eval_at0(delta) == s))
        records.append(_check(f"delta-nabla/eval-nabla(|S|={len(s)})", sorted(cm.eval_at0(nab)) == sorted((x,) for x in s)))
        if box.d >= 1:
            size = len(nab.carrier(1))
            records.append(_check(f"delta-nabla/nabla-1(|S|={len(s)})", size == len(s) ** 2,
                                  f"|∇S(1)| = {size}"))
        for psh in (delta, nab):
            checked, failures = psh.check_functorial()
            records.append(_record(f"delta-nabla/functorial({psh.name})", checked, failures))

    targets = [cm.interval_psh(box), cm.delta_const(box, [0, 1]), cm.nabla(box, [0, 1])]
    for s in _sets():
        delta = cm.delta_const(box, s)
        nab = cm.nabla(box, s)
        for p in targets:
            p0 = len(p.carrier(0))
            left = cm.count_nat_transformations(delta, p)
            records.append(_check(f"delta-nabla/hom(Δ{s},{p.name})", left == p0 ** len(s),
                                  f"{left} 個, 期待 {p0 ** len(s)}"))
            right = cm.count_nat_transformations(p, nab)
            records.append(_check(f"delta-nabla/hom({p.name},∇{s})", right == len(s) ** p0,
                                  f"{right} 個, 期待 {len(s) ** p0}"))
    return records


def suite_discrete(dim, depth, **_):
    box = cm.BoxCat(min(dim, 2))
    cases = [(cm.delta_const(box, s), True) for s in _sets()]
    cases.append((cm.delta_const(box, range(4), "Δℕ_4"), True))
    cases.append((cm.interval_psh(box), False))
    if box.d >= 1:
        cases.append((cm.nabla(box, [0, 1]), False))
    records = []
    for psh, expected in cases:
        witness = cm.const_map_witness(cm.interval_psh(box), psh)
        records.append(_check(f"discrete/{psh.name}", (witness is None) == expected,
                              witness or "離散であってはならない"))
    return records


# ---------------------------------------------------------------------------
# W′
# ---------------------------------------------------------------------------

def _check_wprime(name, w, algebra=None):
    records = []
    box = w.poly.ctors.box
    checked, failures = w.presheaf().check_functorial()
    records.append(_record(f"wprime/{name}/functorial", checked, failures))
    checked, failures = cm.check_case_split(w)
    records.append(_record(f"wprime/{name}/case-split", checked, failures))
    reducible = cm.reducible_heads(w)
    records.append(_check(f"wprime/{name}/no-reducible-head", not reducible,
                          f"簡約可能な頭を持つ要素が {len(reducible)} 個"))
    bad = [t for n in box.levels for t in w.elements[n] if not cm.is_hereditarily_natural(w.poly, t)]
    records.append(_record(f"wprime/{name}/natural", sum(len(w.elements[n]) for n in box.levels),
                           [f"自然でない要素 {t.head}" for t in bad]))
    if algebra is not None:
        folded = cm.fold(w, algebra)
        maps = cm.brute_force_algebra_maps(w, algebra)
        ok = len(maps) == 1 and maps[0] == folded
        records.append(_check(f"wprime/{name}/initial", ok, f"代数写像が {len(maps)} 個"))
    return records


def suite_wprime(dim, depth, **_):
    box = cm.BoxCat(min(dim, 1))
    depth = min(max(depth, 1), cm.MAX_DEPTH)
    records = []
    labels = ["a", "b", "c"]
    w = cm.w_prime(cm.constant_poly(box, labels), depth)
    ok = all(sorted(t.head for t in w.elements[n]) == labels for n in box.levels) and not w.exhausted
    records.append(_check("wprime/const/heads", ok, "頭が Y と一対一に対応しない"))
    records.extend(_check_wprime("nat", cm.w_prime(cm.nat_poly(box), depth), cm.nat_algebra(box, depth)))
    records.extend(_check_wprime("hcomp", cm.w_prime(cm.hcomp_poly(box), depth), cm.hcomp_algebra(box)))
    return records


# ---------------------------------------------------------------------------
# ヌル性
# ---------------------------------------------------------------------------

def _premise(b, left, right):
    """余積のヌル性の前提。成り立たなければその理由"""
    if not cm.is_well_supported(b):
        return f"{b.name} が空の段を持つ"
    if not cm.is_cubical_prop(b):
        return f"{b.name} が命題でない"
    for x in (left, right):
        if not cm.is_null(b, x):
            return f"{x.name} が {b.name} ヌルでない"
    return None


def suite_coproduct_null(dim, depth, **_):
    box = cm.BoxCat(min(dim, 1))
    # ∇S は段ごとに大きさが変わる整備された命題
    bases = [cm.delta_const(box, ["*"], "Δ1"), cm.nabla(box, [0, 1], "∇2"), cm.nabla(box, [0, 1, 2], "∇3")]
    pairs = [([0, 1], [0]), ([], [0, 1]), ([0], [])]
    records = []
    for b in bases:
        for xs, ys in pairs:
            left, right = cm.delta_const(box, xs), cm.delta_const(box, ys)
            reason = _premise(b, left, right)
            if reason is not None:
                raise ConstructionError(f"coproduct-null の前提が成り立ちません: {reason}")
            witness = cm.coproduct_null_witness(b, left, right)
            records.append(_check(f"coproduct-null/{b.name}/{left.name}+{right.name}", witness is None, witness))
    return records


def suite_discrete_null(dim, depth, **_):
    box = cm.BoxCat(min(dim, 2))
    interval = cm.interval_psh(box)
    records = []
    for target in (cm.delta_const(box, [0, 1]), cm.delta_const(box, []), cm.delta_const(box, range(4), "Δℕ_4")):
        witness = cm.const_map_witness(interval, target)
        records.append(_check(f"discrete-null/{target.name}", witness is None, witness))
    # 𝕀 自身は 𝕀 ヌルでない
    records.append(_check("discrete-null/I-not-null", not cm.is_null(interval, interval), "𝕀 が 𝕀 ヌルになってしまう"))
    return records


def suite_delta_preservation(dim, depth, **_):
    box = cm.BoxCat(min(dim, 2))
    records = []
    s, t = [0, 1], ["a", "b", "c"]
    prod = cm.product(cm.delta_const(box, s), cm.delta_const(box, t))
    expected = [(x, y) for x in s for y in t]
    ok = all(prod.carrier(n) == expected and all(prod.restrict(f, p) == p for f in box.hom(n, n) for p in prod.carrier(n))
             for n in box.levels)
    records.append(_check("delta-preservation/product", ok, "Δ(S×T) と ΔS×ΔT が一致しない"))

    f, g = (lambda x: x % 2), (lambda x: 0)
    source = list(range(4))
    equalizer = [x for x in source if f(x) == g(x)]
    delta_eq = cm.delta_const(box, equalizer)
    ok = all([x for x in cm.delta_const(box, source).carrier(n) if f(x) == g(x)] == delta_eq.carrier(n)
             for n in box.levels)
    records.append(_check("delta-preservation/equalizer", ok, "等化子が段ごとに一致しない"))

    nat = cm.delta_const(box, range(5), "Δℕ_5")
    failures = []
    for n in box.levels:
        for h in box.hom(n, n):
            for x in nat.carrier(n):
                if x + 1 < 5 and nat.restrict(h, x + 1) != nat.restrict(h, x) + 1:
                    failures.append(f"後者が {h} による制限と可換でない")
        if nat.restrict(box.identity(n), 0) != 0:
            failures.append("零が制限で保たれない")
    records.append(_record("delta-preservation/nno", len(nat.carrier(0)), failures))

    functions = list(itertools.product(s, repeat=len(t)))
    pi = cm.delta_const(box, functions, "Δ(S^T)")
    size_ok = len(pi.carrier(0)) == len(s) ** len(t)
    records.append(_check("delta-preservation/pi-size", size_ok, f"|S^T| = {len(pi.carrier(0))}"))
    # 比較写像 Δ(Π_T S) → Π_T ΔS は成分ごとの評価
    components = [cm.delta_const(box, s) for _ in t]
    failures = []
    for n in box.levels:
        tuples = set(itertools.product(*(c.carrier(n) for c in components)))
        images = {tuple(fn[k] for k in range(len(t))) for fn in pi.carrier(n)}
        if images != tuples or len(images) != len(pi.carrier(n)):
            failures.append(f"段 {n}: 比較写像が全単射でない")
    records.append(_record("delta-preservation/pi-comparison", len(box.levels), failures))
    return records


# ---------------------------------------------------------------------------
# HIT の計算規則と輸送
# ---------------------------------------------------------------------------

def _nat(k):
    v = VZero()
    for _ in range(k):
        v = VSuc(v)
    return v


class _Levels:
    """中立変数・区間変数に使うレベルの払い出し"""

    def __init__(self):
        self.depth = 0

    def fresh(self):
        self.depth += 1
        return self.depth - 1

    def var(self, ty):
        return VNeutral(ty, NVar(self.fresh(), ty))

    def interval(self):
        return IvElem.var(self.fresh())


def _builtins():
    glob = Checker().glob
    return {name: glob.hits[name] for name in ("Trunc", "LFR", "Susp", "Cone", "KB", "JB")}


def _kb_setup(decls, levels):
    kb = decls["KB"]
    params = (VNat(), VLam("a", VNat(), const_closure(VNat())))
    ty = VHit(kb, params)
    base = levels.var(ty)
    cone = decls["Cone"]

    def ext(a, f):
        return hit.make_con(kb, params, "pastecone", (a, hit.make_con(cone, (VNat(),), "inl", (VStar(),)), f))

    def isext(a, f, b, r):
        return hit.make_con(kb, params, "pastecone", (a, hit.make_con(cone, (VNat(),), "inr", (b, r)), f))

    f0 = VLam("b", VNat(), const_closure(base))
    funs = [
        f0,
        VLam("b", VNat(), Native(lambda b: ext(b, f0))),
        VLam("b", VNat(), Native(lambda b: isext(_nat(1), f0, b, IvElem.zero()))),
        VLam("b", VNat(), Native(lambda b: ext(_nat(2), VLam("c", VNat(), Native(lambda c: ext(c, f0)))))),
    ]
    return kb, params, ty, ext, isext, funs


def suite_hit_beta(dim, depth, **_):
    decls = _builtins()
    levels = _Levels()
    records = []
    nat = VNat()

    trunc = decls["Trunc"]
    t_params = (nat,)
    t_ty = VHit(trunc, t_params)
    pool = [hit.make_con(trunc, t_params, "inc", (_nat(k),)) for k in range(4)]
    pool += [levels.var(t_ty), levels.var(t_ty)]
    i = levels.interval()
    pool += [hit.make_con(trunc, t_params, "sq", (pool[0], pool[4], i)),
             hit.make_con(trunc, t_params, "sq", (pool[5], pool[1], i))]
    cases = []
    for x, y in itertools.product(pool, repeat=2):
        cases.append(("trunc-sq-0", t_ty, hit.make_con(trunc, t_params, "sq", (x, y, IvElem.zero())), x))
        cases.append(("trunc-sq-1", t_ty, hit.make_con(trunc, t_params, "sq", (x, y, IvElem.one())), y))

    susp = decls["Susp"]
    s_ty = VHit(susp, t_params)
    north = hit.make_con(susp, t_params, "north", ())
    south = hit.make_con(susp, t_params, "south", ())
    points = [_nat(k) for k in range(6)] + [levels.var(nat)]
    for a in points:
        cases.append(("susp-merid-0", s_ty, hit.make_con(susp, t_params, "merid", (a, IvElem.zero())), north))
        cases.append(("susp-merid-1", s_ty, hit.make_con(susp, t_params, "merid", (a, IvElem.one())), south))

    cone = decls["Cone"]
    c_ty = VHit(cone, t_params)
    apex = hit.make_con(cone, t_params, "inl", (VStar(),))
    for a in points:
        cases.append(("cone-inr-0", c_ty, hit.make_con(cone, t_params, "inr", (a, IvElem.zero())), apex))

    # 余積でも両側の簡約がそのまま働く
    both = hit.coproduct("SuspCone", susp, cone)
    susp.glob.add_hit(both)
    b_ty = VHit(both, t_params)
    b_north = hit.make_con(both, t_params, "north", ())
    b_apex = hit.make_con(both, t_params, "inl", (VStar(),))
    for a in points:
        cases.append(("coproduct-merid-0", b_ty, hit.make_con(both, t_params, "merid", (a, IvElem.zero())), b_north))
        cases.append(("coproduct-inr-0", b_ty, hit.make_con(both, t_params, "inr", (a, IvElem.zero())), b_apex))

    kb, kb_params, kb_ty, _ext, _isext, funs = _kb_setup(decls, levels)
    for a, b in itertools.product(range(3), repeat=2):
        for f in funs[:3]:
            base = hit.make_con(cone, t_params, "inr", (_nat(b), IvElem.one()))
            value = hit.make_con(kb, kb_params, "pastecone", (_nat(a), base, f))
            cases.append(("kb-pastecone-1", kb_ty, value, do_app(f, _nat(b))))

    # Loc は B̂ についての J。inl の側の錐は B a の錐
    jb = decls["JB"]
    loc_ty = eval_term(Env(jb.glob, ()), hit.loc_term(NatT(), Lam("a", NatT(), NatT()), NatT()))
    l_params = loc_ty.params
    eta_funs = [
        VLam("b", nat, Native(lambda b: hit.make_con(jb, l_params, "alpha", (b,)))),
        VLam("b", nat, Native(lambda b: hit.make_con(jb, l_params, "alpha", (VSuc(b),)))),
    ]
    for a, b in itertools.product(range(3), repeat=2):
        for f in eta_funs:
            left = VInl(_nat(a))
            base = hit.make_con(cone, (do_app(l_params[1], left),), "inr", (_nat(b), IvElem.one()))
            value = hit.make_con(jb, l_params, "pastecone", (left, base, f))
            cases.append(("loc-pastecone-1", loc_ty, value, do_app(f, _nat(b))))

    lfr = decls["LFR"]
    lfr_ty = VHit(lfr, t_params)
    l_motive = VLam("_", lfr_ty, const_closure(nat))
    l_clauses = (VLam("a", nat, Native(lambda a: VSuc(a))),)
    for a in points:
        inc = hit.make_con(lfr, t_params, "inc", (a,))
        u = const_closure(inc)
        cases.append(("lfr-elim-inc", nat, hit.do_elim(lfr, t_params, l_motive, l_clauses, inc), VSuc(a)))
        for eps in (0, 1):
            cases.append(("lfr-hcomp-top", lfr_ty, fibration.hcomp(lfr_ty, Cof.top(), eps, u), inc))
            k = levels.fresh()
            stuck = fibration.hcomp(lfr_ty, Cof.eq(k, 0), eps, u)
            cases.append(("lfr-hcomp-restricted", lfr_ty, act(stuck, {k: IvElem.zero()}), inc))
            value = hit.do_elim(lfr, t_params, l_motive, l_clauses, stuck)
            cases.append(("lfr-elim-hcomp", nat, value, VSuc(a)))

    # J_B の alpha は項の引数だけを持ち、区間の引数（錐の母線）を持たない
    jb_ty = eval_term(Env(jb.glob, ()), hit.j_op_term(NatT(), Lam("a", NatT(), NatT()), NatT()))
    jb_params = jb_ty.params
    alpha_args = jb.constructor("alpha").args

    def alpha(x):
        return hit.make_con(jb, jb_params, "alpha", (x,))

    records.append(_check(
        "hit-beta/jb-alpha-no-paths",
        len(alpha_args) == 1 and alpha_args[0].kind == "term",
        "alpha が区間の引数を持つ",
    ))
    records.append(_check(
        "hit-beta/jb-alpha-canonical",
        all(isinstance(alpha(_nat(k)), VCon) for k in range(3)),
        "α(x) が標準形にならない",
    ))
    jb_funs = [
        VLam("b", nat, Native(alpha)),
        VLam("b", nat, const_closure(alpha(_nat(0)))),
        VLam("b", nat, Native(lambda b: alpha(VSuc(b)))),
    ]
    for a, b in itertools.product(range(3), repeat=2):
        for f in jb_funs:
            left = _nat(a)
            fam = (do_app(jb_params[1], left),)
            tip = hit.make_con(cone, fam, "inr", (_nat(b), IvElem.one()))
            foot = hit.make_con(cone, fam, "inr", (_nat(b), IvElem.zero()))
            ext = hit.make_con(jb, jb_params, "pastecone", (left, hit.make_con(cone, fam, "inl", (VStar(),)), f))
            value = hit.make_con(jb, jb_params, "pastecone", (left, tip, f))
            cases.append(("jb-isext-1", jb_ty, value, do_app(f, _nat(b))))
            value = hit.make_con(jb, jb_params, "pastecone", (left, foot, f))
            cases.append(("jb-isext-0", jb_ty, value, ext))

    for v in pool:
        u = const_closure(v)
        for eps in (0, 1):
            cases.append(("hcomp-top", t_ty, fibration.hcomp(t_ty, Cof.top(), eps, u), v))
            k = levels.fresh()
            stuck = fibration.hcomp(t_ty, Cof.eq(k, 0), eps, u)
            cases.append(("hcomp-restricted", t_ty, act(stuck, {k: IvElem.zero()}), v))

    motive = VLam("_", s_ty, const_closure(nat))
    clauses = (
        _nat(0), _nat(1),
        VLam("a", nat, Native(lambda a: VLam("i", nat, Native(lambda _i: VSuc(a))))),
    )
    for a in points:
        j = levels.interval()
        target = hit.make_con(susp, t_params, "merid", (a, j))
        expected = VSuc(a)
        cases.append(("susp-elim-merid", nat, hit.do_elim(susp, t_params, motive, clauses, target), expected))
    cases.append(("susp-elim-north", nat, hit.do_elim(susp, t_params, motive, clauses, north), _nat(0)))
    cases.append(("susp-elim-south", nat, hit.do_elim(susp, t_params, motive, clauses, south), _nat(1)))

    t_motive = VLam("_", t_ty, const_closure(nat))
    t_clauses = (VLam("a", nat, Native(lambda a: VSuc(a))), VLam("x", t_ty, const_closure(_nat(0))))
    for k in range(5):
        value = hit.do_elim(trunc, t_params, t_motive, t_clauses, hit.make_con(trunc, t_params, "inc", (_nat(k),)))
        cases.append(("trunc-elim-inc", nat, value, _nat(k + 1)))

    by_rule = {}
    for rule, ty, lhs, rhs in cases:
        entry = by_rule.setdefault(rule, [0, []])
        entry[0] += 1
        if not conv(levels.depth, ty, lhs, rhs):
            entry[1].append(f"{rule}: 事例 {entry[0]} で両辺が等しくない")
    for rule, (size, failures) in by_rule.items():
        records.append(_record(f"hit-beta/{rule}", size, failures))
    records.append(_check("hit-beta/count", len(cases) >= 200, f"事例が {len(cases)} 個しかない"))
    return records


def suite_transport(dim, depth, **_):
    decls = _builtins()
    levels = _Levels()
    records = []
    nat = VNat()

    kb, params, ty, ext, isext, funs = _kb_setup(decls, levels)
    r = levels.interval()
    values = [ext(_nat(a), f) for a in range(3) for f in funs]
    values += [isext(_nat(a), f, _nat(b), s) for a in range(3) for f in funs for b in range(3)
               for s in (r, IvElem.zero(), IvElem.one())]
    line = const_closure(ty)
    failures = []
    for k, a in enumerate(values):
        g = generic_level()
        moved = hit.k_transport(ty, g, line, Cof.top(), 0, a)
        if moved is None:
            # 中立な値（基点そのもの）は輸送が止まる
            moved = fibration.transp(line, Cof.top(), 0, a)
        if not conv(levels.depth, ty, moved, a):
            failures.append(f"K_B の値 {k} が ⊤ の下の輸送で動いた")
    records.append(_record("transport/kb-top", len(values), failures))

    trunc = decls["Trunc"]
    susp = decls["Susp"]
    pi = VPi("_", nat, const_closure(nat))
    face = Cof.eq(levels.fresh(), 0)
    glue = VGlue(nat, face, nat, fibration.transp_equiv(const_closure(nat), 0))
    one = _nat(1)
    samples = [
        ("nat", nat, _nat(3)),
        ("trunc", VHit(trunc, (nat,)), hit.make_con(trunc, (nat,), "inc", (_nat(2),))),
        ("susp", VHit(susp, (nat,)), hit.make_con(susp, (nat,), "merid", (one, levels.interval()))),
        ("pi", pi, VLam("x", nat, Native(lambda x: VSuc(x)))),
        ("sigma", VSigma("x", nat, const_closure(nat)), VPair(one, _nat(2))),
        ("path", VPathP("_", const_closure(nat), one, one), VPLam("_", const_closure(one))),
        ("sum-inl", VSum(nat, VUnit()), VInl(_nat(2))),
        ("sum-inr", VSum(nat, VUnit()), VInr(VStar())),
        ("unit", VUnit(), VStar()),
        ("univ", VUniv(0), nat),
        ("lift", VLift(nat), VLiftIn(_nat(2))),
        ("glue", glue, VGlueElem(face, one, one)),
        ("id", VId(nat, one, one), VIdPair(VPLam("_", const_closure(one)), Cof.top())),
    ]
    for name, sty, value in samples:
        failures = []
        for eps in (0, 1):
            sline = const_closure(sty)
            if not conv(levels.depth, sty, fibration.transp(sline, Cof.top(), eps, value), value):
                failures.append(f"{name}: ⊤ の下の輸送（方向 {eps}）が恒等でない")
            k = levels.fresh()
            stuck = fibration.transp(sline, Cof.eq(k, 0), eps, value)
            if not conv(levels.depth, sty, act(stuck, {k: IvElem.zero()}), value):
                failures.append(f"{name}: 代入で ⊤ になった輸送（方向 {eps}）が恒等でない")
        records.append(_record(f"transport/{name}", 4, failures))
    return records


# ---------------------------------------------------------------------------
# Kleene の T と U
# ---------------------------------------------------------------------------

def suite_kleene(dim, depth, stdlib_root=None, fuel=8, **_):
    from loader import Loader
    if stdlib_root is None:
        return [_check("kleene/stdlib", False, "標準ライブラリの場所が指定されていません")]
    loader = Loader(stdlib_root)
    lib = loader.load(loader.resolve("kleene"))
    if not lib.ok:
        return [_check("kleene/stdlib", False, str(lib.diagnostics[0]))]
    checker = loader.checker
    records = []
    triples = kleene.triples(fuel=fuel)
    failures = []
    for tr in triples:
        core, _ty = checker.infer_closed(kleene.t_term(tr.e, tr.x, tr.z))
        value = eval_term(Env(checker.glob, ()), core)
        if isinstance(value, VInl):
            actual = True
        elif isinstance(value, VInr):
            actual = False
        else:
            failures.append(f"T {tr.e} {tr.x} {tr.z} が真偽値に簡約しない")
            continue
        if actual != tr.expected:
            failures.append(f"T {tr.e} {tr.x} {tr.z} = {actual}, 参照実装は {tr.expected}")
    records.append(_record("kleene/T", len(triples), failures))

    failures = []
    codes = sorted({tr.z for tr in triples})
    for z in codes:
        core, _ty = checker.infer_closed(kleene.u_term(z))
        value = eval_term(Env(checker.glob, ()), core)
        if _as_nat(value) != kleene.kleene_u(z):
            failures.append(f"U {z} が {kleene.kleene_u(z)} にならない")
    records.append(_record("kleene/U", len(codes), failures))
    return records


def _as_nat(v):
    count = 0
    while isinstance(v, VSuc):
        v = v.pred
        count += 1
    return count if isinstance(v, VZero) else None


# ---------------------------------------------------------------------------
# 実行と表示
# ---------------------------------------------------------------------------

SUITES = {
    "box": suite_box,
    "interval": suite_interval,
    "cof-completeness": suite_cof_completeness,
    "sieve": suite_sieve,
    "delta-nabla": suite_delta_nabla,
    "discrete": suite_discrete,
    "wprime": suite_wprime,
    "coproduct-null": suite_coproduct_null,
    "discrete-null": suite_discrete_null,
    "delta-preservation": suite_delta_preservation,
    "hit-beta": suite_hit_beta,
    "transport": suite_transport,
    "kleene": suite_kleene,
}


def run_suite(name, dim=2, depth=3, stdlib_root=None, fuel=8):
    """
    スイートを実行して記録のリストを返す

    Args:
        name: スイート名（"all" なら全て）
        dim: Box の次元の上限（cube_model.MAX_DIM 以下）
        depth: W′ の深さ
        stdlib_root: kleene スイートが読む標準ライブラリの場所
        fuel: Kleene の参照機械の燃料

    Returns:
        list: Record のリスト
    """
    if name == "all":
        records = []
        for suite in SUITES:
            records.extend(run_suite(suite, dim, depth, stdlib_root, fuel))
        return records
    if name not in SUITES:
        raise KeyError(f"スイートがありません: {name}（{', '.join(list(SUITES) + ['all'])}）")
    if not 0 <= dim <= cm.MAX_DIM:
        raise BoundExceeded(f"次元の上限は {cm.MAX_DIM} です: dim={dim}")
    logger.info(f"スイート {name} を実行します（dim={dim}, depth={depth}）")
    try:
        records = SUITES[name](dim, depth, stdlib_root=stdlib_root, fuel=fuel)
    except BoundExceeded:
        raise
    except CheckerError as e:
        logger.error(f"スイート {name} が検査エラーで止まりました: {e}")
        records = [Record(f"{name}/error", 0, False, str(e))]
    failed = [r for r in records if not r.passed]
    if failed:
        logger.warning(f"スイート {name}: {len(failed)} 件の不一致")
    return records


def format_table(records):
    """記録を表形式の文字列にする"""
    width = max((len(r.name) for r in records), default=4)
    lines = [f"{'name'.ljust(width)}  {'size':>8}  result"]
    for r in records:
        status = "ok" if r.passed else "FAIL"
        line = f"{r.name.ljust(width)}  {r.size:>8}  {status}"
        if r.witness:
            line += f"  {r.witness}"
        lines.append(line)
    passed = sum(r.passed for r in records)
    lines.append(f"{passed}/{len(records)} 件一致")
    return "\n".join(lines)


def format_json_lines(records):
    return "\n".join(json.dumps(r.to_dict(), ensure_ascii=False) for r in records)


def default_stdlib_root():
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), "stdlib")
