# test_checker.py - 双方向型検査のテスト
import pytest

from checker import Checker
from errors import CannotInfer, ScopeError, TypeMismatch
from evaluate import act, do_papp, do_snd, normalize
from interval import IvElem
from loader import check_text
from parser import parse_term
from syntax import as_numeral
from values import VNat, VPathP, VPi, VSigma, VSuc, VUniv, VZero, Native, const_closure, var


def check_ok(text):
    checker, lib = check_text(text)
    assert lib.ok, [str(d) for d in lib.diagnostics]
    return checker


def first_error(text):
    _checker, lib = check_text(text)
    assert not lib.ok, "誤りが検出されませんでした"
    return lib.diagnostics[0]


NAT_PLUS = "def plus (m n : Nat) : Nat = natrec (\\_. Nat) n (\\_ ih. suc ih) m\n"


class TestAccepted:
    def test_identity(self):
        checker = check_ok("def id (A : U0) (x : A) : A = x\n")
        assert "id" in checker.glob.defs
        assert not checker.glob.defs["id"].is_axiom

    def test_numerals_and_recursion(self):
        checker = check_ok(NAT_PLUS + "def four : Nat = plus 2 2\n")
        entry = checker.glob.defs["four"]
        assert as_numeral(normalize(checker.glob, entry.body)) == 4

    def test_computation_in_types(self):
        check_ok(NAT_PLUS + "def twoTwo : Path Nat (plus 2 2) 4 = \\i. 4\n")

    def test_pairs_and_projections(self):
        check_ok("def p : Nat * Nat = (1, 2)\ndef q : Nat = p.2\ndef r : Path Nat q 2 = \\i. 2\n")

    def test_function_eta(self):
        check_ok("def eta (A B : U0) (f : A -> B) : Path (A -> B) f (\\x. f x) = \\i. f\n")

    def test_refl_against_id(self):
        check_ok("def r : Id Nat 3 3 = refl\n")

    def test_lift(self):
        check_ok("def big : U1 = Lift Nat\n")

    def test_jb_alpha(self):
        check_ok(
            "def Jnat : U0 = JB Nat (\\_. Unit) Nat\n"
            "def a : JB Nat (\\_. Unit) Nat = JB.alpha 3\n"
        )

    def test_jb_arity(self):
        assert first_error("def Jnat : U0 = JB Nat Nat\n").kind == "type-mismatch"

    def test_loc_is_j_of_hat(self):
        checker = check_ok(
            "def L : U0 = Loc Nat (\\_. Unit) Nat\n"
            "def Jb : U0 = JB (Nat + Nat) (\\s. case (\\_. U0) (\\_. Unit) (\\_. Susp Unit) s) Nat\n"
            "def same : Path U0 L Jb = \\_. L\n"
            "def e : Jb = Loc.eta 3\n"
        )
        assert {"L", "Jb", "same", "e"} <= set(checker.glob.defs)

    def test_jb_alpha_is_a_constructor(self):
        jb = Checker().glob.hits["JB"]
        assert [c.name for c in jb.constructors] == ["alpha", "pastecone"]

    def test_hcomp_inverse(self):
        check_ok(
            "def sym (A : U0) (a b : A) (p : Path A a b) : Path A b a =\n"
            "  \\i. hcomp A (i = 0 \\/ i = 1) (\\j. [j = 0 -> a, i = 0 -> p j, i = 1 -> a])\n"
        )

    def test_connection(self):
        check_ok(
            "def contr (A : U0) (a b : A) (p : Path A a b) : PathP (\\i. Path A a (p i)) (\\_. a) p =\n"
            "  \\i j. p (i /\\ j)\n"
        )

    def test_builtin_hits(self):
        check_ok(
            "def sq (A : U0) (x y : Trunc A) : Path (Trunc A) x y = \\i. Trunc.sq x y i\n"
            "def m (A : U0) (a : A) : Path (Susp A) Susp.north Susp.south = \\i. Susp.merid a i\n"
        )

    def test_user_hit(self):
        checker = check_ok(
            "hit S where\n"
            "  | base\n"
            "  | loop (i : I) [i = 0 -> S.base, i = 1 -> S.base]\n"
            "  hcomp 0 1\n"
            "def l : Path S S.base S.base = \\i. S.loop i\n"
        )
        assert "S" in checker.glob.hits


class TestRejected:
    def test_type_mismatch(self):
        d = first_error("def bad : Nat = tt\n")
        assert d.kind == "type-mismatch"
        assert d.expected is not None and d.actual is not None

    def test_scope(self):
        assert first_error("def bad : Nat = y\n").kind == "scope"

    def test_cannot_infer(self):
        assert first_error("def bad : Nat = (\\x. x) 0\n").kind == "cannot-infer"

    def test_interval_is_not_a_type(self):
        assert first_error("def bad (x : I) : Nat = 0\n").kind == "universe"

    def test_universes_are_not_cumulative(self):
        assert first_error("def bad : U1 = Nat\n").kind == "type-mismatch"

    def test_boundary(self):
        assert first_error("def bad : Path Nat 0 1 = \\i. 0\n").kind == "boundary-mismatch"

    def test_refl_endpoints(self):
        assert first_error("def bad : Id Nat 0 1 = refl\n").kind == "type-mismatch"

    def test_line_not_constant(self):
        d = first_error(
            "def bad (A B : U0) (p : Path U0 A B) (a : A) : B = transp (\\i. p i) (top) a\n"
        )
        assert d.kind == "line-not-constant"

    def test_overlapping_reductions(self):
        d = first_error(
            "hit H where\n"
            "  | a\n"
            "  | b\n"
            "  | c (i : I) [i = 0 -> H.a, i = 0 -> H.b]\n"
        )
        assert d.kind == "hit-decl"

    def test_hcomp_direction(self):
        assert first_error("hit H where\n  | a\n  hcomp 2\n").kind == "hit-decl"

    def test_syntax(self):
        assert first_error("def bad : Nat = )\n").kind == "syntax"

    def test_error_position(self):
        d = first_error("def ok : Nat = 0\ndef bad : Nat = tt\n")
        assert d.line == 2

    def test_stops_after_first_error(self):
        _checker, lib = check_text("def bad : Nat = tt\ndef ok : Nat = 0\n")
        assert len(lib.diagnostics) == 1
        assert lib.entries == []

    def test_duplicate_in_file(self):
        d = first_error("def a : Nat = 0\ndef a : Nat = 1\n")
        assert d.severity == "error"


class TestSession:
    def test_infer_closed(self):
        checker = Checker()
        _core, ty = checker.infer_closed(parse_term("(\\x. x : Nat -> Nat) 3"))
        assert isinstance(ty, VNat)

    def test_infer_universe_level(self):
        checker = Checker()
        _core, ty = checker.infer_closed(parse_term("U0 -> U0"))
        assert isinstance(ty, VUniv) and ty.level == 1

    def test_unannotated_lambda(self):
        with pytest.raises(CannotInfer):
            Checker().infer_closed(parse_term("\\x. x"))

    def test_check_closed(self):
        core = Checker().check_closed(parse_term("\\x. suc x"), VPi("_", VNat(), const_closure(VNat())))
        assert core is not None

    def test_redefinition(self):
        checker = Checker()
        checker.define("n", parse_term("Nat"), parse_term("0"))
        with pytest.raises(ScopeError):
            checker.define("n", parse_term("Nat"), parse_term("1"))

    def test_postulate(self):
        checker = Checker()
        entry = checker.postulate("ax", parse_term("Nat"), "an axiom")
        assert entry.is_axiom
        assert entry.annotation == "an axiom"

    def test_define_mismatch(self):
        with pytest.raises(TypeMismatch):
            Checker().define("bad", parse_term("Nat"), parse_term("tt"))

    def test_builtins_registered(self):
        assert {"Trunc", "LFR", "Susp", "Cone", "KB", "JB"} <= set(Checker().glob.hits)


PATH_ALGEBRA = (
    "def sym (A : U0) (a b : A) (p : Path A a b) : Path A b a =\n"
    "  \\i. hcomp A (i = 0 \\/ i = 1) (\\j. [j = 0 -> a, i = 0 -> p j, i = 1 -> a])\n"
    "def concat (A : U0) (a b c : A) (p : Path A a b) (q : Path A b c) : Path A a c =\n"
    "  \\i. hcomp A (i = 0 \\/ i = 1) (\\j. [j = 0 -> p i, i = 0 -> a, i = 1 -> q j])\n"
    "def isContr (A : U0) : U0 = (c : A) * ((y : A) -> Path A c y)\n"
    "def contrIsProp (A : U0) (h : isContr A) (x y : A) : Path A x y =\n"
    "  \\i. hcomp A (i = 0 \\/ i = 1) (\\j. [j = 0 -> h.1, i = 0 -> h.2 x j, i = 1 -> h.2 y j])\n"
)


class TestFaceRestriction:
    """面への制限で道変数の端点が計算されること"""

    def test_path_algebra(self):
        checker = check_ok(PATH_ALGEBRA)
        assert {"sym", "concat", "contrIsProp"} <= set(checker.glob.defs)

    def test_path_variable_endpoint(self):
        p = var(VPathP("_", const_closure(VNat()), VZero(), VSuc(VZero())), 0)
        j = IvElem.var(1)
        assert isinstance(act(do_papp(p, j), {1: IvElem.zero()}), VZero)
        assert isinstance(act(do_papp(p, j), {1: IvElem.one()}), VSuc)

    def test_projection_keeps_type(self):
        # h : (x : Nat) * Path Nat x 0
        fam = Native(lambda x: VPathP("_", const_closure(VNat()), x, VZero()))
        h = var(VSigma("x", VNat(), fam), 0)
        i = IvElem.var(1)
        end = act(do_papp(do_snd(h), i), {1: IvElem.one()})
        assert isinstance(end, VZero)
