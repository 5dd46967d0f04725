# test_parser.py - 字句解析と構文解析のテスト
import pytest

from cof import CofEq, CofOr
from errors import ParseError
from interval import IvMeet
from parser import parse_term, parse_text
from syntax import (
    AxiomDecl, DefDecl, Fst, HComp, HitDeclSyntax, Ident, ImportDecl, Inl, Lam,
    Lit, NatT, Pair, PathP, Pi, Sigma, Snd, Star, Suc, SumT, UnitT, Univ, App,
    strip_spans,
)


def term(text):
    return strip_spans(parse_term(text))


class TestTerms:
    def test_lambda(self):
        assert term("\\x y. x") == Lam("x", Lam("y", Ident("x")))
        assert term("\\x.y") == Lam("x", Ident("y"))

    def test_typed_lambda(self):
        assert term("\\(x : Nat). x") == Lam("x", Ident("x"), NatT())

    def test_pi_and_arrow(self):
        assert term("(x : Nat) -> Nat") == Pi("x", NatT(), NatT())
        assert term("A -> B -> C") == Pi("_", Ident("A"), Pi("_", Ident("B"), Ident("C")))

    def test_sigma_product_sum(self):
        assert term("(x : A) * B x") == Sigma("x", Ident("A"), App(Ident("B"), Ident("x")))
        assert term("A * B") == Sigma("_", Ident("A"), Ident("B"))
        assert term("A + B") == SumT(Ident("A"), Ident("B"))

    def test_tuples_nest_right(self):
        assert term("(a, b, c)") == Pair(Ident("a"), Pair(Ident("b"), Ident("c")))

    def test_projections(self):
        assert term("p.1") == Fst(Ident("p"))
        assert term("p.2.1") == Fst(Snd(Ident("p")))

    def test_qualified_names(self):
        assert term("Trunc.inc") == Ident("Trunc.inc")

    def test_application(self):
        assert term("f x 0") == App(App(Ident("f"), Ident("x")), Lit(0))

    def test_constants(self):
        assert term("U1") == Univ(1)
        assert term("Bool") == SumT(UnitT(), UnitT())
        assert term("true") == Inl(Star())

    def test_head_eta_expansion(self):
        assert term("suc") == Lam("%1", Suc(Ident("%1")))
        assert term("suc n") == Suc(Ident("n"))

    def test_path_type(self):
        assert term("Path A a b") == PathP("_", Ident("A"), Ident("a"), Ident("b"))

    def test_interval_lattice(self):
        assert term("i /\\ j") == IvMeet(Ident("i"), Ident("j"))

    def test_hcomp(self):
        t = term("hcomp A (i = 0 \\/ i = 1) (\\j. a)")
        assert isinstance(t, HComp)
        assert t.eps == 0 and t.name == "j" and t.body == Ident("a")
        assert t.cof == CofOr(CofEq(Ident("i"), 0), CofEq(Ident("i"), 1))

    def test_annotation(self):
        t = term("(\\x. x : Nat -> Nat)")
        assert t.ty == Pi("_", NatT(), NatT())


class TestErrors:
    @pytest.mark.parametrize("text", [
        "(x",
        "x )",
        "\\. x",
        "hcomp A (i = 2) (\\j. a)",
        "a # b",
    ])
    def test_rejected(self, text):
        with pytest.raises(ParseError):
            parse_term(text)

    def test_span_of_error(self):
        with pytest.raises(ParseError) as info:
            parse_text("def x : Nat = 0\ndef y : Nat = )", "f.ct")
        assert info.value.span.file == "f.ct"
        assert info.value.span.line == 2
        assert info.value.kind == "syntax"

    def test_reserved_declaration_name(self):
        with pytest.raises(ParseError):
            parse_text("def zero : Nat = 0")

    def test_lemma_on_hit(self):
        with pytest.raises(ParseError):
            parse_text('@lemma "circle"\nhit S where\n  | base')


class TestDeclarations:
    def test_def_with_binders(self):
        source = parse_text('@lemma "identity function"\ndef id (A : U0) (x : A) : A = x\n')
        (decl,) = source.decls
        assert isinstance(decl, DefDecl)
        assert decl.name == "id"
        assert decl.annotation == "identity function"
        assert strip_spans(decl.ty) == Pi("A", Univ(0), Pi("x", Ident("A"), Ident("A")))
        assert strip_spans(decl.body) == Lam("A", Lam("x", Ident("x"), Ident("A")), Univ(0))

    def test_annotation_applies_once(self):
        source = parse_text('@lemma "first"\ndef a : Nat = 0\ndef b : Nat = 1\n')
        assert [d.annotation for d in source.decls] == ["first", None]

    def test_axiom(self):
        (decl,) = parse_text("axiom lem (A : U0) : A + (A -> Empty)").decls
        assert isinstance(decl, AxiomDecl)
        assert isinstance(strip_spans(decl.ty), Pi)

    def test_import(self):
        source = parse_text('import prelude\nimport "sub/dir"\n')
        assert source.imports == ["prelude", "sub/dir"]
        assert all(isinstance(d, ImportDecl) for d in source.decls)

    def test_hit(self):
        source = parse_text(
            "hit S where\n"
            "  | base\n"
            "  | loop (i : I) [i = 0 -> S.base, i = 1 -> S.base]\n"
            "  hcomp 0 1\n"
        )
        (decl,) = source.decls
        assert isinstance(decl, HitDeclSyntax)
        assert [c.name for c in decl.ctors] == ["base", "loop"]
        assert len(decl.ctors[1].args) == 1
        assert len(decl.ctors[1].reductions) == 2
        assert decl.hcomp_dirs == (0, 1)

    def test_comments_are_skipped(self):
        source = parse_text("-- コメント\ndef n : Nat = 2 -- 後ろのコメント\n")
        assert strip_spans(source.decls[0].body) == Lit(2)
