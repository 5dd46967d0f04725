# parser.py - .ct ファイルの字句解析と再帰下降構文解析
import logging
import re
from dataclasses import dataclass, field

from cof import CofAnd, CofBot, CofEq, CofOr, CofTop
from errors import ParseError, Span
from interval import IvJoin, IvMeet
from syntax import (
    Absurd, Ann, App, At, AxiomDecl, Case, CtorDecl, DefDecl, EmptyT, Fst,
    Glue, GlueElem, HComp, HitDeclSyntax, Ident, IdPair, IdPath, IdT, ImportDecl,
    Inl, Inr, IntervalT, J, Lam, Lift, LiftIn, LiftOut, Lit, NatRec, NatT,
    Pair, PApp, PathP, Pi, SelfT, Sigma, Snd, Star, Suc, SumT, Sys, Transp,
    Unglue, UnitT, Univ, Zero,
)

logger = logging.getLogger(__name__)


TOKEN_SPEC = [
    ("COMMENT", r"--[^\n]*"),
    ("NEWLINE", r"\n"),
    ("SKIP", r"[ \t\r]+"),
    ("STRING", r'"[^"\n]*"'),
    ("ARROW", r"->"),
    ("MEET", r"/\\"),
    ("JOIN", r"\\/"),
    ("LAMBDA", r"\\"),
    ("PROJ", r"\.[12](?![0-9])"),
    ("DOT", r"\."),
    ("NUMBER", r"[0-9]+"),
    ("NAME", r"[A-Za-z_][A-Za-z0-9_']*(?:\.[A-Za-z_][A-Za-z0-9_']*)*"),
    ("LP", r"\("),
    ("RP", r"\)"),
    ("LB", r"\["),
    ("RB", r"\]"),
    ("COMMA", r","),
    ("COLON", r":"),
    ("EQ", r"="),
    ("STAR", r"\*"),
    ("PLUS", r"\+"),
    ("BAR", r"\|"),
    ("AT", r"@"),
    ("MISMATCH", r"."),
]

TOKEN_REGEX = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_SPEC))

# 宣言の先頭語（項の適用を打ち切る）
DECL_WORDS = {"def", "axiom", "hit", "import", "where"}

# 引数を取らない定数
CONSTANTS = {
    "Nat": NatT, "Unit": UnitT, "Empty": EmptyT, "zero": Zero, "tt": Star,
    "I": IntervalT, "Self": SelfT,
}

# 決まった個数の原子を取る頭（足りなければ η 展開する）
HEADS = {
    "suc": (1, lambda a: Suc(*a)),
    "inl": (1, lambda a: Inl(*a)),
    "inr": (1, lambda a: Inr(*a)),
    "natrec": (4, lambda a: NatRec(*a)),
    "case": (4, lambda a: Case(*a)),
    "Path": (3, lambda a: PathP("_", a[0], a[1], a[2])),
    "Id": (3, lambda a: IdT(*a)),
    "J": (3, lambda a: J(*a)),
    "unglue": (1, lambda a: Unglue(a[0])),
    "fromId": (1, lambda a: IdPath(*a)),
    "Lift": (1, lambda a: Lift(*a)),
    "lift": (1, lambda a: LiftIn(*a)),
    "lower": (1, lambda a: LiftOut(*a)),
}

SPECIAL = {"PathP", "hcomp", "hcomp1", "transp", "transp1", "Glue", "glue", "idpair", "absurd"}

RESERVED = DECL_WORDS | set(CONSTANTS) | set(HEADS) | SPECIAL | {"top", "bot", "Bool", "true", "false"}

UNIVERSE = re.compile(r"U([0-9]+)")


@dataclass
class Token:
    type: str
    val: str
    span: Span

    def __repr__(self):
        return f"Token({self.type},{self.val!r})"


@dataclass
class SourceFile:
    """解析済みのファイル"""
    path: str
    decls: list = field(default_factory=list)

    @property
    def imports(self):
        return [d.path for d in self.decls if isinstance(d, ImportDecl)]


def tokenize(text, filename="<input>"):
    line, line_start = 1, 0
    for mo in TOKEN_REGEX.finditer(text):
        typ = mo.lastgroup
        val = mo.group(typ)
        span = Span(filename, line, mo.start() - line_start + 1)
        if typ == "NEWLINE":
            line += 1
            line_start = mo.end()
            continue
        if typ in ("SKIP", "COMMENT"):
            continue
        if typ == "MISMATCH":
            raise ParseError(f"不正な文字です: {val!r}", span)
        yield Token(typ, val, span)


class Parser:
    """
    再帰下降構文解析器

    優先順位は低い方から 矢印・和・積・束演算（/\\, \\/）・適用・原子。
    """

    def __init__(self, text, filename="<input>"):
        self.filename = filename
        self.tokens = list(tokenize(text, filename))
        self.pos = 0
        self._fresh = 0

    # -- 基本操作 --

    def peek(self, k=0):
        i = self.pos + k
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, typ, val=None, k=0):
        t = self.peek(k)
        return t is not None and t.type == typ and (val is None or t.val == val)

    def pop(self, expected=None, val=None):
        t = self.peek()
        if t is None:
            raise ParseError(f"入力が途中で終わりました（{expected or '項'} が必要です）", self._end_span())
        if expected and (t.type != expected or (val is not None and t.val != val)):
            want = val or expected
            raise ParseError(f"{want} が必要ですが {t.val!r} がありました", t.span)
        self.pos += 1
        return t

    def _end_span(self):
        if self.tokens:
            return self.tokens[-1].span
        return Span(self.filename, 1, 1)

    def _span(self):
        t = self.peek()
        return t.span if t is not None else self._end_span()

    def _fresh_name(self):
        self._fresh += 1
        return f"%{self._fresh}"

    # -- ファイル --

    def parse_file(self):
        source = SourceFile(self.filename)
        annotation = None
        while self.peek() is not None:
            t = self.peek()
            if t.type == "AT":
                self.pop()
                self.pop("NAME", "lemma")
                annotation = self.pop("STRING").val[1:-1]
                continue
            if t.type != "NAME" or t.val not in ("def", "axiom", "hit", "import"):
                raise ParseError(f"宣言が必要ですが {t.val!r} がありました", t.span)
            if t.val == "def":
                source.decls.append(self.parse_def(annotation))
            elif t.val == "axiom":
                source.decls.append(self.parse_axiom(annotation))
            elif t.val == "hit":
                if annotation is not None:
                    raise ParseError("@lemma は def と axiom にだけ付けられます", t.span)
                source.decls.append(self.parse_hit())
            else:
                self.pop()
                path = self.pop()
                if path.type not in ("NAME", "STRING"):
                    raise ParseError(f"import の後にはパスが必要です: {path.val!r}", path.span)
                value = path.val[1:-1] if path.type == "STRING" else path.val
                source.decls.append(ImportDecl(value, t.span))
            annotation = None
        return source

    def parse_binder_groups(self):
        """(x y : A) (z : B) … の並び。(名前の列, 型) のリストを返す"""
        groups = []
        while self.at("LP") and self._binder_group_ahead():
            self.pop("LP")
            names = []
            while self.at("NAME"):
                names.append(self.pop().val)
            self.pop("COLON")
            ty = self.parse_term()
            self.pop("RP")
            groups.append((names, ty))
        return groups

    def _binder_group_ahead(self):
        k = 1
        if not self.at("NAME", k=k):
            return False
        while self.at("NAME", k=k):
            if self.peek(k).val in RESERVED or "." in self.peek(k).val:
                return False
            k += 1
        return self.at("COLON", k=k)

    def parse_def(self, annotation):
        span = self.pop("NAME", "def").span
        name = self._decl_name()
        groups = self.parse_binder_groups()
        self.pop("COLON")
        ty = self.parse_term()
        self.pop("EQ")
        body = self.parse_term()
        for names, dom in reversed(groups):
            for x in reversed(names):
                ty = Pi(x, dom, ty)
                body = Lam(x, body, dom)
        return DefDecl(name, ty, body, annotation, span)

    def parse_axiom(self, annotation):
        span = self.pop("NAME", "axiom").span
        name = self._decl_name()
        groups = self.parse_binder_groups()
        self.pop("COLON")
        ty = self.parse_term()
        for names, dom in reversed(groups):
            for x in reversed(names):
                ty = Pi(x, dom, ty)
        return AxiomDecl(name, ty, annotation, span)

    def _decl_name(self):
        t = self.pop("NAME")
        if t.val in RESERVED or "." in t.val:
            raise ParseError(f"この名前は宣言できません: {t.val}", t.span)
        return t.val

    def parse_hit(self):
        span = self.pop("NAME", "hit").span
        name = self._decl_name()
        params = []
        for names, ty in self.parse_binder_groups():
            params.extend((x, ty) for x in names)
        self.pop("NAME", "where")
        ctors = []
        while self.at("BAR"):
            self.pop()
            t = self.pop("NAME")
            cspan, cname = t.span, t.val
            # コンストラクタ名は H.c の形でしか参照されないので予約語も使える
            if cname in DECL_WORDS or cname == "hcomp" or "." in cname:
                raise ParseError(f"コンストラクタ名にできない名前です: {cname}", t.span)
            args = []
            for names, ty in self.parse_binder_groups():
                args.extend((x, ty) for x in names)
            reductions = ()
            if self.at("LB"):
                reductions = tuple(self._parse_branches())
            ctors.append(CtorDecl(cname, tuple(args), reductions, cspan))
        dirs = []
        if self.at("NAME", "hcomp"):
            self.pop()
            while self.at("NUMBER"):
                dirs.append(int(self.pop().val))
        return HitDeclSyntax(name, tuple(params), tuple(ctors), tuple(dirs), span)

    # -- 項 --

    def parse_term(self):
        span = self._span()
        if self.at("LAMBDA"):
            return At(span, self.parse_lambda())
        if self.at("LP") and self._binder_group_ahead():
            save = self.pos
            groups = self.parse_binder_groups()
            if self.at("ARROW") or self.at("STAR"):
                kind = Pi if self.pop().type == "ARROW" else Sigma
                body = self.parse_term()
                for names, dom in reversed(groups):
                    for x in reversed(names):
                        body = kind(x, dom, body)
                return At(span, body)
            self.pos = save
        left = self.parse_sum()
        if self.at("ARROW"):
            self.pop()
            return At(span, Pi("_", left, self.parse_term()))
        return left

    def parse_lambda(self):
        self.pop("LAMBDA")
        binders = []
        while True:
            if self.at("LP") and self._binder_group_ahead():
                for names, dom in self.parse_binder_groups():
                    binders.extend((x, dom) for x in names)
                continue
            if self.at("NAME"):
                t = self.pop()
                head, dot, rest = t.val.partition(".")
                if head in RESERVED:
                    raise ParseError(f"束縛変数にできない名前です: {head}", t.span)
                binders.append((head, None))
                if dot:
                    # \x.y が一つの修飾名として読まれた場合
                    self.tokens.insert(self.pos, Token("NAME", rest, t.span))
                    break
                continue
            self.pop("DOT")
            break
        if not binders:
            raise ParseError("λ に束縛変数がありません", self._span())
        body = self.parse_term()
        for x, dom in reversed(binders):
            body = Lam(x, body, dom)
        return body

    def parse_sum(self):
        span = self._span()
        left = self.parse_product()
        if self.at("PLUS"):
            self.pop()
            return At(span, SumT(left, self.parse_sum()))
        return left

    def parse_product(self):
        span = self._span()
        left = self.parse_lattice()
        if self.at("STAR"):
            self.pop()
            return At(span, Sigma("_", left, self.parse_product()))
        return left

    def parse_lattice(self):
        span = self._span()
        left = self.parse_app()
        while self.at("MEET") or self.at("JOIN"):
            op = IvMeet if self.pop().type == "MEET" else IvJoin
            left = At(span, op(left, self.parse_app()))
        return left

    def _starts_atom(self):
        t = self.peek()
        if t is None:
            return False
        if t.type == "NAME":
            return t.val not in DECL_WORDS
        return t.type in ("NUMBER", "LP", "LB")

    def parse_app(self):
        span = self._span()
        head = self.parse_atom()
        while self._starts_atom():
            head = App(head, self.parse_atom())
        return At(span, head) if isinstance(head, App) else head

    def parse_atom(self):
        term = self._parse_atom_core()
        while self.at("PROJ"):
            t = self.pop()
            term = At(t.span, Fst(term) if t.val == ".1" else Snd(term))
        return term

    def _parse_atom_core(self):
        t = self.peek()
        if t is None:
            raise ParseError("項が必要ですが入力が終わりました", self._end_span())
        span = t.span
        if t.type == "NUMBER":
            self.pop()
            return At(span, Lit(int(t.val)))
        if t.type == "LB":
            return At(span, Sys(tuple(self._parse_branches())))
        if t.type == "LP":
            return self._parse_paren()
        if t.type != "NAME":
            raise ParseError(f"項が必要ですが {t.val!r} がありました", span)
        name = t.val
        if name in DECL_WORDS:
            raise ParseError(f"項が必要ですが {name!r} がありました", span)
        self.pop()
        universe = UNIVERSE.fullmatch(name)
        if universe:
            return At(span, Univ(int(universe.group(1))))
        if name in CONSTANTS:
            return At(span, CONSTANTS[name]())
        if name == "Bool":
            return At(span, SumT(UnitT(), UnitT()))
        if name in ("true", "false"):
            return At(span, Inl(Star()) if name == "true" else Inr(Star()))
        if name in HEADS:
            arity, build = HEADS[name]
            return At(span, self._parse_head(arity, build))
        if name in SPECIAL:
            return At(span, self._parse_special(name, span))
        if name in ("top", "bot") or name == "_":
            raise ParseError(f"項の位置に置けない名前です: {name}", span)
        return At(span, Ident(name))

    def _parse_head(self, arity, build):
        args = []
        while len(args) < arity and self._starts_atom():
            args.append(self.parse_atom())
        missing = [self._fresh_name() for _ in range(arity - len(args))]
        term = build(args + [Ident(x) for x in missing])
        for x in reversed(missing):
            term = Lam(x, term, None)
        return term

    def _parse_paren(self):
        span = self.pop("LP").span
        first = self.parse_term()
        if self.at("COMMA"):
            items = [first]
            while self.at("COMMA"):
                self.pop()
                items.append(self.parse_term())
            self.pop("RP")
            term = items[-1]
            for item in reversed(items[:-1]):
                term = Pair(item, term)
            return At(span, term)
        if self.at("COLON"):
            self.pop()
            ty = self.parse_term()
            self.pop("RP")
            return At(span, Ann(first, ty))
        self.pop("RP")
        return first

    def _parse_binder_lambda(self):
        """(\\i. t) の形の区間抽象。(名前, 本体) を返す"""
        self.pop("LP")
        self.pop("LAMBDA")
        t = self.pop("NAME")
        name, dot, rest = t.val.partition(".")
        if dot:
            self.tokens.insert(self.pos, Token("NAME", rest, t.span))
        else:
            self.pop("DOT")
        body = self.parse_term()
        self.pop("RP")
        return name, body

    def _parse_paren_cof(self):
        self.pop("LP")
        c = self.parse_cof()
        self.pop("RP")
        return c

    def _parse_special(self, name, span):
        if name == "PathP":
            i, fam = self._parse_binder_lambda()
            return PathP(i, fam, self.parse_atom(), self.parse_atom())
        if name in ("hcomp", "hcomp1"):
            ty = self.parse_atom()
            c = self._parse_paren_cof()
            i, body = self._parse_binder_lambda()
            return HComp(ty, c, 0 if name == "hcomp" else 1, i, body)
        if name in ("transp", "transp1"):
            i, fam = self._parse_binder_lambda()
            c = self._parse_paren_cof()
            return Transp(i, fam, c, 0 if name == "transp" else 1, self.parse_atom())
        if name == "Glue":
            base = self.parse_atom()
            self.pop("LB")
            c = self.parse_cof()
            self.pop("ARROW")
            self.pop("LP")
            fib = self.parse_term()
            self.pop("COMMA")
            equiv = self.parse_term()
            self.pop("RP")
            self.pop("RB")
            return Glue(base, c, fib, equiv)
        if name == "glue":
            self.pop("LB")
            c = self.parse_cof()
            self.pop("ARROW")
            t = self.parse_term()
            self.pop("RB")
            return GlueElem(c, t, self.parse_atom())
        if name == "idpair":
            path = self.parse_atom()
            return IdPair(path, self._parse_paren_cof())
        # absurd t または absurd A t
        first = self.parse_atom()
        if self._starts_atom():
            return Absurd(first, self.parse_atom())
        return Absurd(None, first)

    def _parse_branches(self):
        self.pop("LB")
        branches = []
        while not self.at("RB"):
            c = self.parse_cof()
            self.pop("ARROW")
            branches.append((c, self.parse_term()))
            if not self.at("COMMA"):
                break
            self.pop()
        self.pop("RB")
        return branches

    # -- 区間と Cof --

    def parse_interval(self):
        left = self._parse_interval_atom()
        while self.at("MEET") or self.at("JOIN"):
            op = IvMeet if self.pop().type == "MEET" else IvJoin
            left = op(left, self._parse_interval_atom())
        return left

    def _parse_interval_atom(self):
        t = self.pop()
        if t.type == "NUMBER" and t.val in ("0", "1"):
            return At(t.span, Lit(int(t.val)))
        if t.type == "NAME" and t.val not in RESERVED:
            return At(t.span, Ident(t.val))
        if t.type == "LP":
            inner = self.parse_interval()
            self.pop("RP")
            return inner
        raise ParseError(f"区間項が必要ですが {t.val!r} がありました", t.span)

    def parse_cof(self):
        left = self._parse_cof_conj()
        while self.at("JOIN"):
            self.pop()
            left = CofOr(left, self._parse_cof_conj())
        return left

    def _parse_cof_conj(self):
        left = self._parse_cof_atom()
        while self.at("MEET"):
            self.pop()
            left = CofAnd(left, self._parse_cof_atom())
        return left

    def _parse_cof_atom(self):
        t = self.peek()
        if t is not None and t.type == "NAME" and t.val in ("top", "bot"):
            self.pop()
            return At(t.span, CofTop() if t.val == "top" else CofBot())
        if t is not None and t.type == "LP":
            save = self.pos
            try:
                self.pop("LP")
                inner = self.parse_cof()
                self.pop("RP")
                if not self.at("EQ"):
                    return inner
            except ParseError:
                pass
            self.pos = save
        span = self._span()
        term = self.parse_interval()
        self.pop("EQ")
        eps = self.pop("NUMBER")
        if eps.val not in ("0", "1"):
            raise ParseError(f"端点は 0 か 1 です: {eps.val}", eps.span)
        return At(span, CofEq(term, int(eps.val)))


def parse_text(text, filename="<input>"):
    """
    ファイル全体を解析する

    Args:
        text: ソース文字列
        filename: 診断に使うファイル名

    Returns:
        SourceFile: 宣言の列
    """
    source = Parser(text, filename).parse_file()
    logger.debug(f"{filename}: {len(source.decls)} 個の宣言を解析しました")
    return source


def parse_term(text, filename="<input>"):
    """項を一つ解析する（余りがあればエラー）"""
    p = Parser(text, filename)
    term = p.parse_term()
    if p.peek() is not None:
        raise ParseError(f"項の後に余分な入力があります: {p.peek().val!r}", p.peek().span)
    return term
