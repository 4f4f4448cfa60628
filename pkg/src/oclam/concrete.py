r"""ASCII concrete syntax for types and terms.

Types::

    I | Top | Zero | T -o T | T * T | T & T | T (+) T | !T | (T)

with ``!`` binding tightest, then ``*``, ``&``, ``(+)`` and finally ``-o``
(right associative).  The other binary connectives associate to the left.

Terms::

    x | t <+> t | s <.> t | star(s) | let1(t, t) | \x:T. t | t t
      | tens(t, t) | lettens(t, x:T, y:T. t) | unit | abort[T](t)
      | pair(t, t) | fst(t, x:T. t) | snd(t, x:T. t)
      | inl[T](t) | inr[T](t) | case(t, x:T. t, y:T. t)
      | bang(t) | letbang(t, x:T. t) | (t)

Application binds tighter than ``<.>``, which binds tighter than ``<+>``.
A lambda body extends as far to the right as possible.  ``--`` starts a
comment running to the end of the line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .semiring import NAT, Semiring
from .terms import (
    App, BangIntro, ElimBang, ElimOne, ElimPlus, ElimTens, ElimWith1, ElimWith2, ElimZero,
    Inl, Inr, Lam, Pair, Smul, Star, Sum, Tens, Term, TopIntro, Var, UNIT,
)
from .types import Bang, Lolli, One, Plus, Tensor, Top, TypeExpr, With, Zero, I, TOP, ZERO

__all__ = ["parse_term", "parse_type", "print_term", "print_type", "read_term_file"]

_TOKEN = re.compile(r"""
    (?P<ws>\s+|--[^\n]*)
  | (?P<sym><\+>|<\.>|\(\+\)|-o)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<int>\d+)
  | (?P<punct>[()\[\],.:\\*&!/\-@])
""", re.VERBOSE)

KEYWORDS = frozenset({
    "star", "let1", "tens", "lettens", "unit", "abort", "pair", "fst", "snd",
    "inl", "inr", "case", "bang", "letbang",
})
_TYPE_NAMES = {"I": I, "Top": TOP, "Zero": ZERO}


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'sym', 'ident', 'int', 'punct', 'eof'
    text: str
    pos: int
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos, line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", pos, line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str, semiring: Semiring):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.S = semiring

    # -- token helpers -----------------------------------------------------
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, expected, what: str | None = None) -> ParseError:
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        return ParseError(what or f"unexpected {found}", t.line, t.col, set(expected))

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            raise self.error({text})
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> str:
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            raise self.error({"identifier"})
        self.i += 1
        return t.text

    # -- types -------------------------------------------------------------
    def type_(self) -> TypeExpr:
        left = self.type_plus()
        if self.at("-o"):
            self.i += 1
            return Lolli(left, self.type_())
        return left

    def _left_assoc(self, op, sub, ctor):
        left = sub()
        while self.at(op):
            self.i += 1
            left = ctor(left, sub())
        return left

    def type_plus(self):
        return self._left_assoc("(+)", self.type_with, Plus)

    def type_with(self):
        return self._left_assoc("&", self.type_tensor, With)

    def type_tensor(self):
        return self._left_assoc("*", self.type_bang, Tensor)

    def type_bang(self):
        if self.at("!"):
            self.i += 1
            return Bang(self.type_bang())
        return self.type_atom()

    def type_atom(self):
        t = self.tok
        if t.kind == "ident" and t.text in _TYPE_NAMES:
            self.i += 1
            return _TYPE_NAMES[t.text]
        if self.at("("):
            self.i += 1
            A = self.type_()
            self.expect(")")
            return A
        raise self.error({"I", "Top", "Zero", "!", "("})

    # -- scalars -----------------------------------------------------------
    def scalar(self):
        start = self.tok
        depth = 0
        j = self.i
        allowed = {"-", "/", "@", ",", "(", ")"}
        while True:
            t = self.toks[j]
            if t.kind == "int" or (t.kind == "punct" and t.text in allowed):
                if t.text == "(":
                    depth += 1
                elif t.text == ")":
                    if depth == 0:
                        break
                    depth -= 1
                elif t.text == "," and depth == 0:
                    break
                j += 1
                continue
            break
        if j == self.i:
            raise self.error({"scalar"})
        end = self.toks[j].pos
        literal = self.text[start.pos:end]
        try:
            value = self.S.parse(literal)
        except ParseError as e:
            raise ParseError(e.message, start.line, start.col, e.expected) from None
        self.i = j
        return value

    # -- terms -------------------------------------------------------------
    def term(self) -> Term:
        left = self.term_smul()
        while self.at("<+>"):
            self.i += 1
            left = Sum(left, self.term_smul())
        return left

    def term_smul(self) -> Term:
        t = self.tok
        numeric = t.kind == "int" or t.text in {"-", "@"}
        if numeric or t.text == "(":
            save = self.i
            try:
                a = self.scalar()
            except ParseError:
                if numeric:
                    raise
                a = None
            if a is not None and self.at("<.>"):
                self.i += 1
                return Smul(a, self.term_smul())
            if numeric:
                raise self.error({"<.>"})
            self.i = save
        return self.term_app()

    def _starts_atom(self) -> bool:
        t = self.tok
        if t.kind == "ident":
            return True
        return t.text in {"(", "\\"}

    def term_app(self) -> Term:
        fun = self.term_atom()
        while self._starts_atom():
            fun = App(fun, self.term_atom())
        return fun

    def binder(self) -> tuple[str, TypeExpr]:
        x = self.ident()
        self.expect(":")
        return x, self.type_()

    def term_atom(self) -> Term:
        t = self.tok
        if t.text == "\\" and t.kind == "punct":
            self.i += 1
            x, A = self.binder()
            self.expect(".")
            return Lam(x, A, self.term())
        if t.text == "(" and t.kind == "punct":
            self.i += 1
            body = self.term()
            self.expect(")")
            return body
        if t.kind != "ident":
            raise self.error({"identifier", "(", "\\", "keyword"})
        if t.text not in KEYWORDS:
            self.i += 1
            return Var(t.text)
        self.i += 1
        kw = t.text
        if kw == "unit":
            return UNIT
        if kw in ("inl", "inr", "abort"):
            self.expect("[")
            A = self.type_()
            self.expect("]")
            self.expect("(")
            body = self.term()
            self.expect(")")
            return {"inl": Inl, "inr": Inr}[kw](body, A) if kw != "abort" else ElimZero(body, A)
        self.expect("(")
        if kw == "star":
            a = self.scalar()
            self.expect(")")
            return Star(a)
        if kw == "bang":
            body = self.term()
            self.expect(")")
            return BangIntro(body)
        first = self.term()
        self.expect(",")
        if kw in ("let1", "tens", "pair"):
            second = self.term()
            self.expect(")")
            return {"let1": ElimOne, "tens": Tens, "pair": Pair}[kw](first, second)
        if kw == "lettens":
            x, A = self.binder()
            self.expect(",")
            y, B = self.binder()
            self.expect(".")
            body = self.term()
            self.expect(")")
            return ElimTens(first, x, A, y, B, body)
        if kw in ("fst", "snd", "letbang"):
            x, A = self.binder()
            self.expect(".")
            body = self.term()
            self.expect(")")
            return {"fst": ElimWith1, "snd": ElimWith2, "letbang": ElimBang}[kw](first, x, A, body)
        if kw == "case":
            x, A = self.binder()
            self.expect(".")
            left = self.term()
            self.expect(",")
            y, B = self.binder()
            self.expect(".")
            right = self.term()
            self.expect(")")
            return ElimPlus(first, x, A, left, y, B, right)
        raise AssertionError(kw)

    def finish(self):
        if self.tok.kind != "eof":
            raise self.error({"end of input"})


def parse_type(text: str) -> TypeExpr:
    p = _Parser(text, NAT)
    A = p.type_()
    p.finish()
    return A


def parse_term(text: str, semiring: Semiring = NAT) -> Term:
    """Parse one term; scalars are read with ``semiring``'s literal codec."""
    p = _Parser(text, semiring)
    t = p.term()
    p.finish()
    return t


def read_term_file(text: str, semiring: Semiring = NAT) -> tuple[Term, TypeExpr | None]:
    """Parse a term file, honouring a leading ``-- type: T`` pragma."""
    pinned = None
    for line in text.splitlines():
        s = line.strip()
        if not s:
            continue
        m = re.match(r"--\s*type:\s*(.+)$", s)
        if m:
            pinned = parse_type(m.group(1))
        break
    return parse_term(text, semiring), pinned


# ---------------------------------------------------------------------------
# Printing

_TPREC = {Lolli: 0, Plus: 1, With: 2, Tensor: 3}
_TOP = {Lolli: "-o", Plus: "(+)", With: "&", Tensor: "*"}


def print_type(A: TypeExpr) -> str:
    if isinstance(A, One):
        return "I"
    if isinstance(A, Top):
        return "Top"
    if isinstance(A, Zero):
        return "Zero"
    if isinstance(A, Bang):
        inner = print_type(A.body)
        return "!" + (inner if isinstance(A.body, (One, Top, Zero, Bang)) else f"({inner})")
    cls = type(A)
    if cls is Lolli:
        l, r = A.dom, A.cod
    else:
        l, r = A.left, A.right
    ls, rs = print_type(l), print_type(r)
    prec = _TPREC[cls]
    if type(l) in _TPREC and _TPREC[type(l)] <= prec:
        ls = f"({ls})"
    if type(r) in _TPREC and (_TPREC[type(r)] < prec or (cls is not Lolli and _TPREC[type(r)] == prec)):
        rs = f"({rs})"
    return f"{ls} {_TOP[cls]} {rs}"


def print_term(t: Term, semiring: Semiring = NAT) -> str:
    return _Printer(semiring).term(t, 0)


class _Printer:
    # levels: 0 sum, 1 smul, 2 app, 3 atom
    def __init__(self, S: Semiring):
        self.S = S

    def scalar(self, a) -> str:
        return self.S.format(a)

    def wrap(self, s: str, cond: bool) -> str:
        return f"({s})" if cond else s

    def term(self, t: Term, level: int) -> str:
        if isinstance(t, Sum):
            left = self.term(t.left, 0)
            if isinstance(t.left, Lam):
                left = f"({left})"
            s = f"{left} <+> {self.term(t.right, 1)}"
            return self.wrap(s, level > 0)
        if isinstance(t, Smul):
            s = f"{self.scalar(t.scalar)} <.> {self.term(t.body, 1)}"
            return self.wrap(s, level > 1)
        if isinstance(t, App):
            s = f"{self.term(t.fun, 2)} {self.term(t.arg, 3)}"
            return self.wrap(s, level > 2)
        if isinstance(t, Lam):
            s = f"\\{t.var}:{print_type(t.ty)}. {self.term(t.body, 0)}"
            return self.wrap(s, level > 0)
        return self.atom(t)

    def atom(self, t: Term) -> str:
        p = lambda u: self.term(u, 0)  # noqa: E731
        T = print_type
        if isinstance(t, Var):
            return t.name
        if isinstance(t, Star):
            return f"star({self.scalar(t.scalar)})"
        if isinstance(t, TopIntro):
            return "unit"
        if isinstance(t, ElimOne):
            return f"let1({p(t.scrut)}, {p(t.body)})"
        if isinstance(t, Tens):
            return f"tens({p(t.left)}, {p(t.right)})"
        if isinstance(t, Pair):
            return f"pair({p(t.left)}, {p(t.right)})"
        if isinstance(t, ElimTens):
            return f"lettens({p(t.scrut)}, {t.x}:{T(t.xty)}, {t.y}:{T(t.yty)}. {p(t.body)})"
        if isinstance(t, ElimZero):
            return f"abort[{T(t.ty)}]({p(t.scrut)})"
        if isinstance(t, ElimWith1):
            return f"fst({p(t.scrut)}, {t.var}:{T(t.ty)}. {p(t.body)})"
        if isinstance(t, ElimWith2):
            return f"snd({p(t.scrut)}, {t.var}:{T(t.ty)}. {p(t.body)})"
        if isinstance(t, Inl):
            return f"inl[{T(t.other)}]({p(t.body)})"
        if isinstance(t, Inr):
            return f"inr[{T(t.other)}]({p(t.body)})"
        if isinstance(t, ElimPlus):
            return (f"case({p(t.scrut)}, {t.x}:{T(t.xty)}. {p(t.left)}, "
                    f"{t.y}:{T(t.yty)}. {p(t.right)})")
        if isinstance(t, BangIntro):
            return f"bang({p(t.body)})"
        if isinstance(t, ElimBang):
            return f"letbang({p(t.scrut)}, {t.var}:{T(t.ty)}. {p(t.body)})"
        raise TypeError(f"not a term: {t!r}")
