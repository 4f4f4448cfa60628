"""Proof-terms: constructors, free variables, substitution, alpha-equivalence.

Every constructor is a frozen dataclass.  Three class-level tables drive
the generic traversals below:

``kids``
    names of the term-valued fields, in child-index order (paths index
    into this tuple);
``binds``
    for each kid, the names of the binder fields whose variable scopes
    over that kid;
``data``
    the remaining fields (scalars, type annotations), compared with ``==``.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from functools import cached_property
from typing import Any, ClassVar, Iterator, Mapping

from .types import TypeExpr

__all__ = [
    "Term", "Var", "Sum", "Smul", "Star", "ElimOne", "Lam", "App", "Tens", "ElimTens",
    "TopIntro", "ElimZero", "Pair", "ElimWith1", "ElimWith2", "Inl", "Inr", "ElimPlus",
    "BangIntro", "ElimBang", "UNIT", "CONSTRUCTORS",
    "free_vars", "substitute", "substitute_many", "alpha_eq", "alpha_key", "measure",
    "term_size", "children", "rebuild", "subterm_at", "replace_at", "fresh_name",
    "binder_names", "subterms",
]


class Term:
    kids: ClassVar[tuple[str, ...]] = ()
    binds: ClassVar[tuple[tuple[str, ...], ...]] = ()
    data: ClassVar[tuple[str, ...]] = ()

    @cached_property
    def fv(self) -> frozenset[str]:
        out: set[str] = set()
        for kid, bs in zip(self.kids, self.binds):
            sub = getattr(self, kid).fv
            if bs:
                sub = sub - {getattr(self, b) for b in bs}
            out |= sub
        return frozenset(out)

    @cached_property
    def size(self) -> int:
        return 1 + sum(getattr(self, k).size for k in self.kids)


def _setup(cls, kids=(), binds=None):
    cls.kids = tuple(kids)
    cls.binds = tuple(binds) if binds is not None else tuple(() for _ in kids)
    bound = {b for bs in cls.binds for b in bs}
    cls.data = tuple(f.name for f in fields(cls) if f.name not in cls.kids and f.name not in bound)
    return cls


@dataclass(frozen=True)
class Var(Term):
    name: str

    @cached_property
    def fv(self) -> frozenset[str]:
        return frozenset((self.name,))


@dataclass(frozen=True)
class Sum(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Smul(Term):
    scalar: Any
    body: Term


@dataclass(frozen=True)
class Star(Term):
    scalar: Any


@dataclass(frozen=True)
class ElimOne(Term):
    scrut: Term
    body: Term


@dataclass(frozen=True)
class Lam(Term):
    var: str
    ty: TypeExpr
    body: Term


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True)
class Tens(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class ElimTens(Term):
    scrut: Term
    x: str
    xty: TypeExpr
    y: str
    yty: TypeExpr
    body: Term


@dataclass(frozen=True)
class TopIntro(Term):
    pass


@dataclass(frozen=True)
class ElimZero(Term):
    scrut: Term
    ty: TypeExpr


@dataclass(frozen=True)
class Pair(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class ElimWith1(Term):
    scrut: Term
    var: str
    ty: TypeExpr
    body: Term


@dataclass(frozen=True)
class ElimWith2(Term):
    scrut: Term
    var: str
    ty: TypeExpr
    body: Term


@dataclass(frozen=True)
class Inl(Term):
    body: Term
    other: TypeExpr


@dataclass(frozen=True)
class Inr(Term):
    body: Term
    other: TypeExpr


@dataclass(frozen=True)
class ElimPlus(Term):
    scrut: Term
    x: str
    xty: TypeExpr
    left: Term
    y: str
    yty: TypeExpr
    right: Term


@dataclass(frozen=True)
class BangIntro(Term):
    body: Term


@dataclass(frozen=True)
class ElimBang(Term):
    scrut: Term
    var: str
    ty: TypeExpr
    body: Term


_setup(Var)
_setup(Sum, ("left", "right"))
_setup(Smul, ("body",))
_setup(Star)
_setup(ElimOne, ("scrut", "body"))
_setup(Lam, ("body",), (("var",),))
_setup(App, ("fun", "arg"))
_setup(Tens, ("left", "right"))
_setup(ElimTens, ("scrut", "body"), ((), ("x", "y")))
_setup(TopIntro)
_setup(ElimZero, ("scrut",))
_setup(Pair, ("left", "right"))
_setup(ElimWith1, ("scrut", "body"), ((), ("var",)))
_setup(ElimWith2, ("scrut", "body"), ((), ("var",)))
_setup(Inl, ("body",))
_setup(Inr, ("body",))
_setup(ElimPlus, ("scrut", "left", "right"), ((), ("x",), ("y",)))
_setup(BangIntro, ("body",))
_setup(ElimBang, ("scrut", "body"), ((), ("var",)))

UNIT = TopIntro()

CONSTRUCTORS = (Var, Sum, Smul, Star, ElimOne, Lam, App, Tens, ElimTens, TopIntro, ElimZero,
                Pair, ElimWith1, ElimWith2, Inl, Inr, ElimPlus, BangIntro, ElimBang)


def children(t: Term) -> tuple[Term, ...]:
    return tuple(getattr(t, k) for k in t.kids)


def rebuild(t: Term, new_kids, renames: Mapping[str, str] | None = None) -> Term:
    """Copy of ``t`` with its kids replaced (and binder fields renamed)."""
    cls = type(t)
    kw = {f: getattr(t, f) for f in cls.data}
    for bs in cls.binds:
        for b in bs:
            kw[b] = getattr(t, b) if renames is None else renames.get(b, getattr(t, b))
    for k, v in zip(cls.kids, new_kids):
        kw[k] = v
    return cls(**kw)


def binder_names(t: Term) -> tuple[str, ...]:
    return tuple(getattr(t, b) for bs in t.binds for b in bs)


def free_vars(t: Term) -> frozenset[str]:
    return t.fv


def term_size(t: Term) -> int:
    """Number of constructor nodes."""
    return t.size


def subterms(t: Term, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], Term]]:
    """Preorder walk yielding ``(path, subterm)``."""
    yield path, t
    for i, k in enumerate(t.kids):
        yield from subterms(getattr(t, k), path + (i,))


def subterm_at(t: Term, path) -> Term:
    for i in path:
        t = getattr(t, t.kids[i])
    return t


def replace_at(t: Term, path, new: Term) -> Term:
    if not path:
        return new
    i = path[0]
    kids = list(children(t))
    kids[i] = replace_at(kids[i], path[1:], new)
    return rebuild(t, kids)


def fresh_name(base: str, avoid) -> str:
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


# ---------------------------------------------------------------------------
# Substitution

def substitute(t: Term, x: str, u: Term) -> Term:
    """Capture-avoiding ``(u/x)t``."""
    return substitute_many(t, {x: u})


def substitute_many(t: Term, mapping: Mapping[str, Term]) -> Term:
    """Simultaneous capture-avoiding substitution."""
    m = {k: v for k, v in mapping.items() if k in t.fv}
    if not m:
        return t
    return _subst(t, m)


def _subst(t: Term, m: dict[str, Term]) -> Term:
    # invariant: every key of m is free in t
    if isinstance(t, Var):
        return m[t.name]
    new_kids = []
    renames: dict[str, str] = {}
    for kid_name, bs in zip(t.kids, t.binds):
        kid = getattr(t, kid_name)
        bound = {getattr(t, b) for b in bs}
        mk = {k: v for k, v in m.items() if k in kid.fv and k not in bound}
        if not mk:
            new_kids.append(kid)
            continue
        if bs:
            incoming: set[str] = set()
            for v in mk.values():
                incoming |= v.fv
            clash = bound & incoming
            if clash:
                avoid = incoming | kid.fv | bound | set(mk)
                for b in bs:
                    old = getattr(t, b)
                    if old in clash:
                        new = fresh_name(old, avoid)
                        avoid.add(new)
                        renames[b] = new
                        if old in kid.fv:
                            mk[old] = Var(new)
        new_kids.append(_subst(kid, mk))
    return rebuild(t, new_kids, renames or None)


# ---------------------------------------------------------------------------
# Alpha-equivalence

def alpha_eq(t1: Term, t2: Term) -> bool:
    """Equality up to consistent renaming of bound variables."""
    if t1 is t2:
        return True
    return _aeq(t1, t2, {}, {}, 0)


def _aeq(a: Term, b: Term, ea: dict, eb: dict, depth: int) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        la, lb = ea.get(a.name), eb.get(b.name)
        if la is None and lb is None:
            return a.name == b.name
        return la == lb
    for f in a.data:
        if getattr(a, f) != getattr(b, f):
            return False
    for kid, bs in zip(a.kids, a.binds):
        if bs:
            ea2, eb2, d = dict(ea), dict(eb), depth
            for bname in bs:
                d += 1
                ea2[getattr(a, bname)] = d
                eb2[getattr(b, bname)] = d
            if not _aeq(getattr(a, kid), getattr(b, kid), ea2, eb2, d):
                return False
        elif not _aeq(getattr(a, kid), getattr(b, kid), ea, eb, depth):
            return False
    return True


def alpha_key(t: Term, env: dict | None = None, depth: int = 0):
    """Hashable key with ``alpha_key(a) == alpha_key(b)`` iff ``alpha_eq(a, b)``."""
    env = {} if env is None else env
    if isinstance(t, Var):
        lvl = env.get(t.name)
        return ("v", t.name) if lvl is None else ("b", depth - lvl)
    parts: list = [type(t).__name__]
    parts.extend(getattr(t, f) for f in t.data)
    for kid, bs in zip(t.kids, t.binds):
        if bs:
            env2, d = dict(env), depth
            for bname in bs:
                d += 1
                env2[getattr(t, bname)] = d
            parts.append(alpha_key(getattr(t, kid), env2, d))
        else:
            parts.append(alpha_key(getattr(t, kid), env, depth))
    return tuple(parts)


# ---------------------------------------------------------------------------
# Measure

def measure(t: Term) -> int:
    """The measure mu used in the linearity argument."""
    if isinstance(t, Var):
        return 0
    if isinstance(t, (Star, TopIntro)):
        return 1
    if isinstance(t, (Sum, Pair)):
        return 1 + max(measure(t.left), measure(t.right))
    if isinstance(t, ElimPlus):
        return 1 + measure(t.scrut) + max(measure(t.left), measure(t.right))
    # every other constructor: one plus the sum over its kids
    return 1 + sum(measure(k) for k in children(t))
