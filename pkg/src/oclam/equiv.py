"""Elimination contexts and bounded observational equivalence.

An elimination context is an ordinary term with one free linear variable
named ``_`` (the hole), built as a spine of eliminators ending at type ``I``.
Plugging is substitution.  Two closed terms are compared by plugging each
into every enumerated context and normalizing: contexts are infinite, so a
positive answer only holds up to the enumeration bound.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .encode import basis_vector, dim, is_vector_type, term_to_vec, vec_to_term
from .errors import FuelExhausted, GiveUp
from .gen import GenConfig, Generator
from .reduce import normalize
from .semiring import NAT, Semiring
from .terms import (
    App, ElimBang, ElimOne, ElimPlus, ElimTens, ElimWith1, ElimWith2, ElimZero, Lam, Smul,
    Star, Sum, Term, Var, alpha_eq, substitute,
)
from .types import Bang, Lolli, One, Plus, Tensor, TypeExpr, With, Zero, I, type_size

__all__ = [
    "HOLE", "ElimContext", "EquivalentUpToBound", "Distinguished", "Unknown",
    "enum_contexts", "plug", "observe", "obs_equiv", "LinearityReport", "linearity_check",
]

HOLE = "_"


@dataclass(frozen=True)
class ElimContext:
    """``term`` has the single free linear variable ``_`` of type ``hole``."""

    term: Term
    hole: TypeExpr

    def plug(self, t: Term) -> Term:
        return substitute(self.term, HOLE, t)


def plug(K: ElimContext, t: Term) -> Term:
    return K.plug(t)


@dataclass(frozen=True)
class EquivalentUpToBound:
    depth: int
    contexts: int


@dataclass(frozen=True)
class Distinguished:
    context: ElimContext
    left: Term
    right: Term


@dataclass(frozen=True)
class Unknown:
    reason: str


class _Frames:
    """Single-eliminator frames ``F`` with ``_ : A |- F : C``."""

    def __init__(self, seed, budget: int, width: int, semiring: Semiring):
        self.seed = seed
        self.budget = budget
        self.width = width
        self.S = semiring

    def _gen(self, A: TypeExpr, key: str) -> Generator:
        cfg = GenConfig(seed=0, max_size=self.budget, semiring=self.S, type_depth=1)
        g = Generator(cfg)
        g.rng = random.Random(f"{self.seed}|{key}|{A!r}")
        return g

    def _bodies(self, G: dict, D: TypeExpr, key: str, U: dict | None = None) -> list[Term]:
        g = self._gen(D, key + repr(sorted(G.items(), key=str)))
        out: list[Term] = []
        for _ in range(self.width):
            try:
                t = g.term(U or {}, G, D)
            except GiveUp:
                break
            if not any(alpha_eq(t, o) for o in out):
                out.append(t)
        return out

    def _closed_args(self, B: TypeExpr) -> list[Term]:
        args: list[Term] = []
        if isinstance(B, Lolli) and B.dom == B.cod:
            args.append(Lam("z", B.dom, Var("z")))
        if is_vector_type(B):
            n = dim(B)
            args.extend(vec_to_term(basis_vector(j, n, self.S), B) for j in range(n))
        for t in self._bodies({}, B, "arg"):
            if not any(alpha_eq(t, o) for o in args):
                args.append(t)
        return args

    def frames(self, A: TypeExpr) -> list[tuple[Term, TypeExpr]]:
        h = Var(HOLE)
        out: list[tuple[Term, TypeExpr]] = []
        if isinstance(A, One):
            out.extend((ElimOne(h, u), I) for u in self._bodies({}, I, "let1"))
        elif isinstance(A, Lolli):
            out.extend((App(h, u), A.cod) for u in self._closed_args(A.dom))
        elif isinstance(A, Tensor):
            for D in _smaller_targets(A, (A.left, A.right)):
                G = {"x": A.left, "y": A.right}
                out.extend((ElimTens(h, "x", A.left, "y", A.right, v), D)
                           for v in self._bodies(G, D, "tens"))
        elif isinstance(A, Plus):
            for D in _smaller_targets(A, (A.left, A.right)):
                lefts = self._bodies({"x": A.left}, D, "inl")
                rights = self._bodies({"y": A.right}, D, "inr")
                out.extend((ElimPlus(h, "x", A.left, r, "y", A.right, s), D)
                           for r, s in zip(lefts, rights))
        elif isinstance(A, With):
            out.append((ElimWith1(h, "x", A.left, Var("x")), A.left))
            out.append((ElimWith2(h, "x", A.right, Var("x")), A.right))
            if A.left != I:
                out.extend((ElimWith1(h, "x", A.left, r), I)
                           for r in self._bodies({"x": A.left}, I, "fst"))
            if A.right != I:
                out.extend((ElimWith2(h, "x", A.right, r), I)
                           for r in self._bodies({"x": A.right}, I, "snd"))
        elif isinstance(A, Bang):
            out.append((ElimBang(h, "x", A.body, Var("x")), A.body))
            if A.body != I:
                out.extend((ElimBang(h, "x", A.body, r), I)
                           for r in self._bodies({}, I, "bang", U={"x": A.body})
                           if "x" in r.fv)
        elif isinstance(A, Zero):
            out.append((ElimZero(h, I), I))
        return out


def _smaller_targets(A: TypeExpr, parts) -> list[TypeExpr]:
    out: list[TypeExpr] = []
    for D in (I,) + tuple(parts):
        if type_size(D) < type_size(A) and D not in out:
            out.append(D)
    return out


def enum_contexts(A: TypeExpr, depth: int, budget: int = 8, seed=0, width: int = 2,
                  semiring: Semiring = NAT, limit: int | None = None) -> Iterator[ElimContext]:
    """Elimination contexts with hole type ``A``, result ``I``, at most ``depth`` frames.

    Depth-first: each frame is followed by every context for its output
    type.  Frame bodies and arguments come from the term generator with
    size at most ``budget``, seeded from ``seed`` and the frame's position,
    so the stream is the same however far it is consumed.
    """
    fr = _Frames(seed, budget, width, semiring)
    count = 0

    def go(B: TypeExpr, d: int) -> Iterator[Term]:
        if isinstance(B, One):
            yield Var(HOLE)
        if d == 0:
            return
        for F, C in fr.frames(B):
            for K in go(C, d - 1):
                yield substitute(K, HOLE, F)

    for K in go(A, depth):
        yield ElimContext(K, A)
        count += 1
        if limit is not None and count >= limit:
            return


def observe(K: ElimContext, t: Term, fuel: int = 100_000) -> Term:
    return normalize(K.plug(t), fuel=fuel).term


def obs_equiv(t: Term, u: Term, A: TypeExpr, depth: int = 2, budget: int = 8,
              fuel: int = 100_000, seed=0, width: int = 2, semiring: Semiring = NAT,
              limit: int | None = 500):
    """Compare ``t`` and ``u`` in every enumerated elimination context."""
    n = 0
    for K in enum_contexts(A, depth, budget, seed, width, semiring, limit):
        try:
            a, b = observe(K, t, fuel), observe(K, u, fuel)
        except FuelExhausted as e:
            return Unknown(f"fuel exhausted after {e.steps} steps in context {n}")
        n += 1
        if not alpha_eq(a, b):
            return Distinguished(K, a, b)
    return EquivalentUpToBound(depth, n)


@dataclass
class LinearityReport:
    route: str
    additive: object
    homogeneous: object

    @property
    def ok(self) -> bool:
        def good(v):
            return v is True or isinstance(v, EquivalentUpToBound)
        return good(self.additive) and good(self.homogeneous)


def linearity_check(f: Term, A: TypeExpr, B: TypeExpr, u1: Term, u2: Term, a,
                    semiring: Semiring = NAT, fuel: int = 100_000, depth: int = 2,
                    budget: int = 8, seed=0) -> LinearityReport:
    """``f (u1 <+> u2)`` against ``f u1 <+> f u2`` and ``f (a <.> u1)`` against
    ``a <.> f u1``: by coordinates when ``B`` is a vector type, otherwise by
    bounded observation."""
    lhs_add, rhs_add = App(f, Sum(u1, u2)), Sum(App(f, u1), App(f, u2))
    lhs_mul, rhs_mul = App(f, Smul(a, u1)), Smul(a, App(f, u1))
    if is_vector_type(B):
        add = term_to_vec(lhs_add, B, fuel) == term_to_vec(rhs_add, B, fuel)
        mul = term_to_vec(lhs_mul, B, fuel) == term_to_vec(rhs_mul, B, fuel)
        return LinearityReport("vector", add, mul)
    add = obs_equiv(lhs_add, rhs_add, B, depth, budget, fuel, seed, semiring=semiring)
    mul = obs_equiv(lhs_mul, rhs_mul, B, depth, budget, fuel, seed, semiring=semiring)
    return LinearityReport("observational", add, mul)
