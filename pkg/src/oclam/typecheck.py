"""Syntax-directed typechecking for the dual-context judgement ``U; G |- t : A``.

Linear splitting is done by usage threading: :func:`infer` returns the set
of linear variables a derivation consumes and each rule checks how its
premises' sets combine (disjoint for multiplicative rules, equal for
additive ones).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import TypeCheckError
from .semiring import Semiring
from .terms import (
    App, BangIntro, ElimBang, ElimOne, ElimPlus, ElimTens, ElimWith1, ElimWith2, ElimZero,
    Inl, Inr, Lam, Pair, Smul, Star, Sum, Tens, Term, TopIntro, Var,
)
from .types import Bang, Lolli, One, Plus, Tensor, TypeExpr, With, Zero, I, TOP

__all__ = ["TypingOutcome", "infer", "check", "check_closed", "type_of"]

_EMPTY: frozenset[str] = frozenset()


@dataclass(frozen=True)
class TypingOutcome:
    type: TypeExpr
    used: frozenset[str]

    def __iter__(self):
        yield self.type
        yield self.used


def infer(upsilon: Mapping[str, TypeExpr], gamma: Mapping[str, TypeExpr], t: Term,
          semiring: Semiring | None = None) -> TypingOutcome:
    """Type of ``t`` and the exact set of linear variables it consumes.

    With ``semiring`` given, every scalar literal is also checked for
    membership (raising :class:`~oclam.errors.SemiringMismatch`).
    """
    overlap = set(upsilon) & set(gamma)
    if overlap:
        raise ValueError(f"contexts overlap on {sorted(overlap)}")
    A, used = _Checker(semiring).infer(dict(upsilon), dict(gamma), t, ())
    return TypingOutcome(A, used)


def check(upsilon: Mapping[str, TypeExpr], gamma: Mapping[str, TypeExpr], t: Term,
          A: TypeExpr, semiring: Semiring | None = None) -> TypingOutcome:
    """Check ``U; G |- t : A`` with every variable of ``G`` consumed."""
    out = infer(upsilon, gamma, t, semiring)
    if out.type != A:
        raise TypeCheckError("Mismatch", (), "term does not have the requested type",
                             expected=A, found=out.type)
    missing = set(gamma) - out.used
    if missing:
        raise TypeCheckError("LinearUnused", (), f"linear variables never used: {sorted(missing)}")
    return out


def check_closed(t: Term, A: TypeExpr, semiring: Semiring | None = None) -> bool:
    check({}, {}, t, A, semiring)
    return True


def type_of(t: Term, semiring: Semiring | None = None) -> TypeExpr:
    """Type of a closed term."""
    return infer({}, {}, t, semiring).type


def _err(kind, path, msg, expected=None, found=None):
    return TypeCheckError(kind, path, msg, expected=expected, found=found)


class _Checker:
    def __init__(self, semiring: Semiring | None):
        self.S = semiring

    def scalar(self, a):
        if self.S is not None:
            self.S.check(a)

    @staticmethod
    def bind_linear(U, G, binds):
        U2, G2 = dict(U), dict(G)
        for x, A in binds:
            U2.pop(x, None)
            G2[x] = A
        return U2, G2

    @staticmethod
    def bind_intuitionistic(U, G, x, A):
        U2, G2 = dict(U), dict(G)
        G2.pop(x, None)
        U2[x] = A
        return U2, G2

    def disjoint(self, path, *sets):
        seen: set[str] = set()
        for s in sets:
            clash = seen & s
            if clash:
                raise _err("LinearReuse", path, f"linear variables used twice: {sorted(clash)}")
            seen |= s
        return frozenset(seen)

    def under(self, U, G, binds, body, path):
        """Infer ``body`` with linear ``binds`` added; each must be consumed."""
        names = [x for x, _ in binds]
        if len(set(names)) != len(names):
            raise _err("LinearReuse", path, f"binder {names[0]!r} bound twice")
        U2, G2 = self.bind_linear(U, G, binds)
        A, used = self.infer(U2, G2, body, path)
        for x in names:
            if x not in used:
                raise _err("LinearUnused", path, f"linear variable {x!r} is never used")
        return A, used - set(names)

    def infer(self, U, G, t, path):
        if isinstance(t, Var):
            if t.name in G:
                return G[t.name], frozenset((t.name,))
            if t.name in U:
                return U[t.name], _EMPTY
            raise _err("UnboundVar", path, f"unbound variable {t.name!r}")

        if isinstance(t, Sum):
            A, u1 = self.infer(U, G, t.left, path + (0,))
            B, u2 = self.infer(U, G, t.right, path + (1,))
            if A != B:
                raise _err("Mismatch", path + (1,), "summands have different types", A, B)
            if u1 != u2:
                raise _err("BranchUsageMismatch", path, "summands use different linear variables")
            return A, u1

        if isinstance(t, Smul):
            self.scalar(t.scalar)
            return self.infer(U, G, t.body, path + (0,))

        if isinstance(t, Star):
            self.scalar(t.scalar)
            return I, _EMPTY

        if isinstance(t, ElimOne):
            A, u1 = self.infer(U, G, t.scrut, path + (0,))
            if not isinstance(A, One):
                raise _err("NotOne", path + (0,), "let1 scrutinee is not of type I", I, A)
            B, u2 = self.infer(U, G, t.body, path + (1,))
            return B, self.disjoint(path, u1, u2)

        if isinstance(t, Lam):
            B, used = self.under(U, G, [(t.var, t.ty)], t.body, path + (0,))
            return Lolli(t.ty, B), used

        if isinstance(t, App):
            F, u1 = self.infer(U, G, t.fun, path + (0,))
            if not isinstance(F, Lolli):
                raise _err("NotAFunction", path + (0,), "applied term is not a function", found=F)
            A, u2 = self.infer(U, G, t.arg, path + (1,))
            if A != F.dom:
                raise _err("Mismatch", path + (1,), "argument type mismatch", F.dom, A)
            return F.cod, self.disjoint(path, u1, u2)

        if isinstance(t, Tens):
            A, u1 = self.infer(U, G, t.left, path + (0,))
            B, u2 = self.infer(U, G, t.right, path + (1,))
            return Tensor(A, B), self.disjoint(path, u1, u2)

        if isinstance(t, ElimTens):
            T, u1 = self.infer(U, G, t.scrut, path + (0,))
            if not isinstance(T, Tensor):
                raise _err("NotATensor", path + (0,), "lettens scrutinee is not a tensor", found=T)
            if T.left != t.xty:
                raise _err("Mismatch", path, "left binder annotation", T.left, t.xty)
            if T.right != t.yty:
                raise _err("Mismatch", path, "right binder annotation", T.right, t.yty)
            C, u2 = self.under(U, G, [(t.x, t.xty), (t.y, t.yty)], t.body, path + (1,))
            return C, self.disjoint(path, u1, u2)

        if isinstance(t, TopIntro):
            return TOP, _EMPTY

        if isinstance(t, ElimZero):
            Z, used = self.infer(U, G, t.scrut, path + (0,))
            if not isinstance(Z, Zero):
                raise _err("NotZero", path + (0,), "abort scrutinee is not of type Zero", found=Z)
            return t.ty, used

        if isinstance(t, Pair):
            A, u1 = self.infer(U, G, t.left, path + (0,))
            B, u2 = self.infer(U, G, t.right, path + (1,))
            if u1 != u2:
                raise _err("BranchUsageMismatch", path, "pair components use different linear variables")
            return With(A, B), u1

        if isinstance(t, (ElimWith1, ElimWith2)):
            W, u1 = self.infer(U, G, t.scrut, path + (0,))
            if not isinstance(W, With):
                raise _err("NotAWith", path + (0,), "projection scrutinee is not a &", found=W)
            comp = W.left if isinstance(t, ElimWith1) else W.right
            if comp != t.ty:
                raise _err("Mismatch", path, "projection binder annotation", comp, t.ty)
            C, u2 = self.under(U, G, [(t.var, t.ty)], t.body, path + (1,))
            return C, self.disjoint(path, u1, u2)

        if isinstance(t, Inl):
            A, used = self.infer(U, G, t.body, path + (0,))
            return Plus(A, t.other), used

        if isinstance(t, Inr):
            B, used = self.infer(U, G, t.body, path + (0,))
            return Plus(t.other, B), used

        if isinstance(t, ElimPlus):
            P, u1 = self.infer(U, G, t.scrut, path + (0,))
            if not isinstance(P, Plus):
                raise _err("NotAPlus", path + (0,), "case scrutinee is not a (+)", found=P)
            if P.left != t.xty:
                raise _err("Mismatch", path, "left branch annotation", P.left, t.xty)
            if P.right != t.yty:
                raise _err("Mismatch", path, "right branch annotation", P.right, t.yty)
            C1, u2 = self.under(U, G, [(t.x, t.xty)], t.left, path + (1,))
            C2, u3 = self.under(U, G, [(t.y, t.yty)], t.right, path + (2,))
            if C1 != C2:
                raise _err("Mismatch", path + (2,), "case branches have different types", C1, C2)
            if u2 != u3:
                raise _err("BranchUsageMismatch", path, "case branches use different linear variables")
            return C1, self.disjoint(path, u1, u2)

        if isinstance(t, BangIntro):
            A, used = self.infer(U, G, t.body, path + (0,))
            if used:
                raise _err("BangUnderLinear", path,
                           f"bang body uses linear variables {sorted(used)}")
            return Bang(A), _EMPTY

        if isinstance(t, ElimBang):
            B, u1 = self.infer(U, G, t.scrut, path + (0,))
            if not isinstance(B, Bang):
                raise _err("NotABang", path + (0,), "letbang scrutinee is not a !", found=B)
            if B.body != t.ty:
                raise _err("Mismatch", path, "letbang binder annotation", B.body, t.ty)
            U2, G2 = self.bind_intuitionistic(U, G, t.var, t.ty)
            C, u2 = self.infer(U2, G2, t.body, path + (1,))
            return C, self.disjoint(path, u1, u2)

        raise TypeError(f"not a term: {t!r}")
