"""Propositions of intuitionistic linear logic."""
from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "TypeExpr", "One", "Top", "Zero", "Lolli", "Tensor", "With", "Plus", "Bang",
    "I", "TOP", "ZERO", "type_size", "type_depth",
]


class TypeExpr:
    __slots__ = ()


@dataclass(frozen=True)
class One(TypeExpr):
    pass


@dataclass(frozen=True)
class Top(TypeExpr):
    pass


@dataclass(frozen=True)
class Zero(TypeExpr):
    pass


@dataclass(frozen=True)
class Lolli(TypeExpr):
    dom: TypeExpr
    cod: TypeExpr


@dataclass(frozen=True)
class Tensor(TypeExpr):
    left: TypeExpr
    right: TypeExpr


@dataclass(frozen=True)
class With(TypeExpr):
    left: TypeExpr
    right: TypeExpr


@dataclass(frozen=True)
class Plus(TypeExpr):
    left: TypeExpr
    right: TypeExpr


@dataclass(frozen=True)
class Bang(TypeExpr):
    body: TypeExpr


I = One()
TOP = Top()
ZERO = Zero()

_BINARY = (Lolli, Tensor, With, Plus)


def type_size(A: TypeExpr) -> int:
    """|A|: units count 1, binary connectives add, ``!`` adds one."""
    if isinstance(A, (One, Top, Zero)):
        return 1
    if isinstance(A, Bang):
        return type_size(A.body) + 1
    if isinstance(A, Lolli):
        return type_size(A.dom) + type_size(A.cod)
    return type_size(A.left) + type_size(A.right)


def type_depth(A: TypeExpr) -> int:
    if isinstance(A, (One, Top, Zero)):
        return 0
    if isinstance(A, Bang):
        return 1 + type_depth(A.body)
    if isinstance(A, Lolli):
        return 1 + max(type_depth(A.dom), type_depth(A.cod))
    return 1 + max(type_depth(A.left), type_depth(A.right))
