"""Vector propositions (built from ``I`` and ``&``), vectors and matrices as terms."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, NotVectorType, ShapeError
from .reduce import normalize
from .semiring import NAT, Semiring
from .terms import App, ElimOne, ElimWith1, ElimWith2, Lam, Pair, Star, Sum, Term, Var
from .types import One, TypeExpr, With

__all__ = [
    "Matrix", "is_vector_type", "dim", "zero_term", "basis_vector", "vec_to_term",
    "read_vector", "term_to_vec", "matrix_to_term", "term_to_matrix", "coordinate_paths",
    "split_vector",
]

Vector = tuple


@dataclass(frozen=True)
class Matrix:
    """``rows`` x ``cols`` matrix stored as a tuple of row tuples."""

    rows: int
    cols: int
    entries: tuple[tuple, ...]

    def __post_init__(self):
        ent = tuple(tuple(r) for r in self.entries)
        if len(ent) != self.rows or any(len(r) != self.cols for r in ent):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> Matrix:
        rows = [tuple(r) for r in rows]
        return cls(len(rows), len(rows[0]) if rows else 0, tuple(rows))

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.cols} columns")
        out = []
        for r in self.entries:
            acc = r[0] * v[0]
            for a, b in zip(r[1:], v[1:]):
                acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        cols = [self.apply(other.column(j)) for j in range(other.cols)]
        return Matrix(self.rows, other.cols, tuple(zip(*cols)))

    def to_json(self, semiring: Semiring) -> str:
        return json.dumps({"rows": self.rows, "cols": self.cols,
                           "entries": [[semiring.format(a) for a in r] for r in self.entries]})

    @classmethod
    def from_json(cls, text: str, semiring: Semiring) -> Matrix:
        data = json.loads(text)
        rows = [tuple(semiring.parse(str(a)) for a in r) for r in data["entries"]]
        return cls(int(data["rows"]), int(data["cols"]), tuple(rows))


def is_vector_type(A: TypeExpr) -> bool:
    if isinstance(A, One):
        return True
    if isinstance(A, With):
        return is_vector_type(A.left) and is_vector_type(A.right)
    return False


def _require_vector(A: TypeExpr) -> None:
    if not is_vector_type(A):
        raise NotVectorType(f"{A} is not built from I and & only")


def dim(A: TypeExpr) -> int:
    """Number of occurrences of ``I`` in a vector type."""
    _require_vector(A)
    return _dim(A)


def _dim(A):
    return 1 if isinstance(A, One) else _dim(A.left) + _dim(A.right)


def coordinate_paths(A: TypeExpr) -> list[tuple[int, ...]]:
    """Left-to-right list of &-paths (0 = left, 1 = right) to each ``I`` leaf."""
    _require_vector(A)
    out: list[tuple[int, ...]] = []

    def go(B, p):
        if isinstance(B, One):
            out.append(p)
        else:
            go(B.left, p + (0,))
            go(B.right, p + (1,))

    go(A, ())
    return out


def zero_term(A: TypeExpr, semiring: Semiring = NAT) -> Term:
    _require_vector(A)
    return vec_to_term((semiring.zero,) * _dim(A), A)


def basis_vector(j: int, n: int, semiring: Semiring = NAT) -> tuple:
    return tuple(semiring.one if i == j else semiring.zero for i in range(n))


def split_vector(v: Sequence, A: TypeExpr) -> tuple[tuple, tuple]:
    k = _dim(A.left)
    return tuple(v[:k]), tuple(v[k:])


def vec_to_term(v: Sequence, A: TypeExpr) -> Term:
    """The closed normal term of ``A`` whose coordinates are ``v``."""
    _require_vector(A)
    if len(v) != _dim(A):
        raise DimensionMismatch(f"vector of length {len(v)} for a type of dimension {_dim(A)}")
    return _build(tuple(v), A)


def _build(v, A):
    if isinstance(A, One):
        return Star(v[0])
    left, right = split_vector(v, A)
    return Pair(_build(left, A.left), _build(right, A.right))


def read_vector(t: Term, A: TypeExpr) -> tuple:
    """Coordinates of a normal term, following the & structure of ``A``."""
    _require_vector(A)
    out: list = []

    def go(u, B):
        if isinstance(B, One):
            if not isinstance(u, Star):
                raise ShapeError(f"expected star(a) at type I, found {type(u).__name__}")
            out.append(u.scalar)
        else:
            if not isinstance(u, Pair):
                raise ShapeError(f"expected a pair at type {B}, found {type(u).__name__}")
            go(u.left, B.left)
            go(u.right, B.right)

    go(t, A)
    return tuple(out)


def term_to_vec(t: Term, A: TypeExpr, fuel: int = 100_000) -> tuple:
    """Normalize the closed term ``t : A`` and read off its coordinates."""
    _require_vector(A)
    return read_vector(normalize(t, fuel=fuel).term, A)


def _projection_chain(x: str, A: TypeExpr, path: tuple[int, ...], column: Term,
                      depth: int = 0) -> Term:
    # follows path through the & tree of A, then consumes the I leaf with let1
    if not path:
        return ElimOne(Var(x), column)
    y = ("y" if path[0] == 0 else "z") + "'" * depth
    ctor, comp = (ElimWith1, A.left) if path[0] == 0 else (ElimWith2, A.right)
    return ctor(Var(x), y, comp, _projection_chain(y, comp, path[1:], column, depth + 1))


def matrix_to_term(M: Matrix, A: TypeExpr, B: TypeExpr) -> Term:
    """``\\x:A. c_1 <+> ... <+> c_m`` where ``c_j`` projects coordinate ``j`` of
    ``x`` and scales the literal of column ``j`` by it."""
    _require_vector(A)
    _require_vector(B)
    if _dim(A) != M.cols or _dim(B) != M.rows:
        raise DimensionMismatch(f"{M.rows}x{M.cols} matrix does not map dimension "
                                f"{_dim(A)} to {_dim(B)}")
    body = None
    for j, path in enumerate(coordinate_paths(A)):
        chain = _projection_chain("x", A, path, vec_to_term(M.column(j), B))
        body = chain if body is None else Sum(body, chain)
    return Lam("x", A, body)


def term_to_matrix(t: Term, A: TypeExpr, B: TypeExpr, semiring: Semiring = NAT,
                   fuel: int = 100_000) -> Matrix:
    """Matrix whose column ``j`` is the image of the ``j``-th basis vector."""
    m, n = dim(A), dim(B)
    cols = [term_to_vec(App(t, vec_to_term(basis_vector(j, m, semiring), A)), B, fuel)
            for j in range(m)]
    return Matrix(n, m, tuple(zip(*cols)) if cols else ())
