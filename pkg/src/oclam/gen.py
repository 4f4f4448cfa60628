"""Seeded random generation of types, well-typed terms and semantic environments.

Terms are built by reading the typing rules bottom-up: pick a rule whose
conclusion matches the goal, split the linear context for multiplicative
rules (duplicate it for additive ones), recurse.  A node that cannot be
completed backtracks to another rule choice; a request that exhausts the
work budget raises :class:`~oclam.errors.GiveUp`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Mapping

from .denot import ZERO_V, BangV, _bang, basis
from .errors import GiveUp
from .semiring import AT, NAT, QI, Semiring
from .terms import (
    App, BangIntro, ElimBang, ElimOne, ElimPlus, ElimTens, ElimWith1, ElimWith2, ElimZero,
    Inl, Inr, Lam, Pair, Smul, Star, Sum, Tens, Term, TopIntro, Var, UNIT,
    children, rebuild,
)
from .types import Bang, Lolli, One, Plus, Tensor, Top, TypeExpr, With, Zero, I, TOP, ZERO

__all__ = [
    "GenConfig", "Generator", "gen_type", "gen_term", "gen_closed", "term_stream",
    "gen_vector_type", "sample_env", "shrink", "TYPE_WEIGHTS", "RULE_WEIGHTS",
    "WORK_LIMIT", "RESTARTS",
]

# relative weights of connectives when a type of depth > 0 is drawn
TYPE_WEIGHTS = {"I": 4, "Top": 1, "Zero": 1, "-o": 3, "*": 3, "&": 3, "(+)": 3, "!": 2}
# leaves drawn at depth 0
LEAF_WEIGHTS = {"I": 8, "Top": 1, "Zero": 1}
# relative weights of the inverted typing rules
RULE_WEIGHTS = {"var": 6, "intro": 5, "elim": 5, "cut": 4, "sum": 2, "smul": 2, "abort": 1}
# node visits allowed per restart, and restarts per request
WORK_LIMIT = 500
RESTARTS = 8


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_size: int = 40
    semiring: Semiring = NAT
    scalar_pool: tuple | None = None
    type_depth: int = 2
    allow_bang: bool = True

    def with_seed(self, seed: int) -> GenConfig:
        return replace(self, seed=seed)


class _Fail(Exception):
    pass


@dataclass
class Generator:
    """Stateful generator: one seeded stream of types and terms."""

    cfg: GenConfig
    rng: random.Random = field(init=False)

    def __post_init__(self):
        self.rng = random.Random(self.cfg.seed)
        self._names = 0
        self._work = 0

    # -- helpers -----------------------------------------------------------
    def scalar(self):
        return self.cfg.semiring.sample(self.rng, self.cfg.scalar_pool)

    def fresh(self, base: str = "x") -> str:
        self._names += 1
        return f"{base}{self._names}"

    def pick(self, weights: Mapping[str, float]) -> str:
        keys = list(weights)
        return self.rng.choices(keys, [weights[k] for k in keys])[0]

    def order(self, weights: Mapping[str, float]) -> list[str]:
        """Weighted random permutation of the keys with positive weight."""
        pool = {k: w for k, w in weights.items() if w > 0}
        out = []
        while pool:
            k = self.pick(pool)
            out.append(k)
            del pool[k]
        return out

    def split(self, G: dict) -> tuple[dict, dict]:
        left, right = {}, {}
        for k, v in G.items():
            (left if self.rng.random() < 0.5 else right)[k] = v
        return left, right

    # -- types -------------------------------------------------------------
    def type_(self, depth: int | None = None) -> TypeExpr:
        depth = self.cfg.type_depth if depth is None else depth
        if depth <= 0:
            return {"I": I, "Top": TOP, "Zero": ZERO}[self.pick(LEAF_WEIGHTS)]
        w = dict(TYPE_WEIGHTS)
        if not self.cfg.allow_bang:
            w.pop("!")
        k = self.pick(w)
        if k in ("I", "Top", "Zero"):
            return {"I": I, "Top": TOP, "Zero": ZERO}[k]
        if k == "!":
            return Bang(self.type_(depth - 1))
        a, b = self.type_(depth - 1), self.type_(depth - 1)
        return {"-o": Lolli, "*": Tensor, "&": With, "(+)": Plus}[k](a, b)

    def vector_type(self, max_dim: int = 6) -> TypeExpr:
        n = self.rng.randint(1, max_dim)
        return self._vec_of_dim(n)

    def _vec_of_dim(self, n: int) -> TypeExpr:
        if n == 1:
            return I
        k = self.rng.randint(1, n - 1)
        return With(self._vec_of_dim(k), self._vec_of_dim(n - k))

    # -- terms -------------------------------------------------------------
    def term(self, U: Mapping[str, TypeExpr], G: Mapping[str, TypeExpr], A: TypeExpr,
             size: int | None = None) -> Term:
        size = self.cfg.max_size if size is None else size
        for _ in range(RESTARTS):
            self._work = 0
            try:
                t = self._node(dict(U), dict(G), A, size)
            except _Fail:
                continue
            if t.size <= self.cfg.max_size:
                return t
        raise GiveUp(f"no term of {A} found within {RESTARTS} restarts")

    def _tick(self):
        self._work += 1
        if self._work > WORK_LIMIT:
            raise _Fail()

    def _node(self, U: dict, G: dict, A: TypeExpr, size: int) -> Term:
        self._tick()
        if size <= 0:
            raise _Fail()
        weights = dict(RULE_WEIGHTS)
        if size <= 2:
            weights.update(cut=0, sum=0, smul=0, abort=0)
        elif size <= 4:
            weights.update(cut=0)
        if not G:
            weights["elim"] = 0
        for rule in self.order(weights):
            try:
                return getattr(self, "_rule_" + rule)(U, G, A, size)
            except _Fail:
                self._tick()
        raise _Fail()

    def _rule_var(self, U, G, A, size):
        if len(G) == 1:
            (x, B), = G.items()
            if B == A:
                return Var(x)
            raise _Fail()
        if not G:
            cands = sorted(x for x, B in U.items() if B == A)
            if cands:
                return Var(self.rng.choice(cands))
        raise _Fail()

    def _rule_sum(self, U, G, A, size):
        k = (size - 1) // 2
        return Sum(self._node(U, G, A, k), self._node(U, G, A, size - 1 - k))

    def _rule_smul(self, U, G, A, size):
        return Smul(self.scalar(), self._node(U, G, A, size - 1))

    def _rule_abort(self, U, G, A, size):
        return ElimZero(self._node(U, G, ZERO, size - 1), A)

    def _rule_intro(self, U, G, A, size):
        if isinstance(A, One):
            if G:
                raise _Fail()
            return Star(self.scalar())
        if isinstance(A, Top):
            if G:
                raise _Fail()
            return UNIT
        if isinstance(A, Zero):
            raise _Fail()
        if isinstance(A, Lolli):
            x = self.fresh()
            return Lam(x, A.dom, self._node(U, {**G, x: A.dom}, A.cod, size - 1))
        if isinstance(A, Tensor):
            G1, G2 = self.split(G)
            k = self._share(A, size)
            return Tens(self._node(U, G1, A.left, k), self._node(U, G2, A.right, size - 1 - k))
        if isinstance(A, With):
            k = self._share(A, size)
            return Pair(self._node(U, G, A.left, k), self._node(U, G, A.right, size - 1 - k))
        if isinstance(A, Plus):
            if self.rng.random() < 0.5:
                return Inl(self._node(U, G, A.left, size - 1), A.right)
            return Inr(self._node(U, G, A.right, size - 1), A.left)
        if isinstance(A, Bang):
            if G:
                raise _Fail()
            return BangIntro(self._node(U, {}, A.body, size - 1))
        raise _Fail()

    def _share(self, A, size: int) -> int:
        """Size for the left half of a binary intro, in proportion to the halves' floors."""
        lo, hi = _floor(A.left), _floor(A.right)
        k = (size - 1) * lo // (lo + hi)
        return max(1, min(k, size - 1 - hi)) if size - 1 >= lo + hi else (size - 1) // 2

    def _eliminate(self, U, scrut: Term, B: TypeExpr, G: dict, A: TypeExpr, size: int) -> Term:
        """Consume ``scrut : B`` (already built) and the linear context ``G`` at ``A``."""
        if isinstance(B, One):
            return ElimOne(scrut, self._node(U, G, A, size))
        if isinstance(B, Lolli):
            G1, G2 = self.split(G)
            k = max(1, size // 3)
            head = App(scrut, self._node(U, G1, B.dom, k))
            if B.cod == A and not G2:
                return head
            y = self.fresh("y")
            body = self._node(U, {**G2, y: B.cod}, A, size - k - 1)
            return App(Lam(y, B.cod, body), head)
        if isinstance(B, Tensor):
            y, z = self.fresh("y"), self.fresh("z")
            return ElimTens(scrut, y, B.left, z, B.right,
                            self._node(U, {**G, y: B.left, z: B.right}, A, size))
        if isinstance(B, With):
            y = self.fresh("y")
            if self.rng.random() < 0.5:
                return ElimWith1(scrut, y, B.left, self._node(U, {**G, y: B.left}, A, size))
            return ElimWith2(scrut, y, B.right, self._node(U, {**G, y: B.right}, A, size))
        if isinstance(B, Plus):
            y, z = self.fresh("y"), self.fresh("z")
            k = size // 2
            return ElimPlus(scrut, y, B.left, self._node(U, {**G, y: B.left}, A, k),
                            z, B.right, self._node(U, {**G, z: B.right}, A, size - k))
        if isinstance(B, Bang):
            y = self.fresh("u")
            U2 = {**U, y: B.body}
            return ElimBang(scrut, y, B.body, self._node(U2, G, A, size))
        if isinstance(B, Zero):
            if G:
                raise _Fail()
            return ElimZero(scrut, A)
        raise _Fail()

    def _rule_elim(self, U, G, A, size):
        names = sorted(G)
        x = self.rng.choice(names)
        B = G[x]
        rest = {k: v for k, v in G.items() if k != x}
        return self._eliminate(U, Var(x), B, rest, A, size - 2)

    def _rule_cut(self, U, G, A, size):
        B = self.type_(self.rng.randint(0, max(1, self.cfg.type_depth)))
        if isinstance(B, Top):
            raise _Fail()
        G1, G2 = self.split(G)
        k = max(1, (size - 1) * 2 // 5)
        scrut = self._node(U, G1, B, k)
        return self._eliminate(U, scrut, B, G2, A, size - 1 - k)


def _floor(A: TypeExpr) -> int:
    """Smallest size worth offering a closed intro of ``A``; a lower bound only."""
    if isinstance(A, (With, Tensor)):
        return 1 + _floor(A.left) + _floor(A.right)
    if isinstance(A, (Lolli, Bang)):
        return 1 + _floor(A.cod if isinstance(A, Lolli) else A.body)
    if isinstance(A, Plus):
        return 1 + min(_floor(A.left), _floor(A.right))
    return 1


def gen_type(cfg: GenConfig, depth: int | None = None) -> TypeExpr:
    return Generator(cfg).type_(depth)


def gen_vector_type(cfg: GenConfig, max_dim: int = 6) -> TypeExpr:
    return Generator(cfg).vector_type(max_dim)


def gen_term(cfg: GenConfig, U: Mapping[str, TypeExpr], G: Mapping[str, TypeExpr],
             A: TypeExpr) -> Term:
    """A term of ``A`` consuming every variable of ``G``, or :class:`GiveUp`."""
    return Generator(cfg).term(U, G, A)


def gen_closed(cfg: GenConfig, A: TypeExpr | None = None, tries: int = 64,
               gen: Generator | None = None) -> tuple[Term, TypeExpr]:
    """A closed term and its type, drawing a fresh type after each give-up."""
    g = gen or Generator(cfg)
    for _ in range(tries):
        B = A if A is not None else g.type_()
        try:
            return g.term({}, {}, B), B
        except GiveUp:
            continue
    raise GiveUp("no closed term found")


def term_stream(cfg: GenConfig, n: int, A: TypeExpr | None = None,
                types: list[TypeExpr] | None = None) -> Iterator[tuple[Term, TypeExpr]]:
    """``n`` closed ``(term, type)`` pairs from one seeded stream."""
    g = Generator(cfg)
    produced = 0
    while produced < n:
        B = A if A is not None else (g.rng.choice(types) if types else g.type_())
        try:
            t = g.term({}, {}, B)
        except GiveUp:
            if A is not None:
                raise
            continue
        produced += 1
        yield t, B


# ---------------------------------------------------------------------------
# Semantic environments

def sample_env(rng: random.Random, U: Mapping[str, TypeExpr], G: Mapping[str, TypeExpr],
               semiring: Semiring = NAT, pool: tuple | None = None, max_atoms: int = 2):
    """Basis elements for linear variables, small formal sums of basis
    elements for intuitionistic ones (all types must have a finite basis)."""

    def elem(B):
        bs = basis(B, semiring)
        return rng.choice(bs) if bs else ZERO_V

    Uv = {}
    for x, B in U.items():
        atoms = tuple((semiring.sample(rng, pool), elem(B)) for _ in range(rng.randint(1, max_atoms)))
        v = _bang(semiring, atoms)
        Uv[x] = v if isinstance(v, BangV) else BangV(((semiring.one, elem(B)),))
    Gv = {x: elem(B) for x, B in G.items()}
    return Uv, Gv


# ---------------------------------------------------------------------------
# Shrinking

def _small_scalars(a) -> list:
    if a is AT:
        return []
    if isinstance(a, QI):
        cands = [QI(0), QI(1)]
    elif isinstance(a, Fraction):
        cands = [Fraction(0), Fraction(1)]
    else:
        cands = [0, 1]
    return [c for c in cands if c != a]


def shrink(t: Term) -> list[Term]:
    """Smaller candidate terms (not necessarily well-typed)."""
    out: list[Term] = []
    if isinstance(t, Star):
        return [Star(c) for c in _small_scalars(t.scalar)]
    if isinstance(t, Smul):
        out.append(t.body)
        out.extend(Smul(c, t.body) for c in _small_scalars(t.scalar))
    else:
        out.extend(children(t))
    kids = children(t)
    for i, k in enumerate(kids):
        for s in shrink(k)[:4]:
            new = list(kids)
            new[i] = s
            out.append(rebuild(t, new))
    seen, uniq = set(), []
    for c in out:
        if c not in seen:
            seen.add(c)
            uniq.append(c)
    return uniq
