"""Small-step rewriting: redex enumeration, contraction, strategies, normalization.

Rule identifiers, in the fixed order used for enumeration at a node:

beta
    ``let1-beta lam-beta tens-beta fst-beta snd-beta inl-beta inr-beta bang-beta``
commutation
    ``star-sum star-smul lam-sum lam-smul lettens-sum lettens-smul unit-sum
    unit-smul pair-sum pair-smul case-sum case-smul letbang-sum letbang-smul``
ultra (only when enabled)
    ``ultra-left ultra-right ultra-drop``
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Callable

from .errors import FuelExhausted, InvalidSite, NotClosed, NotNormal
from .terms import (
    App, BangIntro, ElimBang, ElimOne, ElimPlus, ElimTens, ElimWith1, ElimWith2, Inl, Inr,
    Lam, Pair, Smul, Star, Sum, Tens, Term, TopIntro, Var, UNIT,
    children, fresh_name, rebuild, substitute, substitute_many, subterm_at,
)
from .types import Bang, Lolli, One, Plus, Tensor, Top, TypeExpr, With

__all__ = [
    "BETA_RULES", "COMMUTATION_RULES", "ULTRA_RULES", "RULES",
    "RedexSite", "Strategy", "LeftmostOutermost", "Random", "NormalizeResult",
    "Classification", "redexes", "rules_at", "step_at", "contract", "is_normal",
    "normalize", "normal_form", "classify_normal", "parse_strategy",
]

BETA_RULES = ("let1-beta", "lam-beta", "tens-beta", "fst-beta", "snd-beta",
              "inl-beta", "inr-beta", "bang-beta")
COMMUTATION_RULES = ("star-sum", "star-smul", "lam-sum", "lam-smul", "lettens-sum",
                     "lettens-smul", "unit-sum", "unit-smul", "pair-sum", "pair-smul",
                     "case-sum", "case-smul", "letbang-sum", "letbang-smul")
ULTRA_RULES = ("ultra-left", "ultra-right", "ultra-drop")
RULES = BETA_RULES + COMMUTATION_RULES + ULTRA_RULES


@dataclass(frozen=True)
class RedexSite:
    path: tuple[int, ...]
    rule: str


# ---------------------------------------------------------------------------
# Matching

def _plain_rule(t: Term) -> str | None:
    # node shapes are pairwise exclusive, so at most one plain rule matches
    c = type(t)
    if c is ElimOne:
        return "let1-beta" if type(t.scrut) is Star else None
    if c is App:
        return "lam-beta" if type(t.fun) is Lam else None
    if c is ElimTens:
        s = type(t.scrut)
        return {Tens: "tens-beta", Sum: "lettens-sum", Smul: "lettens-smul"}.get(s)
    if c is ElimWith1:
        return "fst-beta" if type(t.scrut) is Pair else None
    if c is ElimWith2:
        return "snd-beta" if type(t.scrut) is Pair else None
    if c is ElimPlus:
        s = type(t.scrut)
        return {Inl: "inl-beta", Inr: "inr-beta", Sum: "case-sum", Smul: "case-smul"}.get(s)
    if c is ElimBang:
        s = type(t.scrut)
        return {BangIntro: "bang-beta", Sum: "letbang-sum", Smul: "letbang-smul"}.get(s)
    if c is Sum:
        l, r = type(t.left), type(t.right)
        if l is not r:
            return None
        if l is Star:
            return "star-sum"
        if l is Lam:
            return "lam-sum" if t.left.ty == t.right.ty else None
        if l is TopIntro:
            return "unit-sum"
        if l is Pair:
            return "pair-sum"
        return None
    if c is Smul:
        return {Star: "star-smul", Lam: "lam-smul", TopIntro: "unit-smul",
                Pair: "pair-smul"}.get(type(t.body))
    return None


def rules_at(t: Term, ultra: bool = False) -> list[str]:
    """Rules matching at the root of ``t``, in enumeration order."""
    out = []
    r = _plain_rule(t)
    if r is not None:
        out.append(r)
    if ultra:
        if type(t) is Sum:
            out += ["ultra-left", "ultra-right"]
        elif type(t) is Smul:
            out.append("ultra-drop")
    return out


def is_normal(t: Term, ultra: bool = False) -> bool:
    """No redex anywhere in ``t`` (memoised on the node)."""
    key = "_nf_ultra" if ultra else "_nf"
    d = t.__dict__
    v = d.get(key)
    if v is None:
        v = not rules_at(t, ultra) and all(is_normal(k, ultra) for k in children(t))
        d[key] = v
    return v


def redexes(t: Term, ultra: bool = False) -> list[RedexSite]:
    """Every redex site in preorder, rules at one node in the fixed order."""
    out: list[RedexSite] = []

    def walk(u: Term, path: tuple[int, ...]):
        if is_normal(u, ultra):
            return
        out.extend(RedexSite(path, r) for r in rules_at(u, ultra))
        for i, k in enumerate(children(u)):
            walk(k, path + (i,))

    walk(t, ())
    return out


def _leftmost_outermost(t: Term, ultra: bool) -> RedexSite | None:
    path: list[int] = []
    while True:
        rs = rules_at(t, ultra)
        if rs:
            return RedexSite(tuple(path), rs[0])
        for i, k in enumerate(children(t)):
            if not is_normal(k, ultra):
                path.append(i)
                t = k
                break
        else:
            return None


# ---------------------------------------------------------------------------
# Contraction

def _rename_bound(lam: Lam, new: str) -> Term:
    return substitute(lam.body, lam.var, Var(new))


def _lam_sum(t: Sum) -> Term:
    f, g = t.left, t.right
    x = f.var
    if g.var == x:
        return Lam(x, f.ty, Sum(f.body, g.body))
    if x not in g.fv:
        return Lam(x, f.ty, Sum(f.body, _rename_bound(g, x)))
    z = fresh_name(x, f.body.fv | g.body.fv | {x, g.var})
    return Lam(z, f.ty, Sum(_rename_bound(f, z), _rename_bound(g, z)))


def _scalar_sum(a, b):
    return a + b


def _scalar_mul(a, b):
    return a * b


_CONTRACT: dict[str, Callable[[Term], Term]] = {
    "let1-beta": lambda t: Smul(t.scrut.scalar, t.body),
    "lam-beta": lambda t: substitute(t.fun.body, t.fun.var, t.arg),
    "tens-beta": lambda t: substitute_many(t.body, {t.x: t.scrut.left, t.y: t.scrut.right}),
    "fst-beta": lambda t: substitute(t.body, t.var, t.scrut.left),
    "snd-beta": lambda t: substitute(t.body, t.var, t.scrut.right),
    "inl-beta": lambda t: substitute(t.left, t.x, t.scrut.body),
    "inr-beta": lambda t: substitute(t.right, t.y, t.scrut.body),
    "bang-beta": lambda t: substitute(t.body, t.var, t.scrut.body),
    "star-sum": lambda t: Star(_scalar_sum(t.left.scalar, t.right.scalar)),
    "star-smul": lambda t: Star(_scalar_mul(t.scalar, t.body.scalar)),
    "lam-sum": _lam_sum,
    "lam-smul": lambda t: Lam(t.body.var, t.body.ty, Smul(t.scalar, t.body.body)),
    "lettens-sum": lambda t: Sum(rebuild(t, (t.scrut.left, t.body)),
                                 rebuild(t, (t.scrut.right, t.body))),
    "lettens-smul": lambda t: Smul(t.scrut.scalar, rebuild(t, (t.scrut.body, t.body))),
    "unit-sum": lambda t: UNIT,
    "unit-smul": lambda t: UNIT,
    "pair-sum": lambda t: Pair(Sum(t.left.left, t.right.left), Sum(t.left.right, t.right.right)),
    "pair-smul": lambda t: Pair(Smul(t.scalar, t.body.left), Smul(t.scalar, t.body.right)),
    "case-sum": lambda t: Sum(rebuild(t, (t.scrut.left, t.left, t.right)),
                              rebuild(t, (t.scrut.right, t.left, t.right))),
    "case-smul": lambda t: Smul(t.scrut.scalar, rebuild(t, (t.scrut.body, t.left, t.right))),
    "letbang-sum": lambda t: Sum(rebuild(t, (t.scrut.left, t.body)),
                                 rebuild(t, (t.scrut.right, t.body))),
    "letbang-smul": lambda t: Smul(t.scrut.scalar, rebuild(t, (t.scrut.body, t.body))),
    "ultra-left": lambda t: t.left,
    "ultra-right": lambda t: t.right,
    "ultra-drop": lambda t: t.body,
}


def contract(t: Term, rule: str) -> Term:
    """Apply ``rule`` at the root of ``t``."""
    ultra = rule in ULTRA_RULES
    if rule not in rules_at(t, ultra):
        raise InvalidSite(f"rule {rule!r} does not match {type(t).__name__} node")
    return _CONTRACT[rule](t)


def step_at(t: Term, site: RedexSite) -> Term:
    """Contract the redex named by ``site``; every other subterm is shared."""
    try:
        target = subterm_at(t, site.path)
    except (IndexError, AttributeError):
        raise InvalidSite(f"no subterm at path {list(site.path)}") from None
    return _replace(t, site.path, contract(target, site.rule))


def _replace(t: Term, path, new: Term) -> Term:
    if not path:
        return new
    kids = list(children(t))
    kids[path[0]] = _replace(kids[path[0]], path[1:], new)
    return rebuild(t, kids)


# ---------------------------------------------------------------------------
# Strategies and normalization

class Strategy:
    def choose(self, t: Term, ultra: bool) -> RedexSite | None:
        raise NotImplementedError

    def fork(self) -> Strategy:
        """A copy with fresh internal state (for one normalization run)."""
        return self


@dataclass(frozen=True)
class LeftmostOutermost(Strategy):
    def choose(self, t, ultra):
        return _leftmost_outermost(t, ultra)

    def __str__(self):
        return "lo"


@dataclass
class Random(Strategy):
    """Uniform choice among all redex sites, driven by a seeded generator."""

    seed: int
    _rng: random.Random = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self._rng = random.Random(self.seed)

    def choose(self, t, ultra):
        sites = redexes(t, ultra)
        return self._rng.choice(sites) if sites else None

    def fork(self):
        return Random(self.seed)

    def __str__(self):
        return f"rand:{self.seed}"


def parse_strategy(text: str) -> Strategy:
    """``lo`` or ``rand:SEED``."""
    if text == "lo":
        return LeftmostOutermost()
    if text.startswith("rand:"):
        return Random(int(text[5:]))
    raise ValueError(f"unknown strategy {text!r}; use 'lo' or 'rand:SEED'")


@dataclass
class NormalizeResult:
    term: Term
    steps: int
    trace: list[tuple[RedexSite | None, Term]] | None = None

    def __iter__(self):
        yield self.term
        yield self.steps
        yield self.trace


def normalize(t: Term, strategy: Strategy | None = None, fuel: int = 100_000,
              ultra: bool = False, trace: bool = False) -> NormalizeResult:
    """Rewrite until no redex is left or ``fuel`` steps have been taken.

    With ``trace`` the result lists ``(site, term)`` for the input (site
    ``None``) and every term reached, each paired with the site contracted
    to reach it.
    """
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    strat = (strategy or LeftmostOutermost()).fork()
    log = [(None, t)] if trace else None
    steps = 0
    while True:
        site = strat.choose(t, ultra)
        if site is None:
            return NormalizeResult(t, steps, log)
        if steps >= fuel:
            raise FuelExhausted(t, steps)
        t = step_at(t, site)
        steps += 1
        if log is not None:
            log.append((site, t))


def normal_form(t: Term, fuel: int = 100_000) -> Term:
    return normalize(t, fuel=fuel).term


# ---------------------------------------------------------------------------
# Classification of closed normal forms

class Classification(str, enum.Enum):
    ScalarStar = "ScalarStar"
    Lambda = "Lambda"
    TensorIntro = "TensorIntro"
    Sum = "Sum"
    Smul = "Smul"
    Unit = "Unit"
    Pair = "Pair"
    Inl = "Inl"
    Inr = "Inr"
    Bang = "Bang"
    Violation = "Violation"

    def __str__(self):
        return self.value


_SHAPES: dict[type, dict[type, Classification]] = {
    One: {Star: Classification.ScalarStar},
    Lolli: {Lam: Classification.Lambda},
    Tensor: {Tens: Classification.TensorIntro, Sum: Classification.Sum,
             Smul: Classification.Smul},
    Top: {TopIntro: Classification.Unit},
    With: {Pair: Classification.Pair},
    Plus: {Inl: Classification.Inl, Inr: Classification.Inr, Sum: Classification.Sum,
           Smul: Classification.Smul},
    Bang: {BangIntro: Classification.Bang, Sum: Classification.Sum,
           Smul: Classification.Smul},
}


def classify_normal(t: Term, A: TypeExpr) -> Classification:
    """Which introduction-form clause the closed normal term ``t : A`` falls under."""
    if t.fv:
        raise NotClosed(f"free variables {sorted(t.fv)}")
    if not is_normal(t):
        raise NotNormal("term still has redexes")
    return _SHAPES.get(type(A), {}).get(type(t), Classification.Violation)
