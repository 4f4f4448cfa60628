"""Element-level interpretation of terms in semimodules over a semiring.

Values
------
``ScalarV(s)``
    element of the unit ``S``;
``PairV(a, b)``
    element of a biproduct (both ``&`` and ``(+)``);
``ZERO_V``
    the additive zero of every type (and the only element of ``Top`` and ``Zero``);
``TensorV(((s, a, b), ...))``
    formal sum of pure tensors;
``BangV(((s, atom), ...))``
    finite formal sum over the underlying set (the free semimodule on it);
``FunV(dom, fn)``
    a linear map, kept as a Python closure.

A term ``U; G |- t : A`` denotes a homomorphism out of ``!U (x) G``; it is
evaluated on pure tensors, one value per variable.  Intuitionistic
variables hold ``BangV`` values.  In ``eager`` mode those are split into
their atoms at the top and wherever ``letbang`` binds a variable, so every
intuitionistic binding is a single atom of weight one.  In ``deferred`` mode
bindings keep their full formal sum and are split only where contraction
happens (every rule with two premises over disjoint linear contexts, and
``bang``); variables and scalars erase the remaining bindings to their
weight sums.  Both readings give the same value.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping

from .errors import ShapeError, Unsupported
from .reduce import RedexSite, redexes, step_at
from .semiring import NAT, Semiring
from .terms import (
    App, BangIntro, ElimBang, ElimOne, ElimPlus, ElimTens, ElimWith1, ElimWith2, ElimZero,
    Inl, Inr, Lam, Pair, Smul, Star, Sum, Tens, Term, TopIntro, Var,
)
from .types import Bang, Lolli, One, Plus, Tensor, Top, TypeExpr, With, Zero

__all__ = [
    "SemValue", "ScalarV", "PairV", "ZeroV", "ZERO_V", "TensorV", "BangV", "FunV", "SemEnv",
    "SemType", "interp_type", "basis", "vadd", "vsmul", "vzero", "comonad_map", "evaluate",
    "eval", "coords", "canonicalize", "sem_eq", "is_decidable", "is_enumerable",
    "SoundnessReport", "soundness_check", "format_value", "format_canonical",
]


class SemValue:
    __slots__ = ()


@dataclass(frozen=True)
class ScalarV(SemValue):
    s: Any


@dataclass(frozen=True)
class PairV(SemValue):
    left: SemValue
    right: SemValue


class ZeroV(SemValue):
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ZeroV"

    def __call__(self, v):
        # the zero map, when read at a function type
        return self


ZERO_V = ZeroV()


@dataclass(frozen=True)
class TensorV(SemValue):
    terms: tuple


@dataclass(frozen=True)
class BangV(SemValue):
    terms: tuple


@dataclass(frozen=True, eq=False)
class FunV(SemValue):
    dom: TypeExpr
    fn: Callable[[SemValue], SemValue]

    def __call__(self, v):
        return self.fn(v)


@dataclass
class SemEnv:
    intuitionistic: dict
    linear: dict


# ---------------------------------------------------------------------------
# Types

def is_enumerable(A: TypeExpr) -> bool:
    """Finite basis: built from ``I``, ``Top``, ``Zero``, ``&``, ``(+)``, ``*``."""
    if isinstance(A, (One, Top, Zero)):
        return True
    if isinstance(A, (With, Plus, Tensor)):
        return is_enumerable(A.left) and is_enumerable(A.right)
    return False


def is_decidable(A: TypeExpr) -> bool:
    if isinstance(A, (One, Top, Zero)):
        return True
    if isinstance(A, (With, Plus, Tensor)):
        return is_decidable(A.left) and is_decidable(A.right)
    if isinstance(A, Bang):
        return is_decidable(A.body)
    if isinstance(A, Lolli):
        return is_enumerable(A.dom) and is_decidable(A.cod)
    return False


def basis(A: TypeExpr, S: Semiring = NAT) -> list[SemValue]:
    if isinstance(A, One):
        return [ScalarV(S.one)]
    if isinstance(A, (Top, Zero)):
        return []
    if isinstance(A, (With, Plus)):
        return ([PairV(b, ZERO_V) for b in basis(A.left, S)]
                + [PairV(ZERO_V, b) for b in basis(A.right, S)])
    if isinstance(A, Tensor):
        return [TensorV(((S.one, b, c),)) for b in basis(A.left, S) for c in basis(A.right, S)]
    raise Unsupported(f"{A} has no finite basis")


def _basis_keys(A: TypeExpr) -> list[tuple]:
    if isinstance(A, One):
        return [()]
    if isinstance(A, (Top, Zero)):
        return []
    if isinstance(A, (With, Plus)):
        return [(0,) + k for k in _basis_keys(A.left)] + [(1,) + k for k in _basis_keys(A.right)]
    return [("T", k1, k2) for k1 in _basis_keys(A.left) for k2 in _basis_keys(A.right)]


@dataclass(frozen=True)
class SemType:
    type: TypeExpr
    shape: str
    enumerable: bool
    decidable: bool
    basis: tuple | None


_SHAPE = {One: "ScalarV", Top: "ZeroV", Zero: "ZeroV", With: "PairV", Plus: "PairV",
          Tensor: "TensorV", Bang: "BangV", Lolli: "FunV"}


def interp_type(A: TypeExpr, S: Semiring = NAT) -> SemType:
    enum_ = is_enumerable(A)
    return SemType(A, _SHAPE[type(A)], enum_, is_decidable(A),
                   tuple(basis(A, S)) if enum_ else None)


# ---------------------------------------------------------------------------
# Semimodule operations

def _is_zero(S: Semiring, s) -> bool:
    return s == S.zero


def _tensor(S, terms) -> SemValue:
    kept = tuple((s, a, b) for s, a, b in terms
                 if not _is_zero(S, s) and a is not ZERO_V and b is not ZERO_V)
    return TensorV(kept) if kept else ZERO_V


def _bang(S, terms) -> SemValue:
    merged: dict = {}
    loose: list = []
    for s, atom in terms:
        try:
            k = _atom_key(S, atom)
        except Unsupported:
            loose.append((s, atom))
            continue
        if k in merged:
            w, a0 = merged[k]
            merged[k] = (w + s, a0)
        else:
            merged[k] = (s, atom)
    items = sorted(merged.items(), key=lambda kv: _format_key(kv[0], S))
    out = tuple(v for _, v in items if not _is_zero(S, v[0]))
    out += tuple(x for x in loose if not _is_zero(S, x[0]))
    return BangV(out) if out else ZERO_V


def vzero(A: TypeExpr | None = None) -> SemValue:
    return ZERO_V


def vadd(v: SemValue, w: SemValue, S: Semiring = NAT) -> SemValue:
    if v is ZERO_V:
        return w
    if w is ZERO_V:
        return v
    if type(v) is not type(w):
        raise ShapeError(f"cannot add {type(v).__name__} and {type(w).__name__}")
    if isinstance(v, ScalarV):
        return ScalarV(v.s + w.s)
    if isinstance(v, PairV):
        return PairV(vadd(v.left, w.left, S), vadd(v.right, w.right, S))
    if isinstance(v, TensorV):
        return _tensor(S, v.terms + w.terms)
    if isinstance(v, BangV):
        return _bang(S, v.terms + w.terms)
    if isinstance(v, FunV):
        f, g = v.fn, w.fn
        return FunV(v.dom, lambda x: vadd(f(x), g(x), S))
    raise ShapeError(f"not a value: {v!r}")


def vsmul(s, v: SemValue, S: Semiring = NAT) -> SemValue:
    if v is ZERO_V or _is_zero(S, s):
        return ZERO_V
    if s == S.one:
        return v
    if isinstance(v, ScalarV):
        return ScalarV(s * v.s)
    if isinstance(v, PairV):
        return PairV(vsmul(s, v.left, S), vsmul(s, v.right, S))
    if isinstance(v, TensorV):
        return _tensor(S, tuple((s * w, a, b) for w, a, b in v.terms))
    if isinstance(v, BangV):
        return _bang(S, tuple((s * w, a) for w, a in v.terms))
    if isinstance(v, FunV):
        f = v.fn
        return FunV(v.dom, lambda x: vsmul(s, f(x), S))
    raise ShapeError(f"not a value: {v!r}")


def _vsum(values: Iterable[SemValue], S: Semiring) -> SemValue:
    acc = ZERO_V
    for v in values:
        acc = vadd(acc, v, S)
    return acc


def _atoms(v: SemValue) -> tuple:
    if v is ZERO_V:
        return ()
    if not isinstance(v, BangV):
        raise ShapeError(f"expected a ! value, found {type(v).__name__}")
    return v.terms


def _single(S, atom) -> BangV:
    return BangV(((S.one, atom),))


def comonad_map(kind: str, *args, S: Semiring = NAT) -> SemValue:
    """``eps``, ``delta``, ``dup``, ``erase`` on one ``BangV``; ``merge`` on two."""
    if kind == "eps":
        return _vsum((vsmul(s, a, S) for s, a in _atoms(args[0])), S)
    if kind == "delta":
        return _bang(S, tuple((s, _single(S, a)) for s, a in _atoms(args[0])))
    if kind == "dup":
        return _tensor(S, tuple((s, _single(S, a), _single(S, a)) for s, a in _atoms(args[0])))
    if kind == "erase":
        total = S.zero
        for s, _ in _atoms(args[0]):
            total = total + s
        return ScalarV(total)
    if kind == "merge":
        v, w = args
        return _bang(S, tuple((s * t, TensorV(((S.one, a, b),)))
                              for s, a in _atoms(v) for t, b in _atoms(w)))
    raise ValueError(f"unknown comonad map {kind!r}")


# ---------------------------------------------------------------------------
# Evaluation

class _Evaluator:
    def __init__(self, S: Semiring, mode: str):
        if mode not in ("eager", "deferred"):
            raise ValueError("mode must be 'eager' or 'deferred'")
        self.S = S
        self.eager = mode == "eager"

    # -- intuitionistic bindings ------------------------------------------
    def decompose(self, U: dict) -> list[tuple[Any, dict]]:
        """Split every binding into atoms: ``[(weight product, singleton env)]``."""
        S = self.S
        names = list(U)
        if all(_is_singleton(S, U[n]) for n in names):
            return [(S.one, U)]
        out = []
        for combo in itertools.product(*(_atoms(U[n]) for n in names)):
            w = S.one
            env = {}
            for n, (s, a) in zip(names, combo):
                w = w * s
                env[n] = _single(S, a)
            out.append((w, env))
        return out

    def erase_weight(self, U: dict, skip: str | None = None):
        w = self.S.one
        for n, v in U.items():
            if n != skip and not _is_singleton(self.S, v):
                w = w * comonad_map("erase", v, S=self.S).s
        return w

    def split_sum(self, U, f):
        S = self.S
        return _vsum((vsmul(w, f(env), S) for w, env in self.decompose(U)), S)

    # -- entry point -------------------------------------------------------
    def run(self, t: Term, U: dict, G: dict) -> SemValue:
        if self.eager:
            return self.split_sum(U, lambda env: self.ev(t, env, G))
        return self.ev(t, U, G)

    def ev(self, t: Term, U: dict, G: dict) -> SemValue:
        S = self.S
        c = type(t)
        if c is Var:
            if t.name in G:
                return vsmul(self.erase_weight(U), G[t.name], S)
            if t.name in U:
                w = self.erase_weight(U, skip=t.name)
                return vsmul(w, comonad_map("eps", U[t.name], S=S), S)
            raise ShapeError(f"no value bound to {t.name!r}")
        if c is Sum:
            return vadd(self.ev(t.left, U, G), self.ev(t.right, U, G), S)
        if c is Smul:
            return vsmul(t.scalar, self.ev(t.body, U, G), S)
        if c is Star:
            return vsmul(self.erase_weight(U), ScalarV(t.scalar), S)
        if c is TopIntro or c is ElimZero:
            return ZERO_V
        if c is Lam:
            return self.lam(t, U, G)
        if c is Pair:
            return PairV(self.ev(t.left, U, G), self.ev(t.right, U, G))
        if c is Inl:
            return PairV(self.ev(t.body, U, G), ZERO_V)
        if c is Inr:
            return PairV(ZERO_V, self.ev(t.body, U, G))
        if c is BangIntro:
            return _bang(S, tuple((w, self.ev(t.body, env, G)) for w, env in self.decompose(U)))
        rule = _CONTRACTING.get(c)
        if rule is None:
            raise ShapeError(f"not a term: {t!r}")
        return self.split_sum(U, lambda env: rule(self, t, env, G))

    def lam(self, t: Lam, U, G):
        U2 = {k: v for k, v in U.items() if k != t.var}

        def fn(v):
            G2 = dict(G)
            G2[t.var] = v
            return self.ev(t.body, U2, G2)

        return FunV(t.ty, fn)

    # -- rules with a contraction of the intuitionistic context -------------
    def elim_one(self, t, U, G):
        a = self.ev(t.scrut, U, G)
        if a is ZERO_V:
            return ZERO_V
        if not isinstance(a, ScalarV):
            raise ShapeError("let1 scrutinee is not a scalar")
        return vsmul(a.s, self.ev(t.body, U, G), self.S)

    def app(self, t, U, G):
        f = self.ev(t.fun, U, G)
        if f is ZERO_V:
            return ZERO_V
        if not isinstance(f, FunV):
            raise ShapeError("applied value is not a function")
        return f(self.ev(t.arg, U, G))

    def tens(self, t, U, G):
        return _tensor(self.S, ((self.S.one, self.ev(t.left, U, G), self.ev(t.right, U, G)),))

    def elim_tens(self, t, U, G):
        v = self.ev(t.scrut, U, G)
        if v is ZERO_V:
            return ZERO_V
        if not isinstance(v, TensorV):
            raise ShapeError("lettens scrutinee is not a tensor")
        U2 = _drop(U, t.x, t.y)
        out = ZERO_V
        for s, a, b in v.terms:
            G2 = dict(G)
            G2[t.x] = a
            G2[t.y] = b
            out = vadd(out, vsmul(s, self.ev(t.body, U2, G2), self.S), self.S)
        return out

    def elim_with(self, t, U, G):
        v = self.ev(t.scrut, U, G)
        if v is ZERO_V:
            return ZERO_V
        if not isinstance(v, PairV):
            raise ShapeError("projection scrutinee is not a pair")
        comp = v.left if isinstance(t, ElimWith1) else v.right
        if comp is ZERO_V:
            return ZERO_V
        return self.ev(t.body, _drop(U, t.var), {**G, t.var: comp})

    def elim_plus(self, t, U, G):
        v = self.ev(t.scrut, U, G)
        if v is ZERO_V:
            return ZERO_V
        if not isinstance(v, PairV):
            raise ShapeError("case scrutinee is not a biproduct value")
        out = ZERO_V
        if v.left is not ZERO_V:
            out = self.ev(t.left, _drop(U, t.x), {**G, t.x: v.left})
        if v.right is not ZERO_V:
            out = vadd(out, self.ev(t.right, _drop(U, t.y), {**G, t.y: v.right}), self.S)
        return out

    def elim_bang(self, t, U, G):
        v = self.ev(t.scrut, U, G)
        G2 = {k: w for k, w in G.items() if k != t.var}
        if not self.eager:
            bound = v if v is not ZERO_V else BangV(())
            return self.ev(t.body, {**U, t.var: bound}, G2)
        S = self.S
        return _vsum((vsmul(s, self.ev(t.body, {**U, t.var: _single(S, a)}, G2), S)
                      for s, a in _atoms(v)), S)


_CONTRACTING = {
    ElimOne: _Evaluator.elim_one,
    App: _Evaluator.app,
    Tens: _Evaluator.tens,
    ElimTens: _Evaluator.elim_tens,
    ElimWith1: _Evaluator.elim_with,
    ElimWith2: _Evaluator.elim_with,
    ElimPlus: _Evaluator.elim_plus,
    ElimBang: _Evaluator.elim_bang,
}


def _is_singleton(S, v) -> bool:
    return isinstance(v, BangV) and len(v.terms) == 1 and v.terms[0][0] == S.one


def _drop(U: dict, *names) -> dict:
    if not any(n in U for n in names):
        return U
    return {k: v for k, v in U.items() if k not in names}


def evaluate(t: Term, env: SemEnv | tuple[Mapping, Mapping] | None = None, scale=None,
             semiring: Semiring = NAT, mode: str = "eager") -> SemValue:
    """Value of ``t`` on the pure tensor ``scale (x) env``.

    ``env`` gives one value per free variable: ``BangV`` values for the
    intuitionistic context and plain values for the linear one.
    """
    if env is None:
        U, G = {}, {}
    elif isinstance(env, SemEnv):
        U, G = dict(env.intuitionistic), dict(env.linear)
    else:
        U, G = dict(env[0]), dict(env[1])
    v = _Evaluator(semiring, mode).run(t, U, G)
    return v if scale is None else vsmul(scale, v, semiring)


eval = evaluate  # noqa: A001


# ---------------------------------------------------------------------------
# Canonical forms and equality

def _atom_key(S, atom) -> frozenset:
    return frozenset(coords(atom, S).items())


def coords(v: SemValue, S: Semiring = NAT) -> dict:
    """Sparse coordinates with zero entries dropped; equal values give equal maps."""
    acc: dict = {}
    _coords_into(v, S, S.one, (), acc)
    return {k: c for k, c in acc.items() if not _is_zero(S, c)}


def _add_to(acc, k, c):
    acc[k] = acc[k] + c if k in acc else c


def _coords_into(v, S, w, prefix, acc):
    if v is ZERO_V:
        return
    if isinstance(v, ScalarV):
        _add_to(acc, prefix, w * v.s)
    elif isinstance(v, PairV):
        _coords_into(v.left, S, w, prefix + (0,), acc)
        _coords_into(v.right, S, w, prefix + (1,), acc)
    elif isinstance(v, TensorV):
        for s, a, b in v.terms:
            ca, cb = coords(a, S), coords(b, S)
            for k1, c1 in ca.items():
                for k2, c2 in cb.items():
                    _add_to(acc, prefix + ("T", k1, k2), w * s * c1 * c2)
    elif isinstance(v, BangV):
        for s, atom in v.terms:
            _add_to(acc, prefix + ("!", _atom_key(S, atom)), w * s)
    elif isinstance(v, FunV):
        if not is_enumerable(v.dom):
            raise Unsupported(f"function on {v.dom} has no finite basis to test on")
        for j, b in enumerate(basis(v.dom, S)):
            _coords_into(v(b), S, w, prefix + ("F", j), acc)
    else:
        raise ShapeError(f"not a value: {v!r}")


def canonicalize(A: TypeExpr, v: SemValue, S: Semiring = NAT):
    """Canonical representative of ``v : A``.

    Finite-basis types give the dense coefficient tuple over :func:`basis`;
    functions with such a domain give the tuple of canonical images of the
    basis; other decidable types give sorted sparse ``(coordinate, weight)``
    pairs.
    """
    if not is_decidable(A):
        raise Unsupported(f"equality on {A} is not decidable")
    if is_enumerable(A):
        c = coords(v, S)
        keys = _basis_keys(A)
        stray = set(c) - set(keys)
        if stray:
            raise ShapeError(f"value has coordinates outside the basis of {A}")
        return tuple(c.get(k, S.zero) for k in keys)
    if isinstance(A, Lolli):
        if v is ZERO_V:
            return tuple(canonicalize(A.cod, ZERO_V, S) for _ in basis(A.dom, S))
        return tuple(canonicalize(A.cod, v(b), S) for b in basis(A.dom, S))
    return tuple(sorted(coords(v, S).items(), key=lambda kv: _format_key(kv[0], S)))


def sem_eq(A: TypeExpr, v: SemValue, w: SemValue, S: Semiring = NAT) -> bool:
    if not is_decidable(A):
        raise Unsupported(f"equality on {A} is not decidable")
    return coords(v, S) == coords(w, S)


# ---------------------------------------------------------------------------
# Soundness driver

@dataclass
class SoundnessReport:
    checked: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list = None

    def __post_init__(self):
        if self.failures is None:
            self.failures = []

    @property
    def ok(self) -> bool:
        return self.failed == 0


def soundness_check(t: Term, A: TypeExpr, sites: list[RedexSite] | None = None,
                    envs: Iterable = ((),), semiring: Semiring = NAT,
                    mode: str = "eager", report: SoundnessReport | None = None) -> SoundnessReport:
    """Compare the value of ``t`` with that of each one-step reduct.

    ``envs`` holds ``(U, G)`` pairs (``()`` for a closed term); an
    environment whose values cannot be compared is counted as skipped.
    """
    rep = report if report is not None else SoundnessReport()
    if sites is None:
        sites = redexes(t)
    for env in envs:
        env = env if env else None
        try:
            before = evaluate(t, env, semiring=semiring, mode=mode)
        except Unsupported:
            rep.skipped += 1
            continue
        for site in sites:
            after = evaluate(step_at(t, site), env, semiring=semiring, mode=mode)
            try:
                same = sem_eq(A, before, after, semiring)
            except Unsupported:
                rep.skipped += 1
                continue
            rep.checked += 1
            if not same:
                rep.failed += 1
                rep.failures.append((t, site, env))
    return rep


# ---------------------------------------------------------------------------
# Display

def format_value(v: SemValue, S: Semiring = NAT) -> str:
    if v is ZERO_V:
        return "0"
    if isinstance(v, ScalarV):
        return S.format(v.s)
    if isinstance(v, PairV):
        return f"({format_value(v.left, S)}, {format_value(v.right, S)})"
    if isinstance(v, TensorV):
        return " + ".join(f"{S.format(s)}.({format_value(a, S)} (x) {format_value(b, S)})"
                          for s, a, b in v.terms)
    if isinstance(v, BangV):
        return "[" + ", ".join(f"{S.format(s)}.{format_value(a, S)}" for s, a in v.terms) + "]"
    return f"<fun on {v.dom}>"


def format_canonical(A: TypeExpr, c, S: Semiring = NAT) -> str:
    """Text for ``canonicalize(A, v, S)``, independent of hash ordering."""
    if is_enumerable(A):
        return "(" + ", ".join(S.format(x) for x in c) + ")"
    if isinstance(A, Lolli):
        return "[" + ", ".join(format_canonical(A.cod, x, S) for x in c) + "]"
    items = sorted(f"{_format_key(k, S)}: {S.format(w)}" for k, w in c)
    return "{" + ", ".join(items) + "}"


def _format_key(k, S: Semiring) -> str:
    if isinstance(k, frozenset):
        return "{" + ", ".join(sorted(f"{_format_key(a, S)}: {S.format(w)}" for a, w in k)) + "}"
    if isinstance(k, tuple):
        return "(" + " ".join(_format_key(x, S) for x in k) + ")"
    return str(k)
