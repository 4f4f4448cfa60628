"""Metatheory properties as executable checks over generated terms.

Each property draws its own case from a seeded generator and returns
``None`` when the case passes or a short description of the failure.
:func:`run_fuzz` drives a property for ``n`` iterations; iteration ``i``
is seeded independently, so any failing iteration can be replayed alone.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .concrete import print_term, print_type
from .denot import is_decidable, soundness_check
from .encode import term_to_vec
from .errors import FuelExhausted, GiveUp, OclamError, TypeCheckError
from .gen import GenConfig, Generator, shrink
from .reduce import Classification, Random, classify_normal, normalize, redexes, step_at
from .terms import App, Smul, Sum, Term, alpha_eq
from .typecheck import check_closed, infer
from .types import Lolli, TypeExpr, Zero

__all__ = ["PROPERTIES", "Case", "Failure", "FuzzReport", "run_fuzz", "run_case",
           "minimize"]


@dataclass
class Case:
    term: Term
    type: TypeExpr
    extra: dict = field(default_factory=dict)


@dataclass
class Failure:
    prop: str
    seed: str
    term: str
    type: str
    message: str
    shrunk: str

    def to_dict(self) -> dict:
        return dict(prop=self.prop, seed=self.seed, term=self.term, type=self.type,
                    message=self.message, shrunk=self.shrunk)


@dataclass
class FuzzReport:
    props: list[str]
    n: int
    seed: int
    passes: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"props": self.props, "n": self.n, "seed": self.seed,
                "passes": dict(self.passes), "skipped": dict(self.skipped),
                "failures": [f.to_dict() for f in self.failures]}


def _closed(g: Generator, want: Callable[[TypeExpr], bool] = lambda A: True, tries: int = 64) -> Case:
    for _ in range(tries):
        A = g.type_()
        if not want(A):
            continue
        try:
            return Case(g.term({}, {}, A), A)
        except GiveUp:
            continue
    raise GiveUp("no suitable closed term")


def _sr(case: Case, fuel: int) -> str | None:
    for site in redexes(case.term):
        u = step_at(case.term, site)
        try:
            out = infer({}, {}, u)
        except TypeCheckError as e:
            return f"reduct at {site.path} by {site.rule} is ill-typed: {e}"
        if out.type != case.type:
            return f"reduct at {site.path} by {site.rule} has type {print_type(out.type)}"
    return None


def _confluence(case: Case, fuel: int, strategies: int = 10) -> str | None:
    ref = normalize(case.term, fuel=fuel).term
    for s in range(strategies):
        other = normalize(case.term, Random(s), fuel=fuel).term
        if not alpha_eq(ref, other):
            return f"rand:{s} reaches {print_term(other)} instead of {print_term(ref)}"
    return None


def _intro(case: Case, fuel: int) -> str | None:
    nf = normalize(case.term, fuel=fuel).term
    if isinstance(case.type, Zero):
        return f"closed normal inhabitant of Zero: {print_term(nf)}"
    if classify_normal(nf, case.type) is Classification.Violation:
        return f"normal form {print_term(nf)} is not an introduction of {print_type(case.type)}"
    return None


def _soundness(case: Case, fuel: int) -> str | None:
    rep = soundness_check(case.term, case.type)
    if rep.failed:
        _, site, _ = rep.failures[0]
        return f"value changes across {site.rule} at {site.path}"
    return None


def _termination(case: Case, fuel: int) -> str | None:
    for ultra in (False, True):
        try:
            normalize(case.term, fuel=fuel, ultra=ultra)
        except FuelExhausted as e:
            return f"no normal form within {e.steps} steps (ultra={ultra})"
    return None


def _linearity(case: Case, fuel: int) -> str | None:
    f, B = case.term, case.type.cod
    u1, u2, a = case.extra["u1"], case.extra["u2"], case.extra["a"]
    lhs = term_to_vec(App(f, Sum(u1, u2)), B, fuel)
    rhs = term_to_vec(Sum(App(f, u1), App(f, u2)), B, fuel)
    if lhs != rhs:
        return f"f(u1 <+> u2) = {lhs} but f u1 <+> f u2 = {rhs}"
    lhs = term_to_vec(App(f, Smul(a, u1)), B, fuel)
    rhs = term_to_vec(Smul(a, App(f, u1)), B, fuel)
    if lhs != rhs:
        return f"f(a <.> u1) = {lhs} but a <.> f u1 = {rhs}"
    return None


def _linearity_case(g: Generator) -> Case:
    for _ in range(64):
        A, B = g.vector_type(3), g.vector_type(3)
        try:
            f = g.term({}, {}, Lolli(A, B))
            u1, u2 = g.term({}, {}, A), g.term({}, {}, A)
        except GiveUp:
            continue
        return Case(f, Lolli(A, B), {"u1": u1, "u2": u2, "a": g.scalar()})
    raise GiveUp("no linearity case")


@dataclass(frozen=True)
class Property:
    name: str
    draw: Callable[[Generator], Case]
    test: Callable[[Case, int], str | None]


PROPERTIES: dict[str, Property] = {p.name: p for p in (
    Property("sr", _closed, _sr),
    Property("confluence", _closed, _confluence),
    Property("intro", _closed, _intro),
    Property("soundness", lambda g: _closed(g, is_decidable), _soundness),
    Property("termination", _closed, _termination),
    Property("linearity", _linearity_case, _linearity),
)}


def _fails(prop: Property, case: Case, fuel: int) -> str | None:
    try:
        return prop.test(case, fuel)
    except OclamError as e:
        return f"{type(e).__name__}: {e}"


def minimize(prop: Property, case: Case, fuel: int, rounds: int = 200) -> Case:
    """Greedy shrinking that keeps the term well-typed and failing."""
    for _ in range(rounds):
        for cand in shrink(case.term):
            try:
                check_closed(cand, case.type)
            except OclamError:
                continue
            smaller = Case(cand, case.type, case.extra)
            if _fails(prop, smaller, fuel):
                case = smaller
                break
        else:
            return case
    return case


def run_case(name: str, seed: str, cfg: GenConfig, fuel: int) -> tuple[Case | None, str | None]:
    prop = PROPERTIES[name]
    try:
        case = prop.draw(Generator(cfg.with_seed(seed)))
    except GiveUp:
        return None, None
    return case, _fails(prop, case, fuel)


def run_fuzz(props: list[str], n: int, seed: int = 0, size: int = 40,
             fuel: int = 100_000, cfg: GenConfig | None = None) -> FuzzReport:
    unknown = [p for p in props if p not in PROPERTIES]
    if unknown:
        raise ValueError(f"unknown properties {unknown}; choose from {sorted(PROPERTIES)}")
    base = cfg or GenConfig(max_size=size)
    rep = FuzzReport(list(props), n, seed)
    for name in props:
        rep.passes[name] = rep.skipped[name] = 0
        for i in range(n):
            s = f"{seed}:{name}:{i}"
            case, msg = run_case(name, s, base, fuel)
            if case is None:
                rep.skipped[name] += 1
            elif msg is None:
                rep.passes[name] += 1
            else:
                small = minimize(PROPERTIES[name], case, fuel)
                rep.failures.append(Failure(name, s, print_term(case.term, base.semiring),
                                            print_type(case.type), msg,
                                            print_term(small.term, base.semiring)))
    return rep
