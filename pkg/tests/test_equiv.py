from hypothesis import assume, given, settings

from conftest import closed_term, seeds
from oclam.concrete import parse_term, parse_type, print_term
from oclam.equiv import (
    HOLE, Distinguished, ElimContext, EquivalentUpToBound, Unknown, enum_contexts,
    linearity_check, obs_equiv, observe,
)
from oclam.reduce import normalize, redexes, step_at
from oclam.semiring import CRAT, QI
from oclam.terms import Star, Var, alpha_eq, measure
from oclam.typecheck import check
from oclam.types import I

P = parse_term
T = parse_type
APPLY_LATER = r"(\x:I. \y:I -o I. y x)"
LEFT = P(f"{APPLY_LATER} (star(1) <+> star(2))")
RIGHT = P(f"({APPLY_LATER} star(1)) <+> ({APPLY_LATER} star(2))")
AT = T("(I -o I) -o I")


def contexts(A, depth, **kw):
    return [print_term(K.term) for K in enum_contexts(T(A), depth, **kw)]


def test_hole_alone_at_unit_type():
    assert contexts("I", 0) == [HOLE]


def test_no_contexts_at_top():
    assert contexts("Top", 3) == []


def test_function_contexts_apply_the_hole():
    ks = contexts("I -o I", 1)
    assert ks and all(k.startswith("_ ") for k in ks)


def test_contexts_are_well_typed_and_consume_the_hole():
    for A in ("I", "I & I", "I * (I & I)", "I (+) I", "!(I & I)", "(I -o I) -o I",
              "Zero", "(I -o I) & I", "!I -o I"):
        for K in enum_contexts(T(A), 3, limit=80):
            assert check({}, {HOLE: T(A)}, K.term, I)


def test_contexts_are_deterministic_and_prefix_stable():
    a = contexts("I * (I & I)", 3, seed=5)
    b = contexts("I * (I & I)", 3, seed=5)
    assert a == b
    first = [print_term(K.term) for K, _ in zip(enum_contexts(T("I * (I & I)"), 3, seed=5), range(4))]
    assert first == a[:4]


def test_abort_frame_at_zero():
    assert contexts("Zero", 1)[0] == "abort[I](_)"


def test_counterexample_pair_is_equivalent_at_depth_one():
    K = next(K for K in enum_contexts(AT, 1) if print_term(K.term) == r"_ (\z:I. z)")
    assert observe(K, LEFT) == observe(K, RIGHT) == Star(3)
    v = obs_equiv(LEFT, RIGHT, AT, depth=1)
    assert isinstance(v, EquivalentUpToBound) and v.depth == 1 and v.contexts >= 1


def test_counterexample_pair_has_distinct_normal_forms():
    assert not alpha_eq(normalize(LEFT).term, normalize(RIGHT).term)


def test_distinguished_witness_replays():
    v = obs_equiv(P("pair(star(1), star(2))"), P("pair(star(1), star(3))"), T("I & I"), depth=2)
    assert isinstance(v, Distinguished)
    a, b = observe(v.context, P("pair(star(1), star(2))")), observe(v.context, P("pair(star(1), star(3))"))
    assert a == v.left and b == v.right and a != b


def test_fuel_exhaustion_is_unknown():
    v = obs_equiv(P("star(1) <+> star(2)"), P("star(3)"), I, depth=0, fuel=0)
    assert isinstance(v, Unknown)


def test_reflexivity():
    t = P(r"\x:I & I. pair(snd(x, b:I. b), fst(x, a:I. a))")
    assert isinstance(obs_equiv(t, t, T("(I & I) -o (I & I)"), depth=2), EquivalentUpToBound)


def test_plug_measure_is_additive():
    for K in enum_contexts(T("I & I"), 2, limit=20):
        t = P("pair(star(1), star(2))")
        assert measure(K.plug(t)) == measure(K.term) + measure(t)


def test_linearity_vector_route(H):
    u1, u2 = P("pair(star(1), star(0))", CRAT), P("pair(star(0), star(1))", CRAT)
    rep = linearity_check(H, T("I & I"), T("I & I"), u1, u2, QI(3), semiring=CRAT)
    assert rep.route == "vector" and rep.additive is True and rep.homogeneous is True and rep.ok


def test_linearity_identity_scaling():
    rep = linearity_check(P(r"\x:I. x"), I, I, P("star(2)"), P("star(4)"), 5)
    assert rep.ok
    assert normalize(P(r"(\x:I. x) (5 <.> star(2))")).term == Star(10)


def test_linearity_observational_route():
    f = P(r"\x:I. \y:I -o I. y x")
    rep = linearity_check(f, I, T("(I -o I) -o I"), P("star(1)"), P("star(2)"), 2)
    assert rep.route == "observational" and rep.ok


@settings(max_examples=25)
@given(seeds)
def test_reducts_are_never_distinguished(seed):
    case = closed_term(seed, max_size=20)
    assume(case is not None)
    t, A = case
    sites = redexes(t)
    assume(sites)
    v = obs_equiv(t, step_at(t, sites[0]), A, depth=2, limit=60)
    assert not isinstance(v, Distinguished)
