import pytest
from hypothesis import assume, given, strategies as st

from conftest import closed_term, seeds
from corpus import CORPUS, RULES
from oclam.concrete import parse_term, parse_type, print_term
from oclam.errors import FuelExhausted, InvalidSite, NotClosed, NotNormal
from oclam.reduce import (
    BETA_RULES, COMMUTATION_RULES, RULES as ALL_RULES, ULTRA_RULES, Classification,
    LeftmostOutermost, Random, RedexSite, classify_normal, contract, is_normal, normalize,
    parse_strategy, redexes, rules_at, step_at,
)
from oclam.terms import Star, alpha_eq
from oclam.typecheck import check_closed, infer
from oclam.types import I

P = parse_term
T = parse_type


def test_rule_tables_partition_the_rules():
    assert len(BETA_RULES) == 8 and len(COMMUTATION_RULES) == 14 and len(ULTRA_RULES) == 3
    assert set(ALL_RULES) == set(BETA_RULES) | set(COMMUTATION_RULES) | set(ULTRA_RULES)


def test_corpus_covers_every_plain_rule():
    assert {r for r, *_ in RULES} == set(BETA_RULES) | set(COMMUTATION_RULES)


@pytest.mark.parametrize("rule, src, ty, after", RULES, ids=[r[0] for r in RULES])
def test_each_rule_contracts_as_written(rule, src, ty, after):
    t = P(src)
    assert check_closed(t, T(ty))
    assert rules_at(t) == [rule]
    assert alpha_eq(contract(t, rule), P(after))
    assert check_closed(contract(t, rule), T(ty))


@pytest.mark.parametrize("rule, src, ty, after", CORPUS)
def test_corpus_is_well_typed(rule, src, ty, after):
    assert check_closed(P(src), T(ty))


def test_redex_examples():
    assert redexes(P("star(1) <+> star(2)")) == [RedexSite((), "star-sum")]
    assert redexes(P(r"\x:I. x")) == []
    sites = redexes(P("let1(star(2), star(3) <+> star(4))"))
    assert sites == [RedexSite((), "let1-beta"), RedexSite((1,), "star-sum")]


def test_step_examples():
    t = step_at(P("let1(star(2), pair(x, y))"), RedexSite((), "let1-beta"))
    assert t == P("2 <.> pair(x, y)")
    t = step_at(P("pair(t, u) <+> pair(v, w)"), RedexSite((), "pair-sum"))
    assert t == P("pair(t <+> v, u <+> w)")
    t = step_at(P("letbang(bang(s), x:I. tens(x, x))"), RedexSite((), "bang-beta"))
    assert t == P("tens(s, s)")


def test_step_at_invalid_site():
    with pytest.raises(InvalidSite):
        step_at(P("star(1)"), RedexSite((), "star-sum"))
    with pytest.raises(InvalidSite):
        step_at(P("star(1) <+> star(2)"), RedexSite((0,), "star-sum"))


def test_scalar_rules_take_one_step():
    for src, want in (("star(1) <+> star(2)", 3), ("2 <.> star(3)", 6)):
        r = normalize(P(src), LeftmostOutermost())
        assert r.term == Star(want) and r.steps == 1


def test_parametric_matrix_application():
    a, b, c, d, e, f = 2, 3, 5, 7, 11, 13
    t = P(rf"(\x:I & I. fst(x, y:I. let1(y, pair(star({a}), star({b})))) "
          rf"<+> snd(x, z:I. let1(z, pair(star({c}), star({d}))))) pair(star({e}), star({f}))")
    nf = normalize(t).term
    assert nf == P(f"pair(star({a * e + c * f}), star({b * e + d * f}))")


def test_smul_star_any_strategy():
    for s in (LeftmostOutermost(), Random(0), Random(1)):
        assert normalize(P("2 <.> star(3)"), s).term == Star(6)


def test_unit_sum():
    assert normalize(P("unit <+> unit")).term == P("unit")


def test_trace_records_every_step():
    r = normalize(P("(star(1) <+> star(2)) <+> star(3)"), trace=True)
    assert [s for s, _ in r.trace][0] is None
    assert len(r.trace) == r.steps + 1 and r.trace[-1][1] == Star(6)


def test_fuel_exhaustion():
    nested = P(r"(\x:I. x) ((\y:I. y) star(1))")
    with pytest.raises(FuelExhausted) as e:
        normalize(nested, fuel=1)
    assert e.value.steps == 1
    assert normalize(nested, fuel=2).term == Star(1)


def test_ultra_rules():
    t = P("star(1) <+> star(2)")
    assert rules_at(t, ultra=True) == ["star-sum", "ultra-left", "ultra-right"]
    assert contract(t, "ultra-left") == Star(1)
    assert contract(P("3 <.> star(2)"), "ultra-drop") == Star(2)
    # a sum of distinct non-introduction terms is only reducible by the ultra rules
    u = P(r"tens(star(1), star(2)) <+> tens(star(3), star(4))")
    assert is_normal(u) and not is_normal(u, ultra=True)


def test_parse_strategy():
    assert isinstance(parse_strategy("lo"), LeftmostOutermost)
    assert parse_strategy("rand:5").seed == 5
    with pytest.raises(ValueError):
        parse_strategy("outermost")


def test_classification_examples():
    assert classify_normal(P("star(5)"), I) is Classification.ScalarStar
    t = P("tens(star(1), star(2)) <+> tens(star(3), star(4))")
    assert classify_normal(t, T("I * I")) is Classification.Sum
    assert classify_normal(P("pair(star(1), star(2))"), T("I & I")) is Classification.Pair
    assert classify_normal(P("star(1)"), T("I & I")) is Classification.Violation
    with pytest.raises(NotNormal):
        classify_normal(P("star(1) <+> star(2)"), I)
    with pytest.raises(NotClosed):
        classify_normal(P("x"), I)


@given(seeds)
def test_subject_reduction(seed):
    case = closed_term(seed)
    assume(case is not None)
    t, A = case
    for site in redexes(t):
        out = infer({}, {}, step_at(t, site))
        assert out.type == A and not out.used


@given(seeds, st.lists(st.integers(0, 10**6), min_size=1, max_size=3))
def test_confluence(seed, strategy_seeds):
    case = closed_term(seed)
    assume(case is not None)
    t, _ = case
    ref = normalize(t).term
    for s in strategy_seeds:
        assert alpha_eq(normalize(t, Random(s)).term, ref)


@given(seeds)
def test_introduction(seed):
    case = closed_term(seed)
    assume(case is not None)
    t, A = case
    assert classify_normal(normalize(t).term, A) is not Classification.Violation


@given(seeds)
def test_termination_plain_and_ultra(seed):
    case = closed_term(seed, max_size=60)
    assume(case is not None)
    t, _ = case
    normalize(t, fuel=100_000)
    normalize(t, fuel=100_000, ultra=True)


@given(seeds)
def test_redex_enumeration_is_preorder(seed):
    case = closed_term(seed)
    assume(case is not None)
    paths = [s.path for s in redexes(case[0])]
    # lexicographic order on child-index paths is preorder
    assert paths == sorted(paths)
