import pytest
from hypothesis import given

from conftest import seeds
from oclam.concrete import print_term
from oclam.errors import GiveUp
from oclam.gen import (
    GenConfig, Generator, gen_closed, gen_term, gen_type, gen_vector_type, shrink, term_stream,
)
from oclam.terms import subterms
from oclam.typecheck import check, check_closed
from oclam.types import Bang, One, Top, Zero, I
from oclam import terms as T


def test_type_generation_is_deterministic():
    assert gen_type(GenConfig(seed=1)) == gen_type(GenConfig(seed=1))


def test_depth_zero_types_are_base_types():
    for s in range(30):
        assert isinstance(gen_type(GenConfig(seed=s), depth=0), (One, Top, Zero))


def _has_bang(A):
    return isinstance(A, Bang) or any(_has_bang(getattr(A, f)) for f in ("dom", "cod", "left", "right", "body")
                                      if hasattr(A, f))


def test_bang_can_be_disabled():
    for s in range(50):
        assert not _has_bang(gen_type(GenConfig(seed=s, allow_bang=False)))


def test_unit_type_always_inhabited():
    for s in range(50):
        assert check_closed(gen_term(GenConfig(seed=s), {}, {}, I), I)


def test_zero_has_no_closed_terms():
    with pytest.raises(GiveUp):
        gen_term(GenConfig(seed=0), {}, {}, Zero())


def test_streams_are_reproducible():
    a = [print_term(t) for t, _ in term_stream(GenConfig(seed=9), 30)]
    b = [print_term(t) for t, _ in term_stream(GenConfig(seed=9), 30)]
    assert a == b


def test_mixed_samples_typecheck_and_respect_size():
    cfg = GenConfig(seed=2, max_size=40)
    for t, A in term_stream(cfg, 1000):
        assert check_closed(t, A) and t.size <= 40


def test_open_terms_consume_their_linear_context():
    g = Generator(GenConfig(seed=3))
    U, G = {"u": I}, {"x": I, "y": I}
    made = 0
    for _ in range(50):
        try:
            t = g.term(U, G, I)
        except GiveUp:
            continue
        made += 1
        assert check(U, G, t, I)
    assert made > 10


def test_constructor_coverage():
    every = {"Var", "Sum", "Smul", "Star", "ElimOne", "Lam", "App", "Tens", "ElimTens",
             "TopIntro", "ElimZero", "Pair", "ElimWith1", "ElimWith2", "Inl", "Inr",
             "ElimPlus", "BangIntro", "ElimBang"}
    seen = set()
    for t, _ in term_stream(GenConfig(seed=11), 10_000):
        seen |= {type(s).__name__ for _, s in subterms(t)}
        if every <= seen:
            break
    assert every <= seen


def test_vector_types_have_bounded_dimension():
    from oclam.encode import dim
    for s in range(40):
        assert 1 <= dim(gen_vector_type(GenConfig(seed=s), 6)) <= 6


def test_shrink_candidates_are_smaller():
    t, _ = gen_closed(GenConfig(seed=4), I)
    for c in shrink(t):
        assert c.size <= t.size
    assert shrink(T.Star(3)) == [T.Star(0), T.Star(1)]
