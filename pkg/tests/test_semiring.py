import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oclam.errors import ParseError, SemiringMismatch
from oclam.semiring import AT, CRAT, NAT, QI, RAT, SEMIRINGS, TRIVIAL, get_semiring, sr_add, sr_mul

fracs = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
ELEMENTS = {
    "nat": st.integers(min_value=0, max_value=10**6),
    "rat": fracs,
    "crat": st.builds(QI, fracs, fracs),
    "trivial": st.just(AT),
}


@pytest.mark.parametrize("name", sorted(SEMIRINGS))
def test_laws(name):
    S = get_semiring(name)

    @given(ELEMENTS[name], ELEMENTS[name], ELEMENTS[name])
    def laws(a, b, c):
        assert S.add(a, b) == S.add(b, a)
        assert S.mul(a, b) == S.mul(b, a)
        assert S.add(S.add(a, b), c) == S.add(a, S.add(b, c))
        assert S.mul(S.mul(a, b), c) == S.mul(a, S.mul(b, c))
        assert S.mul(a, S.add(b, c)) == S.add(S.mul(a, b), S.mul(a, c))
        assert S.add(a, S.zero) == a
        assert S.mul(a, S.one) == a
        assert S.mul(a, S.zero) == S.zero
        assert S.parse(S.format(a)) == a

    laws()


@pytest.mark.parametrize("name", sorted(SEMIRINGS))
def test_laws_on_sampled_triples(name):
    S = get_semiring(name)
    rng = random.Random(name)
    for _ in range(1000):
        a, b, c = (S.sample(rng) for _ in range(3))
        assert S.contains(a)
        assert S.mul(a, S.add(b, c)) == S.add(S.mul(a, b), S.mul(a, c))
        assert S.add(S.add(a, b), c) == S.add(a, S.add(b, c))


def test_add_examples():
    assert sr_add(NAT, 2, 3) == 5
    assert sr_add(RAT, Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert sr_add(TRIVIAL, AT, AT) is AT


def test_mul_examples():
    assert sr_mul(CRAT, QI(0, 1), QI(0, 1)) == QI(-1, 0)
    assert sr_mul(NAT, 4, 0) == 0
    assert sr_mul(RAT, Fraction(2, 3), Fraction(3, 2)) == 1


def test_parse_examples():
    assert NAT.parse("12") == 12
    assert CRAT.parse("(1/2, -1)") == QI(Fraction(1, 2), -1)
    with pytest.raises(ParseError):
        NAT.parse("-3")
    with pytest.raises(ParseError):
        TRIVIAL.parse("1")


def test_wrong_semiring_element_rejected():
    with pytest.raises(SemiringMismatch):
        NAT.check(Fraction(1, 2))
