"""Commutative semirings of scalars with exact arithmetic.

Scalars are plain Python values so that ``+`` and ``*`` work on them
directly: ``int`` for the naturals, :class:`fractions.Fraction` for the
rationals, :class:`QI` for Gaussian rationals and the :data:`AT` singleton
for the trivial semiring.  A :class:`Semiring` descriptor adds membership
checks, constants and the literal codec on top.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .errors import ParseError, SemiringMismatch

__all__ = [
    "AT", "QI", "Semiring", "TRIVIAL", "NAT", "RAT", "CRAT", "SEMIRINGS",
    "get_semiring", "sr_add", "sr_mul", "parse_scalar", "format_scalar",
]


class _At:
    """The only element of the trivial semiring, written ``@``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        return self

    __radd__ = __mul__ = __rmul__ = __add__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return 0x40

    def __repr__(self):
        return "@"

    def __reduce__(self):
        return (_At, ())


AT = _At()


@dataclass(frozen=True)
class QI:
    """Gaussian rational ``re + im*i`` with exact components."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def _coerce(self, other) -> QI | None:
        if isinstance(other, QI):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QI(Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"QI({self.re}, {self.im})"


_RAT = re.compile(r"\s*(-?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")
_CPAIR = re.compile(r"\s*\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)\s*$")


def _parse_rational(text: str, *, signed: bool = True) -> Fraction:
    m = _RAT.match(text)
    if not m:
        raise ParseError(f"ill-formed scalar literal {text!r}", expected={"scalar"})
    sign, num, den = m.groups()
    if sign and not signed:
        raise ParseError(f"negative literal {text!r} is not a natural number",
                         expected={"natural"})
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}", expected={"scalar"})
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign else value


def _fmt_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, eq=False)
class Semiring:
    """Descriptor for one of the supported scalar semirings."""

    name: str
    zero: Any
    one: Any
    contains: Callable[[Any], bool]
    _parse: Callable[[str], Any]
    _format: Callable[[Any], str]
    _sample: Callable[[random.Random, tuple], Any]
    default_pool: tuple

    def add(self, a, b):
        self.check(a)
        self.check(b)
        return a + b

    def mul(self, a, b):
        self.check(a)
        self.check(b)
        return a * b

    def check(self, a) -> None:
        if not self.contains(a):
            raise SemiringMismatch(f"{a!r} is not an element of the {self.name} semiring")

    def parse(self, text: str):
        return self._parse(text)

    def format(self, a) -> str:
        self.check(a)
        return self._format(a)

    def sample(self, rng: random.Random, pool: tuple | None = None):
        return self._sample(rng, pool if pool is not None else self.default_pool)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def __repr__(self):
        return f"Semiring({self.name})"


def _parse_trivial(text: str):
    if text.strip() != "@":
        raise ParseError(f"the trivial semiring only has '@', got {text!r}", expected={"@"})
    return AT


def _parse_nat(text: str) -> int:
    q = _parse_rational(text, signed=False)
    if q.denominator != 1:
        raise ParseError(f"{text!r} is not a natural number", expected={"natural"})
    return q.numerator


def _parse_rat(text: str) -> Fraction:
    return _parse_rational(text)


def _parse_crat(text: str) -> QI:
    m = _CPAIR.match(text)
    if m:
        return QI(_parse_rational(m.group(1)), _parse_rational(m.group(2)))
    return QI(_parse_rational(text))


def _fmt_crat(a: QI) -> str:
    if a.im == 0:
        return _fmt_rational(a.re)
    return f"({_fmt_rational(a.re)}, {_fmt_rational(a.im)})"


def _is_nat(a) -> bool:
    return type(a) is int and a >= 0


def _is_rat(a) -> bool:
    return type(a) is Fraction


def _sample_crat(rng, pool):
    x = rng.choice(pool)
    return x if isinstance(x, QI) else QI(x)


TRIVIAL = Semiring("trivial", AT, AT, lambda a: a is AT, _parse_trivial,
                   lambda a: "@", lambda rng, pool: AT, (AT,))
NAT = Semiring("nat", 0, 1, _is_nat, _parse_nat, str,
               lambda rng, pool: rng.choice(pool), (0, 1, 2, 3))
RAT = Semiring("rat", Fraction(0), Fraction(1), _is_rat, _parse_rat, _fmt_rational,
               lambda rng, pool: Fraction(rng.choice(pool)),
               (Fraction(0), Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2),
                Fraction(-3, 4)))
CRAT = Semiring("crat", QI(0), QI(1), lambda a: type(a) is QI, _parse_crat, _fmt_crat,
                _sample_crat,
                (QI(0), QI(1), QI(-1), QI(2), QI(0, 1), QI(Fraction(1, 2), -1)))

SEMIRINGS = {s.name: s for s in (TRIVIAL, NAT, RAT, CRAT)}


def get_semiring(name: str) -> Semiring:
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise ValueError(f"unknown semiring {name!r}; choose from {sorted(SEMIRINGS)}") from None


def sr_add(S: Semiring, a, b):
    return S.add(a, b)


def sr_mul(S: Semiring, a, b):
    return S.mul(a, b)


def parse_scalar(S: Semiring, text: str):
    return S.parse(text)


def format_scalar(S: Semiring, a) -> str:
    return S.format(a)
