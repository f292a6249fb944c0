"""MALL formulas, De Morgan duality and polarity classes.

Negation is restricted to variables.  The polarity classes follow the
metavariable table used by the focussed calculi:

==========  =====================================  ==================
class       meaning                                main connectives
==========  =====================================  ==================
``M``       negative and not deterministic         ``&``
``N``       negative                               ``&``, ``#``
``O``       deterministic                          ``*``, ``#``, atoms
``P``       positive                               ``*``, ``+``
``Q``       positive and not deterministic         ``+``
==========  =====================================  ==================

Units are kept in a class of their own; the provers treat them like atoms
wherever a phase change (decide, release, ...) inspects a cedent.
"""

from __future__ import annotations

import enum
import functools
from typing import Iterable, Iterator

from mallph.interning import Node, check_name


class Formula(Node):
    __slots__ = ("size",)
    size: int  # number of binary connectives

    def _setup(self) -> None:
        object.__setattr__(self, "size", 0)

    def __invert__(self) -> "Formula":
        return mall_dual(self)


class _Unit(Formula):
    __slots__ = ()
    symbol = "?"

    def _render(self) -> str:
        return self.symbol


class Bot(_Unit):
    __slots__ = ()
    symbol = "bot"


class One(_Unit):
    __slots__ = ()
    symbol = "1"


class Zero(_Unit):
    __slots__ = ()
    symbol = "0"


class Top(_Unit):
    __slots__ = ()
    symbol = "top"


class _Literal(Formula):
    __slots__ = ("name",)
    fields = ("name",)
    __match_args__ = ("name",)
    name: str

    @classmethod
    def _validate(cls, name):
        check_name(name)


class Var(_Literal):
    __slots__ = ()

    def _render(self) -> str:
        return self.name


class NegVar(_Literal):
    __slots__ = ()

    def _render(self) -> str:
        return "~" + self.name


class _Binary(Formula):
    __slots__ = ("left", "right")
    fields = ("left", "right")
    __match_args__ = ("left", "right")
    symbol = "?"
    left: Formula
    right: Formula

    @classmethod
    def _validate(cls, left, right):
        if not isinstance(left, Formula) or not isinstance(right, Formula):
            raise TypeError(f"{cls.__name__} children must be MALL formulas")

    def _setup(self) -> None:
        object.__setattr__(self, "size", 1 + self.left.size + self.right.size)

    def _render(self) -> str:
        return f"({self.left} {self.symbol} {self.right})"


class Par(_Binary):
    __slots__ = ()
    symbol = "#"


class Tensor(_Binary):
    __slots__ = ()
    symbol = "*"


class Plus(_Binary):
    __slots__ = ()
    symbol = "+"


class With(_Binary):
    __slots__ = ()
    symbol = "&"


BOT = Bot()
ONE = One()
ZERO = Zero()
TOP = Top()

Literal = (Var, NegVar)
Unit = (Bot, One, Zero, Top)


def mall_dual(a: Formula) -> Formula:
    match a:
        case Bot():
            return ONE
        case One():
            return BOT
        case Zero():
            return TOP
        case Top():
            return ZERO
        case Var(x):
            return NegVar(x)
        case NegVar(x):
            return Var(x)
        case Par(l, r):
            return Tensor(mall_dual(l), mall_dual(r))
        case Tensor(l, r):
            return Par(mall_dual(l), mall_dual(r))
        case Plus(l, r):
            return With(mall_dual(l), mall_dual(r))
        case With(l, r):
            return Plus(mall_dual(l), mall_dual(r))
    raise TypeError(f"not a MALL formula: {a!r}")


def limp(a: Formula, b: Formula) -> Formula:
    """Linear implication ``a -o b``, i.e. ``~a # b``."""
    return Par(mall_dual(a), b)


def plimp(a: Formula, b: Formula) -> Formula:
    """Positive implication ``a ->+ b``, i.e. ``~a + b``."""
    return Plus(mall_dual(a), b)


def big_par(items: Iterable[Formula]) -> Formula:
    """Right-nested par of a nonempty sequence."""
    items = list(items)
    if not items:
        raise ValueError("big_par needs at least one formula")
    out = items[-1]
    for f in reversed(items[:-1]):
        out = Par(f, out)
    return out


def is_literal(a: Formula) -> bool:
    return isinstance(a, Literal)


@functools.cache
def is_c_formula(a: Formula) -> bool:
    """``+``-clauses built around at least one ``bot``.

    c ::= bot | c + x | x + c | ~x + c | c + ~x | c + c
    """
    match a:
        case Bot():
            return True
        case Plus(l, r):
            lc, rc = is_c_formula(l), is_c_formula(r)
            return (lc and (rc or is_literal(r))) or (rc and is_literal(l))
    return False


def literals_of(a: Formula) -> Iterator[Formula]:
    match a:
        case Var() | NegVar():
            yield a
        case _Binary(l, r):
            yield from literals_of(l)
            yield from literals_of(r)


def variables_of(a: Formula) -> set[str]:
    return {lit.name for lit in literals_of(a)}


def subformulas(a: Formula) -> Iterator[Formula]:
    yield a
    if isinstance(a, _Binary):
        yield from subformulas(a.left)
        yield from subformulas(a.right)


class Regime(enum.Enum):
    STANDARD = "standard"
    PRIMED = "primed"


class PolarityClass(enum.Enum):
    ATOM = "Atom"
    M = "M"
    N = "N"
    O = "O"  # noqa: E741
    P = "P"
    Q = "Q"
    CFORMULA = "CFormula"
    UNIT = "Unit"


_CLASS_BY_TYPE = {
    With: PolarityClass.M,
    Par: PolarityClass.N,
    Tensor: PolarityClass.P,
    Plus: PolarityClass.Q,
    Var: PolarityClass.ATOM,
    NegVar: PolarityClass.ATOM,
    Bot: PolarityClass.UNIT,
    One: PolarityClass.UNIT,
    Zero: PolarityClass.UNIT,
    Top: PolarityClass.UNIT,
}


def classify(a: Formula, regime: Regime = Regime.STANDARD) -> PolarityClass:
    """Most specific polarity class of ``a``.

    ``&`` is M (hence also N), ``#`` is N, ``*`` is P, ``+`` is Q (hence P).
    Under the primed regime a c-formula other than bare ``bot`` is
    ``CFORMULA`` and belongs to neither P nor Q.
    """
    if regime is Regime.PRIMED and isinstance(a, Plus) and is_c_formula(a):
        return PolarityClass.CFORMULA
    return _CLASS_BY_TYPE[type(a)]


def metaclasses(a: Formula, regime: Regime = Regime.STANDARD) -> frozenset[PolarityClass]:
    """Every metavariable class that ``a`` inhabits."""
    C = PolarityClass
    match classify(a, regime):
        case C.M:
            return frozenset({C.M, C.N})
        case C.N:
            return frozenset({C.N, C.O})
        case C.P:
            return frozenset({C.P, C.O})
        case C.Q:
            return frozenset({C.Q, C.P})
        case C.ATOM:
            return frozenset({C.ATOM, C.O})
        case C.CFORMULA:
            return frozenset({C.CFORMULA, C.O})
        case label:
            return frozenset({label})


def is_negative(a: Formula) -> bool:
    return isinstance(a, (Par, With))


def is_positive(a: Formula, regime: Regime = Regime.STANDARD) -> bool:
    """P-formula: a tensor, or a plus that is not a c-formula when primed."""
    if isinstance(a, Tensor):
        return True
    if isinstance(a, Plus):
        return not (regime is Regime.PRIMED and is_c_formula(a))
    return False


def is_atomlike(a: Formula, regime: Regime = Regime.STANDARD) -> bool:
    """Atoms, units, and (primed regime) c-formulas."""
    if isinstance(a, (Var, NegVar, Bot, One, Zero, Top)):
        return True
    return regime is Regime.PRIMED and isinstance(a, Plus) and is_c_formula(a)
