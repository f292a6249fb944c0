"""Quantified Boolean formulas in De Morgan normal form."""

from __future__ import annotations

from typing import Iterator

from mallph.interning import Node, check_name


class Qbf(Node):
    __slots__ = ()

    @property
    def is_quantifier(self) -> bool:
        return isinstance(self, (Exists, Forall))

    def __invert__(self) -> "Qbf":
        return qbf_dual(self)


class Fal(Qbf):
    __slots__ = ()

    def _render(self) -> str:
        return "F"


class Tru(Qbf):
    __slots__ = ()

    def _render(self) -> str:
        return "T"


class Var(Qbf):
    __slots__ = ("name",)
    fields = ("name",)
    __match_args__ = ("name",)
    name: str

    @classmethod
    def _validate(cls, name):
        check_name(name)

    def _render(self) -> str:
        return self.name


class NegVar(Qbf):
    __slots__ = ("name",)
    fields = ("name",)
    __match_args__ = ("name",)
    name: str

    @classmethod
    def _validate(cls, name):
        check_name(name)

    def _render(self) -> str:
        return "~" + self.name


class _Binary(Qbf):
    __slots__ = ("left", "right")
    fields = ("left", "right")
    __match_args__ = ("left", "right")
    symbol = "?"
    left: Qbf
    right: Qbf

    @classmethod
    def _validate(cls, left, right):
        if not isinstance(left, Qbf) or not isinstance(right, Qbf):
            raise TypeError(f"{cls.__name__} children must be QBFs")

    def _render(self) -> str:
        return f"({_operand(self.left)} {self.symbol} {_operand(self.right)})"


def _operand(phi: Qbf) -> str:
    # a quantifier scopes as far right as possible, so it needs its own parentheses
    return f"({phi})" if isinstance(phi, _Quant) else str(phi)


class Or(_Binary):
    __slots__ = ()
    symbol = "\\/"


class And(_Binary):
    __slots__ = ()
    symbol = "/\\"


class _Quant(Qbf):
    __slots__ = ("var", "body")
    fields = ("var", "body")
    __match_args__ = ("var", "body")
    keyword = "?"
    var: str
    body: Qbf

    @classmethod
    def _validate(cls, var, body):
        check_name(var)
        if not isinstance(body, Qbf):
            raise TypeError(f"{cls.__name__} body must be a QBF")

    def _render(self) -> str:
        return f"{self.keyword} {self.var}. {self.body}"


class Exists(_Quant):
    __slots__ = ()
    keyword = "exists"


class Forall(_Quant):
    __slots__ = ()
    keyword = "forall"


FALSE = Fal()
TRUE = Tru()


def qbf_dual(phi: Qbf) -> Qbf:
    """De Morgan dual: swap constants, literals, connectives and quantifiers."""
    match phi:
        case Fal():
            return TRUE
        case Tru():
            return FALSE
        case Var(name):
            return NegVar(name)
        case NegVar(name):
            return Var(name)
        case Or(l, r):
            return And(qbf_dual(l), qbf_dual(r))
        case And(l, r):
            return Or(qbf_dual(l), qbf_dual(r))
        case Exists(x, body):
            return Forall(x, qbf_dual(body))
        case Forall(x, body):
            return Exists(x, qbf_dual(body))
    raise TypeError(f"not a QBF: {phi!r}")


def literal_count(phi: Qbf) -> int:
    """Number of literal occurrences (``x`` or ``~x``)."""
    match phi:
        case Var() | NegVar():
            return 1
        case Or(l, r) | And(l, r):
            return literal_count(l) + literal_count(r)
        case Exists(_, body) | Forall(_, body):
            return literal_count(body)
    return 0


def connective_count(phi: Qbf) -> int:
    match phi:
        case Or(l, r) | And(l, r):
            return 1 + connective_count(l) + connective_count(r)
        case Exists(_, body) | Forall(_, body):
            return connective_count(body)
    return 0


def free_vars(phi: Qbf) -> frozenset[str]:
    match phi:
        case Var(x) | NegVar(x):
            return frozenset((x,))
        case Or(l, r) | And(l, r):
            return free_vars(l) | free_vars(r)
        case Exists(x, body) | Forall(x, body):
            return free_vars(body) - {x}
    return frozenset()


def is_quantifier_free(phi: Qbf) -> bool:
    match phi:
        case Exists() | Forall():
            return False
        case Or(l, r) | And(l, r):
            return is_quantifier_free(l) and is_quantifier_free(r)
    return True


def has_constants(phi: Qbf) -> bool:
    match phi:
        case Fal() | Tru():
            return True
        case Or(l, r) | And(l, r):
            return has_constants(l) or has_constants(r)
        case Exists(_, body) | Forall(_, body):
            return has_constants(body)
    return False


def split_prefix(phi: Qbf) -> tuple[list[tuple[type, str]], Qbf]:
    """Split a formula into its leading quantifier prefix and the remainder.

    The prefix is listed outermost first as ``(Exists|Forall, var)`` pairs.
    """
    prefix = []
    while isinstance(phi, (Exists, Forall)):
        prefix.append((type(phi), phi.var))
        phi = phi.body
    return prefix, phi


def is_prenex(phi: Qbf) -> bool:
    _, matrix = split_prefix(phi)
    return is_quantifier_free(matrix)


def with_prefix(prefix, matrix: Qbf) -> Qbf:
    for quant, var in reversed(prefix):
        matrix = quant(var, matrix)
    return matrix


def subformulas(phi: Qbf) -> Iterator[Qbf]:
    yield phi
    match phi:
        case Or(l, r) | And(l, r):
            yield from subformulas(l)
            yield from subformulas(r)
        case Exists(_, body) | Forall(_, body):
            yield from subformulas(body)
