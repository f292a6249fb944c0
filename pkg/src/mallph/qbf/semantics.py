"""Satisfaction, closure under an assignment, and prefix classes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import AbstractSet, Iterable

from mallph.qbf.syntax import (
    FALSE,
    TRUE,
    And,
    Exists,
    Fal,
    Forall,
    NegVar,
    Or,
    Qbf,
    Tru,
    Var,
    free_vars,
    is_prenex,
    split_prefix,
)


class NotPrenexError(ValueError):
    pass


def evaluate(phi: Qbf, alpha: AbstractSet[str] = frozenset()) -> bool:
    """Whether the assignment ``alpha`` (the set of true variables) satisfies ``phi``."""
    # exact type tests rather than ``match``: this is the hot loop of the
    # exhaustive checks and class patterns cost several isinstance calls
    t = type(phi)
    if t is Or:
        return evaluate(phi.left, alpha) or evaluate(phi.right, alpha)
    if t is And:
        return evaluate(phi.left, alpha) and evaluate(phi.right, alpha)
    if t is Var:
        return phi.name in alpha
    if t is NegVar:
        return phi.name not in alpha
    if t is Fal:
        return False
    if t is Tru:
        return True
    if t is Exists or t is Forall:
        alpha = frozenset(alpha)
        low = evaluate(phi.body, alpha - {phi.var})
        if t is Exists:
            return low or evaluate(phi.body, alpha | {phi.var})
        return low and evaluate(phi.body, alpha | {phi.var})
    raise TypeError(f"not a QBF: {phi!r}")


def substitute(phi: Qbf, values: dict[str, bool]) -> Qbf:
    """Replace free occurrences of the given variables by truth constants."""
    match phi:
        case Var(x) if x in values:
            return TRUE if values[x] else FALSE
        case NegVar(x) if x in values:
            return FALSE if values[x] else TRUE
        case Or(l, r):
            return Or(substitute(l, values), substitute(r, values))
        case And(l, r):
            return And(substitute(l, values), substitute(r, values))
        case Exists(x, body) | Forall(x, body) if x in values:
            inner = {k: v for k, v in values.items() if k != x}
            return type(phi)(x, substitute(body, inner))
        case Exists(x, body) | Forall(x, body):
            return type(phi)(x, substitute(body, values))
    return phi


def _rewrite_step(phi: Qbf) -> Qbf | None:
    """One constant-elimination rewrite at the root, or None.

    F \\/ p -> p, T \\/ p -> T, F /\\ p -> F, T /\\ p -> p (and mirrored), plus
    Qx.c -> c for a constant c.
    """
    match phi:
        case Or(Fal(), p) | Or(p, Fal()):
            return p
        case Or(Tru(), _) | Or(_, Tru()):
            return TRUE
        case And(Fal(), _) | And(_, Fal()):
            return FALSE
        case And(Tru(), p) | And(p, Tru()):
            return p
        case Exists(_, Fal() | Tru()) | Forall(_, Fal() | Tru()):
            return phi.body
    return None


def _innermost(phi: Qbf) -> Qbf:
    match phi:
        case Or(l, r) | And(l, r):
            phi = type(phi)(_innermost(l), _innermost(r))
        case Exists(x, body) | Forall(x, body):
            phi = type(phi)(x, _innermost(body))
    out = _rewrite_step(phi)
    return phi if out is None else out


def _outermost(phi: Qbf) -> Qbf:
    # Repeatedly rewrite the first redex found top-down until none remain.
    def step(p: Qbf) -> Qbf | None:
        out = _rewrite_step(p)
        if out is not None:
            return out
        match p:
            case Or(l, r) | And(l, r):
                new = step(l)
                if new is not None:
                    return type(p)(new, r)
                new = step(r)
                if new is not None:
                    return type(p)(l, new)
            case Exists(x, body) | Forall(x, body):
                new = step(body)
                if new is not None:
                    return type(p)(x, new)
        return None

    while True:
        nxt = step(phi)
        if nxt is None:
            return phi
        phi = nxt


def simplify(phi: Qbf, strategy: str = "innermost") -> Qbf:
    """Eliminate truth constants by rewriting to a fixpoint."""
    if strategy == "innermost":
        return _innermost(phi)
    if strategy == "outermost":
        return _outermost(phi)
    raise ValueError(f"unknown strategy {strategy!r}")


def instantiate_simplify(
    phi: Qbf, alpha: AbstractSet[str] = frozenset(), strategy: str = "innermost"
) -> Qbf:
    """Close ``phi`` under ``alpha`` and remove every truth constant.

    Free variables become ``T`` or ``F`` according to ``alpha``; the result is
    either a constant-free closed formula or exactly ``F``/``T``, and it is
    true iff ``alpha`` satisfies ``phi``.
    """
    if not is_prenex(phi):
        raise NotPrenexError(f"formula is not prenex: {phi}")
    values = {x: (x in alpha) for x in free_vars(phi)}
    return simplify(substitute(phi, values), strategy)


class Side(enum.Enum):
    SIGMA = "Sigma"
    PI = "Pi"


@dataclass(frozen=True)
class PrefixClass:
    side: Side
    level: int
    strict: bool

    def __str__(self) -> str:
        return f"{self.side.value}^q {self.level}"


def quantifier_blocks(phi: Qbf) -> list[tuple[type, list[str]]]:
    """Maximal runs of like quantifiers in the prefix, outermost first."""
    if not is_prenex(phi):
        raise NotPrenexError(f"formula is not prenex: {phi}")
    prefix, _ = split_prefix(phi)
    blocks: list[tuple[type, list[str]]] = []
    for quant, var in prefix:
        if blocks and blocks[-1][0] is quant:
            blocks[-1][1].append(var)
        else:
            blocks.append((quant, [var]))
    return blocks


def prefix_class(phi: Qbf) -> PrefixClass:
    """Least class of the prenex hierarchy containing ``phi``.

    ``k`` alternating blocks headed by ``exists`` give Sigma level ``k``;
    headed by ``forall`` give Pi level ``k``.  Such a formula is reported
    strict (outside the dual class at the same level) whenever ``k >= 1``.
    Quantifier-free formulas sit at level 0 on both sides.
    """
    blocks = quantifier_blocks(phi)
    if not blocks:
        return PrefixClass(Side.SIGMA, 0, strict=False)
    side = Side.SIGMA if blocks[0][0] is Exists else Side.PI
    return PrefixClass(side, len(blocks), strict=True)


def in_class(phi: Qbf, side: Side, level: int) -> bool:
    """Membership of a prenex formula in Sigma^q_level or Pi^q_level."""
    blocks = quantifier_blocks(phi)
    k = len(blocks)
    if k == 0:
        return level >= 0
    head = Side.SIGMA if blocks[0][0] is Exists else Side.PI
    return k < level or (k == level and head is side)


def assignments(variables: Iterable[str]):
    """All subsets of ``variables`` as frozensets, in binary counting order."""
    variables = list(variables)
    for mask in range(1 << len(variables)):
        yield frozenset(v for i, v in enumerate(variables) if mask >> i & 1)
