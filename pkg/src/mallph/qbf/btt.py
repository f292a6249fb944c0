"""Boolean Truth Trees: a proof system over closed prenex QBFs.

Rules, read bottom-up::

    Taut     tau                   (tau a true quantifier-free sentence)
    ExistsF  exists x. p  <-  p[F/x]
    ExistsT  exists x. p  <-  p[T/x]
    Forall   forall x. p  <-  p[F/x]   p[T/x]
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from mallph.parsing import parse_qbf
from mallph.qbf.semantics import NotPrenexError, evaluate, substitute
from mallph.qbf.syntax import Exists, Forall, Qbf, free_vars, is_prenex, is_quantifier_free
from mallph.treetext import parse_indented


class BttRule(enum.Enum):
    TAUT = "Taut"
    EXISTS_F = "ExistsF"
    EXISTS_T = "ExistsT"
    FORALL = "Forall"


@dataclass(frozen=True)
class BttProof:
    rule: BttRule
    conclusion: Qbf
    children: tuple["BttProof", ...] = field(default=())

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def serialize(self) -> str:
        lines: list[str] = []
        self._lines(0, lines)
        return "\n".join(lines) + "\n"

    def _lines(self, depth: int, out: list[str]) -> None:
        out.append(f"{'  ' * depth}{self.rule.value} | {self.conclusion}")
        for child in self.children:
            child._lines(depth + 1, out)


class OpenFormulaError(ValueError):
    pass


def _check_input(phi: Qbf) -> None:
    if not is_prenex(phi):
        raise NotPrenexError(f"formula is not prenex: {phi}")
    if free_vars(phi):
        raise OpenFormulaError(f"formula has free variables {sorted(free_vars(phi))}: {phi}")


def btt_prove(phi: Qbf) -> BttProof | None:
    """A BTT proof of the closed prenex sentence ``phi``, or None if it is false.

    The existential rule tries the F-instantiation first.
    """
    _check_input(phi)
    return _search(phi)


def _search(phi: Qbf) -> BttProof | None:
    match phi:
        case Exists(x, body):
            for rule, value in ((BttRule.EXISTS_F, False), (BttRule.EXISTS_T, True)):
                sub = _search(substitute(body, {x: value}))
                if sub is not None:
                    return BttProof(rule, phi, (sub,))
            return None
        case Forall(x, body):
            low = _search(substitute(body, {x: False}))
            if low is None:
                return None
            high = _search(substitute(body, {x: True}))
            if high is None:
                return None
            return BttProof(BttRule.FORALL, phi, (low, high))
    if evaluate(phi):
        return BttProof(BttRule.TAUT, phi)
    return None


def btt_check(p: BttProof) -> bool:
    """Whether every node of ``p`` is a correct rule instance."""
    phi = p.conclusion
    if not isinstance(phi, Qbf) or not is_prenex(phi) or free_vars(phi):
        return False
    match p.rule, phi:
        case BttRule.TAUT, _:
            return not p.children and is_quantifier_free(phi) and evaluate(phi)
        case (BttRule.EXISTS_F | BttRule.EXISTS_T), Exists(x, body):
            if len(p.children) != 1:
                return False
            expected = substitute(body, {x: p.rule is BttRule.EXISTS_T})
            return p.children[0].conclusion is expected and btt_check(p.children[0])
        case BttRule.FORALL, Forall(x, body):
            if len(p.children) != 2:
                return False
            low, high = p.children
            return (
                low.conclusion is substitute(body, {x: False})
                and high.conclusion is substitute(body, {x: True})
                and btt_check(low)
                and btt_check(high)
            )
    return False


def parse_btt(text: str) -> BttProof:
    """Inverse of ``BttProof.serialize``."""
    def build(depth, head, children):
        rule_text, _, formula_text = head.partition(" | ")
        try:
            rule = BttRule(rule_text.strip())
        except ValueError:
            raise ValueError(f"unknown BTT rule {rule_text.strip()!r}") from None
        return BttProof(rule, parse_qbf(formula_text), tuple(children))

    return parse_indented(text, build)
