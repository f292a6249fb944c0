"""Proof trees for the unfocused and focused calculi, and their text format."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

from mallph.mall.syntax import Regime
from mallph.sequent import Sequent, parse_sequent
from mallph.treetext import parse_indented


class SystemId(enum.Enum):
    MALL = "MALL"
    AMALL = "aMALL"
    FOCMALL = "focMALL"
    FOCMALLW = "focMALLw"
    FOCMALLPRIME = "focMALLprime"

    @property
    def focused(self) -> bool:
        return self in (SystemId.FOCMALL, SystemId.FOCMALLW, SystemId.FOCMALLPRIME)

    @property
    def affine(self) -> bool:
        """Initial rules absorb an arbitrary context (wkid, w1)."""
        return self in (SystemId.AMALL, SystemId.FOCMALLW)

    @property
    def regime(self) -> Regime:
        return Regime.PRIMED if self is SystemId.FOCMALLPRIME else Regime.STANDARD

    @property
    def unfocused(self) -> "SystemId":
        """The unfocused calculus this system is complete for."""
        return SystemId.AMALL if self.affine else SystemId.MALL

    @property
    def focused_version(self) -> "SystemId":
        return {SystemId.MALL: SystemId.FOCMALL, SystemId.AMALL: SystemId.FOCMALLW}.get(self, self)


class Discipline(enum.Enum):
    MULTI = "multi"
    FOCUSSED = "foc"
    COFOCUSSED = "cofoc"
    BIFOCUSSED = "bifoc"

    @property
    def single_focus(self) -> bool:
        return self in (Discipline.FOCUSSED, Discipline.BIFOCUSSED)

    @property
    def single_cofocus(self) -> bool:
        return self in (Discipline.COFOCUSSED, Discipline.BIFOCUSSED)


# Rule labels.  "plus0"/"plus1" keep the left/right disjunct.
INITIAL_RULES = frozenset({"id", "wkid", "one", "w1", "top", "cid", "c1"})


@dataclass(frozen=True)
class ProofTree:
    system: SystemId
    rule: str
    conclusion: Sequent
    premisses: tuple["ProofTree", ...] = field(default=())

    def nodes(self) -> Iterator["ProofTree"]:
        yield self
        for p in self.premisses:
            yield from p.nodes()

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premisses), default=0)

    def rules_used(self) -> set[str]:
        return {n.rule for n in self.nodes()}

    def serialize(self) -> str:
        lines = [f"# system: {self.system.value}"]
        self._lines(0, lines)
        return "\n".join(lines) + "\n"

    def _lines(self, depth: int, out: list[str]) -> None:
        out.append(f"{'  ' * depth}{self.rule} | {self.conclusion}")
        for p in self.premisses:
            p._lines(depth + 1, out)


def parse_proof(text: str, system: SystemId | None = None) -> ProofTree:
    """Inverse of ``ProofTree.serialize``; ``system`` overrides the header."""
    header = None
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("# system:"):
            header = stripped.split(":", 1)[1].strip()
            break
    if system is None:
        if header is None:
            raise ValueError("proof text has no '# system:' header")
        try:
            system = SystemId(header)
        except ValueError:
            raise ValueError(f"unknown system {header!r}") from None

    def build(depth, head, children):
        rule, sep, seq = head.partition(" | ")
        if not sep:
            raise ValueError(f"expected 'rule | sequent', got {head!r}")
        return ProofTree(system, rule.strip(), parse_sequent(seq), tuple(children))

    return parse_indented(text, build)
