"""One-sided sequents, optionally split by a focus arrow.

Text form::

    => A, B            plain
    => A, B v> C, D    C, D under focus (down arrow)
    => A, B ^> C       C under co-focus (up arrow)
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable

from mallph.mall.syntax import Formula
from mallph.parsing import ParseError, parse_cedent


class Arrow(enum.Enum):
    DOWN = "v>"
    UP = "^>"


def text_sorted(formulas: Iterable[Formula]) -> tuple[Formula, ...]:
    return tuple(sorted(formulas, key=str))


@dataclass(frozen=True)
class Sequent:
    context: tuple[Formula, ...]
    arrow: Arrow | None = None
    foci: tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "context", text_sorted(self.context))
        object.__setattr__(self, "foci", text_sorted(self.foci))
        if self.arrow is None and self.foci:
            raise ValueError("a plain sequent has no foci")
        if self.arrow is not None and not self.foci:
            raise ValueError("a focused sequent needs at least one focus")

    @classmethod
    def plain(cls, *formulas: Formula) -> "Sequent":
        return cls(tuple(formulas))

    @property
    def is_plain(self) -> bool:
        return self.arrow is None

    def formulas(self) -> tuple[Formula, ...]:
        """Context and foci together."""
        return self.context + self.foci

    def __str__(self) -> str:
        out = "=>"
        if self.context:
            out += " " + ", ".join(map(str, self.context))
        if self.arrow is not None:
            out += f" {self.arrow.value} " + ", ".join(map(str, self.foci))
        return out


_ARROW = re.compile(r"(?:^|\s)(v>|\^>)(?:\s|$)")


def parse_sequent(text: str) -> Sequent:
    """Parse ``=> ctx``, ``=> ctx v> foci`` or ``=> ctx ^> foci``.

    The leading ``=>`` is optional.
    """
    body = text.strip()
    offset = len(text) - len(text.lstrip())
    if body.startswith("=>"):
        body = body[2:]
        offset += 2
    found = list(_ARROW.finditer(body))
    if len(found) > 1:
        raise ParseError("more than one focus arrow", text, offset + found[1].start(1))
    if not found:
        return Sequent(tuple(_cedent(body, text, offset)))
    m = found[0]
    ctx = _cedent(body[: m.start(1)], text, offset)
    foci = _cedent(body[m.end(1):], text, offset + m.end(1))
    if not foci:
        raise ParseError("expected at least one formula after the arrow", text, offset + m.end(1))
    return Sequent(tuple(ctx), Arrow(m.group(1)), tuple(foci))


def _cedent(part: str, whole: str, offset: int) -> list[Formula]:
    try:
        return parse_cedent(part)
    except ParseError as exc:
        raise ParseError(exc.message, whole, offset + exc.pos) from None
