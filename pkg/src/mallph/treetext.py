"""Reading the indented one-node-per-line tree format shared by all proofs."""

from __future__ import annotations

from typing import Callable, TypeVar

T = TypeVar("T")


def parse_indented(text: str, build: Callable[[int, str, list[T]], T], indent: int = 2) -> T:
    """Parse lines indented by ``indent`` spaces per level into a single tree.

    ``build(depth, line, children)`` constructs a node from its stripped text
    and already-built children.  Blank lines and ``#`` comments are skipped.
    """
    rows: list[tuple[int, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        spaces = len(raw) - len(raw.lstrip(" "))
        if spaces % indent:
            raise ValueError(f"line {lineno}: indentation is not a multiple of {indent}")
        rows.append((spaces // indent, raw.strip(), lineno))
    if not rows:
        raise ValueError("empty proof text")
    if rows[0][0] != 0:
        raise ValueError(f"line {rows[0][2]}: root must not be indented")

    pos = 0

    def node(depth: int) -> T:
        nonlocal pos
        _, head, _ = rows[pos]
        pos += 1
        children = []
        while pos < len(rows) and rows[pos][0] > depth:
            if rows[pos][0] != depth + 1:
                raise ValueError(f"line {rows[pos][2]}: indentation jumps more than one level")
            children.append(node(depth + 1))
        return build(depth, head, children)

    root = node(0)
    if pos != len(rows):
        raise ValueError(f"line {rows[pos][2]}: more than one root")
    return root
