"""Canonical multisets of interned formulas, as tuples sorted by uid.

Interned formulas compare by identity, so equal formulas sit next to each
other in a canonical tuple and the tuple itself is a cheap memo key.
"""

from __future__ import annotations

import itertools
import operator
from collections import Counter
from typing import Iterable, Iterator

from mallph.mall.syntax import Bot, Formula, Par

Cedent = tuple[Formula, ...]

_uid = operator.attrgetter("uid")


class BudgetExceeded(RuntimeError):
    """The search visited more states than its node budget allows."""


def canon(formulas: Iterable[Formula]) -> Cedent:
    return tuple(sorted(formulas, key=_uid))


def without(ctx: Cedent, i: int) -> Cedent:
    return ctx[:i] + ctx[i + 1:]


def distinct_positions(ctx: Cedent, pred=None) -> Iterator[int]:
    """First position of each distinct formula (optionally filtered)."""
    prev = None
    for i, f in enumerate(ctx):
        if f is not prev and (pred is None or pred(f)):
            yield i
        prev = f


def runs(ctx: Cedent) -> list[tuple[Formula, int]]:
    out: list[tuple[Formula, int]] = []
    for f in ctx:
        if out and out[-1][0] is f:
            out[-1] = (f, out[-1][1] + 1)
        else:
            out.append((f, 1))
    return out


def splits(ctx: Cedent) -> Iterator[tuple[Cedent, Cedent]]:
    """Every way of dividing a multiset in two, up to identical copies."""
    groups = runs(ctx)
    for counts in itertools.product(*(range(n + 1) for _, n in groups)):
        left: list[Formula] = []
        right: list[Formula] = []
        for (f, n), k in zip(groups, counts):
            left.extend([f] * k)
            right.extend([f] * (n - k))
        yield tuple(left), tuple(right)


def submultisets(ctx: Cedent, nonempty: bool = True) -> Iterator[tuple[Cedent, Cedent]]:
    """Pairs ``(chosen, rest)``, the chosen part ranging over sub-multisets."""
    for chosen, rest in splits(ctx):
        if chosen or not nonempty:
            yield chosen, rest


def saturate(ctx: Iterable[Formula]) -> Cedent:
    """Apply the par and bot rules bottom-up until neither applies."""
    ctx = tuple(ctx)
    if not any(isinstance(f, (Par, Bot)) for f in ctx):
        return canon(ctx)
    out: list[Formula] = []
    stack = list(ctx)
    while stack:
        f = stack.pop()
        if isinstance(f, Par):
            stack.append(f.left)
            stack.append(f.right)
        elif not isinstance(f, Bot):
            out.append(f)
    return canon(out)


def same_multiset(a: Iterable[Formula], b: Iterable[Formula]) -> bool:
    return Counter(a) == Counter(b)

