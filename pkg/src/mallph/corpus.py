"""Deterministic formula families for exhaustive and sampled checks.

Every generator is either exhaustive (a fixed enumeration order) or driven
by a ``random.Random`` seeded by the caller, so a corpus is reproducible
from its parameters alone.
"""

from __future__ import annotations

import functools
import random
from typing import Iterable, Iterator, Sequence

from mallph.mall import syntax as m
from mallph.qbf import syntax as q

MALL_BINARY = (m.Par, m.Tensor, m.Plus, m.With)
MALL_LEAVES = (m.Var("x"), m.NegVar("x"), m.Var("y"), m.NegVar("y"), m.BOT, m.ONE, m.ZERO, m.TOP)


# -- generic tree enumeration


def trees_by_size(leaves: Sequence, ops: Sequence, max_internal: int, commutative: bool = False) -> list[list]:
    """All trees with ``k`` internal nodes, for each ``k <= max_internal``.

    With ``commutative`` each unordered pair of children appears once.
    """
    levels = [list(leaves)]
    for k in range(1, max_internal + 1):
        cur = []
        for a in range(k):
            b = k - 1 - a
            if commutative and a > b:
                continue
            for i, l in enumerate(levels[a]):
                rights = levels[b][i:] if commutative and a == b else levels[b]
                for r in rights:
                    for op in ops:
                        cur.append(op(l, r))
        levels.append(cur)
    return levels


def _flatten(levels: Iterable[list]) -> Iterator:
    for level in levels:
        yield from level


# -- QBF families


def qbf_literals(names: Sequence[str]) -> list[q.Qbf]:
    return [lit for x in names for lit in (q.Var(x), q.NegVar(x))]


def quantifier_free_qbfs(
    names: Sequence[str] = ("x", "y", "z"), max_connectives: int = 4, constants: bool = False
) -> Iterator[q.Qbf]:
    leaves = qbf_literals(names) + ([q.FALSE, q.TRUE] if constants else [])
    return _flatten(trees_by_size(leaves, (q.And, q.Or), max_connectives))


def prefixes(names: Sequence[str], max_quantifiers: int) -> list[tuple]:
    """Quantifier prefixes over distinct variables, outermost first."""
    out: list[tuple] = [()]
    frontier: list[tuple] = [()]
    for _ in range(max_quantifiers):
        nxt = []
        for p in frontier:
            used = {x for _, x in p}
            for x in names:
                if x in used:
                    continue
                for quant in (q.Exists, q.Forall):
                    nxt.append(p + ((quant, x),))
        out.extend(nxt)
        frontier = nxt
    return out


def closed_prenex_sentences(
    names: Sequence[str] = ("x", "y"), max_quantifiers: int = 2, max_connectives: int = 3
) -> Iterator[q.Qbf]:
    """Every closed prenex sentence whose matrix uses the literals over
    ``names`` and the constants."""
    matrices = list(quantifier_free_qbfs(names, max_connectives, constants=True))
    pres = prefixes(names, max_quantifiers)
    for matrix in matrices:
        fv = q.free_vars(matrix)
        for p in pres:
            if fv <= {x for _, x in p}:
                yield q.with_prefix(p, matrix)


# -- MALL families


@functools.cache
def _comm_normal(f: m.Formula) -> m.Formula:
    if f.size == 0:
        return f
    l, r = _comm_normal(f.left), _comm_normal(f.right)
    if str(l) > str(r):
        l, r = r, l
    return type(f)(l, r)


def rename_literals(f: m.Formula, table: dict) -> m.Formula:
    match f:
        case m.Var() | m.NegVar():
            return table.get(f, f)
        case m.Par(l, r) | m.Tensor(l, r) | m.Plus(l, r) | m.With(l, r):
            return type(f)(rename_literals(l, table), rename_literals(r, table))
    return f


def _literal_symmetries(names: Sequence[str] = ("x", "y")) -> list[dict]:
    """Swapping the two variables and flipping either polarity."""
    x, y = names
    out = []
    for swap in (False, True):
        for fx in (False, True):
            for fy in (False, True):
                def image(name, flip, target):
                    pos, neg = m.Var(target), m.NegVar(target)
                    return (neg, pos) if flip else (pos, neg)
                tx = y if swap else x
                ty = x if swap else y
                px, nx = image(x, fx, tx)
                py, ny = image(y, fy, ty)
                out.append({m.Var(x): px, m.NegVar(x): nx, m.Var(y): py, m.NegVar(y): ny})
    return out


SYMMETRIES = _literal_symmetries()


def symmetry_key(f: m.Formula) -> str:
    return min(str(_comm_normal(rename_literals(f, t))) for t in SYMMETRIES)


def mall_formulas_up_to_symmetry(max_connectives: int) -> Iterator[m.Formula]:
    """One formula per class under commutativity of every connective, the
    x/y swap and polarity flips, over ``MALL_LEAVES``."""
    levels = trees_by_size(MALL_LEAVES, MALL_BINARY, max_connectives, commutative=True)
    for f in _flatten(levels):
        if str(_comm_normal(f)) == symmetry_key(f):
            yield f


def random_tree(rng: random.Random, internal: int, leaves: Sequence, ops: Sequence):
    if internal == 0:
        return rng.choice(leaves)
    left = rng.randrange(internal)
    return rng.choice(ops)(
        random_tree(rng, left, leaves, ops), random_tree(rng, internal - 1 - left, leaves, ops)
    )


def random_mall_formula(rng: random.Random, connectives: int, leaves: Sequence = MALL_LEAVES) -> m.Formula:
    return random_tree(rng, connectives, leaves, MALL_BINARY)


def random_cedent(
    rng: random.Random,
    max_connectives: int,
    leaves: Sequence = MALL_LEAVES,
    max_formulas: int = 3,
) -> tuple[m.Formula, ...]:
    """Up to ``max_formulas`` formulas sharing at most ``max_connectives`` connectives."""
    count = rng.randint(1, max_formulas)
    total = rng.randint(0, max_connectives)
    cuts = sorted(rng.randint(0, total) for _ in range(count - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [total])]
    return tuple(random_mall_formula(rng, s, leaves) for s in sizes)


# -- strict prefix classes


def strict_sentence(
    rng: random.Random, first: type, blocks: int, matrix_connectives: int = 3, block_size: int = 1
) -> q.Qbf:
    """A closed prenex sentence with exactly ``blocks`` alternating blocks,
    starting with ``first`` (Exists or Forall), every variable used."""
    names = [f"x{i}" for i in range(blocks * block_size)]
    prefix = []
    quant = first
    for b in range(blocks):
        for i in range(block_size):
            prefix.append((quant, names[b * block_size + i]))
        quant = q.Forall if quant is q.Exists else q.Exists
    connectives = max(matrix_connectives, len(names) - 1)
    while True:
        matrix = random_tree(rng, connectives, qbf_literals(names), (q.And, q.Or))
        if q.free_vars(matrix) == frozenset(names):
            return q.with_prefix(tuple(prefix), matrix)


def doubling_qbfs(steps: int, start: int = 1) -> list[q.Qbf]:
    """Alternating sentences whose quantifier count and matrix size double
    at each step."""
    out = []
    k = start
    for _ in range(steps):
        names = [f"x{i}" for i in range(k)]
        prefix = tuple((q.Exists if i % 2 == 0 else q.Forall, x) for i, x in enumerate(names))
        matrix = q.Or(q.Var(names[0]), q.NegVar(names[0]))
        for x in names[1:]:
            matrix = q.And(matrix, q.Or(q.Var(x), q.NegVar(x)))
        out.append(q.with_prefix(prefix, matrix))
        k *= 2
    return out


def doubling_mall(steps: int, rng: random.Random, start: int = 4) -> list[m.Formula]:
    """Random formulas with a doubling number of connectives."""
    out = []
    k = start
    for _ in range(steps):
        out.append(random_mall_formula(rng, k, MALL_LEAVES[:4]))
        k *= 2
    return out
