"""Translations between QBFs and (affine) MALL.

* ``negtrans`` / ``postrans`` read a quantifier-free matrix with negative
  (par, with) or positive (plus, tensor) connectives.
* ``qltrans`` encodes a prenex QBF, one extension variable per quantifier.
* ``prime_translate`` guards every literal ``a`` as ``bot + a`` so that
  weakening on literals becomes derivable without the affine rules.
* ``weakened_formulas`` reports which subformula occurrences an affine proof
  discards at its initial sequents.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import AbstractSet, Iterable, Sequence

from mallph.mall import syntax as m
from mallph.mall.syntax import (
    BOT,
    ONE,
    TOP,
    ZERO,
    Bot,
    Formula,
    One,
    Par,
    Plus,
    Tensor,
    Top,
    With,
    big_par,
    mall_dual,
)
from mallph.prover.cedents import BudgetExceeded
from mallph.prover.checker import check_proof
from mallph.prover.proofs import ProofTree, SystemId
from mallph.prover.unfocused import DEFAULT_BUDGET
from mallph.qbf import syntax as q
from mallph.qbf.semantics import NotPrenexError, simplify


class EncodingError(ValueError):
    pass


# -- quantifier-free matrices


def _matrix_map(phi: q.Qbf, disj, conj, name: str) -> Formula:
    match phi:
        case q.Var(x):
            return m.Var(x)
        case q.NegVar(x):
            return m.NegVar(x)
        case q.Or(l, r):
            return disj(_matrix_map(l, disj, conj, name), _matrix_map(r, disj, conj, name))
        case q.And(l, r):
            return conj(_matrix_map(l, disj, conj, name), _matrix_map(r, disj, conj, name))
        case q.Fal() | q.Tru():
            raise EncodingError(f"{name} needs a constant-free formula: {phi}")
    raise EncodingError(f"{name} needs a quantifier-free formula: {phi}")


def negtrans(phi: q.Qbf) -> Formula:
    """``\\/`` becomes par and ``/\\`` becomes with."""
    return _matrix_map(phi, Par, With, "negtrans")


def postrans(phi: q.Qbf) -> Formula:
    """``\\/`` becomes plus and ``/\\`` becomes tensor."""
    return _matrix_map(phi, Plus, Tensor, "postrans")


def assignment_cedent(alpha: AbstractSet[str], xs: Sequence[str], n: int = 1) -> list[Formula]:
    """``n`` copies of ``x`` for each true ``x`` in ``xs``, of ``~x`` otherwise.

    This is the left-hand side of a two-sided sequent; use ``one_sided`` to
    move it to the right.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out: list[Formula] = []
    for x in xs:
        lit = m.Var(x) if x in alpha else m.NegVar(x)
        out.extend([lit] * n)
    return out


def one_sided(antecedent: Iterable[Formula], succedent: Iterable[Formula]) -> list[Formula]:
    """The one-sided cedent for ``antecedent => succedent``."""
    return [mall_dual(a) for a in antecedent] + list(succedent)


# -- quantified formulas


@dataclass
class EncodingContext:
    """Copy count, variables and fresh extension names for one encoding."""

    n: int
    xs: tuple[str, ...] = ()
    prefix: str = "_y"
    used: set[str] = field(default_factory=set)
    generated: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        self.used |= set(self.xs)

    def fresh(self, layer: int) -> str:
        name = f"{self.prefix}{layer}"
        while name in self.used:
            name += "'"
        self.used.add(name)
        self.generated.append(name)
        return name


def clean_constants(phi: q.Qbf) -> q.Qbf:
    """Remove truth constants; the result is constant-free, ``F`` or ``T``."""
    if not q.is_prenex(phi):
        raise NotPrenexError(f"formula is not prenex: {phi}")
    return simplify(phi)


def matrix_size(phi: q.Qbf) -> int:
    _, matrix = q.split_prefix(phi)
    return max(1, q.literal_count(matrix))


def _all_names(phi: q.Qbf) -> set[str]:
    names = set()
    for sub in q.subformulas(phi):
        match sub:
            case q.Var(x) | q.NegVar(x) | q.Exists(x, _) | q.Forall(x, _):
                names.add(x)
    return names


def _guard(x: str, n: int, positive: bool, y: str) -> Formula:
    """``x^n -o y`` (or ``~x^n -o y``): n negated copies par'd onto ``y``."""
    lit = m.NegVar(x) if positive else m.Var(x)
    return big_par([lit] * n + [m.Var(y)])


def qltrans(phi: q.Qbf, ctx: EncodingContext | None = None) -> Formula:
    """Encode a prenex QBF as an affine MALL formula.

    Each quantifier ``Q x`` over an already encoded body ``B`` becomes,
    with a fresh ``y``::

        exists:  (B * ~y) # ((x^n -o y) + (~x^n -o y))
        forall:  (B & ~y) # ((x^n -o y) & (~x^n -o y))

    The matrix is encoded by ``postrans`` when the innermost quantifier is
    existential (or there is none) and by ``negtrans`` when it is universal.
    Constants are removed first; a formula that reduces to ``T`` or ``F``
    becomes ``top`` or ``0``.
    """
    phi = clean_constants(phi)
    if phi is q.TRUE:
        return TOP
    if phi is q.FALSE:
        return ZERO
    prefix, matrix = q.split_prefix(phi)
    if ctx is None:
        ctx = EncodingContext(n=matrix_size(phi), xs=tuple(sorted(q.free_vars(phi))))
    ctx.used |= _all_names(phi)
    if prefix and prefix[-1][0] is q.Forall:
        body = negtrans(matrix)
    else:
        body = postrans(matrix)
    for layer, (quant, x) in enumerate(reversed(prefix), 1):
        y = ctx.fresh(layer)
        pos = _guard(x, ctx.n, True, y)
        neg = _guard(x, ctx.n, False, y)
        if quant is q.Exists:
            body = Par(Tensor(body, m.NegVar(y)), Plus(pos, neg))
        else:
            body = Par(With(body, m.NegVar(y)), With(pos, neg))
    return body


def qltrans_sequent(
    phi: q.Qbf, alpha: AbstractSet[str] = frozenset(), ys: Iterable[str] = ()
) -> list[Formula]:
    """One-sided cedent for ``alpha^n(xs) => ys, qltrans(phi)``, xs the free variables."""
    phi = clean_constants(phi)
    xs = tuple(sorted(q.free_vars(phi)))
    n = matrix_size(phi)
    ctx = EncodingContext(n=n, xs=xs, used=set(ys))
    a = qltrans(phi, ctx)
    return one_sided(assignment_cedent(alpha, xs, n), [m.Var(y) for y in ys] + [a])


# -- literal guarding


def prime_translate(a: Formula) -> Formula:
    """Replace every literal occurrence ``l`` by ``bot + l``."""
    match a:
        case m.Var() | m.NegVar():
            return Plus(BOT, a)
        case Par(l, r) | Tensor(l, r) | Plus(l, r) | With(l, r):
            return type(a)(prime_translate(l), prime_translate(r))
    return a


# -- occurrences and weakening

Occurrence = tuple[int, str]  # (index in the root cedent, L/R path)


def occurrence_at(cedent: Sequence[Formula], occ: Occurrence) -> Formula:
    f = cedent[occ[0]]
    for step in occ[1]:
        f = f.left if step == "L" else f.right
    return f


def all_occurrences(cedent: Sequence[Formula]) -> list[Occurrence]:
    out: list[Occurrence] = []

    def walk(f: Formula, root: int, path: str):
        out.append((root, path))
        if isinstance(f, (Par, Tensor, Plus, With)):
            walk(f.left, root, path + "L")
            walk(f.right, root, path + "R")

    for i, f in enumerate(cedent):
        walk(f, i, "")
    return out


def guard_occurrences(cedent: Sequence[Formula], omega: Iterable[Occurrence]) -> list[Formula]:
    """``A[bot + B / B]`` for every occurrence ``B`` listed in ``omega``."""
    omega = set(omega)

    def walk(f: Formula, root: int, path: str) -> Formula:
        if isinstance(f, (Par, Tensor, Plus, With)):
            f = type(f)(walk(f.left, root, path + "L"), walk(f.right, root, path + "R"))
        if (root, path) in omega:
            f = Plus(BOT, f)
        return f

    return [walk(f, i, "") for i, f in enumerate(cedent)]


Tagged = tuple[Formula, Occurrence]


def _take(items: list[Tagged], f: Formula) -> tuple[Tagged, list[Tagged]]:
    for i, (g, occ) in enumerate(items):
        if g is f:
            return (g, occ), items[:i] + items[i + 1:]
    raise EncodingError(f"{f} does not occur")


def _take_all(items: list[Tagged], bag: Counter) -> tuple[list[Tagged], list[Tagged]]:
    taken, rest = [], []
    need = bag.copy()
    for g, occ in items:
        if need[g] > 0:
            need[g] -= 1
            taken.append((g, occ))
        else:
            rest.append((g, occ))
    if +need:
        raise EncodingError("premiss is not a sub-multiset of the conclusion")
    return taken, rest


def _child(tag: Tagged, side: str) -> Tagged:
    f, (root, path) = tag
    return (f.left if side == "L" else f.right), (root, path + side)


def _principal(items: list[Tagged], prem: Counter, kind, replace) -> tuple[Tagged, list[Tagged]] | None:
    bag = Counter(f for f, _ in items)
    for f in bag:
        if isinstance(f, kind):
            rest = bag.copy()
            rest[f] -= 1
            if +(rest + Counter(replace(f))) == +prem:
                return _take(items, f)
    return None


def weakened_formulas(p: ProofTree) -> set[Occurrence]:
    """Occurrences in the conclusion of ``p`` that its initial sequents weaken.

    ``p`` must be a valid aMALL or focMALLw proof.  Occurrences are
    ``(i, path)`` with ``i`` the position in the conclusion as printed and
    ``path`` a string of L/R steps.  Among identical copies the first
    unused occurrence is matched; copies are interchangeable, so this only
    fixes a name for each weakened formula.
    """
    if p.system not in (SystemId.AMALL, SystemId.FOCMALLW):
        raise EncodingError("weakened formulas are defined for affine proofs")
    result = check_proof(p)
    if not result:
        raise EncodingError(f"proof does not check: {result}")
    root = list(p.conclusion.formulas())
    omega: set[Occurrence] = set()
    stack = [(p, [(f, (i, "")) for i, f in enumerate(root)])]
    while stack:
        node, items = stack.pop()
        prem_bags = [Counter(q_.conclusion.formulas()) for q_ in node.premisses]
        match node.rule:
            case "wkid" | "id":
                bag = Counter(f for f, _ in items)
                var = next(f for f in sorted(bag, key=str) if isinstance(f, m.Var) and m.NegVar(f.name) in bag)
                _, rest = _take(items, var)
                _, rest = _take(rest, m.NegVar(var.name))
                omega |= {occ for _, occ in rest}
            case "w1" | "one":
                _, rest = _take(items, ONE)
                omega |= {occ for _, occ in rest}
            case "top":
                pass
            case "dec" | "codec" | "rel" | "corel":
                stack.append((node.premisses[0], items))
            case "bot":
                _, rest = _principal(items, prem_bags[0], Bot, lambda f: [])
                stack.append((node.premisses[0], rest))
            case "par":
                tag, rest = _principal(items, prem_bags[0], Par, lambda f: [f.left, f.right])
                stack.append((node.premisses[0], rest + [_child(tag, "L"), _child(tag, "R")]))
            case "plus0" | "plus1":
                side = "L" if node.rule == "plus0" else "R"
                pick = (lambda f: [f.left]) if side == "L" else (lambda f: [f.right])
                tag, rest = _principal(items, prem_bags[0], Plus, pick)
                stack.append((node.premisses[0], rest + [_child(tag, side)]))
            case "with":
                for f, occ in items:
                    if isinstance(f, With):
                        rest_bag = Counter(g for g, _ in items)
                        rest_bag[f] -= 1
                        if +(rest_bag + Counter([f.left])) == prem_bags[0] and +(
                            rest_bag + Counter([f.right])
                        ) == prem_bags[1]:
                            tag, rest = _take(items, f)
                            stack.append((node.premisses[0], rest + [_child(tag, "L")]))
                            stack.append((node.premisses[1], rest + [_child(tag, "R")]))
                            break
            case "tensor":
                for f, occ in items:
                    if isinstance(f, Tensor) and prem_bags[0][f.left] and prem_bags[1][f.right]:
                        left_ctx = prem_bags[0].copy()
                        left_ctx[f.left] -= 1
                        right_ctx = prem_bags[1].copy()
                        right_ctx[f.right] -= 1
                        tag, rest = _take(items, f)
                        if +Counter(g for g, _ in rest) != +(left_ctx + right_ctx):
                            continue
                        lhs, rhs = _take_all(rest, +left_ctx)
                        stack.append((node.premisses[0], lhs + [_child(tag, "L")]))
                        stack.append((node.premisses[1], rhs + [_child(tag, "R")]))
                        break
            case other:
                raise EncodingError(f"unexpected rule {other!r}")
    return omega


class RestrictedAffineProver:
    """aMALL search where initial sequents may only weaken occurrences in ``omega``.

    Sequents are multisets of (formula, occurrence) pairs so that every
    weakened formula can be traced back to the conclusion.
    """

    def __init__(self, omega: Iterable[Occurrence], budget: int = DEFAULT_BUDGET):
        self.omega = frozenset(omega)
        self.budget = budget
        self.nodes = 0
        self.memo: dict[tuple, bool] = {}

    def provable(self, cedent: Sequence[Formula]) -> bool:
        self.nodes = 0
        items = tuple(sorted(((f, (i, "")) for i, f in enumerate(cedent)), key=self._key))
        return self._provable(items)

    @staticmethod
    def _key(tag: Tagged):
        return tag[0].uid, tag[1]

    def _canon(self, items) -> tuple:
        return tuple(sorted(items, key=self._key))

    def _weakenable(self, rest) -> bool:
        return all(occ in self.omega for _, occ in rest)

    def _provable(self, items: tuple) -> bool:
        known = self.memo.get(items)
        if known is not None:
            return known
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"more than {self.budget} search nodes")
        result = self._search(items)
        self.memo[items] = result
        return result

    def _search(self, items: tuple) -> bool:
        formulas = [f for f, _ in items]
        if any(isinstance(f, Top) for f in formulas):
            return True
        for i, (f, occ) in enumerate(items):
            rest = items[:i] + items[i + 1:]
            match f:
                case Par(a, b):
                    return self._provable(self._canon(rest + ((a, (occ[0], occ[1] + "L")), (b, (occ[0], occ[1] + "R")))))
                case Bot():
                    return self._provable(rest)
                case With(a, b):
                    return self._provable(
                        self._canon(rest + ((a, (occ[0], occ[1] + "L")),))
                    ) and self._provable(self._canon(rest + ((b, (occ[0], occ[1] + "R")),)))
        # initial sequents: the unused formulas must all be weakenable
        for i, (f, _) in enumerate(items):
            if isinstance(f, One) and self._weakenable(items[:i] + items[i + 1:]):
                return True
            if isinstance(f, m.Var):
                for j, (g, _) in enumerate(items):
                    if g is m.NegVar(f.name):
                        rest = tuple(t for k, t in enumerate(items) if k not in (i, j))
                        if self._weakenable(rest):
                            return True
        for i, (f, occ) in enumerate(items):
            rest = items[:i] + items[i + 1:]
            if isinstance(f, Plus):
                if self._provable(self._canon(rest + ((f.left, (occ[0], occ[1] + "L")),))):
                    return True
                if self._provable(self._canon(rest + ((f.right, (occ[0], occ[1] + "R")),))):
                    return True
            elif isinstance(f, Tensor):
                a = (f.left, (occ[0], occ[1] + "L"))
                b = (f.right, (occ[0], occ[1] + "R"))
                for mask in range(1 << len(rest)):
                    left = tuple(t for k, t in enumerate(rest) if mask >> k & 1)
                    right = tuple(t for k, t in enumerate(rest) if not mask >> k & 1)
                    if self._provable(self._canon(left + (a,))) and self._provable(
                        self._canon(right + (b,))
                    ):
                        return True
        return False


__all__ = [
    "EncodingContext",
    "EncodingError",
    "RestrictedAffineProver",
    "all_occurrences",
    "assignment_cedent",
    "clean_constants",
    "guard_occurrences",
    "matrix_size",
    "negtrans",
    "occurrence_at",
    "one_sided",
    "postrans",
    "prime_translate",
    "qltrans",
    "qltrans_sequent",
    "weakened_formulas",
]
