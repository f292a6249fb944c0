"""Backward proof search for cut-free MALL and affine MALL.

Two modes share one rule generator:

* ``eager`` applies the invertible rules (par, bot, with, top) as soon as
  they match and only then branches over plus and tensor.
* ``naive`` offers every rule instance at every sequent.  It is slower but
  relies on no invertibility argument, which makes it a fair oracle for the
  focused provers.

With ``defer_guards`` the eager mode leaves guards (plus-clauses of literals
around a ``bot``, such as ``bot + x``) alone until every other formula is a
literal or a unit.  A guard is only ever consumed by an initial sequent, so
its plus steps can always be moved up to just below that leaf; deferring
them removes the interleavings that otherwise dominate search on guarded
formulas.
"""

from __future__ import annotations

import sys
from typing import Iterator

from mallph.mall.syntax import (
    ONE,
    Bot,
    NegVar,
    Par,
    Plus,
    Tensor,
    Top,
    Var,
    With,
    is_c_formula,
)
from mallph.prover.cedents import (
    BudgetExceeded,
    Cedent,
    canon,
    distinct_positions,
    splits,
    without,
)
from mallph.prover.proofs import ProofTree, SystemId
from mallph.sequent import Sequent

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

DEFAULT_BUDGET = 10**6

Option = tuple[str, list[Cedent]]


def has_complementary_pair(ctx: Cedent) -> bool:
    positive = {f.name for f in ctx if type(f) is Var}
    return any(type(f) is NegVar and f.name in positive for f in ctx)


class UnfocusedProver:
    def __init__(
        self,
        system: SystemId,
        mode: str = "eager",
        budget: int = DEFAULT_BUDGET,
        defer_guards: bool = False,
    ):
        if system not in (SystemId.MALL, SystemId.AMALL):
            raise ValueError(f"{system.value} is not an unfocused system")
        if mode not in ("eager", "naive"):
            raise ValueError(f"unknown mode {mode!r}")
        self.system = system
        self.affine = system.affine
        self.mode = mode
        self.defer_guards = defer_guards and mode == "eager"
        self.budget = budget
        self.nodes = 0
        self.memo: dict[Cedent, bool] = {}

    def provable(self, ctx: Cedent) -> bool:
        """The budget counts cedents visited by this query alone."""
        self.nodes = 0
        return self._provable(canon(ctx))

    def _provable(self, ctx: Cedent) -> bool:
        known = self.memo.get(ctx)
        if known is not None:
            return known
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"more than {self.budget} search nodes")
        result = any(all(self._provable(p) for p in prem) for _, prem in self.options(ctx))
        self.memo[ctx] = result
        return result

    def proof(self, ctx: Cedent) -> ProofTree | None:
        ctx = canon(ctx)
        if not self.provable(ctx):
            return None
        return self._build(ctx)

    def _build(self, ctx: Cedent) -> ProofTree:
        for rule, prem in self.options(ctx):
            if all(self._provable(p) for p in prem):
                subs = tuple(self._build(p) for p in prem)
                return ProofTree(self.system, rule, Sequent(ctx), subs)
        raise AssertionError("memo says provable but no rule closes")  # pragma: no cover

    def _initial(self, ctx: Cedent) -> Iterator[Option]:
        if self.affine:
            if has_complementary_pair(ctx):
                yield "wkid", []
            if ONE in ctx:
                yield "w1", []
        else:
            if len(ctx) == 2 and has_complementary_pair(ctx):
                yield "id", []
            if ctx == (ONE,):
                yield "one", []

    def options(self, ctx: Cedent) -> Iterator[Option]:
        """Rule instances with ``ctx`` as conclusion, as (rule, premisses)."""
        if self.mode == "eager":
            if any(isinstance(f, Top) for f in ctx):
                yield "top", []
                return
            for i, f in enumerate(ctx):
                if isinstance(f, (Par, Bot, With)):
                    yield self._invertible(ctx, i)
                    return
            yield from self._initial(ctx)
            if self.defer_guards:
                yield from self._guarded(ctx)
            else:
                yield from self._synchronous(ctx)
            return
        yield from self._initial(ctx)
        for i in distinct_positions(ctx):
            f = ctx[i]
            if isinstance(f, Top):
                yield "top", []
            elif isinstance(f, (Par, Bot, With)):
                yield self._invertible(ctx, i)
        yield from self._synchronous(ctx)

    @staticmethod
    def _invertible(ctx: Cedent, i: int) -> Option:
        f = ctx[i]
        rest = without(ctx, i)
        match f:
            case Par(a, b):
                return "par", [canon(rest + (a, b))]
            case Bot():
                return "bot", [rest]
            case With(a, b):
                return "with", [canon(rest + (a,)), canon(rest + (b,))]
        raise AssertionError(f)  # pragma: no cover

    def _guarded(self, ctx: Cedent) -> Iterator[Option]:
        guard = lambda f: isinstance(f, Plus) and is_c_formula(f)
        others = [f for f in ctx if not guard(f)]
        if any(f.size for f in others):
            yield from self._synchronous(ctx, lambda f: not guard(f))
            return
        # only literals, units and guards left: resolving a guard never
        # removes one of the others, and a non-affine leaf holds at most two
        if not self.affine and len(others) > 2:
            return
        yield from self._synchronous(ctx, guard)

    @staticmethod
    def _synchronous(ctx: Cedent, allowed=lambda f: True) -> Iterator[Option]:
        for i in distinct_positions(ctx, lambda f: isinstance(f, Plus) and allowed(f)):
            rest = without(ctx, i)
            yield "plus0", [canon(rest + (ctx[i].left,))]
            yield "plus1", [canon(rest + (ctx[i].right,))]
        for i in distinct_positions(ctx, lambda f: isinstance(f, Tensor) and allowed(f)):
            a, b = ctx[i].left, ctx[i].right
            for gamma, delta in splits(without(ctx, i)):
                yield "tensor", [canon(gamma + (a,)), canon(delta + (b,))]


def prove_unfocused(
    system: SystemId,
    sequent: Sequent,
    mode: str = "eager",
    budget: int = DEFAULT_BUDGET,
    defer_guards: bool = False,
) -> ProofTree | None:
    if not sequent.is_plain:
        raise ValueError("unfocused calculi have no focus arrows")
    return UnfocusedProver(system, mode, budget, defer_guards).proof(sequent.context)

