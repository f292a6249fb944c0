"""Bounded-alternation provability and the alternation measures of proofs.

``sigma_f_provable`` / ``pi_f_provable`` follow the layered definition
directly:

* level 0 on either side: the sequent closes by par, bot and initial rules.
* Sigma level k+1: some derivation built from decide phases reaches plain
  sequents that are all Pi level k.
* Pi level k+1: every path of co-decide phases reaches plain sequents that
  are all Sigma level k.

``sigma_measure`` / ``pi_measure`` are computed separately, by a min-max
recursion over all focused proofs that tracks the kind of the current phase
block along each branch.  The two are tied together by the property that the
least Sigma level of a sequent equals its sigma measure.
"""

from __future__ import annotations

import math
from typing import Iterator

from mallph.mall.syntax import Plus, With
from mallph.prover.cedents import (
    BudgetExceeded,
    Cedent,
    canon,
    distinct_positions,
    saturate,
    splits,
    submultisets,
    without,
)
from mallph.prover.focused import decomposable_focus, initial_rule
from mallph.prover.proofs import Discipline, SystemId
from mallph.prover.unfocused import DEFAULT_BUDGET
from mallph.sequent import Sequent

INF = math.inf


class UnprovableError(ValueError):
    pass


def deterministic_saturate(s: Sequent) -> Sequent:
    """Apply par and bot bottom-up until neither applies."""
    if not s.is_plain:
        raise ValueError("only plain sequents are saturated")
    return Sequent(saturate(s.context))


def _focused_system(system: SystemId) -> SystemId:
    if not system.focused:
        system = system.focused_version
    return system


class _PhaseMoves:
    """Decide / co-decide choices and focus decompositions for one system."""

    def __init__(self, system: SystemId, discipline: Discipline, budget: int):
        self.system = _focused_system(system)
        self.regime = self.system.regime
        self.discipline = discipline
        self.budget = budget
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"more than {self.budget} search nodes")

    def closed(self, ctx: Cedent) -> bool:
        return initial_rule(ctx, self.system) is not None

    def positive(self, f) -> bool:
        return decomposable_focus(f, self.regime)

    def decides(self, ctx: Cedent) -> Iterator[tuple[Cedent, Cedent]]:
        """(context, foci) for each decide step out of a saturated cedent."""
        if self.discipline.single_focus:
            for i in distinct_positions(ctx, self.positive):
                yield without(ctx, i), (ctx[i],)
            return
        ps = tuple(f for f in ctx if self.positive(f))
        rest = tuple(f for f in ctx if not self.positive(f))
        for chosen, kept in submultisets(ps):
            yield canon(rest + kept), chosen

    def codecides(self, ctx: Cedent) -> Iterator[tuple[Cedent, Cedent]]:
        """(context, co-foci) for each co-decide step out of a saturated cedent."""
        if self.discipline.single_cofocus:
            for i in distinct_positions(ctx, lambda f: isinstance(f, With)):
                yield without(ctx, i), (ctx[i],)
            return
        ms = tuple(f for f in ctx if isinstance(f, With))
        rest = tuple(f for f in ctx if not isinstance(f, With))
        for chosen, kept in submultisets(ms):
            yield canon(rest + kept), chosen

    def down_moves(self, ctx: Cedent, foci: Cedent):
        """None when the foci must be released, else a list of premiss lists."""
        for i, f in enumerate(foci):
            if self.positive(f):
                others = without(foci, i)
                if isinstance(f, Plus):
                    return [
                        [(ctx, canon(others + (f.left,)))],
                        [(ctx, canon(others + (f.right,)))],
                    ]
                return [
                    [(gamma, canon(sigma + (f.left,))), (delta, canon(pi + (f.right,)))]
                    for gamma, delta in splits(ctx)
                    for sigma, pi in splits(others)
                ]
        return None

    @staticmethod
    def up_move(ctx: Cedent, cofoci: Cedent):
        """None when the co-foci must be co-released, else the two premisses."""
        for i, f in enumerate(cofoci):
            if isinstance(f, With):
                others = without(cofoci, i)
                return [(ctx, canon(others + (f.left,))), (ctx, canon(others + (f.right,)))]
        return None


class AlternationDecider(_PhaseMoves):
    """Sigma^f_k / Pi^f_k provability with shared memo tables."""

    def __init__(
        self,
        system: SystemId,
        discipline: Discipline = Discipline.BIFOCUSSED,
        budget: int = DEFAULT_BUDGET,
    ):
        super().__init__(system, discipline, budget)
        self._sigma: dict[tuple[Cedent, int], bool] = {}
        self._pi: dict[tuple[Cedent, int], bool] = {}
        self._down: dict[tuple[Cedent, Cedent, int], bool] = {}
        self._up: dict[tuple[Cedent, Cedent, int], bool] = {}

    def sigma(self, ctx, k: int) -> bool:
        ctx = saturate(ctx)
        key = (ctx, k)
        known = self._sigma.get(key)
        if known is not None:
            return known
        self.tick()
        if self.closed(ctx):
            result = True
        elif k == 0:
            result = False
        elif self.pi(ctx, k - 1):
            result = True
        elif any(isinstance(f, With) for f in ctx):
            result = False
        else:
            result = any(self._sigma_down(rest, foci, k) for rest, foci in self.decides(ctx))
        self._sigma[key] = result
        return result

    def _sigma_down(self, ctx: Cedent, foci: Cedent, k: int) -> bool:
        key = (ctx, foci, k)
        known = self._down.get(key)
        if known is not None:
            return known
        self.tick()
        moves = self.down_moves(ctx, foci)
        if moves is None:
            result = self.sigma(ctx + foci, k)
        else:
            result = any(all(self._sigma_down(c, f, k) for c, f in prem) for prem in moves)
        self._down[key] = result
        return result

    def pi(self, ctx, k: int) -> bool:
        ctx = saturate(ctx)
        key = (ctx, k)
        known = self._pi.get(key)
        if known is not None:
            return known
        self.tick()
        if self.closed(ctx):
            result = True
        elif k == 0:
            result = False
        elif not any(isinstance(f, With) for f in ctx):
            result = self.sigma(ctx, k - 1)
        else:
            # every co-decide choice starts a path, and every path must succeed
            result = all(self._pi_up(rest, cofoci, k) for rest, cofoci in self.codecides(ctx))
        self._pi[key] = result
        return result

    def _pi_up(self, ctx: Cedent, cofoci: Cedent, k: int) -> bool:
        key = (ctx, cofoci, k)
        known = self._up.get(key)
        if known is not None:
            return known
        self.tick()
        move = self.up_move(ctx, cofoci)
        if move is None:
            result = self.pi(ctx + cofoci, k)
        else:
            result = all(self._pi_up(c, f, k) for c, f in move)
        self._up[key] = result
        return result


def _plain_context(s: Sequent | Cedent) -> Cedent:
    if isinstance(s, Sequent):
        if not s.is_plain:
            raise ValueError("alternation levels are defined for plain sequents")
        return canon(s.context)
    return canon(s)


def sigma_f_provable(
    system: SystemId,
    s: Sequent,
    k: int,
    discipline: Discipline = Discipline.BIFOCUSSED,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    if k < 0:
        raise ValueError("levels are nonnegative")
    return AlternationDecider(system, discipline, budget).sigma(_plain_context(s), k)


def pi_f_provable(
    system: SystemId,
    s: Sequent,
    k: int,
    discipline: Discipline = Discipline.BIFOCUSSED,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    if k < 0:
        raise ValueError("levels are nonnegative")
    return AlternationDecider(system, discipline, budget).pi(_plain_context(s), k)


def least_level(decide, ctx, limit: int) -> int | None:
    """Least ``k <= limit`` with ``decide(ctx, k)``, or None."""
    for k in range(limit + 1):
        if decide(ctx, k):
            return k
    return None


# -- measures

DEC, CODEC = "D", "C"


class AlternationMeasure(_PhaseMoves):
    """Least alternation count over focused proofs, for the sigma or pi convention.

    Along a branch the decide and co-decide steps fall into maximal blocks of
    one kind.  A branch costs its number of blocks, plus one when its first
    block is not of the home kind (decide for sigma, co-decide for pi).  A
    proof costs its most expensive branch; the measure of a sequent is the
    cheapest proof.
    """

    def __init__(
        self,
        system: SystemId,
        home: str,
        discipline: Discipline = Discipline.MULTI,
        budget: int = DEFAULT_BUDGET,
    ):
        super().__init__(system, discipline, budget)
        if home not in (DEC, CODEC):
            raise ValueError(home)
        self.home = home
        self._plain: dict[tuple[Cedent, str | None], float] = {}
        self._down: dict[tuple[Cedent, Cedent], float] = {}
        self._up: dict[tuple[Cedent, Cedent], float] = {}

    def entry_cost(self, current: str | None, kind: str) -> int:
        if current == kind:
            return 0
        if current is None:
            return 1 if kind == self.home else 2
        return 1

    def plain(self, ctx, current: str | None = None) -> float:
        ctx = saturate(ctx)
        key = (ctx, current)
        known = self._plain.get(key)
        if known is not None:
            return known
        self.tick()
        if self.closed(ctx):
            best = 0
        elif any(isinstance(f, With) for f in ctx):
            best = INF
            for rest, cofoci in self.codecides(ctx):
                best = min(best, self.entry_cost(current, CODEC) + self.up(rest, cofoci))
        else:
            best = INF
            for rest, foci in self.decides(ctx):
                best = min(best, self.entry_cost(current, DEC) + self.down(rest, foci))
        self._plain[key] = best
        return best

    def down(self, ctx: Cedent, foci: Cedent) -> float:
        key = (ctx, foci)
        known = self._down.get(key)
        if known is not None:
            return known
        self.tick()
        moves = self.down_moves(ctx, foci)
        if moves is None:
            best = self.plain(ctx + foci, DEC)
        else:
            best = min(
                (max(self.down(c, f) for c, f in prem) for prem in moves),
                default=INF,
            )
        self._down[key] = best
        return best

    def up(self, ctx: Cedent, cofoci: Cedent) -> float:
        key = (ctx, cofoci)
        known = self._up.get(key)
        if known is not None:
            return known
        self.tick()
        move = self.up_move(ctx, cofoci)
        if move is None:
            best = self.plain(ctx + cofoci, CODEC)
        else:
            best = max(self.up(c, f) for c, f in move)
        self._up[key] = best
        return best

    def measure(self, s) -> int:
        value = self.plain(_plain_context(s))
        if value == INF:
            raise UnprovableError("the sequent has no proof")
        return int(value)


def sigma_measure(
    system: SystemId,
    s: Sequent,
    discipline: Discipline = Discipline.MULTI,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Least sigma alternation count of a focused proof of ``s``."""
    return AlternationMeasure(system, DEC, discipline, budget).measure(s)


def pi_measure(
    system: SystemId,
    s: Sequent,
    discipline: Discipline = Discipline.MULTI,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Least pi alternation count of a focused proof of ``s``."""
    return AlternationMeasure(system, CODEC, discipline, budget).measure(s)
