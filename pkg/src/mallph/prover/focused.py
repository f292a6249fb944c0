"""Backward proof search in the focused calculi focMALL, focMALLw and focMALL'.

Search states are ``("P", ctx)`` for plain sequents, ``("D", ctx, foci)``
under the down arrow and ``("U", ctx, cofoci)`` under the up arrow, with every
cedent in canonical form.  In a plain state the par and bot rules are applied
first; their order never matters, so the search memoizes on the saturated
cedent and only the proof builder spells out the individual steps.

Phase changes follow the rule shapes:

* ``codec`` fires whenever a with-formula is present.  The co-focussed
  disciplines move a single with-formula and leave any others in the context.
* ``dec`` fires only when the context is atoms, units, positive formulas (and
  c-formulas for focMALL').  The focussed disciplines pick one positive
  formula, the others any nonempty sub-multiset.
* ``rel`` / ``corel`` fire once no focus can be decomposed further.
"""

from __future__ import annotations

from typing import Iterator

from mallph.mall.syntax import (
    ONE,
    Bot,
    Formula,
    NegVar,
    Par,
    Plus,
    Regime,
    Tensor,
    Top,
    Var,
    With,
    is_c_formula,
    literals_of,
)
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
from mallph.prover.proofs import Discipline, ProofTree, SystemId
from mallph.prover.unfocused import DEFAULT_BUDGET, has_complementary_pair
from mallph.sequent import Arrow, Sequent

State = tuple
Option = tuple[str, list[State]]


def is_cform(f: Formula) -> bool:
    """A c-formula as the primed regime sees it (bare bot included)."""
    return isinstance(f, Bot) or (isinstance(f, Plus) and is_c_formula(f))


def decomposable_focus(f: Formula, regime: Regime) -> bool:
    if isinstance(f, Tensor):
        return True
    if isinstance(f, Plus):
        return not (regime is Regime.PRIMED and is_c_formula(f))
    return False


def initial_rule(ctx: Cedent, system: SystemId) -> str | None:
    """Label of a zero-premiss rule whose conclusion is the plain ``ctx``."""
    if any(isinstance(f, Top) for f in ctx):
        return "top"
    if system.affine:
        if has_complementary_pair(ctx):
            return "wkid"
        if ONE in ctx:
            return "w1"
        return None
    if len(ctx) == 2 and has_complementary_pair(ctx):
        return "id"
    if ctx == (ONE,):
        return "one"
    if system is SystemId.FOCMALLPRIME:
        return primed_initial(ctx)
    return None


def primed_initial(ctx: Cedent) -> str | None:
    """The extra initial sequents of focMALL', all with a c-formula context.

    =>  cs, 1          =>  cs, x, ~x
    =>  cs, c(x), ~x   =>  cs, c(~x), x   =>  cs, c(x), d(~x)

    where c(l) is a c-formula in which the literal l occurs.
    """
    others = [f for f in ctx if not is_cform(f)]
    cs = [f for f in ctx if is_cform(f)]
    if others == [ONE]:
        return "c1"
    if len(others) == 2 and has_complementary_pair(tuple(others)):
        return "cid"
    if len(others) == 1 and isinstance(others[0], (Var, NegVar)):
        dual = NegVar(others[0].name) if isinstance(others[0], Var) else Var(others[0].name)
        if any(dual in set(literals_of(c)) for c in cs):
            return "cid"
        return None
    if not others:
        for i, c in enumerate(cs):
            lits = set(literals_of(c))
            for j, d in enumerate(cs):
                if i == j:
                    continue
                dlits = set(literals_of(d))
                if any(isinstance(l, Var) and NegVar(l.name) in dlits for l in lits):
                    return "cid"
    return None


class FocusedProver:
    def __init__(
        self,
        system: SystemId,
        discipline: Discipline = Discipline.BIFOCUSSED,
        budget: int = DEFAULT_BUDGET,
    ):
        if not system.focused:
            raise ValueError(f"{system.value} is not a focused system")
        self.system = system
        self.regime = system.regime
        self.discipline = discipline
        self.budget = budget
        self.nodes = 0
        self.memo: dict[State, bool] = {}

    # -- classification under this system's regime

    def is_positive(self, f: Formula) -> bool:
        return decomposable_focus(f, self.regime)

    # -- search

    def provable(self, state: State) -> bool:
        """The budget counts states visited by this query alone."""
        self.nodes = 0
        return self._provable(state)

    def _provable(self, state: State) -> bool:
        known = self.memo.get(state)
        if known is not None:
            return known
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"more than {self.budget} search nodes")
        result = any(all(self._provable(p) for p in prem) for _, prem in self.options(state))
        self.memo[state] = result
        return result

    def options(self, state: State) -> Iterator[Option]:
        match state:
            case ("P", ctx):
                yield from self._plain(ctx)
            case ("D", ctx, foci):
                yield from self._down(ctx, foci)
            case ("U", ctx, cofoci):
                yield from self._up(ctx, cofoci)

    def _plain(self, ctx: Cedent) -> Iterator[Option]:
        sat = saturate(ctx)
        if sat != ctx:
            yield "saturate", [("P", sat)]
            return
        rule = initial_rule(ctx, self.system)
        if rule is not None:
            yield rule, []
            return
        ms = [i for i, f in enumerate(ctx) if isinstance(f, With)]
        if ms:
            if self.discipline.single_cofocus:
                for i in distinct_positions(ctx, lambda f: isinstance(f, With)):
                    yield "codec", [("U", without(ctx, i), (ctx[i],))]
            else:
                rest = tuple(f for f in ctx if not isinstance(f, With))
                yield "codec", [("U", rest, tuple(ctx[i] for i in ms))]
            return
        if self.discipline.single_focus:
            for i in distinct_positions(ctx, self.is_positive):
                yield "dec", [("D", without(ctx, i), (ctx[i],))]
            return
        ps = tuple(f for f in ctx if self.is_positive(f))
        rest = tuple(f for f in ctx if not self.is_positive(f))
        for chosen, kept in submultisets(ps):
            yield "dec", [("D", canon(rest + kept), chosen)]

    def _down(self, ctx: Cedent, foci: Cedent) -> Iterator[Option]:
        for i, f in enumerate(foci):
            if self.is_positive(f):
                others = without(foci, i)
                if isinstance(f, Plus):
                    yield "plus0", [("D", ctx, canon(others + (f.left,)))]
                    yield "plus1", [("D", ctx, canon(others + (f.right,)))]
                    return
                for gamma, delta in splits(ctx):
                    for sigma, pi in splits(others):
                        yield "tensor", [
                            ("D", gamma, canon(sigma + (f.left,))),
                            ("D", delta, canon(pi + (f.right,))),
                        ]
                return
        yield "rel", [("P", canon(ctx + foci))]

    def _up(self, ctx: Cedent, cofoci: Cedent) -> Iterator[Option]:
        for i, f in enumerate(cofoci):
            if isinstance(f, With):
                others = without(cofoci, i)
                yield "with", [
                    ("U", ctx, canon(others + (f.left,))),
                    ("U", ctx, canon(others + (f.right,))),
                ]
                return
        yield "corel", [("P", canon(ctx + cofoci))]

    # -- proofs

    def proof(self, state: State) -> ProofTree | None:
        if not self.provable(state):
            return None
        return self._build(state)

    def _build(self, state: State) -> ProofTree:
        if state[0] == "P" and saturate(state[1]) != state[1]:
            return self._build_saturation(state[1])
        for rule, prem in self.options(state):
            if all(self._provable(p) for p in prem):
                subs = tuple(self._build(p) for p in prem)
                return ProofTree(self.system, rule, state_sequent(state), subs)
        raise AssertionError("memo says provable but no rule closes")  # pragma: no cover

    def _build_saturation(self, ctx: Cedent) -> ProofTree:
        for i, f in enumerate(ctx):
            if isinstance(f, Par):
                nxt = canon(without(ctx, i) + (f.left, f.right))
                return ProofTree(self.system, "par", Sequent(ctx), (self._build(("P", nxt)),))
            if isinstance(f, Bot):
                nxt = without(ctx, i)
                return ProofTree(self.system, "bot", Sequent(ctx), (self._build(("P", nxt)),))
        raise AssertionError("nothing to saturate")  # pragma: no cover


def state_sequent(state: State) -> Sequent:
    match state:
        case ("P", ctx):
            return Sequent(ctx)
        case ("D", ctx, foci):
            return Sequent(ctx, Arrow.DOWN, foci)
        case ("U", ctx, cofoci):
            return Sequent(ctx, Arrow.UP, cofoci)
    raise ValueError(f"bad state {state!r}")


def sequent_state(s: Sequent) -> State:
    ctx = canon(s.context)
    if s.arrow is None:
        return ("P", ctx)
    kind = "D" if s.arrow is Arrow.DOWN else "U"
    return (kind, ctx, canon(s.foci))


def prove_focused(
    system: SystemId,
    sequent: Sequent,
    discipline: Discipline = Discipline.BIFOCUSSED,
    budget: int = DEFAULT_BUDGET,
) -> ProofTree | None:
    return FocusedProver(system, discipline, budget).proof(sequent_state(sequent))


__all__ = [
    "BudgetExceeded",
    "FocusedProver",
    "initial_rule",
    "primed_initial",
    "prove_focused",
    "sequent_state",
    "state_sequent",
]
