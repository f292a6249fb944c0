"""Polynomial-time approximations of the alternation measures, and the
classifier that picks a bounded-alternation level for a formula.

``ndcomp`` approximates the sigma measure and ``condcomp`` the pi measure.
Both run a single deterministic pass over a cedent:

==================  =======================================================
clause              action
==================  =======================================================
``par``             ``A # B`` unfolds in place to ``A, B``
``bot``             ``bot`` is deleted
``atoms``           a cedent of atoms (and 1, top, 0) scores 1
``dec``             ndcomp: no with-formula left, focus the least positive
``mixed``           ndcomp with a with-formula present: 1 + condcomp
``lift``            condcomp with positives but no with-formula: 1 + ndcomp
``codec``           condcomp: co-focus the least with-formula
``plus``/``tensor`` under focus keep the child with the larger standalone
                    ndcomp (left on ties) and drop the other child
``with``            under co-focus keep the child with the larger standalone
                    condcomp (left on ties)
``release``         anything else under an arrow returns to the cedent
==================  =======================================================

Under the primed regime c-formulas count as atoms.  Which formula is least
is decided by a ``FormulaOrder``.  The value can depend on the order: on
``(x & y) * b, c + d`` deciding the plus first gives 2, the tensor first 3,
because the released with-formula meets the pending plus.  The default order
decides smaller formulas first.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Callable, Iterable

from mallph.mall.syntax import (
    Bot,
    Formula,
    Par,
    Plus,
    Regime,
    Tensor,
    With,
    is_c_formula,
)
from mallph.prover.alternation import AlternationDecider
from mallph.prover.proofs import Discipline, SystemId
from mallph.prover.unfocused import DEFAULT_BUDGET
from mallph.qbf.semantics import Side


@dataclass(frozen=True)
class FormulaOrder:
    """Total order on formulas: smaller first, then by printed text; with a
    seed, by a keyed hash of the text instead.

    Distinct formulas print differently, so either key is total; copies of the
    same formula are interchangeable and need no tie-break.
    """

    seed: int | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def key(self, f: Formula):
        k = self._cache.get(f)
        if k is None:
            text = str(f)
            if self.seed is None:
                k = (f.size, text)
            else:
                digest = hashlib.blake2b(
                    text.encode(), digest_size=8, key=self.seed.to_bytes(8, "little", signed=True)
                ).digest()
                k = (digest, text)
            self._cache[f] = k
        return k

    def compare(self, a: Formula, b: Formula) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def least(self, formulas: Iterable[Formula]) -> Formula:
        return min(formulas, key=self.key)


DEFAULT_ORDER = FormulaOrder()

Trace = Callable[[str, str], None]


class MeasureEngine:
    """Evaluates ndcomp / condcomp with memoized standalone child values.

    ``firings`` counts every clause applied, including those spent on
    standalone child values; ``trace(clause, cedent_text)`` sees each one.
    """

    def __init__(
        self,
        order: FormulaOrder = DEFAULT_ORDER,
        regime: Regime = Regime.STANDARD,
        trace: Trace | None = None,
    ):
        self.order = order
        self.regime = regime
        self.trace = trace
        self.firings = 0
        self._alone: dict[tuple[str, Formula], int] = {}

    def _fire(self, clause: str, ctx: list[Formula], arrow: str = "", focus: Formula | None = None):
        self.firings += 1
        if self.trace is not None:
            text = ", ".join(map(str, ctx))
            if focus is not None:
                text += f" {arrow} {focus}"
            self.trace(clause, text)

    def _kind(self, f: Formula) -> str:
        """'par', 'bot', 'M', 'P' or 'a' (atom-like)."""
        match f:
            case Par():
                return "par"
            case Bot():
                return "bot"
            case With():
                return "M"
            case Tensor():
                return "P"
            case Plus():
                if self.regime is Regime.PRIMED and is_c_formula(f):
                    return "a"
                return "P"
        return "a"

    def alone(self, mode: str, f: Formula) -> int:
        key = (mode, f)
        value = self._alone.get(key)
        if value is None:
            value = self.run(mode, [f])
            self._alone[key] = value
        return value

    def ndcomp(self, cedent: Iterable[Formula]) -> int:
        return self.run("nd", list(cedent))

    def condcomp(self, cedent: Iterable[Formula]) -> int:
        return self.run("cond", list(cedent))

    def run(self, mode: str, ctx: list[Formula]) -> int:
        extra = 0
        ctx = list(ctx)
        while True:
            kinds = [self._kind(f) for f in ctx]
            if "par" in kinds or "bot" in kinds:
                i = next(j for j, k in enumerate(kinds) if k in ("par", "bot"))
                f = ctx.pop(i)
                if kinds[i] == "par":
                    self._fire(f"{mode}:par", ctx + [f])
                    ctx[i:i] = [f.left, f.right]
                else:
                    self._fire(f"{mode}:bot", ctx + [f])
                continue
            if all(k == "a" for k in kinds):
                self._fire(f"{mode}:atoms", ctx)
                return extra + 1
            has_m = "M" in kinds
            if mode == "nd":
                if has_m:
                    self._fire("nd:mixed", ctx)
                    extra += 1
                    mode = "cond"
                    continue
                p = self.order.least(f for f, k in zip(ctx, kinds) if k == "P")
                ctx.remove(p)
                self._fire("nd:dec", ctx, "v>", p)
                ctx.append(self._down(ctx, p))
                continue
            if not has_m:
                self._fire("cond:lift", ctx)
                extra += 1
                mode = "nd"
                continue
            m = self.order.least(f for f, k in zip(ctx, kinds) if k == "M")
            ctx.remove(m)
            self._fire("cond:codec", ctx, "^>", m)
            ctx.append(self._up(ctx, m))

    def _down(self, ctx: list[Formula], focus: Formula) -> Formula:
        """The formula that rejoins the cedent after a focus on ``focus``."""
        if self._kind(focus) == "P":
            clause = "nd:plus" if isinstance(focus, Plus) else "nd:tensor"
            self._fire(clause, ctx, "v>", focus)
            a, b = focus.left, focus.right
            return a if self._keeps_left("nd", a, b) else b
        self._fire("nd:release", ctx, "v>", focus)
        return focus

    def _keeps_left(self, mode: str, a: Formula, b: Formula) -> bool:
        """Whether ``a`` scores at least ``b`` standalone.

        Every cedent scores at least 1 and an atom-like or bot child scores
        exactly 1, so such a right child never beats the left one and the
        left value need not be computed.  Without this shortcut the nested
        layers of an encoding are each measured in full, cubic work overall.
        """
        if self._kind(b) in ("a", "bot"):
            return True
        return self.alone(mode, a) >= self.alone(mode, b)

    def _up(self, ctx: list[Formula], cofocus: Formula) -> Formula:
        if isinstance(cofocus, With):
            self._fire("cond:with", ctx, "^>", cofocus)
            a, b = cofocus.left, cofocus.right
            return a if self._keeps_left("cond", a, b) else b
        self._fire("cond:release", ctx, "^>", cofocus)
        return cofocus


def ndcomp(
    cedent: Iterable[Formula],
    order: FormulaOrder = DEFAULT_ORDER,
    regime: Regime = Regime.STANDARD,
    trace: Trace | None = None,
) -> int:
    return MeasureEngine(order, regime, trace).ndcomp(cedent)


def condcomp(
    cedent: Iterable[Formula],
    order: FormulaOrder = DEFAULT_ORDER,
    regime: Regime = Regime.STANDARD,
    trace: Trace | None = None,
) -> int:
    return MeasureEngine(order, regime, trace).condcomp(cedent)


@dataclass(frozen=True)
class MeasureResult:
    ndcomp: int
    condcomp: int
    regime: Regime
    side: Side
    level: int

    @property
    def label(self) -> tuple[Side, int]:
        return self.side, self.level

    def __str__(self) -> str:
        return f"{self.side.value}^f {self.level} (ndcomp={self.ndcomp}, condcomp={self.condcomp})"


def classify_lqtrans(
    a: Formula | Iterable[Formula],
    regime: Regime = Regime.STANDARD,
    order: FormulaOrder = DEFAULT_ORDER,
    trace: Trace | None = None,
) -> MeasureResult:
    """Both measures and the level they select: Sigma at ndcomp when
    ndcomp <= condcomp, otherwise Pi at condcomp."""
    cedent = [a] if isinstance(a, Formula) else list(a)
    engine = MeasureEngine(order, regime, trace)
    nd = engine.ndcomp(cedent)
    cond = engine.condcomp(cedent)
    if nd <= cond:
        return MeasureResult(nd, cond, regime, Side.SIGMA, nd)
    return MeasureResult(nd, cond, regime, Side.PI, cond)


def lqtrans_system(system: SystemId, regime: Regime) -> SystemId:
    """The focused calculus whose levels the classifier refers to."""
    if regime is Regime.PRIMED:
        return SystemId.FOCMALLPRIME
    if system is SystemId.FOCMALLPRIME:
        raise ValueError("focMALLprime goes with the primed regime")
    return system.focused_version


def decide_lqtrans(
    system: SystemId,
    a: Formula | Iterable[Formula],
    regime: Regime = Regime.STANDARD,
    budget: int = DEFAULT_BUDGET,
    discipline: Discipline = Discipline.BIFOCUSSED,
) -> tuple[bool, MeasureResult]:
    """Provability of ``a`` decided at the level picked by ``classify_lqtrans``."""
    cedent = [a] if isinstance(a, Formula) else list(a)
    result = classify_lqtrans(cedent, regime)
    decider = AlternationDecider(lqtrans_system(system, regime), discipline, budget)
    if result.side is Side.SIGMA:
        verdict = decider.sigma(cedent, result.level)
    else:
        verdict = decider.pi(cedent, result.level)
    return verdict, result
