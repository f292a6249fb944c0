"""One entry point for proof search in any of the five calculi."""

from __future__ import annotations

from mallph.prover.cedents import BudgetExceeded
from mallph.prover.focused import FocusedProver, sequent_state
from mallph.prover.proofs import Discipline, ProofTree, SystemId
from mallph.prover.unfocused import DEFAULT_BUDGET, UnfocusedProver
from mallph.sequent import Sequent


def make_prover(
    system: SystemId,
    discipline: Discipline = Discipline.BIFOCUSSED,
    budget: int = DEFAULT_BUDGET,
):
    if system.focused:
        return FocusedProver(system, discipline, budget)
    return UnfocusedProver(system, "eager", budget)


def prove(
    system: SystemId,
    sequent: Sequent,
    discipline: Discipline = Discipline.BIFOCUSSED,
    budget: int = DEFAULT_BUDGET,
) -> ProofTree | None:
    """A proof of ``sequent`` in ``system``, or None if there is none.

    Raises ``BudgetExceeded`` when the search needs more than ``budget``
    states; that outcome says nothing about provability.
    """
    prover = make_prover(system, discipline, budget)
    if system.focused:
        return prover.proof(sequent_state(sequent))
    if not sequent.is_plain:
        raise ValueError("unfocused calculi have no focus arrows")
    return prover.proof(sequent.context)


def is_provable(
    system: SystemId,
    sequent: Sequent,
    discipline: Discipline = Discipline.BIFOCUSSED,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    prover = make_prover(system, discipline, budget)
    if system.focused:
        return prover.provable(sequent_state(sequent))
    return prover.provable(sequent.context)


__all__ = ["BudgetExceeded", "is_provable", "make_prover", "prove"]
