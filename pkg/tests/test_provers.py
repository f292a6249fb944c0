import random
from collections import Counter

import pytest

from mallph.corpus import MALL_LEAVES, random_cedent, random_mall_formula
from mallph.encodings import prime_translate
from mallph.mall import syntax as m
from mallph.parsing import parse_mall
from mallph.prover.alternation import deterministic_saturate
from mallph.prover.cedents import BudgetExceeded
from mallph.prover.checker import check_proof
from mallph.prover.proofs import Discipline, ProofTree, SystemId, parse_proof
from mallph.prover.search import is_provable, prove
from mallph.prover.unfocused import UnfocusedProver, prove_unfocused
from mallph.sequent import Arrow, Sequent, parse_sequent

MALL, AMALL = SystemId.MALL, SystemId.AMALL
FOCMALL, FOCMALLW, PRIME = SystemId.FOCMALL, SystemId.FOCMALLW, SystemId.FOCMALLPRIME
BIFOC = Discipline.BIFOCUSSED


def seq(text: str) -> Sequent:
    return parse_sequent(text)


def shuffled_saturate(formulas, rng):
    """Unfold par and delete bot in a random order."""
    todo = list(formulas)
    done = []
    while todo:
        f = todo.pop(rng.randrange(len(todo)))
        match f:
            case m.Par(a, b):
                todo += [a, b]
            case m.Bot():
                pass
            case _:
                done.append(f)
    return Counter(done)


# -- sequents


def test_sequent_text_round_trip():
    for text in ("=> x, ~x", "=> x v> (y * z)", "=> ^> (x & y)", "=>"):
        assert str(parse_sequent(text)) == text


def test_sequent_multiset_equality():
    assert seq("x, y, x") == seq("y, x, x")
    assert seq("x, y") != seq("x, y, y")


def test_focused_sequent_needs_foci():
    with pytest.raises(ValueError):
        Sequent((m.Var("x"),), Arrow.DOWN, ())


# -- deterministic saturation


def test_saturate_unfolds_pars():
    assert deterministic_saturate(seq("(x # y), (z # ~x)")) == seq("x, y, z, ~x")


def test_saturate_fixpoint_on_literals():
    assert deterministic_saturate(seq("x, ~x")) == seq("x, ~x")


def test_saturate_order_independent():
    rng = random.Random(5)
    for _ in range(500):
        cedent = random_cedent(rng, 8)
        expected = Counter(deterministic_saturate(Sequent(cedent)).context)
        assert shuffled_saturate(cedent, rng) == expected


# -- proof search basics


def test_identity_par():
    p = prove(MALL, seq("x # ~x"))
    assert p is not None and check_proof(p)


def test_one_one_needs_weakening():
    assert prove(MALL, seq("1, 1")) is None
    p = prove(AMALL, seq("1, 1"))
    assert p is not None and check_proof(p) and "w1" in p.rules_used()
    assert not is_provable(FOCMALL, seq("1, 1"))
    assert is_provable(FOCMALLW, seq("1, 1"))


def test_top_absorbs_context():
    assert is_provable(MALL, seq("top, x, y * z"))


def test_zero_has_no_rule():
    assert not is_provable(AMALL, seq("0"))
    assert not is_provable(FOCMALLW, seq("0, x"))


def test_with_requires_both_branches():
    assert not is_provable(MALL, seq("(x & y), ~x"))
    assert is_provable(MALL, seq("(x & y), ~x + ~y"))
    assert is_provable(MALL, seq("(x & ~x), (~x + x)"))


def test_tensor_splits_context():
    assert is_provable(MALL, seq("x * y, ~x, ~y"))
    assert not is_provable(MALL, seq("x * x, ~x"))


def test_budget_is_distinct_from_unprovable():
    big = parse_mall("((x * y) * (x * y)) * ((x * y) * (x * y))")
    with pytest.raises(BudgetExceeded):
        prove(MALL, Sequent.plain(big, *[m.NegVar("x")] * 4, *[m.NegVar("y")] * 4), budget=5)


def test_unfocused_rejects_arrows():
    with pytest.raises(ValueError):
        prove(MALL, seq("x v> ~x"))


def test_proofs_pass_checker_and_serialize():
    rng = random.Random(7)
    systems = (MALL, AMALL, FOCMALL, FOCMALLW, PRIME)
    for _ in range(200):
        s = Sequent(random_cedent(rng, 5))
        for system in systems:
            p = prove(system, s)
            if p is None:
                continue
            assert check_proof(p, BIFOC if system.focused else None), (system, s)
            assert parse_proof(p.serialize()) == p


def test_eager_and_naive_unfocused_agree():
    rng = random.Random(11)
    for _ in range(300):
        s = Sequent(random_cedent(rng, 4))
        for system in (MALL, AMALL):
            eager = UnfocusedProver(system, "eager").provable(s.context)
            naive = UnfocusedProver(system, "naive").provable(s.context)
            assert eager == naive, (system, s)


def test_search_depth_bounded_by_size():
    rng = random.Random(13)
    for _ in range(200):
        cedent = random_cedent(rng, 6)
        size = sum(f.size for f in cedent)
        for system in (MALL, FOCMALL):
            p = prove(system, Sequent(cedent))
            if p is not None:
                # each connective costs at most a decide, a step and a release
                assert p.height() <= 3 * size + 2


# -- checker


def test_dec_without_focus_is_rejected():
    p = ProofTree(FOCMALL, "dec", seq("x, ~x"), (ProofTree(FOCMALL, "id", seq("x, ~x")),))
    assert not check_proof(p)


def test_identity_with_context():
    assert not check_proof(ProofTree(FOCMALL, "id", seq("y, x, ~x")))
    assert not check_proof(ProofTree(FOCMALL, "wkid", seq("y, x, ~x")))
    assert check_proof(ProofTree(FOCMALLW, "wkid", seq("y, x, ~x")))


def test_wrong_tensor_split_is_rejected():
    good = prove(MALL, seq("x * y, ~x, ~y"))
    left, right = good.premisses
    swapped = ProofTree(MALL, good.rule, good.conclusion, (right, left))
    assert not check_proof(swapped)  # premisses follow the operand order
    bad = ProofTree(MALL, good.rule, seq("x * y, ~x, ~y, z"), good.premisses)
    assert not check_proof(bad)


def test_multi_focus_rejected_by_bifocussed_discipline():
    text = """# system: focMALL
dec | => (x * y), (~x * ~y), x, y, ~x, ~y
  tensor | => x, y, ~x, ~y v> (x * y), (~x * ~y)
"""
    p = parse_proof(text)
    assert not check_proof(p, BIFOC)


EXISTS_X_PROOF = """# system: focMALLw
par | => ((x * ~_y1) # ((~x # _y1) + (x # _y1)))
  dec | => ((~x # _y1) + (x # _y1)), (x * ~_y1)
    plus0 | => (x * ~_y1) v> ((~x # _y1) + (x # _y1))
      rel | => (x * ~_y1) v> (~x # _y1)
        par | => (x * ~_y1), (~x # _y1)
          dec | => (x * ~_y1), _y1, ~x
            tensor | => _y1, ~x v> (x * ~_y1)
              rel | => ~x v> x
                wkid | => x, ~x
              rel | => _y1 v> ~_y1
                wkid | => _y1, ~_y1
"""


def test_hand_built_exists_layer_proof_is_bifocussed():
    p = parse_proof(EXISTS_X_PROOF)
    assert check_proof(p, BIFOC)
    assert not check_proof(parse_proof(EXISTS_X_PROOF, FOCMALL))


def test_check_reports_path():
    bad = EXISTS_X_PROOF.replace("wkid | => _y1, ~_y1", "wkid | => _y1, ~x")
    result = check_proof(parse_proof(bad))
    # the broken leaf no longer matches its parent release step
    assert not result and result.path == (0, 0, 0, 0, 0, 0, 1)
    assert result.reason.startswith("rel")


# -- focusing, weakening, primed adequacy


def test_focusing_on_random_formulas():
    rng = random.Random(17)
    for _ in range(400):
        s = Sequent((random_mall_formula(rng, rng.randint(0, 5)),))
        assert is_provable(MALL, s) == is_provable(FOCMALL, s, BIFOC)
        assert is_provable(AMALL, s) == is_provable(FOCMALLW, s, BIFOC)


def test_disciplines_agree():
    rng = random.Random(19)
    for _ in range(200):
        s = Sequent(random_cedent(rng, 5))
        verdicts = {d: is_provable(FOCMALL, s, d) for d in Discipline}
        assert len(set(verdicts.values())) == 1, (s, verdicts)


def test_weakening_admissible_in_affine_mall():
    rng = random.Random(23)
    checked = 0
    while checked < 200:
        cedent = random_cedent(rng, 4)
        if not is_provable(AMALL, Sequent(cedent)):
            continue
        extra = rng.choice(MALL_LEAVES + (random_mall_formula(rng, 2),))
        assert is_provable(AMALL, Sequent(cedent + (extra,)))
        checked += 1


def test_primed_focused_matches_mall():
    rng = random.Random(29)
    for _ in range(300):
        a = random_mall_formula(rng, rng.randint(0, 4), MALL_LEAVES[:4] + (m.BOT, m.ONE))
        for f in (a, prime_translate(a), m.Plus(m.BOT, a)):
            assert is_provable(PRIME, Sequent.plain(f)) == is_provable(MALL, Sequent.plain(f)), f


def test_primed_prover_uses_c_initial_sequents():
    p = prove(PRIME, seq("(bot + x), (bot + ~x), (bot + y)"))
    assert p is not None and check_proof(p)
    assert p.rules_used() & {"cid", "c1"}


def test_guard_deferral_agrees_with_plain_search():
    rng = random.Random(31)
    for _ in range(200):
        f = prime_translate(random_mall_formula(rng, rng.randint(0, 4), MALL_LEAVES[:4]))
        s = Sequent.plain(f)
        fast = prove_unfocused(MALL, s, defer_guards=True)
        assert (fast is not None) == is_provable(MALL, s)
        if fast is not None:
            assert check_proof(fast)
