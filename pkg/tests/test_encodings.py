import itertools
import random

import pytest

from mallph.corpus import (
    closed_prenex_sentences,
    doubling_qbfs,
    prefixes,
    quantifier_free_qbfs,
    random_mall_formula,
)
from mallph.encodings import (
    EncodingContext,
    EncodingError,
    RestrictedAffineProver,
    all_occurrences,
    assignment_cedent,
    guard_occurrences,
    matrix_size,
    negtrans,
    occurrence_at,
    one_sided,
    postrans,
    prime_translate,
    qltrans,
    qltrans_sequent,
    weakened_formulas,
)
from mallph.mall import syntax as m
from mallph.parsing import parse_mall, parse_qbf
from mallph.prover.checker import check_proof
from mallph.prover.proofs import ProofTree, SystemId
from mallph.prover.search import is_provable, prove
from mallph.prover.unfocused import UnfocusedProver
from mallph.qbf import syntax as q
from mallph.qbf.semantics import assignments, evaluate
from mallph.sequent import Sequent, parse_sequent

MALL, AMALL, FOCMALLW = SystemId.MALL, SystemId.AMALL, SystemId.FOCMALLW


def amall(cedent) -> bool:
    return is_provable(AMALL, Sequent(tuple(cedent)))


# -- quantifier-free matrices


def test_negtrans_and_postrans():
    assert negtrans(parse_qbf(r"x \/ ~y")) == parse_mall("x # ~y")
    assert postrans(parse_qbf(r"x /\ y")) == parse_mall("x * y")
    assert negtrans(parse_qbf(r"x /\ y")) == parse_mall("x & y")
    assert postrans(parse_qbf(r"x \/ y")) == parse_mall("x + y")


def test_matrix_translations_reject_constants_and_quantifiers():
    for bad in ("T", r"x \/ F", "exists x. x"):
        with pytest.raises(EncodingError):
            negtrans(parse_qbf(bad))
        with pytest.raises(EncodingError):
            postrans(parse_qbf(bad))


def test_assignment_cedent():
    x, y = m.Var("x"), m.Var("y")
    assert assignment_cedent({"x"}, ("x", "y"), 1) == [x, m.NegVar("y")]
    assert assignment_cedent({"x"}, ("x", "y"), 2) == [x, x, m.NegVar("y"), m.NegVar("y")]
    assert assignment_cedent({"x"}, (), 3) == []
    assert one_sided([x], [y]) == [m.NegVar("x"), y]


def test_matrix_encodings_agree_with_satisfaction():
    names = ("x", "y")
    for phi in quantifier_free_qbfs(names, 2):
        n = q.literal_count(phi)
        for alpha in assignments(names):
            truth = evaluate(phi, alpha)
            neg = amall(one_sided(assignment_cedent(alpha, names, 1), [negtrans(phi)]))
            pos = amall(one_sided(assignment_cedent(alpha, names, n), [postrans(phi)]))
            assert truth == neg == pos, (phi, alpha)


# -- qltrans


def test_qltrans_single_existential():
    a = qltrans(parse_qbf("exists x. x"))
    y = m.Var("_y1")
    expected = m.limp(m.limp(m.Var("x"), y), m.Plus(m.limp(m.Var("x"), y), m.limp(m.NegVar("x"), y)))
    assert a == expected
    assert str(a) == "((x * ~_y1) # ((~x # _y1) + (x # _y1)))"


def test_qltrans_universal_layer_uses_with():
    a = qltrans(parse_qbf(r"forall x. (x \/ ~x)"))
    assert isinstance(a, m.Par) and isinstance(a.left, m.With) and isinstance(a.right, m.With)
    assert a.left.left == parse_mall("x # ~x")


def test_qltrans_copies_guards_n_times():
    a = qltrans(parse_qbf(r"exists x. (x /\ x /\ x)"))
    guard = a.right.left
    assert guard == m.big_par([m.NegVar("x")] * 3 + [m.Var("_y1")])


def test_qltrans_of_constants():
    assert qltrans(parse_qbf(r"exists x. (x \/ T)")) is m.TOP
    assert qltrans(parse_qbf(r"forall x. (x /\ F)")) is m.ZERO
    assert qltrans(parse_qbf(r"exists x. (x /\ T)")) == qltrans(parse_qbf("exists x. x"))


def test_qltrans_without_quantifiers_is_postrans():
    phi = parse_qbf(r"x \/ y")
    assert qltrans(phi) == postrans(phi)


def test_fresh_names_distinct_and_disjoint():
    phi = parse_qbf(r"exists x. forall y. exists z. (x \/ y \/ z)")
    ctx = EncodingContext(n=matrix_size(phi))
    a = qltrans(phi, ctx)
    assert ctx.generated == ["_y1", "_y2", "_y3"]
    assert not set(ctx.generated) & {"x", "y", "z"}
    assert {"_y1", "_y2", "_y3"} <= m.variables_of(a)


def test_fresh_names_avoid_clashes():
    ctx = EncodingContext(n=1, used={"_y1"})
    assert ctx.fresh(1) == "_y1'"
    assert ctx.fresh(1) == "_y1''"


def test_qltrans_rejects_non_prenex():
    with pytest.raises(ValueError):
        qltrans(parse_qbf(r"x /\ exists y. y"))


def test_closed_sentences_true_iff_encoding_provable():
    for phi in closed_prenex_sentences(max_connectives=1):
        assert evaluate(phi) == amall([qltrans(phi)]), phi


def test_open_formulas_with_assignment_and_extra_atoms():
    rng = random.Random(83)
    matrices = list(quantifier_free_qbfs(("x", "y", "z"), 2))
    pres = prefixes(("x", "y"), 2)
    for _ in range(150):
        phi = q.with_prefix(rng.choice(pres), rng.choice(matrices))
        free = sorted(q.free_vars(phi))
        alpha = frozenset(x for x in free if rng.random() < 0.5)
        ys = rng.choice([(), ("w",), ("w", "v")])
        assert evaluate(phi, alpha) == amall(qltrans_sequent(phi, alpha, ys)), (phi, alpha, ys)


def test_qltrans_size_grows_quadratically():
    sizes = [qltrans(phi).size for phi in doubling_qbfs(5, start=2)]
    inputs = [q.connective_count(phi) + len(q.split_prefix(phi)[0]) for phi in doubling_qbfs(5, start=2)]
    for s, n in zip(sizes, inputs):
        assert s <= 4 * n * n


# -- literal guarding


def test_prime_translate():
    assert prime_translate(parse_mall("x # ~x")) == parse_mall("(bot + x) # (bot + ~x)")
    assert prime_translate(parse_mall("1 & top")) == parse_mall("1 & top")


def bare_literals(a) -> int:
    """Literal leaves not sitting directly under a ``bot +`` guard."""
    match a:
        case m.Plus(m.Bot(), b) if m.is_literal(b):
            return 0
        case m.Var() | m.NegVar():
            return 1
        case m.Par(l, r) | m.Tensor(l, r) | m.Plus(l, r) | m.With(l, r):
            return bare_literals(l) + bare_literals(r)
    return 0


def test_prime_translate_leaves_no_bare_literal():
    rng = random.Random(89)
    for _ in range(100):
        a = random_mall_formula(rng, rng.randint(0, 6))
        assert bare_literals(prime_translate(a)) == 0
        assert prime_translate(a).size == a.size + len(list(m.literals_of(a)))


def test_prime_translate_injective_on_sample():
    rng = random.Random(97)
    seen = {}
    for _ in range(300):
        a = random_mall_formula(rng, rng.randint(0, 4))
        image = prime_translate(a)
        assert seen.setdefault(image, a) is a


def test_primed_encoding_matches_affine_encoding():
    for phi in closed_prenex_sentences(max_connectives=1):
        a = qltrans(phi)
        primed = UnfocusedProver(MALL, defer_guards=True).provable((prime_translate(a),))
        assert amall([a]) == primed, phi


# -- occurrences and weakened formulas


def test_occurrences_address_subformulas():
    cedent = [parse_mall("(x * y) # z"), parse_mall("~x")]
    occs = all_occurrences(cedent)
    assert occs[:3] == [(0, ""), (0, "L"), (0, "LL")]
    assert occurrence_at(cedent, (0, "LR")) == m.Var("y")
    assert occurrence_at(cedent, (1, "")) == m.NegVar("x")


def test_guard_occurrences():
    cedent = [parse_mall("x # (y & z)")]
    assert guard_occurrences(cedent, {(0, "L"), (0, "R")}) == [parse_mall("(bot + x) # (bot + (y & z))")]


def test_identity_only_proof_weakens_nothing():
    p = prove(AMALL, parse_sequent("x # ~x"))
    assert weakened_formulas(p) == set()


def test_weakened_formulas_of_affine_proof():
    p = prove(AMALL, parse_sequent("x, ~x, y * z"))
    cedent = p.conclusion.context
    assert [occurrence_at(cedent, o) for o in weakened_formulas(p)] == [parse_mall("y * z")]


def test_weakened_formulas_in_focused_proof():
    p = prove(FOCMALLW, parse_sequent("1, x & y"))
    omega = weakened_formulas(p)
    cedent = list(p.conclusion.context)
    assert {str(occurrence_at(cedent, o)) for o in omega} <= {"x", "y", "(x & y)"}
    assert omega


def test_weakened_formulas_rejects_invalid_proof():
    with pytest.raises(EncodingError):
        weakened_formulas(ProofTree(AMALL, "wkid", parse_sequent("x, y")))


def test_encoding_proofs_weaken_only_literals():
    for phi in closed_prenex_sentences(max_connectives=1):
        if not evaluate(phi):
            continue
        p = prove(AMALL, Sequent.plain(qltrans(phi)))
        cedent = list(p.conclusion.context)
        for occ in weakened_formulas(p):
            assert m.is_literal(occurrence_at(cedent, occ)), (phi, occ)


def test_restricted_weakening_round_trip():
    rng = random.Random(101)
    leaves = (m.Var("x"), m.NegVar("x"), m.Var("y"), m.NegVar("y"), m.ONE, m.BOT)
    for _ in range(60):
        a = random_mall_formula(rng, rng.randint(0, 3), leaves)
        occs = all_occurrences([a])
        for r in range(len(occs) + 1):
            for omega in itertools.combinations(occs, r):
                restricted = RestrictedAffineProver(omega).provable([a])
                guarded = is_provable(MALL, Sequent(tuple(guard_occurrences([a], omega))))
                assert restricted == guarded, (a, omega)


def test_restricted_weakening_extremes():
    cedent = parse_sequent("x, ~x, y * 1").context
    every = all_occurrences(cedent)
    assert RestrictedAffineProver(every).provable(cedent) == is_provable(AMALL, Sequent(cedent))
    assert RestrictedAffineProver(()).provable(cedent) == is_provable(MALL, Sequent(cedent))


def test_affine_proof_of_xor_encoding_checks():
    p = prove(AMALL, Sequent.plain(qltrans(parse_qbf(r"forall x. exists y. ((x /\ ~y) \/ (~x /\ y))"))))
    assert p is not None and check_proof(p)
