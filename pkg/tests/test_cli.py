import io
import random

import pytest

from mallph import cli
from mallph.corpus import random_cedent, random_mall_formula, strict_sentence
from mallph.encodings import prime_translate, qltrans
from mallph.hierarchy import classify_lqtrans
from mallph.parsing import parse_qbf
from mallph.prover.proofs import SystemId
from mallph.prover.search import prove
from mallph.qbf import syntax as q
from mallph.qbf.btt import btt_prove
from mallph.qbf.semantics import evaluate
from mallph.sequent import Sequent

XOR = r"forall x. exists y. ((x /\ ~y) \/ (~x /\ y))"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_true(capsys):
    assert run(capsys, "eval", XOR) == (0, "true\n", "")


def test_eval_false_with_assignment(capsys):
    code, out, _ = run(capsys, "eval", r"x /\ y", "--assign", "x")
    assert (code, out) == (2, "false\n")


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "eval", "exists x.")
    assert code == 1 and "position 9" in err


def test_btt_prints_proof(capsys):
    code, out, _ = run(capsys, "btt", XOR)
    assert code == 0 and out == btt_prove(parse_qbf(XOR)).serialize()
    assert run(capsys, "btt", "F")[:2] == (2, "UNPROVABLE\n")


def test_prove_and_check_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "prove", "--system", "amall", "x # ~x")
    assert code == 0 and out.startswith("# system: aMALL")
    path = tmp_path / "p.txt"
    path.write_text(out)
    assert run(capsys, "check", str(path))[:2] == (0, "ok\n")
    code, out, _ = run(capsys, "check", str(path), "--system", "focmall")
    assert code == 2 and out.startswith("invalid")


def test_prove_unprovable_and_budget(capsys):
    assert run(capsys, "prove", "1, 1")[:2] == (2, "UNPROVABLE\n")
    big = "((x * y) * (x * y)) * (x * y), ~x, ~x, ~x, ~y, ~y, ~y"
    assert run(capsys, "prove", big, "--nodes", "3")[0] == 3


def test_encode_and_classify(capsys):
    code, out, _ = run(capsys, "encode", "qbf-to-amall", r"exists x. forall y. (x \/ ~y)")
    assert code == 0
    code, out, _ = run(capsys, "classify", out.strip())
    assert code == 0 and out.startswith("Sigma^f 2")


def test_classify_trace(capsys):
    code, out, _ = run(capsys, "classify", "x + y", "--trace")
    lines = out.splitlines()
    assert lines[0].startswith("nd:dec: ") and lines[-1].startswith("Sigma^f")


def test_decide(capsys):
    assert run(capsys, "decide", "x")[:2] == (2, "false at Sigma^f 1\n")
    a = str(qltrans(parse_qbf("exists x. x")))
    assert run(capsys, "decide", a)[:2] == (0, "true at Sigma^f 1\n")


def test_input_from_file_and_stdin(capsys, tmp_path, monkeypatch):
    path = tmp_path / "phi.txt"
    path.write_text(XOR)
    assert run(capsys, "eval", str(path))[:2] == (0, "true\n")
    monkeypatch.setattr("sys.stdin", io.StringIO("x # ~x"))
    assert run(capsys, "encode", "prime", "-")[1] == "((bot + x) # (bot + ~x))\n"


def test_corpus_is_deterministic(capsys):
    first = run(capsys, "corpus", "strict", "--size", "2", "--count", "5", "--seed", "4")[1]
    second = run(capsys, "corpus", "strict", "--size", "2", "--count", "5", "--seed", "4")[1]
    other = run(capsys, "corpus", "strict", "--size", "2", "--count", "5", "--seed", "5")[1]
    assert first == second != other
    assert len(first.splitlines()) == 5
    for family in cli.FAMILIES:
        code, out, _ = run(capsys, "corpus", family, "--size", "1", "--count", "3")
        assert code == 0 and 1 <= len(out.splitlines()) <= 3


def test_cli_matches_library_on_random_inputs(capsys):
    rng = random.Random(17)
    for _ in range(50):
        match rng.randrange(5):
            case 0:
                phi = strict_sentence(rng, rng.choice([q.Exists, q.Forall]), rng.randint(1, 2))
                expected = "true" if evaluate(phi) else "false"
                assert run(capsys, "eval", str(phi))[1] == expected + "\n"
            case 1:
                cedent = random_cedent(rng, 4)
                text = ", ".join(map(str, cedent))
                p = prove(SystemId.MALL, Sequent(cedent))
                expected = "UNPROVABLE\n" if p is None else p.serialize()
                assert run(capsys, "prove", text)[1] == expected
            case 2:
                a = random_mall_formula(rng, rng.randint(0, 5))
                assert run(capsys, "encode", "prime", str(a))[1] == f"{prime_translate(a)}\n"
            case 3:
                a = random_mall_formula(rng, rng.randint(0, 6))
                assert run(capsys, "classify", str(a))[1] == f"{classify_lqtrans(a)}\n"
            case 4:
                phi = strict_sentence(rng, q.Exists, rng.randint(1, 2))
                out = run(capsys, "encode", "qbf-to-amall", str(phi))[1]
                assert out == f"{qltrans(phi)}\n"


def test_unknown_verb_exits(capsys):
    with pytest.raises(SystemExit):
        cli.main(["frobnicate"])
