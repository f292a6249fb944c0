"""Command-line front end.

Exit status: 0 success, 1 malformed input, 2 false / unprovable / invalid,
3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from mallph import corpus
from mallph.encodings import prime_translate, qltrans
from mallph.hierarchy import DEFAULT_ORDER, FormulaOrder, classify_lqtrans, decide_lqtrans
from mallph.mall.syntax import Regime
from mallph.parsing import ParseError, parse_mall, parse_qbf
from mallph.prover.cedents import BudgetExceeded
from mallph.prover.checker import check_proof
from mallph.prover.proofs import Discipline, SystemId, parse_proof
from mallph.prover.search import prove
from mallph.qbf.btt import btt_prove
from mallph.qbf.semantics import evaluate, instantiate_simplify
from mallph.sequent import parse_sequent

OK, INPUT_ERROR, NEGATIVE, BUDGET = 0, 1, 2, 3

SYSTEMS = {
    "mall": SystemId.MALL,
    "amall": SystemId.AMALL,
    "focmall": SystemId.FOCMALL,
    "focmallw": SystemId.FOCMALLW,
    "focmallprime": SystemId.FOCMALLPRIME,
}
DISCIPLINES = {d.value: d for d in Discipline}
FAMILIES = ("qf", "closed", "matrices", "mall", "strict", "cedents")


def read_input(arg: str) -> str:
    """The argument itself, a file's contents, or stdin for ``-``."""
    if arg == "-":
        return sys.stdin.read()
    path = Path(arg)
    if len(arg) < 256 and path.is_file():
        return path.read_text()
    return arg


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _assignment(text: str | None) -> frozenset[str]:
    if not text:
        return frozenset()
    return frozenset(x.strip() for x in text.split(",") if x.strip())


def cmd_eval(args) -> int:
    phi = parse_qbf(read_input(args.formula))
    value = evaluate(phi, _assignment(args.assign))
    _out("true" if value else "false")
    return OK if value else NEGATIVE


def cmd_btt(args) -> int:
    p = btt_prove(parse_qbf(read_input(args.formula)))
    if p is None:
        _out("UNPROVABLE")
        return NEGATIVE
    _out(p.serialize())
    return OK


def cmd_prove(args) -> int:
    system = SYSTEMS[args.system]
    s = parse_sequent(read_input(args.sequent))
    p = prove(system, s, DISCIPLINES[args.discipline], args.nodes)
    if p is None:
        _out("UNPROVABLE")
        return NEGATIVE
    _out(p.serialize())
    return OK


def cmd_check(args) -> int:
    system = SYSTEMS[args.system] if args.system else None
    p = parse_proof(read_input(args.proof), system)
    discipline = DISCIPLINES[args.discipline] if args.discipline else None
    result = check_proof(p, discipline)
    _out(str(result))
    return OK if result else NEGATIVE


def cmd_encode(args) -> int:
    text = read_input(args.formula)
    if args.kind == "qbf-to-amall":
        phi = parse_qbf(text)
        if args.assign is not None:
            phi = instantiate_simplify(phi, _assignment(args.assign))
        _out(str(qltrans(phi)))
    else:
        _out(str(prime_translate(parse_mall(text))))
    return OK


def _order(args) -> FormulaOrder:
    return DEFAULT_ORDER if args.order is None else FormulaOrder(args.order)


def _trace(args):
    if not args.trace:
        return None
    return lambda clause, text: sys.stdout.write(f"{clause}: {text}\n")


def cmd_classify(args) -> int:
    a = parse_mall(read_input(args.formula))
    _out(str(classify_lqtrans(a, Regime(args.regime), _order(args), _trace(args))))
    return OK


def cmd_decide(args) -> int:
    a = parse_mall(read_input(args.formula))
    regime = Regime(args.regime)
    verdict, result = decide_lqtrans(
        SYSTEMS[args.system], a, regime, args.nodes, DISCIPLINES[args.discipline]
    )
    _out(f"{'true' if verdict else 'false'} at {result.side.value}^f {result.level}")
    return OK if verdict else NEGATIVE


def cmd_corpus(args) -> int:
    rng = random.Random(args.seed)
    match args.family:
        case "qf":
            items = corpus.quantifier_free_qbfs(max_connectives=args.size)
        case "closed":
            items = corpus.closed_prenex_sentences(max_connectives=args.size)
        case "matrices":
            items = corpus.quantifier_free_qbfs(("x", "y"), args.size)
        case "mall":
            items = corpus.mall_formulas_up_to_symmetry(args.size)
        case "strict":
            items = (
                corpus.strict_sentence(rng, corpus.q.Exists, args.size) for _ in range(args.count)
            )
        case "cedents":
            items = (
                ", ".join(map(str, corpus.random_cedent(rng, args.size))) for _ in range(args.count)
            )
    limit = args.count if args.family not in ("strict", "cedents") else None
    for i, item in enumerate(items):
        if limit is not None and i >= limit:
            break
        sys.stdout.write(f"{item}\n")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mallph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def search_flags(p, system="mall"):
        p.add_argument("--system", choices=SYSTEMS, default=system)
        p.add_argument("--discipline", choices=DISCIPLINES, default="bifoc")
        p.add_argument("--nodes", type=int, default=10**6, help="search budget")

    p = sub.add_parser("eval", help="truth value of a QBF")
    p.add_argument("formula")
    p.add_argument("--assign", help="comma-separated true variables")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("btt", help="Boolean truth tree proof of a closed prenex QBF")
    p.add_argument("formula")
    p.set_defaults(run=cmd_btt)

    p = sub.add_parser("prove", help="search for a proof of a sequent")
    p.add_argument("sequent")
    search_flags(p)
    p.set_defaults(run=cmd_prove)

    p = sub.add_parser("check", help="check a proof file")
    p.add_argument("proof")
    p.add_argument("--system", choices=SYSTEMS, help="override the file header")
    p.add_argument("--discipline", choices=DISCIPLINES)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("encode", help="translate a formula")
    p.add_argument("kind", choices=("qbf-to-amall", "prime"))
    p.add_argument("formula")
    p.add_argument("--assign", help="instantiate free variables first (qbf-to-amall)")
    p.set_defaults(run=cmd_encode)

    for verb, run, help_text in (
        ("classify", cmd_classify, "ndcomp, condcomp and the level they select"),
        ("decide", cmd_decide, "provability decided at the classified level"),
    ):
        p = sub.add_parser(verb, help=help_text)
        p.add_argument("formula")
        p.add_argument("--regime", choices=[r.value for r in Regime], default="standard")
        if verb == "classify":
            p.add_argument("--trace", action="store_true")
            p.add_argument("--order", type=int, help="seed of a random formula order")
        else:
            search_flags(p, system="amall")
        p.set_defaults(run=run)

    p = sub.add_parser("corpus", help="stream a test family, one item per line")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--size", type=int, default=2, help="connectives, or blocks for strict")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
