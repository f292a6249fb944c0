"""Independent rule-by-rule checking of proof trees.

The checker never calls a prover.  Each node is matched against the rule
schema named by its label, in the calculus named by the tree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from mallph.mall.syntax import (
    ONE,
    Bot,
    Formula,
    NegVar,
    Par,
    Plus,
    Tensor,
    Top,
    Var,
    With,
    is_c_formula,
    literals_of,
)
from mallph.prover.proofs import Discipline, ProofTree, SystemId
from mallph.sequent import Arrow


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    path: tuple[int, ...] = field(default=())
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        where = "root" if not self.path else "root/" + "/".join(map(str, self.path))
        return f"invalid at {where}: {self.reason}"


class _Invalid(Exception):
    pass


def _fail(reason: str):
    raise _Invalid(reason)


def check_proof(p: ProofTree, discipline: Discipline | None = None) -> CheckResult:
    """Check every node of ``p``; ``discipline`` adds the singleton-focus limits."""
    if discipline is not None and not p.system.focused:
        return CheckResult(False, (), "disciplines apply to focused systems only")
    stack: list[tuple[ProofTree, tuple[int, ...]]] = [(p, ())]
    while stack:
        node, path = stack.pop()
        if node.system is not p.system:
            return CheckResult(False, path, f"node belongs to {node.system.value}, not {p.system.value}")
        try:
            if p.system.focused:
                _check_focused(node, discipline)
            else:
                _check_unfocused(node)
        except _Invalid as exc:
            return CheckResult(False, path, f"{node.rule}: {exc}")
        for i, child in enumerate(node.premisses):
            stack.append((child, path + (i,)))
    return CheckResult(True)


# -- multiset helpers


def _bag(formulas) -> Counter:
    return Counter(formulas)


def _minus(bag: Counter, f: Formula) -> Counter:
    if bag[f] <= 0:
        _fail(f"{f} does not occur")
    out = bag.copy()
    out[f] -= 1
    if not out[f]:
        del out[f]
    return out


def _arity(node: ProofTree, n: int):
    if len(node.premisses) != n:
        _fail(f"expected {n} premisses, found {len(node.premisses)}")


def _complementary(bag: Counter) -> bool:
    return any(isinstance(f, Var) and NegVar(f.name) in bag for f in bag)


def _one_premiss_principal(concl: Counter, prem: Counter, candidates, replace) -> None:
    """Some candidate principal formula ``f`` gives ``prem == concl - f + replace(f)``."""
    for f in candidates:
        if concl[f] and _minus(concl, f) + _bag(replace(f)) == prem:
            return
    _fail("premiss does not match any instance")


# -- initial sequents shared by all calculi


def _check_initial(rule: str, system: SystemId, bag: Counter) -> None:
    size = sum(bag.values())
    affine = system.affine
    match rule:
        case "top":
            if not any(isinstance(f, Top) for f in bag):
                _fail("no top in conclusion")
        case "id" | "wkid":
            if rule == "wkid" and not affine:
                _fail(f"wkid is not a rule of {system.value}")
            if not _complementary(bag):
                _fail("no complementary pair of literals")
            if not affine and size != 2:
                _fail("conclusion must be exactly x, ~x")
        case "one" | "w1":
            if rule == "w1" and not affine:
                _fail(f"w1 is not a rule of {system.value}")
            if ONE not in bag:
                _fail("no 1 in conclusion")
            if not affine and size != 1:
                _fail("conclusion must be exactly 1")
        case "cid" | "c1":
            if system is not SystemId.FOCMALLPRIME:
                _fail(f"{rule} is not a rule of {system.value}")
            _check_c_initial(rule, bag)
        case _:
            _fail("unknown rule")


def _is_c(f: Formula) -> bool:
    return isinstance(f, Bot) or (isinstance(f, Plus) and is_c_formula(f))


def _check_c_initial(rule: str, bag: Counter) -> None:
    items = list(bag.elements())
    others = [f for f in items if not _is_c(f)]
    cs = [f for f in items if _is_c(f)]
    if rule == "c1":
        if others != [ONE]:
            _fail("conclusion must be c-formulas and a single 1")
        return
    if len(others) == 2:
        if not _complementary(_bag(others)):
            _fail("non-c part must be x, ~x")
        return
    if len(others) == 1:
        lit = others[0]
        if not isinstance(lit, (Var, NegVar)):
            _fail("non-c part must be a literal")
        dual = NegVar(lit.name) if isinstance(lit, Var) else Var(lit.name)
        if not any(dual in set(literals_of(c)) for c in cs):
            _fail(f"no c-formula contains {dual}")
        return
    if others:
        _fail("too many formulas outside the c-formulas")
    for i, c in enumerate(cs):
        for j, d in enumerate(cs):
            if i != j and any(
                isinstance(l, Var) and NegVar(l.name) in set(literals_of(d)) for l in literals_of(c)
            ):
                return
    _fail("no pair c(x), d(~x) of c-formula occurrences")


# -- unfocused calculi


def _check_unfocused(node: ProofTree) -> None:
    concl = node.conclusion
    if not concl.is_plain:
        _fail("unfocused sequents have no arrow")
    for q in node.premisses:
        if not q.conclusion.is_plain:
            _fail("unfocused sequents have no arrow")
    bag = _bag(concl.context)
    prems = [_bag(q.conclusion.context) for q in node.premisses]
    rule = node.rule
    if rule in ("top", "id", "wkid", "one", "w1"):
        _arity(node, 0)
        _check_initial(rule, node.system, bag)
        return
    _check_logical(rule, node, bag, prems)


def _check_logical(rule: str, node: ProofTree, bag: Counter, prems: list[Counter]) -> None:
    """Rules whose conclusion and premisses are cedents of the same kind."""
    match rule:
        case "bot":
            _arity(node, 1)
            _one_premiss_principal(bag, prems[0], [f for f in bag if isinstance(f, Bot)], lambda f: [])
        case "par":
            _arity(node, 1)
            _one_premiss_principal(
                bag, prems[0], [f for f in bag if isinstance(f, Par)], lambda f: [f.left, f.right]
            )
        case "plus0" | "plus1":
            _arity(node, 1)
            side = (lambda f: [f.left]) if rule == "plus0" else (lambda f: [f.right])
            _one_premiss_principal(bag, prems[0], [f for f in bag if isinstance(f, Plus)], side)
        case "with":
            _arity(node, 2)
            for f in bag:
                if isinstance(f, With):
                    rest = _minus(bag, f)
                    if rest + _bag([f.left]) == prems[0] and rest + _bag([f.right]) == prems[1]:
                        return
            _fail("premisses do not match any instance")
        case "tensor":
            _arity(node, 2)
            for f in bag:
                if isinstance(f, Tensor) and prems[0][f.left] and prems[1][f.right]:
                    if _minus(prems[0], f.left) + _minus(prems[1], f.right) == _minus(bag, f):
                        return
            _fail("premisses do not split the context of any instance")
        case _:
            _fail("unknown rule")


# -- focused calculi


def _atomlike(f: Formula, primed: bool) -> bool:
    if f.size == 0:
        return True
    return primed and isinstance(f, Plus) and is_c_formula(f)


def _positive(f: Formula, primed: bool) -> bool:
    if isinstance(f, Tensor):
        return True
    return isinstance(f, Plus) and not (primed and is_c_formula(f))


def _check_focused(node: ProofTree, discipline: Discipline | None) -> None:
    system = node.system
    primed = system is SystemId.FOCMALLPRIME
    concl = node.conclusion
    rule = node.rule
    prem_seqs = [q.conclusion for q in node.premisses]

    if concl.is_plain:
        bag = _bag(concl.context)
        if rule in ("top", "id", "wkid", "one", "w1", "cid", "c1"):
            _arity(node, 0)
            _check_initial(rule, system, bag)
            return
        if rule in ("bot", "par"):
            _arity(node, 1)
            if not prem_seqs[0].is_plain:
                _fail("premiss must be plain")
            _check_logical(rule, node, bag, [_bag(prem_seqs[0].context)])
            return
        if rule in ("dec", "codec"):
            _arity(node, 1)
            prem = prem_seqs[0]
            wanted = Arrow.DOWN if rule == "dec" else Arrow.UP
            if prem.arrow is not wanted:
                _fail(f"premiss must carry {wanted.value}")
            if _bag(prem.context) + _bag(prem.foci) != bag:
                _fail("premiss is not a rearrangement of the conclusion")
            if rule == "dec":
                for f in bag:
                    if not (_atomlike(f, primed) or _positive(f, primed)):
                        _fail(f"{f} may not stay in the context of a decide")
                if not all(_positive(f, primed) for f in prem.foci):
                    _fail("every focus must be positive")
                if discipline is not None and discipline.single_focus and len(prem.foci) != 1:
                    _fail("focussed proofs decide on one formula")
            else:
                for f in bag:
                    if not (_atomlike(f, primed) or _positive(f, primed) or isinstance(f, With)):
                        _fail(f"{f} may not stay in the context of a co-decide")
                if not all(isinstance(f, With) for f in prem.foci):
                    _fail("every co-focus must be a with-formula")
                if discipline is not None and discipline.single_cofocus and len(prem.foci) != 1:
                    _fail("co-focussed proofs co-decide on one formula")
            return
        _fail("not a rule for plain sequents")

    ctx = _bag(concl.context)
    foci = _bag(concl.foci)
    if concl.arrow is Arrow.DOWN:
        match rule:
            case "plus0" | "plus1":
                _arity(node, 1)
                prem = prem_seqs[0]
                if prem.arrow is not Arrow.DOWN or _bag(prem.context) != ctx:
                    _fail("premiss must keep the context under v>")
                side = (lambda f: [f.left]) if rule == "plus0" else (lambda f: [f.right])
                cands = [f for f in foci if _positive(f, primed) and isinstance(f, Plus)]
                _one_premiss_principal(foci, _bag(prem.foci), cands, side)
            case "tensor":
                _arity(node, 2)
                left, right = prem_seqs
                if left.arrow is not Arrow.DOWN or right.arrow is not Arrow.DOWN:
                    _fail("premisses must be under v>")
                if _bag(left.context) + _bag(right.context) != ctx:
                    _fail("premiss contexts do not split the context")
                lf, rf = _bag(left.foci), _bag(right.foci)
                for f in foci:
                    if isinstance(f, Tensor) and lf[f.left] and rf[f.right]:
                        if _minus(lf, f.left) + _minus(rf, f.right) == _minus(foci, f):
                            return
                _fail("premiss foci do not split any instance")
            case "rel":
                _arity(node, 1)
                prem = prem_seqs[0]
                if not prem.is_plain or _bag(prem.context) != ctx + foci:
                    _fail("premiss must be the plain union of context and foci")
                for f in foci:
                    if not (_atomlike(f, primed) or isinstance(f, (Par, With))):
                        _fail(f"cannot release {f}")
            case _:
                _fail("not a rule for v> sequents")
        return

    match rule:
        case "with":
            _arity(node, 2)
            left, right = prem_seqs
            if left.arrow is not Arrow.UP or right.arrow is not Arrow.UP:
                _fail("premisses must be under ^>")
            if _bag(left.context) != ctx or _bag(right.context) != ctx:
                _fail("premisses must keep the context")
            lf, rf = _bag(left.foci), _bag(right.foci)
            for f in foci:
                if isinstance(f, With):
                    rest = _minus(foci, f)
                    if rest + _bag([f.left]) == lf and rest + _bag([f.right]) == rf:
                        return
            _fail("premisses do not match any instance")
        case "corel":
            _arity(node, 1)
            prem = prem_seqs[0]
            if not prem.is_plain or _bag(prem.context) != ctx + foci:
                _fail("premiss must be the plain union of context and co-foci")
            for f in foci:
                if isinstance(f, With):
                    _fail(f"cannot co-release {f}")
        case _:
            _fail("not a rule for ^> sequents")
