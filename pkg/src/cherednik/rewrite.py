"""Word rewriting for the abstractly presented algebras H_III^{D7} and H_III^{D8}.

Words are tuples over {X, W, T0, T1}.  The rules push X and W to the left,
collapse T0^2 and T1^2, and cancel XW = WX = 1.  Normal forms are X^n or W^n
followed by an alternating word in T0, T1.  The critical pairs of the basic
rules all resolve, so two expressions are equal in the algebra exactly when
their normal forms agree; the sandwich rules are consequences that shorten
the derivations.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .field import ONE, Q, RationalFunction, as_rational, sym
from .presentations import NCExpression, RelationResult, ResidualReport, gens
from .spherical import (
    QBAR,
    QQBAR,
    ZhedanovParams,
    substitute_images,
    symmetriser,
    triple_expressions,
    zhedanov_images,
    zhedanov_params,
    zhedanov_relations,
)

q = Q * Q
DEFAULT_BUDGET = 100_000
ALPHABET = ("X", "W", "T0", "T1")


class BudgetExhausted(RuntimeError):
    def __init__(self, partial: NCExpression, steps: int):
        super().__init__(f"rewriting budget exhausted after {steps} steps")
        self.partial = partial
        self.steps = steps


@dataclass(frozen=True)
class Rule:
    id: str
    pattern: tuple
    replacement: NCExpression
    derivation: str


def _w(*letters) -> NCExpression:
    return NCExpression({tuple(letters): ONE})


def rewrite_system(algebra_id: str = "H_III_D7", sandwich: bool = True) -> list[Rule]:
    """Ordered rules for D7 (parameter a) or D8 (a = 0)."""
    if algebra_id == "H_III_D7":
        a = sym("a")
        suffix = "7"
    elif algebra_id == "H_III_D8":
        a = ONE * 0
        suffix = "8"
    else:
        raise KeyError(algebra_id)
    X, W, T0, T1 = _w("X"), _w("W"), _w("T0"), _w("T1")
    tag = f"sahiPIIID{suffix}"
    rules = []
    if sandwich:
        rules += [
            Rule(f"{tag}4-1a", ("T1", "X", "T1"), -a * T1, f"{tag}4 times T1 on the right, then {tag}2"),
            Rule(
                f"{tag}4-1b",
                ("T1", "W", "T1"),
                a * T1 + a - T1 * W - W * T1 - W,
                f"(T1 + 1) times {tag}4 on the left, then {tag}2",
            ),
            Rule(f"{tag}5-1a", ("T0", "W", "T0"), -T0 / q, f"{tag}5 times T0 on the right, then {tag}3"),
            Rule(f"{tag}5-1b", ("T0", "X", "T0"), T0, f"T0 times {tag}5 on the left, then {tag}3"),
        ]
    rules += [
        Rule("T1^2", ("T1", "T1"), -T1, f"{tag}2"),
        Rule("T0^2", ("T0", "T0"), NCExpression(), f"{tag}3"),
        Rule("T1.X", ("T1", "X"), W * T1 + W - a, f"{tag}4"),
        Rule("T1.W", ("T1", "W"), X * T1 - W + a, f"X times {tag}4 times W, then {tag}1"),
        Rule("T0.X", ("T0", "X"), q * W * T0 + 1, f"W times {tag}5 times X, then {tag}1"),
        Rule("T0.W", ("T0", "W"), (X * T0 - 1) / q, f"{tag}5"),
        Rule("X.W", ("X", "W"), NCExpression.scalar(1), f"{tag}1"),
        Rule("W.X", ("W", "X"), NCExpression.scalar(1), f"{tag}1"),
    ]
    return rules


@dataclass
class Trace:
    steps: list = dc_field(default_factory=list)  # (step, rule id, position)
    limit: int = 2000
    count: int = 0

    def record(self, rule_id: str, position: int) -> None:
        self.count += 1
        if len(self.steps) < self.limit:
            self.steps.append((self.count, rule_id, position))

    @property
    def truncated(self) -> bool:
        return self.count > len(self.steps)


def _find(word: tuple, rules: list[Rule]):
    for r in rules:
        n = len(r.pattern)
        for i in range(len(word) - n + 1):
            if word[i : i + n] == r.pattern:
                return r, i
    return None


def normalize(
    expr: NCExpression,
    rules: list[Rule],
    budget: int = DEFAULT_BUDGET,
    trace: Trace | None = None,
) -> NCExpression:
    """Rewrite every word to normal form; raises BudgetExhausted past ``budget`` steps."""
    trace = trace if trace is not None else Trace()
    memo: dict[tuple, dict] = {}
    steps = [0]

    def nf(word: tuple) -> dict:
        if word in memo:
            return memo[word]
        hit = _find(word, rules)
        if hit is None:
            res = {word: ONE}
        else:
            rule, i = hit
            steps[0] += 1
            if steps[0] > budget:
                raise BudgetExhausted(NCExpression(), steps[0])
            trace.record(rule.id, i)
            pre, post = word[:i], word[i + len(rule.pattern) :]
            res = {}
            for w, c in rule.replacement.terms.items():
                for w2, c2 in nf(pre + w + post).items():
                    v = res.get(w2)
                    res[w2] = c * c2 if v is None else v + c * c2
            res = {w: c for w, c in res.items() if not c.is_zero()}
        memo[word] = res
        return res

    out: dict[tuple, RationalFunction] = {}
    try:
        for word, c in sorted(expr.terms.items()):
            for w2, c2 in nf(word).items():
                v = out.get(w2)
                out[w2] = c * c2 if v is None else v + c * c2
    except BudgetExhausted as exc:
        raise BudgetExhausted(NCExpression(out), exc.steps) from None
    return NCExpression(out)


@dataclass
class Verification:
    identity_id: str
    ok: bool
    residual: NCExpression
    trace: Trace
    exhausted: bool = False

    def as_result(self) -> RelationResult:
        if self.exhausted:
            return RelationResult(self.identity_id, False, "budget exhausted")
        return RelationResult(self.identity_id, self.ok, "" if self.ok else self.residual.render())


def verify_identity(
    lhs: NCExpression,
    rhs,
    rules: list[Rule],
    budget: int = DEFAULT_BUDGET,
    identity_id: str = "",
) -> Verification:
    """Decide lhs = rhs by comparing normal forms."""
    rhs = rhs if isinstance(rhs, NCExpression) else NCExpression.scalar(as_rational(rhs))
    trace = Trace()
    try:
        res = normalize(lhs - rhs, rules, budget, trace)
    except BudgetExhausted as exc:
        return Verification(identity_id, False, exc.partial, trace, exhausted=True)
    return Verification(identity_id, res.is_zero(), res, trace)


# ---------------------------------------------------------------------------
# the identities of the spherical subalgebras of D7 and D8


def _d7_symbols():
    return tuple(_w(s) for s in ALPHABET)


def derived_rule_checks(algebra_id: str) -> ResidualReport:
    """Each sandwich rule follows from the basic rules."""
    basic = rewrite_system(algebra_id, sandwich=False)
    rep = ResidualReport(f"derived rules of {algebra_id}")
    for r in rewrite_system(algebra_id)[:4]:
        v = verify_identity(NCExpression({r.pattern: ONE}), r.replacement, basic, identity_id=r.id)
        rep.results.append(v.as_result())
    return rep


def printed_expansions(printed: bool = False) -> dict[str, tuple[NCExpression, NCExpression]]:
    """The five expansions used for the D7 skein relations: (product, right side).

    The last T0 term of X2 X1^2 is typeset as +(q^2 - q^{-2} - 2) T0; the normal
    form has the opposite sign, which ``printed=True`` restores.
    """
    X, W, T0, T1 = _d7_symbols()
    a = sym("a")
    X1, X2, _ = triple_expressions("H_III_D7")
    t010 = T0 * T1 * T0
    t0101 = T0 * T1 * T0 * T1
    t1010 = T1 * T0 * T1 * T0
    XW = X + W
    return {
        "X2X1X2": (
            X2 * X1 * X2,
            (1 - ONE / q) * (T0 + T0 * T1 + T1 * T0 + a * (q + 1) * t010 + 2 * T1 * T0 * T1)
            + XW * t010 / q
            + (X / q + q * W) * t0101
            + (W / q + q * X) * t1010,
        ),
        "X1X2^2": (X1 * X2 * X2, XW * (t010 + t0101 + t1010)),
        "X2^2X1": (
            X2 * X2 * X1,
            (1 - ONE / (q * q)) * (T0 + T0 * T1 + T1 * T0 + (q + 1) * T1 * T0 * T1)
            + (a * (q * q - ONE / (q * q)) + XW / (q * q)) * t010
            + (X / (q * q) + q * q * W) * t0101
            + (W / (q * q) + q * q * X) * t1010,
        ),
        "X2X1^2": (
            X2 * X1 * X1,
            (q * q - 1) / (q * q) * ((q - 1) * a + XW * ((q + 1) * T1 + a * (1 + q * q) * T0 + 1))
            + 2 * (T0 * T1 + T1 * T0)
            + (X * X + W * W) * T0 / (q * q)
            + (X * X / (q * q) + q * q * W * W) * T0 * T1
            + (q * q * X * X + W * W / (q * q)) * T1 * T0
            + (1 if printed else -1) * (q * q - ONE / (q * q) - 2) * T0,
        ),
        "X1^2X2": (X1 * X1 * X2, (X * X + W * W) * (T0 + T0 * T1 + T1 * T0) + 2 * T0 * T1 + 2 * T1 * T0 + 2 * T0),
    }


def check_printed_expansions(budget: int = DEFAULT_BUDGET, printed: bool = False) -> ResidualReport:
    rules = rewrite_system("H_III_D7")
    rep = ResidualReport("D7 expansions")
    for rid, (lhs, rhs) in printed_expansions(printed).items():
        rep.results.append(verify_identity(lhs, rhs, rules, budget, rid).as_result())
    return rep


def commutation_with_e(algebra_id: str) -> list[tuple[str, NCExpression, NCExpression]]:
    """[e, X1] and [e, X2] along the printed derivation, with X^{-1} read as W."""
    X, W, T0, T1 = _d7_symbols()
    a = sym("a") if algebra_id == "H_III_D7" else ONE * 0
    e = symmetriser(algebra_id)
    X1, X2, X3 = triple_expressions(algebra_id)
    return [
        ("[e,X1] step 1", e * X1 - X1 * e, T1 * X + T1 * W - X * T1 - W * T1),
        (
            "[e,X1] step 2",
            T1 * X + T1 * W - X * T1 - W * T1,
            -a + W * (T1 + 1) - W + a + X * T1 - X * T1 - W * T1,
        ),
        ("[e,X1] = 0", e * X1 - X1 * e, NCExpression()),
        ("[e,X2] step 1", e * X2 - X2 * e, T1 * T1 * T0 + T1 * T0 * (T1 + 1) - T1 * T0 * T1),
        ("[e,X2] = 0", e * X2 - X2 * e, NCExpression()),
        ("[e,X3] = 0", e * X3 - X3 * e, NCExpression()),
        ("e^2 = e", e * e, e),
    ]


def spherical_relations(algebra_id: str) -> list[tuple[str, NCExpression]]:
    """Skein relations and cubic in X1, X2, X3, T1 (unhatted)."""
    X1, X2, X3, T1 = gens("X1", "X2", "X3", "T1")
    a = sym("a") if algebra_id == "H_III_D7" else ONE * 0
    tag = "PIIID7" if algebra_id == "H_III_D7" else "PIIID8"
    return [
        (f"skein-{tag}-32", Q * X3 * X2 - X2 * X3 / Q),
        (f"skein-{tag}-13", Q * X1 * X3 - X3 * X1 / Q - QQBAR * X2 + (q - 1) / q * a),
        (
            f"skein-cubic{tag[1:]}",
            Q * X2 * X1 * X3 - q * X2 * X2 - q * X3 * X3 + a * X2 + (T1 / Q - Q * (T1 + 1)) * X3,
        ),
    ]


def hatted_relations(algebra_id: str, printed: bool = False) -> list[tuple[str, NCExpression]]:
    """Hatted skein relations and cubic in Xh1, Xh2, Xh3, e.

    T1 e = 0, so the definition of X3 gives +(q^{1/2} - q^{-1/2}) e in the first
    relation and -q^{1/2} Xh3 in the cubic; the typeset forms (``printed=True``)
    have -(q^{1/2} - q^{-1/2}) e and -q^{-1/2} Xh3.
    """
    X1, X2, X3, e = gens("Xh1", "Xh2", "Xh3", "e")
    d7 = algebra_id == "H_III_D7"
    a = sym("a") if d7 else ONE * 0
    tag = "D7" if d7 else "D8"
    sign21 = -1 if printed else 1
    x3coef = -ONE / Q if printed else -Q
    return [
        (f"{tag}-skein-21", Q * X2 * X1 - X1 * X2 / Q - QQBAR * X3 - sign21 * QBAR * e),
        (f"{tag}-skein-32", Q * X3 * X2 - X2 * X3 / Q),
        (f"{tag}-skein-13", Q * X1 * X3 - X3 * X1 / Q - QQBAR * X2 + QBAR * a / Q * e),
        (f"{tag}cubic", Q * X2 * X1 * X3 - q * X2 * X2 - q * X3 * X3 + a * X2 + x3coef * X3),
    ]


def _unhatted_images(algebra_id: str) -> dict[str, NCExpression]:
    X1, X2, X3 = triple_expressions(algebra_id)
    return {"X1": X1, "X2": X2, "X3": X3}


def _hatted_images(algebra_id: str) -> dict[str, NCExpression]:
    e = symmetriser(algebra_id)
    X1, X2, X3 = triple_expressions(algebra_id)
    return {"Xh1": e * X1 * e, "Xh2": e * X2 * e, "Xh3": e * X3 * e, "e": e}


def check_spherical(algebra_id: str, hatted: bool = False, printed: bool = False, budget: int = DEFAULT_BUDGET):
    rules = rewrite_system(algebra_id)
    if hatted:
        rels, images = hatted_relations(algebra_id, printed), _hatted_images(algebra_id)
    else:
        rels, images = spherical_relations(algebra_id), _unhatted_images(algebra_id)
    rep = ResidualReport(f"{'hatted ' if hatted else ''}spherical relations of {algebra_id}")
    for rid, rel in rels:
        v = verify_identity(substitute_images(rel, images), NCExpression(), rules, budget, rid)
        rep.results.append(v.as_result())
    return rep


def check_commutation(algebra_id: str, budget: int = DEFAULT_BUDGET) -> ResidualReport:
    rules = rewrite_system(algebra_id)
    rep = ResidualReport(f"symmetriser of {algebra_id}")
    for rid, lhs, rhs in commutation_with_e(algebra_id):
        rep.results.append(verify_identity(lhs, rhs, rules, budget, rid).as_result())
    return rep


def check_zhedanov_iso(algebra_id: str, budget: int = DEFAULT_BUDGET) -> ResidualReport:
    params: ZhedanovParams = zhedanov_params(algebra_id)
    images = zhedanov_images(algebra_id, params)
    hat = _hatted_images(algebra_id)
    rules = rewrite_system(algebra_id)
    rep = ResidualReport(f"Zhedanov isomorphism for {algebra_id}")
    for rid, rel in zhedanov_relations(params):
        expr = substitute_images(substitute_images(rel, images), hat)
        rep.results.append(verify_identity(expr, NCExpression(), rules, budget, rid).as_result())
    return rep
