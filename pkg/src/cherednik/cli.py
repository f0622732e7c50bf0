"""Command-line driver: runs the verification suites and ad-hoc checks, and emits
deterministic reports.

    python -m cherednik.cli                                  # everything, text table
    python -m cherednik.cli --suite eigen --algebra AW --max-n 3 --format json
    python -m cherednik.cli --check "Vc1*V1*V0*Vc0 - q^(-1/2) == 0 in H"

Exit status: 0 when every check passes, 1 when some check fails, 2 on a usage,
parse or evaluation error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from functools import partial
from typing import Callable

from . import classical, presentations, qdiff, qpoly, rewrite, spherical
from .field import I, ONE, Q, RationalFunction, q, sym
from .presentations import NCExpression, ResidualReport, apply_generator_map, check_presentation, presentation
from .qdiff import Verdict
from .qmat import ALGEBRAS, EmbeddingAssignment, NoInverseAvailable, UnboundGenerator, embed, eval_nc

SUITES = ("presentations", "spherical", "rewrite", "classical", "zhedanov", "eigen")

PASS, FAIL, PASS_BASIS = "pass", "fail", "pass-basis"


class UnknownSymbol(KeyError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown symbol {name!r} at position {position}")
        self.name = name
        self.position = position


class CheckSyntaxError(SyntaxError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


# ---------------------------------------------------------------------------
# configuration and reports


@dataclass(frozen=True)
class SuiteConfig:
    suites: tuple = SUITES
    algebra: str | None = None
    max_n: int = 8
    basis_degree: int = 16
    budget: int = rewrite.DEFAULT_BUDGET
    fmt: str = "text"
    jobs: int = 1
    variant: str = "corrected"
    allow_basis_fallback: bool = True
    timings: bool = False


@dataclass
class CheckRecord:
    check_id: str
    anchor: str
    verdict: str
    residual: str = ""
    ms: int | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == PASS or self.verdict.startswith(PASS_BASIS)


@dataclass
class Report:
    records: list = dc_field(default_factory=list)
    errors: list = dc_field(default_factory=list)

    def sort(self) -> "Report":
        self.records.sort(key=lambda r: r.check_id)
        return self

    @property
    def ok(self) -> bool:
        return not self.errors and all(r.passed for r in self.records)

    def exit_status(self, allow_basis_fallback: bool = True) -> int:
        if self.errors:
            return 2
        for r in self.records:
            if r.verdict == FAIL or (r.verdict.startswith(PASS_BASIS) and not allow_basis_fallback):
                return 1
        return 0


# ---------------------------------------------------------------------------
# check groups; each group runs in one worker and yields one or more records


@dataclass(frozen=True)
class Group:
    group_id: str
    suite: str
    tags: tuple
    anchor: str
    run: Callable  # () -> list[tuple[str, str, str]]  as (suffix, verdict, residual)


def _from_report(rep: ResidualReport, prefix: str = "") -> list:
    return [(prefix + r.relation_id, PASS if r.is_zero else FAIL, r.residual) for r in rep.results]


def _printed(variant: str) -> bool:
    return variant == "printed"


def _g_embedding(alg: str, variant: str):
    return _from_report(check_presentation(presentation(alg), embed(alg, variant)))


def _g_gamma_limit(variant: str):
    assign = apply_generator_map(presentations.gamma_limit_map(), embed("H_V", variant))
    return _from_report(check_presentation(presentation("H_V_gamma"), assign))


def _round_trip(base: EmbeddingAssignment, there: EmbeddingAssignment, back_map, label: str):
    back = apply_generator_map(back_map, there)
    out = []
    for g in sorted(base.generators):
        diff = base.finalize(back.generators[g]) - base.finalize(base.generators[g])
        zero = diff.is_zero()
        out.append((f"{label}/{g}", PASS if zero else FAIL, "" if zero else diff.render()))
    return out


def _g_sahi(alg: str, variant: str):
    base = embed(alg, variant)
    there = apply_generator_map(presentations.sahi_map(alg), base)
    out = _from_report(check_presentation(presentation("sahi_" + _SUFFIX[alg]), there))
    if alg != "H_IV":  # X is not invertible in H_IV, so the reverse change does not exist
        out += _round_trip(base, there, presentations.sahi_inverse_map(alg), "round-trip")
    return out


def _g_ld(alg: str, variant: str):
    base = embed(alg, variant)
    there = apply_generator_map(presentations.ld_map(alg), base)
    out = _from_report(check_presentation(presentation("LD_" + _SUFFIX[alg]), there))
    return out + _round_trip(base, there, presentations.ld_inverse_map(alg), "round-trip")


def _g_beta(variant: str):
    base = embed("H", variant)
    out = _from_report(presentations.check_automorphism_beta(base, 1), "beta/")
    return out + _from_report(presentations.check_automorphism_beta(base, 2), "beta^2/")


_SUFFIX = {"H": "H", "H_V": "V", "H_IV": "IV", "H_III": "III"}


def _g_spherical(alg: str, variant: str):
    t = spherical.build_triple(alg, variant)
    spec = spherical.cubic_spec(alg)
    if _printed(variant):
        spec = dataclasses.replace(spec, omega_sign=spec.printed_omega_sign)
    out = _from_report(spherical.check_idempotent(t))
    out += _from_report(spherical.check_skein(t))
    out += _from_report(spherical.check_cubic(t))
    return out + _from_report(spherical.check_cubic(t, spec, hatted=True), "hatted/")


def _g_gamma_spherical():
    return _from_report(spherical.check_gamma_spherical())


def _g_expansions(budget: int, variant: str):
    return _from_report(rewrite.check_printed_expansions(budget, _printed(variant)))


def _g_rewrite(alg: str, budget: int, variant: str):
    out = _from_report(rewrite.derived_rule_checks(alg), "rules/")
    out += _from_report(rewrite.check_commutation(alg, budget), "commutation/")
    out += _from_report(rewrite.check_spherical(alg, budget=budget), "spherical/")
    return out + _from_report(
        rewrite.check_spherical(alg, hatted=True, printed=_printed(variant), budget=budget), "hatted/"
    )


def _g_classical_cubic(alg: str, variant: str):
    return _from_report(classical.check_classical_cubic(alg, variant))


def _g_monodromy(variant: str):
    out = _from_report(classical.check_fricke(), "fricke/")
    out += _from_report(classical.check_classical_monodromy(variant), "classical/")
    out += _from_report(classical.check_quantum_monodromy(variant), "quantum/")
    return out + _from_report(classical.check_final_identification(variant), "identification/")


def _g_shear(variant: str):
    rep, _ = classical.check_poisson_structure()
    out = _from_report(rep, "poisson/")
    return out + _from_report(classical.check_quantum_shear(_printed(variant)), "quantum/")


def _g_zhedanov_iso(alg: str, budget: int, variant: str):
    if alg in spherical.REWRITE_ALGEBRAS:
        return _from_report(rewrite.check_zhedanov_iso(alg, budget))
    return _from_report(spherical.check_zhedanov_iso(alg, printed=_printed(variant)))


def _g_parameter_tables():
    return [(name, PASS if ok else FAIL, "" if ok else "tables differ") for name, ok in qdiff.check_parameter_tables().items()]


def _g_representation(rep_id: str, degree: int, variant: str):
    out = []
    for rec in qdiff.check_representation(rep_id, degree, variant):
        eq = rec.equality
        if eq.verdict is Verdict.EQUAL_CANONICAL:
            verdict = PASS
        elif eq.verdict is Verdict.EQUAL_ON_BASIS:
            verdict = f"{PASS_BASIS}({eq.degree})"
        else:
            verdict = FAIL
        out.append((rec.relation_id, verdict, eq.residual))
    return out


def _g_eigen(family_id: str, max_n: int, variant: str):
    out = []
    for n in range(max_n + 1):
        r = qpoly.verify_eigen(family_id, n, variant)
        out.append((f"n={n}", PASS if r.holds else FAIL, r.residual))
    return out


def plan(config: SuiteConfig) -> list[Group]:
    """Every check group selected by ``config``, in check-id order."""
    v, b = config.variant, config.budget
    groups = []

    def add(gid, suite, tags, anchor, fn):
        groups.append(Group(gid, suite, tuple(tags), anchor, fn))

    for alg in ALGEBRAS:
        add(f"presentations/{alg}/embedding", "presentations", [alg], f"defining relations of {alg} on its matrices",
            partial(_g_embedding, alg, v))
    add("presentations/H_V_gamma/limit", "presentations", ["H_V", "H_V_gamma"],
        "defining relations of H_V^gamma on the limit of gamma", partial(_g_gamma_limit, v))
    add("presentations/H/beta", "presentations", ["H"], "the automorphism beta of H", partial(_g_beta, v))
    for alg in _SUFFIX:
        add(f"presentations/{alg}/sahi", "presentations", [alg, "sahi_" + _SUFFIX[alg]],
            f"Sahi-type presentation of {alg}", partial(_g_sahi, alg, v))
    for alg in ("H_V", "H_IV", "H_III"):
        add(f"presentations/{alg}/LD", "presentations", [alg, "LD_" + _SUFFIX[alg]],
            f"LD presentation of {alg}", partial(_g_ld, alg, v))

    for alg in spherical.MATRIX_ALGEBRAS:
        add(f"spherical/{alg}", "spherical", [alg], f"spherical subalgebra of {alg}", partial(_g_spherical, alg, v))
    add("spherical/H_V/gamma", "spherical", ["H_V"], "gamma on the spherical subalgebra of H_V", _g_gamma_spherical)

    add("rewrite/H_III_D7/expansions", "rewrite", ["H_III_D7"], "intermediate expansions for the D7 cubic",
        partial(_g_expansions, b, v))
    for alg in spherical.REWRITE_ALGEBRAS:
        add(f"rewrite/{alg}", "rewrite", [alg], f"spherical subalgebra of {alg} by rewriting",
            partial(_g_rewrite, alg, b, v))

    for alg in classical.CLASSICAL_CUBICS:
        add(f"classical/{alg}/cubic", "classical", [alg], f"classical cubic of {alg}",
            partial(_g_classical_cubic, alg, v))
    add("classical/H/monodromy", "classical", ["H"], "monodromy in shear coordinates", partial(_g_monodromy, v))
    add("classical/H/shear", "classical", ["H"], "Poisson and quantum shear algebra", partial(_g_shear, v))

    for alg in ("H_V", "H_IV", "H_III") + spherical.REWRITE_ALGEBRAS:
        add(f"zhedanov/{alg}/isomorphism", "zhedanov", [alg], f"Zhedanov images in the spherical subalgebra of {alg}",
            partial(_g_zhedanov_iso, alg, b, v))
    add("zhedanov/H/parameter-tables", "zhedanov", ["H", "AW"], "abcd and u/k structure-constant tables agree",
        _g_parameter_tables)
    for rep_id in qdiff.REPRESENTATIONS:
        add(f"zhedanov/{rep_id}/operators", "zhedanov", [rep_id], f"q-difference representation {rep_id}",
            partial(_g_representation, rep_id, config.basis_degree, v))

    for fam in qpoly.FAMILY_IDS:
        spec = qpoly.FAMILIES[fam]
        add(f"eigen/{fam}", "eigen", [fam, spec.rep_id], f"{fam} polynomials as eigenfunctions of {spec.rep_id}",
            partial(_g_eigen, fam, config.max_n, v))

    selected = [
        g for g in groups
        if g.suite in config.suites and (config.algebra is None or config.algebra in g.tags)
    ]
    return sorted(selected, key=lambda g: g.group_id)


def _execute(group: Group, timings: bool) -> tuple[list, list]:
    t0 = time.perf_counter()
    try:
        rows = group.run()
    except rewrite.BudgetExhausted as exc:
        rows = [("", FAIL, f"budget exhausted after {exc.steps} steps")]
    except Exception as exc:  # noqa: BLE001 -- reported as an error record, never swallowed silently
        return [CheckRecord(group.group_id, group.anchor, FAIL, f"{type(exc).__name__}: {exc}")], [group.group_id]
    ms = round((time.perf_counter() - t0) * 1000) if timings else None
    records = [
        CheckRecord(group.group_id + ("/" + s if s else ""), group.anchor, verdict, residual, ms)
        for s, verdict, residual in rows
    ]
    return records, []


def run_suite(config: SuiteConfig) -> Report:
    groups = plan(config)
    report = Report()
    if config.jobs > 1 and len(groups) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_execute, groups, [config.timings] * len(groups)))
    else:
        results = [_execute(g, config.timings) for g in groups]
    for records, errors in results:
        report.records.extend(records)
        report.errors.extend(errors)
    return report.sort()


# ---------------------------------------------------------------------------
# expression parsing

GENERATOR_NAMES = frozenset(
    ["V0", "V1", "Vc0", "Vc1", "T0", "T1", "T", "X", "W", "Y", "Z", "e", "X1", "X2", "X3", "Xh1", "Xh2", "Xh3"]
)
PARAMETER_NAMES = frozenset(["a", "b", "c", "d", "k0", "k1", "u0", "u1", "lam"])

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    while text[pos:].strip():
        m = _TOKEN.match(text, pos)
        num, ident, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("int", num, start))
        elif ident is not None:
            out.append(("ident", ident, start))
        else:
            if op not in "+-*^()/":
                raise CheckSyntaxError(f"unexpected character {op!r}", start)
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value: str | None = None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise CheckSyntaxError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def expression(self) -> NCExpression:
        out = self.product()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.product()
            out = out + rhs if op == "+" else out - rhs
        return out

    def product(self) -> NCExpression:
        out = self.unary()
        while self.peek()[1] in ("*", "/"):
            op, _, pos = self.take()[1], None, self.peek()[2]
            rhs = self.unary()
            if op == "*":
                out = out * rhs
            elif set(rhs.terms) == {()}:
                out = out / rhs.terms[()]
            else:
                raise CheckSyntaxError("only division by a nonzero scalar is allowed", pos)
        return out

    def unary(self) -> NCExpression:
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        tok = self.peek()
        base = self.atom()
        if self.peek()[1] != "^":
            return base
        self.take()
        num, den, where = self.exponent()
        if den == 2:
            if tok[1] != "q":
                raise CheckSyntaxError("half-integer powers are only defined for q", where)
            return NCExpression.scalar(Q ** num)
        if set(base.terms) <= {()}:
            return NCExpression.scalar(base.terms.get((), ONE * 0) ** num)
        return base ** num

    def exponent(self) -> tuple[int, int, int]:
        tok = self.peek()
        if tok[1] == "(":
            self.take()
            sign = -1 if self.peek()[1] == "-" else 1
            if sign < 0:
                self.take()
            num = int(self.take_int())
            den = 1
            if self.peek()[1] == "/":
                self.take()
                den = int(self.take_int())
            self.take(")")
        else:
            sign = -1 if tok[1] == "-" else 1
            if sign < 0:
                self.take()
            num, den = int(self.take_int()), 1
        if den not in (1, 2):
            raise CheckSyntaxError("exponents must be integers or halves", tok[2])
        if den == 2 and num % 2 == 0:
            num, den = num // 2, 1
        return sign * num, den, tok[2]

    def take_int(self) -> str:
        tok = self.take()
        if tok[0] != "int":
            raise CheckSyntaxError(f"expected an integer, found {tok[1] or 'end of input'!r}", tok[2])
        return tok[1]

    def atom(self) -> NCExpression:
        kind, val, pos = self.take()
        if kind == "int":
            return NCExpression.scalar(RationalFunction.const(int(val)))
        if kind == "ident":
            if val in GENERATOR_NAMES:
                return NCExpression.gen(val)
            if val in PARAMETER_NAMES:
                return NCExpression.scalar(sym(val))
            if val == "q":
                return NCExpression.scalar(q)
            if val == "Q":
                return NCExpression.scalar(Q)
            if val == "i":
                return NCExpression.scalar(I)
            raise UnknownSymbol(val, pos)
        if val == "(":
            out = self.expression()
            self.take(")")
            return out
        raise CheckSyntaxError(f"unexpected {val or 'end of input'!r}", pos)


def parse_expression(text: str) -> NCExpression:
    """Parse a noncommutative polynomial in the generators with rational-function coefficients.

    ``q^(k/2)`` is sugar for a power of q^{1/2}; a negative power of a generator
    becomes its formal inverse, which is resolved (or rejected) at evaluation.
    """
    p = _Parser(text)
    out = p.expression()
    kind, val, pos = p.peek()
    if kind != "end":
        raise CheckSyntaxError(f"unexpected {val!r}", pos)
    return out


_CHECK = re.compile(r"^(?P<lhs>.*?)==\s*0\s+in\s+(?P<alg>\S+)\s*$")
_ALIASES = {"sahi_H": "H", "sahi_V": "H_V", "sahi_IV": "H_IV", "sahi_III": "H_III",
            "LD_V": "H_V", "LD_IV": "H_IV", "LD_III": "H_III"}


def _context(alg: str, variant: str) -> EmbeddingAssignment:
    """Matrices of every generator name known in a matrix algebra."""
    triple = spherical.build_triple(alg, variant)
    base = triple.assign
    gens, inv = dict(base.generators), dict(base.inverses)
    maps = []
    if alg in _SUFFIX:
        maps.append(presentations.sahi_map(alg))
    if alg in ("H_V", "H_IV", "H_III"):
        maps.append(presentations.ld_map(alg))
    param_maps = tuple(base.param_maps)
    for gmap in maps:
        there = apply_generator_map(gmap, base)
        gens.update(there.generators)
        inv.update(there.inverses)
        param_maps = there.param_maps
    return EmbeddingAssignment(alg, gens, dict(base.scalars), inv, dict(base.no_inverse), param_maps)


def evaluate_check(text: str, config: SuiteConfig = SuiteConfig()) -> Report:
    """``"<expression> == 0 in <algebra>"`` as a one-record report."""
    m = _CHECK.match(text)
    if not m:
        raise CheckSyntaxError("expected '<expression> == 0 in <algebra>'", 0)
    alg = _ALIASES.get(m.group("alg"), m.group("alg"))
    expr = parse_expression(m.group("lhs"))
    cid = f"check/{alg}"
    t0 = time.perf_counter()
    if alg in ALGEBRAS:
        value = eval_nc(expr, _context(alg, config.variant))
        residual = "" if value.is_zero() else value.render()
    elif alg in spherical.REWRITE_ALGEBRAS:
        images = {"e": spherical.symmetriser(alg)}
        images.update({f"X{i + 1}": x for i, x in enumerate(spherical.triple_expressions(alg))})
        expr = spherical.substitute_images(expr, images)
        v = rewrite.verify_identity(expr, 0, rewrite.rewrite_system(alg), config.budget, cid)
        residual = "" if v.ok else ("budget exhausted" if v.exhausted else v.residual.render())
    else:
        raise KeyError(f"unknown algebra {alg!r}")
    ms = round((time.perf_counter() - t0) * 1000) if config.timings else None
    return Report([CheckRecord(cid, m.group("lhs").strip(), PASS if not residual else FAIL, residual, ms)])


# ---------------------------------------------------------------------------
# output


def emit_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps([asdict(r) for r in report.records], indent=2, sort_keys=True) + "\n"
    if not report.records:
        return "0 checks\n"
    width = max(len(r.check_id) for r in report.records)
    vwidth = max(len(r.verdict) for r in report.records)
    timed = any(r.ms is not None for r in report.records)
    lines = []
    for r in report.records:
        cols = [r.check_id.ljust(width), r.verdict.ljust(vwidth)]
        if timed:
            cols.append(f"{r.ms if r.ms is not None else '':>8}")
        if r.residual:
            cols.append(r.residual)
        lines.append("  ".join(cols).rstrip())
    passed = sum(r.passed for r in report.records)
    lines.append(f"{len(report.records)} checks, {passed} passed, {len(report.records) - passed} failed")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cherednik", description="Exact verification of DAHA and q-Askey identities.")
    p.add_argument("--suite", action="append", choices=SUITES, help="suite to run (repeatable; default: all)")
    p.add_argument("--algebra", help="only checks tagged with this algebra, representation or family id")
    p.add_argument("--max-n", type=int, default=8, help="largest degree for the eigen suite")
    p.add_argument("--basis-degree", type=int, default=16, help="fallback test-basis size for operator identities")
    p.add_argument("--budget", type=int, default=rewrite.DEFAULT_BUDGET, help="rewrite step budget per identity")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--variant", choices=("corrected", "printed"), default="corrected",
                   help="use the corrected or the typeset form of the known misprints")
    p.add_argument("--basis-fallback", action=argparse.BooleanOptionalAction, default=True,
                   help="count finite-basis operator verdicts as passes")
    p.add_argument("--timings", action="store_true", help="record elapsed milliseconds (reports stop being reproducible)")
    p.add_argument("--check", metavar="EXPR", help='ad-hoc check "<expression> == 0 in <algebra>"')
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_n < 0 or args.jobs < 1 or args.budget < 1 or args.basis_degree < 1:
        print("error: --max-n must be >= 0; --jobs, --budget and --basis-degree must be >= 1", file=sys.stderr)
        return 2
    config = SuiteConfig(
        suites=tuple(args.suite) if args.suite else SUITES,
        algebra=args.algebra,
        max_n=args.max_n,
        basis_degree=args.basis_degree,
        budget=args.budget,
        fmt=args.format,
        jobs=args.jobs,
        variant=args.variant,
        allow_basis_fallback=args.basis_fallback,
        timings=args.timings,
    )
    if args.check is not None:
        try:
            report = evaluate_check(args.check, config)
        except (SyntaxError, KeyError, NoInverseAvailable, UnboundGenerator) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    else:
        report = run_suite(config)
        if not report.records:
            print("error: no checks match the selection", file=sys.stderr)
            sys.stdout.write(emit_report(report, config.fmt))
            return 2
    sys.stdout.write(emit_report(report, config.fmt))
    for gid in report.errors:
        print(f"error: check group {gid} raised; see its record", file=sys.stderr)
    return report.exit_status(config.allow_basis_fallback)


if __name__ == "__main__":
    sys.exit(main())
