"""q-shift operators acting on Laurent polynomials in x, and the operator
representations of the Zhedanov algebra and its confluent degenerations.

A term (c, k, s) acts by f(x) -> c(x) f(q^k x^s); q = Q^2.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Mapping

from .field import ONE, Q, FieldError, RationalFunction, bar, q, substitute, sym

X = sym("x")


class NonPolynomialResult(FieldError):
    pass


class UnknownRepresentation(KeyError):
    pass


# ---------------------------------------------------------------------------
# Laurent polynomials in x


class XLaurent:
    """Laurent polynomial in x with rational-function coefficients (x never in a denominator)."""

    __slots__ = ("rf",)

    def __init__(self, rf: RationalFunction | None = None):
        rf = rf if rf is not None else RationalFunction()
        if any(f.involves("x") for f, _ in rf.den):
            rf = rf._cancel()
            if any(f.involves("x") for f, _ in rf.den):
                raise NonPolynomialResult(f"not a Laurent polynomial in x: {rf.render()}")
        self.rf = rf

    @staticmethod
    def monomial(n: int, coeff=1) -> "XLaurent":
        return XLaurent(_rf(coeff) * X ** n)

    @staticmethod
    def from_coefficients(coeffs: Mapping[int, object]) -> "XLaurent":
        out = RationalFunction()
        for n, c in coeffs.items():
            out = out + _rf(c) * X ** n
        return XLaurent(out)

    @staticmethod
    def symmetric(n: int) -> "XLaurent":
        """x^n + x^{-n} (and 1 for n = 0)."""
        return XLaurent(ONE) if n == 0 else XLaurent(X ** n + X ** (-n))

    def coefficients(self) -> dict[int, RationalFunction]:
        groups = self.rf.num.coefficient_in("x")
        return {n: RationalFunction(p, self.rf.den)._cancel() for n, p in sorted(groups.items())}

    def degree_range(self) -> tuple[int, int]:
        cs = self.coefficients()
        return (min(cs), max(cs)) if cs else (0, 0)

    def is_symmetric(self) -> bool:
        cs = self.coefficients()
        return all((c - cs.get(-n, RationalFunction())).is_zero() for n, c in cs.items())

    def substitute(self, bindings) -> "XLaurent":
        return XLaurent(substitute(self.rf, bindings))

    def __add__(self, o):
        return XLaurent(self.rf + _as_x(o).rf)

    __radd__ = __add__

    def __neg__(self):
        return XLaurent(-self.rf)

    def __sub__(self, o):
        return XLaurent(self.rf - _as_x(o).rf)

    def __mul__(self, o):
        return XLaurent(self.rf * _as_x(o).rf)

    __rmul__ = __mul__

    def __eq__(self, o):
        try:
            return (self - o).is_zero()
        except TypeError:
            return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return self.rf.is_zero()

    def render(self) -> str:
        return self.rf.render()

    def __repr__(self):
        return f"XLaurent({self.render()})"


def _rf(c) -> RationalFunction:
    return c if isinstance(c, RationalFunction) else RationalFunction.const(c)


def _as_x(o) -> XLaurent:
    return o if isinstance(o, XLaurent) else XLaurent(_rf(o))


def _move(c: RationalFunction, k: int, s: int) -> RationalFunction:
    """c(q^k x^s)."""
    if k == 0 and s == 1:
        return c
    return substitute(c, {"x": Q ** (2 * k) * X ** s})


# ---------------------------------------------------------------------------
# operators


class QShiftOperator:
    """Finite sum of terms c(x) f(q^k x^s), keyed canonically by (k, s)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean = {}
        for key, c in (terms or {}).items():
            c = _rf(c)
            if not c.is_zero():
                clean[key] = c
        self.terms = dict(sorted(clean.items()))

    @staticmethod
    def multiplication(c) -> "QShiftOperator":
        return QShiftOperator({(0, 1): c})

    @staticmethod
    def shift(k: int, coeff=1) -> "QShiftOperator":
        return QShiftOperator({(k, 1): coeff})

    @staticmethod
    def inversion(coeff=1) -> "QShiftOperator":
        return QShiftOperator({(0, -1): coeff})

    @staticmethod
    def identity() -> "QShiftOperator":
        return QShiftOperator({(0, 1): ONE})

    def __add__(self, o):
        o = _as_op(o)
        t = dict(self.terms)
        for key, c in o.terms.items():
            t[key] = t[key] + c if key in t else c
        return QShiftOperator(t)

    __radd__ = __add__

    def __neg__(self):
        return QShiftOperator({k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-_as_op(o))

    def __rsub__(self, o):
        return _as_op(o) - self

    def __mul__(self, o):
        """Composition self o other (scalars act by multiplication)."""
        if not isinstance(o, QShiftOperator):
            return QShiftOperator({k: c * _rf(o) for k, c in self.terms.items()})
        return compose(self, o)

    def __rmul__(self, o):
        return QShiftOperator.multiplication(_rf(o)) * self

    def __pow__(self, n: int):
        out = QShiftOperator.identity()
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, f) -> XLaurent:
        return apply(self, f)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (k, s), c in self.terms.items():
            arg = "x" if s == 1 else "1/x"
            if k:
                arg = f"q^{k} {arg}" if k != 1 else f"q {arg}"
            parts.append(f"({c.render()}) f[{arg}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"QShiftOperator({self.render()})"


def _as_op(o) -> QShiftOperator:
    return o if isinstance(o, QShiftOperator) else QShiftOperator.multiplication(_rf(o))


def compose(A: QShiftOperator, B: QShiftOperator) -> QShiftOperator:
    """(A o B) f = A(B f): (c1, k1, s1) o (c2, k2, s2) = (c1 c2(q^k1 x^s1), k2 + s2 k1, s1 s2)."""
    out: dict[tuple, RationalFunction] = {}
    for (k1, s1), c1 in A.terms.items():
        for (k2, s2), c2 in B.terms.items():
            key = (k2 + s2 * k1, s1 * s2)
            term = c1 * _move(c2, k1, s1)
            out[key] = out[key] + term if key in out else term
    return QShiftOperator(out)


def apply(op: QShiftOperator, f) -> XLaurent:
    f = _as_x(f)
    total = RationalFunction()
    for (k, s), c in op.terms.items():
        total = total + c * _move(f.rf, k, s)
    return XLaurent(total)


def commutator(A: QShiftOperator, B: QShiftOperator) -> QShiftOperator:
    return A * B - B * A


class Verdict(str, Enum):
    EQUAL_CANONICAL = "EqualCanonical"
    EQUAL_ON_BASIS = "EqualOnSymmetricBasisUpTo"
    NOT_EQUAL = "NotEqual"


@dataclass(frozen=True)
class Equality:
    verdict: Verdict
    degree: int | None = None
    residual: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict is not Verdict.NOT_EQUAL

    def label(self) -> str:
        if self.verdict is Verdict.EQUAL_ON_BASIS:
            return f"{self.verdict.value}({self.degree})"
        return self.verdict.value


def basis(space: str, n: int) -> XLaurent:
    """n-th test vector: x^n + x^-n on "sym", x^n on "poly", x^0, x, 1/x, x^2, ... on "laurent"."""
    if space == "sym":
        return XLaurent.symmetric(n)
    if space == "laurent":
        return XLaurent.monomial((n + 1) // 2 if n % 2 else -(n // 2))
    return XLaurent.monomial(n)


def operator_equal(A: QShiftOperator, B: QShiftOperator, sym_fallback_degree: int = 16, space: str = "sym") -> Equality:
    """Canonical comparison first, then the difference on the basis up to the given degree."""
    if sym_fallback_degree < 0:
        raise ValueError("fallback degree must be non-negative")
    diff = A - B
    if diff.is_zero():
        return Equality(Verdict.EQUAL_CANONICAL)
    for n in range(sym_fallback_degree + 1):
        try:
            r = apply(diff, basis(space, n))
        except NonPolynomialResult as exc:
            return Equality(Verdict.NOT_EQUAL, n, str(exc))
        if not r.is_zero():
            return Equality(Verdict.NOT_EQUAL, n, r.render())
    return Equality(Verdict.EQUAL_ON_BASIS, sym_fallback_degree)


# ---------------------------------------------------------------------------
# the basic representation of H


def basic_representation(variant: str = "corrected") -> dict[str, QShiftOperator]:
    """X, T1, T0 on all Laurent polynomials, with parameters a, b, c, d.

    The typeset T0 (``variant="printed"``) satisfies the same relations but maps 1 to a
    non-polynomial; the corrected sign of its f[q/x] term gives T0 1 = -cd/q.
    """
    a, b, c, d = (sym(n) for n in "abcd")
    sign = 1 if variant == "printed" else -1
    T1 = QShiftOperator({
        (0, 1): ((a + b) * X - (1 + a * b)) / (1 - X ** 2),
        (0, -1): (1 - a * X) * (1 - X * b) / (1 - X ** 2),
    })
    T0 = QShiftOperator({
        (0, 1): X * ((c * d + q) * X - (c + d) * q) / (q * (q - X ** 2)),
        (1, -1): sign * (c - X) * (d - X) / (q - X ** 2),
    })
    return {"X": QShiftOperator.multiplication(X), "T1": T1, "T0": T0}


# ---------------------------------------------------------------------------
# Zhedanov parameters and representation catalogue


@dataclass(frozen=True)
class ZhedanovParams:
    B: RationalFunction
    C0: RationalFunction
    C1: RationalFunction
    D0: RationalFunction
    D1: RationalFunction

    def as_dict(self) -> dict:
        return {"B": self.B, "C0": self.C0, "C1": self.C1, "D0": self.D0, "D1": self.D1}

    def substitute(self, bindings) -> "ZhedanovParams":
        return ZhedanovParams(*(substitute(v, bindings) for v in self.as_dict().values()))


@dataclass
class Representation:
    rep_id: str
    space: str  # "sym" for symmetric Laurent polynomials, "poly" for polynomials
    K0: QShiftOperator
    K1: QShiftOperator
    params: ZhedanovParams
    # constant of K0beta = q/(q^2 - 1) (K0 K1 - q K1 K0 - const), when defined
    beta_constant: RationalFunction | None = None
    variant: str = "corrected"

    @property
    def K0beta(self) -> QShiftOperator | None:
        if self.beta_constant is None:
            return None
        inner = self.K0 * self.K1 - q * (self.K1 * self.K0) - self.beta_constant
        return (q / (q * q - 1)) * inner


def _z(*vals) -> ZhedanovParams:
    return ZhedanovParams(*(_rf(v) for v in vals))


QM1 = (q - 1) ** 2
QQBAR2 = (q - ONE / q) ** 2


def _diff_term(coeff: RationalFunction, k: int) -> QShiftOperator:
    """coeff * (f[q^k x] - f[x])."""
    return QShiftOperator({(k, 1): coeff, (0, 1): -coeff})


def _aw(printed: bool) -> Representation:
    a, b, c, d = (sym(n) for n in "abcd")
    K0 = (
        _diff_term((1 - a * X) * (1 - b * X) * (1 - c * X) * (1 - d * X) / ((1 - X ** 2) * (1 - q * X ** 2)), 1)
        + _diff_term((a - X) * (b - X) * (c - X) * (d - X) / ((1 - X ** 2) * (q - X ** 2)), -1)
        + QShiftOperator.multiplication(1 + a * b * c * d / q)
    )
    return Representation("AW", "sym", K0, QShiftOperator.multiplication(X + ONE / X), zhe_par_abcd())


def zhe_par_abcd() -> ZhedanovParams:
    a, b, c, d = (sym(n) for n in "abcd")
    B = QM1 / q * ((1 + a * b / q) * (d / c + 1) * c + (b / a + 1) * (1 + c * d / q) * a)
    C1 = a * b * c * d / q * QQBAR2
    D0 = -(q + 1) * QM1 / q * ((b / a + 1) * (d / c + 1) * a * c / q + (1 + a * b / q) * (1 + c * d / q))
    D1 = -(q + 1) * QM1 / q ** 2 * ((b / a + 1) * (1 + a * b / q) * a * c * d + (d / c + 1) * (1 + c * d / q) * a * b * c)
    return _z(B, QQBAR2, C1, D0, D1)


def zhe_par_uk() -> ZhedanovParams:
    """Structure constants in terms of u0, u1, k0, k1."""
    k0, k1, u0, u1 = (sym(n) for n in ("k0", "k1", "u0", "u1"))
    t = (ONE / u1 - u1 / q) * Q
    B = k0 * u1 * QM1 / q * (bar(u0) * t - bar(k0) * bar(k1))
    C1 = k0 ** 2 * u1 ** 2 * QQBAR2
    D0 = k0 * u1 * (q + 1) * QM1 / (q * Q) * (-bar(k1) * bar(u0) + bar(k0) * t)
    D1 = k0 ** 2 * u1 ** 2 * (q + 1) * QM1 / (q * Q) * (-bar(k0) * bar(u0) + bar(k1) * t)
    return _z(B, QQBAR2, C1, D0, D1)


def abcd_from_uk() -> dict[str, RationalFunction]:
    """a = -u1/k1, b = k1 u1, c = -q^{1/2} k0/u0, d = q^{1/2} u0 k0."""
    k0, k1, u0, u1 = (sym(n) for n in ("k0", "k1", "u0", "u1"))
    return {"a": -u1 / k1, "b": k1 * u1, "c": -Q * k0 / u0, "d": Q * u0 * k0}


def check_parameter_tables() -> dict[str, bool]:
    """Entrywise comparison of the abcd table, pulled back along ``abcd_from_uk``, with the u/k table."""
    abcd = zhe_par_abcd().substitute(abcd_from_uk())
    uk = zhe_par_uk()
    return {name: (getattr(abcd, name) - getattr(uk, name)).is_zero() for name in ("B", "C0", "C1", "D0", "D1")}


def _z_v(printed: bool) -> Representation:
    a, b, c = (sym(n) for n in "abc")
    K0 = (
        _diff_term((1 - a * X) * (1 - b * X) * (1 - c * X) / ((1 - X ** 2) * (1 - q * X ** 2)), 1)
        + QShiftOperator.identity()
        + _diff_term(-X * (a - X) * (b - X) * (c - X) / ((1 - X ** 2) * (q - X ** 2)), -1)
    )
    return Representation("Z_V", "sym", K0, QShiftOperator.multiplication(X + ONE / X), zhe_par_abc_v(printed))


def zhe_par_abc_v(printed: bool = False) -> ZhedanovParams:
    """Z_V table in a, b, c.

    The default is the d -> 0 limit of the AW table.  ``printed`` keeps the typeset
    entries: D0 without the 1/q on (b/a + 1) a c, and D1 = -(q+1)(q-1)^2/q (1 + c d/q) a b c
    read with d = 0.
    """
    a, b, c = (sym(n) for n in "abc")
    B = QM1 / q * ((1 + a * b / q) * c + (b / a + 1) * a)
    D0 = -(q + 1) * QM1 / q * ((b / a + 1) * a * c / (ONE if printed else q) + (1 + a * b / q))
    D1 = -(q + 1) * QM1 / (q if printed else q ** 2) * a * b * c
    return _z(B, QQBAR2, 0, D0, D1)


def _jacobi_type_k0(b: RationalFunction, printed: bool) -> QShiftOperator:
    """K0 of Z_V^gamma (Z_IV is b = 0).

    The corrected operator is the lambda = 1 operator with x -> lambda x, which is what
    the printed structure constants (B ~ 1/lambda, D0 ~ 1/lambda^2) require.  The printed
    one has x (1 + b) in place of lambda x (1 + b) and no 1/lambda^2 on the f[qx] term.
    """
    a, c, lam = (sym(n) for n in ("a", "c", "lam"))
    y = X if printed else lam * X
    fwd = q * (lam * X - 1) * a * (b * lam * X - c) / X ** 2
    return QShiftOperator({
        (0, 1): q * (lam * c * X + a * (y * (1 + b) - c * (1 + q - lam * X))) / (lam ** 2 * X ** 2),
        (-1, 1): (lam * X - q * a) * (lam * X - q * c) / (lam ** 2 * X ** 2),
        (1, 1): fwd if printed else fwd / lam ** 2,
    })


def _z_v_gamma(printed: bool) -> Representation:
    a, b, c, lam = (sym(n) for n in ("a", "b", "c", "lam"))
    B = QM1 * (c + a * (1 + b + c)) / lam
    D0 = -(q + 1) * QM1 * a * c / lam ** 2
    C1 = q * QQBAR2 * a * b
    D1 = -QM1 * (q + 1) * a * (c + b * (1 + a + c)) / lam
    return Representation(
        "Z_V_gamma", "poly", _jacobi_type_k0(b, printed), QShiftOperator.multiplication(X), _z(B, 0, C1, D0, D1)
    )


def _z_iv(printed: bool) -> Representation:
    a, c, lam = (sym(n) for n in ("a", "c", "lam"))
    B = QM1 * (c + a * (1 + c)) / lam
    D0 = -(q + 1) * QM1 * a * c / lam ** 2
    D1 = -QM1 * (q + 1) * a * c / lam
    return Representation(
        "Z_IV", "poly", _jacobi_type_k0(RationalFunction(), printed), QShiftOperator.multiplication(X),
        _z(B, 0, 0, D0, D1),
    )


def _identity_term(printed: bool) -> QShiftOperator:
    """The typeset Z_III-family operators carry a "+ f[x]" that the relations do not admit."""
    return QShiftOperator.identity() if printed else QShiftOperator()


def _z_iii(printed: bool) -> Representation:
    a, b, c = (sym(n) for n in "abc")
    K0 = (
        _diff_term(-X * (1 - a * X) * (1 - b * X) * c / ((1 - X ** 2) * (1 - q * X ** 2)), 1)
        + _identity_term(printed)
        + _diff_term(-X * (a - X) * (b - X) * c / ((1 - X ** 2) * (q - X ** 2)), -1)
    )
    B = QM1 / q * (1 + a * b / q) * c
    D0 = -(q + 1) * QM1 / q ** 2 * (a + b) * c
    return Representation(
        "Z_III", "sym", K0, QShiftOperator.multiplication(X + ONE / X), _z(B, QQBAR2, 0, D0, 0),
        beta_constant=_beta_sign(printed) * (a + b) * (q - 1) / q,
    )


def _beta_sign(printed: bool) -> int:
    """The typeset K0beta subtracts its constant; the eigenvalues need it added."""
    return 1 if printed else -1


def _z_iii_d7(printed: bool) -> Representation:
    """The typeset backward term is -x^2 (a - x)/(...); only +x^2 (a - x)/(...) keeps L_sym invariant."""
    a = sym("a")
    sign = -1 if printed else 1
    K0 = (
        _diff_term(-X * (1 - a * X) / ((1 - X ** 2) * (1 - q * X ** 2)), 1)
        + _identity_term(printed)
        + _diff_term(sign * X ** 2 * (a - X) / ((1 - X ** 2) * (q - X ** 2)), -1)
    )
    B = QM1 / q
    D0 = -(q + 1) * QM1 / q ** 2 * a
    return Representation(
        "Z_III_D7", "sym", K0, QShiftOperator.multiplication(X + ONE / X), _z(B, QQBAR2, 0, D0, 0),
        beta_constant=_beta_sign(printed) * a * (q - 1) / q,
    )


def _z_iii_d8(printed: bool) -> Representation:
    K0 = QShiftOperator({
        (0, 1): -q * X * (1 + X ** 2) / ((q - X ** 2) * (q * X ** 2 - 1)),
        (-1, 1): -X ** 3 / ((X ** 2 - 1) * (X ** 2 - q)),
        (1, 1): -X / ((X ** 2 - 1) * (q * X ** 2 - 1)),
    })
    return Representation(
        "Z_III_D8", "sym", K0, QShiftOperator.multiplication(X + ONE / X), _z(QM1 / q, QQBAR2, 0, 0, 0),
        beta_constant=RationalFunction(),
    )


def _z_ii(printed: bool) -> Representation:
    a = sym("a")
    K0 = QShiftOperator({
        (0, 1): (1 + a) / X,
        (-1, 1): (X - 1) / X,
        (1, 1): -a / X,
    })
    B = QM1 * (1 + a) / q
    D1 = -QM1 * (1 + q) / q * a
    return Representation("Z_II", "poly", K0, QShiftOperator.multiplication(X), _z(B, 0, 0, 0, D1))


def _z_i(printed: bool) -> Representation:
    K0 = QShiftOperator({(0, 1): ONE / X, (-1, 1): (X - 1) / X})
    return Representation("Z_I", "poly", K0, QShiftOperator.multiplication(X), _z(QM1 / q, 0, 0, 0, 0))


_BUILDERS: dict[str, Callable[[bool], Representation]] = {
    "AW": _aw,
    "Z_V": _z_v,
    "Z_V_gamma": _z_v_gamma,
    "Z_IV": _z_iv,
    "Z_III": _z_iii,
    "Z_III_D7": _z_iii_d7,
    "Z_III_D8": _z_iii_d8,
    "Z_II": _z_ii,
    "Z_I": _z_i,
}
REPRESENTATIONS = tuple(_BUILDERS)
# representations whose typeset form differs from the corrected one
PRINTED_DIFFERS = ("Z_V", "Z_V_gamma", "Z_IV", "Z_III", "Z_III_D7")
# K0beta = q/(q^2 - 1)(K0 K1 - q K1 K0 - beta_constant); the typeset constants
PRINTED_BETA_CONSTANTS = {"Z_III": "(a+b)(q-1)/q", "Z_III_D7": "a(q-1)/q", "Z_III_D8": "0"}
VARIANTS = ("corrected", "printed")
_CACHE: dict[tuple, Representation] = {}


def catalogue(rep_id: str, variant: str = "corrected") -> Representation:
    """Operators and structure constants of a representation.

    ``variant="printed"`` gives the typeset formulas verbatim; ``"corrected"`` gives the
    forms that satisfy the relations (identical where no correction is needed).
    """
    if rep_id not in _BUILDERS:
        raise UnknownRepresentation(rep_id)
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    key = (rep_id, variant)
    if key not in _CACHE:
        rep = _BUILDERS[rep_id](variant == "printed")
        rep.variant = variant
        _CACHE[key] = rep
    return _CACHE[key]


def parameter_map(rep_id: str) -> dict[str, RationalFunction]:
    """The substitution from the algebra parameters to the operator parameters."""
    k0, k1, u0, u1 = (sym(n) for n in ("k0", "k1", "u0", "u1"))
    if rep_id == "AW":
        return abcd_from_uk()
    if rep_id in ("Z_V", "Z_III"):
        return {"a": -u1 / k1, "b": k1 * u1, "c": -Q / u0}
    if rep_id == "Z_V_gamma":
        return {"lam": u1, "a": -k1 * u1 / (Q * u0), "b": -k1 * u0 * u1 / Q, "c": -u1 ** 2 / q}
    if rep_id == "Z_IV":
        return {"lam": u1, "a": -u1 / (Q * u0), "c": -u1 ** 2 / q}
    if rep_id in _BUILDERS:
        return {}
    raise UnknownRepresentation(rep_id)


# ---------------------------------------------------------------------------
# relation checks


def zhedanov_relations(rep: Representation) -> list[tuple[str, QShiftOperator, QShiftOperator]]:
    """(id, left side, right side) of the two-generator relations and of zhe2/zhe3
    with K2 = q^{1/2} K0 K1 - q^{-1/2} K1 K0."""
    K0, K1, p = rep.K0, rep.K1, rep.params
    qq = q + ONE / q
    K1K0, K0K1 = K1 * K0, K0 * K1
    rel1 = qq * (K1 * K0K1) - K1 * K1K0 - K0K1 * K1
    rel2 = qq * (K0 * K1K0) - K0 * K0K1 - K1K0 * K0
    rhs1 = p.B * K1 + p.C0 * K0 + QShiftOperator.multiplication(p.D0)
    rhs2 = p.B * K0 + p.C1 * K1 + QShiftOperator.multiplication(p.D1)
    K2 = Q * K0K1 - (ONE / Q) * K1K0
    zhe2 = Q * (K1 * K2) - (ONE / Q) * (K2 * K1)
    zhe3 = Q * (K2 * K0) - (ONE / Q) * (K0 * K2)
    return [
        ("zhe-equiv-1", rel1, rhs1),
        ("zhe-equiv-2", rel2, rhs2),
        ("zhe2", zhe2, rhs1),
        ("zhe3", zhe3, rhs2),
    ]


def casimir(rep: Representation) -> QShiftOperator:
    """q^{-1/2}(1 - q^2) K0 K1 K2 + q K2^2 + B(K0 K1 + K1 K0) + q C0 K0^2 + C1/q K1^2
    + (1 + q) D0 K0 + (1 + 1/q) D1 K1."""
    K0, K1, p = rep.K0, rep.K1, rep.params
    K0K1, K1K0 = K0 * K1, K1 * K0
    K2 = Q * K0K1 - (ONE / Q) * K1K0
    return (
        ((1 - q * q) / Q) * (K0K1 * K2)
        + q * (K2 * K2)
        + p.B * (K0K1 + K1K0)
        + (q * p.C0) * (K0 * K0)
        + (p.C1 / q) * (K1 * K1)
        + ((1 + q) * p.D0) * K0
        + ((1 + ONE / q) * p.D1) * K1
    )


def confluent_casimir(rep: Representation) -> QShiftOperator:
    """Quartic Casimir of the two-relation presentation when C1 = 0:
    (K1 K0)^2 - (q^2 + 1 + q^-2) K0 K1 K0 K1 + (q + 1/q) C0 K0^2 + (q + 1/q) K0^2 K1^2
    + B((q + 1 + 1/q) K0 K1 + K1 K0) + (q + 1 + 1/q)(D0 K0 + D1 K1).

    The typeset coefficient of K0^2 is (q + 1/q)(q - 1/q)^2, which is only right when C0 is
    nonzero; with C0 = 0 (Z_IV, Z_II, Z_I) the term has to go.
    """
    K0, K1, p = rep.K0, rep.K1, rep.params
    K0K1, K1K0 = K0 * K1, K1 * K0
    qq, qqq = q + ONE / q, q + 1 + ONE / q
    return (
        K1K0 * K1K0
        - (q * q + 1 + ONE / (q * q)) * (K0K1 * K0K1)
        + (qq * p.C0) * (K0 * K0)
        + qq * ((K0 * K0) * (K1 * K1))
        + p.B * (qqq * K0K1 + K1K0)
        + (qqq * p.D0) * K0
        + (qqq * p.D1) * K1
    )


@dataclass
class RelationRecord:
    relation_id: str
    equality: Equality


def check_representation(rep: Representation | str, degree: int = 16, variant: str = "corrected") -> list[RelationRecord]:
    rep = catalogue(rep, variant) if isinstance(rep, str) else rep
    out = []
    for rid, lhs, rhs in zhedanov_relations(rep):
        out.append(RelationRecord(rid, operator_equal(lhs, rhs, degree, rep.space)))
    C = casimir(rep)
    zero = QShiftOperator()
    out.append(RelationRecord("casimir-K0", operator_equal(commutator(C, rep.K0), zero, degree, rep.space)))
    out.append(RelationRecord("casimir-K1", operator_equal(commutator(C, rep.K1), zero, degree, rep.space)))
    if rep.params.C1.is_zero():
        C = confluent_casimir(rep)
        for name, K in (("K0", rep.K0), ("K1", rep.K1)):
            out.append(RelationRecord(f"confluent-casimir-{name}", operator_equal(commutator(C, K), zero, degree, rep.space)))
    return out


def preserves_space(op: QShiftOperator, space: str, degree: int = 16) -> bool:
    """Whether op maps the basis up to ``degree`` back into the space."""
    for n in range(degree + 1):
        try:
            r = apply(op, basis(space, n))
        except NonPolynomialResult:
            return False
        if space == "sym" and not r.is_symmetric():
            return False
        if space == "poly" and r.degree_range()[0] < 0:
            return False
    return True


def precompose_scale(f: XLaurent, lam) -> XLaurent:
    """f[lam x]."""
    return XLaurent(substitute(f.rf, {"x": _rf(lam) * X}))


__all__ = [
    "Equality",
    "NonPolynomialResult",
    "PRINTED_BETA_CONSTANTS",
    "PRINTED_DIFFERS",
    "QShiftOperator",
    "REPRESENTATIONS",
    "Representation",
    "UnknownRepresentation",
    "Verdict",
    "XLaurent",
    "ZhedanovParams",
    "abcd_from_uk",
    "apply",
    "basic_representation",
    "basis",
    "casimir",
    "catalogue",
    "check_parameter_tables",
    "check_representation",
    "commutator",
    "compose",
    "confluent_casimir",
    "operator_equal",
    "parameter_map",
    "precompose_scale",
    "preserves_space",
    "zhe_par_abc_v",
    "zhe_par_abcd",
    "zhe_par_uk",
    "zhedanov_relations",
]
