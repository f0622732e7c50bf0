"""Terminating basic hypergeometric series and the q-Askey families that diagonalise
the catalogue operators."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .field import ONE, FieldError, RationalFunction, _den_mul, digit, normalize_factor, q, rf_sum, substitute, sym
from .qdiff import X, NonPolynomialResult, QShiftOperator, XLaurent, apply, catalogue, precompose_scale


class ZeroDenominatorPochhammer(FieldError):
    pass


class NonTerminatingSeries(ValueError):
    pass


def qpochhammer(alpha, k: int) -> RationalFunction:
    """(alpha; q)_k = prod_{j<k} (1 - alpha q^j)."""
    out = ONE
    for j in range(k):
        out = out * (1 - alpha * q ** j)
    return out


def _rf(c) -> RationalFunction:
    return c if isinstance(c, RationalFunction) else RationalFunction.const(c)


class Factored:
    """scalar * prod f^m over normalised polynomial factors; identical factors cancel on multiplication."""

    __slots__ = ("scalar", "factors")

    def __init__(self, scalar=ONE, factors: dict | None = None):
        self.scalar = _rf(scalar)
        self.factors = {f: m for f, m in (factors or {}).items() if m}

    @staticmethod
    def of(p) -> "Factored":
        p = _rf(p)
        if p.den or p.is_zero() or p.num.is_monomial():
            return Factored(p)
        unit, f = normalize_factor(p.num)
        return Factored(RationalFunction(unit), {f: 1})

    def is_zero(self) -> bool:
        return self.scalar.is_zero()

    def involves(self, name: str) -> bool:
        return self.scalar.num.involves(name) or any(f.involves(name) for f, _ in self.scalar.den) or any(
            f.involves(name) for f in self.factors
        )

    def __mul__(self, o):
        o = o if isinstance(o, Factored) else Factored(o)
        d = dict(self.factors)
        for f, m in o.factors.items():
            d[f] = d.get(f, 0) + m
        return Factored(self.scalar * o.scalar, d)

    __rmul__ = __mul__

    def inverse(self) -> "Factored":
        return Factored(ONE / self.scalar, {f: -m for f, m in self.factors.items()})

    def __truediv__(self, o):
        o = o if isinstance(o, Factored) else Factored(o)
        return self * o.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Factored(self.scalar ** n, {f: m * n for f, m in self.factors.items()})

    def substitute(self, bindings: dict) -> "Factored":
        out = Factored(substitute(self.scalar, bindings))
        for f, m in self.factors.items():
            out = out * Factored.of(substitute(RationalFunction(f), bindings)) ** m
        return out

    def to_rf(self) -> RationalFunction:
        num = self.scalar.num
        den = []
        for f, m in self.factors.items():
            if m > 0:
                num = num * f ** m
            else:
                den.append((f, -m))
        den.sort(key=lambda t: t[0].sort_key())
        return RationalFunction(num, _den_mul(self.scalar.den, tuple(den)))


def poch(alpha, k: int) -> Factored:
    """(alpha; q)_k, kept factored."""
    out = Factored()
    for j in range(k):
        out = out * Factored.of(1 - _rf(alpha) * q ** j)
    return out


def gaussian_binomial(n: int, k: int) -> RationalFunction:
    """[n choose k]_q as a polynomial in q."""
    if k < 0 or k > n:
        return RationalFunction()
    row = [ONE]
    for m in range(1, n + 1):
        row = [ONE] + [row[j - 1] + q ** j * row[j] for j in range(1, m)] + [ONE]
    return row[k]


@dataclass(frozen=True)
class PhiSeries:
    """r phi s (upper; lower; q, argument), terminating at degree n."""

    upper: tuple
    lower: tuple
    argument: RationalFunction
    n: int

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(_rf(u) for u in self.upper))
        object.__setattr__(self, "lower", tuple(_rf(v) for v in self.lower))
        object.__setattr__(self, "argument", _rf(self.argument))

    @property
    def r(self) -> int:
        return len(self.upper)

    @property
    def s(self) -> int:
        return len(self.lower)


def _terminating_index(series: PhiSeries) -> int:
    n = series.n
    if n < 0:
        raise ValueError("degree must be non-negative")
    for i, u in enumerate(series.upper):
        if (u - q ** (-n)).is_zero():
            return i
    raise NonTerminatingSeries(f"no upper parameter equals q^-{n}")


def series_terms(series: PhiSeries, prefactor=ONE, split_x: bool = False) -> list:
    """The n + 1 summands, each as a Factored product.

    (q^-n; q)_k / (q; q)_k is folded into (-1)^k q^{k(k-1)/2 - nk} [n choose k]_q.  With
    ``split_x`` each summand is returned as a pair (x-free Factored, x-dependent polynomial)
    when the argument is a monomial in x.
    """
    n = series.n
    t = _terminating_index(series)
    power = 1 + series.s - series.r
    prefactor = prefactor if isinstance(prefactor, Factored) else Factored(prefactor)
    others = [u for i, u in enumerate(series.upper) if i != t and not u.is_zero()]
    x_upper = [u for u in others if u.num.involves("x")] if split_x else []
    c_upper = [u for u in others if not any(u is v for v in x_upper)]
    lower = [v for v in series.lower if not v.is_zero()]
    z = series.argument
    zx = 0
    if split_x and z.num.involves("x"):
        if not z.num.is_monomial() or z.den:
            raise ValueError("argument is not a monomial in x")
        (key,) = z.num.t
        zx = digit(key, "x")
        z = z / X ** zx
    out = []
    coeff = prefactor
    xpart = ONE
    for k in range(n + 1):
        if k:
            j = k - 1
            for u in c_upper:
                coeff = coeff * Factored.of(1 - u * q ** j)
            for v in lower:
                factor = 1 - v * q ** j
                if factor.is_zero():
                    raise ZeroDenominatorPochhammer(f"lower parameter {v.render()} = q^-{j}")
                coeff = coeff / Factored.of(factor)
            for u in x_upper:
                xpart = xpart * (1 - u * q ** j)
            coeff = coeff * z
            if zx:
                xpart = xpart * X ** zx
        if coeff.is_zero():
            break
        sign = -1 if (k + k * power) % 2 else 1
        scalar = sign * q ** (k * (k - 1) // 2 * (1 + power) - n * k) * gaussian_binomial(n, k)
        term = coeff * scalar
        out.append((term, xpart) if split_x else term * Factored(xpart))
    return out


def rphis(series: PhiSeries, prefactor=ONE) -> RationalFunction:
    """prefactor * sum over k = 0..n of
    prod (upper; q)_k / prod (lower; q)_k / (q; q)_k * ((-1)^k q^{k(k-1)/2})^{1+s-r} * z^k."""
    return rf_sum((t.to_rf() for t in series_terms(series, prefactor)), cancel=False)


@dataclass(frozen=True)
class FamilySpec:
    family_id: str
    rep_id: str
    operator: str  # "K0" or "K0beta"
    symmetric: bool
    prefactor: Callable[[int], RationalFunction]
    series: Callable[[int], PhiSeries]
    eigenvalue: Callable[[int], RationalFunction]
    # P_n is checked as P_n[lambda x] when set
    scale: RationalFunction | None = None
    # parameter values at which the printed eigenvalue holds
    specialisation: tuple = ()
    # eigenvalue valid for all parameter values, when it differs from the printed one
    general_eigenvalue: Callable[[int], RationalFunction] | None = None


A, B, C, D, LAM = (sym(n) for n in ("a", "b", "c", "d", "lam"))
_SYM_UPPER = (A * X, A / X)


def _qn(n):
    return q ** (-n)


FAMILIES: dict[str, FamilySpec] = {
    "AW": FamilySpec(
        "AW", "AW", "K0", True,
        lambda n: poch(A * B, n) * poch(A * C, n) * poch(A * D, n)
        / (A ** n * poch(A * B * C * D * q ** (n - 1), n)),
        lambda n: PhiSeries((_qn(n), q ** (n - 1) * A * B * C * D) + _SYM_UPPER, (A * B, A * C, A * D), q, n),
        lambda n: q ** (-n) + A * B * C * D * q ** (n - 1),
    ),
    "CDqHahn": FamilySpec(
        "CDqHahn", "Z_V", "K0", True,
        lambda n: poch(A * B, n) * poch(A * C, n) / A ** n,
        lambda n: PhiSeries((_qn(n),) + _SYM_UPPER, (A * B, A * C), q, n),
        lambda n: q ** (-n),
    ),
    "BigQJacobi": FamilySpec(
        "BigQJacobi", "Z_V_gamma", "K0", False,
        lambda n: ONE,
        lambda n: PhiSeries((_qn(n), A * B * q ** (n + 1), X), (A * q, C * q), q, n),
        lambda n: (1 + q ** (2 * n + 1) * A * B) / q ** n,
        scale=LAM,
    ),
    "BigQLaguerre": FamilySpec(
        "BigQLaguerre", "Z_IV", "K0", False,
        lambda n: ONE,
        lambda n: PhiSeries((_qn(n), 0, X), (A * q, C * q), q, n),
        lambda n: q ** (-n),
        scale=LAM,
    ),
    "AlSalamChihara": FamilySpec(
        "AlSalamChihara", "Z_III", "K0beta", True,
        lambda n: poch(A * B, n) / A ** n,
        lambda n: PhiSeries((_qn(n),) + _SYM_UPPER, (A * B, 0), q, n),
        lambda n: q ** (-n) - 1 + (1 + A + B - A * B) / (q + 1),
        specialisation=(("c", 1),),
        general_eigenvalue=lambda n: C * (q ** (-n) - 1) + (A + B + C - A * B * C) / (q + 1),
    ),
    "ContBigQHermite": FamilySpec(
        "ContBigQHermite", "Z_III_D7", "K0beta", True,
        lambda n: ONE / A ** n,
        lambda n: PhiSeries((_qn(n),) + _SYM_UPPER, (0, 0), q, n),
        lambda n: q ** (-n) - 1 + (1 + A) / (q + 1),
    ),
    "ContQHermite": FamilySpec(
        "ContQHermite", "Z_III_D8", "K0beta", True,
        lambda n: X ** n,
        lambda n: PhiSeries((_qn(n), 0), (), q ** n / X ** 2, n),
        lambda n: q ** (-n) - 1 + ONE / (q + 1),
    ),
    "LittleQLaguerre": FamilySpec(
        "LittleQLaguerre", "Z_II", "K0", False,
        lambda n: ONE,
        lambda n: PhiSeries((_qn(n), 0), (A * q,), q * X, n),
        lambda n: q ** (-n),
    ),
    "LittleQLaguerreA0": FamilySpec(
        "LittleQLaguerreA0", "Z_I", "K0", False,
        lambda n: ONE,
        lambda n: PhiSeries((_qn(n), 0), (0,), q * X, n),
        lambda n: q ** (-n),
    ),
}
FAMILY_IDS = tuple(FAMILIES)


def family_polynomial(spec: FamilySpec | str, n: int) -> XLaurent:
    """The n-th member as printed (before any lambda precomposition)."""
    spec = FAMILIES[spec] if isinstance(spec, str) else spec
    if n < 0:
        raise ValueError("degree must be non-negative")
    return XLaurent(rphis(spec.series(n), spec.prefactor(n)))


@dataclass(frozen=True)
class EigenResult:
    family_id: str
    n: int
    variant: str
    holds: bool
    residual: str
    method: str = "direct"

    def __bool__(self):
        return self.holds


def _family_operator(spec: FamilySpec, variant: str, bindings: dict) -> QShiftOperator:
    rep = catalogue(spec.rep_id, variant)
    op = rep.K0beta if spec.operator == "K0beta" else rep.K0
    if bindings:
        op = QShiftOperator({k: substitute(c, bindings) for k, c in op.terms.items()})
    return op


def _eigen_setup(spec: FamilySpec, n: int, general: bool):
    if general and spec.general_eigenvalue is not None:
        return spec.general_eigenvalue(n), {}
    bindings = {k: RationalFunction.const(v) for k, v in spec.specialisation}
    return substitute(spec.eigenvalue(n), bindings), bindings


def supports_basis_method(spec: FamilySpec) -> bool:
    """True when P_n = sum_k c_k phi_k with x-free c_k and phi_k independent of n."""
    probe = spec.prefactor(1)
    probe = probe if isinstance(probe, Factored) else Factored(probe)
    return not probe.involves("x")


def verify_eigen(spec: FamilySpec | str, n: int, variant: str = "corrected", general: bool = False,
                 method: str = "auto") -> EigenResult:
    """Check that the family's operator (K0 or K0beta) maps P_n (or P_n[lambda x]) to eigenvalue * P_n.

    The printed eigenvalue is checked at the family's specialisation; ``general`` checks the
    all-parameter eigenvalue instead (same as printed for families without one).

    ``method="direct"`` applies the operator to the expanded polynomial.  ``method="basis"``
    writes P_n = sum_k c_k phi_k over the x-dependent Pochhammer products phi_k, expands
    op(phi_k) in the same basis (a triangular solve that fails if op(phi_k) leaves the span),
    and checks sum_k c_k M[k][j] = eigenvalue * c_j for every j.  The phi_k have distinct top
    degrees, so the two methods decide the same identity; "auto" picks "basis" when it applies.
    """
    spec = FAMILIES[spec] if isinstance(spec, str) else spec
    if n < 0:
        raise ValueError("degree must be non-negative")
    if method == "auto":
        method = "basis" if supports_basis_method(spec) else "direct"
    eig, bindings = _eigen_setup(spec, n, general)
    op = _family_operator(spec, variant, bindings)
    if method == "basis":
        holds, residual = _basis_check(spec, n, variant, op, eig, bindings)
        return EigenResult(spec.family_id, n, variant, holds, residual, method)
    p = family_polynomial(spec, n)
    if spec.scale is not None:
        p = precompose_scale(p, spec.scale)
    if bindings:
        p = p.substitute(bindings)
    # the x-free part of the denominator plays no role in an eigen equation
    p = XLaurent(RationalFunction(p.rf.num, tuple((f, m) for f, m in p.rf.den if f.involves("x"))))
    try:
        residual = apply(op, p) - p * eig
    except NonPolynomialResult as exc:
        return EigenResult(spec.family_id, n, variant, False, str(exc), method)
    return EigenResult(spec.family_id, n, variant, residual.is_zero(), "" if residual.is_zero() else residual.render(), method)


_BASIS_CACHE: dict = {}


def _basis(spec: FamilySpec, n: int, bindings: dict) -> tuple[list, list]:
    """(coefficients c_k, basis polynomials phi_k) with P_n = sum c_k phi_k."""
    terms = series_terms(spec.series(n), spec.prefactor(n), split_x=True)
    coeffs, phis = [], []
    for c, xpart in terms:
        phi = XLaurent(xpart)
        if spec.scale is not None:
            phi = precompose_scale(phi, spec.scale)
        if bindings:
            c = c.substitute(bindings)
            phi = phi.substitute(bindings)
        coeffs.append(c)
        phis.append(phi)
    return coeffs, phis


def _operator_matrix(spec: FamilySpec, variant: str, op: QShiftOperator, phis: list, bindings: dict):
    """rows[k] = {j: M[k][j]} with op(phi_k) = sum_j M[k][j] phi_j, or an error string.

    The phi_k do not depend on n, so rows are cached per family and extended on demand.
    """
    key = (spec.family_id, variant, tuple(sorted(bindings)))
    rows = _BASIS_CACHE.setdefault(key, [])
    if rows and isinstance(rows[-1], str):
        return rows[-1]
    tops = {}
    for j, phi in enumerate(phis):
        cs = phi.coefficients()
        tops[max(cs)] = (j, cs[max(cs)])
    for k in range(len(rows), len(phis)):
        try:
            r = apply(op, phis[k])
        except NonPolynomialResult as exc:
            rows.append(f"op(phi_{k}) is not a Laurent polynomial: {exc}")
            return rows[-1]
        row = {}
        while not r.is_zero():
            cs = r.coefficients()
            d = max(cs)
            if d not in tops:
                rows.append(f"op(phi_{k}) leaves the span of the basis: {r.render()}")
                return rows[-1]
            j, lead = tops[d]
            c = cs[d] / lead
            row[j] = c
            r = r - phis[j] * c
        rows.append(row)
    return rows[: len(phis)]


def _basis_check(spec, n, variant, op, eig, bindings) -> tuple[bool, str]:
    coeffs, phis = _basis(spec, n, bindings)
    rows = _operator_matrix(spec, variant, op, phis, bindings)
    if isinstance(rows, str):
        return False, rows
    bad = []
    for j in range(len(phis)):
        if coeffs[j].is_zero():
            parts = [coeffs[k].to_rf() * rows[k][j] for k in range(len(phis)) if j in rows[k]]
        else:
            # divide the j-th equation by c_j: the ratios c_k / c_j are small once factors cancel
            parts = [(coeffs[k] / coeffs[j]).to_rf() * rows[k][j] for k in range(len(phis)) if j in rows[k]]
            parts.append(-eig)
        if not rf_sum(parts).is_zero():
            bad.append(j)
    return (not bad), ("" if not bad else f"coefficient mismatch at basis indices {bad}")


def eigen_table(family_id: str, max_n: int = 8, variant: str = "corrected", general: bool = False,
                method: str = "auto") -> list[EigenResult]:
    return [verify_eigen(family_id, n, variant, general, method) for n in range(max_n + 1)]


__all__ = [
    "EigenResult",
    "FAMILIES",
    "FAMILY_IDS",
    "FamilySpec",
    "Factored",
    "NonTerminatingSeries",
    "PhiSeries",
    "ZeroDenominatorPochhammer",
    "eigen_table",
    "family_polynomial",
    "gaussian_binomial",
    "poch",
    "qpochhammer",
    "rphis",
    "series_terms",
    "supports_basis_method",
    "verify_eigen",
]
