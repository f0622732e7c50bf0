"""Semiclassical limits, Painleve monodromy cubics, shear-coordinate monodromy,
the Fricke cubic, the log-canonical Poisson bracket and the quantum shear algebra.

Commuting exponentials e^{s_i/2}, e^{p_i/2} are the registry variables s1h..s3h and
p1h..p3h, so every exponent is stored in half units.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .field import (
    I,
    ONE,
    Q,
    FieldError,
    Poly,
    RationalFunction,
    bar,
    decode,
    digit,
    monomial_key,
    q,
    substitute,
    sym,
    unit_key,
)
from .presentations import ResidualReport, check_presentation, presentation
from .qmat import EmbeddingAssignment, Matrix2, TorusMatrix2, embed
from .qtorus import TorusElement, classical_limit
from .spherical import MATRIX_ALGEBRAS, build_triple

SHEAR = ("s1h", "s2h", "s3h", "p1h", "p2h", "p3h")
_UNITS = tuple(unit_key(n) for n in SHEAR)


# ---------------------------------------------------------------------------
# commutative Laurent polynomials in e^{s_i/2}, e^{p_i/2}


class CommLaurent:
    """Commutative Laurent polynomial in the shear exponentials.

    Coefficients are rational functions of the remaining parameters; the
    denominator never involves a shear variable.
    """

    __slots__ = ("rf",)

    def __init__(self, rf: RationalFunction | None = None):
        rf = rf if rf is not None else RationalFunction()
        for fac, _ in rf.den:
            if any(fac.involves(n) for n in SHEAR):
                raise FieldError("shear variables may not appear in a denominator")
        self.rf = rf

    @staticmethod
    def const(c) -> "CommLaurent":
        return CommLaurent(_rf(c))

    @staticmethod
    def exp(s=(0, 0, 0), p=(0, 0, 0), coeff=1) -> "CommLaurent":
        """coeff * e^{(s.s + p.p)/2}: ``s`` and ``p`` are exponents in half units."""
        key = monomial_key(dict(zip(SHEAR, (*s, *p))))
        return CommLaurent(_rf(coeff) * RationalFunction(Poly.monomial(key)))

    def __add__(self, o):
        return CommLaurent(self.rf + _as_cl(o).rf)

    __radd__ = __add__

    def __neg__(self):
        return CommLaurent(-self.rf)

    def __sub__(self, o):
        return CommLaurent(self.rf - _as_cl(o).rf)

    def __rsub__(self, o):
        return _as_cl(o) - self

    def __mul__(self, o):
        return CommLaurent(self.rf * _as_cl(o).rf)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return CommLaurent(self.rf.inverse() ** (-n))
        return CommLaurent(self.rf ** n)

    def __eq__(self, o):
        try:
            return (self - o).is_zero()
        except TypeError:
            return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return self.rf.is_zero()

    def terms(self) -> dict[tuple, RationalFunction]:
        """{doubled exponent vector (s1, s2, s3, p1, p2, p3): coefficient}."""
        groups: dict[tuple, dict] = {}
        for k, c in self.rf.num.t.items():
            e = tuple(digit(k, n) for n in SHEAR)
            rest = k - sum(x * u for x, u in zip(e, _UNITS))
            groups.setdefault(e, {})[rest] = c
        return {e: RationalFunction(Poly(d), self.rf.den)._cancel() for e, d in sorted(groups.items())}

    def map_terms(self, f: Callable[[tuple], tuple]) -> "CommLaurent":
        out = CommLaurent()
        for e, c in self.terms().items():
            e2 = f(e)
            out = out + CommLaurent.exp(e2[:3], e2[3:], c)
        return out

    def substitute(self, bindings) -> "CommLaurent":
        return CommLaurent(substitute(self.rf, bindings))

    def render(self) -> str:
        return self.rf.render()

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"CommLaurent({self.render()})"


def _rf(c) -> RationalFunction:
    return c if isinstance(c, RationalFunction) else RationalFunction.const(c)


def _as_cl(o) -> CommLaurent:
    if isinstance(o, CommLaurent):
        return o
    if isinstance(o, RationalFunction):
        return CommLaurent(o)
    if isinstance(o, (int, Fraction)):
        return CommLaurent.const(o)
    raise TypeError(f"cannot convert {type(o).__name__} to CommLaurent")


def e_s(m1=0, m2=0, m3=0, coeff=1) -> CommLaurent:
    """coeff * e^{m1 s1 + m2 s2 + m3 s3} (whole units)."""
    return CommLaurent.exp((2 * m1, 2 * m2, 2 * m3), (0, 0, 0), coeff)


def perimeter_trace(i: int) -> CommLaurent:
    """G_i = e^{p_i/2} + e^{-p_i/2}."""
    up = [0, 0, 0]
    up[i - 1] = 1
    down = [-x for x in up]
    return CommLaurent.exp(p=tuple(up)) + CommLaurent.exp(p=tuple(down))


def shift_shear(x: CommLaurent, sign: int = 1) -> CommLaurent:
    """Rewrite in shifted coordinates s_i -> s_i + sign * p_i / 2.

    A term e^{a.s} in the old coordinates becomes e^{a.s} e^{-sign a.p/2} in the new
    ones; it needs every s exponent to be a whole unit.
    """

    def move(e):
        if any(a % 2 for a in e[:3]):
            raise FieldError("shift needs whole exponents of e^{s_i}")
        return (*e[:3], *(b - sign * a // 2 for a, b in zip(e[:3], e[3:])))

    return x.map_terms(move)


def classical_shear(x: TorusElement) -> CommLaurent:
    """Q -> 1 limit of a quantum-torus element with p-dependent coefficients."""
    return CommLaurent(classical_limit(x))


# ---------------------------------------------------------------------------
# classical cubics of the confluent algebras


@dataclass(frozen=True)
class ClassicalCubic:
    algebra_id: str
    name: str
    # (coefficient, (e1, e2, e3)) meaning coefficient * X1^e1 X2^e2 X3^e3
    terms: tuple

    def evaluate(self, X1, X2, X3):
        total = RationalFunction()
        for c, (a, b, d) in self.terms:
            total = total + c * X1 ** a * X2 ** b * X3 ** d
        return total

    def render(self) -> str:
        parts = []
        for c, exps in self.terms:
            mono = " ".join(
                f"X{i + 1}" if e == 1 else f"X{i + 1}^{e}" for i, e in enumerate(exps) if e
            )
            coeff = c.render()
            if not mono:
                parts.append(f"({coeff})")
            elif coeff == "1":
                parts.append(mono)
            elif coeff == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"({coeff}) {mono}")
        return " + ".join(parts).replace("+ -", "- ") + " = 0"


def _cubics() -> dict[str, ClassicalCubic]:
    k0, k1, u0, u1 = (sym(n) for n in ("k0", "k1", "u0", "u1"))
    K0, K1, U0, U1 = bar(k0), bar(k1), bar(u0), bar(u1)
    iu = ONE / u0
    c = RationalFunction.const
    X123, X1, X2, X3 = (1, 1, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1)
    X1s, X2s, X3s, one = (2, 0, 0), (0, 2, 0), (0, 0, 2), (0, 0, 0)
    table = {
        "H": ("PVI", [
            (c(1), X123), (c(-1), X1s), (c(-1), X2s), (c(-1), X3s),
            (U0 * K0 + U1 * K1, X1), (K1 * U0 + K0 * U1, X2), (K0 * K1 + U0 * U1, X3),
            (K0 ** 2 + K1 ** 2 + U0 ** 2 + U1 ** 2 - K0 * K1 * U0 * U1 + 4, one),
        ]),
        "H_V": ("PV", [
            (c(1), X123), (c(-1), X2s), (c(-1), X3s), (iu, X1),
            (-(U1 + K1 * iu), X2), (-(U1 * iu + K1), X3), (1 + iu ** 2 - K1 * U1 * iu, one),
        ]),
        "H_IV": ("PIV", [
            (c(1), X123), (c(-1), X3s), (iu, X1), (iu, X2), (1 - U1 * iu, X3), (iu ** 2 + U1 * iu, one),
        ]),
        "H_III": ("PIII", [
            (c(1), X123), (c(-1), X2s), (c(-1), X3s), (-K1 * iu, X2), (-U1 * iu, X3), (iu ** 2, one),
        ]),
        "H_II": ("PII", [
            (c(1), X123), (iu, X1), (iu, X2), (iu, X3), ((1 - u0) * iu ** 2, one),
        ]),
        "H_I": ("PI", [(c(1), X123), (c(1), X2), (c(1), X3), (c(1), one)]),
    }
    return {a: ClassicalCubic(a, n, tuple(t)) for a, (n, t) in table.items()}


CLASSICAL_CUBICS = _cubics()


def classical_cubic(algebra_id: str) -> ClassicalCubic:
    try:
        return CLASSICAL_CUBICS[algebra_id]
    except KeyError:
        raise KeyError(f"no classical cubic for {algebra_id!r}") from None


def classical_triple(algebra_id: str, variant: str = "corrected") -> list[Matrix2]:
    """Q -> 1 images of X1, X2, X3 (with the central u0 reduction applied).

    On the matrices V̌1 - V̌1^{-1} is already ū1 times the identity, so the
    operator coefficients of the triple need no separate replacement.
    """
    tr = build_triple(algebra_id, variant)
    out = []
    for i in (1, 2, 3):
        m = tr.assign.finalize(tr.assign.generators[f"X{i}"])
        out.append(m.map(classical_limit))
    return out


def check_classical_cubic(algebra_id: str, variant: str = "corrected") -> ResidualReport:
    if algebra_id not in MATRIX_ALGEBRAS:
        raise KeyError(f"{algebra_id!r} has no matrix embedding")
    cubic = classical_cubic(algebra_id)
    mats = classical_triple(algebra_id, variant)
    rep = ResidualReport(f"classical {cubic.name} cubic on {algebra_id}")
    scalars = []
    for i, m in enumerate(mats, 1):
        off = Matrix2(m.b, m.c, m.a - m.d, RationalFunction())
        rep.add(f"X{i}-scalar", off)
        scalars.append(m.a)
    rep.add(f"cubic-{cubic.name}", cubic.evaluate(*scalars))
    return rep


# ---------------------------------------------------------------------------
# Fock matrices and monodromy


@dataclass(frozen=True)
class FockGenerators:
    R: Matrix2
    L: Matrix2

    @staticmethod
    def edge(half: CommLaurent) -> Matrix2:
        """E_s for half = e^{s/2}."""
        return Matrix2(CommLaurent(), -half, half ** -1, CommLaurent())


def _cm(*xs) -> Matrix2:
    return Matrix2(*(_as_cl(x) for x in xs))


def fock_generators() -> FockGenerators:
    return FockGenerators(_cm(1, 1, -1, 0), _cm(0, 1, -1, -1))


def _half(name: str) -> CommLaurent:
    return CommLaurent(sym(name))


def _edges():
    return {n: FockGenerators.edge(_half(n)) for n in SHEAR}


def _prod(ms) -> Matrix2:
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


def fock_monodromy_words() -> dict[str, Matrix2]:
    """M1, M2, M3 as products of Fock matrices; the last factor of M1 is read as E_{s1}."""
    F, E = fock_generators(), _edges()
    R, L = F.R, F.L
    return {
        "M1": _prod([E["s1h"], R, E["p1h"], R, E["s1h"]]),
        "M2": _prod([R, E["s2h"], R, E["p2h"], R, E["s2h"], L]).scale(_as_cl(-1)),
        "M3": _prod([L, E["s3h"], R, E["p3h"], R, E["s3h"], R]).scale(_as_cl(-1)),
    }


def fock_trace_words() -> dict[str, CommLaurent]:
    """G23, G31, G12 as minus traces of Fock words (unshifted coordinates)."""
    F, E = fock_generators(), _edges()
    R, L = F.R, F.L

    def loop(i, j):
        si, pi, sj, pj = E[f"s{i}h"], E[f"p{i}h"], E[f"s{j}h"], E[f"p{j}h"]
        return [si, R, pi, R, si, R, sj, R, pj, R, sj]

    words = {
        "G23": [R] + loop(2, 3) + [R],
        "G31": [L] + loop(3, 1),
        "G12": loop(1, 2) + [L],
    }
    out = {}
    for name, w in words.items():
        m = _prod(w)
        out[name] = -(m.a + m.d)
    return out


def shear_traces() -> dict[str, CommLaurent]:
    """Closed forms of G12, G23, G31, G1, G2, G3 and G_inf in shifted shear coordinates."""
    G = {i: perimeter_trace(i) for i in (1, 2, 3)}

    def pair(i, j):
        def ex(a, b):
            v = [0, 0, 0]
            v[i - 1] += a
            v[j - 1] += b
            return e_s(*v)

        return -ex(1, 1) - ex(-1, -1) - ex(-1, 1) - G[i] * ex(0, 1) - G[j] * ex(-1, 0)

    out = {"G23": pair(2, 3), "G31": pair(3, 1), "G12": pair(1, 2)}
    out.update({f"G{i}": G[i] for i in (1, 2, 3)})
    out["Ginf"] = e_s(1, 1, 1) + e_s(-1, -1, -1)
    return out


def fricke_constants(G1, G2, G3, Ginf) -> dict:
    """omega_k = G_i G_j + G_k G_inf and omega_inf, with omega_3 paired with G12."""
    return {
        "omega1": G2 * G3 + G1 * Ginf,
        "omega2": G3 * G1 + G2 * Ginf,
        "omega3": G1 * G2 + G3 * Ginf,
        "omega_inf": G1 * G1 + G2 * G2 + G3 * G3 + Ginf * Ginf + G1 * G2 * G3 * Ginf - 4,
    }


def fricke_form(G12, G23, G31, w: dict):
    return (
        G12 * G12 + G23 * G23 + G31 * G31 + G12 * G23 * G31
        - w["omega3"] * G12 - w["omega1"] * G23 - w["omega2"] * G31 + w["omega_inf"]
    )


@dataclass(frozen=True)
class Monodromy:
    kind: str
    variant: str
    M1: Matrix2
    M2: Matrix2
    M3: Matrix2
    Minf: Matrix2

    def as_dict(self) -> dict:
        return {"M1": self.M1, "M2": self.M2, "M3": self.M3, "Minf": self.Minf}


def build_monodromy(kind: str = "classical", variant: str = "corrected") -> Monodromy:
    """Monodromy matrices in shear coordinates.

    ``printed`` keeps the typeset lower-left entry G3 + 2 e^{-s3} of M3 (determinant
    e^{-2 s3}); ``corrected`` uses G3 + e^{s3} + e^{-s3}, as produced by the Fock word.
    The p_i stay commuting parameters in the quantum build.
    """
    if kind not in ("classical", "quantum"):
        raise ValueError(f"unknown kind {kind!r}")
    if variant not in ("corrected", "printed"):
        raise ValueError(f"unknown variant {variant!r}")
    if kind == "classical":
        ex = e_s
        G = {i: perimeter_trace(i) for i in (1, 2, 3)}
        wrap = _as_cl
    else:
        ex = TorusElement.exp
        G = {i: TorusElement(perimeter_trace(i).rf) for i in (1, 2, 3)}
        wrap = lambda x: x if isinstance(x, TorusElement) else TorusElement.scalar(x)  # noqa: E731

    def mat(a, b, c, d):
        return Matrix2(*(wrap(x) for x in (a, b, c, d)))

    M1 = mat(0, ex(1, 0, 0, -1), ex(-1, 0, 0), -G[1])
    M2 = mat(-G[2] - ex(0, 1, 0), -G[2] - ex(0, 1, 0) - ex(0, -1, 0), ex(0, 1, 0), ex(0, 1, 0))
    corner = ex(0, 0, -1) if variant == "printed" else ex(0, 0, 1)
    M3 = mat(-G[3] - ex(0, 0, -1), ex(0, 0, -1, -1), G[3] + corner + ex(0, 0, -1), ex(0, 0, -1))
    s_inf = (
        ex(-1, -1, 0) * G[3] + ex(-1, 0, 1) * G[2] + ex(0, 1, 1) * G[1]
        + ex(-1, -1, -1) + ex(-1, -1, 1) + ex(-1, 1, 1)
    )
    Minf = mat(-ex(-1, -1, -1), 0, s_inf, -ex(1, 1, 1))
    if kind == "quantum":
        M1, M2, M3, Minf = (TorusMatrix2(*m.entries()) for m in (M1, M2, M3, Minf))
    return Monodromy(kind, variant, M1, M2, M3, Minf)


def _trace(m: Matrix2):
    return m.a + m.d


def _det(m: Matrix2):
    return m.a * m.d - m.b * m.c


def check_classical_monodromy(variant: str = "corrected") -> ResidualReport:
    mon = build_monodromy("classical", variant)
    rep = ResidualReport(f"classical monodromy ({variant})")
    one = Matrix2.identity(_as_cl(1))
    rep.add("M1M2M3Minf=1", mon.M1 @ mon.M2 @ mon.M3 @ mon.Minf - one)
    for name, m in mon.as_dict().items():
        rep.add(f"det-{name}", _det(m) - 1)
    closed = shear_traces()
    for i, m in ((1, mon.M1), (2, mon.M2), (3, mon.M3)):
        # the matrices as typeset have trace -G_i
        rep.add(f"tr-M{i}=-G{i}", _trace(m) + closed[f"G{i}"])
    rep.add("tr-Minf=-Ginf", _trace(mon.Minf) + closed["Ginf"])
    for name, (a, b) in (("G23", (mon.M2, mon.M3)), ("G31", (mon.M3, mon.M1)), ("G12", (mon.M1, mon.M2))):
        rep.add(f"tr-{name}", _trace(a @ b) - closed[name])
    words = fock_monodromy_words()
    for name, w in words.items():
        rep.add(f"fock-{name}", w.map(shift_shear) - getattr(mon, name))
    return rep


def check_quantum_monodromy(variant: str = "corrected", typeset_exponents: bool = False) -> ResidualReport:
    """Quadratic relations of M1..Minf and Minf M1 M2 M3 = q^{-1/2}.

    ``typeset_exponents`` uses e^{p2/2} in the M3 relation and e^{s1-s2-s3} in the
    Minf relation, as typeset.
    """
    mon = build_monodromy("quantum", variant)
    rep = ResidualReport(f"quantum monodromy ({variant})")
    Id = TorusMatrix2.identity()

    def t(x):
        return x if isinstance(x, TorusElement) else TorusElement(x.rf)

    def quad(m, a, b):
        return (m + Id.scale(t(a))) @ (m + Id.scale(t(b)))

    p = {i: CommLaurent.exp(p=tuple(1 if j == i else 0 for j in (1, 2, 3))) for i in (1, 2, 3)}
    rep.add("quad-M1", quad(mon.M1, p[1], p[1] ** -1))
    rep.add("quad-M2", quad(mon.M2, p[2], p[2] ** -1))
    rep.add("quad-M3", quad(mon.M3, p[2] if typeset_exponents else p[3], p[3] ** -1))
    second = TorusElement.exp(1, -1, -1) if typeset_exponents else TorusElement.exp(-1, -1, -1)
    rep.add("quad-Minf", quad(mon.Minf, TorusElement.exp(1, 1, 1), second))
    rep.add("product", mon.Minf @ mon.M1 @ mon.M2 @ mon.M3 - Id.scale(TorusElement(ONE / Q)))
    return rep


def check_fricke() -> ResidualReport:
    """Fricke cubic on the shear parameterisation, a degenerate spot value, and the
    Fock-word traces compared with the closed forms (the comparison goes to notes)."""
    c = shear_traces()
    w = fricke_constants(c["G1"], c["G2"], c["G3"], c["Ginf"])
    rep = ResidualReport("Fricke cubic")
    rep.add("fricke", fricke_form(c["G12"], c["G23"], c["G31"], w))
    spot = {n: ONE for n in SHEAR}
    vals = {k: v.substitute(spot).rf for k, v in c.items()}
    ws = fricke_constants(vals["G1"], vals["G2"], vals["G3"], vals["Ginf"])
    rep.add("spot-G12=-7", vals["G12"] + 7)
    rep.add("spot-G1=2", vals["G1"] - 2)
    rep.add("spot-fricke", fricke_form(vals["G12"], vals["G23"], vals["G31"], ws))
    for name, word in fock_trace_words().items():
        raw = (word - c[name]).is_zero()
        shifted = (shift_shear(word) - c[name]).is_zero()
        rep.notes.append(
            f"{name}: Fock word {'matches' if raw else 'differs from'} the closed form as is; "
            f"after s_i -> s_i + p_i/2 it {'matches' if shifted else 'differs'}"
        )
    return rep


# ---------------------------------------------------------------------------
# Poisson structure


def _omega_half(a, b) -> Fraction:
    w = (a[0] * b[1] - a[1] * b[0]) + (a[1] * b[2] - a[2] * b[1]) + (a[2] * b[0] - a[0] * b[2])
    return Fraction(w, 4)


def poisson_bracket(f: CommLaurent, g: CommLaurent) -> CommLaurent:
    """Log-canonical bracket with {s1, s2} = {s2, s3} = {s3, s1} = 1; the p_i are Casimirs."""
    f, g = _as_cl(f), _as_cl(g)
    out = CommLaurent()
    gt = g.terms()
    for ea, ca in f.terms().items():
        for eb, cb in gt.items():
            w = _omega_half(ea[:3], eb[:3])
            if w:
                e = tuple(x + y for x, y in zip(ea, eb))
                out = out + CommLaurent.exp(e[:3], e[3:], ca * cb * RationalFunction.const(w))
    return out


def check_poisson_structure() -> tuple[ResidualReport, int]:
    """Compare {x1, x2}, {x2, x3}, {x3, x1} (x1 = G23, x2 = G31, x3 = G12) with the
    partial derivatives of the Fricke polynomial; returns the report and the sign s
    with {x_i, x_j} = s * d(phi)/d(x_k)."""
    c = shear_traces()
    w = fricke_constants(c["G1"], c["G2"], c["G3"], c["Ginf"])
    x1, x2, x3 = c["G23"], c["G31"], c["G12"]
    grads = {
        "x1": 2 * x1 + x2 * x3 - w["omega1"],
        "x2": 2 * x2 + x3 * x1 - w["omega2"],
        "x3": 2 * x3 + x1 * x2 - w["omega3"],
    }
    b12 = poisson_bracket(x1, x2)
    sign = 1 if (b12 - grads["x3"]).is_zero() else -1
    rep = ResidualReport(f"shear Poisson bracket (sign {sign:+d})")
    rep.add("{x1,x2}", b12 - sign * grads["x3"])
    rep.add("{x2,x3}", poisson_bracket(x2, x3) - sign * grads["x1"])
    rep.add("{x3,x1}", poisson_bracket(x3, x1) - sign * grads["x2"])
    return rep, sign


# ---------------------------------------------------------------------------
# quantum shear algebra


def quantum_shear_triple() -> list[TorusElement]:
    """x1, x2, x3: the closed forms of G23, G31, G12 with Weyl-ordered exponentials."""
    G = {i: TorusElement(perimeter_trace(i).rf) for i in (1, 2, 3)}

    def pair(i, j):
        def ex(a, b):
            v = [0, 0, 0]
            v[i - 1] += a
            v[j - 1] += b
            return TorusElement.exp(*v)

        return -ex(1, 1) - ex(-1, -1) - ex(-1, 1) - G[i] * ex(0, 1) - G[j] * ex(-1, 0)

    return [pair(2, 3), pair(3, 1), pair(1, 2)]


def quantum_fricke_constants() -> dict:
    G = {i: TorusElement(perimeter_trace(i).rf) for i in (1, 2, 3)}
    Ginf = TorusElement.exp(1, 1, 1) + TorusElement.exp(-1, -1, -1)
    return fricke_constants(G[1], G[2], G[3], Ginf)


def q_comm_relations(typeset: bool = False) -> list[tuple[str, TorusElement]]:
    """Q x_i x_{i+1} - Q^{-1} x_{i+1} x_i - (q^{-1} - q) x_k - sign (Q^{-1} - Q) omega_k.

    The derived relation has sign -1; ``typeset`` uses +1.
    """
    x = quantum_shear_triple()
    w = quantum_fricke_constants()
    sign = 1 if typeset else -1
    out = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        lhs = x[i] * x[j] * Q - x[j] * x[i] * (ONE / Q)
        rhs = x[k] * (ONE / q - q) + w[f"omega{k + 1}"] * (sign * (ONE / Q - Q))
        out.append((f"q-comm-{i + 1}", lhs - rhs))
    return out


def q_cubic(typeset: bool = False) -> TorusElement:
    """Quantum cubic of x1, x2, x3.

    Derived form: Q x3 x1 x2 + q x3^2 + q^{-1} x1^2 + q x2^2 - Q omega3 x3
    - Q^{-1} omega1 x1 - Q omega2 x2 + omega_inf - (Q - Q^{-1})^2.
    ``typeset`` swaps the weights of omega3 and omega1 and drops the constant.
    """
    x1, x2, x3 = quantum_shear_triple()
    w = quantum_fricke_constants()
    w3, w1 = (ONE / Q, Q) if typeset else (Q, ONE / Q)
    out = (
        x3 * x1 * x2 * Q + x3 * x3 * q + x1 * x1 * (ONE / q) + x2 * x2 * q
        - w["omega3"] * x3 * w3 - w["omega1"] * x1 * w1 - w["omega2"] * x2 * Q
        + w["omega_inf"]
    )
    if not typeset:
        out = out - (Q - ONE / Q) ** 2
    return out


def check_quantum_shear(typeset: bool = False) -> ResidualReport:
    rep = ResidualReport("quantum shear algebra" + (" (typeset)" if typeset else ""))
    for rid, r in q_comm_relations(typeset):
        rep.add(rid, r)
    rep.add("q-cubic", q_cubic(typeset))
    classical = shear_traces()
    for i, (xh, name) in enumerate(zip(quantum_shear_triple(), ("G23", "G31", "G12")), 1):
        rep.add(f"x{i}-classical-limit", classical_shear(xh) - classical[name])
    return rep


# ---------------------------------------------------------------------------
# the monodromy matrices as the embedding of H


def monodromy_parameters() -> dict[str, RationalFunction]:
    """u1 = -i e^{-p1/2}, k0 = -i e^{-p3/2}, k1 = -i e^{-p2/2}, u0 = -i e^{-S1-S2-S3}."""
    return {
        "k0": -I / sym("p3h"),
        "k1": -I / sym("p2h"),
        "u1": -I / sym("p1h"),
        "u0": -I * TorusElement.exp(-1, -1, -1).rf,
    }


def monodromy_assignment(variant: str = "corrected") -> EmbeddingAssignment:
    """V0 -> i M3, V1 -> i M2, V̌1 -> i M1, V̌0 -> i Minf."""
    mon = build_monodromy("quantum", variant)
    i = TorusElement(I)
    mats = {
        "V0": mon.M3.scale(i),
        "V1": mon.M2.scale(i),
        "Vc1": mon.M1.scale(i),
        "Vc0": mon.Minf.scale(i),
    }
    mats = {k: TorusMatrix2(*v.entries()) for k, v in mats.items()}
    par = monodromy_parameters()
    Id = TorusMatrix2.identity()
    inv = {
        g: mats[g] - Id.scale(TorusElement(substitute(bar(sym(p)), par)))
        for g, p in (("V0", "k0"), ("V1", "k1"), ("Vc0", "u0"), ("Vc1", "u1"))
    }
    return EmbeddingAssignment("H_monodromy", mats, {}, inv, {}, (par,))


def check_final_identification(variant: str = "corrected") -> ResidualReport:
    assign = monodromy_assignment(variant)
    rep = ResidualReport(f"H on i*monodromy ({variant})")
    rep.extend(check_presentation(presentation("H"), assign))
    par = monodromy_parameters()
    H = embed("H")
    for g in ("V0", "V1", "Vc0", "Vc1"):
        image = H.generators[g].map(lambda x: x.substitute(par))
        rep.add(f"{g}-entrywise", image - assign.generators[g])
    rep.add("k1-bar", substitute(bar(sym("k1")), par) + I * perimeter_trace(2).rf)
    return rep


__all__ = [
    "CLASSICAL_CUBICS",
    "ClassicalCubic",
    "CommLaurent",
    "FockGenerators",
    "Monodromy",
    "build_monodromy",
    "check_classical_cubic",
    "check_classical_monodromy",
    "check_final_identification",
    "check_fricke",
    "check_poisson_structure",
    "check_quantum_monodromy",
    "check_quantum_shear",
    "classical_cubic",
    "classical_shear",
    "classical_triple",
    "e_s",
    "fock_generators",
    "fock_monodromy_words",
    "fock_trace_words",
    "fricke_constants",
    "monodromy_assignment",
    "monodromy_parameters",
    "perimeter_trace",
    "poisson_bracket",
    "q_comm_relations",
    "q_cubic",
    "quantum_shear_triple",
    "shear_traces",
    "shift_shear",
]
