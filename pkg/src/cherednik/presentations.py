"""Noncommutative expressions, the catalogue of algebra presentations and the
generator changes between them.

Relations are stored as expressions that must vanish (right-hand sides moved
to the left).  A generator symbol may carry the suffix ``^-1`` for its inverse.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping

from .field import ONE, ZERO, Q, RationalFunction, as_rational, bar, is_equal, substitute, sym
from .qmat import EmbeddingAssignment, Matrix2, NoInverseAvailable, embed, eval_nc


class NCExpression:
    """Finite sum of coefficient * word; words are tuples of generator symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms: dict[tuple, RationalFunction] = {}
        if terms:
            for w, c in terms.items():
                c = as_rational(c)
                if not c.is_zero():
                    self.terms[tuple(w)] = c

    @staticmethod
    def gen(name: str, inverse: bool = False) -> "NCExpression":
        return NCExpression({(name + "^-1" if inverse else name,): ONE})

    @staticmethod
    def scalar(c) -> "NCExpression":
        return NCExpression({(): c})

    def __add__(self, o):
        o = _as_nc(o)
        d = dict(self.terms)
        for w, c in o.terms.items():
            v = d[w] + c if w in d else c
            if v.is_zero():
                d.pop(w, None)
            else:
                d[w] = v
        out = NCExpression()
        out.terms = d
        return out

    __radd__ = __add__

    def __neg__(self):
        out = NCExpression()
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, o):
        return self + (-_as_nc(o))

    def __rsub__(self, o):
        return _as_nc(o) - self

    def __mul__(self, o):
        o = _as_nc(o)
        d: dict[tuple, RationalFunction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in o.terms.items():
                w = w1 + w2
                d[w] = d[w] + c1 * c2 if w in d else c1 * c2
        return NCExpression(d)

    def __rmul__(self, o):
        return _as_nc(o) * self

    def __truediv__(self, c):
        return self * NCExpression.scalar(ONE / as_rational(c))

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) == 1:
                (w, c), = self.terms.items()
                inv_word = tuple(_invert_symbol(s) for s in reversed(w))
                return NCExpression({inv_word: ONE / c}) ** (-n)
            raise NoInverseAvailable("only monomial expressions can be inverted formally")
        r = NCExpression.scalar(1)
        for _ in range(n):
            r = r * self
        return r

    def is_zero(self) -> bool:
        return not self.terms

    def substitute_params(self, bindings) -> "NCExpression":
        return NCExpression({w: substitute(c, bindings) for w, c in self.terms.items()})

    def symbols(self) -> set[str]:
        return {s for w in self.terms for s in w}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            word = "*".join(w)
            if not word:
                parts.append(c.render())
            elif c == ONE:
                parts.append(word)
            elif c == -ONE:
                parts.append("-" + word)
            else:
                parts.append(f"({c.render()})*{word}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"NCExpression({self.render()})"


def _invert_symbol(s: str) -> str:
    return s[:-3] if s.endswith("^-1") else s + "^-1"


def _as_nc(o) -> NCExpression:
    if isinstance(o, NCExpression):
        return o
    return NCExpression.scalar(as_rational(o))


def gens(*names: str):
    return tuple(NCExpression.gen(n) for n in names)


def inv(name: str) -> NCExpression:
    return NCExpression.gen(name, inverse=True)


# ---------------------------------------------------------------------------
# catalogue

k0, k1, u0, u1 = sym("k0"), sym("k1"), sym("u0"), sym("u1")
a, b, c, d = sym("a"), sym("b"), sym("c"), sym("d")
q = Q * Q


@dataclass
class AlgebraPresentation:
    id: str
    generators: tuple
    relations: list  # (relation id, NCExpression)
    constraints: tuple = ("q^m != 1 for m > 0",)

    def relation(self, rel_id: str) -> NCExpression:
        for rid, e in self.relations:
            if rid == rel_id:
                return e
        raise KeyError(rel_id)


def _quad(x: NCExpression, p: RationalFunction) -> NCExpression:
    return (x - p) * (x + ONE / p)


def _dahas():
    V0, V1, Vc0, Vc1 = gens("V0", "V1", "Vc0", "Vc1")
    out = {}
    out["H"] = [
        ("daha1", _quad(V0, k0)),
        ("daha2", _quad(V1, k1)),
        ("daha3", _quad(Vc0, u0)),
        ("daha4", _quad(Vc1, u1)),
        ("daha5", Vc1 * V1 * V0 * Vc0 - ONE / Q),
    ]
    out["H_V"] = [
        ("dahaV1", V0 * V0 + V0),
        ("dahaV2", _quad(V1, k1)),
        ("dahaV3", Vc0 * Vc0 + Vc0 / u0),
        ("dahaV4", _quad(Vc1, u1)),
        ("dahaV5", Q * Vc1 * V1 * V0 - Vc0 - ONE / u0),
        ("dahaV6", Q * Vc0 * Vc1 * V1 - V0 - 1),
    ]
    out["H_IV"] = [
        ("dahaIV1", V0 * V0 + V0),
        ("dahaIV2", V1 * V1 + V1),
        ("dahaIV3", Vc0 * Vc0 + Vc0 / u0),
        ("dahaIV4", _quad(Vc1, u1)),
        ("dahaIV5", Q * Vc1 * V1 * V0 - Vc0 - ONE / u0),
        ("dahaIV6", Vc0 * Vc1 * V1),
        ("dahaIV7", V0 * Vc0),
    ]
    out["H_III"] = [
        ("dahaIII1", V0 * V0),
        ("dahaIII2", _quad(V1, k1)),
        ("dahaIII3", Vc0 * Vc0 + Vc0 / u0),
        ("dahaIII4", _quad(Vc1, u1)),
        ("dahaIII5", Q * Vc1 * V1 * V0 - Vc0 - ONE / u0),
        ("dahaIII6", Q * Vc0 * Vc1 * V1 - V0),
    ]
    out["H_II"] = [
        ("dahaII1", V0 * V0 + V0),
        ("dahaII2", V1 * V1 + V1),
        ("dahaII3", Vc0 * Vc0 + Vc0 / u0),
        ("daha-lim4-3", Vc1 * Vc1 + Vc1),
        ("dahaII4", Q * Vc1 * V1 * V0 - Vc0 - ONE / u0),
        ("dahaII5", Vc0 * Vc1),
        ("dahaII6", V0 * Vc0),
    ]
    out["H_I"] = [
        ("dahaI1", V0 * V0),
        ("dahaI2", V1 * V1 + V1),
        ("dahaI3", Vc0 * Vc0 + Vc0),
        ("dahaI4", Vc1 * Vc1 + Vc1),
        ("dahaI5", Q * Vc1 * V1 * V0 - Vc0 - 1),
        ("dahaI6", Vc0 * Vc1),
        ("dahaI7", V0 * Vc0),
    ]
    out["H_V_gamma"] = [
        ("dahaV1gamma", _quad(V0, k0)),
        ("dahaV2gamma", (V1 + 1) * V1),
        ("dahaV3gamma", Vc0 * Vc0 + Vc0 / u0),
        ("dahaV4gamma", _quad(Vc1, u1)),
        ("dahaV5gamma", Q * Vc1 * V1 * V0 - Vc0 - ONE / u0),
        ("dahaV6gamma", Q * V0 * Vc0 * Vc1 - V1 - 1),
    ]
    return out


def _sahis():
    T0, T1, X, W = gens("T0", "T1", "X", "W")
    Xinv = inv("X")
    out = {}
    out["sahi_H"] = [
        ("sahi1a", X * W - 1),
        ("sahi1b", W * X - 1),
        ("sahi2", (T1 + a * b) * (T1 + 1)),
        ("sahi3", (T0 + c * d / q) * (T0 + 1)),
        ("sahi4", (T1 * X + a) * (T1 * X + b)),
        ("sahi5", (q * T0 * Xinv + c) * (q * T0 * Xinv + d)),
    ]
    out["sahi_V"] = [
        ("sahi1-Va", X * W - 1),
        ("sahi1-Vb", W * X - 1),
        ("sahi2-V", (T1 + a * b) * (T1 + 1)),
        ("sahi3-V", T0 * (T0 + 1)),
        ("sahi4-V", (T1 * X + a) * (T1 * X + b)),
        ("sahi6-V", q * T0 * W + c - X * (T0 + 1)),
    ]
    out["sahi_IV"] = [
        ("sahi1-IVa", X * W),
        ("sahi1-IVb", W * X),
        ("sahi2-IV", (T1 + a * b) * (T1 + 1)),
        ("sahi3-IV", T0 * (T0 + 1)),
        ("sahi6-IV", q * T0 * W + c - X * (T0 + 1)),
        ("sahi7-IV", T1 * X + a - W * (T1 + a * b + 1)),
    ]
    out["sahi_III"] = [
        ("sahi1-IIIa", X * W - 1),
        ("sahi1-IIIb", W * X - 1),
        ("sahi2-III", (T1 + a * b) * (T1 + 1)),
        ("sahi3-III", T0 * T0),
        ("sahi4-III", (T1 * X + a) * (T1 * X + b)),
        ("sahi6-III", q * T0 * W + c - X * T0),
    ]
    out["H_III_D7"] = [
        ("sahiPIIID71a", X * W - 1),
        ("sahiPIIID71b", W * X - 1),
        ("sahiPIIID72", T1 * (T1 + 1)),
        ("sahiPIIID73", T0 * T0),
        ("sahiPIIID74", T1 * X + a - W * (T1 + 1)),
        ("sahiPIIID75", q * T0 * W + 1 - X * T0),
    ]
    out["H_III_D8"] = [
        ("sahiPIIID81a", X * W - 1),
        ("sahiPIIID81b", W * X - 1),
        ("sahiPIIID82", T1 * (T1 + 1)),
        ("sahiPIIID83", T0 * T0),
        ("sahiPIIID84", T1 * X - W * (T1 + 1)),
        ("sahiPIIID85", q * T0 * W + 1 - X * T0),
    ]
    return out


def _lds():
    T, X, W, Y, Z = gens("T", "X", "W", "Y", "Z")
    Tinv, Xinv, Yinv = inv("T"), inv("X"), inv("Y")
    out = {}
    out["LD_H"] = [
        ("LD1", X * T - Tinv * Xinv - (ONE / k1 - k1)),
        ("LD2", Yinv * T - Tinv * Y - (ONE / k0 - k0)),
        ("LD3", _quad(T, u1)),
        ("LD4", Y * X - q * T * T * X * Y - q * bar(k1) * T * Y - bar(k0) * T * X - Q * bar(u0) * T),
    ]
    out["LD_V"] = [
        ("LD0-PVa", W * X - 1),
        ("LD0-PVb", X * W - 1),
        ("LD00-PVa", Z * Y),
        ("LD00-PVb", Y * Z),
        ("LD1-PV", X * T - Tinv * W - (ONE / k1 - k1)),
        ("LD2-PV", Z * T - Tinv * Y - 1),
        ("LD3-PV", _quad(T, u1)),
        ("LD4-PV", Y * X - q * T * T * X * Y - q * bar(k1) * T * Y + T * X + Q / u0 * T),
    ]
    out["LD_IV"] = [
        ("LD0-PIVa", W * X),
        ("LD0-PIVb", X * W),
        ("LD00-PIVa", Z * Y),
        ("LD00-PIVb", Y * Z),
        ("LD1-piv", X * T - Tinv * W - 1),
        ("LD2-piv", Z * T - Tinv * Y - 1),
        ("LD3-piv", _quad(T, u1)),
        ("LD4-piv", Y * X - q * T * T * X * Y + q * T * Y + T * X + Q / u0 * T),
    ]
    out["LD_III"] = [
        ("LD0-PIIIa", W * X - 1),
        ("LD0-PIIIb", X * W - 1),
        ("LD00-PIIIa", Z * Y),
        ("LD00-PIIIb", Y * Z),
        ("LD1-piii", X * T - Tinv * W - (ONE / k1 - k1)),
        ("LD2-piii", Z * T - Tinv * Y),
        ("LD3-piii", _quad(T, u1)),
        ("LD4-piii", Y * X - q * T * T * X * Y - q * bar(k1) * T * Y + Q / u0 * T),
    ]
    return out


def _printed():
    """Relations as originally typeset, where they differ from the catalogue.

    Each one has a nonzero residual on the matrix embedding; the catalogue keeps
    the form that vanishes.
    """
    T0, T, X, W = gens("T0", "T", "X", "W")
    return {
        ("sahi_III", "sahi6-III"): q * T0 * W + 1 - X * T0,
        ("LD_IV", "LD1-piv"): X * T - inv("T") * inv("X") - 1,
        ("LD_III", "LD0-PIIIa"): W * X,
        ("LD_III", "LD0-PIIIb"): X * W,
    }


PRINTED_RELATIONS = _printed()


_GENERATORS = {
    "dahas": ("V0", "V1", "Vc0", "Vc1"),
    "sahi": ("T0", "T1", "X", "W"),
    "LD": ("T", "X", "W", "Y", "Z"),
}


def _build_catalogue() -> dict[str, AlgebraPresentation]:
    cat = {}
    for pid, rels in _dahas().items():
        cat[pid] = AlgebraPresentation(pid, _GENERATORS["dahas"], rels)
    for pid, rels in _sahis().items():
        constraints = ("a, q nonzero", "q^m != 1 for m > 0") if "D" in pid else ("q^m != 1 for m != 0",)
        cat[pid] = AlgebraPresentation(pid, _GENERATORS["sahi"], rels, constraints)
    for pid, rels in _lds().items():
        cat[pid] = AlgebraPresentation(pid, _GENERATORS["LD"], rels)
    return cat


CATALOGUE = _build_catalogue()


def presentation(pid: str) -> AlgebraPresentation:
    return CATALOGUE[pid]


def catalogue_json() -> list[dict]:
    """Serializable catalogue: one record per relation."""
    out = []
    for pid in sorted(CATALOGUE):
        for rid, e in CATALOGUE[pid].relations:
            out.append({"algebra": pid, "relation": rid, "expression": e.render() + " = 0"})
    return out


# ---------------------------------------------------------------------------
# checking


@dataclass
class RelationResult:
    relation_id: str
    is_zero: bool
    residual: str = ""


@dataclass
class ResidualReport:
    title: str
    results: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.is_zero for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.is_zero]

    def add(self, rid: str, value) -> None:
        zero = value.is_zero()
        self.results.append(RelationResult(rid, zero, "" if zero else value.render()))

    def extend(self, other: "ResidualReport") -> None:
        self.results.extend(other.results)
        self.notes.extend(other.notes)


def check_presentation(pres: AlgebraPresentation, assign: EmbeddingAssignment) -> ResidualReport:
    rep = ResidualReport(f"{pres.id} on {assign.algebra_id}")
    for rid, e in pres.relations:
        rep.add(rid, eval_nc(e, assign))
    return rep


@dataclass
class GeneratorMap:
    source: str
    target: str
    images: dict
    params: dict = dc_field(default_factory=dict)
    inverses: dict = dc_field(default_factory=dict)


def apply_generator_map(gmap: GeneratorMap, assign: EmbeddingAssignment) -> EmbeddingAssignment:
    """Bind the target generators to the matrices of their images."""
    new_gens = {g: eval_nc(e, assign, finalize=False) for g, e in gmap.images.items()}
    new_inv = {g: eval_nc(e, assign, finalize=False) for g, e in gmap.inverses.items()}
    return EmbeddingAssignment(
        gmap.target,
        new_gens,
        dict(assign.scalars),
        new_inv,
        {},
        tuple(assign.param_maps) + (dict(gmap.params),),
    )


def _vc1_shifted(algebra: str) -> NCExpression:
    (Vc1,) = gens("Vc1")
    return Vc1 + (ONE / u1 - u1)


def sahi_map(algebra: str) -> GeneratorMap:
    V0, V1, Vc0, Vc1 = gens("V0", "V1", "Vc0", "Vc1")
    if algebra == "H":
        images = {"T0": k0 * V0, "T1": u1 * Vc1, "X": Q * V0 * Vc0, "W": Vc1 * V1}
        params = {"a": -u1 / k1, "b": k1 * u1, "c": -Q * k0 / u0, "d": Q * u0 * k0}
        inverses = {"X": Vc1 * V1}
        return GeneratorMap("H", "sahi_H", images, params, inverses)
    suffix = {"H_V": "V", "H_IV": "IV", "H_III": "III"}[algebra]
    shift = V1 + 1 if algebra == "H_IV" else V1 + (ONE / k1 - k1)
    images = {"T0": V0, "T1": u1 * Vc1, "X": shift * _vc1_shifted(algebra), "W": Vc1 * V1}
    kk = ONE if algebra == "H_IV" else k1
    params = {"a": -u1 / kk, "b": kk * u1, "c": -Q / u0}
    inverses = {} if algebra == "H_IV" else {"X": Vc1 * V1}
    return GeneratorMap(algebra, "sahi_" + suffix, images, params, inverses)


def sahi_inverse_map(algebra: str) -> GeneratorMap:
    """The reverse change (T0, T1, X, W) -> (V0, V1, Vc0, Vc1); k0 = 1 off H."""
    T0, T1, X, W = gens("T0", "T1", "X", "W")
    kk0 = k0 if algebra == "H" else ONE
    T1inv = -T1 / (a * b) - (1 + ONE / (a * b))
    if algebra == "H":
        # X = q^{1/2} V0 Vc0 with V0^{-1} = V0 - k0 + 1/k0
        vc0 = (ONE / Q) * (T0 / k0 - k0 + ONE / k0) * X
    else:
        vc0 = Q * W * T0 - ONE / u0
    images = {
        "V0": T0 / kk0,
        "Vc1": T1 / u1,
        "Vc0": vc0,
        "V1": u1 * T1inv * inv("X"),
    }
    return GeneratorMap("sahi", algebra, images, {})


def ld_map(algebra: str) -> GeneratorMap:
    V0, V1, Vc0, Vc1 = gens("V0", "V1", "Vc0", "Vc1")
    shift = V1 + 1 if algebra == "H_IV" else V1 + (ONE / k1 - k1)
    zfac = V0 if algebra == "H_III" else V0 + 1
    images = {
        "X": shift * _vc1_shifted(algebra),
        "W": Vc1 * V1,
        "Y": Vc1 * V0,
        "T": Vc1,
        "Z": zfac * _vc1_shifted(algebra),
    }
    inverses = {"T": inv("Vc1")}
    suffix = {"H_V": "V", "H_IV": "IV", "H_III": "III"}[algebra]
    return GeneratorMap(algebra, "LD_" + suffix, images, {}, inverses)


def ld_inverse_map(algebra: str) -> GeneratorMap:
    T, X, W, Y, Z = gens("T", "X", "W", "Y", "Z")
    Tinv = inv("T")
    images = {"Vc1": T, "V0": Tinv * Y, "Vc0": Q * W * Tinv * Y - ONE / u0, "V1": Tinv * W}
    return GeneratorMap("LD", algebra, images, {})


# ---------------------------------------------------------------------------
# the automorphism beta

BETA_PARAMS = {"k0": u0, "u0": k0}


def beta_map() -> GeneratorMap:
    V0, V1, Vc0, Vc1 = gens("V0", "V1", "Vc0", "Vc1")
    Vc0inv, V0inv = inv("Vc0"), inv("V0")
    images = {"Vc1": Vc1, "V1": V1, "V0": Vc0, "Vc0": Vc0inv * V0 * Vc0}
    inverses = {"Vc1": inv("Vc1"), "V1": inv("V1"), "V0": Vc0inv, "Vc0": Vc0inv * V0inv * Vc0}
    return GeneratorMap("H", "H", images, dict(BETA_PARAMS), inverses)


def check_automorphism_beta(assign: EmbeddingAssignment, times: int = 1) -> ResidualReport:
    """Images under beta (applied ``times`` times) against daha1..daha5."""
    for g in ("V0", "Vc0"):
        if g not in assign.inverses:
            raise NoInverseAvailable(f"{g} is not invertible in {assign.algebra_id}")
    cur = assign
    for _ in range(times):
        cur = apply_generator_map(beta_map(), cur)
    rep = check_presentation(presentation("H"), cur)
    rep.title = f"beta^{times} on {assign.algebra_id}"
    return rep


def matrices_equal(A: Matrix2, B: Matrix2) -> bool:
    return (A - B).is_zero()


def gamma_limit_map() -> GeneratorMap:
    """The limit of gamma sending H_V onto H_V^gamma (with k0 = 1 on the source side).

    The target parameter k0 is the source parameter k1.
    """
    V0, V1, Vc0, Vc1 = gens("V0", "V1", "Vc0", "Vc1")
    images = {"V0": V1, "V1": V1 * V0 * inv("V1"), "Vc0": Vc0, "Vc1": Vc1}
    return GeneratorMap("H_V", "H_V_gamma", images, {"k0": k1})
