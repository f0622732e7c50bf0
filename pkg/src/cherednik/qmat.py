"""2x2 matrices over the quantum torus and the generator embeddings of the
Cherednik algebra H and its confluent degenerations H_V, H_IV, H_III, H_II, H_I.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping

from .field import ONE, I, Q, RationalFunction, bar, sym, substitute
from .qtorus import TorusElement


class UnknownAlgebra(KeyError):
    pass


class UnboundGenerator(KeyError):
    pass


class NoInverseAvailable(ArithmeticError):
    pass


class Matrix2:
    """2x2 matrix over any ring whose elements support +, -, * (order preserved)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, one=None):
        one = TorusElement.scalar(1) if one is None else one
        zero = one - one
        return cls(one, zero, zero, one)

    @classmethod
    def zero(cls, one=None):
        one = TorusElement.scalar(1) if one is None else one
        zero = one - one
        return cls(zero, zero, zero, zero)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def map(self, f) -> "Matrix2":
        return type(self)(*(f(x) for x in self.entries()))

    def __add__(self, o):
        if not isinstance(o, Matrix2):
            o = self.identity(self.a - self.a + 1).scale(o)
        return type(self)(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __matmul__(self, o: "Matrix2") -> "Matrix2":
        return type(self)(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __mul__(self, o):
        if isinstance(o, Matrix2):
            return self @ o
        return self.scale(o)

    def __rmul__(self, o):
        return self.scale(o)

    def scale(self, s) -> "Matrix2":
        return type(self)(*(x * s for x in self.entries()))

    def __pow__(self, n: int):
        r = self.identity(self.a - self.a + 1)
        for _ in range(n):
            r = r @ self
        return r

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries())

    def is_scalar(self) -> bool:
        return (self.b.is_zero() and self.c.is_zero() and (self.a - self.d).is_zero())

    def __eq__(self, o):
        if not isinstance(o, Matrix2):
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def render(self) -> str:
        return "[[{}, {}], [{}, {}]]".format(*(_render(x) for x in self.entries()))

    def __repr__(self):
        return f"{type(self).__name__}({self.render()})"


def _render(x) -> str:
    return x.render() if hasattr(x, "render") else str(x)


class TorusMatrix2(Matrix2):
    __slots__ = ()

    @classmethod
    def of(cls, rows) -> "TorusMatrix2":
        (a, b), (c, d) = rows
        return cls(*(x if isinstance(x, TorusElement) else TorusElement.scalar(x) for x in (a, b, c, d)))

    def substitute(self, bindings) -> "TorusMatrix2":
        return self.map(lambda x: x.substitute(bindings))


def matmul(A: Matrix2, B: Matrix2) -> Matrix2:
    return A @ B


def identity() -> TorusMatrix2:
    return TorusMatrix2.identity()


# ---------------------------------------------------------------------------
# embeddings

GENERATORS = ("V0", "V1", "Vc0", "Vc1")
ALGEBRAS = ("H", "H_V", "H_IV", "H_III", "H_II", "H_I")


@dataclass
class EmbeddingAssignment:
    algebra_id: str
    generators: dict
    scalars: dict = dc_field(default_factory=dict)
    inverses: dict = dc_field(default_factory=dict)
    no_inverse: dict = dc_field(default_factory=dict)
    # parameter maps of the generator changes that produced this assignment,
    # innermost first; coefficients are pulled back through them in reverse order
    param_maps: tuple = ()

    def finalize(self, m: Matrix2) -> Matrix2:
        """Apply the scalar specialisations (e.g. u0 as a central torus monomial)."""
        if not self.scalars:
            return m
        return m.map(lambda x: x.substitute(self.scalars))

    def coefficient(self, c: RationalFunction) -> RationalFunction:
        for m in reversed(self.param_maps):
            if m:
                c = substitute(c, m)
        return c


def E(m1=0, m2=0, m3=0, coeff=1) -> TorusElement:
    return TorusElement.exp(m1, m2, m3, coeff)


def _T(x) -> TorusElement:
    return x if isinstance(x, TorusElement) else TorusElement.scalar(x)


def _quadratic_inverse(M: Matrix2, barred) -> Matrix2:
    """For (M - k)(M + 1/k) = 0 one has M^{-1} = M - (k - 1/k)."""
    return M - Matrix2.identity(_T(1)).scale(_T(barred))


k0, k1, u0, u1 = sym("k0"), sym("k1"), sym("u0"), sym("u1")


def _v1_generic():
    return TorusMatrix2.of(
        (
            (bar(k1) - E(0, 1, 0, I), bar(k1) - E(0, -1, 0, I) - E(0, 1, 0, I)),
            (E(0, 1, 0, I), E(0, 1, 0, I)),
        )
    )


def _v1_minus_one():
    return TorusMatrix2.of(((-1 - E(0, 1, 0, I), -1 - E(0, 1, 0, I)), (E(0, 1, 0, I), E(0, 1, 0, I))))


def _vc1_generic():
    return TorusMatrix2.of(((0, E(1, 0, 0, -I)), (E(-1, 0, 0, I), bar(u1))))


def _vc1_degenerate():
    return TorusMatrix2.of(((0, E(1, 0, 0, -I)), (0, -1)))


def _v0_degenerate():
    return TorusMatrix2.of(((-1, 0), (1 + E(0, 0, 1, I), 0)))


def _v0_nilpotent():
    return TorusMatrix2.of(((0, 0), (E(0, 0, 1, I), 0)))


def _vc0_lower(s: TorusElement, corner, printed: bool) -> TorusMatrix2:
    return TorusMatrix2.of(((0, 0), (s * Q if printed else s, corner)))


def central_reduction(u0_value=None) -> dict:
    """Impose u0 = -i e^{-S1-S2-S3}: e^{S3} -> -i u0^{-1} e^{-S1-S2} on Weyl-ordered monomials.

    Since e^{S1+S2+S3} is central, W(m) = W(m - m3(1,1,1)) W(m3(1,1,1)), so this is the
    quotient map by the central relation; it is applied to residuals only.
    """
    u0_value = u0 if u0_value is None else u0_value
    return {"S3": -I * E(-1, -1, 0).rf / u0_value}


def _embed_H(printed: bool) -> EmbeddingAssignment:
    V0 = TorusMatrix2.of(
        (
            (bar(k0) - E(0, 0, -1, I), E(0, 0, -1, -I)),
            (-bar(k0) + E(0, 0, -1, I) + E(0, 0, 1, I), E(0, 0, -1, I)),
        )
    )
    V1 = _v1_generic()
    Vc1 = _vc1_generic()
    sign = 1 if printed else -1
    s = (
        E(-1, -1, 0, sign * bar(k0))
        + E(-1, 0, 1, sign * bar(k1))
        + E(0, 1, 1, sign * bar(u1))
        + E(-1, -1, 1, I)
        + E(-1, 1, 1, I)
        - _T(u0)
    )
    Vc0 = TorusMatrix2.of(((u0, 0), (s * Q if printed else s, -ONE / u0)))
    gens = {"V0": V0, "V1": V1, "Vc0": Vc0, "Vc1": Vc1}
    inv = {
        "V0": _quadratic_inverse(V0, bar(k0)),
        "V1": _quadratic_inverse(V1, bar(k1)),
        "Vc0": _quadratic_inverse(Vc0, bar(u0)),
        "Vc1": _quadratic_inverse(Vc1, bar(u1)),
    }
    return EmbeddingAssignment("H", gens, central_reduction(), inv)


def _s_confluent_V() -> TorusElement:
    return (
        E(-1, -1, 0)
        + E(-1, 0, 1, -bar(k1))
        + E(0, 1, 1, -bar(u1))
        + E(-1, -1, 1, I)
        + E(-1, 1, 1, I)
    )


def _embed_V(printed: bool) -> EmbeddingAssignment:
    V1, Vc1 = _v1_generic(), _vc1_generic()
    Vc0 = _vc0_lower(_s_confluent_V(), -ONE / u0, printed)
    gens = {"V0": _v0_degenerate(), "V1": V1, "Vc0": Vc0, "Vc1": Vc1}
    inv = {"V1": _quadratic_inverse(V1, bar(k1)), "Vc1": _quadratic_inverse(Vc1, bar(u1))}
    return EmbeddingAssignment(
        "H_V", gens, central_reduction(), inv, {"V0": "V0^2 + V0 = 0", "Vc0": "Vc0^2 + Vc0/u0 = 0"}
    )


def _embed_IV(printed: bool) -> EmbeddingAssignment:
    Vc1 = _vc1_generic()
    s = E(-1, 0, 1) + E(0, 1, 1, -bar(u1)) + E(-1, 1, 1, I)
    gens = {"V0": _v0_degenerate(), "V1": _v1_minus_one(), "Vc0": _vc0_lower(s, -ONE / u0, printed), "Vc1": Vc1}
    inv = {"Vc1": _quadratic_inverse(Vc1, bar(u1))}
    return EmbeddingAssignment(
        "H_IV", gens, central_reduction(), inv,
        {"V0": "V0^2 + V0 = 0", "V1": "V1^2 + V1 = 0", "Vc0": "Vc0^2 + Vc0/u0 = 0"},
    )


def _embed_III(printed: bool) -> EmbeddingAssignment:
    V1, Vc1 = _v1_generic(), _vc1_generic()
    s = _s_confluent_V()
    if not printed:
        s = s - E(-1, -1, 0)
    Vc0 = _vc0_lower(s, -ONE / u0, printed)
    gens = {"V0": _v0_nilpotent(), "V1": V1, "Vc0": Vc0, "Vc1": Vc1}
    inv = {"V1": _quadratic_inverse(V1, bar(k1)), "Vc1": _quadratic_inverse(Vc1, bar(u1))}
    return EmbeddingAssignment(
        "H_III", gens, central_reduction(), inv, {"V0": "V0^2 = 0", "Vc0": "Vc0^2 + Vc0/u0 = 0"}
    )


def _embed_II(printed: bool) -> EmbeddingAssignment:
    corner = -Q / u0 if printed else -ONE / u0
    Vc0 = TorusMatrix2.of(((0, 0), (E(0, 1, 1, Q if printed else 1), corner)))
    gens = {"V0": _v0_degenerate(), "V1": _v1_minus_one(), "Vc0": Vc0, "Vc1": _vc1_degenerate()}
    return EmbeddingAssignment(
        "H_II", gens, central_reduction(), {},
        {"V0": "V0^2 + V0 = 0", "V1": "V1^2 + V1 = 0", "Vc0": "Vc0^2 + Vc0/u0 = 0", "Vc1": "Vc1^2 + Vc1 = 0"},
    )


def _embed_I(printed: bool) -> EmbeddingAssignment:
    corner = -Q if printed else -ONE
    Vc0 = TorusMatrix2.of(((0, 0), (E(0, 1, 1, Q if printed else 1), corner)))
    gens = {"V0": _v0_nilpotent(), "V1": _v1_minus_one(), "Vc0": Vc0, "Vc1": _vc1_degenerate()}
    return EmbeddingAssignment(
        "H_I", gens, central_reduction(ONE), {},
        {"V0": "V0^2 = 0", "V1": "V1^2 + V1 = 0", "Vc0": "Vc0^2 + Vc0 = 0", "Vc1": "Vc1^2 + Vc1 = 0"},
    )


_BUILDERS = {
    "H": _embed_H,
    "H_V": _embed_V,
    "H_IV": _embed_IV,
    "H_III": _embed_III,
    "H_II": _embed_II,
    "H_I": _embed_I,
}
VARIANTS = ("corrected", "printed")
_CACHE: dict[tuple, EmbeddingAssignment] = {}


def embed(algebra_id: str, variant: str = "corrected") -> EmbeddingAssignment:
    """Generator matrices of an algebra.

    ``printed`` reproduces the matrices as published; ``corrected`` (the default)
    differs only in the lower row of Vc0, see the decisions ledger in the README.
    """
    if algebra_id not in _BUILDERS:
        raise UnknownAlgebra(algebra_id)
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    key = (algebra_id, variant)
    if key not in _CACHE:
        _CACHE[key] = _BUILDERS[algebra_id](variant == "printed")
    a = _CACHE[key]
    return EmbeddingAssignment(
        a.algebra_id, dict(a.generators), dict(a.scalars), dict(a.inverses), dict(a.no_inverse), a.param_maps
    )


# ---------------------------------------------------------------------------
# evaluation of noncommutative expressions


def _lookup(symbol: str, assign: EmbeddingAssignment) -> Matrix2:
    if symbol.endswith("^-1"):
        base = symbol[:-3]
        if base in assign.inverses:
            return assign.inverses[base]
        if base in assign.generators:
            reason = assign.no_inverse.get(base, "no inverse is provided")
            raise NoInverseAvailable(f"{base} has no inverse in {assign.algebra_id} ({reason})")
        raise UnboundGenerator(base)
    if symbol not in assign.generators:
        raise UnboundGenerator(symbol)
    return assign.generators[symbol]


def eval_nc(expr, assign: EmbeddingAssignment, finalize: bool = True) -> Matrix2:
    """Evaluate an NCExpression (anything with ``.terms`` {word tuple: coefficient})."""
    one = Matrix2.identity(TorusElement.scalar(1))
    cache: dict[tuple, Matrix2] = {(): one}

    def word_value(word: tuple) -> Matrix2:
        if word in cache:
            return cache[word]
        v = word_value(word[:-1]) @ _lookup(word[-1], assign)
        cache[word] = v
        return v

    total = TorusMatrix2.zero()
    for word, coeff in sorted(expr.terms.items()):
        total = total + word_value(word).scale(TorusElement(assign.coefficient(coeff)))
    total = TorusMatrix2(*total.entries())
    return assign.finalize(total) if finalize else total
