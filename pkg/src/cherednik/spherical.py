"""Spherical generators X1, X2, X3, symmetrisers, skein relations and quantum cubics.

Every relation is stored as an expression that must vanish.  The coefficients of
the skein relations and cubics share one shape across algebras:

    q^{1/2} X2 X1 - q^{-1/2} X1 X2 - a3 (q - 1/q) X3 + (q^{1/2} - q^{-1/2}) W3
    q^{1/2} X3 X2 - q^{-1/2} X2 X3 - a1 (q - 1/q) X1 + (q^{1/2} - q^{-1/2}) W1
    q^{1/2} X1 X3 - q^{-1/2} X3 X1 - a2 (q - 1/q) X2 + (q^{1/2} - q^{-1/2}) W2
    q^{1/2} X2 X1 X3 - b2 q X2^2 - b1 X1^2 / q - b3 q X3^2
        + q^{1/2} W2 X2 + q^{-1/2} W1 X1 + q^{1/2} W3 X3 + W4

where the W's may depend on Vc1 through the operator O (see ``operator_O``).
On the spherical subalgebra O acts by a scalar and the W's become the omega table.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .field import ONE, Q, RationalFunction, as_rational, bar, substitute, sym
from .presentations import NCExpression, ResidualReport, gens, inv
from .qmat import EmbeddingAssignment, Matrix2, UnknownAlgebra, embed, eval_nc
from .qtorus import TorusElement

k0, k1, u0, u1 = sym("k0"), sym("k1"), sym("u0"), sym("u1")
q = Q * Q
QBAR = Q - ONE / Q  # q^{1/2} - q^{-1/2}
QQBAR = q - ONE / q

MATRIX_ALGEBRAS = ("H", "H_V", "H_IV", "H_III", "H_II", "H_I")
REWRITE_ALGEBRAS = ("H_III_D7", "H_III_D8")

_O = NCExpression.gen("O")
_ONE = NCExpression.scalar(1)


def operator_O(algebra_id: str) -> NCExpression:
    """q^{-1/2} Vc1 - q^{1/2} Vc1^{-1}, or with Vc1 + 1 in place of Vc1^{-1} for H_II, H_I."""
    (Vc1,) = gens("Vc1")
    if algebra_id in ("H_II", "H_I"):
        return Vc1 / Q - Q * (Vc1 + 1)
    return Vc1 / Q - Q * inv("Vc1")


def scalar_O(algebra_id: str) -> RationalFunction:
    """The value of O on the image of the symmetriser."""
    if algebra_id in ("H_II", "H_I"):
        return -Q
    return u1 / Q - Q / u1


def symmetriser(algebra_id: str) -> NCExpression:
    (Vc1,) = gens("Vc1")
    if algebra_id in ("H_II", "H_I"):
        return Vc1 + 1
    if algebra_id in REWRITE_ALGEBRAS:
        (T1,) = gens("T1")
        return T1 + 1
    if algebra_id in MATRIX_ALGEBRAS:
        return (1 + u1 * Vc1) / (1 + u1 * u1)
    raise UnknownAlgebra(algebra_id)


def triple_expressions(algebra_id: str) -> tuple[NCExpression, NCExpression, NCExpression]:
    V0, V1, Vc0, Vc1 = gens("V0", "V1", "Vc0", "Vc1")
    if algebra_id == "H":
        return (
            Vc1 * V1 + (Vc1 * V1) ** -1,
            Vc1 * V0 + (Vc1 * V0) ** -1,
            Q * V1 * V0 + (V1 * V0) ** -1 / Q,
        )
    if algebra_id == "H_V":
        return (
            Vc1 * V1 + (Vc1 * V1) ** -1,
            Vc1 * V0 + (V0 + 1) * inv("Vc1"),
            Q * V1 * V0 + (V0 + 1) * inv("V1") / Q,
        )
    if algebra_id == "H_IV":
        return (
            Vc1 * V1 + (V1 + 1) * inv("Vc1"),
            Vc1 * V0 + (V0 + 1) * inv("Vc1"),
            Q * V1 * V0 + (V0 + 1) * (V1 + 1) / Q,
        )
    if algebra_id == "H_III":
        return (
            Vc1 * V1 + (Vc1 * V1) ** -1,
            Vc1 * V0 + V0 * inv("Vc1"),
            Q * V1 * V0 + V0 * inv("V1") / Q,
        )
    if algebra_id == "H_II":
        return (
            Vc1 * V1 + (V1 + 1) * (Vc1 + 1),
            Vc1 * V0 + (V0 + 1) * (Vc1 + 1),
            Q * V1 * V0 + (V0 + 1) * (V1 + 1) / Q,
        )
    if algebra_id == "H_I":
        return (
            Vc1 * V1 + (V1 + 1) * (Vc1 + 1),
            Vc1 * V0 + V0 * (Vc1 + 1),
            Q * V1 * V0 + V0 * (V1 + 1) / Q,
        )
    if algebra_id in REWRITE_ALGEBRAS:
        T0, T1, X, W = gens("T0", "T1", "X", "W")
        X1 = X + W
        X2 = T1 * T0 + T0 * (T1 + 1)
        X3 = (q / (q * q - 1)) * (Q * X2 * X1 - X1 * X2 / Q) - (QBAR * T1 + Q) / (q + 1)
        return X1, X2, X3
    raise UnknownAlgebra(algebra_id)


# ---------------------------------------------------------------------------
# coefficient tables


@dataclass
class CubicSpec:
    """Coefficients of the skein relations and cubic of one algebra.

    ``w`` holds W1..W4 as expressions linear in the formal generator ``O``;
    ``omega`` is the printed table for the hatted relations.  The hatted cubic
    ends in ``+ omega4 e``, which is what the unhatted cubic gives on e;
    ``printed_omega_sign`` records the sign actually typeset there.
    """

    algebra_id: str
    a: tuple  # (a1, a2, a3): presence of the (q - 1/q) X terms
    b: tuple  # (b1, b2, b3): presence of the squares in the cubic
    w: tuple
    omega: dict
    omega_sign: int = 1
    printed_omega_sign: int = 1


def _spec_table() -> dict[str, CubicSpec]:
    K0, K1, U0, U1 = bar(k0), bar(k1), bar(u0), bar(u1)
    O = _O
    o = u1 / Q - Q / u1
    t = {}
    t["H"] = CubicSpec(
        "H",
        (1, 1, 1),
        (1, 1, 1),
        (
            U0 * K0 + K1 * O,
            K1 * U0 + K0 * O,
            K0 * K1 + U0 * O,
            K0 * K0 + K1 * K1 + U0 * U0 - U1 * U1 + 2 * (q + ONE / q) + ((q + 1) / Q * U1 - K0 * K1 * U0) * O,
        ),
        {
            1: U0 * K0 + K1 * o,
            2: K1 * U0 + K0 * o,
            3: K0 * K1 + U0 * o,
            4: K0 * K0 + K1 * K1 + U0 * U0 + o * o - K0 * K1 * U0 * o + (1 + q) * (1 + q) / q,
        },
        printed_omega_sign=-1,
    )
    t["H_V"] = CubicSpec(
        "H_V",
        (0, 1, 1),
        (0, 1, 1),
        (
            _ONE / u0,
            -K1 / u0 - O,
            -K1 - O / u0,
            1 + ONE / (u0 * u0) - (K1 / u0) * O,
        ),
        {1: ONE / u0, 2: -K1 / u0 - o, 3: -K1 - o / u0, 4: 1 + ONE / (u0 * u0) - K1 / u0 * o},
        printed_omega_sign=-1,
    )
    t["H_IV"] = CubicSpec(
        "H_IV",
        (0, 0, 1),
        (0, 0, 1),
        (_ONE / u0, _ONE / u0, 1 - O / u0, ONE / (u0 * u0) + O / u0),
        {1: ONE / u0, 2: ONE / u0, 3: 1 - o / u0, 4: ONE / (u0 * u0) + o / u0},
    )
    t["H_III"] = CubicSpec(
        "H_III",
        (0, 1, 1),
        (0, 1, 1),
        (_ONE * 0, -K1 / u0 * _ONE, -O / u0, ONE / (u0 * u0) * _ONE),
        {1: ONE * 0, 2: -K1 / u0, 3: -o / u0, 4: ONE / (u0 * u0)},
    )
    t["H_II"] = CubicSpec(
        "H_II",
        (0, 0, 0),
        (0, 0, 0),
        (_ONE / u0, _ONE / u0, -O / u0, ONE / (u0 * u0) + O / u0),
        {1: ONE / u0, 2: ONE / u0, 3: Q / u0, 4: ONE / (u0 * u0) - Q / u0},
    )
    t["H_I"] = CubicSpec(
        "H_I",
        (0, 0, 0),
        (0, 0, 0),
        (_ONE * 0, _ONE, -O, _ONE),
        {1: ONE * 0, 2: ONE, 3: Q, 4: ONE},
    )
    return t


CUBIC_SPECS = _spec_table()


def cubic_spec(algebra_id: str) -> CubicSpec:
    try:
        return CUBIC_SPECS[algebra_id]
    except KeyError:
        raise UnknownAlgebra(algebra_id) from None


def replace_generator(expr: NCExpression, name: str, value: NCExpression) -> NCExpression:
    """Substitute an NCExpression for every occurrence of a generator symbol."""
    return substitute_images(expr, {name: value})


def substitute_images(expr: NCExpression, images: dict[str, NCExpression]) -> NCExpression:
    """Simultaneous substitution of generator symbols by NCExpressions."""
    out = NCExpression()
    for word, c in expr.terms.items():
        term = NCExpression.scalar(c)
        for s in word:
            term = term * images.get(s, NCExpression.gen(s))
        out = out + term
    return out


def skein_relations(spec: CubicSpec, operator: NCExpression) -> list[tuple[str, NCExpression]]:
    """The three unhatted q-commutation relations with O replaced by ``operator``."""
    X1, X2, X3 = gens("X1", "X2", "X3")
    W = [replace_generator(w if isinstance(w, NCExpression) else NCExpression.scalar(w), "O", operator) for w in spec.w]
    a1, a2, a3 = spec.a
    return [
        ("skein-21", Q * X2 * X1 - X1 * X2 / Q - a3 * QQBAR * X3 + QBAR * W[2]),
        ("skein-32", Q * X3 * X2 - X2 * X3 / Q - a1 * QQBAR * X1 + QBAR * W[0]),
        ("skein-13", Q * X1 * X3 - X3 * X1 / Q - a2 * QQBAR * X2 + QBAR * W[1]),
    ]


def cubic_relation(spec: CubicSpec, operator: NCExpression) -> NCExpression:
    X1, X2, X3 = gens("X1", "X2", "X3")
    W = [replace_generator(w if isinstance(w, NCExpression) else NCExpression.scalar(w), "O", operator) for w in spec.w]
    b1, b2, b3 = spec.b
    return (
        Q * X2 * X1 * X3
        - b2 * q * X2 * X2
        - b1 * X1 * X1 / q
        - b3 * q * X3 * X3
        + Q * W[1] * X2
        + W[0] * X1 / Q
        + Q * W[2] * X3
        + W[3]
    )


def hatted_relations(spec: CubicSpec, omega: dict | None = None, omega_sign: int | None = None):
    """Hatted skein relations and cubic in the symbols Xh1, Xh2, Xh3, e."""
    om = spec.omega if omega is None else omega
    sign = spec.omega_sign if omega_sign is None else omega_sign
    X1, X2, X3, e = gens("Xh1", "Xh2", "Xh3", "e")
    a1, a2, a3 = spec.a
    b1, b2, b3 = spec.b
    return [
        ("hat-skein-21", Q * X2 * X1 - X1 * X2 / Q - a3 * QQBAR * X3 + QBAR * om[3] * e),
        ("hat-skein-32", Q * X3 * X2 - X2 * X3 / Q - a1 * QQBAR * X1 + QBAR * om[1] * e),
        ("hat-skein-13", Q * X1 * X3 - X3 * X1 / Q - a2 * QQBAR * X2 + QBAR * om[2] * e),
        (
            "hat-cubic",
            Q * X2 * X1 * X3
            - b2 * q * X2 * X2
            - b1 * X1 * X1 / q
            - b3 * q * X3 * X3
            + Q * om[2] * X2
            + om[1] / Q * X1
            + Q * om[3] * X3
            + sign * om[4] * e,
        ),
    ]


# ---------------------------------------------------------------------------
# triples on the matrix embeddings


@dataclass
class SphericalTriple:
    algebra_id: str
    expressions: tuple  # X1, X2, X3 as NCExpressions
    e_expression: NCExpression
    assign: EmbeddingAssignment | None = None  # binds X1..X3, e, Xh1..Xh3 for matrix algebras
    notes: list = dc_field(default_factory=list)

    def matrix(self, name: str) -> Matrix2:
        return self.assign.finalize(self.assign.generators[name])


def build_triple(algebra_id: str, variant: str = "corrected") -> SphericalTriple:
    """X1, X2, X3 and e; for matrix algebras also their 2x2 images and e Xi e."""
    exprs = triple_expressions(algebra_id)
    e_expr = symmetriser(algebra_id)
    if algebra_id in REWRITE_ALGEBRAS:
        return SphericalTriple(algebra_id, exprs, e_expr)
    base = embed(algebra_id, variant)
    mats = {f"X{i + 1}": eval_nc(x, base, finalize=False) for i, x in enumerate(exprs)}
    e = eval_nc(e_expr, base, finalize=False)
    mats["e"] = e
    for i in (1, 2, 3):
        mats[f"Xh{i}"] = e @ mats[f"X{i}"] @ e
    assign = EmbeddingAssignment(
        algebra_id,
        {**base.generators, **mats},
        dict(base.scalars),
        dict(base.inverses),
        dict(base.no_inverse),
    )
    return SphericalTriple(algebra_id, exprs, e_expr, assign)


def _eval(expr: NCExpression, triple: SphericalTriple) -> Matrix2:
    return eval_nc(expr, triple.assign)


def check_idempotent(triple: SphericalTriple) -> ResidualReport:
    rep = ResidualReport(f"symmetriser of {triple.algebra_id}")
    (e,) = gens("e")
    rep.add("e^2 = e", _eval(e * e - e, triple))
    for i in (1, 2, 3):
        (X,) = gens(f"X{i}")
        rep.add(f"[e, X{i}] = 0", _eval(e * X - X * e, triple))
    return rep


def check_skein(triple: SphericalTriple, spec: CubicSpec | None = None) -> ResidualReport:
    spec = spec or cubic_spec(triple.algebra_id)
    rep = ResidualReport(f"skein relations of {triple.algebra_id}")
    for rid, rel in skein_relations(spec, operator_O(triple.algebra_id)):
        rep.add(rid, _eval(rel, triple))
    return rep


def check_cubic(triple: SphericalTriple, spec: CubicSpec | None = None, hatted: bool = False) -> ResidualReport:
    """Unhatted cubic, or (hatted=True) the hatted skein relations and cubic.

    The hatted relations are checked twice: directly on e Xi e with the omega
    table, and as e times the unhatted relation.
    """
    spec = spec or cubic_spec(triple.algebra_id)
    op = operator_O(triple.algebra_id)
    if not hatted:
        rep = ResidualReport(f"cubic of {triple.algebra_id}")
        rep.add("cubic", _eval(cubic_relation(spec, op), triple))
        return rep
    rep = ResidualReport(f"hatted relations of {triple.algebra_id}")
    for rid, rel in hatted_relations(spec):
        rep.add(rid, _eval(rel, triple))
    (e,) = gens("e")
    for rid, rel in skein_relations(spec, op) + [("cubic", cubic_relation(spec, op))]:
        rep.add("e*" + rid, _eval(e * rel, triple))
    return rep


def omega_from_operator(spec: CubicSpec) -> dict:
    """W1..W4 with O replaced by its value on the spherical subalgebra."""
    o = scalar_O(spec.algebra_id)
    out = {}
    for i, w in enumerate(spec.w, start=1):
        w = w if isinstance(w, NCExpression) else NCExpression.scalar(w)
        total = ONE * 0
        for word, c in w.terms.items():
            total = total + c * o ** len(word)
        out[i] = total
    return out


# ---------------------------------------------------------------------------
# Zhedanov algebras


@dataclass
class ZhedanovParams:
    B: RationalFunction
    C0: RationalFunction
    D0: RationalFunction
    D1: RationalFunction


def zhedanov_params(algebra_id: str) -> ZhedanovParams:
    K1 = bar(k1)
    r = Q / u1 - u1 / Q
    C0 = QQBAR * QQBAR
    zero = ONE * 0
    a = sym("a")
    if algebra_id == "H_V":
        return ZhedanovParams(
            u1 * (q - 1) ** 2 / q * (K1 - r / u0),
            C0,
            u1 * (q + 1) * (q - 1) ** 2 / q * (K1 / (Q * u0) - (ONE / u1 - u1 / q)),
            -u1 * u1 * (q + 1) * (q - 1) ** 2 / (Q ** 3 * u0),
        )
    if algebra_id == "H_IV":
        return ZhedanovParams(
            u1 * (q - 1) ** 2 / q * (-1 - r / u0),
            zero,
            -(q + 1) * (q - 1) ** 2 / Q ** 3 * u1 / u0,
            -u1 * u1 / u0 * (q + 1) * (q - 1) ** 2 / Q ** 3,
        )
    if algebra_id == "H_III":
        return ZhedanovParams(
            -u1 / u0 * (q - 1) ** 2 / q * r,
            C0,
            u1 * (q + 1) * (q - 1) ** 2 / Q ** 3 * (K1 / u0),
            zero,
        )
    if algebra_id == "H_III_D7":
        return ZhedanovParams((q - 1) ** 2 / q, C0, -(q + 1) * (q - 1) ** 2 / (q * q) * a, zero)
    if algebra_id == "H_III_D8":
        return ZhedanovParams((q - 1) ** 2 / q, C0, zero, zero)
    raise UnknownAlgebra(algebra_id)


def zhedanov_images(
    algebra_id: str, params: ZhedanovParams | None = None, printed: bool = False
) -> dict[str, NCExpression]:
    """The images of K0, K1, K2 in the hatted symbols; u1 = 1 for the D7, D8 algebras.

    K0 goes to u1 Xh2.  The typeset map divides by u1 instead, which fails zhe1
    against the K2 image and the parameter tables; ``printed=True`` gives that form.
    """
    p = params or zhedanov_params(algebra_id)
    X1, X2, X3, e = gens("Xh1", "Xh2", "Xh3", "e")
    uu = ONE if algebra_id in REWRITE_ALGEBRAS else u1
    return {
        "K0": X2 / uu if printed else uu * X2,
        "K1": X1,
        "K2": uu * QQBAR * X3 + QBAR * q / ((q - 1) * (q - 1)) * p.B * e,
    }


def zhedanov_relations(params: ZhedanovParams) -> list[tuple[str, NCExpression]]:
    """Relations of the Zhedanov algebra in K0, K1, K2 with unit ``e``."""
    K0, K1, K2, e = gens("K0", "K1", "K2", "e")
    return [
        ("zhe1", Q * K0 * K1 - K1 * K0 / Q - K2),
        ("zhe2", Q * K1 * K2 - K2 * K1 / Q - params.B * K1 - params.C0 * K0 - params.D0 * e),
        ("zhe3", Q * K2 * K0 - K0 * K2 / Q - params.B * K0 - params.D1 * e),
    ]


def check_zhedanov_iso(
    algebra_id: str, triple: SphericalTriple | None = None, printed: bool = False
) -> ResidualReport:
    if algebra_id not in ("H_V", "H_IV", "H_III"):
        raise UnknownAlgebra(f"{algebra_id}: the isomorphism is checked on the matrix algebras H_V, H_IV, H_III")
    triple = triple or build_triple(algebra_id)
    params = zhedanov_params(algebra_id)
    images = zhedanov_images(algebra_id, params, printed)
    rep = ResidualReport(f"Zhedanov isomorphism for {algebra_id}")
    for rid, rel in zhedanov_relations(params):
        rep.add(rid, _eval(substitute_images(rel, images), triple))
    return rep


# ---------------------------------------------------------------------------
# the automorphism gamma on the spherical subalgebra of H_V


def gamma_images() -> dict[str, NCExpression]:
    X1, X2, X3 = gens("Xh1", "Xh2", "Xh3")
    return {
        "Xh1": Q / (q - 1) * (X3 * X1 - X1 * X3) + X2,
        "Xh2": X1,
        "Xh3": X3,
    }


def _scalar_ratio(R: Matrix2, e: Matrix2) -> RationalFunction | None:
    """The central scalar s with R = s e, or None if there is none."""
    for r, x in zip(R.entries(), e.entries()):
        if not x.is_zero():
            s = r.rf / x.rf
            if any(s.num.involves(n) for n in ("S1", "S2", "S3")):
                return None
            return s if (R - e.scale(TorusElement(s))).is_zero() else None
    return ONE * 0 if R.is_zero() else None


def fit_omegas(triple: SphericalTriple, images: dict[str, NCExpression], spec: CubicSpec) -> dict | None:
    """Solve for the omega table making ``images`` satisfy the hatted relations of ``spec``.

    Returns None when some relation does not reduce to a scalar multiple of e.
    """
    X1, X2, X3 = (images[f"Xh{i}"] for i in (1, 2, 3))
    a1, a2, a3 = spec.a
    b1, b2, b3 = spec.b
    fa = triple.assign.finalize
    e = fa(triple.assign.generators["e"])
    om = {}
    for idx, lhs in (
        (3, Q * X2 * X1 - X1 * X2 / Q - a3 * QQBAR * X3),
        (1, Q * X3 * X2 - X2 * X3 / Q - a1 * QQBAR * X1),
        (2, Q * X1 * X3 - X3 * X1 / Q - a2 * QQBAR * X2),
    ):
        s = _scalar_ratio(_eval(lhs, triple), e)
        if s is None:
            return None
        om[idx] = -s / QBAR
    cubic = (
        Q * X2 * X1 * X3 - b2 * q * X2 * X2 - b1 * X1 * X1 / q - b3 * q * X3 * X3
        + Q * om[2] * X2 + om[1] / Q * X1 + Q * om[3] * X3
    )
    s = _scalar_ratio(_eval(cubic, triple), e)
    if s is None:
        return None
    om[4] = -s
    return om


def gamma_spec() -> CubicSpec:
    """Hatted PV shape with the X1 and X2 slots exchanged, and omega1, omega2 swapped."""
    pv = cubic_spec("H_V")
    om = dict(pv.omega)
    om[1], om[2] = pv.omega[2], pv.omega[1]
    return CubicSpec("H_V_gamma", (1, 0, 1), (1, 0, 1), (), om)


def check_gamma_spherical(
    triple: SphericalTriple | None = None,
    images: dict | None = None,
    spec: CubicSpec | None = None,
) -> ResidualReport:
    """gamma-images of the hatted H_V generators against the hatted relations of ``spec``.

    By default the images are those of gamma and ``spec`` is ``gamma_spec()``.  The
    omega values solved from the images are recorded in the notes.
    """
    triple = triple or build_triple("H_V")
    images = gamma_images() if images is None else images
    spec = spec or gamma_spec()
    rep = ResidualReport("gamma on the spherical subalgebra of H_V")
    for rid, rel in hatted_relations(spec):
        rep.add(rid, _eval(substitute_images(rel, images), triple))
    fitted = fit_omegas(triple, images, spec)
    if fitted is None:
        rep.notes.append("the images do not fit this relation shape")
    else:
        for i in sorted(fitted):
            rep.notes.append(f"omega{i} = {fitted[i].render()}")
    return rep


def _failed(rid: str, why: str):
    from .presentations import RelationResult

    return RelationResult(rid, False, why)
