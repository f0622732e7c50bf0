"""Independent sympy views of package values, used as test oracles."""
import sympy as sp

from cherednik.field import RationalFunction

Qs, x, a, b, c, d, lam = sp.symbols("Q x a b c d lam")
k0, k1, u0, u1 = sp.symbols("k0 k1 u0 u1")
qs = Qs ** 2
_LOCALS = {"Q": Qs, "i": sp.I, "lam": lam, "x": x, "a": a, "b": b, "c": c, "d": d,
           "k0": k0, "k1": k1, "u0": u0, "u1": u1}


def to_sympy(rf) -> sp.Expr:
    rf = getattr(rf, "rf", rf)
    assert isinstance(rf, RationalFunction)
    return sp.sympify(rf.render().replace("^", "**"), locals=_LOCALS)


def same(rf, expr) -> bool:
    return sp.simplify(to_sympy(rf) - expr) == 0
