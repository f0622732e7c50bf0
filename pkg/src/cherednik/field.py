"""Exact coefficient arithmetic: Laurent polynomials and rational functions over Q(i).

Monomials are packed into a single Python integer: every registered variable owns
a fixed 12-bit slot and an exponent vector ``e`` is stored as ``sum(e_j * 4096**slot_j)``
(signed digits).  Multiplying monomials is then integer addition and comparing
packed keys is lexicographic comparison with the first registered variable most
significant.

The imaginary unit lives in slot 0 as the variable ``I`` with ``I**2 = -1``; a
canonical polynomial never stores an ``I`` exponent other than 0 or 1, so the
representation of an element of ``Q(i)[vars^{+-1}]`` is unique.

Rational functions keep their denominator as a sorted tuple of ``(factor, multiplicity)``
pairs.  Factors are genuine polynomials (no monomial content) made monic with respect
to the packed monomial order.  Sums use the least common multiple of the factored
denominators, so no multivariate GCD is ever needed; numerators are tested for
exact divisibility by the factors to keep results small.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from gmpy2 import mpq

BITS = 12
BASE = 1 << BITS
MASK = BASE - 1
HALF = BASE >> 1
CAPACITY = 48

# Order of this list fixes the monomial order (earlier = more significant).
_DEFAULT_REGISTRY = (
    "I",
    # quantum torus generators e^{S1}, e^{S2}, e^{S3}
    "S1", "S2", "S3",
    # Q = q^{1/2}
    "Q",
    "k0", "k1", "u0", "u1",
    "a", "b", "c", "d", "lam",
    # variable of the q-difference representations
    "x",
    # e^{s_i/2} and e^{p_i/2} of the shear coordinates (doubled exponents)
    "s1h", "s2h", "s3h", "p1h", "p2h", "p3h",
)


class FieldError(ArithmeticError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class SubstituteZeroIntoNegativePower(FieldError, ZeroDivisionError):
    pass


class NotDivisible(FieldError):
    pass


class _Registry:
    def __init__(self, names: Iterable[str]):
        self.names: list[str] = []
        self.slot: dict[str, int] = {}
        for n in names:
            self.add(n)

    def add(self, name: str) -> int:
        if name in self.slot:
            return self.slot[name]
        idx = len(self.names)
        if idx >= CAPACITY:
            raise FieldError("variable registry is full")
        slot = 0 if idx == 0 else CAPACITY - idx
        self.names.append(name)
        self.slot[name] = slot
        return slot


REGISTRY = _Registry(_DEFAULT_REGISTRY)
_OFFSET = sum(HALF << (BITS * s) for s in range(CAPACITY))


def register(name: str) -> None:
    """Add a new commuting parameter to the registry (idempotent)."""
    REGISTRY.add(name)


def unit_key(name: str) -> int:
    if name not in REGISTRY.slot:
        raise KeyError(f"unknown variable {name!r}")
    return 1 << (BITS * REGISTRY.slot[name])


def monomial_key(exponents: Mapping[str, int]) -> int:
    key = 0
    for name, e in exponents.items():
        if not -HALF < e < HALF:
            raise FieldError(f"exponent {e} of {name} out of range")
        key += e * unit_key(name)
    return key


def digit(key: int, name: str) -> int:
    """Exponent of ``name`` in the packed monomial ``key``."""
    s = BITS * REGISTRY.slot[name]
    return (((key + _OFFSET) >> s) & MASK) - HALF


def decode(key: int) -> dict[str, int]:
    k = key + _OFFSET
    out = {}
    for name in REGISTRY.names:
        e = ((k >> (BITS * REGISTRY.slot[name])) & MASK) - HALF
        if e:
            out[name] = e
    return out


def _fold_i(key: int, coeff):
    """Reduce an arbitrary I exponent in ``key`` to 0/1 using I^2 = -1."""
    n = ((key + HALF) & MASK) - HALF
    if n == 0 or n == 1:
        return key, coeff
    key -= n
    if (n // 2) % 2:
        coeff = -coeff
    if n % 2:
        key += 1
    return key, coeff


def _coerce_number(c):
    if isinstance(c, (int, type(mpq(0)))):
        return c
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    raise TypeError(f"not an exact rational: {c!r}")


_MPQ = type(mpq(0))


@dataclass(frozen=True)
class GaussianRational:
    """An element re + im*i of Q(i)."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, o):
        o = _as_gauss(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-_as_gauss(o))

    def __rsub__(self, o):
        return _as_gauss(o) - self

    def __mul__(self, o):
        o = _as_gauss(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of 0 in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * _as_gauss(o).inverse()

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        return _fmt_gauss(_coerce_number(self.re), _coerce_number(self.im))


def _as_gauss(o) -> GaussianRational:
    if isinstance(o, GaussianRational):
        return o
    if isinstance(o, complex):
        raise TypeError("floating point complex numbers are not exact")
    return GaussianRational(Fraction(int(o.numerator), int(o.denominator)) if isinstance(o, _MPQ) else Fraction(o))


def _fmt_num(c) -> str:
    c = mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _fmt_gauss(re, im) -> str:
    if not im:
        return _fmt_num(re)
    if not re:
        if im == 1:
            return "i"
        if im == -1:
            return "-i"
        return f"{_fmt_num(im)}*i"
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    imag = "i" if mag == 1 else f"{_fmt_num(mag)}*i"
    return f"({_fmt_num(re)}{sign}{imag})"


def _fmt_monomial(key: int, names: Mapping[str, str] | None = None) -> str:
    parts = []
    for name, e in sorted(decode(key).items(), key=lambda t: -REGISTRY.slot[t[0]]):
        label = names.get(name, name) if names else name
        parts.append(label if e == 1 else f"{label}^{e}" if e > 0 else f"{label}^({e})")
    return "*".join(parts)


class Poly:
    """Sparse Laurent polynomial over Q(i); immutable by convention."""

    __slots__ = ("t", "_h")

    def __init__(self, terms: dict | None = None):
        self.t: dict[int, object] = terms if terms is not None else {}
        self._h = None

    # -- constructors -----------------------------------------------------
    @staticmethod
    def const(c) -> "Poly":
        if isinstance(c, GaussianRational):
            d = {}
            if c.re:
                d[0] = _coerce_number(c.re)
            if c.im:
                d[1] = _coerce_number(c.im)
            return Poly(d)
        c = _coerce_number(c)
        return Poly({0: c} if c else {})

    @staticmethod
    def var(name: str, exp: int = 1, coeff=1) -> "Poly":
        if name == "I":
            return Poly.monomial(exp, coeff)
        return Poly({monomial_key({name: exp}): _coerce_number(coeff)}) if coeff else Poly()

    @staticmethod
    def monomial(key: int, coeff=1) -> "Poly":
        key, coeff = _fold_i(key, _coerce_number(coeff))
        return Poly({key: coeff} if coeff else {})

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.t

    def is_one(self) -> bool:
        return len(self.t) == 1 and self.t.get(0) == 1

    def is_monomial(self) -> bool:
        """True for c*m with c a nonzero Gaussian rational and m a monomial."""
        if len(self.t) == 1:
            return True
        return len(self.t) == 2 and len(self.gaussian_terms()) == 1

    def is_constant(self) -> bool:
        return all(k in (0, 1) for k in self.t)

    def variables(self) -> set[str]:
        out = set()
        for k in self.t:
            out.update(n for n in decode(k) if n != "I")
        return out

    def involves(self, name: str) -> bool:
        return any(digit(k, name) for k in self.t)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, o):
        if not isinstance(o, Poly):
            o = Poly.const(o)
        if not o.t:
            return self
        if not self.t:
            return o
        d = dict(self.t)
        for k, c in o.t.items():
            v = d.get(k)
            if v is None:
                d[k] = c
            else:
                v = v + c
                if v:
                    d[k] = v
                else:
                    del d[k]
        return Poly(d)

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -c for k, c in self.t.items()})

    def __sub__(self, o):
        if not isinstance(o, Poly):
            o = Poly.const(o)
        return self + (-o)

    def __rsub__(self, o):
        return Poly.const(o) - self

    def __mul__(self, o):
        if not isinstance(o, Poly):
            o = Poly.const(o)
        a, b = self.t, o.t
        if not a or not b:
            return Poly()
        if len(a) < len(b):
            a, b = b, a
        d: dict[int, object] = {}
        get = d.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                d[k] = get(k, 0) + ca * cb
        return Poly(_finish(d))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise FieldError("negative power of a polynomial; use RationalFunction")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        c = _coerce_number(c)
        if not c:
            return Poly()
        return Poly({k: v * c for k, v in self.t.items()})

    def shift(self, key: int, coeff=1) -> "Poly":
        """Multiply by the monomial ``coeff * key``."""
        return self * Poly.monomial(key, coeff)

    # -- comparisons ------------------------------------------------------
    def __eq__(self, o):
        if not isinstance(o, Poly):
            try:
                o = Poly.const(o)
            except TypeError:
                return NotImplemented
        return self.t == o.t

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self.t.items()))
        return self._h

    def sort_key(self):
        return tuple(sorted(((k, mpq(c)) for k, c in self.t.items()), reverse=True))

    # -- structure --------------------------------------------------------
    def leading_key(self) -> int:
        return max(self.t)

    def monomial_content(self) -> int:
        """Key of the largest monomial dividing every term (I excluded)."""
        mins: dict[str, int] | None = None
        for k in self.t:
            e = decode(k)
            e.pop("I", None)
            if mins is None:
                mins = e
                continue
            for n in list(mins):
                mins[n] = min(mins[n], e.get(n, 0))
            for n, v in e.items():
                if n not in mins:
                    mins[n] = min(0, v)
        if not mins:
            return 0
        return monomial_key({n: v for n, v in mins.items() if v})

    def gaussian_terms(self) -> dict[int, tuple]:
        """Group into {monomial key without I: (re, im)}."""
        out: dict[int, list] = {}
        for k, c in self.t.items():
            base = _strip_i(k)
            slot = out.setdefault(base, [0, 0])
            slot[k - base] += c
        return {k: (v[0], v[1]) for k, v in out.items()}

    def terms(self) -> dict[frozenset, GaussianRational]:
        """View as {ParamMonomial: GaussianRational} with monomials as frozensets of (name, exp)."""
        out = {}
        for k, (re, im) in self.gaussian_terms().items():
            out[frozenset(decode(k).items())] = GaussianRational(Fraction(int(mpq(re).numerator), int(mpq(re).denominator)),
                                                                 Fraction(int(mpq(im).numerator), int(mpq(im).denominator)))
        return out

    def exponent_range(self, name: str) -> tuple[int, int]:
        es = [digit(k, name) for k in self.t]
        return (min(es), max(es)) if es else (0, 0)

    def coefficient_in(self, name: str) -> dict[int, "Poly"]:
        """Split into {e: coefficient of name^e}."""
        u = unit_key(name)
        out: dict[int, dict] = {}
        for k, c in self.t.items():
            e = digit(k, name)
            out.setdefault(e, {})[k - e * u] = c
        return {e: Poly(d) for e, d in out.items()}

    # -- substitution -----------------------------------------------------
    def subs_monomial(self, rules: Mapping[str, tuple]) -> "Poly":
        """Substitute var -> coeff * monomial(key) for each rule ``name: (coeff, key)``.

        ``coeff`` must be a nonzero rational number; ``key`` may contain I.
        """
        prepared = []
        for name, (coeff, key) in rules.items():
            coeff = mpq(_coerce_number(coeff))
            if not coeff:
                raise SubstituteZeroIntoNegativePower(f"{name} -> 0 is not a monomial substitution")
            prepared.append((REGISTRY.slot[name] * BITS, unit_key(name), coeff, key))
        d: dict[int, object] = {}
        for k, c in self.t.items():
            kk = k
            for s, u, coeff, key in prepared:
                e = (((k + _OFFSET) >> s) & MASK) - HALF
                if e:
                    kk += e * (key - u)
                    c = c * coeff ** e
            kk, c = _fold_i(kk, c)
            d[kk] = d.get(kk, 0) + c
        return Poly({k: v for k, v in d.items() if v})

    # -- rendering --------------------------------------------------------
    def render(self, names: Mapping[str, str] | None = None) -> str:
        if not self.t:
            return "0"
        parts = []
        for k, (re, im) in sorted(self.gaussian_terms().items(), reverse=True):
            mono = _fmt_monomial(k, names)
            coeff = _fmt_gauss(re, im)
            if not mono:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(mono)
            elif coeff == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{coeff}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Poly({self.render()})"


def _strip_i(key: int) -> int:
    return key - (key & 1) if key & MASK in (0, 1) else key - (((key + HALF) & MASK) - HALF)


def _finish(d: dict) -> dict:
    """Fold I^2 -> -1 for keys produced by multiplication and drop zeros."""
    fold = [k for k in d if k & MASK == 2]
    for k in fold:
        c = d.pop(k)
        k2 = k - 2
        d[k2] = d.get(k2, 0) - c
    return {k: c for k, c in d.items() if c}


# ---------------------------------------------------------------------------
# Gaussian helpers on (re, im) pairs


def _g_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _g_inv(x):
    n = x[0] * x[0] + x[1] * x[1]
    if not n:
        raise DivisionByZero("division by zero in Q(i)")
    return (mpq(x[0]) / n, -mpq(x[1]) / n)


def _gauss_poly(pairs: dict) -> Poly:
    d = {}
    for k, (re, im) in pairs.items():
        if re:
            d[k] = re
        if im:
            d[k + 1] = im
    return Poly(d)


def _max_exponents(G: dict) -> dict:
    out: dict[str, int] = {}
    for k in G:
        for n, e in decode(k).items():
            if e > out.get(n, 0):
                out[n] = e
    return out


def exact_divide(f: Poly, g: Poly) -> Poly:
    """Return h with f == g*h in the Laurent ring, or raise NotDivisible."""
    if g.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if f.is_zero():
        return Poly()
    gm = g.monomial_content()
    fm = f.monomial_content()
    G = {k - gm: v for k, v in g.gaussian_terms().items()}
    F = {k - fm: v for k, v in f.gaussian_terms().items()}
    glead = max(G)
    fmax = _max_exponents(F)
    gmax = _max_exponents(G)
    bound = {n: fmax.get(n, 0) - gmax.get(n, 0) for n in set(fmax) | set(gmax)}
    if any(v < 0 for v in bound.values()):
        raise NotDivisible
    ginv = _g_inv(G[glead])
    rest = [(k - glead, v) for k, v in G.items() if k != glead]
    heap = [-k for k in F]
    heapq.heapify(heap)
    Q: dict[int, tuple] = {}
    while heap:
        k = -heapq.heappop(heap)
        c = F.get(k)
        if c is None:
            continue
        if not (c[0] or c[1]):
            del F[k]
            continue
        qk = k - glead
        if any(e < 0 or e > bound.get(n, 0) for n, e in decode(qk).items()):
            raise NotDivisible
        qc = _g_mul(c, ginv)
        Q[qk] = qc
        del F[k]
        for rk, rv in rest:
            kk = qk + glead + rk
            prod = _g_mul(qc, rv)
            old = F.get(kk)
            if old is None:
                F[kk] = (-prod[0], -prod[1])
                heapq.heappush(heap, -kk)
            else:
                F[kk] = (old[0] - prod[0], old[1] - prod[1])
    return _gauss_poly({k + fm - gm: v for k, v in Q.items()})


def normalize_factor(p: Poly) -> tuple[Poly, Poly]:
    """Split p = unit * f with unit a Gaussian monomial and f monic without monomial content."""
    m = p.monomial_content()
    G = {k - m: v for k, v in p.gaussian_terms().items()}
    lead = max(G)
    inv = _g_inv(G[lead])
    f = _gauss_poly({k: _g_mul(v, inv) for k, v in G.items()})
    unit = _gauss_poly({m: G[lead]})
    return unit, f


def _unit_inverse(unit: Poly) -> Poly:
    (k, (re, im)), = unit.gaussian_terms().items()
    inv = _g_inv((re, im))
    return _gauss_poly({-k: inv})


# ---------------------------------------------------------------------------


def _den_key(f: Poly):
    return f.sort_key()


def _den_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for f, m in b:
        d[f] = d.get(f, 0) + m
    return tuple(sorted(d.items(), key=lambda t: _den_key(t[0])))


def _den_poly(den: tuple) -> Poly:
    out = Poly.const(1)
    for f, m in den:
        out = out * f ** m
    return out


def _binary(method):
    """Defer to the other operand for types this field does not know."""

    def wrapper(self, o):
        if not isinstance(o, (RationalFunction, Poly, int, Fraction, GaussianRational, _MPQ)):
            return NotImplemented
        return method(self, o)

    wrapper.__name__ = method.__name__
    wrapper.__doc__ = method.__doc__
    return wrapper


class RationalFunction:
    """num / prod(factor^mult) with monic, content-free factors."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | None = None, den: tuple = ()):
        self.num = num if num is not None else Poly()
        self.den = den if self.num.t else ()

    # -- constructors -----------------------------------------------------
    @staticmethod
    def const(c) -> "RationalFunction":
        return RationalFunction(Poly.const(c))

    @staticmethod
    def var(name: str, exp: int = 1) -> "RationalFunction":
        return RationalFunction(Poly.var(name, exp))

    @staticmethod
    def from_poly(p: Poly) -> "RationalFunction":
        return RationalFunction(p)

    @staticmethod
    def fraction(num: Poly, den: Poly) -> "RationalFunction":
        return RationalFunction(num) / RationalFunction(den)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.t

    def is_poly(self) -> bool:
        return not self.den

    def den_poly(self) -> Poly:
        return _den_poly(self.den)

    # -- arithmetic -------------------------------------------------------
    @_binary
    def __add__(self, o):
        o = _as_rf(o)
        if not o.num.t:
            return self
        if not self.num.t:
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)._cancel()
        da, db = dict(self.den), dict(o.den)
        lcm = dict(da)
        for f, m in db.items():
            if lcm.get(f, 0) < m:
                lcm[f] = m
        na, nb = self.num, o.num
        for f, m in lcm.items():
            ea, eb = m - da.get(f, 0), m - db.get(f, 0)
            if ea:
                na = na * f ** ea
            if eb:
                nb = nb * f ** eb
        den = tuple(sorted(lcm.items(), key=lambda t: _den_key(t[0])))
        return RationalFunction(na + nb, den)._cancel()

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    @_binary
    def __sub__(self, o):
        return self + (-_as_rf(o))

    @_binary
    def __rsub__(self, o):
        return _as_rf(o) - self

    @_binary
    def __mul__(self, o):
        o = _as_rf(o)
        if not self.num.t or not o.num.t:
            return RationalFunction()
        r = RationalFunction(self.num * o.num, _den_mul(self.den, o.den))
        return r._cancel() if r.den else r

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num.t:
            raise DivisionByZero("division by the zero rational function")
        unit, f = normalize_factor(self.num)
        num = _unit_inverse(unit) * _den_poly(self.den)
        if f.is_one():
            return RationalFunction(num)
        return RationalFunction(num, ((f, 1),))._cancel()

    @_binary
    def __truediv__(self, o):
        o = _as_rf(o)
        if not o.num.t:
            raise DivisionByZero("division by the zero rational function")
        if o.num.is_monomial() and not o.den:
            return RationalFunction(self.num * _unit_inverse(o.num), self.den)
        return (self * o.inverse())._cancel()

    @_binary
    def __rtruediv__(self, o):
        return _as_rf(o) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r = RationalFunction.const(1)
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b * b
        return r

    def _cancel(self) -> "RationalFunction":
        if not self.den or not self.num.t:
            return RationalFunction(self.num) if not self.num.t else self
        num = self.num
        den = []
        changed = False
        for f, m in self.den:
            while m:
                try:
                    num = exact_divide(num, f)
                except NotDivisible:
                    break
                m -= 1
                changed = True
            if m:
                den.append((f, m))
        return RationalFunction(num, tuple(den)) if changed else self

    def simplify(self) -> "RationalFunction":
        """Split composite denominator factors that divide the numerator."""
        return self._cancel()

    # -- equality ---------------------------------------------------------
    def __eq__(self, o):
        try:
            o = _as_rf(o)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return self.num == o.num
        return (self - o).is_zero()

    def __hash__(self):
        raise TypeError("RationalFunction is not hashable (equality is semantic)")

    # -- substitution -----------------------------------------------------
    def substitute(self, bindings: Mapping[str, "RationalFunction"]) -> "RationalFunction":
        return substitute(self, bindings)

    # -- rendering --------------------------------------------------------
    def render(self, names: Mapping[str, str] | None = None) -> str:
        n = self.num.render(names)
        if not self.den:
            return n
        d = "*".join(f"({f.render(names)})" + (f"^{m}" if m > 1 else "") for f, m in self.den)
        return f"({n})/({d})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RationalFunction({self.render()})"


def _as_rf(o) -> RationalFunction:
    if isinstance(o, RationalFunction):
        return o
    if isinstance(o, Poly):
        return RationalFunction(o)
    if isinstance(o, (int, Fraction, GaussianRational, _MPQ)):
        return RationalFunction.const(o)
    raise TypeError(f"cannot convert {type(o).__name__} to RationalFunction")


def as_rational(o) -> RationalFunction:
    return _as_rf(o)


def arith(a: RationalFunction, b: RationalFunction, kind: str) -> RationalFunction:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def rf_sum(terms: Iterable, cancel: bool = True) -> RationalFunction:
    """Sum over a common denominator with (at most) a single cancellation at the end."""
    terms = [t for t in (_as_rf(t) for t in terms) if t.num.t]
    if not terms:
        return RationalFunction()
    lcm: dict = {}
    for t in terms:
        for f, m in t.den:
            if lcm.get(f, 0) < m:
                lcm[f] = m
    acc: dict = {}
    for t in terms:
        mine = dict(t.den)
        n = t.num
        for f, m in lcm.items():
            e = m - mine.get(f, 0)
            if e:
                n = n * f ** e
        for k, c in n.t.items():
            acc[k] = acc.get(k, 0) + c
    num = Poly({k: c for k, c in acc.items() if c})
    den = tuple(sorted(lcm.items(), key=lambda t: _den_key(t[0])))
    out = RationalFunction(num, den)
    return out._cancel() if cancel else out


def is_equal(a, b) -> bool:
    """Exact equality: the numerator of a - b over the common denominator vanishes."""
    a, b = _as_rf(a), _as_rf(b)
    if not a.den and not b.den:
        return a.num == b.num
    # a.num*B - b.num*A with A, B the (factored) denominators
    return (a - b).is_zero()


def _subs_poly(p: Poly, bindings: Mapping[str, RationalFunction]) -> RationalFunction:
    names = [n for n in bindings if p.involves(n)]
    if not names:
        return RationalFunction(p)
    units = {n: unit_key(n) for n in names}
    groups: dict[tuple, dict] = {}
    for k, c in p.t.items():
        es = tuple(digit(k, n) for n in names)
        rest = k - sum(e * units[n] for e, n in zip(es, names))
        groups.setdefault(es, {})[rest] = c
    powers: dict[tuple, RationalFunction] = {}

    def power(n, e):
        key = (n, e)
        if key not in powers:
            g = bindings[n]
            if e < 0 and g.is_zero():
                raise SubstituteZeroIntoNegativePower(f"{n} -> 0 appears with exponent {e}")
            powers[key] = g ** e
        return powers[key]

    total = RationalFunction()
    for es, d in sorted(groups.items()):
        term = RationalFunction(Poly(d))
        for n, e in zip(names, es):
            if e:
                term = term * power(n, e)
        total = total + term
    return total


def substitute(f, bindings: Mapping[str, object]) -> RationalFunction:
    """Simultaneous substitution of parameters by rational functions."""
    f = _as_rf(f)
    b = {n: _as_rf(v) for n, v in bindings.items()}
    mono = {}
    for n, v in b.items():
        if v.den or not v.num.is_monomial() or len(v.num.t) != 1:
            mono = None
            break
        (key, c), = v.num.t.items()
        mono[n] = (c, key)
    if mono is not None:
        num = f.num.subs_monomial(mono)
        out = RationalFunction(num)
        for fac, m in f.den:
            sf = fac.subs_monomial(mono)
            if sf.is_zero():
                raise DivisionByZero(f"denominator factor {fac.render()} vanishes under substitution")
            out = out / RationalFunction(sf) ** m
        return out
    out = _subs_poly(f.num, b)
    for fac, m in f.den:
        sf = _subs_poly(fac, b)
        if sf.is_zero():
            raise DivisionByZero(f"denominator factor {fac.render()} vanishes under substitution")
        out = out / sf ** m
    return out


# Convenience symbols -----------------------------------------------------------

def sym(name: str, exp: int = 1) -> RationalFunction:
    return RationalFunction.var(name, exp)


ONE = RationalFunction.const(1)
ZERO = RationalFunction()
I = RationalFunction(Poly({1: 1}))
Q = sym("Q")
q = Q * Q


def bar(p: RationalFunction) -> RationalFunction:
    """p - 1/p (the barred parameter)."""
    return p - ONE / p
