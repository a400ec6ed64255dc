"""
Zero-cycles on affine space: chains of the bar complex, the bar differential,
the Albanese map to W_m^n, and zero-cycles with modulus on (P^1, m*inf).

A Cycle of degree n is a finite Q-linear combination of K-points of A^n.
Points are plain tuples of FieldElem.

>>> c = Cycle.point([1, 2])
>>> print(bar_differential(c))
{1} + {2} - {3}
>>> print(chow_reduce(parse_cycle("{1} + {3} - {0} - {4}"), 3))
1 + 3*z^2 (mod z^3)
"""

from __future__ import annotations

import re
from fractions import Fraction

from .field import QQ, FieldElem, common_field, parse_elem
from .units import UnitTuple, identity, pic_gen, series_inv, series_mul, unit_exp

__all__ = [
    "Cycle",
    "ModulusFunction",
    "bar_differential",
    "albanese",
    "albanese_by_powers",
    "modulus_check",
    "divisor",
    "chow_reduce",
    "parse_cycle",
]


def _elem(a, field=None):
    if isinstance(a, FieldElem):
        return a if field is None else field(a)
    if isinstance(a, str):
        return parse_elem(a, field)
    return (field or QQ)(a)


def _point(coords, field=None):
    return tuple(_elem(a, field) for a in coords)


def _point_key(p):
    return tuple(a.sort_key() for a in p)


class Cycle:
    """A formal Q-combination of points of A^n (n = ``degree``)."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree, terms=None):
        clean = {}
        for p, c in (terms or {}).items():
            p = _point(p)
            if len(p) != degree:
                raise ValueError(f"point {p} does not have {degree} coordinates")
            c = Fraction(c)
            if c:
                clean[p] = clean.get(p, 0) + c
                if not clean[p]:
                    del clean[p]
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Cycle is immutable")

    @classmethod
    def _trusted(cls, degree, terms):
        # terms: points already normalized, coefficients nonzero Fractions
        obj = object.__new__(cls)
        object.__setattr__(obj, "degree", degree)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def point(cls, coords, coef=1):
        p = _point(coords)
        return cls(len(p), {p: coef})

    @classmethod
    def zero(cls, degree):
        return cls(degree)

    def items(self):
        """Terms in a deterministic order."""
        return sorted(self.terms.items(), key=lambda kv: _point_key(kv[0]))

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return sum(self.terms.values(), Fraction(0))

    def _same(self, other):
        if other.degree != self.degree:
            raise ValueError(f"cycle degrees {self.degree} and {other.degree} differ")

    def __add__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        self._same(other)
        terms = dict(self.terms)
        for p, c in other.terms.items():
            v = terms.get(p, 0) + c
            if v:
                terms[p] = v
            else:
                del terms[p]
        return Cycle._trusted(self.degree, terms)

    def __neg__(self):
        return Cycle._trusted(self.degree, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, q):
        q = Fraction(q)
        if not q:
            return Cycle._trusted(self.degree, {})
        return Cycle._trusted(self.degree, {p: c * q for p, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for p, c in self.items():
            body = "{" + ",".join(_coord_str(a) for a in p) + "}"
            mag = abs(c)
            if mag != 1:
                body = f"{_fs(mag)}*{body}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self):
        return f"Cycle({self})"

    def to_json(self):
        return {
            "degree": self.degree,
            "terms": [{"coef": _fs(c), "point": [str(a) for a in p]} for p, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj, field=None):
        n = int(obj["degree"])
        terms = {}
        for t in obj["terms"]:
            p = _point(t["point"], field)
            terms[p] = terms.get(p, 0) + Fraction(t["coef"])
        return cls(n, terms)


def _fs(f):
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _coord_str(a):
    if a.is_rational():
        return _fs(a.coeffs[0])
    return f"{a.to_text('zeta')}"


_COEF = re.compile(r"^\s*([0-9]+(?:/[0-9]+)?)\s*\*?\s*$")


def parse_cycle(text, field=None):
    """Parse the text form, e.g. ``"3*{1,2} - {0,5}"``.

    Coordinates are field elements; inside braces they may use ``zeta``
    (``{1+zeta, 0}``) and then live in ``field``.
    """
    text = text.strip()
    if text == "0":
        raise ValueError("the zero cycle has no degree; build it with Cycle.zero(n)")
    terms = {}
    degree = None
    pos = 0
    sign = 1
    first = True
    for m in re.finditer(r"\{([^{}]*)\}", text):
        prefix = text[pos:m.start()].strip()
        pos = m.end()
        if not first or (prefix and prefix[0] in "+-"):
            if not prefix or prefix[0] not in "+-":
                raise ValueError(f"missing sign before term {m.group(0)!r}")
            sign = -1 if prefix[0] == "-" else 1
            prefix = prefix[1:].strip()
        else:
            sign = 1
        first = False
        coef = Fraction(1)
        if prefix:
            cm = _COEF.match(prefix)
            if not cm:
                raise ValueError(f"bad coefficient {prefix!r} in {text!r}")
            coef = Fraction(cm.group(1))
        body = m.group(1).strip()
        coords = [] if not body else [_elem(s.strip(), field) for s in body.split(",")]
        p = tuple(coords)
        if degree is None:
            degree = len(p)
        elif len(p) != degree:
            raise ValueError(f"mixed point dimensions in {text!r}")
        terms[p] = terms.get(p, 0) + sign * coef
    if text[pos:].strip():
        raise ValueError(f"trailing text {text[pos:]!r} in {text!r}")
    if degree is None:
        raise ValueError(f"no terms in {text!r}")
    return Cycle(degree, terms)


def bar_differential(c):
    """d(a_1..a_n) = (a_2..a_n) + sum_{i=1}^{n-1} (-1)^i (..a_i+a_{i+1}..) + (-1)^n (a_1..a_{n-1})."""
    n = c.degree
    if n < 1:
        raise ValueError("the bar differential is not defined in degree 0")
    terms = {}

    def add(p, v):
        v2 = terms.get(p, 0) + v
        if v2:
            terms[p] = v2
        else:
            terms.pop(p, None)

    for p, coef in c.terms.items():
        add(p[1:], coef)
        for i in range(1, n):
            add(p[: i - 1] + (p[i - 1] + p[i],) + p[i + 1:], -coef if i % 2 else coef)
        add(p[:-1], -coef if n % 2 else coef)
    return Cycle._trusted(n - 1, terms)


def albanese(c, m, field=None):
    """Componentwise Albanese map to W_m^n, extended Q-linearly.

    A point (a_1..a_n) goes to (pic_gen(a_1), ..., pic_gen(a_n)).  The sum is
    formed in logarithmic coordinates, where log pic_gen(a) has coefficients
    (1 - a^k)/k, and exponentiated once per slot; this equals the product of
    rational powers exactly (see :func:`albanese_by_powers`).  The result
    remembers ``c`` as its chain.
    """
    n = c.degree
    if field is None:
        field = common_field(*[a for p in c.terms for a in p])
    if m == 1:
        return UnitTuple(m, [identity(m, field)] * n, c)
    if field.degree == 1:
        # same computation on bare Fractions
        raw = [[Fraction(0)] * (m - 1) for _ in range(n)]
        scaled = [Fraction(1, k) for k in range(1, m)]
        for p, coef in c.terms.items():
            for i, a in enumerate(p):
                a = a.coeffs[0]
                acc = raw[i]
                pw = Fraction(1)
                for k in range(1, m):
                    pw = pw * a
                    acc[k - 1] += (1 - pw) * coef * scaled[k - 1]
        return UnitTuple(m, [unit_exp([field(x) for x in lg], m, field) for lg in raw], c)
    logs = [[field.zero()] * (m - 1) for _ in range(n)]
    one = field.one()
    for p, coef in c.terms.items():
        for i, a in enumerate(p):
            acc = logs[i]
            pw = one
            for k in range(1, m):
                pw = pw * a
                acc[k - 1] = acc[k - 1] + (one - pw) * (coef / k)
    return UnitTuple(m, [unit_exp(lg, m, field) for lg in logs], c)


def albanese_by_powers(c, m, field=None):
    """The same map computed literally as a product of pic_gen(a)**coef."""
    n = c.degree
    if field is None:
        field = common_field(*[a for p in c.terms for a in p])
    comps = [identity(m, field) for _ in range(n)]
    for p, coef in c.terms.items():
        for i, a in enumerate(p):
            comps[i] = comps[i] * pic_gen(a, m) ** coef
    return UnitTuple(m, comps, c)


# --- zero-cycles with modulus on P^1 ---

class ModulusFunction:
    """f(z) = prod (z - a_i) / prod (z - b_j) with deg num = deg den, checked at level m."""

    __slots__ = ("num", "den", "m")

    def __init__(self, num, den, m=1):
        num = [_elem(a) for a in num]
        den = [_elem(b) for b in den]
        if len(num) != len(den):
            raise ValueError("numerator and denominator must have the same degree")
        if set(num) & set(den):
            raise ValueError("numerator and denominator share a root")
        if m < 1:
            raise ValueError("level must be >= 1")
        object.__setattr__(self, "num", tuple(sorted(num, key=FieldElem.sort_key)))
        object.__setattr__(self, "den", tuple(sorted(den, key=FieldElem.sort_key)))
        object.__setattr__(self, "m", m)

    def __setattr__(self, name, value):
        raise AttributeError("ModulusFunction is immutable")

    def __repr__(self):
        return f"ModulusFunction(num={[str(a) for a in self.num]}, den={[str(b) for b in self.den]}, m={self.m})"

    def field(self):
        return common_field(*self.num, *self.den)

    def expansion_at_infinity(self, order):
        """Coefficients of f(1/t) = prod(1 - a t)/prod(1 - b t) up to t^(order-1)."""
        K = self.field()
        num = [K.one()] + [K.zero()] * (order - 1)
        den = [K.one()] + [K.zero()] * (order - 1)
        for a in self.num:
            num = series_mul(num, [K.one(), -a], order)
        for b in self.den:
            den = series_mul(den, [K.one(), -b], order)
        return series_mul(num, series_inv(den, order), order)

    def to_json(self):
        return {"num": [str(a) for a in self.num], "den": [str(b) for b in self.den], "m": self.m}

    @classmethod
    def from_json(cls, obj, field=None):
        return cls([_elem(a, field) for a in obj["num"]], [_elem(b, field) for b in obj["den"]], int(obj.get("m", 1)))


def modulus_check(f, m=None):
    """True iff f(1/t) = 1 mod t^m, i.e. f lies in G(P^1, m*inf)."""
    m = f.m if m is None else m
    s = f.expansion_at_infinity(m)
    return all(not c for c in s[1:])


def divisor(f):
    """div(f) restricted to A^1: sum {a_i} - sum {b_j}."""
    terms = {}
    for a in f.num:
        terms[(a,)] = terms.get((a,), 0) + 1
    for b in f.den:
        terms[(b,)] = terms.get((b,), 0) - 1
    return Cycle(1, terms)


def chow_reduce(c, m):
    """Normal form in W_m of the class of a degree-zero 0-cycle on A^1.

    Raises ValueError if the total degree is not zero.
    """
    if c.degree != 1:
        raise ValueError("chow_reduce expects a cycle of points of A^1")
    if c.total_degree() != 0:
        raise ValueError(f"cycle has total degree {c.total_degree()}, expected 0")
    return albanese(c, m).components[0]
