"""
Exact arithmetic over Q and the cyclotomic fields Q(zeta_r).

An element of Q(zeta_r) is stored as its unique reduced residue modulo the
r-th cyclotomic polynomial, i.e. a vector of ``phi(r)`` Fractions in the power
basis 1, zeta, ..., zeta^(phi(r)-1).  Q itself is Q(zeta_1).

>>> K = cyclotomic_field(4)
>>> z = K.gen()
>>> z * z
-1
>>> print(z.inverse())
-z | zeta(4)
>>> print(QQ(1, 2) + QQ(1, 3))
5/6
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "FieldMismatchError",
    "CyclotomicField",
    "FieldElem",
    "QQ",
    "cyclotomic_poly",
    "cyclotomic_field",
    "primitive_root",
    "elem_add",
    "elem_mul",
    "elem_neg",
    "elem_inv",
    "rth_root",
    "roots_in_field",
    "parse_elem",
    "common_field",
]


class FieldMismatchError(ValueError):
    pass


# --- integer / rational polynomial helpers (ascending coefficient lists) ---

def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    """Quotient and remainder of a by b over Q (b nonzero, both ascending)."""
    a = [Fraction(c) for c in a]
    b = _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = Fraction(b[-1])
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    return _poly_trim(q), _poly_trim(a[: len(b) - 1])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def _cyclotomic(r):
    if r < 1:
        raise ValueError(f"cyclotomic order must be positive, got {r}")
    num = [-1] + [0] * (r - 1) + [1]  # x^r - 1
    den = [1]
    for d in range(1, r):
        if r % d == 0:
            den = _poly_mul(den, _cyclotomic(d))
    q, rem = _poly_divmod(num, den)
    assert not rem
    return tuple(int(c) for c in q)


def cyclotomic_poly(r):
    """Coefficients (ascending) of the r-th cyclotomic polynomial.

    >>> cyclotomic_poly(1), cyclotomic_poly(2), cyclotomic_poly(4)
    ([-1, 1], [1, 1], [1, 0, 1])
    """
    return list(_cyclotomic(r))


# --- fields ---

class CyclotomicField:
    """Q(zeta_r) presented as Q[x]/(Phi_r).  Use :func:`cyclotomic_field`."""

    __slots__ = ("order", "modulus", "degree", "_zero", "_one")

    def __init__(self, order):
        self.order = order
        self.modulus = _cyclotomic(order)
        self.degree = len(self.modulus) - 1
        self._zero = FieldElem(self, (Fraction(0),) * self.degree)
        self._one = FieldElem(self, (Fraction(1),) + (Fraction(0),) * (self.degree - 1))

    def __repr__(self):
        if self.degree == 1:
            return "QQ" if self.order == 1 else f"QQ(zeta_{self.order})"
        return f"QQ(zeta_{self.order})"

    def __reduce__(self):
        return (cyclotomic_field, (self.order,))

    @property
    def is_rational(self):
        return self.degree == 1

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def gen(self):
        """The chosen primitive root zeta_r (for r <= 2 this is 1 or -1)."""
        if self.degree == 1:
            return self(-self.modulus[0])
        return FieldElem(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def __call__(self, value=0, denominator=None):
        """Coerce an int, Fraction, FieldElem or coefficient list into the field."""
        if denominator is not None:
            value = Fraction(value, denominator)
        if isinstance(value, FieldElem):
            if value.field is self:
                return value
            if value.field.degree == 1:
                return self((value.coeffs[0],))
            raise FieldMismatchError(f"cannot coerce {value.field!r} element into {self!r}")
        if isinstance(value, (int, Rational)):
            c = [Fraction(value)]
            return FieldElem(self, tuple(c + [Fraction(0)] * (self.degree - 1)))
        return FieldElem(self, _reduce(self, [Fraction(c) for c in value]))

    def elements_key(self, a):
        return a.coeffs


def _reduce(field, coeffs):
    """Reduce an ascending coefficient list modulo Phi_r."""
    mod = field.modulus
    deg = field.degree
    c = list(coeffs)
    for k in range(len(c) - 1, deg - 1, -1):
        t = c[k]
        if t:
            base = k - deg
            for j in range(deg):
                if mod[j]:
                    c[base + j] -= t * mod[j]
    c = c[:deg]
    if len(c) < deg:
        c += [Fraction(0)] * (deg - len(c))
    return tuple(c)


@lru_cache(maxsize=None)
def cyclotomic_field(r):
    if r < 1:
        raise ValueError(f"cyclotomic order must be positive, got {r}")
    return CyclotomicField(r)


class FieldElem:
    """Immutable element of Q or Q(zeta_r)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    def __reduce__(self):
        return (_rebuild, (self.field.order, self.coeffs))

    # -- coercion --

    def _pair(self, other):
        if isinstance(other, FieldElem):
            if other.field is self.field:
                return self.field, self, other
            if other.field.degree == 1:
                return self.field, self, self.field(other)
            if self.field.degree == 1:
                return other.field, other.field(self), other
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
        if isinstance(other, (int, Rational)):
            return self.field, self, self.field(other)
        return None

    # -- arithmetic --

    def __add__(self, other):
        if other.__class__ is FieldElem and other.field is self.field:
            if self.field.degree == 1:
                return FieldElem(self.field, (self.coeffs[0] + other.coeffs[0],))
            return FieldElem(self.field, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))
        p = self._pair(other)
        if p is None:
            return NotImplemented
        K, a, b = p
        return FieldElem(K, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        if other.__class__ is FieldElem and other.field is self.field and self.field.degree == 1:
            return FieldElem(self.field, (self.coeffs[0] - other.coeffs[0],))
        p = self._pair(other)
        if p is None:
            return NotImplemented
        K, a, b = p
        return FieldElem(K, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if other.__class__ is FieldElem and other.field is self.field and self.field.degree == 1:
            return FieldElem(self.field, (self.coeffs[0] * other.coeffs[0],))
        if isinstance(other, (int, Rational)) and not isinstance(other, FieldElem):
            f = Fraction(other)
            return FieldElem(self.field, tuple(x * f for x in self.coeffs))
        p = self._pair(other)
        if p is None:
            return NotImplemented
        K, a, b = p
        if K.degree == 1:
            return FieldElem(K, (a.coeffs[0] * b.coeffs[0],))
        ac = a.coeffs
        bc = b.coeffs
        prod = [Fraction(0)] * (2 * K.degree - 1)
        for i, x in enumerate(ac):
            if x:
                for j, y in enumerate(bc):
                    if y:
                        prod[i + j] += x * y
        return FieldElem(K, _reduce(K, prod))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        K = self.field
        if K.degree == 1:
            return FieldElem(K, (1 / self.coeffs[0],))
        # extended Euclid on (representative, Phi_r) over Q
        r0, r1 = list(K.modulus), _poly_trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant c with s1 * self == c  (mod Phi)
        c = Fraction(r1[0])
        return FieldElem(K, _reduce(K, [x / c for x in s1]))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, FieldElem):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            f = Fraction(other)
            return FieldElem(self.field, tuple(x / f for x in self.coeffs))
        p = self._pair(other)
        if p is None:
            return NotImplemented
        _, a, b = p
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- predicates --

    def is_zero(self):
        return not any(self.coeffs)

    def is_one(self):
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            if other.field is self.field:
                return self.coeffs == other.coeffs
            if self.is_rational() and other.is_rational():
                return self.coeffs[0] == other.coeffs[0]
            return False
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.order, self.coeffs))

    def sort_key(self):
        return self.coeffs

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- text --

    def __str__(self):
        if self.field.degree == 1:
            return _frac_str(self.coeffs[0])
        return f"{_poly_str(self.coeffs, 'z')} | zeta({self.field.order})"

    def __repr__(self):
        if self.is_rational():
            return _frac_str(self.coeffs[0])
        return f"FieldElem({self})"

    def to_text(self, var="z"):
        """Coefficient text without the field suffix (``'1 + 2*z'``)."""
        return _poly_str(self.coeffs, var)


def _rebuild(order, coeffs):
    return FieldElem(cyclotomic_field(order), coeffs)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _frac_str(f):
    f = Fraction(f)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _poly_str(coeffs, var):
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        if not mono:
            body = _frac_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_frac_str(mag)}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


QQ = cyclotomic_field(1)


def common_field(*elems):
    """Smallest field among the given elements able to hold all of them."""
    K = QQ
    for a in elems:
        if isinstance(a, FieldElem) and a.field.degree > 1:
            if K.degree > 1 and K is not a.field:
                raise FieldMismatchError(f"{K!r} vs {a.field!r}")
            K = a.field
    return K


def primitive_root(r, field=None):
    """A primitive r-th root of unity, in ``field`` (default Q(zeta_r)).

    Raises FieldMismatchError if the field does not contain one.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if field is None:
        field = cyclotomic_field(r)
    n = field.order
    if r == 1:
        return field.one()
    if r == 2:
        return -field.one()
    zeta = field.gen()
    if n % r == 0:
        return zeta ** (n // r)
    if n % 2 == 1 and (2 * n) % r == 0:
        # -zeta_n^((n+1)/2) is a primitive 2n-th root of unity
        zeta2n = -(zeta ** ((n + 1) // 2))
        return zeta2n ** ((2 * n) // r)
    raise FieldMismatchError(f"{field!r} does not contain a primitive {r}-th root of unity")


def elem_add(a, b):
    return a + b


def elem_mul(a, b):
    return a * b


def elem_neg(a):
    return -a


def elem_inv(a):
    return a.inverse()


# --- root search ---

def _integer_root(n, r):
    """Exact r-th root of a nonnegative integer, or None."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // r)  # initial guess >= true root
    while True:
        y = ((r - 1) * x + n // x ** (r - 1)) // r
        if y >= x:
            break
        x = y
    return x if x ** r == n else None


def _rational_rth_root(q, r):
    q = Fraction(q)
    if q < 0:
        if r % 2 == 0:
            return None
        root = _rational_rth_root(-q, r)
        return None if root is None else -root
    p = _integer_root(q.numerator, r)
    d = _integer_root(q.denominator, r)
    if p is None or d is None:
        return None
    return Fraction(p, d)


@lru_cache(maxsize=None)
def _sympy_domain(order):
    import sympy
    from sympy import QQ as SQQ

    if cyclotomic_field(order).degree == 1:
        return SQQ
    dom = SQQ.algebraic_field(sympy.exp(2 * sympy.pi * sympy.I / order))
    if [int(c) for c in reversed(dom.mod.to_list())] != list(_cyclotomic(order)):
        raise RuntimeError(f"unexpected minimal polynomial for zeta_{order}")
    return dom


def _to_sympy(dom, a):
    from sympy import QQ as SQQ

    if a.field.degree == 1:
        c = a.coeffs[0]
        return SQQ(c.numerator, c.denominator)
    return dom.new([SQQ(c.numerator, c.denominator) for c in reversed(a.coeffs)])


def _from_sympy(field, x):
    if field.degree == 1:
        return field(Fraction(int(x.numerator), int(x.denominator)))
    lst = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(x.to_list())]
    return field(lst)


def roots_in_field(coeffs, field=None):
    """All distinct roots in ``field`` of the polynomial sum coeffs[k] t^k.

    Roots are found exactly, by factoring over the field (sympy's algebraic
    factorisation) and collecting the linear factors.  The result is sorted by
    coefficient vector.
    """
    coeffs = list(coeffs)
    if field is None:
        field = common_field(*coeffs)
    coeffs = [field(c) for c in coeffs]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        raise ValueError("the zero polynomial has every element as a root")
    if len(coeffs) == 1:
        return []
    if len(coeffs) == 2:
        return [-coeffs[0] / coeffs[1]]
    from sympy import Poly, Symbol

    dom = _sympy_domain(field.order)
    t = Symbol("t")
    P = Poly([_to_sympy(dom, c) for c in reversed(coeffs)], t, domain=dom)
    roots = []
    for fac, _ in P.factor_list()[1]:
        if fac.degree() == 1:
            c1, c0 = fac.rep.to_list()
            roots.append(_from_sympy(field, dom.quo(-c0, c1)))
    roots = sorted(set(roots), key=FieldElem.sort_key)
    return roots


def rth_root(a, r):
    """Some x in the field of ``a`` with x**r == a, or None if there is none.

    Among all roots the one with the lexicographically largest coefficient
    vector is returned, so over Q the nonnegative root wins and in general the
    first nonzero coordinate is positive.

    >>> rth_root(QQ(4), 2), rth_root(QQ(2), 2), rth_root(QQ(-27, 8), 3)
    (2, None, -3/2)
    """
    if r < 1:
        raise ValueError("r must be positive")
    if not isinstance(a, FieldElem):
        a = QQ(a)
    if r == 1 or a.is_zero() or a.is_one():
        return a
    K = a.field
    if K.degree == 1:
        root = _rational_rth_root(a.coeffs[0], r)
        if root is None:
            return None
        if r % 2 == 0:
            root = abs(root)
        return K(root)
    if a.is_rational():
        # a rational root, if any, is already a candidate; still search the
        # whole field since e.g. -1 = i^2 in Q(i)
        pass
    roots = roots_in_field([-a] + [0] * (r - 1) + [1], K)
    if not roots:
        return None
    return max(roots, key=FieldElem.sort_key)


# --- parsing ---

_TERM = re.compile(
    r"""^\s*(?P<coef>[0-9]+(?:/[0-9]+)?)?\s*\*?\s*
        (?P<var>zeta|z|ζ)?\s*(?:\^\s*(?P<exp>[0-9]+))?\s*$""",
    re.VERBOSE,
)


def parse_elem(text, field=None):
    """Parse ``'p/q'``, ``'c0 + c1*z + ... | zeta(r)'`` or ``'a+b*zeta'``.

    Without a ``| zeta(r)`` suffix the element lives in ``field`` (default Q).
    """
    text = str(text).strip()
    if "|" in text:
        body, suffix = text.split("|", 1)
        m = re.fullmatch(r"\s*zeta\(\s*([0-9]+)\s*\)\s*", suffix)
        if not m:
            raise ValueError(f"bad field suffix in {text!r}")
        K = cyclotomic_field(int(m.group(1)))
        if field is not None and field is not K and K.degree > 1:
            raise FieldMismatchError(f"{text!r} is not in {field!r}")
        if field is not None and K.degree == 1:
            K = field
    else:
        body, K = text, (field or QQ)
    s = body.replace(" ", "")
    if not s:
        raise ValueError("empty field element")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]+)", s)
    if "".join(sign + p for sign, p in pieces) != s:
        raise ValueError(f"cannot parse field element {text!r}")
    coeffs = {}
    for sign, piece in pieces:
        m = _TERM.match(piece)
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"cannot parse term {piece!r} in {text!r}")
        c = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("var") is None:
            if m.group("exp"):
                raise ValueError(f"exponent without variable in {text!r}")
            k = 0
        else:
            k = int(m.group("exp")) if m.group("exp") else 1
        if sign == "-":
            c = -c
        coeffs[k] = coeffs.get(k, 0) + c
    if any(k > 0 for k in coeffs) and K.degree == 1 and K.order == 1:
        raise ValueError(f"{text!r} uses zeta but no cyclotomic field was given")
    top = max(coeffs)
    lst = [coeffs.get(k, Fraction(0)) for k in range(top + 1)]
    if K.degree == 1 and K.order == 2:
        # zeta_2 = -1
        lst = [sum(c * (-1) ** k for k, c in enumerate(lst))]
    return K(lst)
