"""
The truncated unit group W_m(K) = 1 + zK[z]/(z^m).

This is the model of Pic^0(P^1, m*inf)(K).  The group law is multiplication of
polynomials truncated at z^m; [a] denotes the generator 1 - a*z and
[a]_r = 1 - a*z^r.  The filtration Fil_r = 1 + z^r K[z]/(z^m) has graded pieces
isomorphic to K via the coefficient of z^r, with the sign chosen so that
graded_piece([a]_r, r) = a.

>>> u = gen(2, 3) * gen(3, 3)
>>> print(u)
1 - 5*z + 6*z^2 (mod z^3)
>>> print(pic_gen(2, 3))
1 - z - z^2 (mod z^3)
>>> fil_level(TruncUnit(4, [0, 3, 0]))
2
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .field import QQ, FieldElem, common_field, cyclotomic_field, parse_elem, primitive_root

__all__ = [
    "LevelMismatchError",
    "TruncUnit",
    "identity",
    "unit_mul",
    "unit_inv",
    "unit_pow",
    "gen",
    "gen_r",
    "pic_gen",
    "fil_level",
    "graded_piece",
    "gen_r_factorization",
    "series_mul",
    "series_inv",
    "series_pow",
    "UnitTuple",
    "identity_tuple",
    "unit_log",
    "unit_exp",
    "filtration_length",
]


class LevelMismatchError(ValueError):
    pass


# --- truncated power series over a field (ascending lists, constant term included) ---

def series_mul(a, b, n):
    """Product of two series truncated to n terms."""
    out = [None] * n
    for k in range(n):
        acc = None
        for i in range(max(0, k - len(b) + 1), min(k + 1, len(a))):
            x, y = a[i], b[k - i]
            if x and y:
                acc = x * y if acc is None else acc + x * y
        out[k] = acc
    zero = _zero_like(a, b)
    return [zero if c is None else c for c in out]


def series_inv(a, n):
    """Inverse of a series with invertible constant term, truncated to n terms."""
    if not a or not a[0]:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = 1 / a[0]
    out = [inv0]
    for k in range(1, n):
        acc = a[0] * 0
        for i in range(1, min(k, len(a) - 1) + 1):
            if a[i]:
                acc = acc + a[i] * out[k - i]
        out.append(-acc * inv0)
    return out


def series_pow(a, q, n):
    """a**q truncated to n terms, for a with constant term 1 and q rational.

    Uses the binomial series sum binom(q, k) x^k with x = a - 1, which has no
    constant term, so the sum is finite modulo z^n.
    """
    q = Fraction(q)
    one = a[0]
    if one != 1:
        raise ValueError("rational powers need constant term 1")
    x = [one * 0] + list(a[1:n])
    x += [one * 0] * (n - len(x))
    out = [one] + [one * 0] * (n - 1)
    term = [one] + [one * 0] * (n - 1)
    binom = Fraction(1)
    for k in range(1, n):
        term = series_mul(term, x, n)
        binom = binom * (q - k + 1) / k
        if binom:
            out = [s + binom * t for s, t in zip(out, term)]
    return out


def _zero_like(*seqs):
    for s in seqs:
        for c in s:
            if isinstance(c, FieldElem):
                return c.field.zero()
    return QQ.zero()


class TruncUnit:
    """An element 1 + c_1 z + ... + c_{m-1} z^{m-1} of W_m(K).

    ``coeffs`` is the tuple (c_1, ..., c_{m-1}); the constant term is implicitly 1.
    """

    __slots__ = ("m", "coeffs", "field")

    def __init__(self, m, coeffs=(), field=None):
        if m < 1:
            raise ValueError(f"level must be >= 1, got {m}")
        coeffs = [parse_elem(c, field) if isinstance(c, str) else c for c in coeffs]
        if len(coeffs) > m - 1:
            # truncate, but only silently for trailing data beyond z^m
            coeffs = coeffs[: m - 1]
        if field is None:
            field = common_field(*coeffs)
        coeffs = [field(c) for c in coeffs] + [field.zero()] * (m - 1 - len(coeffs))
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("TruncUnit is immutable")

    @classmethod
    def from_series(cls, series, m, field=None):
        """Build from a full series (constant term must be 1)."""
        if series[0] != 1:
            raise ValueError("constant term of a truncated unit must be 1")
        return cls(m, list(series[1:m]), field)

    def series(self):
        return [self.field.one()] + list(self.coeffs)

    def _check(self, other):
        if not isinstance(other, TruncUnit):
            raise TypeError(f"expected TruncUnit, got {type(other).__name__}")
        if other.m != self.m:
            raise LevelMismatchError(f"levels {self.m} and {other.m} differ")
        return common_field(self.field.zero(), other.field.zero())

    def __mul__(self, other):
        if not isinstance(other, TruncUnit):
            return NotImplemented
        K = self._check(other)
        if self.m == 1:
            return self
        return TruncUnit.from_series(series_mul(self.series(), other.series(), self.m), self.m, K)

    def inverse(self):
        if self.m == 1:
            return self
        return TruncUnit.from_series(series_inv(self.series(), self.m), self.m, self.field)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k):
        if isinstance(k, bool) or not isinstance(k, (int, Rational)):
            return NotImplemented
        if isinstance(k, int) or Fraction(k).denominator == 1:
            k = int(k)
            if k < 0:
                return self.inverse() ** (-k)
            result = identity(self.m, self.field)
            base = self
            while k:
                if k & 1:
                    result = result * base
                k >>= 1
                if k:
                    base = base * base
            return result
        return TruncUnit.from_series(series_pow(self.series(), k, self.m), self.m, self.field)

    def is_identity(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncUnit):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __str__(self):
        parts = ["1"]
        for k, c in enumerate(self.coeffs, start=1):
            if not c:
                continue
            mono = "z" if k == 1 else f"z^{k}"
            if c.is_rational():
                f = c.coeffs[0]
                mag = abs(f)
                body = mono if mag == 1 else f"{_fs(mag)}*{mono}"
                parts.append(("- " if f < 0 else "+ ") + body)
            else:
                parts.append(f"+ ({c.to_text('zeta')})*{mono}")
        suffix = "" if self.field.degree == 1 else f" | zeta({self.field.order})"
        return " ".join(parts) + f" (mod z^{self.m})" + suffix

    def __repr__(self):
        return f"TruncUnit({self})"

    def to_json(self):
        return {"m": self.m, "coeffs": [_elem_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj, field=None):
        coeffs = [parse_elem(c, field) if isinstance(c, str) else c for c in obj["coeffs"]]
        if field is None and coeffs:
            field = common_field(*[c for c in coeffs if isinstance(c, FieldElem)])
        return cls(int(obj["m"]), coeffs, field)


def _fs(f):
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _elem_json(c):
    return str(c)


def _as_elem(a):
    return a if isinstance(a, FieldElem) else QQ(a)


# --- top-level operations ---

def identity(m, field=QQ):
    return TruncUnit(m, (), field)


def unit_mul(u, v):
    return u * v


def unit_inv(u):
    return u.inverse()


def unit_pow(u, q):
    """u**q for q an integer or rational (W_m is uniquely divisible in char 0)."""
    return u ** q


def gen(a, m):
    """[a] = 1 - a z."""
    a = _as_elem(a)
    return TruncUnit(m, [-a], a.field)


def gen_r(a, r, m):
    """[a]_r = 1 - a z^r."""
    a = _as_elem(a)
    if r < 1:
        raise ValueError("r must be >= 1")
    coeffs = [a.field.zero()] * (r - 1) + [-a]
    return TruncUnit(m, coeffs, a.field)


def pic_gen(a, m):
    """[a] - [1] = (1 - a z)/(1 - z) = 1 + (1 - a)(z + ... + z^{m-1})."""
    a = _as_elem(a)
    c = 1 - a
    return TruncUnit(m, [c] * (m - 1), a.field)


def fil_level(u):
    """Largest r with u in Fil_r, i.e. the index of the first nonzero coefficient."""
    for k, c in enumerate(u.coeffs, start=1):
        if c:
            return k
    return u.m


def graded_piece(u, r):
    """The image of u in gr^r = Fil_r/Fil_{r+1}, identified with K."""
    if not 1 <= r:
        raise ValueError("r must be >= 1")
    if fil_level(u) < r:
        raise ValueError(f"unit has filtration level {fil_level(u)} < {r}")
    if r >= u.m:
        return u.field.zero()
    return -u.coeffs[r - 1]


def gen_r_factorization(a, r, m, field=None):
    """prod_{q<r} [zeta_r^q a], checked against [a^r]_r = 1 - a^r z^r.

    ``field`` defaults to Q(zeta_r) (or the field of ``a`` if larger).
    """
    a = _as_elem(a)
    if field is None:
        field = a.field if a.field.degree > 1 else cyclotomic_field(r)
    a = field(a)
    zeta = primitive_root(r, field)
    out = identity(m, field)
    w = field.one()
    for _ in range(r):
        out = out * gen(w * a, m)
        w = w * zeta
    expected = gen_r(a ** r, r, m) if r < m else identity(m, field)
    if out != expected:
        raise AssertionError(f"factorization of [a^r]_r failed for a={a}, r={r}, m={m}")
    return out


class UnitTuple:
    """An element of W_m(K)^n, a term of the bar complex in degree n.

    ``chain`` optionally records a cycle whose Albanese image this tuple is;
    delta uses it as the preimage.  It is bookkeeping only and does not take
    part in equality.
    """

    __slots__ = ("m", "components", "chain")

    def __init__(self, m, components, chain=None):
        components = tuple(components)
        for u in components:
            if u.m != m:
                raise LevelMismatchError(f"component of level {u.m} in a level {m} tuple")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "chain", chain)

    def __setattr__(self, name, value):
        raise AttributeError("UnitTuple is immutable")

    @property
    def n(self):
        return len(self.components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def _check(self, other):
        if not isinstance(other, UnitTuple):
            raise TypeError(f"expected UnitTuple, got {type(other).__name__}")
        if other.m != self.m:
            raise LevelMismatchError(f"levels {self.m} and {other.m} differ")
        if other.n != self.n:
            raise ValueError(f"tuple lengths {self.n} and {other.n} differ")

    def __mul__(self, other):
        if not isinstance(other, UnitTuple):
            return NotImplemented
        self._check(other)
        chain = None
        if self.chain is not None and other.chain is not None:
            chain = self.chain + other.chain
        return UnitTuple(self.m, [u * v for u, v in zip(self.components, other.components)], chain)

    def inverse(self):
        chain = None if self.chain is None else -self.chain
        return UnitTuple(self.m, [u.inverse() for u in self.components], chain)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, q):
        chain = None if self.chain is None else self.chain * q
        return UnitTuple(self.m, [u ** q for u in self.components], chain)

    def is_identity(self):
        return all(u.is_identity() for u in self.components)

    def fil_level(self):
        """Largest r with every component in Fil_r."""
        return min((fil_level(u) for u in self.components), default=self.m)

    def forget_chain(self):
        return UnitTuple(self.m, self.components)

    def with_chain(self, chain):
        return UnitTuple(self.m, self.components, chain)

    def __eq__(self, other):
        if not isinstance(other, UnitTuple):
            return NotImplemented
        return self.m == other.m and self.components == other.components

    def __hash__(self):
        return hash((self.m, self.components))

    def __repr__(self):
        return "UnitTuple(" + ", ".join(str(u) for u in self.components) + ")"

    def to_json(self):
        return {"m": self.m, "components": [u.to_json() for u in self.components]}

    @classmethod
    def from_json(cls, obj, field=None):
        m = int(obj["m"])
        return cls(m, [TruncUnit.from_json(c, field) for c in obj["components"]])


def identity_tuple(n, m, field=QQ):
    return UnitTuple(m, [identity(m, field)] * n)


def unit_log(u):
    """Coefficients (l_1, ..., l_{m-1}) of log(u) = sum l_k z^k, truncated at z^m.

    log is a group isomorphism W_m(K) -> (z K[z]/z^m, +) in characteristic 0.
    Uses u' = L' u, i.e. k u_k = sum_{j=1}^{k} j l_j u_{k-j}.
    """
    m = u.m
    c = (u.field.one(),) + u.coeffs
    logs = []
    for k in range(1, m):
        acc = c[k] * k
        for j in range(1, k):
            if logs[j - 1] and c[k - j]:
                acc = acc - logs[j - 1] * c[k - j] * j
        logs.append(acc / k)
    return logs


def unit_exp(logs, m, field=None):
    """Inverse of :func:`unit_log`, via k f_k = sum_{j=1}^{k} j l_j f_{k-j}."""
    logs = list(logs)
    if field is None:
        field = common_field(*logs)
    lg = [field(c) for c in logs[: m - 1]] + [field.zero()] * (m - 1 - len(logs))
    f = [field.one()]
    for k in range(1, m):
        acc = field.zero()
        for j in range(1, k + 1):
            if lg[j - 1] and f[k - j]:
                acc = acc + lg[j - 1] * f[k - j] * j
        f.append(acc / k)
    return TruncUnit(m, f[1:], field)


def filtration_length(m, field=QQ):
    """Number of r with Fil_r / Fil_{r+1} nonzero, from explicit witnesses [1]_r."""
    return sum(1 for r in range(1, m) if fil_level(gen_r(field.one(), r, m)) == r)
