"""
Relative Picard groups of P^1 with respect to an effective divisor D.

For nonempty |D| the degree-zero part is

    Pic^0(P^1, D) = (prod_{p in |D|} (K[t_p]/t_p^{n_p})^x) / K^x

with local coordinates t_p = z - p at finite points and t_inf = 1/z.  A
PicClass stores one truncated unit per support point, normalized so that the
unit at the base point (least finite point, infinity last) has constant term 1.

>>> D = Divisor({INF: 2, 0: 1})
>>> c = class_of_function(([1], [2]), D)
>>> c.unit_data[INF], c.unit_data[QQ(0)]
((2, 2), (1,))
"""

from __future__ import annotations

import random
from fractions import Fraction

from .field import QQ, FieldElem, common_field, parse_elem
from .units import TruncUnit, series_inv, series_mul

__all__ = [
    "INF",
    "Divisor",
    "PicClass",
    "class_of_function",
    "restrict",
    "kernel_embed",
    "lift",
    "check_exactness",
    "diagonal_injectivity",
    "to_trunc_unit",
    "from_trunc_unit",
    "random_class",
    "random_units",
    "generator_units",
]


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "inf"

    __str__ = __repr__

    def __reduce__(self):
        return (_infinity, ())


def _infinity():
    return INF


INF = _Infinity()


def _pt(p, field=None):
    if p is INF:
        return INF
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        return parse_elem(p, field)
    if isinstance(p, FieldElem):
        return p
    return QQ(p)


def _pt_key(p):
    return (1, ()) if p is INF else (0, p.sort_key())


def _pt_str(p):
    return "inf" if p is INF else p.to_text("zeta") if not p.is_rational() else str(p)


class Divisor:
    """An effective divisor on P^1, a finite map point -> multiplicity >= 1."""

    __slots__ = ("mults",)

    def __init__(self, mults=None):
        clean = {}
        for p, n in (mults or {}).items():
            n = int(n)
            if n < 0:
                raise ValueError(f"negative multiplicity {n} at {p}")
            if n:
                p = _pt(p)
                clean[p] = clean.get(p, 0) + n
        object.__setattr__(self, "mults", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Divisor is immutable")

    def support(self):
        return sorted(self.mults, key=_pt_key)

    def base_point(self):
        if not self.mults:
            raise ValueError("empty divisor has no base point")
        return self.support()[0]

    def degree(self):
        return sum(self.mults.values())

    def is_empty(self):
        return not self.mults

    def __getitem__(self, p):
        return self.mults.get(_pt(p), 0)

    def __add__(self, other):
        out = dict(self.mults)
        for p, n in other.mults.items():
            out[p] = out.get(p, 0) + n
        return Divisor(out)

    def __le__(self, other):
        return all(other.mults.get(p, 0) >= n for p, n in self.mults.items())

    def disjoint(self, other):
        return not (set(self.mults) & set(other.mults))

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.mults == other.mults

    def __hash__(self):
        return hash(frozenset(self.mults.items()))

    def field(self):
        return common_field(*[p for p in self.mults if p is not INF])

    def __repr__(self):
        return "Divisor(" + " + ".join(f"{n}*{_pt_str(p)}" for p, n in ((p, self.mults[p]) for p in self.support())) + ")"

    def to_json(self):
        return {"points": [{"at": _pt_str(p), "mult": self.mults[p]} for p in self.support()]}

    @classmethod
    def from_json(cls, obj, field=None):
        mults = {}
        for item in obj["points"]:
            p = _pt(str(item["at"]), field)
            mults[p] = mults.get(p, 0) + int(item["mult"])
        return cls(mults)


class PicClass:
    """A class in Pic^0(P^1, D), in normal form."""

    __slots__ = ("divisor", "unit_data", "field")

    def __init__(self, divisor, unit_data, field=None):
        if divisor.is_empty():
            raise ValueError("relative Picard classes need a nonempty divisor")
        raw = {}
        for p, cs in unit_data.items():
            p = _pt(p)
            if p not in divisor.mults:
                raise ValueError(f"unit data at {p}, which is outside the support")
            raw[p] = [c if isinstance(c, FieldElem) else (parse_elem(c) if isinstance(c, str) else QQ(c)) for c in cs]
        if field is None:
            field = common_field(divisor.field().zero(), *[c for cs in raw.values() for c in cs])
        data = {}
        for p in divisor.support():
            n = divisor.mults[p]
            cs = [field(c) for c in raw.get(p, [1])][:n]
            cs += [field.zero()] * (n - len(cs))
            if not cs[0]:
                raise ValueError(f"unit data at {p} is not a unit")
            data[p] = cs
        scale = 1 / data[divisor.base_point()][0]
        data = {p: tuple(c * scale for c in cs) for p, cs in data.items()}
        object.__setattr__(self, "divisor", divisor)
        object.__setattr__(self, "unit_data", data)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("PicClass is immutable")

    @classmethod
    def identity(cls, divisor, field=QQ):
        return cls(divisor, {}, field)

    def is_identity(self):
        return all(cs[0] == 1 and not any(cs[1:]) for cs in self.unit_data.values())

    def _check(self, other):
        if self.divisor != other.divisor:
            raise ValueError("classes live on different divisors")

    def __mul__(self, other):
        if not isinstance(other, PicClass):
            return NotImplemented
        self._check(other)
        D = self.divisor
        data = {p: series_mul(self.unit_data[p], other.unit_data[p], D.mults[p]) for p in D.mults}
        return PicClass(D, data, common_field(self.field.zero(), other.field.zero()))

    def inverse(self):
        D = self.divisor
        data = {p: series_inv(list(self.unit_data[p]), D.mults[p]) for p in D.mults}
        return PicClass(D, data, self.field)

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, PicClass):
            return NotImplemented
        return self.divisor == other.divisor and self.unit_data == other.unit_data

    def __hash__(self):
        return hash((self.divisor, tuple(sorted(((_pt_key(p), cs) for p, cs in self.unit_data.items())))))

    def __repr__(self):
        parts = []
        for p in self.divisor.support():
            parts.append(f"{_pt_str(p)}: [" + ", ".join(str(c) for c in self.unit_data[p]) + "]")
        return "PicClass(" + "; ".join(parts) + ")"

    def to_json(self):
        return {
            "divisor": self.divisor.to_json(),
            "unit_data": [
                {"at": _pt_str(p), "coeffs": [str(c) for c in self.unit_data[p]]} for p in self.divisor.support()
            ],
        }

    @classmethod
    def from_json(cls, obj, field=None):
        D = Divisor.from_json(obj["divisor"], field)
        data = {}
        for item in obj["unit_data"]:
            data[_pt(str(item["at"]), field)] = [parse_elem(c, field) for c in item["coeffs"]]
        return cls(D, data, field)


def class_of_function(f, D):
    """Class of the unit data of a rational function f along D.

    ``f`` is a ModulusFunction or a pair (zeros, poles) of root lists,
    f = prod(z - a)/prod(z - b) up to a constant (constants are killed).
    """
    if hasattr(f, "num"):
        num, den = list(f.num), list(f.den)
    else:
        num, den = [_pt(a) for a in f[0]], [_pt(b) for b in f[1]]
    if any(a is INF for a in num + den):
        raise ValueError("roots must be finite; zeros or poles at infinity are read off the degrees")
    if D.is_empty():
        raise ValueError("relative Picard classes need a nonempty divisor")
    field = common_field(D.field().zero(), *num, *den)
    one = field.one()
    data = {}
    for p in D.support():
        n = D.mults[p]
        if p is INF:
            if len(num) != len(den):
                raise ValueError("f has a zero or pole at infinity, which meets the support")
            # f(1/t) = prod(1 - a t) / prod(1 - b t)
            top = [one] + [field.zero()] * (n - 1)
            bot = list(top)
            for a in num:
                top = series_mul(top, [one, -a], n)
            for b in den:
                bot = series_mul(bot, [one, -b], n)
        else:
            top = [one] + [field.zero()] * (n - 1)
            bot = list(top)
            for a in num:
                c = field(p) - a
                if not c:
                    raise ValueError(f"f vanishes at the support point {p}")
                top = series_mul(top, [c, one], n)
            for b in den:
                c = field(p) - b
                if not c:
                    raise ValueError(f"f has a pole at the support point {p}")
                bot = series_mul(bot, [c, one], n)
        data[p] = series_mul(top, series_inv(bot, n), n)
    return PicClass(D, data, field)


def restrict(cls, D):
    """Image of a class on D+E in Pic(P^1, D)."""
    if not D <= cls.divisor:
        raise ValueError(f"{D} is not a subdivisor of {cls.divisor}")
    if D.is_empty():
        raise ValueError("cannot restrict to the empty divisor")
    data = {p: cls.unit_data[p][: n] for p, n in D.mults.items()}
    return PicClass(D, data, cls.field)


def _check_pair(D, E):
    if D.is_empty():
        raise ValueError("|D| must be nonempty")
    if not D.disjoint(E):
        raise ValueError("|D| and |E| must be disjoint")


def kernel_embed(u, D, E):
    """Class on D+E with unit data 1 along D and u along E.

    ``u`` maps each point of |E| to a unit of K[t]/t^{n_p} (coefficient list).
    """
    _check_pair(D, E)
    for p in u:
        if _pt(p) not in E.mults:
            raise ValueError(f"unit given at {p}, which is not in |E|")
    data = {p: [1] for p in D.mults}
    for p, cs in u.items():
        data[_pt(p)] = cs
    return PicClass(D + E, data)


def lift(cls, E):
    """Extend a class on D to D+E by unit data 1 along E (a section of restrict)."""
    _check_pair(cls.divisor, E)
    data = dict(cls.unit_data)
    for p in E.mults:
        data[p] = [1]
    return PicClass(cls.divisor + E, data, cls.field)


def random_units(D, rng, field=QQ, bound=5):
    """Random unit data along D with small rational coefficients."""
    data = {}
    for p, n in D.mults.items():
        c0 = 0
        while c0 == 0:
            c0 = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
        data[p] = [c0] + [Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(n - 1)]
    return data


def random_class(D, rng, bound=5):
    return PicClass(D, random_units(D, rng, bound=bound))


def generator_units(D):
    """Unit data supported at a single point: constants and 1 + t^k."""
    gens = []
    for p in D.support():
        n = D.mults[p]
        gens.append({p: [2]})
        for k in range(1, n):
            gens.append({p: [1] + [0] * (k - 1) + [1]})
    return gens


def check_exactness(D, E, samples=25, seed=0):
    """Sample-based check of 0 -> H^0(O_E^x) -> Pic(D+E) -> Pic(D) -> 0.

    Returns a dict with the three booleans and the number of checks.
    """
    _check_pair(D, E)
    rng = random.Random(seed)
    DE = D + E
    report = {"injective": True, "kernel_is_image": True, "surjective": True, "checks": 0}
    if E.is_empty():
        # restrict is then the identity map
        for _ in range(samples):
            c = random_class(D, rng)
            ok = restrict(c, D) == c
            report["surjective"] &= ok
            report["kernel_is_image"] &= (c.is_identity() == restrict(c, D).is_identity())
            report["checks"] += 1
        return report

    # H^0(O_E^x): generators and random samples, excluding the identity
    us = generator_units(E) + [random_units(E, rng) for _ in range(samples)]
    seen = {}
    for u in us:
        k = kernel_embed(u, D, E)
        # injective: the class is trivial only for u = 1 and different u give different classes
        trivial_u = all(Fraction(cs[0]) == 1 and not any(cs[1:]) for cs in u.values())
        if k.is_identity() != trivial_u:
            report["injective"] = False
        key = tuple(sorted((_pt_key(_pt(p)), tuple(QQ(c) for c in cs) + (0,) * (E.mults[_pt(p)] - len(cs))) for p, cs in u.items()))
        if k in seen and seen[k] != key:
            report["injective"] = False
        seen[k] = key
        # image lies in the kernel
        if not restrict(k, D).is_identity():
            report["kernel_is_image"] = False
        report["checks"] += 1

    # kernel lies in the image: classes with trivial restriction come from E
    classes = [PicClass(DE, g) for g in generator_units(DE)]
    classes += [random_class(DE, rng) for _ in range(samples)]
    # also some elements that are certainly in the kernel but not in normal position
    classes += [kernel_embed(random_units(E, rng), D, E) * PicClass(DE, {p: [3] for p in DE.mults}) for _ in range(3)]
    for c in classes:
        if restrict(c, D).is_identity():
            # write c with D part 1: divide by the constant its D part equals
            scale = c.unit_data[D.base_point()][0]
            u = {p: [x / scale for x in c.unit_data[p]] for p in E.mults}
            if kernel_embed(u, D, E) != c:
                report["kernel_is_image"] = False
        report["checks"] += 1

    # surjective: every class on D lifts
    for g in generator_units(D) + [random_units(D, rng) for _ in range(samples)]:
        c = PicClass(D, g)
        if restrict(lift(c, E), D) != c:
            report["surjective"] = False
        report["checks"] += 1
    return report


def diagonal_injectivity(D, E1, E2, samples=50, seed=0):
    """Pic(D+E1+E2) -> Pic(D+E1) + Pic(D+E2) has trivial kernel on samples."""
    if not E1.disjoint(E2):
        raise ValueError("|E1| and |E2| must be disjoint")
    _check_pair(D, E1)
    _check_pair(D, E2)
    rng = random.Random(seed)
    full = D + E1 + E2
    classes = [PicClass(full, g) for g in generator_units(full)]
    classes += [random_class(full, rng) for _ in range(samples)]
    for c in classes:
        if c.is_identity():
            continue
        if restrict(c, D + E1).is_identity() and restrict(c, D + E2).is_identity():
            return False
    return True


def to_trunc_unit(cls):
    """For D = m*inf, the class as an element of W_m (z standing for t = 1/z)."""
    D = cls.divisor
    if set(D.mults) != {INF}:
        raise ValueError("only classes on m*inf correspond to truncated units")
    m = D.mults[INF]
    return TruncUnit(m, cls.unit_data[INF][1:], cls.field)


def from_trunc_unit(u):
    D = Divisor({INF: u.m})
    return PicClass(D, {INF: [u.field.one()] + list(u.coeffs)}, u.field)
