"""
The complex (W_m^n, delta_n) obtained by pushing the bar complex of A^1 along
the Albanese map, its filtration by Fil_r, and the graded differentials.

Conventions:

* delta on a tuple t is albanese(bar_differential(c)) for a chain c with
  albanese(c) = t.  Tuples built from points remember such a chain; for other
  tuples a canonical chain is produced by :func:`canonical_preimage`.
* gen_tuple(a) is the tuple ([a_1], ..., [a_n]) with chain (a) - (0, ..., 0),
  whose Albanese image is exactly ([a_1], ..., [a_n]).
* Graded vectors carry their r-th roots: entry i is x_i^r.

>>> t = gen_tuple([2, 3], 3)
>>> print(delta(t)[0])
1 + 6*z^2 (mod z^3)
>>> graded_delta(GradedVector.from_roots([1, 2], 2, 4)).entries
(-4,)
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .cycles import Cycle, albanese, bar_differential
from .field import QQ, FieldElem, common_field, cyclotomic_field, primitive_root, roots_in_field, rth_root
from .linalg import rank, solve
from .units import (
    UnitTuple,
    fil_level,
    gen,
    gen_r_factorization,
    graded_piece,
    identity_tuple,
    unit_log,
)

__all__ = [
    "UnitTuple",
    "GradedVector",
    "gen_tuple",
    "ones_tuple",
    "canonical_preimage",
    "delta",
    "delta_on_generators",
    "graded_delta",
    "verify_claim",
    "gr_cycle_check",
    "gr_boundary_lift",
    "gr1_matrix",
    "gr1_homology",
    "bar_homology_r1",
]


def _elem(a, field=None):
    if isinstance(a, FieldElem):
        return a if field is None else field(a)
    return (field or QQ)(a)


# --- tuples and delta ---

def gen_tuple(points, m, field=None):
    """([a_1], ..., [a_n]) with chain (a_1, ..., a_n) - (0, ..., 0)."""
    pts = [_elem(a) for a in points]
    if field is None:
        field = common_field(*pts)
    pts = tuple(field(a) for a in pts)
    n = len(pts)
    chain = Cycle(n, {pts: 1}) - Cycle(n, {(field.zero(),) * n: 1})
    return UnitTuple(m, [gen(a, m) for a in pts], chain)


def ones_tuple(n, m, field=QQ):
    """([1], ..., [1]) with its chain -(0, ..., 0)."""
    chain = Cycle(n, {(field.zero(),) * n: -1})
    return UnitTuple(m, [gen(field.one(), m)] * n, chain)


def _candidate_points(field):
    """Deterministic enumeration of small points of the field."""
    yield field.zero()
    bound = 1
    seen = {field.zero()}
    while True:
        for v in product(range(-bound, bound + 1), repeat=field.degree):
            if max(abs(c) for c in v) != bound:
                continue
            a = field(list(v))
            if a not in seen:
                seen.add(a)
                yield a
        bound += 1


def _flat(logs):
    out = []
    for c in logs:
        out.extend(c.coeffs)
    return out


@lru_cache(maxsize=None)
def _preimage_basis(m, order):
    """Points b_j whose Albanese images pic_gen(b_j) span W_m(K) over Q."""
    from .units import pic_gen

    field = cyclotomic_field(order)
    dim = (m - 1) * field.degree
    chosen, cols = [], []
    for b in _candidate_points(field):
        if len(chosen) == dim:
            break
        v = _flat(unit_log(pic_gen(b, m)))
        if rank(cols + [v]) > len(cols):
            chosen.append(b)
            cols.append(v)
    return tuple(chosen), tuple(tuple(c) for c in cols)


def canonical_preimage(t):
    """A chain c with albanese(c) = t, built from elementary points.

    Component u at slot i is written as prod pic_gen(b_j)^{c_j} with rational
    c_j (solved in log coordinates) and realised by the points
    (1, ..., b_j, ..., 1), since pic_gen(1) is the identity.
    """
    m, n = t.m, t.n
    fields = [u.field for u in t.components if u.field.degree > 1]
    field = fields[0] if fields else QQ
    if m == 1 or t.is_identity():
        return Cycle(n)
    basis, cols = _preimage_basis(m, field.order)
    A = [list(row) for row in zip(*cols)] if cols else []
    terms = {}
    one = field.one()
    for i, u in enumerate(t.components):
        if u.is_identity():
            continue
        target = _flat([field(c) for c in unit_log(u)])
        coeffs = solve(A, target)
        assert coeffs is not None, "pic_gen images span W_m"
        for b, c in zip(basis, coeffs):
            if c:
                p = tuple(b if j == i else one for j in range(n))
                terms[p] = terms.get(p, 0) + c
    chain = Cycle(n, terms)
    assert albanese(chain, m, field) == t
    return chain


def delta(t):
    """delta_n : W_m^n -> W_m^{n-1}, evaluated through a chain preimage of t."""
    if t.n < 1:
        raise ValueError("delta is not defined in degree 0")
    chain = t.chain if t.chain is not None else canonical_preimage(t)
    field = common_field(*[u.field.zero() for u in t.components])
    return albanese(bar_differential(chain), t.m, field)


def delta_on_generators(points, m, field=None):
    """Closed form of delta(gen_tuple(points)) (the four-case table)."""
    pts = [_elem(a) for a in points]
    if field is None:
        field = common_field(*pts)
    pts = [field(a) for a in pts]
    n = len(pts)
    if n < 1:
        raise ValueError("delta is not defined in degree 0")
    comps = []
    for i in range(1, n):
        a, b = pts[i - 1], pts[i]
        s = gen(a + b, m)
        if n % 2 == 0 and i % 2 == 0:
            u = s
        elif n % 2 == 0:
            u = gen(a, m) * gen(b, m) / s
        elif i % 2 == 0:
            u = s / gen(a, m)
        else:
            u = gen(b, m) / s
        comps.append(u)
    chain = bar_differential(gen_tuple(pts, m, field).chain)
    return UnitTuple(m, comps, chain)


# --- graded pieces ---

class GradedVector:
    """An element of gr^r(W_m^n) = K^n, with entry i given as x_i^r.

    ``roots`` may be None for vectors produced by graded_delta.
    """

    __slots__ = ("m", "r", "entries", "roots")

    def __init__(self, m, r, entries, roots=None):
        entries = tuple(_elem(e) for e in entries)
        if roots is not None:
            roots = tuple(_elem(x) for x in roots)
            if len(roots) != len(entries):
                raise ValueError("one root per entry is required")
            for x, e in zip(roots, entries):
                if x ** r != e:
                    raise ValueError(f"{x} is not an r-th root of {e} (r={r})")
        if r < 1:
            raise ValueError("r must be >= 1")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "roots", roots)

    def __setattr__(self, name, value):
        raise AttributeError("GradedVector is immutable")

    @classmethod
    def from_roots(cls, roots, r, m):
        roots = [_elem(x) for x in roots]
        return cls(m, r, [x ** r for x in roots], roots)

    @property
    def n(self):
        return len(self.entries)

    def is_zero(self):
        return all(not e for e in self.entries)

    def __eq__(self, other):
        if not isinstance(other, GradedVector):
            return NotImplemented
        return (self.m, self.r, self.entries) == (other.m, other.r, other.entries)

    def __hash__(self):
        return hash((self.m, self.r, self.entries))

    def __repr__(self):
        roots = "" if self.roots is None else f", roots={[str(x) for x in self.roots]}"
        return f"GradedVector(r={self.r}, m={self.m}, entries={[str(e) for e in self.entries]}{roots})"

    def to_json(self):
        out = {"m": self.m, "r": self.r, "entries": [str(e) for e in self.entries]}
        if self.roots is not None:
            out["roots"] = [str(x) for x in self.roots]
        return out


def _graded_entry(N, i, a, b, r):
    s = (a + b) ** r
    if N % 2 == 0 and i % 2 == 0:
        return s
    if N % 2 == 0:
        return a ** r + b ** r - s
    if i % 2 == 0:
        return s - a ** r
    return b ** r - s


def graded_delta(v):
    """gr^r(delta_n) in terms of the roots x_i (the Claim's four cases)."""
    if v.roots is None:
        raise ValueError("graded_delta needs the r-th roots of the entries")
    N = v.n
    if N < 1:
        raise ValueError("delta is not defined in degree 0")
    x = v.roots
    out = [_graded_entry(N, i, x[i - 1], x[i], v.r) for i in range(1, N)]
    return GradedVector(v.m, v.r, out)


def verify_claim(r, m, n, roots, field=None):
    """Check the Claim on ([x_1^r]_r, ..., [x_n^r]_r) exactly.

    delta of the tuple is computed as prod_q delta_on_generators(zeta^q x),
    using [x^r]_r = prod_q [zeta^q x]; each output component must lie in
    Fil_r and its graded piece must match graded_delta.
    """
    if not m > r:
        raise ValueError("need m > r")
    xs = [_elem(x) for x in roots]
    if len(xs) != n:
        raise ValueError(f"expected {n} roots, got {len(xs)}")
    if field is None:
        field = common_field(*xs)
        if field.degree == 1:
            field = cyclotomic_field(r)
    xs = [field(x) for x in xs]
    zeta = primitive_root(r, field)
    for x in xs:
        gen_r_factorization(x, r, m, field)
    out = identity_tuple(n - 1, m, field)
    w = field.one()
    for _ in range(r):
        out = out * delta_on_generators([w * x for x in xs], m, field)
        w = w * zeta
    expected = graded_delta(GradedVector.from_roots(xs, r, m))
    for u, e in zip(out.components, expected.entries):
        if fil_level(u) < r:
            return False
        if graded_piece(u, r) != e:
            return False
    return True


def gr_cycle_check(v):
    """True iff gr^r(delta)(v) = 0, via the conditions on the roots."""
    if v.roots is None:
        raise ValueError("gr_cycle_check needs the r-th roots of the entries")
    N, r, x = v.n, v.r, v.roots
    for i in range(1, N):
        a, b = x[i - 1], x[i]
        s = (a + b) ** r
        if N % 2 == 0 and i % 2 == 0:
            ok = not s
        elif N % 2 == 0:
            ok = s == a ** r + b ** r
        elif i % 2 == 0:
            ok = s == a ** r
        else:
            ok = s == b ** r
        if not ok:
            return False
    return True


# --- boundary lifting ---

@lru_cache(maxsize=None)
def _roots_of_unity(r, order):
    field = cyclotomic_field(order)
    if r == 1:
        return (field.one(),)
    return tuple(roots_in_field([-1] + [0] * (r - 1) + [1], field))


def _all_rth_roots(c, r, field):
    """Every s in the field with s^r = c."""
    if not c:
        return [field.zero()]
    s = rth_root(field(c), r)
    if s is None:
        return []
    return sorted({w * s for w in _roots_of_unity(r, field.order)}, key=FieldElem.sort_key)


def _binom_coeffs(r):
    out = [1]
    for k in range(1, r + 1):
        out.append(out[-1] * (r - k + 1) // k)
    return out


def _solve_step(N, i, y, target, r, field):
    """All t with graded entry (N, i) of (y, t) equal to target."""
    if N % 2 == 0 and i % 2 == 0:
        # (y + t)^r = target
        return [s - y for s in _all_rth_roots(target, r, field)]
    if N % 2 == 1 and i % 2 == 0:
        # (y + t)^r = target + y^r
        return [s - y for s in _all_rth_roots(target + y ** r, r, field)]
    # the remaining cases are polynomials of degree r - 1 in t:
    # N even, i odd: y^r + t^r - (y+t)^r - target = -sum_{0<k<r} C(r,k) y^{r-k} t^k + (y^r - target)... see below
    C = _binom_coeffs(r)
    if N % 2 == 0:
        # y^r + t^r - (y+t)^r = -sum_{k=1}^{r-1} C(r,k) y^(r-k) t^k
        poly = [-target] + [-C[k] * y ** (r - k) for k in range(1, r)]
    else:
        # t^r - (y+t)^r = -sum_{k=0}^{r-1} C(r,k) y^(r-k) t^k
        poly = [-C[k] * y ** (r - k) for k in range(0, r)]
        poly[0] = poly[0] - target
    poly = [field(c) for c in poly]
    while poly and not poly[-1]:
        poly.pop()
    if not poly:
        # every t works; the recipe takes t = 0
        return [field.zero()]
    if len(poly) == 1:
        return []
    return roots_in_field(poly, field)


def gr_boundary_lift(v, field=None):
    """A graded vector u of degree n+1 with graded_delta(u) = v, or None.

    Follows the constructive recipe: the first two roots are fixed by the
    parity of n, and each later root solves the polynomial relation imposed
    by the next entry, backtracking over all roots in the field.  None means
    a required root does not exist in the field.
    """
    if v.roots is None:
        raise ValueError("gr_boundary_lift needs the r-th roots of the entries")
    if not gr_cycle_check(v):
        raise ValueError("input is not a cycle of the graded complex")
    r, m, n = v.r, v.m, v.n
    xs = list(v.roots)
    if field is None:
        field = common_field(*xs)
        if field.degree == 1 and r > 2:
            field = cyclotomic_field(r)
    xs = [field(x) for x in xs]
    N = n + 1
    if n == 0:
        return GradedVector.from_roots([field.zero()], r, m)
    if v.is_zero():
        return GradedVector.from_roots([field.zero()] * N, r, m)
    if n == 1:
        start = [xs[0]]
        first_step = 1
    elif n % 2 == 0:
        start = [-xs[0], xs[0] + xs[1]]
        first_step = 2
    else:
        start = [xs[0], xs[1]]
        first_step = 2

    def dfs(ys, i):
        if i > n:
            return ys
        for t in _solve_step(N, i, ys[-1], xs[i - 1] ** r, r, field):
            found = dfs(ys + [t], i + 1)
            if found is not None:
                return found
        return None

    ys = dfs(start, first_step)
    if ys is None:
        return None
    lift = GradedVector.from_roots(ys, r, m)
    if graded_delta(lift).entries != v.entries:
        raise AssertionError("boundary lift failed validation")
    return lift


# --- homology at r = 1 ---

def gr1_matrix(N):
    """Matrix of gr^1(delta) from K^N to K^{N-1} (rows = output coordinates)."""
    rows = [[Fraction(0)] * N for _ in range(max(N - 1, 0))]
    for j in range(N):
        e = [QQ.zero()] * N
        e[j] = QQ.one()
        out = graded_delta(GradedVector(2, 1, e, e)).entries
        for i, val in enumerate(out):
            rows[i][j] = val.to_fraction()
    return rows


def _ranks(L):
    """rank of gr^1(delta) out of tuple length N, for N = 1..L."""
    return [0] + [rank(gr1_matrix(N)) for N in range(2, L + 1)]


def bar_homology_r1(m, n_max):
    """Homology of the r=1 graded complex at tuple lengths 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if m <= 1:
        return [0] * n_max
    rk = _ranks(n_max + 1)
    return [N - rk[N - 1] - rk[N] for N in range(1, n_max + 1)]


def gr1_homology(m, n_max):
    """pi_k of the r=1 graded complex for k = 1..n_max.

    Tuples of length k+1 sit in homotopical degree k, so entry k is the
    homology at tuple length k+1.  Length 1 (degree 0) carries pi_0 and is
    reported by :func:`bar_homology_r1`.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if m <= 1:
        return [0] * n_max
    return bar_homology_r1(m, n_max + 1)[1:]
