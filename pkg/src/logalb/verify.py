"""
Seeded invariant suites, one group per module.

Every invariant runs over a grid of parameter cells.  Each cell gets its own
RNG seeded from (seed, invariant name, params), so a cell replays the same way
whatever else runs.  Reports are plain JSON-ready dicts with no timings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable

from . import bar, cycles, field, picard, ranks, units
from .bar import GradedVector, gen_tuple, ones_tuple
from .cycles import Cycle, ModulusFunction
from .field import QQ, cyclotomic_field, primitive_root
from .units import UnitTuple, identity, pic_gen

__all__ = [
    "Invariant",
    "SUITES",
    "MODULES",
    "run_invariant",
    "run_suites",
    "get_invariant",
    "rand_elem",
    "rand_point",
    "random_chain",
    "random_graded_cycle",
    "admissible_function",
]


# --- random data ---

def rand_rational(rng, bound=5, den=3):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def rand_elem(rng, K=QQ, bound=5, den=3):
    return K([rand_rational(rng, bound, den) for _ in range(K.degree)])


def rand_nonzero(rng, K=QQ, bound=5, den=3):
    while True:
        a = rand_elem(rng, K, bound, den)
        if a:
            return a


def rand_point(rng, n, K=QQ, bound=5):
    return tuple(rand_elem(rng, K, bound, 1) for _ in range(n))


def random_chain(rng, n, K=QQ, terms=3):
    out = Cycle(n)
    for _ in range(terms):
        out = out + Cycle(n, {rand_point(rng, n, K): Fraction(rng.randint(-3, 3), rng.randint(1, 2))})
    return out


def _mu(r, K):
    return bar._roots_of_unity(r, K.order)


def random_graded_cycle(rng, r, n, m, K):
    """A cycle of the degree-r graded complex, generated root-first.

    x_1 is random; each x_{i+1} is drawn from the solutions of condition i
    of the cycle equations given x_i.
    """
    mu = _mu(r, K)
    xs = [rand_nonzero(rng, K)] if rng.random() < 0.9 else [K.zero()]
    for i in range(1, n):
        x = xs[-1]
        if not x:
            free = rand_elem(rng, K)
            if n % 2 == 0 and i % 2 == 0:
                cands = [K.zero()]
            elif n % 2 == 0:
                cands = [free]
            elif i % 2 == 0:
                cands = [K.zero()]
            else:
                cands = [free]
        elif n % 2 == 0 and i % 2 == 0:
            # (x_i + x_{i+1})^r = 0
            cands = [-x]
        elif n % 2 == 0:
            # x_i^r + x_{i+1}^r = (x_i + x_{i+1})^r
            cands = [K.zero()] + ([-x] if r % 2 == 1 else [])
            cands = [y for y in cands if (x + y) ** r == x ** r + y ** r]
        elif i % 2 == 0:
            # (x_i + x_{i+1})^r = x_i^r
            cands = [x * (w - 1) for w in mu]
        else:
            # x_{i+1}^r = (x_i + x_{i+1})^r
            cands = [w * x / (1 - w) for w in mu if w != 1]
        xs.append(rng.choice(cands))
    v = GradedVector.from_roots(xs, r, m)
    assert bar.gr_cycle_check(v), xs
    return v


def prouhet_sets(k):
    """Two disjoint sets of size 2^(k-1) with equal power sums of exponents 0..k-1."""
    a, b = [], []
    for j in range(2 ** k):
        (a if bin(j).count("1") % 2 == 0 else b).append(j)
    return a, b


def admissible_function(rng, m, K=QQ):
    """A random f with f = 1 mod t^m at infinity (f in G(P^1, m*inf)).

    Over Q: a Prouhet-Tarry-Escott pair, scaled and shifted.  Over Q(zeta_k)
    with k >= m: prod (z - zeta^q a)/(z - zeta^q b), since prod (1 - zeta^q a t) = 1 - a^k t^k.
    """
    if K.degree == 1:
        a, b = prouhet_sets(max(m, 1))
        lam = rand_nonzero(rng, QQ)
        mu = rand_elem(rng, QQ)
        return ModulusFunction([lam * x + mu for x in a], [lam * x + mu for x in b], m)
    k = K.order
    zeta = primitive_root(k, K)
    a = rand_nonzero(rng, K)
    b = rand_nonzero(rng, K)
    while b == a or (a / b) ** k == 1:
        b = rand_nonzero(rng, K)
    num = [zeta ** q * a for q in range(k)]
    den = [zeta ** q * b for q in range(k)]
    return ModulusFunction(num, den, m)


# --- the invariant framework ---

@dataclass(frozen=True)
class Invariant:
    name: str
    module: str
    cells: tuple  # tuple of param dicts (as tuples of items)
    count: int  # default samples per cell
    check: Callable  # (rng, params, count) -> (checked, counterexample or None)


def _cell_rng(seed, name, params):
    key = f"{seed}|{name}|" + ",".join(f"{k}={v}" for k, v in params)
    return random.Random(key)


def run_invariant(inv, seed=0, budget=None, count=None, cells=None):
    """Run one invariant.  Returns ({"invariant", "cells"}, all_passed)."""
    n = count if count is not None else inv.count
    if budget is not None:
        n = min(n, budget)
    out = []
    ok_all = True
    for params in (cells if cells is not None else inv.cells):
        params = tuple(params.items()) if isinstance(params, dict) else tuple(params)
        rng = _cell_rng(seed, inv.name, params)
        checked, cex = inv.check(rng, dict(params), n)
        cell = {"params": dict(params), "samples": checked, "status": "pass" if cex is None else "fail"}
        if cex is not None:
            cell["counterexample"] = cex
            ok_all = False
        out.append(cell)
    return {"invariant": inv.name, "cells": out}, ok_all


def _grid(**axes):
    keys = list(axes)
    cells = []
    for vals in product(*(axes[k] for k in keys)):
        cells.append(tuple(zip(keys, vals)))
    return tuple(cells)


def _cells_filter(cells, pred):
    return tuple(c for c in cells if pred(dict(c)))


def _loop(count, body):
    """Run body(k) for k < count; stop at the first counterexample."""
    for k in range(count):
        cex = body(k)
        if cex is not None:
            return k + 1, cex
    return count, None


# --- field_tower ---

def _chk_field_axioms(rng, p, count):
    K = cyclotomic_field(p["r"])

    def body(_):
        a, b, c = (rand_elem(rng, K) for _ in range(3))
        ok = (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
        ok &= a * (b + c) == a * b + a * c and a + b == b + a and a * b == b * a
        ok &= a + K.zero() == a and a * K.one() == a and a + (-a) == K.zero()
        if a:
            ok &= a * a.inverse() == K.one()
        return None if ok else {"a": str(a), "b": str(b), "c": str(c)}

    return _loop(count, body)


def _chk_primitive_roots(rng, p, count):
    for r in range(1, 13):
        z = primitive_root(r)
        if z ** r != 1 or any(z ** d == 1 for d in range(1, r)):
            return r, {"r": r, "zeta": str(z)}
    return 12, None


def _chk_rth_root(rng, p, count):
    r, order = p["r"], p["field"]
    K = cyclotomic_field(order)

    def body(_):
        x = rand_elem(rng, K)
        y = field.rth_root(x ** r, r)
        if y is None or y ** r != x ** r:
            return {"x": str(x), "r": r, "root": None if y is None else str(y)}
        return None

    return _loop(count, body)


# --- trunc_units ---

def _rand_unit(rng, m, K=QQ):
    return units.TruncUnit(m, [rand_elem(rng, K) for _ in range(m - 1)], K)


def _rand_fil(rng, m, r, K=QQ):
    return units.TruncUnit(m, [K.zero()] * (r - 1) + [rand_elem(rng, K) for _ in range(m - r)], K)


def _chk_group_axioms(rng, p, count):
    m = p["m"]
    e = identity(m)

    def body(_):
        u, v, w = (_rand_unit(rng, m) for _ in range(3))
        ok = (u * v) * w == u * (v * w) and u * v == v * u and u * e == u and u * u.inverse() == e
        return None if ok else {"u": u.to_json(), "v": v.to_json(), "w": w.to_json()}

    return _loop(count, body)


def _chk_filtration(rng, p, count):
    m = p["m"]

    def body(_):
        r = rng.randint(1, m)
        u, v = _rand_fil(rng, m, r), _rand_fil(rng, m, r)
        ok = units.fil_level(u * v) >= r and units.fil_level(u.inverse()) >= r
        if r < m:
            ok &= units.fil_level(_rand_fil(rng, m, r + 1)) >= r  # Fil_{r+1} inside Fil_r
        if m > 1:
            ok &= units.fil_level(_rand_fil(rng, m, m)) == m and _rand_fil(rng, m, m).is_identity()
        return None if ok else {"r": r, "u": u.to_json(), "v": v.to_json()}

    return _loop(count, body)


def _chk_graded_additive(rng, p, count):
    m = p["m"]

    def body(_):
        r = rng.randint(1, m - 1)
        u, v = _rand_fil(rng, m, r), _rand_fil(rng, m, r)
        g = units.graded_piece
        ok = g(u * v, r) == g(u, r) + g(v, r) and g(u.inverse(), r) == -g(u, r)
        return None if ok else {"r": r, "u": u.to_json(), "v": v.to_json()}

    return _loop(count, body)


def _chk_r1_congruence(rng, p, count):
    m = p["m"]

    def body(_):
        a, b = rand_elem(rng), rand_elem(rng)
        w = units.gen(a, m) * units.gen(b, m) / units.gen(a + b, m)
        return None if units.fil_level(w) >= 2 else {"a": str(a), "b": str(b), "m": m}

    return _loop(count, body)


def _chk_gen_r_factorization(rng, p, count):
    r, m = p["r"], p["m"]
    K = cyclotomic_field(r)

    def body(_):
        a = rand_elem(rng, K)
        try:
            u = units.gen_r_factorization(a, r, m, K)
        except AssertionError:
            return {"a": str(a), "r": r, "m": m}
        ok = u == (units.gen_r(a ** r, r, m) if r < m else identity(m, K))
        return None if ok else {"a": str(a), "r": r, "m": m}

    return _loop(count, body)


# --- zero_cycles ---

def _chk_dd_zero(rng, p, count):
    n = p["n"]

    def body(_):
        c = random_chain(rng, n)
        dd = cycles.bar_differential(cycles.bar_differential(c))
        return None if dd.is_zero() else {"chain": c.to_json()}

    return _loop(count, body)


def _chk_square(rng, p, count):
    m, n = p["m"], p["n"]
    eps = 1 if n % 2 == 0 else 0
    # albanese(d(0,...,0)) in log coordinates: eps * log pic_gen(0) in every slot
    log_zero = [Fraction(eps, k) for k in range(1, m)]

    def body(_):
        c = random_chain(rng, n)
        lhs = bar.delta(cycles.albanese(c, m))
        rhs = cycles.albanese(cycles.bar_differential(c), m)
        # independent route through the closed form on generators, using
        # albanese(pt) = gen_tuple(pt) * albanese(0^n), summed in log coordinates
        logs = [[QQ.zero()] * (m - 1) for _ in range(n - 1)]
        for pt, coef in c.items():
            d = bar.delta_on_generators(pt, m)
            for i, u in enumerate(d.components):
                lu = units.unit_log(u)
                logs[i] = [x + coef * (y + z) for x, y, z in zip(logs[i], lu, log_zero)]
        ind = UnitTuple(m, [units.unit_exp(lg, m, QQ) for lg in logs])
        ok = lhs == rhs == ind
        return None if ok else {"chain": c.to_json(), "m": m}

    return _loop(count, body)


def _chk_relations_die(rng, p, count):
    m = p["m"]

    def body(k):
        K = QQ if k % 2 == 0 else cyclotomic_field(rng.choice([q for q in (m, m + 1, 2 * m) if q >= 2]))
        f = admissible_function(rng, m, K)
        if not cycles.modulus_check(f, m):
            return {"f": f.to_json(), "reason": "generator produced a non-admissible function"}
        ok = cycles.chow_reduce(cycles.divisor(f), m).is_identity()
        return None if ok else {"f": f.to_json()}

    return _loop(count, body)


def _chk_first_nonvanishing(rng, p, count):
    m = p["m"]

    def body(_):
        k = rng.randint(1, 3)
        num = [rand_elem(rng, QQ, 6, 1) for _ in range(k)]
        den = [rand_elem(rng, QQ, 6, 1) for _ in range(k)]
        if set(num) & set(den):
            return None
        f = ModulusFunction(num, den, m)
        s = f.expansion_at_infinity(m)
        first = next((j for j in range(1, m) if s[j]), None)
        red = cycles.chow_reduce(cycles.divisor(f), m)
        if first is not None and red.is_identity():
            return {"f": f.to_json()}
        if first is None and not red.is_identity():
            return {"f": f.to_json()}
        return None

    return _loop(count, body)


def _chk_chow_hom(rng, p, count):
    m = p["m"]

    def deg0():
        c = random_chain(rng, 1)
        t = c.total_degree()
        return c - Cycle(1, {(rand_elem(rng),): t})

    def body(_):
        c, c2 = deg0(), deg0()
        ok = cycles.chow_reduce(c + c2, m) == cycles.chow_reduce(c, m) * cycles.chow_reduce(c2, m)
        return None if ok else {"c": c.to_json(), "c2": c2.to_json(), "m": m}

    return _loop(count, body)


# --- bar_complex ---

def _random_tuple(rng, m, n, k):
    """Tuples of three flavours: from generators, from random chains, and chainless."""
    kind = k % 3
    if kind == 0:
        t = gen_tuple(rand_point(rng, n), m)
        for _ in range(rng.randint(0, 2)):
            t = t * gen_tuple(rand_point(rng, n), m) ** rng.choice([-1, 1, 2, Fraction(1, 2)])
        return t
    if kind == 1:
        return cycles.albanese(random_chain(rng, n), m)
    return UnitTuple(m, [_rand_unit(rng, m) for _ in range(n)])


def _chk_delta_delta(rng, p, count):
    m, n = p["m"], p["n"]

    def body(k):
        t = _random_tuple(rng, m, n, k)
        dd = bar.delta(bar.delta(t))
        return None if dd.is_identity() else {"tuple": t.to_json()}

    return _loop(count, body)


def _chk_closed_form(rng, p, count):
    m, n = p["m"], p["n"]

    def body(_):
        pts = rand_point(rng, n)
        c = Cycle(n, {pts: 1}) - Cycle(n, {(QQ.zero(),) * n: 1})
        a = bar.delta_on_generators(pts, m)
        ok = a == bar.delta(cycles.albanese(c, m)) == bar.delta(gen_tuple(pts, m))
        return None if ok else {"points": [str(x) for x in pts], "m": m}

    return _loop(count, body)


def _chk_ones(rng, p, count):
    for n in range(1, 9):
        for m in range(1, 7):
            d = bar.delta(ones_tuple(n, m))
            want = ones_tuple(n - 1, m) if n % 2 == 0 else units.identity_tuple(n - 1, m)
            if d != want:
                return n, {"n": n, "m": m, "got": d.to_json()}
    return 8, None


def _claim_tuple(xs, r, m, K):
    zeta = primitive_root(r, K)
    t = None
    w = K.one()
    for _ in range(r):
        g = gen_tuple([w * x for x in xs], m, K)
        t = g if t is None else t * g
        w = w * zeta
    return t


def _chk_filtration_delta(rng, p, count):
    r, m, n = p["r"], p["m"], p["n"]
    K = cyclotomic_field(r)

    def body(_):
        # a product of tuples ([x_i^r']_r') with r' >= r, each with its chain
        t = _claim_tuple([rand_elem(rng, K) for _ in range(n)], r, m, K)
        rr = rng.randint(r, m - 1)
        K2 = cyclotomic_field(rr)
        if K.degree == 1 or K2 is K:
            t = t * _claim_tuple([rand_elem(rng, K2) for _ in range(n)], rr, m, K2)
        if t.fil_level() < r:
            return {"reason": "generated tuple not in Fil_r", "tuple": t.to_json()}
        d = bar.delta(t)
        return None if d.fil_level() >= r else {"tuple": t.to_json(), "r": r}

    return _loop(count, body)


def _chk_claim(rng, p, count):
    r, m, n = p["r"], p["m"], p["n"]
    K = cyclotomic_field(r)

    def body(_):
        xs = [rand_elem(rng, K) for _ in range(n)]
        return None if bar.verify_claim(r, m, n, xs, K) else {"roots": [str(x) for x in xs], "r": r, "m": m}

    return _loop(count, body)


def _chk_boundary_is_cycle_r1(rng, p, count):
    m, n = p["m"], p["n"]

    def body(_):
        w = GradedVector.from_roots([rand_elem(rng) for _ in range(n + 1)], 1, m)
        v = bar.graded_delta(w)
        v = GradedVector(m, 1, v.entries, v.entries)
        return None if bar.gr_cycle_check(v) else {"w": w.to_json()}

    return _loop(count, body)


def lift_stats(rng, r, n, count, m=None):
    """Lift `count` root-first cycles; returns (lifted, absent, first_invalid)."""
    K = cyclotomic_field(r)
    m = m or r + 1
    lifted = absent = 0
    for _ in range(count):
        v = random_graded_cycle(rng, r, n, m, K)
        try:
            u = bar.gr_boundary_lift(v, K)
        except AssertionError:
            return lifted, absent, v.to_json()
        if u is None:
            absent += 1
        elif bar.graded_delta(u).entries != v.entries:
            return lifted, absent, v.to_json()
        else:
            lifted += 1
    return lifted, absent, None


def _chk_boundary_lift(rng, p, count):
    lifted, absent, bad = lift_stats(rng, p["r"], p["n"], count)
    return lifted + absent, bad


def _chk_gr1(rng, p, count):
    m = p["m"]
    for n_max in range(1, 7):
        h = bar.gr1_homology(m, n_max)
        if any(h):
            return n_max, {"m": m, "n_max": n_max, "homology": h}
    return 6, None


# --- picard ---

def random_divisor_pair(rng, max_deg=8):
    """(D, E) with |D| nonempty, disjoint supports, deg(D+E) <= max_deg."""
    pool = [picard.INF] + [QQ(j) for j in range(-3, 5)]
    rng.shuffle(pool)
    total = rng.randint(2, max_deg)
    k = rng.randint(2, min(4, total))
    pts = pool[:k]
    mults = [1] * k
    for _ in range(total - k):
        mults[rng.randrange(k)] += 1
    split = rng.randint(1, k - 1)
    D = picard.Divisor(dict(zip(pts[:split], mults[:split])))
    E = picard.Divisor(dict(zip(pts[split:], mults[split:])))
    return D, E


def _chk_exactness(rng, p, count):
    for k in range(p["configs"]):
        D, E = random_divisor_pair(rng)
        rep = picard.check_exactness(D, E, samples=count, seed=rng.randrange(2 ** 32))
        if not (rep["injective"] and rep["kernel_is_image"] and rep["surjective"]):
            return k + 1, {"D": D.to_json(), "E": E.to_json(), "report": rep}
    return p["configs"], None


def _chk_diagonal(rng, p, count):
    for k in range(p["configs"]):
        pool = [picard.INF] + [QQ(j) for j in range(-3, 5)]
        rng.shuffle(pool)
        D = picard.Divisor({pool[0]: rng.randint(1, 2)})
        E1 = picard.Divisor({pool[1]: rng.randint(1, 2)})
        E2 = picard.Divisor({pool[2]: rng.randint(1, 2), pool[3]: 1} if rng.random() < 0.5 else {pool[2]: 1})
        if not picard.diagonal_injectivity(D, E1, E2, samples=count, seed=rng.randrange(2 ** 32)):
            return k + 1, {"D": D.to_json(), "E1": E1.to_json(), "E2": E2.to_json()}
    return p["configs"], None


def _chk_class_of_function(rng, p, count):
    def body(_):
        D, E = random_divisor_pair(rng, 6)
        D = D + E
        avoid = set(D.mults)

        def roots(k):
            out = []
            while len(out) < k:
                a = QQ(rng.randint(-9, 9))
                if a not in avoid and a not in out:
                    out.append(a)
            return out

        k = rng.randint(0, 2)
        num, den = roots(2 * k), []
        num, den = num[:k], num[k:]
        num2 = roots(2 * k)
        num2, den2 = num2[:k], num2[k:]
        f, g = (num, den), (num2, den2)
        fg_num, fg_den = num + num2, den + den2
        # cancel common roots of the product
        for a in list(fg_num):
            if a in fg_den:
                fg_num.remove(a)
                fg_den.remove(a)
        cf = picard.class_of_function
        ok = cf((fg_num, fg_den), D) == cf(f, D) * cf(g, D)
        # functions = 1 mod D die: f * f^{-1}
        ok &= cf((num + den, den + num), D).is_identity() if not (set(num) & set(den)) else True
        return None if ok else {"D": D.to_json(), "f": [list(map(str, num)), list(map(str, den)), list(map(str, num2)), list(map(str, den2))]}

    return _loop(count, body)


def _chk_relations_picard(rng, p, count):
    m = p["m"]

    def body(_):
        f = admissible_function(rng, m)
        cls = picard.class_of_function(f, picard.Divisor({picard.INF: m}))
        return None if cls.is_identity() else {"f": f.to_json()}

    return _loop(count, body)


def _chk_minf_roundtrip(rng, p, count):
    m = p["m"]
    D = picard.Divisor({picard.INF: m})

    def body(_):
        a, b = rand_elem(rng), rand_elem(rng)
        u, v = _rand_unit(rng, m), _rand_unit(rng, m)
        ok = picard.to_trunc_unit(picard.from_trunc_unit(u)) == u
        ok &= picard.to_trunc_unit(picard.from_trunc_unit(u) * picard.from_trunc_unit(v)) == u * v
        if a != 1 and b != 1 and a != b:
            cls = picard.class_of_function(([a], [1]), D)
            ok &= picard.to_trunc_unit(cls) == pic_gen(a, m)
        return None if ok else {"u": u.to_json(), "v": v.to_json(), "a": str(a)}

    return _loop(count, body)


# --- albanese_ranks ---

def _chk_jacobian_sum(rng, p, count):
    def body(_):
        g = rng.randint(0, 5)
        s = rng.randint(1, 4)
        d = rng.randint(s, s + 5)
        n = rng.randint(1, 6)
        a, t, u = ranks.jacobian_ranks(ranks.CurveData(g, d, s), n)
        ok = min(a, t, u) >= 0 and a + t + u == g + n * d - 1
        return None if ok else {"g": g, "d": d, "s": s, "n": n}

    return _loop(count, body)


def _chk_monotone(rng, p, count):
    def body(_):
        g = rng.randint(0, 5)
        s = rng.randint(1, 4)
        d = rng.randint(s, s + 5)
        seq = [ranks.jacobian_ranks(ranks.CurveData(g, d, s), n)[2] for n in range(1, 13)]
        return None if all(x <= y for x, y in zip(seq, seq[1:])) else {"g": g, "d": d, "s": s}

    return _loop(count, body)


def _chk_cross_module(rng, p, count):
    for m in range(2, 11):
        u = ranks.jacobian_ranks(ranks.CurveData(0, m, 1), 1)[2]
        if not (u == m - 1 == units.filtration_length(m)):
            return m, {"m": m, "unipotent": u, "filtration_length": units.filtration_length(m)}
    return 9, None


def _chk_cech(rng, p, count):
    for d in range(-6, 7):
        if ranks.cech_p1_cohomology(d) != ranks.p1_cohomology(d):
            return d + 7, {"d": d}
    return 13, None


def _chk_builtin_tables(rng, p, count):
    gm = ranks.table_from_input(
        {"mode": "p1", "modulus": {"points": [{"at": "0", "mult": 1}, {"at": "inf", "mult": 1}]}, "ns_rank": 0}
    )
    r0 = gm.row(0)
    ok = (r0.abelian, r0.torus) == (0, 1) and list(r0.unipotent) == [2 * n - 2 for n in range(1, gm.horizon + 1)]
    ok &= all(gm.row(i).kind == "constant" and not any(gm.row(i).unipotent) for i in (1, 2))
    ok &= gm.row(1).ns_rank == 0
    if not ok:
        return 1, {"case": "G_m"}
    for _ in range(count):
        g = rng.randint(0, 4)
        prop = ranks.table_from_input({"mode": "curve", "genus": g, "ns_rank": 1})
        ok = prop.is_constant() and (prop.row(0).abelian, prop.row(0).torus) == (g, 0)
        dim = rng.randint(1, 3)
        hs = [1] + [rng.randint(0, 3) for _ in range(dim)]
        pt = ranks.table_from_input(
            {"mode": "table", "dim": dim, "coh": [hs], "alb": {"abelian": hs[1], "torus": 0}, "proper": True, "ns_rank": 1}
        )
        ok &= pt.is_constant() and all(pt.row(i).unipotent[0] == hs[i] for i in range(2, dim + 1))
        rows = [[1 + 2 * n] + [0] * dim for n in range(4)]
        aff = ranks.table_from_input(
            {"mode": "table", "dim": dim, "coh": rows, "tail": [[1, 2]] + [[0]] * dim, "alb": {"abelian": 0, "torus": 1}}
        )
        ok &= all(r.kind == "constant" for r in aff.rows if r.i >= 1)
        if not ok:
            return 1, {"case": "proper/affine", "g": g, "dim": dim, "h": hs}
    return count, None


# --- registry ---

MODULES = ("field_tower", "trunc_units", "zero_cycles", "bar_complex", "picard", "albanese_ranks")


def _claim_cells(r_max=4, m_max=6, n_max=4):
    cells = []
    for r in range(1, r_max + 1):
        for m in range(r + 1, m_max + 1):
            for n in range(1, n_max + 1):
                cells.append((("r", r), ("m", m), ("n", n)))
    return tuple(cells)


_MN = _grid(m=range(1, 7), n=range(2, 6))

SUITES = {
    "field_tower": (
        Invariant("field_axioms", "field_tower", _grid(r=(1, 2, 3, 4, 5, 6, 8, 12)), 30, _chk_field_axioms),
        Invariant("primitive_roots", "field_tower", ((),), 1, _chk_primitive_roots),
        Invariant("rth_root_recovery", "field_tower", _grid(r=(2, 3, 4), field=(1, 3, 4)), 10, _chk_rth_root),
    ),
    "trunc_units": (
        Invariant("group_axioms", "trunc_units", _grid(m=range(1, 7)), 30, _chk_group_axioms),
        Invariant("filtration_subgroups", "trunc_units", _grid(m=range(1, 7)), 30, _chk_filtration),
        Invariant("graded_additive", "trunc_units", _grid(m=range(2, 7)), 30, _chk_graded_additive),
        Invariant("r1_congruence", "trunc_units", _grid(m=range(2, 7)), 30, _chk_r1_congruence),
        Invariant(
            "gen_r_factorization",
            "trunc_units",
            _grid(r=range(1, 7), m=range(1, 9)),
            5,
            _chk_gen_r_factorization,
        ),
    ),
    "zero_cycles": (
        Invariant("bar_dd_zero", "zero_cycles", _grid(n=range(2, 8)), 40, _chk_dd_zero),
        Invariant("albanese_square", "zero_cycles", _cells_filter(_MN, lambda c: c["m"] >= 1), 10, _chk_square),
        Invariant("relations_die", "zero_cycles", _grid(m=range(1, 6)), 10, _chk_relations_die),
        Invariant("first_nonvanishing", "zero_cycles", _grid(m=range(2, 6)), 20, _chk_first_nonvanishing),
        Invariant("chow_homomorphism", "zero_cycles", _grid(m=range(1, 7)), 20, _chk_chow_hom),
    ),
    "bar_complex": (
        Invariant("delta_delta", "bar_complex", _MN, 10, _chk_delta_delta),
        Invariant("closed_form", "bar_complex", _grid(m=range(1, 7), n=range(1, 6)), 10, _chk_closed_form),
        Invariant("ones_values", "bar_complex", ((),), 1, _chk_ones),
        Invariant("filtration_delta", "bar_complex", _claim_cells(4, 6, 4), 3, _chk_filtration_delta),
        Invariant("claim", "bar_complex", _claim_cells(4, 6, 4), 5, _chk_claim),
        Invariant("boundary_is_cycle_r1", "bar_complex", _grid(m=range(2, 7), n=range(1, 6)), 10, _chk_boundary_is_cycle_r1),
        Invariant("boundary_lift", "bar_complex", _grid(r=(2, 3), n=range(1, 5)), 10, _chk_boundary_lift),
        Invariant("gr1_homology_zero", "bar_complex", _grid(m=range(1, 7)), 1, _chk_gr1),
    ),
    "picard": (
        Invariant("exact_sequence", "picard", ((("configs", 20),),), 5, _chk_exactness),
        Invariant("diagonal_injectivity", "picard", ((("configs", 10),),), 10, _chk_diagonal),
        Invariant("class_of_function", "picard", ((),), 20, _chk_class_of_function),
        Invariant("relations_die_picard", "picard", _grid(m=range(1, 6)), 5, _chk_relations_picard),
        Invariant("minf_roundtrip", "picard", _grid(m=range(1, 7)), 10, _chk_minf_roundtrip),
    ),
    "albanese_ranks": (
        Invariant("jacobian_sum", "albanese_ranks", ((),), 50, _chk_jacobian_sum),
        Invariant("unipotent_monotone", "albanese_ranks", ((),), 20, _chk_monotone),
        Invariant("cross_module_rank", "albanese_ranks", ((),), 1, _chk_cross_module),
        Invariant("p1_cech", "albanese_ranks", ((),), 1, _chk_cech),
        Invariant("builtin_tables", "albanese_ranks", ((),), 5, _chk_builtin_tables),
    ),
}


def get_invariant(name):
    for invs in SUITES.values():
        for inv in invs:
            if inv.name == name:
                return inv
    raise KeyError(name)


def run_suites(scope="all", seed=0, budget=None):
    """Run every invariant of a module (or all of them).  Returns (report, ok)."""
    if scope == "all":
        mods = MODULES
    elif scope in SUITES:
        mods = (scope,)
    else:
        raise KeyError(f"unknown scope {scope!r}; expected 'all' or one of {', '.join(MODULES)}")
    results = []
    ok = True
    for mod in mods:
        for inv in SUITES[mod]:
            res, good = run_invariant(inv, seed, budget)
            res = {"module": mod, **res}
            results.append(res)
            ok &= good
    return {"scope": scope, "seed": seed, "status": "pass" if ok else "fail", "results": results}, ok
