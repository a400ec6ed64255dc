"""
Rank bookkeeping for the derived log Albanese of a modulus pair.

Given the coherent cohomology h^i(O(nD)) of a compactification, the derived
Albanese splits as

* L_0: the log Albanese, an extension of a semi-abelian variety (abelian and
  torus ranks) by a pro-unipotent group,
* L_1: the torus dual to Neron-Severi plus the pro-vector group built from
  coker(H^1(O) -> H^1(O(nD))),
* L_i for 2 <= i <= dim X: the pro-vector group built from H^i(O(nD)),
* 0 otherwise.

Pro-objects are recorded by their dimension sequences for n = 1..N.

>>> jacobian_ranks(CurveData(genus=0, degree=2, support=2), 3)
(0, 1, 4)
>>> p1_cohomology(-2)
(0, 1)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .linalg import rank

__all__ = [
    "CurveData",
    "CohTable",
    "Row",
    "RankTable",
    "InconsistentTableError",
    "jacobian_ranks",
    "p1_cohomology",
    "cech_p1_cohomology",
    "curve_cohomology",
    "lalb_table",
    "AlbInput",
    "table_from_input",
    "format_table",
    "DEFAULT_HORIZON",
]

DEFAULT_HORIZON = 12


class InconsistentTableError(ValueError):
    pass


@dataclass(frozen=True)
class CurveData:
    """A smooth proper curve of genus g with modulus of degree d on s points.

    d = s = 0 is the proper case (empty modulus).
    """

    genus: int
    degree: int
    support: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be >= 0")
        if self.support < 0 or self.degree < self.support:
            raise ValueError("need d >= s >= 0")
        if (self.degree == 0) != (self.support == 0):
            raise ValueError("a modulus of positive degree has nonempty support")

    @property
    def proper(self):
        return self.degree == 0


def jacobian_ranks(c, n=1):
    """(abelian, torus, unipotent) ranks of Jac(C, nD).

    The unipotent rank is h^0(Omega^1(nD)) - g - (s - 1), with
    h^0(Omega^1(nD)) = g - 1 + n*d by Riemann-Roch, since
    h^1(Omega^1(nD)) = h^0(O(-nD)) = 0 once n*d > 0.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    nd = n * c.degree
    if nd == 0:
        raise ValueError("jacobian_ranks needs n*deg D >= 1")
    h0_omega = c.genus - 1 + nd
    return c.genus, c.support - 1, h0_omega - c.genus - (c.support - 1)


def p1_cohomology(d):
    """(h^0, h^1) of O(d) on P^1."""
    return max(d + 1, 0), max(-d - 1, 0)


def cech_p1_cohomology(d):
    """(h^0, h^1) of O(d) on P^1 from the Cech complex of the two standard charts.

    Sections over U_0 are k[x], over U_1 they are x^d k[1/x], over U_01 the
    Laurent polynomials.  The differential (f, g) -> f - g preserves degrees,
    so a window of monomials containing every degree in play is exact.
    """
    w = abs(d) + 2
    rows_deg = list(range(-w, w + 1))
    cols = [("u0", j) for j in range(0, w + 1)] + [("u1", j) for j in range(-w, d + 1)]
    mat = [[0] * len(cols) for _ in rows_deg]
    for c, (chart, j) in enumerate(cols):
        mat[j + w][c] = 1 if chart == "u0" else -1
    rk = rank(mat)
    return len(cols) - rk, len(rows_deg) - rk


def curve_cohomology(genus, deg):
    """(h^0, h^1) of a line bundle of degree deg on a genus g curve, when determined.

    Determined for deg < 0 and deg > 2g - 2, and for the trivial bundle
    (deg = 0 is taken to mean O).
    """
    if deg < 0:
        return 0, genus - 1 - deg
    if deg == 0:
        return 1, genus
    if deg > 2 * genus - 2:
        return deg - genus + 1, 0
    raise ValueError(f"h^0 of a degree {deg} bundle on a genus {genus} curve depends on the bundle")


@dataclass(frozen=True)
class CohTable:
    """h^i(X, O(nD)) for 0 <= i <= dim, as a function of n >= 0."""

    dim: int
    rows: tuple  # rows[n] = (h^0, ..., h^dim) for n = 0..len-1
    tail: Optional[tuple] = None  # per i, polynomial coefficients in n for n >= len(rows)

    def h(self, i, n):
        if i < 0 or i > self.dim:
            return 0
        if n < len(self.rows):
            return self.rows[n][i]
        if self.tail is None:
            return self.rows[-1][i]
        val = sum(Fraction(c) * n ** k for k, c in enumerate(self.tail[i]))
        if val.denominator != 1 or val < 0:
            raise InconsistentTableError(f"tail gives h^{i}(O({n}D)) = {val}")
        return int(val)


@dataclass(frozen=True)
class Row:
    i: int
    kind: str
    unipotent: Optional[tuple]
    abelian: Optional[int] = None
    torus: Optional[int] = None
    ns_rank: Optional[int] = None

    def to_json(self):
        out = {"i": self.i, "kind": self.kind}
        if self.i == 0:
            out["abelian"] = self.abelian
            out["torus"] = self.torus
        if self.i == 1:
            out["ns_rank"] = self.ns_rank
        out["unipotent"] = None if self.unipotent is None else list(self.unipotent)
        return out


@dataclass(frozen=True)
class RankTable:
    horizon: int
    rows: tuple = field(default_factory=tuple)

    def row(self, i):
        for r in self.rows:
            if r.i == i:
                return r
        return Row(i, "constant", (0,) * self.horizon, ns_rank=0 if i == 1 else None)

    def is_constant(self):
        return all(r.kind == "constant" for r in self.rows)

    def to_json(self):
        return {"horizon": self.horizon, "rows": [r.to_json() for r in self.rows]}


def _kind(seq):
    if seq is None:
        return "pro"
    return "constant" if len(set(seq)) <= 1 else "pro"


def _pro(f, N):
    return tuple(f(n) for n in range(1, N + 1))


def lalb_table(t, ns_rank, alb_mode, horizon=DEFAULT_HORIZON, h1_map_rank=None):
    """Ranks of L_i Alb^log from a cohomology table.

    ``alb_mode`` is a CurveData (L_0 from jacobian_ranks) or a dict with
    ``abelian``, ``torus`` and optionally ``unipotent`` (a sequence over
    n = 1..N, otherwise left symbolic as None) and ``proper``.

    The L_1 unipotent part is dim coker(H^1(O) -> H^1(O(nD))).  When
    ``h1_map_rank`` (a function of n) is not given the map is assumed
    injective, giving h^1(O(nD)) - h^1(O).  A negative value raises
    InconsistentTableError.
    """
    N = horizon
    curve = isinstance(alb_mode, CurveData)
    if curve:
        c = alb_mode
        if c.proper:
            ab, tor, uni = c.genus, 0, (0,) * N
        else:
            ab, tor, _ = jacobian_ranks(c, 1)
            uni = _pro(lambda n: jacobian_ranks(c, n)[2], N)
        proper = c.proper
    else:
        ab, tor = int(alb_mode["abelian"]), int(alb_mode["torus"])
        uni = alb_mode.get("unipotent")
        uni = None if uni is None else tuple(int(x) for x in uni)[:N]
        proper = bool(alb_mode.get("proper", False))
        if proper and uni is None:
            uni = (0,) * N
    rows = [Row(0, _kind(uni), uni, abelian=ab, torus=tor)]

    h1_0 = t.h(1, 0)

    def l1(n):
        if proper or curve:
            # on a curve H^1(O) -> H^1(O(nD)) is onto
            return 0
        rk = h1_0 if h1_map_rank is None else h1_map_rank(n)
        val = t.h(1, n) - rk
        if val < 0:
            raise InconsistentTableError(
                f"L_1 unipotent dimension {val} < 0 at n={n}: h^1(O(nD)) = {t.h(1, n)} < rank {rk}"
            )
        return val

    u1 = _pro(l1, N)
    rows.append(Row(1, _kind(u1), u1, ns_rank=ns_rank))
    for i in range(2, t.dim + 1):
        ui = _pro(lambda n, i=i: t.h(i, 0 if proper else n), N)
        rows.append(Row(i, _kind(ui), ui))
    zero = (0,) * N
    rows.append(Row(max(t.dim, 1) + 1, "constant", zero))
    return RankTable(N, tuple(rows))


# --- JSON input ---

class PointSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    at: str
    mult: int = Field(ge=1)


class ModulusSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    points: list[PointSpec] = Field(default_factory=list)


class AlbSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    abelian: int = Field(ge=0)
    torus: int = Field(ge=0)
    unipotent: Optional[list[int]] = None


class AlbInput(BaseModel):
    """Input schema of the rank calculator."""

    model_config = ConfigDict(extra="forbid")
    mode: Literal["curve", "p1", "table"]
    genus: int = Field(default=0, ge=0)
    modulus: ModulusSpec = Field(default_factory=ModulusSpec)
    ns_rank: Optional[int] = Field(default=None, ge=0)
    dim: int = Field(default=1, ge=1)
    coh: Optional[list[list[int]]] = None
    tail: Optional[list[list[str | int]]] = None
    alb: Optional[AlbSpec] = None
    proper: Optional[bool] = None
    h1_map_rank: Optional[list[int]] = None
    horizon: int = Field(default=DEFAULT_HORIZON, ge=1, le=1000)

    @model_validator(mode="after")
    def _check_mode(self):
        if self.mode == "p1" and self.genus != 0:
            raise ValueError("p1 mode has genus 0")
        if self.mode in ("curve", "p1"):
            if self.coh is not None or self.alb is not None or self.tail is not None:
                raise ValueError(f"{self.mode} mode computes its own cohomology; drop coh/alb/tail")
            if self.dim != 1:
                raise ValueError(f"{self.mode} mode is for curves (dim 1)")
        if self.mode == "table":
            if not self.coh:
                raise ValueError("table mode needs coh rows")
            if self.alb is None:
                raise ValueError("table mode needs the alb block (abelian and torus ranks)")
            for n, row in enumerate(self.coh):
                if len(row) != self.dim + 1:
                    raise ValueError(f"coh[{n}] must list h^0..h^{self.dim}")
                if any(h < 0 for h in row):
                    raise ValueError(f"coh[{n}] has a negative dimension")
            if self.tail is not None and len(self.tail) != self.dim + 1:
                raise ValueError(f"tail must give one polynomial per h^i, i = 0..{self.dim}")
            for k, h in enumerate(self.h1_map_rank or []):
                if h < 0:
                    raise ValueError(f"h1_map_rank[{k}] is negative")
        return self


def _point_key(at):
    s = at.replace(" ", "").lower()
    return "inf" if s in ("inf", "infinity", "∞") else s


def _curve_data(inp):
    pts = {}
    for p in inp.modulus.points:
        k = _point_key(p.at)
        pts[k] = pts.get(k, 0) + p.mult
    return CurveData(inp.genus, sum(pts.values()), len(pts))


def table_from_input(obj):
    """Validate a JSON-like dict and compute its RankTable."""
    inp = obj if isinstance(obj, AlbInput) else AlbInput.model_validate(obj)
    N = inp.horizon
    if inp.mode in ("curve", "p1"):
        c = _curve_data(inp)
        ns = inp.ns_rank if inp.ns_rank is not None else (1 if c.proper else 0)
        if inp.mode == "p1":
            t = CohTable(1, tuple(p1_cohomology(n * c.degree) for n in range(N + 1)))
        else:
            # only h^i(O) is determined for a general curve; rows for n > 0
            # do not enter the curve formulas
            t = CohTable(1, (curve_cohomology(c.genus, 0),))
        return lalb_table(t, ns, c, N)
    proper = bool(inp.proper)
    ns = inp.ns_rank if inp.ns_rank is not None else (1 if proper else 0)
    tail = None if inp.tail is None else tuple(tuple(Fraction(str(c)) for c in poly) for poly in inp.tail)
    t = CohTable(inp.dim, tuple(tuple(r) for r in inp.coh), tail)
    alb = {"abelian": inp.alb.abelian, "torus": inp.alb.torus, "unipotent": inp.alb.unipotent, "proper": proper}
    hm = inp.h1_map_rank
    h1_map = None
    if hm:
        h1_map = lambda n: hm[min(n, len(hm) - 1)]
    return lalb_table(t, ns, alb, N, h1_map_rank=h1_map)


def format_table(tab, show=6):
    """Aligned text rendering of a RankTable (first ``show`` levels n)."""
    head = ["i", "kind", "abelian", "torus", "NS*", f"unipotent n=1..{min(show, tab.horizon)}"]
    lines = []
    for r in tab.rows:
        uni = "symbolic" if r.unipotent is None else " ".join(str(x) for x in r.unipotent[:show])
        if r.unipotent is not None and tab.horizon > show:
            uni += " ..."
        lines.append([
            str(r.i),
            r.kind,
            "-" if r.abelian is None else str(r.abelian),
            "-" if r.torus is None else str(r.torus),
            "-" if r.ns_rank is None else str(r.ns_rank),
            uni,
        ])
    widths = [max(len(x) for x in col) for col in zip(head, *lines)]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    return "\n".join(fmt.format(*ln).rstrip() for ln in [head] + lines)
