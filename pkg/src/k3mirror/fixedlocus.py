"""Fixed locus of the order-p automorphism on the resolved quotient surface.

Setup: ``Y`` is the cone ``{W = 0}`` minus the origin, ``K = C^* . G`` acts on it
diagonally and ``Xbar = Y / K`` is the singular quotient; ``X`` is its minimal
resolution.  An element of ``K`` is written additively as ``h = g + q w``
(mod Z^4) with ``g`` in ``G`` and ``w`` the weight vector.

Because everything is diagonal, the question "does sigma fix a point" only
depends on which coordinates of the point vanish.  Points with one or two
nonzero coordinates are the only ones that can be singular on ``Xbar``; there
the stabilizer is cyclic of order ``m`` and acts on a transversal slice with
characters ``(1/m, -1/m)``.  The lift of sigma acts on the toric resolution of
that ``A_{m-1}`` point as a torus element, which decides which exceptional
curves are fixed and which torus-fixed points are isolated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .diaggrp import (DiagonalSymmetry, SymmetryGroup, j_group, sigma, sl_group,
                      to_int)
from .errors import Inconsistent, NoConfiguration, NonIntegerGenus
from .invpoly import VARIABLES, InvertiblePolynomial
from .weights import PRIMES, WeightSystem

Vec = tuple[Fraction, ...]


@dataclass(frozen=True)
class TorusRepresentative:
    base: DiagonalSymmetry
    shift: Fraction
    value: DiagonalSymmetry
    zero_support: frozenset[int]


@dataclass(frozen=True)
class SingularPoint:
    location: str
    isotropy_order: int
    multiplicity: int = 1

    @property
    def type(self) -> str:
        return f"A{self.isotropy_order - 1}"

    @property
    def exceptional_curve_count(self) -> int:
        return self.isotropy_order - 1


@dataclass(frozen=True)
class FixedLocusInvariants:
    """``(g, n, k)``; ``g`` and ``k`` are None when no curve is fixed."""

    g: int | None
    n: int
    k: int | None

    def as_tuple(self):
        return (self.g, self.n, self.k)


@dataclass(frozen=True)
class LatticeInvariants:
    p: int
    r: int
    a: int
    m: int
    mu: int


@dataclass
class Stratum:
    """Points of ``Y`` whose nonzero coordinates are exactly ``support``."""

    support: tuple[int, ...]
    y_points: int        # number of points of Y/C^* on the stratum
    c: int               # order of the C^*-stabilizer
    m: int               # order of the K-stabilizer
    xbar_points: int     # number of points of Xbar on the stratum
    slice: tuple[int, int]

    def label(self) -> str:
        return "{" + ",".join(VARIABLES[i] for i in self.support) + "}"


@dataclass
class FixedLocus:
    invariants: FixedLocusInvariants
    curve_genera: list[int]
    isolated_points: int
    details: list[str] = field(default_factory=list)


# --- small formulas -----------------------------------------------------------

def curve_genus(d: int, w1: int, w2: int, w3: int) -> int:
    """Genus of a quasismooth degree-d curve in P(w1, w2, w3)."""
    ws = (w1, w2, w3)
    val = Fraction(d * d, w1 * w2 * w3)
    val -= d * sum(Fraction(gcd(a, b), a * b) for a, b in itertools.combinations(ws, 2))
    val += sum(Fraction(gcd(a, d), a) for a in ws)
    val = (val - 1) / 2
    if val.denominator != 1 or val < 0:
        raise NonIntegerGenus(f"genus formula gives {val} for d={d} in P{ws}")
    return int(val)


def riemann_hurwitz(g_cover: int, deg: int, ram) -> int:
    """Genus of the base of a degree ``deg`` cover with ramification indices ``ram``."""
    total = sum(e - 1 for e in ram)
    num = 2 * g_cover - 2 - total
    base = 1 + Fraction(num, 2 * deg)
    if base.denominator != 1 or base < 0:
        raise Inconsistent(f"no integral base genus for g={g_cover}, deg={deg}, ram={list(ram)}")
    return int(base)


def invariants_from_gnk(p: int, f: FixedLocusInvariants) -> LatticeInvariants:
    """``(r, a)`` of the invariant lattice from the fixed-locus data.

    No fixed curve is handled as ``g = 0, k = -1``, which reproduces the rows
    of the classification that carry no curve data.
    """
    if p == 13:
        if f.as_tuple() != (0, 9, 0):
            raise Inconsistent(f"p=13 forces (g,n,k)=(0,9,0), got {f.as_tuple()}")
        return LatticeInvariants(13, 10, 1, 1, 2)
    if p not in (3, 5, 7):
        raise ValueError(f"unsupported prime {p}")
    g, k = (0, -1) if f.g is None else (f.g, f.k)
    base = {3: 8, 5: 6, 7: 4}[p]
    r = base + (p - 1) * (1 - g + k)
    if (22 - r) % (p - 1):
        raise Inconsistent(f"(p-1) does not divide 22-r for r={r}")
    m = (22 - r) // (p - 1)
    n_expected = {3: 10 - m, 5: 16 - 3 * m, 7: 18 - 5 * m}[p]
    if f.n != n_expected:
        raise Inconsistent(f"p={p}, (g,n,k)={f.as_tuple()}: expected n={n_expected}")
    a = m - 2 * g
    if a < 0 or r < 1 or r > 20:
        raise Inconsistent(f"p={p}, (g,n,k)={f.as_tuple()} gives r={r}, a={a}")
    return LatticeInvariants(p, r, a, m, 24 // (p - 1))


# --- representatives of sigma modulo the torus ----------------------------------

def representatives(gamma: DiagonalSymmetry, weights) -> list[TorusRepresentative]:
    """All ``gamma + q w`` (mod Z) having at least one zero coordinate."""
    w = weights.weights if isinstance(weights, WeightSystem) else tuple(weights)
    qs = set()
    for i, wi in enumerate(w):
        for t in range(wi):
            qs.add(Fraction(t - gamma.g[i], wi) % 1)
    out = {}
    for q in sorted(qs):
        val = DiagonalSymmetry(tuple(gi + q * wi for gi, wi in zip(gamma.g, w)))
        zeros = frozenset(i for i, v in enumerate(val.g) if v == 0)
        if zeros and val not in out:
            out[val] = TorusRepresentative(gamma, q, val, zeros)
    return list(out.values())


# --- the engine ----------------------------------------------------------------

class Geometry:
    """Strata, stabilizers and the sigma action for one pair (W, G)."""

    def __init__(self, W: InvertiblePolynomial, G: SymmetryGroup):
        self.W = W
        self.G = G
        self.w = W.weights
        self.d = W.degree
        J = j_group(W)
        if not J <= G:
            raise ValueError("G must contain J_W")
        self.gt_order = G.order // J.order
        self.coset_reps = self._coset_reps(G, J)
        self.strata = [s for s in (self._stratum(S) for S in self._supports()) if s.y_points]

    @staticmethod
    def _coset_reps(G: SymmetryGroup, J: SymmetryGroup) -> list[Vec]:
        n = G.modulus
        reps, seen = [], set()
        for g in G.sorted_elements:
            v = to_int(g, n)
            if v in seen:
                continue
            seen |= {tuple((a + b) % n for a, b in zip(v, j)) for j in J.elements}
            reps.append(g.g)
        return reps

    @staticmethod
    def _supports():
        for size in (1, 2):
            yield from itertools.combinations(range(4), size)

    def solutions(self, shift: Vec, zero: tuple[int, ...]) -> list[Vec]:
        """Distinct ``h = shift + g + q w`` (g in G) vanishing on the coordinates ``zero``."""
        a = min(zero, key=lambda i: self.w[i])
        found = set()
        for g in self.coset_reps:
            base = [s + x for s, x in zip(shift, g)]
            for t in range(self.w[a]):
                q = Fraction(t - base[a], self.w[a])
                h = tuple((b + q * wi) % 1 for b, wi in zip(base, self.w))
                if all(h[i] == 0 for i in zero):
                    found.add(h)
        return sorted(found)

    def _y_points(self, S: tuple[int, ...]) -> int:
        rows = self.W.matrix.rows
        if len(S) == 1:
            (a,) = S
            pure = any(r[a] and all(r[j] == 0 for j in range(4) if j != a) for r in rows)
            return 0 if pure else 1
        a, b = S
        monos = [r for r in rows if all(r[j] == 0 for j in range(4) if j not in S)]
        if len(monos) < 2:
            if not monos:
                raise NotImplementedError(f"coordinate line {S} lies on the surface")
            return 0
        if len(monos) > 2:
            raise ValueError(f"restriction to {S} has {len(monos)} monomials")
        g = gcd(self.w[a], self.w[b])
        da = monos[0][a] - monos[1][a]
        e = Fraction(da * g, self.w[b])
        assert e.denominator == 1
        return abs(int(e))

    def _slice(self, S: tuple[int, ...]) -> tuple[int, int]:
        if len(S) == 2:
            return tuple(i for i in range(4) if i not in S)
        (a,) = S
        row = self.W.matrix.rows[a]
        t = next(j for j in range(4) if j != a and row[j])
        return tuple(i for i in range(4) if i not in (a, t))

    def _stratum(self, S: tuple[int, ...]) -> Stratum:
        ny = self._y_points(S)
        c = gcd(*(self.w[i] for i in S))
        if not ny:
            return Stratum(S, 0, c, c, 0, (0, 0))
        stab = self.solutions((0,) * 4, S)
        m = len(stab)
        if m % c:
            raise AssertionError(f"C^*-stabilizer order {c} does not divide {m}")
        xbar = Fraction(ny * (m // c), self.gt_order)
        if xbar.denominator != 1:
            raise AssertionError(f"non-integral point count on stratum {S}")
        sl = self._slice(S)
        u, v = sl
        chars = {h[u] for h in stab}
        if any((h[u] + h[v]) % 1 for h in stab) or len(chars) != m:
            raise AssertionError(f"stabilizer on {S} does not act as (1/m,-1/m)")
        return Stratum(S, ny, c, m, int(xbar), sl)

    # sigma ----------------------------------------------------------------

    def sigma_lift(self, s: Vec, zero: tuple[int, ...]) -> Vec | None:
        sols = self.solutions(s, zero)
        return sols[0] if sols else None

    def fixed_curves(self, s: Vec) -> dict[int, int]:
        """Map coordinate index j to the genus of the fixed curve ``{x_j = 0}/G``."""
        out = {}
        for j in range(4):
            others = tuple(i for i in range(4) if i != j)
            if self.sigma_lift(s, others) is None:
                continue
            ow = [self.w[i] for i in others]
            g_cover = curve_genus(self.d, *ow)
            ram = []
            for st in self.strata:
                if j not in st.support and st.m > st.c:
                    ram += [st.m // st.c] * st.y_points
            out[j] = riemann_hurwitz(g_cover, self.gt_order, ram)
        return out

    def fixed_locus(self, s: Vec) -> FixedLocus:
        curves = self.fixed_curves(s)
        genera = sorted(curves.values(), reverse=True)
        isolated = 0
        details = [f"fixed curve {{{VARIABLES[j]}=0}} of genus {g}" for j, g in sorted(curves.items())]
        for st in self.strata:
            h = self.sigma_lift(s, st.support)
            if h is None:
                continue
            u, v = st.slice
            alpha, beta = h[u], h[v]
            m = st.m
            fixed = [((m - i) * alpha - i * beta).denominator == 1 for i in range(m + 1)]
            if fixed[0] != (v in curves) or fixed[m] != (u in curves):
                raise AssertionError(f"local and global curve tests disagree on {st.support}")
            if all(fixed):
                raise AssertionError("sigma acts trivially near a point")
            exc = sum(fixed[1:m])
            pts = sum(1 for i in range(m) if not fixed[i] and not fixed[i + 1])
            genera += [0] * (exc * st.xbar_points)
            isolated += pts * st.xbar_points
            if exc or pts:
                details.append(f"{st.xbar_points} x A{m - 1} at {st.label()}: "
                               f"{exc} fixed exceptional curve(s), {pts} isolated point(s) each")
        if genera:
            inv = FixedLocusInvariants(genera[0], isolated, len(genera) - 1)
        else:
            inv = FixedLocusInvariants(None, isolated, None)
        return FixedLocus(inv, genera, isolated, details)


def ambient_singularities(W: InvertiblePolynomial) -> list[SingularPoint]:
    """Cyclic quotient singularities of ``{W = 0}`` in weighted projective space."""
    geo = Geometry(W, j_group(W))
    return [SingularPoint(st.label(), st.c, st.y_points) for st in geo.strata if st.c > 1]


def symplectic_fixed_points(W: InvertiblePolynomial, G: SymmetryGroup) -> list[SingularPoint]:
    """Singular points of the quotient of the resolved surface by ``G/J_W``.

    Over a stratum with C^*-isotropy ``c`` and total isotropy ``m > c`` each
    point of the quotient carries ``c`` torus-fixed points of the ``A_{c-1}``
    resolution, each becoming an ``A_{m/c-1}`` singularity.
    """
    geo = Geometry(W, G)
    return [SingularPoint(st.label(), st.m // st.c, st.c * st.xbar_points)
            for st in geo.strata if st.m > st.c]


def fixed_locus(W: InvertiblePolynomial, G: SymmetryGroup, p: int) -> FixedLocus:
    geo = Geometry(W, G)
    return geo.fixed_locus(sigma(W, p).g)


def resolve_fixed_locus(W: InvertiblePolynomial, G: SymmetryGroup, p: int):
    """``(FixedLocusInvariants, LatticeInvariants)`` for sigma_p on ``X_{W,G}``.

    The computed ``(g, n, k)`` must match exactly one classification row.
    """
    from .lattices import classification_rows

    if p not in PRIMES:
        raise ValueError(f"unsupported prime {p}")
    fl = fixed_locus(W, G, p)
    inv = fl.invariants
    rows = [row for row in classification_rows(p) if (row.g, row.n, row.k) == inv.as_tuple()]
    if not rows:
        raise NoConfiguration(f"no classification row for p={p}, (g,n,k)={inv.as_tuple()}",
                              {"gnk": inv.as_tuple(), "details": fl.details})
    lat = invariants_from_gnk(p, inv)
    if (rows[0].r, rows[0].a) != (lat.r, lat.a):
        raise NoConfiguration(f"formula gives (r,a)=({lat.r},{lat.a}) but row has "
                              f"({rows[0].r},{rows[0].a})", {"gnk": inv.as_tuple()})
    return inv, lat
