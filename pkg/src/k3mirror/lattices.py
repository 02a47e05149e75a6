"""Even lattices, discriminant groups and the p-elementary classification data.

Lattices are integer Gram matrices.  Named lattices come from a small
expression grammar: summands joined by ``+``, each a base name (``U``, ``An``,
``E6``, ``E7``, ``E8``, ``Kp``, ``Hp``) optionally followed by ``*`` (dual), a
scaling ``(n)`` and a power ``^k``.  ``L(n)`` multiplies the form by ``n``;
``L*(n)`` is ``n`` times the dual form, accepted only when it is integral and
even.  Root lattices are negative definite.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .errors import (CongruenceViolation, NoSuchRow, NotMirrorHyperbolic,
                     ParseError, UnsupportedPrime)
from .invpoly import det, inverse
from .weights import PRIMES

Gram = tuple[tuple[int, ...], ...]

EXCLUDED = frozenset({(3, 20, 1), (5, 6, 4), (7, 4, 3)})


@dataclass(frozen=True)
class Lattice:
    gram: Gram
    label: str = ""

    def __post_init__(self):
        g = tuple(tuple(int(v) for v in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        if any(len(r) != len(g) for r in g):
            raise ValueError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(len(g)) for j in range(i)):
            raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        return int(det(self.gram)) if self.gram else 1

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def scaled(self, n: int) -> "Lattice":
        return Lattice(tuple(tuple(n * v for v in row) for row in self.gram), f"{self.label}({n})")

    def __add__(self, other: "Lattice") -> "Lattice":
        return direct_sum(self, other)

    def __str__(self) -> str:
        return self.label or f"<rank {self.rank} lattice>"


def direct_sum(*parts: Lattice) -> Lattice:
    n = sum(p.rank for p in parts)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for p in parts:
        for i in range(p.rank):
            for j in range(p.rank):
                rows[off + i][off + j] = p.gram[i][j]
        off += p.rank
    return Lattice(tuple(map(tuple, rows)), "+".join(p.label for p in parts if p.label))


# --- named lattices -----------------------------------------------------------

def _cartan_neg(edges: list[tuple[int, int]], n: int) -> Gram:
    rows = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        rows[i][j] = rows[j][i] = 1
    return tuple(map(tuple, rows))


def root_lattice(kind: str, n: int) -> Lattice:
    if kind == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        return Lattice(_cartan_neg([(i, i + 1) for i in range(n - 1)], n), f"A{n}")
    if kind == "E" and n in (6, 7, 8):
        # chain 0-1-...-(n-2) with node n-1 attached to node 2
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
        return Lattice(_cartan_neg(edges, n), f"E{n}")
    raise ValueError(f"unknown root lattice {kind}{n}")


def hyperbolic_plane() -> Lattice:
    return Lattice(((0, 1), (1, 0)), "U")


def k_lattice(p: int) -> Lattice:
    if p % 4 != 3:
        raise CongruenceViolation(f"K_p needs p = 3 mod 4, got {p}")
    return Lattice(((-(p + 1) // 2, 1), (1, -2)), f"K{p}")


def h_lattice(p: int) -> Lattice:
    if p % 4 != 1:
        raise CongruenceViolation(f"H_p needs p = 1 mod 4, got {p}")
    return Lattice((((p - 1) // 2, 1), (1, -2)), f"H{p}")


def dual_scaled(L: Lattice, n: int) -> Lattice:
    """``n`` times the dual form of ``L``; must be an even integral lattice."""
    inv = inverse(L.gram)
    rows = [[n * v for v in row] for row in inv]
    if any(v.denominator != 1 for row in rows for v in row):
        raise ValueError(f"{L.label}*({n}) is not integral")
    out = Lattice(tuple(tuple(int(v) for v in row) for row in rows), f"{L.label}*({n})")
    if not out.is_even:
        raise ValueError(f"{out.label} is not even")
    return out


_TOKEN = re.compile(r"^(U|A|E|K|H)(\d*)(\*)?(?:\((-?\d+)\))?(?:\^(\d+))?$")


def make(name: str) -> Lattice:
    """Build a lattice from an expression such as ``"U+U(3)+A2^2+E8"``."""
    text = re.sub(r"\s+", "", name).replace("⊕", "+")
    if not text:
        raise ParseError("empty lattice expression")
    parts = []
    for tok in text.split("+"):
        mt = _TOKEN.match(tok)
        if not mt:
            raise ParseError(f"bad lattice token {tok!r}")
        base, num, star, scale, power = mt.groups()
        if base == "U":
            if num:
                raise ParseError(f"bad lattice token {tok!r}")
            L = hyperbolic_plane()
        elif not num:
            raise ParseError(f"{base} needs an index in {tok!r}")
        elif base in "AE":
            L = root_lattice(base, int(num))
        elif base == "K":
            L = k_lattice(int(num))
        else:
            L = h_lattice(int(num))
        if star:
            if scale is None:
                raise ParseError(f"dual token {tok!r} needs a scaling")
            L = dual_scaled(L, int(scale))
        elif scale is not None:
            L = L.scaled(int(scale))
        parts += [L] * int(power or 1)
    out = direct_sum(*parts)
    return Lattice(out.gram, text)


# --- invariants ----------------------------------------------------------------

def smith_diagonal(rows) -> list[int]:
    """Diagonal of the Smith normal form (nonnegative, each dividing the next)."""
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    for t in range(min(m, n)):
        # pivot: smallest nonzero absolute value in the remaining block
        while True:
            cands = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not cands:
                return diag + [0] * (min(m, n) - t)
            _, pi, pj = min(cands)
            a[t], a[pi] = a[pi], a[t]
            for r in a:
                r[t], r[pj] = r[pj], r[t]
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
    return diag


@dataclass(frozen=True)
class DiscriminantInvariants:
    invariant_factors: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    @property
    def p_elementary_for(self) -> int | None:
        fs = set(self.invariant_factors)
        if len(fs) == 1:
            (p,) = fs
            if all(p % q for q in range(2, int(p ** 0.5) + 1)):
                return p
        return None

    def is_p_elementary(self, p: int) -> bool:
        return all(f == p for f in self.invariant_factors)


def discriminant(L: Lattice) -> DiscriminantInvariants:
    if L.det == 0:
        raise ValueError("degenerate lattice")
    return DiscriminantInvariants(tuple(f for f in smith_diagonal(L.gram) if f > 1))


def signature(L: Lattice) -> tuple[int, int]:
    """``(t_plus, t_minus)`` by exact symmetric elimination over the rationals."""
    a = [[Fraction(v) for v in row] for row in L.gram]
    plus = minus = 0
    while a:
        n = len(a)
        k = next((i for i in range(n) if a[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in range(n) for j in range(n) if a[i][j] != 0), None)
            if pair is None:
                raise ValueError("degenerate lattice")
            i, j = pair
            # replace e_i by e_i + e_j, giving a nonzero diagonal entry 2 a_ij
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            for r in a:
                r[i] += r[j]
            k = i
        p = a[k][k]
        if p > 0:
            plus += 1
        else:
            minus += 1
        rest = [i for i in range(n) if i != k]
        a = [[a[i][j] - a[i][k] * a[k][j] / p for j in rest] for i in rest]
    return plus, minus


def invariant_triple(L: Lattice):
    return L.rank, signature(L), discriminant(L).invariant_factors


def same_invariants(L1: Lattice, L2: Lattice) -> bool:
    return invariant_triple(L1) == invariant_triple(L2)


# --- classification data ---------------------------------------------------------

@dataclass(frozen=True)
class ClassificationRow:
    p: int
    r: int
    a: int
    g: int | None
    n: int
    k: int | None
    T_name: str
    S_name: str

    @property
    def S(self) -> Lattice:
        return make(self.S_name)

    @property
    def T(self) -> Lattice:
        return make(self.T_name)


@lru_cache(maxsize=None)
def load_classification() -> tuple[ClassificationRow, ...]:
    text = resources.files("k3mirror").joinpath("data/classification.json").read_text("utf-8")
    return tuple(ClassificationRow(e["p"], e["r"], e["a"], e["g"], e["n"], e["k"], e["T"], e["S"])
                 for e in json.loads(text))


def classification_rows(p: int) -> list[ClassificationRow]:
    if p not in PRIMES:
        raise UnsupportedPrime(f"p must be one of {PRIMES}, got {p}")
    return [row for row in load_classification() if row.p == p]


def classify(p: int, r: int, a: int) -> ClassificationRow:
    for row in classification_rows(p):
        if (row.r, row.a) == (r, a):
            return row
    raise NoSuchRow(f"no row with (r,a)=({r},{a}) for p={p}")


def check_row(row: ClassificationRow) -> list[str]:
    """Problems with the S and T lattices of a row (empty when consistent)."""
    problems = []
    for name, L, sig in (("S", row.S, (1, row.r - 1)), ("T", row.T, (2, 20 - row.r))):
        if L.rank != row.r and name == "S" or name == "T" and L.rank != 22 - row.r:
            problems.append(f"{name} has rank {L.rank}")
        if not L.is_even:
            problems.append(f"{name} is not even")
        if signature(L) != sig:
            problems.append(f"{name} has signature {signature(L)}, expected {sig}")
        disc = discriminant(L)
        if not disc.is_p_elementary(row.p) or disc.length != row.a:
            problems.append(f"{name} has discriminant {disc.invariant_factors}")
    return problems


def mirror_invariants(p: int, r: int, a: int) -> tuple[int, int]:
    if (p, r, a) in EXCLUDED:
        raise NotMirrorHyperbolic(f"(p,r,a)=({p},{r},{a}) has no hyperbolic plane to split off")
    classify(p, r, a)
    return 20 - r, a


def verify_mirror_decomposition(p: int, r: int, a: int) -> bool:
    """Check T = U + (S of the mirror row) via rank, signature and discriminant.

    When the mirror invariants have no row of their own, the comparison falls
    back to the lattice obtained from T by removing one U summand, which must
    be hyperbolic and p-elementary with invariants ``(20 - r, a)``.
    """
    row = classify(p, r, a)
    r2, a2 = mirror_invariants(p, r, a)
    T = row.T
    try:
        mirror_S = classify(p, r2, a2).S
        return same_invariants(T, direct_sum(hyperbolic_plane(), mirror_S))
    except NoSuchRow:
        parts = row.T_name.split("+")
        if "U" not in parts:
            return False
        parts.remove("U")
        rest = make("+".join(parts))
        disc = discriminant(rest)
        return (rest.rank == r2 and signature(rest) == (1, r2 - 1)
                and disc.is_p_elementary(p) and disc.length == a2)
