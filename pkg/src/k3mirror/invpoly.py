"""Invertible quasihomogeneous polynomials in four variables.

A polynomial is stored through its exponent matrix, rows ordered by the
variable that "owns" the monomial (the variable carrying an exponent >= 2), so
the diagonal holds the large exponents and each row has at most one further
entry, equal to 1.  Coefficients are always 1.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .errors import NotInvertible, ParseError
from .weights import WeightSystem, is_calabi_yau, normalize

VARIABLES = ("x", "y", "z", "w")

Matrix = tuple[tuple[int, ...], ...]


# --- exact linear algebra ---------------------------------------------------

def det(rows) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[Fraction(v) for v in row] for row in rows]
    n = len(a)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        result *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return sign * result


def inverse(rows) -> list[list[Fraction]]:
    n = len(rows)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise NotInvertible("exponent matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * u for v, u in zip(a[r], a[col])]
    return [row[n:] for row in a]


# --- atomic blocks -----------------------------------------------------------

@dataclass(frozen=True)
class Fermat:
    var: int
    exponent: int

    kind = "fermat"

    @property
    def vars(self) -> tuple[int, ...]:
        return (self.var,)


@dataclass(frozen=True)
class Chain:
    """``v0^a0 v1 + v1^a1 v2 + ... + vk^ak``; ``vars[-1]`` is the terminal variable."""

    vars: tuple[int, ...]
    exponents: tuple[int, ...]

    kind = "chain"


@dataclass(frozen=True)
class Loop:
    """``v0^a0 v1 + v1^a1 v2 + ... + vk^ak v0``, rotated to start at its smallest variable."""

    vars: tuple[int, ...]
    exponents: tuple[int, ...]

    kind = "loop"


Block = Fermat | Chain | Loop


@dataclass(frozen=True)
class AtomicDecomposition:
    blocks: tuple[Block, ...]

    def kinds(self) -> list[str]:
        return [b.kind for b in self.blocks]

    def block_of(self, var: int) -> Block:
        for b in self.blocks:
            if var in b.vars:
                return b
        raise KeyError(var)


# --- exponent matrices -------------------------------------------------------

@dataclass(frozen=True)
class ExponentMatrix:
    """Square matrix of exponents; ``rows[i][j]`` is the exponent of variable j in monomial i."""

    rows: Matrix

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n != 4 or any(len(r) != n for r in rows):
            raise ValueError("exponent matrix must be 4x4")
        if any(v < 0 for r in rows for v in r):
            raise ValueError("exponents must be nonnegative")

    @classmethod
    def diag(cls, *exps: int) -> "ExponentMatrix":
        return cls(tuple(tuple(e if i == j else 0 for j in range(4)) for i, e in enumerate(exps)))

    @property
    def size(self) -> int:
        return len(self.rows)

    def det(self) -> int:
        return int(det(self.rows))

    def inverse(self) -> list[list[Fraction]]:
        return inverse(self.rows)

    def transpose(self) -> "ExponentMatrix":
        return ExponentMatrix(tuple(zip(*self.rows)))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def permuted(self, perm) -> "ExponentMatrix":
        """Relabel variables: new variable k is old variable ``perm[k]``."""
        return ExponentMatrix(tuple(tuple(self.rows[perm[k]][perm[l]] for l in range(4))
                                    for k in range(4)))

    def owner_ordered(self) -> "ExponentMatrix":
        """Reorder rows so that row i is the monomial in which variable i has exponent >= 2."""
        owners = {}
        for row in self.rows:
            big = [j for j, v in enumerate(row) if v >= 2]
            if len(big) != 1:
                raise NotInvertible(f"monomial {row} must have exactly one exponent >= 2")
            if big[0] in owners:
                raise NotInvertible(f"variable {VARIABLES[big[0]]} owns two monomials")
            owners[big[0]] = row
        return ExponentMatrix(tuple(owners[i] for i in range(4)))


def _pointer(row: tuple[int, ...], i: int) -> int | None:
    others = [j for j, v in enumerate(row) if j != i and v]
    if not others:
        return None
    if len(others) > 1 or row[others[0]] != 1:
        raise NotInvertible(f"monomial {row} is not of atomic type")
    return others[0]


def decompose(m: ExponentMatrix) -> AtomicDecomposition:
    """Split the polynomial of ``m`` into Fermat, chain and loop blocks."""
    m = m.owner_ordered()
    n = m.size
    nxt = {}
    for i, row in enumerate(m.rows):
        if row[i] < 2:
            raise NotInvertible(f"exponent of {VARIABLES[i]} in its own monomial is < 2")
        nxt[i] = _pointer(row, i)
    incoming: dict[int, int] = {}
    for i, j in nxt.items():
        if j is not None:
            if j in incoming:
                raise NotInvertible(f"variable {VARIABLES[j]} is the linear factor of two monomials")
            incoming[j] = i
    seen: set[int] = set()
    blocks: list[Block] = []
    for start in range(n):
        if start in seen or start in incoming:
            continue
        path = [start]
        while nxt[path[-1]] is not None:
            path.append(nxt[path[-1]])
        seen.update(path)
        exps = tuple(m.rows[v][v] for v in path)
        blocks.append(Fermat(start, exps[0]) if len(path) == 1 else Chain(tuple(path), exps))
    for start in range(n):
        if start in seen:
            continue
        cycle = [start]
        while nxt[cycle[-1]] != start:
            cycle.append(nxt[cycle[-1]])
        seen.update(cycle)
        blocks.append(Loop(tuple(cycle), tuple(m.rows[v][v] for v in cycle)))
    blocks.sort(key=lambda b: min(b.vars))
    return AtomicDecomposition(tuple(blocks))


def variable_weights(m: ExponentMatrix) -> tuple[tuple[int, ...], int]:
    """Integer weights per variable and the degree, with gcd of the weights equal to 1.

    The fractional weight of variable i is the i-th row sum of the inverse matrix.
    """
    inv = m.inverse()
    q = [sum(row) for row in inv]
    if any(v <= 0 for v in q):
        raise NotInvertible(f"nonpositive fractional weights {q}")
    d = lcm(*(v.denominator for v in q))
    w = [int(v * d) for v in q]
    g = reduce(gcd, w)
    return tuple(v // g for v in w), d // g


def weights_from_matrix(m: ExponentMatrix) -> WeightSystem:
    w, d = variable_weights(m)
    return normalize(w, d)


# --- text grammar ------------------------------------------------------------

_FACTOR = re.compile(r"([xyzw])(?:\^(\d+))?")


def parse_monomials(text: str) -> list[tuple[int, ...]]:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty polynomial")
    monomials = []
    for term in s.split("+"):
        if not term:
            raise ParseError(f"empty monomial in {text!r}")
        exps = [0, 0, 0, 0]
        pos = 0
        body = term.replace("*", "")
        if "*" in term and ("**" in term or term.startswith("*") or term.endswith("*")):
            raise ParseError(f"malformed product in {term!r}")
        while pos < len(body):
            mt = _FACTOR.match(body, pos)
            if not mt:
                raise ParseError(f"cannot parse {term!r} at position {pos}")
            exps[VARIABLES.index(mt.group(1))] += int(mt.group(2) or 1)
            pos = mt.end()
        monomials.append(tuple(exps))
    return monomials


def format_monomial(row) -> str:
    parts = []
    for v, e in zip(VARIABLES, row):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "".join(parts)


# --- polynomials -------------------------------------------------------------

@dataclass(frozen=True)
class InvertiblePolynomial:
    matrix: ExponentMatrix
    decomposition: AtomicDecomposition = field(compare=False)
    weights: tuple[int, ...] = field(compare=False)
    degree: int = field(compare=False)
    variable_names: tuple[str, ...] = field(default=VARIABLES, compare=False)

    @classmethod
    def from_matrix(cls, m: ExponentMatrix) -> "InvertiblePolynomial":
        m = m.owner_ordered()
        dec = decompose(m)
        w, d = variable_weights(m)
        return cls(m, dec, w, d)

    @classmethod
    def parse(cls, text: str) -> "InvertiblePolynomial":
        monos = parse_monomials(text)
        if len(monos) != 4:
            raise NotInvertible(f"expected 4 monomials, got {len(monos)} in {text!r}")
        return cls.from_matrix(ExponentMatrix(tuple(monos)))

    def __str__(self) -> str:
        return "+".join(format_monomial(r) for r in self.matrix.rows)

    @property
    def weight_system(self) -> WeightSystem:
        return normalize(self.weights, self.degree)

    @property
    def is_canonical(self) -> bool:
        return list(self.weights) == sorted(self.weights, reverse=True)

    def transpose(self) -> "InvertiblePolynomial":
        return InvertiblePolynomial.from_matrix(self.matrix.transpose())

    def permuted(self, perm) -> "InvertiblePolynomial":
        """Relabel variables so that new variable k is old variable ``perm[k]``."""
        return InvertiblePolynomial.from_matrix(self.matrix.permuted(perm))

    def canonical_with_permutation(self) -> tuple["InvertiblePolynomial", tuple[int, ...]]:
        """Rename variables so weights are nonincreasing.

        Ties between equal weights go to the lexicographically smallest exponent
        matrix.  Returns the canonical polynomial and ``perm`` with new variable k
        equal to old variable ``perm[k]``.
        """
        best = None
        for perm in itertools.permutations(range(4)):
            ws = [self.weights[i] for i in perm]
            if ws != sorted(ws, reverse=True):
                continue
            key = self.matrix.permuted(perm).rows
            if best is None or key < best[0]:
                best = (key, perm)
        return self.permuted(best[1]), best[1]

    def canonical(self) -> "InvertiblePolynomial":
        return self.canonical_with_permutation()[0]

    def fermat_variables(self, exponent: int) -> list[int]:
        """Variables forming a standalone Fermat block ``v^exponent``."""
        return [b.var for b in self.decomposition.blocks
                if isinstance(b, Fermat) and b.exponent == exponent]

    def sigma_variable(self, p: int) -> int:
        """Variable carrying the order-p automorphism (first standalone ``v^p``)."""
        cands = self.fermat_variables(p)
        if not cands:
            raise ValueError(f"{self} is not of the form v^{p} + f(other variables)")
        return cands[0]

    def is_form_p(self, p: int) -> bool:
        return bool(self.fermat_variables(p))


# --- enumeration of x^p + f ---------------------------------------------------

SHAPES = ("fermat", "chain", "loop", "chain+fermat", "loop+fermat")


def _shape_rows(shape: str, u: int, v: int, t: int) -> list[tuple[int, int | None]]:
    """(owner, pointer) pairs describing the three monomials of ``f``."""
    if shape == "fermat":
        return [(u, None), (v, None), (t, None)]
    if shape == "chain":
        return [(u, v), (v, t), (t, None)]
    if shape == "loop":
        return [(u, v), (v, t), (t, u)]
    if shape == "chain+fermat":
        return [(u, v), (v, None), (t, None)]
    if shape == "loop+fermat":
        return [(u, v), (v, u), (t, None)]
    raise ValueError(shape)


def enumerate_form_p(ws: WeightSystem, p: int) -> list[InvertiblePolynomial]:
    """All invertible ``v^p + f(others)`` with weight system ``ws``, up to relabelling.

    Exponents follow from requiring every monomial to have degree d; a solution
    is kept only when all exponents are integers >= 2.
    """
    if not is_calabi_yau(ws):
        raise ValueError(f"{ws} does not satisfy sum(w) = d")
    w, d = ws.weights, ws.degree
    found: dict[Matrix, InvertiblePolynomial] = {}
    for j in range(4):
        if p * w[j] != d:
            continue
        rest = [i for i in range(4) if i != j]
        for shape in SHAPES:
            for u, v, t in itertools.permutations(rest):
                rows = [[0] * 4 for _ in range(4)]
                rows[j][j] = p
                ok = True
                for owner, ptr in _shape_rows(shape, u, v, t):
                    need = d - (w[ptr] if ptr is not None else 0)
                    if need % w[owner] or need // w[owner] < 2:
                        ok = False
                        break
                    rows[owner][owner] = need // w[owner]
                    if ptr is not None:
                        rows[owner][ptr] = 1
                if not ok:
                    continue
                poly = InvertiblePolynomial.from_matrix(ExponentMatrix(tuple(map(tuple, rows))))
                if poly.weight_system != ws:
                    continue
                can = poly.canonical()
                found.setdefault(can.matrix.rows, can)
    return [found[k] for k in sorted(found)]
