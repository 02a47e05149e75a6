"""Diagonal symmetry groups of invertible polynomials.

Elements are written additively: ``g = (g1, g2, g3, g4)`` with ``gi`` in
``[0, 1)`` stands for the map ``xi -> exp(2 pi i gi) xi``.  Every group here
lives inside ``G_W`` for some exponent matrix ``A``, and all its coordinates
have denominators dividing ``N = |det A|``, so internally an element is the
integer vector ``N * g`` reduced mod ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import ParseError
from .invpoly import ExponentMatrix, InvertiblePolynomial

IntVec = tuple[int, ...]


@dataclass(frozen=True, order=True)
class DiagonalSymmetry:
    g: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(Fraction(v) % 1 for v in self.g))

    @classmethod
    def parse(cls, text: str) -> "DiagonalSymmetry":
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 4:
            raise ParseError(f"a diagonal symmetry needs 4 coordinates: {text!r}")
        try:
            return cls(tuple(Fraction(s) for s in parts))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad fraction in {text!r}") from exc

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.g)

    def __add__(self, other: "DiagonalSymmetry") -> "DiagonalSymmetry":
        return DiagonalSymmetry(tuple(a + b for a, b in zip(self.g, other.g)))

    def __neg__(self) -> "DiagonalSymmetry":
        return DiagonalSymmetry(tuple(-a for a in self.g))

    def scaled(self, k: int) -> "DiagonalSymmetry":
        return DiagonalSymmetry(tuple(k * a for a in self.g))

    @property
    def order(self) -> int:
        o = 1
        for v in self.g:
            o = o * v.denominator // _gcd(o, v.denominator)
        return o

    def is_zero(self) -> bool:
        return not any(self.g)

    def acts_on(self, A: ExponentMatrix) -> bool:
        """True iff every monomial of ``A`` is invariant."""
        return all(sum(a * v for a, v in zip(row, self.g)).denominator == 1 for row in A.rows)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def parse_group_literal(text: str) -> list[DiagonalSymmetry]:
    """Parse ``"2/3,1/3,0,0;1/3,1/3,1/3,0"`` into generators (empty text gives none)."""
    text = text.strip()
    if not text:
        return []
    return [DiagonalSymmetry.parse(chunk) for chunk in text.split(";") if chunk.strip()]


def format_group_literal(gens) -> str:
    return ";".join(str(g) for g in gens)


@dataclass(frozen=True)
class SymmetryGroup:
    """A finite subgroup of ``G_A``, stored fully enumerated."""

    host: ExponentMatrix
    elements: frozenset = field(repr=False)  # integer vectors N*g mod N
    # labels for reporting; for groups built by subgroups_between they generate G modulo J
    generators: tuple[DiagonalSymmetry, ...] = field(default=(), compare=False)

    @property
    def modulus(self) -> int:
        return abs(self.host.det())

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        if isinstance(g, DiagonalSymmetry):
            v = to_int(g, self.modulus)
            return v is not None and v in self.elements
        return tuple(g) in self.elements

    def __le__(self, other: "SymmetryGroup") -> bool:
        return self.elements <= other.elements

    @cached_property
    def sorted_elements(self) -> list[DiagonalSymmetry]:
        n = self.modulus
        return sorted(DiagonalSymmetry(tuple(Fraction(c, n) for c in v)) for v in self.elements)

    def __iter__(self):
        return iter(self.sorted_elements)

    def index_of(self, sub: "SymmetryGroup") -> int:
        if not sub <= self:
            raise ValueError("not a subgroup")
        return self.order // sub.order

    def reporting_generators(self, base: "SymmetryGroup | None" = None) -> list[DiagonalSymmetry]:
        """Greedy lexicographically minimal generators of this group modulo ``base``."""
        n = self.modulus
        current = base.elements if base is not None else frozenset({(0, 0, 0, 0)})
        gens = []
        for g in self.sorted_elements:
            if len(current) == self.order:
                break
            v = to_int(g, n)
            if v not in current:
                gens.append(g)
                current = _close(current, [v], n)
        return gens

    def __str__(self) -> str:
        gens = self.generators or tuple(self.reporting_generators())
        return f"<{format_group_literal(gens)}> (order {self.order})"


def to_int(g: DiagonalSymmetry, n: int) -> IntVec | None:
    out = []
    for v in g.g:
        x = v * n
        if x.denominator != 1:
            return None
        out.append(int(x) % n)
    return tuple(out)


def _close(start, gens: list[IntVec], n: int) -> frozenset:
    """Subgroup generated by the group ``start`` and the extra vectors ``gens``."""
    elems = set(start) or {(0, 0, 0, 0)}
    frontier = list(elems)
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                s = tuple((a + b) % n for a, b in zip(e, g))
                if s not in elems:
                    elems.add(s)
                    nxt.append(s)
        frontier = nxt
    return frozenset(elems)


def generate(host: ExponentMatrix, gens, base: SymmetryGroup | None = None) -> SymmetryGroup:
    """Group generated by ``gens`` (and ``base`` if given) inside ``G_host``."""
    gens = [g if isinstance(g, DiagonalSymmetry) else DiagonalSymmetry(g) for g in gens]
    n = abs(host.det())
    vecs = []
    for g in gens:
        if not g.acts_on(host):
            raise ValueError(f"{g} is not a symmetry of the polynomial")
        vecs.append(to_int(g, n))
    start = base.elements if base is not None else frozenset({(0,) * 4})
    all_gens = (tuple(base.generators) if base is not None else ()) + tuple(gens)
    return SymmetryGroup(host, _close(start, vecs, n), all_gens)


def full_group(A: ExponentMatrix) -> SymmetryGroup:
    inv = A.inverse()
    cols = [DiagonalSymmetry(tuple(inv[i][j] for i in range(4))) for j in range(4)]
    return generate(A, cols)


def grading_operator(W: InvertiblePolynomial) -> DiagonalSymmetry:
    return DiagonalSymmetry(tuple(Fraction(w, W.degree) for w in W.weights))


def j_group(W: InvertiblePolynomial) -> SymmetryGroup:
    return generate(W.matrix, [grading_operator(W)])


def sl_subgroup(G: SymmetryGroup) -> SymmetryGroup:
    n = G.modulus
    elems = frozenset(v for v in G.elements if sum(v) % n == 0)
    out = SymmetryGroup(G.host, elems)
    return SymmetryGroup(G.host, elems, tuple(out.reporting_generators()))


def sl_group(W: InvertiblePolynomial) -> SymmetryGroup:
    return sl_subgroup(full_group(W.matrix))


def sigma(W: InvertiblePolynomial, p: int) -> DiagonalSymmetry:
    """The order-p symmetry scaling the first standalone ``v^p`` variable."""
    i = W.sigma_variable(p)
    return DiagonalSymmetry(tuple(Fraction(1, p) if k == i else 0 for k in range(4)))


def subgroups_between(J: SymmetryGroup, S: SymmetryGroup) -> list[SymmetryGroup]:
    """All groups G with J <= G <= S, ordered by |G/J| descending.

    Subgroups of the small quotient S/J are found by closing under one extra
    coset representative at a time, starting from J.
    """
    if not J <= S:
        raise ValueError("J is not contained in S")
    n = S.modulus
    reps = []
    covered: set = set()
    for g in S.sorted_elements:
        v = to_int(g, n)
        if v in covered:
            continue
        coset = {tuple((a + b) % n for a, b in zip(v, j)) for j in J.elements}
        covered |= coset
        if v not in J.elements:
            reps.append(v)
    found = {J.elements}
    frontier = [J.elements]
    while frontier:
        nxt = []
        for H in frontier:
            for v in reps:
                if v in H:
                    continue
                K = _close(H, [v], n)
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    groups = []
    for elems in found:
        G = SymmetryGroup(S.host, elems)
        groups.append(SymmetryGroup(S.host, elems, tuple(G.reporting_generators(J))))
    groups.sort(key=lambda G: (-G.order, G.generators))
    return groups


def dual_group(G: SymmetryGroup, A: ExponentMatrix | None = None) -> SymmetryGroup:
    """``{g in G_{A^T} : g A h^T in Z for all h in G}``."""
    A = A or G.host
    if A != G.host:
        raise ValueError("G must be a subgroup of G_A")
    n = G.modulus
    At = A.transpose()
    big = full_group(At)
    gens = [to_int(h, n) for h in G.reporting_generators()]
    # A h^T for each generator, as integer vectors over n
    Ah = [[sum(A.rows[i][j] * h[j] for j in range(4)) for i in range(4)] for h in gens]
    nn = n * n
    elems = frozenset(
        v for v in big.elements
        if all(sum(v[i] * ah[i] for i in range(4)) % nn == 0 for ah in Ah)
    )
    out = SymmetryGroup(At, elems)
    return SymmetryGroup(At, elems, tuple(out.reporting_generators()))
