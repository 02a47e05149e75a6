"""Weight systems of weighted projective 3-spaces and the admissible families."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache, reduce
from importlib import resources
from math import gcd

from .errors import UnsupportedPrime, ZeroWeight

PRIMES = (3, 5, 7, 13)


@dataclass(frozen=True, order=True)
class WeightSystem:
    """A normalized weight system ``(w1, w2, w3, w4; d)`` with w1 >= ... >= w4."""

    weights: tuple[int, int, int, int]
    degree: int

    def __post_init__(self):
        if len(self.weights) != 4:
            raise ValueError("a weight system has exactly four weights")
        if any(w <= 0 for w in self.weights):
            raise ZeroWeight(f"weights must be positive: {self.weights}")
        if self.degree <= 0:
            raise ValueError("degree must be positive")
        if reduce(gcd, self.weights) != 1:
            raise ValueError(f"weights {self.weights} are not normalized")
        if list(self.weights) != sorted(self.weights, reverse=True):
            raise ValueError(f"weights {self.weights} are not in nonincreasing order")

    def __str__(self) -> str:
        return "({};{})".format(",".join(map(str, self.weights)), self.degree)

    @property
    def w1(self) -> int:
        return self.weights[0]

    @property
    def w2(self) -> int:
        return self.weights[1]

    @property
    def w3(self) -> int:
        return self.weights[2]

    @property
    def w4(self) -> int:
        return self.weights[3]

    @property
    def d(self) -> int:
        return self.degree


def normalize_with_permutation(weights, degree) -> tuple[WeightSystem, tuple[int, ...]]:
    """Normalize raw weights and return the sorting permutation.

    ``perm[k]`` is the index in the raw input of the k-th normalized weight, so
    ``ws.weights[k] == raw[perm[k]] // g``.  The sort is stable.
    """
    raw = [int(w) for w in weights]
    if len(raw) != 4:
        raise ValueError("expected four weights")
    if any(w == 0 for w in raw):
        raise ZeroWeight(f"zero weight in {raw}")
    if any(w < 0 for w in raw) or degree <= 0:
        raise ValueError(f"weights and degree must be positive: {raw}; {degree}")
    g = reduce(gcd, raw)
    if degree % g:
        raise ValueError(f"degree {degree} is not divisible by gcd {g} of the weights")
    perm = tuple(sorted(range(4), key=lambda i: -raw[i]))
    ws = WeightSystem(tuple(raw[i] // g for i in perm), degree // g)
    return ws, perm


def normalize(weights, degree) -> WeightSystem:
    return normalize_with_permutation(weights, degree)[0]


def is_calabi_yau(ws: WeightSystem) -> bool:
    return sum(ws.weights) == ws.degree


@dataclass(frozen=True)
class FamilyEntry:
    yonemura_no: str
    weight_system: WeightSystem
    admissible_primes: frozenset[int]


@lru_cache(maxsize=None)
def load_families() -> tuple[FamilyEntry, ...]:
    text = resources.files("k3mirror").joinpath("data/families.json").read_text("utf-8")
    entries = []
    for item in json.loads(text):
        ws = WeightSystem(tuple(item["weights"]), item["degree"])
        entries.append(FamilyEntry(str(item["no"]), ws, frozenset(item["primes"])))
    return tuple(entries)


def admissible_families(p: int) -> list[FamilyEntry]:
    """Weight systems carrying an invertible polynomial ``x^p + f`` for prime ``p``."""
    if p not in PRIMES:
        raise UnsupportedPrime(f"p must be one of {PRIMES}, got {p}")
    return [e for e in load_families() if p in e.admissible_primes]
