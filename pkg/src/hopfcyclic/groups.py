"""Finite groups by multiplication tables, with their group and function algebras."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .exactlin import ONE, ZERO, FreeSpace, SparseMatrix
from .errors import DimensionMismatch
from .hopf import HopfPresentation


@dataclass(frozen=True)
class FiniteGroup:
    labels: tuple
    table: tuple  # table[a][b] = index of a*b
    name: str = "G"

    def __post_init__(self):
        n = len(self.labels)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise DimensionMismatch("multiplication table is not square")

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][a] == a and self.table[a][e] == a for a in range(self.order)):
                return e
        raise DimensionMismatch(f"{self.name} has no identity")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        e = self.identity
        for b in range(self.order):
            if self.table[a][b] == e:
                return b
        raise DimensionMismatch(f"{self.labels[a]} has no inverse")

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def is_group(self) -> bool:
        n = self.order
        try:
            e = self.identity
            for a in range(n):
                self.inverse(a)
        except DimensionMismatch:
            return False
        t = self.table
        return all(t[t[a][b]][c] == t[a][t[b][c]]
                   for a in range(n) for b in range(n) for c in range(n)) and e >= 0


def cyclic_group(n: int, generator: str = "g") -> FiniteGroup:
    labels = tuple("1" if k == 0 else generator if k == 1 else f"{generator}^{k}"
                   for k in range(n))
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(labels, table, f"Z{n}")


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of {0..n-1} in one-line notation, labelled like p102.

    The product p*q is the composite "apply q, then p".
    """
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    labels = tuple("p" + "".join(map(str, p)) for p in perms)
    table = tuple(tuple(index[tuple(p[q[k]] for k in range(n))] for q in perms) for p in perms)
    return FiniteGroup(labels, table, f"S{n}")


def group_algebra(G: FiniteGroup, name: str | None = None) -> HopfPresentation:
    n = G.order
    mult = {(a, b): {G.mul(a, b): ONE} for a in range(n) for b in range(n)}
    comult = {a: {(a, a): ONE} for a in range(n)}
    antipode = SparseMatrix(n, n, {(G.inverse(a), a): ONE for a in range(n)})
    return HopfPresentation(FreeSpace(G.labels), mult, {G.identity: ONE}, comult,
                            [ONE] * n, antipode, name=name or f"k{G.name}")


def function_algebra(G: FiniteGroup, name: str | None = None) -> HopfPresentation:
    """Functions on G on the basis of point indicators, labelled by a trailing '*'."""
    n = G.order
    e = G.identity
    mult = {(a, a): {a: ONE} for a in range(n)}
    unit = {a: ONE for a in range(n)}
    comult = {}
    for a in range(n):
        for b in range(n):
            comult.setdefault(G.mul(a, b), {})[(a, b)] = ONE
    counit = [ONE if a == e else ZERO for a in range(n)]
    antipode = SparseMatrix(n, n, {(G.inverse(a), a): ONE for a in range(n)})
    labels = tuple(s + "*" for s in G.labels)
    return HopfPresentation(FreeSpace(labels), mult, unit, comult, counit, antipode,
                            name=name or f"k^{G.name}")
