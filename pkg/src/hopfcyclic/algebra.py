"""Plain algebras and coalgebras by structure constants (no antipode)."""
from __future__ import annotations

from itertools import product
from typing import Mapping

from .errors import TruncationOverflow
from .exactlin import ONE, ZERO, FreeSpace
from .util import CheckReport, Verdict, add_into, clean


class FiniteAlgebra:
    """Unital algebra: mult {(i, j): {k: c}}, unit {i: c}.

    Optional filtration degrees with a cutoff make products past the cutoff
    raise TruncationOverflow, matching truncated Hopf presentations.
    """

    def __init__(self, space: FreeSpace, mult: Mapping, unit: Mapping, name="A",
                 degrees=None, cutoff=None, counit=None):
        self.space = space
        self.mult = {k: clean(v) for k, v in mult.items() if clean(v)}
        self.unit = clean(unit)
        self.name = name
        self.degrees = degrees
        self.cutoff = cutoff
        self.counit = counit

    @property
    def dim(self):
        return self.space.dim

    @property
    def labels(self):
        return self.space.labels

    @property
    def one(self):
        return dict(self.unit)

    def in_window(self, *indices) -> bool:
        if self.degrees is None:
            return True
        return sum(self.degrees[i] for i in indices) <= self.cutoff

    def mul_basis(self, i, j) -> dict:
        if not self.in_window(i, j):
            raise TruncationOverflow(f"{self.labels[i]}·{self.labels[j]} leaves the window")
        return self.mult.get((i, j), {})

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                add_into(out, self.mul_basis(i, j), a * b)
        return out

    def is_commutative(self) -> bool:
        return all(clean(self.mult.get((i, j), {})) == clean(self.mult.get((j, i), {}))
                   for i in range(self.dim) for j in range(i + 1, self.dim)
                   if self.in_window(i, j))


def check_algebra(A) -> CheckReport:
    """Associativity and two-sided unit on all basis triples inside the window."""
    rep = CheckReport()
    n = A.dim
    verdict = Verdict(True)
    for i, j, k in product(range(n), repeat=3):
        if not A.in_window(i, j, k):
            continue
        if clean(A.mul(A.mul_basis(i, j), {k: ONE})) != clean(A.mul({i: ONE}, A.mul_basis(j, k))):
            verdict = Verdict(False, f"associativity fails at ({A.labels[i]}, {A.labels[j]}, {A.labels[k]})")
            break
    rep.add("associativity", verdict)
    verdict = Verdict(True)
    one = A.one
    for i in range(n):
        e = {i: ONE}
        if clean(A.mul(one, e)) != e or clean(A.mul(e, one)) != e:
            verdict = Verdict(False, f"unit law fails at {A.labels[i]}")
            break
    rep.add("unit", verdict)
    return rep


class FiniteCoalgebra:
    """Counital coalgebra: comult {i: {(j, k): c}}, counit tuple."""

    def __init__(self, space: FreeSpace, comult: Mapping, counit, name="C"):
        self.space = space
        self.comult = {i: clean(v) for i, v in comult.items() if clean(v)}
        self.counit = tuple(counit)
        self.name = name

    @property
    def dim(self):
        return self.space.dim

    @property
    def labels(self):
        return self.space.labels

    def delta(self, x: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            add_into(out, self.comult.get(i, {}), a)
        return out

    def eps(self, x: Mapping):
        return sum((self.counit[i] * a for i, a in x.items()), ZERO)


def check_coalgebra(C) -> CheckReport:
    rep = CheckReport()
    n = C.dim
    verdict = Verdict(True)
    for i in range(n):
        lhs, rhs = {}, {}
        for (a, b), c in C.delta({i: ONE}).items():
            add_into(lhs, {k + (b,): v for k, v in C.comult.get(a, {}).items()}, c)
            add_into(rhs, {(a,) + k: v for k, v in C.comult.get(b, {}).items()}, c)
        if lhs != rhs:
            verdict = Verdict(False, f"coassociativity fails at {C.labels[i]}")
            break
    rep.add("coassociativity", verdict)
    verdict = Verdict(True)
    for i in range(n):
        left, right = {}, {}
        for (a, b), c in C.delta({i: ONE}).items():
            add_into(left, {b: C.counit[a] * c})
            add_into(right, {a: C.counit[b] * c})
        if left != {i: ONE} or right != {i: ONE}:
            verdict = Verdict(False, f"counit law fails at {C.labels[i]}")
            break
    rep.add("counit", verdict)
    return rep


def as_algebra(H) -> FiniteAlgebra:
    """View a Hopf presentation as a plain algebra."""
    degrees = H.truncation.degrees if H.truncation else None
    cutoff = H.truncation.cutoff if H.truncation else None
    return FiniteAlgebra(H.space, H.mult, H.unit, H.name, degrees, cutoff, counit=H.counit)


def as_coalgebra(H) -> FiniteCoalgebra:
    return FiniteCoalgebra(H.space, H.comult, H.counit, H.name)
