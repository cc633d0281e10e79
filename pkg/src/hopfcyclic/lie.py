"""Lie algebras by structure constants, and PBW straightening in U(g)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Mapping

from .exactlin import ZERO, FreeSpace, SparseMatrix, to_fraction
from .errors import DimensionMismatch
from .util import Verdict, add_into, clean


@dataclass(frozen=True)
class LieDatum:
    """A Lie algebra on a labelled basis.

    ``bracket`` maps index pairs (i, j) with i < j to sparse vectors; the
    remaining brackets follow from antisymmetry.
    """

    space: FreeSpace
    bracket: Mapping = field(default_factory=dict)
    name: str = "g"

    def __post_init__(self):
        table = {}
        for (i, j), vec in dict(self.bracket).items():
            vec = clean({k: to_fraction(v) for k, v in dict(vec).items()})
            if i == j:
                if vec:
                    raise DimensionMismatch(f"[{i},{i}] must vanish")
                continue
            if not vec:
                continue
            key, sign = ((i, j), 1) if i < j else ((j, i), -1)
            if key in table and table[key] != {k: sign * v for k, v in vec.items()}:
                raise DimensionMismatch(f"inconsistent brackets for {key}")
            table[key] = {k: sign * v for k, v in vec.items()}
        object.__setattr__(self, "bracket", table)

    @classmethod
    def from_labels(cls, labels, brackets: Mapping, name="g"):
        """``brackets`` maps label pairs to dicts label -> coefficient."""
        space = FreeSpace(tuple(labels))
        table = {}
        for (a, b), vec in brackets.items():
            table[(space.index(a), space.index(b))] = {
                space.index(k): to_fraction(v) for k, v in vec.items()}
        return cls(space, table, name)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def labels(self):
        return self.space.labels

    def br(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return dict(self.bracket.get((i, j), {}))
        return {k: -v for k, v in self.bracket.get((j, i), {}).items()}

    def br_vec(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                add_into(out, self.br(i, j), a * b)
        return clean(out)

    def ad_matrix(self, i: int) -> SparseMatrix:
        """Matrix of ad_{X_i} = [X_i, -]."""
        cols = [self.br(i, j) for j in range(self.dim)]
        return SparseMatrix.from_columns(self.dim, cols)

    def trace_ad(self) -> tuple:
        return tuple(sum((self.br(i, j).get(j, ZERO) for j in range(self.dim)), ZERO)
                     for i in range(self.dim))

    def is_abelian(self) -> bool:
        return not self.bracket


def check_jacobi(g: LieDatum) -> Verdict:
    """Jacobi identity on all basis triples (antisymmetry holds by storage)."""
    n = g.dim
    for i, j, k in combinations(range(n), 3):
        total: dict = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            add_into(total, g.br_vec({a: 1}, g.br(b, c)))
        if clean(total):
            return Verdict(False, f"jacobi fails on ({g.labels[i]}, {g.labels[j]}, {g.labels[k]})")
    return Verdict(True)


def pbw_monomials(dim: int, max_degree: int) -> list[tuple]:
    """Exponent vectors of total degree <= max_degree, by degree then reverse-lex."""
    out = []
    for d in range(max_degree + 1):
        level = [e for e in product(range(d + 1), repeat=dim) if sum(e) == d]
        level.sort(reverse=True)
        out.extend(level)
    return out


def monomial_label(labels, exps) -> str:
    if not any(exps):
        return "1"
    parts = []
    for name, e in zip(labels, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "·".join(parts)


def word_of(exps) -> tuple:
    return tuple(i for i, e in enumerate(exps) for _ in range(e))


def exps_of(word, dim) -> tuple:
    e = [0] * dim
    for i in word:
        e[i] += 1
    return tuple(e)


class Straightener:
    """Rewrites products of generators of U(g) into PBW order.

    Elements are dicts from sorted generator words (tuples of indices) to
    Fractions. The rewriting is exact; no truncation happens here.
    """

    def __init__(self, g: LieDatum):
        self.g = g
        self._cache: dict = {}

    def normal_form(self, word: tuple) -> dict:
        if word in self._cache:
            return self._cache[word]
        for p in range(len(word) - 1):
            a, b = word[p], word[p + 1]
            if a > b:
                out: dict = {}
                swapped = word[:p] + (b, a) + word[p + 2:]
                add_into(out, self.normal_form(swapped))
                for k, c in self.g.br(a, b).items():
                    add_into(out, self.normal_form(word[:p] + (k,) + word[p + 2:]), c)
                out = clean(out)
                break
        else:
            out = {word: Fraction(1)}
        self._cache[word] = out
        return out

    def multiply(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for w1, a in x.items():
            for w2, b in y.items():
                add_into(out, self.normal_form(w1 + w2), a * b)
        return clean(out)
