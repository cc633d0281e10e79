"""Lie algebra comodules, their lifts to U(g), and the two Lie cyclic bicomplexes."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Mapping

from .algebra import FiniteAlgebra
from .cyclic import CohomologyReport, MixedComplex, hc_cohomology, hp_cohomology
from .errors import (DimensionMismatch, NotAComodule, NotASubalgebra, NotAyd,
                     NotCompatibleCoefficients)
from .exactlin import ONE, ZERO, Echelon, FreeSpace, SparseMatrix, cohomology_at, kernel_basis, solve
from .hopf import primitive_projection, truncated_uea, uea_word
from .lie import LieDatum, check_jacobi, monomial_label, pbw_monomials
from .sayd import LeftComodule, ModuleComodule, RightModule
from .util import CheckReport, Verdict, add_into, clean

__all__ = [
    "LieComodule", "LieModuleComodule", "TruncatedSymmetricAlgebra", "check_jacobi",
    "check_lie_module", "check_lie_comodule", "comodule_to_sym_module",
    "sym_module_to_comodule", "koszul_coaction", "koszul_module_comodule",
    "exp_coaction", "project_ug_comodule_to_g", "check_lie_ayd", "check_lie_stable",
    "check_unimodular_stable", "lie_ayd_to_ug_ayd", "w_complex", "c_complex",
    "lie_hc", "lie_hp", "relative_ce_cohomology", "lie_module_comodule",
]


@dataclass(frozen=True)
class LieComodule:
    """Left g-coaction v -> Σ X_i ⊗ block_i(v), stored as a (dim g · dim V) x dim V matrix."""

    lie: LieDatum
    space: FreeSpace
    coaction: SparseMatrix
    flags: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        d = self.space.dim
        if self.coaction.shape != (self.lie.dim * d, d):
            raise DimensionMismatch(f"g-coaction of shape {self.coaction.shape}")

    @property
    def dim(self):
        return self.space.dim

    def coact(self, v: Mapping) -> dict:
        d = self.dim
        return {divmod(r, d): c for r, c in self.coaction.apply_sparse(v).items()}

    def block(self, i: int) -> SparseMatrix:
        d = self.dim
        data = {}
        for (r, c), x in self.coaction.entries.items():
            a, w = divmod(r, d)
            if a == i:
                data[(w, c)] = x
        return SparseMatrix(d, d, data)

    def blocks(self) -> list[SparseMatrix]:
        return [self.block(i) for i in range(self.lie.dim)]

    @classmethod
    def from_blocks(cls, g: LieDatum, space: FreeSpace, blocks, flags=None):
        d = space.dim
        entries = {}
        for i, B in enumerate(blocks):
            for (w, v), x in B.entries.items():
                entries[(i * d + w, v)] = x
        return cls(g, space, SparseMatrix(g.dim * d, d, entries), dict(flags or {}))

    @classmethod
    def zero(cls, g: LieDatum, space: FreeSpace):
        return cls(g, space, SparseMatrix.zeros(g.dim * space.dim, space.dim))


@dataclass(frozen=True)
class LieModuleComodule:
    """Right g-module (act[i] is v -> v·X_i) together with a g-coaction on the same space."""

    lie: LieDatum
    space: FreeSpace
    act: tuple
    comodule: LieComodule

    def __post_init__(self):
        object.__setattr__(self, "act", tuple(self.act))
        d = self.space.dim
        if len(self.act) != self.lie.dim or any(m.shape != (d, d) for m in self.act):
            raise DimensionMismatch("one d x d action matrix per Lie generator is required")
        if self.comodule.space.dim != d:
            raise DimensionMismatch("module and comodule live on different spaces")

    @property
    def dim(self):
        return self.space.dim

    @classmethod
    def trivial(cls, g: LieDatum, space: FreeSpace | None = None):
        space = space or FreeSpace(("v",))
        zero = SparseMatrix.zeros(space.dim, space.dim)
        return cls(g, space, [zero] * g.dim, LieComodule.zero(g, space))


def lie_module_comodule(g: LieDatum, labels, action: Mapping | None = None,
                        coaction: Mapping | None = None) -> LieModuleComodule:
    """Build from labels: action {(v, X): {w: c}}, coaction {v: {(X, w): c}}."""
    space = FreeSpace(tuple(labels))
    d = space.dim
    acts = [dict() for _ in range(g.dim)]
    for (v, x), image in (action or {}).items():
        vi, xi = space.index(v), g.space.index(x)
        for w, c in image.items():
            acts[xi][(space.index(w), vi)] = Fraction(c)
    entries = {}
    for v, image in (coaction or {}).items():
        vi = space.index(v)
        for (x, w), c in image.items():
            entries[(g.space.index(x) * d + space.index(w), vi)] = Fraction(c)
    comodule = LieComodule(g, space, SparseMatrix(g.dim * d, d, entries))
    return LieModuleComodule(g, space, [SparseMatrix(d, d, a) for a in acts], comodule)


def _comodule_of(V) -> LieComodule:
    return V.comodule if isinstance(V, LieModuleComodule) else V


def _label(g: LieDatum, V, i: int, v: int) -> str:
    return f"(v={V.space.labels[v]}, X={g.labels[i]})"


def check_lie_module(g: LieDatum, act) -> Verdict:
    """v·[X,Y] = (v·X)·Y - (v·Y)·X on basis pairs."""
    n = g.dim
    for i, j in combinations(range(n), 2):
        lhs = SparseMatrix.zeros(*act[0].shape)
        for k, c in g.br(i, j).items():
            lhs = lhs + act[k].scale(c)
        if lhs != act[j] @ act[i] - act[i] @ act[j]:
            return Verdict(False, f"module law fails at ({g.labels[i]}, {g.labels[j]})")
    return Verdict(True)


def check_lie_comodule(g: LieDatum, V) -> Verdict:
    """The antisymmetrised double coaction vanishes.

    In block form the double coaction is Σ X_a ⊗ X_b ⊗ B_b B_a v, so the
    condition says the blocks commute pairwise.
    """
    C = _comodule_of(V)
    if C.lie.dim != g.dim:
        raise DimensionMismatch("comodule over a different Lie algebra")
    blocks = C.blocks()
    for a, b in combinations(range(g.dim), 2):
        diff = blocks[b] @ blocks[a] - blocks[a] @ blocks[b]
        if not diff.is_zero():
            (w, v), _ = min(diff.entries.items())
            return Verdict(False, f"{g.labels[a]}∧{g.labels[b]} survives on {C.space.labels[v]}")
    return Verdict(True)


# symmetric algebra ----------------------------------------------------------------

class TruncatedSymmetricAlgebra(FiniteAlgebra):
    """S(g*) on monomials of degree <= q_max in the dual basis f^i.

    ``mul`` raises TruncationOverflow past the cutoff; ``mul_truncating``
    drops those terms instead.
    """

    def __init__(self, g: LieDatum, q_max: int):
        self.lie = g
        self.q_max = q_max
        self.exps = pbw_monomials(g.dim, q_max)
        self._index = {e: i for i, e in enumerate(self.exps)}
        gens = tuple(f"{x}*" for x in g.labels)
        labels = tuple(monomial_label(gens, e) for e in self.exps)
        mult = {}
        for i, a in enumerate(self.exps):
            for j, b in enumerate(self.exps):
                if sum(a) + sum(b) <= q_max:
                    mult[(i, j)] = {self._index[tuple(x + y for x, y in zip(a, b))]: ONE}
        degrees = tuple(sum(e) for e in self.exps)
        super().__init__(FreeSpace(labels), mult, {0: ONE}, name=f"S({g.name}*)_{q_max}",
                         degrees=degrees, cutoff=q_max)

    def monomial(self, exps) -> int:
        return self._index[tuple(exps)]

    def generator(self, i: int) -> int:
        return self._index[tuple(1 if k == i else 0 for k in range(self.lie.dim))]

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def times_generator(self, r: int, i: int):
        """Index of R·f^i, or None past the cutoff."""
        e = list(self.exps[r])
        e[i] += 1
        return self._index.get(tuple(e))

    def mul_truncating(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                if self.in_window(i, j):
                    add_into(out, self.mult.get((i, j), {}), a * b)
        return clean(out)


def comodule_to_sym_module(g: LieDatum, V, q_max: int) -> RightModule:
    """v·f^i = f^i(v[-1]) v[0]; monomials act by iterating the generators."""
    C = _comodule_of(V)
    verdict = check_lie_comodule(g, C)
    if not verdict:
        raise NotAComodule(f"generator actions do not commute: {verdict.witness}")
    S = TruncatedSymmetricAlgebra(g, q_max)
    blocks = C.blocks()
    d = C.dim
    act = []
    for e in S.exps:
        m = SparseMatrix.identity(d)
        for i, k in enumerate(e):
            if k:
                m = blocks[i].power(k) @ m
        act.append(m)
    return RightModule(S, C.space, act)


def sym_module_to_comodule(g: LieDatum, M: RightModule) -> LieComodule:
    """v -> Σ_i X_i ⊗ v·f^i."""
    S = M.algebra
    return LieComodule.from_blocks(g, M.space, [M.act[S.generator(i)] for i in range(g.dim)])


def koszul_coaction(g: LieDatum, q_max: int) -> LieComodule:
    """R -> Σ_i X_i ⊗ R f^i on S(g*) truncated at q_max; the top degree maps to zero."""
    S = TruncatedSymmetricAlgebra(g, q_max)
    d = S.dim
    entries = {}
    for r in range(d):
        for i in range(g.dim):
            t = S.times_generator(r, i)
            if t is not None:
                entries[(i * d + t, r)] = ONE
    return LieComodule(g, S.space, SparseMatrix(g.dim * d, d, entries),
                       {"top_degree_dropped": True, "q_max": q_max})


def coadjoint_matrices(g: LieDatum, S: TruncatedSymmetricAlgebra) -> list[SparseMatrix]:
    """Right coadjoint action of g on S(g*), extended as derivations.

    On generators (f·X)(Y) = f([X, Y]), so f^k·X_i = Σ_j c_ij^k f^j.
    """
    n = g.dim
    on_gen = [[{j: g.br(i, j).get(k, ZERO) for j in range(n) if g.br(i, j).get(k)}
               for k in range(n)] for i in range(n)]
    mats = []
    for i in range(n):
        cols = []
        for e in S.exps:
            col: dict = {}
            for k, power in enumerate(e):
                if not power:
                    continue
                rest = list(e)
                rest[k] -= 1
                for j, c in on_gen[i][k].items():
                    new = list(rest)
                    new[j] += 1
                    col[S.monomial(new)] = col.get(S.monomial(new), ZERO) + power * c
            cols.append(clean(col))
        mats.append(SparseMatrix.from_columns(S.dim, cols))
    return mats


def koszul_module_comodule(g: LieDatum, q_max: int) -> LieModuleComodule:
    C = koszul_coaction(g, q_max)
    S = TruncatedSymmetricAlgebra(g, q_max)
    return LieModuleComodule(g, C.space, coadjoint_matrices(g, S), C)


# U(g) lifts ------------------------------------------------------------------------

def exp_coaction(g: LieDatum, V, N: int) -> LeftComodule:
    """v -> Σ_k (1/k!) v[-k]…v[-1] ⊗ v[0] in the degree <= N truncation of U(g).

    flags["exact"] is True when the iterated coaction dies by degree N + 1,
    so no term of the series was cut off.
    """
    C = _comodule_of(V)
    verdict = check_lie_comodule(g, C)
    if not verdict:
        raise NotAComodule(verdict.witness)
    U = truncated_uea(g, N)
    d = C.dim
    blocks = C.blocks()
    entries: dict = {}
    exact = True
    for v in range(d):
        level = {((), v): ONE}
        for k in range(N + 2):
            if k > N:
                exact = exact and not level
                break
            scale = Fraction(1, factorial(k))
            for (word, w), c in level.items():
                for h, x in uea_word(U, word).items():
                    key = (h * d + w, v)
                    entries[key] = entries.get(key, ZERO) + scale * c * x
            nxt: dict = {}
            for (word, w), c in level.items():
                for a in range(g.dim):
                    for u, x in blocks[a].column(w).items():
                        key = (word + (a,), u)
                        nxt[key] = nxt.get(key, ZERO) + c * x
            level = clean(nxt)
    coaction = SparseMatrix(U.dim * d, d, entries)
    return LeftComodule(U, C.space, coaction, {"exact": exact, "window": N})


def project_ug_comodule_to_g(g: LieDatum, W: LeftComodule) -> LieComodule:
    """Compose the coaction with the projection of U(g) onto g along symmetrized products."""
    U = W.hopf
    P = primitive_projection(U)
    zero = SparseMatrix.zeros(W.dim, W.dim)
    blocks = [zero] * g.dim
    for (r, h), c in P.entries.items():
        word = U.extra["words"][r]
        if len(word) != 1:
            raise DimensionMismatch(f"projection left the degree-one part at {U.labels[r]}")
        blocks[word[0]] = blocks[word[0]] + W.block(h).scale(c)
    return LieComodule.from_blocks(g, W.space, blocks)


def check_lie_ayd(g: LieDatum, V: LieModuleComodule) -> Verdict:
    """∇(v·X) = v[-1] ⊗ v[0]·X + [v[-1], X] ⊗ v[0]."""
    verdict = check_lie_module(g, V.act)
    if not verdict:
        return Verdict(False, f"module: {verdict.witness}")
    verdict = check_lie_comodule(g, V)
    if not verdict:
        return Verdict(False, f"comodule: {verdict.witness}")
    C = V.comodule
    for v in range(V.dim):
        cv = C.coact({v: ONE})
        for i in range(g.dim):
            lhs = C.coact(V.act[i].column(v))
            rhs: dict = {}
            for (a, w), c in cv.items():
                for u, x in V.act[i].column(w).items():
                    add_into(rhs, {(a, u): x}, c)
                for k, x in g.br(a, i).items():
                    add_into(rhs, {(k, w): x}, c)
            if clean(lhs) != clean(rhs):
                return Verdict(False, f"Lie AYD condition fails at {_label(g, V, i, v)}")
    return Verdict(True)


def _first_nonzero_column(M: SparseMatrix):
    return min(c for (_, c) in M.entries) if M.entries else None


def check_lie_stable(g: LieDatum, V: LieModuleComodule) -> Verdict:
    """v[0]·v[-1] = 0, i.e. Σ_a A_a B_a = 0."""
    total = SparseMatrix.zeros(V.dim, V.dim)
    for a, B in enumerate(V.comodule.blocks()):
        total = total + V.act[a] @ B
    v = _first_nonzero_column(total)
    if v is not None:
        return Verdict(False, f"v[0]·v[-1] != 0 at {V.space.labels[v]}")
    return Verdict(True)


def check_unimodular_stable(g: LieDatum, V: LieModuleComodule) -> Verdict:
    """Σ_k (v·X_k)·f^k = 0, i.e. Σ_k B_k A_k = 0."""
    total = SparseMatrix.zeros(V.dim, V.dim)
    for k, B in enumerate(V.comodule.blocks()):
        total = total + B @ V.act[k]
    v = _first_nonzero_column(total)
    if v is not None:
        return Verdict(False, f"Σ (v·X_k)·f^k != 0 at {V.space.labels[v]}")
    return Verdict(True)


def lie_ayd_to_ug_ayd(g: LieDatum, V: LieModuleComodule, N: int) -> ModuleComodule:
    """The U(g) module/comodule: action extended multiplicatively, coaction exponentiated."""
    verdict = check_lie_ayd(g, V)
    if not verdict:
        raise NotAyd(verdict.witness)
    comodule = exp_coaction(g, V.comodule, N)
    U = comodule.hopf
    d = V.dim
    act = []
    for word in U.extra["words"]:
        m = SparseMatrix.identity(d)
        for i in word:
            m = V.act[i] @ m
        act.append(m)
    module = RightModule(U, V.space, act)
    return ModuleComodule(module, comodule, dict(comodule.flags))


# alternating cochains and chains ---------------------------------------------------

def _wedge_basis(n: int, degree: int) -> list[tuple]:
    return list(combinations(range(n), degree))


def _sort_sign(seq) -> tuple[int, tuple] | tuple[int, None]:
    """Sign of the sorting permutation, or (0, None) with a repeated index."""
    if len(set(seq)) != len(seq):
        return 0, None
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign, tuple(seq)


class _Graded:
    """Index bookkeeping for ∧^n ⊗ V with wedge monomials in lexicographic order."""

    def __init__(self, n: int, d: int):
        self.n, self.d = n, d
        self.bases = [_wedge_basis(n, q) for q in range(n + 1)]
        self.pos = [{I: k for k, I in enumerate(b)} for b in self.bases]

    def dim(self, q: int) -> int:
        return len(self.bases[q]) * self.d if 0 <= q <= self.n else 0

    def index(self, I: tuple, v: int) -> int:
        return self.pos[len(I)][I] * self.d + v

    def labels(self, q: int, names, vnames, star: bool) -> tuple:
        out = []
        for I in self.bases[q]:
            wedge = "∧".join(f"{names[i]}{'*' if star else ''}" for i in I) or "1"
            out.extend(f"{wedge}⊗{w}" for w in vnames)
        return tuple(out)


def _ce_cochain_map(g: LieDatum, act, G: _Graded, q: int) -> SparseMatrix:
    """d_CE : W^q -> W^{q+1} on the basis (I, v) of ∧^q g* ⊗ V."""
    entries: dict = {}
    for J in G.bases[q + 1] if q + 1 <= G.n else []:
        for a in range(q + 1):
            for b in range(a + 1, q + 1):
                rest = J[:a] + J[a + 1:b] + J[b + 1:]
                for k, c in g.br(J[a], J[b]).items():
                    sign, I = _sort_sign((k,) + rest)
                    if not sign:
                        continue
                    s = (-1) ** (a + b) * sign * c
                    for v in range(G.d):
                        key = (G.index(J, v), G.index(I, v))
                        entries[key] = entries.get(key, ZERO) + s
        for a in range(q + 1):
            I = J[:a] + J[a + 1:]
            s = (-1) ** (a + 1)
            for (w, v), x in act[J[a]].entries.items():
                key = (G.index(J, w), G.index(I, v))
                entries[key] = entries.get(key, ZERO) + s * x
    return SparseMatrix(G.dim(q + 1), G.dim(q), entries)


def _koszul_cochain_map(g: LieDatum, blocks, G: _Graded, q: int) -> SparseMatrix:
    """d_K : W^{q} -> W^{q-1}, (d_K β)(Y..) = Σ_i β(X_i, Y..)·f^i."""
    entries: dict = {}
    for J in G.bases[q - 1]:
        for i in range(g.dim):
            sign, I = _sort_sign((i,) + J)
            if not sign:
                continue
            for (w, v), x in blocks[i].entries.items():
                key = (G.index(J, w), G.index(I, v))
                entries[key] = entries.get(key, ZERO) + sign * x
    return SparseMatrix(G.dim(q - 1), G.dim(q), entries)


def _ce_chain_map(g: LieDatum, act, G: _Graded, q: int) -> SparseMatrix:
    """∂_CE : C_q -> C_{q-1} on ∧^q g ⊗ V, the bracket sum taken over j < k."""
    entries: dict = {}
    for I in G.bases[q]:
        for j in range(q):
            rest = I[:j] + I[j + 1:]
            s = (-1) ** j          # positions count from 0
            for (w, v), x in act[I[j]].entries.items():
                key = (G.index(rest, w), G.index(I, v))
                entries[key] = entries.get(key, ZERO) + s * x
        for j in range(q):
            for k in range(j + 1, q):
                rest = I[:j] + I[j + 1:k] + I[k + 1:]
                for m, c in g.br(I[j], I[k]).items():
                    sign, J = _sort_sign((m,) + rest)
                    if not sign:
                        continue
                    s = (-1) ** (j + k) * sign * c
                    for v in range(G.d):
                        key = (G.index(J, v), G.index(I, v))
                        entries[key] = entries.get(key, ZERO) + s
    return SparseMatrix(G.dim(q - 1), G.dim(q), entries)


def _koszul_chain_map(g: LieDatum, blocks, G: _Graded, q: int) -> SparseMatrix:
    """∂_K : C_q -> C_{q+1}, Y ⊗ v -> v[-1] ∧ Y ⊗ v[0]."""
    entries: dict = {}
    for I in G.bases[q]:
        for a in range(g.dim):
            sign, J = _sort_sign((a,) + I)
            if not sign:
                continue
            for (w, v), x in blocks[a].entries.items():
                key = (G.index(J, w), G.index(I, v))
                entries[key] = entries.get(key, ZERO) + sign * x
    return SparseMatrix(G.dim(q + 1), G.dim(q), entries)


@dataclass
class LieBicomplex:
    """A Lie cyclic bicomplex together with the mixed complex it defines.

    ``mixed.b`` raises degree and ``mixed.B`` lowers it; for W these are
    d_CE and d_K, for C they are ∂_K and ∂_CE.
    """

    kind: str
    mixed: MixedComplex
    labels: tuple
    lie: LieDatum
    coefficients: LieModuleComodule

    @property
    def dims(self):
        return self.mixed.dims

    def anticommutator(self, q: int) -> SparseMatrix:
        """b B + B b on degree q."""
        mc = self.mixed
        out = SparseMatrix.zeros(mc.dims[q], mc.dims[q])
        if q < mc.top:
            out = out + mc.B_map(q + 1) @ mc.b_map(q)
        if q >= 1:
            out = out + mc.b_map(q - 1) @ mc.B_map(q)
        return out

    def check(self) -> CheckReport:
        mc = self.mixed
        rep = CheckReport()
        top = mc.top
        bad = [q for q in range(top - 1) if not (mc.b_map(q + 1) @ mc.b_map(q)).is_zero()]
        rep.add("b_squared", Verdict(not bad, f"fails out of degree {bad[0]}" if bad else None))
        bad = [q for q in range(2, top + 1) if not (mc.B_map(q - 1) @ mc.B_map(q)).is_zero()]
        rep.add("B_squared", Verdict(not bad, f"fails out of degree {bad[0]}" if bad else None))
        bad = [q for q in range(top + 1) if not self.anticommutator(q).is_zero()]
        rep.add("anticommutator", Verdict(not bad, f"fails on degree {bad[0]}" if bad else None))
        return rep


def _coefficients(g: LieDatum, V) -> LieModuleComodule:
    if isinstance(V, LieModuleComodule):
        return V
    raise DimensionMismatch("Lie bicomplexes need a LieModuleComodule")


def w_complex(g: LieDatum, V: LieModuleComodule, N: int | None = None) -> LieBicomplex:
    """W^n = ∧^n g* ⊗ V with d_CE (up) and d_K (down), all degrees 0..dim g.

    ``N`` only bounds the degrees later reported by lie_hc.
    """
    V = _coefficients(g, V)
    G = _Graded(g.dim, V.dim)
    blocks = V.comodule.blocks()
    dims = tuple(G.dim(q) for q in range(g.dim + 1))
    b = {q: _ce_cochain_map(g, V.act, G, q) for q in range(g.dim)}
    B = {q: _koszul_cochain_map(g, blocks, G, q) for q in range(1, g.dim + 1)}
    labels = tuple(G.labels(q, g.labels, V.space.labels, True) for q in range(g.dim + 1))
    return LieBicomplex("W", MixedComplex(dims, b, B, bounded=True), labels, g, V)


def c_complex(g: LieDatum, V: LieModuleComodule, N: int | None = None) -> LieBicomplex:
    """C_n = ∧^n g ⊗ V with ∂_K (up) and ∂_CE (down)."""
    V = _coefficients(g, V)
    G = _Graded(g.dim, V.dim)
    blocks = V.comodule.blocks()
    dims = tuple(G.dim(q) for q in range(g.dim + 1))
    b = {q: _koszul_chain_map(g, blocks, G, q) for q in range(g.dim)}
    B = {q: _ce_chain_map(g, V.act, G, q) for q in range(1, g.dim + 1)}
    labels = tuple(G.labels(q, g.labels, V.space.labels, False) for q in range(g.dim + 1))
    return LieBicomplex("C", MixedComplex(dims, b, B, bounded=True), labels, g, V)


def _compatible(g: LieDatum, V: LieModuleComodule, which: str) -> LieBicomplex:
    which = which.upper()
    if which not in ("W", "C"):
        raise ValueError(f"unknown Lie complex {which!r}")
    verdict = check_lie_ayd(g, V)
    if verdict:
        verdict = (check_unimodular_stable if which == "W" else check_lie_stable)(g, V)
    if not verdict:
        need = "unimodular SAYD" if which == "W" else "SAYD"
        raise NotCompatibleCoefficients(f"{which}-complex needs {need} coefficients: {verdict.witness}")
    return (w_complex if which == "W" else c_complex)(g, V)


def lie_hc(g: LieDatum, V: LieModuleComodule, N: int, which: str = "W") -> CohomologyReport:
    """Total cohomology of the first-quadrant bicomplex in degrees 0..N-1."""
    X = _compatible(g, V, which)
    rep = hc_cohomology(X.mixed, N)
    return CohomologyReport("HC", rep.dims, rep.representatives, None, {"complex": X.kind})


def lie_hp(g: LieDatum, V: LieModuleComodule, N: int | None = None, which: str = "W") -> CohomologyReport:
    """Periodic version; exact because the complexes stop at dim g."""
    X = _compatible(g, V, which)
    rep = hp_cohomology(X.mixed)
    return CohomologyReport("HP", rep.dims, rep.representatives, rep.stabilization_flag,
                            {"complex": X.kind})


# relative Lie algebra cohomology ---------------------------------------------------

def _span_check(g: LieDatum, vectors: list[dict]) -> Verdict:
    ech = Echelon(g.dim)
    for vec in vectors:
        ech.add(vec)
    for x in vectors:
        for y in vectors:
            if not ech.contains(g.br_vec(x, y)):
                return Verdict(False, "bracket leaves the subspace")
    return Verdict(True)


def _contraction(G: _Graded, z: Mapping, q: int) -> SparseMatrix:
    """ι_Z : W^q -> W^{q-1}, (ι_Z α)(Y..) = α(Z, Y..)."""
    entries: dict = {}
    for J in G.bases[q - 1]:
        for i, c in z.items():
            sign, I = _sort_sign((i,) + J)
            if not sign:
                continue
            for v in range(G.d):
                key = (G.index(J, v), G.index(I, v))
                entries[key] = entries.get(key, ZERO) + sign * c
    return SparseMatrix(G.dim(q - 1), G.dim(q), entries)


def _stack(mats, cols: int) -> SparseMatrix:
    out = SparseMatrix.zeros(0, cols)
    for m in mats:
        out = out.vstack(m)
    return out


def relative_ce_cohomology(g: LieDatum, k_sub, V, N: int | None = None) -> CohomologyReport:
    """Cohomology of the k-basic cochains in ∧g* ⊗ V under d_CE.

    A cochain is basic when every contraction ι_Z with Z in k_sub vanishes on
    it and on its differential (so the Lie derivative vanishes too). ``V``
    is anything with an ``act`` tuple of right-action matrices.
    """
    k_sub = [clean({i: Fraction(c) for i, c in z.items()}) for z in k_sub]
    k_sub = [z for z in k_sub if z]
    verdict = _span_check(g, k_sub)
    if not verdict:
        raise NotASubalgebra(verdict.witness)
    verdict = check_lie_module(g, V.act)
    if not verdict:
        raise NotCompatibleCoefficients(verdict.witness)
    d = V.act[0].rows if V.act else V.dim
    G = _Graded(g.dim, d)
    top = g.dim if N is None else min(N, g.dim)
    diffs = {q: _ce_cochain_map(g, V.act, G, q) for q in range(g.dim)}
    diffs[g.dim] = SparseMatrix.zeros(0, G.dim(g.dim))
    embeds = {}
    for q in range(g.dim + 1):
        conds = []
        for z in k_sub:
            if q >= 1:
                conds.append(_contraction(G, z, q))
            if q + 1 <= g.dim:
                conds.append(_contraction(G, z, q + 1) @ diffs[q])
        K = kernel_basis(_stack(conds, G.dim(q))) if conds else None
        embeds[q] = (SparseMatrix.identity(G.dim(q)) if K is None
                     else SparseMatrix.from_columns(G.dim(q), [
                         {r: x for r, x in enumerate(vec) if x} for vec in K]))
    restricted = {}
    for q in range(g.dim + 1):
        image = diffs[q] @ embeds[q]
        if q == g.dim:
            restricted[q] = SparseMatrix.zeros(0, embeds[q].cols)
            continue
        M = solve(embeds[q + 1], image)
        if M is None:
            raise DimensionMismatch("d_CE does not preserve basic cochains")
        restricted[q] = M
    dims, reps = [], {}
    for q in range(top + 1):
        prev = restricted[q - 1] if q >= 1 else SparseMatrix.zeros(embeds[0].cols, 0)
        betti, r = cohomology_at(prev, restricted[q])
        dims.append(betti)
        reps[q] = [embeds[q].apply(vec) for vec in r]
    return CohomologyReport("relative CE", tuple(dims), reps, None,
                            {"subalgebra_dim": len(k_sub)})
