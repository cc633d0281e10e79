"""Modules, comodules, AYD/SAYD predicates and the anti-Drinfeld double."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping

from .algebra import FiniteAlgebra, check_algebra
from .errors import (AntipodeNotInvertible, DimensionMismatch, NotAyd,
                     NotFiniteDimensional)
from .exactlin import ONE, ZERO, FreeSpace, SparseMatrix
from .hopf import HopfPresentation, dual_label, matrix_inverse_or_raise
from .util import CheckReport, Verdict, add_into, clean, scaled


@dataclass(frozen=True)
class RightModule:
    """Right action of an algebra: act[i] is the matrix of v -> v·e_i."""

    algebra: object
    space: FreeSpace
    act: tuple

    def __post_init__(self):
        object.__setattr__(self, "act", tuple(self.act))
        d = self.space.dim
        if len(self.act) != self.algebra.dim:
            raise DimensionMismatch("one action matrix per algebra basis element is required")
        for m in self.act:
            if m.shape != (d, d):
                raise DimensionMismatch(f"action matrix of shape {m.shape}, expected {(d, d)}")

    @property
    def dim(self):
        return self.space.dim

    def matrix_of(self, h: Mapping) -> SparseMatrix:
        out = SparseMatrix.zeros(self.dim, self.dim)
        for i, c in h.items():
            out = out + self.act[i].scale(c)
        return out

    def apply(self, v: Mapping, h: Mapping) -> dict:
        out: dict = {}
        for i, c in h.items():
            add_into(out, self.act[i].apply_sparse(v), c)
        return out


@dataclass(frozen=True)
class LeftComodule:
    """Left coaction v -> v<-1> ⊗ v<0>, a (dim H * dim V) x dim V matrix."""

    hopf: HopfPresentation
    space: FreeSpace
    coaction: SparseMatrix
    flags: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        d = self.space.dim
        if self.coaction.shape != (self.hopf.dim * d, d):
            raise DimensionMismatch(f"coaction of shape {self.coaction.shape}")

    @property
    def dim(self):
        return self.space.dim

    def coact(self, v: Mapping) -> dict:
        """Coaction of a vector, as {(h, w): c}."""
        d = self.dim
        return {divmod(r, d): c for r, c in self.coaction.apply_sparse(v).items()}

    def block(self, h: int) -> SparseMatrix:
        """The V -> V component of the coaction along basis element h."""
        d = self.dim
        data = {}
        for (r, c), x in self.coaction.entries.items():
            hh, w = divmod(r, d)
            if hh == h:
                data[(w, c)] = x
        return SparseMatrix(d, d, data)


@dataclass(frozen=True)
class ModuleComodule:
    module: RightModule
    comodule: LeftComodule
    flags: dict = field(default_factory=dict, compare=False)

    @property
    def hopf(self):
        return self.comodule.hopf

    @property
    def space(self):
        return self.module.space

    @property
    def dim(self):
        return self.module.dim


def coaction_from_columns(H, d: int, columns) -> SparseMatrix:
    """Coaction matrix from per-basis-vector dicts {(h, w): c}."""
    entries = {}
    for v, col in enumerate(columns):
        for (h, w), c in col.items():
            entries[(h * d + w, v)] = entries.get((h * d + w, v), ZERO) + c
    return SparseMatrix(H.dim * d, d, entries)


def trivial_module(H, space: FreeSpace | None = None) -> RightModule:
    space = space or FreeSpace(("v",))
    d = space.dim
    return RightModule(H, space, [SparseMatrix.identity(d).scale(H.counit[i]) for i in range(H.dim)])


def trivial_comodule(H, space: FreeSpace | None = None) -> LeftComodule:
    space = space or FreeSpace(("v",))
    d = space.dim
    cols = [{(h, v): c for h, c in H.one.items()} for v in range(d)]
    return LeftComodule(H, space, coaction_from_columns(H, d, cols))


def regular_right_module(A) -> RightModule:
    cols = []
    for i in range(A.dim):
        cols.append(SparseMatrix.from_columns(A.dim, [A.mul({j: ONE}, {i: ONE}) for j in range(A.dim)]))
    return RightModule(A, A.space, cols)


def check_module(H, M: RightModule) -> Verdict:
    """Unit acts as identity and (v·h)·h' = v·(hh') on all basis pairs in the window."""
    if M.algebra.dim != H.dim:
        raise DimensionMismatch("module is over an algebra of a different dimension")
    if M.matrix_of(H.one) != SparseMatrix.identity(M.dim):
        return Verdict(False, "unit does not act as the identity")
    for i, j in product(range(H.dim), repeat=2):
        if not H.in_window(i, j):
            continue
        if M.act[j] @ M.act[i] != M.matrix_of(H.mul_basis(i, j)):
            return Verdict(False, f"(v·{H.labels[i]})·{H.labels[j]} != v·({H.labels[i]}{H.labels[j]})")
    return Verdict(True)


def check_comodule(H, V: LeftComodule, within_window: bool = False) -> Verdict:
    """Counitality and coassociativity.

    With ``within_window`` the coassociativity comparison only covers tensor
    components whose filtration degrees add up to at most the cutoff, which is
    all a degree-truncated coaction can be expected to satisfy.
    """
    d = V.dim
    keep = (lambda a, b: H.in_window(a, b)) if within_window else (lambda a, b: True)
    for v in range(d):
        rv = V.coact({v: ONE})
        counit: dict = {}
        for (h, w), c in rv.items():
            add_into(counit, {w: H.counit[h] * c})
        if counit != {v: ONE}:
            return Verdict(False, f"counitality fails at {V.space.labels[v]}")
        lhs, rhs = {}, {}
        for (h, w), c in rv.items():
            for (a, b), x in H.comult.get(h, {}).items():
                if keep(a, b):
                    add_into(lhs, {(a, b, w): x * c})
            for (b, u), x in V.coact({w: ONE}).items():
                if keep(h, b):
                    add_into(rhs, {(h, b, u): x * c})
        if lhs != rhs:
            return Verdict(False, f"coassociativity fails at {V.space.labels[v]}")
    return Verdict(True)


def _acts(M: RightModule, w: int, h: int) -> dict:
    return M.act[h].column(w)


def check_ayd(H, V: ModuleComodule, within_window: bool = False) -> Verdict:
    """Module and comodule axioms, then the anti-Yetter-Drinfeld identity

        coaction(v·h) = S(h3) v<-1> h1 ⊗ v<0>·h2

    on all basis pairs. ``within_window`` compares truncated data only in
    degrees inside the window (exact for abelian or conilpotent data).
    """
    M, C = V.module, V.comodule
    verdict = check_module(H, M)
    if not verdict:
        return Verdict(False, f"module: {verdict.witness}")
    verdict = check_comodule(H, C, within_window)
    if not verdict:
        return Verdict(False, f"comodule: {verdict.witness}")
    mul = H.mul_window if within_window else H.mul
    keep = (lambda h: H.degree(h) <= H.truncation.cutoff) if H.truncation else (lambda h: True)
    d = V.dim
    coacts = [C.coact({w: ONE}) for w in range(d)]
    for v, h in product(range(d), range(H.dim)):
        lhs = clean({k: c for k, c in C.coact(M.act[h].column(v)).items() if keep(k[0])})
        rhs: dict = {}
        for (h1, h2, h3), c in H.delta_n({h: ONE}, 3).items():
            left = H.S({h3: ONE})
            for (y, w), x in coacts[v].items():
                prod = mul(mul(left, {y: ONE}), {h1: ONE})
                moved = M.act[h2].column(w)
                for a, pa in prod.items():
                    if not keep(a):
                        continue
                    for u, pu in moved.items():
                        add_into(rhs, {(a, u): c * x * pa * pu})
        if lhs != rhs:
            return Verdict(False, f"AYD condition fails at (v={V.space.labels[v]}, h={H.labels[h]})")
    return Verdict(True)


def check_stable(H, V: ModuleComodule) -> Verdict:
    """v<0>·v<-1> = v on every basis vector."""
    M, C = V.module, V.comodule
    for v in range(V.dim):
        out: dict = {}
        for (h, w), c in C.coact({v: ONE}).items():
            add_into(out, M.act[h].column(w), c)
        if out != {v: ONE}:
            return Verdict(False, f"stability fails at {V.space.labels[v]}")
    return Verdict(True)


def sayd_from_mpi(H, delta, sigma) -> ModuleComodule:
    """The one-dimensional module-comodule with v·h = δ(h)v and v -> σ⊗v."""
    space = FreeSpace(("1",))
    act = [SparseMatrix(1, 1, {(0, 0): Fraction(delta[i])}) for i in range(H.dim)]
    sig = sigma if isinstance(sigma, Mapping) else {i: Fraction(x) for i, x in enumerate(sigma) if x}
    coaction = coaction_from_columns(H, 1, [{(h, 0): c for h, c in sig.items()}])
    return ModuleComodule(RightModule(H, space, act), LeftComodule(H, space, coaction))


def module_comodule(H, labels, action: Mapping, coaction: Mapping) -> ModuleComodule:
    """Build from label data.

    action:   {(v, h): {w: c}}   v·h = sum c w   (missing pairs act by zero,
              except the unit which always acts as the identity)
    coaction: {v: {(h, w): c}}
    """
    space = FreeSpace(tuple(labels))
    d = space.dim
    ix, hx = space.index, H.space.index
    mats = []
    for h in range(H.dim):
        data = {}
        for v in range(d):
            key = (space.labels[v], H.labels[h])
            if key in action:
                for w, c in action[key].items():
                    data[(ix(w), v)] = Fraction(c)
            elif H.unit == {h: ONE}:
                data[(v, v)] = ONE
        mats.append(SparseMatrix(d, d, data))
    cols = []
    for v in range(d):
        label = space.labels[v]
        if label in coaction:
            cols.append({(hx(h), ix(w)): Fraction(c) for (h, w), c in coaction[label].items()})
        else:
            cols.append({(h, v): c for h, c in H.unit.items()})
    return ModuleComodule(RightModule(H, space, mats),
                          LeftComodule(H, space, coaction_from_columns(H, d, cols)))


# module coalgebras -----------------------------------------------------------------

@dataclass(frozen=True)
class ModuleCoalgebra:
    """A coalgebra with a left action: act[i] is the matrix of c -> e_i·c."""

    hopf: HopfPresentation
    space: FreeSpace
    comult: dict
    counit: tuple
    act: tuple
    name: str = "C"

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

    def act_on(self, h: Mapping, c: Mapping) -> dict:
        out: dict = {}
        for i, a in h.items():
            add_into(out, self.act[i].apply_sparse(c), a)
        return out


def regular_module_coalgebra(H) -> ModuleCoalgebra:
    """H acting on itself by left multiplication."""
    act = [SparseMatrix.from_columns(H.dim, [H.mul({i: ONE}, {j: ONE}) for j in range(H.dim)])
           for i in range(H.dim)]
    return ModuleCoalgebra(H, H.space, dict(H.comult), H.counit, tuple(act), H.name)


def trivial_module_coalgebra(H) -> ModuleCoalgebra:
    act = [SparseMatrix(1, 1, {(0, 0): H.counit[i]}) for i in range(H.dim)]
    return ModuleCoalgebra(H, FreeSpace(("1",)), {0: {(0, 0): ONE}}, (ONE,), tuple(act), "k")


def check_module_coalgebra(H, C: ModuleCoalgebra) -> Verdict:
    """Coalgebra axioms, left module axioms, and equivariance of Δ and ε."""
    from .algebra import check_coalgebra

    rep = check_coalgebra(C)
    if not rep:
        return Verdict(False, f"coalgebra: {rep[rep.first_failure].witness}")
    if SparseMatrix.identity(C.dim) != sum(
            (C.act[i].scale(c) for i, c in H.unit.items()), SparseMatrix.zeros(C.dim, C.dim)):
        return Verdict(False, "unit does not act as the identity")
    for i, j in product(range(H.dim), repeat=2):
        if not H.in_window(i, j):
            continue
        prod = sum((C.act[k].scale(c) for k, c in H.mul_basis(i, j).items()),
                   SparseMatrix.zeros(C.dim, C.dim))
        if C.act[i] @ C.act[j] != prod:
            return Verdict(False, f"action is not associative at ({H.labels[i]}, {H.labels[j]})")
    for h, c in product(range(H.dim), range(C.dim)):
        moved = C.act[h].column(c)
        lhs = C.delta(moved)
        rhs: dict = {}
        for (h1, h2), x in H.delta({h: ONE}).items():
            for (c1, c2), y in C.delta({c: ONE}).items():
                for a, pa in C.act[h1].column(c1).items():
                    for b, pb in C.act[h2].column(c2).items():
                        add_into(rhs, {(a, b): x * y * pa * pb})
        if clean(lhs) != rhs:
            return Verdict(False, f"Δ(h·c) != h1·c1 ⊗ h2·c2 at ({H.labels[h]}, {C.labels[c]})")
        if C.eps(moved) != H.counit[h] * C.counit[c]:
            return Verdict(False, f"ε(h·c) != ε(h)ε(c) at ({H.labels[h]}, {C.labels[c]})")
    return Verdict(True)


# the anti-Drinfeld double ---------------------------------------------------------

@dataclass(frozen=True)
class AydDouble:
    """The algebra on H*⊗H whose right modules are the AYD modules over H.

    Basis element (a, b) = f^a ⊗ e_b sits at index a * dim H + b.
    """

    hopf: HopfPresentation
    algebra: FiniteAlgebra
    rho: dict
    antipode_inverse: SparseMatrix

    def index(self, a: int, b: int) -> int:
        return a * self.hopf.dim + b

    def element(self, phi: Mapping, h: Mapping) -> dict:
        n = self.hopf.dim
        return clean({a * n + b: x * y for a, x in phi.items() for b, y in h.items()})


def _require_finite(H):
    if H.is_truncated:
        raise NotFiniteDimensional(
            f"{H.name} is truncated; the double needs a finite-dimensional Hopf algebra")


def build_ayd_double(H) -> AydDouble:
    """Multiplication

        (φ⊗h)(φ'⊗h') = φ'1(S^-1(h3)) φ'3(S²(h1)) φφ'2 ⊗ h2h'

    where φ'1(x) φ'3(y) φ'2 is the functional e_j -> φ'(x e_j y).
    """
    _require_finite(H)
    n = H.dim
    s_inv = matrix_inverse_or_raise(H.antipode, AntipodeNotInvertible)
    s2 = H.antipode @ H.antipode
    s_inv_cols, s2_cols = s_inv.columns(), s2.columns()
    # product in the dual: (f^a ψ)(e_l) = sum over Δ(e_l) of f^a(e_p) ψ(e_q)
    dual_prod: dict = {}  # a -> {q: {l: coef}}
    for l, vec in H.comult.items():
        for (p, q), c in vec.items():
            dual_prod.setdefault(p, {}).setdefault(q, {})
            dual_prod[p][q][l] = dual_prod[p][q].get(l, ZERO) + c
    mult: dict = {}
    for b in range(n):
        d3 = H.delta_n({b: ONE}, 3)
        for (h1, h2, h3), c in d3.items():
            x, y = s_inv_cols[h3], s2_cols[h1]
            # middle[j] = the functional e_j -> (x e_j y) as a vector in H
            middle = [H.mul(H.mul(x, {j: ONE}), y) for j in range(n)]
            for cc in range(n):
                psi = {j: m.get(cc, ZERO) for j, m in enumerate(middle) if m.get(cc)}
                if not psi:
                    continue
                for a in range(n):
                    phi_prod: dict = {}
                    for q, coef in psi.items():
                        add_into(phi_prod, dual_prod.get(a, {}).get(q, {}), coef)
                    if not phi_prod:
                        continue
                    for d in range(n):
                        right = H.mul_basis(h2, d)
                        key = (a * n + b, cc * n + d)
                        target = mult.setdefault(key, {})
                        for l, pl in phi_prod.items():
                            for r, pr in right.items():
                                add_into(target, {l * n + r: c * pl * pr})
    labels = tuple(f"{dual_label(H.labels[a])}⊗{H.labels[b]}" for a in range(n) for b in range(n))
    unit = clean({a * n + b: H.counit[a] * u for a in range(n) for b, u in H.unit.items()})
    algebra = FiniteAlgebra(FreeSpace(labels), mult, unit, name=f"B_AYD({H.name})")
    rho = {i * n + i: ONE for i in range(n)}
    return AydDouble(H, algebra, rho, s_inv)


def rho_element(H, D: AydDouble | None = None) -> dict:
    _require_finite(H)
    D = D or build_ayd_double(H)
    return dict(D.rho)


def lambda_map(H, element: Mapping) -> SparseMatrix:
    """λ(φ⊗h)(x) = φ(x) h, as a matrix on H."""
    n = H.dim
    data = {}
    for idx, c in element.items():
        a, b = divmod(idx, n)
        data[(b, a)] = data.get((b, a), ZERO) + c
    return SparseMatrix(n, n, data)


def check_double(D: AydDouble) -> CheckReport:
    rep = check_algebra(D.algebra)
    ok = lambda_map(D.hopf, D.rho) == SparseMatrix.identity(D.hopf.dim)
    rep.add("rho_is_identity", Verdict(ok, None if ok else "λ(ρ) != id"))
    return rep


def ayd_to_double_module(H, V: ModuleComodule, D: AydDouble | None = None,
                         check: bool = True) -> RightModule:
    """v·(φ⊗h) = φ(v<-1>) v<0>·h."""
    _require_finite(H)
    if check:
        verdict = check_ayd(H, V)
        if not verdict:
            raise NotAyd(verdict.witness)
    D = D or build_ayd_double(H)
    blocks = [V.comodule.block(a) for a in range(H.dim)]
    act = [V.module.act[b] @ blocks[a] for a in range(H.dim) for b in range(H.dim)]
    return RightModule(D.algebra, V.space, act)


def double_module_to_ayd(H, M: RightModule, D: AydDouble | None = None) -> ModuleComodule:
    """Action v·h = v·(ε⊗h); coaction v -> sum_i x_i ⊗ v·(f^i⊗1)."""
    _require_finite(H)
    n, d = H.dim, M.dim
    zero = SparseMatrix.zeros(d, d)
    act = []
    for b in range(n):
        m = zero
        for a in range(n):
            if H.counit[a]:
                m = m + M.act[a * n + b].scale(H.counit[a])
        act.append(m)
    entries = {}
    for i in range(n):
        block = zero
        for j, u in H.unit.items():
            block = block + M.act[i * n + j].scale(u)
        for (w, v), c in block.entries.items():
            entries[(i * d + w, v)] = c
    coaction = SparseMatrix(n * d, d, entries)
    return ModuleComodule(RightModule(H, M.space, act), LeftComodule(H, M.space, coaction))


def stability_via_rho(H, V, D: AydDouble | None = None) -> Verdict:
    """v·ρ = v for all v, where V is a double module or an AYD module."""
    _require_finite(H)
    if isinstance(V, ModuleComodule):
        V = ayd_to_double_module(H, V, D, check=False)
    n = H.dim
    total = SparseMatrix.zeros(V.dim, V.dim)
    for i in range(n):
        total = total + V.act[i * n + i]
    if total != SparseMatrix.identity(V.dim):
        bad = next(v for v in range(V.dim) if total.column(v) != {v: ONE})
        return Verdict(False, f"v·ρ != v at {V.space.labels[bad]}")
    return Verdict(True)


def structure_tensors(V: ModuleComodule):
    """Exact snapshot of action and coaction, for roundtrip comparisons."""
    return (tuple(V.module.act), V.comodule.coaction)
