"""Hopf-cyclic cocyclic modules, the b and B operators, and HC/HP in a window."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Callable, Mapping

from .errors import (DimensionMismatch, NotFiniteDimensional, NotSayd,
                     OperatorDoesNotDescend, WindowExceeded)
from .exactlin import ONE, ZERO, FreeSpace, Quotient, SparseMatrix, block_matrix, cohomology_at
from .sayd import (ModuleCoalgebra, ModuleComodule, check_ayd, check_module_coalgebra,
                   check_stable, regular_module_coalgebra)
from .util import CheckReport, Verdict, add_into, clean


# tensor bases ---------------------------------------------------------------------

class TensorBasis:
    """Row-major mixed-radix indexing of a tensor product of free spaces."""

    def __init__(self, dims):
        self.dims = tuple(dims)
        self.size = prod(self.dims)
        self._strides = []
        s = 1
        for d in reversed(self.dims):
            self._strides.append(s)
            s *= d
        self._strides.reverse()

    def encode(self, key) -> int:
        return sum(k * s for k, s in zip(key, self._strides))

    def keys(self):
        return product(*(range(d) for d in self.dims))

    def labels(self, spaces) -> tuple:
        return tuple("⊗".join(sp.labels[i] for sp, i in zip(spaces, key)) for key in self.keys())


def operator_matrix(dom: TensorBasis, cod: TensorBasis, image: Callable) -> SparseMatrix:
    """Matrix of the linear map sending basis key -> image(key) (a {key: c} dict)."""
    entries = {}
    for col, key in enumerate(dom.keys()):
        for k, c in image(key).items():
            if c:
                r = cod.encode(k)
                entries[(r, col)] = entries.get((r, col), ZERO) + c
    return SparseMatrix(cod.size, dom.size, entries)


# cocyclic spaces ------------------------------------------------------------------

@dataclass
class CocyclicSpace:
    """Spaces C^0..C^N with faces, degeneracies and cyclic operators.

    faces[n][i]:        C^{n-1} -> C^n,   0 <= i <= n,     1 <= n <= N
    degeneracies[n][j]: C^n -> C^{n-1},   0 <= j <= n-1,   1 <= n <= N
    tau[n]:             C^n -> C^n,                        0 <= n <= N
    """

    window: int
    spaces: list
    faces: dict
    degeneracies: dict
    tau: dict
    name: str = "X"
    flags: dict = field(default_factory=dict)

    def dim(self, n: int) -> int:
        return self.spaces[n].dim

    def dims(self) -> tuple:
        return tuple(sp.dim for sp in self.spaces)


@dataclass(frozen=True)
class CohomologyReport:
    mode: str
    dims: tuple
    representatives: dict = field(default_factory=dict, compare=False)
    stabilization_flag: bool | None = None
    flags: dict = field(default_factory=dict, compare=False)

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "dims": list(self.dims),
            "stabilization_flag": self.stabilization_flag,
            "flags": dict(sorted(self.flags.items())),
        }


def _require_sayd(H, V):
    verdict = check_ayd(H, V)
    if not verdict:
        raise NotSayd(f"coefficients are not AYD: {verdict.witness}")
    verdict = check_stable(H, V)
    if not verdict:
        raise NotSayd(f"coefficients are not stable: {verdict.witness}")


def _coact_table(V: ModuleComodule):
    return [V.comodule.coact({w: ONE}) for w in range(V.dim)]


def _act_col(M, h: int, v: int) -> dict:
    return M.act[h].column(v)


# the quotient complex V ⊗_H C^{⊗(n+1)} ------------------------------------------------

def _diagonal_action(H, C: ModuleCoalgebra, h: int, key: tuple) -> dict:
    """h·(c0 ⊗ ... ⊗ cn) = h(1)c0 ⊗ ... ⊗ h(n+1)cn."""
    out: dict = {}
    for hs, coef in H.delta_n({h: ONE}, len(key)).items():
        parts = [C.act[hi].column(ci) for hi, ci in zip(hs, key)]
        for combo in product(*[list(p.items()) for p in parts]):
            c = coef
            for _, x in combo:
                c *= x
            k = tuple(i for i, _ in combo)
            out[k] = out.get(k, ZERO) + c
    return clean(out)


def tensor_quotient(H, C: ModuleCoalgebra, V: ModuleComodule, n: int):
    """V ⊗_H C^{⊗(n+1)} as a Quotient of the ambient tensor space."""
    basis = TensorBasis((V.dim,) + (C.dim,) * (n + 1))
    relations = []
    for v, h in product(range(V.dim), range(H.dim)):
        moved = V.module.act[h].column(v)
        for key in product(range(C.dim), repeat=n + 1):
            rel: dict = {}
            for w, c in moved.items():
                add_into(rel, {basis.encode((w,) + key): c})
            for k, c in _diagonal_action(H, C, h, key).items():
                add_into(rel, {basis.encode((v,) + k): c}, -1)
            if rel:
                relations.append(rel)
    return basis, Quotient(basis.size, relations)


def _descend(T: SparseMatrix, q_dom: Quotient, q_cod: Quotient, what: str) -> SparseMatrix:
    P = q_cod.projection()
    if not (P @ T @ q_dom.relation_matrix()).is_zero():
        raise OperatorDoesNotDescend(f"{what} does not preserve the balanced-tensor relations")
    return P @ T @ q_dom.lift()


def _ambient_ops(H, C: ModuleCoalgebra, V: ModuleComodule, N: int):
    """Faces, degeneracies and cyclic maps on V ⊗ C^{⊗(n+1)} before the quotient."""
    bases = [TensorBasis((V.dim,) + (C.dim,) * (n + 1)) for n in range(N + 1)]
    coacts = _coact_table(V)
    faces, degens, taus = {}, {}, {}

    for n in range(1, N + 1):
        dom, cod = bases[n - 1], bases[n]
        ops = []
        for i in range(n):
            def face(key, i=i):
                v, cs = key[0], key[1:]
                return {(v,) + cs[:i] + pair + cs[i + 1:]: c
                        for pair, c in C.delta({cs[i]: ONE}).items()}
            ops.append(operator_matrix(dom, cod, face))

        def last_face(key):
            v, cs = key[0], key[1:]
            out: dict = {}
            for (c1, c2), x in C.delta({cs[0]: ONE}).items():
                for (h, w), y in coacts[v].items():
                    for c3, z in C.act[h].column(c1).items():
                        add_into(out, {(w, c2) + cs[1:] + (c3,): x * y * z})
            return out
        ops.append(operator_matrix(dom, cod, last_face))
        faces[n] = ops

        dom, cod = bases[n], bases[n - 1]
        ops = []
        for j in range(n):
            def degen(key, j=j):
                v, cs = key[0], key[1:]
                e = C.counit[cs[j + 1]]
                return {(v,) + cs[:j + 1] + cs[j + 2:]: e} if e else {}
            ops.append(operator_matrix(dom, cod, degen))
        degens[n] = ops

    for n in range(N + 1):
        def cyc(key):
            v, cs = key[0], key[1:]
            out: dict = {}
            for (h, w), y in coacts[v].items():
                for c0, z in C.act[h].column(cs[0]).items():
                    add_into(out, {(w,) + cs[1:] + (c0,): y * z})
            return out
        taus[n] = operator_matrix(bases[n], bases[n], cyc)
    return bases, faces, degens, taus


def hopf_cyclic_complex(H, C: ModuleCoalgebra, V: ModuleComodule, N: int,
                        check: bool = True) -> CocyclicSpace:
    """The cocyclic module V ⊗_H C^{⊗(n+1)}, n = 0..N, realized on quotients."""
    if check:
        _require_sayd(H, V)
        verdict = check_module_coalgebra(H, C)
        if not verdict:
            raise DimensionMismatch(f"not a module coalgebra: {verdict.witness}")
    bases, faces, degens, taus = _ambient_ops(H, C, V, N)
    quots = [tensor_quotient(H, C, V, n)[1] for n in range(N + 1)]
    spaces = []
    all_labels = None
    for n, q in enumerate(quots):
        all_labels = bases[n].labels([V.space] + [C.space] * (n + 1))
        spaces.append(FreeSpace(tuple(all_labels[c] for c in q.survivors)))
    out_faces = {n: [_descend(T, quots[n - 1], quots[n], f"face {i} into degree {n}")
                     for i, T in enumerate(ops)] for n, ops in faces.items()}
    out_degens = {n: [_descend(T, quots[n], quots[n - 1], f"degeneracy {j} from degree {n}")
                      for j, T in enumerate(ops)] for n, ops in degens.items()}
    out_taus = {n: _descend(T, quots[n], quots[n], f"cyclic operator in degree {n}")
                for n, T in taus.items()}
    X = CocyclicSpace(N, spaces, out_faces, out_degens, out_taus, name="quotient")
    X.flags["quotients"] = quots
    return X


def cyclic_via_rho(H, C: ModuleCoalgebra, V: ModuleComodule, N: int) -> dict:
    """τ(v ⊗ c0..cn) = sum_i (v·f^i) ⊗ c1..cn ⊗ x_i·c0 with v·f = f(v<-1>) v<0>."""
    if H.is_truncated:
        raise NotFiniteDimensional("the element ρ needs a finite-dimensional Hopf algebra")
    blocks = [V.comodule.block(i) for i in range(H.dim)]
    out = {}
    for n in range(N + 1):
        basis, q = tensor_quotient(H, C, V, n)

        def cyc(key):
            v, cs = key[0], key[1:]
            res: dict = {}
            for i in range(H.dim):
                for w, y in blocks[i].column(v).items():
                    for c0, z in C.act[i].column(cs[0]).items():
                        add_into(res, {(w,) + cs[1:] + (c0,): y * z})
            return res
        out[n] = _descend(operator_matrix(basis, basis, cyc), q, q, f"ρ-cyclic operator {n}")
    return out


# the standard complex V ⊗ H^{⊗n} ------------------------------------------------------

def _diag_left_mult(H, x: Mapping, key: tuple) -> dict:
    """x·(k1 ⊗ ... ⊗ km) = x(1)k1 ⊗ ... ⊗ x(m)km; on the empty tensor, ε(x)."""
    if not key:
        e = H.eps(x)
        return {(): e} if e else {}
    out: dict = {}
    for xs, coef in H.delta_n(x, len(key)).items():
        parts = [H.mul_basis(a, b) for a, b in zip(xs, key)]
        for combo in product(*[list(p.items()) for p in parts]):
            c = coef
            for _, y in combo:
                c *= y
            k = tuple(i for i, _ in combo)
            out[k] = out.get(k, ZERO) + c
    return clean(out)


def standard_complex(H, V: ModuleComodule, N: int, check: bool = True) -> CocyclicSpace:
    """The cocyclic structure on V ⊗ H^{⊗n} transported through the map I."""
    if check:
        _require_sayd(H, V)
    bases = [TensorBasis((V.dim,) + (H.dim,) * n) for n in range(N + 1)]
    coacts = _coact_table(V)
    one = H.one
    faces, degens, taus = {}, {}, {}
    for n in range(1, N + 1):
        dom, cod = bases[n - 1], bases[n]
        ops = []

        def first_face(key):
            v, hs = key[0], key[1:]
            return {(v, u) + hs: c for u, c in one.items()}
        ops.append(operator_matrix(dom, cod, first_face))
        for i in range(1, n):
            def face(key, i=i):
                v, hs = key[0], key[1:]
                return {(v,) + hs[:i - 1] + pair + hs[i:]: c
                        for pair, c in H.comult.get(hs[i - 1], {}).items()}
            ops.append(operator_matrix(dom, cod, face))

        def last_face(key):
            v, hs = key[0], key[1:]
            return {(w,) + hs + (h,): c for (h, w), c in coacts[v].items()}
        ops.append(operator_matrix(dom, cod, last_face))
        faces[n] = ops

        dom, cod = bases[n], bases[n - 1]
        ops = []
        for j in range(n):
            def degen(key, j=j):
                v, hs = key[0], key[1:]
                e = H.counit[hs[j]]
                return {(v,) + hs[:j] + hs[j + 1:]: e} if e else {}
            ops.append(operator_matrix(dom, cod, degen))
        degens[n] = ops

    for n in range(N + 1):
        def cyc(key, n=n):
            v, hs = key[0], key[1:]
            out: dict = {}
            for (y, w), a in coacts[v].items():
                if n == 0:
                    add_into(out, {(u,): b for u, b in V.module.act[y].column(w).items()}, a)
                    continue
                rest = hs[1:] + (y,)
                for (p, q), b in H.comult.get(hs[0], {}).items():
                    moved_v = V.module.act[p].column(w)
                    moved_rest = _diag_left_mult(H, H.S({q: ONE}), rest)
                    for u, c1 in moved_v.items():
                        for k, c2 in moved_rest.items():
                            add_into(out, {(u,) + k: a * b * c1 * c2})
            return out
        taus[n] = operator_matrix(bases[n], bases[n], cyc)
    spaces = [FreeSpace(b.labels([V.space] + [H.space] * n)) for n, b in enumerate(bases)]
    return CocyclicSpace(N, spaces, faces, degens, taus, name="standard")


def iso_I(H, V: ModuleComodule, n: int, quotient: Quotient | None = None) -> SparseMatrix:
    """I(v ⊗_H h0..hn) = v·h0(1) ⊗ S(h0(2))·(h1..hn), from quotient coordinates."""
    C = regular_module_coalgebra(H)
    basis, q = tensor_quotient(H, C, V, n) if quotient is None else (
        TensorBasis((V.dim,) + (H.dim,) * (n + 1)), quotient)
    cod = TensorBasis((V.dim,) + (H.dim,) * n)

    def image(key):
        v, h0, rest = key[0], key[1], key[2:]
        out: dict = {}
        for (p, r), a in H.comult.get(h0, {}).items():
            for u, b in V.module.act[p].column(v).items():
                for k, c in _diag_left_mult(H, H.S({r: ONE}), rest).items():
                    add_into(out, {(u,) + k: a * b * c})
        return out
    T = operator_matrix(basis, cod, image)
    if not (T @ q.relation_matrix()).is_zero():
        raise OperatorDoesNotDescend("I does not vanish on the balanced-tensor relations")
    return T @ q.lift()


# identities -------------------------------------------------------------------------

def check_cocyclic_identities(X: CocyclicSpace, N: int | None = None) -> CheckReport:
    """Every cosimplicial identity, cyclic compatibility and τ^{n+1} = id, degree by degree."""
    N = X.window if N is None else min(N, X.window)
    F, D, T = X.faces, X.degeneracies, X.tau
    rep = CheckReport()

    def record(name, failures):
        rep.add(name, Verdict(not failures, failures[0] if failures else None))

    for n in range(N + 1):
        ident = SparseMatrix.identity(X.dim(n))
        record(f"tau_power[{n}]",
               [] if T[n].power(n + 1) == ident else [f"τ^{n + 1} != id on C^{n}"])
    for n in range(2, N + 1):
        bad = [f"∂{j}∂{i} != ∂{i}∂{j - 1} into C^{n}"
               for j in range(n + 1) for i in range(j)
               if F[n][j] @ F[n - 1][i] != F[n][i] @ F[n - 1][j - 1]]
        record(f"faces[{n}]", bad)
        bad = [f"σ{j}σ{i} != σ{i}σ{j + 1} from C^{n}"
               for j in range(n - 1) for i in range(j + 1)
               if D[n - 1][j] @ D[n][i] != D[n - 1][i] @ D[n][j + 1]]
        record(f"degeneracies[{n}]", bad)
    for n in range(1, N + 1):
        bad = []
        ident = SparseMatrix.identity(X.dim(n - 1))
        for j in range(n):
            for i in range(n + 1):
                lhs = D[n][j] @ F[n][i]
                if i < j:
                    rhs = F[n - 1][i] @ D[n - 1][j - 1]
                elif i in (j, j + 1):
                    rhs = ident
                else:
                    rhs = F[n - 1][i - 1] @ D[n - 1][j]
                if lhs != rhs:
                    bad.append(f"σ{j}∂{i} identity fails on C^{n - 1}")
        record(f"face_degeneracy[{n}]", bad)
        bad = []
        if T[n] @ F[n][0] != F[n][n]:
            bad.append(f"τ∂0 != ∂{n} into C^{n}")
        for i in range(1, n + 1):
            if T[n] @ F[n][i] != F[n][i - 1] @ T[n - 1]:
                bad.append(f"τ∂{i} != ∂{i - 1}τ into C^{n}")
        record(f"tau_face[{n}]", bad)
        bad = []
        if T[n - 1] @ D[n][0] != D[n][n - 1] @ T[n] @ T[n]:
            bad.append(f"τσ0 != σ{n - 1}τ² from C^{n}")
        for i in range(1, n):
            if T[n - 1] @ D[n][i] != D[n][i - 1] @ T[n]:
                bad.append(f"τσ{i} != σ{i - 1}τ from C^{n}")
        record(f"tau_degeneracy[{n}]", bad)
    return rep


# b and B ---------------------------------------------------------------------------

def hochschild_b(X: CocyclicSpace, n: int) -> SparseMatrix:
    """b = sum_i (-1)^i ∂_i : C^n -> C^{n+1}."""
    if n + 1 > X.window or n < 0:
        raise WindowExceeded(f"b out of C^{n} needs window >= {n + 1}, have {X.window}")
    out = SparseMatrix.zeros(X.dim(n + 1), X.dim(n))
    for i, d in enumerate(X.faces[n + 1]):
        out = out + d.scale(-1 if i % 2 else 1)
    return out


def connes_B(X: CocyclicSpace, n: int) -> SparseMatrix:
    """B : C^n -> C^{n-1}, B = N σ_{-1} (1 - λ) with λ = (-1)^n τ and σ_{-1} = σ_{n-1} τ."""
    if n > X.window or n < 0:
        raise WindowExceeded(f"B out of C^{n} needs window >= {n}, have {X.window}")
    if n == 0:
        return SparseMatrix.zeros(0, X.dim(0))
    lam_n = X.tau[n].scale(-1 if n % 2 else 1)
    lam_m = X.tau[n - 1].scale(-1 if (n - 1) % 2 else 1)
    extra = X.degeneracies[n][n - 1] @ X.tau[n]
    norm = SparseMatrix.zeros(X.dim(n - 1), X.dim(n - 1))
    power = SparseMatrix.identity(X.dim(n - 1))
    for _ in range(n):
        norm = norm + power
        power = power @ lam_m
    return norm @ extra @ (SparseMatrix.identity(X.dim(n)) - lam_n)


@dataclass
class MixedComplex:
    """Spaces C^0..C^N with b of degree +1 and B of degree -1."""

    dims: tuple
    b: dict   # n -> C^n -> C^{n+1}, n < N
    B: dict   # n -> C^n -> C^{n-1}, 1 <= n <= N
    bounded: bool = False

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def b_map(self, n):
        if n in self.b:
            return self.b[n]
        if self.bounded and n + 1 > self.top:
            return SparseMatrix.zeros(0, self.dims[n])
        raise WindowExceeded(f"b out of degree {n} is outside the window")

    def B_map(self, n):
        if n == 0:
            return SparseMatrix.zeros(0, self.dims[0])
        return self.B[n]


def mixed_complex(X: CocyclicSpace) -> MixedComplex:
    N = X.window
    return MixedComplex(X.dims(), {n: hochschild_b(X, n) for n in range(N)},
                        {n: connes_B(X, n) for n in range(1, N + 1)})


def _dim_at(mc: MixedComplex, q: int) -> int:
    return mc.dims[q] if 0 <= q < len(mc.dims) else 0


def total_degrees(m: int) -> list[int]:
    """Cochain degrees q = m - 2p, p = 0..m//2, making up Tot^m."""
    return [m - 2 * p for p in range(m // 2 + 1)]


def total_differential(mc: MixedComplex, m: int) -> SparseMatrix:
    """(b + B) : Tot^m -> Tot^{m+1} for the first-quadrant bicomplex."""
    src, dst = total_degrees(m), total_degrees(m + 1)
    rows = [_dim_at(mc, q) for q in dst]
    cols = [_dim_at(mc, q) for q in src]
    blocks = {}
    for j, q in enumerate(src):
        if cols[j] == 0:
            continue
        i = dst.index(q + 1)
        if rows[i]:
            blocks[(i, j)] = mc.b_map(q)
        if q >= 1:
            i = dst.index(q - 1)
            if rows[i]:
                blocks[(i, j)] = mc.B_map(q)
    return block_matrix(rows, cols, blocks)


def _hc_dims(mc: MixedComplex, top: int):
    dims, reps = [], {}
    prev = SparseMatrix.zeros(sum(_dim_at(mc, q) for q in total_degrees(0)), 0)
    for m in range(top + 1):
        d = total_differential(mc, m)
        betti, r = cohomology_at(prev, d)
        dims.append(betti)
        reps[m] = r
        prev = d
    return tuple(dims), reps


def hc_cohomology(X, N: int | None = None) -> CohomologyReport:
    """Cyclic cohomology of the first-quadrant (b, B) bicomplex in degrees <= N-1."""
    mc = X if isinstance(X, MixedComplex) else mixed_complex(X)
    window = mc.top if N is None else N
    if window < 1:
        raise WindowExceeded("HC needs a window of at least 1")
    if window > mc.top and not mc.bounded:
        raise WindowExceeded(f"window {window} exceeds the materialized degree {mc.top}")
    dims, reps = _hc_dims(mc, window - 1)
    return CohomologyReport("HC", dims, reps)


def hp_cohomology(X, N: int | None = None) -> CohomologyReport:
    """Periodic cyclic cohomology (even, odd).

    For a bounded mixed complex this is exact: the cohomology of b + B on the
    Z/2-graded sum. Otherwise the window value is read off the top HC degrees,
    and the stabilization flag records that windows N-1 and N agree.
    """
    mc = X if isinstance(X, MixedComplex) else mixed_complex(X)
    if mc.bounded:
        return _hp_bounded(mc)
    window = mc.top if N is None else N
    if window < 2:
        raise WindowExceeded("HP needs a window of at least 2")
    dims, _ = _hc_dims(mc, window - 1)
    top = window - 1
    even = dims[top] if top % 2 == 0 else dims[top - 1]
    odd = dims[top] if top % 2 else dims[top - 1]
    stable = window >= 3 and dims[top] == dims[top - 2]
    return CohomologyReport("HP", (even, odd), {}, stable, {"hc": list(dims)})


def _hp_bounded(mc: MixedComplex) -> CohomologyReport:
    even = [q for q in range(len(mc.dims)) if q % 2 == 0]
    odd = [q for q in range(len(mc.dims)) if q % 2 == 1]

    def parity_map(src, dst):
        rows = [mc.dims[q] for q in dst]
        cols = [mc.dims[q] for q in src]
        blocks = {}
        for j, q in enumerate(src):
            if q + 1 in dst and q + 1 <= mc.top:
                blocks[(dst.index(q + 1), j)] = mc.b_map(q)
            if q - 1 in dst and q >= 1:
                blocks[(dst.index(q - 1), j)] = mc.B_map(q)
        return block_matrix(rows, cols, blocks)

    d_even, d_odd = parity_map(even, odd), parity_map(odd, even)
    b_even, r_even = cohomology_at(d_odd, d_even)
    b_odd, r_odd = cohomology_at(d_even, d_odd)
    return CohomologyReport("HP", (b_even, b_odd), {0: r_even, 1: r_odd}, True)


def check_differentials(mc: MixedComplex) -> CheckReport:
    """b² = 0, B² = 0 and bB + Bb = 0 in every degree the window covers."""
    rep = CheckReport()
    top = mc.top
    bad = [f"b² != 0 out of C^{n}" for n in range(top - 1)
           if not (mc.b_map(n + 1) @ mc.b_map(n)).is_zero()]
    rep.add("b_squared", Verdict(not bad, bad[0] if bad else None))
    bad = [f"B² != 0 out of C^{n}" for n in range(2, top + 1)
           if not (mc.B_map(n - 1) @ mc.B_map(n)).is_zero()]
    rep.add("B_squared", Verdict(not bad, bad[0] if bad else None))
    bad = []
    for n in range(top):
        lhs = mc.B_map(n + 1) @ mc.b_map(n)
        if n >= 1:
            lhs = lhs + mc.b_map(n - 1) @ mc.B_map(n)
        if not lhs.is_zero():
            bad.append(f"bB + Bb != 0 on C^{n}")
    rep.add("bB_plus_Bb", Verdict(not bad, bad[0] if bad else None))
    bad = [f"(b+B)² != 0 out of Tot^{m}" for m in range(top - 1)
           if not (total_differential(mc, m + 1) @ total_differential(mc, m)).is_zero()]
    rep.add("total_squared", Verdict(not bad, bad[0] if bad else None))
    return rep
