"""Matched pairs of Hopf algebras, Lie-Hopf data and bicrossed products."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Mapping

from .algebra import FiniteAlgebra, FiniteCoalgebra
from .cyclic import TensorBasis
from .errors import DimensionMismatch, NotGroupLike, NotMatched, TruncationOverflow
from .exactlin import ONE, ZERO, FreeSpace, SparseMatrix, block_matrix, cohomology_at
from .groups import FiniteGroup, function_algebra, group_algebra
from .hopf import (HopfPresentation, ModularPair, Truncation, check_mpi, is_group_like,
                   truncated_uea)
from .lie import LieDatum, check_jacobi
from .liecyclic import _ce_cochain_map, _Graded, _sort_sign
from .util import CheckReport, Verdict, add_into, clean

__all__ = [
    "MatchedPairDatum", "LieHopfDatum", "group_matched_pair", "check_module_algebra",
    "check_comodule_coalgebra", "check_matched_pair", "build_cocrossed_coalgebra",
    "build_crossed_algebra", "build_bicrossed", "tensor_product_hopf", "check_lie_hopf",
    "gF_bracket", "check_gF_bracket", "bullet", "extend_coaction_to_ug",
    "matched_pair_from_lie_hopf", "canonical_delta", "canonical_sigma", "canonical_mpi",
    "bicrossed_bicomplex", "lie_hopf_datum",
]


def _e(i) -> dict:
    return {i: ONE}


def _first(gen):
    for item in gen:
        return Verdict(False, item)
    return Verdict(True)


def _skip(fn, *args):
    """Run a check body, treating a truncation overflow as outside the window."""
    try:
        return fn(*args)
    except TruncationOverflow:
        return True


@dataclass(frozen=True)
class MatchedPairDatum:
    """U acts on F from the left (action[u] is the matrix of f -> u▷f) and
    F coacts on U from the right (coaction column u is Σ u<0> ⊗ u<1>,
    row index u' * dim F + f)."""

    U: HopfPresentation
    F: HopfPresentation
    action: tuple
    coaction: SparseMatrix
    name: str = "D"

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(self.action))
        if len(self.action) != self.U.dim or any(m.shape != (self.F.dim, self.F.dim)
                                                 for m in self.action):
            raise DimensionMismatch("one dim F x dim F action matrix per basis element of U")
        if self.coaction.shape != (self.U.dim * self.F.dim, self.U.dim):
            raise DimensionMismatch(f"coaction of shape {self.coaction.shape}")

    def act(self, u: Mapping, f: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            add_into(out, self.action[i].apply_sparse(f), a)
        return clean(out)

    def coact(self, u: Mapping) -> dict:
        n = self.F.dim
        return {divmod(r, n): c for r, c in self.coaction.apply_sparse(u).items()}


def _sub_group(G: FiniteGroup, members: list[int], name: str) -> FiniteGroup:
    pos = {g: k for k, g in enumerate(members)}
    try:
        table = tuple(tuple(pos[G.mul(a, b)] for b in members) for a in members)
    except KeyError:
        raise NotMatched(f"{name} is not closed under multiplication") from None
    return FiniteGroup(tuple(G.labels[g] for g in members), table, name)


def group_matched_pair(G: FiniteGroup, first, second, name: str | None = None) -> MatchedPairDatum:
    """The matched pair (k first, k^second) of an exact factorization G = first · second.

    Writing ψφ = (ψ▷φ)(ψ◁φ) for ψ in ``second`` and φ in ``first``, the
    action is (φ▷f)(ψ) = f(ψ◁φ) and the coaction is φ -> Σ_ψ (ψ▷φ) ⊗ δ_ψ.
    """
    first = [G.index(x) if isinstance(x, str) else x for x in first]
    second = [G.index(x) if isinstance(x, str) else x for x in second]
    G1 = _sub_group(G, first, "G1")
    G2 = _sub_group(G, second, "G2")
    factor = {}
    for a, phi in enumerate(first):
        for b, psi in enumerate(second):
            factor.setdefault(G.mul(phi, psi), (a, b))
    if len(factor) != G.order or len(first) * len(second) != G.order:
        raise NotMatched("the two subgroups do not factorize the group exactly")
    U, F = group_algebra(G1), function_algebra(G2)
    n1, n2 = len(first), len(second)
    action, entries = [], {}
    for a, phi in enumerate(first):
        act = {}
        for b, psi in enumerate(second):
            left, right = factor[G.mul(psi, phi)]
            act[(b, right)] = ONE
            entries[(left * n2 + b, a)] = ONE
        action.append(SparseMatrix(n2, n2, act))
    return MatchedPairDatum(U, F, action, SparseMatrix(n1 * n2, n1, entries),
                            name or f"{G.name}={G1.name}·{G2.name}")


# checks ------------------------------------------------------------------------------

def check_module_algebra(U: HopfPresentation, F: HopfPresentation, action) -> CheckReport:
    """F as a left U-module algebra."""
    D = action if isinstance(action, MatchedPairDatum) else None
    act = (lambda u, f: D.act(u, f)) if D else (lambda u, f: _act(action, u, f))
    rep = CheckReport()

    def module():
        for f in range(F.dim):
            if clean(act(U.one, _e(f))) != _e(f):
                yield f"1▷{F.labels[f]} != {F.labels[f]}"
        for u, v, f in product(range(U.dim), range(U.dim), range(F.dim)):
            if not U.in_window(u, v):
                continue
            if clean(act(U.mul_basis(u, v), _e(f))) != act(_e(u), act(_e(v), _e(f))):
                yield f"(uv)▷f != u▷(v▷f) at ({U.labels[u]}, {U.labels[v]}, {F.labels[f]})"

    def unit():
        for u in range(U.dim):
            if act(_e(u), F.one) != clean({k: U.counit[u] * c for k, c in F.one.items()}):
                yield f"u▷1 != ε(u)1 at {U.labels[u]}"

    def multiplicative():
        for u, f, g in product(range(U.dim), range(F.dim), range(F.dim)):
            lhs = act(_e(u), F.mul_basis(f, g))
            rhs: dict = {}
            for (u1, u2), c in U.comult.get(u, {}).items():
                add_into(rhs, F.mul(act(_e(u1), _e(f)), act(_e(u2), _e(g))), c)
            if lhs != clean(rhs):
                yield f"u▷(fg) != (u1▷f)(u2▷g) at ({U.labels[u]}, {F.labels[f]}, {F.labels[g]})"

    rep.add("module", _first(module()))
    rep.add("unit", _first(unit()))
    rep.add("multiplicative", _first(multiplicative()))
    return rep


def _act(action, u: Mapping, f: Mapping) -> dict:
    out: dict = {}
    for i, a in u.items():
        add_into(out, action[i].apply_sparse(f), a)
    return clean(out)


def _coact(coaction: SparseMatrix, nF: int, u: Mapping) -> dict:
    return {divmod(r, nF): c for r, c in coaction.apply_sparse(u).items()}


def check_comodule_coalgebra(U: HopfPresentation, F: HopfPresentation, coaction) -> CheckReport:
    """U as a right F-comodule coalgebra."""
    if isinstance(coaction, MatchedPairDatum):
        coaction = coaction.coaction
    nF = F.dim
    co = lambda u: _coact(coaction, nF, u)  # noqa: E731
    rep = CheckReport()

    def comodule():
        for u in range(U.dim):
            lhs, rhs = {}, {}
            for (v, f), c in co(_e(u)).items():
                for (w, g), d in co(_e(v)).items():
                    add_into(lhs, {(w, g, f): c * d})
                for (g, h), d in F.comult.get(f, {}).items():
                    add_into(rhs, {(v, g, h): c * d})
            if clean(lhs) != clean(rhs):
                yield f"coaction not coassociative at {U.labels[u]}"
            counit: dict = {}
            for (v, f), c in co(_e(u)).items():
                add_into(counit, {v: c * F.counit[f]})
            if clean(counit) != _e(u):
                yield f"coaction not counital at {U.labels[u]}"

    def comultiplication():
        for u in range(U.dim):
            lhs, rhs = {}, {}
            for (v, f), c in co(_e(u)).items():
                for (v1, v2), d in U.comult.get(v, {}).items():
                    add_into(lhs, {(v1, v2, f): c * d})
            for (u1, u2), c in U.comult.get(u, {}).items():
                for (a, f), x in co(_e(u1)).items():
                    for (b, g), y in co(_e(u2)).items():
                        for h, z in F.mul_basis(f, g).items():
                            add_into(rhs, {(a, b, h): c * x * y * z})
            if clean(lhs) != clean(rhs):
                yield f"Δ(u<0>) ⊗ u<1> mismatch at {U.labels[u]}"

    def counit():
        for u in range(U.dim):
            out: dict = {}
            for (v, f), c in co(_e(u)).items():
                add_into(out, {f: c * U.counit[v]})
            if clean(out) != clean({k: U.counit[u] * c for k, c in F.one.items()}):
                yield f"ε(u<0>)u<1> != ε(u)1 at {U.labels[u]}"

    rep.add("comodule", _first(comodule()))
    rep.add("comultiplication", _first(comultiplication()))
    rep.add("counit", _first(counit()))
    return rep


MATCHED_PAIR_CONDITIONS = ("counit_of_action", "comultiplication_of_action", "coaction_of_unit",
                           "coaction_of_product", "action_coaction_exchange")


def check_matched_pair(D: MatchedPairDatum) -> CheckReport:
    """The five compatibilities between ▷ and ▼."""
    U, F = D.U, D.F
    rep = CheckReport()

    def counit_of_action():
        for u, f in product(range(U.dim), range(F.dim)):
            if F.eps(D.act(_e(u), _e(f))) != U.counit[u] * F.counit[f]:
                yield f"ε(u▷f) != ε(u)ε(f) at ({U.labels[u]}, {F.labels[f]})"

    def comultiplication_of_action():
        for u, f in product(range(U.dim), range(F.dim)):
            lhs = F.delta(D.act(_e(u), _e(f)))
            rhs: dict = {}
            for (u1, u2), c in U.comult.get(u, {}).items():
                for (v, h), x in D.coact(_e(u1)).items():
                    for (f1, f2), y in F.comult.get(f, {}).items():
                        left = D.act(_e(v), _e(f1))
                        right = F.mul(_e(h), D.act(_e(u2), _e(f2)))
                        for a, p in left.items():
                            for b, q in right.items():
                                add_into(rhs, {(a, b): c * x * y * p * q})
            if clean(lhs) != clean(rhs):
                yield f"Δ(u▷f) mismatch at ({U.labels[u]}, {F.labels[f]})"

    def coaction_of_unit():
        got = clean(D.coact(U.one))
        want = clean({(u, f): a * b for u, a in U.one.items() for f, b in F.one.items()})
        if got != want:
            yield "▼(1) != 1⊗1"

    def product_at(u, v):
        lhs: dict = {}
        for w, c in U.mul_basis(u, v).items():
            add_into(lhs, {k: c * x for k, x in D.coact(_e(w)).items()})
        rhs: dict = {}
        for (u1, u2), c in U.comult.get(u, {}).items():
            for (a, f), x in D.coact(_e(u1)).items():
                for (b, g), y in D.coact(_e(v)).items():
                    uu = U.mul_basis(a, b)
                    ff = F.mul(_e(f), D.act(_e(u2), _e(g)))
                    for p, s in uu.items():
                        for q, t in ff.items():
                            add_into(rhs, {(p, q): c * x * y * s * t})
        return clean(lhs) == clean(rhs)

    def coaction_of_product():
        for u, v in product(range(U.dim), repeat=2):
            if U.in_window(u, v) and not _skip(product_at, u, v):
                yield f"▼(uv) mismatch at ({U.labels[u]}, {U.labels[v]})"

    def exchange():
        for u, f in product(range(U.dim), range(F.dim)):
            lhs, rhs = {}, {}
            for (u1, u2), c in U.comult.get(u, {}).items():
                for (a, g), x in D.coact(_e(u2)).items():
                    for h, y in F.mul(D.act(_e(u1), _e(f)), _e(g)).items():
                        add_into(lhs, {(a, h): c * x * y})
                for (a, g), x in D.coact(_e(u1)).items():
                    for h, y in F.mul(_e(g), D.act(_e(u2), _e(f))).items():
                        add_into(rhs, {(a, h): c * x * y})
            if clean(lhs) != clean(rhs):
                yield f"u2<0> ⊗ (u1▷f)u2<1> mismatch at ({U.labels[u]}, {F.labels[f]})"

    rep.add("counit_of_action", _first(counit_of_action()))
    rep.add("comultiplication_of_action", _first(comultiplication_of_action()))
    rep.add("coaction_of_unit", _first(coaction_of_unit()))
    rep.add("coaction_of_product", _first(coaction_of_product()))
    rep.add("action_coaction_exchange", _first(exchange()))
    return rep


# crossed and cocrossed products -------------------------------------------------------

def _pair_space(D: MatchedPairDatum) -> FreeSpace:
    return FreeSpace(tuple(f"{f}⊗{u}" for f in D.F.labels for u in D.U.labels))


def _cocrossed_comult(D: MatchedPairDatum) -> dict:
    U, F = D.U, D.F
    nU = U.dim
    comult = {}
    for f, u in product(range(F.dim), range(nU)):
        out: dict = {}
        for (f1, f2), a in F.comult.get(f, {}).items():
            for (u1, u2), b in U.comult.get(u, {}).items():
                for (v, h), c in D.coact(_e(u1)).items():
                    for k, d in F.mul_basis(f2, h).items():
                        add_into(out, {(f1 * nU + v, k * nU + u2): a * b * c * d})
        comult[f * nU + u] = clean(out)
    return comult


def _crossed_mult(D: MatchedPairDatum) -> dict:
    U, F = D.U, D.F
    nU = U.dim
    mult = {}
    for f, u, g, v in product(range(F.dim), range(nU), range(F.dim), range(nU)):
        if not U.in_window(u, v):
            continue
        out: dict = {}
        for (u1, u2), a in U.comult.get(u, {}).items():
            left = F.mul(_e(f), D.act(_e(u1), _e(g)))
            right = U.mul_basis(u2, v)
            for p, x in left.items():
                for q, y in right.items():
                    add_into(out, {p * nU + q: a * x * y})
        mult[(f * nU + u, g * nU + v)] = clean(out)
    return mult


def _pair_unit(D: MatchedPairDatum) -> dict:
    nU = D.U.dim
    return {f * nU + u: a * b for f, a in D.F.one.items() for u, b in D.U.one.items()}


def _pair_counit(D: MatchedPairDatum) -> list:
    return [D.F.counit[f] * D.U.counit[u] for f in range(D.F.dim) for u in range(D.U.dim)]


def _pair_degrees(D: MatchedPairDatum):
    if not D.U.is_truncated:
        return None
    return Truncation(tuple(D.U.degree(u) for f in range(D.F.dim) for u in range(D.U.dim)),
                      D.U.truncation.cutoff)


def build_cocrossed_coalgebra(D: MatchedPairDatum) -> FiniteCoalgebra:
    """F ⊗ U with Δ(f⊗u) = f1⊗u1<0> ⊗ f2 u1<1>⊗u2 and ε = ε⊗ε."""
    return FiniteCoalgebra(_pair_space(D), _cocrossed_comult(D), _pair_counit(D),
                           name=f"{D.F.name}>◁{D.U.name}")


def build_crossed_algebra(D: MatchedPairDatum) -> FiniteAlgebra:
    """F ⊗ U with (f⊗u)(g⊗v) = f(u1▷g) ⊗ u2 v."""
    trunc = _pair_degrees(D)
    return FiniteAlgebra(_pair_space(D), _crossed_mult(D), _pair_unit(D),
                         name=f"{D.F.name}⋊{D.U.name}",
                         degrees=trunc.degrees if trunc else None,
                         cutoff=trunc.cutoff if trunc else None)


def build_bicrossed(D: MatchedPairDatum, check: bool = True) -> HopfPresentation:
    """The bicrossed product Hopf algebra on F ⊗ U.

    The antipode is S(f⊗u) = (1⊗S(u<0>))(S(f u<1>)⊗1).
    """
    if check:
        for rep in (check_module_algebra(D.U, D.F, D), check_comodule_coalgebra(D.U, D.F, D),
                    check_matched_pair(D)):
            if not rep.ok:
                raise NotMatched(rep.first_failure)
    U, F = D.U, D.F
    nU = U.dim
    cols = []
    for f, u in product(range(F.dim), range(nU)):
        out: dict = {}
        for (v, h), c in D.coact(_e(u)).items():
            s_f = F.S(F.mul_basis(f, h))
            for a, x in U.S(_e(v)).items():
                for (a1, a2), y in U.comult.get(a, {}).items():
                    for p, z in D.act(_e(a1), s_f).items():
                        add_into(out, {p * nU + a2: c * x * y * z})
        cols.append(clean(out))
    antipode = SparseMatrix.from_columns(F.dim * nU, cols)
    return HopfPresentation(_pair_space(D), _crossed_mult(D), _pair_unit(D), _cocrossed_comult(D),
                            _pair_counit(D), antipode, truncation=_pair_degrees(D),
                            name=f"{F.name}⋈{U.name}")


def tensor_product_hopf(F: HopfPresentation, U: HopfPresentation) -> HopfPresentation:
    """F ⊗ U with componentwise structure, on the labels f⊗u."""
    nU = U.dim
    space = FreeSpace(tuple(f"{f}⊗{u}" for f in F.labels for u in U.labels))
    mult = {}
    for f, u, g, v in product(range(F.dim), range(nU), range(F.dim), range(nU)):
        if U.in_window(u, v):
            mult[(f * nU + u, g * nU + v)] = {p * nU + q: a * b for p, a in F.mul_basis(f, g).items()
                                              for q, b in U.mul_basis(u, v).items()}
    comult = {}
    for f, u in product(range(F.dim), range(nU)):
        comult[f * nU + u] = {(f1 * nU + u1, f2 * nU + u2): a * b
                              for (f1, f2), a in F.comult.get(f, {}).items()
                              for (u1, u2), b in U.comult.get(u, {}).items()}
    unit = {f * nU + u: a * b for f, a in F.one.items() for u, b in U.one.items()}
    counit = [F.counit[f] * U.counit[u] for f in range(F.dim) for u in range(nU)]
    antipode = F.antipode.kron(U.antipode)
    trunc = (Truncation(tuple(U.degree(u) for f in range(F.dim) for u in range(nU)),
                        U.truncation.cutoff) if U.is_truncated else None)
    return HopfPresentation(space, mult, unit, comult, counit, antipode, truncation=trunc,
                            name=f"{F.name}⊗{U.name}")


# Lie-Hopf data -------------------------------------------------------------------------

@dataclass(frozen=True)
class LieHopfDatum:
    """g acting on a commutative F by derivations (action[i] is f -> X_i▷f)
    and F coacting on g from the right (coaction column i is Σ X_j ⊗ f,
    row index j * dim F + f)."""

    lie: LieDatum
    F: object
    action: tuple
    coaction: SparseMatrix
    name: str = "L"

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(self.action))
        n = self.F.dim
        if len(self.action) != self.lie.dim or any(m.shape != (n, n) for m in self.action):
            raise DimensionMismatch("one dim F x dim F action matrix per Lie generator")
        if self.coaction.shape != (self.lie.dim * n, self.lie.dim):
            raise DimensionMismatch(f"coaction of shape {self.coaction.shape}")

    def act(self, i: int, f: Mapping) -> dict:
        return clean(self.action[i].apply_sparse(f))

    def coact(self, i: int) -> dict:
        n = self.F.dim
        return {divmod(r, n): c for r, c in self.coaction.column(i).items()}

    def matrix_coefficients(self) -> list[list[dict]]:
        """M[j][i] in F with X_i -> Σ_j X_j ⊗ M[j][i]."""
        n, d = self.F.dim, self.lie.dim
        M = [[{} for _ in range(d)] for _ in range(d)]
        for i in range(d):
            for (j, f), c in self.coact(i).items():
                M[j][i][f] = c
        return M


def lie_hopf_datum(g: LieDatum, F, action: Mapping | None = None, coaction: Mapping | None = None,
                   name: str = "L") -> LieHopfDatum:
    """From labels: action {(X, f): {h: c}}, coaction {X: {(Y, f): c}}.

    Generators missing from ``coaction`` get the trivial coaction X -> X ⊗ 1.
    """
    n = F.dim
    acts = [dict() for _ in range(g.dim)]
    for (x, f), image in (action or {}).items():
        xi, fi = g.space.index(x), F.space.index(f)
        for h, c in image.items():
            acts[xi][(F.space.index(h), fi)] = Fraction(c)
    entries = {}
    coaction = dict(coaction or {})
    for x in g.labels:
        xi = g.space.index(x)
        image = coaction.get(x)
        if image is None:
            for f, c in F.one.items():
                entries[(xi * n + f, xi)] = c
            continue
        for (y, f), c in image.items():
            entries[(g.space.index(y) * n + F.space.index(f), xi)] = Fraction(c)
    return LieHopfDatum(g, F, [SparseMatrix(n, n, a) for a in acts],
                        SparseMatrix(g.dim * n, g.dim, entries), name)


def _gf_bracket_basis(L: LieHopfDatum, i: int, a: int, j: int, b: int) -> dict:
    """[X_i⊗e_a, X_j⊗e_b] as {(k, c): coeff}."""
    F = L.F
    out: dict = {}
    prod_ab = F.mul(_e(a), _e(b))
    for k, c in L.lie.br(i, j).items():
        for h, x in prod_ab.items():
            add_into(out, {(k, h): c * x})
    ea, eb = F.counit[a], F.counit[b]
    if ea:
        for h, x in L.act(i, _e(b)).items():
            add_into(out, {(j, h): ea * x})
    if eb:
        for h, x in L.act(j, _e(a)).items():
            add_into(out, {(i, h): -eb * x})
    return clean(out)


def _gf_bracket_vec(L: LieHopfDatum, x: Mapping, y: Mapping) -> dict:
    out: dict = {}
    for (i, a), c in x.items():
        for (j, b), d in y.items():
            add_into(out, _gf_bracket_basis(L, i, a, j, b), c * d)
    return clean(out)


def _require_counit_kills_action(L: LieHopfDatum) -> Verdict:
    for i in range(L.lie.dim):
        for f in range(L.F.dim):
            if sum((L.F.counit[h] * c for h, c in L.act(i, _e(f)).items()), ZERO):
                return Verdict(False, f"ε({L.lie.labels[i]}▷{L.F.labels[f]}) != 0")
    return Verdict(True)


def check_gF_bracket(L: LieHopfDatum) -> CheckReport:
    n = L.F.dim
    basis = [(i, a) for i in range(L.lie.dim) for a in range(n)]
    rep = CheckReport()

    def antisymmetry():
        for p, q in product(basis, repeat=2):
            s = _gf_bracket_basis(L, *p, *q)
            t = _gf_bracket_basis(L, *q, *p)
            if clean(add_into(dict(s), t)):
                yield f"antisymmetry fails at ({_gf_label(L, p)}, {_gf_label(L, q)})"

    def jacobi():
        for p, q, r in product(basis, repeat=3):
            total: dict = {}
            for x, y, z in ((p, q, r), (q, r, p), (r, p, q)):
                add_into(total, _gf_bracket_vec(L, {x: ONE}, _gf_bracket_basis(L, *y, *z)))
            if clean(total):
                yield f"jacobi fails at ({_gf_label(L, p)}, {_gf_label(L, q)}, {_gf_label(L, r)})"

    rep.add("antisymmetry", _first(antisymmetry()))
    rep.add("jacobi", _first(jacobi()))
    return rep


def _gf_label(L, key) -> str:
    return f"{L.lie.labels[key[0]]}⊗{L.F.labels[key[1]]}"


def gF_bracket(L: LieHopfDatum) -> LieDatum:
    """The Lie algebra g ⊗ F with [X⊗f, Y⊗g] = [X,Y]⊗fg + Y⊗ε(f)X▷g - X⊗ε(g)Y▷f."""
    verdict = _require_counit_kills_action(L)
    if not verdict:
        raise NotMatched(verdict.witness)
    rep = check_gF_bracket(L)
    if not rep.ok:
        raise NotMatched(rep.first_failure)
    n = L.F.dim
    labels = tuple(_gf_label(L, (i, a)) for i in range(L.lie.dim) for a in range(n))
    table = {}
    for p in range(len(labels)):
        for q in range(p + 1, len(labels)):
            vec = _gf_bracket_basis(L, *divmod(p, n), *divmod(q, n))
            if vec:
                table[(p, q)] = {k * n + h: c for (k, h), c in vec.items()}
    return LieDatum(FreeSpace(labels), table, f"{L.lie.name}⊗{L.F.name}")


def bullet(L: LieHopfDatum, i: int, tensor: Mapping) -> dict:
    """X_i acting on F^{⊗p}; keys are index tuples.

    X•(f⊗R) = X<0>▷f ⊗ X<1>·R + f ⊗ X•R, where X<1> acts on R through its
    iterated coproduct and factorwise multiplication.
    """
    F = L.F
    out: dict = {}
    for key, c in tensor.items():
        if not key:
            continue
        head, rest = key[0], key[1:]
        for (j, h), x in L.coact(i).items():
            moved = L.act(j, _e(head))
            if not moved:
                continue
            spread = _iterated_delta(F, _e(h), len(rest))
            for r_key, y in _diag_mult(F, spread, {rest: ONE}).items():
                for m, z in moved.items():
                    add_into(out, {(m,) + r_key: c * x * y * z})
        for r_key, y in bullet(L, i, {rest: ONE}).items():
            add_into(out, {(head,) + r_key: c * y})
    return clean(out)


def _iterated_delta(F, x: Mapping, factors: int) -> dict:
    if factors == 0:
        return {(): F.eps(x)} if F.eps(x) else {}
    cur = {(k,): c for k, c in x.items()}
    for _ in range(factors - 1):
        nxt: dict = {}
        for key, c in cur.items():
            for (a, b), d in F.comult.get(key[-1], {}).items():
                add_into(nxt, {key[:-1] + (a, b): c * d})
        cur = clean(nxt)
    return cur


def _diag_mult(F, x: Mapping, y: Mapping) -> dict:
    out: dict = {}
    for kx, a in x.items():
        for ky, b in y.items():
            terms = {(): a * b}
            for p, q in zip(kx, ky):
                nxt: dict = {}
                for key, c in terms.items():
                    for r, d in F.mul_basis(p, q).items():
                        add_into(nxt, {key + (r,): c * d})
                terms = nxt
            add_into(out, terms)
    return clean(out)


def check_lie_hopf(L: LieHopfDatum) -> CheckReport:
    """Derivations, ε∘▷ = 0, coaction a Lie map into g⊗F, and Δ(X▷f) = X•Δ(f)."""
    g, F = L.lie, L.F
    rep = CheckReport()
    d, n = g.dim, F.dim

    def commutative():
        for a, b in product(range(n), repeat=2):
            if F.mul_basis(a, b) != F.mul_basis(b, a):
                yield f"{F.labels[a]}·{F.labels[b]} != {F.labels[b]}·{F.labels[a]}"

    def derivation():
        for i, a, b in product(range(d), range(n), range(n)):
            lhs = L.act(i, F.mul_basis(a, b))
            rhs = add_into(F.mul(L.act(i, _e(a)), _e(b)), F.mul(_e(a), L.act(i, _e(b))))
            if lhs != clean(rhs):
                yield f"{g.labels[i]} is not a derivation on ({F.labels[a]}, {F.labels[b]})"

    def lie_action():
        for i in range(d):
            for j in range(i + 1, d):
                lhs = SparseMatrix.zeros(n, n)
                for k, c in g.br(i, j).items():
                    lhs = lhs + L.action[k].scale(c)
                if lhs != L.action[i] @ L.action[j] - L.action[j] @ L.action[i]:
                    yield f"[{g.labels[i]},{g.labels[j]}]▷ != commutator of actions"

    def comodule():
        for i in range(d):
            lhs, rhs = {}, {}
            for (j, f), c in L.coact(i).items():
                for (k, h), x in L.coact(j).items():
                    add_into(lhs, {(k, h, f): c * x})
                for (a, b), x in F.comult.get(f, {}).items():
                    add_into(rhs, {(j, a, b): c * x})
            if clean(lhs) != clean(rhs):
                yield f"coaction not coassociative at {g.labels[i]}"
            counit: dict = {}
            for (j, f), c in L.coact(i).items():
                add_into(counit, {j: c * F.counit[f]})
            if clean(counit) != _e(i):
                yield f"coaction not counital at {g.labels[i]}"

    def lie_map():
        for i in range(d):
            for j in range(i + 1, d):
                lhs: dict = {}
                for k, c in g.br(i, j).items():
                    add_into(lhs, L.coact(k), c)
                rhs = _gf_bracket_vec(L, L.coact(i), L.coact(j))
                if clean(lhs) != rhs:
                    yield f"▼[{g.labels[i]},{g.labels[j]}] != [▼{g.labels[i]}, ▼{g.labels[j]}]"

    def delta_linear():
        for i, f in product(range(d), range(n)):
            lhs = {(a, b): c for (a, b), c in F.delta(L.act(i, _e(f))).items()}
            rhs = bullet(L, i, {k: c for k, c in F.comult.get(f, {}).items()})
            if clean(lhs) != rhs:
                yield f"Δ({g.labels[i]}▷{F.labels[f]}) != {g.labels[i]}•Δ({F.labels[f]})"

    rep.add("commutative", _first(commutative()))
    rep.add("derivation", _first(derivation()))
    rep.add("lie_action", _first(lie_action()))
    rep.add("counit_of_action", _require_counit_kills_action(L))
    rep.add("coaction_comodule", _first(comodule()) if hasattr(F, "comult") else Verdict(True))
    rep.add("coaction_lie_map", _first(lie_map()))
    rep.add("comultiplication_linear",
            _first(delta_linear()) if hasattr(F, "comult") else Verdict(True))
    return rep


def _uea_action(L: LieHopfDatum, U: HopfPresentation) -> list[SparseMatrix]:
    """PBW words act on F by composing generator actions, leftmost outermost."""
    n = L.F.dim
    mats = []
    for word in U.extra["words"]:
        m = SparseMatrix.identity(n)
        for i in reversed(word):
            m = L.action[i] @ m
        mats.append(m)
    return mats


def extend_coaction_to_ug(L: LieHopfDatum, N: int, U: HopfPresentation | None = None) -> SparseMatrix:
    """Right F-coaction on the degree <= N truncation of U(g).

    For a PBW word X·u' the recursion reads
    ▼(X u') = X<0> u'<0> ⊗ X<1> u'<1> + u'<0> ⊗ X▷u'<1>.
    """
    U = U or truncated_uea(L.lie, N)
    F = L.F
    st = U.extra["straightener"]
    index = U.extra["word_index"]
    memo: dict = {}

    def coact_word(word: tuple) -> dict:
        if word in memo:
            return memo[word]
        if not word:
            out = {((), f): c for f, c in F.one.items()}
        else:
            x, rest = word[0], word[1:]
            out = {}
            for (w, a), c in coact_word(rest).items():
                for (j, b), d in L.coact(x).items():
                    for nw, s in st.normal_form((j,) + w).items():
                        for h, t in F.mul_basis(b, a).items():
                            add_into(out, {(nw, h): c * d * s * t})
                for h, t in L.act(x, _e(a)).items():
                    add_into(out, {(w, h): c * t})
            out = clean(out)
        memo[word] = out
        return out

    n = F.dim
    entries = {}
    for u, word in enumerate(U.extra["words"]):
        for (w, f), c in coact_word(word).items():
            if w not in index:
                raise TruncationOverflow(f"coaction of {U.labels[u]} leaves the window")
            entries[(index[w] * n + f, u)] = c
    return SparseMatrix(U.dim * n, U.dim, entries)


def matched_pair_from_lie_hopf(L: LieHopfDatum, N: int) -> MatchedPairDatum:
    U = truncated_uea(L.lie, N)
    return MatchedPairDatum(U, L.F, _uea_action(L, U), extend_coaction_to_ug(L, N, U),
                            name=f"{L.name}_{N}")


def canonical_delta(g: LieDatum, N: int, U: HopfPresentation | None = None) -> tuple:
    """The character X -> Tr(ad X) on the truncated U(g), as values on the PBW basis."""
    U = U or truncated_uea(g, N)
    tr = g.trace_ad()
    values = []
    for word in U.extra["words"]:
        v = ONE
        for i in word:
            v *= tr[i]
        values.append(v)
    return tuple(values)


def canonical_sigma(L: LieHopfDatum) -> dict:
    """det of the matrix coefficients of the coaction, checked group-like."""
    F = L.F
    M = L.matrix_coefficients()
    d = L.lie.dim
    sigma: dict = {}
    for perm in permutations(range(d)):
        sign, _ = _sort_sign(perm)
        term = dict(F.one)
        for col, row in enumerate(perm):
            term = F.mul(term, M[row][col])
            if not term:
                break
        add_into(sigma, term, sign)
    sigma = clean(sigma)
    verdict = is_group_like(F, sigma)
    if not verdict:
        raise NotGroupLike(f"determinant of the coaction is not group-like: {verdict.witness}")
    return sigma


def canonical_mpi(L: LieHopfDatum, N: int, sigma: Mapping | None = None) -> ModularPair:
    """(δ, σ) on the bicrossed product F ⋈ U(g)_N, checked as an MPI.

    ``sigma`` overrides the canonical group-like, for negative controls.
    """
    D = matched_pair_from_lie_hopf(L, N)
    B = build_bicrossed(D)
    nU = D.U.dim
    delta_u = canonical_delta(L.lie, N, D.U)
    delta = tuple(L.F.counit[f] * delta_u[u] for f in range(L.F.dim) for u in range(nU))
    s = canonical_sigma(L) if sigma is None else clean(sigma)
    sigma_b = {f * nU + u: a * b for f, a in s.items() for u, b in D.U.one.items()}
    return check_mpi(B, delta, sigma_b)


# bicrossed bicomplex ------------------------------------------------------------------

@dataclass
class BicrossedBicomplex:
    """Cells ∧^q g* ⊗ F^{⊗p} for p <= N_p, q <= N_q, with d_CE (q+1) and b (p+1)."""

    datum: LieHopfDatum
    N_p: int
    N_q: int
    dims: dict
    d_ce: dict
    b: dict

    def cell_dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    def total_dim(self, n: int) -> int:
        return sum(self.cell_dim(p, n - p) for p in range(n + 1))

    @property
    def complete_degree(self) -> int:
        """Highest total degree n with every cell of degree n and n+1 present."""
        q_top = self.datum.lie.dim
        limit = self.N_p if self.N_q >= q_top else min(self.N_p, self.N_q)
        return limit - 1

    def total_differential(self, n: int) -> SparseMatrix:
        """D = b + (-1)^p d_CE from Tot^n to Tot^{n+1}."""
        src = [(p, n - p) for p in range(n + 1)]
        dst = [(p, n + 1 - p) for p in range(n + 2)]
        blocks = {}
        for j, (p, q) in enumerate(src):
            if not self.cell_dim(p, q):
                continue
            if (p, q) in self.b and self.cell_dim(p + 1, q):
                blocks[(dst.index((p + 1, q)), j)] = self.b[(p, q)]
            if (p, q) in self.d_ce and self.cell_dim(p, q + 1):
                blocks[(dst.index((p, q + 1)), j)] = self.d_ce[(p, q)].scale((-1) ** p)
        return block_matrix([self.cell_dim(*c) for c in dst], [self.cell_dim(*c) for c in src],
                            blocks)

    def check(self) -> CheckReport:
        rep = CheckReport()
        bad = [k for k, m in self.d_ce.items() if (k[0], k[1] + 1) in self.d_ce
               and not (self.d_ce[(k[0], k[1] + 1)] @ m).is_zero()]
        rep.add("d_ce_squared", Verdict(not bad, f"fails at cell {min(bad)}" if bad else None))
        bad = [k for k, m in self.b.items() if (k[0] + 1, k[1]) in self.b
               and not (self.b[(k[0] + 1, k[1])] @ m).is_zero()]
        rep.add("b_squared", Verdict(not bad, f"fails at cell {min(bad)}" if bad else None))
        bad = []
        for (p, q), m in self.b.items():
            if (p, q) in self.d_ce and (p + 1, q) in self.d_ce and (p, q + 1) in self.b:
                if self.d_ce[(p + 1, q)] @ m != self.b[(p, q + 1)] @ self.d_ce[(p, q)]:
                    bad.append((p, q))
        rep.add("commute", Verdict(not bad, f"b d_CE != d_CE b at cell {min(bad)}" if bad else None))
        bad = [n for n in range(self.complete_degree)
               if not (self.total_differential(n + 1) @ self.total_differential(n)).is_zero()]
        rep.add("total_squared", Verdict(not bad, f"D² != 0 out of degree {bad[0]}" if bad else None))
        return rep

    def total_cohomology(self) -> tuple:
        dims = []
        prev = SparseMatrix.zeros(self.total_dim(0), 0)
        for n in range(self.complete_degree + 1):
            d = self.total_differential(n)
            betti, _ = cohomology_at(prev, d)
            dims.append(betti)
            prev = d
        return tuple(dims)


def _wedge_coaction(L: LieHopfDatum, I: tuple) -> dict:
    """Left F-coaction on f^I, as {J: element of F}.

    On generators f^j -> Σ_i M[j][i] ⊗ f^i, where X_i -> Σ_j X_j ⊗ M[j][i];
    wedges coact through the product of F.
    """
    F = L.F
    M = L.matrix_coefficients()
    d = L.lie.dim
    terms = {(): dict(F.one)}
    for j in I:
        nxt: dict = {}
        for key, coeff in terms.items():
            for i in range(d):
                if M[j][i]:
                    prod_ = F.mul(coeff, M[j][i])
                    if prod_:
                        nxt[key + (i,)] = clean(add_into(dict(nxt.get(key + (i,), {})), prod_))
        terms = {k: v for k, v in nxt.items() if v}
    out: dict = {}
    for key, coeff in terms.items():
        sign, J = _sort_sign(key)
        if sign:
            prev = out.get(J, {})
            out[J] = clean(add_into(dict(prev), coeff, sign))
    return {J: v for J, v in out.items() if v}


def bicrossed_bicomplex(L: LieHopfDatum, N_p: int, N_q: int) -> BicrossedBicomplex:
    """The bicomplex (∧^q g* ⊗ F^{⊗p}, d_CE, b).

    d_CE is the Chevalley-Eilenberg differential with coefficients in F^{⊗p}
    under the bullet action; b is the coalgebra Hochschild coboundary
    b(m⊗f̃) = m⊗1⊗f̃ + Σ_i (-1)^i m⊗…Δ(f_i)… + (-1)^{p+1} m<0>⊗f̃⊗m<-1>
    with coefficients in the F-comodule ∧^q g*.
    """
    g, F = L.lie, L.F
    d, n = g.dim, F.dim
    q_top = min(N_q, d)
    dims, d_ce, b = {}, {}, {}
    wedge = _Graded(d, 1).bases
    for p in range(N_p + 1):
        tb = TensorBasis([n] * p)
        G = _Graded(d, n ** p)
        for q in range(q_top + 1):
            dims[(p, q)] = G.dim(q)
        # bullet action on F^{⊗p}, as left-module matrices
        rho = []
        for i in range(d):
            cols = []
            for key in product(range(n), repeat=p):
                cols.append({tb.encode(k): c for k, c in bullet(L, i, {key: ONE}).items()})
            rho.append(SparseMatrix.from_columns(n ** p, cols))
        for q in range(q_top):
            d_ce[(p, q)] = _ce_cochain_map(g, [m.scale(-1) for m in rho], G, q)
    for p in range(N_p):
        src, dst = TensorBasis([n] * p), TensorBasis([n] * (p + 1))
        Gs, Gd = _Graded(d, n ** p), _Graded(d, n ** (p + 1))
        for q in range(q_top + 1):
            entries: dict = {}
            for I in wedge[q]:
                co = _wedge_coaction(L, I)
                for key in product(range(n), repeat=p):
                    col = Gs.index(I, src.encode(key))
                    out: dict = {}
                    for f, c in F.one.items():
                        add_into(out, {(I, (f,) + key): c})
                    for i in range(p):
                        for (a, bb), c in F.comult.get(key[i], {}).items():
                            add_into(out, {(I, key[:i] + (a, bb) + key[i + 1:]): (-1) ** (i + 1) * c})
                    for J, coeff in co.items():
                        for f, c in coeff.items():
                            add_into(out, {(J, key + (f,)): (-1) ** (p + 1) * c})
                    for (J, k2), c in clean(out).items():
                        r = Gd.index(J, dst.encode(k2))
                        entries[(r, col)] = entries.get((r, col), ZERO) + c
            b[(p, q)] = SparseMatrix(Gd.dim(q), Gs.dim(q), entries)
    return BicrossedBicomplex(L, N_p, q_top, dims, d_ce, b)
