"""Hopf algebras by structure constants.

Elements are sparse dicts from basis indices to Fractions; elements of
tensor powers are dicts keyed by index tuples.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Mapping

from .errors import (DimensionMismatch, NotACharacter, NotFiniteDimensional,
                     NotGroupLike, SingularMatrix, TruncationOverflow)
from .exactlin import ONE, ZERO, FreeSpace, SparseMatrix, inverse, to_fraction
from .lie import LieDatum, Straightener, check_jacobi, monomial_label, pbw_monomials, word_of
from .util import CheckReport, Verdict, add_into, clean, scaled, tensor

AXIOMS = (
    "associativity",
    "unit",
    "coassociativity",
    "counit",
    "comultiplication_multiplicative",
    "counit_multiplicative",
    "antipode",
)


@dataclass(frozen=True)
class Truncation:
    degrees: tuple
    cutoff: int


class HopfPresentation:
    """A Hopf algebra given by sparse structure constants.

    mult:     {(i, j): {k: c}}      e_i e_j = sum c e_k
    unit:     {i: c}
    comult:   {i: {(j, k): c}}
    counit:   tuple of Fractions
    antipode: SparseMatrix (column i is S(e_i))

    A truncated presentation carries filtration degrees and a cutoff N;
    products whose degrees add up past N raise TruncationOverflow when used.
    ``window_product`` optionally computes such products exactly and keeps
    only the components that live in the window.
    """

    def __init__(self, space: FreeSpace, mult: Mapping, unit: Mapping, comult: Mapping,
                 counit, antipode: SparseMatrix, truncation: Truncation | None = None,
                 window_product: Callable | None = None, name: str = "H", extra=None):
        self.space = space
        self.name = name
        n = space.dim
        self.mult = {}
        for (i, j), vec in mult.items():
            vec = clean({k: to_fraction(c) for k, c in vec.items()})
            if vec:
                self.mult[(i, j)] = vec
        self.unit = clean({i: to_fraction(c) for i, c in unit.items()})
        self.comult = {}
        for i, vec in comult.items():
            vec = clean({tuple(k): to_fraction(c) for k, c in vec.items()})
            if vec:
                self.comult[i] = vec
        self.counit = tuple(to_fraction(c) for c in counit)
        self.antipode = antipode
        self.truncation = truncation
        self.window_product = window_product
        self.extra = extra or {}
        self._antipode_cols = antipode.columns() if antipode.cols == n else None

    # basic shape -----------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def labels(self):
        return self.space.labels

    @property
    def is_truncated(self) -> bool:
        return self.truncation is not None

    def degree(self, i: int) -> int:
        return self.truncation.degrees[i] if self.truncation else 0

    def degree_of(self, x: Mapping) -> int:
        return max((self.degree(i) for i in x), default=0)

    def in_window(self, *indices) -> bool:
        if not self.truncation:
            return True
        return sum(self.truncation.degrees[i] for i in indices) <= self.truncation.cutoff

    def validate(self):
        n = self.dim
        ok = lambda i: 0 <= i < n
        for (i, j), vec in self.mult.items():
            if not (ok(i) and ok(j) and all(ok(k) for k in vec)):
                raise DimensionMismatch(f"mult entry ({i}, {j}) out of range")
        for i, vec in self.comult.items():
            if not ok(i) or any(len(k) != 2 or not (ok(k[0]) and ok(k[1])) for k in vec):
                raise DimensionMismatch(f"comult entry {i} out of range")
        if not all(ok(i) for i in self.unit):
            raise DimensionMismatch("unit out of range")
        if len(self.counit) != n:
            raise DimensionMismatch(f"counit has length {len(self.counit)}, expected {n}")
        if self.antipode.shape != (n, n):
            raise DimensionMismatch(f"antipode has shape {self.antipode.shape}")
        if self.truncation and len(self.truncation.degrees) != n:
            raise DimensionMismatch("truncation degrees do not match the basis")

    # elements ----------------------------------------------------------------
    def basis(self, label_or_index) -> dict:
        i = label_or_index if isinstance(label_or_index, int) else self.space.index(label_or_index)
        return {i: ONE}

    def vector(self, coeffs: Mapping) -> dict:
        """Element from a {label: coefficient} dict."""
        return clean({self.space.index(k): to_fraction(v) for k, v in coeffs.items()})

    @property
    def one(self) -> dict:
        return dict(self.unit)

    def mul_basis(self, i: int, j: int) -> dict:
        if not self.in_window(i, j):
            raise TruncationOverflow(
                f"{self.labels[i]}·{self.labels[j]} leaves the degree-{self.truncation.cutoff} window")
        return self.mult.get((i, j), {})

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                add_into(out, self.mul_basis(i, j), a * b)
        return out

    def mul_window(self, x: Mapping, y: Mapping) -> dict:
        """Product keeping only in-window components (exact on finite algebras)."""
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                if self.in_window(i, j):
                    add_into(out, self.mult.get((i, j), {}), a * b)
                elif self.window_product is not None:
                    add_into(out, self.window_product(i, j), a * b)
                else:
                    raise TruncationOverflow(
                        f"{self.labels[i]}·{self.labels[j]} leaves the window")
        return out

    def mul_many(self, *xs, window=False) -> dict:
        out = self.one
        op = self.mul_window if window else self.mul
        for x in xs:
            out = op(out, x)
        return out

    def delta(self, x: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            add_into(out, self.comult.get(i, {}), a)
        return out

    def delta_n(self, x: Mapping, factors: int) -> dict:
        """Iterated coproduct into `factors` tensor factors, as (Δ⊗id...)∘Δ."""
        if factors == 1:
            return {(i,): a for i, a in x.items()}
        current = self.delta(x)
        for _ in range(factors - 2):
            nxt: dict = {}
            for key, a in current.items():
                for pair, b in self.comult.get(key[0], {}).items():
                    k = pair + key[1:]
                    nxt[k] = nxt.get(k, ZERO) + a * b
            current = clean(nxt)
        return current

    def eps(self, x: Mapping) -> Fraction:
        return sum((self.counit[i] * a for i, a in x.items()), ZERO)

    def S(self, x: Mapping) -> dict:
        out: dict = {}
        cols = self._antipode_cols
        for i, a in x.items():
            add_into(out, cols[i], a)
        return out

    def apply_matrix(self, M: SparseMatrix, x: Mapping) -> dict:
        return M.apply_sparse(x)

    # matrices ----------------------------------------------------------------
    def left_mult_matrix(self, x: Mapping) -> SparseMatrix:
        return SparseMatrix.from_columns(self.dim, [self.mul(x, {j: ONE}) for j in range(self.dim)])

    def right_mult_matrix(self, x: Mapping) -> SparseMatrix:
        return SparseMatrix.from_columns(self.dim, [self.mul({j: ONE}, x) for j in range(self.dim)])

    def mult_matrix(self) -> SparseMatrix:
        if self.is_truncated:
            raise NotFiniteDimensional(f"{self.name} is a truncated presentation")
        n = self.dim
        return SparseMatrix(n, n * n, {(k, i * n + j): c for (i, j), vec in self.mult.items()
                                       for k, c in vec.items()})

    def comult_matrix(self) -> SparseMatrix:
        n = self.dim
        return SparseMatrix(n * n, n, {(j * n + k, i): c for i, vec in self.comult.items()
                                       for (j, k), c in vec.items()})

    def structure_signature(self):
        """Hashable snapshot of all structure tensors, for exact comparison."""
        return (
            self.labels,
            tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.mult.items())),
            tuple(sorted(self.unit.items())),
            tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.comult.items())),
            self.counit,
            tuple(sorted(self.antipode.entries.items())),
            self.truncation,
        )

    def __repr__(self):
        extra = f", cutoff {self.truncation.cutoff}" if self.truncation else ""
        return f"HopfPresentation({self.name!r}, dim {self.dim}{extra})"


# construction helpers ------------------------------------------------------------

def hopf_from_labels(labels, mult, unit, comult, counit, antipode, name="H") -> HopfPresentation:
    """Build a presentation from label-keyed sparse data.

    mult:     {(a, b): {c: coef}}
    unit:     label or {label: coef}
    comult:   {a: {(b, c): coef}}
    counit:   {a: coef}
    antipode: {a: {b: coef}}
    """
    space = FreeSpace(tuple(labels))
    ix = space.index
    m = {(ix(a), ix(b)): {ix(c): v for c, v in vec.items()} for (a, b), vec in mult.items()}
    u = {ix(unit): ONE} if isinstance(unit, str) else {ix(k): v for k, v in unit.items()}
    d = {ix(a): {(ix(b), ix(c)): v for (b, c), v in vec.items()} for a, vec in comult.items()}
    e = [ZERO] * space.dim
    for a, v in counit.items():
        e[ix(a)] = to_fraction(v)
    s = SparseMatrix(space.dim, space.dim,
                     {(ix(b), ix(a)): v for a, vec in antipode.items() for b, v in vec.items()})
    H = HopfPresentation(space, m, u, d, e, s, name=name)
    H.validate()
    return H


# axiom checks --------------------------------------------------------------------

def _label_tuple(H, key) -> str:
    return "(" + ", ".join(H.labels[i] for i in key) + ")"


def _tensor_mul(H, x: Mapping, y: Mapping) -> dict:
    """Componentwise product in a tensor power."""
    out: dict = {}
    for k1, a in x.items():
        for k2, b in y.items():
            parts = [H.mul_basis(i, j) for i, j in zip(k1, k2)]
            for combo in product(*[list(p.items()) for p in parts]):
                coef = a * b
                for _, c in combo:
                    coef *= c
                key = tuple(idx for idx, _ in combo)
                out[key] = out.get(key, ZERO) + coef
    return clean(out)


def check_hopf_axioms(H: HopfPresentation) -> CheckReport:
    """Verify every Hopf axiom by exact contraction on basis elements.

    Truncated presentations are checked on the basis tuples whose total
    filtration degree stays inside the window.
    """
    H.validate()
    n = H.dim
    rep = CheckReport()
    one = H.one

    def first(gen):
        for witness in gen:
            return Verdict(False, witness)
        return Verdict(True)

    def assoc():
        for i, j, k in product(range(n), repeat=3):
            if not H.in_window(i, j, k):
                continue
            lhs = H.mul(H.mul_basis(i, j), {k: ONE})
            rhs = H.mul({i: ONE}, H.mul_basis(j, k))
            if clean(lhs) != clean(rhs):
                yield f"(e_i e_j) e_k != e_i (e_j e_k) at {_label_tuple(H, (i, j, k))}"

    def unit():
        if not one:
            yield "unit is zero"
            return
        for i in range(n):
            e = {i: ONE}
            if clean(H.mul(one, e)) != e or clean(H.mul(e, one)) != e:
                yield f"1·e != e at {H.labels[i]}"

    def coassoc():
        for i in range(n):
            d = H.delta({i: ONE})
            lhs, rhs = {}, {}
            for (a, b), c in d.items():
                add_into(lhs, {k + (b,): v for k, v in H.comult.get(a, {}).items()}, c)
                add_into(rhs, {(a,) + k: v for k, v in H.comult.get(b, {}).items()}, c)
            if lhs != rhs:
                yield f"(Δ⊗id)Δ != (id⊗Δ)Δ at {H.labels[i]}"

    def counit():
        for i in range(n):
            d = H.delta({i: ONE})
            left, right = {}, {}
            for (a, b), c in d.items():
                add_into(left, {b: H.counit[a] * c})
                add_into(right, {a: H.counit[b] * c})
            if left != {i: ONE} or right != {i: ONE}:
                yield f"(ε⊗id)Δ or (id⊗ε)Δ differs from id at {H.labels[i]}"

    def delta_mult():
        ones = tensor(one, one)
        if clean(H.delta(one)) != clean(ones):
            yield "Δ(1) != 1⊗1"
        for i, j in product(range(n), repeat=2):
            if not H.in_window(i, j):
                continue
            lhs = clean(H.delta(H.mul_basis(i, j)))
            rhs = _tensor_mul(H, H.delta({i: ONE}), H.delta({j: ONE}))
            if lhs != rhs:
                yield f"Δ(e_i e_j) != Δ(e_i)Δ(e_j) at {_label_tuple(H, (i, j))}"

    def eps_mult():
        if H.eps(one) != 1:
            yield "ε(1) != 1"
        for i, j in product(range(n), repeat=2):
            if not H.in_window(i, j):
                continue
            if H.eps(H.mul_basis(i, j)) != H.counit[i] * H.counit[j]:
                yield f"ε(e_i e_j) != ε(e_i)ε(e_j) at {_label_tuple(H, (i, j))}"

    def antipode():
        for i in range(n):
            d = H.delta({i: ONE})
            target = scaled(one, H.counit[i])
            left, right = {}, {}
            for (a, b), c in d.items():
                add_into(left, H.mul(H.S({a: ONE}), {b: ONE}), c)
                add_into(right, H.mul({a: ONE}, H.S({b: ONE})), c)
            if left != target or right != target:
                yield f"m(S⊗id)Δ or m(id⊗S)Δ differs from ηε at {H.labels[i]}"

    checks = dict(zip(AXIOMS, (assoc, unit, coassoc, counit, delta_mult, eps_mult, antipode)))
    for name in AXIOMS:
        rep.add(name, first(checks[name]()))
    return rep


# duals -------------------------------------------------------------------------

def dual_label(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"


def dual_hopf(H: HopfPresentation) -> HopfPresentation:
    """The dual Hopf algebra on the dual basis (labels gain or lose a '*')."""
    if H.is_truncated:
        raise NotFiniteDimensional(f"{H.name} is a truncated presentation; no finite dual")
    space = FreeSpace(tuple(dual_label(s) for s in H.labels))
    mult: dict = {}
    for k, vec in H.comult.items():
        for (i, j), c in vec.items():
            mult.setdefault((i, j), {})[k] = c
    comult: dict = {}
    for (i, j), vec in H.mult.items():
        for k, c in vec.items():
            comult.setdefault(k, {})[(i, j)] = c
    unit = {i: c for i, c in enumerate(H.counit) if c}
    counit = [H.unit.get(i, ZERO) for i in range(H.dim)]
    name = H.name[:-1] if H.name.endswith("*") else H.name + "*"
    return HopfPresentation(space, mult, unit, comult, counit, H.antipode.transpose(), name=name)


# characters, group-likes, modular pairs ----------------------------------------

def is_character(H: HopfPresentation, phi) -> Verdict:
    phi = tuple(to_fraction(x) for x in phi)
    if len(phi) != H.dim:
        raise DimensionMismatch("covector length does not match the algebra")
    val = lambda x: sum((phi[i] * a for i, a in x.items()), ZERO)
    if val(H.one) != 1:
        return Verdict(False, "δ(1) != 1")
    for i, j in product(range(H.dim), repeat=2):
        if H.in_window(i, j) and val(H.mul_basis(i, j)) != phi[i] * phi[j]:
            return Verdict(False, f"δ(e_i e_j) != δ(e_i)δ(e_j) at {_label_tuple(H, (i, j))}")
    return Verdict(True)


def is_group_like(H: HopfPresentation, v: Mapping) -> Verdict:
    v = clean(v)
    if H.eps(v) != 1:
        return Verdict(False, "ε(σ) != 1")
    if clean(H.delta(v)) != clean(tensor(v, v)):
        return Verdict(False, "Δ(σ) != σ⊗σ")
    return Verdict(True)


def character_value(phi, x: Mapping) -> Fraction:
    return sum((phi[i] * a for i, a in x.items()), ZERO)


def twisted_antipode(H: HopfPresentation, delta) -> SparseMatrix:
    """Matrix of h -> δ(h_(1)) S(h_(2))."""
    delta = tuple(to_fraction(x) for x in delta)
    if not is_character(H, delta):
        raise NotACharacter("twisted antipode needs a character")
    cols = []
    for i in range(H.dim):
        out: dict = {}
        for (a, b), c in H.delta({i: ONE}).items():
            if delta[a]:
                add_into(out, H.S({b: ONE}), c * delta[a])
        cols.append(out)
    return SparseMatrix.from_columns(H.dim, cols)


def ad_sigma(H: HopfPresentation, sigma: Mapping) -> SparseMatrix:
    """Matrix of h -> σ h σ^{-1}, using S(σ) as the inverse of a group-like."""
    verdict = is_group_like(H, sigma)
    if not verdict:
        raise NotGroupLike(verdict.witness)
    inv = H.S(sigma)
    cols = [H.mul(H.mul(sigma, {i: ONE}), inv) for i in range(H.dim)]
    return SparseMatrix.from_columns(H.dim, cols)


@dataclass(frozen=True)
class ModularPair:
    delta: tuple
    sigma: tuple
    verified: bool
    witness: str | None = None

    def __bool__(self):
        return self.verified


def _as_dict(H, v) -> dict:
    if isinstance(v, Mapping):
        return clean(v)
    return clean({i: to_fraction(x) for i, x in enumerate(v)})


def check_mpi(H: HopfPresentation, delta, sigma) -> ModularPair:
    """Is (δ, σ) a modular pair in involution: δ(σ) = 1 and S_δ² = Ad_σ."""
    delta = tuple(to_fraction(x) for x in delta)
    sig = _as_dict(H, sigma)
    sig_t = tuple(sig.get(i, ZERO) for i in range(H.dim))
    v = is_character(H, delta)
    if not v:
        return ModularPair(delta, sig_t, False, f"not a character: {v.witness}")
    v = is_group_like(H, sig)
    if not v:
        return ModularPair(delta, sig_t, False, f"not group-like: {v.witness}")
    if character_value(delta, sig) != 1:
        return ModularPair(delta, sig_t, False, "δ(σ) != 1")
    s_delta = twisted_antipode(H, delta)
    lhs, rhs = s_delta @ s_delta, ad_sigma(H, sig)
    if lhs != rhs:
        bad = next(i for i in range(H.dim) if lhs.column(i) != rhs.column(i))
        return ModularPair(delta, sig_t, False, f"S_δ² != Ad_σ at {H.labels[bad]}")
    return ModularPair(delta, sig_t, True)


def counit_character(H: HopfPresentation) -> tuple:
    return H.counit


def unit_grouplike(H: HopfPresentation) -> dict:
    return H.one


def characters(H: HopfPresentation) -> list[tuple]:
    """All rational characters, found by solving the polynomial system exactly."""
    import sympy

    if H.is_truncated:
        raise NotFiniteDimensional("character enumeration needs a finite presentation")
    xs = sympy.symbols(f"d0:{H.dim}")
    eqs = [sum(sympy.Rational(c.numerator, c.denominator) * xs[i] for i, c in H.unit.items()) - 1]
    for i, j in product(range(H.dim), repeat=2):
        rhs = sum((sympy.Rational(c.numerator, c.denominator) * xs[k]
                   for k, c in H.mult.get((i, j), {}).items()), sympy.Integer(0))
        eqs.append(xs[i] * xs[j] - rhs)
    sols = sympy.solve(eqs, xs, dict=True)
    out = set()
    for sol in sols:
        values = [sol.get(x, x) for x in xs]
        if all(v.is_Rational for v in values):
            out.add(tuple(Fraction(int(v.p), int(v.q)) for v in values))
    found = sorted(out)
    return [c for c in found if is_character(H, c)]


def group_likes(H: HopfPresentation) -> list[tuple]:
    """Group-like elements, as the characters of the dual."""
    return [g for g in characters(dual_hopf(H)) if is_group_like(H, _as_dict(H, g))]


# truncated enveloping algebras ---------------------------------------------------

def truncated_uea(g: LieDatum, N: int) -> HopfPresentation:
    """U(g) on the PBW monomials of degree <= N.

    Products whose degrees sum past N raise TruncationOverflow lazily;
    the coproduct, counit and antipode never leave the retained basis.
    """
    verdict = check_jacobi(g)
    if not verdict:
        raise DimensionMismatch(f"not a Lie algebra: {verdict.witness}")
    exps = pbw_monomials(g.dim, N)
    words = [word_of(e) for e in exps]
    index = {w: i for i, w in enumerate(words)}
    labels = tuple(monomial_label(g.labels, e) for e in exps)
    degrees = tuple(len(w) for w in words)
    st = Straightener(g)

    def to_basis(element: Mapping, keep_high=False) -> dict:
        out = {}
        for w, c in element.items():
            if w in index:
                out[index[w]] = c
            elif not keep_high:
                raise TruncationOverflow(f"word {w} outside the window")
        return out

    mult = {}
    for i, wi in enumerate(words):
        for j, wj in enumerate(words):
            if degrees[i] + degrees[j] <= N:
                mult[(i, j)] = to_basis(st.normal_form(wi + wj))

    comult = {}
    for i, w in enumerate(words):
        vec: dict = {}
        k = len(w)
        for r in range(k + 1):
            for left in combinations(range(k), r):
                lw = tuple(w[p] for p in left)
                rw = tuple(w[p] for p in range(k) if p not in left)
                key = (index[lw], index[rw])
                vec[key] = vec.get(key, ZERO) + 1
        comult[i] = vec

    counit = [ONE if d == 0 else ZERO for d in degrees]
    cols = []
    for w in words:
        sign = -1 if len(w) % 2 else 1
        cols.append(scaled(to_basis(st.normal_form(tuple(reversed(w)))), sign))
    antipode = SparseMatrix.from_columns(len(words), cols)

    def window_product(i, j):
        return to_basis(st.normal_form(words[i] + words[j]), keep_high=True)

    H = HopfPresentation(FreeSpace(labels), mult, {index[()]: ONE}, comult, counit, antipode,
                         truncation=Truncation(degrees, N), window_product=window_product,
                         name=f"U({g.name})_{N}",
                         extra={"lie": g, "words": words, "word_index": index, "straightener": st})
    return H


def uea_generator(U: HopfPresentation, i: int) -> dict:
    """The element X_i of a truncated enveloping algebra."""
    return {U.extra["word_index"][(i,)]: ONE}


def uea_word(U: HopfPresentation, word) -> dict:
    """Exact PBW expansion of a generator word, restricted to the window."""
    st = U.extra["straightener"]
    idx = U.extra["word_index"]
    out = {}
    for w, c in st.normal_form(tuple(word)).items():
        if w not in idx:
            raise TruncationOverflow(f"word {w} leaves the window")
        out[idx[w]] = c
    return out


def primitive_projection(U: HopfPresentation) -> SparseMatrix:
    """The Eulerian idempotent Σ_k (-1)^(k+1)/k · m^(k) (id - ηε)^⊗k Δ^(k) on U(g)_N.

    It fixes g and kills every symmetrized product of two or more generators,
    so its image is the degree-one part.
    """
    cols = []
    for i in range(U.dim):
        out: dict = {}
        for k in range(1, U.degree(i) + 1):
            for key, c in U.delta_n({i: ONE}, k).items():
                if any(U.counit[j] for j in key):
                    continue      # for PBW words id - ηε either fixes a factor or kills it
                prod = U.mul_many(*({j: ONE} for j in key))
                add_into(out, prod, c * Fraction((-1) ** (k + 1), k))
        cols.append(clean(out))
    return SparseMatrix.from_columns(U.dim, cols)


def matrix_inverse_or_raise(M: SparseMatrix, exc):
    try:
        return inverse(M)
    except SingularMatrix as e:
        raise exc(str(e)) from None
