"""Brute-force dense references, written without the package's linear algebra.

Everything here works with sympy matrices over QQ and rebuilds operators
straight from structure constants, so agreement with the sparse code is
a meaningful cross-check.
"""
from __future__ import annotations

from itertools import combinations, product

from sympy import Matrix, Rational, eye, zeros


def q(x) -> Rational:
    return Rational(x.numerator, x.denominator) if hasattr(x, "numerator") else Rational(x)


def kron(A: Matrix, B: Matrix) -> Matrix:
    out = zeros(A.rows * B.rows, A.cols * B.cols)
    for i, j in product(range(A.rows), range(A.cols)):
        a = A[i, j]
        if a == 0:
            continue
        for k, l in product(range(B.rows), range(B.cols)):
            out[i * B.rows + k, j * B.cols + l] = a * B[k, l]
    return out


def rank(M: Matrix) -> int:
    return 0 if M.rows == 0 or M.cols == 0 else M.rank()


# Hopf algebras ----------------------------------------------------------------------

class DenseHopf:
    """Structure maps of a finite Hopf algebra as dense matrices."""

    def __init__(self, H):
        n = self.n = H.dim
        self.m = zeros(n, n * n)
        for (i, j), vec in H.mult.items():
            for k, c in vec.items():
                self.m[k, i * n + j] = q(c)
        self.delta = zeros(n * n, n)
        for i, vec in H.comult.items():
            for (j, k), c in vec.items():
                self.delta[j * n + k, i] = q(c)
        self.eps = Matrix([[q(c) for c in H.counit]])
        self.eta = zeros(n, 1)
        for i, c in H.unit.items():
            self.eta[i, 0] = q(c)
        self.S = zeros(n, n)
        for (r, c), x in H.antipode.entries.items():
            self.S[r, c] = q(x)

    def flip(self) -> Matrix:
        n = self.n
        P = zeros(n * n, n * n)
        for i, j in product(range(n), repeat=2):
            P[j * n + i, i * n + j] = 1
        return P

    def axioms(self) -> dict:
        n, m, d, e, u, S = self.n, self.m, self.delta, self.eps, self.eta, self.S
        I = eye(n)
        return {
            "associativity": m * kron(m, I) == m * kron(I, m),
            "unit": m * kron(u, I) == I and m * kron(I, u) == I,
            "coassociativity": kron(d, I) * d == kron(I, d) * d,
            "counit": kron(e, I) * d == I and kron(I, e) * d == I,
            "comultiplication_multiplicative":
                d * m == kron(m, m) * kron(kron(I, self.flip()), I) * kron(d, d),
            "counit_multiplicative": e * m == kron(e, e),
            "antipode": m * kron(S, I) * d == u * e and m * kron(I, S) * d == u * e,
        }

    def delta_iter(self, factors: int) -> Matrix:
        """Δ^{(factors-1)} : H -> H^{⊗factors}."""
        D = eye(self.n)
        for k in range(1, factors):
            D = kron(eye(self.n ** (k - 1)), self.delta) * D
        return D


def tensor_product_hopf_dense(F, U) -> dict:
    """Structure tensors of F ⊗ U on basis f*dimU + u, as plain dicts."""
    a, b = DenseHopf(F), DenseHopf(U)
    nf, nu = a.n, b.n
    n = nf * nu
    mult, comult = {}, {}
    for (f1, u1, f2, u2) in product(range(nf), range(nu), range(nf), range(nu)):
        for f3, u3 in product(range(nf), range(nu)):
            c = a.m[f3, f1 * nf + f2] * b.m[u3, u1 * nu + u2]
            if c:
                mult.setdefault((f1 * nu + u1, f2 * nu + u2), {})[f3 * nu + u3] = c
    for f, u in product(range(nf), range(nu)):
        for f1, f2, u1, u2 in product(range(nf), range(nf), range(nu), range(nu)):
            c = a.delta[f1 * nf + f2, f] * b.delta[u1 * nu + u2, u]
            if c:
                comult.setdefault(f * nu + u, {})[(f1 * nu + u1, f2 * nu + u2)] = c
    counit = [a.eps[0, f] * b.eps[0, u] for f in range(nf) for u in range(nu)]
    unit = {f * nu + u: a.eta[f, 0] * b.eta[u, 0] for f in range(nf) for u in range(nu)
            if a.eta[f, 0] * b.eta[u, 0]}
    S = {}
    for f, u, f2, u2 in product(range(nf), range(nu), range(nf), range(nu)):
        c = a.S[f2, f] * b.S[u2, u]
        if c:
            S[(f2 * nu + u2, f * nu + u)] = c
    return {"dim": n, "mult": mult, "comult": comult, "counit": counit, "unit": unit,
            "antipode": S}


# cocyclic modules from the standard complex formulas --------------------------------

class DenseCoefficients:
    """Right action matrices act[h] and coaction blocks coact[h] (v -> h ⊗ block·v)."""

    def __init__(self, V):
        d = self.d = V.dim
        n = V.hopf.dim
        self.act = [Matrix(d, d, lambda r, c: q(V.module.act[h][r, c])) for h in range(n)]
        self.coact = []
        for h in range(n):
            B = zeros(d, d)
            for (row, col), x in V.comodule.coaction.entries.items():
                hh, w = divmod(row, d)
                if hh == h:
                    B[w, col] = q(x)
            self.coact.append(B)


def standard_operators(H, V, n: int):
    """Faces into C^n, degeneracies and τ on C^n for C^n = V ⊗ H^{⊗n}."""
    A, C = DenseHopf(H), DenseCoefficients(V)
    k, d = A.n, C.d

    def dim(p):
        return d * k ** p

    def encode(v, hs):
        idx = v
        for h in hs:
            idx = idx * k + h
        return idx

    def basis(p):
        return [(v, hs) for v in range(d) for hs in product(range(k), repeat=p)]

    faces = []
    if n >= 1:
        p = n - 1
        for i in range(n + 1):
            F = zeros(dim(n), dim(p))
            for v, hs in basis(p):
                col = encode(v, hs)
                if i == 0:
                    for one, c in enumerate(A.eta):
                        if c:
                            F[encode(v, (one,) + hs), col] += c
                elif i <= p:
                    h = hs[i - 1]
                    for a, b in product(range(k), repeat=2):
                        c = A.delta[a * k + b, h]
                        if c:
                            F[encode(v, hs[:i - 1] + (a, b) + hs[i:]), col] += c
                else:
                    for h in range(k):
                        for w in range(d):
                            c = C.coact[h][w, v]
                            if c:
                                F[encode(w, hs + (h,)), col] += c
            faces.append(F)
    degens = []
    for j in range(n):
        D = zeros(dim(n - 1), dim(n))
        for v, hs in basis(n):
            c = A.eps[0, hs[j]]
            if c:
                D[encode(v, hs[:j] + hs[j + 1:]), encode(v, hs)] += c
        degens.append(D)
    if n == 0:
        return faces, degens, eye(d)
    T = zeros(dim(n), dim(n))
    Dn = A.delta_iter(n)
    for v, hs in basis(n):
        col = encode(v, hs)
        for h0, w in product(range(k), range(d)):
            c0 = C.coact[h0][w, v]
            if not c0:
                continue
            tail = hs[1:] + (h0,)
            for a, b in product(range(k), repeat=2):
                c1 = A.delta[a * k + b, hs[0]]
                if not c1:
                    continue
                vec = C.act[a][:, w]
                sb = A.S[:, b]
                for s, cs in enumerate(sb):
                    if not cs:
                        continue
                    parts = Dn[:, s]
                    for r, cp in enumerate(parts):
                        if not cp:
                            continue
                        digits = []
                        rr = r
                        for _ in range(n):
                            rr, dgt = divmod(rr, k)
                            digits.append(dgt)
                        digits.reverse()
                        out = []
                        coeff = c0 * c1 * cs * cp
                        for x, y in zip(digits, tail):
                            col_m = A.m[:, x * k + y]
                            out.append(col_m)
                        for combo in product(*[[(z, cz) for z, cz in enumerate(cm) if cz]
                                               for cm in out]):
                            cc = coeff
                            idx = []
                            for z, cz in combo:
                                cc *= cz
                                idx.append(z)
                            for u, cu in enumerate(vec):
                                if cu:
                                    T[encode(u, tuple(idx)), col] += cc * cu
    return faces, degens, T


def cyclic_cohomology_via_connes(H, V, top: int) -> list:
    """HC^0..HC^top as the cohomology of cyclically invariant cochains under b."""
    ops = [standard_operators(H, V, n) for n in range(top + 2)]
    bs = []
    for n in range(top + 1):
        faces = ops[n + 1][0]
        b = zeros(faces[0].rows, faces[0].cols)
        for i, F in enumerate(faces):
            b += (-1) ** i * F
        bs.append(b)
    inv = []
    for n in range(top + 1):
        T = ops[n][2]
        lam = (-1) ** n * T
        ker = (eye(T.rows) - lam).nullspace()
        inv.append(Matrix.hstack(*ker) if ker else zeros(T.rows, 0))
    out = []
    for n in range(top + 1):
        K = inv[n]
        z = K.cols - rank(bs[n] * K)
        bnd = rank(bs[n - 1] * inv[n - 1]) if n else 0
        out.append(z - bnd)
    return out


# Lie algebras ------------------------------------------------------------------------

def dense_brackets(g):
    n = g.dim
    c = [[[Rational(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), vec in g.bracket.items():
        for k, x in vec.items():
            c[i][j][k] = q(x)
            c[j][i][k] = -q(x)
    return c


def jacobi_holds(g) -> bool:
    c = dense_brackets(g)
    n = g.dim

    def br(x, y):
        return [sum(x[i] * y[j] * c[i][j][k] for i in range(n) for j in range(n))
                for k in range(n)]

    e = [[Rational(int(i == j)) for i in range(n)] for j in range(n)]
    return all(
        all(a + b + d == 0 for a, b, d in zip(br(e[x], br(e[y], e[z])),
                                              br(e[y], br(e[z], e[x])),
                                              br(e[z], br(e[x], e[y]))))
        for x, y, z in combinations(range(n), 3))


def ce_differentials(g, act) -> list:
    """d_CE on alternating cochains ∧^q g* ⊗ V for a right module, q = 0..dim g - 1.

    Cochains are stored by sorted index tuples; the right action is turned
    into a left one through X·v = -v·X.
    """
    n = g.dim
    d = act[0].rows if act else 1
    c = dense_brackets(g)
    A = [Matrix(d, d, lambda r, s: q(M[r, s])) for M in act]
    wedges = [list(combinations(range(n), p)) for p in range(n + 1)]
    index = [{I: t for t, I in enumerate(ws)} for ws in wedges]

    out = []
    for p in range(n):
        src, dst = wedges[p], wedges[p + 1]
        D = zeros(len(dst) * d, len(src) * d)
        for J in dst:
            for I_pos, I in enumerate(src):
                for v in range(d):
                    col = I_pos * d + v
                    # evaluate (d α)(X_J) where α = f^I ⊗ e_v
                    acc = [Rational(0)] * d
                    for i in range(p + 1):
                        rest = J[:i] + J[i + 1:]
                        if rest == I:
                            left = -A[J[i]][:, v]
                            for w in range(d):
                                acc[w] += (-1) ** i * left[w]
                    for i, j in combinations(range(p + 1), 2):
                        rest = J[:i] + J[i + 1:j] + J[j + 1:]
                        for k in range(n):
                            ck = c[J[i]][J[j]][k]
                            if not ck:
                                continue
                            args = (k,) + rest
                            if len(set(args)) < len(args):
                                continue
                            order = sorted(range(len(args)), key=lambda t: args[t])
                            if tuple(args[t] for t in order) != I:
                                continue
                            sign = _perm_sign(order)
                            acc[v] += (-1) ** (i + j) * ck * sign
                    for w in range(d):
                        if acc[w]:
                            D[index[p + 1][J] * d + w, col] += acc[w]
        out.append(D)
    return out


def _perm_sign(order) -> int:
    sign, seen = 1, [False] * len(order)
    for s in range(len(order)):
        if seen[s]:
            continue
        length, t = 0, s
        while not seen[t]:
            seen[t] = True
            t = order[t]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def ce_cohomology(g, act) -> list:
    n = g.dim
    d = act[0].rows if act else 1
    Ds = ce_differentials(g, act)
    dims = [len(list(combinations(range(n), p))) * d for p in range(n + 1)]
    out = []
    for p in range(n + 1):
        r_out = rank(Ds[p]) if p < n else 0
        r_in = rank(Ds[p - 1]) if p else 0
        out.append(dims[p] - r_out - r_in)
    return out


def relative_ce_cohomology(g, act, sub) -> list:
    """Cohomology of cochains α with ι_Z α = 0 and ι_Z dα = 0 for Z in sub."""
    n = g.dim
    d = act[0].rows if act else 1
    Ds = ce_differentials(g, act)
    wedges = [list(combinations(range(n), p)) for p in range(n + 1)]
    index = [{I: t for t, I in enumerate(ws)} for ws in wedges]

    def contraction(p, z):
        """ι_Z : ∧^p -> ∧^{p-1}."""
        M = zeros(len(wedges[p - 1]) * d, len(wedges[p]) * d)
        for I in wedges[p]:
            for pos, a in enumerate(I):
                za = z.get(a, 0)
                if not za:
                    continue
                rest = I[:pos] + I[pos + 1:]
                for v in range(d):
                    M[index[p - 1][rest] * d + v, index[p][I] * d + v] += (-1) ** pos * q(za)
        return M

    basic = []
    for p in range(n + 1):
        size = len(wedges[p]) * d
        rows = []
        for z in sub:
            if p >= 1:
                rows.append(contraction(p, z))
            if p < n:
                rows.append(contraction(p + 1, z) * Ds[p])
        if rows:
            ker = Matrix.vstack(*rows).nullspace()
            basic.append(Matrix.hstack(*ker) if ker else zeros(size, 0))
        else:
            basic.append(eye(size))
    out = []
    for p in range(n + 1):
        K = basic[p]
        z = K.cols - (rank(Ds[p] * K) if p < n else 0)
        b = rank(Ds[p - 1] * basic[p - 1]) if p else 0
        out.append(z - b)
    return out


def total_hc(b_maps: list, B_maps: list, dims: list, top: int) -> list:
    """HC^0..HC^top of the first-quadrant (b, B) bicomplex C^{q-p}, 0 <= p <= q.

    b_maps[j]: C^j -> C^{j+1}; B_maps[j]: C^j -> C^{j-1} (B_maps[0] unused).
    Spaces past len(dims) are zero.
    """
    def space(j):
        return dims[j] if 0 <= j < len(dims) else 0

    def tot(m):
        return [m - 2 * p for p in range(m // 2 + 1)]

    def D(m):
        src, dst = tot(m), tot(m + 1)
        M = zeros(sum(space(j) for j in dst), sum(space(j) for j in src))
        col = 0
        for j in src:
            w = space(j)
            row = 0
            for jj in dst:
                h = space(jj)
                if w and h:
                    if jj == j + 1 and j < len(b_maps):
                        M[row:row + h, col:col + w] = b_maps[j]
                    if jj == j - 1 and j >= 1:
                        M[row:row + h, col:col + w] = B_maps[j]
                row += h
            col += w
        return M

    out = []
    for m in range(top + 1):
        size = sum(space(j) for j in tot(m))
        out.append(size - rank(D(m)) - (rank(D(m - 1)) if m else 0))
    return out


def koszul_contractions(g, blocks) -> list:
    """α ⊗ v -> Σ_i ι_{X_i} α ⊗ B_i v, from ∧^p to ∧^{p-1}; entry 0 is unused."""
    n = g.dim
    d = blocks[0].rows if blocks else 1
    B = [Matrix(d, d, lambda r, s: q(M[r, s])) for M in blocks]
    wedges = [list(combinations(range(n), p)) for p in range(n + 1)]
    index = [{I: t for t, I in enumerate(ws)} for ws in wedges]
    out = [None]
    for p in range(1, n + 1):
        M = zeros(len(wedges[p - 1]) * d, len(wedges[p]) * d)
        for I in wedges[p]:
            for pos, a in enumerate(I):
                rest = I[:pos] + I[pos + 1:]
                for v, w in product(range(d), repeat=2):
                    c = B[a][w, v]
                    if c:
                        M[index[p - 1][rest] * d + w, index[p][I] * d + v] += (-1) ** pos * c
        out.append(M)
    return out


def w_total_hc(g, V, top: int) -> list:
    n, d = g.dim, V.dim
    dims = [len(list(combinations(range(n), p))) * d for p in range(n + 1)]
    return total_hc(ce_differentials(g, V.act), koszul_contractions(g, V.comodule.blocks()),
                    dims, top)
