from fractions import Fraction

import pytest

from hopfcyclic import catalog
from hopfcyclic.cli.objects import Workspace
from hopfcyclic.cli.parser import parse
from hopfcyclic.errors import NotGroupLike, NotMatched
from hopfcyclic.exactlin import SparseMatrix
from hopfcyclic.groups import function_algebra, group_algebra, symmetric_group
from hopfcyclic.hopf import check_hopf_axioms, is_group_like
from hopfcyclic.matchedpair import (
    MatchedPairDatum, bicrossed_bicomplex, build_bicrossed, canonical_mpi, canonical_sigma,
    check_gF_bracket, check_lie_hopf, check_matched_pair, gF_bracket, group_matched_pair,
    lie_hopf_datum, matched_pair_from_lie_hopf, tensor_product_hopf,
)
from oracles import DenseHopf, q, tensor_product_hopf_dense

S3 = symmetric_group(3)


def trivial_datum(U, F):
    ident = SparseMatrix.identity(F.dim)
    action = [ident.scale(U.counit[u]) for u in range(U.dim)]
    entries = {(u * F.dim + f, u): c for u in range(U.dim) for f, c in F.one.items()}
    return MatchedPairDatum(U, F, action, SparseMatrix(U.dim * F.dim, U.dim, entries))


def normalized(H):
    """Structure tensors with sympy rationals, dropping zeros."""
    mult = {k: {i: q(c) for i, c in v.items() if c} for k, v in H.mult.items()}
    comult = {k: {i: q(c) for i, c in v.items() if c} for k, v in H.comult.items()}
    return {
        "dim": H.dim,
        "mult": {k: v for k, v in mult.items() if v},
        "comult": {k: v for k, v in comult.items() if v},
        "counit": [q(c) for c in H.counit],
        "unit": {i: q(c) for i, c in H.unit.items() if c},
        "antipode": {k: q(c) for k, c in H.antipode.entries.items()},
    }


def test_s3_factorization_gives_a_six_dimensional_hopf_algebra():
    D = group_matched_pair(S3, ["p012", "p120", "p201"], ["p012", "p102"])
    assert check_matched_pair(D).ok
    B = build_bicrossed(D)
    assert B.dim == 6
    report = check_hopf_axioms(B)
    assert report.ok, report.failures()
    assert all(DenseHopf(B).axioms().values())
    # Z3 is normal in S3, so the product is commutative but the coproduct is not
    assert B.mult == {(j, i): v for (i, j), v in B.mult.items()}
    flipped = {k: {(b, a): c for (a, b), c in v.items()} for k, v in B.comult.items()}
    assert B.comult != flipped


def test_overlapping_subgroups_are_not_a_factorization():
    with pytest.raises(NotMatched):
        group_matched_pair(S3, ["p012", "p120", "p201"], ["p012", "p120", "p201"])


@pytest.mark.parametrize("U, F", [
    (catalog.kz(2), catalog.sweedler()),
    (group_algebra(S3), catalog.k_functions_z(2)),
    (catalog.kz(3), catalog.kz(2)),
], ids=["kZ2,H4", "kS3,k^Z2", "kZ3,kZ2"])
def test_trivial_datum_gives_the_tensor_product(U, F):
    D = trivial_datum(U, F)
    assert check_matched_pair(D).ok
    B = build_bicrossed(D)
    T = tensor_product_hopf(F, U)
    assert B.structure_signature() == T.structure_signature()
    assert normalized(B) == tensor_product_hopf_dense(F, U)
    assert check_hopf_axioms(B).ok


def lie_hopf_data(corpus_dir):
    pf = parse(corpus_dir / "matched-pairs.hc")
    ws = Workspace(pf)
    return {name: ws.get(name, None, "liehopf") for name in ("Ltriv", "Lxg", "Laff", "Lab2")}


def test_shipped_lie_hopf_data(corpus_dir):
    for name, L in lie_hopf_data(corpus_dir).items():
        assert check_lie_hopf(L).ok, name
        assert check_gF_bracket(L).ok, name
        sigma = canonical_sigma(L)
        assert is_group_like(L.F, sigma), name
        D = matched_pair_from_lie_hopf(L, 3)
        assert check_matched_pair(D).ok, name


def test_canonical_mpi_verifies_at_window_3(corpus_dir):
    for name, L in lie_hopf_data(corpus_dir).items():
        pair = canonical_mpi(L, 3)
        assert pair.verified, (name, pair.witness)


def test_canonical_sigma_values(corpus_dir):
    data = lie_hopf_data(corpus_dir)
    g = {1: Fraction(1)}
    assert canonical_sigma(data["Ltriv"]) == {0: 1}
    assert canonical_sigma(data["Lxg"]) == g
    assert canonical_sigma(data["Laff"]) == g
    # det of diag(g, g) in kZ3 is g^2
    assert canonical_sigma(data["Lab2"]) == {2: 1}


def test_wrong_sigma_is_rejected(corpus_dir):
    L = lie_hopf_data(corpus_dir)["Lxg"]
    pair = canonical_mpi(L, 3, sigma={0: Fraction(1), 1: Fraction(1)})
    assert not pair.verified and pair.witness


def test_non_group_like_determinant_raises():
    g = catalog.abelian_lie()
    L = lie_hopf_datum(g, catalog.kz(2), coaction={"X": {("X", "1"): 1, ("X", "g"): 1}})
    with pytest.raises(NotGroupLike):
        canonical_sigma(L)


def test_derivation_failure_is_named():
    g = catalog.abelian_lie()
    L = lie_hopf_datum(g, catalog.kz(2), action={("X", "g"): {"g": 1}})
    assert "derivation" in check_lie_hopf(L).failures()


def test_gf_bracket_is_a_lie_algebra(corpus_dir):
    from hopfcyclic.lie import check_jacobi
    L = lie_hopf_data(corpus_dir)["Laff"]
    assert check_jacobi(gF_bracket(L))


@pytest.mark.parametrize("name, nq, dims", [
    ("Ltriv", 1, (1, 1, 0)), ("Lxg", 1, (1, 0, 0)), ("Laff", 2, (1, 1, 0)), ("Lab2", 2, (1, 0, 0)),
])
def test_bicomplex(corpus_dir, name, nq, dims):
    X = bicrossed_bicomplex(lie_hopf_data(corpus_dir)[name], 3, nq)
    assert X.check().ok
    assert X.total_cohomology() == dims
