from fractions import Fraction

import pytest
from sympy import Matrix

from hopfcyclic import catalog
from hopfcyclic.cyclic import (
    check_cocyclic_identities, check_differentials, connes_B, cyclic_via_rho, hc_cohomology,
    hochschild_b, hopf_cyclic_complex, hp_cohomology, iso_I, mixed_complex, standard_complex,
    tensor_quotient,
)
from hopfcyclic.errors import NotSayd, WindowExceeded
from hopfcyclic.exactlin import SparseMatrix
from hopfcyclic.sayd import regular_module_coalgebra, sayd_from_mpi
from oracles import cyclic_cohomology_via_connes, q, standard_operators

H4 = catalog.sweedler()
G = {1: Fraction(1)}


def coefficients():
    """(name, H, V) for the SAYD data exercised below."""
    T, kz2, kz3, fz2 = catalog.trivial_hopf(), catalog.kz(2), catalog.kz(3), catalog.k_functions_z(2)
    eps = lambda H: H.counit
    return [
        ("T", T, sayd_from_mpi(T, eps(T), T.one)),
        ("kZ2 (eps,1)", kz2, sayd_from_mpi(kz2, eps(kz2), kz2.one)),
        ("kZ2 (eps,g)", kz2, sayd_from_mpi(kz2, eps(kz2), G)),
        ("kZ3 (eps,1)", kz3, sayd_from_mpi(kz3, eps(kz3), kz3.one)),
        ("k^Z2 (eps,1)", fz2, sayd_from_mpi(fz2, eps(fz2), fz2.one)),
        ("H4 (eps,g)", H4, sayd_from_mpi(H4, eps(H4), G)),
        ("H4 (chi,1)", H4, sayd_from_mpi(H4, (1, -1, 0, 0), H4.one)),
    ]


IDS = [c[0] for c in coefficients()]


def dense(M: SparseMatrix) -> Matrix:
    rows, cols = M.shape
    out = Matrix.zeros(rows, cols)
    for (r, c), x in M.entries.items():
        out[r, c] = q(x)
    return out


def test_h4_identities_hold_in_window_3():
    V = sayd_from_mpi(H4, H4.counit, G)
    X = standard_complex(H4, V, 3)
    report = check_cocyclic_identities(X)
    assert report.ok, report.failures()
    assert {f"tau_power[{n}]" for n in range(4)} <= set(report.verdicts)
    assert X.dims() == (1, 4, 16, 64)


def test_tau_squared_fails_in_degree_one_without_sayd():
    V = sayd_from_mpi(H4, H4.counit, H4.one)
    with pytest.raises(NotSayd):
        standard_complex(H4, V, 3)
    report = check_cocyclic_identities(standard_complex(H4, V, 3, check=False))
    assert "tau_power[1]" in report.failures()
    assert report.verdicts["tau_power[0]"].ok


@pytest.mark.parametrize("case", coefficients(), ids=IDS)
def test_operators_match_the_dense_formulas(case):
    _, H, V = case
    X = standard_complex(H, V, 2)
    for n in range(3):
        faces, degens, T = standard_operators(H, V, n)
        assert dense(X.tau[n]) == T
        if n:
            assert [dense(F) for F in X.faces[n]] == faces
            assert [dense(D) for D in X.degeneracies[n]] == degens


@pytest.mark.parametrize("case", coefficients(), ids=IDS)
def test_identities_and_differentials(case):
    _, H, V = case
    X = standard_complex(H, V, 3)
    assert check_cocyclic_identities(X).ok
    report = check_differentials(mixed_complex(X))
    assert report.ok and set(report.verdicts) == {
        "b_squared", "B_squared", "bB_plus_Bb", "total_squared"}


@pytest.mark.parametrize("case", coefficients(), ids=IDS)
def test_hc_agrees_with_connes_complex(case):
    _, H, V = case
    top = 2 if H.dim == 4 else 3
    X = standard_complex(H, V, top + 1)
    assert list(hc_cohomology(X).dims) == cyclic_cohomology_via_connes(H, V, top)


def test_frozen_values():
    # values obtained from the dense oracle above
    cases = {name: (H, V) for name, H, V in coefficients()}
    expected = {"T": (1, 0, 1, 0), "kZ2 (eps,1)": (1, 0, 1, 0), "kZ2 (eps,g)": (0, 0, 0, 0),
                "kZ3 (eps,1)": (1, 0, 1, 0), "k^Z2 (eps,1)": (1, 0, 1, 0)}
    for name, dims in expected.items():
        H, V = cases[name]
        assert hc_cohomology(standard_complex(H, V, 4)).dims == dims
    H, V = cases["H4 (eps,g)"]
    assert hc_cohomology(standard_complex(H, V, 3)).dims == (0, 1, 0)


def test_quotient_realization_is_conjugate_to_the_standard_one():
    V = sayd_from_mpi(H4, H4.counit, G)
    C = regular_module_coalgebra(H4)
    Q = hopf_cyclic_complex(H4, C, V, 2)
    X = standard_complex(H4, V, 2)
    assert Q.dims() == X.dims()
    for n in range(3):
        _, quot = tensor_quotient(H4, C, V, n)
        I = iso_I(H4, V, n, quot)
        assert I @ Q.tau[n] == X.tau[n] @ I
    assert check_cocyclic_identities(Q).ok
    assert hc_cohomology(Q).dims == hc_cohomology(X).dims


def test_cyclic_operator_via_rho_matches_quotient_operator():
    V = sayd_from_mpi(H4, H4.counit, G)
    C = regular_module_coalgebra(H4)
    Q = hopf_cyclic_complex(H4, C, V, 2)
    rho = cyclic_via_rho(H4, C, V, 2)
    assert all(rho[n] == Q.tau[n] for n in range(3))


def test_periodic_cohomology_of_trivial_algebra():
    T = catalog.trivial_hopf()
    X = standard_complex(T, sayd_from_mpi(T, T.counit, T.one), 4)
    hp = hp_cohomology(X)
    assert hp.dims == (1, 0) and hp.stabilization_flag is True
    assert hp.as_dict()["mode"] == "HP"


def test_window_is_enforced():
    T = catalog.trivial_hopf()
    X = standard_complex(T, sayd_from_mpi(T, T.counit, T.one), 2)
    with pytest.raises(WindowExceeded):
        hochschild_b(X, 2)
    with pytest.raises(WindowExceeded):
        connes_B(X, 3)
    with pytest.raises(WindowExceeded):
        hc_cohomology(X, 5)
