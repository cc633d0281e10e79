from fractions import Fraction
from itertools import product

import pytest

from hopfcyclic import catalog
from hopfcyclic.errors import NotAyd
from hopfcyclic.exactlin import SparseMatrix, block_matrix
from hopfcyclic.hopf import characters, check_mpi, group_likes
from hopfcyclic.sayd import (
    LeftComodule, ModuleComodule, RightModule, ayd_to_double_module, build_ayd_double,
    check_ayd, check_comodule, check_double, check_module, check_module_coalgebra,
    check_stable, double_module_to_ayd, module_comodule, regular_module_coalgebra,
    rho_element, sayd_from_mpi, stability_via_rho, structure_tensors, trivial_module_coalgebra,
)
from hopfcyclic.util import CheckReport

SMALL = {"kZ2": catalog.kz(2), "kZ3": catalog.kz(3), "k^Z2": catalog.k_functions_z(2),
         "H4": catalog.sweedler()}


def one_dim_data(H):
    return [(d, s, sayd_from_mpi(H, d, s)) for d, s in product(characters(H), group_likes(H))]


def direct_sum(H, V, W):
    from hopfcyclic.exactlin import FreeSpace
    space = FreeSpace(tuple(f"a{l}" for l in V.space.labels) + tuple(f"b{l}" for l in W.space.labels))
    dv, dw = V.dim, W.dim
    act = [block_matrix([dv, dw], [dv, dw], {(0, 0): a, (1, 1): b})
           for a, b in zip(V.module.act, W.module.act)]
    entries = {}
    for i in range(H.dim):
        for (r, c), x in V.comodule.block(i).entries.items():
            entries[(i * (dv + dw) + r, c)] = x
        for (r, c), x in W.comodule.block(i).entries.items():
            entries[(i * (dv + dw) + dv + r, dv + c)] = x
    coaction = SparseMatrix(H.dim * (dv + dw), dv + dw, entries)
    return ModuleComodule(RightModule(H, space, act), LeftComodule(H, space, coaction))


@pytest.mark.parametrize("name", ["kZ2", "H4", "kZ3", "k^Z2"])
def test_mpi_iff_one_dimensional_sayd(name):
    H = SMALL[name]
    pairs = one_dim_data(H)
    assert pairs
    discrepancies = [
        (d, s) for d, s, V in pairs
        if check_mpi(H, d, s).verified != bool(check_ayd(H, V) and check_stable(H, V))
    ]
    assert discrepancies == []


def test_sweedler_sayd_pairs():
    H = catalog.sweedler()
    good = [(d, s) for d, s in product(characters(H), group_likes(H)) if check_mpi(H, d, s).verified]
    assert sorted(good) == [((1, -1, 0, 0), (1, 0, 0, 0)), ((1, 1, 0, 0), (0, 1, 0, 0))]


@pytest.mark.parametrize("name", ["kZ2", "H4"])
def test_double_is_an_associative_unital_algebra(name):
    H = SMALL[name]
    D = build_ayd_double(H)
    assert D.algebra.dim == H.dim ** 2
    report = check_double(D)
    assert isinstance(report, CheckReport) and report.ok, report.failures()
    assert D.rho == rho_element(H, D)


@pytest.mark.parametrize("name", ["kZ2", "H4", "k^Z2"])
def test_roundtrip_through_double_modules(name):
    H = SMALL[name]
    D = build_ayd_double(H)
    ayd = [V for _, _, V in one_dim_data(H) if check_ayd(H, V)]
    ayd.append(direct_sum(H, ayd[0], ayd[-1]))
    for V in ayd:
        M = ayd_to_double_module(H, V, D)
        assert check_module(D.algebra, M)
        back = double_module_to_ayd(H, M, D)
        assert structure_tensors(back) == structure_tensors(V)


@pytest.mark.parametrize("name", ["kZ2", "kZ3", "H4", "k^Z2"])
def test_stability_via_rho_agrees_with_direct_check(name):
    H = SMALL[name]
    D = build_ayd_double(H)
    for _, _, V in one_dim_data(H):
        if check_ayd(H, V):
            assert bool(stability_via_rho(H, V, D)) == bool(check_stable(H, V))


def test_non_ayd_data_is_rejected_by_the_double():
    H = catalog.sweedler()
    V = sayd_from_mpi(H, (1, 1, 0, 0), (1, 0, 0, 0))
    assert not check_ayd(H, V)
    with pytest.raises(NotAyd):
        ayd_to_double_module(H, V)


def test_label_built_module_matches_mpi_construction():
    H = catalog.sweedler()
    W = module_comodule(H, ["v"], {("v", "g"): {"v": 1}}, {"v": {("g", "v"): 1}})
    assert check_module(H, W.module) and check_comodule(H, W.comodule)
    assert structure_tensors(W) == structure_tensors(sayd_from_mpi(H, (1, 1, 0, 0), {1: Fraction(1)}))


def test_broken_comodule_is_caught():
    H = catalog.kz(2)
    W = module_comodule(H, ["v"], {}, {"v": {("g", "v"): 1, ("1", "v"): 1}})
    assert not check_comodule(H, W.comodule)


@pytest.mark.parametrize("name", ["kZ2", "H4", "k^Z2"])
def test_module_coalgebras(name):
    H = SMALL[name]
    assert check_module_coalgebra(H, regular_module_coalgebra(H))
    assert check_module_coalgebra(H, trivial_module_coalgebra(H))
