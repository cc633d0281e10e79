"""Small named examples used by the tests, the corpus and the CLI."""
from __future__ import annotations

from .exactlin import ONE, FreeSpace, SparseMatrix
from .groups import cyclic_group, function_algebra, group_algebra, symmetric_group
from .hopf import HopfPresentation, hopf_from_labels, truncated_uea
from .lie import LieDatum


def trivial_hopf() -> HopfPresentation:
    """The ground field as a one-dimensional Hopf algebra."""
    return HopfPresentation(FreeSpace(("1",)), {(0, 0): {0: ONE}}, {0: ONE},
                            {0: {(0, 0): ONE}}, [ONE], SparseMatrix.identity(1), name="k")


def kz(n: int) -> HopfPresentation:
    return group_algebra(cyclic_group(n), name=f"kZ{n}")


def k_functions_z(n: int) -> HopfPresentation:
    return function_algebra(cyclic_group(n), name=f"k^Z{n}")


def sweedler() -> HopfPresentation:
    """Sweedler's four-dimensional Hopf algebra on 1, g, x, gx."""
    return hopf_from_labels(
        ["1", "g", "x", "gx"],
        mult={
            ("1", "1"): {"1": 1}, ("1", "g"): {"g": 1}, ("1", "x"): {"x": 1}, ("1", "gx"): {"gx": 1},
            ("g", "1"): {"g": 1}, ("x", "1"): {"x": 1}, ("gx", "1"): {"gx": 1},
            ("g", "g"): {"1": 1}, ("g", "x"): {"gx": 1}, ("g", "gx"): {"x": 1},
            ("x", "g"): {"gx": -1}, ("gx", "g"): {"x": -1},
        },
        unit="1",
        comult={
            "1": {("1", "1"): 1},
            "g": {("g", "g"): 1},
            "x": {("x", "1"): 1, ("g", "x"): 1},
            "gx": {("gx", "g"): 1, ("1", "gx"): 1},
        },
        counit={"1": 1, "g": 1},
        antipode={"1": {"1": 1}, "g": {"g": 1}, "x": {"gx": -1}, "gx": {"x": 1}},
        name="H4",
    )


def abelian_lie(labels=("X",), name=None) -> LieDatum:
    return LieDatum(FreeSpace(tuple(labels)), {}, name or f"ab{len(labels)}")


def aff1() -> LieDatum:
    """The two-dimensional non-abelian Lie algebra, [X, Y] = Y."""
    return LieDatum.from_labels(["X", "Y"], {("X", "Y"): {"Y": 1}}, name="aff1")


def non_jacobi() -> LieDatum:
    """Antisymmetric but not Lie: [X,Y] = X, [Y,Z] = Y, [X,Z] = 0."""
    return LieDatum.from_labels(["X", "Y", "Z"],
                                {("X", "Y"): {"X": 1}, ("Y", "Z"): {"Y": 1}}, name="nonlie")


def uea_aff1(N: int = 4) -> HopfPresentation:
    return truncated_uea(aff1(), N)


def s3():
    return symmetric_group(3)


def shipped_hopf_algebras() -> dict:
    return {
        "kZ2": kz(2),
        "kZ3": kz(3),
        "k^Z2": k_functions_z(2),
        "H4": sweedler(),
        "U(aff1)_4": uea_aff1(4),
    }
