"""Command dispatch shared by the command line and by directives inside .hc files."""
from __future__ import annotations

import argparse
import os
import time
from pathlib import Path

from .. import errors
from ..cyclic import (check_cocyclic_identities, check_differentials, hc_cohomology,
                      hopf_cyclic_complex, hp_cohomology, mixed_complex, standard_complex)
from ..errors import InputError
from ..hopf import (HopfPresentation, check_hopf_axioms, check_mpi, characters, dual_hopf,
                    group_likes, truncated_uea)
from ..lie import LieDatum, check_jacobi
from ..liecyclic import (LieModuleComodule, c_complex, check_lie_ayd, check_lie_comodule,
                         check_lie_module, check_lie_stable, check_unimodular_stable,
                         exp_coaction, koszul_module_comodule, lie_hc, lie_hp,
                         project_ug_comodule_to_g, relative_ce_cohomology, w_complex)
from ..matchedpair import (LieHopfDatum, MatchedPairDatum, bicrossed_bicomplex, build_bicrossed,
                           canonical_mpi, canonical_sigma, check_comodule_coalgebra, check_gF_bracket,
                           check_lie_hopf, check_matched_pair, check_module_algebra, gF_bracket,
                           matched_pair_from_lie_hopf)
from ..sayd import (ModuleComodule, ayd_to_double_module, build_ayd_double, check_ayd,
                    check_comodule, check_double, check_module, check_stable,
                    double_module_to_ayd, regular_module_coalgebra, stability_via_rho,
                    structure_tensors)
from ..util import fmt
from .objects import Workspace
from .parser import parse, parse_expression
from .report import Report

CORPUS_ENV = "HOPFCYCLIC_CORPUS"
DEFAULT_CORPUS = Path(__file__).resolve().parent.parent / "corpus"

# failures of a mathematical precondition are reported as a failed check of this name
PRECONDITIONS = {
    errors.NotAyd: "ayd",
    errors.NotSayd: "sayd",
    errors.NotCompatibleCoefficients: "compatible_coefficients",
    errors.NotMatched: "matched",
    errors.NotGroupLike: "group_like",
    errors.NotACharacter: "character",
    errors.NotASubalgebra: "subalgebra",
    errors.NotAComodule: "comodule",
    errors.AntipodeNotInvertible: "antipode_invertible",
    errors.OperatorDoesNotDescend: "descends",
    errors.CompositionNotZero: "composition",
}

INPUT_ERRORS = (InputError, errors.WindowExceeded, errors.TruncationOverflow,
                errors.DimensionMismatch, errors.NotFiniteDimensional, KeyError, ValueError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# descriptions ----------------------------------------------------------------------

def _join_terms(terms) -> str:
    """Render (coefficient, label) pairs as 'a - 1/2 b + 3 c'."""
    out = ""
    for c, label in terms:
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{fmt(abs(c))} "
        out += (f" {sign} " if out else ("-" if c < 0 else "")) + mag + label
    return out or "0"


def _vec_text(labels, vec) -> str:
    return _join_terms((vec[k], labels[k] if isinstance(k, int) else "⊗".join(labels[i] for i in k))
                       for k in sorted(vec))


def describe_hopf(H: HopfPresentation) -> dict:
    return {"kind": "hopf", "dim": H.dim, "labels": list(H.labels),
            "truncation": H.truncation.cutoff if H.truncation else None}


def describe_lie(g: LieDatum) -> dict:
    return {"kind": "lie", "dim": g.dim, "labels": list(g.labels),
            "brackets": {f"[{g.labels[i]},{g.labels[j]}]": _vec_text(g.labels, v)
                         for (i, j), v in sorted(g.bracket.items())}}


def _representatives(reps: dict) -> dict:
    out = {}
    for degree, vectors in sorted(reps.items()):
        out[str(degree)] = [{str(i): fmt(c) for i, c in enumerate(v) if c} for v in vectors]
    return out


def _cohomology_dict(rep) -> dict:
    data = rep.as_dict()
    data["representatives"] = _representatives(rep.representatives)
    return data


# argument grammar ------------------------------------------------------------------

CHECKS = ("hopf", "lie", "mpi", "module", "comodule", "ayd", "sayd", "stable", "double",
          "cocyclic", "differentials", "liemodule", "liecomodule", "lieayd", "liesayd",
          "unimodular", "wcomplex", "ccomplex", "exp", "matchedpair", "bicrossed", "liehopf",
          "canonicalmpi", "bicomplex")
BUILDS = ("hopf", "lie", "double", "dual", "uea", "bicrossed", "gfbracket", "characters",
          "grouplikes", "exp", "koszul")
MODES = ("hc", "hp", "relative", "bicomplex")


def build_parser(prog: str = "hopfcyclic") -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--window", type=int, help="degree window N")
    common.add_argument("--truncate", type=int, help="PBW truncation degree for U(g)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--quiet", action="store_true", help="print the verdict line only")
    common.add_argument("-f", "--file", help="presentation file (.hc)")
    common.add_argument("--timing", action="store_true", help="record wall time in the report")
    common.add_argument("--expect", metavar="CHECK",
                        help="negative control: pass only if CHECK fails")
    common.add_argument("--expect-dims", type=int, nargs="+", metavar="D",
                        help="compare cohomology dimensions")

    parser = _Parser(prog=prog, description="Hopf-cyclic structures and cohomology, exactly.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="verify a structure")
    p.add_argument("kind", choices=CHECKS)
    p.add_argument("names", nargs="*")
    p.add_argument("--complex", choices=("W", "C"), default="W")
    p.add_argument("--sigma", help="override the group-like of canonicalmpi")
    p.add_argument("--method", choices=("standard", "quotient"), default="standard")
    p.add_argument("--np", type=int, default=3, help="bicomplex tensor degrees")
    p.add_argument("--nq", type=int, help="bicomplex wedge degrees (default dim g)")

    p = sub.add_parser("build", parents=[common], help="construct and describe an object")
    p.add_argument("kind", choices=BUILDS)
    p.add_argument("names", nargs="*")

    p = sub.add_parser("cohomology", parents=[common], help="compute HC, HP and relatives")
    p.add_argument("mode", choices=MODES)
    p.add_argument("--hopf")
    p.add_argument("--lie")
    p.add_argument("--coeff", default="K")
    p.add_argument("--complex", choices=("W", "C"), default="W")
    p.add_argument("--sub", nargs="*", default=[], help="subalgebra spanning vectors")
    p.add_argument("--datum", help="Lie-Hopf datum of the bicrossed bicomplex")
    p.add_argument("--method", choices=("standard", "quotient"), default="standard")
    p.add_argument("--np", type=int, default=3)
    p.add_argument("--nq", type=int)

    p = sub.add_parser("corpus", parents=[common], help="run every .hc file of a corpus")
    p.add_argument("path", nargs="?", help=f"directory or file (default ${CORPUS_ENV} "
                                           "or the shipped corpus)")
    return parser


def _names(ns, count: int, usage: str) -> list:
    if len(ns.names) != count:
        raise InputError(f"usage: {ns.command} {ns.kind} {usage}")
    return ns.names


def _option(ns, ws: Workspace, name: str, default):
    value = getattr(ns, name, None)
    if value is None:
        value = ws.pf.options.get(name, default)
    return int(value)


def _lie_coefficients(ws: Workspace, g: LieDatum, name: str):
    return ws.expect(name, LieModuleComodule, context=g)


def _hopf_coefficients(ws: Workspace, H: HopfPresentation, name: str):
    return ws.expect(name, ModuleComodule, context=H)


def _matched_pair(ws: Workspace, name: str, ns) -> MatchedPairDatum:
    obj = ws.expect(name, (MatchedPairDatum, LieHopfDatum))
    if isinstance(obj, LieHopfDatum):
        obj = matched_pair_from_lie_hopf(obj, _option(ns, ws, "truncate", 3))
    return obj


def _mpi_steps(report: Report, mp):
    """Split an MPI verdict into the stages it passed."""
    stages = (("character", "not a character"), ("group_like", "not group-like"),
              ("pairing", "δ(σ)"), ("involution", "S_δ²"))
    for name, prefix in stages:
        if not mp.verified and mp.witness.startswith(prefix):
            report.add_check(name, False, mp.witness)
            return
        report.add_check(name, True)


# check -----------------------------------------------------------------------------

def _check(ns, ws: Workspace, rep: Report):
    kind = ns.kind
    if kind == "hopf":
        (name,) = _names(ns, 1, "H")
        H = ws.expect(name, HopfPresentation)
        rep.objects[name] = describe_hopf(H)
        rep.add_checks(check_hopf_axioms(H))
        if H.is_truncated:
            rep.flags["truncated_window"] = H.truncation.cutoff
    elif kind == "lie":
        (name,) = _names(ns, 1, "g")
        g = ws.expect(name, LieDatum)
        rep.objects[name] = describe_lie(g)
        v = check_jacobi(g)
        rep.add_check("jacobi", v.ok, v.witness)
    elif kind == "mpi":
        h, d, s = _names(ns, 3, "H delta sigma")
        H = ws.expect(h, HopfPresentation)
        _mpi_steps(rep, check_mpi(H, ws.character(H, d), ws.grouplike(H, s)))
    elif kind in ("module", "comodule", "ayd", "sayd", "stable"):
        h, v = _names(ns, 2, "H V")
        H = ws.expect(h, HopfPresentation)
        V = _hopf_coefficients(ws, H, v)
        window = H.is_truncated
        if kind in ("module", "ayd", "sayd"):
            r = check_module(H, V.module)
            rep.add_check("module", r.ok, r.witness)
        if kind in ("comodule", "ayd", "sayd"):
            r = check_comodule(H, V.comodule, within_window=window)
            rep.add_check("comodule", r.ok, r.witness)
        if kind in ("ayd", "sayd"):
            r = check_ayd(H, V, within_window=window)
            rep.add_check("ayd", r.ok, r.witness)
        if kind in ("sayd", "stable"):
            r = check_stable(H, V)
            rep.add_check("stable", r.ok, r.witness)
        if window:
            rep.flags["truncated_window"] = H.truncation.cutoff
    elif kind == "double":
        if len(ns.names) not in (1, 2):
            raise InputError("usage: check double H [V]")
        H = ws.expect(ns.names[0], HopfPresentation)
        D = build_ayd_double(H)
        rep.objects[f"B_AYD({H.name})"] = describe_hopf_like(D.algebra)
        rep.add_checks(check_double(D))
        if len(ns.names) == 2:
            V = _hopf_coefficients(ws, H, ns.names[1])
            M = ayd_to_double_module(H, V, D)
            back = double_module_to_ayd(H, M, D)
            same = structure_tensors(back) == structure_tensors(V)
            rep.add_check("roundtrip", same, "AYD -> B_AYD-module -> AYD changes the tensors")
            r = check_module(D.algebra, M)
            rep.add_check("double_module", r.ok, r.witness)
            a, b = stability_via_rho(H, V, D), check_stable(H, V)
            rep.add_check("stability_via_rho", a.ok == b.ok,
                          f"ρ says {a.ok}, direct check says {b.ok}")
            rep.flags["stable"] = b.ok
    elif kind in ("cocyclic", "differentials"):
        h, v = _names(ns, 2, "H V")
        H = ws.expect(h, HopfPresentation)
        V = _hopf_coefficients(ws, H, v)
        N = _option(ns, ws, "window", 3)
        sayd_required = kind == "differentials"
        if ns.method == "quotient":
            X = hopf_cyclic_complex(H, regular_module_coalgebra(H), V, N, check=sayd_required)
        else:
            X = standard_complex(H, V, N, check=sayd_required)
        rep.flags["window"] = N
        rep.objects["complex"] = {"kind": X.name, "dims": list(X.dims())}
        if kind == "cocyclic":
            rep.add_checks(check_cocyclic_identities(X))
        else:
            rep.add_checks(check_differentials(mixed_complex(X)))
    elif kind in ("liemodule", "liecomodule", "lieayd", "liesayd", "unimodular"):
        gname, v = _names(ns, 2, "g V")
        g = ws.expect(gname, LieDatum)
        V = _lie_coefficients(ws, g, v)
        if kind != "liecomodule":
            r = check_lie_module(g, V.act)
            rep.add_check("module", r.ok, r.witness)
        if kind != "liemodule":
            r = check_lie_comodule(g, V.comodule)
            rep.add_check("comodule", r.ok, r.witness)
        if kind in ("lieayd", "liesayd", "unimodular"):
            r = check_lie_ayd(g, V)
            rep.add_check("ayd", r.ok, r.witness)
        if kind == "liesayd":
            r = check_lie_stable(g, V)
            rep.add_check("stable", r.ok, r.witness)
        if kind == "unimodular":
            r = check_unimodular_stable(g, V)
            rep.add_check("unimodular_stable", r.ok, r.witness)
    elif kind in ("wcomplex", "ccomplex"):
        gname, v = _names(ns, 2, "g V")
        g = ws.expect(gname, LieDatum)
        V = _lie_coefficients(ws, g, v)
        X = (w_complex if kind == "wcomplex" else c_complex)(g, V)
        rep.objects["complex"] = {"kind": X.kind, "dims": list(X.dims)}
        rep.add_checks(X.check())
    elif kind == "exp":
        gname, v = _names(ns, 2, "g V")
        g = ws.expect(gname, LieDatum)
        V = _lie_coefficients(ws, g, v)
        N = _option(ns, ws, "truncate", 3)
        W = exp_coaction(g, V, N)
        exact = W.flags["exact"]
        r = check_comodule(W.hopf, W, within_window=not exact)
        rep.add_check("comodule", r.ok, r.witness)
        back = project_ug_comodule_to_g(g, W)
        rep.add_check("projection", back.coaction == V.comodule.coaction,
                      "projecting the exponential does not give back the coaction")
        rep.flags.update({"exact": exact, "window": N})
        rep.objects["coaction"] = _coaction_table(W)
    elif kind in ("matchedpair", "bicrossed"):
        (name,) = _names(ns, 1, "D")
        D = _matched_pair(ws, name, ns)
        if kind == "matchedpair":
            rep.add_checks(check_module_algebra(D.U, D.F, D.action), "module_algebra.")
            rep.add_checks(check_comodule_coalgebra(D.U, D.F, D.coaction), "comodule_coalgebra.")
            rep.add_checks(check_matched_pair(D))
        else:
            B = build_bicrossed(D, check=False)
            rep.objects[B.name] = describe_hopf(B)
            rep.add_checks(check_hopf_axioms(B))
        if D.U.is_truncated:
            rep.flags["truncated_window"] = D.U.truncation.cutoff
    elif kind == "liehopf":
        (name,) = _names(ns, 1, "L")
        L = ws.expect(name, LieHopfDatum)
        rep.add_checks(check_lie_hopf(L))
        rep.add_checks(check_gF_bracket(L), "gF.")
    elif kind == "canonicalmpi":
        (name,) = _names(ns, 1, "L")
        L = ws.expect(name, LieHopfDatum)
        N = _option(ns, ws, "window", 3)
        sigma = ws.grouplike(L.F, ns.sigma) if ns.sigma else canonical_sigma(L)
        rep.flags["window"] = N
        rep.objects["sigma"] = _vec_text(L.F.labels, sigma)
        _mpi_steps(rep, canonical_mpi(L, N, sigma))
    elif kind == "bicomplex":
        (name,) = _names(ns, 1, "L")
        L = ws.expect(name, LieHopfDatum)
        X = bicrossed_bicomplex(L, ns.np, L.lie.dim if ns.nq is None else ns.nq)
        rep.add_checks(X.check())
        rep.flags["complete_degree"] = X.complete_degree


def describe_hopf_like(A) -> dict:
    return {"kind": "algebra", "dim": A.dim, "labels": list(A.labels)}


def _coaction_table(W) -> dict:
    U, labels = W.hopf, W.space.labels
    out = {}
    for v, label in enumerate(labels):
        out[label] = _join_terms((c, f"{U.labels[h]}⊗{labels[w]}")
                                 for (h, w), c in sorted(W.coact({v: 1}).items()))
    return out


# build -----------------------------------------------------------------------------

def _build(ns, ws: Workspace, rep: Report):
    kind = ns.kind
    if kind in ("hopf", "dual"):
        (name,) = _names(ns, 1, "H")
        H = ws.expect(name, HopfPresentation)
        if kind == "dual":
            H = dual_hopf(H)
        rep.objects[H.name] = describe_hopf(H)
        rep.add_checks(check_hopf_axioms(H))
    elif kind == "lie":
        (name,) = _names(ns, 1, "g")
        g = ws.expect(name, LieDatum)
        rep.objects[name] = describe_lie(g)
        v = check_jacobi(g)
        rep.add_check("jacobi", v.ok, v.witness)
    elif kind == "double":
        (name,) = _names(ns, 1, "H")
        H = ws.expect(name, HopfPresentation)
        D = build_ayd_double(H)
        rep.objects[f"B_AYD({H.name})"] = describe_hopf_like(D.algebra)
        rep.add_checks(check_double(D))
    elif kind == "uea":
        (name,) = _names(ns, 1, "g")
        g = ws.expect(name, LieDatum)
        U = truncated_uea(g, _option(ns, ws, "truncate", 3))
        rep.objects[U.name] = describe_hopf(U)
        rep.add_checks(check_hopf_axioms(U))
    elif kind == "bicrossed":
        (name,) = _names(ns, 1, "D")
        B = build_bicrossed(_matched_pair(ws, name, ns))
        rep.objects[B.name] = describe_hopf(B)
        rep.add_checks(check_hopf_axioms(B))
    elif kind == "gfbracket":
        (name,) = _names(ns, 1, "L")
        g = gF_bracket(ws.expect(name, LieHopfDatum))
        rep.objects[g.name] = describe_lie(g)
        v = check_jacobi(g)
        rep.add_check("jacobi", v.ok, v.witness)
    elif kind in ("characters", "grouplikes"):
        (name,) = _names(ns, 1, "H")
        H = ws.expect(name, HopfPresentation)
        if kind == "characters":
            found = [",".join(fmt(c) for c in ch) for ch in characters(H)]
        else:
            found = [_vec_text(H.labels, {i: c for i, c in enumerate(x) if c})
                     for x in group_likes(H)]
        rep.objects[name] = {"kind": kind, "count": len(found), "elements": found}
    elif kind == "exp":
        gname, v = _names(ns, 2, "g V")
        g = ws.expect(gname, LieDatum)
        W = exp_coaction(g, _lie_coefficients(ws, g, v), _option(ns, ws, "truncate", 3))
        rep.objects["coaction"] = _coaction_table(W)
        rep.flags.update({"exact": W.flags["exact"], "window": W.flags["window"]})
    elif kind == "koszul":
        (name,) = _names(ns, 1, "g")
        g = ws.expect(name, LieDatum)
        V = koszul_module_comodule(g, _option(ns, ws, "truncate", 2))
        rep.objects["koszul"] = {"kind": "lie module-comodule", "dim": V.dim,
                                 "labels": list(V.space.labels)}


# cohomology ------------------------------------------------------------------------

def _cohomology(ns, ws: Workspace, rep: Report):
    mode = ns.mode
    if mode in ("hc", "hp"):
        if bool(ns.hopf) == bool(ns.lie):
            raise InputError("cohomology hc|hp needs exactly one of --hopf and --lie")
        if ns.hopf:
            H = ws.expect(ns.hopf, HopfPresentation)
            V = _hopf_coefficients(ws, H, ns.coeff)
            N = _option(ns, ws, "window", 3)
            if ns.method == "quotient":
                X = hopf_cyclic_complex(H, regular_module_coalgebra(H), V, N)
            else:
                X = standard_complex(H, V, N)
            result = (hc_cohomology if mode == "hc" else hp_cohomology)(X, N)
        else:
            g = ws.expect(ns.lie, LieDatum)
            V = _lie_coefficients(ws, g, ns.coeff)
            N = _option(ns, ws, "window", g.dim + 1)
            result = (lie_hc if mode == "hc" else lie_hp)(g, V, N, ns.complex)
        rep.flags["window"] = N
    elif mode == "relative":
        if not ns.lie:
            raise InputError("cohomology relative needs --lie")
        g = ws.expect(ns.lie, LieDatum)
        V = _lie_coefficients(ws, g, ns.coeff)
        sub = [Workspace.vector(parse_expression(text), g.space) for text in ns.sub]
        result = relative_ce_cohomology(g, sub, V, ns.window)
    else:
        if not ns.datum:
            raise InputError("cohomology bicomplex needs --datum")
        L = ws.expect(ns.datum, LieHopfDatum)
        X = bicrossed_bicomplex(L, ns.np, L.lie.dim if ns.nq is None else ns.nq)
        rep.cohomology = {"mode": "bicomplex", "dims": list(X.total_cohomology()),
                          "stabilization_flag": None, "flags": {}, "representatives": {}}
        rep.flags["complete_degree"] = X.complete_degree
        result = None
    if result is not None:
        rep.cohomology = _cohomology_dict(result)
    if ns.expect_dims is not None:
        got = rep.cohomology["dims"]
        rep.add_check("dims", list(got) == list(ns.expect_dims),
                      f"expected {list(ns.expect_dims)}, got {list(got)}")


# corpus ----------------------------------------------------------------------------

def _directive_args(words) -> list:
    out = []
    for w in words:
        out.append({"expect": "--expect", "expect-dims": "--expect-dims"}.get(w, w))
    return out


def run_file(path: Path) -> list:
    """Run every directive of one presentation file; returns their reports."""
    try:
        pf = parse(path)
    except INPUT_ERRORS as e:
        rep = Report(["parse", path.name])
        rep.error = str(e)
        return [rep]
    ws = Workspace(pf)
    return [execute([d.command, *_directive_args(d.args)], ws)[0] for d in pf.directives]


def _corpus(ns, rep: Report):
    root = Path(ns.path or os.environ.get(CORPUS_ENV) or DEFAULT_CORPUS)
    if not root.exists():
        raise InputError(f"corpus path {root} does not exist")
    files = sorted(root.rglob("*.hc")) if root.is_dir() else [root]
    base = root if root.is_dir() else root.parent
    entries = []
    for path in files:
        rel = path.relative_to(base)
        negative = "negative-controls" in path.parts
        reports = run_file(path)
        conforms = bool(reports) and all(r.status == "pass" for r in reports)
        if negative:
            conforms = conforms and all(r.expect is not None for r in reports)
        entries.append({"file": rel.as_posix(), "negative_control": negative,
                        "conforms": conforms, "directives": [r.as_dict() for r in reports]})
    rep.files = entries


# entry points ----------------------------------------------------------------------

HANDLERS = {"check": _check, "build": _build, "cohomology": _cohomology}


def execute(argv: list, workspace: Workspace | None = None):
    """Run one command line; returns (report, namespace or None)."""
    argv = [str(a) for a in argv]
    rep = Report(list(argv))
    ns = None
    start = time.perf_counter()
    try:
        ns = build_parser().parse_args(argv)
        rep.expect = ns.expect
        if ns.command == "corpus":
            _corpus(ns, rep)
        else:
            ws = workspace
            if ns.file:
                ws = Workspace(parse(ns.file))
            HANDLERS[ns.command](ns, ws or Workspace(), rep)
    except tuple(PRECONDITIONS) as e:
        rep.add_check(PRECONDITIONS[type(e)], False, str(e))
    except INPUT_ERRORS as e:
        rep.error = f"{type(e).__name__}: {e}"
    if ns is not None and ns.timing:
        rep.wall_time = round(time.perf_counter() - start, 6)
    return rep, ns


def run(command: str, args=(), workspace: Workspace | None = None) -> Report:
    return execute([command, *args], workspace)[0]
