"""Turn parsed declarations into algebraic objects, with a registry of built-in names."""
from __future__ import annotations

import re
from fractions import Fraction

from .. import catalog
from ..errors import InputError, ParseError, UnresolvedReference
from ..exactlin import ONE, ZERO, FreeSpace, SparseMatrix
from ..groups import FiniteGroup, cyclic_group, function_algebra, group_algebra, symmetric_group
from ..hopf import HopfPresentation, dual_hopf, truncated_uea
from ..lie import LieDatum
from ..liecyclic import LieComodule, LieModuleComodule, koszul_module_comodule
from ..matchedpair import (LieHopfDatum, MatchedPairDatum, build_bicrossed, group_matched_pair,
                           matched_pair_from_lie_hopf)
from ..sayd import (LeftComodule, ModuleComodule, RightModule, coaction_from_columns,
                    sayd_from_mpi)
from .parser import Expression, PresentationFile, parse_rational


def _where(node) -> str:
    return f" at line {node.line}, column {node.column}" if node is not None else ""


def _lie_builtin(name: str) -> LieDatum | None:
    fixed = {"aff1": catalog.aff1, "nonlie": catalog.non_jacobi}
    if name in fixed:
        return fixed[name]()
    m = re.fullmatch(r"ab(\d+)", name)
    if m:
        n = int(m.group(1))
        labels = ("X",) if n == 1 else ("X", "Y", "Z", "W")[:n] if n <= 4 else tuple(
            f"X{i}" for i in range(n))
        return catalog.abelian_lie(labels)
    return None


def _group_builtin(name: str) -> FiniteGroup | None:
    m = re.fullmatch(r"([ZS])(\d+)", name)
    if not m:
        return None
    n = int(m.group(2))
    return cyclic_group(n) if m.group(1) == "Z" else symmetric_group(n)


class Workspace:
    """Named objects of one presentation file, resolved lazily; built-ins fill the gaps."""

    def __init__(self, pf: PresentationFile | None = None):
        self.pf = pf or PresentationFile("<builtin>")
        self.objects: dict = {}
        self._building: set = set()

    # resolution ------------------------------------------------------------

    def get(self, name: str, node=None, context=None):
        if name in self.objects:
            return self.objects[name]
        decl = self.pf.declarations.get(name)
        if decl is not None:
            if name in self._building:
                raise UnresolvedReference(f"circular reference to {name}{_where(node)}")
            self._building.add(name)
            try:
                obj = getattr(self, f"_build_{decl.kind}")(decl)
            finally:
                self._building.discard(name)
            self.objects[name] = obj
            return obj
        obj = self.builtin(name, context)
        if obj is None:
            raise UnresolvedReference(f"undeclared name {name!r}{_where(node)}")
        return obj

    def builtin(self, name: str, context=None):
        fixed = {"T": catalog.trivial_hopf, "k": catalog.trivial_hopf, "H4": catalog.sweedler}
        if name in fixed:
            return fixed[name]()
        m = re.fullmatch(r"k(\^?)([ZS]\d+)", name)
        if m:
            G = _group_builtin(m.group(2))
            return function_algebra(G, name) if m.group(1) else group_algebra(G, name)
        m = re.fullmatch(r"U\((\w+)\)_(\d+)", name)
        if m:
            return truncated_uea(self.get(m.group(1)), int(m.group(2)))
        lie = _lie_builtin(name)
        if lie is not None:
            return lie
        group = _group_builtin(name)
        if group is not None:
            return group
        if name == "K":
            if isinstance(context, LieDatum):
                return LieModuleComodule.trivial(context)
            if isinstance(context, HopfPresentation):
                return sayd_from_mpi(context, context.counit, context.one)
        return None

    def expect(self, name: str, kind, node=None, context=None):
        obj = self.get(name, node, context)
        if not isinstance(obj, kind):
            names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
            raise InputError(f"{name} is a {type(obj).__name__}, expected {names}{_where(node)}")
        return obj

    # scalar and vector evaluation -----------------------------------------

    @staticmethod
    def scalar(expr: Expression) -> Fraction:
        total = ZERO
        for t in expr.terms:
            if t.factors and t.bare_number is None:
                raise ParseError(f"expected a number, got {expr.text!r}", expr.line, expr.column)
            value = parse_rational(t.bare_number, expr.line, expr.column) if t.bare_number else ONE
            total += t.coefficient * value if t.factors else t.coefficient
        return total

    @staticmethod
    def vector(expr: Expression, space: FreeSpace, unit: dict | None = None) -> dict:
        out: dict = {}

        def add(k, c):
            out[k] = out.get(k, ZERO) + c

        for t in expr.terms:
            if len(t.factors) > 1:
                raise ParseError(f"unexpected tensor in {expr.text!r}", expr.line, expr.column)
            if t.factors and t.factors[0] in space.labels:
                add(space.index(t.factors[0]), t.coefficient)
                continue
            if t.factors and t.bare_number is None:
                raise UnresolvedReference(
                    f"unknown basis label {t.factors[0]!r} at line {expr.line}, column {expr.column}")
            value = (parse_rational(t.bare_number, expr.line, expr.column)
                     if t.bare_number else ONE) * t.coefficient
            if value and unit is None:
                raise UnresolvedReference(
                    f"unknown basis label {t.bare_number!r} at line {expr.line}, column {expr.column}")
            for k, c in (unit or {}).items():
                add(k, value * c)
        return {k: c for k, c in out.items() if c}

    @staticmethod
    def tensor(expr: Expression, spaces) -> dict:
        out: dict = {}
        for t in expr.terms:
            if t.bare_number == "0" and len(t.factors) == 1 and "0" not in spaces[0].labels:
                continue
            if len(t.factors) != len(spaces):
                raise ParseError(f"expected {len(spaces)} tensor factors in {expr.text!r}",
                                 expr.line, expr.column)
            try:
                key = tuple(sp.index(lab) for sp, lab in zip(spaces, t.factors))
            except KeyError as e:
                raise UnresolvedReference(
                    f"unknown basis label {e.args[0]!r} at line {expr.line}, column {expr.column}"
                ) from None
            out[key] = out.get(key, ZERO) + t.coefficient
        return {k: c for k, c in out.items() if c}

    @staticmethod
    def _index(space: FreeSpace, label: str, node) -> int:
        if label not in space.labels:
            raise UnresolvedReference(f"unknown basis label {label!r}{_where(node)}")
        return space.index(label)

    # builders --------------------------------------------------------------

    def _build_group(self, decl):
        elements, table = None, {}
        for st in decl.statements:
            w = st.words
            if w[0] == "builtin":
                group = _group_builtin(w[1] if len(w) == 2 else w[1][0].upper() + w[2])
                if group is None:
                    raise UnresolvedReference(f"unknown group {' '.join(w[1:])}{_where(st)}")
                return group
            if w[0] == "elements":
                elements = tuple(w[1:])
            elif w[0] == "mul":
                if elements is None or len(w) != 3 or st.rhs is None:
                    raise ParseError("expected 'mul a b = c' after 'elements'", st.line, st.column)
                sp = FreeSpace(elements)
                a, b = (self._index(sp, x, st) for x in w[1:])
                table[(a, b)] = self._index(sp, st.rhs.text, st.rhs)
            else:
                raise ParseError(f"unknown group statement {w[0]!r}", st.line, st.column)
        if elements is None:
            raise ParseError(f"group {decl.name} has no elements", decl.line, decl.column)
        n = len(elements)
        missing = [(a, b) for a in range(n) for b in range(n) if (a, b) not in table]
        if missing:
            a, b = missing[0]
            raise ParseError(f"group {decl.name} misses the product {elements[a]}·{elements[b]}",
                             decl.line, decl.column)
        return FiniteGroup(elements, tuple(tuple(table[(a, b)] for b in range(n)) for a in range(n)),
                           decl.name)

    def _build_lie(self, decl):
        labels, brackets = None, {}
        for st in decl.statements:
            w = st.words
            if w[0] == "builtin":
                lie = _lie_builtin(w[1])
                if lie is None:
                    raise UnresolvedReference(f"unknown Lie algebra {w[1]}{_where(st)}")
                return lie
            if w[0] == "basis":
                labels = tuple(w[1:])
            elif w[0] == "bracket":
                if labels is None or len(w) != 3 or st.rhs is None:
                    raise ParseError("expected 'bracket X Y = ...' after 'basis'", st.line, st.column)
                sp = FreeSpace(labels)
                i, j = (self._index(sp, x, st) for x in w[1:])
                brackets[(i, j)] = self.vector(st.rhs, sp)
            else:
                raise ParseError(f"unknown lie statement {w[0]!r}", st.line, st.column)
        if labels is None:
            raise ParseError(f"lie {decl.name} has no basis", decl.line, decl.column)
        return LieDatum(FreeSpace(labels), brackets, decl.name)

    def _build_hopf(self, decl):
        st0 = decl.statements[0] if decl.statements else None
        if st0 is not None and st0.words[0] in ("builtin", "group", "functions", "uea", "dual",
                                                 "bicrossed"):
            return self._derived_hopf(decl, st0)
        labels = None
        unit_vec = None
        declared_dim = None
        mult, comult, antipode, counit = {}, {}, {}, {}
        for st in decl.statements:
            w = st.words
            key = w[0]
            if key == "dim":
                declared_dim = (int(w[1]), st)
                continue
            if key == "basis":
                labels = tuple(w[1:])
                if unit_vec is None and "1" in labels:
                    unit_vec = {labels.index("1"): ONE}
                continue
            if labels is None:
                raise ParseError("'basis' must come first", st.line, st.column)
            sp = FreeSpace(labels)
            if key == "unit":
                unit_vec = (self.vector(st.rhs, sp) if st.rhs is not None
                            else {self._index(sp, w[1], st): ONE})
            elif key == "counit":
                counit[self._index(sp, w[1], st)] = self.scalar(st.rhs)
            elif key == "mul":
                a, b = (self._index(sp, x, st) for x in w[1:3])
                mult[(a, b)] = self.vector(st.rhs, sp, unit_vec)
            elif key == "comul":
                comult[self._index(sp, w[1], st)] = self.tensor(st.rhs, [sp, sp])
            elif key == "antipode":
                antipode[self._index(sp, w[1], st)] = self.vector(st.rhs, sp, unit_vec)
            else:
                raise ParseError(f"unknown hopf statement {key!r}", st.line, st.column)
        if labels is None:
            raise ParseError(f"hopf {decl.name} has no basis", decl.line, decl.column)
        n = len(labels)
        if declared_dim is not None and declared_dim[0] != n:
            st = declared_dim[1]
            raise ParseError(f"dim {declared_dim[0]} does not match {n} basis labels",
                             st.line, st.column)
        if unit_vec is None:
            if "1" not in labels:
                raise ParseError(f"hopf {decl.name} has no unit", decl.line, decl.column)
            unit_vec = {labels.index("1"): ONE}
        if len(unit_vec) == 1 and next(iter(unit_vec.values())) == 1:
            u = next(iter(unit_vec))
            for a in range(n):
                mult.setdefault((u, a), {a: ONE})
                mult.setdefault((a, u), {a: ONE})
            # the unit is group-like unless stated otherwise
            comult.setdefault(u, {(u, u): ONE})
            counit.setdefault(u, ONE)
            antipode.setdefault(u, {u: ONE})
        cols = [antipode.get(a, {}) for a in range(n)]
        return HopfPresentation(FreeSpace(labels), mult, unit_vec, comult,
                                [counit.get(a, ZERO) for a in range(n)],
                                SparseMatrix.from_columns(n, cols), name=decl.name)

    def _derived_hopf(self, decl, st):
        w = st.words
        kind = w[0]
        if kind == "builtin":
            name = w[1] if len(w) == 2 else f"{w[1]}{''.join(w[2:])}"
            table = {"sweedler": catalog.sweedler, "trivial": catalog.trivial_hopf}
            if name in table:
                return table[name]()
            m = re.fullmatch(r"(kz|kfunctions)(\d+)", name)
            if m:
                n = int(m.group(2))
                return catalog.kz(n) if m.group(1) == "kz" else catalog.k_functions_z(n)
            obj = self.builtin(w[1])
            if isinstance(obj, HopfPresentation):
                return obj
            raise UnresolvedReference(f"unknown built-in Hopf algebra {name}{_where(st)}")
        if kind == "group":
            return group_algebra(self.expect(w[1], FiniteGroup, st), name=decl.name)
        if kind == "functions":
            return function_algebra(self.expect(w[1], FiniteGroup, st), name=decl.name)
        if kind == "uea":
            return truncated_uea(self.expect(w[1], LieDatum, st), int(w[2]))
        if kind == "dual":
            return dual_hopf(self.expect(w[1], HopfPresentation, st))
        if kind == "bicrossed":
            obj = self.get(w[1], st)
            if isinstance(obj, LieHopfDatum):
                obj = matched_pair_from_lie_hopf(obj, int(w[2]) if len(w) > 2 else 3)
            if not isinstance(obj, MatchedPairDatum):
                raise InputError(f"{w[1]} is not a matched pair{_where(st)}")
            return build_bicrossed(obj)
        raise ParseError(f"unknown hopf source {kind!r}", st.line, st.column)

    def _build_character(self, decl):
        if len(decl.header) != 2 or decl.header[0] != "over":
            raise ParseError("expected 'character NAME over H'", decl.line, decl.column)
        H = self.expect(decl.header[1], HopfPresentation, decl)
        values = [ZERO] * H.dim
        for st in decl.statements:
            if st.words[0] != "value" or len(st.words) != 2 or st.rhs is None:
                raise ParseError("expected 'value label = number'", st.line, st.column)
            values[self._index(H.space, st.words[1], st)] = self.scalar(st.rhs)
        return tuple(values)

    _build_comodule = None  # assigned below

    def _build_module(self, decl):
        if len(decl.header) != 2 or decl.header[0] != "over":
            raise ParseError(f"expected '{decl.kind} NAME over H'", decl.line, decl.column)
        base = self.expect(decl.header[1], (HopfPresentation, LieDatum), decl)
        for st in decl.statements:
            if st.words[0] == "mpi":
                if not isinstance(base, HopfPresentation) or len(st.words) != 3:
                    raise ParseError("expected 'mpi delta sigma' over a Hopf algebra",
                                     st.line, st.column)
                return sayd_from_mpi(base, self.character(base, st.words[1], st),
                                     self.grouplike(base, st.words[2], st))
            if st.words[0] == "koszul":
                if not isinstance(base, LieDatum):
                    raise ParseError("koszul coefficients need a Lie algebra", st.line, st.column)
                return koszul_module_comodule(base, int(st.words[1]))
            if st.words[0] == "trivial":
                return self.builtin("K", base)
        labels = None
        action, coaction = {}, {}
        for st in decl.statements:
            w = st.words
            if w[0] == "basis":
                labels = tuple(w[1:])
                continue
            if labels is None:
                raise ParseError("'basis' must come first", st.line, st.column)
            sp = FreeSpace(labels)
            if w[0] == "act":
                v = self._index(sp, w[1], st)
                h = self._index(base.space, w[2], st)
                action[(v, h)] = self.vector(st.rhs, sp)
            elif w[0] == "coact":
                v = self._index(sp, w[1], st)
                coaction[v] = self.tensor(st.rhs, [base.space, sp])
            else:
                raise ParseError(f"unknown module statement {w[0]!r}", st.line, st.column)
        if labels is None:
            raise ParseError(f"{decl.kind} {decl.name} has no basis", decl.line, decl.column)
        space = FreeSpace(labels)
        d = space.dim
        if isinstance(base, LieDatum):
            acts = [SparseMatrix(d, d, {(w, v): c for (v, h), img in action.items() if h == i
                                        for w, c in img.items()}) for i in range(base.dim)]
            entries = {(a * d + w, v): c for v, img in coaction.items() for (a, w), c in img.items()}
            comodule = LieComodule(base, space, SparseMatrix(base.dim * d, d, entries))
            return LieModuleComodule(base, space, acts, comodule)
        H = base
        mats = []
        for h in range(H.dim):
            data = {}
            for v in range(d):
                if (v, h) in action:
                    data.update({(w, v): c for w, c in action[(v, h)].items()})
                elif H.unit == {h: ONE}:
                    data[(v, v)] = ONE
            mats.append(SparseMatrix(d, d, data))
        cols = [coaction.get(v, {(u, v): c for u, c in H.unit.items()}) for v in range(d)]
        return ModuleComodule(RightModule(H, space, mats),
                              LeftComodule(H, space, coaction_from_columns(H, d, cols)))

    def _build_matchedpair(self, decl):
        spec = {st.words[0]: st for st in decl.statements}
        if "group" in spec:
            G = self.expect(spec["group"].words[1], FiniteGroup, spec["group"])
            for key in ("first", "second"):
                if key not in spec:
                    raise ParseError(f"matched pair {decl.name} needs '{key}'", decl.line, decl.column)
            return group_matched_pair(G, spec["first"].words[1:], spec["second"].words[1:],
                                      name=decl.name)
        if "liehopf" in spec:
            L = self.expect(spec["liehopf"].words[1], LieHopfDatum, spec["liehopf"])
            N = int(spec["truncate"].words[1]) if "truncate" in spec else 3
            return matched_pair_from_lie_hopf(L, N)
        for key in ("U", "F"):
            if key not in spec:
                raise ParseError(f"matched pair {decl.name} needs '{key}'", decl.line, decl.column)
        U = self.expect(spec["U"].words[1], HopfPresentation, spec["U"])
        F = self.expect(spec["F"].words[1], HopfPresentation, spec["F"])
        nF = F.dim
        acts = {u: {} for u in range(U.dim)}
        explicit_act = set()
        entries, explicit_coact = {}, set()
        for st in decl.statements:
            w = st.words
            if w[0] == "act":
                u, f = self._index(U.space, w[1], st), self._index(F.space, w[2], st)
                explicit_act.add((u, f))
                for h, c in self.vector(st.rhs, F.space, F.one).items():
                    acts[u][(h, f)] = c
            elif w[0] == "coact":
                u = self._index(U.space, w[1], st)
                explicit_coact.add(u)
                for (v, f), c in self.tensor(st.rhs, [U.space, F.space]).items():
                    entries[(v * nF + f, u)] = c
        for u in range(U.dim):
            for f in range(nF):
                if (u, f) not in explicit_act and U.counit[u]:
                    acts[u][(f, f)] = U.counit[u]
            if u not in explicit_coact:
                for f, c in F.one.items():
                    entries[(u * nF + f, u)] = c
        return MatchedPairDatum(U, F, [SparseMatrix(nF, nF, acts[u]) for u in range(U.dim)],
                                SparseMatrix(U.dim * nF, U.dim, entries), decl.name)

    def _build_liehopf(self, decl):
        spec = {st.words[0]: st for st in decl.statements}
        for key in ("lie", "hopf"):
            if key not in spec:
                raise ParseError(f"liehopf {decl.name} needs '{key}'", decl.line, decl.column)
        g = self.expect(spec["lie"].words[1], LieDatum, spec["lie"])
        F = self.expect(spec["hopf"].words[1], HopfPresentation, spec["hopf"])
        n = F.dim
        acts = [dict() for _ in range(g.dim)]
        entries, explicit = {}, set()
        for st in decl.statements:
            w = st.words
            if w[0] == "act":
                i, f = self._index(g.space, w[1], st), self._index(F.space, w[2], st)
                for h, c in self.vector(st.rhs, F.space).items():
                    acts[i][(h, f)] = c
            elif w[0] == "coact":
                i = self._index(g.space, w[1], st)
                explicit.add(i)
                for (j, f), c in self.tensor(st.rhs, [g.space, F.space]).items():
                    entries[(j * n + f, i)] = c
        for i in range(g.dim):
            if i not in explicit:
                for f, c in F.one.items():
                    entries[(i * n + f, i)] = c
        return LieHopfDatum(g, F, [SparseMatrix(n, n, a) for a in acts],
                            SparseMatrix(g.dim * n, g.dim, entries), decl.name)

    # characters and group-likes --------------------------------------------

    def character(self, H: HopfPresentation, text: str, node=None) -> tuple:
        if text in ("eps", "ε", "counit"):
            return tuple(H.counit)
        if "," in text:
            values = tuple(parse_rational(x) for x in text.split(","))
            if len(values) != H.dim:
                raise InputError(f"character needs {H.dim} values{_where(node)}")
            return values
        obj = self.get(text, node, H)
        if not isinstance(obj, tuple):
            raise InputError(f"{text} is not a character{_where(node)}")
        return obj

    def grouplike(self, H: HopfPresentation, text: str, node=None) -> dict:
        if text in H.space.labels:
            return {H.space.index(text): ONE}
        if text in ("1", "unit"):
            return H.one
        if "," in text:
            return {i: parse_rational(x) for i, x in enumerate(text.split(",")) if parse_rational(x)}
        raise UnresolvedReference(f"unknown group-like {text!r}{_where(node)}")


Workspace._build_comodule = Workspace._build_module
