from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hopfcyclic.catalog import sweedler
from hopfcyclic.cli.objects import Workspace
from hopfcyclic.cli.parser import parse, parse_expression, parse_rational, parse_text
from hopfcyclic.errors import InputError, MalformedRational, ParseError, UnresolvedReference
from hopfcyclic.hopf import check_hopf_axioms

H4_TEXT = """
# Sweedler's algebra
hopf H4 {
  basis 1 g x gx
  counit 1 = 1; counit g = 1
  mul g g = 1; mul g x = gx; mul g gx = x
  mul x g = -1 (g x); mul gx g = -x
  comul g = g*g
  comul x = x*1 + g*x
  comul gx = gx*g + 1*gx
  antipode 1 = 1; antipode g = g
  antipode x = -1 (g x); antipode gx = x
}
check hopf H4
"""


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_rationals_round_trip(p, q):
    assert parse_rational(f"{p}/{q}") == Fraction(p, q)
    assert parse_rational(str(p)) == p


@pytest.mark.parametrize("text", ["1/0", "1.5", "abc", "2/", "--1"])
def test_malformed_rationals(text):
    with pytest.raises(MalformedRational):
        parse_rational(text)


def test_expression_terms():
    e = parse_expression("x*1 + g*x - 1/2 gx + 3 (g x)")
    assert [(t.coefficient, t.factors) for t in e.terms] == [
        (1, ("x", "1")), (1, ("g", "x")), (Fraction(-1, 2), ("gx",)), (3, ("gx",))]


def test_trailing_star_belongs_to_label():
    e = parse_expression("g**1 + g*")
    assert [t.factors for t in e.terms] == [("g*", "1"), ("g*",)]


def test_bare_number_is_recorded():
    (term,) = parse_expression("-2").terms
    assert term.bare_number == "2" and term.coefficient == -1


@pytest.mark.parametrize("text, column", [("x +", 3), ("x y", 3), ("( )", 1), ("x # y", None)])
def test_expression_errors_carry_positions(text, column):
    if column is None:
        with pytest.raises(ParseError):
            parse_expression(text.replace("#", "{"))
        return
    with pytest.raises(ParseError) as info:
        parse_expression(text, line=7, column=1)
    assert info.value.line == 7 and info.value.column == column


def test_rational_error_reports_location():
    with pytest.raises(MalformedRational, match="line 2"):
        parse_text("hopf H {\n  counit 1 = 1/0\n}")


def test_file_structure():
    pf = parse_text(H4_TEXT + "option window 4\n")
    assert list(pf.declarations) == ["H4"]
    assert pf.declarations["H4"].kind == "hopf"
    assert [d.command for d in pf.directives] == ["check"]
    assert pf.directives[0].args == ["hopf", "H4"]
    assert pf.options == {"window": 4}


@pytest.mark.parametrize("text, message", [
    ("hopf H {\n basis 1\n", "unterminated"),
    ("}", "unexpected '}'"),
    ("frobnicate X", "unknown keyword"),
    ("hopf H { basis 1 }\nhopf H { basis 1 }", "duplicate"),
    ("check hopf = H", "unexpected '='"),
    ("hopf\n", "needs a name"),
])
def test_structural_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_text(text)


def test_parse_error_line_and_column():
    with pytest.raises(ParseError) as info:
        parse_text("\n\n   bogus thing")
    assert (info.value.line, info.value.column) == (3, 4)


def test_written_out_sweedler_matches_catalog():
    H = Workspace(parse_text(H4_TEXT)).get("H4", None, "hopf")
    assert check_hopf_axioms(H).ok
    assert H.structure_signature() == sweedler().structure_signature()


def test_unresolved_reference():
    ws = Workspace(parse_text("module V over Q { trivial }"))
    with pytest.raises(UnresolvedReference, match="Q"):
        ws.get("V", None, "module")


def test_unknown_label_in_expression():
    ws = Workspace(parse_text("hopf H { basis 1 g; mul g g = h }"))
    with pytest.raises(InputError):
        ws.get("H", None, "hopf")


def test_circular_reference():
    ws = Workspace(parse_text("hopf A { dual B }\nhopf B { dual A }"))
    with pytest.raises(InputError, match="circular"):
        ws.get("A", None, "hopf")


def test_builtins_resolve():
    ws = Workspace(parse_text(""))
    assert ws.get("H4", None, "hopf").dim == 4
    assert ws.get("kZ3", None, "hopf").dim == 3
    assert ws.get("aff1", None, "lie").dim == 2


def test_shipped_corpus_parses(corpus_dir):
    files = sorted(corpus_dir.rglob("*.hc"))
    assert len(files) >= 10
    for path in files:
        pf = parse(path)
        assert pf.directives
