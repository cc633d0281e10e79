"""Reader for the .hc presentation format.

A file is a sequence of blocks and directives::

    # comment
    hopf H4 {
      basis 1 g x gx
      unit 1
      counit 1 = 1; counit g = 1
      mul g g = 1
      mul x g = -1 (gx)
      comul x = x*1 + g*x
      antipode x = -1 gx
    }
    check hopf H4

Statements end at a newline or ``;``. Right-hand sides are linear
combinations ``c atom + ...`` with rational coefficients; ``a*b`` is a
tensor of basis labels and a parenthesised group ``(g x)`` names the basis
element spelled by its concatenation. A trailing ``*`` belongs to the label
unless another label follows it directly, so ``g**1`` reads as g* ⊗ 1.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ..errors import InputError, MalformedRational, ParseError

KINDS = ("hopf", "group", "lie", "module", "comodule", "matchedpair", "liehopf", "character")
DIRECTIVES = ("check", "cohomology", "build", "option")

_LABEL_CHARS = re.compile(r"[A-Za-z0-9_^·.'\[\]|:~!?@$&%<>]")
_NUMBER = re.compile(r"^-?\d+(/-?\d+)?$")


@dataclass(frozen=True)
class Term:
    coefficient: Fraction
    factors: tuple          # labels, one per tensor factor
    bare_number: str | None = None   # set when the term was a lone number


@dataclass(frozen=True)
class Expression:
    terms: tuple
    text: str
    line: int
    column: int


@dataclass
class Statement:
    words: list
    rhs: Expression | None
    line: int
    column: int

    @property
    def keyword(self) -> str:
        return self.words[0] if self.words else ""


@dataclass
class Declaration:
    kind: str
    name: str
    header: list
    statements: list
    line: int
    column: int


@dataclass
class Directive:
    command: str
    args: list
    line: int
    column: int


@dataclass
class PresentationFile:
    source: str
    declarations: dict = field(default_factory=dict)
    directives: list = field(default_factory=list)
    options: dict = field(default_factory=dict)


def parse_rational(text: str, line=None, column=None) -> Fraction:
    if not _NUMBER.match(text):
        raise MalformedRational(f"not a rational number: {text!r}"
                                + (f" at line {line}, column {column}" if line else ""))
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise MalformedRational(f"zero denominator in {text!r}"
                                + (f" at line {line}, column {column}" if line else ""))
    return Fraction(int(num), int(den) if den else 1)


# expressions -----------------------------------------------------------------------

def _expr_tokens(text: str, line: int, column: int):
    """Tokens of a right-hand side: ('+'|'-'|'*'|'('|')', None) or ('word', text), with columns."""
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-()":
            out.append((ch, None, column + i))
            i += 1
            continue
        if ch == "*" or ch == "⊗":
            out.append(("*", None, column + i))
            i += 1
            continue
        if _LABEL_CHARS.match(ch) or ch == "/":
            start = i
            while i < n and (_LABEL_CHARS.match(text[i]) or text[i] == "/"):
                i += 1
            # a run of '*' directly after a label: all but a final separator belong to it
            stars = i
            while stars < n and text[stars] == "*":
                stars += 1
            count = stars - i
            if count:
                nxt = text[stars] if stars < n else ""
                follows_label = bool(nxt) and (_LABEL_CHARS.match(nxt) is not None or nxt == "(")
                keep = count - 1 if follows_label else count
                i += keep
            out.append(("word", text[start:i], column + start))
            continue
        raise ParseError(f"unexpected character {ch!r}", line, column + i)
    return out


def parse_expression(text: str, line: int = 1, column: int = 1) -> Expression:
    toks = _expr_tokens(text, line, column)
    if not toks:
        raise ParseError("empty right-hand side", line, column)
    terms = []
    pos = 0

    def peek(k=0):
        return toks[pos + k] if pos + k < len(toks) else (None, None, column + len(text))

    def atom():
        nonlocal pos
        kind, value, col = peek()
        if kind == "word":
            pos += 1
            return value
        if kind == "(":
            pos += 1
            parts = []
            while peek()[0] == "word":
                parts.append(peek()[1])
                pos += 1
            if peek()[0] != ")":
                raise ParseError("expected ')'", line, peek()[2])
            pos += 1
            if not parts:
                raise ParseError("empty parentheses", line, col)
            return "".join(parts)
        raise ParseError("expected a basis label", line, col)

    sign = 1
    while pos < len(toks):
        kind, value, col = peek()
        if kind in ("+", "-"):
            if kind == "-":
                sign = -sign
            pos += 1
            continue
        coefficient = Fraction(1)
        bare = None
        if kind == "word" and _NUMBER.match(value) or (kind == "word" and "/" in value):
            nxt = peek(1)[0]
            if nxt in ("word", "("):
                coefficient = parse_rational(value, line, col)
                pos += 1
            elif "/" in value:
                coefficient = parse_rational(value, line, col)
                pos += 1
                terms.append(Term(sign * coefficient, (), value))
                sign = 1
                continue
            else:
                bare = value
        factors = [atom()]
        while peek()[0] == "*":
            pos += 1
            factors.append(atom())
        terms.append(Term(sign * coefficient, tuple(factors), bare if len(factors) == 1 else None))
        sign = 1
        if pos < len(toks) and peek()[0] not in ("+", "-"):
            raise ParseError(f"expected '+' or '-' before {peek()[1] or peek()[0]!r}", line, peek()[2])
    if toks[-1][0] in ("+", "-"):
        raise ParseError("dangling sign", line, toks[-1][2])
    return Expression(tuple(terms), text.strip(), line, column)


# statements ------------------------------------------------------------------------

def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def _statements(text: str):
    """Yield (words, rhs_text, rhs_col, line, col, brace) items.

    ``brace`` is '{' or '}' for block delimiters and None for statements.
    """
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        i, n = 0, len(line)
        words, start_col = [], None
        while i < n:
            ch = line[i]
            if ch.isspace():
                i += 1
                continue
            if ch in "{};":
                if words:
                    yield words, None, None, lineno, start_col, None
                    words, start_col = [], None
                if ch != ";":
                    yield [], None, None, lineno, i + 1, ch
                i += 1
                continue
            if ch == "=":
                end = i + 1
                while end < n and line[end] not in ";}":
                    end += 1
                if not words:
                    raise ParseError("'=' without a left-hand side", lineno, i + 1)
                yield words, line[i + 1:end], i + 2, lineno, start_col, None
                words, start_col = [], None
                i = end
                continue
            j = i
            while j < n and not line[j].isspace() and line[j] not in "{};=":
                j += 1
            if start_col is None:
                start_col = i + 1
            words.append(line[i:j])
            i = j
        if words:
            yield words, None, None, lineno, start_col, None


def parse_text(text: str, source: str = "<string>") -> PresentationFile:
    pf = PresentationFile(source)
    current: Declaration | None = None
    pending: tuple | None = None
    for words, rhs, rhs_col, line, col, brace in _statements(text):
        if brace == "{":
            if current is not None or pending is None:
                raise ParseError("unexpected '{'", line, col)
            kind, name, header, dline, dcol = pending
            current = Declaration(kind, name, header, [], dline, dcol)
            pending = None
            continue
        if brace == "}":
            if current is None:
                raise ParseError("unexpected '}'", line, col)
            pf.declarations[current.name] = current
            current = None
            continue
        if pending is not None:
            raise ParseError(f"expected '{{' after declaration of {pending[1]}", line, col)
        if current is not None:
            expr = parse_expression(rhs, line, rhs_col) if rhs is not None else None
            current.statements.append(Statement(words, expr, line, col))
            continue
        head = words[0]
        if head in KINDS:
            if len(words) < 2:
                raise ParseError(f"{head} declaration needs a name", line, col)
            if words[1] in pf.declarations:
                raise ParseError(f"duplicate name {words[1]}", line, col)
            if rhs is not None:
                raise ParseError("unexpected '=' in a declaration header", line, col)
            pending = (head, words[1], words[2:], line, col)
        elif head == "option":
            if len(words) != 3:
                raise ParseError("option needs a name and a value", line, col)
            pf.options[words[1]] = int(words[2]) if words[2].isdigit() else words[2]
        elif head in DIRECTIVES:
            if rhs is not None:
                raise ParseError("unexpected '=' in a directive", line, col)
            pf.directives.append(Directive(head, words[1:], line, col))
        else:
            raise ParseError(f"unknown keyword {head!r}", line, col)
    if current is not None or pending is not None:
        name = current.name if current else pending[1]
        raise ParseError(f"unterminated block {name}", None, None)
    return pf


def parse(path) -> PresentationFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from None
    return parse_text(text, str(path))
