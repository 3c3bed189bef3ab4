"""Concrete syntax for tree expressions and ordinal literals.

Grammar (whitespace-insensitive)::

    tree    := "leaf" | "family(" ordinal ")"
             | "node(" child ("," child)* [";" "seg=" ordinal] ")"
    child   := tree ["^" (natural | "w")]
    ordinal := term ("+" term)*
    term    := natural | "w" ["^" exp] ["*" natural]
    exp     := natural | "(" ordinal ")" | "w" ["^" exp]

``ω`` is accepted as a synonym of ``w``; the printer always emits ``w``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .ordinal import ONE, ZERO, Ordinal, compare, format_ordinal, is_limit
from .tree import LEAF, W, FiniteTree, Mult, TreeExpr, family, family_index, node, truncate


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"invalid span {self.start}..{self.end}")


class DslError(ValueError):
    def __init__(self, message: str, span: SourceSpan, source: str = ""):
        super().__init__(message)
        self.message = message
        self.span = span
        self.source = source

    def render(self) -> str:
        if not self.source:
            return f"error at {self.span.start}..{self.span.end}: {self.message}"
        caret = " " * self.span.start + "^" * max(1, self.span.end - self.span.start)
        return f"error: {self.message}\n  {self.source}\n  {caret}"

    def __str__(self):
        return f"{self.message} (at {self.span.start}..{self.span.end})"


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<word>[A-Za-z_]+|ω)|(?P<sym>[()\^*+,;=]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "word", "sym" or "eof"
    text: str
    span: SourceSpan


def tokenize(src: str) -> List[Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            rest = src[pos:]
            if not rest.strip():
                break
            start = pos + (len(rest) - len(rest.lstrip()))
            raise DslError(f"unknown token {src[start]!r}",
                           SourceSpan(start, start + 1), src)
        kind = m.lastgroup
        start = m.start(kind)
        text = m.group(kind)
        if text == "ω":
            text = "w"
        tokens.append(Token(kind, text, SourceSpan(start, m.end())))
        pos = m.end()
    tokens.append(Token("eof", "", SourceSpan(len(src), len(src))))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, span: Optional[SourceSpan] = None) -> DslError:
        return DslError(message, span or self.tok.span, self.src)

    def accept(self, text: str) -> Optional[Token]:
        if self.tok.kind != "eof" and self.tok.text == text:
            tok = self.tok
            self.i += 1
            return tok
        return None

    def expect(self, text: str) -> Token:
        tok = self.accept(text)
        if tok is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return tok

    def finish(self) -> None:
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r} after expression")

    def natural(self) -> Tuple[int, SourceSpan]:
        tok = self.tok
        if tok.kind != "num":
            raise self.error(f"expected a natural number, found {tok.text or 'end of input'!r}")
        self.i += 1
        return int(tok.text), tok.span

    # ordinals

    def ordinal(self) -> Ordinal:
        start = self.tok.span.start
        terms: List[Tuple[Ordinal, int, SourceSpan]] = [self.term()]
        while self.accept("+"):
            terms.append(self.term())
        out: List[Tuple[Ordinal, int]] = []
        for exp, coeff, span in terms:
            if coeff == 0:
                if len(terms) == 1 and exp.is_zero:
                    return ZERO
                raise self.error("coefficient must be >= 1", span)
            if out and compare(out[-1][0], exp) <= 0:
                raise self.error("exponents must strictly decrease",
                                 SourceSpan(start, span.end))
            out.append((exp, coeff))
        return Ordinal(tuple(out))

    def term(self) -> Tuple[Ordinal, int, SourceSpan]:
        tok = self.tok
        if tok.kind == "num":
            n, span = self.natural()
            return ZERO, n, span
        if tok.text != "w":
            raise self.error(f"expected an ordinal, found {tok.text or 'end of input'!r}")
        self.i += 1
        exp = ONE
        if self.accept("^"):
            exp = self.exponent()
        coeff = 1
        if self.accept("*"):
            coeff, _ = self.natural()
        return exp, coeff, SourceSpan(tok.span.start, self.tokens[self.i - 1].span.end)

    def exponent(self) -> Ordinal:
        tok = self.tok
        if tok.kind == "num":
            n, _ = self.natural()
            return Ordinal(((ZERO, n),)) if n else ZERO
        if self.accept("("):
            e = self.ordinal()
            self.expect(")")
            return e
        if self.accept("w"):
            e = ONE
            if self.accept("^"):
                e = self.exponent()
            return Ordinal(((e, 1),))
        raise self.error(f"expected an exponent, found {tok.text or 'end of input'!r}")

    # trees

    def tree(self) -> TreeExpr:
        tok = self.tok
        if self.accept("leaf"):
            return LEAF
        if self.accept("family"):
            self.expect("(")
            alpha = self.ordinal()
            self.expect(")")
            return family(alpha)
        if self.accept("node"):
            self.expect("(")
            if self.tok.text in (")", ";"):
                raise self.error("node must have at least one child",
                                 SourceSpan(tok.span.start, self.tok.span.end))
            children = [self.child()]
            while self.accept(","):
                children.append(self.child())
            segment = None
            if self.accept(";"):
                self.expect("seg")
                self.expect("=")
                seg_start = self.tok.span.start
                segment = self.ordinal()
                if not is_limit(segment):
                    raise self.error(
                        f"segment ordinal must be a limit, got {format_ordinal(segment)}",
                        SourceSpan(seg_start, self.tokens[self.i - 1].span.end))
            self.expect(")")
            return node(*children, segment=segment)
        raise self.error(f"unknown token {tok.text or 'end of input'!r}")

    def child(self) -> Tuple[TreeExpr, Mult]:
        shape = self.tree()
        if not self.accept("^"):
            return shape, 1
        if self.accept("w"):
            return shape, W
        m, span = self.natural()
        if m == 0:
            raise self.error("multiplicity must be >= 1", span)
        return shape, m


def parse_tree(src: str) -> TreeExpr:
    p = _Parser(src)
    t = p.tree()
    p.finish()
    return t


def parse_ordinal(src: str) -> Ordinal:
    p = _Parser(src)
    a = p.ordinal()
    p.finish()
    return a


def print_tree(t: TreeExpr, compact_families: bool = False) -> str:
    """Canonical text of ``t``; ``parse_tree(print_tree(t)) == t``.

    A bare segment node has no ``node(...)`` spelling and always prints as
    ``family(l)``.  Successor families print expanded unless
    ``compact_families`` is set.
    """
    if t.is_leaf:
        return "leaf"
    if not t.children:
        return f"family({format_ordinal(t.segment)})"
    if compact_families:
        idx = family_index(t)
        if idx is not None:
            return f"family({format_ordinal(idx)})"
    parts = []
    for c, m in t.children:
        s = print_tree(c, compact_families)
        parts.append(s if m == 1 else f"{s}^{m}")
    inner = ",".join(parts)
    if t.segment is not None:
        inner += f";seg={format_ordinal(t.segment)}"
    return f"node({inner})"


def format_finite(f: FiniteTree) -> str:
    return f"n={f.n} parents=" + ",".join(str(p) for p in f.parent)


def to_dot(t: TreeExpr, depth_budget: int) -> str:
    """DOT digraph of ``truncate(t, depth_budget)``; ids follow preorder."""
    if depth_budget < 1:
        raise ValueError("depth budget must be >= 1")
    f = truncate(t, depth_budget)
    lines = ["digraph T {"]
    lines.extend(f"  {v};" for v in range(f.n))
    lines.extend(f"  {p} -> {v};" for v, p in enumerate(f.parent) if p >= 0)
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_corpus(text: str) -> List[TreeExpr]:
    """Newline-separated expressions; ``#`` starts a comment line."""
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(parse_tree(line))
    return out


def write_corpus(trees) -> str:
    return "".join(print_tree(t) + "\n" for t in trees)
