"""Minimal s-expression reader/printer shared by the file formats.

Atoms are integers, symbols (``Symbol``) and double-quoted strings (``str``).
``;`` starts a comment that runs to the end of the line.
"""
from __future__ import annotations


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int = -1):
        super().__init__(f"{msg} at position {pos}" if pos >= 0 else msg)
        self.pos = pos


class Symbol(str):
    """A bare identifier, distinguished from quoted strings."""

    def __repr__(self):
        return f"Symbol({str(self)!r})"


def _skip(s: str, i: int) -> int:
    while i < len(s):
        if s[i] == ";":
            while i < len(s) and s[i] != "\n":
                i += 1
        elif s[i].isspace():
            i += 1
        else:
            break
    return i


def _read(s: str, i: int):
    i = _skip(s, i)
    if i >= len(s):
        raise ParseError("unexpected end of input", i)
    ch = s[i]
    if ch == "(":
        items = []
        i += 1
        while True:
            i = _skip(s, i)
            if i >= len(s):
                raise ParseError("list not closed", i)
            if s[i] == ")":
                return items, i + 1
            item, i = _read(s, i)
            items.append(item)
    if ch == ")":
        raise ParseError("unbalanced ')'", i)
    if ch == '"':
        j = s.find('"', i + 1)
        if j < 0:
            raise ParseError("unterminated string", i)
        return s[i + 1:j], j + 1
    j = i
    while j < len(s) and not s[j].isspace() and s[j] not in '()";':
        j += 1
    tok = s[i:j]
    if tok.isdigit():
        return int(tok), j
    return Symbol(tok), j


def loads(text: str):
    value, i = _read(text, 0)
    i = _skip(text, i)
    if i != len(text):
        raise ParseError("trailing input", i)
    return value


def dumps(value) -> str:
    if isinstance(value, list):
        return "(" + " ".join(dumps(v) for v in value) + ")"
    if isinstance(value, Symbol):
        return str(value)
    if isinstance(value, str):
        return f'"{value}"'
    if isinstance(value, bool):
        raise TypeError("booleans have no s-expression form")
    if isinstance(value, int):
        return str(value)
    raise TypeError(f"cannot print {value!r}")


def sym(name: str) -> Symbol:
    return Symbol(name)
