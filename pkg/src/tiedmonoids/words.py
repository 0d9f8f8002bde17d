"""Words over generator alphabets.

Text format: whitespace-separated tokens like ``s3 t5 f6 e1 e{1,3}``.
A token is a one-letter generator name plus an index, or an index pair
in braces for the pair-indexed generators (ties ``e{i,j}`` and the
double-partition generators ``a{i,j}``, ``b{i,j}``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class Token:
    name: str
    i: int
    j: int | None = None

    def __str__(self):
        if self.j is None:
            return f"{self.name}{self.i}"
        return f"{self.name}{{{self.i},{self.j}}}"


@dataclass(frozen=True)
class Word:
    tokens: tuple[Token, ...] = ()

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.tokens + other.tokens)

    def __str__(self):
        return format_word(self)


_TOKEN_RE = re.compile(r"^([a-z])(?:(\d+)|\{(\d+),(\d+)\})$")


def parse_word(text: str) -> Word:
    """Parse the whitespace-separated token format."""
    tokens = []
    for chunk in text.split():
        m = _TOKEN_RE.match(chunk)
        if not m:
            raise DomainError(f"bad token {chunk!r}")
        name, single, left, right = m.groups()
        if single is not None:
            tokens.append(Token(name, int(single)))
        else:
            tokens.append(Token(name, int(left), int(right)))
    return Word(tuple(tokens))


def format_word(word: Word) -> str:
    return " ".join(str(t) for t in word.tokens)


def word(*specs) -> Word:
    """Convenience builder: word(("s",1), ("e",1,3), ...)."""
    return Word(tuple(Token(*s) for s in specs))
