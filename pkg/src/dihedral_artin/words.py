"""Letters, words and group parameters.

A word is stored as a plain ``str`` over the four characters ``x``, ``X``,
``y``, ``Y`` where the capital letters are the inverses.  Strings are
immutable and hashable, which suits every downstream consumer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ParseError

INT64_MAX = 2**63 - 1
MAX_EXPANDED_LENGTH = 10_000_000

LETTERS = "xXyY"
_INVERSE = {"x": "X", "X": "x", "y": "Y", "Y": "y"}
# global order x < X < y < Y for every lexicographic comparison
_RANK = {"x": 0, "X": 1, "y": 2, "Y": 3}


class Letter(NamedTuple):
    generator: str
    sign: int

    @classmethod
    def from_char(cls, ch: str) -> "Letter":
        return cls(ch.lower(), 1 if ch.islower() else -1)

    def char(self) -> str:
        return self.generator if self.sign > 0 else self.generator.upper()

    def inverse(self) -> "Letter":
        return Letter(self.generator, -self.sign)


@dataclass(frozen=True)
class GroupParams:
    """Parameters of G(m).

    Odd m = 2k+1 gives <x,y | x^2 = y^m> with Delta = x^2.
    Even m = 2p gives BS(p,p) = <x,y | y^-1 x^p y = x^p> with Delta = x^p.
    """

    m: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or self.m < 3:
            raise ValueError(f"m must be an integer >= 3, got {self.m!r}")

    @property
    def odd(self) -> bool:
        return self.m % 2 == 1

    @property
    def parity(self) -> str:
        return "odd" if self.odd else "even"

    @property
    def p(self) -> int | None:
        return None if self.odd else self.m // 2

    @property
    def k(self) -> int:
        if self.odd:
            return (self.m - 1) // 2
        p = self.m // 2
        return p // 2

    @property
    def delta_len(self) -> int:
        return 2 if self.odd else self.m // 2

    @property
    def x_order(self) -> int:
        """Order of the image of x in the quotient by <Delta>."""
        return self.delta_len

    def delta_word(self, power: int = 1) -> str:
        return ("x" if power >= 0 else "X") * (self.delta_len * abs(power))


def inverse_letter(ch: str) -> str:
    return _INVERSE[ch]


def letter_rank(ch: str) -> int:
    return _RANK[ch]


def word_sort_key(w: str) -> tuple[int, ...]:
    return tuple(_RANK[ch] for ch in w)


def word_less(u: str, v: str) -> bool:
    return word_sort_key(u) < word_sort_key(v)


_TOKEN = re.compile(r"\s*([xXyYD])(?:\s*\^\s*([+-]?\d+))?\s*")


def parse_word(text: str, params: GroupParams | None = None) -> str:
    """Parse ``x X y Y`` tokens with optional ``^int`` exponents.

    ``D`` stands for Delta and needs ``params``.  The result is not freely
    reduced.
    """
    out: list[str] = []
    total = 0
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None or mt.end() == pos:
            raise ParseError(f"malformed token at position {pos}: {text[pos:pos + 10]!r}")
        sym, exp_text = mt.group(1), mt.group(2)
        exp = 1
        if exp_text is not None:
            exp = int(exp_text)
            if abs(exp) > INT64_MAX:
                raise ParseError(f"exponent {exp_text} overflows 64-bit range")
        if sym == "D":
            if params is None:
                raise ParseError("'D' needs group parameters")
            base = "x" * params.delta_len
        else:
            base = sym
        if exp < 0:
            base = invert_word(base)
        total += len(base) * abs(exp)
        if total > MAX_EXPANDED_LENGTH:
            raise ParseError("expanded word is too long")
        out.append(base * abs(exp))
        pos = mt.end()
    return "".join(out)


def format_word(w: str, compact: bool = False) -> str:
    """Inverse of :func:`parse_word`; ``compact`` writes runs as ``x^n``."""
    if not compact:
        return w
    parts = []
    for gen, exp in runs(w):
        parts.append(gen if exp == 1 else f"{gen}^{exp}")
    return " ".join(parts)


def runs(w: str) -> list[tuple[str, int]]:
    """Maximal same-generator runs as (generator, signed exponent).

    A run like ``xX`` is summed, so callers normally pass reduced words.
    """
    out: list[tuple[str, int]] = []
    for ch in w:
        gen = ch.lower()
        e = 1 if ch.islower() else -1
        if out and out[-1][0] == gen:
            out[-1] = (gen, out[-1][1] + e)
        else:
            out.append((gen, e))
    return out


def power(gen: str, exp: int) -> str:
    return (gen if exp > 0 else gen.upper()) * abs(exp)


def from_runs(rs) -> str:
    return free_reduce("".join(power(g, e) for g, e in rs))


def free_reduce(w: str) -> str:
    stack: list[str] = []
    for ch in w:
        if stack and stack[-1] == _INVERSE[ch]:
            stack.pop()
        else:
            stack.append(ch)
    return "".join(stack)


def is_freely_reduced(w: str) -> bool:
    return all(w[i + 1] != _INVERSE[w[i]] for i in range(len(w) - 1))


def invert_word(w: str) -> str:
    return "".join(_INVERSE[ch] for ch in reversed(w))


def concat_words(u: str, v: str) -> str:
    return free_reduce(u + v)


def rotations(w: str) -> list[str]:
    seen: dict[str, None] = {}
    for i in range(max(len(w), 1)):
        seen.setdefault(w[i:] + w[:i], None)
    return list(seen)
