"""Exact word problem via the central extension by <Delta>.

Every element is written uniquely as s_1 ... s_n Delta^c where the s_i
alternate between x- and y-syllables with exponents in the positive residue
ranges of the quotient free product (C_2 * C_m for odd m, C_p * Z for even m).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .words import GroupParams, free_reduce, power, runs

Syllable = tuple[str, int]


@dataclass(frozen=True)
class CanonicalElement:
    syllables: tuple[Syllable, ...] = ()
    central: int = 0

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), separators=(",", ":"))

    def as_dict(self) -> dict:
        return {"syllables": [[g, e] for g, e in self.syllables], "central": self.central}

    @classmethod
    def from_dict(cls, data: dict) -> "CanonicalElement":
        return cls(tuple((g, int(e)) for g, e in data["syllables"]), int(data["central"]))


IDENTITY = CanonicalElement()


def _modulus(gen: str, g: GroupParams) -> int | None:
    if gen == "x":
        return g.delta_len
    return g.m if g.odd else None


def _push(syls: list[list], central: int, gen: str, exp: int, g: GroupParams) -> int:
    """Append gen^exp to the end of ``syls`` in place; return the new central exponent."""
    if syls and syls[-1][0] == gen:
        exp += syls.pop()[1]
    mod = _modulus(gen, g)
    if mod is not None:
        carry, exp = divmod(exp, mod)
        central += carry
    if exp:
        syls.append([gen, exp])
    return central


def _build(syls: list[list], central: int) -> CanonicalElement:
    return CanonicalElement(tuple((s[0], s[1]) for s in syls), central)


def to_canonical(w: str, g: GroupParams) -> CanonicalElement:
    syls: list[list] = []
    central = 0
    for gen, exp in runs(w):
        central = _push(syls, central, gen, exp, g)
    return _build(syls, central)


def canonical_multiply(a: CanonicalElement, b: CanonicalElement, g: GroupParams) -> CanonicalElement:
    syls = [list(s) for s in a.syllables]
    central = a.central + b.central
    for gen, exp in b.syllables:
        central = _push(syls, central, gen, exp, g)
    return _build(syls, central)


def multiply_letter(a: CanonicalElement, ch: str, g: GroupParams) -> CanonicalElement:
    """Right multiplication by one letter; the hot path of every BFS."""
    gen = ch.lower()
    e = 1 if ch == gen else -1
    syls = a.syllables
    central = a.central
    if syls and syls[-1][0] == gen:
        e += syls[-1][1]
        syls = syls[:-1]
    mod = _modulus(gen, g)
    if mod is not None:
        carry, e = divmod(e, mod)
        central += carry
    if e:
        syls = syls + ((gen, e),)
    return CanonicalElement(syls, central)


def canonical_invert(a: CanonicalElement, g: GroupParams) -> CanonicalElement:
    syls: list[list] = []
    central = -a.central
    for gen, exp in reversed(a.syllables):
        central = _push(syls, central, gen, -exp, g)
    return _build(syls, central)


def canonical_word(a: CanonicalElement, g: GroupParams) -> str:
    """A word for ``a``: the syllables followed by Delta^c, freely reduced."""
    body = "".join(power(gen, e) for gen, e in a.syllables)
    return free_reduce(body + g.delta_word(a.central))


def elements_equal(u: str, v: str, g: GroupParams) -> bool:
    return to_canonical(u, g) == to_canonical(v, g)


def conjugate_by(a: CanonicalElement, t: CanonicalElement, g: GroupParams) -> CanonicalElement:
    """t^-1 a t."""
    return canonical_multiply(canonical_multiply(canonical_invert(t, g), a, g), t, g)
