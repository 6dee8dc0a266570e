"""Conjugacy problem: cyclic reduction, orbit keys, conjugacy length, PCL."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .canonical import (
    CanonicalElement,
    canonical_invert,
    canonical_multiply,
    multiply_letter,
    to_canonical,
)
from .errors import CapExceeded, NoSplitView, NotConjugate, NotGeodesic
from .geodesic import (
    GeodesicWord,
    _plan,
    _spell,
    classify_geodesic,
    geodesic_length,
    geodesic_word,
    is_geodesic,
)
from .words import GroupParams, free_reduce, power, rotations, word_sort_key


@dataclass(frozen=True)
class ConjKey:
    rep: str
    length: int
    central: int
    tau1: int | None = None
    tau2: int | None = None
    j: int | None = None

    def as_dict(self) -> dict:
        return {
            "rep": self.rep,
            "length": self.length,
            "central": self.central,
            "tau1": self.tau1,
            "tau2": self.tau2,
            "j": self.j,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), separators=(",", ":"))


def cyclic_reduce_canonical(e: CanonicalElement, g: GroupParams) -> CanonicalElement:
    """Conjugate by leading syllables until the first and last syllables differ."""
    syls = e.syllables
    while len(syls) >= 2 and syls[0][0] == syls[-1][0]:
        first = CanonicalElement((syls[0],), 0)
        e = canonical_multiply(
            canonical_multiply(canonical_invert(first, g), e, g), first, g
        )
        syls = e.syllables
    return e


def cyclically_reduce(w: str, g: GroupParams) -> str:
    """A conjugacy geodesic for the class of ``w`` (Delta collected on the right)."""
    return geodesic_word(cyclic_reduce_canonical(to_canonical(w, g), g), g)


def cyclic_permutations(w: str) -> list[str]:
    return rotations(w)


def _orbit_spelling(syls: tuple, central: int, g: GroupParams) -> list[str]:
    """Normal-form spellings of one rotation: special powers ordered as in the unique forms."""
    plan = _plan(syls, central, g)
    out = []
    for n, forced, ties, need in plan.choices:
        if g.odd:
            picked = ties[:need]               # negative specials leftmost
        else:
            picked = ties[len(ties) - need:]   # positive specials leftmost
        out.append(_spell(plan, set(forced) | set(picked), n, g))
    return out


def _opposite_ends(w: str) -> bool:
    return len(w) >= 1 and w[0].lower() != w[-1].lower()


def conj_representative(w: str, g: GroupParams) -> ConjKey:
    e = cyclic_reduce_canonical(to_canonical(w, g), g)
    syls = e.syllables
    length = geodesic_length(e, g)
    if len(syls) <= 1:
        rep = geodesic_word(e, g)
    else:
        best = None
        for i in range(len(syls)):
            rot = syls[i:] + syls[:i]
            for cand in _orbit_spelling(rot, e.central, g):
                if not _opposite_ends(cand):
                    continue
                if best is None or word_sort_key(cand) < word_sort_key(best):
                    best = cand
        rep = best
    gw = classify_geodesic(rep, g)
    tau1 = tau2 = None
    if gw.split is not None:
        tau1, tau2 = gw.split.tau1, gw.split.tau2
    return ConjKey(rep, length, gw.central, tau1, tau2, gw.gtype.j)


def class_signature(w: str, g: GroupParams) -> tuple:
    """Cheap complete class invariant: least rotation of the cyclic syllable word and its Delta exponent."""
    e = cyclic_reduce_canonical(to_canonical(w, g), g)
    syls = e.syllables
    if len(syls) <= 1:
        return syls, e.central
    return min(syls[i:] + syls[:i] for i in range(len(syls))), e.central


def is_conjugate(u: str, v: str, g: GroupParams) -> bool:
    return conj_representative(u, g).rep == conj_representative(v, g).rep


def conjugacy_length(w: str, g: GroupParams) -> int:
    return geodesic_length(cyclic_reduce_canonical(to_canonical(w, g), g), g)


def is_conjugacy_geodesic(w: str, g: GroupParams) -> bool:
    return len(w) == conjugacy_length(w, g) and is_geodesic(w, g)


def split_cyclic_permutations(gw: GeodesicWord, g: GroupParams) -> list[str]:
    """Words keeping the special-power tuple fixed while the blocks rotate, one block possibly split."""
    if gw.split is None:
        raise NoSplitView(f"{gw.word!r} has type {gw.gtype} which has no split view")
    sv = gw.split
    fixed = sorted(sv.specials, key=lambda s: _special_rank(s, gw, g))
    tau = len(fixed)
    blocks = list(sv.blocks)
    cyc = [free_reduce(blocks[-1] + blocks[0])] + blocks[1:-1]
    specials = [power(gen, e) for gen, e in fixed]
    out: dict[str, None] = {}
    for r in range(tau):
        order = [cyc[(r + i) % tau] for i in range(tau)]
        head = order[0]
        for cut in range(len(head) + 1):
            prefix, suffix = head[:cut], head[cut:]
            parts = [suffix]
            for i in range(tau):
                parts.append(specials[i])
                parts.append(order[i + 1] if i + 1 < tau else prefix)
            cand = "".join(parts)
            if cand != free_reduce(cand) or not is_geodesic(cand, g):
                continue
            try:
                if classify_geodesic(cand, g).gtype.tag != gw.gtype.tag:
                    continue
            except NotGeodesic:
                continue
            out.setdefault(cand, None)
    return list(out)


def _special_rank(s, gw: GeodesicWord, g: GroupParams) -> int:
    # first-listed specials of the fixed tuple: y^-k, y^-(k+1), x^-1, x^j (or x^(p-j))
    gen, e = s
    if gw.gtype.tag == "T2b":
        return 0 if e > 0 else 1
    return 0 if e < 0 else 1


# ---------------------------------------------------------------- PCL

class _Spheres:
    """Elements grouped by length, grown on demand by BFS over canonical forms."""

    def __init__(self, g: GroupParams):
        self.g = g
        self.layers: list[list[CanonicalElement]] = [[CanonicalElement()]]
        self.seen = {CanonicalElement()}

    def layer(self, n: int) -> list[CanonicalElement]:
        while len(self.layers) <= n:
            nxt = []
            for el in self.layers[-1]:
                for ch in "xXyY":
                    ne = multiply_letter(el, ch, self.g)
                    if ne not in self.seen:
                        self.seen.add(ne)
                        nxt.append(ne)
            self.layers.append(nxt)
        return self.layers[n]


_SPHERES: dict[int, _Spheres] = {}


def pcl(u: str, v: str, g: GroupParams, max_radius: int | None = None) -> tuple[int, str]:
    """Least |t| with t u' = v' t for rotations u', v'; returns (length, witness word)."""
    for w in (u, v):
        if not is_geodesic(w, g):
            raise NotGeodesic(f"{w!r} is not geodesic in G({g.m})")
    if not is_conjugate(u, v, g):
        raise NotConjugate(f"{u!r} and {v!r} are not conjugate in G({g.m})")
    if max_radius is None:
        max_radius = len(u) + len(v) + 2 * g.delta_len
    us = [to_canonical(x, g) for x in rotations(u)]
    vs = {to_canonical(x, g) for x in rotations(v)}
    spheres = _SPHERES.setdefault(g.m, _Spheres(g))
    for radius in range(max_radius + 1):
        for t in spheres.layer(radius):
            t_inv = canonical_invert(t, g)
            for uc in us:
                # t u' t^-1 = v'
                if canonical_multiply(canonical_multiply(t, uc, g), t_inv, g) in vs:
                    return radius, geodesic_word(t, g)
    raise CapExceeded(f"no PC-conjugator of length <= {max_radius}")
