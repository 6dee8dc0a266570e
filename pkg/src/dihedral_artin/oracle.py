"""Brute-force reference implementations used to validate the fast paths.

Element identity here does not go through the canonical form.  An element is
pinned down by two invariants: its reduced image in the quotient free product
(C_2 * C_m or C_p * Z, reduced letter by letter with no carries) and its
abelianisation (x -> m, y -> 2 for odd m; the x-exponent sum for even m).
Delta generates the kernel of the quotient map and has nonzero abelian image,
so the pair is a complete invariant.
"""

from __future__ import annotations

from itertools import product

from .words import GroupParams, inverse_letter

OracleKey = tuple[tuple[tuple[str, int], ...], int]


def _abelian_weight(ch: str, g: GroupParams) -> int:
    gen = ch.lower()
    sign = 1 if ch == gen else -1
    if g.odd:
        return sign * (g.m if gen == "x" else 2)
    return sign if gen == "x" else 0


def _order(gen: str, g: GroupParams) -> int | None:
    if gen == "x":
        return 2 if g.odd else g.m // 2
    return g.m if g.odd else None


def oracle_key(w: str, g: GroupParams) -> OracleKey:
    stack: list[list] = []
    weight = 0
    for ch in w:
        weight += _abelian_weight(ch, g)
        gen = ch.lower()
        e = 1 if ch == gen else -1
        order = _order(gen, g)
        if stack and stack[-1][0] == gen:
            top = stack[-1]
            top[1] += e
            if order is not None:
                top[1] %= order
            if top[1] == 0:
                stack.pop()
        else:
            if order is not None:
                e %= order
            stack.append([gen, e])
    return tuple((s[0], s[1]) for s in stack), weight


def oracle_equal(u: str, v: str, g: GroupParams) -> bool:
    return oracle_key(u, g) == oracle_key(v, g)


def reduced_words(length: int):
    """All freely reduced words of exactly the given length."""
    if length == 0:
        yield ""
        return
    for first in "xXyY":
        yield from _extend(first, length - 1)


def _extend(prefix: str, remaining: int):
    if remaining == 0:
        yield prefix
        return
    bad = inverse_letter(prefix[-1])
    for ch in "xXyY":
        if ch != bad:
            yield from _extend(prefix + ch, remaining - 1)


def all_words(length: int):
    for t in product("xXyY", repeat=length):
        yield "".join(t)


class CayleyBall:
    """BFS ball around the identity, vertices identified by ``oracle_key``.

    Stores, for every vertex, its distance and every geodesic word reaching it.
    """

    def __init__(self, g: GroupParams, radius: int, keep_words: bool = True):
        self.g = g
        self.radius = radius
        self.dist: dict[OracleKey, int] = {}
        self.words: dict[OracleKey, list[str]] = {}
        start = oracle_key("", g)
        self.dist[start] = 0
        self.words[start] = [""]
        frontier = [start]
        rep = {start: ""}
        for d in range(1, radius + 1):
            new: dict[OracleKey, list[str]] = {}
            new_rep: dict[OracleKey, str] = {}
            for key in frontier:
                base = rep[key]
                for ch in "xXyY":
                    w = base + ch
                    nk = oracle_key(w, g)
                    if nk in self.dist:
                        continue
                    if nk not in new:
                        new[nk] = []
                        new_rep[nk] = w
                    if keep_words:
                        new[nk].extend(u + ch for u in self.words[key])
            for nk, ws in new.items():
                self.dist[nk] = d
                self.words[nk] = sorted(set(ws)) if keep_words else []
            rep = new_rep
            frontier = list(new)

    def length(self, w: str) -> int | None:
        return self.dist.get(oracle_key(w, self.g))

    def geodesics(self, w: str) -> list[str]:
        return self.words[oracle_key(w, self.g)]

    def sphere_sizes(self) -> list[int]:
        sizes = [0] * (self.radius + 1)
        for d in self.dist.values():
            sizes[d] += 1
        return sizes


def conjugation_ball(w: str, g: GroupParams, radius: int) -> dict[OracleKey, tuple[int, str]]:
    """Conjugates t^-1 w t for |t| <= radius, with the shortest such |t|.

    Values are (distance, representative word of the conjugate).
    """
    start = oracle_key(w, g)
    seen = {start: (0, w)}
    frontier = [(start, w)]
    for d in range(1, radius + 1):
        nxt = []
        for _, rep in frontier:
            for ch in "xXyY":
                cw = inverse_letter(ch) + rep + ch
                ck = oracle_key(cw, g)
                if ck not in seen:
                    seen[ck] = (d, cw)
                    nxt.append((ck, cw))
        frontier = nxt
    return seen


def brute_force_conjugate(u: str, v: str, g: GroupParams, radius: int | None = None) -> bool:
    """Is there t with |t| <= radius and t^-1 u t = v?  Meet-in-the-middle search."""
    if radius is None:
        radius = len(u) + len(v) + 2 * g.delta_len
    lo = radius // 2
    hi = radius - lo
    left = conjugation_ball(u, g, lo)
    right = conjugation_ball(v, g, hi)
    if len(left) > len(right):
        left, right = right, left
    return any(key in right for key in left)


def conjugacy_class_min_length(w: str, g: GroupParams, radius: int, ball: CayleyBall) -> int:
    """Shortest length of t^-1 w t over |t| <= radius, lengths read from ``ball``."""
    best = None
    for key, (_, rep) in conjugation_ball(w, g, radius).items():
        d = ball.dist.get(key)
        if d is not None and (best is None or d < best):
            best = d
    return best


def oracle_conjugacy_invariant(w: str, g: GroupParams) -> tuple:
    """Complete conjugacy invariant computed without the canonical module.

    Conjugacy in the quotient free product is decided by cyclic reduction of
    the syllable sequence followed by the least rotation.  Two elements with
    conjugate images differ by a power of Delta after conjugation, and that
    power is fixed by the abelian weight, which conjugation preserves.
    """
    syls, weight = oracle_key(w, g)
    cyc = [list(s) for s in syls]
    while len(cyc) >= 2 and cyc[0][0] == cyc[-1][0]:
        gen, e = cyc.pop()
        e += cyc[0][1]
        order = _order(gen, g)
        if order is not None:
            e %= order
        if e:
            cyc[0][1] = e
        else:
            cyc.pop(0)
    flat = [tuple(s) for s in cyc]
    best = min((tuple(flat[i:] + flat[:i]) for i in range(len(flat))), default=())
    return best, weight
