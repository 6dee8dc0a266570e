"""Geodesics: length, reduction, enumeration and type classification.

Length comes from a small optimisation over the canonical form.  Each
quotient syllable may be spelled with its positive residue or with its
negative residue (x -> x^-1 Delta, y^b -> y^(b-m) Delta, x^a -> x^(a-p) Delta);
every negative spelling pushes one more Delta into the leftover central
power, which costs delta_len letters per unit.  The optimal spellings are
exactly the normal forms listed in the geodesic type tables, with Delta
collected on the right.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations

from .canonical import CanonicalElement, to_canonical
from .errors import CapExceeded, NotGeodesic
from .words import (
    GroupParams,
    free_reduce,
    inverse_letter,
    power,
    runs,
    word_sort_key,
)

log = logging.getLogger(__name__)

GEODESIC_CAP = 200_000


# ---------------------------------------------------------------- length

@dataclass(frozen=True)
class _Plan:
    """Optimal sign choices for a fixed sequence of quotient syllables."""

    length: int
    options: tuple            # per syllable: (gen, pos_exp, neg_exp or None)
    central: int
    # each entry: (N, forced indices, tie indices, how many ties to negate)
    choices: tuple


def _options(syls, g: GroupParams):
    out = []
    for gen, e in syls:
        if gen == "x":
            out.append((gen, e, e - g.delta_len))
        elif g.odd:
            out.append((gen, e, e - g.m))
        else:
            out.append((gen, e, None))
    return tuple(out)


def _plan(syls: tuple, central: int, g: GroupParams) -> _Plan:
    opts = _options(syls, g)
    base = sum(abs(o[1]) for o in opts)
    extras = sorted(
        (abs(o[2]) - abs(o[1]), i) for i, o in enumerate(opts) if o[2] is not None
    )
    d = g.delta_len
    values = []
    acc = 0
    for n in range(len(extras) + 1):
        if n:
            acc += extras[n - 1][0]
        values.append(base + acc + d * abs(central + n))
    best = min(values)
    choices = []
    for n, v in enumerate(values):
        if v != best:
            continue
        if n == 0:
            choices.append((0, (), (), 0))
            continue
        threshold = extras[n - 1][0]
        forced = tuple(sorted(i for x, i in extras if x < threshold))
        ties = tuple(sorted(i for x, i in extras if x == threshold))
        choices.append((n, forced, ties, n - len(forced)))
    return _Plan(best, opts, central, tuple(choices))


def _spell(plan: _Plan, negated, n: int, g: GroupParams) -> str:
    body = "".join(
        power(gen, neg if i in negated else pos)
        for i, (gen, pos, neg) in enumerate(plan.options)
    )
    word = free_reduce(body + g.delta_word(plan.central + n))
    return word


def _lexmin_spelling(plan: _Plan, g: GroupParams) -> str:
    """Smallest optimal spelling: positive residues preferred as early as possible."""
    best = None
    for n, forced, ties, need in plan.choices:
        # x < X and y < Y, so keeping early ties positive wins at the first difference
        negated = set(forced) | set(ties[len(ties) - need:])
        w = _spell(plan, negated, n, g)
        if best is None or word_sort_key(w) < word_sort_key(best):
            best = w
    return best


def geodesic_length(e: CanonicalElement, g: GroupParams) -> int:
    return _plan(e.syllables, e.central, g).length


def word_length(w: str, g: GroupParams) -> int:
    """Length of the element represented by ``w``."""
    return geodesic_length(to_canonical(w, g), g)


def is_geodesic(w: str, g: GroupParams) -> bool:
    return len(w) == word_length(w, g)


def geodesic_word(e: CanonicalElement, g: GroupParams) -> str:
    """The lexicographically least geodesic with Delta collected on the right."""
    return _lexmin_spelling(_plan(e.syllables, e.central, g), g)


def normal_form_geodesics(e: CanonicalElement, g: GroupParams, cap: int = GEODESIC_CAP) -> set[str]:
    """Geodesics of ``e`` with every Delta collected on the right."""
    plan = _plan(e.syllables, e.central, g)
    out: set[str] = set()
    for n, forced, ties, need in plan.choices:
        for picked in combinations(ties, need):
            out.add(_spell(plan, set(forced) | set(picked), n, g))
            if len(out) > cap:
                raise CapExceeded(f"more than {cap} normal-form geodesics")
    return out


def enumerate_geodesics(
    e: CanonicalElement, g: GroupParams, cap: int = GEODESIC_CAP, delta_rightmost: bool = False
) -> set[str]:
    """Geodesic words for ``e``.

    By default every geodesic spelling is returned, including those with
    Delta factors in the interior.  With ``delta_rightmost`` only the normal
    forms (Delta collected on the right) are returned.
    """
    if delta_rightmost:
        return normal_form_geodesics(e, g, cap)
    found = _all_geodesics(e, g, cap)
    return set(found)


def _all_geodesics(e: CanonicalElement, g: GroupParams, cap: int) -> list[str]:
    # w = w' l is geodesic for e  iff  w' is geodesic for e l^-1 and |e l^-1| = |e| - 1
    from .canonical import multiply_letter

    memo: dict[CanonicalElement, list[str]] = {}

    def rec(el: CanonicalElement, n: int) -> list[str]:
        if n == 0:
            return [""]
        if el in memo:
            return memo[el]
        out: list[str] = []
        for ch in "xXyY":
            prev = multiply_letter(el, inverse_letter(ch), g)
            if geodesic_length(prev, g) == n - 1:
                out.extend(w + ch for w in rec(prev, n - 1))
                if len(out) > cap:
                    raise CapExceeded(f"more than {cap} geodesics")
        memo[el] = out
        return out

    return rec(e, geodesic_length(e, g))


# ---------------------------------------------------------------- reductions

def _first_rule(rs: list[list], g: GroupParams):
    """Return (rule name, new word) for the leftmost applicable reduction, or None."""
    if g.odd:
        return _first_rule_odd(rs, g)
    return _first_rule_even(rs, g)


def _join(rs) -> str:
    return "".join(power(gen, e) for gen, e in rs if e)


def _sign(v: int) -> int:
    return 1 if v > 0 else -1


def _first_rule_odd(rs, g: GroupParams):
    k = g.k
    n = len(rs)
    xs = [i for i, (gen, _) in enumerate(rs) if gen == "x"]
    ys = [i for i, (gen, _) in enumerate(rs) if gen == "y"]
    # R3a: y^(k+2) -> x^2 y^-(k-1)
    for i in ys:
        b = rs[i][1]
        if abs(b) >= k + 2:
            s = _sign(b)
            new = [list(r) for r in rs]
            new[i] = ["y", b - s * (k + 2)]
            new[i:i] = [["x", 2 * s], ["y", -s * (k - 1)]]
            return "R3a", _join(new)
    # R1: x^(2e) ... x^(-e) in either order
    for i in xs:
        a = rs[i][1]
        if abs(a) >= 2:
            for j in xs:
                if j != i and rs[j][1] * a < 0:
                    s = _sign(a)
                    new = [list(r) for r in rs]
                    new[i][1] -= 2 * s
                    new[j][1] += 2 * s
                    return "R1", _join(new)
    # R2: y^e x^(2l) y^-e
    for i in xs:
        a = rs[i][1]
        if a % 2 == 0 and 0 < i < n - 1 and rs[i - 1][1] * rs[i + 1][1] < 0:
            new = [list(r) for r in rs]
            new[i - 1][1] -= _sign(new[i - 1][1])
            new[i + 1][1] -= _sign(new[i + 1][1])
            return "R2", _join(new)
    # R3b: x^e ... y^(-e(k+1)) in either order
    for i in ys:
        b = rs[i][1]
        if abs(b) == k + 1:
            for j in xs:
                if rs[j][1] * b < 0:
                    s = _sign(rs[j][1])
                    new = [list(r) for r in rs]
                    new[j][1] -= 2 * s
                    new[i][1] = s * k
                    return "R3b", _join(new)
    # R3c: x^(2e) ... y^(-ke) in either order
    for i in ys:
        b = rs[i][1]
        if abs(b) == k:
            for j in xs:
                a = rs[j][1]
                if abs(a) >= 2 and a * b < 0:
                    s = _sign(a)
                    new = [list(r) for r in rs]
                    new[j][1] -= 2 * s
                    new[i][1] = s * (k + 1)
                    return "R3c", _join(new)
    # R4: y^a x^(2l) y^b, ab > 0, |a+b| > k+1
    for i in xs:
        a = rs[i][1]
        if a % 2 == 0 and 0 < i < n - 1:
            left, right = rs[i - 1][1], rs[i + 1][1]
            if left * right > 0 and abs(left + right) > k + 1:
                new = [list(r) for r in rs]
                new[i - 1][1] = 0
                new[i + 1][1] = left + right
                return "R4", _join(new)
    return None


def _first_rule_even(rs, g: GroupParams):
    p = g.delta_len
    n = len(rs)
    xs = [i for i, (gen, _) in enumerate(rs) if gen == "x"]
    # R1: x^(p e) ... x^(-e l) in either order, 1 <= l <= p-1
    for i in xs:
        a = rs[i][1]
        if abs(a) >= p:
            for j in xs:
                b = rs[j][1]
                if j != i and a * b < 0:
                    s = _sign(a)
                    new = [list(r) for r in rs]
                    new[i][1] -= s * p
                    new[j][1] += s * p
                    return "R1", _join(new)
    # R2: y^e x^(pl) y^-e
    for i in xs:
        a = rs[i][1]
        if a % p == 0 and 0 < i < n - 1 and rs[i - 1][1] * rs[i + 1][1] < 0:
            new = [list(r) for r in rs]
            new[i - 1][1] -= _sign(new[i - 1][1])
            new[i + 1][1] -= _sign(new[i + 1][1])
            return "R2", _join(new)
    # R3: x^s ... x^d, s > 0 > d, s + |d| > p
    for i in xs:
        a = rs[i][1]
        if a > 0:
            for j in xs:
                b = rs[j][1]
                if b < 0 and a - b > p:
                    new = [list(r) for r in rs]
                    new[i][1] -= p
                    new[j][1] += p
                    return "R3", _join(new)
    return None


def reduction_step(w: str, g: GroupParams):
    """One reduction: (rule, shorter-or-equal word) or None when irreducible."""
    reduced = free_reduce(w)
    if reduced != w:
        return "R0", reduced
    hit = _first_rule([list(r) for r in runs(w)], g)
    if hit is None:
        return None
    name, new = hit
    return name, free_reduce(new)


def centralize(w: str, g: GroupParams) -> str:
    """Move every Delta factor of ``w`` to the right end; never lengthens."""
    syls, r = skeleton(w, g)
    return free_reduce(_join(syls) + g.delta_word(r))


def reduce_to_geodesic(w: str, g: GroupParams, trace: list | None = None) -> str:
    """Apply the falsification reductions until none applies.

    An irreducible word is then checked against the length formula.  A
    mismatch would mean the reductions are incomplete; the word is then
    replaced by the normal-form geodesic and the event is logged.
    """
    current = w
    while True:
        step = reduction_step(current, g)
        if step is None:
            moved = centralize(current, g)
            if moved == current:
                break
            step = ("RR1", moved)
        name, nxt = step
        if trace is not None:
            trace.append((name, nxt))
        current = nxt
    target = word_length(current, g)
    if len(current) != target:
        log.warning("irreducible word %r is not geodesic (length %d > %d)", current, len(current), target)
        if trace is not None:
            trace.append(("fallback", None))
        current = geodesic_word(to_canonical(current, g), g)
    return current


# ---------------------------------------------------------------- classification

UNIQUE_TAGS = {
    "odd": {"T1", "T2", "T3plus", "T3minus", "T3pm", "T30plusU", "T30minusU"},
    "even": {"T1", "T2a", "T3"},
}
SPLIT_TAGS = {"T30plusN", "T30minusN", "T30star", "T2b"}


@dataclass(frozen=True)
class GeodesicType:
    tag: str
    j: int | None = None

    def __str__(self) -> str:
        return f"{self.tag}({self.j})" if self.j is not None else self.tag

    @property
    def unique(self) -> bool:
        return self.tag not in SPLIT_TAGS


@dataclass(frozen=True)
class SplitView:
    specials: tuple          # special syllables in word order, e.g. (("y",-2),("y",3))
    blocks: tuple            # words between consecutive specials, len(specials)+1 of them
    tau1: int
    tau2: int
    j: int | None = None


@dataclass(frozen=True)
class ExponentStats:
    pos_x: int
    neg_x: int
    pos_y: int
    neg_y: int


@dataclass(frozen=True)
class GeodesicWord:
    word: str
    gtype: GeodesicType
    syllables: tuple         # signed skeleton, Delta removed
    central: int
    split: SplitView | None = None


def skeleton(w: str, g: GroupParams) -> tuple[tuple, int]:
    """Signed syllables of ``w`` with every Delta factor pulled out to the right.

    Each run keeps the sign of its exponent; full Delta powers inside a run
    are extracted, and neighbours of a vanished run are merged.
    """
    stack: list[list] = []
    central = 0
    for gen, e in runs(w):
        # runs alternate, so after a run vanishes the next one merges with the top
        if stack and stack[-1][0] == gen:
            e += stack.pop()[1]
        mod = g.delta_len if gen == "x" else (g.m if g.odd else None)
        if mod is not None and abs(e) >= mod:
            central += _sign(e) * (abs(e) // mod)
            e = _sign(e) * (abs(e) % mod)
        if e:
            stack.append([gen, e])
    return tuple((s[0], s[1]) for s in stack), central


def exponent_stats(w: str) -> ExponentStats:
    """Largest positive and negative syllable exponent of each generator (0 if none)."""
    best = {("x", 1): 0, ("x", -1): 0, ("y", 1): 0, ("y", -1): 0}
    for gen, e in runs(w):
        key = (gen, _sign(e))
        best[key] = max(best[key], abs(e))
    return ExponentStats(best["x", 1], best["x", -1], best["y", 1], best["y", -1])


def _odd_tag(syls, r: int, k: int) -> str | None:
    xs = [e for gen, e in syls if gen == "x"]
    ys = [e for gen, e in syls if gen == "y"]

    def ys_in(lo: int, hi: int) -> bool:
        return all(lo <= b <= hi for b in ys)

    plus_x = all(a == 1 for a in xs)
    minus_x = all(a == -1 for a in xs)
    in1 = plus_x and ys_in(-(k - 1), k + 1)
    in2 = minus_x and ys_in(-(k + 1), k - 1)
    if r > 0:
        return "T1" if in1 else None
    if r < 0:
        return "T2" if in2 else None
    if not xs and ys_in(-(k - 1), k - 1):
        return "T3pm"
    if in1:
        return "T3plus"
    if in2:
        return "T3minus"
    if plus_x and ys_in(-k, k + 1) and -k in ys:
        return "T30plusN" if k + 1 in ys else "T30plusU"
    if minus_x and ys_in(-(k + 1), k) and k in ys:
        return "T30minusN" if -(k + 1) in ys else "T30minusU"
    if 1 in xs and -1 in xs and ys_in(-k, k):
        return "T30star"
    return None


def _even_tag(syls, r: int, g: GroupParams) -> tuple[str | None, int | None, int]:
    """Return (tag, j, orientation) where orientation -1 marks the inverted Type 2 form."""
    p = g.delta_len
    k = g.k
    xs = [e for gen, e in syls if gen == "x"]
    big = max([a for a in xs if a > 0], default=0)
    small = max([-a for a in xs if a < 0], default=0)
    if r > 0:
        return ("T1" if small == 0 else None), None, 1
    if r < 0:
        return ("T1" if big == 0 else None), None, 1
    if big + small > p:
        return None, None, 1
    if p == 2:
        if big and small:
            return "T2b", 1, 1
        if big or small:
            return "T2a", 1, (1 if big else -1)
        return "T3", None, 1
    type3_bound = k - 1 if p % 2 == 0 else k
    if max(big, small) <= type3_bound:
        return "T3", None, 1
    if big >= small:
        j, other, orient = big, small, 1
    else:
        j, other, orient = small, big, -1
    return ("T2b" if other == p - j else "T2a"), j, orient


def _split_view(w_syls, tag: str, g: GroupParams, j: int | None, orient: int) -> SplitView:
    k = g.k
    if tag == "T30plusN":
        first, second = ("y", -k), ("y", k + 1)
    elif tag == "T30minusN":
        first, second = ("y", -(k + 1)), ("y", k)
    elif tag == "T30star":
        first, second = ("x", -1), ("x", 1)
    else:
        p = g.delta_len
        first, second = ("x", orient * j), ("x", -orient * (p - j))
    specials = []
    blocks = []
    cur: list = []
    for s in w_syls:
        if s == first or s == second:
            specials.append(s)
            blocks.append(_join(cur))
            cur = []
        else:
            cur.append(s)
    blocks.append(_join(cur))
    tau1 = sum(1 for s in specials if s == first)
    tau2 = sum(1 for s in specials if s == second)
    return SplitView(tuple(specials), tuple(blocks), tau1, tau2, j)


def classify_geodesic(w: str, g: GroupParams) -> GeodesicWord:
    if not is_geodesic(w, g):
        raise NotGeodesic(f"{w!r} is not geodesic in G({g.m})")
    syls, r = skeleton(w, g)
    j = None
    orient = 1
    if g.odd:
        tag = _odd_tag(syls, r, g.k)
    else:
        tag, j, orient = _even_tag(syls, r, g)
    if tag is None:
        raise RuntimeError(f"geodesic {w!r} fits no type in G({g.m}); skeleton {syls}, central {r}")
    split = _split_view(syls, tag, g, j, orient) if tag in SPLIT_TAGS else None
    return GeodesicWord(w, GeodesicType(tag, j), syls, r, split)
