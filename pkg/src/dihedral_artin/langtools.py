"""Finite automata over {x, X, y, Y}, the conjugacy-geodesic automaton and fellow-traveller checks."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .canonical import CanonicalElement, IDENTITY, canonical_multiply, to_canonical
from .errors import CapExceeded, DomainError
from .geodesic import geodesic_length, is_geodesic
from .growth import iter_spheres
from .words import LETTERS, GroupParams, invert_word, word_sort_key

FFTP_CAP = 8


@dataclass(frozen=True)
class Dfa:
    """Complete DFA on states 0..n-1; ``delta[q][i]`` is the target on ``LETTERS[i]``."""

    delta: tuple[tuple[int, ...], ...]
    start: int
    accepting: frozenset[int]

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def step(self, q: int, ch: str) -> int:
        return self.delta[q][LETTERS.index(ch)]

    def run(self, w: str) -> int:
        q = self.start
        for ch in w:
            q = self.delta[q][_INDEX[ch]]
        return q

    def to_json(self) -> str:
        return json.dumps(
            {
                "alphabet": LETTERS,
                "start": self.start,
                "accepting": sorted(self.accepting),
                "delta": [list(row) for row in self.delta],
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "Dfa":
        data = json.loads(text)
        if data.get("alphabet", LETTERS) != LETTERS:
            raise DomainError("automaton alphabet must be xXyY")
        return cls(tuple(tuple(r) for r in data["delta"]), data["start"], frozenset(data["accepting"]))

    def to_dot(self, name: str = "dfa") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point, label=""];']
        for q in range(self.n_states):
            shape = "doublecircle" if q in self.accepting else "circle"
            lines.append(f"  q{q} [shape={shape}];")
        lines.append(f"  init -> q{self.start};")
        for q, row in enumerate(self.delta):
            grouped: dict[int, list[str]] = {}
            for ch, t in zip(LETTERS, row):
                grouped.setdefault(t, []).append(ch)
            for t, chs in grouped.items():
                lines.append(f'  q{q} -> q{t} [label="{",".join(chs)}"];')
        lines.append("}")
        return "\n".join(lines)


_INDEX = {ch: i for i, ch in enumerate(LETTERS)}


def _explore(start, step, accept, limit: int | None = None) -> Dfa:
    """Build a complete DFA from a hashable start state and a successor function."""
    index = {start: 0}
    order = [start]
    rows: list[tuple[int, ...]] = []
    i = 0
    while i < len(order):
        if limit is not None and len(order) > limit:
            raise CapExceeded(f"automaton construction exceeded {limit} states")
        s = order[i]
        row = []
        for ch in LETTERS:
            t = step(s, ch)
            if t not in index:
                index[t] = len(order)
                order.append(t)
            row.append(index[t])
        rows.append(tuple(row))
        i += 1
    return Dfa(tuple(rows), 0, frozenset(q for q, s in enumerate(order) if accept(s)))


def complete(delta: dict, start, accepting, sink="sink") -> Dfa:
    """Complete a partial table ``{state: {letter: state}}`` with a sink and renumber."""
    def step(s, ch):
        if s == sink:
            return sink
        return delta.get(s, {}).get(ch, sink)

    return _explore(start, step, lambda s: s != sink and s in accepting)


def determinize(start_states, delta: dict, accepting, epsilon: dict | None = None) -> Dfa:
    """Subset construction; ``delta[(state, letter)]`` and ``epsilon[state]`` are iterables."""
    epsilon = epsilon or {}

    def close(states):
        seen = set(states)
        stack = list(states)
        while stack:
            s = stack.pop()
            for t in epsilon.get(s, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def step(subset, ch):
        out = set()
        for s in subset:
            out.update(delta.get((s, ch), ()))
        return close(out)

    return _explore(close(start_states), step, lambda subset: any(s in accepting for s in subset))


def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement on the reachable part, renumbered in BFS order."""
    reach = _reachable(d)
    block = {q: (1 if q in d.accepting else 0) for q in reach}
    n_blocks = len(set(block.values()))
    while True:
        sig = {q: (block[q],) + tuple(block[t] for t in d.delta[q]) for q in reach}
        ids: dict = {}
        new = {q: ids.setdefault(sig[q], len(ids)) for q in sorted(reach)}
        if len(ids) == n_blocks:
            block = new
            break
        block, n_blocks = new, len(ids)
    rep = {}
    for q in sorted(reach):
        rep.setdefault(block[q], q)
    quotient = _explore(
        block[d.start],
        lambda b, ch: block[d.delta[rep[b]][_INDEX[ch]]],
        lambda b: rep[b] in d.accepting,
    )
    return quotient


def _reachable(d: Dfa) -> list[int]:
    seen = {d.start}
    queue = deque([d.start])
    while queue:
        q = queue.popleft()
        for t in d.delta[q]:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return sorted(seen)


def complement(d: Dfa) -> Dfa:
    return Dfa(d.delta, d.start, frozenset(range(d.n_states)) - d.accepting)


def intersect(a: Dfa, b: Dfa) -> Dfa:
    return _explore(
        (a.start, b.start),
        lambda s, ch: (a.delta[s[0]][_INDEX[ch]], b.delta[s[1]][_INDEX[ch]]),
        lambda s: s[0] in a.accepting and s[1] in b.accepting,
    )


def union(a: Dfa, b: Dfa) -> Dfa:
    return _explore(
        (a.start, b.start),
        lambda s, ch: (a.delta[s[0]][_INDEX[ch]], b.delta[s[1]][_INDEX[ch]]),
        lambda s: s[0] in a.accepting or s[1] in b.accepting,
    )


def isomorphic(a: Dfa, b: Dfa) -> bool:
    """Equality after canonical BFS renumbering of the reachable parts."""
    def canon(d: Dfa):
        return _explore(d.start, lambda q, ch: d.delta[q][_INDEX[ch]], lambda q: q in d.accepting)

    return canon(a) == canon(b)


def universal_dfa() -> Dfa:
    return Dfa(((0, 0, 0, 0),), 0, frozenset({0}))


def sink_dfa() -> Dfa:
    return Dfa(((0, 0, 0, 0),), 0, frozenset())


def dfa_accepts(d: Dfa, w: str) -> bool:
    return d.run(w) in d.accepting


def dfa_count(d: Dfa, n: int) -> int:
    """Number of accepted words of length exactly n, by pushing a count vector n times."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    vec = [0] * d.n_states
    vec[d.start] = 1
    for _ in range(n):
        nxt = [0] * d.n_states
        for q, c in enumerate(vec):
            if c:
                for t in d.delta[q]:
                    nxt[t] += c
        vec = nxt
    return sum(vec[q] for q in d.accepting)


def dfa_counts(d: Dfa, n: int) -> list[int]:
    vec = [0] * d.n_states
    vec[d.start] = 1
    out = []
    for i in range(n + 1):
        if i:
            nxt = [0] * d.n_states
            for q, c in enumerate(vec):
                if c:
                    for t in d.delta[q]:
                        nxt[t] += c
            vec = nxt
        out.append(sum(vec[q] for q in d.accepting))
    return out


# ------------------------------------------------------------ group arithmetic

class _Ball:
    """Elements of norm <= radius with cached left/right letter multiplication."""

    def __init__(self, g: GroupParams, radius: int):
        self.g = g
        self.radius = radius
        self.norm: dict[CanonicalElement, int] = {}
        for n, layer in iter_spheres(g, radius):
            for syls, central in layer:
                self.norm[CanonicalElement(syls, central)] = n
        self._letters = {ch: to_canonical(ch, g) for ch in LETTERS}
        self._left: dict = {}
        self._right: dict = {}

    def left(self, ch: str, h: CanonicalElement) -> CanonicalElement:
        key = (ch, h)
        out = self._left.get(key)
        if out is None:
            out = self._left[key] = canonical_multiply(self._letters[ch], h, self.g)
        return out

    def right(self, h: CanonicalElement, ch: str) -> CanonicalElement:
        key = (h, ch)
        out = self._right.get(key)
        if out is None:
            out = self._right[key] = canonical_multiply(h, self._letters[ch], self.g)
        return out


@lru_cache(maxsize=16)
def _ball(m: int, radius: int) -> _Ball:
    return _Ball(GroupParams(m), radius)


# ------------------------------------------------------------ fellow travelling

def fellow_travel_distance(u: str, v: str, g: GroupParams) -> int:
    """Max over i of |pre_i(u)^-1 pre_i(v)|, the shorter word padded at its end."""
    best = 0
    n = max(len(u), len(v))
    for i in range(n + 1):
        h = to_canonical(invert_word(u[:i]) + v[:i], g)
        best = max(best, geodesic_length(h, g))
    return best


def shorter_fellow_traveller(w: str, g: GroupParams, bound: int) -> tuple[int, str] | None:
    """Least D <= bound for which a shorter word equal to ``w`` D-fellow-travels it, with a witness.

    Searches every shorter word at once: the state after i steps is the pair
    (pre_i(w)^-1 pre_i(w'), whether w' has already ended).
    """
    ball = _ball(g.m, bound)
    inv = {ch: invert_word(ch) for ch in LETTERS}
    for d in range(0, bound + 1):
        layer = {(IDENTITY, False): None}
        parents = []
        for a in w:
            nxt: dict = {}
            for state in layer:
                h, ended = state
                base = ball.left(inv[a], h)
                moves = [(base, True, "")] if ended else [(base, True, "")] + [
                    (ball.right(base, b), False, b) for b in LETTERS
                ]
                for h2, end2, b in moves:
                    norm = ball.norm.get(h2)
                    if norm is None or norm > d:
                        continue
                    key = (h2, end2)
                    if key not in nxt:
                        nxt[key] = (state, b)
            parents.append(nxt)
            layer = nxt
        goal = (IDENTITY, True)
        if goal in layer:
            letters = []
            state = goal
            for level in reversed(parents):
                state, b = level[state]
                letters.append(b)
            return d, "".join(reversed(letters))
    return None


@dataclass(frozen=True)
class FftpReport:
    m: int
    max_len: int
    observed_constant: int
    bound: int
    words_checked: int
    worst_word: str
    worst_witness: str
    all_found: bool

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "max_len": self.max_len,
            "observed_constant": self.observed_constant,
            "bound": self.bound,
            "words_checked": self.words_checked,
            "worst_word": self.worst_word,
            "worst_witness": self.worst_witness,
            "all_found": self.all_found,
        }


def fftp_bound(g: GroupParams) -> int:
    """Fellow-traveller constant from the rewriting argument: 2k+9 odd, 4p even."""
    if g.odd:
        return 2 * g.k + 9
    return 4 * g.delta_len


def _advance(ball: _Ball, states: frozenset, a: str, d: int) -> frozenset:
    """One synchronous step of the shorter-word search at radius d."""
    out = set()
    inv_a = invert_word(a)
    for h, ended in states:
        base = ball.left(inv_a, h)
        if ball.norm.get(base, d + 1) <= d:
            out.add((base, True))
        if not ended:
            for b in LETTERS:
                h2 = ball.right(base, b)
                if ball.norm.get(h2, d + 1) <= d:
                    out.add((h2, False))
    return frozenset(out)


def fftp_check(g: GroupParams, max_len: int, cap: int = FFTP_CAP) -> FftpReport:
    """Least fellow-traveller constant for every non-geodesic word up to ``max_len``.

    For each radius d the search runs once over the tree of all words, so
    words sharing a prefix share the work.
    """
    if max_len < 0:
        raise DomainError("max_len must be nonnegative")
    if max_len > cap:
        raise CapExceeded(f"max_len={max_len} exceeds the cap {cap}")
    bound = fftp_bound(g)
    ball = _ball(g.m, bound)
    pending = {w for w in _words_up_to(max_len) if not is_geodesic(w, g)}
    checked = len(pending)
    best: dict[str, int] = {}
    goal = (IDENTITY, True)
    for d in range(1, bound + 1):
        if not pending:
            break
        live = _prefixes(pending)
        stack = [("", frozenset({(IDENTITY, False)}))]
        while stack:
            prefix, states = stack.pop()
            for a in LETTERS:
                w = prefix + a
                if w not in live:
                    continue
                nxt = _advance(ball, states, a, d)
                if w in pending and goal in nxt:
                    best[w] = d
                    pending.discard(w)
                if len(w) < max_len and nxt:
                    stack.append((w, nxt))
    worst = (0, "", "")
    if best:
        # deterministic choice: largest constant, then the least word
        d, w = min(((d, w) for w, d in best.items()), key=lambda t: (-t[0], len(t[1]), word_sort_key(t[1])))
        d_min, witness = shorter_fellow_traveller(w, g, d)
        worst = (d_min, w, witness)
    return FftpReport(g.m, max_len, worst[0], bound, checked, worst[1], worst[2], not pending)


def _prefixes(words) -> set[str]:
    out = set()
    for w in words:
        for i in range(1, len(w) + 1):
            out.add(w[:i])
    return out


def _words_up_to(n: int):
    layer = [""]
    for _ in range(n):
        layer = [w + ch for w in layer for ch in LETTERS]
        yield from layer


# ------------------------------------------------------------ automata

MAX_STATES = 50_000


def geodesic_dfa(g: GroupParams, radius: int, max_states: int = MAX_STATES) -> Dfa:
    """Geodesic words, assuming every non-geodesic word ``radius``-fellow-travels a shorter word.

    The state of a prefix u maps each h in the ball to the least (|v| - |u|)
    over padded words v that stay within ``radius`` of u and end at u h.
    """
    ball = _ball(g.m, radius)
    inv = {ch: invert_word(ch) for ch in LETTERS}
    start = ((IDENTITY, 0),)
    sink = "sink"

    def step(state, a):
        if state == sink:
            return sink
        best: dict = {}
        for h, val in state:
            base = ball.left(inv[a], h)
            for h2, cost in [(base, -1)] + [(ball.right(base, b), 0) for b in LETTERS]:
                if ball.norm.get(h2, radius + 1) > radius:
                    continue
                v = val + cost
                if v < best.get(h2, 1):
                    best[h2] = v
        if best.get(IDENTITY, 0) < 0:
            return sink
        return tuple(sorted(best.items(), key=lambda kv: (_elem_key(kv[0]), kv[1])))

    # with too small a radius non-geodesics survive and the states never close up
    return minimize(_explore(start, step, lambda s: s != sink, limit=max_states))


def _elem_key(h: CanonicalElement):
    return (h.syllables, h.central)


def cyclic_closure(d: Dfa) -> Dfa:
    """Words all of whose cyclic rotations are accepted by ``d``.

    A rotation v u of the input u v is rejected iff, with q the state reached
    on v, u leads from q to a rejecting state. The state after a prefix keeps
    the transformation of the prefix together with the pairs (q, state reached
    on the part read since each rejecting split point).
    """
    n = d.n_states
    rejecting = [q not in d.accepting for q in range(n)]
    # a rejected factor is rejected in every rotation; those words all go to one dead state
    dead_ends = {q for q in range(n) if rejecting[q] and all(t == q for t in d.delta[q])}
    live = [q for q in range(n) if q not in dead_ends]
    dead = "dead"
    if d.start in dead_ends:
        return sink_dfa()
    start_pos = live.index(d.start)

    def splits(tau, pairs):
        extra = {(q, d.start) for q, t in zip(live, tau) if rejecting[t]}
        return frozenset(pairs | extra)

    start = (tuple(live), splits(tuple(live), frozenset()))

    def step(state, ch):
        if state == dead:
            return dead
        tau, pairs = state
        i = _INDEX[ch]
        tau2 = tuple(d.delta[t][i] for t in tau)
        pairs2 = frozenset((q, d.delta[p][i]) for q, p in pairs)
        if tau2[start_pos] in dead_ends or any(p in dead_ends for _, p in pairs2):
            return dead
        return tau2, splits(tau2, pairs2)

    def accept(state):
        return state != dead and not any(q == p for q, p in state[1])

    return minimize(_explore(start, step, accept))


@lru_cache(maxsize=16)
def _conjgeo_cached(m: int, radius: int) -> Dfa:
    return cyclic_closure(geodesic_dfa(GroupParams(m), radius))


def default_radius(g: GroupParams) -> int:
    """Fellow-traveller radius for the geodesic automaton; 4 covers every observed constant."""
    return 4


def build_conjgeo_dfa(g: GroupParams, radius: int | None = None) -> Dfa:
    return _conjgeo_cached(g.m, radius if radius is not None else default_radius(g))
