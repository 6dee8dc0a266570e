"""Standard and conjugacy growth, series denominators and their roots."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .canonical import CanonicalElement
from .conjugacy import conj_representative
from .errors import CapExceeded, DomainError, NoRoot
from .geodesic import geodesic_word
from .words import GroupParams

DEFAULT_CAP = 14


class BadFamily(DomainError):
    kind = "BadFamily"


class BadJ(DomainError):
    kind = "BadJ"


class ZeroConstantTerm(DomainError):
    kind = "ZeroConstantTerm"


@dataclass(frozen=True)
class SphereCounts:
    s: tuple[int, ...]
    kind: str
    params: GroupParams


# ---------------------------------------------------------------- enumeration

def _step(el, ch: str, mod_x: int, mod_y: int | None):
    """Right-multiply a (syllables, central) tuple by one letter."""
    syls, central = el
    gen = ch.lower()
    e = 1 if ch == gen else -1
    if syls and syls[-1][0] == gen:
        e += syls[-1][1]
        syls = syls[:-1]
    mod = mod_x if gen == "x" else mod_y
    if mod is not None:
        carry, e = divmod(e, mod)
        central += carry
    if e:
        syls = syls + ((gen, e),)
    return syls, central


def iter_spheres(g: GroupParams, n_max: int):
    """Yield (n, elements of length n) as (syllables, central) tuples, keeping two layers in memory."""
    mod_x = g.delta_len
    mod_y = g.m if g.odd else None
    prev: set = set()
    cur = {((), 0)}
    yield 0, cur
    for n in range(1, n_max + 1):
        nxt = set()
        for el in cur:
            for ch in "xXyY":
                ne = _step(el, ch, mod_x, mod_y)
                if ne not in cur and ne not in prev:
                    nxt.add(ne)
        prev, cur = cur, nxt
        yield n, cur


def _class_signature(syls, central):
    """Least rotation of a cyclically reduced syllable word, with its Delta exponent."""
    if len(syls) <= 1:
        return syls, central
    return min(syls[i:] + syls[:i] for i in range(len(syls))), central


@lru_cache(maxsize=32)
def _growth_table(m: int, n_max: int, keyed: bool = False) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Sphere sizes and class counts.

    Every class of conjugacy length n meets sphere n in a cyclically reduced
    element, and all cyclically reduced conjugates share one syllable rotation
    class and Delta exponent. Classes are counted by that signature, or with
    ``keyed`` by their conjugacy keys (slower, used to cross-check).
    """
    g = GroupParams(m)
    spheres = []
    classes = []
    key_of: dict = {}
    for n, layer in iter_spheres(g, n_max):
        spheres.append(len(layer))
        found = set()
        for syls, central in layer:
            if len(syls) >= 2 and syls[0][0] == syls[-1][0]:
                continue
            sig = _class_signature(syls, central)
            if not keyed:
                found.add(sig)
                continue
            rep = key_of.get(sig)
            if rep is None:
                word = geodesic_word(CanonicalElement(syls, central), g)
                key = conj_representative(word, g)
                rep = key_of[sig] = (key.rep, key.length)
            if rep[1] == n:
                found.add(rep[0])
        classes.append(len(found))
    return tuple(spheres), tuple(classes)


def _check_cap(n: int, cap: int) -> None:
    if n < 0:
        raise DomainError("N must be nonnegative")
    if n > cap:
        raise CapExceeded(f"N={n} exceeds the cap {cap}")


def sphere_sizes(g: GroupParams, n: int, cap: int = DEFAULT_CAP) -> SphereCounts:
    _check_cap(n, cap)
    s, _ = _growth_table(g.m, n)
    return SphereCounts(s, "elements", g)


def conj_class_counts(g: GroupParams, n: int, cap: int = DEFAULT_CAP, keyed: bool = False) -> SphereCounts:
    _check_cap(n, cap)
    _, c = _growth_table(g.m, n, keyed)
    return SphereCounts(c, "classes", g)


# ---------------------------------------------------------------- polynomials

@dataclass(frozen=True)
class IntPolynomial:
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coeffs))

    def __call__(self, z: float) -> float:
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("z" if i == 1 else f"z^{i}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _from_terms(terms: dict[int, int]) -> IntPolynomial:
    deg = max(terms) if terms else 0
    return IntPolynomial(tuple(terms.get(i, 0) for i in range(deg + 1)))


def alternating_denominator(x_exponents) -> IntPolynomial:
    """Denominator 1 - z - 2z X(z) for alternating words x^a y^b, b != 0 unbounded.

    ``x_exponents`` is the allowed set of nonzero x-exponents; X(z) sums z^|a|.
    """
    terms = {0: 1, 1: -1}
    for a in x_exponents:
        terms[abs(a) + 1] = terms.get(abs(a) + 1, 0) - 2
    return _from_terms(terms)


FAMILIES = ("p_odd", "q_odd", "p1_even", "p3_even", "p_j_even", "q_even_suffix")


def denominator_polynomial(family: str, k: int, j: int | None = None) -> IntPolynomial:
    """Named growth-series denominator; even families are for m = 4k."""
    if family not in FAMILIES:
        raise BadFamily(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if k < 1:
        raise DomainError("k must be at least 1")
    if family == "p_odd":
        terms = {0: 1}
        for i in range(2, k + 1):
            terms[i] = -2
        terms[k + 1] = terms.get(k + 1, 0) - 1
        terms[k + 2] = terms.get(k + 2, 0) - 1
        return _from_terms(terms)
    if family == "q_odd":
        terms = {0: 1}
        for i in range(2, k + 2):
            terms[i] = -2
        return _from_terms(terms)
    if family == "p1_even":
        return alternating_denominator(range(1, 2 * k))
    if family == "p3_even":
        return alternating_denominator([a for a in range(-(k - 1), k) if a])
    if j is None or not k <= j <= 2 * k - 1:
        raise BadJ(f"j must satisfy {k} <= j <= {2 * k - 1}, got {j}")
    if family == "p_j_even":
        return alternating_denominator([a for a in range(-(2 * k - j - 1), j + 1) if a])
    return alternating_denominator([a for a in range(-(2 * k - j), j) if a])


def series_coeffs(den: IntPolynomial, num: IntPolynomial, n: int) -> list:
    """First n+1 Taylor coefficients of num/den, exact."""
    d = den.coefficients
    if not d or d[0] == 0:
        raise ZeroConstantTerm("denominator has zero constant term")
    nc = num.coefficients
    d0 = d[0]
    out: list = []
    for i in range(n + 1):
        acc = Fraction(nc[i] if i < len(nc) else 0)
        for t in range(1, min(i, len(d) - 1) + 1):
            acc -= d[t] * out[i - t]
        val = acc / d0
        out.append(val)
    return [int(v) if v.denominator == 1 else v for v in out]


@dataclass(frozen=True)
class RootResult:
    value: float
    tolerance: float
    bracket: tuple[float, float]

    @property
    def growth_rate(self) -> float:
        return 1.0 / self.value


def smallest_positive_root(poly: IntPolynomial, tol: float = 1e-12, steps: int = 1024) -> RootResult:
    """Sign scan on (0, 1) at step 1/steps, then bisection down to ``tol``."""
    f0 = poly(0.0)
    if f0 == 0:
        raise NoRoot("polynomial vanishes at 0")
    lo = 0.0
    hi = None
    for i in range(1, steps + 1):
        z = i / steps
        fz = poly(z)
        if fz == 0:
            return RootResult(z, 0.0, (z, z))
        if (fz > 0) != (f0 > 0):
            lo, hi = (i - 1) / steps, z
            break
    if hi is None:
        raise NoRoot("no sign change on (0, 1)")
    flo = poly(lo)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = poly(mid)
        if fm == 0:
            return RootResult(mid, 0.0, (mid, mid))
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return RootResult((lo + hi) / 2, tol, (lo, hi))


def enumerate_syllable_language(k: int, n_max: int) -> list[int]:
    """Count words x y^b1 x y^b2 ... with -k <= b <= k, b != 0, by length, by listing them."""
    counts = [0] * (n_max + 1)
    syllables = []
    for b in range(-k, k + 1):
        if b:
            syllables.append("x" + ("y" if b > 0 else "Y") * abs(b))
    stack = [""]
    while stack:
        w = stack.pop()
        counts[len(w)] += 1
        for s in syllables:
            if len(w) + len(s) <= n_max:
                stack.append(w + s)
    return counts


# ---------------------------------------------------------------- asymptotics

def reference_root(g: GroupParams) -> tuple[str, IntPolynomial]:
    """Denominator whose smallest root governs conjugacy growth for G(m)."""
    k = g.k
    if g.odd:
        return "q_odd", denominator_polynomial("q_odd", k)
    p = g.delta_len
    if p == 2:
        return "1-2z", IntPolynomial((1, -2))
    if p % 2 == 0:
        return f"p_j_even(j={k})", denominator_polynomial("p_j_even", k, k)
    # p = 2k+1: Type (3) range [-k, k] gives the dominant alternating language
    return "type3 range [-k,k]", alternating_denominator([a for a in range(-k, k + 1) if a])


@dataclass
class AsymptoticsReport:
    m: int
    n_max: int
    s: tuple[int, ...]
    c: tuple[int, ...]
    ratio: list[float]
    n_ratio: list[float]
    paired_ratio: list[float | None]
    s_rate: list[float | None]
    c_rate: list[float | None]
    root_name: str
    root: float
    window: tuple[int, int]
    band_ratio: float
    band_paired_ratio: float
    band_n_ratio: float
    drift: float
    supports_exponential: bool
    supports_exponential_over_n: bool
    regime: str
    predicted: str

    def rows(self):
        for n in range(self.n_max + 1):
            yield {
                "n": n,
                "s": self.s[n],
                "c": self.c[n],
                "c_over_s": self.ratio[n],
                "n_c_over_s": self.n_ratio[n],
                "paired_c_over_s": self.paired_ratio[n],
                "s_rate": self.s_rate[n],
                "c_rate": self.c_rate[n],
            }

    def summary(self) -> dict:
        return {
            "m": self.m,
            "n_max": self.n_max,
            "window": list(self.window),
            "root_family": self.root_name,
            "root": self.root,
            "rate_from_root": 1 / self.root,
            "band_c_over_s": self.band_ratio,
            "band_paired_c_over_s": self.band_paired_ratio,
            "band_n_c_over_s": self.band_n_ratio,
            "drift_c_over_s": self.drift,
            "supports_alpha_n": self.supports_exponential,
            "supports_alpha_n_over_n": self.supports_exponential_over_n,
            "regime": self.regime,
            "predicted": self.predicted,
        }


BAND = 3.0


def band(values) -> float:
    """max/min of a positive sequence."""
    values = list(values)
    lo, hi = min(values), max(values)
    return hi / lo if lo > 0 else math.inf


def paired_ratio(c, s, n: int) -> float | None:
    """(c(n-1)+c(n)) / (s(n-1)+s(n)); cancels the period-2 term of denominators like 1-2z^2."""
    if n < 1:
        return None
    return (c[n - 1] + c[n]) / (s[n - 1] + s[n])


def asymptotics_report(g: GroupParams, n: int, cap: int = DEFAULT_CAP, width: int = 6) -> AsymptoticsReport:
    """Ratios over the window [n - width, n]; a ratio counts as bounded when max/min <= BAND."""
    _check_cap(n, cap)
    if n < width + 1:
        raise DomainError(f"N must be at least {width + 1}")
    lo = n - width
    s, c = _growth_table(g.m, n)
    ratio = [c[i] / s[i] for i in range(n + 1)]
    n_ratio = [i * c[i] / s[i] for i in range(n + 1)]
    paired = [paired_ratio(c, s, i) for i in range(n + 1)]
    s_rate = [s[i + 1] / s[i] if i < n else None for i in range(n + 1)]
    c_rate = [c[i + 1] / c[i] if i < n and c[i] else None for i in range(n + 1)]
    win = range(lo, n + 1)
    band_ratio = band(ratio[i] for i in win)
    band_paired = band(paired[i] for i in win)
    band_n = band(n_ratio[i] for i in win)
    drift = ratio[n] / ratio[lo]
    name, poly = reference_root(g)
    root = smallest_positive_root(poly).value
    predicted = "alpha^n/n" if (not g.odd and g.delta_len % 2 == 1) else "alpha^n"
    exp_ok = band_ratio <= BAND
    exp_n_ok = band_n <= BAND and drift < 1
    if exp_ok and exp_n_ok:
        regime = "alpha^n/n" if band_n < band_ratio else "alpha^n"
    elif exp_ok:
        regime = "alpha^n"
    elif exp_n_ok:
        regime = "alpha^n/n"
    else:
        regime = "undetermined"
    return AsymptoticsReport(
        g.m, n, s, c, ratio, n_ratio, paired, s_rate, c_rate, name, root, (lo, n),
        band_ratio, band_paired, band_n, drift, exp_ok, exp_n_ok, regime, predicted,
    )
