"""Arrow diagrams as patterns and their signed counts in Gauss diagrams.

A pattern lists, per circle, the order of its arrow endpoints as tokens
``t<i>`` (tail of arrow i) and ``h<i>`` (head).  Circle 0 of a based pattern
is read linearly from the base point; other circles are cyclic.

Two counters are provided.  ``count_naive`` tries every injective arrow
assignment and is the reference.  ``count_representations`` fixes all but
one pattern arrow, enumerates order-compatible tuples with numpy, and
counts the last arrow with 2D prefix sums over (tail, head) ranks.
"""
from __future__ import annotations

import configparser
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import numpy as np

from cwkit.gauss import GaussDiagram, rebase_linear, reverse_component, sublink

Token = tuple[str, int]


def _parse_token(tok: str) -> Token:
    kind, num = tok[0], tok[1:]
    if kind not in "th" or not num.isdigit():
        raise ValueError(f"bad pattern token {tok!r}")
    return kind, int(num)


@dataclass(frozen=True)
class ArrowPattern:
    name: str
    slots: tuple[tuple[Token, ...], ...]
    based: bool = True

    def __post_init__(self):
        slots = tuple(tuple(_parse_token(t) if isinstance(t, str) else tuple(t) for t in c)
                      for c in self.slots)
        object.__setattr__(self, "slots", slots)
        seen = [tok for c in slots for tok in c]
        if len(set(seen)) != len(seen):
            raise ValueError(f"pattern {self.name}: repeated endpoint")
        ids = {a for _, a in seen}
        for a in ids:
            if ("t", a) not in seen or ("h", a) not in seen:
                raise ValueError(f"pattern {self.name}: arrow {a} lacks a tail or head")

    @classmethod
    def from_strings(cls, name: str, circles, based: bool = True) -> "ArrowPattern":
        return cls(name, tuple(tuple(c.split()) for c in circles), based)

    @property
    def circles(self) -> int:
        return len(self.slots)

    @property
    def arrow_ids(self) -> list[int]:
        return sorted({a for c in self.slots for _, a in c})

    def location(self, token: Token) -> tuple[int, int]:
        for ci, c in enumerate(self.slots):
            if token in c:
                return ci, c.index(token)
        raise KeyError(token)

    @property
    def arrows(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        return [(self.location(("t", a)), self.location(("h", a))) for a in self.arrow_ids]

    def circle_strings(self) -> list[str]:
        return [" ".join(f"{k}{a}" for k, a in c) for c in self.slots]

    def reversed_circle(self, i: int, name: str | None = None) -> "ArrowPattern":
        slots = list(self.slots)
        slots[i] = tuple(reversed(slots[i]))
        return canonical(ArrowPattern(name or self.name, tuple(slots), self.based))


def canonical(P: ArrowPattern) -> ArrowPattern:
    """Renumber arrows by first appearance and rotate cyclic circles minimally."""
    rotations = []
    for ci, c in enumerate(P.slots):
        if ci == 0 and P.based or len(c) == 0:
            rotations.append([c])
        else:
            rotations.append([c[r:] + c[:r] for r in range(len(c))])
    best = None
    for choice in itertools.product(*rotations):
        ren: dict[int, int] = {}
        for c in choice:
            for _, a in c:
                ren.setdefault(a, len(ren) + 1)
        key = tuple(tuple((k, ren[a]) for k, a in c) for c in choice)
        flat = tuple((ren_a, 0 if k == "t" else 1) for c in key for k, ren_a in c)
        if best is None or flat < best[0]:
            best = (flat, key)
    return ArrowPattern(P.name, best[1], P.based)


# ---------------------------------------------------------------------------
# Diagram side: arrow tables per (tail component, head component)


@dataclass
class _ArrowClass:
    tail: np.ndarray
    head: np.ndarray
    sign: np.ndarray
    _table: np.ndarray | None = None
    _tail_sorted: np.ndarray | None = None
    _head_sorted: np.ndarray | None = None

    @property
    def size(self) -> int:
        return len(self.sign)

    def prefix(self):
        if self._table is None:
            ts = np.sort(self.tail)
            hs = np.sort(self.head)
            ti = np.searchsorted(ts, self.tail)
            hi = np.searchsorted(hs, self.head)
            n = self.size
            T = np.zeros((n + 1, n + 1), dtype=np.int64)
            np.add.at(T, (ti + 1, hi + 1), self.sign)
            T = T.cumsum(axis=0).cumsum(axis=1)
            self._table, self._tail_sorted, self._head_sorted = T, ts, hs
        return self._table, self._tail_sorted, self._head_sorted

    def rect_sum(self, t_lo, t_hi, h_lo, h_hi) -> np.ndarray:
        """Signed count with tail in [t_lo, t_hi) and head in [h_lo, h_hi)."""
        T, ts, hs = self.prefix()
        a = np.searchsorted(ts, t_lo)
        b = np.searchsorted(ts, t_hi)
        c = np.searchsorted(hs, h_lo)
        d = np.searchsorted(hs, h_hi)
        ok = (b > a) & (d > c)
        a2, b2 = np.where(ok, a, 0), np.where(ok, b, 0)
        c2, d2 = np.where(ok, c, 0), np.where(ok, d, 0)
        val = T[b2, d2] - T[a2, d2] - T[b2, c2] + T[a2, c2]
        return np.where(ok, val, 0)


class DiagramIndex:
    """Arrow classes and circle lengths of a diagram, reused across patterns."""

    def __init__(self, G: GaussDiagram):
        G = rebase_linear(G) if G.base is not None else G
        self.diagram = G
        self.lengths = [len(c) for c in G.components]
        buckets: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
        for k in range(1, G.n_crossings + 1):
            tc, tp = G.slot_index[k]
            hc, hp = G.slot_index[-k]
            buckets.setdefault((tc, hc), []).append((tp, hp, G.signs[k - 1]))
        self.classes: dict[tuple[int, int], _ArrowClass] = {}
        for key, rows in buckets.items():
            arr = np.array(rows, dtype=np.int64).reshape(-1, 3)
            self.classes[key] = _ArrowClass(arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy())
        self.labels = {key: [k for k in range(1, G.n_crossings + 1)
                             if (G.slot_index[k][0], G.slot_index[-k][0]) == key]
                       for key in buckets}

    def cls(self, key) -> _ArrowClass:
        c = self.classes.get(key)
        if c is None:
            z = np.zeros(0, dtype=np.int64)
            c = _ArrowClass(z, z, z)
            self.classes[key] = c
        return c


def _check(P: ArrowPattern, G: GaussDiagram) -> None:
    if P.circles != G.n_components:
        raise ValueError(f"pattern {P.name} has {P.circles} circles, diagram has {G.n_components}")
    if P.based and G.base is None:
        raise ValueError(f"pattern {P.name} is based but the diagram has no base point")


# ---------------------------------------------------------------------------
# Reference counter


def count_naive(P: ArrowPattern, G: GaussDiagram) -> int:
    """Signed number of representations by exhaustive assignment."""
    _check(P, G)
    G = rebase_linear(G) if G.base is not None else G
    ids = P.arrow_ids
    arrows = dict(zip(ids, P.arrows))
    pools = []
    for a in ids:
        (tc, _), (hc, _) = arrows[a]
        pools.append([k for k in range(1, G.n_crossings + 1)
                      if G.slot_index[k][0] == tc and G.slot_index[-k][0] == hc])
    total = 0
    for choice in itertools.product(*pools):
        if len(set(choice)) != len(choice):
            continue
        m = dict(zip(ids, choice))
        ok = True
        for ci, circ in enumerate(P.slots):
            pos = [G.slot_index[m[a] if k == "t" else -m[a]][1] for k, a in circ]
            if not _ordered(pos, linear=(ci == 0 and P.based)):
                ok = False
                break
        if ok:
            s = 1
            for k in choice:
                s *= G.signs[k - 1]
            total += s
    return total


def _ordered(pos, linear: bool) -> bool:
    if len(pos) <= 1:
        return True
    if linear:
        return all(x < y for x, y in zip(pos, pos[1:]))
    descents = sum(1 for i in range(len(pos)) if pos[i] > pos[(i + 1) % len(pos)])
    return descents == 1


# ---------------------------------------------------------------------------
# Fast counter


def _choose_free_arrow(P: ArrowPattern) -> int | None:
    """An arrow whose ends fall in distinct gaps of the remaining endpoints."""
    arrows = dict(zip(P.arrow_ids, P.arrows))
    candidates = []
    for a in P.arrow_ids:
        (tc, ti), (hc, hi) = arrows[a]
        if tc != hc:
            candidates.append((0, a))
            continue
        circ = [tok for tok in P.slots[tc] if tok[1] != a]
        linear = tc == 0 and P.based
        lo, hi_ = min(ti, hi), max(ti, hi)
        between = sum(1 for j in range(lo + 1, hi_) if P.slots[tc][j][1] != a)
        outside = len(circ) - between
        if linear and between >= 1:
            candidates.append((1, a))
        elif not linear and between >= 1 and outside >= 1:
            candidates.append((1, a))
    return min(candidates)[1] if candidates else None


def _enumerate_fixed(P: ArrowPattern, fixed: list[int], idx: DiagramIndex, chunk: int):
    """Yield (positions per fixed endpoint, sign product) for order-compatible tuples."""
    arrows = dict(zip(P.arrow_ids, P.arrows))
    classes = []
    for a in fixed:
        (tc, _), (hc, _) = arrows[a]
        classes.append(((tc, hc), idx.cls((tc, hc))))
    if not fixed:
        yield {}, np.ones(1, dtype=np.int64)
        return
    sizes = [c.size for _, c in classes]
    if min(sizes) == 0:
        return
    first_key, first = classes[0]
    rest = classes[1:]
    total_rest = int(np.prod([c.size for _, c in rest])) if rest else 1
    step = max(1, chunk // max(total_rest, 1))
    for start in range(0, first.size, step):
        sel = np.arange(start, min(first.size, start + step))
        grids = [sel]
        keys = [first_key]
        for key, c in rest:
            grids.append(np.arange(c.size))
            keys.append(key)
        mesh = np.meshgrid(*grids, indexing="ij")
        flat = [g.ravel() for g in mesh]
        keep = np.ones(flat[0].shape, dtype=bool)
        for i in range(len(flat)):
            for j in range(i):
                if keys[i] == keys[j]:
                    keep &= flat[i] != flat[j]
        flat = [f[keep] for f in flat]
        if flat[0].size == 0:
            continue
        pos = {}
        sign = np.ones(flat[0].shape, dtype=np.int64)
        for a, (key, c), ids in zip(fixed, classes, flat):
            pos[("t", a)] = c.tail[ids]
            pos[("h", a)] = c.head[ids]
            sign = sign * c.sign[ids]
        mask = np.ones(sign.shape, dtype=bool)
        for ci, circ in enumerate(P.slots):
            seq = [pos[tok] for tok in circ if tok in pos]
            if len(seq) <= 1:
                continue
            if ci == 0 and P.based:
                for x, y in zip(seq, seq[1:]):
                    mask &= x < y
            else:
                desc = np.zeros(sign.shape, dtype=np.int64)
                for i in range(len(seq)):
                    desc += seq[i] > seq[(i + 1) % len(seq)]
                mask &= desc == 1
        if not mask.any():
            continue
        yield {k: v[mask] for k, v in pos.items()}, sign[mask]


def _intervals(P: ArrowPattern, token: Token, pos: dict, n_rows: int, length: int):
    """Allowed position ranges for the free endpoint ``token`` as [(lo, hi), ...]."""
    ci, i = P.location(token)
    circ = P.slots[ci]
    fixed = [(j, tok) for j, tok in enumerate(circ) if tok in pos]
    full = np.full(n_rows, length, dtype=np.int64)
    zero = np.zeros(n_rows, dtype=np.int64)
    if ci == 0 and P.based:
        before = [tok for j, tok in fixed if j < i]
        after = [tok for j, tok in fixed if j > i]
        lo = pos[before[-1]] + 1 if before else zero
        hi = pos[after[0]] if after else full
        return [(lo, hi)]
    if not fixed:
        return [(zero, full)]
    # cyclic: previous and next fixed endpoints around position i
    order = [tok for j, tok in fixed]
    jpos = [j for j, _ in fixed]
    prev = [tok for j, tok in fixed if j < i]
    nxt = [tok for j, tok in fixed if j > i]
    u = pos[prev[-1]] if prev else pos[order[-1]]
    v = pos[nxt[0]] if nxt else pos[order[0]]
    del jpos
    # arc (u, v) exclusive; wraps when u >= v
    wrap = u >= v
    lo1 = u + 1
    hi1 = np.where(wrap, full, v)
    lo2 = zero
    hi2 = np.where(wrap, v, zero)
    return [(lo1, hi1), (lo2, hi2)]


def count_representations(P: ArrowPattern, G: GaussDiagram | DiagramIndex,
                          chunk: int = 1 << 21) -> int:
    idx = G if isinstance(G, DiagramIndex) else DiagramIndex(G)
    _check(P, idx.diagram)
    free = _choose_free_arrow(P)
    if free is None:
        return count_naive(P, idx.diagram)
    fixed = [a for a in P.arrow_ids if a != free]
    (tc, _), (hc, _) = dict(zip(P.arrow_ids, P.arrows))[free]
    rcls = idx.cls((tc, hc))
    if rcls.size == 0:
        return 0
    total = 0
    for pos, sign in _enumerate_fixed(P, fixed, idx, chunk):
        n_rows = sign.shape[0]
        t_iv = _intervals(P, ("t", free), pos, n_rows, idx.lengths[tc])
        h_iv = _intervals(P, ("h", free), pos, n_rows, idx.lengths[hc])
        cnt = np.zeros(n_rows, dtype=np.int64)
        for t_lo, t_hi in t_iv:
            for h_lo, h_hi in h_iv:
                cnt += rcls.rect_sum(t_lo, t_hi, h_lo, h_hi)
        total += int(np.dot(cnt, sign))
    return total


# ---------------------------------------------------------------------------
# Combinations and the shipped library


@dataclass(frozen=True)
class PatternCombination:
    name: str
    terms: tuple[tuple[Fraction, ArrowPattern], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("empty pattern combination")
        if any(c == 0 for c, _ in self.terms):
            raise ValueError("zero coefficient in pattern combination")


def evaluate(C: PatternCombination | ArrowPattern, G: GaussDiagram | DiagramIndex) -> Fraction:
    if isinstance(C, ArrowPattern):
        return Fraction(count_representations(C, G))
    idx = G if isinstance(G, DiagramIndex) else DiagramIndex(G)
    return sum((Fraction(c) * count_representations(P, idx) for c, P in C.terms), Fraction(0))


@dataclass(frozen=True)
class PatternLibrary:
    patterns: dict
    combinations: dict

    def __getitem__(self, name: str):
        if name in self.patterns:
            return self.patterns[name]
        return self.combinations[name]

    @property
    def U(self) -> PatternCombination:
        return self.combinations["U"]

    @property
    def Uprime(self) -> PatternCombination:
        return self.combinations["Uprime"]


def format_library(patterns: list[ArrowPattern], combos: list[PatternCombination],
                   comments: list[str] = ()) -> str:
    out = io.StringIO()
    for line in comments:
        out.write(f"# {line}\n")
    for P in patterns:
        out.write(f"\n[{P.name}]\n")
        out.write(f"based = {'yes' if P.based else 'no'}\n")
        for ci, s in enumerate(P.circle_strings()):
            out.write(f"circle{ci} = {s}\n")
    for C in combos:
        out.write(f"\n[{C.name}]\n")
        out.write("terms = " + " + ".join(f"{c}*{P.name}" for c, P in C.terms) + "\n")
    return out.getvalue()


def parse_library(text: str) -> PatternLibrary:
    cp = configparser.ConfigParser(interpolation=None)
    cp.read_string(text)
    patterns: dict[str, ArrowPattern] = {}
    pending = []
    for sec in cp.sections():
        body = cp[sec]
        if "terms" in body:
            pending.append((sec, body["terms"]))
            continue
        circles = []
        ci = 0
        while f"circle{ci}" in body:
            circles.append(body[f"circle{ci}"])
            ci += 1
        patterns[sec] = ArrowPattern.from_strings(sec, circles, body.get("based", "yes") == "yes")
    combos = {}
    for sec, terms in pending:
        parsed = []
        for term in terms.split("+"):
            coef, _, name = term.strip().partition("*")
            parsed.append((Fraction(coef), patterns[name.strip()]))
        combos[sec] = PatternCombination(sec, tuple(parsed))
    return PatternLibrary(patterns, combos)


@lru_cache(maxsize=1)
def library() -> PatternLibrary:
    text = resources.files("cwkit").joinpath("data/patterns.txt").read_text(encoding="utf-8")
    return parse_library(text)


# ---------------------------------------------------------------------------
# Invariants


def v2(K: GaussDiagram) -> int:
    """Second Conway coefficient of a knot from the based two-arrow pattern."""
    if K.n_components != 1:
        raise ValueError("v2 expects a 1-component diagram")
    if K.base is None:
        K = GaussDiagram(K.components, K.signs, (0, 0))
    return count_representations(library()["A4"], K)


def component_v2(G: GaussDiagram, i: int) -> int:
    return v2(sublink(G, [i]))


def _two(G: GaussDiagram) -> None:
    if G.n_components != 2:
        raise ValueError("expected a 2-component diagram")


def U_invariant(G: GaussDiagram | DiagramIndex) -> int:
    idx = G if isinstance(G, DiagramIndex) else DiagramIndex(G)
    _two(idx.diagram)
    val = evaluate(library().U, idx)
    assert val.denominator == 1
    return int(val)


def U_prime(G: GaussDiagram | DiagramIndex) -> Fraction:
    idx = G if isinstance(G, DiagramIndex) else DiagramIndex(G)
    _two(idx.diagram)
    return evaluate(library().Uprime, idx)


def U_prime_by_reversal(G: GaussDiagram) -> Fraction:
    """The average of U over both orientations of component 1."""
    return Fraction(U_invariant(G) + U_invariant(reverse_component(G, 1)), 2)
