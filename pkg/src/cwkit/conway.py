"""Conway polynomial by skein resolution toward a descending diagram.

This module is deliberately independent of the arrow-pattern machinery: it
only uses the raw signed Gauss code and serves as an oracle for it.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass

from cwkit.gauss import GaussDiagram, rebase_linear, sublink

MAX_CROSSINGS = 16


class CrossingBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class ConwayPoly:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def c(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __str__(self) -> str:
        terms = []
        for k, v in enumerate(self.coeffs):
            if v == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            coef = str(v) if (k == 0 or abs(v) != 1) else ("-" if v < 0 else "")
            terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


Code = tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]


def _canon(comps, signs: dict[int, int]) -> Code:
    ren: dict[int, int] = {}
    for comp in comps:
        for v in comp:
            if abs(v) not in ren:
                ren[abs(v)] = len(ren) + 1
    new = tuple(tuple((1 if v > 0 else -1) * ren[abs(v)] for v in comp) for comp in comps)
    sg = [0] * len(ren)
    for old, k in ren.items():
        sg[k - 1] = signs[old]
    return new, tuple(sg)


def _is_split(comps) -> bool:
    if len(comps) < 2:
        return False
    if any(not c for c in comps):
        return True
    where: dict[int, int] = {}
    adj = [set() for _ in comps]
    for ci, comp in enumerate(comps):
        for v in comp:
            k = abs(v)
            if k in where and where[k] != ci:
                adj[ci].add(where[k])
                adj[where[k]].add(ci)
            where[k] = ci
    seen = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) < len(comps)


def _add(p, q, shift=0, scale=1):
    out = list(p) + [0] * max(0, len(q) + shift - len(p))
    for k, v in enumerate(q):
        out[k + shift] += scale * v
    return tuple(out)


def _simplify(comps, signs: dict[int, int]):
    """Remove kinks and removable bigons.  Only sound on connected diagrams."""
    comps = [list(c) for c in comps]
    while True:
        drop = None
        for comp in comps:
            m = len(comp)
            for i in range(m):
                if m >= 2 and abs(comp[i]) == abs(comp[(i + 1) % m]):
                    drop = {abs(comp[i])}
                    break
            if drop:
                break
        if drop is None:
            pairs = {}
            for ci, comp in enumerate(comps):
                m = len(comp)
                for i in range(m if m >= 2 else 0):
                    a, b = comp[i], comp[(i + 1) % m]
                    if m == 2 and i == 1:
                        break
                    key = frozenset((abs(a), abs(b)))
                    if len(key) == 2:
                        pairs.setdefault(key, []).append((a, b))
            for key, arcs in pairs.items():
                overs = [ab for ab in arcs if ab[0] > 0 and ab[1] > 0]
                unders = [ab for ab in arcs if ab[0] < 0 and ab[1] < 0]
                if overs and unders:
                    drop = set(key)
                    break
        if drop is None:
            return comps, signs
        comps = [[v for v in c if abs(v) not in drop] for c in comps]
        signs = {k: v for k, v in signs.items() if k not in drop}


def _resolve(code: Code, memo: dict) -> tuple[int, ...]:
    if code in memo:
        return memo[code]
    comps, signs = code
    if _is_split(comps):
        memo[code] = ()
        return ()
    sc, ss = _simplify(comps, {k: x for k, x in enumerate(signs, start=1)})
    if len(ss) < len(signs):
        result = _resolve(_canon(sc, ss), memo)
        memo[code] = result
        return result
    seen = set()
    bad = None
    for ci, comp in enumerate(comps):
        for pos, v in enumerate(comp):
            if abs(v) in seen:
                continue
            seen.add(abs(v))
            if v < 0:
                bad = abs(v)
                break
        if bad is not None:
            break
    if bad is None:
        result = (1,) if len(comps) == 1 else ()
        memo[code] = result
        return result
    s = signs[bad - 1]
    sign_map = {k: x for k, x in enumerate(signs, start=1)}
    switched = tuple(tuple(-v if abs(v) == bad else v for v in comp) for comp in comps)
    sw_signs = dict(sign_map)
    sw_signs[bad] = -s
    rest = dict(sign_map)
    del rest[bad]
    locs = [(ci, pos) for ci, comp in enumerate(comps) for pos, v in enumerate(comp) if abs(v) == bad]
    (p, i), (q, j) = locs
    if p == q:
        seq = comps[p]
        smoothed = [seq[i + 1:j], seq[j + 1:] + seq[:i]]
        others = [c for k, c in enumerate(comps) if k != p]
        new_comps = others[:p] + smoothed + others[p:]
    else:
        cp, cq = comps[p], comps[q]
        fused = cp[i + 1:] + cp[:i] + cq[j + 1:] + cq[:j]
        new_comps = [fused] + [c for k, c in enumerate(comps) if k not in (p, q)]
    a = _resolve(_canon(switched, sw_signs), memo)
    b = _resolve(_canon(new_comps, rest), memo)
    result = _add(a, b, shift=1, scale=s)
    memo[code] = result
    return result


def conway(G: GaussDiagram, max_crossings: int = MAX_CROSSINGS) -> ConwayPoly:
    if G.n_crossings > max_crossings:
        raise CrossingBudgetError(
            f"{G.n_crossings} crossings exceeds the skein oracle budget of {max_crossings}")
    G = rebase_linear(G)
    code = _canon(G.components, {k: s for k, s in enumerate(G.signs, start=1)})
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10000))
    try:
        return ConwayPoly(_resolve(code, {}))
    finally:
        sys.setrecursionlimit(limit)


def sato_levine_oracle(G: GaussDiagram) -> int:
    """c3(L) - (c2(L1) + c2(L2)) c1(L) from three skein computations."""
    if G.n_components != 2:
        raise ValueError("sato_levine_oracle expects a 2-component diagram")
    C = conway(G)
    c2_1 = conway(sublink(G, [0])).c(2)
    c2_2 = conway(sublink(G, [1])).c(2)
    return C.c(3) - (c2_1 + c2_2) * C.c(1)
