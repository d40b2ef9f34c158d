"""Pin down the arrow patterns of v2, U and U' from oracle values.

The degree-2 and degree-3 patterns are only known through structural
constraints (which circles each arrow joins).  Here every pattern obeying
those constraints is enumerated, counted on a corpus of diagrams, and the
combinations matching the Conway-oracle values survive.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from cwkit import catalog
from cwkit.conway import conway, sato_levine_oracle
from cwkit.gauss import (GaussDiagram, move_base_point, random_move_walk, swap_components)
from cwkit.patterns import (ArrowPattern, DiagramIndex, PatternCombination, canonical,
                            count_representations, format_library)


def enumerate_patterns(arrow_circles: list[tuple[int, int]], n_circles: int,
                       based: bool = True) -> list[ArrowPattern]:
    """All endpoint orders for arrows joining the given (tail, head) circles."""
    per_circle: list[list[tuple[str, int]]] = [[] for _ in range(n_circles)]
    for a, (tc, hc) in enumerate(arrow_circles, start=1):
        per_circle[tc].append(("t", a))
        per_circle[hc].append(("h", a))
    options = []
    for ci, toks in enumerate(per_circle):
        if ci == 0 and based or len(toks) <= 1:
            options.append([tuple(p) for p in itertools.permutations(toks)])
        else:
            head, rest = toks[0], toks[1:]
            options.append([(head,) + tuple(p) for p in itertools.permutations(rest)])
    seen = {}
    for choice in itertools.product(*options):
        P = canonical(ArrowPattern("?", choice, based))
        seen.setdefault(P.slots, P)
    return [seen[k] for k in sorted(seen, key=_sort_key)]


def _sort_key(slots):
    return tuple(tuple((a, 0 if k == "t" else 1) for k, a in c) for c in slots)


def interleaved(P: ArrowPattern) -> bool:
    c = P.slots[0]
    i, j = c.index(("t", 1)), c.index(("h", 1))
    lo, hi = min(i, j), max(i, j)
    return sum(1 for t in c[lo + 1:hi] if t[1] == 2) == 1


def pattern_name(P: ArrowPattern) -> str:
    return " | ".join(P.circle_strings())


# structural classes of the degree-3 patterns
CLASS_SELF0 = [[(0, 0), (0, 1), (1, 0)]]
CLASS_SELF1 = [[(1, 1), (0, 1), (0, 1)], [(1, 1), (0, 1), (1, 0)], [(1, 1), (1, 0), (1, 0)]]
CLASS_INTER = [[(0, 1), (0, 1), (0, 1)], [(0, 1), (0, 1), (1, 0)],
               [(0, 1), (1, 0), (1, 0)], [(1, 0), (1, 0), (1, 0)]]


def candidates(classes) -> list[ArrowPattern]:
    out = {}
    for arrows in classes:
        for P in enumerate_patterns(arrows, 2):
            out.setdefault(P.slots, P)
    return [out[k] for k in sorted(out, key=_sort_key)]


def a4_candidates() -> list[ArrowPattern]:
    return [P for P in enumerate_patterns([(0, 0), (0, 0)], 1) if interleaved(P)]


# ---------------------------------------------------------------------------
# Corpus


@dataclass
class CorpusRow:
    label: str
    diagram: GaussDiagram
    target: int


@dataclass
class Corpus:
    links: list[CorpusRow] = field(default_factory=list)
    knots: list[CorpusRow] = field(default_factory=list)


def build_corpus(seed: int = 2024, n_random: int = 30, walk_steps: int = 40,
                 max_crossings: int = 12) -> Corpus:
    rng = random.Random(seed)
    C = Corpus()
    for n in range(1, 6):
        C.links.append(CorpusRow(f"hopf({n})", catalog.hopf(n).diagram, 0))
    C.links.append(CorpusRow("hopf_bar(3)", catalog.hopf_bar(3).diagram, -4))
    C.links.append(CorpusRow("8^2_11", catalog.rolfsen_8_2_11().diagram,
                             sato_levine_oracle(catalog.rolfsen_8_2_11().diagram)))
    for n in (1, 2, 4, 5, -2, -3):
        G = catalog.hopf_bar(n).diagram
        C.links.append(CorpusRow(f"hopf_bar({n})", G, sato_levine_oracle(G)))
    for i in range(n_random):
        s = rng.randrange(10 ** 9)
        L = catalog.random_link(s, rng.randint(4, max_crossings), 2)
        G = L.diagram
        target = sato_levine_oracle(G)
        C.links.append(CorpusRow(f"random({s})", G, target))
        C.links.append(CorpusRow(f"walk({s})", random_move_walk(G, s, walk_steps), target))
        C.links.append(CorpusRow(f"swap({s})", swap_components(G), target))
        gap = rng.randrange(max(1, len(G.components[0])))
        C.links.append(CorpusRow(f"base({s},{gap})", move_base_point(G, gap), target))
    for name, K in (("trefoil", catalog.trefoil().diagram),
                    ("figure_eight", catalog.figure_eight().diagram)):
        C.knots.append(CorpusRow(name, K, conway(K).c(2)))
    for i in range(n_random):
        s = rng.randrange(10 ** 9)
        K = catalog.random_link(s, rng.randint(3, max_crossings), 1).diagram
        C.knots.append(CorpusRow(f"knot({s})", K, conway(K).c(2)))
        gap = rng.randrange(max(1, len(K.components[0])))
        C.knots.append(CorpusRow(f"knot_base({s},{gap})", move_base_point(K, gap), conway(K).c(2)))
    return C


# ---------------------------------------------------------------------------
# Search


def count_matrix(patterns: list[ArrowPattern], diagrams: list[GaussDiagram]) -> np.ndarray:
    M = np.zeros((len(diagrams), len(patterns)), dtype=np.int64)
    for i, G in enumerate(diagrams):
        idx = DiagramIndex(G)
        for j, P in enumerate(patterns):
            M[i, j] = count_representations(P, idx)
    return M


def calibrate_a4(corpus: Corpus) -> list[ArrowPattern]:
    cands = a4_candidates()
    M = count_matrix(cands, [r.diagram for r in corpus.knots])
    target = np.array([r.target for r in corpus.knots])
    return [P for j, P in enumerate(cands) if np.array_equal(M[:, j], target)]


@dataclass
class USurvivor:
    U1: ArrowPattern
    U2: ArrowPattern
    U3: ArrowPattern
    U4: ArrowPattern

    def key(self):
        return tuple(_sort_key(P.slots) for P in (self.U1, self.U2, self.U3, self.U4))


def calibrate_u(corpus: Corpus, rows: list[CorpusRow] | None = None) -> list[USurvivor]:
    rows = corpus.links if rows is None else rows
    c1, c3, c4 = candidates(CLASS_SELF0), candidates(CLASS_SELF1), candidates(CLASS_INTER)
    diagrams = [r.diagram for r in rows]
    target = np.array([r.target for r in rows])
    M1, M3, M4 = count_matrix(c1, diagrams), count_matrix(c3, diagrams), count_matrix(c4, diagrams)
    out = []
    # U1 + U2: unordered pairs of distinct self-arrow-on-circle-0 patterns
    pair_sums = {}
    for i, j in itertools.combinations(range(len(c1)), 2):
        pair_sums.setdefault(tuple(M1[:, i] + M1[:, j]), []).append((i, j))
    for k3 in range(len(c3)):
        for k4 in range(len(c4)):
            need = tuple(target - M3[:, k3] - M4[:, k4])
            for i, j in pair_sums.get(need, []):
                out.append(USurvivor(c1[i], c1[j], c3[k3], c4[k4]))
    out.sort(key=USurvivor.key)
    return out


def library_text(a4: ArrowPattern, u: USurvivor) -> str:
    def named(P: ArrowPattern, name: str) -> ArrowPattern:
        return ArrowPattern(name, P.slots, P.based)

    A1 = ArrowPattern.from_strings("A1", ["t1 h1"], based=False)
    A2a = ArrowPattern.from_strings("A2_01", ["t1", "h1"], based=False)
    A2b = ArrowPattern.from_strings("A2_10", ["h1", "t1"], based=False)
    A3 = ArrowPattern.from_strings("A3", ["t1", "h1"], based=True)
    U1, U2, U3, U4 = (named(P, f"U{i}") for i, P in enumerate((u.U1, u.U2, u.U3, u.U4), start=1))
    U3p = U3.reversed_circle(1, "U3p")
    U4p = U4.reversed_circle(1, "U4p")
    U3p = named(U3p, "U3p")
    U4p = named(U4p, "U4p")
    A4 = named(a4, "A4")
    one, half = Fraction(1), Fraction(1, 2)
    combos = [
        PatternCombination("A2", ((one, A2a), (one, A2b))),
        PatternCombination("U", ((one, U1), (one, U2), (one, U3), (one, U4))),
        PatternCombination("Uprime", ((one, U1), (one, U2), (half, U3), (half, U3p),
                                      (half, U4), (-half, U4p))),
    ]
    comments = [
        "Arrow patterns for v2, U and U'.",
        "Tokens: t<i>/h<i> = tail/head of arrow i; circle0 is read linearly from the base",
        "point when based = yes, other circles cyclically.  Frozen output of",
        "cwkit.calibration (lexicographically least survivor).",
    ]
    return format_library([A1, A2a, A2b, A3, A4, U1, U2, U3, U4, U3p, U4p], combos, comments)


def main() -> None:  # pragma: no cover - maintenance entry point
    import sys
    corpus = build_corpus()
    a4 = calibrate_a4(corpus)
    print(f"A4 survivors: {[pattern_name(P) for P in a4]}", file=sys.stderr)
    us = calibrate_u(corpus)
    print(f"U survivors: {len(us)}", file=sys.stderr)
    for s in us[:10]:
        print("  " + " ; ".join(pattern_name(P) for P in (s.U1, s.U2, s.U3, s.U4)), file=sys.stderr)
    if a4 and us:
        sys.stdout.write(library_text(a4[0], us[0]))


if __name__ == "__main__":  # pragma: no cover
    main()
