"""Gauss codes and Gauss diagrams of oriented framed links.

A diagram is stored as one tuple of signed crossing labels per component,
in traversal order.  ``+k`` marks the over-pass of crossing ``k`` (the tail
of its arrow), ``-k`` the under-pass (the head).  Chiral signs live in a
separate tuple indexed by ``label - 1``.  Labels are always dense ``1..m``.

The base point is a gap ``(component, g)``: it sits on the arc running from
slot ``g - 1`` to slot ``g`` (cyclically), so reading the based component
linearly means starting at slot ``g``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class GaussCodeError(ValueError):
    """Malformed or inconsistent Gauss code."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MoveError(ValueError):
    """A diagram move was requested at an invalid site."""


@dataclass(frozen=True)
class EndpointRef:
    component: int
    position: int


@dataclass(frozen=True)
class Arrow:
    id: int
    tail: EndpointRef
    head: EndpointRef
    sign: int

    @property
    def is_self(self) -> bool:
        return self.tail.component == self.head.component


@dataclass(frozen=True)
class GaussDiagram:
    components: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]
    base: tuple[int, int] | None = (0, 0)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(tuple(c) for c in self.components))
        object.__setattr__(self, "signs", tuple(self.signs))
        if self.base is not None:
            object.__setattr__(self, "base", (int(self.base[0]), int(self.base[1])))
        _validate(self.components, self.signs, self.base)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_crossings(self) -> int:
        return len(self.signs)

    @cached_property
    def slot_index(self) -> dict[int, tuple[int, int]]:
        """Map each signed label to its ``(component, position)``."""
        return {v: (c, i) for c, comp in enumerate(self.components) for i, v in enumerate(comp)}

    def sign(self, label: int) -> int:
        return self.signs[label - 1]

    def tail_of(self, label: int) -> tuple[int, int]:
        return self.slot_index[label]

    def head_of(self, label: int) -> tuple[int, int]:
        return self.slot_index[-label]

    def arrows(self) -> list[Arrow]:
        out = []
        for k in range(1, self.n_crossings + 1):
            tc, tp = self.slot_index[k]
            hc, hp = self.slot_index[-k]
            out.append(Arrow(k, EndpointRef(tc, tp), EndpointRef(hc, hp), self.signs[k - 1]))
        return out

    def is_self_arrow(self, label: int) -> bool:
        return self.slot_index[label][0] == self.slot_index[-label][0]


def _validate(components, signs, base) -> None:
    m = len(signs)
    seen: dict[int, int] = {}
    for comp in components:
        for v in comp:
            if v == 0 or abs(v) > m:
                raise GaussCodeError(f"crossing label {v} out of range 1..{m}")
            if v in seen:
                kind = "over" if v > 0 else "under"
                raise GaussCodeError(f"duplicate {kind}-pass for crossing {abs(v)}")
            seen[v] = 1
    for k in range(1, m + 1):
        if k not in seen or -k not in seen:
            raise GaussCodeError(f"crossing {k} must appear once as over-pass and once as under-pass")
    for s in signs:
        if s not in (1, -1):
            raise GaussCodeError(f"chiral sign must be +1 or -1, got {s}")
    if base is not None:
        c, g = base
        if not 0 <= c < len(components):
            raise GaussCodeError(f"base component {c + 1} out of range")
        length = len(components[c])
        if not (0 <= g < max(length, 1)):
            raise GaussCodeError(f"base gap {g} out of range for component {c + 1}")


def make_diagram(components: Sequence[Sequence[int]], signs, base=(0, 0)) -> GaussDiagram:
    """Build a diagram from arbitrary nonzero labels, renumbering densely.

    ``signs`` maps original label to chiral sign (dict) or is a sequence
    indexed by ``label - 1``.  Labels are renumbered in increasing order of
    their absolute value.
    """
    labels = sorted({abs(v) for comp in components for v in comp})
    if isinstance(signs, dict):
        sign_of = signs
    else:
        sign_of = {k: signs[k - 1] for k in labels}
    ren = {k: i + 1 for i, k in enumerate(labels)}
    comps = tuple(tuple((1 if v > 0 else -1) * ren[abs(v)] for v in comp) for comp in components)
    return GaussDiagram(comps, tuple(int(sign_of[k]) for k in labels), base)


def _renumber(components, sign_of: dict[int, int], base) -> GaussDiagram:
    """Renumber surviving labels by order of first appearance."""
    ren: dict[int, int] = {}
    for comp in components:
        for v in comp:
            if abs(v) not in ren:
                ren[abs(v)] = len(ren) + 1
    comps = tuple(tuple((1 if v > 0 else -1) * ren[abs(v)] for v in comp) for comp in components)
    signs = [0] * len(ren)
    for old, new in ren.items():
        signs[new - 1] = sign_of[old]
    return GaussDiagram(comps, tuple(signs), base)


def _sign_map(G: GaussDiagram) -> dict[int, int]:
    return {k: s for k, s in enumerate(G.signs, start=1)}


# ---------------------------------------------------------------------------
# Basic invariants and relabelings


def linking_number(G: GaussDiagram, i: int = 0, j: int = 1) -> int:
    """Half the signed count of crossings between components ``i`` and ``j``."""
    if i == j:
        raise ValueError("linking_number needs two distinct components; use lobe_split for self-linking")
    for c in (i, j):
        if not 0 <= c < G.n_components:
            raise ValueError(f"component {c} out of range")
    total = 0
    for a in G.arrows():
        if {a.tail.component, a.head.component} == {i, j}:
            total += a.sign
    # inter-component crossings always come in pairs of equal parity
    return total // 2


def writhe(G: GaussDiagram) -> int:
    return sum(G.signs)


def mirror(G: GaussDiagram) -> GaussDiagram:
    """Reflect the diagram in a line of the projection plane."""
    return GaussDiagram(G.components, tuple(-s for s in G.signs), G.base)


def crossing_change(G: GaussDiagram, label: int) -> GaussDiagram:
    if not 1 <= label <= G.n_crossings:
        raise ValueError(f"unknown crossing {label}")
    comps = tuple(tuple(-v if abs(v) == label else v for v in comp) for comp in G.components)
    signs = list(G.signs)
    signs[label - 1] = -signs[label - 1]
    return GaussDiagram(comps, tuple(signs), G.base)


def reverse_component(G: GaussDiagram, i: int) -> GaussDiagram:
    """Reverse the orientation of component ``i``.

    Arrows keep their over/under roles; those with exactly one end on ``i``
    change sign.
    """
    if not 0 <= i < G.n_components:
        raise ValueError(f"component {i} out of range")
    comps = list(G.components)
    comps[i] = tuple(reversed(comps[i]))
    signs = list(G.signs)
    for a in G.arrows():
        if (a.tail.component == i) != (a.head.component == i):
            signs[a.id - 1] = -signs[a.id - 1]
    base = G.base
    if base is not None and base[0] == i:
        length = len(comps[i])
        base = (i, (length - base[1]) % length if length else 0)
    return GaussDiagram(tuple(comps), tuple(signs), base)


def move_base_point(G: GaussDiagram, gap: int, component: int = 0) -> GaussDiagram:
    length = len(G.components[component])
    if not 0 <= gap < max(length, 1):
        raise ValueError(f"gap {gap} out of range")
    return GaussDiagram(G.components, G.signs, (component, gap))


def swap_components(G: GaussDiagram) -> GaussDiagram:
    """Exchange the two components; the base goes to gap 0 of the new first one."""
    if G.n_components != 2:
        raise ValueError("swap_components expects a 2-component diagram")
    return GaussDiagram((G.components[1], G.components[0]), G.signs, (0, 0))


def rebase_linear(G: GaussDiagram) -> GaussDiagram:
    """Rotate the based component so that the base sits at gap 0."""
    if G.base is None or G.base[1] == 0:
        return G
    c, g = G.base
    comps = list(G.components)
    comps[c] = comps[c][g:] + comps[c][:g]
    return GaussDiagram(tuple(comps), G.signs, (c, 0))


def sublink(G: GaussDiagram, keep: Iterable[int]) -> GaussDiagram:
    """Delete every component not in ``keep`` together with all its arrows."""
    keep = sorted(set(keep))
    labels_kept = set()
    for c in keep:
        for v in G.components[c]:
            labels_kept.add(abs(v))
    drop = {k for k in labels_kept if G.slot_index[k][0] not in keep or G.slot_index[-k][0] not in keep}
    base = None
    new_comps = []
    for new_c, c in enumerate(keep):
        old = G.components[c]
        if G.base is not None and G.base[0] == c:
            g = G.base[1]
            g_new = sum(1 for v in old[:g] if abs(v) not in drop)
            kept_len = sum(1 for v in old if abs(v) not in drop)
            base = (new_c, g_new % kept_len if kept_len else 0)
        new_comps.append(tuple(v for v in old if abs(v) not in drop))
    if base is None:
        base = (0, 0)
    return _renumber(new_comps, _sign_map(G), base)


def component_knot(G: GaussDiagram, i: int) -> GaussDiagram:
    return sublink(G, [i])


def smooth_fusion(G: GaussDiagram, label: int) -> GaussDiagram:
    """Coherently fuse the two components joined by crossing ``label``."""
    if not 1 <= label <= G.n_crossings:
        raise ValueError(f"unknown crossing {label}")
    (p, i), (q, j) = G.slot_index[label], G.slot_index[-label]
    if p == q:
        raise ValueError(f"crossing {label} is a self-crossing; fusion needs an inter-component arrow")
    cp, cq = G.components[p], G.components[q]
    merged = cp[i + 1:] + cp[:i] + cq[j + 1:] + cq[:j]
    rest = [c for k, c in enumerate(G.components) if k not in (p, q)]
    signs = _sign_map(G)
    del signs[label]
    return _renumber([merged] + rest, signs, (0, 0))


# ---------------------------------------------------------------------------
# Lobes of a self-crossing


@dataclass(frozen=True)
class LobeSplit:
    self_arrow: int
    lobe_P: frozenset
    lobe_Pbar: frozenset
    ell: int
    k: int
    n: int


def lobe_split(G: GaussDiagram, label: int) -> LobeSplit:
    """Cut the crossed component at a self-crossing into its two lobes.

    ``lobe_P`` holds the base point when the crossed component is the based
    one; ``k`` is then measured on the other lobe.  On the unbased component
    the lobe entered first after the arrow's tail defines ``k``.
    """
    if G.n_components != 2:
        raise ValueError("lobe_split expects a 2-component diagram")
    if G.base is None:
        raise ValueError("lobe_split needs a based diagram")
    (c, i), (c2, j) = G.slot_index[label], G.slot_index[-label]
    if c != c2:
        raise ValueError(f"crossing {label} joins different components")
    length = len(G.components[c])
    lo, hi = min(i, j), max(i, j)
    inner = frozenset((c, t) for t in range(lo + 1, hi))
    outer = frozenset((c, t) for t in range(length) if t < lo or t > hi)
    if G.base[0] == c:
        g = G.base[1]
        base_inside = lo + 1 <= g <= hi
        P, Pbar = (inner, outer) if base_inside else (outer, inner)
        k_lobe = Pbar
    else:
        P, Pbar = outer, inner
        # walking forward from the tail: inner lobe first iff tail is at lo
        k_lobe = inner if i == lo else outer
    other = 1 - c
    ell2 = 0
    k2 = 0
    for a in G.arrows():
        if a.id == label:
            continue
        ends = [(a.tail.component, a.tail.position), (a.head.component, a.head.position)]
        in_P = sum(e in P for e in ends)
        in_Pbar = sum(e in Pbar for e in ends)
        if in_P == 1 and in_Pbar == 1:
            ell2 += a.sign
        on_other = sum(e[0] == other for e in ends)
        in_k = sum(e in k_lobe for e in ends)
        if on_other == 1 and in_k == 1:
            k2 += a.sign
    return LobeSplit(label, P, Pbar, ell2 // 2, k2 // 2, linking_number(G, 0, 1))


# ---------------------------------------------------------------------------
# Planar structure: faces from the rotation system of a signed Gauss code


@dataclass(frozen=True)
class Face:
    # each entry: (edge, forward) where edge = (component, gap)
    darts: tuple[tuple[tuple[int, int], bool], ...]

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(e for e, _ in self.darts)


def _half_edges(G: GaussDiagram):
    offsets = []
    total = 0
    for comp in G.components:
        offsets.append(total)
        total += len(comp)
    # half-edge 2*s is the incoming end at slot s, 2*s+1 the outgoing end
    opp = [0] * (2 * total)
    edge_of = [None] * (2 * total)
    slot_of = [None] * total
    for c, comp in enumerate(G.components):
        length = len(comp)
        for i in range(length):
            s = offsets[c] + i
            slot_of[s] = (c, i)
            t = offsets[c] + (i + 1) % length
            opp[2 * s + 1] = 2 * t
            opp[2 * t] = 2 * s + 1
            gap = (c, (i + 1) % length)
            edge_of[2 * s + 1] = (gap, True)
            edge_of[2 * t] = (gap, False)
    rot = [0] * (2 * total)
    vertex = [0] * (2 * total)
    for k in range(1, G.n_crossings + 1):
        oc, oi = G.slot_index[k]
        uc, ui = G.slot_index[-k]
        o = offsets[oc] + oi
        u = offsets[uc] + ui
        if G.signs[k - 1] > 0:
            cyc = [2 * o + 1, 2 * u + 1, 2 * o, 2 * u]
        else:
            cyc = [2 * o + 1, 2 * u, 2 * o, 2 * u + 1]
        for t in range(4):
            rot[cyc[t]] = cyc[(t + 1) % 4]
            vertex[cyc[t]] = k
    return opp, rot, edge_of, vertex


def faces(G: GaussDiagram) -> list[Face]:
    """Faces of the projection, traced from the crossing rotation system."""
    opp, rot, edge_of, _ = _half_edges(G)
    seen = [False] * len(opp)
    out = []
    for h0 in range(len(opp)):
        if seen[h0]:
            continue
        darts = []
        h = h0
        while not seen[h]:
            seen[h] = True
            darts.append(edge_of[h])
            h = rot[opp[h]]
        out.append(Face(tuple(darts)))
    return out


def is_planar(G: GaussDiagram) -> bool:
    """Check that the signed Gauss code is realized by a planar diagram.

    Every connected piece of the projection must satisfy ``F = V + 2``.
    """
    if G.n_crossings == 0:
        return True
    opp, rot, _, vertex = _half_edges(G)
    parent = list(range(G.n_crossings + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h in range(len(opp)):
        a, b = find(vertex[h]), find(vertex[opp[h]])
        if a != b:
            parent[a] = b
    verts: dict[int, int] = {}
    for k in range(1, G.n_crossings + 1):
        r = find(k)
        verts[r] = verts.get(r, 0) + 1
    face_count: dict[int, int] = {}
    seen = [False] * len(opp)
    for h0 in range(len(opp)):
        if seen[h0]:
            continue
        h = h0
        while not seen[h]:
            seen[h] = True
            h = rot[opp[h]]
        r = find(vertex[h0])
        face_count[r] = face_count.get(r, 0) + 1
    return all(face_count.get(r, 0) == v + 2 for r, v in verts.items())


# ---------------------------------------------------------------------------
# Reidemeister moves


def _base_edge(G: GaussDiagram) -> tuple[int, int] | None:
    if G.base is None or not G.components[G.base[0]]:
        return G.base
    c, g = G.base
    return (c, g % len(G.components[c]))


def _insert_raw(G: GaussDiagram, inserts):
    """Insert ``(component, gap, block)`` triples; gaps refer to ``G``.

    Returns raw component lists and the shifted base without renumbering.
    Gap 0 on a nonempty component is the closing arc, so blocks go at the end.
    """
    comps = [list(c) for c in G.components]
    base = G.base
    by_comp: dict[int, list] = {}
    for c, gap, block in inserts:
        by_comp.setdefault(c, []).append((gap, block))
    for c, items in by_comp.items():
        length = len(comps[c])
        items = sorted(items, key=lambda x: x[0] if x[0] > 0 else length, reverse=True)
        shift = 0
        for gap, block in items:
            pos = gap if gap > 0 else length
            comps[c][pos:pos] = list(block)
            if base is not None and base[0] == c and 0 < gap < base[1]:
                shift += len(block)
        if base is not None and base[0] == c:
            base = (c, base[1] + shift)
    return comps, base


def _insert_blocks(G: GaussDiagram, inserts, signs: dict[int, int]) -> GaussDiagram:
    comps, base = _insert_raw(G, inserts)
    return _renumber(comps, signs, base)


def _delete_labels(G: GaussDiagram, labels: set[int]) -> GaussDiagram:
    comps = []
    base = G.base
    for c, comp in enumerate(G.components):
        if base is not None and base[0] == c:
            g = base[1]
            kept_len = sum(1 for v in comp if abs(v) not in labels)
            g_new = sum(1 for v in comp[:g] if abs(v) not in labels)
            base = (c, g_new % kept_len if kept_len else 0)
        comps.append([v for v in comp if abs(v) not in labels])
    signs = _sign_map(G)
    for k in labels:
        del signs[k]
    return _renumber(comps, signs, base)


def apply_r1_insert(G: GaussDiagram, component: int, gap: int, sign: int = 1,
                    over_first: bool = True) -> GaussDiagram:
    """Add a kink on the arc ending at slot ``gap`` of ``component``."""
    length = len(G.components[component])
    if length and not 0 <= gap < length:
        raise MoveError(f"gap {gap} out of range")
    if (component, gap % max(length, 1)) == _base_edge(G):
        raise MoveError("R1 insertion on the base arc")
    x = G.n_crossings + 1
    block = (x, -x) if over_first else (-x, x)
    signs = _sign_map(G)
    signs[x] = 1 if sign > 0 else -1
    return _insert_blocks(G, [(component, gap, block)], signs)


def r1_sites(G: GaussDiagram) -> list[int]:
    """Labels of crossings removable by an R1 move away from the base."""
    out = []
    base = _base_edge(G)
    for c, comp in enumerate(G.components):
        length = len(comp)
        for i in range(length):
            j = (i + 1) % length
            if length >= 2 and abs(comp[i]) == abs(comp[j]) and (length > 2 or i == 0):
                if base != (c, j):
                    out.append(abs(comp[i]))
    return sorted(set(out))


def apply_r1_delete(G: GaussDiagram, label: int) -> GaussDiagram:
    if label not in r1_sites(G):
        raise MoveError(f"crossing {label} is not a removable kink")
    return _delete_labels(G, {label})


def _face_with_edges(G: GaussDiagram, edges: set) -> bool:
    return any(set(f.edges) == edges and len(f.darts) == len(edges) for f in faces(G))


def apply_r2_insert(G: GaussDiagram, over_edge: tuple[int, int],
                    under_edge: tuple[int, int]) -> GaussDiagram:
    """Push the arc ``over_edge`` across ``under_edge`` through a common face."""
    if over_edge == under_edge:
        raise MoveError("R2 needs two distinct arcs")
    base = _base_edge(G)
    if base in (over_edge, under_edge):
        raise MoveError("R2 insertion on the base arc")
    if not any(over_edge in f.edges and under_edge in f.edges for f in faces(G)):
        raise MoveError("arcs do not share a face")
    x, y = G.n_crossings + 1, G.n_crossings + 2
    for under_block in ((-x, -y), (-y, -x)):
        for sx in (1, -1):
            signs = _sign_map(G)
            signs[x], signs[y] = sx, -sx
            comps, nbase = _insert_raw(G, [(over_edge[0], over_edge[1], (x, y)),
                                           (under_edge[0], under_edge[1], under_block)])
            H = GaussDiagram(tuple(tuple(c) for c in comps),
                             tuple(signs[k] for k in range(1, y + 1)), nbase)
            if is_planar(H) and any(pair == (x, y) for pair, _ in _bigons(H)):
                return _renumber(comps, signs, nbase)
    raise MoveError("no planar R2 configuration for these arcs")


def _bigons(G: GaussDiagram) -> list[tuple[int, int]]:
    """Pairs of crossings bounding a bigon face removable by R2."""
    out = []
    for f in faces(G):
        if len(f.darts) != 2:
            continue
        (e1, _), (e2, _) = f.darts
        if e1 == e2:
            continue
        pair = []
        for c, gap in (e1, e2):
            comp = G.components[c]
            a, b = comp[(gap - 1) % len(comp)], comp[gap]
            pair.append((a, b))
        (a1, b1), (a2, b2) = pair
        labels1 = {abs(a1), abs(b1)}
        if labels1 != {abs(a2), abs(b2)} or len(labels1) != 2:
            continue
        # one strand over at both crossings
        if not ((a1 > 0 and b1 > 0) or (a1 < 0 and b1 < 0)):
            continue
        x, y = sorted(labels1)
        if G.signs[x - 1] == -G.signs[y - 1]:
            out.append(((x, y), (e1, e2)))
    return out


def r2_sites(G: GaussDiagram) -> list[tuple[int, int]]:
    base = _base_edge(G)
    return [pair for pair, edges in _bigons(G) if base not in edges]


def apply_r2_delete(G: GaussDiagram, x: int, y: int) -> GaussDiagram:
    pair = tuple(sorted((x, y)))
    if pair not in r2_sites(G):
        raise MoveError(f"crossings {x}, {y} do not bound a removable bigon")
    return _delete_labels(G, set(pair))


def r3_sites(G: GaussDiagram) -> list[tuple[tuple[int, int], ...]]:
    """Triangular faces on which a third Reidemeister move is valid."""
    base = _base_edge(G)
    out = []
    for f in faces(G):
        if len(f.darts) != 3:
            continue
        edges = f.edges
        if len(set(edges)) != 3 or base in edges:
            continue
        strands = []
        for c, gap in edges:
            comp = G.components[c]
            if len(comp) < 2:
                break
            strands.append((comp[(gap - 1) % len(comp)], comp[gap]))
        else:
            labels = [abs(v) for s in strands for v in s]
            if len(set(labels)) != 3 or any(abs(a) == abs(b) for a, b in strands):
                continue
            over_count = [sum(1 for v in s if v > 0) for s in strands]
            if sorted(over_count) == [0, 1, 2]:
                out.append(tuple(edges))
    return out


def apply_r3(G: GaussDiagram, edges: Sequence[tuple[int, int]]) -> GaussDiagram:
    edges = tuple(edges)
    if tuple(edges) not in r3_sites(G) and not any(set(edges) == set(s) for s in r3_sites(G)):
        raise MoveError("not a valid R3 triangle")
    comps = [list(c) for c in G.components]
    for c, gap in edges:
        length = len(comps[c])
        i, j = (gap - 1) % length, gap
        comps[c][i], comps[c][j] = comps[c][j], comps[c][i]
    H = GaussDiagram(tuple(tuple(c) for c in comps), G.signs, G.base)
    if not is_planar(H):
        raise MoveError("R3 produced a non-planar code")
    return H


def random_move_walk(G: GaussDiagram, seed: int, steps: int, max_growth: int = 12) -> GaussDiagram:
    """Apply ``steps`` random Reidemeister moves, none touching the base arc."""
    rng = random.Random(seed)
    start = G.n_crossings
    done = 0
    attempts = 0
    while done < steps:
        attempts += 1
        if attempts > 50 * steps + 100:
            raise MoveError("random walk got stuck")
        grow = G.n_crossings < start + max_growth
        kind = rng.choices(["r1+", "r2+", "r3", "r1-", "r2-"],
                           weights=[2 if grow else 0, 3 if grow else 0, 4, 2, 3])[0]
        try:
            if kind == "r1+":
                nonempty = [c for c in range(G.n_components)]
                c = rng.choice(nonempty)
                length = len(G.components[c])
                gap = rng.randrange(length) if length else 0
                G = apply_r1_insert(G, c, gap, rng.choice((1, -1)), rng.random() < 0.5)
            elif kind == "r2+":
                fs = [f for f in faces(G) if len(set(f.edges)) >= 2]
                if not fs:
                    continue
                f = rng.choice(fs)
                e1, e2 = rng.sample(sorted(set(f.edges)), 2)
                G = apply_r2_insert(G, e1, e2)
            elif kind == "r3":
                sites = r3_sites(G)
                if not sites:
                    continue
                G = apply_r3(G, rng.choice(sites))
            elif kind == "r1-":
                sites = r1_sites(G)
                if not sites:
                    continue
                G = apply_r1_delete(G, rng.choice(sites))
            else:
                sites = r2_sites(G)
                if not sites:
                    continue
                G = apply_r2_delete(G, *rng.choice(sites))
        except MoveError:
            continue
        done += 1
    return G


# ---------------------------------------------------------------------------
# Framed links and the text record format


@dataclass(frozen=True)
class FramedLink:
    diagram: GaussDiagram
    framings: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if any(int(f) != f for f in self.framings):
            raise GaussCodeError(f"framings must be integers, got {self.framings}")
        object.__setattr__(self, "framings", tuple(int(f) for f in self.framings))
        if len(self.framings) != self.diagram.n_components:
            raise GaussCodeError(
                f"{len(self.framings)} framings given for {self.diagram.n_components} components")

    @property
    def n_components(self) -> int:
        return self.diagram.n_components

    def with_framings(self, *framings: int) -> "FramedLink":
        return FramedLink(self.diagram, framings, self.name)

    def with_diagram(self, diagram: GaussDiagram) -> "FramedLink":
        return FramedLink(diagram, self.framings, self.name)


@dataclass
class _Record:
    start: int
    lines: list = field(default_factory=list)


def _split_records(text: str) -> list[_Record]:
    records = []
    cur = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if cur is not None and cur.lines:
                records.append(cur)
            cur = None
            continue
        if cur is None:
            cur = _Record(lineno)
        cur.lines.append((lineno, line))
    if cur is not None and cur.lines:
        records.append(cur)
    return records


def _parse_record(rec: _Record) -> FramedLink:
    name = None
    framings = None
    framings_line = None
    comps: list[list[int]] = []
    comp_lines: list[int] = []
    signs: dict[int, int] | None = None
    signs_line = rec.start
    base = None
    base_line = None
    for lineno, line in rec.lines:
        if ":" not in line:
            raise GaussCodeError(f"expected 'key: value', got {line!r}", lineno)
        key, value = (s.strip() for s in line.split(":", 1))
        key = key.lower()
        if key == "name":
            name = value
        elif key == "framings":
            try:
                framings = [int(t) for t in value.split()]
            except ValueError:
                raise GaussCodeError(f"malformed framings {value!r}", lineno) from None
            framings_line = lineno
        elif key == "component":
            if not value:
                raise GaussCodeError("empty component", lineno)
            if value.lower() == "none":
                comps.append([])
            else:
                try:
                    entries = [int(t) for t in value.split()]
                except ValueError:
                    raise GaussCodeError(f"malformed component {value!r}", lineno) from None
                if any(e == 0 for e in entries):
                    raise GaussCodeError("crossing label 0 is not allowed", lineno)
                comps.append(entries)
            comp_lines.append(lineno)
        elif key == "signs":
            signs = {}
            signs_line = lineno
            for tok in value.split():
                lab, _, s = tok.partition(":")
                try:
                    k = int(lab)
                except ValueError:
                    raise GaussCodeError(f"malformed sign entry {tok!r}", lineno) from None
                if s in ("+", "+1", "1"):
                    val = 1
                elif s in ("-", "-1"):
                    val = -1
                else:
                    raise GaussCodeError(f"malformed sign entry {tok!r}", lineno)
                if k in signs:
                    raise GaussCodeError(f"sign for crossing {k} given twice", lineno)
                signs[k] = val
        elif key == "base":
            parts = value.split()
            if len(parts) != 2:
                raise GaussCodeError(f"malformed base {value!r}", lineno)
            try:
                base = (int(parts[0]) - 1, int(parts[1]))
            except ValueError:
                raise GaussCodeError(f"malformed base {value!r}", lineno) from None
            base_line = lineno
        else:
            raise GaussCodeError(f"unknown key {key!r}", lineno)
    if not comps:
        raise GaussCodeError("record has no components", rec.start)
    counts: dict[int, list[int]] = {}
    for c, comp in enumerate(comps):
        for v in comp:
            counts.setdefault(abs(v), []).append(v)
    for k, occ in sorted(counts.items()):
        line = comp_lines[0]
        if len(occ) != 2:
            raise GaussCodeError(f"crossing {k} appears {len(occ)} times (expected 2)", line)
        if occ[0] == occ[1]:
            kind = "over" if occ[0] > 0 else "under"
            raise GaussCodeError(f"duplicate {kind}-pass for crossing {k}", line)
    if signs is None:
        if counts:
            raise GaussCodeError("missing signs line", rec.start)
        signs = {}
    for k in counts:
        if k not in signs:
            raise GaussCodeError(f"missing chiral sign for crossing {k}", signs_line)
    for k in signs:
        if k not in counts:
            raise GaussCodeError(f"sign given for unknown crossing {k}", signs_line)
    if framings is None:
        framings = [0] * len(comps)
    elif len(framings) != len(comps):
        raise GaussCodeError(f"{len(framings)} framings for {len(comps)} components", framings_line)
    if base is None:
        base = (0, 0)
    else:
        c, g = base
        if not 0 <= c < len(comps) or not 0 <= g < max(len(comps[c]), 1):
            raise GaussCodeError("base point out of range", base_line)
    diagram = make_diagram(comps, signs, base)
    return FramedLink(diagram, tuple(framings), name)


def parse_links(text: str) -> list[FramedLink]:
    """Parse every record of a link file."""
    return [_parse_record(r) for r in _split_records(text)]


def parse_link(text: str) -> FramedLink:
    links = parse_links(text)
    if len(links) != 1:
        raise GaussCodeError(f"expected one record, found {len(links)}")
    return links[0]


def parse_records(text: str) -> list[tuple[int, FramedLink | GaussCodeError]]:
    """Parse records independently, keeping per-record errors."""
    out = []
    for rec in _split_records(text):
        try:
            out.append((rec.start, _parse_record(rec)))
        except GaussCodeError as exc:
            out.append((rec.start, exc))
    return out


def serialize(L: FramedLink) -> str:
    G = L.diagram
    lines = []
    if L.name:
        lines.append(f"name: {L.name}")
    lines.append("framings: " + " ".join(str(f) for f in L.framings))
    for comp in G.components:
        lines.append("component: " + (" ".join(str(v) for v in comp) if comp else "none"))
    if G.n_crossings:
        lines.append("signs: " + " ".join(f"{k}:{'+' if s > 0 else '-'}"
                                          for k, s in enumerate(G.signs, start=1)))
    if G.base is not None:
        lines.append(f"base: {G.base[0] + 1} {G.base[1]}")
    return "\n".join(lines) + "\n"


def serialize_many(links: Iterable[FramedLink]) -> str:
    return "\n".join(serialize(L) for L in links)
