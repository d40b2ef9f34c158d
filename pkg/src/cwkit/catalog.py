"""Named links and seeded random links, all built as braid closures."""
from __future__ import annotations

import random
from dataclasses import dataclass

from cwkit.gauss import FramedLink, GaussDiagram, make_diagram, reverse_component


@dataclass(frozen=True)
class BraidWord:
    """Letter ``+i`` has the strand at position ``i-1`` pass over the one at ``i``."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"generator {x} out of range for {self.strands} strands")

    def permutation(self) -> list[int]:
        """``perm[p]`` is the top position reached by the strand starting at ``p``."""
        pos = list(range(self.strands))
        for x in self.letters:
            i = abs(x) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        perm = [0] * self.strands
        for q, p in enumerate(pos):
            perm[p] = q
        return perm

    def cycle_count(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        count = 0
        for p in range(self.strands):
            if not seen[p]:
                count += 1
                while not seen[p]:
                    seen[p] = True
                    p = perm[p]
        return count


def braid_closure(word: BraidWord) -> GaussDiagram:
    """Gauss diagram of the closure, component 0 through bottom position 0."""
    s = word.strands
    pos = list(range(s))  # strand id currently at each position
    events: list[list[int]] = [[] for _ in range(s)]
    signs = []
    for k, x in enumerate(word.letters, start=1):
        i = abs(x) - 1
        left, right = pos[i], pos[i + 1]
        if x > 0:
            events[left].append(k)
            events[right].append(-k)
        else:
            events[left].append(-k)
            events[right].append(k)
        signs.append(1 if x > 0 else -1)
        pos[i], pos[i + 1] = right, left
    perm = word.permutation()
    seen = [False] * s
    comps = []
    for p in range(s):
        if seen[p]:
            continue
        comp: list[int] = []
        q = p
        while not seen[q]:
            seen[q] = True
            comp.extend(events[q])
            q = perm[q]
        comps.append(comp)
    return make_diagram(comps, signs)


def _framed(G: GaussDiagram, framings, name: str) -> FramedLink:
    return FramedLink(G, tuple(framings), name)


def hopf(n: int, a: int = 0, b: int = 0) -> FramedLink:
    """Generalized Hopf link H(n) with framings ``a``, ``b``.

    The two boundary curves of a band with ``n`` full twists run antiparallel,
    so H(n) is the closure of ``sigma_1^(-2n)`` with its second strand
    reversed.  All ``2|n|`` crossings then carry the sign of ``n``.
    """
    if n == 0:
        G = GaussDiagram(((), ()), (), (0, 0))
    else:
        G = reverse_component(braid_closure(BraidWord(2, (-1 if n > 0 else 1,) * (2 * abs(n)))), 1)
    return _framed(G, (a, b), f"H({n},{a},{b})")


def hopf_bar(n: int, a: int = 0, b: int = 0) -> FramedLink:
    L = hopf(n, a, b)
    G = reverse_component(L.diagram, 1) if n else L.diagram
    return _framed(G, (a, b), f"Hbar({n},{a},{b})")


def trefoil(framing: int = 1) -> FramedLink:
    """Right-handed trefoil."""
    return _framed(braid_closure(BraidWord(2, (1, 1, 1))), (framing,), f"trefoil({framing})")


def left_trefoil(framing: int = -1) -> FramedLink:
    return _framed(braid_closure(BraidWord(2, (-1, -1, -1))), (framing,), f"left_trefoil({framing})")


def figure_eight(framing: int = 1) -> FramedLink:
    return _framed(braid_closure(BraidWord(3, (1, -2, 1, -2))), (framing,), f"figure_eight({framing})")


def unknot(framing: int = 1) -> FramedLink:
    return _framed(GaussDiagram(((),), (), (0, 0)), (framing,), f"unknot({framing})")


def unlink(a: int = 1, b: int = 1) -> FramedLink:
    return _framed(GaussDiagram(((), ()), (), (0, 0)), (a, b), f"unlink({a},{b})")


# Link 8^2_11: over/under as in the table drawing, seen in a mirror of the
# projection plane (every chiral sign flipped).  This is the chirality whose
# generalized Sato-Levine invariant is -2.
_L8211_COMPONENTS = (
    (2, -3, 4, -5, 6, -7, 5, -2, 3, -4, 8, -1),
    (1, -8, 7, -6),
)
_L8211_SIGNS = {1: 1, 2: -1, 3: -1, 4: -1, 5: -1, 6: 1, 7: 1, 8: 1}


def rolfsen_8_2_11(a: int = 0, b: int = 0) -> FramedLink:
    return _framed(make_diagram(_L8211_COMPONENTS, _L8211_SIGNS), (a, b), "8^2_11")


def named_links() -> list[FramedLink]:
    """Every fixed link of the catalog, with representative framings."""
    out = [trefoil(1), left_trefoil(-1), figure_eight(1), unknot(1), unlink(1, 1)]
    out += [hopf(n, 3, 1) for n in range(1, 6)]
    out += [hopf_bar(3, 3, 1), rolfsen_8_2_11(1, 1)]
    return out


def random_braid(rng: random.Random, target_crossings: int, components: int,
                 max_tries: int = 2000) -> BraidWord:
    for _ in range(max_tries):
        # two strands only when the word is too short to use more generators
        strands = rng.randint(2 if target_crossings <= 2 else 3, 5)
        letters = tuple(rng.choice((1, -1)) * rng.randint(1, strands - 1)
                        for _ in range(target_crossings))
        # every generator must occur so that the closure diagram is connected
        if {abs(x) for x in letters} != set(range(1, strands)):
            continue
        w = BraidWord(strands, letters)
        if w.cycle_count() == components:
            return w
    raise ValueError(f"no braid with {components} components after {max_tries} tries")


def random_link(seed: int, target_crossings: int, components: int = 2,
                framing_range: int = 6) -> FramedLink:
    """Seeded random braid closure with the requested number of components."""
    if components not in (1, 2):
        raise ValueError("components must be 1 or 2")
    if not 1 <= target_crossings <= 2000:
        raise ValueError("target_crossings must lie in 1..2000")
    rng = random.Random(seed)
    w = random_braid(rng, target_crossings, components)
    framings = tuple(rng.randint(-framing_range, framing_range) for _ in range(components))
    return _framed(braid_closure(w), framings, f"random({seed},{target_crossings},{components})")
