"""Verification suites cross-checking the pattern formulas against the oracles."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from cwkit import catalog
from cwkit.asymptotics import (AsymptoticModel, exact_lambda_at, leading_approx,
                               residual_report)
from cwkit.conway import conway, sato_levine_oracle
from cwkit.gauss import (FramedLink, crossing_change, linking_number, move_base_point,
                         random_move_walk, reverse_component, swap_components)
from cwkit.patterns import (DiagramIndex, U_invariant, U_prime, count_naive,
                            count_representations, evaluate, library, v2)
from cwkit.seifert import cross_check_hopf, identity_grid, seifert_grid
from cwkit.surgery import (mixed_u_delta, mu, mu_hopf_closed_form, mu_prime,
                           self_crossing_delta, skein_mixed_delta, switched)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def lines(self) -> list[str]:
        out = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else "")
               for c in self.checks]
        out.append(f"suite {self.suite}: {len(self.checks) - len(self.failures)}/{len(self.checks)}"
                   f" passed in {self.seconds:.2f} s")
        return out


def random_links(seed: int, count: int, max_crossings: int = 14, min_crossings: int = 4,
                 components: int = 2) -> list[FramedLink]:
    rng = random.Random(seed)
    return [catalog.random_link(rng.randrange(10 ** 9), rng.randint(min_crossings, max_crossings),
                                components) for _ in range(count)]


# ---------------------------------------------------------------------------
# Individual checks, shared with the acceptance tests


def sato_levine_mismatches(links) -> list[str]:
    bad = []
    for L in links:
        G = L.diagram
        if G.n_components != 2:
            continue
        u, o = U_invariant(G), sato_levine_oracle(G)
        if u != o:
            bad.append(f"{L.name}: U={u} oracle={o}")
    return bad


def self_crossing_instances(seed: int, count: int):
    """Yield (L+, label) with a positive self-crossing ``label``."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        L = catalog.random_link(rng.randrange(10 ** 9), rng.randint(4, 16), 2)
        G = L.diagram
        selfs = [k for k in range(1, G.n_crossings + 1) if G.is_self_arrow(k)]
        if not selfs:
            continue
        k = rng.choice(selfs)
        yield (L if G.sign(k) > 0 else switched(L, k)), k
        made += 1


def mixed_crossing_instances(seed: int, count: int):
    rng = random.Random(seed)
    for _ in range(count):
        L = catalog.random_link(rng.randrange(10 ** 9), rng.randint(4, 16), 2)
        G = L.diagram
        inter = [k for k in range(1, G.n_crossings + 1) if not G.is_self_arrow(k)]
        k = rng.choice(inter)
        yield (L if G.sign(k) > 0 else switched(L, k)), k


def self_crossing_failures(seed: int, count: int) -> list[str]:
    bad = []
    for L, k in self_crossing_instances(seed, count):
        direct = mu(L) - mu(switched(L, k))
        pred = self_crossing_delta(L, k)
        if direct != pred:
            bad.append(f"{L.name} crossing {k}: direct {direct} predicted {pred}")
    return bad


def mixed_crossing_failures(seed: int, count: int) -> tuple[list[str], list[str]]:
    bad_u, bad_mu = [], []
    for L, k in mixed_crossing_instances(seed, count):
        G = L.diagram
        du = U_invariant(G) - U_invariant(crossing_change(G, k))
        if du != mixed_u_delta(G, k):
            bad_u.append(f"{L.name} crossing {k}")
        dm = mu(L) - mu(switched(L, k))
        if dm != skein_mixed_delta(L, k):
            bad_mu.append(f"{L.name} crossing {k}")
    return bad_u, bad_mu


def invariance_failures(base_links, seed: int, walks: int, steps: int) -> list[str]:
    bad = []
    rng = random.Random(seed)
    for L in base_links:
        G = L.diagram
        u = U_invariant(G)
        up = U_prime(G)
        for _ in range(walks):
            H = random_move_walk(G, rng.randrange(10 ** 9), steps)
            if U_invariant(H) != u:
                bad.append(f"{L.name}: R-walk changed U")
            if linking_number(H) != linking_number(G):
                bad.append(f"{L.name}: R-walk changed lk")
        for gap in range(max(1, len(G.components[0]))):
            if U_invariant(move_base_point(G, gap)) != u:
                bad.append(f"{L.name}: base gap {gap} changed U")
        if U_invariant(swap_components(G)) != u:
            bad.append(f"{L.name}: component swap changed U")
        for i in (0, 1):
            R = reverse_component(G, i)
            if U_prime(R) != up:
                bad.append(f"{L.name}: reversing component {i} changed U'")
            if mu_prime(L.with_diagram(R)) != mu_prime(L):
                bad.append(f"{L.name}: reversing component {i} changed mu'")
        if mu_prime(L) != mu(L):
            bad.append(f"{L.name}: mu' != mu")
    return bad


# ---------------------------------------------------------------------------
# Suites


def suite_patterns(seed: int = 7, count: int = 30) -> SuiteResult:
    t0 = time.perf_counter()
    R = SuiteResult("patterns")
    lib = library()
    for n in range(1, 6):
        R.add(f"U(H({n})) = 0", U_invariant(catalog.hopf(n).diagram) == 0)
    hb = catalog.hopf_bar(3).diagram
    R.add("U(Hbar(3)) = -4", U_invariant(hb) == -4)
    R.add("U4 has four negative representations in Hbar(3)",
          count_representations(lib["U4"], hb) == -4)
    R.add("U(8^2_11) = -2", U_invariant(catalog.rolfsen_8_2_11().diagram) == -2)
    R.add("U'(H(3)) = -2", U_prime(catalog.hopf(3).diagram) == -2)
    R.add("v2(trefoil) = 1", v2(catalog.trefoil().diagram) == 1)
    R.add("v2(figure eight) = -1", v2(catalog.figure_eight().diagram) == -1)
    R.add("<A2, H(2)> = 4", evaluate(lib["A2"], catalog.hopf(2).diagram) == 4)
    R.add("<A3, H(2)> = 2", evaluate(lib["A3"], catalog.hopf(2).diagram) == 2)
    bad = [(n, a, b) for n in range(-4, 5) if n for a in range(-4, 5) for b in range(-4, 5)
           if mu(catalog.hopf(n, a, b)) != mu_hopf_closed_form(n, a, b)]
    R.add("mu(H(n,a,b)) closed form, |n|,|a|,|b| <= 4", not bad, f"{len(bad)} failures")
    links = random_links(seed, count)
    sl = sato_levine_mismatches(links + [L for L in catalog.named_links() if L.n_components == 2])
    R.add(f"U = Sato-Levine on {count} random links + catalog", not sl, "; ".join(sl[:3]))
    knots = random_links(seed + 1, count, components=1)
    kb = [K.name for K in knots if v2(K.diagram) != conway(K.diagram).c(2)]
    R.add(f"v2 = c2 on {count} random knots", not kb, "; ".join(kb[:3]))
    diff = 0
    for L in links[:10]:
        idx = DiagramIndex(L.diagram)
        for P in lib.patterns.values():
            if P.circles == 2 and count_naive(P, L.diagram) != count_representations(P, idx):
                diff += 1
    R.add("fast counter = naive counter", diff == 0, f"{diff} mismatches")
    inv = invariance_failures([catalog.hopf_bar(3)] + links[:3], seed, walks=5, steps=100)
    R.add("invariance under R-walks, base moves, swap; U' under reversal", not inv,
          "; ".join(inv[:3]))
    R.seconds = time.perf_counter() - t0
    return R


def suite_skein(seed: int = 7, count: int = 50) -> SuiteResult:
    t0 = time.perf_counter()
    R = SuiteResult("skein")
    b1 = self_crossing_failures(seed, count)
    R.add(f"self-crossing: mu(L+) - mu(L-) = b*ell - k(n-k) on {count} links", not b1,
          "; ".join(b1[:3]))
    bu, bm = mixed_crossing_failures(seed + 1, count)
    R.add(f"mixed crossing: U(L+) - U(L-) = v2(L0) - v2(L1) - v2(L2) on {count} links", not bu,
          "; ".join(bu[:3]))
    R.add(f"mixed crossing: mu(L+) - mu(L-) skein formula on {count} links", not bm,
          "; ".join(bm[:3]))
    R.seconds = time.perf_counter() - t0
    return R


def suite_seifert(grid: int = 5) -> SuiteResult:
    t0 = time.perf_counter()
    R = SuiteResult("seifert")
    R.add("lambda_L(Q(2,3,1)) = -1 via Seifert data", cross_check_hopf(2, 3, 1))
    g = seifert_grid(grid)
    R.add(f"Seifert formula = surgery formula on |n|,|a|,|b| <= {grid}", g.ok,
          f"{g.checked} points, {len(g.failures)} failures")
    ig = identity_grid(8)
    R.add("signature and polynomial identities on |A|,|B|,|C| <= 8", ig.ok,
          f"{ig.checked} points, {len(ig.failures)} failures")
    R.seconds = time.perf_counter() - t0
    return R


def asymptotic_models(seed: int, count: int) -> list[AsymptoticModel]:
    rng = random.Random(seed)
    out = []
    for L in random_links(seed, count, max_crossings=12):
        a0 = rng.choice([x for x in range(-5, 6) if x])
        b0 = rng.choice([x for x in range(-5, 6) if x and x != -a0])
        out.append(AsymptoticModel.from_link(L.with_framings(a0, b0)))
    return out


def case3_failures(seed: int, count: int) -> list[str]:
    rng = random.Random(seed)
    bad = []
    for L in random_links(seed, count, max_crossings=12):
        if linking_number(L.diagram) == 0:
            continue
        a0 = rng.choice([x for x in range(-5, 6) if x])
        M = AsymptoticModel.from_link(L.with_framings(a0, 0))
        for t in range(-50, 51):
            if t and exact_lambda_at(M, t) != leading_approx(M, t):
                bad.append(f"{L.name} t={t}")
                break
    return bad


def residuals_decrease(M: AsymptoticModel, ts, scale_by_t: bool = False) -> bool:
    r = []
    for t in ts:
        d = abs(exact_lambda_at(M, t) - leading_approx(M, t))
        r.append(d * t if scale_by_t else d)
    return all(x > y for x, y in zip(r, r[1:]))


def suite_asymptotics(seed: int = 7, count: int = 20) -> SuiteResult:
    t0 = time.perf_counter()
    R = SuiteResult("asymptotics")
    c3 = case3_failures(seed, count)
    R.add("case b0 = 0 formula is exact for t in [-50, 50]", not c3, "; ".join(c3[:3]))
    H = AsymptoticModel.from_link(catalog.hopf(2, 3, 2))
    R.add("case 1 residual decreases at t = 10, 10^3, 10^6 on H(2,3,2)",
          residuals_decrease(H, [10, 10 ** 3, 10 ** 6]))
    models = asymptotic_models(seed, count)
    c1 = [M for M in models if M.case == 1 and not residuals_decrease(M, [10, 10 ** 3, 10 ** 6])]
    R.add("case 1 residual decreases on random models", not c1)
    K2 = AsymptoticModel(3, -3, 2, v2_1=1, v2_2=0, U=0)
    R.add("case 2: t r(t) decreases at t = 10^2, 10^4, 10^6",
          residuals_decrease(K2, [10 ** 2, 10 ** 4, 10 ** 6], scale_by_t=True))
    bad = [M for M in models + [H] if not all(r.within_bound for r in residual_report(M, [37], 12))]
    R.add("series through k = 12 within the tail bound at t = 37", not bad, f"{len(bad)} failures")
    R.seconds = time.perf_counter() - t0
    return R


def run_suite(name: str, seed: int = 7, grid: int = 5, count: int = 50) -> list[SuiteResult]:
    suites = {
        "patterns": lambda: suite_patterns(seed, max(30, min(count, 60))),
        "skein": lambda: suite_skein(seed, count),
        "seifert": lambda: suite_seifert(grid),
        "asymptotics": lambda: suite_asymptotics(seed, min(count, 20)),
    }
    if name == "all":
        return [f() for f in suites.values()]
    if name not in suites:
        raise ValueError(f"unknown suite {name!r}")
    return [suites[name]()]

