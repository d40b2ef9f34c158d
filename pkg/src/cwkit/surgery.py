"""Surgery invariants: linking matrix, mu, and the Casson-Walker / Lescop values.

All arithmetic is exact (``fractions.Fraction``).  For a framed link L with
framings a, b and linking number n, D = ab - n^2 and

    mu = a v2(L2) + b v2(L1) - U + (n^3 - n)/12 + (a + b)(2n^2 - ab - 2)/24,
    lambda_w = 2 mu / D + sigma / 4,   lambda_L = sign(D)(mu + D sigma / 8).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from cwkit.gauss import (FramedLink, GaussDiagram, crossing_change, lobe_split, linking_number,
                         smooth_fusion, sublink)
from cwkit.patterns import DiagramIndex, U_invariant, U_prime, v2


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class LinkingMatrix:
    a: int
    b: int
    n: int

    @property
    def D(self) -> int:
        return self.a * self.b - self.n * self.n

    @property
    def is_rational_homology_sphere(self) -> bool:
        return self.D != 0

    @property
    def sigma(self) -> int | None:
        D = self.D
        if D == 0:
            return None
        if D < 0:
            return 0
        return 2 if self.a + self.b > 0 else -2


def signature_rule(a: int, b: int, n: int) -> int | None:
    return LinkingMatrix(a, b, n).sigma


def linking_matrix(L: FramedLink) -> LinkingMatrix:
    _need_two(L)
    a, b = L.framings
    return LinkingMatrix(a, b, linking_number(L.diagram, 0, 1))


def _need_two(L: FramedLink) -> None:
    if L.n_components != 2:
        raise ValueError(f"expected a 2-component framed link, got {L.n_components} components")


def mu_formula(a: int, b: int, n: int, v2_1, v2_2, U) -> Fraction:
    return (a * Fraction(v2_2) + b * Fraction(v2_1) - Fraction(U)
            + Fraction(n ** 3 - n, 12) + Fraction((a + b) * (2 * n * n - a * b - 2), 24))


def mu_prime_formula(a: int, b: int, n: int, v2_1, v2_2, Up) -> Fraction:
    # no cubic term: U - U' = (n^3 - n)/12 on oriented links
    return (a * Fraction(v2_2) + b * Fraction(v2_1) - Fraction(Up)
            + Fraction((a + b) * (2 * n * n - a * b - 2), 24))


def mu_hopf_closed_form(n: int, a: int, b: int) -> Fraction:
    return Fraction(n ** 3 - n, 12) + Fraction((a + b) * (2 * n * n - a * b - 2), 24)


def _v2s(G: GaussDiagram) -> tuple[int, int]:
    return v2(sublink(G, [0])), v2(sublink(G, [1]))


def mu(L: FramedLink) -> Fraction:
    _need_two(L)
    M = linking_matrix(L)
    v1, v2_ = _v2s(L.diagram)
    return mu_formula(M.a, M.b, M.n, v1, v2_, U_invariant(L.diagram))


def mu_prime(L: FramedLink) -> Fraction:
    _need_two(L)
    M = linking_matrix(L)
    v1, v2_ = _v2s(L.diagram)
    return mu_prime_formula(M.a, M.b, M.n, v1, v2_, U_prime(L.diagram))


def mu_knot_formula(a: int, v2_K) -> Fraction:
    return Fraction(v2_K) - Fraction(a * a + 2, 24)


def mu_knot(K: FramedLink) -> Fraction:
    if K.n_components != 1:
        raise ValueError("mu_knot expects a 1-component framed link")
    return mu_knot_formula(K.framings[0], v2(K.diagram))


def mu_via_sublinks(L: FramedLink) -> Fraction:
    _need_two(L)
    M = linking_matrix(L)
    v1, v2_ = _v2s(L.diagram)
    U = U_invariant(L.diagram)
    return (mu_knot_formula(M.a, v1) * M.b + mu_knot_formula(M.b, v2_) * M.a - U
            + Fraction(M.n ** 3 - M.n, 12) + Fraction((M.a + M.b) * M.n * M.n, 12))


def lambda_from_mu(mu_value: Fraction, D: int, sigma: int | None) -> Fraction | None:
    if D == 0:
        return None
    return 2 * mu_value / D + Fraction(sigma, 4)


def lescop_from_mu(mu_value: Fraction, D: int, sigma: int | None) -> Fraction | None:
    if D == 0:
        return None
    return _sign(D) * (mu_value + Fraction(D * sigma, 8))


def casson_walker(L: FramedLink) -> Fraction:
    """lambda_w of the surgered manifold; undefined when D = 0."""
    if L.n_components == 1:
        a = L.framings[0]
        if a == 0:
            raise ValueError("framing 0: not a rational homology sphere")
        return lambda_from_mu(mu_knot(L), a, _sign(a))
    M = linking_matrix(L)
    if M.D == 0:
        raise ValueError("D = 0: not a rational homology sphere")
    return lambda_from_mu(mu(L), M.D, M.sigma)


def lescop(L: FramedLink) -> Fraction:
    if L.n_components == 1:
        a = L.framings[0]
        if a == 0:
            raise ValueError("framing 0: Lescop value not available")
        return lescop_from_mu(mu_knot(L), a, _sign(a))
    M = linking_matrix(L)
    if M.D == 0:
        raise ValueError("D = 0: Lescop value not available")
    return lescop_from_mu(mu(L), M.D, M.sigma)


# ---------------------------------------------------------------------------
# Crossing-change identities


def self_crossing_delta(L: FramedLink, label: int) -> Fraction:
    """Predicted mu(L+) - mu(L-) at a self-crossing: b ell - k (n - k)."""
    _need_two(L)
    G = L.diagram
    if not G.is_self_arrow(label):
        raise ValueError(f"crossing {label} is not a self-crossing")
    comp = G.tail_of(label)[0]
    other_framing = L.framings[1 - comp]
    s = lobe_split(G, label)
    delta = Fraction(other_framing * s.ell - s.k * (s.n - s.k))
    return delta if G.sign(label) > 0 else -delta


def skein_mixed_delta(L: FramedLink, label: int) -> Fraction:
    """Predicted mu(L+) - mu(L-) at a positive crossing between the components."""
    _need_two(L)
    G = L.diagram
    if G.is_self_arrow(label):
        raise ValueError(f"crossing {label} is not between the two components")
    if G.sign(label) != 1:
        raise ValueError(f"crossing {label} is negative; a positive crossing is required")
    a, b = L.framings
    n = linking_number(G, 0, 1)
    v1, v2_ = _v2s(G)
    v0 = v2(smooth_fusion(G, label))
    return (Fraction(v1 + v2_ - v0) + Fraction(n * n - n, 4)
            + Fraction((a + b) * (2 * n - 1), 12))


def mixed_u_delta(G: GaussDiagram, label: int) -> int:
    """Predicted U(L+) - U(L-): v2(L0) - v2(L1) - v2(L2)."""
    if G.is_self_arrow(label) or G.sign(label) != 1:
        raise ValueError(f"crossing {label} must be a positive crossing between components")
    v1, v2_ = _v2s(G)
    return v2(smooth_fusion(G, label)) - v1 - v2_


def switched(L: FramedLink, label: int) -> FramedLink:
    return L.with_diagram(crossing_change(L.diagram, label))


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class InvariantReport:
    name: str | None
    a: int
    b: int | None
    n: int | None
    D: int
    sigma: int | None
    v2_1: int
    v2_2: int | None
    U: int | None
    U_prime: Fraction | None
    mu: Fraction
    mu_prime: Fraction | None
    lambda_w: Fraction | None
    lescop: Fraction | None

    @property
    def h1_order(self) -> int:
        return abs(self.D)

    def as_json(self) -> dict:
        def q(x):
            return None if x is None else f"{x.numerator}/{x.denominator}"
        return {
            "name": self.name, "a": self.a, "b": self.b, "n": self.n, "D": self.D,
            "sigma": self.sigma, "v2_1": self.v2_1, "v2_2": self.v2_2, "U": self.U,
            "U_prime": q(self.U_prime), "mu": q(self.mu),
            "lambda_w": q(self.lambda_w), "lescop": q(self.lescop),
        }


def report(L: FramedLink) -> InvariantReport:
    if L.n_components == 1:
        a = L.framings[0]
        vk = v2(L.diagram)
        m = mu_knot_formula(a, vk)
        sig = _sign(a) if a else None
        return InvariantReport(L.name, a, None, None, a, sig, vk, None, None, None, m, None,
                               lambda_from_mu(m, a, sig), lescop_from_mu(m, a, sig))
    _need_two(L)
    G = L.diagram
    M = linking_matrix(L)
    v1, v2_ = _v2s(G)
    idx = DiagramIndex(G)
    U = U_invariant(idx)
    Up = U_prime(idx)
    m = mu_formula(M.a, M.b, M.n, v1, v2_, U)
    mp = mu_prime_formula(M.a, M.b, M.n, v1, v2_, Up)
    return InvariantReport(L.name, M.a, M.b, M.n, M.D, M.sigma, v1, v2_, U, Up, m, mp,
                           lambda_from_mu(m, M.D, M.sigma), lescop_from_mu(m, M.D, M.sigma))
