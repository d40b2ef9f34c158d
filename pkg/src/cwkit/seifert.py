"""Lescop's formula for Seifert fibered spaces over S^2, as an oracle for H(n,a,b).

Surgery on the generalized Hopf link H(n,a,b) gives a Seifert manifold with
three exceptional fibers of types (A,1), (B,1), (C,1), where A = a+n,
B = b+n, C = -n.  Its Lescop invariant is evaluated here from Dedekind sums
alone, independently of any Gauss diagram.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from cwkit.surgery import lescop_from_mu, mu_hopf_closed_form, signature_rule


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sawtooth(x) -> Fraction:
    """((x)) = x - floor(x) - 1/2 off the integers, 0 on them."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum(b: int, a: int) -> Fraction:
    """s(b, a) by direct summation, odd in ``a``.

    The sum over k = 1..|a| is even in ``a``; it is multiplied by sign(a)
    so that s(b, -a) = -s(b, a), as the reciprocity-style symmetries and
    the closed form for s(1, l) require.
    """
    if a == 0:
        raise ValueError("dedekind_sum needs a != 0")
    if math.gcd(b, a) != 1:
        raise ValueError(f"dedekind_sum needs coprime arguments, got ({b}, {a})")
    total = Fraction(0)
    for k in range(1, abs(a) + 1):
        total += sawtooth(Fraction(k, a)) * sawtooth(Fraction(k * b, a))
    return _sign(a) * total


def dedekind_unit_closed_form(l: int) -> Fraction:
    if l == 0:
        raise ValueError("closed form needs l != 0")
    s = _sign(l)
    return Fraction((l - s) * (l - 2 * s), 12 * l)


@dataclass(frozen=True)
class SeifertPresentation:
    fibers: tuple[tuple[int, int], ...]
    b: int
    e: Fraction

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple((int(p), int(q)) for p, q in self.fibers))
        for p, q in self.fibers:
            if p < 2 or not 0 < q < p:
                raise ValueError(f"fiber ({p}, {q}) is not normalized")
        expected = self.b + sum(Fraction(q, p) for p, q in self.fibers)
        if Fraction(self.e) != expected:
            raise ValueError(f"Euler number {self.e} does not equal b + sum b_k/a_k = {expected}")
        object.__setattr__(self, "e", Fraction(self.e))


def lescop_seifert(S: SeifertPresentation) -> Fraction:
    e = S.e
    if e == 0:
        raise ValueError("Euler number 0: not a rational homology sphere")
    m = len(S.fibers)
    inv_sq = sum((Fraction(1, p * p) for p, _ in S.fibers), Fraction(0))
    dsum = sum((dedekind_sum(q, p) for p, q in S.fibers), Fraction(0))
    prod = 1
    for p, _ in S.fibers:
        prod *= p
    bracket = (Fraction(_sign(e), 24) * (2 - m + inv_sq) + e * abs(e) / 24 - e / 8
               - abs(e) / 2 * dsum)
    return bracket * abs(prod)


@dataclass(frozen=True)
class HopfSurgeryData:
    A: int
    B: int
    C: int

    @classmethod
    def from_link(cls, n: int, a: int, b: int) -> "HopfSurgeryData":
        return cls(a + n, b + n, -n)

    @property
    def K(self) -> int:
        return self.A * self.B * self.C

    @property
    def P(self) -> int:
        A, B, C = self.A, self.B, self.C
        return A * A * B * B + A * A * C * C + B * B * C * C

    @property
    def S(self) -> int:
        A, B, C = self.A, self.B, self.C
        sA, sB, sC = _sign(A), _sign(B), _sign(C)
        return (A * C * (B - sB) * (B - 2 * sB) + A * B * (C - sC) * (C - 2 * sC)
                + B * C * (A - sA) * (A - 2 * sA))

    @property
    def Sigma(self) -> int:
        return self.A + self.B + self.C

    @property
    def D(self) -> int:
        return self.A * self.B + self.A * self.C + self.B * self.C

    @property
    def e(self) -> Fraction:
        return Fraction(self.D, self.K)

    @property
    def n(self) -> int:
        return -self.C

    @property
    def a(self) -> int:
        return self.A + self.C

    @property
    def b(self) -> int:
        return self.B + self.C

    def identities(self) -> dict[str, bool]:
        """The polynomial identities relating the Seifert data to mu."""
        A, B, C, K, D, Sig = self.A, self.B, self.C, self.K, self.D, self.Sigma
        signs = _sign(A) + _sign(B) + _sign(C)
        return {
            "P-D^2=-2K*Sigma": self.P - D * D == -2 * K * Sig,
            "2D-S=K(3*sum s-Sigma)": 2 * D - self.S == K * (3 * signs - Sig),
            "-K+C^3-Sigma*C^2+C*D=0": -K + C ** 3 - Sig * C * C + C * D == 0,
            "24mu=-C^3+Sigma*C^2-Sigma*D-2Sigma-C*D":
                24 * mu_hopf_closed_form(self.n, self.a, self.b)
                == -C ** 3 + Sig * C * C - Sig * D - 2 * Sig - C * D,
        }


def hopf_to_seifert(n: int, a: int, b: int) -> SeifertPresentation:
    H = HopfSurgeryData.from_link(n, a, b)
    if n == 0:
        raise ValueError("n = 0 is excluded")
    if H.K == 0:
        raise ValueError("some of A, B, C vanishes (K = 0)")
    e = sum((Fraction(1, X) for X in (H.A, H.B, H.C)), Fraction(0))
    if e == 0:
        raise ValueError("Euler number 0 (D = 0)")
    fibers = []
    for X in (H.A, H.B, H.C):
        if abs(X) >= 2:
            fibers.append((abs(X), 1) if X > 0 else (abs(X), abs(X) - 1))
    fibers.sort(reverse=True)
    b_int = e - sum((Fraction(q, p) for p, q in fibers), Fraction(0))
    assert b_int.denominator == 1
    return SeifertPresentation(tuple(fibers), int(b_int), e)


def signature_via_signs(A: int, B: int, C: int) -> int:
    H = HopfSurgeryData(A, B, C)
    if H.D == 0 or H.K == 0 or H.e <= 0:
        raise ValueError("requires D != 0, K != 0 and e = D/K > 0")
    return _sign(A) + _sign(B) + _sign(C) - 1


def lescop_hopf_expected(n: int, a: int, b: int) -> Fraction:
    D = a * b - n * n
    return lescop_from_mu(mu_hopf_closed_form(n, a, b), D, signature_rule(a, b, n))


def cross_check_hopf(n: int, a: int, b: int) -> bool:
    H = HopfSurgeryData.from_link(n, a, b)
    if n == 0 or H.K == 0 or H.D == 0:
        raise ValueError("requires n != 0, K != 0, D != 0")
    return lescop_seifert(hopf_to_seifert(n, a, b)) == lescop_hopf_expected(n, a, b)


@dataclass
class GridResult:
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def seifert_grid(bound: int = 5) -> GridResult:
    checked, failures = 0, []
    r = range(-bound, bound + 1)
    for n in r:
        if n == 0:
            continue
        for a in r:
            for b in r:
                H = HopfSurgeryData.from_link(n, a, b)
                if H.K == 0 or H.D == 0:
                    continue
                checked += 1
                if not cross_check_hopf(n, a, b):
                    failures.append((n, a, b))
    return GridResult(checked, failures)


def identity_grid(bound: int = 8) -> GridResult:
    """Signature-from-signs and the polynomial identities on |A|,|B|,|C| <= bound."""
    checked, failures = 0, []
    r = range(-bound, bound + 1)
    for A in r:
        for B in r:
            for C in r:
                H = HopfSurgeryData(A, B, C)
                if H.K == 0 or H.D == 0:
                    continue
                checked += 1
                bad = [k for k, ok in H.identities().items() if not ok]
                if H.e > 0 and signature_via_signs(A, B, C) != signature_rule(H.a, H.b, H.n):
                    bad.append("signature")
                if bad:
                    failures.append(((A, B, C), bad))
    return GridResult(checked, failures)
