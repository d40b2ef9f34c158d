"""Behaviour of lambda_w under framing scaling a = a0 t, b = b0 t.

D(t) = a0 b0 t^2 - n^2, so 2 mu(t) / D(t) can be expanded in powers of
t^-2 once |t| exceeds |n| / sqrt|a0 b0|.  The constant term of that
expansion is sigma/4 for the signature at t, which is constant beyond the
radius of convergence.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

from cwkit.gauss import FramedLink, linking_number, sublink
from cwkit.patterns import U_invariant, v2
from cwkit.surgery import mu_formula


@dataclass(frozen=True)
class AsymptoticModel:
    a0: int
    b0: int
    n: int
    v2_1: int = 0
    v2_2: int = 0
    U: int = 0
    name: str | None = None

    @classmethod
    def from_link(cls, L: FramedLink) -> "AsymptoticModel":
        if L.n_components != 2:
            raise ValueError("asymptotic models need a 2-component link")
        G = L.diagram
        a0, b0 = L.framings
        return cls(a0, b0, linking_number(G, 0, 1), v2(sublink(G, [0])), v2(sublink(G, [1])),
                   U_invariant(G), L.name)

    @property
    def case(self) -> int:
        if self.a0 == 0 and self.b0 == 0:
            raise ValueError("a0 = b0 = 0: no scaling")
        if self.a0 * self.b0 == 0:
            return 3
        return 2 if self.a0 + self.b0 == 0 else 1

    @property
    def C1(self) -> Fraction:
        a0, b0, n = self.a0, self.b0, self.n
        return Fraction((2 * n * n - 2) * (a0 + b0) + 24 * a0 * self.v2_2 + 24 * b0 * self.v2_1,
                        a0 * b0)

    @property
    def C2(self) -> Fraction:
        n = self.n
        return Fraction(-24 * self.U + 2 * n ** 3 - 2 * n, self.a0 * self.b0)

    @property
    def C3(self) -> Fraction:
        return Fraction(self.n * self.n, self.a0 * self.b0)

    @property
    def radius(self) -> float:
        if self.a0 * self.b0 == 0:
            return math.inf
        return abs(self.n) / math.sqrt(abs(self.a0 * self.b0))

    @property
    def sigma_inf(self) -> int:
        """Signature for large positive t."""
        if self.a0 * self.b0 > 0:
            return 2 if self.a0 + self.b0 > 0 else -2
        return 0

    def D(self, t) -> Fraction:
        t = Fraction(t)
        return self.a0 * self.b0 * t * t - self.n * self.n

    def sigma(self, t) -> int | None:
        t = Fraction(t)
        D = self.D(t)
        if D == 0:
            return None
        if D < 0:
            return 0
        return 2 if (self.a0 + self.b0) * t > 0 else -2


def exact_lambda_at(model: AsymptoticModel, t) -> Fraction:
    """lambda_w at framings (a0 t, b0 t); any rational t gives the formula value."""
    t = Fraction(t)
    D = model.D(t)
    if D == 0:
        raise ValueError(f"D(t) = 0 at t = {t}")
    a, b = model.a0 * t, model.b0 * t
    mu = mu_formula(a, b, model.n, model.v2_1, model.v2_2, model.U)
    return 2 * mu / D + Fraction(model.sigma(t), 4)


def leading_approx(model: AsymptoticModel, t) -> Fraction:
    t = Fraction(t)
    case = model.case
    if case == 1:
        sig = model.sigma(t)
        if sig is None:
            raise ValueError(f"D(t) = 0 at t = {t}")
        return -Fraction(model.a0 + model.b0, 12) * t + Fraction(sig, 4)
    if case == 2:
        if t == 0:
            raise ValueError("t = 0")
        return Fraction(2 * (model.v2_1 - model.v2_2), model.a0) / t
    n = model.n
    if n == 0:
        raise ValueError("n = 0 with a vanishing scaled framing: D(t) = 0 identically")
    # the scaled framing and the v2 of the opposite component
    c0, v_other = (model.a0, model.v2_2) if model.b0 == 0 else (model.b0, model.v2_1)
    return (-Fraction(c0, 6 * n * n) * (n * n - 1 + 12 * v_other) * t
            - Fraction(n ** 3 - n - 12 * model.U, 6 * n * n))


def _check_series(model: AsymptoticModel, t: Fraction) -> None:
    if model.a0 * model.b0 == 0:
        raise ValueError("the power series needs a0 b0 != 0")
    if model.n != 0 and t * t * abs(model.a0 * model.b0) <= model.n * model.n:
        raise ValueError(f"|t| = {abs(t)} is inside the radius {model.radius:.6g}: series diverges")


def series_eval(model: AsymptoticModel, t, k_max: int) -> Fraction:
    t = Fraction(t)
    _check_series(model, t)
    s = model.a0 + model.b0
    lead = Fraction(model.sigma(t), 4) - Fraction(s, 12) * t
    c_odd = model.C1 - model.C3 * s
    total = Fraction(0)
    q = Fraction(1)
    for k in range(k_max + 1):
        total += c_odd * q / t ** (2 * k + 1) + model.C2 * q / t ** (2 * k + 2)
        q *= model.C3
    return lead + total / 12


def tail_bound(model: AsymptoticModel, t, k_max: int) -> Fraction:
    """Bound on the omitted terms k > k_max (a geometric tail in C3/t^2)."""
    t = Fraction(t)
    _check_series(model, t)
    r = abs(model.C3) / (t * t)
    c_odd = abs(model.C1 - model.C3 * (model.a0 + model.b0))
    first = (c_odd / abs(t) + abs(model.C2) / (t * t)) * r ** (k_max + 1)
    return first / (1 - r) / 12


@dataclass(frozen=True)
class ResidualRow:
    t: Fraction
    exact: Fraction
    series: Fraction
    residual: Fraction
    bound: Fraction

    @property
    def within_bound(self) -> bool:
        return self.residual <= self.bound


def residual_report(model: AsymptoticModel, t_list, k_max: int) -> list[ResidualRow]:
    rows = []
    for t in t_list:
        t = Fraction(t)
        ex = exact_lambda_at(model, t)
        se = series_eval(model, t, k_max)
        rows.append(ResidualRow(t, ex, se, abs(ex - se), tail_bound(model, t, k_max)))
    return rows


def t_grid(t_min, t_max, step) -> list[Fraction]:
    lo, hi, st = Fraction(str(t_min)), Fraction(str(t_max)), Fraction(str(step))
    if st <= 0:
        raise ValueError("step must be positive")
    out = []
    t = lo
    while t <= hi:
        out.append(t)
        t += st
    return out


def _fmt(x: Fraction | None, exact: bool) -> str:
    if x is None:
        return ""
    if exact:
        return f"{x.numerator}/{x.denominator}"
    return format(float(x), ".15g")


def emit_csv(model: AsymptoticModel, t_values, k_max: int = 12, exact: bool = False) -> str:
    """CSV with columns t, exact, leading, series; singular points are skipped."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "exact", "leading", "series"])
    for t in t_values:
        t = Fraction(t)
        if model.D(t) == 0:
            continue
        ex = exact_lambda_at(model, t)
        try:
            lead = leading_approx(model, t)
        except ValueError:
            lead = None
        try:
            ser = series_eval(model, t, k_max)
        except ValueError:
            ser = None
        w.writerow([_fmt(t, exact), _fmt(ex, exact), _fmt(lead, exact), _fmt(ser, exact)])
    return buf.getvalue()
