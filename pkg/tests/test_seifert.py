import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cwkit.seifert import (HopfSurgeryData, SeifertPresentation, cross_check_hopf, dedekind_sum,
                           dedekind_unit_closed_form, hopf_to_seifert, identity_grid,
                           lescop_hopf_expected, lescop_seifert, sawtooth, seifert_grid,
                           signature_via_signs)


def test_sawtooth():
    assert sawtooth(Fraction(1, 2)) == 0
    assert sawtooth(7) == 0
    assert sawtooth(Fraction(1, 4)) == Fraction(-1, 4)
    assert sawtooth(Fraction(-1, 4)) == Fraction(1, 4)


def test_dedekind_examples():
    assert dedekind_sum(1, 2) == 0
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    assert dedekind_sum(1, 5) == Fraction(1, 5)
    assert dedekind_unit_closed_form(3) == Fraction(1, 18)
    assert dedekind_unit_closed_form(1) == 0
    assert dedekind_unit_closed_form(-5) == Fraction(-1, 5)
    with pytest.raises(ValueError):
        dedekind_sum(2, 4)
    with pytest.raises(ValueError):
        dedekind_sum(1, 0)


def test_dedekind_symmetries():
    rng = random.Random(5)
    pairs = [(1, 1), (1, 200), (199, 200)]
    while len(pairs) < 150:
        a, b = rng.randint(1, 200) * rng.choice((1, -1)), rng.randint(-400, 400)
        if math.gcd(a, b) == 1:
            pairs.append((b, a))
    for b, a in pairs:
        s = dedekind_sum(b, a)
        assert s == dedekind_sum(-b, -a)
        assert s == -dedekind_sum(-b, a)
        assert s == -dedekind_sum(b, -a)
        assert s == dedekind_sum(b + a, a) == dedekind_sum(b - a, a)


def test_reciprocity():
    # independent classical check for coprime positive pairs
    for a in range(1, 40):
        for b in range(1, 40):
            if math.gcd(a, b) == 1:
                assert (dedekind_sum(a, b) + dedekind_sum(b, a)
                        == Fraction(a * a + b * b + 1, 12 * a * b) - Fraction(1, 4))


def test_unit_closed_form():
    for l in range(2, 201):
        assert dedekind_sum(1, l) == dedekind_unit_closed_form(l)
        assert dedekind_sum(1, -l) == dedekind_unit_closed_form(-l)


def test_hopf_to_seifert_examples():
    S = hopf_to_seifert(2, 3, 1)
    assert S.fibers == ((5, 1), (3, 1), (2, 1))
    assert S.b == -1 and S.e == Fraction(1, 30)
    assert lescop_seifert(S) == -1
    T = hopf_to_seifert(1, 2, 2)
    assert T.fibers == ((3, 1), (3, 1))
    H = HopfSurgeryData.from_link(2, 3, 1)
    assert H.D == -1 == 3 * 1 - 4


def test_orientation_flip():
    assert lescop_seifert(hopf_to_seifert(-2, -3, -1)) == 1
    for n, a, b in [(2, 3, 1), (3, -2, 4), (1, 5, 2)]:
        assert cross_check_hopf(n, a, b) and cross_check_hopf(-n, -a, -b)
        assert lescop_hopf_expected(-n, -a, -b) == -lescop_hopf_expected(n, a, b)


def test_presentation_validation():
    with pytest.raises(ValueError):
        SeifertPresentation(((3, 3),), 0, 1)
    with pytest.raises(ValueError):
        SeifertPresentation(((3, 1),), 0, 1)
    with pytest.raises(ValueError):
        lescop_seifert(SeifertPresentation(((2, 1), (2, 1)), -1, 0))
    with pytest.raises(ValueError):
        hopf_to_seifert(0, 1, 1)


def test_signature_from_signs():
    assert signature_via_signs(5, 3, -2) == 0
    assert signature_via_signs(2, 3, 7) == 2


def test_grids():
    g = seifert_grid(5)
    assert g.ok and g.checked > 900
    ig = identity_grid(6)
    assert ig.ok


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_identities_random(A, B, C):
    H = HopfSurgeryData(A, B, C)
    if H.K == 0 or H.D == 0:
        return
    assert all(H.identities().values())
