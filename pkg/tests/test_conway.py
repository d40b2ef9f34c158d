import pytest
from hypothesis import given, strategies as st

from cwkit import catalog
from cwkit.conway import ConwayPoly, CrossingBudgetError, conway, sato_levine_oracle
from cwkit.gauss import linking_number, mirror, random_move_walk, reverse_component

seeds = st.integers(0, 10 ** 6)


def test_catalog_values():
    assert conway(catalog.unknot().diagram).coeffs == (1,)
    assert conway(catalog.unlink().diagram).coeffs == (0,) or conway(catalog.unlink().diagram).coeffs == ()
    assert conway(catalog.hopf(1).diagram).coeffs == (0, 1)
    assert conway(catalog.hopf(3).diagram).coeffs == (0, 3)
    assert conway(catalog.trefoil().diagram).coeffs == (1, 0, 1)
    assert conway(catalog.left_trefoil().diagram).coeffs == (1, 0, 1)
    assert conway(catalog.figure_eight().diagram).coeffs == (1, 0, -1)
    assert conway(catalog.hopf_bar(3).diagram).coeffs == (0, -3, 0, -4, 0, -1)
    assert sato_levine_oracle(catalog.hopf_bar(3).diagram) == -4
    assert sato_levine_oracle(catalog.rolfsen_8_2_11().diagram) == -2


def test_string_form():
    assert str(conway(catalog.trefoil().diagram)) == "1 + z^2"
    assert str(ConwayPoly((0,))) == "0"


@given(seeds, st.integers(2, 14), st.sampled_from([1, 2]))
def test_parity_and_linking(seed, size, comps):
    G = catalog.random_link(seed, size, comps).diagram
    C = conway(G)
    parity = (comps - 1) % 2
    assert all(c == 0 for i, c in enumerate(C.coeffs) if i % 2 != parity)
    if comps == 2:
        assert C.c(1) == linking_number(G)
    else:
        assert C.c(0) == 1


@given(seeds, st.integers(2, 12))
def test_mirror_and_reversal(seed, size):
    G = catalog.random_link(seed, size, 2).diagram
    C = conway(G)
    # nabla(mirror) = nabla(-z); reversing one component changes more, so only check lk
    M = conway(mirror(G))
    assert M.coeffs == tuple(c * (-1) ** i for i, c in enumerate(C.coeffs))
    assert conway(reverse_component(G, 1)).c(1) == -C.c(1)


@pytest.mark.parametrize("L", [catalog.trefoil(), catalog.hopf(2), catalog.figure_eight()],
                         ids=["trefoil", "hopf2", "figure_eight"])
def test_reidemeister_invariance(L):
    C = conway(L.diagram)
    for s in range(20):
        assert conway(random_move_walk(L.diagram, s, 20, max_growth=6)) == C


def test_budget():
    G = catalog.random_link(3, 30, 2).diagram
    with pytest.raises(CrossingBudgetError):
        conway(G, max_crossings=10)
