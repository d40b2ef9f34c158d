import pytest
from hypothesis import given, strategies as st

from cwkit import catalog
from cwkit.gauss import (GaussCodeError, GaussDiagram, MoveError, apply_r1_delete, apply_r1_insert,
                         apply_r2_delete, apply_r2_insert, apply_r3, crossing_change, faces,
                         is_planar, linking_number, lobe_split, make_diagram, mirror,
                         move_base_point, parse_link, parse_links, r1_sites, r2_sites, r3_sites,
                         random_move_walk, reverse_component, serialize, smooth_fusion, sublink,
                         swap_components, writhe)

seeds = st.integers(min_value=0, max_value=10 ** 6)
sizes = st.integers(min_value=3, max_value=20)


def rlink(seed, size, comps=2):
    return catalog.random_link(seed, size, comps)


def valid(G: GaussDiagram) -> None:
    # rebuilding runs the constructor validation again
    GaussDiagram(G.components, G.signs, G.base)
    labels = sorted(abs(v) for c in G.components for v in c)
    assert labels == sorted(list(range(1, G.n_crossings + 1)) * 2)


HOPF_RECORD = """name: H(2,3,1)
framings: 3 1
component: 1 -2 3 -4
component: -1 2 -3 4
signs: 1:+ 2:+ 3:+ 4:+
base: 1 0          # component (1-based), gap index
"""


def test_parse_format_example():
    L = parse_link(HOPF_RECORD)
    assert L.name == "H(2,3,1)"
    assert L.framings == (3, 1)
    assert L.diagram.components == ((1, -2, 3, -4), (-1, 2, -3, 4))
    assert L.diagram.signs == (1, 1, 1, 1)
    assert L.diagram.base == (0, 0)


def test_roundtrip_catalog():
    for L in catalog.named_links():
        assert parse_link(serialize(L)) == L


@given(seeds, sizes, st.sampled_from([1, 2]))
def test_roundtrip_random(seed, size, comps):
    L = rlink(seed, size, comps)
    assert parse_link(serialize(L)) == L


def test_multiple_records_and_comments():
    text = "# header\n" + HOPF_RECORD + "\n\n" + serialize(catalog.trefoil(1))
    links = parse_links(text)
    assert [L.name for L in links] == ["H(2,3,1)", "trefoil(1)"]


def test_arbitrary_labels_renumbered():
    L = parse_link("framings: 1\ncomponent: 10 -20 30 -10 20 -30\nsigns: 10:+ 20:+ 30:+\n")
    assert L.diagram.components == ((1, -2, 3, -1, 2, -3),)


def test_crossingless_component_and_default_framings():
    L = parse_link("component: none\ncomponent: none\n")
    assert L.framings == (0, 0)
    assert L.diagram.components == ((), ())


@pytest.mark.parametrize("text, message", [
    ("framings: 1 1\ncomponent: 1 -2 3\ncomponent: -1 2 3\nsigns: 1:+ 2:+ 3:+\n",
     "duplicate over-pass for crossing 3"),
    ("framings: 1\ncomponent: 1 -1 2 -2 1\nsigns: 1:+ 2:+\n", "crossing 1 appears 3 times"),
    ("framings: 1\ncomponent: 1 -1 2\nsigns: 1:+ 2:+\n", "crossing 2 appears 1 times"),
    ("framings: 1\ncomponent: 1 -1\nsigns: 1:+ 2:+\n", "unknown crossing 2"),
    ("framings: 1\ncomponent: 1 -1\nsigns: \n", "missing chiral sign for crossing 1"),
    ("framings: 1 2\ncomponent: 1 -1\nsigns: 1:+\n", "2 framings for 1 components"),
    ("framings: 1\ncomponent:\nsigns: 1:+\n", "empty component"),
    ("framings: 1\ncomponent: 1 -1\nsigns: 1:+\nbase: 1 5\n", "base point out of range"),
    ("framings: 1\ncomponent: 1 -1\nsigns: 1:+\nbase: 2 0\n", "base point out of range"),
])
def test_parse_errors(text, message):
    with pytest.raises(GaussCodeError, match=message):
        parse_link(text)


def test_parse_error_carries_line_number():
    with pytest.raises(GaussCodeError) as exc:
        parse_link("name: x\nframings: 1\ncomponent: 1 -1\nsigns: 1:?\n")
    assert exc.value.line == 4


def test_linking_numbers():
    assert linking_number(catalog.hopf(3).diagram) == 3
    assert linking_number(catalog.hopf(5).diagram) == 5
    assert linking_number(catalog.hopf(-2).diagram) == -2
    assert linking_number(catalog.unlink().diagram) == 0
    assert linking_number(reverse_component(catalog.hopf(3).diagram, 1)) == -3
    with pytest.raises(ValueError):
        linking_number(catalog.hopf(3).diagram, 1, 1)


def test_writhe():
    assert writhe(catalog.hopf(2).diagram) == 4
    # direct sign sum over the braid closure's crossings
    assert writhe(catalog.hopf(2).diagram) == sum(catalog.hopf(2).diagram.signs)
    assert writhe(catalog.unknot().diagram) == 0


@given(seeds, sizes)
def test_linking_symmetric_and_mirror(seed, size):
    G = rlink(seed, size).diagram
    assert linking_number(G, 0, 1) == linking_number(G, 1, 0)
    assert writhe(mirror(G)) == -writhe(G)


@given(seeds, sizes, st.data())
def test_crossing_change(seed, size, data):
    G = rlink(seed, size).diagram
    k = data.draw(st.integers(1, G.n_crossings))
    H = crossing_change(G, k)
    valid(H)
    assert crossing_change(H, k) == G
    d = linking_number(H) - linking_number(G)
    if G.is_self_arrow(k):
        assert d == 0
    else:
        assert d == -G.sign(k)


def test_crossing_change_on_hopf1():
    G = catalog.hopf(1).diagram
    assert abs(linking_number(crossing_change(G, 1)) - linking_number(G)) == 1
    with pytest.raises(ValueError):
        crossing_change(G, 9)


@given(seeds, sizes, st.sampled_from([0, 1]))
def test_reverse_involution(seed, size, i):
    G = rlink(seed, size).diagram
    H = reverse_component(G, i)
    valid(H)
    assert reverse_component(H, i) == G
    assert linking_number(H) == -linking_number(G)


def test_smooth_fusion_hopf1():
    from cwkit.conway import conway
    K = smooth_fusion(catalog.hopf(1).diagram, 1)
    assert K.n_components == 1
    assert conway(K).coeffs == (1,)
    with pytest.raises(ValueError):
        smooth_fusion(catalog.trefoil().diagram, 1)


@given(seeds, sizes)
def test_base_moves_and_swap_keep_validity(seed, size):
    G = rlink(seed, size).diagram
    for g in range(len(G.components[0])):
        H = move_base_point(G, g)
        valid(H)
        assert linking_number(H) == linking_number(G)
    S = swap_components(G)
    valid(S)
    assert linking_number(S) == linking_number(G)
    with pytest.raises(ValueError):
        move_base_point(G, len(G.components[0]) + 3)


def test_r1_insert_delete_identity():
    G = catalog.trefoil().diagram
    G2 = move_base_point(G, 2)
    H = apply_r1_insert(G2, 0, 4, sign=-1, over_first=False)
    assert H.n_crossings == 4
    assert is_planar(H)
    new = [k for k in r1_sites(H)]
    assert len(new) == 1
    assert apply_r1_delete(H, new[0]) == G2
    with pytest.raises(MoveError):
        apply_r1_insert(G2, 0, 2)  # the base arc


def test_r2_and_r3_moves():
    G = catalog.hopf(2).diagram
    e1, e2 = [f for f in faces(G) if len(set(f.edges)) >= 2][0].edges[:2]
    e1, e2 = (e1, e2) if e1 != (0, 0) and e2 != (0, 0) else (e1, e2)
    try:
        H = apply_r2_insert(G, e1, e2)
    except MoveError:
        return
    assert H.n_crossings == G.n_crossings + 2
    assert is_planar(H)
    pairs = r2_sites(H)
    assert pairs
    back = apply_r2_delete(H, *pairs[-1])
    assert back.n_crossings == G.n_crossings


def test_r3_site_on_braid():
    # sigma1 sigma2 sigma1 has a triangle on which the third move applies
    from cwkit.catalog import BraidWord, braid_closure
    G = braid_closure(BraidWord(3, (1, 2, 1, 2, 2)))
    sites = r3_sites(move_base_point(G, 0))
    assert sites
    H = apply_r3(G, sites[0])
    valid(H)
    assert is_planar(H)


def test_invalid_r2_delete():
    with pytest.raises(MoveError):
        apply_r2_delete(catalog.trefoil().diagram, 1, 2)


@given(seeds, sizes, st.integers(0, 10 ** 6))
def test_random_walk_keeps_lk_and_planarity(seed, size, wseed):
    G = rlink(seed, size).diagram
    H = random_move_walk(G, wseed, 40)
    valid(H)
    assert is_planar(H)
    assert linking_number(H) == linking_number(G)


@given(seeds, sizes)
def test_braid_closures_planar(seed, size):
    assert is_planar(rlink(seed, size).diagram)


def test_nonplanar_code_detected():
    # the virtual trefoil: two crossings, interleaved over/under
    G = make_diagram([(1, -2, -1, 2)], {1: 1, 2: 1})
    assert not is_planar(G)


def test_sublink():
    G = catalog.rolfsen_8_2_11().diagram
    K = sublink(G, [1])
    assert K.n_components == 1
    valid(K)


def test_lobe_split_kink():
    G = catalog.hopf(2).diagram
    H = apply_r1_insert(G, 0, 2)
    k = r1_sites(H)[0]
    s = lobe_split(H, k)
    assert s.ell == 0
    assert s.k in (0, s.n)
    with pytest.raises(ValueError):
        lobe_split(G, 1)


def test_lobe_split_partition():
    L = catalog.random_link(11, 14, 2)
    G = L.diagram
    for k in range(1, G.n_crossings + 1):
        if not G.is_self_arrow(k):
            continue
        s = lobe_split(G, k)
        c = G.tail_of(k)[0]
        slots = {(c, i) for i in range(len(G.components[c]))} - {G.tail_of(k), G.head_of(k)}
        assert s.lobe_P | s.lobe_Pbar == slots
        assert not s.lobe_P & s.lobe_Pbar
