import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import cyclic_edge_cuts, to_networkx
from rightangled.catalog import (
    antiprism,
    complete_graph,
    cube,
    cuboctahedron,
    dodecahedron,
    icosahedron,
    octahedron,
    path_graph,
    prism,
    tetrahedron,
)
from rightangled.combinatorics import (
    CanonicalCode,
    CombPolyhedron,
    PolyClass,
    RotationSystem,
    canonical_code,
    canonical_relabeling,
    canonical_representative,
    check_compact_identity,
    check_ideal_identity,
    dual,
    face_vector,
    find_adjacent_triple,
    find_large_face_pair,
    has_prismatic_circuit,
    is_3_connected,
    is_pogorelov,
    medial,
    passes_ideal_prefilters,
    trace_faces,
)
from rightangled.enumeration import enumerate_triangulations
from rightangled.errors import InvalidMap, NonPlanar, WrongClass
from rightangled.gluing import chain_glue

SOLIDS = [tetrahedron, cube, octahedron, dodecahedron, icosahedron, cuboctahedron]


def _euler(rs):
    return rs.vertex_count - rs.edge_count + len(rs.faces)


# --- rotation systems and faces ---------------------------------------------

def test_face_counts():
    assert [len(f) for f in octahedron().faces] == [3] * 8
    assert [len(f) for f in dodecahedron().faces] == [5] * 12


@pytest.mark.parametrize("make", SOLIDS)
def test_every_dart_on_one_face(make):
    rs = make()
    darts = [(f[i], f[(i + 1) % len(f)]) for f in rs.faces for i in range(len(f))]
    assert len(darts) == len(set(darts)) == 2 * rs.edge_count
    assert _euler(rs) == 2


@pytest.mark.parametrize("make", SOLIDS)
def test_faces_match_networkx_embedding(make):
    rs = make()
    emb = nx.PlanarEmbedding()
    for v, row in enumerate(rs.neighbors):
        prev = None
        for w in row:
            emb.add_half_edge_ccw(v, w, prev) if prev is not None else emb.add_half_edge_first(v, w)
            prev = w
    emb.check_structure()
    seen = set()
    ours = {frozenset(f) for f in rs.faces}
    theirs = set()
    for v, w in emb.edges():
        if (v, w) not in seen:
            theirs.add(frozenset(emb.traverse_face(v, w, mark_half_edges=seen)))
    assert ours == theirs


def test_k5_nonplanar_for_every_rotation():
    base = complete_graph(5).neighbors
    orders = []
    for v, row in enumerate(base):
        first, rest = row[0], row[1:]
        orders.append([(first,) + p for p in itertools.permutations(rest)])
    count = 0
    for rows in itertools.product(*orders):
        with pytest.raises(NonPlanar):
            trace_faces(RotationSystem(rows))
        count += 1
    assert count == 6 ** 5


def test_k33_nonplanar_for_every_rotation():
    left, right = (0, 1, 2), (3, 4, 5)
    orders = [[(a,) + p for p in itertools.permutations(b[1:])] for a, b in
              [(right[0], right)] * 3 + [(left[0], left)] * 3]
    for rows in itertools.product(*orders):
        with pytest.raises(NonPlanar):
            trace_faces(RotationSystem(rows))


@pytest.mark.parametrize("rows", [
    ((1,), ()),  # asymmetric
    ((0, 1), (0,)),  # loop
    ((1, 1), (0, 0)),  # parallel edges
    ((1,), (0,), (3,), (2,)),  # disconnected
    ((5,), (0,)),  # out of range
    (),
])
def test_invalid_rotation_systems(rows):
    with pytest.raises(InvalidMap):
        RotationSystem(rows)


def test_class_inference():
    assert CombPolyhedron.from_skeleton(octahedron()).klass is PolyClass.IDEAL
    assert CombPolyhedron.from_skeleton(dodecahedron()).klass is PolyClass.COMPACT
    with pytest.raises(InvalidMap):
        CombPolyhedron.from_skeleton(icosahedron())
    with pytest.raises(InvalidMap):
        CombPolyhedron.from_skeleton(cube(), PolyClass.IDEAL)


def test_face_adjacency_and_vertex_faces():
    P = CombPolyhedron.from_skeleton(dodecahedron())
    assert all(len(a) == 5 for a in P.face_adjacency)
    for v in range(P.vertex_count):
        fs = P.vertex_faces(v)
        assert len(set(fs)) == 3
        for i in range(3):
            assert fs[(i + 1) % 3] in P.face_adjacency[fs[i]]
    u, v = P.skeleton.edges[0]
    f, g = P.edge_faces(u, v)
    assert f != g and g in P.face_adjacency[f]


# --- face vectors and identities ---------------------------------------------

def test_face_vectors():
    assert face_vector(CombPolyhedron.from_skeleton(octahedron())) == {3: 8}
    assert face_vector(antiprism(4)) == {3: 8, 4: 2}
    assert face_vector(dodecahedron()) == {5: 12}


def test_identity_examples():
    assert check_ideal_identity({3: 8})
    assert check_ideal_identity({3: 8, 4: 2})
    assert check_compact_identity({5: 12})
    assert not check_ideal_identity({3: 7, 4: 3})
    assert not check_compact_identity({5: 11, 6: 3})


@given(st.integers(min_value=0, max_value=200))
def test_identity_families(p):
    assert check_ideal_identity({3: 9, 4: p, 5: 1})
    assert check_compact_identity({5: 12, 6: p})
    assert check_compact_identity({5: 13, 6: p, 7: 1})


def test_identity_class_checked():
    with pytest.raises(WrongClass):
        check_compact_identity(CombPolyhedron.from_skeleton(octahedron()))
    with pytest.raises(WrongClass):
        check_ideal_identity(CombPolyhedron.from_skeleton(dodecahedron()))


@pytest.mark.parametrize("n", [3, 4, 5, 7, 12])
def test_antiprism_medials_satisfy_ideal_identity(n):
    P = CombPolyhedron.from_skeleton(antiprism(n))
    assert P.face_vector == ({3: 8} if n == 3 else {3: 2 * n, n: 2})
    assert check_ideal_identity(P)


# --- medial and dual -------------------------------------------------------------

def test_medial_examples():
    assert canonical_code(medial(tetrahedron())) == canonical_code(octahedron())
    assert canonical_code(medial(cube())) == canonical_code(cuboctahedron())
    assert medial(cube()).vertex_count == 12


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_medial_is_4_regular_and_self_dual(n):
    for t in enumerate_triangulations(n):
        m = medial(t)
        assert set(m.degrees()) == {4}
        assert m.vertex_count == t.edge_count
        assert _euler(m) == 2
        assert canonical_code(m) == canonical_code(medial(dual(t)))


def test_dual_examples():
    assert canonical_code(dual(dodecahedron())) == canonical_code(icosahedron())
    assert canonical_code(dual(cube())) == canonical_code(octahedron())
    assert canonical_code(dual(tetrahedron())) == canonical_code(tetrahedron())


@pytest.mark.parametrize("n", [6, 7, 8])
def test_dual_involution(n):
    for t in enumerate_triangulations(n):
        d = dual(t)
        assert d.vertex_count == len(t.faces)
        assert set(d.degrees()) == {3}
        assert canonical_code(dual(d)) == canonical_code(t)


# --- connectivity and prismatic circuits ------------------------------------------

def test_connectivity_examples():
    P = CombPolyhedron.from_skeleton(dodecahedron())
    assert is_3_connected(P)
    assert not has_prismatic_circuit(P, 3)
    assert not has_prismatic_circuit(P, 4)
    assert is_pogorelov(P)
    assert not is_3_connected(path_graph(5))


@pytest.mark.parametrize("k", [3, 4, 5, 6, 7])
def test_prism_belt_is_prismatic(k):
    P = CombPolyhedron.from_skeleton(prism(k))
    assert has_prismatic_circuit(P, k)
    assert not is_pogorelov(P)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=5, max_value=9), st.randoms(use_true_random=False))
def test_3_connectivity_matches_networkx(n, rnd):
    tris = list(enumerate_triangulations(n))
    rs = rnd.choice(tris)
    # delete random edges; the inherited rotations stay planar
    rows = [list(r) for r in rs.neighbors]
    for u, v in rnd.sample(list(rs.edges), rnd.randint(0, rs.edge_count // 2)):
        rows[u].remove(v)
        rows[v].remove(u)
        try:
            RotationSystem(tuple(tuple(r) for r in rows))
        except InvalidMap:
            rows[u].append(v)
            rows[v].append(u)
            break
    try:
        sub = RotationSystem(tuple(tuple(r) for r in rows))
    except InvalidMap:
        return
    g = to_networkx(sub)
    expected = g.number_of_nodes() >= 4 and nx.node_connectivity(g) >= 3
    assert is_3_connected(sub) == expected


def _cubic_maps(n_max):
    for n in range(4, n_max + 1):
        for t in enumerate_triangulations(n):
            yield CombPolyhedron.from_skeleton(dual(t), PolyClass.COMPACT)


def _prismatic_vs_cyclic_cuts(n_max):
    for P in _cubic_maps(n_max):
        for k in (3, 4):
            assert has_prismatic_circuit(P, k) == bool(cyclic_edge_cuts(P.skeleton, k)), (P.face_vector, k)


def test_prismatic_circuits_match_cyclic_edge_cuts():
    _prismatic_vs_cyclic_cuts(8)


@pytest.mark.slow
def test_prismatic_circuits_match_cyclic_edge_cuts_larger():
    _prismatic_vs_cyclic_cuts(9)


def test_ideal_prefilters():
    assert passes_ideal_prefilters(octahedron())
    assert passes_ideal_prefilters(antiprism(4))
    assert not passes_ideal_prefilters(cube())
    assert passes_ideal_prefilters(cuboctahedron())


# --- canonical codes --------------------------------------------------------------

@settings(max_examples=50, deadline=None)
@given(st.sampled_from(SOLIDS + [lambda: antiprism(5), lambda: prism(6)]), st.randoms(use_true_random=False))
def test_code_invariant_under_relabeling(make, rnd):
    rs = make()
    perm = list(range(rs.vertex_count))
    rnd.shuffle(perm)
    other = rs.relabel(perm)
    assert canonical_code(other) == canonical_code(rs)
    assert canonical_code(other.mirror()) == canonical_code(rs)


def test_distinct_maps_distinct_codes():
    assert canonical_code(octahedron()) != canonical_code(antiprism(4))
    for n in (7, 8, 9):
        tris = list(enumerate_triangulations(n))
        codes = {canonical_code(t) for t in tris}
        assert len(codes) == len(tris)


@pytest.mark.parametrize("n", [7, 8])
def test_codes_agree_with_graph_isomorphism(n):
    # triangulations are 3-connected, so isomorphic graphs give equal maps up to mirroring
    tris = list(enumerate_triangulations(n))
    graphs = [to_networkx(t) for t in tris]
    for i, j in itertools.combinations(range(len(tris)), 2):
        assert not nx.is_isomorphic(graphs[i], graphs[j])


def test_map_and_mirror_share_representative():
    for t in enumerate_triangulations(9):
        assert canonical_representative(t) == canonical_representative(t.mirror())
        perm, _ = canonical_relabeling(t)
        assert sorted(perm) == list(range(t.vertex_count))


def test_canonical_representative_is_fixed_point():
    rnd = random.Random(0)
    for make in SOLIDS:
        rs = make()
        perm = list(range(rs.vertex_count))
        rnd.shuffle(perm)
        rep = canonical_representative(rs.relabel(perm))
        assert canonical_representative(rep) == rep
        assert canonical_code(rep) == canonical_code(rs)


def test_code_round_trip():
    code = canonical_code(dodecahedron())
    assert CanonicalCode.fromhex(code.hex()) == code
    assert str(code) == code.hex()


# --- face patterns ------------------------------------------------------------------

def test_face_pattern_examples():
    dode = CombPolyhedron.from_skeleton(dodecahedron())
    f1, f2, f3 = find_adjacent_triple(dode, 5, 5, 5)
    assert f1 != f3 and {f1, f3} <= dode.face_adjacency[f2]
    octa = CombPolyhedron.from_skeleton(octahedron())
    assert find_large_face_pair(octa, 5, 5) is None
    anti = CombPolyhedron.from_skeleton(antiprism(6))
    f1, f2 = find_large_face_pair(anti, 5, 5)
    assert len(anti.faces[f1]) == len(anti.faces[f2]) == 6


@pytest.mark.parametrize("k", [2, 3])
def test_many_hexagons_give_hexagon_triple(k):
    dode = CombPolyhedron.from_skeleton(dodecahedron(), PolyClass.COMPACT)
    adj = dode.face_adjacency
    # the opposite face shares no neighbour with face 0, so no face merges twice
    far = next(g for g in range(1, 12) if g not in adj[0] and not adj[g] & adj[0])
    P = chain_glue(dode, 0, far, k).polyhedron
    fv = P.face_vector
    assert set(fv) == {5, 6} and fv[5] == 12 and fv[6] >= 13
    f1, f2, f3 = find_adjacent_triple(P, 6, 6, 6)
    assert all(len(P.faces[f]) == 6 for f in (f1, f2, f3))
