import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from pytest import approx

from rightangled.bounds import (
    BoundKind,
    applicable_bounds,
    applicable_bounds_from_faces,
    best_upper_bound,
    bound_report,
    compact_adjacent_triple_bound,
    compact_bounds_atkinson,
    compact_face_pair_bound,
    compact_upper_improved,
    ideal_adjacent_triple_bound,
    ideal_bounds_atkinson,
    ideal_face_pair_bound,
    ideal_upper_improved,
)
from rightangled.catalog import compact_dodecahedron, ideal_antiprism, ideal_octahedron
from rightangled.combinatorics import check_compact_identity, check_ideal_identity
from rightangled.enumeration import enumerate_compact_candidates, enumerate_ideal_candidates
from rightangled.errors import BadHypothesis, BadV

V8 = 3.663862376708876
C = 5 * 1.014941606409653 / 8


def test_ideal_atkinson_examples():
    lo, hi = ideal_bounds_atkinson(6)
    assert lo.value == approx(V8, abs=1e-12) and hi.value == approx(V8, abs=1e-12)
    lo, hi = ideal_bounds_atkinson(9)
    assert lo.value == approx(6.411759, abs=1e-6)
    assert hi.value == approx(9.159656, abs=1e-6)
    _, hi = ideal_bounds_atkinson(8)
    assert hi.value == approx(7.327725, abs=1e-6) and hi.value >= 6.023046
    with pytest.raises(BadV):
        ideal_bounds_atkinson(5)


def test_ideal_improved_examples():
    assert ideal_upper_improved(9).value == approx(7.327725, abs=1e-6)
    assert ideal_upper_improved(10).value == approx(2.5 * V8, abs=1e-12)
    with pytest.raises(BadV):
        ideal_upper_improved(8)


def test_ideal_face_pair_examples():
    for V in (9, 15, 40):
        assert ideal_face_pair_bound(V, 5, 5).value == approx((V - 5) * V8 / 2, abs=1e-12)
    assert ideal_face_pair_bound(12, 4, 4).value == approx(14.655449, abs=1e-6)
    with pytest.raises(BadHypothesis):
        ideal_face_pair_bound(6, 4, 4)
    with pytest.raises(BadHypothesis):
        ideal_face_pair_bound(10, 3, 4)


def test_ideal_adjacent_triple_examples():
    for V in (9, 20):
        assert ideal_adjacent_triple_bound(V, 3, 6, 3).value == approx((V - 5) * V8 / 2, abs=1e-12)
        assert ideal_adjacent_triple_bound(V, 4, 4, 4).value == approx((V - 5) * V8 / 2, abs=1e-12)
        assert ideal_adjacent_triple_bound(V, 3, 3, 3).value == approx((V - 3.5) * V8 / 2, abs=1e-12)


def test_compact_atkinson_examples():
    lo, hi = compact_bounds_atkinson(20)
    assert lo.value == approx(1.373948, abs=1e-6)
    assert hi.value == approx(6.343385, abs=1e-6) and hi.value > 4.306208
    assert hi.strict and not lo.strict
    with pytest.raises(BadV):
        compact_bounds_atkinson(21)
    with pytest.raises(BadV):
        compact_bounds_atkinson(18)


def test_compact_improved_examples():
    assert compact_upper_improved(24).value == approx(6.343385, abs=1e-6)
    assert compact_upper_improved(46).value == approx(20.298832, abs=1e-6)
    assert compact_upper_improved(46).value >= 17.486616
    with pytest.raises(BadV):
        compact_upper_improved(20)


def test_compact_face_pair_and_triple_examples():
    for V in (40, 60):
        assert compact_face_pair_bound(V, 7, 7).value == approx((V - 14) * C, abs=1e-12)
        assert compact_adjacent_triple_bound(V, 5, 8, 5).value == approx((V - 14) * C, abs=1e-12)
        assert compact_adjacent_triple_bound(V, 6, 6, 6).value == approx((V - 14) * C, abs=1e-12)
        assert compact_adjacent_triple_bound(V, 5, 5, 5).value == approx((V - 11) * C, abs=1e-12)
    assert compact_face_pair_bound(40, 6, 6).value == approx(17.761479, abs=1e-6)
    with pytest.raises(BadHypothesis):
        compact_face_pair_bound(40, 5, 6)


def test_non_integer_v_rejected():
    with pytest.raises(BadV):
        ideal_bounds_atkinson(9.5)
    with pytest.raises(BadV):
        ideal_bounds_atkinson(True)


def test_best_upper_examples():
    octa = best_upper_bound(ideal_octahedron())
    assert octa.kind is BoundKind.IDEAL_UPPER_ATKINSON
    assert octa.value == approx(V8, abs=1e-12)
    dode = compact_dodecahedron()
    kinds = {b.kind for b in applicable_bounds(dode)}
    assert BoundKind.COMPACT_ADJACENT_TRIPLE in kinds
    best = best_upper_bound(dode)
    assert best.kind is BoundKind.COMPACT_ADJACENT_TRIPLE
    assert best.value == approx(5.709046, abs=1e-6) and best.value > 4.306208


def test_hexagon_gives_improved_bound():
    P = ideal_antiprism(6)
    assert best_upper_bound(P).value <= (P.vertex_count - 5) * V8 / 2 + 1e-12
    for P in enumerate_ideal_candidates(13):
        if max(P.face_vector) >= 6:
            assert best_upper_bound(P).value <= (P.vertex_count - 5) * V8 / 2 + 1e-12


def test_strictness_and_attainment():
    _, hi = compact_bounds_atkinson(20)
    assert not hi.satisfied_by(hi.value)
    assert hi.satisfied_by(hi.value - 1e-12)
    lo, up = ideal_bounds_atkinson(6)
    assert up.satisfied_by(up.value) and lo.satisfied_by(lo.value)
    assert up.attained_by(V8) and not up.attained_by(V8 - 1e-6)
    assert not lo.satisfied_by(lo.value - 1e-6)


def test_report_flags_violation():
    P = ideal_octahedron()
    good = bound_report(P, V8)
    assert good.satisfied and good.violations == []
    assert good.to_dict()["sandwich"] is True
    assert all(b["equality"] for b in good.to_dict()["bounds"] if b["kind"].endswith("atkinson"))
    bad = bound_report(P, V8 + 0.1)
    assert not bad.satisfied
    assert BoundKind.IDEAL_UPPER_ATKINSON in {b.kind for b in bad.violations}
    assert bound_report(P).to_dict()["sandwich"] is None


def _hypothesis_holds(P, b):
    """Re-check a bound's hypothesis directly on the map."""
    sizes = [len(f) for f in P.faces]
    if b.kind in (BoundKind.IDEAL_FACE_PAIR, BoundKind.COMPACT_FACE_PAIR):
        f1, f2 = b.witness
        floor = 4 if b.kind is BoundKind.IDEAL_FACE_PAIR else 6
        return f1 != f2 and sizes[f1] >= floor and sizes[f2] >= floor
    if b.kind in (BoundKind.IDEAL_ADJACENT_TRIPLE, BoundKind.COMPACT_ADJACENT_TRIPLE):
        f1, f2, f3 = b.witness
        adj = P.face_adjacency
        return f1 != f3 and f1 in adj[f2] and f3 in adj[f2]
    if "two faces with at least 5" in b.hypothesis:
        return sum(1 for s in sizes if s >= 5) >= 2
    if "face with at least 6" in b.hypothesis:
        return max(sizes) >= 6
    if "two faces with at least 7" in b.hypothesis:
        return sum(1 for s in sizes if s >= 7) >= 2
    if "face with at least 8" in b.hypothesis:
        return max(sizes) >= 8
    return True


def test_dispatcher_sound_on_corpus():
    polys = list(enumerate_ideal_candidates(14)) + list(enumerate_compact_candidates(32))
    for P in polys:
        for b in applicable_bounds(P):
            assert _hypothesis_holds(P, b), (b.kind, b.hypothesis)
            if b.witness and len(b.witness) == 3:
                ns = [len(P.faces[f]) for f in b.witness]
                expect = ((P.vertex_count + 1 - sum(ns) / 2) * V8 / 2
                          if b.kind is BoundKind.IDEAL_ADJACENT_TRIPLE
                          else (P.vertex_count - sum(ns) + 4) * C)
                assert b.value == approx(expect, abs=1e-12)


def test_dispatcher_triple_is_best_available():
    # the reported triple has the largest total size among all adjacent triples
    for P in enumerate_ideal_candidates(12):
        adj = P.face_adjacency
        sizes = [len(f) for f in P.faces]
        best = max(sizes[a] + sizes[b] + sizes[c]
                   for b in range(len(sizes)) for a in adj[b] for c in adj[b] if a != c)
        (t,) = [x for x in applicable_bounds(P) if x.kind is BoundKind.IDEAL_ADJACENT_TRIPLE]
        assert sum(sizes[f] for f in t.witness) == best


@st.composite
def ideal_face_vectors(draw):
    fv = {4: draw(st.integers(0, 30))}
    for k in range(5, 10):
        fv[k] = draw(st.integers(0, 3))
    fv[3] = 8 + sum((k - 4) * p for k, p in fv.items() if k >= 5)
    F = sum(fv.values())
    return F - 2, fv


@st.composite
def compact_face_vectors(draw):
    fv = {6: draw(st.integers(0, 60))}
    for k in range(7, 11):
        fv[k] = draw(st.integers(0, 3))
    fv[5] = 12 + sum((k - 6) * p for k, p in fv.items() if k >= 7)
    F = sum(fv.values())
    return 2 * F - 4, fv


def _sizes(fv):
    return [k for k, p in fv.items() for _ in range(p)]


def _dispatch(bounds, kind):
    return [b for b in bounds if b.kind is kind and not b.hypothesis.startswith(("ideal,", "compact,"))]


@given(ideal_face_vectors())
def test_ideal_dispatch_complete(data):
    V, fv = data
    assert check_ideal_identity(fv)
    assume(V >= 16)
    bounds = applicable_bounds_from_faces("ideal", V, _sizes(fv))
    hits = _dispatch(bounds, BoundKind.IDEAL_UPPER_IMPROVED)
    assert hits, fv
    for b in hits:
        assert b.value == approx((V - 5) * V8 / 2, abs=1e-12)


@given(compact_face_vectors())
def test_compact_dispatch_complete(data):
    V, fv = data
    assert check_compact_identity(fv)
    assume(V >= 48)
    bounds = applicable_bounds_from_faces("compact", V, _sizes(fv))
    hits = _dispatch(bounds, BoundKind.COMPACT_UPPER_IMPROVED)
    assert hits, fv
    for b in hits:
        assert b.value == approx((V - 14) * C, abs=1e-12)


@given(ideal_face_vectors())
def test_ideal_bounds_ordered(data):
    V, fv = data
    # a k-gon plus its two neighbours across opposite vertices need k + 2 vertices
    assume(V >= max(fv) + 2)
    bounds = applicable_bounds_from_faces("ideal", V, _sizes(fv))
    lower = [b for b in bounds if b.kind.is_lower]
    (lo,) = lower
    for b in bounds:
        if not b.kind.is_lower:
            assert b.value >= lo.value - 1e-12
        if b.kind is BoundKind.IDEAL_UPPER_IMPROVED:
            assert b.value <= (V - 4) * V8 / 2


@given(compact_face_vectors())
def test_compact_improved_below_atkinson(data):
    V, fv = data
    assume(V >= 24)
    bounds = applicable_bounds_from_faces("compact", V, _sizes(fv))
    up = next(b for b in bounds if b.kind is BoundKind.COMPACT_UPPER_ATKINSON)
    for b in bounds:
        if b.kind is BoundKind.COMPACT_UPPER_IMPROVED:
            assert b.value < up.value
    assert math.isclose(up.value - compact_upper_improved(V).value, 4 * C)
