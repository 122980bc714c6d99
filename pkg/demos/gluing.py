"""Doubling along a face and chains of dodecahedra.

Gluing two copies of a right-angled polyhedron along a face keeps every angle
right, so volumes add. The chain of 2k+1 dodecahedra has volume per vertex
drifting towards the compact upper slope.

    python demos/gluing.py
"""

from rightangled.bounds import best_upper_bound, compact_bounds_atkinson
from rightangled.catalog import compact_dodecahedron, ideal_antiprism, ideal_octahedron
from rightangled.gluing import chain_glue, double_compact, double_ideal
from rightangled.lobachevsky import v3
from rightangled.realization import realize
from rightangled.volume import volume

for name, P, double in (("octahedron", ideal_octahedron(), double_ideal),
                        ("square antiprism", ideal_antiprism(4), double_ideal),
                        ("dodecahedron", compact_dodecahedron(), double_compact)):
    face = max(range(P.face_count), key=lambda f: len(P.faces[f]))
    res = double(P, face)
    a, b = volume(realize(P)), volume(realize(res.polyhedron))
    print(f"{name:17s} V={P.vertex_count:2d} vol={a:.9f} -> V={res.polyhedron.vertex_count:2d} "
          f"vol={b:.9f} ratio={b / a:.12f}")

P = compact_dodecahedron()
adj = P.face_adjacency
far = next(g for g in range(P.face_count) if g and g not in adj[0] and not adj[g] & adj[0])
print("\nchains of dodecahedra")
for k in range(5):
    Q = chain_glue(P, 0, far, k).polyhedron
    vol = volume(realize(Q))
    upper = best_upper_bound(Q).value
    _, atk = compact_bounds_atkinson(Q.vertex_count)
    print(f"k={k} V={Q.vertex_count:3d} vol={vol:.6f} best upper={upper:.6f} "
          f"atkinson upper={atk.value:.6f} vol/V={vol / Q.vertex_count:.5f}")
print(f"slope of the improved compact bound: 5 v3 / 8 = {5 * v3() / 8:.5f}")
