"""Standard polyhedral maps built from convex coordinates.

Rotations are read off the geometry: neighbours of a vertex are sorted by
angle around the outward radial direction, so all maps share one orientation.
"""

import math
from itertools import combinations

import numpy as np

from .combinatorics import CombPolyhedron, PolyClass, RotationSystem

__all__ = [
    "from_coordinates",
    "tetrahedron",
    "cube",
    "octahedron",
    "dodecahedron",
    "icosahedron",
    "cuboctahedron",
    "prism",
    "antiprism",
    "path_graph",
    "complete_graph",
    "ideal_octahedron",
    "ideal_antiprism",
    "compact_dodecahedron",
]

_PHI = (1.0 + math.sqrt(5.0)) / 2.0


def from_coordinates(points, edges):
    """Rotation system of a convex polytope centred at the origin."""
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    nbrs = [[] for _ in range(n)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    rows = []
    for v in range(n):
        normal = pts[v] / np.linalg.norm(pts[v])
        helper = np.array([1.0, 0.0, 0.0]) if abs(normal[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        e1 = np.cross(normal, helper)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(normal, e1)

        def angle(w, v=v, e1=e1, e2=e2):
            d = pts[w] - pts[v]
            return math.atan2(float(d @ e2), float(d @ e1))

        rows.append(tuple(sorted(nbrs[v], key=angle)))
    return RotationSystem(tuple(rows))


def _min_distance_edges(points, rel_tol=1e-6):
    pts = np.asarray(points, dtype=float)
    pairs = list(combinations(range(len(pts)), 2))
    dists = [np.linalg.norm(pts[a] - pts[b]) for a, b in pairs]
    dmin = min(dists)
    return [p for p, d in zip(pairs, dists) if d <= dmin * (1 + rel_tol)]


def _polytope(points):
    return from_coordinates(points, _min_distance_edges(points))


def tetrahedron():
    return _polytope([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)])


def cube():
    return _polytope([(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)])


def octahedron():
    pts = []
    for i in range(3):
        for s in (1, -1):
            p = [0, 0, 0]
            p[i] = s
            pts.append(p)
    return _polytope(pts)


def icosahedron():
    pts = []
    for a in (-1, 1):
        for b in (-_PHI, _PHI):
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    return _polytope(pts)


def dodecahedron():
    pts = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    for a in (-1 / _PHI, 1 / _PHI):
        for b in (-_PHI, _PHI):
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    return _polytope(pts)


def cuboctahedron():
    pts = set()
    for i, j in combinations(range(3), 2):
        for s in (-1, 1):
            for t in (-1, 1):
                p = [0, 0, 0]
                p[i], p[j] = s, t
                pts.add(tuple(p))
    return _polytope(sorted(pts))


def prism(n):
    """n-gonal prism (n >= 3)."""
    h = math.sin(math.pi / n)
    pts = [(math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n), s * h)
           for s in (1, -1) for i in range(n)]
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return from_coordinates(pts, edges)


def antiprism(n):
    """n-gonal antiprism (n >= 3); the triangular one is the octahedron."""
    h = 0.5
    pts = [(math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n), h) for i in range(n)]
    pts += [(math.cos(2 * math.pi * (i + 0.5) / n), math.sin(2 * math.pi * (i + 0.5) / n), -h)
            for i in range(n)]
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)] + [(i, n + (i - 1) % n) for i in range(n)]
    return from_coordinates(pts, edges)


def path_graph(n):
    rows = []
    for v in range(n):
        rows.append(tuple(w for w in (v - 1, v + 1) if 0 <= w < n))
    return RotationSystem(tuple(rows))


def complete_graph(n):
    """K_n with every rotation in increasing order (planar only for n <= 3)."""
    return RotationSystem(tuple(tuple(w for w in range(n) if w != v) for v in range(n)))


def ideal_octahedron():
    return CombPolyhedron.from_skeleton(octahedron(), PolyClass.IDEAL)


def ideal_antiprism(n):
    return CombPolyhedron.from_skeleton(antiprism(n), PolyClass.IDEAL)


def compact_dodecahedron():
    return CombPolyhedron.from_skeleton(dodecahedron(), PolyClass.COMPACT)
