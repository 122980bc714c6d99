"""Enumeration of combinatorial types.

Three generators feed the candidate streams:

* ``enumerate_triangulations`` grows all triangulations level by level through
  vertex splits (every triangulation on at least 5 vertices has a contractible
  edge, so every one is a split of a smaller one);
* ``polyhedral_graphs`` removes edges from triangulations while keeping
  3-connectivity;
* ``fill_triangulations`` builds triangulations with a prescribed minimum
  degree directly, by filling holes triangle by triangle around the oldest
  open vertex. Degree and curvature budgets prune it hard enough to reach
  the duals of compact polyhedra with 30-odd vertices.

Ideal candidates are medials of 3-connected maps with ``V`` edges; compact
candidates are duals of minimum-degree-5 triangulations without separating
3- and 4-cycles.
"""

from dataclasses import dataclass
from functools import lru_cache

from .combinatorics import (
    CombPolyhedron,
    PolyClass,
    RotationSystem,
    canonical_code,
    canonical_representative,
    dual,
    is_3_connected,
    is_pogorelov,
    medial,
    passes_ideal_prefilters,
)
from .errors import BadV

__all__ = [
    "EnumerationBudget",
    "enumerate_triangulations",
    "polyhedral_graphs",
    "fill_triangulations",
    "enumerate_ideal_candidates",
    "enumerate_compact_candidates",
    "enumerate_candidates",
]


@dataclass(frozen=True)
class EnumerationBudget:
    klass: PolyClass
    max_vertices: int
    parallelism: int = 1
    min_vertices: int = 0

    def __post_init__(self):
        klass = PolyClass.parse(self.klass)
        object.__setattr__(self, "klass", klass)
        floor = 6 if klass is PolyClass.IDEAL else 20
        if self.max_vertices < floor:
            raise BadV(f"max_vertices must be at least {floor} for {klass.value} polyhedra")
        if self.parallelism < 1:
            raise ValueError("parallelism must be positive")


# --- vertex splitting --------------------------------------------------------

def _tetrahedron():
    # rotations chosen so that every traced face is a triangle
    return RotationSystem(((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)))


def _split(rs, v, i, j):
    """Split ``v``: the new vertex takes the rotation arc from position i to j."""
    rows = [list(r) for r in rs.neighbors]
    row = rs.neighbors[v]
    d = len(row)
    x = len(rows)
    arc = [row[(i + k) % d] for k in range((j - i) % d + 1)]
    rest = [row[(j + k) % d] for k in range((i - j) % d + 1)]
    rows[v] = rest + [x]
    rows.append(arc + [v])
    wi, wj = row[i], row[j]
    for w in arc[1:-1]:
        rows[w][rows[w].index(v)] = x
    ri = rows[wi]
    ri.insert(ri.index(v), x)
    rj = rows[wj]
    rj.insert(rj.index(v) + 1, x)
    return RotationSystem(tuple(tuple(r) for r in rows))


@lru_cache(maxsize=None)
def _triangulation_level(n):
    if n < 4:
        raise BadV("triangulations need at least 4 vertices")
    if n == 4:
        t = _tetrahedron()
        return ((canonical_code(t), canonical_representative(t)),)
    found = {}
    for _, rs in _triangulation_level(n - 1):
        for v in range(rs.vertex_count):
            d = rs.degree(v)
            for i in range(d):
                for j in range(i + 1, d):
                    child = _split(rs, v, i, j)
                    code = canonical_code(child)
                    if code not in found:
                        found[code] = child
    return tuple((code, canonical_representative(found[code])) for code in sorted(found))


def enumerate_triangulations(n_vertices):
    """All simple triangulations of the sphere on ``n_vertices`` vertices.

    Each appears once up to isomorphism including reflection, ordered by
    canonical code.
    """
    for _, rs in _triangulation_level(n_vertices):
        yield rs


# --- 3-connected maps by edge deletion ------------------------------------

def _delete_edge(rs, u, v):
    rows = list(rs.neighbors)
    rows[u] = tuple(w for w in rows[u] if w != v)
    rows[v] = tuple(w for w in rows[v] if w != u)
    return RotationSystem(tuple(rows))


@lru_cache(maxsize=None)
def _polyhedral_level(n, m):
    top = 3 * n - 6
    if m > top or m < (3 * n + 1) // 2:
        return ()
    if m == top:
        return _triangulation_level(n)
    found = {}
    for _, rs in _polyhedral_level(n, m + 1):
        for u, v in rs.edges:
            if rs.degree(u) == 3 or rs.degree(v) == 3:
                continue
            child = _delete_edge(rs, u, v)
            code = canonical_code(child)
            if code in found:
                continue
            if is_3_connected(child):
                found[code] = child
    return tuple((code, canonical_representative(found[code])) for code in sorted(found))


def polyhedral_graphs(n_vertices, n_edges):
    """All 3-connected planar maps with the given vertex and edge counts."""
    for _, rs in _polyhedral_level(n_vertices, n_edges):
        yield rs


# --- direct construction with a minimum degree ----------------------------

class _Filler:
    """Depth-first hole filling; see :func:`fill_triangulations`."""

    def __init__(self, n_max, d0, irreducible):
        self.n_max = n_max
        self.d0 = d0
        self.irreducible = irreducible
        self.adj = [set() for _ in range(n_max)]
        self.tris = []
        self.closed = [False] * n_max
        self.occ = [0] * n_max
        self.out = []

    def run(self):
        d0 = self.d0
        for i in range(1, d0 + 1):
            j = i % d0 + 1
            self._edge(0, i)
            self._edge(i, j)
            self.tris.append((0, i, j))
        self.closed[0] = True
        walk = tuple(range(1, d0 + 1))
        for w in walk:
            self.occ[w] += 1
        self._rec([walk], d0 + 1)
        return self.out

    def _edge(self, a, b):
        self.adj[a].add(b)
        self.adj[b].add(a)

    def _unedge(self, a, b):
        self.adj[a].discard(b)
        self.adj[b].discard(a)

    def _slack(self, n):
        d0 = self.d0
        total = (self.n_max - n) * (6 - d0)
        for v in range(n):
            d = len(self.adj[v])
            total += 6 - (d if self.closed[v] else max(d0, d))
        return total - 12

    def _rec(self, holes, n):
        if not holes:
            self.out.append((n, list(self.tris)))
            return
        if self._slack(n) < 0:
            return
        v = min(w for w in range(n) if self.occ[w] > 0)
        for h, walk in enumerate(holes):
            if v in walk:
                break
        i = walk.index(v)
        m = len(walk)
        q = walk[(i + 1) % m]
        others = holes[:h] + holes[h + 1:]
        adj = self.adj

        # a new vertex inside the hole
        if n < self.n_max and not (self.irreducible and m <= 4):
            c = n
            self._edge(v, c)
            self._edge(q, c)
            self.tris.append((q, v, c))
            self.occ[c] = 1
            new_walk = walk[:i + 1] + (c,) + walk[i + 1:]
            self._rec(others + [new_walk], n + 1)
            self.occ[c] = 0
            self.tris.pop()
            self._unedge(v, c)
            self._unedge(q, c)

        for j in range(m):
            if j == i or j == (i + 1) % m:
                continue
            c = walk[j]
            if c == v or c == q:
                continue
            new_qc = j != (i + 2) % m
            new_vc = j != (i - 1) % m
            if new_qc and c in adj[q]:
                continue
            if new_vc and c in adj[v]:
                continue
            h1 = tuple(walk[(i + 1 + k) % m] for k in range((j - i - 1) % m + 1))
            h2 = tuple(walk[(j + k) % m] for k in range((i - j) % m + 1))
            parts = [p for p in (h1, h2) if len(p) > 2]
            for w in walk:
                self.occ[w] -= 1
            for p in parts:
                for w in p:
                    self.occ[w] += 1
            newly_closed = [w for w in set(walk) if self.occ[w] == 0]
            if new_qc:
                self._edge(q, c)
            if new_vc:
                self._edge(v, c)
            ok = all(len(adj[w]) >= self.d0 for w in newly_closed)
            if ok:
                for w in newly_closed:
                    self.closed[w] = True
                self.tris.append((q, v, c))
                self._rec(others + parts, n)
                self.tris.pop()
                for w in newly_closed:
                    self.closed[w] = False
            if new_qc:
                self._unedge(q, c)
            if new_vc:
                self._unedge(v, c)
            for p in parts:
                for w in p:
                    self.occ[w] -= 1
            for w in walk:
                self.occ[w] += 1


def _rotation_from_triangles(n, tris):
    nxt = [dict() for _ in range(n)]
    for a, b, c in tris:
        nxt[a][b] = c
        nxt[b][c] = a
        nxt[c][a] = b
    rows = []
    for v in range(n):
        start = min(nxt[v])
        row = [start]
        w = nxt[v][start]
        while w != start:
            row.append(w)
            w = nxt[v][w]
        rows.append(tuple(row))
    return RotationSystem(tuple(rows))


def fill_triangulations(n_max, min_degree=3, irreducible=False):
    """Triangulations with at most ``n_max`` vertices and minimum degree >= ``min_degree``.

    With ``irreducible`` set, holes bounded by 3- or 4-cycles never receive
    interior vertices, which discards triangulations with separating 3- or
    4-cycles early (callers still filter). Returns a dict mapping vertex
    count to a list of canonical representatives sorted by canonical code.
    """
    if not 3 <= min_degree <= 5:
        raise ValueError("minimum degree must be 3, 4 or 5")
    found = {}
    for d0 in range(min_degree, 6):
        if d0 + 1 > n_max:
            break
        for n, tris in _Filler(n_max, d0, irreducible).run():
            rs = _rotation_from_triangles(n, tris)
            code = canonical_code(rs)
            if code not in found:
                found[code] = rs
    by_n = {}
    for code in sorted(found):
        rs = found[code]
        by_n.setdefault(rs.vertex_count, []).append(canonical_representative(rs))
    return by_n


# --- candidate streams -------------------------------------------------------

def _ideal_for_v(V):
    found = {}
    n_lo = -(-(V + 6) // 3)
    n_hi = (V + 2) // 2
    for n in range(n_lo, n_hi + 1):
        for g in polyhedral_graphs(n, V):
            m = medial(g)
            code = canonical_code(m)
            if code not in found:
                found[code] = m
    out = []
    for code in sorted(found):
        poly = CombPolyhedron.from_skeleton(canonical_representative(found[code]), PolyClass.IDEAL)
        if passes_ideal_prefilters(poly):
            out.append(poly)
    return out


def enumerate_ideal_candidates(budget):
    """Ideal candidates with ``V <= budget.max_vertices``, sorted by (V, code)."""
    if not isinstance(budget, EnumerationBudget):
        budget = EnumerationBudget(PolyClass.IDEAL, int(budget))
    if budget.klass is not PolyClass.IDEAL:
        raise ValueError("budget is not for ideal polyhedra")
    for V in range(max(6, budget.min_vertices), budget.max_vertices + 1):
        yield from _ideal_for_v(V)


@lru_cache(maxsize=None)
def _compact_upto(max_faces):
    tris = fill_triangulations(max_faces, min_degree=5, irreducible=True)
    out = []
    for n in sorted(tris):
        for t in tris[n]:
            poly = CombPolyhedron.from_skeleton(dual(t), PolyClass.COMPACT)
            if is_pogorelov(poly):
                rep = canonical_representative(poly.skeleton)
                out.append(CombPolyhedron.from_skeleton(rep, PolyClass.COMPACT))
    out.sort(key=lambda p: (p.vertex_count, canonical_code(p)))
    return tuple(out)


def enumerate_compact_candidates(budget):
    """Pogorelov maps with ``V <= budget.max_vertices``, sorted by (V, code)."""
    if not isinstance(budget, EnumerationBudget):
        budget = EnumerationBudget(PolyClass.COMPACT, int(budget))
    if budget.klass is not PolyClass.COMPACT:
        raise ValueError("budget is not for compact polyhedra")
    max_faces = budget.max_vertices // 2 + 2
    for poly in _compact_upto(max_faces):
        if budget.min_vertices <= poly.vertex_count <= budget.max_vertices:
            yield poly


def enumerate_candidates(budget):
    if budget.klass is PolyClass.IDEAL:
        return enumerate_ideal_candidates(budget)
    return enumerate_compact_candidates(budget)
