"""Polyhedra as rotation systems on the sphere.

A :class:`RotationSystem` stores, for every vertex, the cyclic order of its
neighbours. Faces are traced by the rule "arrive at ``v`` along ``u -> v``,
leave along the neighbour that follows ``u`` in the rotation of ``v``"; with
this rule every dart lies on exactly one face. Reversing every rotation gives
the mirror image.
"""

from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations

from .errors import InvalidMap, NonPlanar, WrongClass

__all__ = [
    "PolyClass",
    "RotationSystem",
    "CombPolyhedron",
    "CanonicalCode",
    "trace_faces",
    "face_vector",
    "check_ideal_identity",
    "check_compact_identity",
    "medial",
    "dual",
    "mirror",
    "is_3_connected",
    "has_prismatic_circuit",
    "canonical_code",
    "find_large_face_pair",
    "find_adjacent_triple",
    "passes_ideal_prefilters",
    "is_pogorelov",
]


class PolyClass(Enum):
    IDEAL = "ideal"
    COMPACT = "compact"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic neighbour orders of a simple connected plane graph."""

    neighbors: tuple

    def __post_init__(self):
        nbrs = tuple(tuple(int(w) for w in row) for row in self.neighbors)
        object.__setattr__(self, "neighbors", nbrs)
        n = len(nbrs)
        if n == 0:
            raise InvalidMap("empty rotation system")
        for v, row in enumerate(nbrs):
            if len(set(row)) != len(row):
                raise InvalidMap(f"parallel edges at vertex {v}")
            for w in row:
                if w == v:
                    raise InvalidMap(f"loop at vertex {v}")
                if not 0 <= w < n:
                    raise InvalidMap(f"vertex {v} has neighbour {w} out of range")
                if v not in self._pos[w]:
                    raise InvalidMap(f"edge {v}-{w} is not symmetric")
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for w in nbrs[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != n:
            raise InvalidMap("graph is disconnected")

    @cached_property
    def _pos(self):
        return tuple({w: i for i, w in enumerate(row)} for row in self.neighbors)

    @property
    def vertex_count(self):
        return len(self.neighbors)

    @cached_property
    def edge_count(self):
        return sum(len(row) for row in self.neighbors) // 2

    def degree(self, v):
        return len(self.neighbors[v])

    def degrees(self):
        return [len(row) for row in self.neighbors]

    @cached_property
    def edges(self):
        """Undirected edges as sorted ``(u, v)`` pairs, ``u < v``."""
        return tuple(sorted((v, w) for v, row in enumerate(self.neighbors) for w in row if v < w))

    def adjacent(self, u, v):
        return v in self._pos[u]

    def succ(self, v, u):
        """Neighbour of ``v`` following ``u`` in the rotation at ``v``."""
        row = self.neighbors[v]
        return row[(self._pos[v][u] + 1) % len(row)]

    def pred(self, v, u):
        row = self.neighbors[v]
        return row[(self._pos[v][u] - 1) % len(row)]

    def relabel(self, perm):
        """Rename vertex ``v`` to ``perm[v]``."""
        n = self.vertex_count
        rows = [None] * n
        for v, row in enumerate(self.neighbors):
            rows[perm[v]] = tuple(perm[w] for w in row)
        return RotationSystem(tuple(rows))

    def mirror(self):
        return RotationSystem(tuple(tuple(reversed(row)) for row in self.neighbors))

    @cached_property
    def faces(self):
        return trace_faces(self)


def _trace(rs):
    faces = []
    dart_face = {}
    for v, row in enumerate(rs.neighbors):
        for w in row:
            if (v, w) in dart_face:
                continue
            fid = len(faces)
            face = []
            a, b = v, w
            while (a, b) not in dart_face:
                dart_face[(a, b)] = fid
                face.append(a)
                a, b = b, rs.succ(b, a)
            if (a, b) != (v, w):
                raise NonPlanar("face tracing did not close up")
            faces.append(tuple(face))
    return faces, dart_face


def trace_faces(skeleton):
    """Faces of the embedding as cyclic vertex tuples.

    Raises :class:`NonPlanar` if the traced surface is not a sphere.
    """
    faces, _ = _trace(skeleton)
    chi = skeleton.vertex_count - skeleton.edge_count + len(faces)
    if chi != 2:
        raise NonPlanar(f"Euler characteristic {chi}, expected 2")
    return tuple(faces)


def _dart_faces(skeleton):
    return _trace(skeleton)[1]


@dataclass(frozen=True)
class CombPolyhedron:
    """A rotation system together with its faces and polyhedron class."""

    skeleton: RotationSystem
    faces: tuple
    klass: PolyClass

    @classmethod
    def from_skeleton(cls, skeleton, klass=None):
        if not isinstance(skeleton, RotationSystem):
            skeleton = RotationSystem(skeleton)
        degs = set(skeleton.degrees())
        if klass is None:
            if degs == {4}:
                klass = PolyClass.IDEAL
            elif degs == {3}:
                klass = PolyClass.COMPACT
            else:
                raise InvalidMap(f"degrees {sorted(degs)} fit neither class")
        klass = PolyClass.parse(klass)
        faces = trace_faces(skeleton)
        poly = cls(skeleton, faces, klass)
        poly.check_invariants()
        return poly

    def check_invariants(self):
        V, E, F = self.vertex_count, self.edge_count, len(self.faces)
        degs = set(self.skeleton.degrees())
        if self.klass is PolyClass.IDEAL:
            if degs != {4} or V != F - 2:
                raise InvalidMap(f"not a 4-regular spherical map (V={V}, F={F})")
        else:
            if degs != {3} or 2 * F != V + 4:
                raise InvalidMap(f"not a cubic spherical map (V={V}, F={F})")
        fv = self.face_vector
        if sum(fv.values()) != F or sum(k * p for k, p in fv.items()) != 2 * E:
            raise InvalidMap("face vector does not add up")

    @property
    def vertex_count(self):
        return self.skeleton.vertex_count

    @property
    def edge_count(self):
        return self.skeleton.edge_count

    @property
    def face_count(self):
        return len(self.faces)

    @cached_property
    def face_vector(self):
        return dict(sorted(Counter(len(f) for f in self.faces).items()))

    @cached_property
    def dart_face(self):
        """Map from dart ``(u, v)`` to the index of the face it bounds."""
        return _dart_faces(self.skeleton)

    @cached_property
    def face_adjacency(self):
        """For each face, the set of faces sharing an edge with it."""
        adj = [set() for _ in self.faces]
        for (u, v), f in self.dart_face.items():
            g = self.dart_face[(v, u)]
            adj[f].add(g)
        return tuple(frozenset(s) for s in adj)

    def edge_faces(self, u, v):
        """The two faces on either side of edge ``u-v``."""
        return self.dart_face[(u, v)], self.dart_face[(v, u)]

    def vertex_faces(self, v):
        """Faces around ``v``; consecutive entries share an edge at ``v``."""
        return tuple(self.dart_face[(v, w)] for w in self.skeleton.neighbors[v])

    @cached_property
    def face_vertex_sets(self):
        return tuple(frozenset(f) for f in self.faces)

    def mirror(self):
        return CombPolyhedron.from_skeleton(self.skeleton.mirror(), self.klass)


def _skeleton(obj):
    return obj.skeleton if isinstance(obj, CombPolyhedron) else obj


def mirror(obj):
    if isinstance(obj, CombPolyhedron):
        return obj.mirror()
    return obj.mirror()


def face_vector(poly):
    """Counts ``{k: p_k}`` of k-gonal faces."""
    if isinstance(poly, CombPolyhedron):
        return dict(poly.face_vector)
    return dict(sorted(Counter(len(f) for f in trace_faces(poly)).items()))


def _as_face_vector(obj):
    if isinstance(obj, CombPolyhedron):
        return obj.face_vector, obj.klass
    return dict(obj), None


def check_ideal_identity(poly):
    """True iff p_3 = 8 + Σ_{k>=5} (k-4) p_k.

    Accepts a polyhedron or a bare face-vector mapping.
    """
    fv, klass = _as_face_vector(poly)
    if klass is not None and klass is not PolyClass.IDEAL:
        raise WrongClass("identity applies to ideal polyhedra")
    return fv.get(3, 0) == 8 + sum((k - 4) * p for k, p in fv.items() if k >= 5)


def check_compact_identity(poly):
    """True iff p_5 = 12 + Σ_{k>=7} (k-6) p_k."""
    fv, klass = _as_face_vector(poly)
    if klass is not None and klass is not PolyClass.COMPACT:
        raise WrongClass("identity applies to compact polyhedra")
    return fv.get(5, 0) == 12 + sum((k - 6) * p for k, p in fv.items() if k >= 7)


def medial(graph):
    """Medial map: one vertex per edge, joined when consecutive around a face."""
    rs = _skeleton(graph)
    index = {e: i for i, e in enumerate(rs.edges)}

    def eid(a, b):
        return index[(a, b) if a < b else (b, a)]

    rows = []
    for u, v in rs.edges:
        rows.append((
            eid(v, rs.pred(v, u)),
            eid(u, rs.succ(u, v)),
            eid(u, rs.pred(u, v)),
            eid(v, rs.succ(v, u)),
        ))
    return RotationSystem(tuple(rows))


def dual(graph):
    """Dual map: one vertex per face, rotation following the face boundary."""
    rs = _skeleton(graph)
    if isinstance(graph, CombPolyhedron):
        faces, dart_face = graph.faces, graph.dart_face
    else:
        faces, dart_face = _trace(rs)
    rows = []
    for face in faces:
        k = len(face)
        rows.append(tuple(dart_face[(face[(i + 1) % k], face[i])] for i in range(k)))
    return RotationSystem(tuple(rows))


def _connected_without(rs, removed):
    n = rs.vertex_count
    start = next(v for v in range(n) if v not in removed)
    seen = set(removed)
    seen.add(start)
    todo = [start]
    while todo:
        v = todo.pop()
        for w in rs.neighbors[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == n


def is_3_connected(graph):
    """True iff at least 4 vertices and no separating set of at most 2 vertices."""
    rs = _skeleton(graph)
    n = rs.vertex_count
    if n < 4:
        return False
    for a in range(n):
        if not _connected_without(rs, {a}):
            return False
    for a, b in combinations(range(n), 2):
        if not _connected_without(rs, {a, b}):
            return False
    return True


def _simple_cycles(adj, k):
    """Simple k-cycles of a graph given as adjacency sets, each reported once."""
    n = len(adj)
    out = []
    for s in range(n):
        # s is the smallest vertex of the cycle
        stack = [(s, (s,))]
        while stack:
            v, path = stack.pop()
            if len(path) == k:
                if s in adj[v] and path[1] < path[-1]:
                    out.append(path)
                continue
            for w in adj[v]:
                if w > s and w not in path:
                    stack.append((w, path + (w,)))
    return out


def _components_without_edges(rs, cut):
    comp = [-1] * rs.vertex_count
    c = 0
    for s in range(rs.vertex_count):
        if comp[s] != -1:
            continue
        comp[s] = c
        todo = [s]
        while todo:
            v = todo.pop()
            for w in rs.neighbors[v]:
                if comp[w] == -1 and frozenset((v, w)) not in cut:
                    comp[w] = c
                    todo.append(w)
        c += 1
    return comp, c


def prismatic_circuits(poly, k):
    """All prismatic k-circuits of ``poly`` as tuples of face indices.

    A circuit is a cycle of k distinct faces, consecutive ones sharing an edge,
    such that the closed curve crossing those shared edges has at least one
    face strictly on each side.
    """
    if not isinstance(poly, CombPolyhedron):
        poly = CombPolyhedron(poly, trace_faces(poly), PolyClass.COMPACT)
    rs = poly.skeleton
    shared = {}
    for (u, v), f in poly.dart_face.items():
        g = poly.dart_face[(v, u)]
        shared.setdefault((f, g), []).append(frozenset((u, v)))
    found = []
    for cyc in _simple_cycles(poly.face_adjacency, k):
        choices = [shared[(cyc[i], cyc[(i + 1) % k])] for i in range(k)]
        for crossed in _product(choices):
            cut = set(crossed)
            if len(cut) != k:
                continue
            comp, ncomp = _components_without_edges(rs, cut)
            if ncomp < 2:
                continue
            in_cycle = set(cyc)
            sides = Counter()
            for fid, face in enumerate(poly.faces):
                if fid not in in_cycle:
                    sides[comp[face[0]]] += 1
            if sum(1 for c in sides.values() if c > 0) >= 2:
                found.append(cyc)
                break
    return found


def _product(choices):
    if not choices:
        yield ()
        return
    for first in choices[0]:
        for rest in _product(choices[1:]):
            yield (first,) + rest


def has_prismatic_circuit(poly, k):
    """True iff ``poly`` has a prismatic circuit of length ``k``."""
    return bool(prismatic_circuits(poly, k))


def passes_ideal_prefilters(poly):
    """Necessary conditions for an ideal right-angled realization."""
    rs = _skeleton(poly)
    if set(rs.degrees()) != {4}:
        return False
    if not isinstance(poly, CombPolyhedron):
        poly = CombPolyhedron.from_skeleton(rs, PolyClass.IDEAL)
    return is_3_connected(rs) and not has_prismatic_circuit(poly, 4)


def is_pogorelov(poly):
    """Cubic, 3-connected, faces at least pentagons, no prismatic 3-/4-circuits."""
    rs = _skeleton(poly)
    if set(rs.degrees()) != {3}:
        return False
    if not isinstance(poly, CombPolyhedron):
        poly = CombPolyhedron.from_skeleton(rs, PolyClass.COMPACT)
    if min(len(f) for f in poly.faces) < 5:
        return False
    if not is_3_connected(rs):
        return False
    return not has_prismatic_circuit(poly, 3) and not has_prismatic_circuit(poly, 4)


# --- canonical codes -------------------------------------------------------

@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Isomorphism invariant of an embedded graph, mirror images identified."""

    data: bytes

    def hex(self):
        return self.data.hex()

    @classmethod
    def fromhex(cls, text):
        return cls(bytes.fromhex(text))

    def __str__(self):
        return self.hex()


def _bfs_code(nbrs, pos, v0, w0, forward):
    n = len(nbrs)
    label = [0] * n
    entry = [0] * n
    label[v0] = 1
    entry[v0] = w0
    order = [v0]
    nxt = 2
    code = []
    step = 1 if forward else -1
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        row = nbrs[v]
        d = len(row)
        start = pos[v][entry[v]]
        for k in range(d):
            w = row[(start + step * k) % d]
            if not label[w]:
                label[w] = nxt
                entry[w] = v
                nxt += 1
                order.append(w)
            code.append(label[w])
        code.append(0)
    return code


def _start_darts(rs, dart_face_size):
    degs = rs.degrees()
    buckets = {}
    for v, row in enumerate(rs.neighbors):
        for w in row:
            left, right = dart_face_size[(v, w)], dart_face_size[(w, v)]
            buckets.setdefault((degs[v], degs[w], left, right), []).append((v, w, True))
            buckets.setdefault((degs[v], degs[w], right, left), []).append((v, w, False))
    key = min(buckets, key=lambda k: (len(buckets[k]), k))
    return buckets[key]


def canonical_form(graph):
    """Minimal BFS code and the start dart ``(v, w, forward)`` achieving it."""
    rs = _skeleton(graph)
    if isinstance(graph, CombPolyhedron):
        faces, dart_face = graph.faces, graph.dart_face
    else:
        faces, dart_face = _trace(rs)
    sizes = {d: len(faces[f]) for d, f in dart_face.items()}
    nbrs, pos = rs.neighbors, rs._pos
    best = None
    best_start = None
    for v, w, fwd in _start_darts(rs, sizes):
        code = _bfs_code(nbrs, pos, v, w, fwd)
        if best is None or code < best:
            best = code
            best_start = (v, w, fwd)
    return best, best_start


def canonical_code(graph):
    """Canonical code; equal iff the maps agree up to relabelling and mirroring."""
    code, _ = canonical_form(graph)
    n = _skeleton(graph).vertex_count
    words = [n] + code
    return CanonicalCode(b"".join(x.to_bytes(2, "big") for x in words))


def canonical_relabeling(graph):
    """Permutation and orientation flag that put ``graph`` in canonical order.

    Returns ``(perm, forward)`` where ``perm[v]`` is the new label of ``v``.
    """
    rs = _skeleton(graph)
    _, (v0, w0, fwd) = canonical_form(graph)
    n = rs.vertex_count
    label = [-1] * n
    entry = [0] * n
    label[v0] = 0
    entry[v0] = w0
    order = [v0]
    step = 1 if fwd else -1
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        row = rs.neighbors[v]
        start = rs._pos[v][entry[v]]
        for k in range(len(row)):
            w = row[(start + step * k) % len(row)]
            if label[w] < 0:
                label[w] = len(order)
                entry[w] = v
                order.append(w)
    return label, fwd


def canonical_representative(graph):
    """The map relabelled (and mirrored if needed) into canonical order."""
    rs = _skeleton(graph)
    perm, fwd = canonical_relabeling(graph)
    out = rs.relabel(perm)
    if not fwd:
        out = out.mirror()
    # rotate each row so that it starts at its smallest neighbour
    rows = []
    for row in out.neighbors:
        i = row.index(min(row))
        rows.append(row[i:] + row[:i])
    return RotationSystem(tuple(rows))


# --- face patterns used by the bound dispatcher ----------------------------

def find_large_face_pair(poly, min1, min2):
    """Two distinct faces of sizes >= ``min1`` and >= ``min2``.

    Among all such pairs the one with the largest total size is returned, as
    ``(f1, f2)`` face indices, or ``None``.
    """
    sizes = [len(f) for f in poly.faces]
    best = None
    for f1, n1 in enumerate(sizes):
        if n1 < min1:
            continue
        for f2, n2 in enumerate(sizes):
            if f2 == f1 or n2 < min2:
                continue
            if best is None or n1 + n2 > best[0]:
                best = (n1 + n2, f1, f2)
    return None if best is None else (best[1], best[2])


def find_adjacent_triple(poly, min1, min2, min3):
    """Faces ``(f1, f2, f3)`` with ``f2`` adjacent to both others, ``f1 != f3``.

    Size thresholds apply position-wise; the triple with the largest total
    size is returned, or ``None`` when no such configuration exists.
    """
    sizes = [len(f) for f in poly.faces]
    adj = poly.face_adjacency
    best = None
    for f2, n2 in enumerate(sizes):
        if n2 < min2:
            continue
        for f1 in adj[f2]:
            if sizes[f1] < min1:
                continue
            for f3 in adj[f2]:
                if f3 == f1 or sizes[f3] < min3:
                    continue
                total = sizes[f1] + n2 + sizes[f3]
                if best is None or total > best[0]:
                    best = (total, f1, f2, f3)
    return None if best is None else best[1:]
