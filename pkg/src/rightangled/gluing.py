"""Gluing copies of a right-angled polyhedron along faces.

Two copies glued along a face give a right-angled polyhedron of twice the
volume, because the faces meeting the glued face do so at right angles and
continue straight across. Combinatorially the second copy is mirrored so the
union stays consistently oriented, then:

* compact: the glued face's vertices disappear (each neighbouring face
  meets it at a right angle, so the two off-face edges at a glued vertex
  join into one edge); a face of size m sharing an edge with the glued face
  becomes a (2m-4)-gon and V' = 2V - 2n;
* ideal: the glued face's vertices stay as 4-valent ideal vertices and
  only its edges disappear; neighbours become (2m-2)-gons and V' = 2V - n.
"""

from dataclasses import dataclass, field

from .combinatorics import CombPolyhedron, PolyClass, RotationSystem
from .errors import AdjacentFaces, BadFace, InvalidMap, WrongClass

__all__ = ["GlueResult", "double_ideal", "double_compact", "chain_glue", "resolve_face"]


@dataclass
class GlueResult:
    polyhedron: CombPolyhedron
    vertex_count_check: int
    merged_faces: list
    volume_factor: int
    # (copy index, vertex of the input) -> vertex of the result
    relabel: dict = field(default_factory=dict)


def resolve_face(P, f):
    """Face index of ``f``, given as an index or as a cyclic vertex sequence."""
    if isinstance(f, (int,)) and not isinstance(f, bool):
        if 0 <= f < P.face_count:
            return f
        raise BadFace(f"face index {f} out of range 0..{P.face_count - 1}")
    try:
        cyc = tuple(int(x) for x in f)
    except (TypeError, ValueError):
        raise BadFace(f"cannot interpret {f!r} as a face") from None
    n = len(cyc)
    for idx, face in enumerate(P.faces):
        if len(face) != n:
            continue
        for seq in (cyc, cyc[::-1]):
            for r in range(n):
                if tuple(face[r:] + face[:r]) == seq:
                    return idx
    raise BadFace(f"{list(cyc)} is not a face of the polyhedron")


def _copy_rows(P, offset, mirrored):
    rows = {}
    for v, nb in enumerate(P.skeleton.neighbors):
        row = [w + offset for w in nb]
        if mirrored:
            row.reverse()
        rows[v + offset] = row
    return rows


def _glue_compact(rows, cycle_a, cycle_b):
    """Glue along matched vertex cycles ``cycle_a[i] <-> cycle_b[i]``; edits ``rows``."""
    n = len(cycle_a)
    off = []
    for cyc in (cycle_a, cycle_b):
        outs = []
        for i, x in enumerate(cyc):
            on_face = {cyc[i - 1], cyc[(i + 1) % n]}
            rest = [w for w in rows[x] if w not in on_face]
            if len(rest) != 1:
                raise InvalidMap(f"vertex {x} of the glued face is not trivalent")
            outs.append(rest[0])
        off.append(outs)
    dead = set(cycle_a) | set(cycle_b)
    for i in range(n):
        ya, yb = off[0][i], off[1][i]
        if ya in dead or yb in dead:
            raise InvalidMap("glued face has a chord")
        ra, rb = rows[ya], rows[yb]
        ra[ra.index(cycle_a[i])] = yb
        rb[rb.index(cycle_b[i])] = ya
    for x in dead:
        del rows[x]


def _finish(rows, klass):
    labels = sorted(rows)
    new = {old: i for i, old in enumerate(labels)}
    nb = tuple(tuple(new[w] for w in rows[old]) for old in labels)
    try:
        rs = RotationSystem(nb)
    except InvalidMap as exc:
        raise InvalidMap(f"gluing produced an invalid map: {exc}") from None
    return CombPolyhedron.from_skeleton(rs, klass), new


def _merged(P, result, new, skip):
    """Faces of the first copy whose size changed, as (face id, new size)."""
    out = []
    for g, face in enumerate(P.faces):
        if g in skip:
            continue
        m = len(face)
        for i in range(m):
            u, v = face[i], face[(i + 1) % m]
            if u in new and v in new and result.skeleton.adjacent(new[u], new[v]):
                dart = (new[u], new[v])
                if dart in result.dart_face:
                    size = len(result.faces[result.dart_face[dart]])
                    if size != m:
                        out.append((g, size))
                    break
    return out


def double_compact(P, f):
    if P.klass is not PolyClass.COMPACT:
        raise WrongClass("double_compact needs a compact polyhedron")
    fi = resolve_face(P, f)
    face = P.faces[fi]
    V, n = P.vertex_count, len(face)
    rows = _copy_rows(P, 0, False)
    rows.update(_copy_rows(P, V, True))
    _glue_compact(rows, list(face), [x + V for x in face])
    result, new = _finish(rows, PolyClass.COMPACT)
    expected = 2 * V - 2 * n
    if result.vertex_count != expected:
        raise InvalidMap(f"glued polyhedron has {result.vertex_count} vertices, expected {expected}")
    first = {v: new[v] for v in range(V) if v in new}
    relabel = {(0, v): new[v] for v in range(V) if v in new}
    relabel.update({(1, v): new[v + V] for v in range(V) if v + V in new})
    return GlueResult(result, expected, _merged(P, result, first, {fi}), 2, relabel)


def double_ideal(P, f):
    if P.klass is not PolyClass.IDEAL:
        raise WrongClass("double_ideal needs an ideal polyhedron")
    fi = resolve_face(P, f)
    face = list(P.faces[fi])
    V, n = P.vertex_count, len(face)
    rs = P.skeleton
    shared = set(face)
    # second copy: shared vertices keep their labels, the rest move up by V
    lab = {v: (v if v in shared else v + V) for v in range(V)}
    rows = {}
    for v in range(V):
        rows[v] = list(rs.neighbors[v])
    for v in range(V):
        if v in shared:
            continue
        rows[lab[v]] = [lab[w] for w in reversed(rs.neighbors[v])]
    for i, x in enumerate(face):
        a, b = face[i - 1], face[(i + 1) % n]
        row = list(rs.neighbors[x])
        # the face wedge at x runs from a to b; start the off-face part after b
        k = row.index(b)
        if row[k - 1] != a:
            raise InvalidMap("face is not traced consistently with the rotation")
        ordered = row[k:] + row[:k]
        off_a = [w for w in ordered[1:] if w != a]
        if len(off_a) != 2:
            raise InvalidMap(f"vertex {x} of the glued face is not 4-valent")
        # the mirrored copy sees the wedge from b to a, so its part is reversed
        off_b = [lab[w] for w in reversed(off_a)]
        rows[x] = off_a + off_b
    result, new = _finish(rows, PolyClass.IDEAL)
    expected = 2 * V - n
    if result.vertex_count != expected:
        raise InvalidMap(f"glued polyhedron has {result.vertex_count} vertices, expected {expected}")
    relabel = {(0, v): new[v] for v in range(V)}
    relabel.update({(1, v): new[lab[v]] for v in range(V)})
    first = {v: new[v] for v in range(V)}
    return GlueResult(result, expected, _merged(P, result, first, {fi}), 2, relabel)


def chain_glue(P, f1, f2, k):
    """Attach 2k further copies of ``P`` alternately along ``f1`` and ``f2``.

    The chain is C_0 -f1- C_1 -f2- C_2 -f1- ... -f2- C_2k, with odd copies
    mirrored. Its vertex count is (2k+1)V - 2k n1 - 2k n2.
    """
    if P.klass is not PolyClass.COMPACT:
        raise WrongClass("chain gluing is defined for compact polyhedra")
    k = int(k)
    if k < 0:
        raise ValueError("chain length must be non-negative")
    i1, i2 = resolve_face(P, f1), resolve_face(P, f2)
    if i1 == i2 or i2 in P.face_adjacency[i1]:
        raise AdjacentFaces(f"faces {i1} and {i2} must be distinct and non-adjacent")
    V = P.vertex_count
    F1, F2 = P.faces[i1], P.faces[i2]
    n1, n2 = len(F1), len(F2)
    expected = (2 * k + 1) * V - 2 * k * n1 - 2 * k * n2
    if k == 0:
        relabel = {(0, v): v for v in range(V)}
        return GlueResult(P, expected, [], 1, relabel)
    rows = _copy_rows(P, 0, False)
    for c in range(1, 2 * k + 1):
        rows.update(_copy_rows(P, c * V, c % 2 == 1))
        face = F1 if c % 2 == 1 else F2
        _glue_compact(rows, [x + (c - 1) * V for x in face], [x + c * V for x in face])
    result, new = _finish(rows, PolyClass.COMPACT)
    if result.vertex_count != expected:
        raise InvalidMap(f"chain has {result.vertex_count} vertices, expected {expected}")
    relabel = {(c, v): new[c * V + v] for c in range(2 * k + 1) for v in range(V) if c * V + v in new}
    first = {v: new[v] for v in range(V) if v in new}
    return GlueResult(result, expected, _merged(P, result, first, {i1}), 2 * k + 1, relabel)
