"""Volume bounds for right-angled polyhedra and the dispatcher choosing among them.

Every formula returns a :class:`BoundValue` carrying its kind, strictness and
the hypothesis that made it applicable, so reports can say which bound fired
and on which faces.

Ideal polyhedra (``v8`` = regular ideal octahedron volume)::

    (V-2) v8/4 <= vol <= (V-4) v8/2                 V >= 6
    vol <= (V-5) v8/2                               V >= 9
    vol <= (V - n1/2 - n2/2) v8/2                   two faces, n1, n2 >= 4, V > 6
    vol <= (V + 1 - n1/2 - n2/2 - n3/2) v8/2        F2 adjacent to F1 and F3

Compact polyhedra (``v3`` = regular ideal tetrahedron volume)::

    (V-8) v8/32 <= vol < (V-10) 5 v3/8              V >= 20 even
    vol <= (V-14) 5 v3/8                            V >= 24 even
    vol <= (V - n1 - n2) 5 v3/8                     two faces, n1, n2 >= 6
    vol <= (V - n1 - n2 - n3 + 4) 5 v3/8            F2 adjacent to F1 and F3
"""

import enum
import math
from collections import Counter
from dataclasses import dataclass, field

from .combinatorics import (
    CombPolyhedron,
    PolyClass,
    find_adjacent_triple,
    find_large_face_pair,
)
from .errors import BadHypothesis, BadV
from .lobachevsky import v3, v8

__all__ = [
    "BoundKind",
    "BoundValue",
    "BoundReport",
    "ideal_bounds_atkinson",
    "ideal_upper_improved",
    "ideal_face_pair_bound",
    "ideal_adjacent_triple_bound",
    "compact_bounds_atkinson",
    "compact_upper_improved",
    "compact_face_pair_bound",
    "compact_adjacent_triple_bound",
    "applicable_bounds",
    "applicable_bounds_from_faces",
    "best_upper_bound",
    "bound_report",
    "EQUALITY_TOL",
]

EQUALITY_TOL = 1e-9

_V8 = v8()
_V3 = v3()
_C = 5.0 * _V3 / 8.0


class BoundKind(enum.Enum):
    IDEAL_LOWER_ATKINSON = "ideal_lower_atkinson"
    IDEAL_UPPER_ATKINSON = "ideal_upper_atkinson"
    IDEAL_UPPER_IMPROVED = "ideal_upper_improved"
    IDEAL_FACE_PAIR = "ideal_face_pair"
    IDEAL_ADJACENT_TRIPLE = "ideal_adjacent_triple"
    COMPACT_LOWER_ATKINSON = "compact_lower_atkinson"
    COMPACT_UPPER_ATKINSON = "compact_upper_atkinson"
    COMPACT_UPPER_IMPROVED = "compact_upper_improved"
    COMPACT_FACE_PAIR = "compact_face_pair"
    COMPACT_ADJACENT_TRIPLE = "compact_adjacent_triple"

    @property
    def is_lower(self):
        return self in (BoundKind.IDEAL_LOWER_ATKINSON, BoundKind.COMPACT_LOWER_ATKINSON)


_ORDER = {k: i for i, k in enumerate(BoundKind)}


@dataclass(frozen=True)
class BoundValue:
    kind: BoundKind
    value: float
    strict: bool = False
    hypothesis: str = ""
    witness: tuple = ()
    attainment: str = ""

    def satisfied_by(self, volume, tol=EQUALITY_TOL):
        if self.kind.is_lower:
            return volume >= self.value - tol
        if self.strict:
            return volume < self.value
        return volume <= self.value + tol

    def attained_by(self, volume, tol=EQUALITY_TOL):
        return abs(volume - self.value) <= tol

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "value": self.value,
            "strict": self.strict,
            "hypothesis": self.hypothesis,
            "witness": list(self.witness),
            "attainment": self.attainment,
        }


def _check_int(name, x):
    if isinstance(x, bool) or int(x) != x:
        raise BadV(f"{name} must be an integer, got {x!r}")
    return int(x)


# --- ideal -----------------------------------------------------------------------

def ideal_bounds_atkinson(V):
    V = _check_int("V", V)
    if V < 6:
        raise BadV(f"ideal right-angled polyhedra have V >= 6, got {V}")
    hyp = f"ideal, V = {V} >= 6"
    lower = BoundValue(BoundKind.IDEAL_LOWER_ATKINSON, (V - 2) * _V8 / 4.0, False, hyp,
                       attainment="equality for the octahedron")
    upper = BoundValue(BoundKind.IDEAL_UPPER_ATKINSON, (V - 4) * _V8 / 2.0, False, hyp,
                       attainment="equality for the octahedron")
    return lower, upper


def ideal_upper_improved(V):
    V = _check_int("V", V)
    if V < 9:
        raise BadV(f"improved ideal upper bound needs V >= 9, got {V}")
    return BoundValue(BoundKind.IDEAL_UPPER_IMPROVED, (V - 5) * _V8 / 2.0, False,
                      f"ideal, V = {V} >= 9", attainment="equality iff V = 9")


def ideal_face_pair_bound(V, n1, n2, witness=()):
    V, n1, n2 = (_check_int(s, x) for s, x in (("V", V), ("n1", n1), ("n2", n2)))
    if V <= 6:
        raise BadHypothesis(f"face-pair bound needs V > 6, got {V}")
    if n1 < 4 or n2 < 4:
        raise BadHypothesis(f"face-pair bound needs two faces with at least 4 sides, got {n1}, {n2}")
    return BoundValue(BoundKind.IDEAL_FACE_PAIR, (V - n1 / 2.0 - n2 / 2.0) * _V8 / 2.0, False,
                      f"faces of sizes {n1}, {n2} >= 4, V = {V} > 6", tuple(witness))


def ideal_adjacent_triple_bound(V, n1, n2, n3, witness=()):
    V = _check_int("V", V)
    ns = [_check_int("face size", n) for n in (n1, n2, n3)]
    if min(ns) < 3:
        raise BadHypothesis(f"face sizes must be at least 3, got {ns}")
    if V < 6:
        raise BadHypothesis(f"ideal polyhedra have V >= 6, got {V}")
    value = (V + 1 - sum(ns) / 2.0) * _V8 / 2.0
    return BoundValue(BoundKind.IDEAL_ADJACENT_TRIPLE, value, False,
                      f"face of size {ns[1]} adjacent to faces of sizes {ns[0]}, {ns[2]}",
                      tuple(witness))


# --- compact -------------------------------------------------------------------------

def _check_compact_v(V, floor):
    V = _check_int("V", V)
    if V < floor or V % 2:
        raise BadV(f"needs even V >= {floor}, got {V}")
    return V


def compact_bounds_atkinson(V):
    V = _check_compact_v(V, 20)
    hyp = f"compact, V = {V} >= 20 even"
    lower = BoundValue(BoundKind.COMPACT_LOWER_ATKINSON, (V - 8) * _V8 / 32.0, False, hyp)
    upper = BoundValue(BoundKind.COMPACT_UPPER_ATKINSON, (V - 10) * _C, True, hyp)
    return lower, upper


def compact_upper_improved(V):
    V = _check_compact_v(V, 24)
    return BoundValue(BoundKind.COMPACT_UPPER_IMPROVED, (V - 14) * _C, False,
                      f"compact, V = {V} >= 24 even", attainment="attainment unknown")


def compact_face_pair_bound(V, n1, n2, witness=()):
    V, n1, n2 = (_check_int(s, x) for s, x in (("V", V), ("n1", n1), ("n2", n2)))
    if n1 < 6 or n2 < 6:
        raise BadHypothesis(f"face-pair bound needs two faces with at least 6 sides, got {n1}, {n2}")
    return BoundValue(BoundKind.COMPACT_FACE_PAIR, (V - n1 - n2) * _C, False,
                      f"faces of sizes {n1}, {n2} >= 6", tuple(witness))


def compact_adjacent_triple_bound(V, n1, n2, n3, witness=()):
    V = _check_int("V", V)
    ns = [_check_int("face size", n) for n in (n1, n2, n3)]
    if min(ns) < 5:
        raise BadHypothesis(f"compact faces have at least 5 sides, got {ns}")
    return BoundValue(BoundKind.COMPACT_ADJACENT_TRIPLE, (V - sum(ns) + 4) * _C, False,
                      f"face of size {ns[1]} adjacent to faces of sizes {ns[0]}, {ns[2]}",
                      tuple(witness))


# --- dispatch ------------------------------------------------------------------------

def _dispatch_classes(klass, V, sizes):
    """Case-analysis classes that certify the improved bound from face sizes alone."""
    hist = Counter(sizes)
    out = []
    if klass is PolyClass.IDEAL:
        big = sum(c for k, c in hist.items() if k >= 5)
        if big >= 2:
            out.append("two faces with at least 5 sides")
        if any(k >= 6 for k in hist):
            out.append("a face with at least 6 sides")
        if big == 0 and V >= 15:
            out.append(f"only triangles and quadrilaterals, V = {V} >= 15")
        if big == 1 and hist.get(5, 0) == 1 and V >= 16:
            out.append(f"one pentagon, other faces at most 4-gonal, V = {V} >= 16")
    else:
        big = sum(c for k, c in hist.items() if k >= 7)
        if big >= 2:
            out.append("two faces with at least 7 sides")
        if any(k >= 8 for k in hist):
            out.append("a face with at least 8 sides")
        if big == 0 and V >= 46:
            out.append(f"only pentagons and hexagons, V = {V} >= 46")
        if big == 1 and hist.get(7, 0) == 1 and V >= 48:
            out.append(f"one heptagon, other faces pentagons or hexagons, V = {V} >= 48")
    return out


def _class_bounds(klass, V, sizes):
    """Atkinson, improved and dispatch-class bounds that need only V and face sizes."""
    out = []
    if klass is PolyClass.IDEAL:
        out.extend(ideal_bounds_atkinson(V))
        if V >= 9:
            out.append(ideal_upper_improved(V))
        improved_value = (V - 5) * _V8 / 2.0
        kind = BoundKind.IDEAL_UPPER_IMPROVED
        attain = "equality iff V = 9"
    else:
        out.extend(compact_bounds_atkinson(V))
        if V >= 24:
            out.append(compact_upper_improved(V))
        improved_value = (V - 14) * _C
        kind = BoundKind.COMPACT_UPPER_IMPROVED
        attain = "attainment unknown"
    for hyp in _dispatch_classes(klass, V, sizes):
        out.append(BoundValue(kind, improved_value, False, hyp, attainment=attain))
    return out


def applicable_bounds_from_faces(klass, V, sizes):
    """Bounds certified by V and the multiset of face sizes.

    Adjacent-triple bounds need the face adjacency, except that a face of
    size k always has two neighbours of at least the minimum face size,
    which gives a triple bound from k alone.
    """
    klass = PolyClass.parse(klass)
    sizes = sorted((int(s) for s in sizes), reverse=True)
    out = _class_bounds(klass, V, sizes)
    if klass is PolyClass.IDEAL:
        if V > 6 and len(sizes) >= 2 and sizes[1] >= 4:
            out.append(ideal_face_pair_bound(V, sizes[0], sizes[1]))
        if sizes:
            out.append(ideal_adjacent_triple_bound(V, 3, sizes[0], 3))
    else:
        if len(sizes) >= 2 and sizes[1] >= 6:
            out.append(compact_face_pair_bound(V, sizes[0], sizes[1]))
        if sizes:
            out.append(compact_adjacent_triple_bound(V, 5, sizes[0], 5))
    return out


def applicable_bounds(P):
    """Every bound whose hypothesis holds on ``P``, with witness faces recorded."""
    V = P.vertex_count
    sizes = [len(f) for f in P.faces]
    out = _class_bounds(P.klass, V, sizes)
    if P.klass is PolyClass.IDEAL:
        pair = find_large_face_pair(P, 4, 4)
        triple = find_adjacent_triple(P, 3, 3, 3)
        if pair is not None and V > 6:
            f1, f2 = pair
            out.append(ideal_face_pair_bound(V, sizes[f1], sizes[f2], (f1, f2)))
        if triple is not None:
            out.append(ideal_adjacent_triple_bound(V, *(sizes[f] for f in triple), witness=triple))
    else:
        pair = find_large_face_pair(P, 6, 6)
        triple = find_adjacent_triple(P, 5, 5, 5)
        if pair is not None:
            f1, f2 = pair
            out.append(compact_face_pair_bound(V, sizes[f1], sizes[f2], (f1, f2)))
        if triple is not None:
            out.append(compact_adjacent_triple_bound(V, *(sizes[f] for f in triple), witness=triple))
    return out


def _pick_min(bounds):
    uppers = [b for b in bounds if not b.kind.is_lower]
    return min(uppers, key=lambda b: (b.value, _ORDER[b.kind], b.hypothesis))


def best_upper_bound(P):
    """Smallest upper bound certified on ``P``; falls back to the Atkinson upper bound."""
    return _pick_min(applicable_bounds(P))


@dataclass
class BoundReport:
    vertex_count: int
    klass: PolyClass
    face_vector: dict
    volume: float
    bounds: list = field(default_factory=list)
    best_upper: BoundValue = None

    @property
    def satisfied(self):
        if self.volume is None or not math.isfinite(self.volume):
            return True
        return all(b.satisfied_by(self.volume) for b in self.bounds)

    @property
    def violations(self):
        if self.volume is None:
            return []
        return [b for b in self.bounds if not b.satisfied_by(self.volume)]

    def to_dict(self):
        vol = self.volume
        return {
            "V": self.vertex_count,
            "class": self.klass.value,
            "face_vector": {str(k): v for k, v in sorted(self.face_vector.items())},
            "volume": vol,
            "bounds": [
                dict(b.to_dict(),
                     satisfied=None if vol is None else b.satisfied_by(vol),
                     equality=None if vol is None else b.attained_by(vol))
                for b in self.bounds
            ],
            "best_upper": self.best_upper.to_dict() if self.best_upper else None,
            "sandwich": None if vol is None else self.satisfied,
        }


def bound_report(P, volume=None):
    bounds = applicable_bounds(P)
    return BoundReport(
        vertex_count=P.vertex_count,
        klass=P.klass,
        face_vector=dict(P.face_vector),
        volume=None if volume is None else float(volume),
        bounds=bounds,
        best_upper=_pick_min(bounds),
    )
