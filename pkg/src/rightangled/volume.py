"""Volumes of realized polyhedra by signed decompositions.

Ideal polyhedra are coned from one ideal vertex sent to infinity in the
upper half-space: every face not containing it is a cyclic polygon in the
boundary plane, and each triangle (a, b, c) of a triangulation of it spans
an ideal tetrahedron (inf, a, b, c) whose shape parameter is (c-a)/(b-a).

Compact polyhedra are split from an interior point O. For every face, the
perpendicular foot P on the face plane, the foot Q on each edge line and
each endpoint A of that edge give an orthoscheme (O, P, Q, A). Feet falling
outside their face or edge are handled by signs, so the sum is exact for any
choice of O.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .combinatorics import PolyClass
from .errors import DegenerateConfiguration, NumericalDegeneracy
from .lobachevsky import cross_ratio_volume, orthoscheme_volume
from .realization import minkowski

__all__ = [
    "Piece",
    "Decomposition",
    "volume",
    "volume_ideal",
    "volume_compact",
    "ideal_decomposition",
    "compact_decomposition",
    "count_distinct_volumes",
]

DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class Piece:
    kind: str  # "ideal_tetrahedron" or "orthoscheme"
    parameters: tuple
    signed_volume: float
    degenerate: bool = False

    def to_dict(self):
        params = [repr(p) if isinstance(p, complex) else p for p in self.parameters]
        return {"kind": self.kind, "parameters": params,
                "signed_volume": self.signed_volume, "degenerate": self.degenerate}


@dataclass
class Decomposition:
    pieces: list = field(default_factory=list)

    @property
    def total(self):
        return math.fsum(p.signed_volume for p in self.pieces)

    def to_dict(self):
        return {"total": self.total, "pieces": [p.to_dict() for p in self.pieces]}


# --- ideal -------------------------------------------------------------------

def _rotation_to_north(u):
    """Orthogonal matrix sending the unit vector ``u`` to (0, 0, 1)."""
    z = np.array([0.0, 0.0, 1.0])
    v = np.cross(u, z)
    s = np.linalg.norm(v)
    c = float(u @ z)
    if s < 1e-15:
        return np.eye(3) if c > 0 else np.diag([1.0, -1.0, -1.0])
    K = np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
    return np.eye(3) + K + K @ K * ((1 - c) / s**2)


def _triangles(face, method, start):
    n = len(face)
    f = [face[(start + i) % n] for i in range(n)]
    if method == "fan":
        return [(f[0], f[i], f[i + 1]) for i in range(1, n - 1)]
    if method == "ear":
        # zigzag: clip ears alternately from both ends of the polygon
        order = [0]
        lo, hi = 1, n - 1
        while lo <= hi:
            order.append(lo)
            lo += 1
            if lo <= hi:
                order.append(hi)
                hi -= 1
        out = []
        for i in range(n - 2):
            tri = sorted(order[i:i + 3])
            out.append(tuple(f[k] for k in tri))
        return out
    raise ValueError(f"unknown triangulation {method!r}")


def ideal_decomposition(R, base=0, triangulation="fan", fan_start=0):
    """Signed ideal tetrahedra coning the polyhedron from vertex ``base``."""
    P = R.comb
    X = np.asarray(R.vertices, dtype=float)
    u = X[:, 1:] / X[:, :1]
    u /= np.linalg.norm(u, axis=1)[:, None]
    rot = _rotation_to_north(u[base])
    w = u @ rot.T
    z = np.empty(len(w), dtype=complex)
    for v in range(len(w)):
        if v == base:
            z[v] = complex("inf")
        else:
            z[v] = complex(w[v, 0], w[v, 1]) / (1.0 - w[v, 2])
    dec = Decomposition()
    for face in P.faces:
        if base in face:
            continue
        for a, b, c in _triangles(face, triangulation, fan_start):
            ba = z[b] - z[a]
            shape = (z[c] - z[a]) / ba
            if abs(shape.imag) <= DEGENERACY_TOL * max(1.0, abs(shape)):
                raise DegenerateConfiguration(
                    f"flat tetrahedron on face {face} seen from vertex {base}")
            dec.pieces.append(Piece("ideal_tetrahedron", (shape,), cross_ratio_volume(shape)))
    if dec.total < 0:
        # the projection reversed orientation; flip every piece
        dec.pieces = [Piece(p.kind, p.parameters, -p.signed_volume, p.degenerate) for p in dec.pieces]
    return dec


def volume_ideal(R, base=None, triangulation="fan"):
    """Volume of an ideal realization; falls back to other bases on degeneracy."""
    V = R.comb.vertex_count
    order = range(V) if base is None else [base] + [v for v in range(V) if v != base]
    last = None
    for b in order:
        try:
            return ideal_decomposition(R, b, triangulation).total
        except DegenerateConfiguration as exc:
            last = exc
    raise last


# --- compact ---------------------------------------------------------------------

def _unit_timelike(x):
    q = minkowski(x, x)
    if q >= 0:
        raise NumericalDegeneracy("expected a time-like point")
    x = x / math.sqrt(-q)
    return x if x[0] > 0 else -x


class _Flat(Exception):
    pass


def _unit(t):
    q = float(minkowski(t, t))
    if q <= 1e-28:
        raise _Flat
    return t / math.sqrt(q)


def _dihedral(X, Y, Z1, Z2):
    """Dihedral angle along edge XY between the planes through Z1 and Z2."""
    ty = _unit(Y + minkowski(Y, X) * X)

    def normal_part(W):
        t = W + minkowski(W, X) * X
        return _unit(t - minkowski(t, ty) * ty)

    c = minkowski(normal_part(Z1), normal_part(Z2))
    return math.acos(max(-1.0, min(1.0, float(c))))


def _angle_at(X, Y, Z):
    """Angle at X between geodesics XY and XZ."""
    ty = _unit(Y + minkowski(Y, X) * X)
    tz = _unit(Z + minkowski(Z, X) * X)
    return math.acos(max(-1.0, min(1.0, float(minkowski(ty, tz)))))


def _distance(X, Y):
    # 4 sinh^2(d/2) = <Y-X, Y-X>, accurate for nearby points
    d = Y - X
    return 2.0 * math.asinh(0.5 * math.sqrt(max(0.0, float(minkowski(d, d)))))


def _orthoscheme(O, Pf, Q, A, sign):
    flat = Piece("orthoscheme", (0.0, 0.0, 0.0), 0.0, True)
    small = 1e-12
    if sign == 0 or min(_distance(O, Pf), _distance(Pf, Q), _distance(Q, A)) < small:
        return flat
    try:
        alpha = _angle_at(Pf, Q, A)
        gamma = _angle_at(Q, Pf, O)
        beta = _dihedral(O, A, Pf, Q)
    except _Flat:
        return flat
    disc = math.cos(beta) ** 2 - (math.sin(alpha) * math.sin(gamma)) ** 2
    if disc < -1e-9:
        raise NumericalDegeneracy(f"orthoscheme angles ({alpha}, {beta}, {gamma}) out of domain")
    vol = orthoscheme_volume(alpha, beta, gamma, tol=1e-9)
    return Piece("orthoscheme", (alpha, beta, gamma), sign * vol)


def _sign(x):
    return 1 if x > 0 else (-1 if x < 0 else 0)


def compact_decomposition(R, interior=None):
    """Signed orthoschemes from ``interior`` (default: normalized vertex sum)."""
    P = R.comb
    N = np.asarray(R.normals, dtype=float)
    X = np.asarray(R.vertices, dtype=float)
    O = _unit_timelike(X.sum(axis=0) if interior is None else np.asarray(interior, dtype=float))
    vf = [set(P.vertex_faces(v)) for v in range(P.vertex_count)]
    dec = Decomposition()
    for i, face in enumerate(P.faces):
        ei = N[i]
        s1 = _sign(-float(minkowski(O, ei)))
        Pf = _unit_timelike(O - minkowski(O, ei) * ei)
        m = len(face)
        for t in range(m):
            a, b = face[t], face[(t + 1) % m]
            (j,) = (vf[a] & vf[b]) - {i}
            ej = N[j]
            s2 = _sign(-float(minkowski(Pf, ej)))
            Q = _unit_timelike(Pf - minkowski(Pf, ej) * ej)
            for end, other in ((a, b), (b, a)):
                (k,) = vf[end] - {i, j}
                s3 = _sign(-float(minkowski(Q, N[k])))
                dec.pieces.append(_orthoscheme(O, Pf, Q, X[end], s1 * s2 * s3))
    return dec


def volume_compact(R, interior=None):
    return compact_decomposition(R, interior).total


def volume(R, **kwargs):
    if R.comb.klass is PolyClass.IDEAL:
        return volume_ideal(R, **kwargs)
    return volume_compact(R, **kwargs)


def count_distinct_volumes(volumes, tol=1e-6):
    """Number of distinct values; sorted neighbours closer than ``tol`` coincide."""
    vals = sorted(float(v) for v in volumes)
    if not vals:
        return 0
    return 1 + sum(1 for x, y in zip(vals, vals[1:]) if y - x > tol)
