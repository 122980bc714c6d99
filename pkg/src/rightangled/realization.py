"""Numerical realization of right-angled polyhedra in the hyperboloid model.

Each face is a plane ``{x : <x, e> = 0}`` with a space-like unit normal ``e``
pointing out of the polyhedron, in the Minkowski form

    <u, v> = -u_t v_t + u_x v_x + u_y v_y + u_z v_z.

Right angles mean ``<e_i, e_j> = 0`` for adjacent faces. At an ideal vertex
the two pairs of opposite faces are tangent at infinity, ``<e_i, e_k> = -1``.
The normals are found by Levenberg-Marquardt from a circle-pattern initial
guess: every face plane meets the sphere at infinity in a circle, and the
circles of adjacent faces are orthogonal. The first attempt solves this
circle pattern for its radii and lays it out, which already gives the exact
normals up to rounding. Restarts fall back to a jittered, centred planar
embedding of the face graph with rough radii.
"""

import hashlib
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .combinatorics import (
    CombPolyhedron,
    PolyClass,
    canonical_code,
    dual,
    is_pogorelov,
    passes_ideal_prefilters,
    trace_faces,
)
from .errors import NonConvergence, NotCompact, NotRealizable

__all__ = [
    "SOLVER_VERSION",
    "MAX_RESTARTS",
    "RealizedPolyhedron",
    "ValidationReport",
    "minkowski",
    "initial_guess",
    "realize",
    "realize_compact",
    "realize_ideal",
    "validate",
    "seed_for",
]

SOLVER_VERSION = "lm-circle-2"
MAX_RESTARTS = 20

COMPACT_RESIDUAL = 1e-12
IDEAL_RESIDUAL = 1e-10
ORTHO_TOL = 1e-10
INCIDENCE_TOL = 1e-9
NORM_TOL = 1e-9

_J = np.array([-1.0, 1.0, 1.0, 1.0])


def minkowski(u, v):
    """Minkowski product of the last axes of ``u`` and ``v``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.sum(u * _J * v, axis=-1)


@dataclass
class RealizedPolyhedron:
    comb: CombPolyhedron
    normals: np.ndarray  # (F, 4)
    vertices: np.ndarray  # (V, 4)
    residual: float
    seed: int = 0
    attempts: int = 1

    @property
    def klass(self):
        return self.comb.klass

    def gram(self):
        return (self.normals * _J) @ self.normals.T


@dataclass
class ValidationReport:
    ok: bool
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def seed_for(P):
    """Deterministic seed derived from the canonical code."""
    digest = hashlib.sha256(canonical_code(P).data).digest()
    return int.from_bytes(digest[:4], "big")


# --- constraint system ---------------------------------------------------

def _constraints(P):
    adj = sorted({(min(a, b), max(a, b)) for a, nb in enumerate(P.face_adjacency) for b in nb})
    opp = set()
    if P.klass is PolyClass.IDEAL:
        for v in range(P.vertex_count):
            fs = P.vertex_faces(v)
            for a, b in ((fs[0], fs[2]), (fs[1], fs[3])):
                opp.add((min(a, b), max(a, b)))
    return np.array(adj, dtype=int).reshape(-1, 2), np.array(sorted(opp), dtype=int).reshape(-1, 2)


class _System:
    def __init__(self, P):
        self.F = P.face_count
        self.adj, self.opp = _constraints(P)
        pairs = [np.column_stack([np.arange(self.F)] * 2), self.adj, self.opp]
        self.pairs = np.vstack(pairs)
        self.target = np.concatenate([
            np.ones(self.F), np.zeros(len(self.adj)), -np.ones(len(self.opp))
        ])
        m = len(self.pairs)
        rows = np.repeat(np.arange(m), 8)
        self._rows = rows
        i, j = self.pairs[:, 0], self.pairs[:, 1]
        cols = np.concatenate([4 * i[:, None] + np.arange(4), 4 * j[:, None] + np.arange(4)], axis=1)
        self._cols = cols.ravel()

    def residual(self, x):
        E = x.reshape(self.F, 4)
        i, j = self.pairs[:, 0], self.pairs[:, 1]
        return minkowski(E[i], E[j]) - self.target

    def jacobian(self, x):
        E = x.reshape(self.F, 4)
        i, j = self.pairs[:, 0], self.pairs[:, 1]
        JE = E * _J
        vals = np.concatenate([JE[j], JE[i]], axis=1)
        jac = np.zeros((len(self.pairs), 4 * self.F))
        np.add.at(jac, (self._rows, self._cols), vals.ravel())
        return jac


# --- initial guess -------------------------------------------------------

def _tutte(rs, outer):
    n = rs.vertex_count
    k = len(outer)
    pos = np.zeros((n, 2))
    ang = 2 * np.pi * np.arange(k) / k
    pos[list(outer)] = np.column_stack([np.cos(ang), np.sin(ang)])
    inner = [v for v in range(n) if v not in set(outer)]
    idx = {v: i for i, v in enumerate(inner)}
    A = np.zeros((len(inner), len(inner)))
    b = np.zeros((len(inner), 2))
    for v in inner:
        r = idx[v]
        A[r, r] = rs.degree(v)
        for w in rs.neighbors[v]:
            if w in idx:
                A[r, idx[w]] -= 1.0
            else:
                b[r] += pos[w]
    if inner:
        pos[inner] = np.linalg.solve(A, b)
    return pos


def _boost(points, direction, rapidity):
    """Apply a Lorentz boost to light-like points (1, u) and renormalize."""
    d = direction / np.linalg.norm(direction)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    par = points @ d
    t = ch - sh * par
    u = points + np.outer((ch - 1.0) * par - sh, d)
    return u / t[:, None]


def _centre(points, iters=200):
    """Mobius-normalize points on the sphere so their mean is near the origin."""
    pts = points.copy()
    for _ in range(iters):
        m = pts.mean(axis=0)
        norm = np.linalg.norm(m)
        if norm < 1e-10:
            break
        pts = _boost(pts, m, np.arctanh(min(0.5 * norm, 0.9)))
        pts /= np.linalg.norm(pts, axis=1)[:, None]
    return pts


def _pattern_radii(n, edges, target, iters=100):
    """Log-radii of an orthogonal circle pattern by damped Newton.

    Circle ``j`` sees the chord it shares with neighbour ``k`` under the angle
    ``2 arctan(r_k / r_j)``; the angles around each centre must add up to
    ``target[j]``. The Jacobian is minus a weighted Laplacian, so the
    first log-radius is pinned to remove the scaling direction.
    """
    a, b = edges[:, 0], edges[:, 1]
    rho = np.zeros(n)

    def resid(rho):
        x = np.clip(rho[b] - rho[a], -50.0, 50.0)
        R = -target.copy()
        np.add.at(R, a, 2 * np.arctan(np.exp(x)))
        np.add.at(R, b, 2 * np.arctan(np.exp(-x)))
        return R

    R = resid(rho)
    for _ in range(iters):
        if np.max(np.abs(R)) < 1e-13:
            return rho
        w = 1.0 / np.cosh(np.clip(rho[b] - rho[a], -50.0, 50.0))
        L = np.zeros((n, n))
        np.add.at(L, (a, b), w)
        np.add.at(L, (b, a), w)
        np.add.at(L, (a, a), -w)
        np.add.at(L, (b, b), -w)
        step = np.zeros(n)
        step[1:] = np.linalg.solve(L[1:, 1:], -R[1:])
        t = 1.0
        while t > 1e-6:
            trial = resid(rho + t * step)
            if np.linalg.norm(trial) < np.linalg.norm(R):
                break
            t *= 0.5
        rho, R = rho + t * step, trial
    return rho if np.max(np.abs(R)) < 1e-10 else None


def _pattern_layout(P, v_inf):
    """Planar positions of the ideal vertices with ``v_inf`` sent to infinity.

    The four faces at ``v_inf`` become lines bounding a rectangle; every other
    face is a circle through its vertices. Returns ``None`` when the pattern
    cannot be laid out from this vertex.
    """
    lines = set(P.vertex_faces(v_inf))
    circles = [f for f in range(P.face_count) if f not in lines]
    idx = {f: i for i, f in enumerate(circles)}
    across = {}
    for f, cyc in enumerate(P.faces):
        for i in range(len(cyc)):
            across.setdefault(frozenset((cyc[i], cyc[(i + 1) % len(cyc)])), []).append(f)
    n_lines = np.zeros(len(circles))
    edges = set()
    for f in circles:
        for g in P.face_adjacency[f]:
            if g in lines:
                n_lines[idx[f]] += 1
            elif f < g:
                edges.add((idx[f], idx[g]))
    if np.any(n_lines > 1) or not edges:
        return None
    edges = np.array(sorted(edges))
    try:
        rho = _pattern_radii(len(circles), edges, np.pi * (2.0 - n_lines))
    except np.linalg.LinAlgError:
        return None
    if rho is None:
        return None
    r = np.exp(rho - rho.mean())

    # vertex positions of each face in its own frame, centre at the origin
    local = {}
    for f in circles:
        cyc = P.faces[f]
        ang, pos = 0.0, {}
        for i, v in enumerate(cyc):
            pos[v] = r[idx[f]] * np.exp(1j * ang)
            g = next(h for h in across[frozenset((v, cyc[(i + 1) % len(cyc)]))] if h != f)
            ang += np.pi if g in lines else 2 * np.arctan(r[idx[g]] / r[idx[f]])
        local[f] = pos

    placed = {circles[0]: (1.0 + 0j, 0j)}
    queue = [circles[0]]
    z = {}
    while queue:
        f = queue.pop(0)
        rot, shift = placed[f]
        for v, w in local[f].items():
            z.setdefault(v, []).append(rot * w + shift)
        for g in sorted(P.face_adjacency[f]):
            if g in lines or g in placed:
                continue
            u, v = sorted(set(P.faces[f]) & set(P.faces[g]))
            p, q = rot * local[f][u] + shift, rot * local[f][v] + shift
            lu, lv = local[g][u], local[g][v]
            rot_g = (q - p) / (lv - lu)
            rot_g /= abs(rot_g)
            placed[g] = (rot_g, p - rot_g * lu)
            queue.append(g)
    if len(placed) != len(circles) or len(z) != P.vertex_count - 1:
        return None
    pts = {}
    for v, zs in z.items():
        zs = np.array(zs)
        if np.max(np.abs(zs - zs.mean())) > 1e-6 * np.max(r):
            return None
        pts[v] = zs.mean()
    return pts


def _pattern_guess(P):
    """Exact normals of an ideal polyhedron from its orthogonal circle pattern."""
    for v_inf in range(P.vertex_count):
        flat = _pattern_layout(P, v_inf)
        if flat is not None:
            break
    else:
        return None
    rest = [v for v in range(P.vertex_count) if v != v_inf]
    zs = np.array([flat[v] for v in rest])
    zs = (zs - zs.mean()) / np.sqrt(np.mean(np.abs(zs - zs.mean()) ** 2))
    r2 = np.abs(zs) ** 2
    pts = np.zeros((P.vertex_count, 3))
    pts[rest] = np.column_stack([2 * zs.real, 2 * zs.imag, r2 - 1.0]) / (1.0 + r2)[:, None]
    pts[v_inf] = (0.0, 0.0, 1.0)
    pts = _centre(pts)
    light = np.column_stack([np.ones(P.vertex_count), pts])
    inside = light.sum(axis=0)
    normals = np.zeros((P.face_count, 4))
    for f, cyc in enumerate(P.faces):
        e, _ = _null_vector(light[list(cyc)])
        q = minkowski(e, e)
        if q <= 0:
            return None
        e = e / np.sqrt(q)
        normals[f] = -e if minkowski(inside, e) > 0 else e
    return normals


def _corner_angles(r, tri):
    """Angles of the centre triangles of three pairwise orthogonal circles."""
    ra, rb, rc = r[tri[:, 0]], r[tri[:, 1]], r[tri[:, 2]]
    ab, bc, ca = np.hypot(ra, rb), np.hypot(rb, rc), np.hypot(rc, ra)
    return np.arccos(np.clip(np.column_stack([ra * ra / (ab * ca), rb * rb / (ab * bc),
                                              rc * rc / (ca * bc)]), -1.0, 1.0))


def _compact_pattern_layout(P, f0):
    """Centres and radii of the face circles, projected from inside face ``f0``.

    Each face's outward cap becomes a disk, except the cap of ``f0``, which is
    the outside of the unit circle. Centres of three mutually orthogonal
    circles span a triangle with sides ``sqrt(r_i^2 + r_j^2)``; these triangles
    tile the plane around interior centres, and around the unit circle's
    centre they tile the same polygon a second time with reversed orientation.
    """
    F = P.face_count
    tri = np.array([P.vertex_faces(v) for v in range(P.vertex_count)])
    fan = np.any(tri == f0, axis=1)
    sign = np.where(fan[:, None] & (tri != f0), -1.0, 1.0)
    boundary = set(P.face_adjacency[f0])
    target = np.array([0.0 if f in boundary else 2 * np.pi for f in range(F)])
    free = [f for f in range(F) if f != f0]

    def resid(rho_free):
        rho = np.zeros(F)
        rho[free] = rho_free
        total = np.zeros(F)
        np.add.at(total, tri.ravel(), (sign * _corner_angles(np.exp(rho), tri)).ravel())
        return (total - target)[free]

    res = least_squares(resid, np.zeros(F - 1), method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
    if np.max(np.abs(resid(res.x))) > 1e-10:
        return None
    rho = np.zeros(F)
    rho[free] = res.x
    r = np.exp(rho)

    c = {f0: 0j}
    # fan around the unit circle, in the cyclic order of the face
    ring = [P.dart_face[(w, v)] for v, w in zip(P.faces[f0], P.faces[f0][1:] + P.faces[f0][:1])]
    ang = 0.0
    for j, k in zip(ring, ring[1:] + ring[:1]):
        c[j] = np.hypot(1.0, r[j]) * np.exp(1j * ang)
        ang += np.arccos(min(1.0, 1.0 / (np.hypot(1.0, r[j]) * np.hypot(1.0, r[k]))))
    if abs(ang - 2 * np.pi) > 1e-8:
        return None

    def orient(a, b, x):
        return np.sign(((c[b] - c[a]).conjugate() * (c[x] - c[a])).imag)

    inner = [t for t in tri if f0 not in t]
    fan_tri = next(t for t in tri if f0 in t)
    sigma = -orient(*fan_tri)
    todo = list(inner)
    while todo:
        rest = []
        for t in todo:
            known = [f in c for f in t]
            if all(known):
                continue
            if sum(known) < 2:
                rest.append(t)
                continue
            i = known.index(False)
            a, b, x = t[(i + 1) % 3], t[(i + 2) % 3], t[i]
            # x sits opposite the edge a-b with orientation (a, b, x) = sigma
            lab, lax, lbx = abs(c[b] - c[a]), np.hypot(r[a], r[x]), np.hypot(r[b], r[x])
            cos_a = np.clip((lab ** 2 + lax ** 2 - lbx ** 2) / (2 * lab * lax), -1.0, 1.0)
            turn = np.exp(1j * sigma * np.arccos(cos_a))
            c[x] = c[a] + (c[b] - c[a]) / lab * lax * turn
        if len(rest) == len(todo):
            return None
        todo = rest
    scale = np.max(r)
    for t in tri:
        for i in range(3):
            a, b = t[i], t[(i + 1) % 3]
            if abs(abs(c[a] - c[b]) - np.hypot(r[a] if a != f0 else 1.0, r[b] if b != f0 else 1.0)) > 1e-6 * scale:
                return None
    r[f0] = 1.0
    return c, r


def _compact_pattern_guess(P):
    """Normals of a compact polyhedron from its orthogonal circle pattern."""
    order = sorted(range(P.face_count), key=lambda f: (-len(P.faces[f]), f))
    for f0 in order[:4]:
        out = _compact_pattern_layout(P, f0)
        if out is not None:
            break
    else:
        return None
    c, r = out
    normals = np.zeros((P.face_count, 4))
    north = np.array([1.0, 0.0, 0.0, 1.0])
    for f in range(P.face_count):
        ring = c[f] + r[f] * np.exp(2j * np.pi * np.arange(3) / 3)
        r2 = np.abs(ring) ** 2
        light = np.column_stack([np.ones(3), 2 * ring.real / (1 + r2), 2 * ring.imag / (1 + r2),
                                 (r2 - 1) / (1 + r2)])
        e, _ = _null_vector(light)
        q = minkowski(e, e)
        if q <= 0:
            return None
        e = e / np.sqrt(q)
        # the outward cap holds the disk centre, or infinity for the unit circle
        if f == f0:
            probe = north
        else:
            z = c[f]
            z2 = abs(z) ** 2
            probe = np.array([1.0, 2 * z.real / (1 + z2), 2 * z.imag / (1 + z2), (z2 - 1) / (1 + z2)])
        normals[f] = e if minkowski(probe, e) > 0 else -e
    try:
        normals, _ = _normalize_gauge(P, normals)
    except (NotCompact, NonConvergence):
        return None
    return normals


def initial_guess(P, seed=0, jitter=0.0):
    """Approximate outward unit normals from a circle pattern.

    Without jitter the orthogonal circle pattern is solved outright. Otherwise the face graph is drawn by a Tutte embedding, lifted to
    the sphere, Mobius-centred and, when ``jitter`` > 0, perturbed with a
    generator seeded by ``seed``. Each face becomes a circle whose radius
    makes it roughly orthogonal to its neighbours.
    """
    if jitter == 0:
        solved = _pattern_guess if P.klass is PolyClass.IDEAL else _compact_pattern_guess
        normals = solved(P)
        if normals is not None:
            return normals
    D = dual(P)
    dfaces = trace_faces(D)
    outer = max(dfaces, key=lambda f: (len(f), -min(f)))
    flat = _tutte(D, outer)
    # inverse stereographic projection; the outer face lands near the south pole
    r2 = np.sum(flat * flat, axis=1)
    pts = np.column_stack([2 * flat, r2 - 1.0]) / (1.0 + r2)[:, None]
    pts = _centre(pts)
    if jitter > 0:
        rng = np.random.default_rng(seed)
        pts = pts + jitter * rng.standard_normal(pts.shape)
        pts /= np.linalg.norm(pts, axis=1)[:, None]
        pts = _centre(pts)
    F = len(pts)
    radii = np.zeros(F)
    for i in range(F):
        nb = list(D.neighbors[i])
        cos_t = np.clip(pts[nb] @ pts[i], -1.0, 1.0)
        theta = np.arccos(cos_t).mean()
        radii[i] = np.arccos(np.sqrt(max(np.cos(theta), 1e-3)))
    if P.klass is PolyClass.IDEAL:
        radii *= 1.1
    normals = np.column_stack([np.cos(radii), pts]) / np.sin(radii)[:, None]
    return normals


# --- vertices and normalization ------------------------------------------

def _null_vector(rows):
    M = rows * _J
    _, s, vt = np.linalg.svd(M)
    return vt[-1], s


def _vertices(P, normals):
    V = P.vertex_count
    out = np.zeros((V, 4))
    for v in range(V):
        fs = list(dict.fromkeys(P.vertex_faces(v)))
        x, _ = _null_vector(normals[fs])
        if P.klass is PolyClass.COMPACT:
            q = minkowski(x, x)
            if q >= 0:
                raise NotCompact(f"vertex {v} is not time-like (<v,v> = {q:.3e})")
            x = x / np.sqrt(-q)
            if x[0] < 0:
                x = -x
        else:
            if abs(x[0]) < 1e-12:
                raise NonConvergence(f"ideal vertex {v} has vanishing time component")
            x = x / x[0]
        out[v] = x
    return out


def _lorentz_to_origin(c):
    """Boost matrix taking the unit time-like vector ``c`` to (1, 0, 0, 0)."""
    t = c[0]
    s = c[1:]
    L = np.eye(4)
    L[0, 0] = t
    L[0, 1:] = -s
    L[1:, 0] = -s
    L[1:, 1:] += np.outer(s, s) / (1.0 + t)
    return L


def _normalize_gauge(P, normals):
    """Orient normals outward and boost the vertex centroid to the origin."""
    verts = _vertices(P, normals)
    c = verts.sum(axis=0)
    q = minkowski(c, c)
    if q >= 0:
        raise NonConvergence("vertex centroid is not time-like")
    c = c / np.sqrt(-q)
    if c[0] < 0:
        c = -c
    L = _lorentz_to_origin(c)
    normals = normals @ L.T
    signs = np.where(normals[:, 0] > 0, 1.0, -1.0)
    # outward means <origin, e> = -e_t < 0
    normals = normals * signs[:, None]
    verts = _vertices(P, normals)
    return normals, verts


# --- solver -------------------------------------------------------------

def _solve(system, x0):
    # MINPACK needs at least as many residuals as unknowns; the compact system
    # is short by the six gauge directions, so it goes to the trust-region solver
    method = "lm" if len(system.target) >= len(x0) else "trf"
    res = least_squares(
        system.residual, x0, jac=system.jacobian, method=method,
        xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=200 * len(x0),
    )
    x = res.x
    # Newton polish with minimum-norm steps (the gauge directions are free)
    for _ in range(6):
        r = system.residual(x)
        if np.max(np.abs(r)) < 1e-15:
            break
        step, *_ = np.linalg.lstsq(system.jacobian(x), -r, rcond=1e-12)
        x = x + step
    return x, float(np.max(np.abs(system.residual(x))))


def _realize(P, tol, seed, max_restarts):
    system = _System(P)
    if seed is None:
        seed = seed_for(P)
    last = None
    for attempt in range(max_restarts + 1):
        jitter = 0.0 if attempt == 0 else 0.05 * attempt
        x0 = initial_guess(P, seed + attempt, jitter).ravel()
        x, resid = _solve(system, x0)
        # far faces of elongated polyhedra have large normals; rounding alone
        # leaves about eps |e_i| |e_j| in each product
        size = np.max(np.linalg.norm(x.reshape(-1, 4), axis=1))
        if resid > max(tol, 64 * np.finfo(float).eps * size * size):
            last = f"residual {resid:.3e} after attempt {attempt + 1}"
            continue
        try:
            normals, verts = _normalize_gauge(P, x.reshape(-1, 4))
        except (NotCompact, NonConvergence) as exc:
            last = str(exc)
            continue
        resid = float(np.max(np.abs(system.residual(normals.ravel()))))
        R = RealizedPolyhedron(P, normals, verts, resid, seed, attempt + 1)
        report = validate(R)
        if report.ok:
            return R
        last = "; ".join(report.failures[:3])
    return last


def realize_compact(P, seed=None, max_restarts=MAX_RESTARTS):
    if P.klass is not PolyClass.COMPACT:
        raise NotRealizable("realize_compact needs a compact polyhedron")
    if P.vertex_count < 20 or not is_pogorelov(P):
        raise NotRealizable("map fails the compact admissibility conditions")
    out = _realize(P, COMPACT_RESIDUAL, seed, max_restarts)
    if isinstance(out, RealizedPolyhedron):
        return out
    raise NonConvergence(f"no certified realization after {max_restarts + 1} attempts: {out}")


def realize_ideal(P, seed=None, max_restarts=MAX_RESTARTS):
    if P.klass is not PolyClass.IDEAL:
        raise NotRealizable("realize_ideal needs an ideal polyhedron")
    if not passes_ideal_prefilters(P):
        raise NotRealizable("map fails the ideal admissibility conditions")
    out = _realize(P, IDEAL_RESIDUAL, seed, max_restarts)
    if isinstance(out, RealizedPolyhedron):
        return out
    raise NotRealizable(f"no certified realization after {max_restarts + 1} attempts: {out}")


def realize(P, seed=None, max_restarts=MAX_RESTARTS):
    if P.klass is PolyClass.IDEAL:
        return realize_ideal(P, seed, max_restarts)
    return realize_compact(P, seed, max_restarts)


# --- certification ------------------------------------------------------------

def validate(R):
    """Check every geometric certificate of a realization; never raises."""
    P = R.comb
    N = np.asarray(R.normals, dtype=float)
    X = np.asarray(R.vertices, dtype=float)
    failures = []
    checks = {}
    G = (N * _J) @ N.T
    adj, opp = _constraints(P)

    norm_err = float(np.max(np.abs(np.diag(G) - 1.0)))
    checks["normal_norms"] = norm_err
    if norm_err > ORTHO_TOL:
        failures.append(f"normals not unit (max error {norm_err:.2e})")

    ortho = float(np.max(np.abs(G[adj[:, 0], adj[:, 1]]))) if len(adj) else 0.0
    checks["orthogonality"] = ortho
    if ortho > ORTHO_TOL:
        failures.append(f"dihedral angles not right (max |<e_i,e_j>| {ortho:.2e})")

    if P.klass is PolyClass.IDEAL and len(opp):
        tang = float(np.max(np.abs(G[opp[:, 0], opp[:, 1]] + 1.0)))
        checks["tangency"] = tang
        if tang > ORTHO_TOL:
            failures.append(f"opposite faces not tangent (max error {tang:.2e})")

    VX = (X * _J) @ N.T  # (V, F) values <v, e_i>
    incidence = np.zeros_like(VX, dtype=bool)
    for f, face in enumerate(P.faces):
        incidence[list(face), f] = True
    inc_err = float(np.max(np.abs(VX[incidence])))
    checks["incidence"] = inc_err
    if inc_err > INCIDENCE_TOL:
        failures.append(f"vertices off their face planes (max {inc_err:.2e})")

    q = minkowski(X, X)
    if P.klass is PolyClass.COMPACT:
        vn = float(np.max(np.abs(q + 1.0)))
        if np.any(X[:, 0] <= 0):
            failures.append("vertex with non-positive time component")
    else:
        vn = float(np.max(np.abs(q)))
        if np.any(np.abs(X[:, 0] - 1.0) > NORM_TOL):
            failures.append("ideal vertex not normalized to t = 1")
    checks["vertex_norms"] = vn
    if vn > NORM_TOL:
        failures.append(f"vertex norms off (max error {vn:.2e})")

    off = VX[~incidence]
    worst = float(np.max(off)) if off.size else -1.0
    checks["convexity"] = worst
    if worst >= 0.0:
        failures.append(f"vertex on the wrong side of a face plane (max {worst:.2e})")

    # geometric face lattice: planes through each vertex match its faces exactly
    geo = np.abs(VX) <= INCIDENCE_TOL
    lattice_ok = bool(np.array_equal(geo, incidence))
    checks["face_lattice"] = lattice_ok
    if not lattice_ok:
        failures.append("geometric face lattice differs from the combinatorial one")

    return ValidationReport(not failures, checks, failures)
