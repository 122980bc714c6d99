"""Enumerate, realize, measure and bound-check whole classes of polyhedra.

Work on individual polyhedra is independent, so ``census`` can fan it out to
a process pool; results are sorted by (V, canonical code) before anything is
aggregated, which makes every output byte-identical across runs and worker
counts.
"""

import hashlib
import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal

import numpy as np

from .bounds import bound_report
from .combinatorics import (
    CanonicalCode,
    CombPolyhedron,
    PolyClass,
    RotationSystem,
    canonical_code,
    canonical_representative,
    check_compact_identity,
    check_ideal_identity,
    is_pogorelov,
    passes_ideal_prefilters,
)
from .enumeration import EnumerationBudget, enumerate_candidates
from .errors import NonConvergence, NotCompact, NotRealizable, RightAngledError
from .lobachevsky import v3, v8
from .realization import SOLVER_VERSION, RealizedPolyhedron, realize, validate
from .volume import count_distinct_volumes, volume

__all__ = [
    "EXIT_OK",
    "EXIT_BOUND_VIOLATION",
    "EXIT_REALIZATION_FAILURE",
    "CensusRow",
    "Measurement",
    "FigureData",
    "RealizationCache",
    "canonicalize",
    "measure",
    "measure_all",
    "census",
    "census_rows",
    "census_csv",
    "figure_data",
    "figure_csv",
    "check_polyhedron",
    "format_number",
]

EXIT_OK = 0
EXIT_BOUND_VIOLATION = 2
EXIT_REALIZATION_FAILURE = 3

_RECORD_FIELDS = ("canonical_code", "class", "normals", "vertices", "residual", "volume", "solver_version")


def format_number(x, decimals=6):
    """Fixed-point text with round-half-even on the shortest decimal form of ``x``."""
    q = Decimal(1).scaleb(-decimals)
    return str(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_EVEN))


def canonicalize(P):
    """The canonical representative of ``P`` as a polyhedron of the same class."""
    rep = canonical_representative(P.skeleton)
    return CombPolyhedron.from_skeleton(rep, P.klass)


# --- cache -------------------------------------------------------------------

class RealizationCache:
    """One JSON file per canonical code under ``root/<class>/``.

    File names are the SHA-256 of the code (codes outgrow file-name limits);
    the record itself holds the full code and is checked on load.

    Writes go through a temporary file and an atomic rename, so concurrent
    readers never see a partial record. Unreadable or stale records are
    treated as misses and overwritten.
    """

    def __init__(self, root):
        self.root = os.fspath(root)

    def path(self, klass, code):
        name = hashlib.sha256(code.data).hexdigest()
        return os.path.join(self.root, PolyClass.parse(klass).value, name + ".json")

    def load(self, klass, code):
        path = self.path(klass, code)
        try:
            with open(path) as fh:
                rec = json.load(fh)
        except (OSError, ValueError):
            return None
        if not isinstance(rec, dict) or tuple(rec) != _RECORD_FIELDS:
            return None
        if rec["solver_version"] != SOLVER_VERSION or rec["canonical_code"] != code.hex():
            return None
        return rec

    def store(self, rec):
        code = CanonicalCode.fromhex(rec["canonical_code"])
        path = self.path(rec["class"], code)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
        try:
            with os.fdopen(fd, "w", newline="\n") as fh:
                fh.write(dumps_record(rec))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def make_record(R, vol):
    return {
        "canonical_code": canonical_code(R.comb).hex(),
        "class": R.comb.klass.value,
        "normals": np.asarray(R.normals).tolist(),
        "vertices": np.asarray(R.vertices).tolist(),
        "residual": float(R.residual),
        "volume": float(vol),
        "solver_version": SOLVER_VERSION,
    }


def dumps_record(rec):
    ordered = {k: rec[k] for k in _RECORD_FIELDS}
    return json.dumps(ordered, indent=1) + "\n"


def realized_from_record(P, rec):
    R = RealizedPolyhedron(P, np.array(rec["normals"], dtype=float),
                           np.array(rec["vertices"], dtype=float), float(rec["residual"]))
    return R if validate(R).ok else None


# --- measuring ---------------------------------------------------------------------

@dataclass
class Measurement:
    code: str
    klass: PolyClass
    vertex_count: int
    face_vector: dict
    volume: float = None
    residual: float = None
    error: str = None
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return self.error is None

    def to_dict(self):
        return {
            "canonical_code": self.code,
            "class": self.klass.value,
            "V": self.vertex_count,
            "face_vector": {str(k): v for k, v in sorted(self.face_vector.items())},
            "volume": self.volume,
            "residual": self.residual,
            "error": self.error,
            "violations": self.violations,
        }


def measure(P, cache=None, seed=None):
    """Realize the canonical form of ``P``, compute its volume and check bounds."""
    P = canonicalize(P)
    code = canonical_code(P)
    m = Measurement(code.hex(), P.klass, P.vertex_count, dict(P.face_vector))
    R = None
    rec = cache.load(P.klass, code) if cache is not None else None
    if rec is not None:
        R = realized_from_record(P, rec)
    if R is None:
        try:
            R = realize(P, seed=seed)
        except (NonConvergence, NotCompact, NotRealizable) as exc:
            m.error = f"{type(exc).__name__}: {exc}"
            return m
        vol = volume(R)
        if cache is not None:
            cache.store(make_record(R, vol))
    else:
        vol = float(rec["volume"])
    m.volume = float(vol)
    m.residual = float(R.residual)
    report = bound_report(P, vol)
    m.violations = [b.kind.value for b in report.violations]
    return m


def _measure_rows(args):
    rows, klass, cache_root, seed = args
    P = CombPolyhedron.from_skeleton(RotationSystem(rows), klass)
    cache = RealizationCache(cache_root) if cache_root else None
    return measure(P, cache, seed)


def measure_all(polys, jobs=1, cache=None, seed=None):
    """Measure many polyhedra, optionally in a process pool; sorted by (V, code)."""
    root = cache.root if cache is not None else None
    tasks = [(P.skeleton.neighbors, P.klass, root, seed) for P in polys]
    if jobs <= 1 or len(tasks) <= 1:
        results = [_measure_rows(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_measure_rows, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    results.sort(key=lambda m: (m.vertex_count, bytes.fromhex(m.code)))
    return results


# --- census ----------------------------------------------------------------------------

@dataclass(frozen=True)
class CensusRow:
    vertices: int
    polyhedra_count: int
    distinct_volume_count: int
    min_volume: float = None
    max_volume: float = None


def _v_range(klass, v_min, v_max):
    if klass is PolyClass.IDEAL:
        return list(range(max(6, v_min), v_max + 1))
    lo = max(20, v_min)
    lo += lo % 2
    return list(range(lo, v_max + 1, 2))


def census_rows(klass, measurements, v_min, v_max):
    klass = PolyClass.parse(klass)
    by_v = {}
    for m in measurements:
        by_v.setdefault(m.vertex_count, []).append(m)
    rows = []
    for V in _v_range(klass, v_min, v_max):
        ms = by_v.get(V, [])
        vols = [m.volume for m in ms if m.ok]
        if vols:
            rows.append(CensusRow(V, len(ms), count_distinct_volumes(vols), min(vols), max(vols)))
        else:
            rows.append(CensusRow(V, len(ms), 0))
    return rows


def census(klass, v_max, v_min=0, jobs=1, cache=None, seed=None):
    """Enumerate and measure every candidate with ``v_min <= V <= v_max``.

    Returns ``(rows, measurements)``.
    """
    klass = PolyClass.parse(klass)
    budget = EnumerationBudget(klass, v_max, jobs, v_min)
    polys = list(enumerate_candidates(budget))
    ms = measure_all(polys, jobs, cache, seed)
    return census_rows(klass, ms, v_min, v_max), ms


def census_csv(rows):
    lines = ["vertices,polyhedra,volumes,min_volume,max_volume"]
    for r in rows:
        lo = "" if r.min_volume is None else format_number(r.min_volume)
        hi = "" if r.max_volume is None else format_number(r.max_volume)
        lines.append(f"{r.vertices},{r.polyhedra_count},{r.distinct_volume_count},{lo},{hi}")
    return "\n".join(lines) + "\n"


def volume_coincidences(measurements, tol=1e-6):
    """Pairs of distinct polyhedra with the same V whose volumes agree within ``tol``."""
    out = []
    ok = [m for m in measurements if m.ok]
    for i, a in enumerate(ok):
        for b in ok[i + 1:]:
            if a.vertex_count == b.vertex_count and abs(a.volume - b.volume) <= tol:
                out.append((a.vertex_count, a.code, b.code, a.volume))
    return out


# --- figures -----------------------------------------------------------------------------

@dataclass
class FigureData:
    dots: list
    lines: list


def figure_data(klass, measurements, v_max, v_min=0):
    """Volumes as dots plus the lower and improved upper bounds as lines."""
    klass = PolyClass.parse(klass)
    dots = [(m.vertex_count, m.volume) for m in measurements if m.ok]
    dots.sort()
    lines = []
    c = 5.0 * v3() / 8.0
    for V in _v_range(klass, v_min, v_max):
        if klass is PolyClass.IDEAL:
            lines.append(("lower", V, (V - 2) * v8() / 4.0))
            if V >= 9:
                lines.append(("improved_upper", V, (V - 5) * v8() / 2.0))
        else:
            lines.append(("lower", V, (V - 8) * v8() / 32.0))
            if V >= 24:
                lines.append(("improved_upper", V, (V - 14) * c))
    return FigureData(dots, lines)


def figure_csv(fig):
    out = ["series,vertices,volume"]
    for V, vol in fig.dots:
        out.append(f"dot,{V},{format_number(vol)}")
    for kind, V, val in fig.lines:
        out.append(f"{kind},{V},{format_number(val)}")
    return "\n".join(out) + "\n"


# --- single polyhedron report ---------------------------------------------------------------

def check_polyhedron(skeleton, klass=None, cache=None, seed=None):
    """Full report for one embedded graph; returns ``(report_dict, exit_code)``."""
    P = CombPolyhedron.from_skeleton(skeleton, klass)
    if P.klass is PolyClass.IDEAL:
        identity = check_ideal_identity(P)
        admissible = passes_ideal_prefilters(P)
    else:
        identity = check_compact_identity(P)
        admissible = is_pogorelov(P)
    out = {
        "V": P.vertex_count,
        "class": P.klass.value,
        "canonical_code": canonical_code(P).hex(),
        "face_vector": {str(k): v for k, v in sorted(P.face_vector.items())},
        "identities": bool(identity),
        "admissible": bool(admissible),
        "realization": None,
        "volume": None,
    }
    code = EXIT_OK
    vol = None
    if admissible:
        m = measure(P, cache, seed)
        if m.ok:
            out["realization"] = {"status": "ok", "residual": m.residual}
            vol = m.volume
        else:
            out["realization"] = {"status": "failed", "error": m.error}
            code = EXIT_REALIZATION_FAILURE
    else:
        out["realization"] = {"status": "not admissible"}
        code = EXIT_REALIZATION_FAILURE
    out["volume"] = vol
    try:
        report = bound_report(P, vol).to_dict()
    except RightAngledError as exc:
        report = {"error": str(exc)}
    out["bounds"] = report
    if vol is not None and report.get("sandwich") is False:
        code = EXIT_BOUND_VIOLATION
    return out, code
