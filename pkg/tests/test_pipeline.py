import json
import os
import subprocess
import sys

import pytest
from pytest import approx

from rightangled import pipeline
from rightangled.catalog import (
    compact_dodecahedron,
    cube,
    dodecahedron,
    ideal_antiprism,
    ideal_octahedron,
    octahedron,
)
from rightangled.cli import main
from rightangled.combinatorics import canonical_code
from rightangled.exchange import loads_text, write_graphs
from rightangled.lobachevsky import v8
from rightangled.pipeline import (
    RealizationCache,
    census,
    census_csv,
    figure_csv,
    figure_data,
    format_number,
    make_record,
    measure,
)
from rightangled.realization import realize


@pytest.mark.parametrize("x,text", [
    (0.0000005, "0.000000"),
    (0.0000015, "0.000002"),
    (0.0000025, "0.000002"),
    (2.5e-7, "0.000000"),
    (3.663862376708876, "3.663862"),
    (1.0149416064096536, "1.014942"),
    (-0.0000035, "-0.000004"),
    (12.0, "12.000000"),
])
def test_format_number_half_even(x, text):
    assert format_number(x) == text


def test_format_number_decimals():
    assert format_number(0.125, 2) == "0.12"
    assert format_number(0.375, 2) == "0.38"


# --- cache -----------------------------------------------------------------------

def test_cache_round_trip(tmp_path):
    cache = RealizationCache(tmp_path)
    P = ideal_octahedron()
    R = realize(P)
    rec = make_record(R, 3.663862376708876)
    cache.store(rec)
    code = canonical_code(P)
    assert cache.load("ideal", code) == json.loads(json.dumps(rec))
    path = cache.path("ideal", code)
    assert path.startswith(str(tmp_path)) and path.endswith(".json")
    # a second store leaves the bytes unchanged
    first = open(path).read()
    cache.store(rec)
    assert open(path).read() == first


def test_cache_hit_skips_solver(tmp_path, monkeypatch):
    cache = RealizationCache(tmp_path)
    P = compact_dodecahedron()
    cold = measure(P, cache)

    def boom(*a, **k):
        raise AssertionError("solver called on a warm cache")

    monkeypatch.setattr(pipeline, "realize", boom)
    warm = measure(P, cache)
    assert warm.volume == cold.volume
    assert warm.to_dict() == cold.to_dict()


def test_cache_version_bump_is_a_miss(tmp_path, monkeypatch):
    cache = RealizationCache(tmp_path)
    P = ideal_octahedron()
    measure(P, cache)
    code = canonical_code(pipeline.canonicalize(P))
    assert cache.load("ideal", code) is not None
    monkeypatch.setattr(pipeline, "SOLVER_VERSION", "something-newer")
    assert cache.load("ideal", code) is None


def test_corrupt_record_is_recomputed(tmp_path):
    cache = RealizationCache(tmp_path)
    P = ideal_octahedron()
    code = canonical_code(pipeline.canonicalize(P))
    path = cache.path("ideal", code)
    os.makedirs(os.path.dirname(path))
    with open(path, "w") as fh:
        fh.write('{"canonical_code": "tru')
    assert cache.load("ideal", code) is None
    m = measure(P, cache)
    assert m.volume == approx(v8(), abs=1e-12)
    assert cache.load("ideal", code) is not None


def test_tampered_geometry_is_rejected(tmp_path):
    cache = RealizationCache(tmp_path)
    P = ideal_octahedron()
    measure(P, cache)
    code = canonical_code(pipeline.canonicalize(P))
    path = cache.path("ideal", code)
    rec = json.load(open(path))
    rec["normals"][0][1] += 0.01
    rec["volume"] = 99.0
    with open(path, "w") as fh:
        json.dump(rec, fh)
    assert measure(P, cache).volume == approx(v8(), abs=1e-12)


# --- census and figures ---------------------------------------------------------------

def test_census_rows_small():
    rows, ms = census("ideal", 10)
    assert [(r.vertices, r.polyhedra_count, r.distinct_volume_count) for r in rows] == [
        (6, 1, 1), (7, 0, 0), (8, 1, 1), (9, 1, 1), (10, 2, 2)]
    text = census_csv(rows)
    assert text.splitlines()[0] == "vertices,polyhedra,volumes,min_volume,max_volume"
    assert "7,0,0,," in text
    assert "6,1,1,3.663862,3.663862" in text
    assert all(m.violations == [] for m in ms)


def test_census_is_order_independent():
    rows_a, ms_a = census("compact", 28)
    rows_b, ms_b = census("compact", 28, jobs=2)
    assert census_csv(rows_a) == census_csv(rows_b)
    assert [m.to_dict() for m in ms_a] == [m.to_dict() for m in ms_b]


def test_figure_data_ideal():
    _, ms = census("ideal", 12)
    fig = figure_data("ideal", ms, 12)
    upper = {V: val for kind, V, val in fig.lines if kind == "improved_upper"}
    lower = {V: val for kind, V, val in fig.lines if kind == "lower"}
    assert min(upper) == 9 and max(upper) == 12
    assert lower[6] == approx(v8(), abs=1e-12)
    # the doubled octahedron sits on the improved upper line
    (nine,) = [vol for V, vol in fig.dots if V == 9]
    assert nine == approx(upper[9], abs=1e-9)
    for V, vol in fig.dots:
        assert vol >= lower[V] - 1e-9
        if V >= 10:
            assert vol <= upper[V] - 1e-3
    text = figure_csv(fig)
    assert text.startswith("series,vertices,volume\n")
    assert "dot,9,7.327725" in text


def test_figure_data_compact():
    _, ms = census("compact", 28)
    fig = figure_data("compact", ms, 28)
    kinds = {kind for kind, _, _ in fig.lines}
    assert kinds == {"lower", "improved_upper"}
    assert min(V for kind, V, _ in fig.lines if kind == "improved_upper") == 24


# --- CLI ----------------------------------------------------------------------------------------

def _write_text(path, graphs):
    write_graphs(path, graphs, "text")
    return str(path)


def test_check_octahedron(tmp_path, capsys):
    f = _write_text(tmp_path / "o.txt", [octahedron()])
    assert main(["check", f]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["class"] == "ideal" and rep["admissible"] and rep["identities"]
    assert rep["volume"] == approx(v8(), abs=1e-12)
    assert rep["bounds"]["sandwich"] is True
    flags = {b["kind"]: b["equality"] for b in rep["bounds"]["bounds"]}
    assert flags["ideal_lower_atkinson"] and flags["ideal_upper_atkinson"]


def test_check_dodecahedron(tmp_path, capsys):
    f = _write_text(tmp_path / "d.txt", [dodecahedron()])
    assert main(["check", f]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["class"] == "compact"
    assert rep["volume"] == approx(4.306207600730808, abs=1e-9)
    assert rep["bounds"]["sandwich"] is True
    assert rep["realization"]["status"] == "ok"


def test_check_cube_fails_realization(tmp_path, capsys):
    f = _write_text(tmp_path / "c.txt", [cube()])
    assert main(["check", f]) == pipeline.EXIT_REALIZATION_FAILURE
    rep = json.loads(capsys.readouterr().out)
    assert not rep["admissible"]
    assert rep["volume"] is None


def test_check_malformed_file(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("6\n1 2 3 4\n0 2 q 5\n")
    assert main(["check", str(f), "--format", "text"]) == 1
    err = capsys.readouterr().err
    assert "line 3" in err


def test_check_missing_file(tmp_path, capsys):
    assert main(["check", str(tmp_path / "nope.txt")]) == 1


def test_check_exit_code_on_violation(tmp_path, monkeypatch, capsys):
    f = _write_text(tmp_path / "o.txt", [octahedron()])
    real = pipeline.volume
    monkeypatch.setattr(pipeline, "volume", lambda R: real(R) + 0.5)
    assert main(["check", f]) == pipeline.EXIT_BOUND_VIOLATION
    rep = json.loads(capsys.readouterr().out)
    assert rep["bounds"]["sandwich"] is False


def test_enumerate_command(tmp_path, capsys):
    out = tmp_path / "ideal.txt"
    assert main(["enumerate", "--class", "ideal", "--max-v", "10", "--out", str(out)]) == 0
    graphs = loads_text(out.read_text())
    assert [g.vertex_count for g in graphs] == [6, 8, 9, 10, 10]
    binary = tmp_path / "compact.bin"
    assert main(["enumerate", "--class", "compact", "--max-v", "26", "--out", str(binary),
                 "--format", "binary"]) == 0
    assert binary.read_bytes()[0] == 20


def test_realize_command(tmp_path, capsys):
    f = _write_text(tmp_path / "a.txt", [octahedron(), ideal_antiprism(5).skeleton])
    cache = tmp_path / "cache"
    assert main(["realize", "--in", f, "--cache", str(cache)]) == 0
    recs = json.loads(capsys.readouterr().out)
    assert [r["V"] for r in recs] == [6, 10]
    assert all(r["error"] is None and r["residual"] < 1e-10 for r in recs)
    assert len(list((cache / "ideal").glob("*.json"))) == 2


def test_realize_command_failure(tmp_path, capsys):
    f = _write_text(tmp_path / "c.txt", [cube()])
    assert main(["realize", "--in", f, "--class", "compact"]) == pipeline.EXIT_REALIZATION_FAILURE


def test_volume_command(tmp_path, capsys):
    assert main(["volume", "--constants"]) == 0
    out = capsys.readouterr().out.split()
    assert out[:2] == ["v8", "3.663862376708876"]
    assert out[2:] == ["v3", "1.014941606409654"]
    f = _write_text(tmp_path / "d.txt", [dodecahedron()])
    dump = tmp_path / "dec.json"
    assert main(["volume", "--in", f, "--dump-decomposition", str(dump)]) == 0
    V, vol = capsys.readouterr().out.split()
    assert V == "20" and float(vol) == approx(4.306207600730808, abs=1e-12)
    (dec,) = json.loads(dump.read_text())
    assert len(dec["pieces"]) == 120


def test_bounds_command(capsys):
    assert main(["bounds", "--class", "ideal", "--v", "12", "--faces", "3:8,4:4,6:2", "--json"]) == 0
    bounds = json.loads(capsys.readouterr().out)
    kinds = {b["kind"] for b in bounds}
    assert {"ideal_lower_atkinson", "ideal_upper_atkinson", "ideal_upper_improved"} <= kinds
    assert main(["bounds", "--class", "compact", "--v", "20"]) == 0
    assert "compact_upper_atkinson" in capsys.readouterr().out
    assert main(["bounds", "--class", "compact", "--v", "21"]) == 1


def test_glue_command(tmp_path, capsys):
    f = _write_text(tmp_path / "o.txt", [octahedron()])
    out = tmp_path / "doubled.txt"
    assert main(["glue", "--in", f, "--face", "0", "--out", str(out)]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["V"] == record["vertex_count_check"] == 9
    assert record["volume_factor"] == 2
    assert len(record["relabel"]) == 2
    (g,) = loads_text(out.read_text())
    assert g.vertex_count == 9
    f = _write_text(tmp_path / "d.txt", [dodecahedron()])
    chain = tmp_path / "chain.txt"
    P = compact_dodecahedron()
    adj = P.face_adjacency
    far = next(g for g in range(12) if g and g not in adj[0] and not adj[g] & adj[0])
    assert main(["glue", "--in", f, "--face", "0", "--face2", str(far), "--chain", "2",
                 "--out", str(chain)]) == 0
    assert json.loads(capsys.readouterr().out)["V"] == 60
    assert main(["glue", "--in", f, "--face", "0", "--face2", "1", "--chain", "1"]) == 1


def test_census_and_figure_commands(tmp_path, capsys):
    out = tmp_path / "c.csv"
    detail = tmp_path / "c.json"
    assert main(["census", "--class", "compact", "--max-v", "28", "--out", str(out),
                 "--json", str(detail)]) == 0
    lines = out.read_text().splitlines()
    assert lines[1] == "20,1,1,4.306208,4.306208"
    assert lines[-1] == "28,3,3,7.563249,8.000234"
    info = json.loads(detail.read_text())
    assert len(info["polyhedra"]) == 6 and info["coincidences"] == []
    fig = tmp_path / "f.csv"
    assert main(["figure", "--class", "ideal", "--max-v", "10", "--out", str(fig)]) == 0
    assert "dot,6,3.663862" in fig.read_text()


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "rightangled", "volume", "--constants"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.startswith("v8 3.663862376708876")
