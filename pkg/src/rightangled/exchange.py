"""Reading and writing embedded graphs.

Text format, one or more records::

    V
    n_0 n_1 ...      # neighbours of vertex 0, clockwise, 0-indexed
    ...              # V lines in total

Blank lines and ``#`` comments are ignored between and inside records.

Binary format, records concatenated with no file header: one byte holding
``V`` (1..255), then for each vertex its clockwise neighbours as 1-indexed
bytes followed by a 0 byte.

Rotation systems in memory list neighbours counterclockwise as seen from
outside the polyhedron, so both formats reverse every row on the way in and
out. Reading then writing reproduces the input exactly.
"""

import io

from .combinatorics import RotationSystem
from .errors import InvalidMap, NonPlanar, ParseError

__all__ = [
    "dumps_text",
    "loads_text",
    "dumps_binary",
    "loads_binary",
    "read_graphs",
    "write_graphs",
]


def _rows_out(rs):
    return [tuple(reversed(row)) for row in rs.neighbors]


def dumps_text(graphs):
    if isinstance(graphs, RotationSystem):
        graphs = [graphs]
    out = io.StringIO()
    for rs in graphs:
        out.write(f"{rs.vertex_count}\n")
        for row in _rows_out(rs):
            out.write(" ".join(str(w) for w in row) + "\n")
    return out.getvalue()


def _build(rows, line):
    try:
        rs = RotationSystem(tuple(tuple(reversed(r)) for r in rows))
        rs.faces  # rejects non-spherical embeddings early
    except (InvalidMap, NonPlanar) as exc:
        raise ParseError(f"invalid embedded graph: {exc}", line) from None
    return rs


def loads_text(text):
    """Parse every record of a text exchange file."""
    lines = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((no, body))
    graphs = []
    k = 0
    while k < len(lines):
        no, body = lines[k]
        try:
            n = int(body)
        except ValueError:
            raise ParseError(f"expected a vertex count, got {body!r}", no) from None
        if n < 1:
            raise ParseError(f"vertex count must be positive, got {n}", no)
        if k + n > len(lines) - 1:
            last = lines[-1][0]
            raise ParseError(f"record declares {n} vertices but the input ends early", last)
        start = no
        rows = []
        for i in range(n):
            rno, rbody = lines[k + 1 + i]
            try:
                row = [int(tok) for tok in rbody.split()]
            except ValueError:
                raise ParseError(f"non-integer neighbour in {rbody!r}", rno) from None
            bad = [w for w in row if not 0 <= w < n]
            if bad:
                raise ParseError(f"neighbour {bad[0]} out of range 0..{n - 1}", rno)
            rows.append(row)
        graphs.append(_build(rows, start))
        k += n + 1
    return graphs


def dumps_binary(graphs):
    if isinstance(graphs, RotationSystem):
        graphs = [graphs]
    out = bytearray()
    for rs in graphs:
        n = rs.vertex_count
        if n > 255:
            raise ValueError("binary format holds at most 255 vertices")
        out.append(n)
        for row in _rows_out(rs):
            out.extend(w + 1 for w in row)
            out.append(0)
    return bytes(out)


def loads_binary(data):
    data = bytes(data)
    graphs = []
    pos = 0
    while pos < len(data):
        start = pos
        n = data[pos]
        pos += 1
        if n == 0:
            raise ParseError(f"byte {start}: zero vertex count")
        rows = []
        for v in range(n):
            row = []
            while True:
                if pos >= len(data):
                    raise ParseError(f"byte {pos}: input ends inside vertex {v} of record at byte {start}")
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                if b > n:
                    raise ParseError(f"byte {pos - 1}: neighbour {b} exceeds vertex count {n}")
                row.append(b - 1)
            rows.append(row)
        try:
            graphs.append(_build(rows, None))
        except ParseError as exc:
            raise ParseError(f"record at byte {start}: {exc}") from None
    return graphs


def read_graphs(path, fmt="auto"):
    with open(path, "rb") as fh:
        data = fh.read()
    if fmt == "auto":
        fmt = "text"
        try:
            text = data.decode("ascii")
            if any(ord(c) < 9 for c in text):
                fmt = "binary"
        except UnicodeDecodeError:
            fmt = "binary"
    if fmt == "binary":
        return loads_binary(data)
    if fmt == "text":
        try:
            return loads_text(data.decode("ascii"))
        except UnicodeDecodeError as exc:
            raise ParseError(f"not an ASCII text file: {exc}") from None
    raise ValueError(f"unknown format {fmt!r}")


def write_graphs(path, graphs, fmt="text"):
    if fmt == "binary":
        with open(path, "wb") as fh:
            fh.write(dumps_binary(graphs))
    elif fmt == "text":
        with open(path, "w", newline="\n") as fh:
            fh.write(dumps_text(graphs))
    else:
        raise ValueError(f"unknown format {fmt!r}")
