"""graph6 encoding and the ``RAMSEY-COLORING v1`` file format.

graph6 packs the upper adjacency triangle column by column (x(0,1),
x(0,2), x(1,2), x(0,3), ...) into 6-bit groups, each written as
``chr(value + 63)``.  The vertex count is one byte for n <= 62, ``~``
plus three bytes for n <= 258047, and ``~~`` plus six bytes above that.
"""

from __future__ import annotations

import os

from .graph import SimpleGraph, TwoColoring

COLORING_HEADER = "RAMSEY-COLORING v1"
_GRAPH6_HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    pass


def _encode_n(n: int) -> str:
    if n < 0:
        raise Graph6Error("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise Graph6Error(f"vertex count {n} too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, number of header bytes consumed)."""
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        width, start = 6, 2
    else:
        width, start = 3, 1
    chunk = data[start:start + width]
    if len(chunk) != width:
        raise Graph6Error("truncated vertex-count header")
    n = 0
    for c in chunk:
        n = (n << 6) | (c - 63)
    if width == 3 and n <= 62 or width == 6 and n <= 258047:
        raise Graph6Error("vertex count not in its shortest form")
    return n, start + width


def write_graph6(g: SimpleGraph) -> str:
    out = [_encode_n(g.n)]
    acc = 0
    nbits = 0
    adj = g.adj
    for j in range(1, g.n):
        row = adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> SimpleGraph:
    text = text.strip()
    if text.startswith(_GRAPH6_HEADER):
        text = text[len(_GRAPH6_HEADER):]
    try:
        data = text.encode("ascii")
    except UnicodeEncodeError as exc:
        raise Graph6Error("graph6 must be printable ASCII") from exc
    for c in data:
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte {c!r} outside the graph6 alphabet")
    n, pos = _decode_n(data)
    body = data[pos:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}")
    adj = [0] * n
    k = 0
    i, j = 0, 1
    for byte in body:
        value = byte - 63
        for shift in range(5, -1, -1):
            bit = value >> shift & 1
            if k < nbits:
                if bit:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                i += 1
                if i == j:
                    i, j = 0, j + 1
            elif bit:
                raise Graph6Error("nonzero padding bits")
            k += 1
    return SimpleGraph(n, adj, check=False)


def format_coloring(c: TwoColoring) -> str:
    return f"{COLORING_HEADER}\n{write_graph6(c.red)}\n"


def parse_coloring(text: str) -> TwoColoring:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) != 2 or lines[0] != COLORING_HEADER:
        raise Graph6Error(f"not a {COLORING_HEADER} file")
    return TwoColoring(parse_graph6(lines[1]))


def write_coloring(path: str | os.PathLike, c: TwoColoring) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_coloring(c))


def read_coloring(path: str | os.PathLike) -> TwoColoring:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_coloring(fh.read())


def read_graph(path: str | os.PathLike) -> SimpleGraph:
    """Read the first graph6 line of a file (blank lines ignored)."""
    with open(path, encoding="ascii") as fh:
        for line in fh:
            if line.strip():
                return parse_graph6(line)
    raise Graph6Error(f"no graph in {path}")
