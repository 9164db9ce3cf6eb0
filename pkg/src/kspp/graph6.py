"""graph6 encoding for graphs with at most 62 vertices.

The upper triangle of the adjacency matrix is read column by column
(x(0,1), x(0,2), x(1,2), x(0,3), ...), packed six bits per byte with the
high bit first, zero-padded, and offset by 63.  The single leading byte is
63 + n.  Longer size headers are rejected.
"""
from __future__ import annotations

from typing import Iterator, TextIO

from .graph import Graph, GraphError

MAX_N = 62


class Graph6Error(GraphError):
    """Malformed graph6 text.  ``position`` is the offending byte offset."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (byte {position})")
        self.position = position


def _column_pairs(n: int) -> Iterator[tuple[int, int]]:
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, str):
        data = text.encode("ascii", errors="replace")
    else:
        data = bytes(text)
    data = data.rstrip(b"\r\n")
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"byte value {byte} outside 63..126", pos)
    n = data[0] - 63
    if n > MAX_N:
        raise Graph6Error(f"multi-byte size headers (n > {MAX_N}) are not supported", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[1:]
    if len(body) < nbytes:
        raise Graph6Error(f"truncated: n={n} needs {nbytes} edge bytes, found {len(body)}",
                          len(data))
    if len(body) > nbytes:
        raise Graph6Error(f"trailing data after {nbytes} edge bytes", 1 + nbytes)
    masks = [0] * n
    bit = 0
    for i, j in _column_pairs(n):
        value = body[bit // 6] - 63
        if (value >> (5 - bit % 6)) & 1:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        bit += 1
    if nbits % 6:
        pad = (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise Graph6Error("nonzero padding bits", len(data) - 1)
    return Graph(n, masks)


def write_graph6(G: Graph) -> str:
    if G.n > MAX_N:
        raise GraphError(f"graph6 output supports n <= {MAX_N}, got n={G.n}")
    out = [chr(63 + G.n)]
    value = 0
    filled = 0
    for i, j in _column_pairs(G.n):
        value = (value << 1) | ((G.masks[i] >> j) & 1)
        filled += 1
        if filled == 6:
            out.append(chr(63 + value))
            value = filled = 0
    if filled:
        out.append(chr(63 + (value << (6 - filled))))
    return "".join(out)


def read_graph6_lines(stream: TextIO) -> Iterator[tuple[int, str, Graph | Graph6Error]]:
    """Yield ``(line_number, text, graph_or_error)`` for each non-blank line.

    Parse failures are yielded rather than raised so corpus scans can record
    and skip them.
    """
    for lineno, line in enumerate(stream, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            yield lineno, text, parse_graph6(text)
        except Graph6Error as exc:
            yield lineno, text, exc
