"""graph6 encoding and decoding.

Follows the published nauty format: an order prefix (one byte for
n <= 62, ``~`` plus three bytes up to 258047) followed by the upper
triangle of the adjacency matrix, column by column, packed six bits per
printable byte (value + 63). Orders above the graph capacity are rejected.
"""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .errors import GraphFormatError
from .graph import MAX_ORDER, Graph

HEADER = ">>graph6<<"


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError(f"graph6 cannot encode n={n}")


def encode(g: Graph) -> str:
    """graph6 text for ``g`` (no trailing newline)."""
    n = g.n
    out = [_encode_order(n)]
    acc = 0
    nbits = 0
    adj = g.adj
    for j in range(1, n):
        col = adj[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def decode(text: str) -> Graph:
    """Parse one graph6 line; raises :class:`GraphFormatError` with a byte offset."""
    start = 0
    if text.startswith(HEADER):
        start = len(HEADER)
    line = text.rstrip("\n")
    data = line.encode("latin-1", errors="replace")
    for pos in range(start, len(data)):
        if not 63 <= data[pos] <= 126:
            raise GraphFormatError(f"invalid graph6 byte {data[pos]!r}", pos)
    if len(data) <= start:
        raise GraphFormatError("empty graph6 string", start)

    pos = start
    if data[pos] != 126:
        n = data[pos] - 63
        pos += 1
    else:
        if pos + 1 < len(data) and data[pos + 1] == 126:
            raise GraphFormatError("8-byte order prefix exceeds capacity", pos)
        if pos + 4 > len(data):
            raise GraphFormatError("truncated order prefix", len(data))
        n = 0
        for k in range(1, 4):
            n = (n << 6) | (data[pos + k] - 63)
        pos += 4
        if n <= 62:
            raise GraphFormatError("non-minimal order prefix", start)
    if n > MAX_ORDER:
        raise GraphFormatError(f"order {n} exceeds capacity {MAX_ORDER}", start)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos != nbytes:
        off = pos + min(nbytes, len(data) - pos)
        raise GraphFormatError(f"expected {nbytes} data bytes for n={n}, got {len(data) - pos}", off)

    rows = [0] * n
    bit = 0
    i, j = 0, 1
    for k in range(nbytes):
        val = data[pos + k] - 63
        for s in range(5, -1, -1):
            b = val >> s & 1
            if bit >= nbits:
                if b:
                    raise GraphFormatError("nonzero padding bits", pos + k)
                continue
            if b:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
            i += 1
            if i == j:
                i = 0
                j += 1
    return Graph(n, rows, check=False)


def read_lines(stream: TextIO | Iterable[str]) -> Iterator[Graph]:
    """Decode one graph per non-blank line."""
    for line in stream:
        line = line.strip()
        if line:
            yield decode(line)


def write_lines(graphs: Iterable[Graph], stream: TextIO) -> None:
    for g in graphs:
        stream.write(encode(g) + "\n")
