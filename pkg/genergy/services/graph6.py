"""graph6 codec for orders 1..62 (single-byte size prefix).

The upper triangle x(i, j), i < j, is read column by column
((0,1), (0,2), (1,2), (0,3), ...), packed big-endian into 6-bit groups,
zero-padded, and every group is written as chr(group + 63).
"""

from typing import Annotated

from genergy.core.exceptions import Graph6ParseError, GraphValidationError
from genergy.models.graph import Graph

HEADER = ">>graph6<<"
MAX_ORDER = 62
_BIAS = 63


def _body_length(n: int) -> int:
    return (n * (n - 1) // 2 + 5) // 6


def to_graph6(g: Annotated[Graph, "Graph"]) -> str:
    """Encode g; never emits the optional header."""
    if g.n > MAX_ORDER:
        raise GraphValidationError(f"graph6 encoding supports n <= {MAX_ORDER}, got {g.n}")
    out = [chr(g.n + _BIAS)]
    group = 0
    filled = 0
    rows = g.rows
    for j in range(1, g.n):
        for i in range(j):
            group = (group << 1) | (rows[i] >> j & 1)
            filled += 1
            if filled == 6:
                out.append(chr(group + _BIAS))
                group = 0
                filled = 0
    if filled:
        out.append(chr((group << (6 - filled)) + _BIAS))
    return "".join(out)


def parse_graph6(text: Annotated[str, "graph6 text"]) -> Graph:
    """Decode one graph6 string.
    A leading ">>graph6<<" header and one trailing line break are accepted.
    Raises:
        Graph6ParseError: With the byte offset of the first bad byte.
    """
    base = 0
    if text.startswith(HEADER):
        base = len(HEADER)
        text = text[base:]
    if text.endswith("\r\n"):
        text = text[:-2]
    elif text.endswith("\n"):
        text = text[:-1]
    if not text:
        raise Graph6ParseError(base, "empty graph6 string")

    head = ord(text[0])
    if head == 126:
        raise Graph6ParseError(base, f"orders above {MAX_ORDER} are not supported")
    if not _BIAS < head < 126:
        raise Graph6ParseError(base, f"invalid size byte {head}")
    n = head - _BIAS

    expected = 1 + _body_length(n)
    for k in range(1, min(len(text), expected)):
        code = ord(text[k])
        if not _BIAS <= code <= 126:
            raise Graph6ParseError(base + k, f"byte {code} outside 63..126")
    if len(text) < expected:
        raise Graph6ParseError(
            base + len(text), f"truncated: n={n} needs {expected} bytes, got {len(text)}"
        )
    if len(text) > expected:
        raise Graph6ParseError(
            base + expected, f"trailing data: n={n} needs exactly {expected} bytes"
        )

    rows = [0] * n
    bits = ((ord(c) - _BIAS) >> shift & 1 for c in text[1:] for shift in range(5, -1, -1))
    for j in range(1, n):
        for i in range(j):
            if next(bits):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph.trusted(n, rows)
