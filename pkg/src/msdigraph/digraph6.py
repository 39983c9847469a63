"""digraph6 line format (single-byte order header, so n <= 62).

A record is ``&``, then chr(n + 63), then the n*n adjacency bits in row-major
order (diagonal included) packed big-endian into 6-bit groups, each stored as
chr(value + 63).  The ``&`` is always written and optional on input.
"""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .core import MAX_ORDER, Digraph


class Digraph6Error(ValueError):
    pass


def _bits_to_bytes(n: int, bits: int) -> bytes:
    total = n * n
    pad = -total % 6
    bits <<= pad
    ngroups = (total + pad) // 6
    body = bytes(((bits >> (6 * (ngroups - 1 - i))) & 63) + 63 for i in range(ngroups))
    return b"&" + bytes([n + 63]) + body


def matrix_bits(out: tuple[int, ...] | list[int], n: int) -> int:
    """Adjacency matrix as one integer, row 0 / column 0 most significant."""
    bits = 0
    for u in range(n):
        row = 0
        m = out[u]
        while m:
            low = m & -m
            row |= 1 << (n - low.bit_length())
            m ^= low
        bits = (bits << n) | row
    return bits


def encode_bits(n: int, bits: int) -> bytes:
    if not 1 <= n <= MAX_ORDER:
        raise Digraph6Error(f"order {n} not encodable in the short header form")
    return _bits_to_bytes(n, bits)


def encode(d: Digraph) -> bytes:
    return encode_bits(d.order, matrix_bits(d.out, d.order))


def decode_masks(record: bytes | str) -> tuple[int, tuple[int, ...]]:
    """Decode to ``(order, out_masks)`` without building a :class:`Digraph`."""
    if isinstance(record, str):
        record = record.encode("ascii")
    record = record.strip()
    if record.startswith(b"&"):
        record = record[1:]
    if not record:
        raise Digraph6Error("empty record")
    n = record[0] - 63
    if not 1 <= n <= MAX_ORDER:
        raise Digraph6Error(f"bad order byte {record[0]!r}")
    total = n * n
    ngroups = -(-total // 6)
    body = record[1:]
    if len(body) != ngroups:
        raise Digraph6Error(f"expected {ngroups} data bytes for order {n}, got {len(body)}")
    bits = 0
    for b in body:
        if not 63 <= b <= 126:
            raise Digraph6Error(f"byte {b} outside 63..126")
        bits = (bits << 6) | (b - 63)
    pad = ngroups * 6 - total
    if bits & ((1 << pad) - 1):
        raise Digraph6Error("nonzero padding bits")
    bits >>= pad
    rowmask = (1 << n) - 1
    out = []
    for u in range(n):
        row = (bits >> (n * (n - 1 - u))) & rowmask
        # reverse so that bit w of the mask is column w
        m = int(f"{row:0{n}b}"[::-1], 2)
        if m >> u & 1:
            raise Digraph6Error(f"self-loop at vertex {u}")
        out.append(m)
    return n, tuple(out)


def decode(record: bytes | str) -> Digraph:
    n, out = decode_masks(record)
    return Digraph(n, out)


def arc_count(record: bytes) -> int:
    """Number of arcs, read straight from the packed bytes."""
    start = 2 if record[:1] == b"&" else 1
    return sum((b - 63).bit_count() for b in record[start:])


def read_records(fh: TextIO) -> Iterator[tuple[int, Digraph]]:
    """Yield ``(line_number, digraph)``; blank lines are skipped."""
    for lineno, line in enumerate(fh, 1):
        line = line.strip()
        if not line:
            continue
        try:
            yield lineno, decode(line)
        except (Digraph6Error, ValueError) as exc:
            raise Digraph6Error(f"line {lineno}: {exc}") from exc


def write_records(fh: TextIO, records: Iterable[bytes]) -> int:
    count = 0
    for rec in records:
        fh.write(rec.decode("ascii"))
        fh.write("\n")
        count += 1
    return count
