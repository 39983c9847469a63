import io
import random

import pytest

from msdigraph.core import Digraph
from msdigraph.digraph6 import Digraph6Error, arc_count, decode, encode, read_records


def random_digraph(rng, n):
    p = rng.random()
    return Digraph.from_arcs(n, [(u, w) for u in range(n) for w in range(n) if u != w and rng.random() < p])


def test_round_trip_10000():
    rng = random.Random(6)
    for _ in range(10_000):
        d = random_digraph(rng, rng.randint(1, 20))
        rec = encode(d)
        assert decode(rec) == d
        assert set(rec) <= {38} | set(range(63, 127))
        assert arc_count(rec) == d.size


def test_known_encodings():
    # C_2: matrix 01/10 -> bits 0110 padded to 011000 = 24 -> chr(87)
    assert encode(Digraph.cycle(2)) == b"&AW"
    assert encode(Digraph(1, (0,))) == b"&@?"
    # 3-cycle 0->1->2->0: rows 010 001 100 -> 010001 100000 -> 17, 32
    assert encode(Digraph.cycle(3)) == bytes([38, 66, 17 + 63, 32 + 63])


def test_header_optional_on_input():
    assert decode("AW") == decode("&AW") == Digraph.cycle(2)


@pytest.mark.parametrize("bad", ["&", "&A", "&AWW", "&A~", "&~AAAA", "&@@"])
def test_malformed(bad):
    with pytest.raises(Digraph6Error):
        decode(bad)


def test_read_records_reports_line():
    fh = io.StringIO("&AW\n\n&A\n")
    it = read_records(fh)
    assert next(it) == (1, Digraph.cycle(2))
    with pytest.raises(Digraph6Error, match="line 3"):
        next(it)
