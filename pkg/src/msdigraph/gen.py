"""Order-by-order generation of unlabeled minimal strong digraphs.

Every MSC digraph of order n >= 2 arises from one of order n - 1 by an
internal expansion over an arc, an external expansion ``e_uu`` at a vertex,
or an external expansion ``e_uw`` over a non-adjacent pair that keeps the
result minimal.  Children are canonicalized and deduplicated globally per
order.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import os
import tempfile
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .canon import _orbit_roots, canonical_labeling_masks
from .core import _in_masks, _mask_is_msc
from .digraph6 import arc_count, decode_masks, encode_bits, matrix_bits
from .xform import admissible_external_pairs

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 4_000_000

ORACLE_MAX_ORDER = 5


class CatalogError(ValueError):
    pass


@dataclass
class Catalog:
    """Sorted, duplicate-free canonical codes of every MSC digraph of one order."""

    order: int
    entries: list[bytes]
    counts: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.counts:
            self.counts = count_by_arcs(self.entries)

    @property
    def total(self) -> int:
        return len(self.entries)

    def count_line(self, arcs: int | None = None) -> str:
        if arcs is not None:
            return str(self.counts.get(arcs, 0))
        cells = " ".join(f"m={m}:{c}" for m, c in sorted(self.counts.items()))
        return f"{cells} total={self.total}".strip()

    def check(self) -> None:
        if any(a >= b for a, b in zip(self.entries, self.entries[1:])):
            raise CatalogError(f"order {self.order} catalog is not strictly sorted")
        if sum(self.counts.values()) != self.total:
            raise CatalogError(f"order {self.order} counts do not sum to the entry total")
        for rec in self.entries:
            if rec[1] - 63 != self.order:
                raise CatalogError(f"entry {rec!r} has the wrong order")


def count_by_arcs(entries: Iterable[bytes]) -> dict[int, int]:
    return dict(sorted(Counter(arc_count(e) for e in entries).items()))


def seed_catalog() -> Catalog:
    """Order 1: the single vertex."""
    return Catalog(1, [encode_bits(1, 0)])


class DedupStore:
    """Ordered set of codes that spills sorted runs to disk past ``budget`` entries.

    Runs are newline-delimited digraph6 files merged (with duplicate removal)
    by :meth:`sorted_unique`.
    """

    def __init__(self, budget: int = DEFAULT_BUDGET, scratch: str | os.PathLike | None = None):
        self.budget = budget
        self.scratch = Path(scratch) if scratch is not None else None
        self._mem: set[bytes] = set()
        self._runs: list[Path] = []
        self._tmpdir: tempfile.TemporaryDirectory | None = None

    def add(self, code: bytes) -> None:
        self._mem.add(code)
        if len(self._mem) >= self.budget:
            self._spill()

    def update(self, codes: Iterable[bytes]) -> None:
        for c in codes:
            self.add(c)

    def _run_dir(self) -> Path:
        if self._tmpdir is None:
            self._tmpdir = tempfile.TemporaryDirectory(prefix="msd-", dir=self.scratch)
        return Path(self._tmpdir.name)

    def _spill(self) -> None:
        path = self._run_dir() / f"run{len(self._runs):05d}.d6"
        with open(path, "wb") as fh:
            for code in sorted(self._mem):
                fh.write(code + b"\n")
        self._runs.append(path)
        self._mem.clear()
        log.debug("spilled run %s", path)

    @staticmethod
    def _read_run(path: Path) -> Iterator[bytes]:
        with open(path, "rb") as fh:
            for line in fh:
                yield line.rstrip(b"\n")

    def sorted_unique(self) -> Iterator[bytes]:
        streams = [self._read_run(p) for p in self._runs]
        streams.append(iter(sorted(self._mem)))
        prev = None
        for code in heapq.merge(*streams):
            if code != prev:
                yield code
                prev = code

    def close(self) -> None:
        if self._tmpdir is not None:
            self._tmpdir.cleanup()
            self._tmpdir = None
        self._runs.clear()
        self._mem.clear()


def _orbit_reps(items: Sequence[tuple[int, ...]], gens: list[list[int]]) -> list[tuple[int, ...]]:
    """One representative per orbit of ``items`` (tuples of vertices) under ``gens``."""
    if not gens:
        return list(items)
    index = {it: i for i, it in enumerate(items)}
    perms = []
    for g in gens:
        perms.append([index[tuple(g[x] for x in it)] for it in items])
    roots = _orbit_roots(len(items), perms)
    return [it for i, it in enumerate(items) if roots[i] == i]


def children(out: Sequence[int], n: int, gens: list[list[int]] | None = None) -> Iterator[list[int]]:
    """Out-masks of every expansion of one MSC parent.

    With automorphism generators of the parent, only one expansion per orbit
    of arcs, vertices and admissible pairs is produced.
    """
    gens = gens or []
    fresh = 1 << n
    arcs = [(u, w) for u in range(n) for w in range(n) if out[u] >> w & 1]
    for u, w in _orbit_reps(arcs, gens):
        child = list(out)
        child[u] = (child[u] & ~(1 << w)) | fresh
        child.append(1 << w)
        yield child
    for (u,) in _orbit_reps([(u,) for u in range(n)], gens):
        child = list(out)
        child[u] |= fresh
        child.append(1 << u)
        yield child
    if n >= 2:
        for u, w in _orbit_reps(admissible_external_pairs(out, n), gens):
            child = list(out)
            child[u] |= fresh
            child.append(1 << w)
            yield child


def child_codes(parents: Iterable[bytes]) -> Iterator[bytes]:
    """Canonical code of every child of every parent (duplicates included)."""
    for rec in parents:
        n, out = decode_masks(rec)
        gens = canonical_labeling_masks(out).generators
        for child in children(out, n, gens):
            yield canonical_labeling_masks(child).code


def expand_codes(parents: Sequence[bytes]) -> list[bytes]:
    """Canonical codes of every child of ``parents``, sorted and unique."""
    return sorted(set(child_codes(parents)))


def _shards(entries: Sequence[bytes], k: int) -> list[list[bytes]]:
    return [list(entries[i::k]) for i in range(k)]


def expand_catalog(
    prev: Catalog,
    jobs: int = 1,
    scratch: str | os.PathLike | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Catalog:
    """The complete catalog of order ``prev.order + 1``.

    ``jobs > 1`` shards the parents across worker processes; the merged result
    is sorted, so it does not depend on the shard count.
    """
    if not prev.entries:
        raise CatalogError("parent catalog is empty")
    prev.check()
    n = prev.order + 1
    store = DedupStore(budget=budget, scratch=scratch)
    try:
        if jobs <= 1 or len(prev.entries) < 2 * jobs:
            store.update(child_codes(prev.entries))
        else:
            shards = _shards(prev.entries, jobs * 4)
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for codes in pool.map(expand_codes, shards):
                    store.update(codes)
        entries = list(store.sorted_unique())
    finally:
        store.close()
    log.info("order %d: %d digraphs", n, len(entries))
    return Catalog(n, entries)


def enumerate_to(
    n_max: int,
    jobs: int = 1,
    scratch: str | os.PathLike | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[Catalog]:
    """Catalogs for orders 1..n_max, each grown from the previous one."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    catalogs = [seed_catalog()]
    while catalogs[-1].order < n_max:
        try:
            catalogs.append(expand_catalog(catalogs[-1], jobs=jobs, scratch=scratch, budget=budget))
        except MemoryError as exc:
            raise MemoryError(f"ran out of memory after completing order {catalogs[-1].order}") from exc
    return catalogs


def _relabel_bits(out: Sequence[int], n: int, perm: Sequence[int]) -> int:
    new = [0] * n
    for u in range(n):
        m = out[u]
        pu = perm[u]
        while m:
            low = m & -m
            new[pu] |= 1 << perm[low.bit_length() - 1]
            m ^= low
    return matrix_bits(new, n)


def brute_force_msd_count(n: int) -> dict[int, int]:
    """Unlabeled MSC digraphs of order ``n`` by arc count, by exhaustive scan.

    Every labeled loop-free digraph is tested for minimal strong connectivity;
    survivors are identified up to isomorphism by their smallest adjacency
    bitstring over all n! relabelings.  Independent of the canonical-form code.
    """
    if not 2 <= n <= ORACLE_MAX_ORDER:
        raise ValueError(f"brute force is limited to orders 2..{ORACLE_MAX_ORDER}")
    slots = [(u, w) for u in range(n) for w in range(n) if u != w]
    perms = list(itertools.permutations(range(n)))
    seen: set[int] = set()
    counts: Counter[int] = Counter()
    for mask in range(1 << len(slots)):
        out = [0] * n
        bit = 0
        mm = mask
        while mm:
            if mm & 1:
                u, w = slots[bit]
                out[u] |= 1 << w
            mm >>= 1
            bit += 1
        if not all(out):
            continue
        inn = _in_masks(out, n)
        if not all(inn):
            continue
        if not _mask_is_msc(out, n):
            continue
        key = min(_relabel_bits(out, n, p) for p in perms)
        if key not in seen:
            seen.add(key)
            counts[mask.bit_count()] += 1
    return dict(sorted(counts.items()))


def directed_tree_counts(catalogs: Iterable[Catalog]) -> dict[int, int]:
    """Per order n >= 2, the number of entries with 2n - 2 arcs."""
    return {c.order: c.counts.get(2 * c.order - 2, 0) for c in catalogs if c.order >= 2}
