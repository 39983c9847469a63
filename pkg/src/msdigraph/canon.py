"""Canonical forms of digraphs by partition refinement plus individualization.

The refinement step splits cells until every vertex of a cell sends the same
number of arcs into, and receives the same number from, every cell.  That
alone does not separate all non-isomorphic digraphs, so the search
individualizes each vertex of the first non-singleton cell in turn, refines
again, and recurses; the canonical code is the smallest row-major adjacency
bitstring over all discrete partitions reached.  Automorphisms discovered at
equal leaves prune sibling branches in the same orbit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import Digraph, _in_masks
from .digraph6 import encode_bits

Cells = list[list[int]]


def _refine(out: Sequence[int], inn: Sequence[int], cells: Cells) -> Cells:
    """Coarsest equitable refinement of ``cells`` (fragments in signature order)."""
    while True:
        if len(cells) == len(out):
            return cells
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        split = False
        new_cells: Cells = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                ov, iv = out[v], inn[v]
                sig = (
                    tuple([(ov & m).bit_count() for m in masks]),
                    tuple([(iv & m).bit_count() for m in masks]),
                )
                g = groups.get(sig)
                if g is None:
                    groups[sig] = [v]
                else:
                    g.append(v)
            if len(groups) == 1:
                new_cells.append(cell)
            else:
                split = True
                for sig in sorted(groups):
                    new_cells.append(groups[sig])
        if not split:
            return new_cells
        cells = new_cells


def _leaf_code(out: Sequence[int], order: Sequence[int]) -> int:
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = n - 1 - i
    code = 0
    for v in order:
        row = 0
        m = out[v]
        while m:
            low = m & -m
            row |= 1 << pos[low.bit_length() - 1]
            m ^= low
        code = (code << n) | row
    return code


def _orbit_roots(n: int, gens: list[list[int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for a in range(n):
            ra, rb = find(a), find(g[a])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return [find(x) for x in range(n)]


class _Abort(Exception):
    def __init__(self, depth: int):
        self.depth = depth


@dataclass
class CanonicalLabeling:
    """Result of the search.

    ``order[i]`` is the vertex placed at canonical position ``i``; ``bits`` is
    the canonical adjacency bitstring; ``generators`` generate (a subgroup
    containing enough of) the automorphism group found during the search.
    """

    n: int
    bits: int
    order: list[int]
    generators: list[list[int]] = field(default_factory=list)

    @property
    def code(self) -> bytes:
        return encode_bits(self.n, self.bits)


class _Search:
    def __init__(self, out: Sequence[int], inn: Sequence[int]):
        self.out = out
        self.inn = inn
        self.n = len(out)
        self.first_order: list[int] | None = None
        self.first_path: list[int] = []
        self.first_bits = -1
        self.best_order: list[int] | None = None
        self.best_bits = -1
        self.gens: list[list[int]] = []

    def _automorphism(self, src: list[int], dst: list[int]) -> list[int]:
        g = [0] * self.n
        for a, b in zip(src, dst):
            g[a] = b
        return g

    def _leaf(self, cells: Cells, path: list[int]) -> None:
        order = [c[0] for c in cells]
        bits = _leaf_code(self.out, order)
        if self.first_order is None:
            self.first_order = self.best_order = order
            self.first_path = list(path)
            self.first_bits = self.best_bits = bits
            return
        if bits == self.first_bits:
            g = self._automorphism(self.first_order, order)
            self.gens.append(g)
            fp = self.first_path
            d = 0
            while d < len(path) and d < len(fp) and path[d] == fp[d]:
                d += 1
            if d < len(fp) and d < len(path) and g[fp[d]] == path[d] and all(
                g[x] == x for x in fp[:d]
            ):
                # this whole branch is the image of the first branch
                raise _Abort(d)
            return
        if bits == self.best_bits:
            self.gens.append(self._automorphism(self.best_order, order))
        elif bits < self.best_bits:
            self.best_bits = bits
            self.best_order = order

    def run(self, cells: Cells, path: list[int]) -> None:
        cells = _refine(self.out, self.inn, cells)
        if len(cells) == self.n:
            self._leaf(cells, path)
            return
        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[idx]
        head, tail = cells[:idx], cells[idx + 1 :]
        done: list[int] = []
        ngens_seen = -1
        roots: list[int] = []
        for x in target:
            if done and self.gens:
                if len(self.gens) != ngens_seen:
                    ngens_seen = len(self.gens)
                    fixing = [g for g in self.gens if all(g[p] == p for p in path)]
                    roots = _orbit_roots(self.n, fixing) if fixing else []
                if roots and any(roots[x] == roots[y] for y in done):
                    continue
            rest = [y for y in target if y != x]
            path.append(x)
            try:
                self.run(head + [[x], rest] + tail, path)
            except _Abort as ab:
                if ab.depth < len(path) - 1:
                    raise
            finally:
                path.pop()
            done.append(x)


def canonical_labeling_masks(out: Sequence[int], inn: Sequence[int] | None = None) -> CanonicalLabeling:
    n = len(out)
    if inn is None:
        inn = _in_masks(out, n)
    search = _Search(out, inn)
    search.run([list(range(n))], [])
    assert search.best_order is not None
    return CanonicalLabeling(n, search.best_bits, search.best_order, search.gens)


def canonical_labeling(d: Digraph) -> CanonicalLabeling:
    return canonical_labeling_masks(d.out, d.inn)


def canonical_form(d: Digraph) -> bytes:
    """digraph6 record of the canonical relabelling of ``d``."""
    return canonical_labeling_masks(d.out, d.inn).code


def canonical_code_masks(out: Sequence[int]) -> bytes:
    return canonical_labeling_masks(out).code


def canonical_digraph(d: Digraph) -> Digraph:
    lab = canonical_labeling(d)
    perm = [0] * d.order
    for i, v in enumerate(lab.order):
        perm[v] = i
    return d.relabel(perm)


def equitable_partition(d: Digraph, initial: Sequence[Sequence[int]] | None = None) -> Cells:
    """Coarsest equitable refinement of ``initial`` (default: one cell)."""
    if initial is None:
        cells = [list(range(d.order))]
    else:
        cells = [list(c) for c in initial]
        seen = sorted(v for c in cells for v in c)
        if seen != list(range(d.order)) or any(not c for c in cells):
            raise ValueError("initial partition must cover every vertex exactly once")
    return _refine(d.out, d.inn, cells)


def is_equitable(d: Digraph, cells: Sequence[Sequence[int]]) -> bool:
    masks = [sum(1 << v for v in c) for c in cells]
    for c in cells:
        sigs = {
            (tuple((d.out[v] & m).bit_count() for m in masks), tuple((d.inn[v] & m).bit_count() for m in masks))
            for v in c
        }
        if len(sigs) > 1:
            return False
    return True


def are_isomorphic(d1: Digraph, d2: Digraph) -> bool:
    if d1.order != d2.order or d1.size != d2.size:
        return False
    return canonical_form(d1) == canonical_form(d2)
