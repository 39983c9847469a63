"""Digraph value type and structural predicates for (minimal) strong digraphs.

Adjacency is kept as per-vertex out/in bitmasks; bit ``w`` of ``out[u]`` is set
iff ``u -> w`` is an arc.  The mask-level helpers (``_reach``, ``_mask_*``) are
exported for the hot loops in :mod:`msdigraph.gen` and :mod:`msdigraph.xform`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 62

Arc = tuple[int, int]


class DigraphError(ValueError):
    """Raised when an operation's precondition on a digraph is violated."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _reach(out: Sequence[int], src: int) -> int:
    """Bitmask of vertices reachable from ``src`` (``src`` included)."""
    seen = frontier = 1 << src
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= out[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def _in_masks(out: Sequence[int], n: int) -> tuple[int, ...]:
    inn = [0] * n
    for u in range(n):
        bit = 1 << u
        m = out[u]
        while m:
            low = m & -m
            inn[low.bit_length() - 1] |= bit
            m ^= low
    return tuple(inn)


def _mask_is_strong(out: Sequence[int], inn: Sequence[int], n: int) -> bool:
    full = (1 << n) - 1
    return _reach(out, 0) == full and _reach(inn, 0) == full


def _mask_has_transitive_arc(out: Sequence[int], n: int) -> bool:
    work = list(out)
    for u in range(n):
        m = out[u]
        while m:
            low = m & -m
            work[u] ^= low
            hit = _reach(work, u) & low
            work[u] ^= low
            if hit:
                return True
            m ^= low
    return False


def _mask_is_msc(out: Sequence[int], n: int) -> bool:
    if n == 1:
        return not out[0]
    if not _mask_is_strong(out, _in_masks(out, n), n):
        return False
    return not _mask_has_transitive_arc(out, n)


@dataclass(frozen=True)
class Digraph:
    """Loop-free digraph on vertices ``0..order-1``.

    ``out`` holds one out-neighbour bitmask per vertex.  Instances are
    immutable and hashable; equality is labelled equality.
    """

    order: int
    out: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.order
        if not 1 <= n <= MAX_ORDER:
            raise DigraphError(f"order must be in 1..{MAX_ORDER}, got {n}")
        if len(self.out) != n:
            raise DigraphError("need one out-mask per vertex")
        full = (1 << n) - 1
        for v, m in enumerate(self.out):
            if m & ~full or m < 0:
                raise DigraphError(f"vertex {v} has an out-neighbour outside 0..{n - 1}")
            if m >> v & 1:
                raise DigraphError(f"self-loop at vertex {v}")

    @classmethod
    def from_arcs(cls, order: int, arcs: Iterable[Arc]) -> Digraph:
        out = [0] * order
        for u, w in arcs:
            if not (0 <= u < order and 0 <= w < order):
                raise DigraphError(f"arc ({u},{w}) outside 0..{order - 1}")
            if u == w:
                raise DigraphError(f"self-loop at vertex {u}")
            out[u] |= 1 << w
        return cls(order, tuple(out))

    @classmethod
    def cycle(cls, q: int) -> Digraph:
        """The directed q-cycle 0->1->...->q-1->0 (q >= 2)."""
        if q < 2:
            raise DigraphError("a cycle needs at least 2 vertices")
        return cls.from_arcs(q, ((i, (i + 1) % q) for i in range(q)))

    @classmethod
    def complete(cls, n: int) -> Digraph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def directed_tree(cls, order: int, edges: Iterable[tuple[int, int]]) -> Digraph:
        """Replace every undirected tree edge with a pair of opposite arcs."""
        edges = list(edges)
        if len(edges) != order - 1:
            raise DigraphError("a tree on n vertices has n-1 edges")
        return cls.from_arcs(order, [a for u, w in edges for a in ((u, w), (w, u))])

    @cached_property
    def inn(self) -> tuple[int, ...]:
        return _in_masks(self.out, self.order)

    @cached_property
    def arcs(self) -> frozenset[Arc]:
        return frozenset((u, w) for u in range(self.order) for w in iter_bits(self.out[u]))

    @property
    def size(self) -> int:
        return sum(m.bit_count() for m in self.out)

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def has_arc(self, u: int, w: int) -> bool:
        return bool(self.out[u] >> w & 1)

    def out_degree(self, v: int) -> int:
        return self.out[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.inn[v].bit_count()

    def with_arc(self, u: int, w: int) -> Digraph:
        out = list(self.out)
        out[u] |= 1 << w
        return Digraph(self.order, tuple(out))

    def without_arc(self, u: int, w: int) -> Digraph:
        out = list(self.out)
        out[u] &= ~(1 << w)
        return Digraph(self.order, tuple(out))

    def relabel(self, perm: Sequence[int]) -> Digraph:
        """Digraph with vertex ``v`` renamed to ``perm[v]``."""
        return Digraph.from_arcs(self.order, ((perm[u], perm[w]) for u, w in self.arcs))

    def reversed(self) -> Digraph:
        return Digraph(self.order, self.inn)

    def delete_vertex(self, v: int) -> Digraph:
        """Remove ``v``; vertices above ``v`` shift down by one."""
        if self.order == 1:
            raise DigraphError("cannot delete the only vertex")
        low = (1 << v) - 1
        out = []
        for u, m in enumerate(self.out):
            if u != v:
                out.append((m & low) | (m >> (v + 1)) << v)
        return Digraph(self.order - 1, tuple(out))

    def __repr__(self) -> str:
        arcs = ", ".join(f"{u}->{w}" for u, w in self.sorted_arcs())
        return f"Digraph({self.order}, [{arcs}])"


@dataclass(frozen=True)
class VertexCycle:
    """Directed cycle ``vertices[0] -> vertices[1] -> ... -> vertices[0]``."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) < 2:
            raise DigraphError("a cycle has at least 2 vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise DigraphError("cycle vertices must be distinct")

    def __len__(self) -> int:
        return len(self.vertices)

    def arcs(self) -> list[Arc]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def is_cycle_of(self, d: Digraph) -> bool:
        return all(0 <= v < d.order for v in self.vertices) and all(
            d.has_arc(u, w) for u, w in self.arcs()
        )


def is_strongly_connected(d: Digraph) -> bool:
    return _mask_is_strong(d.out, d.inn, d.order)


def linear_vertices(d: Digraph) -> set[int]:
    return {v for v in range(d.order) if d.out[v].bit_count() == 1 and d.inn[v].bit_count() == 1}


def is_transitive_arc(d: Digraph, u: int, w: int) -> bool:
    """True iff some u->w path other than the arc itself exists."""
    if not d.has_arc(u, w):
        raise DigraphError(f"({u},{w}) is not an arc")
    out = list(d.out)
    out[u] &= ~(1 << w)
    return bool(_reach(out, u) >> w & 1)


def transitive_arcs(d: Digraph) -> list[Arc]:
    return [a for a in d.sorted_arcs() if is_transitive_arc(d, *a)]


def is_minimal_strong(d: Digraph) -> bool:
    return _mask_is_msc(d.out, d.order)


def is_minimal_by_deletion(d: Digraph) -> bool:
    """Minimality straight from the definition: every arc deletion breaks strong connectivity."""
    if not is_strongly_connected(d):
        return False
    return not any(is_strongly_connected(d.without_arc(u, w)) for u, w in d.arcs)


def contract_cycle(d: Digraph, c: VertexCycle) -> Digraph:
    """Merge the vertices of ``c`` into its smallest vertex.

    Parallel arcs produced by the merge collapse to one and loops are dropped.
    The remaining vertices keep their relative order.
    """
    if not c.is_cycle_of(d):
        raise DigraphError(f"{c.vertices} is not a cycle of the digraph")
    members = set(c.vertices)
    keep = min(members)
    new_index = {}
    nxt = 0
    for v in range(d.order):
        if v in members and v != keep:
            continue
        new_index[v] = nxt
        nxt += 1
    for v in members:
        new_index[v] = new_index[keep]
    arcs = set()
    for u, w in d.arcs:
        a, b = new_index[u], new_index[w]
        if a != b:
            arcs.add((a, b))
    return Digraph.from_arcs(nxt, arcs)


def cyclomatic_number(d: Digraph) -> int:
    if not is_strongly_connected(d):
        raise DigraphError("cyclomatic number is only defined here for strong digraphs")
    return d.size - d.order + 1


def find_any_cycle(d: Digraph) -> VertexCycle:
    """Some directed cycle of ``d``, found by iterative DFS."""
    n = d.order
    state = [0] * n  # 0 new, 1 on stack, 2 done
    for root in range(n):
        if state[root]:
            continue
        path = [root]
        iters = [iter_bits(d.out[root])]
        state[root] = 1
        while path:
            w = next(iters[-1], None)
            if w is None:
                state[path.pop()] = 2
                iters.pop()
                continue
            if state[w] == 1:
                return VertexCycle(tuple(path[path.index(w):]))
            if state[w] == 0:
                state[w] = 1
                path.append(w)
                iters.append(iter_bits(d.out[w]))
    raise DigraphError("digraph is acyclic")


def single_vertex() -> Digraph:
    return Digraph(1, (0,))
