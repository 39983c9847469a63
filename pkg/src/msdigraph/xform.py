"""Internal/external expansions of a digraph and their inverse reductions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .core import (
    Digraph,
    DigraphError,
    _reach,
    is_minimal_strong,
    linear_vertices,
)

Kind = Literal["internal", "external"]


@dataclass(frozen=True)
class ExpansionStep:
    """One expansion by the fresh vertex ``v`` (always the pre-expansion order).

    ``internal`` subdivides the arc ``u->w``; ``external`` hangs the path
    ``u->v->w`` on the digraph (``u == w`` allowed).
    """

    kind: Kind
    u: int
    w: int
    v: int

    def __post_init__(self) -> None:
        if self.kind not in ("internal", "external"):
            raise ValueError(f"unknown expansion kind {self.kind!r}")
        if self.kind == "internal" and self.u == self.w:
            raise ValueError("internal expansion needs u != w")

    def apply(self, d: Digraph) -> Digraph:
        if d.order != self.v:
            raise DigraphError(f"step expects order {self.v}, digraph has {d.order}")
        if self.kind == "internal":
            return internal_expansion(d, self.u, self.w)
        return external_expansion(d, self.u, self.w)

    def __str__(self) -> str:
        return f"{self.kind} u={self.u} w={self.w} v={self.v}"


def _check_vertex(d: Digraph, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < d.order:
            raise DigraphError(f"vertex {v} outside 0..{d.order - 1}")


def internal_expansion(d: Digraph, u: int, w: int) -> Digraph:
    """Replace arc u->w by u->v->w through a fresh vertex v = order."""
    if not d.has_arc(u, w):
        raise DigraphError(f"({u},{w}) is not an arc")
    v = d.order
    out = list(d.out)
    out[u] = (out[u] & ~(1 << w)) | (1 << v)
    out.append(1 << w)
    return Digraph(v + 1, tuple(out))


def external_expansion(d: Digraph, u: int, w: int) -> Digraph:
    """Add a fresh vertex v = order with arcs u->v and v->w."""
    _check_vertex(d, u, w)
    v = d.order
    out = list(d.out)
    out[u] |= 1 << v
    out.append(1 << w)
    return Digraph(v + 1, tuple(out))


def external_expansion_preserves_msc(d: Digraph, u: int, w: int) -> bool:
    """Whether ``d + uw`` has no transitive arc besides ``uw`` itself.

    For an MSC ``d`` this decides minimality of ``external_expansion(d, u, w)``
    without building it.
    """
    _check_vertex(d, u, w)
    if u == w:
        raise DigraphError("u and w must differ")
    if d.has_arc(u, w):
        raise DigraphError(f"({u},{w}) is already an arc")
    out = list(d.out)
    out[u] |= 1 << w
    for p in range(d.order):
        for q in range(d.order):
            if not out[p] >> q & 1 or (p, q) == (u, w):
                continue
            out[p] ^= 1 << q
            transitive = _reach(out, p) >> q & 1
            out[p] ^= 1 << q
            if transitive:
                return False
    return True


def admissible_external_pairs(out: Sequence[int], n: int) -> list[tuple[int, int]]:
    """All (u, w), u != w, uw not an arc, whose external expansion stays MSC.

    Batched form of :func:`external_expansion_preserves_msc` for an MSC digraph
    given by out-masks.  An arc pq != uw turns transitive in ``D + uw`` exactly
    when ``u`` is reachable from ``p`` and ``q`` from ``w`` in ``D - pq``, so one
    forward and one backward search per arc covers every pair.
    """
    work = list(out)
    inn = [0] * n
    for a in range(n):
        for b in range(n):
            if out[a] >> b & 1:
                inn[b] |= 1 << a
    bad = [0] * n
    for p in range(n):
        m = out[p]
        while m:
            low = m & -m
            q = low.bit_length() - 1
            m ^= low
            work[p] ^= low
            inn[q] ^= 1 << p
            fwd = _reach(work, p)
            back = _reach(inn, q)
            work[p] ^= low
            inn[q] ^= 1 << p
            for x in range(n):
                if fwd >> x & 1:
                    bad[x] |= back
    full = (1 << n) - 1
    pairs = []
    for u in range(n):
        ok = full & ~bad[u] & ~out[u] & ~(1 << u)
        while ok:
            low = ok & -ok
            pairs.append((u, low.bit_length() - 1))
            ok ^= low
    return pairs


def reduce_at_linear_vertex(d: Digraph, v: int) -> tuple[Digraph, ExpansionStep]:
    """Undo the expansion that created the linear vertex ``v``.

    Returns the reduced MSC digraph (``v`` deleted, higher indices shifted
    down) and the step that rebuilds ``d`` from it, with ``v`` moved to the
    last index.
    """
    if d.order < 3:
        raise DigraphError("reduction needs order >= 3")
    if not is_minimal_strong(d):
        raise DigraphError("digraph is not minimal strong")
    if v not in linear_vertices(d):
        raise DigraphError(f"vertex {v} is not linear")
    u = d.inn[v].bit_length() - 1
    w = d.out[v].bit_length() - 1
    reduced = d.delete_vertex(v)
    ru = u - (u > v)
    rw = w - (w > v)
    fresh = d.order - 1
    if u == w:
        return reduced, ExpansionStep("external", ru, ru, fresh)
    if _reach(reduced.out, ru) >> rw & 1:
        return reduced, ExpansionStep("external", ru, rw, fresh)
    return reduced.with_arc(ru, rw), ExpansionStep("internal", ru, rw, fresh)


def reduction_sequence(d: Digraph) -> list[tuple[Digraph, ExpansionStep]]:
    """Successive reductions at the smallest linear vertex, down to C_2.

    Returns ``(reduced digraph, step)`` pairs in the order taken.  The reduced
    digraphs carry the shifted labels of :func:`reduce_at_linear_vertex`; the
    steps are relabelled into one frame, so applying them in reverse order
    starting from C_2 rebuilds a digraph isomorphic to ``d``.
    """
    if d.order < 2 or not is_minimal_strong(d):
        raise DigraphError("need a minimal strong digraph of order >= 2")
    raw = []
    while d.order > 2:
        v = min(linear_vertices(d))
        d, step = reduce_at_linear_vertex(d, v)
        raw.append((d, step, v))
    seq: list[tuple[Digraph, ExpansionStep]] = []
    # frame[x]: replay label of vertex x of the current reduced digraph
    frame = [0, 1]
    for reduced, step, v in reversed(raw):
        seq.append((reduced, ExpansionStep(step.kind, frame[step.u], frame[step.w], step.v)))
        frame = [step.v if x == v else frame[x - (x > v)] for x in range(step.v + 1)]
    seq.reverse()
    return seq


def reduce_to_c2(d: Digraph) -> list[ExpansionStep]:
    """Reduction steps, in the order taken, from ``d`` down to C_2.

    Steps are relabelled so that applying them in reverse order starting
    from C_2 rebuilds a digraph isomorphic to ``d``.  Always reduces at the
    smallest linear vertex.
    """
    return [step for _, step in reduction_sequence(d)]


def replay(steps: Sequence[ExpansionStep], start: Digraph | None = None) -> Digraph:
    """Apply reduction steps in reverse, starting from C_2 by default."""
    d = start if start is not None else Digraph.cycle(2)
    for step in reversed(steps):
        d = step.apply(d)
    return d
