"""Exact characteristic polynomials and isospectral classes of catalogs."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .core import Digraph
from .digraph6 import arc_count, decode_masks
from .gen import Catalog

INT128_MAX = (1 << 127) - 1


class CoefficientOverflow(OverflowError):
    pass


@dataclass(frozen=True, order=True)
class CharPoly:
    """Monic integer polynomial; ``coeffs[k]`` is the coefficient of x^k."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def descending(self) -> tuple[int, ...]:
        return self.coeffs[::-1]

    def csv(self) -> str:
        return ",".join(str(c) for c in self.descending())

    @classmethod
    def from_csv(cls, text: str) -> CharPoly:
        return cls(tuple(int(t) for t in text.split(","))[::-1])

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if k == 1 else f"x^{k}")
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms) or "0"


def charpoly_masks(out: Sequence[int], n: int) -> CharPoly:
    """det(xI - A) by Berkowitz's division-free recurrence on 0/1 out-masks."""
    rows = [[w for w in range(n) if out[u] >> w & 1] for u in range(n)]
    p = [1]
    for r in range(n):
        # column above and row left of the new diagonal entry, restricted to 0..r-1
        col = [1 if out[i] >> r & 1 else 0 for i in range(r)]
        row_r = [w for w in rows[r] if w < r]
        t = [1, -(out[r] >> r & 1)]
        v = col
        for _ in range(r):
            t.append(-sum(v[w] for w in row_r))
            v = [sum(v[w] for w in rows[i] if w < r) for i in range(r)]
        p = [sum(t[i - j] * p[j] for j in range(max(0, i - len(t) + 1), min(i, r) + 1)) for i in range(r + 2)]
    for c in p:
        if abs(c) > INT128_MAX:
            raise CoefficientOverflow("characteristic polynomial coefficient exceeds 128 bits")
    return CharPoly(tuple(reversed(p)))


def char_poly(d: Digraph) -> CharPoly:
    return charpoly_masks(d.out, d.order)


def charpoly_of_code(code: bytes) -> CharPoly:
    n, out = decode_masks(code)
    return charpoly_masks(out, n)


@dataclass
class IsospectralReport:
    """Isospectral classes of one catalog.

    ``per_arc_counts[m]`` counts classes within the m-arc sub-catalog alone;
    ``delta`` is their sum minus ``total``, positive only when a class mixes
    arc counts.
    """

    order: int
    classes: list[tuple[CharPoly, list[bytes]]]
    per_arc_counts: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return len(self.classes)

    @property
    def per_arc_sum(self) -> int:
        return sum(self.per_arc_counts.values())

    @property
    def delta(self) -> int:
        return self.per_arc_sum - self.total

    def lines(self) -> Iterable[str]:
        """Export form: polynomial coefficients c_n..c_0, then member codes."""
        for poly, members in self.classes:
            yield " ".join([poly.csv(), *(m.decode("ascii") for m in members)])


def isospectral_classes(catalog: Catalog) -> IsospectralReport:
    groups: dict[CharPoly, list[bytes]] = defaultdict(list)
    by_arcs: dict[int, set[CharPoly]] = defaultdict(set)
    for code in catalog.entries:
        poly = charpoly_of_code(code)
        groups[poly].append(code)
        by_arcs[arc_count(code)].add(poly)
    classes = sorted(((p, sorted(ms)) for p, ms in groups.items()), key=lambda pm: pm[0].descending())
    per_arc = {m: len(ps) for m, ps in sorted(by_arcs.items())}
    return IsospectralReport(catalog.order, classes, per_arc)


def first_collision(catalog: Catalog) -> list[tuple[bytes, bytes, CharPoly]]:
    """Every pair of distinct catalog entries that share a polynomial."""
    report = isospectral_classes(catalog)
    pairs = []
    for poly, members in report.classes:
        for a, b in combinations(members, 2):
            pairs.append((a, b, poly))
    return pairs


def isospectral_tree_counts(reports: Iterable[IsospectralReport]) -> dict[int, int]:
    """Per order n >= 2, isospectral classes among the directed trees (2n - 2 arcs)."""
    return {r.order: r.per_arc_counts.get(2 * r.order - 2, 0) for r in reports if r.order >= 2}
