"""Two small cospectral pairs of order 5 used as fixtures.

Shared labels: 0, 1, 2 form the 3-cycle 1->0->2->1; 3 closes a second
3-cycle 1->3->2; 4 is the extra vertex.  Polynomials were recomputed
independently (see test_spectral.py).
"""

from msdigraph.core import Digraph

# two 3-cycles sharing 2->1, plus a 2-cycle hung on the top vertex 2
ISO_A = Digraph.from_arcs(5, [(1, 0), (0, 2), (2, 1), (1, 3), (3, 2), (2, 4), (4, 2)])
# same diamond, 2-cycle hung on the bottom vertex 1
ISO_B = Digraph.from_arcs(5, [(1, 0), (0, 2), (2, 1), (1, 3), (3, 2), (1, 4), (4, 1)])
ISO_POLY = (1, 0, -1, -2, 0, 0)

# three 3-cycles through 2->1 (minimal)
MIXED_MIN = Digraph.from_arcs(5, [(1, 0), (0, 2), (2, 1), (1, 3), (3, 2), (1, 4), (4, 2)])
# diamond plus the 3-cycle 2->4->3->2 (1->3 becomes transitive via 1->0->2->4->3)
MIXED_NONMIN = Digraph.from_arcs(5, [(1, 0), (0, 2), (2, 1), (1, 3), (3, 2), (2, 4), (4, 3)])
MIXED_POLY = (1, 0, 0, -3, 0, 0)
