"""Reference counts for orders 2..14, kept verbatim for regression checks.

``UNLABELED_COUNTS[n][m]`` is the number of unlabeled MSC digraphs with n
vertices and m arcs; ``ISOSPECTRAL_COUNTS[n][m]`` the number of isospectral
classes among them.  The summary rows follow.
"""

from __future__ import annotations

MIN_ORDER = 2
MAX_ORDER = 14

UNLABELED_COUNTS: dict[int, dict[int, int]] = {
    2: {2: 1},
    3: {3: 1, 4: 1},
    4: {4: 1, 5: 2, 6: 2},
    5: {5: 1, 6: 4, 7: 7, 8: 3},
    6: {6: 1, 7: 6, 8: 27, 9: 23, 10: 6},
    7: {7: 1, 8: 9, 9: 70, 10: 131, 11: 66, 12: 11},
    8: {8: 1, 9: 12, 10: 169, 11: 559, 12: 571, 13: 191, 14: 23},
    9: {9: 1, 10: 16, 11: 344, 12: 1970, 13: 3479, 14: 2229, 15: 541, 16: 47},
    10: {10: 1, 11: 20, 12: 662, 13: 5874, 14: 17109, 15: 18509, 16: 8226, 17: 1514, 18: 106},
    11: {11: 1, 12: 25, 13: 1159, 14: 15526, 15: 69845, 16: 120582, 17: 87963, 18: 28879, 19: 4217, 20: 235},
    12: {12: 1, 13: 30, 14: 1947, 15: 37072, 16: 246971, 17: 646339, 18: 732150, 19: 385484, 20: 98146, 21: 11724, 22: 551},
    13: {13: 1, 14: 36, 15: 3086, 16: 81561, 17: 773413, 18: 2954946, 19: 4974754, 20: 3973379, 21: 1587924, 22: 324638, 23: 32527, 24: 1301},
    14: {14: 1, 15: 42, 16: 4743, 17: 167500, 18: 2191491, 19: 11819034, 20: 28600421, 21: 33313635, 22: 19785730, 23: 6234794, 24: 1052874, 25: 90285, 26: 3159},
}

UNLABELED_TOTALS: dict[int, int] = {2: 1, 3: 2, 4: 5, 5: 15, 6: 63, 7: 288, 8: 1526, 9: 8627, 10: 52021, 11: 328432, 12: 2160415, 13: 14707566, 14: 103263709}

ISOSPECTRAL_COUNTS: dict[int, dict[int, int]] = {
    2: {2: 1},
    3: {3: 1, 4: 1},
    4: {4: 1, 5: 2, 6: 2},
    5: {5: 1, 6: 4, 7: 6, 8: 3},
    6: {6: 1, 7: 6, 8: 18, 9: 16, 10: 6},
    7: {7: 1, 8: 9, 9: 35, 10: 62, 11: 43, 12: 11},
    8: {8: 1, 9: 12, 10: 65, 11: 172, 12: 227, 13: 115, 14: 22},
    9: {9: 1, 10: 16, 11: 103, 12: 395, 13: 801, 14: 769, 15: 319, 16: 42},
    10: {10: 1, 11: 20, 12: 160, 13: 791, 14: 2290, 15: 3530, 16: 2645, 17: 848, 18: 102},
    11: {11: 1, 12: 25, 13: 227, 14: 1423, 15: 5567, 16: 12437, 17: 14978, 18: 8812, 19: 2349, 20: 204},
    12: {12: 1, 13: 30, 14: 319, 15: 2411, 16: 11942, 17: 36638, 18: 64337, 19: 61376, 20: 29317, 21: 6401, 22: 488},
    13: {13: 1, 14: 36, 15: 424, 16: 3807, 17: 23583, 18: 93732, 19: 228358, 20: 318654, 21: 244989, 22: 95369, 23: 17660, 24: 1078},
    14: {14: 1, 15: 42, 16: 559, 17: 5805, 18: 43070, 19: 217303, 20: 695323, 21: 1351485, 22: 1517405, 23: 949476, 24: 307783, 25: 48567, 26: 2723},
}

ISOSPECTRAL_SUMS: dict[int, int] = {2: 1, 3: 2, 4: 5, 5: 14, 6: 47, 7: 161, 8: 614, 9: 2446, 10: 10387, 11: 46023, 12: 213260, 13: 1027691, 14: 5139542}
ISOSPECTRAL_TOTALS: dict[int, int] = {2: 1, 3: 2, 4: 5, 5: 14, 6: 47, 7: 161, 8: 604, 9: 2360, 10: 9796, 11: 42510, 12: 193891, 13: 922109, 14: 4560898}
ISOSPECTRAL_DELTAS: dict[int, int] = {2: 0, 3: 0, 4: 0, 5: 0, 6: 0, 7: 0, 8: 10, 9: 86, 10: 591, 11: 3513, 12: 19369, 13: 105582, 14: 578644}

DIRECTED_TREES = {n: UNLABELED_COUNTS[n][2 * n - 2] for n in range(MIN_ORDER, MAX_ORDER + 1)}
ISOSPECTRAL_TREES = {n: ISOSPECTRAL_COUNTS[n][2 * n - 2] for n in range(MIN_ORDER, MAX_ORDER + 1)}
