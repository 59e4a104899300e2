"""Catalog of all graphs on 2 to 4 vertices up to isomorphism.

Each row: a representative (1-based edges), dim G⁰, the order of the
automorphism group of the coloured quotient, the sorted class sizes, and,
where one is printed for the row, the G⁰ zero pattern (up to relabelling).
"""

import numpy as np

S = "*"


def _pattern(rows):
    return np.array([[c == S for c in row.split()] for row in rows], dtype=bool)


CATALOG = [
    # m = 2
    dict(name="K2", m=2, edges=[(1, 2)], g0_dim=4, aut_order=1, sizes=[2]),
    dict(name="2K1", m=2, edges=[], g0_dim=2, aut_order=2, sizes=[1, 1]),
    # m = 3
    dict(name="K3", m=3, edges=[(1, 2), (1, 3), (2, 3)], g0_dim=9, aut_order=1, sizes=[3]),
    dict(
        name="P3",
        m=3,
        edges=[(1, 2), (1, 3)],
        g0_dim=5,
        aut_order=2,
        sizes=[1, 1, 1],
        pattern=_pattern(["* * 0", "0 * 0", "0 * *"]),
    ),
    dict(name="K2+K1", m=3, edges=[(1, 2)], g0_dim=5, aut_order=1, sizes=[1, 2]),
    dict(name="3K1", m=3, edges=[], g0_dim=3, aut_order=6, sizes=[1, 1, 1]),
    # m = 4
    dict(name="K4", m=4, edges=[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], g0_dim=16, aut_order=1, sizes=[4]),
    dict(
        name="diamond",
        m=4,
        edges=[(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)],
        g0_dim=10,
        aut_order=2,
        sizes=[1, 1, 2],
        pattern=_pattern(["* 0 * 0", "* * * 0", "* 0 * 0", "* 0 * *"]),
    ),
    dict(name="C4", m=4, edges=[(1, 2), (2, 3), (3, 4), (1, 4)], g0_dim=4, aut_order=8, sizes=[1, 1, 1, 1]),
    # the printed pattern for this row lists three rows; the two twin rows coincide
    dict(
        name="paw",
        m=4,
        edges=[(1, 2), (1, 3), (2, 3), (1, 4)],
        g0_dim=9,
        aut_order=1,
        sizes=[1, 1, 2],
        pattern=_pattern(["* 0 0 0", "* * * 0", "* * * 0", "* 0 0 *"]),
    ),
    dict(name="K3+K1", m=4, edges=[(1, 2), (1, 3), (2, 3)], g0_dim=10, aut_order=1, sizes=[1, 3]),
    dict(
        name="P4",
        m=4,
        edges=[(1, 2), (2, 3), (3, 4)],
        g0_dim=6,
        aut_order=2,
        sizes=[1, 1, 1, 1],
        pattern=_pattern(["* * 0 0", "0 * 0 0", "0 0 * *", "0 0 0 *"]),
    ),
    dict(name="2K2", m=4, edges=[(1, 2), (3, 4)], g0_dim=8, aut_order=2, sizes=[2, 2]),
    dict(
        name="P3+K1",
        m=4,
        edges=[(1, 2), (2, 3)],
        g0_dim=6,
        aut_order=2,
        sizes=[1, 1, 1, 1],
        pattern=_pattern(["* * 0 0", "0 * 0 0", "0 * * 0", "0 0 0 *"]),
    ),
    dict(name="K2+2K1", m=4, edges=[(1, 2)], g0_dim=6, aut_order=2, sizes=[1, 1, 2]),
    dict(name="4K1", m=4, edges=[], g0_dim=4, aut_order=24, sizes=[1, 1, 1, 1]),
    # not listed in the printed table; values derived from the definitions
    dict(name="claw", m=4, edges=[(1, 2), (1, 3), (1, 4)], g0_dim=7, aut_order=6, sizes=[1, 1, 1, 1], derived=True),
]
