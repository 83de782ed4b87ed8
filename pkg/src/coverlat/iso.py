"""Isomorphism search for graded lattices given by their cover graphs.

Vertices get colours from iterated refinement (height, then the multisets of
colours of upper and lower covers).  Backtracking then maps vertices in a
connectivity-first order, only to same-coloured targets, and checks every
cover edge between already-mapped vertices in both directions.
"""

from __future__ import annotations

import sys
from collections import Counter

from .errors import TooLarge
from .lattice import GradedLattice

DEFAULT_BUDGET = 2000


def refine_colours(lat: GradedLattice, rounds: int | None = None) -> list[int]:
    """Stable colouring of the Hasse diagram as canonical integer ids.

    Colour ids are assigned from the sorted signatures, so two lattices
    refined jointly through :func:`joint_colours` share one palette.
    """
    return joint_colours([lat], rounds)[0]


def joint_colours(lats: list[GradedLattice], rounds: int | None = None) -> list[list[int]]:
    cols = [[h for h in lat.height] for lat in lats]
    limit = rounds if rounds is not None else max(len(lat) for lat in lats) + 1
    for _ in range(limit):
        sigs = []
        for lat, col in zip(lats, cols):
            sigs.append(
                [
                    (
                        col[v],
                        tuple(sorted(col[u] for u in lat.covers_up[v])),
                        tuple(sorted(col[u] for u in lat.covers_down[v])),
                    )
                    for v in range(len(lat))
                ]
            )
        palette = {s: i for i, s in enumerate(sorted({s for ss in sigs for s in ss}))}
        new = [[palette[s] for s in ss] for ss in sigs]
        if all(len(set(n)) == len(set(c)) for n, c in zip(new, cols)):
            cols = new
            break
        cols = new
    return cols


def _search_order(lat: GradedLattice, colour: list[int], class_size: Counter) -> list[int]:
    n = len(lat)
    nbrs = [lat.covers_up[v] + lat.covers_down[v] for v in range(n)]
    placed = [False] * n
    links = [0] * n
    order: list[int] = []
    while len(order) < n:
        best = None
        best_key = None
        for v in range(n):
            if placed[v]:
                continue
            key = (-links[v], class_size[colour[v]], lat.height[v], v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        placed[best] = True
        order.append(best)
        for u in nbrs[best]:
            links[u] += 1
    return order


def lattice_isomorphic(
    l1: GradedLattice, l2: GradedLattice, budget: int = DEFAULT_BUDGET
) -> dict[int, int] | None:
    """A height- and cover-preserving bijection from ``l1`` to ``l2``, or ``None``."""
    if len(l1) > budget or len(l2) > budget:
        raise TooLarge(f"lattice sizes {len(l1)}, {len(l2)} exceed budget {budget}")
    if len(l1) != len(l2) or len(l1.edges) != len(l2.edges):
        return None
    if sorted(l1.height) != sorted(l2.height):
        return None
    c1, c2 = joint_colours([l1, l2])
    hist = Counter(c1)
    if hist != Counter(c2):
        return None

    targets: dict[int, list[int]] = {}
    for v, c in enumerate(c2):
        targets.setdefault(c, []).append(v)
    order = _search_order(l1, c1, hist)
    up1, down1, up2, down2 = l1.covers_up, l1.covers_down, l2.covers_up, l2.covers_down
    up2_sets = [set(x) for x in up2]
    down2_sets = [set(x) for x in down2]
    fwd: dict[int, int] = {}
    bwd: dict[int, int] = {}

    def consistent(v: int, w: int) -> bool:
        for a, b, b_sets in ((up1, up2, up2_sets), (down1, down2, down2_sets)):
            mapped = 0
            for u in a[v]:
                img = fwd.get(u)
                if img is not None:
                    if img not in b_sets[w]:
                        return False
                    mapped += 1
            back = sum(1 for u in b[w] if u in bwd)
            if back != mapped:
                return False
        return True

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for w in targets[c1[v]]:
            if w in bwd or not consistent(v, w):
                continue
            fwd[v] = w
            bwd[w] = v
            if extend(pos + 1):
                return True
            del fwd[v]
            del bwd[w]
        return False

    limit = sys.getrecursionlimit()
    if limit < len(order) + 100:
        sys.setrecursionlimit(len(order) + 100)
    try:
        found = extend(0)
    finally:
        sys.setrecursionlimit(limit)
    return dict(sorted(fwd.items())) if found else None


def is_cover_isomorphism(l1: GradedLattice, l2: GradedLattice, f: dict[int, int]) -> bool:
    """Check that ``f`` is a bijection mapping covers onto covers."""
    if sorted(f) != list(range(len(l1))) or sorted(f.values()) != list(range(len(l2))):
        return False
    e1 = {(f[i], f[j]) for i, j in l1.edges}
    return e1 == set(l2.edges) and all(l1.height[i] == l2.height[f[i]] for i in f)
