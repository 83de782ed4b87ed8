"""Independence, rank and closure for the transversal matroid of a covering.

A set of elements is independent when it can be matched into distinct
blocks, so every query reduces to maximum bipartite matching between
elements and block indices (Kuhn's augmenting paths).
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .covering import Covering, bits, popcount
from .errors import NotIndependent, UnknownLabel


class MatroidOracle:
    """Matching-backed oracle for the transversal matroid of ``covering``.

    Label-level methods take iterables of element labels; the ``*_mask``
    variants take element bitmasks and are what the lattice builder uses.
    Instances hold no mutable state after construction.
    """

    def __init__(self, covering: Covering):
        self.covering = covering
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(
            tuple(bits(inc)) for inc in covering.incidence
        )

    def __repr__(self) -> str:
        return f"MatroidOracle({self.covering})"

    @property
    def ground_mask(self) -> int:
        return self.covering.ground.full_mask

    # -- matching primitives ------------------------------------------------

    def _augment(self, e: int, owner: dict[int, int], seen: set[int]) -> bool:
        for b in self.adjacency[e]:
            if b in seen:
                continue
            seen.add(b)
            if b not in owner or self._augment(owner[b], owner, seen):
                owner[b] = e
                return True
        return False

    def _reachable_free(self, e: int, owner: dict[int, int], seen: set[int]) -> bool:
        # same search as _augment but leaves ``owner`` untouched
        for b in self.adjacency[e]:
            if b in seen:
                continue
            seen.add(b)
            if b not in owner or self._reachable_free(owner[b], owner, seen):
                return True
        return False

    def matching(self, mask: int) -> dict[int, int]:
        """A maximum matching of the elements in ``mask``, as block -> element."""
        owner: dict[int, int] = {}
        for e in bits(mask):
            self._augment(e, owner, set())
        return owner

    # -- mask API -------------------------------------------------------------

    def rank_mask(self, mask: int) -> int:
        return len(self.matching(mask))

    def independent_mask(self, mask: int) -> bool:
        owner: dict[int, int] = {}
        for e in bits(mask):
            if not self._augment(e, owner, set()):
                return False
        return True

    def closure_mask(self, mask: int) -> int:
        owner = self.matching(mask)
        out = mask
        for e in bits(self.ground_mask & ~mask):
            if not self._reachable_free(e, owner, set()):
                out |= 1 << e
        return out

    # -- label API ------------------------------------------------------------

    def _mask(self, labels: Iterable[str]) -> int:
        return self.covering.ground.mask(labels)

    def is_independent(self, h: Iterable[str]) -> bool:
        return self.independent_mask(self._mask(h))

    def rank(self, x: Iterable[str]) -> int:
        return self.rank_mask(self._mask(x))

    def closure(self, x: Iterable[str]) -> frozenset[str]:
        return self.covering.ground.labels(self.closure_mask(self._mask(x)))

    def closure_witness(self, h: Iterable[str], g: str) -> frozenset[str] | None:
        """A subset H' of ``h`` with |H'| = |C(H')| whose blocks contain those of ``g``.

        Such a subset exists exactly when ``g`` lies in the closure of ``h``.
        Candidates are tried by increasing size, then in ground order, so the
        returned witness is deterministic.  Returns ``None`` when ``g`` is not
        in the closure.
        """
        ground = self.covering.ground
        hmask = self._mask(h)
        if g not in ground.index:
            raise UnknownLabel(g)
        gi = ground.index[g]
        if hmask >> gi & 1:
            raise ValueError(f"{g!r} already belongs to h")
        if not self.independent_mask(hmask):
            raise NotIndependent(",".join(ground.sorted_labels(hmask)))
        g_blocks = self.covering.incidence[gi]
        members = bits(hmask)
        for size in range(1, len(members) + 1):
            for sub in combinations(members, size):
                sub_mask = sum(1 << e for e in sub)
                blocks = self.covering.meeting_mask(sub_mask)
                if popcount(blocks) == size and g_blocks & ~blocks == 0:
                    return ground.labels(sub_mask)
        return None
