"""Graded lattices, the lattice of flats of a covering, and their exports.

:class:`GradedLattice` is the common shape shared by covering lattices and
the classical reference lattices: labelled elements, heights and upward
cover lists.  :class:`FlatLattice` adds the flats themselves (element
bitmasks) so meet and join can be computed set-theoretically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

from .covering import GroundSet, bits
from .errors import IndexOutOfRange, InputError, InternalInconsistency
from .matroid import MatroidOracle


@dataclass(frozen=True)
class LevelProfile:
    counts: tuple[int, ...]

    @property
    def num_levels(self) -> int:
        return len(self.counts)


@dataclass(eq=False)
class GradedLattice:
    labels: list[str]
    height: list[int]
    covers_up: list[list[int]]
    bottom: int
    top: int
    name: str = ""

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        name = self.name or type(self).__name__
        return f"<{name}: {len(self)} elements, profile {list(self.level_profile().counts)}>"

    def _check(self, i: int) -> None:
        if not 0 <= i < len(self.labels):
            raise IndexOutOfRange(i)

    @cached_property
    def covers_down(self) -> list[list[int]]:
        down: list[list[int]] = [[] for _ in self.labels]
        for i, ups in enumerate(self.covers_up):
            for j in ups:
                down[j].append(i)
        return down

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, ups in enumerate(self.covers_up) for j in ups]

    @cached_property
    def below(self) -> list[int]:
        """``below[i]`` is the bitmask of all elements <= i."""
        out = [0] * len(self.labels)
        for i in sorted(range(len(self.labels)), key=self.height.__getitem__):
            m = 1 << i
            for j in self.covers_down[i]:
                m |= out[j]
            out[i] = m
        return out

    @cached_property
    def above(self) -> list[int]:
        out = [0] * len(self.labels)
        for i in sorted(range(len(self.labels)), key=self.height.__getitem__, reverse=True):
            m = 1 << i
            for j in self.covers_up[i]:
                m |= out[j]
            out[i] = m
        return out

    def leq(self, a: int, b: int) -> bool:
        return bool(self.below[b] >> a & 1)

    def atoms(self) -> list[int]:
        return [i for i in range(len(self.labels)) if self.height[i] == 1]

    def level(self, ell: int) -> list[int]:
        return [i for i in range(len(self.labels)) if self.height[i] == ell]

    def cover_count(self, f: int) -> int:
        self._check(f)
        return len(self.covers_up[f])

    def level_profile(self) -> LevelProfile:
        counts = [0] * (max(self.height) + 1)
        for h in self.height:
            counts[h] += 1
        return LevelProfile(tuple(counts))

    def _extremal(self, common: int, lookup: list[int]) -> int:
        for i in bits(common):
            if lookup[i] == common:
                return i
        raise InternalInconsistency("bound does not exist")

    def meet(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return self._extremal(self.below[a] & self.below[b], self.below)

    def join(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return self._extremal(self.above[a] & self.above[b], self.above)

    # -- export ---------------------------------------------------------------

    def element_repr(self, i: int):
        return self.labels[i]

    def to_dict(self) -> dict:
        return {
            "bottom": self.bottom,
            "covers": [[i, j] for i, j in self.edges],
            "flats": [self.element_repr(i) for i in range(len(self))],
            "heights": list(self.height),
            "top": self.top,
        }

    def export_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    def export_dot(self) -> str:
        lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=box];"]
        for i, lab in enumerate(self.labels):
            text = lab.replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  n{i} [label="{text}"];')
        for ell in range(max(self.height) + 1):
            ids = " ".join(f"n{i};" for i in self.level(ell))
            lines.append(f"  {{ rank=same; {ids} }}")
        for i, j in self.edges:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _flat_label(ground: GroundSet, mask: int) -> str:
    return "{" + ",".join(ground.sorted_labels(mask)) + "}"


@dataclass(eq=False, repr=False)
class FlatLattice(GradedLattice):
    ground: GroundSet = field(default=None)  # type: ignore[assignment]
    flats: list[int] = field(default_factory=list)

    @cached_property
    def index_of(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.flats)}

    def flat(self, i: int) -> frozenset[str]:
        self._check(i)
        return self.ground.labels(self.flats[i])

    def find(self, labels) -> int:
        """Index of the flat with exactly these elements."""
        m = self.ground.mask(labels)
        try:
            return self.index_of[m]
        except KeyError:
            raise KeyError(f"{sorted(labels)} is not a flat") from None

    def meet(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        m = self.flats[a] & self.flats[b]
        try:
            return self.index_of[m]
        except KeyError:
            raise InternalInconsistency(f"intersection {_flat_label(self.ground, m)} not stored") from None

    def join(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        union = self.flats[a] | self.flats[b]
        # the least stored flat containing the union is its closure
        best = None
        for i, m in enumerate(self.flats):
            if union & ~m == 0 and (best is None or self.height[i] < self.height[best]):
                best = i
        assert best is not None
        return best

    def element_repr(self, i: int):
        return self.ground.sorted_labels(self.flats[i])


def _canonical_key(mask: int, height: int) -> tuple[int, tuple[int, ...]]:
    return (height, tuple(bits(mask)))


def build_lattice(m: MatroidOracle) -> FlatLattice:
    """Enumerate the flats of ``m`` level by level and record cover edges."""
    ground = m.covering.ground
    full = ground.full_mask
    levels: list[list[int]] = [[m.closure_mask(0)]]
    raw_edges: set[tuple[int, int]] = set()
    while True:
        nxt: set[int] = set()
        for f in levels[-1]:
            covered = f
            for e in bits(full & ~f):
                if covered >> e & 1:
                    continue
                g = m.closure_mask(f | 1 << e)
                covered |= g
                nxt.add(g)
                raw_edges.add((f, g))
        if not nxt:
            break
        levels.append(list(nxt))

    order: list[tuple[tuple, int, int]] = []
    for ell, flats in enumerate(levels):
        for f in flats:
            order.append((_canonical_key(f, ell), f, ell))
    order.sort()
    flats = [f for _, f, _ in order]
    heights = [ell for _, _, ell in order]
    index = {f: i for i, f in enumerate(flats)}
    if len(index) != len(flats):
        raise InternalInconsistency("flat reached at two different levels")
    covers: list[list[int]] = [[] for _ in flats]
    for f, g in raw_edges:
        covers[index[f]].append(index[g])
    for ups in covers:
        ups.sort()
    for i, f in enumerate(flats):
        if m.rank_mask(f) != heights[i]:
            raise InternalInconsistency(f"height/rank mismatch at {_flat_label(ground, f)}")
    top = index.get(full)
    if top is None or index[levels[0][0]] != 0:
        raise InternalInconsistency("missing bottom or top flat")
    return FlatLattice(
        labels=[_flat_label(ground, f) for f in flats],
        height=heights,
        covers_up=covers,
        bottom=0,
        top=top,
        name="L(C)",
        ground=ground,
        flats=flats,
    )


def atoms(lat: GradedLattice) -> list[int]:
    return lat.atoms()


def cover_count(lat: GradedLattice, f: int) -> int:
    return lat.cover_count(f)


def meet(lat: GradedLattice, a: int, b: int) -> int:
    return lat.meet(a, b)


def join(lat: GradedLattice, a: int, b: int) -> int:
    return lat.join(a, b)


def level_profile(lat: GradedLattice) -> LevelProfile:
    return lat.level_profile()


def export_dot(lat: GradedLattice) -> str:
    return lat.export_dot()


def export_json(lat: GradedLattice) -> str:
    return lat.export_json()


def lattice_from_json(text: str) -> GradedLattice:
    """Re-read a document written by :func:`export_json`.

    Flats given as label lists become a plain :class:`GradedLattice` whose
    labels use the same ``{a,b}`` rendering as :func:`build_lattice`.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    for key in ("flats", "covers", "heights", "bottom", "top"):
        if key not in doc:
            raise InputError(f"missing key {key!r}")
    n = len(doc["flats"])
    if len(doc["heights"]) != n:
        raise InputError("'heights' and 'flats' differ in length")
    labels = [
        "{" + ",".join(f) + "}" if isinstance(f, list) else str(f) for f in doc["flats"]
    ]
    covers: list[list[int]] = [[] for _ in range(n)]
    for i, j in doc["covers"]:
        if not (0 <= i < n and 0 <= j < n):
            raise InputError(f"cover edge {i}->{j} out of range")
        covers[i].append(j)
    for ups in covers:
        ups.sort()
    return GradedLattice(labels, list(doc["heights"]), covers, doc["bottom"], doc["top"])


def validate_graded_lattice(lat: GradedLattice, check_bounds: bool = True) -> list[str]:
    """Return a list of violated lattice properties (empty when valid).

    Checks a unique minimum and maximum, that covers raise height by exactly
    one (which makes every maximal chain between two elements equally long),
    that heights start at zero, and optionally that every pair has a meet and
    a join.
    """
    problems = []
    n = len(lat)
    minimal = [i for i in range(n) if not lat.covers_down[i]]
    maximal = [i for i in range(n) if not lat.covers_up[i]]
    if minimal != [lat.bottom]:
        problems.append(f"minimal elements {minimal} != bottom {lat.bottom}")
    if maximal != [lat.top]:
        problems.append(f"maximal elements {maximal} != top {lat.top}")
    if lat.height[lat.bottom] != 0:
        problems.append("bottom has nonzero height")
    for i, j in lat.edges:
        if lat.height[j] != lat.height[i] + 1:
            problems.append(f"cover {i}->{j} skips heights")
    for i, ups in enumerate(lat.covers_up):
        if len(set(ups)) != len(ups):
            problems.append(f"duplicate cover edges at {i}")
    if problems or not check_bounds:
        return problems
    for a in range(n):
        for b in range(a + 1, n):
            for common, lookup, what in (
                (lat.below[a] & lat.below[b], lat.below, "meet"),
                (lat.above[a] & lat.above[b], lat.above, "join"),
            ):
                if not any(lookup[i] == common for i in bits(common)):
                    problems.append(f"no {what} for {a},{b}")
    return problems
