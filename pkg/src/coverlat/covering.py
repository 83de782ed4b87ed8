"""Coverings of a finite set, block incidence, and the quotient reduction.

Elements are opaque string labels.  Internally every subset of the ground
set is an ``int`` bitmask over element positions (bit ``i`` is the i-th
label in input order), and every set of blocks is a bitmask over block
indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import DuplicateLabel, EmptyBlock, InputError, NotACovering, UnknownLabel


def bits(mask: int) -> list[int]:
    """Positions of the set bits of ``mask`` in increasing order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class GroundSet:
    elements: tuple[str, ...]
    index: Mapping[str, int] = field(repr=False, compare=False)

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "GroundSet":
        elements = tuple(labels)
        index: dict[str, int] = {}
        for i, lab in enumerate(elements):
            if lab in index:
                raise DuplicateLabel(lab)
            index[lab] = i
        return cls(elements, index)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for lab in labels:
            try:
                m |= 1 << self.index[lab]
            except KeyError:
                raise UnknownLabel(lab) from None
        return m

    def labels(self, mask: int) -> frozenset[str]:
        return frozenset(self.elements[i] for i in bits(mask))

    def sorted_labels(self, mask: int) -> list[str]:
        """Labels of ``mask`` in canonical (ground) order."""
        return [self.elements[i] for i in bits(mask)]


@dataclass(frozen=True)
class Covering:
    """An indexed family of nonempty blocks whose union is the ground set.

    Build instances with :func:`validate_covering`; the constructor does no
    checking.  ``block_masks[i]`` is block ``i`` as an element bitmask and
    ``incidence[e]`` is the block-index bitmask of the blocks containing
    element ``e``.
    """

    ground: GroundSet
    blocks: tuple[frozenset[str], ...]
    block_masks: tuple[int, ...] = field(repr=False, compare=False)
    incidence: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_lists(self) -> list[list[str]]:
        return [self.ground.sorted_labels(m) for m in self.block_masks]

    def to_dict(self) -> dict:
        return {"ground": list(self.ground.elements), "blocks": self.block_lists()}

    def __str__(self) -> str:
        inner = ",".join("{" + ",".join(b) + "}" for b in self.block_lists())
        return "{" + inner + "}"

    def meeting_mask(self, h: int) -> int:
        """Block-index bitmask of blocks meeting the element bitmask ``h``."""
        out = 0
        for e in bits(h):
            out |= self.incidence[e]
        return out


def validate_covering(raw_ground: Sequence[str], raw_blocks: Sequence[Iterable[str]]) -> Covering:
    ground = GroundSet.from_labels(str(x) for x in raw_ground)
    block_masks = []
    blocks = []
    for i, raw in enumerate(raw_blocks):
        labels = [str(x) for x in raw]
        if not labels:
            raise EmptyBlock(f"block {i}")
        m = ground.mask(labels)
        block_masks.append(m)
        blocks.append(ground.labels(m))
    union = 0
    for m in block_masks:
        union |= m
    missing = ground.full_mask & ~union
    if missing:
        raise NotACovering(",".join(ground.sorted_labels(missing)))
    incidence = [0] * len(ground)
    for b, m in enumerate(block_masks):
        for e in bits(m):
            incidence[e] |= 1 << b
    return Covering(ground, tuple(blocks), tuple(block_masks), tuple(incidence))


def covering_from_json(text: str) -> Covering:
    """Parse the ``{"ground": [...], "blocks": [[...], ...]}`` document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("covering document must be a JSON object")
    for key in ("ground", "blocks"):
        if key not in doc:
            raise InputError(f"missing key {key!r}")
    ground, blocks = doc["ground"], doc["blocks"]
    if not isinstance(ground, list) or not all(isinstance(x, str) for x in ground):
        raise InputError("'ground' must be a list of strings")
    if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
        raise InputError("'blocks' must be a list of lists")
    for b in blocks:
        if not all(isinstance(x, str) for x in b):
            raise InputError("'blocks' entries must be lists of strings")
    return validate_covering(ground, blocks)


def blocks_meeting(c: Covering, h: Iterable[str]) -> frozenset[int]:
    """Indices of the blocks of ``c`` that intersect ``h``."""
    return frozenset(bits(c.meeting_mask(c.ground.mask(h))))


def simplify(c: Covering) -> tuple[Covering, dict[str, str]]:
    """Collapse elements lying in exactly one block, the same one.

    Two elements are merged when their incidence sets coincide and have size
    one.  Returns the quotient covering over the class representatives (the
    first member of each class in ground order) and the map sending every
    original label to its representative.
    """
    rep_of_block: dict[int, int] = {}
    rep = list(range(len(c.ground)))
    for e, inc in enumerate(c.incidence):
        if inc & (inc - 1) == 0:
            rep[e] = rep_of_block.setdefault(inc, e)
    reps = sorted(set(rep))
    labels = c.ground.elements
    new_ground = [labels[r] for r in reps]
    new_blocks = []
    for m in c.block_masks:
        keep = {rep[e] for e in bits(m)}
        new_blocks.append([labels[r] for r in reps if r in keep])
    mapping = {labels[e]: labels[rep[e]] for e in range(len(labels))}
    return validate_covering(new_ground, new_blocks), mapping


def is_simplified(c: Covering) -> bool:
    seen = set()
    for inc in c.incidence:
        if inc & (inc - 1) == 0:
            if inc in seen:
                return False
            seen.add(inc)
    return True
