"""Reference lattices and their level-count formulas.

Generators build the partition lattice P_n, the subspace lattice of
F_q^n and the Dowling lattice Q_n(G) as explicit :class:`GradedLattice`
objects.  The counting functions are exact integer closed forms used to
cross-check the generators and by the classifier.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb

from .errors import InputError, InvalidGroup, OutOfRange
from .gf import field, prime_power
from .lattice import GradedLattice

MAX_GENERATED = 5000

# -- counting -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k)."""
    if n < 0 or not 0 <= k <= n:
        raise OutOfRange(f"stirling2({n}, {k})")
    return _stirling2(n, k)


def bell(n: int) -> int:
    return sum(stirling2(n, k) for k in range(n + 1))


def gaussian_binomial(n: int, ell: int, q: int) -> int:
    """Number of ``ell``-dimensional subspaces of F_q^n."""
    if n < 0 or not 0 <= ell <= n:
        raise OutOfRange(f"gaussian_binomial({n}, {ell}, q)")
    if q < 2:
        raise OutOfRange(f"q={q}")
    num = den = 1
    for i in range(ell):
        num *= q ** (n - i) - 1
        den *= q ** (ell - i) - 1
    return num // den


def whitney2(n: int, ell: int, m: int) -> int:
    """Number of rank-``ell`` elements of Q_n(G) for a group of order ``m``."""
    if n < 0 or not 0 <= ell <= n:
        raise OutOfRange(f"whitney2({n}, {ell}, m)")
    if m < 1:
        raise OutOfRange(f"group order {m}")
    k = n - ell
    return sum(comb(n, i) * m ** (i - k) * stirling2(i, k) for i in range(k, n + 1))


def dowling_cover_count(k: int, m: int) -> int:
    """Upper covers of a Dowling element with ``k`` nonzero blocks."""
    if k < 0:
        raise OutOfRange(f"k={k}")
    return k + m * comb(k, 2)


def partition_level2(n: int) -> int:
    return n * (n - 1) * (n - 2) * (3 * n - 5) // 24


# -- groups -------------------------------------------------------------------


@dataclass(frozen=True)
class GroupTable:
    """Cayley table of a finite group; element 0 must be the identity."""

    order: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = self.order
        if m < 1:
            raise InvalidGroup("order must be positive")
        t = self.table
        if len(t) != m or any(len(row) != m for row in t):
            raise InvalidGroup(f"table must be {m}x{m}")
        if any(not 0 <= x < m for row in t for x in row):
            raise InvalidGroup("table entries out of range")
        for a in range(m):
            if t[0][a] != a or t[a][0] != a:
                raise InvalidGroup("element 0 is not the identity")
            if 0 not in t[a]:
                raise InvalidGroup(f"element {a} has no inverse")
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    if t[t[a][b]][c] != t[a][t[b][c]]:
                        raise InvalidGroup(f"not associative at ({a},{b},{c})")

    @classmethod
    def cyclic(cls, m: int) -> "GroupTable":
        return cls(m, tuple(tuple((a + b) % m for b in range(m)) for a in range(m)))

    @classmethod
    def from_json(cls, text: str) -> "GroupTable":
        try:
            doc = json.loads(text)
            order, table = doc["order"], doc["table"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InputError(f"bad Cayley table document: {exc}") from None
        return cls(int(order), tuple(tuple(int(x) for x in row) for row in table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(0)


# -- generic assembly -----------------------------------------------------------


def _assemble(keys, rank_of, covers_of, label_of, name) -> GradedLattice:
    """Sort elements by (rank, key) and translate cover keys to indices."""
    keys = sorted(keys, key=lambda k: (rank_of(k), k))
    index = {k: i for i, k in enumerate(keys)}
    covers = [sorted(index[c] for c in covers_of(k)) for k in keys]
    heights = [rank_of(k) for k in keys]
    top = max(range(len(keys)), key=heights.__getitem__)
    return GradedLattice([label_of(k) for k in keys], heights, covers, 0, top, name)


# -- partitions -----------------------------------------------------------------


def set_partitions(n: int):
    """All partitions of {1..n}, each a tuple of sorted blocks ordered by least element."""

    def rec(i, blocks):
        if i > n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(1, [])


def _canon_partition(blocks) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def partition_leq(p, s) -> bool:
    """Refinement order: every block of ``p`` lies inside a block of ``s``."""
    return all(any(set(b) <= set(c) for c in s) for b in p)


def _partition_label(p) -> str:
    return "|".join("".join(str(x) for x in b) for b in p) or "-"


def gen_partition_lattice(n: int) -> GradedLattice:
    if not 1 <= n <= 8:
        raise OutOfRange(f"partition lattice needs 1 <= n <= 8, got {n}")

    def covers(p):
        out = []
        for i, j in combinations(range(len(p)), 2):
            merged = [b for k, b in enumerate(p) if k not in (i, j)] + [p[i] + p[j]]
            out.append(_canon_partition(merged))
        return out

    return _assemble(
        list(set_partitions(n)), lambda p: n - len(p), covers, _partition_label, f"P_{n}"
    )


# -- subspaces ------------------------------------------------------------------


def rref_bases(q: int, n: int, d: int):
    """Every d-dimensional subspace of F_q^n as its reduced row echelon basis."""
    for pivots in combinations(range(n), d):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(d)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield tuple(tuple(row) for row in rows)


def _span_mask(basis, q: int, n: int) -> int:
    F = field(q)
    mask = 0
    for coeffs in product(range(q), repeat=len(basis)):
        vec = [0] * n
        for c, row in zip(coeffs, basis):
            if c:
                for j, x in enumerate(row):
                    vec[j] = F.add[vec[j]][F.mul[c][x]]
        code = 0
        for x in vec:
            code = code * q + x
        mask |= 1 << code
    return mask


def _subspace_label(basis) -> str:
    if not basis:
        return "<0>"
    return "<" + ",".join("(" + ",".join(map(str, row)) + ")" for row in basis) + ">"


def subspace_lattice_size(q: int, n: int) -> int:
    return sum(gaussian_binomial(n, d, q) for d in range(n + 1))


def gen_subspace_lattice(q: int, n: int) -> GradedLattice:
    """Subspace lattice of F_q^n ordered by inclusion (``q`` a prime power)."""
    if prime_power(q) is None:
        field(q)  # raises NotPrime
    if n < 0 or q**n > 10**4 or subspace_lattice_size(q, n) > MAX_GENERATED:
        raise OutOfRange(f"subspace lattice q={q} n={n} exceeds desk scale")
    bases = [b for d in range(n + 1) for b in rref_bases(q, n, d)]
    span = {b: _span_mask(b, q, n) for b in bases}
    by_dim: dict[int, list] = {}
    for b in bases:
        by_dim.setdefault(len(b), []).append(b)

    def covers(b):
        mine = span[b]
        return [c for c in by_dim.get(len(b) + 1, []) if mine & ~span[c] == 0]

    return _assemble(bases, len, covers, _subspace_label, f"L(F_{q}^{n})")


# -- Dowling --------------------------------------------------------------------

DowlingKey = tuple[tuple[int, ...], tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]]


def _canon_block(g: GroupTable, block, labels):
    """Sort a labelled block and left-multiply so its least element carries 0."""
    pairs = sorted(zip(block, labels))
    shift = g.inv(pairs[0][1])
    return tuple(x for x, _ in pairs), tuple(g.mul(shift, a) for _, a in pairs)


def dowling_elements(n: int, g: GroupTable):
    m = g.order
    for zsize in range(n + 1):
        for zero in combinations(range(1, n + 1), zsize):
            rest = [x for x in range(1, n + 1) if x not in zero]
            for part in _partitions_of(rest):
                choices = [product(range(m), repeat=len(b) - 1) for b in part]
                for labelings in product(*choices):
                    blocks = tuple((b, (0,) + tuple(lab)) for b, lab in zip(part, labelings))
                    yield (tuple(zero), blocks)


def _partitions_of(items):
    if not items:
        yield ()
        return
    n = len(items)
    for p in set_partitions(n):
        yield tuple(tuple(items[i - 1] for i in b) for b in p)


def dowling_leq(g: GroupTable, x: DowlingKey, y: DowlingKey) -> bool:
    """Order on partial G-partitions: zero blocks nested, labels compatible."""
    zx, bx = x
    zy, by = y
    if not set(zx) <= set(zy):
        return False
    where = {}
    for j, (c, lab) in enumerate(by):
        for t, a in zip(c, lab):
            where[t] = (j, a)
    used: dict[int, set[int]] = {}
    zy_set = set(zy)
    for b, lab in bx:
        if set(b) <= zy_set:
            continue
        if b[0] not in where:
            return False
        j, a0 = where[b[0]]
        # relative factor h with y-label = h * x-label on this block
        h = g.mul(a0, g.inv(lab[0]))
        for t, a in zip(b, lab):
            if t not in where or where[t][0] != j or where[t][1] != g.mul(h, a):
                return False
        used.setdefault(j, set()).update(b)
    return all(used.get(j, set()) == set(c) for j, (c, _) in enumerate(by))


def _dowling_label(key: DowlingKey) -> str:
    zero, blocks = key
    parts = []
    if zero:
        parts.append("0:" + "".join(map(str, zero)))
    for b, lab in blocks:
        text = "".join(map(str, b))
        if len(b) > 1:
            text += "^" + ",".join(map(str, lab))
        parts.append(text)
    return "|".join(parts)


def dowling_lattice_size(n: int, m: int) -> int:
    return sum(whitney2(n, ell, m) for ell in range(n + 1))


def gen_dowling_lattice(n: int, g: GroupTable | int) -> GradedLattice:
    """Dowling lattice Q_n(G); an integer ``g`` means the cyclic group of that order."""
    if isinstance(g, int):
        if g < 1:
            raise OutOfRange(f"group order {g}")
        g = GroupTable.cyclic(g)
    if n < 0 or dowling_lattice_size(n, g.order) > MAX_GENERATED:
        raise OutOfRange(f"Dowling lattice n={n} |G|={g.order} exceeds desk scale")
    elems = list(dowling_elements(n, g))
    by_rank: dict[int, list] = {}
    for e in elems:
        by_rank.setdefault(n - len(e[1]), []).append(e)

    def covers(x):
        return [y for y in by_rank.get(n - len(x[1]) + 1, []) if dowling_leq(g, x, y)]

    return _assemble(elems, lambda e: n - len(e[1]), covers, _dowling_label, f"Q_{n}(G{g.order})")


def dowling_nonzero_blocks(lat: GradedLattice, n: int) -> list[int]:
    """Nonzero-block count of each element of a generated Q_n (rank = n - k)."""
    return [n - h for h in lat.height]
