"""Uniform-lattice analysis and the closed-form classification of L(C).

Each ``classify_*`` function decides from the simplified covering alone
(element count ``m`` and the E-class count ``k``) whether L(C) is a
partition, subspace or Dowling lattice, then optionally confirms the verdict
against generated lattices with :func:`lattice_isomorphic`.
"""

from __future__ import annotations

import json
import logging
import string
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from math import comb

from . import classical
from .covering import Covering, bits, is_simplified, popcount, simplify, validate_covering
from .errors import BudgetExceeded, NotSimplified, NotUniform, TooLarge
from .gf import prime_power
from .iso import lattice_isomorphic
from .lattice import FlatLattice, GradedLattice, build_lattice
from .matroid import MatroidOracle

log = logging.getLogger(__name__)

# generated reference lattices are never mutated, so sharing them is safe
gen_partition_lattice = lru_cache(maxsize=None)(classical.gen_partition_lattice)
gen_subspace_lattice = lru_cache(maxsize=None)(classical.gen_subspace_lattice)
gen_dowling_lattice = lru_cache(maxsize=None)(classical.gen_dowling_lattice)


@dataclass(frozen=True)
class UniformAnalysis:
    m: int
    e_classes: tuple[frozenset[str], ...]
    k: int
    class_size: int
    cov_atom: int
    predicted_level2: int
    has_degree_two: bool


def uniform_analysis(c: Covering, m_oracle: MatroidOracle | None = None) -> UniformAnalysis:
    """E-classes, their count ``k`` and the predicted number of rank-2 flats.

    Raises :class:`NotUniform` naming the failed condition: ``degree>=3``
    (an element lies in three or more blocks), ``not-a-partition`` or
    ``unequal-class-sizes``.  With no element in exactly two blocks every
    pair of elements is closed; this is reported as ``m`` classes of size 1.
    """
    if not is_simplified(c):
        raise NotSimplified(str(c))
    ground = c.ground
    m = len(ground)
    inc = c.incidence
    heavy = [e for e in range(m) if popcount(inc[e]) >= 3]
    if heavy:
        raise NotUniform("degree>=3", ",".join(ground.elements[e] for e in heavy))
    classes: list[int] = []
    for x in range(m):
        if popcount(inc[x]) == 2:
            cls = sum(1 << y for y in range(m) if inc[y] & ~inc[x] == 0)
            if cls not in classes:
                classes.append(cls)
    has_two = bool(classes)
    if not has_two:
        classes = [1 << e for e in range(m)]
    union = 0
    for cls in classes:
        if union & cls:
            raise NotUniform("not-a-partition", "E-classes overlap")
        union |= cls
    if union != ground.full_mask:
        missing = ground.sorted_labels(ground.full_mask & ~union)
        raise NotUniform("not-a-partition", "uncovered " + ",".join(missing))
    sizes = {popcount(cls) for cls in classes}
    if len(sizes) > 1:
        raise NotUniform("unequal-class-sizes", str(sorted(sizes)))
    size = sizes.pop() if sizes else 1
    k = len(classes)
    assert k * size == m
    if size == 1:
        # every pair {a, b} is closed
        predicted = comb(m, 2)
        cov = m - 1
    else:
        predicted = comb(m, 2) - (comb(size, 2) - 1) * k
        cov = m - size + 1
    classes.sort(key=lambda cls: bits(cls))
    return UniformAnalysis(
        m=m,
        e_classes=tuple(ground.labels(cls) for cls in classes),
        k=k,
        class_size=size,
        cov_atom=cov,
        predicted_level2=predicted,
        has_degree_two=has_two,
    )


@dataclass
class ClassificationReport:
    family: str
    verdict: bool
    parameters: dict = field(default_factory=dict)
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "verdict": "yes" if self.verdict else "no",
            "parameters": self.parameters,
            "evidence": self.evidence,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _prepare(c: Covering):
    s, _ = simplify(c)
    m = len(s.ground)
    lat = build_lattice(MatroidOracle(s))
    evidence: dict = {"m": m, "level_profile": list(lat.level_profile().counts)}
    try:
        ua = uniform_analysis(s)
    except NotUniform as exc:
        ua = None
        evidence["uniform"] = exc.condition
    else:
        evidence.update(k=ua.k, class_size=ua.class_size, uniform="ok")
    return s, m, ua, lat, evidence


def _oracle(lat: GradedLattice, claimed, candidates) -> bool | None:
    """Compare a verdict with explicit isomorphism tests.

    ``claimed`` is a factory for the lattice named by a positive verdict, or
    ``None`` for a negative one; ``candidates`` are the lattices a negative
    verdict must not match.
    """
    try:
        if claimed is not None:
            return lattice_isomorphic(lat, claimed()) is not None
        return not any(lattice_isomorphic(lat, cand()) is not None for cand in candidates)
    except TooLarge:
        return None


def classify_partition(c: Covering, cross_check: bool = True) -> ClassificationReport:
    s, m, ua, lat, ev = _prepare(c)
    if m == 0:
        verdict, n, branch = True, 1, "empty-ground"
    elif m == 1:
        verdict, n, branch = True, 2, "single-block"
    elif ua is not None and m == 3 and ua.k == 1:
        verdict, n, branch = True, 3, "m=3,k=1"
    else:
        verdict, n, branch = False, None, "no-match"
    ev["branch"] = branch
    params = {"n": n} if verdict else {}
    if cross_check:
        claimed = (lambda: gen_partition_lattice(n)) if verdict else None
        cands = [lambda i=i: gen_partition_lattice(i) for i in range(1, 5)]
        ev["oracle_agrees"] = _oracle(lat, claimed, cands)
    return ClassificationReport("partition", verdict, params, ev)


def classify_subspace(c: Covering, cross_check: bool = True) -> ClassificationReport:
    s, m, ua, lat, ev = _prepare(c)
    q = None
    if m == 0:
        verdict, n, branch = True, 0, "empty-ground"
    elif m == 1:
        verdict, n, branch = True, 1, "single-block"
    elif ua is not None and ua.k == 1 and prime_power(m - 1) is not None:
        verdict, n, q, branch = True, 2, m - 1, "m=q+1,k=1"
    else:
        verdict, n, branch = False, None, "no-match"
    ev["branch"] = branch
    params = {"n": n, "q": q} if verdict else {}
    if cross_check:
        if verdict and n < 2:
            claimed = lambda: gen_subspace_lattice(2, n)  # noqa: E731
        elif verdict and q in (2, 3, 5):
            claimed = lambda: gen_subspace_lattice(q, 2)  # noqa: E731
        else:
            claimed = None
        if verdict and claimed is None:
            ev["oracle_agrees"] = None
        else:
            cands = [
                lambda p=p, d=d: gen_subspace_lattice(p, d)
                for p in (2, 3, 5)
                for d in range(0, 4 if p < 5 else 3)
            ]
            ev["oracle_agrees"] = _oracle(lat, claimed, cands)
    return ClassificationReport("subspace", verdict, params, ev)


def classify_dowling(c: Covering, cross_check: bool = True) -> ClassificationReport:
    s, m, ua, lat, ev = _prepare(c)
    order = None
    if m == 0:
        verdict, n, branch = True, 0, "empty-ground"
    elif m == 1:
        verdict, n, branch = True, 1, "single-block"
    elif ua is not None and ua.k == 1 and m >= 3:
        verdict, n, order, branch = True, 2, m - 2, "m=|G|+2,k=1"
    else:
        verdict, n, branch = False, None, "no-match"
    ev["branch"] = branch
    params = {"n": n, "group_order": order} if verdict else {}
    if cross_check:
        if verdict and n < 2:
            claimed = lambda: gen_dowling_lattice(n, 1)  # noqa: E731
        elif verdict and m <= 6:
            claimed = lambda: gen_dowling_lattice(2, order)  # noqa: E731
        else:
            claimed = None
        if verdict and claimed is None:
            ev["oracle_agrees"] = None
        else:
            cands = [lambda d=d, g=g: gen_dowling_lattice(d, g) for d in range(4) for g in range(1, 5)]
            ev["oracle_agrees"] = _oracle(lat, claimed, cands)
    return ClassificationReport("dowling", verdict, params, ev)


CLASSIFIERS = {
    "partition": classify_partition,
    "subspace": classify_subspace,
    "dowling": classify_dowling,
}


# -- exhaustive enumeration ------------------------------------------------------


def _labels(n: int) -> list[str]:
    if n <= 26:
        return list(string.ascii_lowercase[:n])
    return [f"e{i}" for i in range(n)]


def _perm_tables(b: int) -> list[list[int]]:
    tables = []
    for perm in permutations(range(b)):
        table = []
        for mask in range(1 << b):
            table.append(sum(1 << perm[i] for i in bits(mask)))
        tables.append(table)
    return tables


def incidence_signatures(n: int, b: int):
    """Canonical incidence multisets for coverings of n elements by b blocks.

    A covering is determined up to relabelling elements and reordering blocks
    by the multiset of its elements' block-incidence masks; the yielded tuple
    is the least sorted image under all block permutations.
    """
    full = (1 << b) - 1
    tables = _perm_tables(b)
    for combo in combinations_with_replacement(range(1, full + 1), n):
        union = 0
        for x in combo:
            union |= x
        if union != full:
            continue
        if all(tuple(sorted(t[x] for x in combo)) >= combo for t in tables[1:]):
            yield combo


def covering_from_signature(sig: tuple[int, ...], b: int) -> Covering:
    labels = _labels(len(sig))
    blocks = [[labels[e] for e, x in enumerate(sig) if x >> i & 1] for i in range(b)]
    return validate_covering(labels, blocks)


def canonical_coverings(max_elements: int, max_blocks: int):
    """All coverings with at most the given sizes, one per isomorphism class."""
    yield validate_covering([], [])
    for b in range(1, max_blocks + 1):
        for n in range(1, max_elements + 1):
            for sig in incidence_signatures(n, b):
                yield covering_from_signature(sig, b)


def _atom_count(c: Covering) -> int:
    singles = set()
    count = 0
    for inc in c.incidence:
        if inc & (inc - 1):
            count += 1
        else:
            singles.add(inc)
    return count + len(singles)


def _matches(args) -> list[tuple[int, int, tuple[int, ...]]]:
    b, n, target = args
    height = target.height[target.top]
    n_atoms = len(target.atoms())
    size = len(target)
    hits = []
    for sig in incidence_signatures(n, b):
        c = covering_from_signature(sig, b)
        if _atom_count(c) != n_atoms:
            continue
        oracle = MatroidOracle(c)
        if oracle.rank_mask(c.ground.full_mask) != height:
            continue
        lat = build_lattice(oracle)
        if len(lat) == size and lattice_isomorphic(lat, target) is not None:
            hits.append((b, n, sig))
    return hits


def exhaustive_negative_search(
    max_elements: int, max_blocks: int, target: GradedLattice, workers: int = 1
) -> list[Covering]:
    """Every canonical covering within bounds whose lattice is isomorphic to ``target``."""
    if not (0 <= max_elements <= 6 and 0 <= max_blocks <= 4):
        raise BudgetExceeded(f"bounds ({max_elements}, {max_blocks}) exceed (6, 4)")
    found: list[Covering] = []
    empty = validate_covering([], [])
    if lattice_isomorphic(build_lattice(MatroidOracle(empty)), target) is not None:
        found.append(empty)
    jobs = [(b, n, target) for b in range(1, max_blocks + 1) for n in range(1, max_elements + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_matches, jobs))
    else:
        results = [_matches(j) for j in jobs]
    for hits in results:
        for b, n, sig in hits:
            found.append(covering_from_signature(sig, b))
    log.info("search found %d coverings matching %s", len(found), target.name or "target")
    return found


def level2_count(lat: FlatLattice) -> int:
    counts = lat.level_profile().counts
    return counts[2] if len(counts) > 2 else 0
