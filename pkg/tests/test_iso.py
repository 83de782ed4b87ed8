import random

import pytest

from coverlat.classical import gen_dowling_lattice, gen_partition_lattice, gen_subspace_lattice
from coverlat.errors import TooLarge
from coverlat.iso import is_cover_isomorphism, lattice_isomorphic, refine_colours
from coverlat.lattice import GradedLattice, build_lattice
from coverlat.matroid import MatroidOracle
from helpers import cov, random_covering, small_coverings

nx = pytest.importorskip("networkx")


def lat_of(c):
    return build_lattice(MatroidOracle(c))


def shuffled(lat: GradedLattice, rng: random.Random) -> GradedLattice:
    """Relabelled copy with a random vertex order."""
    n = len(lat)
    perm = list(range(n))
    rng.shuffle(perm)
    covers = [[] for _ in range(n)]
    height = [0] * n
    labels = [""] * n
    for v in range(n):
        covers[perm[v]] = sorted(perm[u] for u in lat.covers_up[v])
        height[perm[v]] = lat.height[v]
        labels[perm[v]] = lat.labels[v]
    return GradedLattice(labels, height, covers, perm[lat.bottom], perm[lat.top])


def nx_isomorphic(a: GradedLattice, b: GradedLattice) -> bool:
    def graph(lat):
        g = nx.DiGraph()
        for v in range(len(lat)):
            g.add_node(v, h=lat.height[v])
        g.add_edges_from(lat.edges)
        return g

    matcher = nx.algorithms.isomorphism.DiGraphMatcher(
        graph(a), graph(b), node_match=lambda x, y: x["h"] == y["h"]
    )
    return matcher.is_isomorphic()


def test_examples(p3_cover, dowling_cover, singletons4):
    assert lattice_isomorphic(lat_of(p3_cover), gen_partition_lattice(3)) is not None
    assert lattice_isomorphic(lat_of(p3_cover), gen_subspace_lattice(2, 2)) is not None
    assert lattice_isomorphic(lat_of(dowling_cover), gen_dowling_lattice(2, 2)) is not None
    assert lattice_isomorphic(lat_of(singletons4), gen_subspace_lattice(3, 2)) is None
    assert lattice_isomorphic(gen_partition_lattice(4), gen_dowling_lattice(3, 1)) is not None
    assert lattice_isomorphic(gen_partition_lattice(4), gen_subspace_lattice(2, 3)) is None


def test_result_is_cover_isomorphism(dowling_cover):
    a = lat_of(dowling_cover)
    b = gen_dowling_lattice(2, 2)
    f = lattice_isomorphic(a, b)
    assert is_cover_isomorphism(a, b, f)
    assert f[a.bottom] == b.bottom and f[a.top] == b.top
    broken = dict(f)
    broken[a.bottom], broken[a.top] = broken[a.top], broken[a.bottom]
    assert not is_cover_isomorphism(a, b, broken)
    assert not is_cover_isomorphism(a, b, {0: 0})


@pytest.mark.parametrize(
    "make",
    [
        lambda: gen_partition_lattice(5),
        lambda: gen_subspace_lattice(3, 3),
        lambda: gen_subspace_lattice(4, 3),
        lambda: gen_dowling_lattice(3, 3),
    ],
)
def test_shuffled_copies(make):
    rng = random.Random(5)
    lat = make()
    for _ in range(3):
        other = shuffled(lat, rng)
        f = lattice_isomorphic(lat, other)
        assert f is not None and is_cover_isomorphism(lat, other, f)


def test_reflexive_and_symmetric():
    rng = random.Random(11)
    lats = [lat_of(random_covering(rng, 5, 4)) for _ in range(30)]
    for a in lats:
        assert lattice_isomorphic(a, a) is not None
    for a in lats[:12]:
        for b in lats[:12]:
            ab = lattice_isomorphic(a, b) is not None
            assert ab == (lattice_isomorphic(b, a) is not None)


def test_agrees_with_networkx():
    lats = [lat_of(c) for c in small_coverings(4, 3)]
    rng = random.Random(3)
    pairs = [(a, b) for a in lats for b in lats if len(a) == len(b)]
    for a, b in rng.sample(pairs, min(400, len(pairs))):
        assert (lattice_isomorphic(a, b) is not None) == nx_isomorphic(a, b)


def _two_level(pairs):
    """Bottom, atoms 1..4, coatoms 5..8, top; ``pairs`` joins atoms to coatoms."""
    covers = [[1, 2, 3, 4]] + [[] for _ in range(8)] + [[]]
    for a, c in pairs:
        covers[a].append(c)
    for c in range(5, 9):
        covers[c].append(9)
    return GradedLattice([str(i) for i in range(10)], [0] + [1] * 4 + [2] * 4 + [3], covers, 0, 9)


def test_refinement_blind_pair():
    # one 8-cycle versus two 4-cycles between the middle levels
    cycle = _two_level([(1, 5), (1, 6), (2, 6), (2, 7), (3, 7), (3, 8), (4, 8), (4, 5)])
    split = _two_level([(1, 5), (1, 6), (2, 5), (2, 6), (3, 7), (3, 8), (4, 7), (4, 8)])
    assert len(set(refine_colours(cycle))) == len(set(refine_colours(split)))
    assert lattice_isomorphic(cycle, split) is None
    assert not nx_isomorphic(cycle, split)
    assert lattice_isomorphic(cycle, shuffled(cycle, random.Random(1))) is not None


def test_refine_colours_respects_height():
    lat = gen_partition_lattice(4)
    col = refine_colours(lat)
    for i in range(len(lat)):
        for j in range(len(lat)):
            if col[i] == col[j]:
                assert lat.height[i] == lat.height[j]


def test_too_large():
    big = gen_partition_lattice(6)
    with pytest.raises(TooLarge):
        lattice_isomorphic(big, big, budget=100)
    assert lattice_isomorphic(big, big, budget=203) is not None
