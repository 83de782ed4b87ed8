"""Covering constructors shared by the test modules."""

import random

from coverlat.covering import validate_covering


def cov(ground, *blocks):
    """``cov("abc", "ab", "ac")`` -> covering of a,b,c by {a,b},{a,c}."""
    return validate_covering(list(ground), [list(b) for b in blocks])


def random_covering(rng: random.Random, max_elements=6, max_blocks=5):
    n = rng.randint(1, max_elements)
    labels = [chr(ord("a") + i) for i in range(n)]
    b = rng.randint(1, max_blocks)
    blocks = [set() for _ in range(b)]
    for e in labels:
        for i in range(b):
            if rng.random() < 0.4:
                blocks[i].add(e)
        if not any(e in blk for blk in blocks):
            blocks[rng.randrange(b)].add(e)
    blocks = [sorted(blk) for blk in blocks if blk]
    return validate_covering(labels, blocks)


def small_coverings(max_elements=4, max_blocks=4):
    from coverlat.classify import canonical_coverings

    return list(canonical_coverings(max_elements, max_blocks))
