"""Brute-force reference computations, independent of the library's algorithms."""

from itertools import combinations, permutations, product


def subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from (frozenset(s) for s in combinations(items, r))


def blocks_of(blocks, x):
    return {i for i, b in enumerate(blocks) if set(b) & set(x)}


def is_partial_transversal(blocks, x):
    """Try every injective assignment of the elements of x to block indices."""
    x = list(x)
    for choice in permutations(range(len(blocks)), len(x)):
        if all(e in blocks[i] for e, i in zip(x, choice)):
            return True
    return not x


def hall_condition(blocks, x):
    return all(len(blocks_of(blocks, s)) >= len(s) for s in subsets(x))


def brute_rank(blocks, x):
    return max(len(s) for s in subsets(x) if is_partial_transversal(blocks, s))


def brute_closure(blocks, ground, x):
    r = brute_rank(blocks, x)
    return frozenset(a for a in ground if brute_rank(blocks, set(x) | {a}) == r)


def brute_flats(blocks, ground):
    return {s for s in subsets(ground) if brute_closure(blocks, ground, s) == s}


def brute_subspaces(q, n, d):
    """All d-dimensional subspaces of F_q^n (q prime) as vector sets."""
    vectors = list(product(range(q), repeat=n))
    found = set()
    for gens in combinations(vectors, d):
        span = set()
        for coeffs in product(range(q), repeat=d):
            span.add(tuple(sum(c * g[j] for c, g in zip(coeffs, gens)) % q for j in range(n)))
        if len(span) == q**d:
            found.add(frozenset(span))
    return found


def transitive_reduction(elements, leq):
    """Cover pairs of a finite poset from its order relation."""
    lt = {(a, b) for a in elements for b in elements if a != b and leq(a, b)}
    return {
        (a, b)
        for (a, b) in lt
        if not any((a, c) in lt and (c, b) in lt for c in elements)
    }
