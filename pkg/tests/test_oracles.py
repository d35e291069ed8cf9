"""Cross-checks between independent computation routes.

These tests pit the production code paths against slower or structurally
different ways of getting the same numbers.
"""

import itertools
import random

import numpy as np

from liegrowth import _fp
from liegrowth.difflie import (
    BigradedComplex,
    acyclic_basis,
    differential_pair,
    homology,
)
from liegrowth.freelie import (
    FreeNAElement,
    GeneratorSet,
    basic_products,
    embed_tensor,
    lie_component,
    witt,
)
from liegrowth.zpmod import RingSpec


def all_bracketings(word):
    """Every full binary bracketing of the given letter sequence."""
    if len(word) == 1:
        return [word[0]]
    out = []
    for cut in range(1, len(word)):
        for left in all_bracketings(word[:cut]):
            for right in all_bracketings(word[cut:]):
                out.append((left, right))
    return out


def span_rank(gens, trees, p):
    by_degree = {}
    for tree in trees:
        elem = embed_tensor(FreeNAElement.from_tree(gens, tree))
        if elem.is_zero():
            continue
        by_degree.setdefault(elem.degree, []).append(elem)
    total = 0
    for elems in by_degree.values():
        words = sorted({w for e in elems for w, _ in e.terms})
        idx = {w: i for i, w in enumerate(words)}
        mat = np.zeros((len(elems), len(words)), dtype=np.int64)
        for i, e in enumerate(elems):
            for w, c in e.terms:
                mat[i, idx[w]] = c
        total += _fp.rank(mat, p)
    return total


class TestSpanGenerators:
    def test_right_normed_brackets_span_everything(self):
        # every bracketing is a combination of right-normed ones, so both
        # generating sets give the same per-weight rank
        for names, p in ((("x", 2), ("y", 1)), 3), ((("a", 2), ("b", 2)), 5):
            gens = GeneratorSet.build(list(names), RingSpec(p, 1))
            for k in range(2, 6):
                every_tree = []
                for word in itertools.product(range(2), repeat=k):
                    every_tree.extend(all_bracketings(word))
                full = span_rank(gens, every_tree, p)
                production = lie_component(gens, k, 1)[0].total_rank()
                assert full == production

    def test_basic_products_embed_independently(self):
        # the Witt-many basic products stay independent in the tensor model
        gens = GeneratorSet.build([("a", 2), ("b", 2)], RingSpec(5, 1))
        for k in range(2, 9):
            prods = basic_products(2, k)
            assert span_rank(gens, prods, 5) == len(prods) == witt(2, k)


class TestHomologyConsistency:
    def test_dims_match_complex_route(self):
        # the bigraded-complex construction re-derives the differential in
        # span coordinates; its block ranks must reproduce the report
        from liegrowth.difflie import bigraded_complex

        gens, spec = differential_pair(3, 2)
        weights = range(1, 8)
        cx = bigraded_complex(gens, spec, weights)
        for w in weights:
            report = homology(gens, spec, w)
            for row in report.rows:
                assert cx.rank_at(row.degree, w) == row.dim_total
                mat = cx.diff_at(row.degree, w)
                rank_out = (
                    _fp.rank(np.array(mat, dtype=np.int64), 3) if mat else 0
                )
                assert row.dim_cycles == row.dim_total - rank_out
                above = cx.diff_at(row.degree + 1, w)
                rank_in = (
                    _fp.rank(np.array(above, dtype=np.int64), 3) if above else 0
                )
                assert row.dim_boundaries == rank_in

    def test_euler_characteristic_matches(self):
        # alternating sums of L and H dimensions agree weight by weight
        gens, spec = differential_pair(3, 2)
        for w in range(1, 10):
            report = homology(gens, spec, w)
            chi_l = sum((-1) ** r.degree * r.dim_total for r in report.rows)
            chi_h = sum((-1) ** r.degree * r.dim_homology for r in report.rows)
            assert chi_l == chi_h


def conjugated_cone_complex(rng, p, weight, a, b, base_degree):
    """An exact three-level complex with the split structure hidden.

    Ranks (b, a + b, a) at degrees base, base+1, base+2; the differentials
    are the obvious inclusion/projection conjugated by random invertible
    matrices on each level.
    """

    def random_invertible(n):
        while True:
            m = np.array(
                [[rng.randrange(p) for _ in range(n)] for _ in range(n)],
                dtype=np.int64,
            )
            if _fp.rank(m, p) == n:
                return m

    def inverse(m):
        n = len(m)
        aug = np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1)
        rows, piv = _fp.rref(aug, p)
        assert piv == list(range(n))
        return rows[:, n:]

    q0 = random_invertible(b)
    q1 = random_invertible(a + b)
    q2 = random_invertible(a)
    d2 = np.zeros((a + b, a), dtype=np.int64)
    d2[:a] = np.eye(a, dtype=np.int64)
    d1 = np.zeros((b, a + b), dtype=np.int64)
    d1[:, a:] = np.eye(b, dtype=np.int64)
    d2 = (q1 @ d2 @ inverse(q2)) % p
    d1 = (q0 @ d1 @ inverse(q1)) % p
    ranks = (
        ((base_degree, weight), b),
        ((base_degree + 1, weight), a + b),
        ((base_degree + 2, weight), a),
    )
    diffs = (
        ((base_degree + 1, weight), tuple(map(tuple, d1.tolist()))),
        ((base_degree + 2, weight), tuple(map(tuple, d2.tolist()))),
    )
    return BigradedComplex(p, ranks, diffs)


class TestAcyclicBasisOnRandomComplexes:
    def test_random_exact_complexes_pair_up(self):
        rng = random.Random(31)
        for trial in range(40):
            p = rng.choice((3, 5))
            a = rng.randint(1, 3)
            b = rng.randint(1, 3)
            base = rng.randint(0, 3)
            cx = conjugated_cone_complex(rng, p, rng.randint(1, 4), a, b, base)
            basis = acyclic_basis(cx)
            pairs = basis.all_pairs()
            assert 2 * len(pairs) == sum(r for _, r in cx.ranks)
            for top, bottom in pairs:
                (deg, w), coords = top
                mat = np.array(cx.diff_at(deg, w), dtype=np.int64)
                image = mat @ np.array(coords, dtype=np.int64)
                assert [int(x) % p for x in image] == list(bottom[1])
            # parity sorting honoured
            for top, _ in basis.even_pairs:
                assert top[0][0] % 2 == 0
            for top, _ in basis.odd_pairs:
                assert top[0][0] % 2 == 1
