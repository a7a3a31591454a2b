"""F2 space: construction, addition, gamma, spans, decompositions."""

import random
from itertools import combinations

import pytest

from secondbasis.errors import DecompositionError, DimensionMismatchError
from secondbasis.f2 import (
    EvenSet,
    f2_sum,
    span_masks,
    span_membership,
    unique_decomposition,
)


def es(members, n=5):
    return EvenSet(members, n)


def subset_sums(gens):
    """Brute-force oracle: every mask reachable as a subset sum."""
    out = set()
    for r in range(len(gens) + 1):
        for combo in combinations(gens, r):
            m = 0
            for g in combo:
                m ^= g.mask
            out.add(m)
    return out


def random_even_set(rng, n):
    size = rng.choice(range(0, n + 1, 2))
    return EvenSet(rng.sample(range(1, n + 1), size), n)


def test_construction_validates():
    with pytest.raises(ValueError):
        EvenSet([1], 5)
    with pytest.raises(ValueError):
        EvenSet([1, 6], 5)
    with pytest.raises(ValueError):
        EvenSet([1, 2], 4)  # even ground size
    assert len(es([])) == 0
    assert es([1, 2]).members == (1, 2)


def test_addition_examples():
    assert es([1, 2], 3) ^ es([2, 3], 3) == es([1, 3], 3)
    x = es([1, 4])
    assert x ^ x == es([])
    assert es([5, 1, 2, 3]) ^ es([1, 2]) == es([3, 5])


def test_addition_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        es([1, 2], 3) ^ es([1, 2], 5)


def test_addition_algebra():
    rng = random.Random(7)
    for _ in range(200):
        x, y, z = (random_even_set(rng, 7) for _ in range(3))
        assert x ^ y == y ^ x
        assert (x ^ y) ^ z == x ^ (y ^ z)
        assert x ^ x == EvenSet.empty(7)


def test_gamma_examples():
    assert es([]).gamma() == 0
    assert es([4, 2]).gamma() == 2
    assert es([1, 3]).gamma() == -2
    assert es([1, 2]).gamma() == 0


def test_gamma_additive_on_disjoint():
    rng = random.Random(11)
    for _ in range(200):
        x = random_even_set(rng, 9)
        rest = [i for i in range(1, 10) if i not in x]
        size = rng.choice(range(0, len(rest) + 1, 2))
        y = EvenSet(rng.sample(rest, size), 9)
        assert (x ^ y).gamma() == x.gamma() + y.gamma()


def test_span_membership_examples():
    gens = [es([1, 4]), es([2, 3])]
    assert span_membership(gens, es([1, 4]))
    assert not span_membership([es([1, 2])], es([2, 3]))
    assert span_membership([], es([], 3)) and not span_membership([], es([1, 2], 3))


def test_span_membership_against_brute_force():
    rng = random.Random(3)
    for _ in range(60):
        gens = [random_even_set(rng, 9) for _ in range(rng.randint(0, 12))]
        sums = subset_sums(gens)
        for _ in range(10):
            x = random_even_set(rng, 9)
            assert span_membership(gens, x) == (x.mask in sums)
        assert span_masks(gens) == frozenset(sums)


def test_unique_decomposition_examples():
    gens = [es([2, 3]), es([1, 4])]
    assert unique_decomposition(gens, es([1, 4])) == [es([1, 4])]
    assert unique_decomposition([es([1, 2])], es([], 5)) == []
    assert unique_decomposition([es([5, 3]), es([1, 2])], es([3, 5])) == [es([5, 3])]


def test_unique_decomposition_errors():
    with pytest.raises(DecompositionError):
        unique_decomposition([es([1, 2])], es([2, 3]))
    with pytest.raises(ValueError):
        unique_decomposition([es([1, 2]), es([2, 3])], es([1, 3]))  # not disjoint
    with pytest.raises(ValueError):
        unique_decomposition([es([1, 2, 3, 4])], es([1, 2]))  # not a pair


def test_unique_decomposition_against_brute_force():
    rng = random.Random(5)
    for _ in range(60):
        universe = list(range(1, 10))
        rng.shuffle(universe)
        count = rng.randint(0, 4)
        gens = [EvenSet(universe[2 * i : 2 * i + 2], 9) for i in range(count)]
        sums = subset_sums(gens)
        target_mask = rng.choice(sorted(sums))
        x = EvenSet.from_mask(target_mask, 9)
        part = unique_decomposition(gens, x)
        assert f2_sum(part, 9) == x
        # uniqueness: exactly one subset reaches the target
        hits = 0
        for r in range(len(gens) + 1):
            for combo in combinations(gens, r):
                m = 0
                for g in combo:
                    m ^= g.mask
                hits += m == target_mask
        assert hits == 1
