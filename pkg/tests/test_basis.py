"""Epsilon, the order it generates, the matrices, and the symbol bijections."""

import random
from fractions import Fraction

import pytest

from secondbasis.arcs import Matching
from secondbasis.basis import (
    boundary_correction,
    build_order,
    change_matrix,
    epsilon,
    epsilon_inverse,
    piece_cardinality,
    primitive_image,
    recursion_check,
    reduce_symbol,
    second_basis_vectors,
    sector_label,
    series_size,
    symbol_of,
    unique_bijection_check,
)
from secondbasis.errors import DomainError
from secondbasis.f2 import EvenSet
from secondbasis.family import (
    PieceLabel,
    enumerate_family,
    ground_size,
    labeled_primitives,
    piece_of,
    pieces,
)


def m(pairs, n):
    return Matching.from_pairs(pairs, n)


def test_boundary_correction():
    for b in enumerate_family(4):
        assert boundary_correction(b, 4) == EvenSet.empty(5)
    assert boundary_correction(m([(3, 1)], 5), 3) == EvenSet([4, 5], 5)
    assert boundary_correction(m([(4, 2)], 5), 3) == EvenSet([5, 1], 5)
    assert boundary_correction(m([(4, 5)], 5), 3) == EvenSet.empty(5)


def test_epsilon_examples():
    assert epsilon(m([], 5), 4) == EvenSet.empty(5)
    assert epsilon(m([(2, 3), (1, 4)], 5), 4) == EvenSet([1, 4], 5)
    assert epsilon(m([(8, 2), (7, 3), (9, 1)], 9), 7) == EvenSet([1, 3, 7, 9], 9)
    assert primitive_image(6, PieceLabel(-2)) == EvenSet([1, 7], 7)


def test_epsilon_matches_primitive_closed_forms():
    for d in range(0, 12):
        for label, q in labeled_primitives(d):
            image = epsilon(q, d)
            assert image == primitive_image(d, label)
            assert image.gamma() == label.t


def test_epsilon_recursion():
    for d in range(2, 8):
        assert recursion_check(d) is None


def test_epsilon_lands_in_matching_piece():
    for d in range(0, 8):
        for b in enumerate_family(d):
            assert sector_label(epsilon(b, d), d) == piece_of(b, d)


def test_epsilon_bijective():
    for d in range(0, 8):
        inv = epsilon_inverse(d)
        assert len(inv) == 1 << (ground_size(d) - 1)


def test_epsilon_in_own_span_all_desk_scales():
    from secondbasis.f2 import span_membership

    for d in range(0, 12):
        for b in enumerate_family(d):
            assert span_membership(b.pair_vectors(), epsilon(b, d))


def test_order_d2_brute_force():
    # frozen: at D=2 only the empty set is strictly comparable
    order = build_order(2)
    assert [tuple(x.members) for x in order.elements] == [
        (), (1, 2), (2, 3), (1, 3)
    ]
    empty = EvenSet([], 3)
    for y in order.elements:
        assert order.leq(empty, y)
        for x in order.elements:
            if x != empty and x != y:
                assert not order.leq(x, y)


def test_order_is_partial_order():
    for d in range(0, 8):
        order = build_order(d)
        for y in order.elements:
            assert order.leq(y, y)
        # antisymmetry: mutual comparability only on the diagonal
        for y in order.elements:
            for x in order.below(y):
                if x != y:
                    assert not order.leq(y, x)


def test_unique_bijection_certificate():
    for d in (0, 1, 2, 3, 4, 7):
        assert unique_bijection_check(d) is None


def test_change_matrix_d2_frozen():
    matrix = change_matrix(2, "all")
    assert [tuple(x.members) for x in matrix.labels] == [
        (), (1, 2), (2, 3), (1, 3)
    ]
    assert matrix.rows == [
        [1, 1, 1, 1],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ]


def test_change_matrix_sectors():
    assert change_matrix(5, "plus").size() == 32
    assert change_matrix(5, "minus").size() == 32
    with pytest.raises(DomainError):
        change_matrix(4, "plus")
    with pytest.raises(DomainError):
        change_matrix(5, "all")


def test_empty_image_column_is_unit():
    for d in (2, 4, 3, 5):
        sector = "all" if d % 2 == 0 else "plus"
        matrix = change_matrix(d, sector)
        j = matrix.labels.index(EvenSet.empty(ground_size(d)))
        column = [matrix.rows[i][j] for i in range(matrix.size())]
        assert sum(column) == 1 and column[j] == 1


def bareiss_det(rows):
    """Fraction-free determinant, independent of any triangularity assumption."""
    a = [[Fraction(v) for v in row] for row in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] / a[col][col]
            for c in range(col, n):
                a[r][c] -= factor * a[col][c]
    return det


def test_second_basis_vectors_unimodular():
    vectors = second_basis_vectors(4, "all")
    assert len(vectors) == 16
    matrix = change_matrix(4, "all")
    assert bareiss_det(matrix.rows) == 1
    # every column is the expansion of its label in the standard basis
    for j, (label, combo) in enumerate(vectors):
        assert label == matrix.labels[j]
        assert all(coeff == 1 for _, coeff in combo)
        assert (label, 1) in combo  # diagonal term


def test_symbol_of_even_d():
    sym = symbol_of(EvenSet([], 3), 2)
    assert sorted(sym.s) == [2] and sorted(sym.t) == [1, 3]
    assert sym.defect == -1 and sym.series() == 1


def test_symbol_defect_identity_random():
    rng = random.Random(17)
    for d in (2, 4, 5, 7, 9, 11):
        n = ground_size(d)
        for _ in range(50):
            size = rng.choice(range(0, n + 1, 2))
            x = EvenSet(rng.sample(range(1, n + 1), size), n)
            members = set(x.members)
            star = {i for i in members if i % 2} | {
                i for i in range(2, n + 1, 2) if i not in members
            }
            starstar = set(range(1, n + 1)) - star
            assert len(starstar) - len(star) == 2 * x.gamma() + 1


def test_symbol_sectors_odd_d():
    d, n = 3, 5
    for x in build_order(d).elements:
        sym = symbol_of(x, d)
        if n in x:
            assert sym.flavor == "minus" and sym.defect == 2 * x.gamma() + 2
            assert sym.defect % 4 == 2
        else:
            assert sym.flavor == "plus" and sym.defect == 2 * x.gamma()
            assert sym.defect % 4 == 0


def test_symbol_bijective_with_series_counts():
    for d in (2, 4, 3, 5):
        n = ground_size(d)
        order = build_order(d)
        if d % 2 == 0:
            groups = {}
            for x in order.elements:
                groups.setdefault(symbol_of(x, d).series(), set()).add(symbol_of(x, d))
            assert sum(len(v) for v in groups.values()) == 1 << (n - 1)
            for s, syms in groups.items():
                assert len(syms) == series_size(d, s)
        else:
            for sector, keep in (("plus", False), ("minus", True)):
                syms = {
                    symbol_of(x, d)
                    for x in order.elements
                    if (n in x) == keep
                }
                assert len(syms) == 1 << (n - 2)
                by_series = {}
                for sym in syms:
                    by_series.setdefault(sym.series(), []).append(sym)
                for s, group in by_series.items():
                    assert len(group) == series_size(d, s)


def test_reduce_symbol():
    sym = reduce_symbol({2, 5}, {5, 9}, {5}, {2, 5, 9})
    assert sorted(sym.s) == [1] and sorted(sym.t) == [2]
    # identity on an already-standard symbol
    sym2 = reduce_symbol({1, 3}, {2}, set(), {1, 2, 3})
    assert sorted(sym2.s) == [1, 3] and sorted(sym2.t) == [2]
    assert sym2.defect == 1
    with pytest.raises(ValueError):
        reduce_symbol({1}, {2}, set(), {1, 2, 3})  # does not cover U


def test_reduce_preserves_defect():
    rng = random.Random(23)
    for _ in range(50):
        u = set(rng.sample(range(1, 20), rng.randint(2, 8)))
        u_prime = set(rng.sample(sorted(u), rng.randint(0, len(u) - 1)))
        core = sorted(u - u_prime)
        s_extra = set(rng.sample(core, rng.randint(0, len(core))))
        s = u_prime | s_extra
        t = u_prime | (set(core) - s_extra)
        sym = reduce_symbol(s, t, u_prime, u)
        assert sym.defect == len(s) - len(t)


def test_piece_cardinality_examples():
    assert piece_cardinality(6, PieceLabel(0)) == 35
    assert piece_cardinality(7, PieceLabel(0, "+")) == 70
    assert piece_cardinality(6, PieceLabel(-4)) == 1
    assert series_size(2, 1) == 3
    assert series_size(7, 0) == 70


def test_piece_cardinality_matches_enumeration():
    for d in range(0, 9):
        for label, members in pieces(d).items():
            assert piece_cardinality(d, label) == len(members)
