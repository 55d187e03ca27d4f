from __future__ import annotations

import random
from fractions import Fraction

import pytest

from zigzagalg.exactlin import PrimeField, span_equal
from zigzagalg.quiver import Graph, path_graph, random_tree, star_graph
from zigzagalg.zigzag import (
    arrow,
    build_algebra,
    center,
    check_associativity,
    cycle,
    idem,
    multiply,
    with_patched_table,
)


@pytest.fixture(scope="module")
def edge_algebra():
    return build_algebra(Graph(2, frozenset({(1, 2)})))


def test_single_edge_basis_and_dim(edge_algebra):
    a = edge_algebra
    assert a.dim == 6
    assert [str(b) for b in a.basis] == ["e1", "e2", "a(1->2)", "a(2->1)", "c1", "c2"]


def test_dims_match_graph_size():
    assert build_algebra(path_graph(3)).dim == 10
    assert build_algebra(star_graph(4)).dim == 14  # one center, three leaves
    tri = Graph(3, frozenset({(1, 2), (2, 3), (1, 3)}))
    assert build_algebra(tri).dim == 12


def basis_product(a, x, y):
    vx = a.basis_vector(a.index(x))
    vy = a.basis_vector(a.index(y))
    return multiply(a, vx, vy)


def test_product_rules_on_path():
    a = build_algebra(path_graph(3))
    z = tuple(Fraction(0) for _ in range(a.dim))

    def one_at(b):
        return a.basis_vector(a.index(b))

    assert basis_product(a, arrow(1, 2), arrow(2, 1)) == one_at(cycle(1))
    assert basis_product(a, arrow(1, 2), arrow(2, 3)) == z  # not a cycle
    assert basis_product(a, cycle(1), cycle(1)) == z
    assert basis_product(a, cycle(1), arrow(1, 2)) == z
    assert basis_product(a, idem(1), arrow(1, 2)) == one_at(arrow(1, 2))
    assert basis_product(a, arrow(1, 2), idem(2)) == one_at(arrow(1, 2))
    assert basis_product(a, arrow(1, 2), idem(1)) == z
    assert basis_product(a, idem(2), cycle(2)) == one_at(cycle(2))


def test_identity_element(edge_algebra):
    a = edge_algebra
    rng = random.Random(3)
    one = a.identity()
    for _ in range(10):
        x = tuple(Fraction(rng.randint(-3, 3)) for _ in range(a.dim))
        assert multiply(a, one, x) == x
        assert multiply(a, x, one) == x


def test_multiply_is_bilinear(edge_algebra):
    a = edge_algebra
    rng = random.Random(5)
    for _ in range(10):
        x = tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(a.dim))
        y = tuple(Fraction(rng.randint(-3, 3)) for _ in range(a.dim))
        zv = tuple(Fraction(rng.randint(-3, 3)) for _ in range(a.dim))
        xy = multiply(a, x, y)
        xz = multiply(a, x, zv)
        both = multiply(a, x, tuple(u + v for u, v in zip(y, zv)))
        assert both == tuple(u + v for u, v in zip(xy, xz))


def test_build_rejects_unusable_graphs():
    with pytest.raises(ValueError, match="single-vertex"):
        build_algebra(Graph(1, frozenset()))
    with pytest.raises(ValueError, match="not connected"):
        build_algebra(Graph(4, frozenset({(1, 2), (3, 4)})))
    with pytest.raises(ValueError, match="empty"):
        build_algebra(Graph(0, frozenset()))


def test_associativity_exhaustive():
    for g in (path_graph(2), path_graph(4), star_graph(5), random_tree(7, 99)):
        assert check_associativity(build_algebra(g))
    tri = Graph(3, frozenset({(1, 2), (2, 3), (1, 3)}))
    assert check_associativity(build_algebra(tri))


def test_associativity_detects_a_patched_table(edge_algebra):
    a = edge_algebra
    # redefine a12 * a21 := e1 instead of c1; the exhaustive scan must notice
    bad = with_patched_table(a, a.index(arrow(1, 2)), a.index(arrow(2, 1)), a.index(idem(1)))
    assert not check_associativity(bad)


def test_center_single_edge(edge_algebra):
    a = edge_algebra
    cen = center(a)
    assert cen.dimension == 3
    expected = [
        a.identity(),
        a.basis_vector(a.index(cycle(1))),
        a.basis_vector(a.index(cycle(2))),
    ]
    assert span_equal(cen.basis, expected)


def test_center_path_five():
    a = build_algebra(path_graph(5))
    assert center(a).dimension == 6


def test_center_of_a_cycle_graph_still_n_plus_one():
    tri = Graph(3, frozenset({(1, 2), (2, 3), (1, 3)}))
    a = build_algebra(tri)
    assert center(a).dimension == 4


def test_center_elements_commute(edge_algebra):
    a = edge_algebra
    for v in center(a).basis:
        for k in range(a.dim):
            b = a.basis_vector(k)
            assert multiply(a, v, b) == multiply(a, b, v)


def test_center_mod_p():
    a = build_algebra(path_graph(4), PrimeField(3))
    assert center(a).dimension == 5
