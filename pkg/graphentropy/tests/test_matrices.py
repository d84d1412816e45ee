import numpy as np
from django.test import SimpleTestCase
from hypothesis import given
from numpy.testing import assert_allclose, assert_array_equal

from graphentropy.exceptions import DomainError
from graphentropy.generators import complete_graph, cycle_graph, empty_graph
from graphentropy.graph import degrees
from graphentropy.matrices import (
    adjacency_matrix,
    check_kind_preconditions,
    graph_matrix,
    laplacian,
    normalized_laplacian,
)
from graphentropy.schemas import MatrixKind, SymMatrix

from .strategies import graphs


class AdjacencyTest(SimpleTestCase):
    def test_single_edge(self):
        assert_array_equal(adjacency_matrix(complete_graph(2)).entries, [[0, 1], [1, 0]])

    def test_empty_graph_is_zero(self):
        assert_array_equal(adjacency_matrix(empty_graph(3)).entries, np.zeros((3, 3)))

    def test_cycle_rows_have_two_ones(self):
        entries = adjacency_matrix(cycle_graph(4)).entries
        assert_array_equal(entries.sum(axis=1), [2, 2, 2, 2])
        assert_array_equal(np.diag(entries), np.zeros(4))

    def test_entries_are_read_only(self):
        entries = adjacency_matrix(complete_graph(3)).entries
        with self.assertRaises(ValueError):
            entries[0, 1] = 5.0


class LaplacianTest(SimpleTestCase):
    def test_single_edge(self):
        assert_array_equal(laplacian(complete_graph(2)).entries, [[1, -1], [-1, 1]])

    def test_triangle(self):
        expected = 3 * np.eye(3) - np.ones((3, 3))
        assert_array_equal(laplacian(complete_graph(3)).entries, expected)

    def test_empty_graph_is_zero(self):
        assert_array_equal(laplacian(empty_graph(4)).entries, np.zeros((4, 4)))

    @given(graphs())
    def test_rows_sum_to_zero_and_diagonal_is_degree(self, g):
        entries = laplacian(g).entries
        assert_array_equal(entries.sum(axis=1), np.zeros(g.n))
        assert_array_equal(np.diag(entries), degrees(g))


class NormalizedLaplacianTest(SimpleTestCase):
    def test_single_edge(self):
        assert_array_equal(normalized_laplacian(complete_graph(2)).entries, [[1, -1], [-1, 1]])

    def test_isolated_vertices_are_rejected(self):
        with self.assertRaises(DomainError):
            normalized_laplacian(empty_graph(2))
        with self.assertRaises(DomainError):
            check_kind_preconditions(empty_graph(2), MatrixKind.NORMALIZED_LAPLACIAN)

    def test_other_kinds_accept_isolated_vertices(self):
        check_kind_preconditions(empty_graph(2), MatrixKind.LAPLACIAN)
        check_kind_preconditions(empty_graph(2), MatrixKind.ADJACENCY)

    def test_regular_graphs_scale_the_laplacian(self):
        for g, d in ((cycle_graph(7), 2), (complete_graph(6), 5)):
            assert_allclose(
                normalized_laplacian(g).entries, laplacian(g).entries / d, rtol=0, atol=1e-15
            )
            assert_allclose(
                normalized_laplacian(g).entries,
                np.eye(g.n) - adjacency_matrix(g).entries / d,
                rtol=0, atol=1e-15,
            )


class SymmetryTest(SimpleTestCase):
    @given(graphs())
    def test_every_builder_is_exactly_symmetric(self, g):
        for kind in MatrixKind:
            if kind is MatrixKind.NORMALIZED_LAPLACIAN and g.n and degrees(g).min() == 0:
                continue
            m = graph_matrix(g, kind)
            self.assertIs(m.kind, kind)
            assert_array_equal(m.entries, m.entries.T)

    def test_asymmetric_input_is_rejected(self):
        with self.assertRaises(ValueError):
            SymMatrix(kind=MatrixKind.ADJACENCY, entries=[[0.0, 1.0], [0.0, 0.0]])

    def test_non_finite_input_is_rejected(self):
        with self.assertRaises(ValueError):
            SymMatrix(kind=MatrixKind.ADJACENCY, entries=[[np.nan]])
