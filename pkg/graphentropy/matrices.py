import logging

import numpy as np

from .exceptions import DomainError
from .graph import degrees
from .schemas import Graph, MatrixKind, SymMatrix

logger = logging.getLogger(__name__)


def _adjacency_entries(g: Graph) -> np.ndarray:
    entries = np.zeros((g.n, g.n), dtype=np.float64)
    edges = g.edge_array()
    entries[edges[:, 0], edges[:, 1]] = 1.0
    entries[edges[:, 1], edges[:, 0]] = 1.0
    return entries


def adjacency_matrix(g: Graph) -> SymMatrix:
    return SymMatrix(kind=MatrixKind.ADJACENCY, entries=_adjacency_entries(g))


def laplacian(g: Graph) -> SymMatrix:
    """L = D - A"""
    entries = -_adjacency_entries(g)
    entries[np.diag_indices(g.n)] = degrees(g)
    return SymMatrix(kind=MatrixKind.LAPLACIAN, entries=entries)


def normalized_laplacian(g: Graph) -> SymMatrix:
    """I - D^{-1/2} A D^{-1/2}; undefined when a vertex is isolated"""
    deg = degrees(g)
    isolated = np.flatnonzero(deg == 0)
    if isolated.size:
        raise DomainError(
            f"Normalized Laplacian is undefined: {isolated.size} isolated vertices "
            f"(first is {int(isolated[0])})"
        )
    scale = 1.0 / np.sqrt(deg.astype(np.float64))
    entries = -_adjacency_entries(g) * np.outer(scale, scale)
    entries[np.diag_indices(g.n)] = 1.0
    return SymMatrix(kind=MatrixKind.NORMALIZED_LAPLACIAN, entries=entries)


BUILDERS = {
    MatrixKind.ADJACENCY: adjacency_matrix,
    MatrixKind.LAPLACIAN: laplacian,
    MatrixKind.NORMALIZED_LAPLACIAN: normalized_laplacian,
}


def graph_matrix(g: Graph, kind: MatrixKind) -> SymMatrix:
    logger.debug("Building %s matrix for n=%d m=%d", kind.value, g.n, g.num_edges)
    return BUILDERS[MatrixKind(kind)](g)


def check_kind_preconditions(g: Graph, kind: MatrixKind) -> None:
    """Raise DomainError when `kind` cannot be built for g"""
    if MatrixKind(kind) is MatrixKind.NORMALIZED_LAPLACIAN and g.n and degrees(g).min() == 0:
        raise DomainError("Normalized Laplacian needs every vertex to have degree >= 1")
