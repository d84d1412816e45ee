"""
Graph construction, edge-list I/O and component analysis.

Every pipeline tie-break is by ascending vertex id so that extracted
subgraphs are reproducible.
"""

import logging
import math
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix
from scipy.sparse import csgraph

from .exceptions import DomainError, EdgeListParseError
from .schemas import ComponentLabeling, Graph

logger = logging.getLogger(__name__)


def from_edge_list(pairs: Iterable[Tuple[int, int]], n: Optional[int] = None) -> Graph:
    """Symmetrize, dedupe and drop self-loops; n defaults to 1 + max id"""
    edges = set()
    max_id = -1
    for u, v in pairs:
        u, v = int(u), int(v)
        if u < 0 or v < 0:
            raise DomainError(f"Negative vertex id in edge ({u}, {v})")
        if n is not None and (u >= n or v >= n):
            raise DomainError(f"Edge ({u}, {v}) references a vertex outside 0..{n - 1}")
        max_id = max(max_id, u, v)
        if u != v:
            edges.add((u, v) if u < v else (v, u))
    if n is None:
        n = max_id + 1
    elif n < 0:
        raise DomainError("Vertex count must be non-negative")
    return Graph.from_canonical(n, edges)


VERTICES_HEADER = '# vertices:'


def _declared_order(line: str, line_number: int) -> Optional[int]:
    if not line.startswith(VERTICES_HEADER):
        return None
    value = line[len(VERTICES_HEADER):].strip()
    try:
        declared = int(value)
    except ValueError:
        raise EdgeListParseError(line_number, f"vertex count '{value}' is not an integer") from None
    if declared < 0:
        raise EdgeListParseError(line_number, f"negative vertex count {declared}")
    return declared


def parse_edge_list_text(text: str) -> Graph:
    """
    Parse "u v" lines ('#' comments, blank lines allowed).

    Raw ids are remapped to 0..n-1 in order of first appearance. A
    "# vertices: <n>" line ahead of the first edge (as written by
    to_edge_list_text) declares ids 0..n-1 instead: they are kept as they
    are and isolated vertices survive.
    """
    remap = {}
    declared = None
    pairs = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith('#'):
            if not pairs and declared is None:
                declared = _declared_order(line, line_number)
                if declared is not None:
                    remap = {v: v for v in range(declared)}
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(line_number, f"expected 2 tokens, found {len(tokens)}")
        try:
            ids = [int(token) for token in tokens]
        except ValueError:
            raise EdgeListParseError(line_number, f"non-integer vertex id in '{line}'") from None
        for raw_id in ids:
            if raw_id < 0:
                raise EdgeListParseError(line_number, f"negative vertex id {raw_id}")
            if raw_id not in remap:
                if declared is not None:
                    raise EdgeListParseError(
                        line_number, f"vertex {raw_id} outside the declared 0..{declared - 1}"
                    )
                remap[raw_id] = len(remap)
        pairs.append((remap[ids[0]], remap[ids[1]]))
    return from_edge_list(pairs, n=len(remap))


def to_edge_list_text(g: Graph, comments: Sequence[str] = ()) -> str:
    """Serialize as a "# vertices" header plus edges in ascending (u, v) order"""
    header = [f"# n={g.n} m={g.num_edges}", f"{VERTICES_HEADER} {g.n}"]
    header.extend(f"# {comment}" for comment in comments)
    body = [f"{u} {v}" for u, v in g.edge_array().tolist()]
    return '\n'.join(header + body) + '\n'


def read_edge_list(path: Union[str, Path]) -> Graph:
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise DomainError(f"Cannot read edge list '{path}': {e.strerror or e}") from e
    g = parse_edge_list_text(text)
    logger.info("Read %s: n=%d m=%d", path, g.n, g.num_edges)
    return g


def degrees(g: Graph) -> np.ndarray:
    edges = g.edge_array()
    return np.bincount(edges.reshape(-1), minlength=g.n).astype(np.int64)


def _csgraph(g: Graph) -> csr_matrix:
    edges = g.edge_array()
    data = np.ones(edges.shape[0], dtype=np.int8)
    return coo_matrix((data, (edges[:, 0], edges[:, 1])), shape=(g.n, g.n)).tocsr()


def connected_components(g: Graph) -> ComponentLabeling:
    """Component labels ordered by each component's smallest vertex id"""
    if g.n == 0:
        return ComponentLabeling(label=(), count=0)
    count, raw = csgraph.connected_components(_csgraph(g), directed=False)
    relabel = {}
    labels = []
    for r in raw.tolist():
        if r not in relabel:
            relabel[r] = len(relabel)
        labels.append(relabel[r])
    return ComponentLabeling(label=tuple(labels), count=int(count))


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or connected_components(g).count == 1


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on `vertices`, relabelled 0..k-1 by ascending original id"""
    kept = sorted(set(int(v) for v in vertices))
    if kept and (kept[0] < 0 or kept[-1] >= g.n):
        raise DomainError(f"Vertex set is not contained in 0..{g.n - 1}")
    index = {v: i for i, v in enumerate(kept)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges
        if u in index and v in index
    ]
    return Graph.from_canonical(len(kept), edges)


def largest_connected_component(g: Graph) -> Graph:
    if g.n == 0:
        raise DomainError("The empty graph has no connected component")
    labeling = connected_components(g)
    sizes = np.bincount(np.asarray(labeling.label))
    # argmax returns the first maximum, i.e. the component with the smallest vertex
    largest = int(np.argmax(sizes))
    logger.debug("Largest of %d components has %d vertices", labeling.count, sizes[largest])
    return induced_subgraph(g, labeling.members(largest))


def bfs_nearest_subgraph(g: Graph, fraction: float) -> Graph:
    """
    Induced subgraph on the ceil(fraction * n) vertices closest to the
    highest-degree vertex, taking each BFS layer in ascending id order.
    """
    if not 0.0 < fraction <= 1.0:
        raise DomainError(f"Fraction must lie in (0, 1], got {fraction}")
    if g.n == 0:
        raise DomainError("Cannot take a subgraph of the empty graph")
    if not is_connected(g):
        raise DomainError("BFS-nearest extraction needs a connected graph")

    root = int(np.argmax(degrees(g)))
    # round first so 3/7 * 7 does not ceil to 4
    keep = max(1, math.ceil(round(fraction * g.n, 9)))
    distances = csgraph.shortest_path(
        _csgraph(g), method='D', directed=False, unweighted=True, indices=root
    )
    order = np.lexsort((np.arange(g.n), distances))
    logger.debug("BFS from vertex %d keeps %d of %d vertices", root, keep, g.n)
    return induced_subgraph(g, order[:keep].tolist())
