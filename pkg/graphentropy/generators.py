"""
Seeded random-graph models and deterministic graph classes.

Traversal orders are fixed (lexicographic pairs, ascending vertices,
clockwise lattice offsets) so that (spec, seed) determines the graph.
"""

import logging
import math
from typing import Dict, List, Set

from pydantic import TypeAdapter, ValidationError

from .exceptions import DomainError
from .rng import Xorshift64Star
from .schemas import (
    BarabasiAlbertSpec,
    ChungLuSpec,
    CompleteBipartiteSpec,
    CompleteSpec,
    CycleSpec,
    EmptySpec,
    ErdosRenyiSpec,
    GeneratorSpec,
    Graph,
    StarSpec,
    WattsStrogatzSpec,
)

logger = logging.getLogger(__name__)

FAMILIES = ('er', 'cl', 'ws', 'ba', 'empty', 'complete', 'bipartite', 'star', 'cycle')

_spec_adapter = TypeAdapter(GeneratorSpec)


# Random models

def _erdos_renyi(spec: ErdosRenyiSpec, rng: Xorshift64Star) -> Graph:
    n, p = spec.n, spec.p
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return Graph.from_canonical(n, edges)


def _chung_lu(spec: ChungLuSpec, rng: Xorshift64Star) -> Graph:
    weights = spec.weights
    n = len(weights)
    total = math.fsum(weights)
    if n >= 2:
        top = sorted(weights, reverse=True)[:2]
        if top[0] * top[1] / total > 1.0:
            raise DomainError(
                f"Chung-Lu pair probability {top[0] * top[1] / total:.6g} exceeds 1"
            )
    edges = []
    for i in range(n):
        wi = weights[i]
        for j in range(i + 1, n):
            if rng.random() < wi * weights[j] / total:
                edges.append((i, j))
    return Graph.from_canonical(n, edges)


def _watts_strogatz(spec: WattsStrogatzSpec, rng: Xorshift64Star) -> Graph:
    n, half = spec.n, spec.K // 2
    neighbours: List[Set[int]] = [set() for _ in range(n)]
    for v in range(n):
        for offset in range(1, half + 1):
            w = (v + offset) % n
            neighbours[v].add(w)
            neighbours[w].add(v)

    for v in range(n):
        for offset in range(1, half + 1):
            if rng.random() >= spec.beta:
                continue
            if len(neighbours[v]) == n - 1:
                continue
            far = (v + offset) % n
            target = rng.below(n)
            while target == v or target in neighbours[v]:
                target = rng.below(n)
            neighbours[v].discard(far)
            neighbours[far].discard(v)
            neighbours[v].add(target)
            neighbours[target].add(v)

    edges = [(v, w) for v in range(n) for w in neighbours[v] if v < w]
    return Graph.from_canonical(n, edges)


def _barabasi_albert(spec: BarabasiAlbertSpec, rng: Xorshift64Star) -> Graph:
    n, m0, m = spec.n, spec.m0, spec.m
    edges = [(i, j) for i in range(m0) for j in range(i + 1, m0)]
    # each vertex appears once per incident edge
    endpoints = [v for edge in edges for v in edge]

    for v in range(m0, n):
        pool_size = len(endpoints)
        chosen: List[int] = []
        while len(chosen) < m:
            if pool_size:
                target = endpoints[rng.below(pool_size)]
            else:
                target = rng.below(v)
            if target not in chosen:
                chosen.append(target)
        for target in chosen:
            edges.append((target, v))
            endpoints.extend((target, v))
    return Graph.from_canonical(n, edges)


# Deterministic classes

def empty_graph(n: int) -> Graph:
    return Graph.from_canonical(n, ())


def complete_graph(n: int) -> Graph:
    return Graph.from_canonical(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite_graph(n1: int, n2: int) -> Graph:
    """Parts 0..n1-1 and n1..n1+n2-1"""
    return Graph.from_canonical(
        n1 + n2, ((i, n1 + j) for i in range(n1) for j in range(n2))
    )


def star_graph(n1: int) -> Graph:
    return Graph.from_canonical(n1 + 1, ((0, leaf) for leaf in range(1, n1 + 1)))


def cycle_graph(n: int) -> Graph:
    edges = [(i, i + 1) for i in range(n - 1)]
    if n >= 3:
        edges.append((0, n - 1))
    return Graph.from_canonical(n, edges)


def generate(spec: GeneratorSpec, seed: int = 0) -> Graph:
    """Draw one graph; deterministic classes ignore the seed"""
    if isinstance(spec, EmptySpec):
        return empty_graph(spec.n)
    if isinstance(spec, CompleteSpec):
        return complete_graph(spec.n)
    if isinstance(spec, CompleteBipartiteSpec):
        return complete_bipartite_graph(spec.n1, spec.n2)
    if isinstance(spec, StarSpec):
        return star_graph(spec.n1)
    if isinstance(spec, CycleSpec):
        return cycle_graph(spec.n)

    rng = Xorshift64Star(seed)
    if isinstance(spec, ErdosRenyiSpec):
        g = _erdos_renyi(spec, rng)
    elif isinstance(spec, ChungLuSpec):
        g = _chung_lu(spec, rng)
    elif isinstance(spec, WattsStrogatzSpec):
        g = _watts_strogatz(spec, rng)
    elif isinstance(spec, BarabasiAlbertSpec):
        g = _barabasi_albert(spec, rng)
    else:
        raise DomainError(f"Unsupported generator spec {spec!r}")
    logger.debug("Generated %s with seed %d: n=%d m=%d", spec.family, seed, g.n, g.num_edges)
    return g


def matched_er_spec(g: Graph) -> ErdosRenyiSpec:
    """ER model with p = 2m / n^2 matching the edge count of g"""
    if g.n < 1:
        raise DomainError("Matched ER needs at least one vertex")
    return ErdosRenyiSpec(n=g.n, p=2.0 * g.num_edges / g.n ** 2)


def er_threshold_p(n: int, p0: float) -> float:
    """p = p0 log(n) / n"""
    if n < 2:
        raise DomainError(f"er_threshold_p needs n >= 2, got {n}")
    if p0 <= 0:
        raise DomainError(f"p0 must be positive, got {p0}")
    p = p0 * math.log(n) / n
    if p > 1.0:
        raise DomainError(f"p0 log(n)/n = {p:.6g} exceeds 1 for n={n}, p0={p0}")
    return p


# Textual form

def is_generator_spec_text(text: str) -> bool:
    family, sep, _ = text.partition(':')
    return bool(sep) and family.strip().lower() in FAMILIES


def _split_params(body: str) -> Dict[str, str]:
    params = {}
    for item in filter(None, (part.strip() for part in body.split(','))):
        key, sep, value = item.partition('=')
        if not sep or not key.strip():
            raise DomainError(f"Expected key=value, got '{item}'")
        params[key.strip()] = value.strip()
    return params


def parse_generator_spec(text: str) -> GeneratorSpec:
    """
    Parse the canonical text form, e.g. "er:n=1200,p0=10.5",
    "ws:n=1200,K=4,beta=0.6", "cl:w=1;2;3" or "cycle:n=64".
    """
    family, sep, body = text.partition(':')
    family = family.strip().lower()
    if not sep or family not in FAMILIES:
        raise DomainError(f"Unknown generator family in '{text}'")
    params: Dict[str, object] = dict(_split_params(body))

    try:
        if family == 'er' and 'p0' in params:
            if 'p' in params:
                raise DomainError("Give either p or p0 for an ER spec, not both")
            n = int(params['n'])
            params['p'] = er_threshold_p(n, float(params.pop('p0')))
        elif family == 'cl':
            weights = params.pop('w', None)
            if weights is None:
                raise DomainError("Chung-Lu spec needs w=<weight> or w=<w1;w2;...>")
            values = [float(w) for w in str(weights).split(';') if w.strip()]
            if 'n' in params:
                if len(values) != 1:
                    raise DomainError("With n given, w must be a single weight")
                values = values * int(params.pop('n'))
            params['weights'] = values
        return _spec_adapter.validate_python({'family': family, **params})
    except ValidationError as e:
        error = e.errors()[0]
        where = '.'.join(str(part) for part in error['loc'][1:]) or family
        raise DomainError(f"Invalid {family} spec '{text}': {where}: {error['msg']}") from None
    except (KeyError, ValueError) as e:
        if isinstance(e, DomainError):
            raise
        raise DomainError(f"Invalid {family} spec '{text}': {e}") from None


def format_generator_spec(spec: GeneratorSpec) -> str:
    if isinstance(spec, ChungLuSpec):
        return 'cl:w=' + ';'.join(repr(w) for w in spec.weights)
    fields = spec.model_dump(exclude={'family'})
    return f"{spec.family}:" + ','.join(f"{key}={value!r}" for key, value in fields.items())
