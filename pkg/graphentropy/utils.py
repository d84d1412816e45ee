import csv
import io
import logging
from functools import partial
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Sequence, Union

from .generators import generate, is_generator_spec_text, parse_generator_spec
from .graph import bfs_nearest_subgraph, largest_connected_component, read_edge_list
from .schemas import GeneratorSpec, Graph

logger = logging.getLogger(__name__)

Source = Union[GeneratorSpec, Path]


def format_float(value: float) -> str:
    """17 significant digits: exact round-trip for doubles"""
    return f"{value:.17g}"


def resolve_source(text: str) -> Source:
    """
    A string whose prefix before ':' names a generator family is a
    generator spec; anything else is an edge-list path.
    """
    if is_generator_spec_text(text):
        return parse_generator_spec(text)
    return Path(text)


def load_graph(source: Source, seed: int = 0) -> Graph:
    if isinstance(source, Path):
        return read_edge_list(source)
    return generate(source, seed)


def _lcc_then_fraction(g: Graph, lcc: bool, fraction: Optional[float]) -> Graph:
    if lcc:
        g = largest_connected_component(g)
    if fraction is not None:
        g = bfs_nearest_subgraph(g, fraction)
    return g


def preprocessing(lcc: bool = False, fraction: Optional[float] = None) -> Optional[Callable[[Graph], Graph]]:
    """Largest component first, then the BFS-nearest fraction"""
    if not lcc and fraction is None:
        return None
    return partial(_lcc_then_fraction, lcc=lcc, fraction=fraction)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def write_output(text: str, out: Optional[str], stream) -> None:
    """Write to `out` when it names a file, else to `stream`"""
    if out in (None, '', '-'):
        stream.write(text, ending='')
        return
    Path(out).write_text(text, encoding='utf-8')
    logger.info("Wrote %d bytes to %s", len(text.encode('utf-8')), out)


def split_floats(text: str) -> List[float]:
    return [float(part) for part in text.split(',') if part.strip()]
