"""
Line graph of a quartic surface: one vertex per line, an edge when two
lines meet at a smooth point of the surface. Provides valencies, induced
triangles and quadrangles, spans, and recognition of Dynkin and extended
Dynkin subgraphs.
"""

import json
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

from com.mhire.qlines.config.errors import QlinesError
from com.mhire.qlines.services.grass.grass import IntersectionTable, LineSet
from com.mhire.qlines.services.lattice.lattice import SignatureReport, gram_from_graph, signature
from com.mhire.qlines.services.quartic.quartic import SingularPoint, point_key

logger = logging.getLogger(__name__)

ELLIPTIC = "Elliptic"
PARABOLIC = "Parabolic"
INDEFINITE = "Indefinite"


class NotConnected(QlinesError, ValueError):
    pass


@dataclass
class LineGraph:
    """graph holds smooth meetings only; meetings holds every pair of meeting lines."""

    graph: nx.Graph
    meetings: nx.Graph

    def __len__(self):
        return self.graph.number_of_nodes()


@dataclass
class SubgraphClass:
    vertices: List[int]
    classification: str
    name: Optional[str]
    signature: SignatureReport


def build_graph(lines: LineSet, sing: Sequence[SingularPoint] = (),
                table: Optional[IntersectionTable] = None) -> LineGraph:
    table = table or IntersectionTable(lines)
    singular = {point_key(sp.point) for sp in sing}
    graph = nx.Graph()
    meetings = nx.Graph()
    graph.add_nodes_from(range(len(lines)))
    meetings.add_nodes_from(range(len(lines)))
    for a, b in combinations(range(len(lines)), 2):
        point = table.meet(a, b)
        if not isinstance(point, tuple):
            continue
        meetings.add_edge(a, b, point=point)
        if point_key(point) not in singular:
            graph.add_edge(a, b, point=point)
    logger.info("line graph: %d vertices, %d edges (%d meetings)", graph.number_of_nodes(),
                graph.number_of_edges(), meetings.number_of_edges())
    return LineGraph(graph, meetings)


def graph_from_edges(n: int, edges: Iterable[Tuple[int, int]]) -> LineGraph:
    """A line graph from an explicit edge list, every meeting taken as smooth."""
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(edges)
    return LineGraph(graph, graph.copy())


def valencies(g: LineGraph) -> List[Tuple[int, int]]:
    """(v, extended v) per line."""
    return [(g.graph.degree(i), g.meetings.degree(i)) for i in sorted(g.graph.nodes)]


def find_cycles(g: LineGraph, length: int) -> List[Tuple[int, ...]]:
    """Induced cycles of length 3 or 4, as sorted vertex tuples."""
    if length not in (3, 4):
        raise ValueError("only triangles and quadrangles are searched")
    if length == 3:
        found = {tuple(sorted(c)) for c in nx.enumerate_all_cliques(g.graph) if len(c) == 3}
    else:
        found = {tuple(sorted(c)) for c in nx.chordless_cycles(g.graph, length_bound=4) if len(c) == 4}
    return sorted(found)


def is_triangle_free(g: LineGraph) -> bool:
    return not find_cycles(g, 3)


def is_quadrangle_free(g: LineGraph) -> bool:
    return is_triangle_free(g) and not find_cycles(g, 4)


def span_and_valency(g: LineGraph, vertices: Iterable[int]) -> Tuple[List[int], int]:
    members = set(vertices)
    span = set(members)
    for v in members:
        span.update(g.graph.neighbors(v))
    return sorted(span), len(span - members)


def milnor_number(g: LineGraph, vertices: Optional[Iterable[int]] = None) -> int:
    """Rank of the form of the (induced) graph."""
    sub = g.graph if vertices is None else g.graph.subgraph(vertices)
    return signature(gram_from_graph(sub)).rank


# Dynkin templates

def _path_with_branch(length: int, at: Sequence[int]) -> nx.Graph:
    t = nx.path_graph(length)
    for k, node in enumerate(at):
        t.add_edge(node, length + k)
    return t


def dynkin(name: str, n: int) -> nx.Graph:
    """A_n, D_n, E_n and their extended versions (prefix '~'), on n or n+1 vertices."""
    if name == "A":
        return nx.path_graph(n)
    if name == "D":
        return _path_with_branch(n - 1, [1])
    if name == "E":
        return _path_with_branch(n - 1, [2])
    if name == "~A":
        return nx.cycle_graph(n + 1)
    if name == "~D":
        return _path_with_branch(n - 1, [1, n - 3])
    if name == "~E":
        if n == 6:
            t = nx.star_graph(3)
            for arm in (1, 2, 3):
                t.add_edge(arm, arm + 3)
            return t
        if n == 7:
            return _path_with_branch(7, [3])
        if n == 8:
            return _path_with_branch(8, [2])
    raise ValueError(f"no Dynkin diagram {name}{n}")


def _candidates(size: int, parabolic: bool) -> List[Tuple[str, nx.Graph]]:
    out = []
    if not parabolic:
        out.append((f"A{size}", dynkin("A", size)))
        if size >= 4:
            out.append((f"D{size}", dynkin("D", size)))
        if size in (6, 7, 8):
            out.append((f"E{size}", dynkin("E", size)))
    else:
        n = size - 1
        if n >= 2:
            out.append((f"~A{n}", dynkin("~A", n)))
        if n >= 4:
            out.append((f"~D{n}", dynkin("~D", n)))
        if n in (6, 7, 8):
            out.append((f"~E{n}", dynkin("~E", n)))
    return out


def classify_subgraph(g: LineGraph, vertices: Iterable[int]) -> SubgraphClass:
    members = sorted(set(vertices))
    sub = g.graph.subgraph(members)
    if not members or not nx.is_connected(sub):
        raise NotConnected("subgraph classification needs a connected vertex set")
    sig = signature(gram_from_graph(sub))
    size = len(members)
    if sig.n_minus == size:
        kind = ELLIPTIC
    elif sig.n_plus == 0 and sig.n_zero == 1:
        kind = PARABOLIC
    else:
        return SubgraphClass(members, INDEFINITE, None, sig)
    name = next((label for label, t in _candidates(size, kind == PARABOLIC) if nx.is_isomorphic(sub, t)), None)
    return SubgraphClass(members, kind, name, sig)


def _induced_copy(host: nx.Graph, template: nx.Graph) -> Optional[List[int]]:
    matcher = isomorphism.GraphMatcher(host, template)
    for mapping in matcher.subgraph_isomorphisms_iter():
        return sorted(mapping)
    return None


def find_parabolic(g: LineGraph, delta: int = 22) -> Optional[SubgraphClass]:
    """An induced extended Dynkin subgraph, searching cycles first; None when none exists."""
    for cycle in nx.chordless_cycles(g.graph, length_bound=delta):
        if len(cycle) >= 3:
            return classify_subgraph(g, cycle)
    shapes = [("~D", n) for n in range(4, delta)] + [("~E", 6), ("~E", 7), ("~E", 8)]
    for name, n in shapes:
        if n + 1 > g.graph.number_of_nodes():
            continue
        found = _induced_copy(g.graph, dynkin(name, n))
        if found is not None:
            return classify_subgraph(g, found)
    return None


def graph_checks(g: LineGraph, delta: int = 22) -> List[str]:
    """Inequalities that every line graph of a quartic with rational double points satisfies."""
    bad = []
    n = len(g)
    parabolic = find_parabolic(g, delta)
    if parabolic is None:
        if n > delta - 1:
            bad.append(f"{n} lines without a parabolic subgraph (at most {delta - 1})")
    else:
        _, v = span_and_valency(g, parabolic.vertices)
        if n > v + 24:
            bad.append(f"{n} lines exceed v(D) + 24 = {v + 24} for {parabolic.name}")
    if n > 64:
        bad.append(f"{n} lines exceed 64")
    if is_quadrangle_free(g) and n > 54:
        bad.append(f"quadrangle-free graph with {n} lines")
    return bad


def to_json(g: LineGraph) -> str:
    adjacency: Dict[str, List[int]] = {str(v): sorted(g.graph.neighbors(v)) for v in sorted(g.graph.nodes)}
    return json.dumps(adjacency, indent=2)


def to_edge_list(g: LineGraph) -> str:
    edges = sorted(tuple(sorted(e)) for e in g.graph.edges)
    return "".join(f"{a} {b}\n" for a, b in edges)
