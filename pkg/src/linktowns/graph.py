"""Immutable graph representation, link-set bookkeeping, and star enumeration.

A :class:`Graph` is an unweighted, undirected simple graph.  Nodes keep
their original string labels but all computation runs on dense 0-based
indices that stay stable for the lifetime of the graph.  A
:class:`LinkSet` is a subset of the graph's edges (a link community or a
town body); a :class:`NodeSet` is a subset of its nodes; a :class:`Star`
is a node together with all member links incident to it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import EdgeListParseError, PreconditionError, ValidationError


class Graph:
    """Undirected simple graph with dense node and edge indices.

    Edges are stored as canonical ``(u, v)`` index pairs with ``u < v``.
    Instances are immutable after construction and safe to share across
    threads.
    """

    __slots__ = (
        "labels",
        "index_of",
        "edges",
        "degree",
        "adjacency",
        "incident_edges",
        "_edge_index",
    )

    def __init__(self, labels: Iterable[str], edge_pairs: Iterable[tuple[int, int]]):
        self.labels: tuple[str, ...] = tuple(str(x) for x in labels)
        self.index_of: dict[str, int] = {s: i for i, s in enumerate(self.labels)}
        if len(self.index_of) != len(self.labels):
            raise ValidationError("duplicate node labels")

        n = len(self.labels)
        edges: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        adjacency: list[list[int]] = [[] for _ in range(n)]
        incident: list[list[int]] = [[] for _ in range(n)]
        for u, v in edge_pairs:
            if u == v:
                raise ValidationError(f"self-loop at node {self.labels[u]!r}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u}, {v}) references unknown node index")
            pair = (u, v) if u < v else (v, u)
            if pair in seen:
                raise ValidationError(
                    f"duplicate edge ({self.labels[pair[0]]!r}, {self.labels[pair[1]]!r})"
                )
            seen.add(pair)
            eid = len(edges)
            edges.append(pair)
            adjacency[u].append(v)
            adjacency[v].append(u)
            incident[u].append(eid)
            incident[v].append(eid)

        self.edges: tuple[tuple[int, int], ...] = tuple(edges)
        self.degree: tuple[int, ...] = tuple(len(a) for a in adjacency)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in adjacency)
        self.incident_edges: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in incident)
        self._edge_index: dict[tuple[int, int], int] = {p: i for i, p in enumerate(edges)}

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> int | None:
        """Edge index of the pair ``(u, v)``, or None if absent."""
        return self._edge_index.get((u, v) if u < v else (v, u))

    def edge_labels(self, eid: int) -> tuple[str, str]:
        u, v = self.edges[eid]
        return self.labels[u], self.labels[v]

    def full_link_set(self) -> LinkSet:
        return LinkSet(self, range(self.m))

    def link_set(self, edge_ids: Iterable[int]) -> LinkSet:
        return LinkSet(self, edge_ids)

    def node_set(self, nodes: Iterable[int]) -> NodeSet:
        return NodeSet(self, nodes)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class LinkSet:
    """Immutable subset of a graph's edges with per-node internal degrees.

    ``kin_node[i]`` counts member edges incident to node ``i``; it is 0
    for nodes the set does not touch.  The handshake identity
    ``sum(kin_node) == 2 * size`` holds by construction.
    """

    __slots__ = ("graph", "edges", "kin_node")

    def __init__(self, graph: Graph, edge_ids: Iterable[int]):
        self.graph = graph
        self.edges: frozenset[int] = frozenset(edge_ids)
        for eid in self.edges:
            if not (0 <= eid < graph.m):
                raise ValidationError(f"edge index {eid} outside graph")
        kin = [0] * graph.n
        for eid in self.edges:
            u, v = graph.edges[eid]
            kin[u] += 1
            kin[v] += 1
        self.kin_node: tuple[int, ...] = tuple(kin)

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def kin_total(self) -> int:
        return 2 * len(self.edges)

    def nodes(self) -> frozenset[int]:
        """Nodes incident to at least one member edge."""
        return frozenset(i for i, k in enumerate(self.kin_node) if k > 0)

    def complement(self) -> LinkSet:
        return LinkSet(self.graph, frozenset(range(self.graph.m)) - self.edges)

    def __contains__(self, eid: int) -> bool:
        return eid in self.edges

    def __iter__(self) -> Iterator[int]:
        return iter(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LinkSet)
            and other.graph is self.graph
            and other.edges == self.edges
        )

    def __hash__(self) -> int:
        return hash((id(self.graph), self.edges))

    def __repr__(self) -> str:
        return f"LinkSet(size={self.size})"


class NodeSet:
    """Immutable subset of a graph's nodes."""

    __slots__ = ("graph", "nodes")

    def __init__(self, graph: Graph, nodes: Iterable[int]):
        self.graph = graph
        self.nodes: frozenset[int] = frozenset(nodes)
        for i in self.nodes:
            if not (0 <= i < graph.n):
                raise ValidationError(f"node index {i} outside graph")

    @property
    def size(self) -> int:
        return len(self.nodes)

    def __contains__(self, i: int) -> bool:
        return i in self.nodes

    def __iter__(self) -> Iterator[int]:
        return iter(self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    def __repr__(self) -> str:
        return f"NodeSet(size={self.size})"


@dataclass(frozen=True)
class Star:
    """A centre node plus all member links of a reference link set incident
    to it.  In a simple graph there is one outer node per link, so
    ``len(outer_nodes) == size``."""

    centre: int
    links: frozenset[int]
    outer_nodes: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.links)


def load_edge_list(text: str) -> Graph:
    """Parse a line-oriented edge list into a :class:`Graph`.

    Each non-empty line holds two whitespace-separated node labels; lines
    starting with ``#`` are comments.  Nodes are indexed in order of first
    appearance.  Self-loops and duplicate edges are rejected.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()

    def node_id(token: str) -> int:
        i = index.get(token)
        if i is None:
            i = len(labels)
            index[token] = i
            labels.append(token)
        return i

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"expected two node tokens, got {len(tokens)}: {line!r}", lineno
            )
        a, b = tokens
        if a == b:
            raise EdgeListParseError(f"self-loop at node {a!r}", lineno)
        u, v = node_id(a), node_id(b)
        pair = (u, v) if u < v else (v, u)
        if pair in seen:
            raise EdgeListParseError(f"duplicate edge ({a!r}, {b!r})", lineno)
        seen.add(pair)
        pairs.append(pair)

    return Graph(labels, pairs)


def parse_link_set(text: str, graph: Graph) -> LinkSet:
    """Parse a community file (same format as an edge list) into a
    :class:`LinkSet` of ``graph``.  Every listed edge must exist in the
    graph; the offending edge is named otherwise."""
    edge_ids: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"expected two node tokens, got {len(tokens)}: {line!r}", lineno
            )
        a, b = tokens
        if a == b:
            raise EdgeListParseError(f"self-loop at node {a!r}", lineno)
        u = graph.index_of.get(a)
        v = graph.index_of.get(b)
        eid = graph.edge_id(u, v) if u is not None and v is not None else None
        if eid is None:
            raise ValidationError(f"community edge ({a!r}, {b!r}) is not a graph edge")
        if eid in edge_ids:
            raise EdgeListParseError(f"duplicate edge ({a!r}, {b!r})", lineno)
        edge_ids.add(eid)
    return LinkSet(graph, edge_ids)


def parse_node_set(text: str, graph: Graph) -> NodeSet:
    """Parse a node-set file (whitespace-separated labels, ``#`` comments)."""
    nodes: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        for token in line.split():
            i = graph.index_of.get(token)
            if i is None:
                raise ValidationError(f"node {token!r} is not a graph node")
            if i in nodes:
                raise EdgeListParseError(f"duplicate node {token!r}", lineno)
            nodes.add(i)
    return NodeSet(graph, nodes)


def internal_degree(link_set: LinkSet, node: int) -> int:
    """Number of member links attached to ``node``."""
    return link_set.kin_node[node]


def star_of(link_set: LinkSet, centre: int) -> Star:
    """The star of ``centre`` restricted to ``link_set``."""
    graph = link_set.graph
    links = frozenset(e for e in graph.incident_edges[centre] if e in link_set.edges)
    outer = frozenset(
        v if u == centre else u for u, v in (graph.edges[e] for e in links)
    )
    return Star(centre=centre, links=links, outer_nodes=outer)


def enumerate_stars(
    link_set: LinkSet, rng: random.Random | None = None
) -> list[Star]:
    """All stars of a link set, largest first.

    Equal-sized stars are ordered by ascending centre index by default;
    passing ``rng`` shuffles ties instead (seeded-random mode).
    """
    if link_set.size == 0:
        raise PreconditionError("cannot enumerate stars of an empty link set")
    centres = [i for i, k in enumerate(link_set.kin_node) if k > 0]
    if rng is not None:
        rng.shuffle(centres)
    # stable sort keeps the (shuffled or ascending) tie order within sizes
    centres.sort(key=lambda i: -link_set.kin_node[i])
    return [star_of(link_set, i) for i in centres]


def connected_components(link_set: LinkSet) -> list[LinkSet]:
    """Partition a link set into link-connected components.

    Two edges are connected when they share a node.  Components come out
    ordered by their smallest edge index.
    """
    graph = link_set.graph
    remaining = set(link_set.edges)
    components: list[LinkSet] = []
    while remaining:
        seed = min(remaining)
        stack = [seed]
        remaining.discard(seed)
        comp = {seed}
        while stack:
            eid = stack.pop()
            for node in graph.edges[eid]:
                for nb in graph.incident_edges[node]:
                    if nb in remaining:
                        remaining.discard(nb)
                        comp.add(nb)
                        stack.append(nb)
        components.append(LinkSet(graph, comp))
    return components


def is_link_connected(link_set: LinkSet) -> bool:
    """True when the link set is non-empty and forms one component."""
    return link_set.size > 0 and len(connected_components(link_set)) == 1
